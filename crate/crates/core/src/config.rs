//! Solver configuration knobs and their defaults.

/// Tunable tolerances and limits for the solver stack.
///
/// The defaults are the values used throughout the test suite; every knob is
/// also reachable from the command line.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Hard-case trigger in the scaled TRS algorithm: the boundary eigenvector
    /// block is declared vanishing when `||y1|| <= tau` (unit eigenvector).
    pub tau: f64,
    /// Relative residual target for extreme eigenpairs of `A`.
    pub eig_tol: f64,
    /// Relative residual target for conjugate-gradient solves.
    pub cg_tol: f64,
    /// Relative residual target for accepted pencil eigenpairs.
    pub pencil_tol: f64,
    /// A pencil eigenvalue counts as real when `|Im| <= real_tol * max(1, |Re|)`.
    pub real_tol: f64,
    /// Problems with `n <= dense_crossover` use dense eigendecompositions
    /// instead of the iterative (Lanczos / shift-invert Arnoldi) paths.
    pub dense_crossover: usize,
    /// Relative gap below which the two smallest eigenvalues of `A` are
    /// treated as equal (multiplicity of `lambda_1`).
    pub multiplicity_tol: f64,
    /// `a` is declared orthogonal to the bottom eigenvector (hard case) when
    /// `|v1^T a| <= hard_tol * ||a||`.
    pub hard_tol: f64,
    /// `b` is declared orthogonal to the bottom eigenvector in the duality
    /// check when `|v1^T b| <= orth_tol * ||b||`.
    pub orth_tol: f64,
    /// Maximum CG iterations (per solve) as a multiple of the dimension.
    pub cg_maxit_factor: usize,
    /// Maximum Lanczos restarts for extreme eigenpairs.
    pub lanczos_max_restarts: usize,
    /// Largest Arnoldi subspace tried for pencil eigenvalues.
    pub arnoldi_max_dim: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tau: 1e-4,
            eig_tol: 1e-10,
            cg_tol: 1e-12,
            pencil_tol: 1e-8,
            real_tol: 1e-8,
            dense_crossover: 300,
            multiplicity_tol: 1e-8,
            hard_tol: 1e-10,
            orth_tol: 1e-10,
            cg_maxit_factor: 20,
            lanczos_max_restarts: 200,
            arnoldi_max_dim: 260,
        }
    }
}

impl SolverConfig {
    pub fn cg_maxit(&self, n: usize) -> usize {
        (self.cg_maxit_factor * n).clamp(200, 400_000)
    }
}
