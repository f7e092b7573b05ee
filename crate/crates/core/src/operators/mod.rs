//! Structured symmetric linear operators and the extreme-eigenpair /
//! iterative-solve kernels built on top of them.
//!
//! Everything downstream (pencil eigensolves, TRS, duality checks, the
//! null-space reduction) works through [`SymOp`] so that large sparse
//! instances never materialize dense matrices.

mod lanczos;
mod solvers;

pub use lanczos::{extreme_eigs, extreme_generalized_eigs, ExtremeEigs};
pub use solvers::{cg_solve, cg_solve_logged, minres_solve, CgLog};

pub(crate) use lanczos::lanczos_smallest;
pub(crate) use solvers::pcg;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{EtrsError, Result};
use crate::reduction::NullBasis;

/// Anything that can apply a symmetric matrix to a vector.
pub trait LinOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &DVector<f64>) -> DVector<f64>;

    /// Quadratic form `x^T A x`.
    fn quad_form(&self, x: &DVector<f64>) -> f64 {
        self.apply(x).dot(x)
    }
}

/// Sparse symmetric matrix in CSR form, both triangles stored.
#[derive(Debug, Clone)]
pub struct SparseSym {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSym {
    /// Builds from triplets; entries may name either triangle (or both),
    /// duplicates are summed, the matrix is symmetrized.
    pub fn from_triplets(n: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut full: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len() * 2);
        for &(i, j, v) in entries {
            if i >= n || j >= n {
                return Err(EtrsError::DimensionMismatch {
                    context: "sparse triplet index",
                    expected: n,
                    got: i.max(j),
                });
            }
            full.push((i, j, v));
            if i != j {
                full.push((j, i, v));
            }
        }
        full.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        // merge duplicates
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(full.len());
        for (i, j, v) in full {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }

        let mut row_ptr = vec![0usize; n + 1];
        for &(i, _, _) in &merged {
            row_ptr[i + 1] += 1;
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        let (col_idx, vals) = merged.iter().map(|&(_, j, v)| (j, v)).unzip();
        Ok(Self {
            n,
            row_ptr,
            col_idx,
            vals,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = DVector::zeros(self.n);
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.col_idx[k]];
            }
            y[i] = acc;
        }
        y
    }

    /// Maximum absolute row sum; an upper bound on the spectral radius.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                self.row_ptr[i]..self.row_ptr[i + 1]
            })
            .map(|r| r.map(|k| self.vals[k].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Upper-triangle triplets (i <= j), zero-based, for file output.
    pub fn upper_triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col_idx[k];
                if j >= i {
                    out.push((i, j, self.vals[k]));
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.col_idx[k])] += self.vals[k];
            }
        }
        m
    }
}

/// Diagonal plus rank-one symmetric operator `D + sigma * u u^T`.
#[derive(Debug, Clone)]
pub struct DiagRankOne {
    pub d: DVector<f64>,
    pub u: DVector<f64>,
    pub sigma: f64,
}

impl DiagRankOne {
    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = x.component_mul(&self.d);
        if self.sigma != 0.0 {
            let c = self.sigma * self.u.dot(x);
            y.axpy(c, &self.u, 1.0);
        }
        y
    }

    /// Sherman-Morrison inverse apply; requires `d > 0` entrywise.
    pub fn inv_apply(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        if self.d.iter().any(|&di| di <= 0.0) {
            return None;
        }
        let dinv_x = x.component_div(&self.d);
        if self.sigma == 0.0 {
            return Some(dinv_x);
        }
        let dinv_u = self.u.component_div(&self.d);
        let denom = 1.0 + self.sigma * self.u.dot(&dinv_u);
        if denom.abs() < 1e-300 {
            return None;
        }
        let c = self.sigma * self.u.dot(&dinv_x) / denom;
        Some(&dinv_x - &dinv_u * c)
    }

    pub fn norm_bound(&self) -> f64 {
        self.d.iter().fold(0.0f64, |m, v| m.max(v.abs())) + self.sigma.abs() * self.u.norm_squared()
    }
}

/// A structured symmetric linear operator carrying its dimension.
///
/// Values are immutable after construction and cheap to clone; sharing across
/// threads is safe.
#[derive(Debug, Clone)]
pub enum SymOp {
    /// Explicit sparse symmetric matrix.
    Sparse(Arc<SparseSym>),
    /// `D + sigma * u u^T`.
    DiagRankOne(Arc<DiagRankOne>),
    /// `base + shift * I`.
    Shifted { base: Arc<SymOp>, shift: f64 },
    /// `W^T base W` where `W` is a null-space basis.
    Congruence {
        basis: Arc<NullBasis>,
        base: Arc<SymOp>,
    },
}

impl SymOp {
    pub fn sparse(s: SparseSym) -> Self {
        SymOp::Sparse(Arc::new(s))
    }

    pub fn identity(n: usize) -> Self {
        SymOp::DiagRankOne(Arc::new(DiagRankOne {
            d: DVector::from_element(n, 1.0),
            u: DVector::zeros(n),
            sigma: 0.0,
        }))
    }

    pub fn diag_rank_one(d: DVector<f64>, u: DVector<f64>, sigma: f64) -> Self {
        SymOp::DiagRankOne(Arc::new(DiagRankOne { d, u, sigma }))
    }

    pub fn shifted(base: SymOp, shift: f64) -> Self {
        SymOp::Shifted {
            base: Arc::new(base),
            shift,
        }
    }

    pub fn congruence(basis: Arc<NullBasis>, base: SymOp) -> Self {
        SymOp::Congruence {
            basis,
            base: Arc::new(base),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            SymOp::DiagRankOne(dr) => {
                dr.sigma == 0.0 && dr.d.iter().all(|&v| v == 1.0)
            }
            _ => false,
        }
    }

    /// Exact inverse apply, available for diagonal-plus-rank-one operators
    /// (Sherman-Morrison). Returns `None` for kinds without a closed form.
    pub fn try_inv_apply(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        match self {
            SymOp::DiagRankOne(dr) => dr.inv_apply(x),
            _ => None,
        }
    }

    /// Cheap upper bound for the spectral norm, used for shift heuristics
    /// and residual scaling.
    pub fn norm_est(&self) -> f64 {
        match self {
            SymOp::Sparse(s) => s.inf_norm(),
            SymOp::DiagRankOne(dr) => dr.norm_bound(),
            SymOp::Shifted { base, shift } => base.norm_est() + shift.abs(),
            SymOp::Congruence { basis, base } => basis.wtw_norm_bound() * base.norm_est(),
        }
    }

    /// Materializes the operator densely by applying it to unit vectors.
    pub fn to_dense(&self) -> DMatrix<f64> {
        if let SymOp::Sparse(s) = self {
            return s.to_dense();
        }
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut e = DVector::zeros(n);
        for j in 0..n {
            e[j] = 1.0;
            m.set_column(j, &self.apply(&e));
            e[j] = 0.0;
        }
        m
    }
}

impl LinOp for SymOp {
    fn dim(&self) -> usize {
        match self {
            SymOp::Sparse(s) => s.n(),
            SymOp::DiagRankOne(dr) => dr.d.len(),
            SymOp::Shifted { base, .. } => base.dim(),
            SymOp::Congruence { basis, .. } => basis.reduced_dim(),
        }
    }

    fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            SymOp::Sparse(s) => s.apply(x),
            SymOp::DiagRankOne(dr) => dr.apply(x),
            SymOp::Shifted { base, shift } => {
                let mut y = base.apply(x);
                y.axpy(*shift, x, 1.0);
                y
            }
            SymOp::Congruence { basis, base } => {
                let wx = basis.apply(x);
                basis.apply_transpose(&base.apply(&wx))
            }
        }
    }
}

/// Deterministic pseudorandom unit vector, used to seed iterative methods.
pub(crate) fn seeded_unit_vector(n: usize, seed: u64) -> DVector<f64> {
    let mut state = seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(n as u64 + 1);
    let mut v = DVector::zeros(n);
    for i in 0..n {
        state = splitmix64(&mut state);
        // map to (-1, 1)
        v[i] = ((state >> 11) as f64) * (2.0_f64.powi(-52)) - 1.0;
    }
    let norm = v.norm();
    if norm == 0.0 {
        v[0] = 1.0;
        return v;
    }
    v / norm
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
