//! Exact sparse linear algebra over Q(sqrt 2).
//!
//! Matrices are stored column-major as sorted maps; all the maps built in this
//! crate are very sparse (a few entries per column), so this is plenty.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalars::AlgebraicScalar as S;

pub type SparseVec = BTreeMap<usize, S>;

pub fn vec_axpy(acc: &mut SparseVec, c: &S, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        add_entry(acc, *i, &(c * x));
    }
}

pub fn add_entry(acc: &mut SparseVec, i: usize, x: &S) {
    if x.is_zero() {
        return;
    }
    let e = acc.entry(i).or_insert_with(S::zero);
    *e += x;
    if e.is_zero() {
        acc.remove(&i);
    }
}

pub fn vec_scale(v: &SparseVec, c: &S) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Standard dot product in the given (orthonormal) basis.
pub fn vec_dot(a: &SparseVec, b: &SparseVec) -> S {
    let mut s = S::zero();
    for (i, x) in a {
        if let Some(y) = b.get(i) {
            s += &(x * y);
        }
    }
    s
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.cols[i].insert(i, S::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &S) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.cols[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < nrows)));
        SparseMat { nrows, ncols: cols.len(), cols }
    }

    /// Build from a column function, in parallel.
    pub fn from_fn<F>(nrows: usize, ncols: usize, f: F) -> Self
    where
        F: Fn(usize) -> SparseVec + Sync + Send,
    {
        let cols: Vec<SparseVec> = (0..ncols).into_par_iter().map(&f).collect();
        Self::from_cols(nrows, cols)
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.cols[c].get(&r).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &S) {
        add_entry(&mut self.cols[c], r, x);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v {
            vec_axpy(&mut out, x, &self.cols[*j]);
        }
        out
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let cols: Vec<SparseVec> = rhs.cols.par_iter().map(|c| self.apply(c)).collect();
        SparseMat::from_cols(self.nrows, cols)
    }

    pub fn add(&self, rhs: &SparseMat) -> SparseMat {
        self.axpy(&S::one(), rhs)
    }

    pub fn sub(&self, rhs: &SparseMat) -> SparseMat {
        self.axpy(&-S::one(), rhs)
    }

    /// `self + c * rhs`
    pub fn axpy(&self, c: &S, rhs: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "shape mismatch");
        let mut out = self.clone();
        for (j, col) in rhs.cols.iter().enumerate() {
            vec_axpy(&mut out.cols[j], c, col);
        }
        out
    }

    pub fn scale(&self, c: &S) -> SparseMat {
        SparseMat::from_cols(self.nrows, self.cols.iter().map(|v| vec_scale(v, c)).collect())
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zeros(self.ncols, self.nrows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out.cols[*i].insert(j, x.clone());
            }
        }
        out
    }

    /// Commutator `self*rhs - rhs*self`.
    pub fn bracket(&self, rhs: &SparseMat) -> SparseMat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Kronecker product; index of (a, b) is `a * rhs.dim + b`.
    pub fn kron(&self, rhs: &SparseMat) -> SparseMat {
        let mut out = SparseMat::zeros(self.nrows * rhs.nrows, self.ncols * rhs.ncols);
        for (ja, ca) in self.cols.iter().enumerate() {
            for (jb, cb) in rhs.cols.iter().enumerate() {
                let col = &mut out.cols[ja * rhs.ncols + jb];
                for (ia, xa) in ca {
                    for (ib, xb) in cb {
                        col.insert(ia * rhs.nrows + ib, xa * xb);
                    }
                }
            }
        }
        out
    }

    /// Flattened entries, used for linear independence of whole maps.
    pub fn flatten(&self) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out.insert(j * self.nrows + i, x.clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Basis of the kernel (as vectors over the column index set).
    pub fn nullspace(&self) -> Vec<SparseVec> {
        // rows of self are the constraints
        let t = self.transpose();
        let mut e = Echelon::new();
        for r in &t.cols {
            e.insert(r.clone());
        }
        e.kernel_basis(self.ncols)
    }

    /// Coordinate-list export with exact scalar strings.
    pub fn to_coo(&self) -> Vec<(usize, usize, String)> {
        let mut out = vec![];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out.push((*i, j, x.to_string()));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} nnz={}", self.nrows, self.ncols, self.nnz())?;
        for (i, j, x) in self.to_coo().into_iter().take(64) {
            writeln!(f, "  ({i},{j}) {x}")?;
        }
        Ok(())
    }
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// pivot column -> row with a 1 at the pivot and zeros at every other pivot.
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let piv: Vec<usize> = v.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in piv {
            if let Some(c) = v.get(&p).cloned() {
                vec_axpy(&mut v, &-c, &self.rows[&p]);
            }
        }
        v
    }

    /// Returns true if `v` was independent of the current span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let v = vec_scale(&v, &c.inv().expect("nonzero pivot"));
        // keep the form fully reduced
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                vec_axpy(row, &-c, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Kernel of the row space, vectors of length `ncols`.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = vec![];
        for f in 0..ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(f, S::one());
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    v.insert(*p, -c);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMat {
        let nr = rows.len();
        let nc = rows[0].len();
        let mut out = SparseMat::zeros(nr, nc);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                out.add_to(i, j, &S::from_int(*x));
            }
        }
        out
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn nullspace_small() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).is_empty());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kron_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = SparseMat::identity(2).kron(&a);
        assert_eq!(k.get(2, 3), S::from_int(2));
        assert_eq!(k.get(0, 2), S::zero());
    }
}
