//! Exterior powers of V in the canonical basis `<J, W, (0'), Wbar, Ibar>`.
//!
//! The canonical sequence of an element is `u_J` (ascending), `u_W`
//! (ascending), `u_0'`, `u_Wbar` (descending index), `u_Ibar` (descending
//! index). The basis `<...>` is treated as orthonormal; inside `V^{(x) l}` it is
//! `(1/l!) sum sgn(s) u_{s(1)} (x) ... (x) u_{s(l)}`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{elems_of, v_matrix, CliffordError, Generator, SpaceSpec};
use crate::linalg::{add_entry, SparseMat, SparseVec};
use crate::scalars::AlgebraicScalar as S;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("invalid element: {0}")]
    Invalid(String),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtElement {
    pub j: u32,
    pub w: u32,
    pub i: u32,
    pub has0: bool,
}

impl ExtElement {
    pub fn new(j: &[usize], w: &[usize], i: &[usize], has0: bool) -> Result<Self, ExtError> {
        use crate::clifford::mask_of;
        let (mj, mw, mi) = (mask_of(j), mask_of(w), mask_of(i));
        if mj & mw != 0 || mj & mi != 0 || mw & mi != 0 {
            return Err(ExtError::Invalid("J, W, I must be disjoint".into()));
        }
        Ok(ExtElement { j: mj, w: mw, i: mi, has0 })
    }

    pub fn unit() -> Self {
        ExtElement { j: 0, w: 0, i: 0, has0: false }
    }

    pub fn degree(&self) -> usize {
        (self.j.count_ones() + self.i.count_ones() + 2 * self.w.count_ones()) as usize + self.has0 as usize
    }

    /// Codes of the canonical sequence.
    pub fn sequence(&self, spec: &SpaceSpec) -> Vec<usize> {
        let mut s: Vec<usize> = elems_of(self.j).into_iter().map(|k| spec.plain(k)).collect();
        s.extend(elems_of(self.w).into_iter().map(|k| spec.plain(k)));
        if self.has0 {
            s.push(spec.n);
        }
        s.extend(elems_of(self.w).into_iter().rev().map(|k| spec.barred(k)));
        s.extend(elems_of(self.i).into_iter().rev().map(|k| spec.barred(k)));
        s
    }

    /// `<I, W, (0'), Wbar, Jbar>`
    pub fn swapped(&self) -> Self {
        ExtElement { j: self.i, w: self.w, i: self.j, has0: self.has0 }
    }

    pub fn check(&self, spec: &SpaceSpec) -> Result<(), ExtError> {
        let full = (1u32 << spec.n) - 1;
        if (self.j | self.w | self.i) & !full != 0 {
            return Err(ExtError::Invalid("index beyond rank".into()));
        }
        if self.has0 && !spec.is_odd() {
            return Err(ExtError::Invalid("u_0' only exists for odd N".into()));
        }
        Ok(())
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |m: u32| format!("{{{}}}", elems_of(m).iter().join(","));
        write!(f, "<J={},W={}", set(self.j), set(self.w))?;
        if self.has0 {
            write!(f, ",0'")?;
        }
        write!(f, ",I={}>", set(self.i))
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type ExtVector = BTreeMap<ExtElement, S>;

pub fn ext_add(acc: &mut ExtVector, e: ExtElement, c: &S) {
    if c.is_zero() {
        return;
    }
    let x = acc.entry(e).or_insert_with(S::zero);
    *x += c;
    if x.is_zero() {
        acc.remove(&e);
    }
}

pub fn ext_single(e: ExtElement) -> ExtVector {
    [(e, S::one())].into_iter().collect()
}

pub fn ext_scale(v: &ExtVector, c: &S) -> ExtVector {
    let mut out = ExtVector::new();
    for (e, x) in v {
        ext_add(&mut out, *e, &(x * c));
    }
    out
}

pub fn ext_sum(a: &ExtVector, b: &ExtVector, c: &S) -> ExtVector {
    let mut out = a.clone();
    for (e, x) in b {
        ext_add(&mut out, *e, &(x * c));
    }
    out
}

/// Sign of the permutation sorting `seq` into `target` (same multiset, distinct).
pub(crate) fn reorder_sign(seq: &[usize], target: &[usize]) -> i8 {
    let pos: Vec<usize> = seq.iter().map(|x| target.iter().position(|y| y == x).expect("same set")).collect();
    if crate::characters::perm_sign(&pos) > 0 {
        1
    } else {
        -1
    }
}

/// Canonical element for a sequence of V codes, with the sign of the sort,
/// or `None` when a code repeats.
pub fn wedge_normalize(spec: &SpaceSpec, seq: &[usize]) -> Option<(i8, ExtElement)> {
    let mut seen = vec![false; spec.dim_v()];
    for &c in seq {
        if seen[c] {
            return None;
        }
        seen[c] = true;
    }
    let (mut j, mut w, mut i) = (0u32, 0u32, 0u32);
    for k in 1..=spec.n {
        let (p, b) = (seen[spec.plain(k)], seen[spec.barred(k)]);
        let bit = 1 << (k - 1);
        match (p, b) {
            (true, true) => w |= bit,
            (true, false) => j |= bit,
            (false, true) => i |= bit,
            _ => {}
        }
    }
    let has0 = spec.is_odd() && seen[spec.n];
    let e = ExtElement { j, w, i, has0 };
    Some((reorder_sign(seq, &e.sequence(spec)), e))
}

/// All canonical elements of degree `l`, in a fixed order.
pub fn ext_basis(spec: &SpaceSpec, l: usize) -> Vec<ExtElement> {
    let n = spec.n;
    let mut out = vec![];
    // each index k is in none / J / W / I
    for code in 0..4usize.pow(n as u32) {
        let (mut j, mut w, mut i) = (0u32, 0u32, 0u32);
        let mut c = code;
        for k in 0..n {
            match c % 4 {
                1 => j |= 1 << k,
                2 => w |= 1 << k,
                3 => i |= 1 << k,
                _ => {}
            }
            c /= 4;
        }
        for has0 in [false, true] {
            if has0 && !spec.is_odd() {
                continue;
            }
            let e = ExtElement { j, w, i, has0 };
            if e.degree() == l {
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

pub fn ext_index(basis: &[ExtElement]) -> BTreeMap<ExtElement, usize> {
    basis.iter().enumerate().map(|(i, e)| (*e, i)).collect()
}

pub fn ext_to_sparse(v: &ExtVector, index: &BTreeMap<ExtElement, usize>) -> SparseVec {
    v.iter().map(|(e, x)| (index[e], x.clone())).collect()
}

pub fn sparse_to_ext(v: &SparseVec, basis: &[ExtElement]) -> ExtVector {
    v.iter().map(|(i, x)| (basis[*i], x.clone())).collect()
}

/// Image of one canonical element under a generator.
fn act_on_element(spec: &SpaceSpec, vm: &SparseMat, lie: bool, e: &ExtElement) -> ExtVector {
    let seq = e.sequence(spec);
    let mut out = ExtVector::new();
    if lie {
        for pos in 0..seq.len() {
            for (c, x) in &vm.cols[seq[pos]] {
                let mut s = seq.clone();
                s[pos] = *c;
                if let Some((sg, f)) = wedge_normalize(spec, &s) {
                    ext_add(&mut out, f, &(x * &S::from_int(sg as i64)));
                }
            }
        }
    } else {
        // group element: act on every leg
        let cols: Vec<Vec<(usize, S)>> = seq.iter().map(|c| vm.cols[*c].iter().map(|(a, b)| (*a, b.clone())).collect()).collect();
        for choice in cols.iter().map(|c| c.iter()).multi_cartesian_product() {
            let s: Vec<usize> = choice.iter().map(|(a, _)| *a).collect();
            let coef = choice.iter().fold(S::one(), |acc, (_, b)| &acc * b);
            if let Some((sg, f)) = wedge_normalize(spec, &s) {
                ext_add(&mut out, f, &(&coef * &S::from_int(sg as i64)));
            }
        }
    }
    out
}

/// Generator action on exterior vectors (derivation for Lie generators).
pub fn so_action_on_ext(spec: &SpaceSpec, g: Generator, v: &ExtVector) -> Result<ExtVector, ExtError> {
    let vm = v_matrix(&SpaceSpec { dual: false, ..*spec }, g)?;
    let mut out = ExtVector::new();
    for (e, x) in v {
        for (f, y) in act_on_element(spec, &vm, g.is_lie(), e) {
            ext_add(&mut out, f, &(x * &y));
        }
    }
    Ok(out)
}

/// Matrix of a generator on the degree-`l` part in the `ext_basis` order.
pub fn ext_matrix(spec: &SpaceSpec, g: Generator, l: usize) -> Result<SparseMat, ExtError> {
    let vm = v_matrix(&SpaceSpec { dual: false, ..*spec }, g)?;
    let basis = ext_basis(spec, l);
    let idx = ext_index(&basis);
    let lie = g.is_lie();
    Ok(SparseMat::from_fn(basis.len(), basis.len(), |c| ext_to_sparse(&act_on_element(spec, &vm, lie, &basis[c]), &idx)))
}

fn check_degree(v: &ExtVector, l: usize) -> Result<(), ExtError> {
    for e in v.keys() {
        if e.degree() != l {
            return Err(ExtError::Degree { expected: l, found: e.degree() });
        }
    }
    Ok(())
}

/// The signed complement `r_l : wedge^l V -> wedge^{N-l} V` on one element.
pub fn r_ell_element(spec: &SpaceSpec, e: &ExtElement) -> (i8, ExtElement) {
    let full = (1u32 << spec.n) - 1;
    let wc = full & !(e.j | e.i | e.w);
    let sgn = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
    if spec.is_odd() {
        if e.has0 {
            (sgn(wc.count_ones()), ExtElement { j: e.j, w: wc, i: e.i, has0: false })
        } else {
            (sgn(e.w.count_ones()), ExtElement { j: e.j, w: wc, i: e.i, has0: true })
        }
    } else {
        (sgn(e.i.count_ones()), ExtElement { j: e.j, w: wc, i: e.i, has0: false })
    }
}

pub fn r_ell(spec: &SpaceSpec, l: usize, v: &ExtVector) -> Result<ExtVector, ExtError> {
    check_degree(v, l)?;
    let mut out = ExtVector::new();
    for (e, x) in v {
        let (s, f) = r_ell_element(spec, e);
        ext_add(&mut out, f, &(x * &S::from_int(s as i64)));
    }
    Ok(out)
}

pub fn r_ell_matrix(spec: &SpaceSpec, l: usize) -> SparseMat {
    let src = ext_basis(spec, l);
    let dst = ext_basis(spec, spec.big_n - l);
    let idx = ext_index(&dst);
    SparseMat::from_fn(dst.len(), src.len(), |c| {
        let (s, f) = r_ell_element(spec, &src[c]);
        [(idx[&f], S::from_int(s as i64))].into_iter().collect()
    })
}

/// `v = plus + minus` with `r_n plus = plus`, `r_n minus = -minus` (N = 2n).
pub fn en_split(spec: &SpaceSpec, v: &ExtVector) -> Result<(ExtVector, ExtVector), ExtError> {
    if spec.is_odd() {
        return Err(ExtError::Invalid("e_n splitting needs N = 2n".into()));
    }
    let r = r_ell(spec, spec.n, v)?;
    let half = S::frac(1, 2);
    Ok((ext_scale(&ext_sum(v, &r, &S::one()), &half), ext_scale(&ext_sum(v, &r, &-S::one()), &half)))
}

/// `<J,W,Wbar,Ibar>^{(eps)} = (1/sqrt2)(<J,W,..> + eps (-1)^{|I|} <J,W^c,..>)`.
pub fn en_element(spec: &SpaceSpec, e: &ExtElement, eps: i8) -> ExtVector {
    let (s, f) = r_ell_element(spec, e);
    let mut out = ExtVector::new();
    let h = S::frac(1, 2) * S::sqrt2();
    ext_add(&mut out, *e, &h);
    ext_add(&mut out, f, &(&h * &S::from_int((s * eps) as i64)));
    out
}

fn factorial(k: usize) -> S {
    S::from_int((1..=k as i64).product())
}

/// `iota(<J,W,(0'),Wbar,Ibar>) = (1/k!) <I,W,(0'),Wbar,Jbar>*`. The result is
/// expressed in the dual functionals `e*` of the orthonormal basis, keyed by `e`.
pub fn iota_ext(spec: &SpaceSpec, k: usize, v: &ExtVector) -> Result<ExtVector, ExtError> {
    check_degree(v, k)?;
    let _ = spec;
    let inv = factorial(k).inv().expect("k! > 0");
    let mut out = ExtVector::new();
    for (e, x) in v {
        ext_add(&mut out, e.swapped(), &(x * &inv));
    }
    Ok(out)
}

pub fn iota_ext_inverse(spec: &SpaceSpec, k: usize, f: &ExtVector) -> Result<ExtVector, ExtError> {
    check_degree(f, k)?;
    let _ = spec;
    let kf = factorial(k);
    let mut out = ExtVector::new();
    for (e, x) in f {
        ext_add(&mut out, e.swapped(), &(x * &kf));
    }
    Ok(out)
}

/// `iota'` on the exterior algebra: swap the roles of I and J.
pub fn iota_prime_ext(v: &ExtVector) -> ExtVector {
    v.iter().map(|(e, x)| (e.swapped(), x.clone())).collect()
}

pub fn iota_prime_ext_matrix(spec: &SpaceSpec, l: usize) -> SparseMat {
    let basis = ext_basis(spec, l);
    let idx = ext_index(&basis);
    SparseMat::from_fn(basis.len(), basis.len(), |c| [(idx[&basis[c].swapped()], S::one())].into_iter().collect())
}

/// `iota'([I] (x) [J]*) = [J] (x) [I]*` on `Delta (x) Delta*` (index `I * 2^n + J`).
pub fn iota_prime_delta_matrix(spec: &SpaceSpec) -> SparseMat {
    let d = spec.dim_delta();
    SparseMat::from_fn(d * d, d * d, |c| {
        let (i, j) = (c / d, c % d);
        [(j * d + i, S::one())].into_iter().collect()
    })
}

/// Antisymmetrized tensor `sum_s sgn(s) u_{s(1)} (x) ...` of a code sequence,
/// as a sparse vector over `V^{(x) l}` (leg 1 most significant).
pub fn antisymmetrize(spec: &SpaceSpec, seq: &[usize]) -> SparseVec {
    let nv = spec.dim_v();
    let mut out = SparseVec::new();
    let l = seq.len();
    for p in (0..l).permutations(l) {
        let s = crate::characters::perm_sign(&p);
        let idx = p.iter().fold(0usize, |acc, &q| acc * nv + seq[q]);
        add_entry(&mut out, idx, &S::from_int(s));
    }
    out
}

/// Embedding of one canonical element into `V^{(x) l}` (with the `1/l!`).
pub fn ext_to_tensor(spec: &SpaceSpec, e: &ExtElement) -> SparseVec {
    let l = e.degree();
    let inv = factorial(l).inv().expect("nonzero");
    antisymmetrize(spec, &e.sequence(spec)).into_iter().map(|(i, x)| (i, &x * &inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let sp = SpaceSpec::even(2);
        assert_eq!(wedge_normalize(&sp, &[0, 0]), None);
        let w1 = ExtElement::new(&[], &[1], &[], false).unwrap();
        assert_eq!(wedge_normalize(&sp, &[sp.barred(1), sp.plain(1)]), Some((-1, w1)));
        let w12 = ExtElement::new(&[], &[1, 2], &[], false).unwrap();
        assert_eq!(wedge_normalize(&sp, &[sp.plain(1), sp.plain(2), sp.barred(2), sp.barred(1)]), Some((1, w12)));
    }

    #[test]
    fn action_examples() {
        let sp = SpaceSpec::odd(2);
        let u2 = ext_single(ExtElement::new(&[2], &[], &[], false).unwrap());
        let u1 = ext_single(ExtElement::new(&[1], &[], &[], false).unwrap());
        assert_eq!(so_action_on_ext(&sp, Generator::X(1), &u2).unwrap(), u1);
        let w1 = ext_single(ExtElement::new(&[], &[1], &[], false).unwrap());
        assert!(so_action_on_ext(&sp, Generator::H(1), &w1).unwrap().is_empty());
    }

    #[test]
    fn r_ell_examples() {
        let sp = SpaceSpec::even(2);
        let one = ext_single(ExtElement::unit());
        assert_eq!(r_ell(&sp, 0, &one).unwrap(), ext_single(ExtElement::new(&[], &[1, 2], &[], false).unwrap()));
        let sp = SpaceSpec::odd(1);
        let z = ext_single(ExtElement::new(&[], &[], &[], true).unwrap());
        let expect = ext_scale(&ext_single(ExtElement::new(&[], &[1], &[], false).unwrap()), &-S::one());
        assert_eq!(r_ell(&sp, 1, &z).unwrap(), expect);
    }

    #[test]
    fn en_examples() {
        let sp = SpaceSpec::even(2);
        let j12 = ExtElement::new(&[1, 2], &[], &[], false).unwrap();
        assert_eq!(en_element(&sp, &j12, 1), ext_scale(&ext_single(j12), &S::sqrt2()));
        assert!(en_element(&sp, &j12, -1).is_empty());
        let w1 = ExtElement::new(&[], &[1], &[], false).unwrap();
        let (p, m) = en_split(&sp, &ext_single(w1)).unwrap();
        assert_eq!(r_ell(&sp, 2, &p).unwrap(), p);
        assert_eq!(ext_sum(&p, &m, &S::one()), ext_single(w1));
    }
}
