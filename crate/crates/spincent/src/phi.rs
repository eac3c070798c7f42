//! Equivariant embeddings `phi_l : wedge^l V -> Delta (x) Delta*`, their
//! inverses and the Hadamard blocks relating the two weight bases.
//!
//! `Delta (x) Delta*` is indexed by `I * 2^n + J` for `[I] (x) [J]*`. Every
//! variant sends `<J, W, (0'), Wbar, Ibar>` to a signed, scaled sum over
//! `K subset M = [1,n] - J - I` of `[I, K] (x) [J, K]*`; they only differ in
//! the sign rule, the power of 2 and the constraint on `K`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::SpaceSpec;
use crate::exterior::{ext_add, ext_basis, ext_index, r_ell_element, ExtElement, ExtError, ExtVector};
use crate::linalg::{add_entry, SparseMat, SparseVec};
use crate::scalars::AlgebraicScalar as S;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("phi^{{{e1},{e2}}}_{l} does not exist for n = {n}")]
    IllegalSigns { l: usize, e1: i8, e2: i8, n: usize },
    #[error("wrong parity of N for this variant")]
    WrongParity,
    #[error(transparent)]
    Ext(#[from] ExtError),
}

pub type DeltaTensorDual = SparseVec;

/// Which embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiVariant {
    /// N = 2n+1, any `Delta_{e1} (x) Delta_{e2}*`.
    Odd,
    /// N = 2n into `Delta^{e1} (x) (Delta^{e2})*`.
    Even { e1: i8, e2: i8 },
    /// N = 2n, the Pin(2n) embedding into the full `Delta (x) Delta*`.
    Pin,
}

fn sub_masks(m: u32) -> impl Iterator<Item = u32> {
    // all submasks of m, increasing
    let mut out = vec![];
    let mut s = 0u32;
    loop {
        out.push(s);
        if s == m {
            break;
        }
        s = ((s | !m).wrapping_add(1)) & m;
    }
    out.into_iter()
}

fn pm(k: u32) -> S {
    S::sign(k as i64)
}

fn free_mask(spec: &SpaceSpec, j: u32, i: u32) -> u32 {
    ((1u32 << spec.n) - 1) & !(j | i)
}

/// Inversions between the ascending runs of `a` and `b`; `[A, B]` is the
/// alternating bracket, so `[A, B] = (-1)^{this} [A u B]`.
pub fn merge_inversions(a: u32, b: u32) -> u32 {
    (0..32).filter(|&t| b >> t & 1 == 1).map(|t| (a >> (t + 1)).count_ones()).sum()
}

/// `[I] (x) [J]*` index.
pub fn pair_index(spec: &SpaceSpec, i: u32, j: u32) -> usize {
    (i as usize) * spec.dim_delta() + j as usize
}

pub fn legal_even(l: usize, e1: i8, e2: i8) -> bool {
    (e1 * e2) as i64 == if l.is_multiple_of(2) { 1 } else { -1 }
}

/// Shared kernel. `two_pow` is the exponent `d` in the factor `2^{-d/2}`.
fn kernel(
    spec: &SpaceSpec,
    e: &ExtElement,
    two_pow: i64,
    sign: impl Fn(u32) -> S,
    keep: impl Fn(u32) -> bool,
) -> DeltaTensorDual {
    let m = free_mask(spec, e.j, e.i);
    let scale = S::pow_sqrt2(-two_pow);
    let mut out = DeltaTensorDual::new();
    for k in sub_masks(m) {
        if !keep(k) {
            continue;
        }
        let s = &sign(k) * &pm(merge_inversions(e.i, k) + merge_inversions(e.j, k));
        add_entry(&mut out, pair_index(spec, e.i | k, e.j | k), &(&s * &scale));
    }
    out
}

/// Image of one canonical element.
pub fn phi_element(spec: &SpaceSpec, variant: PhiVariant, e: &ExtElement) -> Result<DeltaTensorDual, PhiError> {
    e.check(spec)?;
    let l = e.degree();
    let m = free_mask(spec, e.j, e.i).count_ones() as i64;
    let (i, j) = (e.i.count_ones(), e.j.count_ones());
    let w = e.w;
    let w_minus_k = move |k: u32| pm((w & !k).count_ones());
    match variant {
        PhiVariant::Odd => {
            if !spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            if e.has0 {
                Ok(kernel(spec, e, m, |k| pm((k & !w).count_ones()), |_| true))
            } else {
                Ok(kernel(spec, e, m, w_minus_k, |_| true))
            }
        }
        PhiVariant::Even { e1, e2 } => {
            if spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            if !legal_even(l, e1, e2) {
                return Err(PhiError::IllegalSigns { l, e1, e2, n: spec.n });
            }
            let ok = move |k: u32| {
                let kk = k.count_ones();
                pm(i + kk) == S::from_int(e1 as i64) && pm(j + kk) == S::from_int(e2 as i64)
            };
            let mut v = kernel(spec, e, m - 1, w_minus_k, ok);
            if l == spec.n {
                // on e_n^{e1}: <..>^{(e1)} maps to the displayed sum, and the
                // (-e1) eigenspace is killed
                let h = S::pow_sqrt2(-1);
                v = v.into_iter().map(|(a, x)| (a, &x * &h)).collect();
            }
            Ok(v)
        }
        PhiVariant::Pin => {
            if spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            if l.is_multiple_of(2) {
                Ok(kernel(spec, e, m, w_minus_k, |_| true))
            } else {
                Ok(kernel(spec, e, m, move |k| &w_minus_k(k) * &pm(i + k.count_ones()), |_| true))
            }
        }
    }
}

fn phi_vector(spec: &SpaceSpec, variant: PhiVariant, l: usize, v: &ExtVector) -> Result<DeltaTensorDual, PhiError> {
    let mut out = DeltaTensorDual::new();
    for (e, x) in v {
        if e.degree() != l {
            return Err(ExtError::Degree { expected: l, found: e.degree() }.into());
        }
        for (a, y) in phi_element(spec, variant, e)? {
            add_entry(&mut out, a, &(x * &y));
        }
    }
    Ok(out)
}

pub fn phi_odd(spec: &SpaceSpec, k: usize, v: &ExtVector) -> Result<DeltaTensorDual, PhiError> {
    phi_vector(spec, PhiVariant::Odd, k, v)
}

/// For `l = n` the input is read in `wedge^n V`; the map factors through the
/// projection onto `e_n^{e1}`.
pub fn phi_even(spec: &SpaceSpec, l: usize, e1: i8, e2: i8, v: &ExtVector) -> Result<DeltaTensorDual, PhiError> {
    phi_vector(spec, PhiVariant::Even { e1, e2 }, l, v)
}

pub fn phi_pin(spec: &SpaceSpec, l: usize, v: &ExtVector) -> Result<DeltaTensorDual, PhiError> {
    phi_vector(spec, PhiVariant::Pin, l, v)
}

/// Matrix of `phi_l` on `ext_basis(spec, l)`.
pub fn phi_matrix(spec: &SpaceSpec, variant: PhiVariant, l: usize) -> Result<SparseMat, PhiError> {
    let basis = ext_basis(spec, l);
    let d = spec.dim_delta();
    let cols = basis.iter().map(|e| phi_element(spec, variant, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(SparseMat::from_cols(d * d, cols))
}

// ---------------------------------------------------------------------------
// inverses

/// A block of `Delta (x) Delta*` on which a sum of `phi_l` is an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiSector {
    /// N odd: the even-degree part `sum wedge^{2i} V`.
    OddEvenDegrees,
    /// N odd: the odd-degree part `sum wedge^{2i+1} V`.
    OddOddDegrees,
    /// N even: `Delta^{e1} (x) (Delta^{e2})*`.
    Even { e1: i8, e2: i8 },
    /// N even, Pin(2n): the degrees of one parity against the span of the
    /// `[I] (x) [J]*` with `|I| + |J|` of that parity.
    Pin { odd: bool },
}

impl PhiSector {
    /// Exterior degrees in the domain.
    pub fn degrees(&self, spec: &SpaceSpec) -> Vec<usize> {
        let n = spec.n;
        match *self {
            PhiSector::OddEvenDegrees => (0..=spec.big_n).filter(|l| l % 2 == 0).collect(),
            PhiSector::OddOddDegrees => (0..=spec.big_n).filter(|l| l % 2 == 1).collect(),
            PhiSector::Even { e1, e2 } => (0..=n).filter(|&l| legal_even(l, e1, e2)).collect(),
            PhiSector::Pin { odd } => (0..=spec.big_n).filter(|l| (l % 2 == 1) == odd).collect(),
        }
    }

    fn variant(&self) -> PhiVariant {
        match *self {
            PhiSector::OddEvenDegrees | PhiSector::OddOddDegrees => PhiVariant::Odd,
            PhiSector::Even { e1, e2 } => PhiVariant::Even { e1, e2 },
            PhiSector::Pin { .. } => PhiVariant::Pin,
        }
    }

    /// Whether `[I] (x) [J]*` lies in the target block.
    pub fn contains(&self, i: u32, j: u32) -> bool {
        match *self {
            PhiSector::Even { e1, e2 } => {
                pm(i.count_ones()) == S::from_int(e1 as i64) && pm(j.count_ones()) == S::from_int(e2 as i64)
            }
            PhiSector::Pin { odd } => (i.count_ones() + j.count_ones()) % 2 == odd as u32,
            _ => true,
        }
    }
}

/// Exterior preimage of `[I] (x) [J]*` inside a sector.
pub fn phi_inverse(spec: &SpaceSpec, sector: PhiSector, i_full: u32, j_full: u32) -> Result<ExtVector, PhiError> {
    let n = spec.n;
    let mut out = ExtVector::new();
    if !sector.contains(i_full, j_full) {
        return Ok(out);
    }
    let k = i_full & j_full;
    let (i, j) = (i_full & !k, j_full & !k);
    let mfree = free_mask(spec, j, i);
    let m = mfree.count_ones() as i64;
    let (ci, cj) = (i.count_ones(), j.count_ones());
    // sorted basis element = ms * [I, K] (x) [J, K]*
    let ms = pm(merge_inversions(i, k) + merge_inversions(j, k));
    let wmk = |w: u32| &ms * &pm((w & !k).count_ones());
    let kmw = |w: u32| &ms * &pm((k & !w).count_ones());
    match sector {
        PhiSector::OddEvenDegrees | PhiSector::OddOddDegrees => {
            if !spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            let want_odd = sector == PhiSector::OddOddDegrees;
            // 0' is present exactly when it fixes the degree parity
            let has0 = ((ci + cj) % 2 == 1) != want_odd;
            let scale = S::pow_sqrt2(-m);
            for w in sub_masks(mfree) {
                let s = if has0 { kmw(w) } else { wmk(w) };
                ext_add(&mut out, ExtElement { j, w, i, has0 }, &(&s * &scale));
            }
        }
        PhiSector::Even { e1, .. } => {
            if spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            let low = S::pow_sqrt2(-(m - 1));
            let top = S::pow_sqrt2(-(m + 1));
            for w in sub_masks(mfree) {
                let e = ExtElement { j, w, i, has0: false };
                let l = e.degree();
                // degree n only occurs when e2 = (-1)^n e1
                if l < n {
                    ext_add(&mut out, e, &(&wmk(w) * &low));
                } else if l == n {
                    // <..>^{(e1)} = (1/sqrt2)(x + e1 r_n x)
                    let (s, f) = r_ell_element(spec, &e);
                    let c = &(&wmk(w) * &top) * &S::pow_sqrt2(-1);
                    ext_add(&mut out, e, &c);
                    ext_add(&mut out, f, &(&c * &S::from_int((s * e1) as i64)));
                }
            }
        }
        PhiSector::Pin { odd } => {
            if spec.is_odd() {
                return Err(PhiError::WrongParity);
            }
            if ((ci + cj) % 2 == 1) != odd {
                return Ok(out);
            }
            let scale = S::pow_sqrt2(-m);
            for w in sub_masks(mfree) {
                let e = ExtElement { j, w, i, has0: false };
                let s = if odd { &wmk(w) * &pm(ci + k.count_ones()) } else { wmk(w) };
                ext_add(&mut out, e, &(&s * &scale));
            }
        }
    }
    Ok(out)
}

/// Domain basis of a sector (concatenated over its degrees).
pub fn sector_basis(spec: &SpaceSpec, sector: PhiSector) -> Vec<ExtElement> {
    sector.degrees(spec).into_iter().flat_map(|l| ext_basis(spec, l)).collect()
}

/// Matrix of the sum of the `phi_l` of a sector, columns `sector_basis`.
pub fn sector_phi_matrix(spec: &SpaceSpec, sector: PhiSector) -> Result<SparseMat, PhiError> {
    let basis = sector_basis(spec, sector);
    let d = spec.dim_delta();
    let v = sector.variant();
    let cols = basis.iter().map(|e| phi_element(spec, v, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(SparseMat::from_cols(d * d, cols))
}

/// Matrix of `phi_inverse`, rows `sector_basis`, columns all of `Delta (x) Delta*`.
pub fn sector_inverse_matrix(spec: &SpaceSpec, sector: PhiSector) -> Result<SparseMat, PhiError> {
    let basis = sector_basis(spec, sector);
    let idx = ext_index(&basis);
    let d = spec.dim_delta();
    let mut cols = Vec::with_capacity(d * d);
    for a in 0..d * d {
        let v = phi_inverse(spec, sector, (a / d) as u32, (a % d) as u32)?;
        cols.push(v.iter().map(|(e, x)| (idx[e], x.clone())).collect());
    }
    Ok(SparseMat::from_cols(basis.len(), cols))
}

// ---------------------------------------------------------------------------
// Hadamard blocks

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HadamardBlock {
    pub j: u32,
    pub i: u32,
    /// subsets of `[1,n] - J - I`, binary-counter order; rows W, columns K
    pub subsets: Vec<u32>,
    pub entries: Vec<Vec<i8>>,
}

impl HadamardBlock {
    pub fn size(&self) -> usize {
        self.subsets.len()
    }

    /// `H H^T == 2^m Id`
    pub fn is_hadamard(&self) -> bool {
        let s = self.size() as i64;
        (0..self.size()).all(|a| {
            (0..self.size()).all(|b| {
                let dot: i64 = (0..self.size()).map(|c| (self.entries[a][c] * self.entries[b][c]) as i64).sum();
                dot == if a == b { s } else { 0 }
            })
        })
    }
}

pub fn hadamard_block(n: usize, j: u32, i: u32) -> Result<HadamardBlock, PhiError> {
    if j & i != 0 {
        return Err(ExtError::Invalid("J and I must be disjoint".into()).into());
    }
    let free = ((1u32 << n) - 1) & !(j | i);
    let subsets: Vec<u32> = sub_masks(free).collect();
    let entries = subsets
        .iter()
        .map(|w| subsets.iter().map(|k| if (w & !k).count_ones() % 2 == 0 { 1 } else { -1 }).collect())
        .collect();
    Ok(HadamardBlock { j, i, subsets, entries })
}

// ---------------------------------------------------------------------------

/// `phi_{N-l} r_l = phi_l` (odd N), and `phi^{e1e2}_{2n-l} r_l = e2 (-1)^n
/// phi^{e1e2}_l` for every legal sign pair (even N).
pub fn phirl_check(spec: &SpaceSpec, l: usize) -> Result<bool, PhiError> {
    use crate::exterior::r_ell_matrix;
    let r = r_ell_matrix(spec, l);
    if spec.is_odd() {
        let lhs = phi_matrix(spec, PhiVariant::Odd, spec.big_n - l)?.mul(&r);
        return Ok(lhs == phi_matrix(spec, PhiVariant::Odd, l)?);
    }
    for (e1, e2) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        if !legal_even(l, e1, e2) {
            continue;
        }
        let v = PhiVariant::Even { e1, e2 };
        let lhs = phi_matrix(spec, v, spec.big_n - l)?.mul(&r);
        let c = S::from_int((e2 as i64) * if spec.n.is_multiple_of(2) { 1 } else { -1 });
        if lhs != phi_matrix(spec, v, l)?.scale(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ext_single;
    use num_traits::One;

    fn pair(spec: &SpaceSpec, i: &[usize], j: &[usize], c: S) -> (usize, S) {
        use crate::clifford::mask_of;
        (pair_index(spec, mask_of(i), mask_of(j)), c)
    }

    #[test]
    fn odd_examples() {
        let sp = SpaceSpec::odd(1);
        let h = S::pow_sqrt2(-1);
        let one = ext_single(ExtElement::unit());
        let expect: SparseVec = [pair(&sp, &[], &[], h.clone()), pair(&sp, &[1], &[1], h.clone())].into_iter().collect();
        assert_eq!(phi_odd(&sp, 0, &one).unwrap(), expect);
        let z = ext_single(ExtElement::new(&[], &[], &[], true).unwrap());
        let expect: SparseVec = [pair(&sp, &[], &[], h.clone()), pair(&sp, &[1], &[1], -h)].into_iter().collect();
        assert_eq!(phi_odd(&sp, 1, &z).unwrap(), expect);
        let u1 = ext_single(ExtElement::new(&[1], &[], &[], false).unwrap());
        let expect: SparseVec = [pair(&sp, &[], &[1], S::one())].into_iter().collect();
        assert_eq!(phi_odd(&sp, 1, &u1).unwrap(), expect);
    }

    #[test]
    fn even_examples() {
        let sp = SpaceSpec::even(2);
        let one = ext_single(ExtElement::unit());
        let h = S::pow_sqrt2(-1);
        let expect: SparseVec = [pair(&sp, &[], &[], h.clone()), pair(&sp, &[1, 2], &[1, 2], h)].into_iter().collect();
        assert_eq!(phi_even(&sp, 0, 1, 1, &one).unwrap(), expect);
        // highest weight: <J={1,2}> maps to [0] (x) [1,2]*, so the rebased
        // <J={1,2}>^{(+)} = sqrt2 <J={1,2}> goes to sqrt2 times that
        let j12 = ExtElement::new(&[1, 2], &[], &[], false).unwrap();
        let expect: SparseVec = [pair(&sp, &[], &[1, 2], S::one())].into_iter().collect();
        assert_eq!(phi_even(&sp, 2, 1, 1, &ext_single(j12)).unwrap(), expect);
        let v = crate::exterior::en_element(&sp, &j12, 1);
        let expect: SparseVec = [pair(&sp, &[], &[1, 2], S::sqrt2())].into_iter().collect();
        assert_eq!(phi_even(&sp, 2, 1, 1, &v).unwrap(), expect);
        assert!(phi_even(&sp, 1, 1, 1, &ext_single(ExtElement::new(&[1], &[], &[], false).unwrap())).is_err());
    }

    #[test]
    fn hadamard_examples() {
        let h = hadamard_block(1, 0, 0).unwrap();
        assert_eq!(h.entries, vec![vec![1, 1], vec![-1, 1]]);
        assert_eq!(hadamard_block(1, 1, 0).unwrap().entries, vec![vec![1]]);
        assert!(h.is_hadamard());
    }
}
