//! Fock-space model of the spin module and the Clifford / so(N) / Pin actions.
//!
//! A Fock basis vector `[I]` is stored as the bitmask of `I` (bit `k-1` for
//! index `k`), so basis order is binary-counter order. The vector
//! representation `V` uses codes `0..N`: `u_1..u_n`, then `u_0'` (odd N), then
//! `u_nbar..u_1bar`; the barred partner of code `c` is `N-1-c`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{SparseMat, SparseVec};
use crate::scalars::AlgebraicScalar as S;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("invalid space: {0}")]
    InvalidSpec(String),
    #[error("generator {0:?} is not available here: {1}")]
    InvalidGenerator(Generator, String),
}

pub type DeltaVector = SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// `Delta_+` / `Delta_-` for odd N.
    pub delta_sign: Option<i8>,
    pub dual: bool,
}

impl SpaceSpec {
    pub fn new(n: usize, big_n: usize) -> Result<Self, CliffordError> {
        if big_n == 2 * n {
            Ok(SpaceSpec { n, big_n, delta_sign: None, dual: false })
        } else if big_n == 2 * n + 1 {
            Ok(SpaceSpec { n, big_n, delta_sign: Some(1), dual: false })
        } else {
            Err(CliffordError::InvalidSpec(format!("N = {big_n} is neither 2n nor 2n+1 for n = {n}")))
        }
    }

    pub fn odd(n: usize) -> Self {
        SpaceSpec { n, big_n: 2 * n + 1, delta_sign: Some(1), dual: false }
    }

    pub fn even(n: usize) -> Self {
        SpaceSpec { n, big_n: 2 * n, delta_sign: None, dual: false }
    }

    pub fn with_sign(mut self, s: i8) -> Self {
        if self.is_odd() {
            self.delta_sign = Some(s.signum());
        }
        self
    }

    pub fn dualized(mut self) -> Self {
        self.dual = !self.dual;
        self
    }

    pub fn is_odd(&self) -> bool {
        self.big_n % 2 == 1
    }

    pub fn sign(&self) -> i8 {
        self.delta_sign.unwrap_or(1)
    }

    pub fn dim_delta(&self) -> usize {
        1 << self.n
    }

    pub fn dim_v(&self) -> usize {
        self.big_n
    }

    /// Code of `u_k`.
    pub fn plain(&self, k: usize) -> usize {
        k - 1
    }

    /// Code of `u_kbar`.
    pub fn barred(&self, k: usize) -> usize {
        self.big_n - k
    }

    pub fn zero_prime(&self) -> Option<usize> {
        self.is_odd().then_some(self.n)
    }

    pub fn bar(&self, c: usize) -> usize {
        self.big_n - 1 - c
    }

    /// Symmetric form: `S(u_a, u_bbar) = delta_ab`, `S(u_0', u_0') = 1`.
    pub fn form(&self, a: usize, b: usize) -> bool {
        b == self.bar(a)
    }

    pub fn vindex(&self, c: usize) -> VIndex {
        if c < self.n {
            VIndex::Plain(c + 1)
        } else if self.is_odd() && c == self.n {
            VIndex::ZeroPrime
        } else {
            VIndex::Bar(self.big_n - c)
        }
    }

    pub fn code(&self, v: VIndex) -> usize {
        match v {
            VIndex::Plain(k) => self.plain(k),
            VIndex::ZeroPrime => self.n,
            VIndex::Bar(k) => self.barred(k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VIndex {
    Plain(usize),
    ZeroPrime,
    Bar(usize),
}

impl std::fmt::Display for VIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VIndex::Plain(k) => write!(f, "u{k}"),
            VIndex::ZeroPrime => write!(f, "u0'"),
            VIndex::Bar(k) => write!(f, "u{k}bar"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    U(usize),
    UBar(usize),
    U0,
    X(usize),
    Y(usize),
    H(usize),
    /// `u_n - u_nbar`, N even.
    Reflection,
    /// central element, N odd.
    Z,
    /// associator, N even.
    Assoc,
}

impl Generator {
    pub fn is_lie(&self) -> bool {
        matches!(self, Generator::X(_) | Generator::Y(_) | Generator::H(_))
    }
}

/// All `X_i`, `Y_i`, `h_i`.
pub fn lie_generators(spec: &SpaceSpec) -> Vec<Generator> {
    let n = spec.n;
    (1..=n).map(Generator::X).chain((1..=n).map(Generator::Y)).chain((1..=n).map(Generator::H)).collect()
}

/// Generators of Pin(N) beyond the identity component.
pub fn group_generators(spec: &SpaceSpec) -> Vec<Generator> {
    if spec.is_odd() {
        vec![Generator::Z]
    } else if spec.n > 0 {
        vec![Generator::Reflection]
    } else {
        vec![]
    }
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &k| m | (1 << (k - 1)))
}

pub fn elems_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| (mask >> b) & 1 == 1).map(|b| b + 1).collect()
}

/// `[i_1, ..., i_r]` in the alternating convention: sign and sorted set, or
/// `None` if an index repeats.
pub fn normalize_bracket(seq: &[usize]) -> Option<(i8, u32)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    // bubble sort counting transpositions
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, mask_of(&v)))
}

fn parity_sign(k: u32) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

/// Letters of the Clifford algebra that occur in generator formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    U(usize),
    UBar(usize),
    U0,
}

fn letter_matrix(spec: &SpaceSpec, l: Letter) -> SparseMat {
    let dim = spec.dim_delta();
    // Delta_- is re-based so that only the signs of the single letters change
    let twist = if spec.sign() < 0 { -S::one() } else { S::one() };
    SparseMat::from_fn(dim, dim, |m| {
        let mask = m as u32;
        let mut col = SparseVec::new();
        match l {
            Letter::U(k) => {
                let bit = 1u32 << (k - 1);
                if mask & bit != 0 {
                    let s = (mask & (bit - 1)).count_ones();
                    col.insert((mask ^ bit) as usize, &parity_sign(s) * &twist);
                }
            }
            Letter::UBar(k) => {
                let bit = 1u32 << (k - 1);
                if mask & bit == 0 {
                    let s = (mask & (bit - 1)).count_ones();
                    col.insert((mask | bit) as usize, &parity_sign(s) * &twist);
                }
            }
            Letter::U0 => {
                col.insert(m, &parity_sign(mask.count_ones()) * &twist);
            }
        }
        col
    })
}

/// Matrix of a Clifford generator `u_k`, `u_kbar`, `u_0` on the Fock space.
pub fn clifford_matrix(spec: &SpaceSpec, g: Generator) -> Result<SparseMat, CliffordError> {
    let l = match g {
        Generator::U(k) if (1..=spec.n).contains(&k) => Letter::U(k),
        Generator::UBar(k) if (1..=spec.n).contains(&k) => Letter::UBar(k),
        Generator::U0 if spec.is_odd() => Letter::U0,
        _ => return Err(CliffordError::InvalidGenerator(g, "not a Clifford generator of this space".into())),
    };
    Ok(letter_matrix(spec, l))
}

/// `v -> g v` for a Clifford generator.
pub fn clifford_action(spec: &SpaceSpec, g: Generator, v: &DeltaVector) -> Result<DeltaVector, CliffordError> {
    Ok(clifford_matrix(spec, g)?.apply(v))
}

/// A Lie generator as a combination of quadratic Clifford words.
pub fn lie_terms(spec: &SpaceSpec, g: Generator) -> Result<Vec<(S, Letter, Letter)>, CliffordError> {
    let n = spec.n;
    let one = S::one;
    let bad = |m: &str| Err(CliffordError::InvalidGenerator(g, m.into()));
    match g {
        Generator::X(k) | Generator::Y(k) | Generator::H(k) if k == 0 || k > n => bad("index out of range"),
        Generator::X(k) if k < n => Ok(vec![(one(), Letter::U(k), Letter::UBar(k + 1))]),
        Generator::Y(k) if k < n => Ok(vec![(one(), Letter::U(k + 1), Letter::UBar(k))]),
        Generator::X(_) if spec.is_odd() => Ok(vec![(one(), Letter::U(n), Letter::U0)]),
        Generator::Y(_) if spec.is_odd() => Ok(vec![(one(), Letter::U0, Letter::UBar(n))]),
        Generator::X(_) if n >= 2 => Ok(vec![(one(), Letter::U(n - 1), Letter::U(n))]),
        Generator::Y(_) if n >= 2 => Ok(vec![(one(), Letter::UBar(n), Letter::UBar(n - 1))]),
        Generator::X(_) | Generator::Y(_) => bad("no root vector X_1 / Y_1 for so(2)"),
        Generator::H(k) => {
            let h = S::frac(1, 2);
            Ok(vec![(h.clone(), Letter::U(k), Letter::UBar(k)), (-h, Letter::UBar(k), Letter::U(k))])
        }
        _ => bad("not a Lie generator"),
    }
}

fn fock_diag(spec: &SpaceSpec, f: impl Fn(u32) -> S + Sync + Send) -> SparseMat {
    let dim = spec.dim_delta();
    SparseMat::from_fn(dim, dim, |m| {
        let mut c = SparseVec::new();
        let x = f(m as u32);
        if !x.is_zero() {
            c.insert(m, x);
        }
        c
    })
}

/// Matrix of any generator on `Delta` (or on `Delta*` when `spec.dual`).
pub fn delta_matrix(spec: &SpaceSpec, g: Generator) -> Result<SparseMat, CliffordError> {
    if spec.dual {
        let base = SpaceSpec { dual: false, ..*spec };
        let m = delta_matrix(&base, g)?;
        return Ok(match g {
            // (rho(g)^{-1})^T ; g^2 = -1 for the reflection
            Generator::Reflection => m.transpose().scale(&-S::one()),
            Generator::Z | Generator::Assoc => m.transpose(),
            _ => m.transpose().scale(&-S::one()),
        });
    }
    match g {
        Generator::U(_) | Generator::UBar(_) | Generator::U0 => clifford_matrix(spec, g),
        Generator::X(_) | Generator::Y(_) | Generator::H(_) => {
            let mut acc = SparseMat::zeros(spec.dim_delta(), spec.dim_delta());
            for (c, a, b) in lie_terms(spec, g)? {
                acc = acc.axpy(&c, &letter_matrix(spec, a).mul(&letter_matrix(spec, b)));
            }
            Ok(acc)
        }
        Generator::Reflection if !spec.is_odd() && spec.n > 0 => {
            Ok(letter_matrix(spec, Letter::U(spec.n)).sub(&letter_matrix(spec, Letter::UBar(spec.n))))
        }
        Generator::Z if spec.is_odd() => Ok(SparseMat::scalar(spec.dim_delta(), &S::from_int(spec.sign() as i64))),
        Generator::Assoc if !spec.is_odd() => Ok(fock_diag(spec, |m| parity_sign(m.count_ones()))),
        _ => Err(CliffordError::InvalidGenerator(g, format!("wrong parity for N = {}", spec.big_n))),
    }
}

/// Lie generator action on the Fock space.
pub fn so_action_on_delta(spec: &SpaceSpec, g: Generator, v: &DeltaVector) -> Result<DeltaVector, CliffordError> {
    if !g.is_lie() {
        return Err(CliffordError::InvalidGenerator(g, "not a Lie generator".into()));
    }
    Ok(delta_matrix(spec, g)?.apply(v))
}

/// Dual action on `[I]*`: minus transpose for Lie generators.
pub fn dual_action(spec: &SpaceSpec, g: Generator, f: &DeltaVector) -> Result<DeltaVector, CliffordError> {
    let d = SpaceSpec { dual: true, ..*spec };
    Ok(delta_matrix(&d, g)?.apply(f))
}

/// Reflection, central element or associator acting on the Fock space.
pub fn pin_extra_action(spec: &SpaceSpec, g: Generator, v: &DeltaVector) -> Result<DeltaVector, CliffordError> {
    if !matches!(g, Generator::Reflection | Generator::Z | Generator::Assoc) {
        return Err(CliffordError::InvalidGenerator(g, "not a group element".into()));
    }
    Ok(delta_matrix(spec, g)?.apply(v))
}

/// A letter viewed as a vector of V: (code, coefficient). `u_0 = sqrt2 u_0'`.
fn letter_in_v(spec: &SpaceSpec, l: Letter) -> (usize, S) {
    match l {
        Letter::U(k) => (spec.plain(k), S::one()),
        Letter::UBar(k) => (spec.barred(k), S::one()),
        Letter::U0 => (spec.n, S::sqrt2()),
    }
}

/// Matrix of a generator on V (standard basis), or on V* when `spec.dual`.
pub fn v_matrix(spec: &SpaceSpec, g: Generator) -> Result<SparseMat, CliffordError> {
    let dim = spec.dim_v();
    if spec.dual {
        let base = SpaceSpec { dual: false, ..*spec };
        let m = v_matrix(&base, g)?;
        return Ok(if g.is_lie() { m.transpose().scale(&-S::one()) } else { m.transpose() });
    }
    match g {
        Generator::X(_) | Generator::Y(_) | Generator::H(_) => {
            let mut m = SparseMat::zeros(dim, dim);
            for (c, a, b) in lie_terms(spec, g)? {
                let (ca, xa) = letter_in_v(spec, a);
                let (cb, xb) = letter_in_v(spec, b);
                // ad(ab) w = S(b, w) a - S(a, w) b
                for w in 0..dim {
                    if spec.form(cb, w) {
                        m.add_to(ca, w, &(&c * &(&xa * &xb)));
                    }
                    if spec.form(ca, w) {
                        m.add_to(cb, w, &-(&c * &(&xa * &xb)));
                    }
                }
            }
            Ok(m)
        }
        Generator::Reflection if !spec.is_odd() && spec.n > 0 => {
            let mut m = SparseMat::identity(dim);
            let (a, b) = (spec.plain(spec.n), spec.barred(spec.n));
            m.cols[a] = [(b, S::one())].into_iter().collect();
            m.cols[b] = [(a, S::one())].into_iter().collect();
            Ok(m)
        }
        Generator::Z if spec.is_odd() => Ok(SparseMat::scalar(dim, &-S::one())),
        _ => Err(CliffordError::InvalidGenerator(g, "no action on V".into())),
    }
}

/// Action on a V vector given as code -> coefficient.
pub fn so_action_on_v(spec: &SpaceSpec, g: Generator, w: &SparseVec) -> Result<SparseVec, CliffordError> {
    Ok(v_matrix(spec, g)?.apply(w))
}

/// `iota_Delta : Delta -> Delta*` as a matrix (columns indexed by `[I]`,
/// rows by `[J]*`).
pub fn iota_delta_matrix(spec: &SpaceSpec) -> SparseMat {
    let n = spec.n;
    let full = (1u32 << n) - 1;
    let dim = spec.dim_delta();
    SparseMat::from_fn(dim, dim, |m| {
        let mask = m as u32;
        let card = mask.count_ones();
        let sum: u32 = elems_of(mask).iter().map(|&x| x as u32).sum();
        let s = if spec.is_odd() {
            parity_sign((n as u32 + 1) * card + sum)
        } else if n.is_multiple_of(2) {
            parity_sign(sum)
        } else {
            // +- according to Delta^{+-}
            &parity_sign(card) * &parity_sign(sum)
        };
        [((full ^ mask) as usize, s)].into_iter().collect()
    })
}

pub fn iota_delta(spec: &SpaceSpec, v: &DeltaVector) -> DeltaVector {
    iota_delta_matrix(spec).apply(v)
}

/// Action on `Delta (x) V^{(x) k}` (index `mask * N^k + legs`, leg 1 most
/// significant). Lie generators act as derivations, group elements diagonally.
pub fn tensor_matrix(spec: &SpaceSpec, g: Generator, k: usize) -> Result<SparseMat, CliffordError> {
    let d = delta_matrix(spec, g)?;
    let nv = spec.dim_v();
    if k == 0 {
        return Ok(d);
    }
    if g.is_lie() {
        let v = v_matrix(spec, g)?;
        let dim_v_k = nv.pow(k as u32);
        let mut acc = d.kron(&SparseMat::identity(dim_v_k));
        for pos in 0..k {
            let left = SparseMat::identity(spec.dim_delta() * nv.pow(pos as u32));
            let right = SparseMat::identity(nv.pow((k - pos - 1) as u32));
            acc = acc.add(&left.kron(&v).kron(&right));
        }
        Ok(acc)
    } else {
        let v = match v_matrix(spec, g) {
            Ok(v) => v,
            // the associator acts trivially on the V legs
            Err(_) if g == Generator::Assoc => SparseMat::identity(nv),
            Err(e) => return Err(e),
        };
        let mut acc = d;
        for _ in 0..k {
            acc = acc.kron(&v);
        }
        Ok(acc)
    }
}

/// Basis vector `[I]`.
pub fn fock(indices: &[usize]) -> DeltaVector {
    [(mask_of(indices) as usize, S::one())].into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(indices: &[usize]) -> DeltaVector {
        fock(indices)
    }

    fn neg(v: DeltaVector) -> DeltaVector {
        v.into_iter().map(|(k, x)| (k, -x)).collect()
    }

    #[test]
    fn clifford_examples() {
        let sp = SpaceSpec::odd(2);
        assert_eq!(clifford_action(&sp, Generator::U(1), &e(&[1])).unwrap(), e(&[]));
        assert_eq!(clifford_action(&sp, Generator::UBar(1), &e(&[2])).unwrap(), e(&[1, 2]));
        assert!(clifford_action(&sp, Generator::U(2), &e(&[1])).unwrap().is_empty());
    }

    #[test]
    fn lie_examples() {
        let sp = SpaceSpec::odd(2);
        assert_eq!(so_action_on_delta(&sp, Generator::X(1), &e(&[1])).unwrap(), neg(e(&[2])));
        let half: DeltaVector = [(0, S::frac(1, 2))].into_iter().collect();
        assert_eq!(so_action_on_delta(&sp, Generator::H(1), &e(&[])).unwrap(), half);
        let ev = SpaceSpec::even(3);
        assert_eq!(so_action_on_delta(&ev, Generator::Y(3), &e(&[])).unwrap(), neg(e(&[2, 3])));
    }

    #[test]
    fn v_examples() {
        let sp = SpaceSpec::odd(2);
        let u = |c: usize| -> SparseVec { [(c, S::one())].into_iter().collect() };
        assert_eq!(so_action_on_v(&sp, Generator::X(1), &u(sp.plain(2))).unwrap(), u(sp.plain(1)));
        let minus: SparseVec = [(sp.barred(2), -S::one())].into_iter().collect();
        assert_eq!(so_action_on_v(&sp, Generator::X(1), &u(sp.barred(1))).unwrap(), minus);
        let r: SparseVec = [(sp.plain(2), S::sqrt2())].into_iter().collect();
        assert_eq!(so_action_on_v(&sp, Generator::X(2), &u(sp.n)).unwrap(), r);
    }

    #[test]
    fn dual_examples() {
        let sp = SpaceSpec::odd(1);
        assert_eq!(dual_action(&sp, Generator::X(1), &e(&[])).unwrap(), e(&[1]));
        let mh: DeltaVector = [(0, S::frac(-1, 2))].into_iter().collect();
        assert_eq!(dual_action(&sp, Generator::H(1), &e(&[])).unwrap(), mh);
        assert!(dual_action(&sp, Generator::X(1), &e(&[1])).unwrap().is_empty());
    }

    #[test]
    fn pin_extra_examples() {
        let sp = SpaceSpec::even(2);
        assert_eq!(pin_extra_action(&sp, Generator::Reflection, &e(&[])).unwrap(), neg(e(&[2])));
        let r = delta_matrix(&sp, Generator::Reflection).unwrap();
        assert_eq!(r.mul(&r), SparseMat::scalar(4, &-S::one()));
        assert_eq!(pin_extra_action(&sp, Generator::Assoc, &e(&[1, 2])).unwrap(), e(&[1, 2]));
        assert!(pin_extra_action(&SpaceSpec::odd(2), Generator::Reflection, &e(&[])).is_err());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota_delta(&SpaceSpec::odd(2), &e(&[])), e(&[1, 2]));
        assert_eq!(iota_delta(&SpaceSpec::odd(2), &e(&[1])), e(&[2]));
        assert_eq!(iota_delta(&SpaceSpec::even(2), &e(&[])), e(&[1, 2]));
    }

    #[test]
    fn brackets() {
        assert_eq!(normalize_bracket(&[2, 1]), Some((-1, 0b11)));
        assert_eq!(normalize_bracket(&[1, 1]), None);
        assert_eq!(normalize_bracket(&[3, 1, 2]), Some((1, 0b111)));
    }
}
