//! Equivariant operators on `Delta (x) V^{(x) k}`: Alt, pr, inj, contraction,
//! insertion of `id_V`, the homomorphisms `psi^p_q`, realization of diagrams
//! as exact matrices, the change between the two diagram parametrizations
//! and the subspaces `T^0_{k,s}`.
//!
//! A tensor basis element is a Fock mask and `k` leg codes. Its index is
//! `mask * N^k + sum legs[i] N^{k-1-i}` (leg 1 most significant), so a
//! [`TensorVector`] is a plain [`SparseVec`]. Positions are 1-based.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::perm_sign;
use crate::clifford::SpaceSpec;
use crate::diagrams::{
    diagram_from_reading, read_diagram, DiagramError, DiagramExpr, DiagramReading, GBDiagram, Parametrization, Vertex,
};
use crate::exterior::{ext_basis, ext_to_tensor, wedge_normalize, ExtElement};
use crate::linalg::{add_entry, Echelon, SparseMat, SparseVec};
use crate::phi::{merge_inversions, phi_element, PhiError, PhiVariant};
use crate::scalars::{AlgebraicScalar as S, PolyX};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpsError {
    #[error("{op} of degree {degree} is out of range for n = {n}")]
    OutOfRange { op: &'static str, degree: usize, n: usize },
    #[error("bad positions: {0}")]
    Position(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("N must be even here")]
    NeedEven,
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type TensorVector = SparseVec;

/// `Delta (x) V^{(x) k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSpace {
    pub spec: SpaceSpec,
    pub k: usize,
}

impl TensorSpace {
    pub fn new(spec: SpaceSpec, k: usize) -> Self {
        TensorSpace { spec, k }
    }

    pub fn legs_dim(&self) -> usize {
        self.spec.big_n.pow(self.k as u32)
    }

    pub fn dim(&self) -> usize {
        self.spec.dim_delta() * self.legs_dim()
    }

    pub fn index(&self, mask: u32, legs: &[usize]) -> usize {
        debug_assert_eq!(legs.len(), self.k);
        let nv = self.spec.big_n;
        mask as usize * self.legs_dim() + legs.iter().fold(0, |acc, &c| acc * nv + c)
    }

    pub fn split(&self, idx: usize) -> (u32, Vec<usize>) {
        let nv = self.spec.big_n;
        let ld = self.legs_dim();
        let mut rest = idx % ld;
        let mut legs = vec![0; self.k];
        for i in (0..self.k).rev() {
            legs[i] = rest % nv;
            rest /= nv;
        }
        ((idx / ld) as u32, legs)
    }

    /// Weight of a basis element under the maximal torus. Every operator in
    /// this module preserves it.
    pub fn weight(&self, idx: usize) -> Vec<i32> {
        let (mask, legs) = self.split(idx);
        let n = self.spec.n;
        let mut w: Vec<i32> = (0..n).map(|i| -((mask >> i & 1) as i32)).collect();
        for c in legs {
            if c < n {
                w[c] += 1;
            } else if c >= self.spec.big_n - n {
                w[self.spec.big_n - 1 - c] -= 1;
            }
        }
        w
    }
}

/// An exact matrix between two tensor spaces. For odd N the codomain carries
/// `Delta_{e (-1)^{k+l}}` when the domain carries `Delta_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: TensorSpace,
    pub codomain: TensorSpace,
    pub mat: SparseMat,
}

#[derive(Serialize)]
struct CooExport<'a> {
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
    k: usize,
    l: usize,
    nrows: usize,
    ncols: usize,
    entries: &'a [(usize, usize, String)],
}

impl LinearMap {
    pub fn new(domain: TensorSpace, l: usize, mat: SparseMat) -> Self {
        let mut spec = domain.spec;
        if spec.is_odd() && (domain.k + l) % 2 == 1 {
            spec = spec.with_sign(-spec.sign());
        }
        LinearMap { domain, codomain: TensorSpace::new(spec, l), mat }
    }

    pub fn to_coo_json(&self) -> serde_json::Value {
        let entries = self.mat.to_coo();
        serde_json::to_value(CooExport {
            n: self.domain.spec.n,
            big_n: self.domain.spec.big_n,
            k: self.domain.k,
            l: self.codomain.k,
            nrows: self.mat.nrows,
            ncols: self.mat.ncols,
            entries: &entries,
        })
        .expect("plain data")
    }
}

/// Pin(2n+1) or Pin(2n): selects the sign tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Odd,
    Even,
}

impl Family {
    pub fn of(spec: &SpaceSpec) -> Self {
        if spec.is_odd() {
            Family::Odd
        } else {
            Family::Even
        }
    }
}

// ---------------------------------------------------------------------------
// small helpers

pub(crate) fn pm(k: usize) -> S {
    S::sign(k as i64)
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn bits(m: u32) -> usize {
    m.count_ones() as usize
}

fn sub_masks(m: u32) -> Vec<u32> {
    let mut out = vec![];
    let mut s = 0u32;
    loop {
        out.push(s);
        if s == m {
            break;
        }
        s = ((s | !m).wrapping_add(1)) & m;
    }
    out
}

fn asc(m: u32) -> impl DoubleEndedIterator<Item = usize> {
    (0..32usize).filter(move |b| m >> b & 1 == 1).map(|b| b + 1)
}

/// Inversion parity of a sequence of distinct entries.
fn seq_sign(seq: &[usize]) -> S {
    S::from_int(perm_sign(seq))
}

/// `sum_s sgn(s) seq_s` as (sign, permuted sequence) pairs.
fn signed_perms(seq: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let l = seq.len();
    (0..l).permutations(l).map(|p| (perm_sign(&p), p.iter().map(|&i| seq[i]).collect())).collect()
}

fn check_positions(k: usize, t: &[usize]) -> Result<(), OpsError> {
    if t.iter().any(|&p| p == 0 || p > k) || t.iter().duplicates().next().is_some() {
        return Err(OpsError::Position(format!("{t:?} in [1,{k}]")));
    }
    Ok(())
}

/// Output legs with `seq[j]` at position `t[j]` and `rest` filling the others
/// in order.
fn place(k_out: usize, t: &[usize], seq: &[usize], rest: &[usize]) -> Vec<usize> {
    let mut out = vec![usize::MAX; k_out];
    for (j, &p) in t.iter().enumerate() {
        out[p - 1] = seq[j];
    }
    let mut it = rest.iter();
    for o in out.iter_mut() {
        if *o == usize::MAX {
            *o = *it.next().expect("leg count");
        }
    }
    out
}

fn pick(legs: &[usize], t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let seq = t.iter().map(|&p| legs[p - 1]).collect();
    let rest = (1..=legs.len()).filter(|p| !t.contains(p)).map(|p| legs[p - 1]).collect();
    (seq, rest)
}

type Terms = Vec<(u32, Vec<usize>, S)>;

fn lift<F>(src: TensorSpace, dst: TensorSpace, v: &TensorVector, f: F) -> TensorVector
where
    F: Fn(u32, &[usize]) -> Terms,
{
    let mut out = TensorVector::new();
    for (&idx, x) in v {
        let (mask, legs) = src.split(idx);
        for (m, l, c) in f(mask, &legs) {
            add_entry(&mut out, dst.index(m, &l), &(x * &c));
        }
    }
    out
}

fn matrix_of<F>(src: TensorSpace, dst: TensorSpace, f: F) -> SparseMat
where
    F: Fn(u32, &[usize]) -> Terms + Sync,
{
    let cols: Vec<SparseVec> = (0..src.dim())
        .into_par_iter()
        .map(|c| {
            let (mask, legs) = src.split(c);
            let mut col = SparseVec::new();
            for (m, l, x) in f(mask, &legs) {
                add_entry(&mut col, dst.index(m, &l), &x);
            }
            col
        })
        .collect();
    SparseMat::from_cols(dst.dim(), cols)
}

// ---------------------------------------------------------------------------
// kernels on Fock basis elements

/// `pr_p([D] (x) <U, W, (0'), Wbar, Bbar>)` with `p` the degree of `e`.
pub fn pr_kernel(spec: &SpaceSpec, mask: u32, e: &ExtElement) -> Option<(u32, S)> {
    let (u, w, b) = (e.j, e.w, e.i);
    if u & !mask != 0 {
        return None;
    }
    let k = mask & !u;
    if b & k != 0 {
        return None;
    }
    let mut s = merge_inversions(u, k) as usize + merge_inversions(b, k) as usize;
    s += if e.has0 { bits(k & !w) } else { bits(w & !k) };
    if !spec.is_odd() && e.degree() % 2 == 1 {
        s += bits(k) + bits(b);
    }
    Some((b | k, &pm(s) * &S::pow_sqrt2((bits(u) + bits(b)) as i64)))
}

/// `inj_p([D])` as `(mask, e, c)`: the term is `c [mask] (x) p! <e>`.
pub fn inj_kernel(spec: &SpaceSpec, p: usize, mask: u32) -> Vec<(u32, ExtElement, S)> {
    let full = (1u32 << spec.n) - 1;
    let mut out = vec![];
    for u in sub_masks(mask) {
        let k = mask & !u;
        let e_tk = merge_inversions(u, k) as usize;
        for b in sub_masks(full & !mask) {
            let head = bits(b) + bits(u);
            if head > p {
                continue;
            }
            let bracket = merge_inversions(b, k) as usize;
            let two = S::pow_sqrt2(head as i64);
            for w in sub_masks(full & !u & !b) {
                let deg = head + 2 * bits(w);
                let mut s = e_tk + bracket;
                let has0 = if deg == p {
                    s += bits(w & !k);
                    if !spec.is_odd() && p % 2 == 1 {
                        s += bits(b) + bits(k);
                    }
                    false
                } else if spec.is_odd() && deg + 1 == p {
                    s += bits(k & !w);
                    true
                } else {
                    continue;
                };
                let e = ExtElement { j: b, w, i: u, has0 };
                out.push((b | k, e, &pm(s) * &two));
            }
        }
    }
    out
}

/// Closed form of `psi^p_q([T] (x) <e>)` as `(mask, seq, c)`: the term is
/// `c [mask] (x) q! <seq>` for the concatenated code sequence `seq`.
pub fn psi_kernel(spec: &SpaceSpec, p: usize, q: usize, t: u32, e: &ExtElement) -> Vec<(u32, Vec<usize>, S)> {
    debug_assert_eq!(e.degree(), p);
    let n = spec.n;
    let full = (1u32 << n) - 1;
    let (i, s2, j) = (e.j, e.w, e.i);
    let odd = spec.is_odd();
    let r = p + q;
    let plain = |m: u32| asc(m).map(|x| spec.plain(x)).collect::<Vec<_>>();
    let barred = |m: u32| asc(m).rev().map(|x| spec.barred(x)).collect::<Vec<_>>();
    let mut out = vec![];
    for i1 in sub_masks(t & i) {
        let s3 = i & !i1;
        let e_i = seq_sign(&[asc(i1).collect::<Vec<_>>(), asc(s3).collect()].concat());
        for j1 in sub_masks(j & !t) {
            let s1 = j & !j1;
            let e_j = seq_sign(&[barred(s1), barred(j1)].concat());
            for i2 in sub_masks(t & !(i | s2 | j)) {
                let k = t & !i1 & !i2;
                let e_t = seq_sign(&[asc(i1).collect::<Vec<_>>(), asc(i2).collect(), asc(k).collect()].concat());
                for j2 in sub_masks(full & !t & !(i | s2 | j)) {
                    let two = S::pow_sqrt2((bits(i1) + bits(j1) + bits(i2) + bits(j2)) as i64);
                    let dseq: Vec<usize> = [asc(j1).collect::<Vec<_>>(), asc(j2).collect(), asc(k).collect()].concat();
                    let dsign = seq_sign(&dseq);
                    let dmask = j1 | j2 | k;
                    let common = &(&(&e_t * &e_i) * &(&e_j * &dsign)) * &two;
                    for s4 in sub_masks(full & !i & !j & !s2 & !j2 & !i2) {
                        let (ni2, nj2, ns1, ns3, ns4) = (bits(i2), bits(j2), bits(s1), bits(s3), bits(s4));
                        let base = ni2 + nj2 + ns1 + ns3 + 2 * ns4;
                        let all_s = s1 | s2 | s3 | s4;
                        let iq = bits(i1) * q;
                        let mut emit = |sgn: usize, zero: bool| {
                            let mut seq = plain(j2);
                            seq.extend(plain(s3));
                            seq.extend(plain(s4));
                            if zero {
                                seq.push(n);
                            }
                            seq.extend(barred(s4));
                            seq.extend(barred(s1));
                            seq.extend(barred(i2));
                            out.push((dmask, seq, &common * &pm(sgn)));
                        };
                        if !e.has0 {
                            if base == q {
                                let mut sg = [s1, s2, s3, s4].iter().map(|&s| bits(s & !k)).sum::<usize>()
                                    + nj2 * ns1
                                    + ns3 * nj2
                                    + ns3
                                    + iq;
                                if !odd && r % 2 == 1 {
                                    sg += bits(j1) + nj2 + bits(k);
                                }
                                emit(sg, false);
                            }
                            if odd && base + 1 == q {
                                let sg = bits(k & !all_s) + nj2 * (ns1 + ns3) + bits(s2) + iq;
                                emit(sg, true);
                            }
                        } else if base == q {
                            let sg = bits(k & !all_s) + nj2 * (ns1 + ns3 + 1) + ns4 + iq;
                            emit(sg, false);
                        }
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// operators on tensor vectors

/// `Alt_T` with the `1/p!` normalization.
pub fn alt(spec: &SpaceSpec, k: usize, t: &[usize], v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k, t)?;
    let sp = TensorSpace::new(*spec, k);
    let inv = S::frac(1, factorial(t.len()));
    Ok(lift(sp, sp, v, |mask, legs| {
        let (seq, rest) = pick(legs, t);
        signed_perms(&seq).into_iter().map(|(s, p)| (mask, place(k, t, &p, &rest), &inv * &S::from_int(s))).collect()
    }))
}

fn pr_terms(spec: &SpaceSpec, t: &[usize], mask: u32, legs: &[usize]) -> Terms {
    let (seq, rest) = pick(legs, t);
    match wedge_normalize(spec, &seq) {
        None => vec![],
        Some((sg, e)) => match pr_kernel(spec, mask, &e) {
            None => vec![],
            Some((m, c)) => vec![(m, rest, c.scale_int(sg as i64))],
        },
    }
}

fn inj_terms(spec: &SpaceSpec, k_out: usize, t: &[usize], mask: u32, legs: &[usize]) -> Terms {
    let mut out = vec![];
    for (m, e, c) in inj_kernel(spec, t.len(), mask) {
        for (s, seq) in signed_perms(&e.sequence(spec)) {
            out.push((m, place(k_out, t, &seq, legs), c.scale_int(s)));
        }
    }
    out
}

fn check_pr_inj(spec: &SpaceSpec, op: &'static str, t: &[usize]) -> Result<(), OpsError> {
    if t.len() > spec.big_n {
        return Err(OpsError::OutOfRange { op, degree: t.len(), n: spec.n });
    }
    Ok(())
}

/// `pr_T = pr_p o Alt_T` on `Delta (x) V^k`; the result has `k - |T|` legs.
pub fn pr_t(spec: &SpaceSpec, k: usize, t: &[usize], v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k, t)?;
    check_pr_inj(spec, "pr", t)?;
    Ok(lift(TensorSpace::new(*spec, k), TensorSpace::new(*spec, k - t.len()), v, |m, l| pr_terms(spec, t, m, l)))
}

/// `inj_T`: the result has `k_out` legs, the new ones at the positions `T`
/// (the j-th exterior component goes to `T[j]`).
pub fn inj_t(spec: &SpaceSpec, k_out: usize, t: &[usize], v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k_out, t)?;
    check_pr_inj(spec, "inj", t)?;
    let src = TensorSpace::new(*spec, k_out - t.len());
    Ok(lift(src, TensorSpace::new(*spec, k_out), v, |m, l| inj_terms(spec, k_out, t, m, l)))
}

/// Contraction of positions `i`, `j` by the symmetric form.
pub fn cont(spec: &SpaceSpec, k: usize, i: usize, j: usize, v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k, &[i, j])?;
    Ok(lift(TensorSpace::new(*spec, k), TensorSpace::new(*spec, k - 2), v, |m, legs| {
        let (seq, rest) = pick(legs, &[i, j]);
        if spec.form(seq[0], seq[1]) {
            vec![(m, rest, S::one())]
        } else {
            vec![]
        }
    }))
}

/// Insertion of `sum_c u_c (x) u_c^dual` at positions `i`, `j` of `k_out`.
pub fn insert_idv(spec: &SpaceSpec, k_out: usize, i: usize, j: usize, v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k_out, &[i, j])?;
    let src = TensorSpace::new(*spec, k_out - 2);
    Ok(lift(src, TensorSpace::new(*spec, k_out), v, |m, legs| {
        (0..spec.big_n).map(|c| (m, place(k_out, &[i, j], &[c, spec.bar(c)], legs), S::one())).collect()
    }))
}

/// Moves the leg at position `map[a].0` to `map[a].1`; all legs must be
/// mapped (a permutation of `[1,k]`).
pub fn partial_perm(spec: &SpaceSpec, k: usize, map: &[(usize, usize)], v: &TensorVector) -> Result<TensorVector, OpsError> {
    let src: Vec<usize> = map.iter().map(|x| x.0).collect();
    let dst: Vec<usize> = map.iter().map(|x| x.1).collect();
    check_positions(k, &src)?;
    check_positions(k, &dst)?;
    if map.len() != k {
        return Err(OpsError::Position("partial_perm needs a full matching of the legs".into()));
    }
    let sp = TensorSpace::new(*spec, k);
    Ok(lift(sp, sp, v, |m, legs| {
        let mut out = vec![0; k];
        for &(a, b) in map {
            out[b - 1] = legs[a - 1];
        }
        vec![(m, out, S::one())]
    }))
}

fn psi_terms(spec: &SpaceSpec, l: usize, tu: &[usize], tl: &[usize], mask: u32, legs: &[usize]) -> Terms {
    let (seq, rest) = pick(legs, tu);
    let Some((sg, e)) = wedge_normalize(spec, &seq) else {
        return vec![];
    };
    let mut out = vec![];
    for (m, oseq, c) in psi_kernel(spec, tu.len(), tl.len(), mask, &e) {
        let c = c.scale_int(sg as i64);
        for (s, ps) in signed_perms(&oseq) {
            out.push((m, place(l, tl, &ps, &rest), c.scale_int(s)));
        }
    }
    out
}

fn check_psi(spec: &SpaceSpec, p: usize, q: usize) -> Result<(), OpsError> {
    if p + q > spec.big_n {
        return Err(OpsError::OutOfRange { op: "psi", degree: p + q, n: spec.n });
    }
    Ok(())
}

/// `psi^{T_u}_{T_l}` from `Delta (x) V^k` to `Delta (x) V^l`; the legs outside
/// `T_u` are carried, in order, to the positions outside `T_l`.
pub fn psi_t(spec: &SpaceSpec, k: usize, l: usize, tu: &[usize], tl: &[usize], v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_positions(k, tu)?;
    check_positions(l, tl)?;
    check_psi(spec, tu.len(), tl.len())?;
    if k - tu.len() != l - tl.len() {
        return Err(OpsError::Position("psi: carried leg counts differ".into()));
    }
    Ok(lift(TensorSpace::new(*spec, k), TensorSpace::new(*spec, l), v, |m, legs| psi_terms(spec, l, tu, tl, m, legs)))
}

/// `psi^{[1,p]}_{[1,q]}` by the closed form.
pub fn psi(spec: &SpaceSpec, p: usize, q: usize, v: &TensorVector) -> Result<TensorVector, OpsError> {
    let tu: Vec<usize> = (1..=p).collect();
    let tl: Vec<usize> = (1..=q).collect();
    psi_t(spec, p, q, &tu, &tl, v)
}

/// Independent construction of `psi^{[1,p]}_{[1,q]}`: pair the input legs
/// with the first `p` legs of the invariant `sum_x phi_r(iota(<x>*)) (x) <x>`
/// (scaled by `2^{n/2}`) and keep the last `q` legs. The pairing is nested:
/// input leg `s` meets leg `p+1-s` of the invariant.
pub fn psi_oracle(spec: &SpaceSpec, p: usize, q: usize, v: &TensorVector) -> Result<TensorVector, OpsError> {
    check_psi(spec, p, q)?;
    let r = p + q;
    let variant = if spec.is_odd() { PhiVariant::Odd } else { PhiVariant::Pin };
    let d = spec.dim_delta();
    // iota(<x>*) = r! <swapped x>
    let scale = &S::pow_sqrt2(spec.n as i64) * &S::from_int(factorial(r));
    let mut pieces = vec![];
    for x in ext_basis(spec, r) {
        let phi = phi_element(spec, variant, &x.swapped())?;
        let tens = ext_to_tensor(spec, &x);
        pieces.push((phi, tens));
    }
    let src = TensorSpace::new(*spec, p);
    let dst = TensorSpace::new(*spec, q);
    let legs_r = TensorSpace::new(*spec, r);
    Ok(lift(src, dst, v, |mask, legs| {
        let mut out = vec![];
        for (phi, tens) in &pieces {
            for (&ij, a) in phi {
                if ij % d != mask as usize {
                    continue;
                }
                let out_mask = (ij / d) as u32;
                for (&t, b) in tens {
                    let (_, xl) = legs_r.split(t);
                    if (0..p).all(|s| spec.form(xl[p - 1 - s], legs[s])) {
                        out.push((out_mask, xl[p..].to_vec(), &(&scale * a) * b));
                    }
                }
            }
        }
        out
    }))
}

// ---------------------------------------------------------------------------
// realization of diagrams

fn check_reading(spec: &SpaceSpec, r: &DiagramReading, param: Parametrization) -> Result<(), OpsError> {
    let (p, q) = (r.t_upper.len(), r.t_lower.len());
    match param {
        Parametrization::Rt => {
            check_pr_inj(spec, "pr", &r.t_upper)?;
            check_pr_inj(spec, "inj", &r.t_lower)
        }
        Parametrization::Inv => check_psi(spec, p, q),
    }
}

/// Column function of a diagram: Brauer part plus the isolated block.
fn diagram_terms(spec: &SpaceSpec, d: &GBDiagram, r: &DiagramReading, param: Parametrization, mask: u32, legs: &[usize]) -> Terms {
    for &(a, b) in &r.upper_pairs {
        if !spec.form(legs[a - 1], legs[b - 1]) {
            return vec![];
        }
    }
    let seq: Vec<usize> = r.t_upper.iter().map(|&p| legs[p - 1]).collect();
    // isolated block: (mask, lower isolated legs in T_l order, coefficient)
    let block: Terms = match param {
        Parametrization::Rt => {
            let mid: Vec<(u32, S)> = if seq.is_empty() {
                vec![(mask, S::one())]
            } else {
                match wedge_normalize(spec, &seq) {
                    None => vec![],
                    Some((sg, e)) => pr_kernel(spec, mask, &e).map(|(m, c)| (m, c.scale_int(sg as i64))).into_iter().collect(),
                }
            };
            let q = r.t_lower.len();
            let mut out = vec![];
            for (m, c) in mid {
                if q == 0 {
                    out.push((m, vec![], c));
                    continue;
                }
                for (m2, e, c2) in inj_kernel(spec, q, m) {
                    let c3 = &c * &c2;
                    for (s, ps) in signed_perms(&e.sequence(spec)) {
                        out.push((m2, ps, c3.scale_int(s)));
                    }
                }
            }
            out
        }
        Parametrization::Inv => match wedge_normalize(spec, &seq) {
            None => vec![],
            Some((sg, e)) => {
                let mut out = vec![];
                for (m, oseq, c) in psi_kernel(spec, seq.len(), r.t_lower.len(), mask, &e) {
                    let c = c.scale_int(sg as i64);
                    for (s, ps) in signed_perms(&oseq) {
                        out.push((m, ps, c.scale_int(s)));
                    }
                }
                out
            }
        },
    };
    if block.is_empty() {
        return vec![];
    }
    // Brauer legs of the lower row
    let mut base = vec![usize::MAX; d.l];
    for &(a, b) in &r.through {
        base[b - 1] = legs[a - 1];
    }
    let mut brauer = vec![base];
    for &(a, b) in &r.lower_pairs {
        brauer = brauer
            .into_iter()
            .flat_map(|v| {
                (0..spec.big_n).map(move |c| {
                    let mut w = v.clone();
                    w[a - 1] = c;
                    w[b - 1] = spec.bar(c);
                    w
                })
            })
            .collect();
    }
    let mut out = vec![];
    for (m, iso, c) in &block {
        for v in &brauer {
            let mut w = v.clone();
            for (j, &p) in r.t_lower.iter().enumerate() {
                w[p - 1] = iso[j];
            }
            out.push((*m, w, c.clone()));
        }
    }
    out
}

/// Exact matrix of a diagram in either parametrization.
pub fn realize(spec: &SpaceSpec, d: &GBDiagram, param: Parametrization) -> Result<LinearMap, OpsError> {
    let r = read_diagram(d);
    check_reading(spec, &r, param)?;
    let src = TensorSpace::new(*spec, d.k);
    let dst = TensorSpace::new(*spec, d.l);
    let mat = matrix_of(src, dst, |m, legs| diagram_terms(spec, d, &r, param, m, legs));
    Ok(LinearMap::new(src, d.l, mat))
}

/// Applies a diagram to a vector without building the matrix.
pub fn apply_diagram(spec: &SpaceSpec, d: &GBDiagram, param: Parametrization, v: &TensorVector) -> Result<TensorVector, OpsError> {
    let r = read_diagram(d);
    check_reading(spec, &r, param)?;
    Ok(lift(TensorSpace::new(*spec, d.k), TensorSpace::new(*spec, d.l), v, |m, legs| diagram_terms(spec, d, &r, param, m, legs)))
}

/// `sum c(N) realize(d)` with X specialized to N.
pub fn realize_expr(spec: &SpaceSpec, e: &DiagramExpr) -> Result<LinearMap, OpsError> {
    let src = TensorSpace::new(*spec, e.k);
    let mut mat = SparseMat::zeros(TensorSpace::new(*spec, e.l).dim(), src.dim());
    for (d, c) in &e.terms {
        let x = c.eval_int(spec.big_n as i64);
        if x.is_zero() {
            continue;
        }
        mat = mat.axpy(&x, &realize(spec, d, e.param)?.mat);
    }
    Ok(LinearMap::new(src, e.l, mat))
}

// ---------------------------------------------------------------------------
// change of parametrization

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    InvToRt,
    RtToInv,
}

fn change_sign(family: Family, direction: Direction, p: usize, q: usize, i: usize) -> S {
    match (direction, family) {
        (Direction::InvToRt, Family::Odd) => pm((p - i) * (q - i)),
        (Direction::InvToRt, Family::Even) => S::one(),
        (Direction::RtToInv, Family::Odd) => pm(i + p * q),
        (Direction::RtToInv, Family::Even) => pm(i),
    }
}

/// Sum over `i`, `sigma in S_q`, `tau in S_p` of
/// `eps(i) sgn sgn / ((q-i)! i! (p-i)!)` times the diagram that keeps the
/// Brauer edges of `r`, joins `T_u[tau(j)]` to `T_l[sigma(j)]` for `j < i`
/// and leaves the rest isolated (as ordered lists, hence the sorting signs).
pub(crate) fn isolated_expansion<F>(k: usize, l: usize, r: &DiagramReading, eps: F, param: Parametrization) -> Result<DiagramExpr, OpsError>
where
    F: Fn(usize) -> S,
{
    let (tu, tl) = (&r.t_upper, &r.t_lower);
    let (p, q) = (tu.len(), tl.len());
    let mut acc: BTreeMap<GBDiagram, S> = BTreeMap::new();
    for i in 0..=p.min(q) {
        let norm = S::frac(1, factorial(q - i) * factorial(i) * factorial(p - i));
        let e = &eps(i) * &norm;
        for sigma in (0..q).permutations(q) {
            for tau in (0..p).permutations(p) {
                let s = perm_sign(&sigma) * perm_sign(&tau) * perm_sign(&sigma[i..]) * perm_sign(&tau[i..]);
                let mut rr = r.clone();
                rr.through.extend((0..i).map(|j| (tu[tau[j]], tl[sigma[j]])));
                rr.t_upper = tu.iter().enumerate().filter(|(a, _)| !tau[..i].contains(a)).map(|x| *x.1).collect();
                rr.t_lower = tl.iter().enumerate().filter(|(a, _)| !sigma[..i].contains(a)).map(|x| *x.1).collect();
                let d = diagram_from_reading(k, l, &rr)?;
                let v = acc.entry(d).or_insert_with(S::zero);
                *v += &e.scale_int(s);
            }
        }
    }
    let mut out = DiagramExpr::zero(k, l, param);
    for (d, c) in acc {
        if !c.is_zero() {
            out.add_term(d, &PolyX::constant(c))?;
        }
    }
    Ok(out)
}

/// Expansion of `d` in the other parametrization (inv to rt, or rt to inv).
/// Only the isolated block changes; it needs `|T_u|, |T_l| <= n`, which is
/// not a condition on `d` alone, so the caller passes `n`.
pub fn basis_change(family: Family, n: usize, d: &GBDiagram, direction: Direction) -> Result<DiagramExpr, OpsError> {
    let r = read_diagram(d);
    let (p, q) = (r.t_upper.len(), r.t_lower.len());
    if p > n || q > n {
        return Err(OpsError::Unsupported(format!(
            "{} isolated vertices above or below exceed n = {n}; this block has no rt expansion",
            p.max(q)
        )));
    }
    let param = match direction {
        Direction::InvToRt => Parametrization::Rt,
        Direction::RtToInv => Parametrization::Inv,
    };
    isolated_expansion(d.k, d.l, &r, |i| change_sign(family, direction, p, q, i), param)
}

pub fn basis_change_expr(family: Family, n: usize, e: &DiagramExpr, direction: Direction) -> Result<DiagramExpr, OpsError> {
    let param = match direction {
        Direction::InvToRt => Parametrization::Rt,
        Direction::RtToInv => Parametrization::Inv,
    };
    let mut out = DiagramExpr::zero(e.k, e.l, param);
    for (d, c) in &e.terms {
        out.add_expr(&basis_change(family, n, d, direction)?, c)?;
    }
    Ok(out)
}

/// `^i phi^{ins}_{outs}` as an rt expression on `GB^k_l`; `ins` are upper
/// positions, `outs` lower positions and `base` holds the remaining edges.
pub fn phi_i(k: usize, l: usize, i: usize, ins: &[usize], outs: &[usize], base: &[(Vertex, Vertex)]) -> Result<DiagramExpr, OpsError> {
    let d = GBDiagram::new(k, l, base.to_vec())?;
    let mut r = read_diagram(&d);
    r.t_upper = ins.to_vec();
    r.t_lower = outs.to_vec();
    let full = isolated_expansion(k, l, &r, |j| if j == i { S::one() } else { S::zero() }, Parametrization::Rt)?;
    Ok(full)
}

// ---------------------------------------------------------------------------
// the subspaces T^0_{k,s}

fn weight_blocks(sp: TensorSpace) -> BTreeMap<Vec<i32>, Vec<usize>> {
    let mut blocks: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for idx in 0..sp.dim() {
        blocks.entry(sp.weight(idx)).or_default().push(idx);
    }
    blocks
}

/// Basis of `T^0_{k,s}`: common kernel of all contractions, all `pr_T`
/// (`0 < |T| <= n`) and all `Alt_T` with `|T| > s`. When `n >= k` and
/// `s = k` the Alt constraints are dropped.
pub fn t0_subspace(spec: &SpaceSpec, k: usize, s: usize) -> Result<Vec<TensorVector>, OpsError> {
    if s > k.min(spec.n) {
        return Err(OpsError::Position(format!("s = {s} exceeds min(k, n)")));
    }
    let sp = TensorSpace::new(*spec, k);
    let spec = *spec;
    let mut constraints: Vec<Box<dyn Fn(u32, &[usize]) -> (usize, Terms) + Sync>> = vec![];
    for (i, j) in (1..=k).tuple_combinations() {
        constraints.push(Box::new(move |m, legs| {
            let (seq, rest) = pick(legs, &[i, j]);
            let t = if spec.form(seq[0], seq[1]) { vec![(m, rest, S::one())] } else { vec![] };
            (k - 2, t)
        }));
    }
    for size in 1..=k.min(spec.n) {
        for t in (1..=k).combinations(size) {
            constraints.push(Box::new(move |m, legs| (k - t.len(), pr_terms(&spec, &t, m, legs))));
        }
    }
    if !(spec.n >= k && s == k) {
        for size in s + 1..=k {
            for t in (1..=k).combinations(size) {
                let inv = S::frac(1, factorial(size));
                constraints.push(Box::new(move |m, legs| {
                    let (seq, rest) = pick(legs, &t);
                    let terms = signed_perms(&seq).into_iter().map(|(sg, p)| (m, place(k, &t, &p, &rest), inv.scale_int(sg))).collect();
                    (k, terms)
                }));
            }
        }
    }
    // offsets so that every constraint lands in its own row range
    let mut offsets = vec![];
    let mut total = 0usize;
    for c in &constraints {
        offsets.push(total);
        let (l, _) = c(0, &vec![0; k]);
        total += TensorSpace::new(spec, l).dim();
    }
    let blocks = weight_blocks(sp);
    let basis: Vec<Vec<TensorVector>> = blocks
        .par_iter()
        .map(|(_, cols)| {
            // rows of the block constraint matrix = columns of its transpose
            let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (ci, &idx) in cols.iter().enumerate() {
                let (m, legs) = sp.split(idx);
                for (a, c) in constraints.iter().enumerate() {
                    let (l, terms) = c(m, &legs);
                    let dst = TensorSpace::new(spec, l);
                    for (m2, l2, x) in terms {
                        let row = rows.entry(offsets[a] + dst.index(m2, &l2)).or_default();
                        add_entry(row, ci, &x);
                    }
                }
            }
            let mut e = Echelon::new();
            for (_, r) in rows {
                e.insert(r);
            }
            e.kernel_basis(cols.len())
                .into_iter()
                .map(|v| v.into_iter().map(|(ci, x)| (cols[ci], x)).collect())
                .collect()
        })
        .collect();
    Ok(basis.into_iter().flatten().collect())
}

/// Associator `A [I] = (-1)^{|I|} [I]`, tensored with the identity.
pub fn associator(spec: &SpaceSpec, k: usize, v: &TensorVector) -> TensorVector {
    let sp = TensorSpace::new(*spec, k);
    v.iter()
        .map(|(&i, x)| {
            let (m, _) = sp.split(i);
            (i, if m.count_ones() % 2 == 0 { x.clone() } else { -x.clone() })
        })
        .collect()
}

/// Split of an `A (x) id`-stable subspace into its `+1` and `-1` parts.
pub fn a_split(spec: &SpaceSpec, k: usize, subspace: &[TensorVector]) -> Result<(Vec<TensorVector>, Vec<TensorVector>), OpsError> {
    if spec.is_odd() {
        return Err(OpsError::NeedEven);
    }
    let sp = TensorSpace::new(*spec, k);
    let mut plus = Echelon::new();
    let mut minus = Echelon::new();
    let (mut pv, mut mv) = (vec![], vec![]);
    for v in subspace {
        let (a, b): (SparseVec, SparseVec) = v.iter().map(|(&i, x)| (i, x.clone())).partition(|(i, _)| sp.split(*i).0.count_ones().is_multiple_of(2));
        if plus.insert(a.clone()) {
            pv.push(a);
        }
        if minus.insert(b.clone()) {
            mv.push(b);
        }
    }
    Ok((pv, mv))
}
