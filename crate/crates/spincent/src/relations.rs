//! The composition relations between `pr`, `inj`, contractions and `id_V`
//! insertions, with their family-dependent sign tables, and an exact matrix
//! check of each relation on a concrete `Delta (x) V^k`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::perm_sign;
use crate::clifford::SpaceSpec;
use crate::diagrams::DiagramExpr;
use crate::linalg::{vec_axpy, SparseMat, SparseVec};
use crate::ops::{self, cont, inj_t, insert_idv, partial_perm, pr_t, realize_expr, Family, OpsError, TensorSpace, TensorVector};
use crate::scalars::{AlgebraicScalar as S, PolyX};

/// The seven relations, in the order they are usually listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `pr_{[1,q+p]} inj_{[1,q]} = (N-p)_q eps pr_{[q+1,q+p]}`
    PrInj,
    /// `pr_{[1,q]} inj_{[1,q+p]} = (N-p)_q eps inj_{[q+1,q+p]}`
    PrInjLong,
    /// `inj_{[1,q]} inj_{[q+1,q+p]}` as id_V insertions and one inj
    InjInj,
    /// `pr_{[1,q]} pr_{[q+1,q+p]}` as contractions and one pr
    PrPr,
    /// `pr_{[q+1,q+p]} inj_{[1,q+t]}` in the `^i phi` basis
    PrInjShared,
    /// `prod cont_{i,p+q+i} inj_{[1,q+p]}` in the `^i phi` basis
    ContInj,
    /// `pr_{[1,q+p]} prod id_V{q+i,p+q+i}` in the `^i phi` basis
    PrIdv,
}

pub const ALL_RELATIONS: [Relation; 7] = [
    Relation::PrInj,
    Relation::PrInjLong,
    Relation::InjInj,
    Relation::PrPr,
    Relation::PrInjShared,
    Relation::ContInj,
    Relation::PrIdv,
];

fn pm(e: usize) -> S {
    S::sign(e as i64)
}

fn c2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Sign `eps(i)` of a relation (`eps` of (1), (2) ignores `i`; `t` only
/// enters (5)).
pub fn eps(rel: Relation, family: Family, p: usize, q: usize, t: usize, i: usize) -> S {
    use Family::*;
    use Relation::*;
    match (rel, family) {
        (PrInj | PrInjLong, Odd) => S::from_int(1),
        (PrInj | PrInjLong, Even) => pm((p + q) * q),
        (InjInj, Odd) => pm(q * i + c2(i + 1)),
        (InjInj, Even) => pm(q * i + c2(i + 1) + p * q),
        (PrPr, Odd) => pm(q * p + q * i + c2(i)),
        (PrPr, Even) => pm(q * i + c2(i)),
        (PrInjShared, Odd) => pm((q - i) * (p - i) + i * t),
        (PrInjShared, Even) => pm(p * q + t * (p + q)),
        (ContInj, Odd) => pm(p * q + c2(q) + i * (p + q + 1)),
        (ContInj, Even) => pm(c2(q)),
        (PrIdv, Odd) => pm(c2(p) + i * (p + q + 1)),
        (PrIdv, Even) => pm(c2(p) + p * q),
    }
}

/// `sum_u C(i,u) (X - p - q + t + i - u)_t`, the scalar of (5).
pub fn shared_scalar(p: usize, q: usize, t: usize, i: usize) -> PolyX {
    let mut acc = PolyX::zero();
    let mut binom = 1i64;
    for u in 0..=i {
        let base = PolyX::x_plus(t as i64 + i as i64 - u as i64 - p as i64 - q as i64);
        acc += &(&PolyX::from_int(binom) * &base.lower_factorial(t));
        binom = binom * (i - u) as i64 / (u + 1) as i64;
    }
    acc
}

/// The `(p, q, t)` triples with `p, q <= max_pq` (and `t <= p` for (5))
/// satisfying the preconditions of the relation at rank `n`.
pub fn cases(rel: Relation, n: usize, max_pq: usize) -> Vec<(usize, usize, usize)> {
    let mut out = vec![];
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let ts: Vec<usize> = if rel == Relation::PrInjShared { (0..=p).collect() } else { vec![0] };
            for t in ts {
                let ok = match rel {
                    Relation::PrInj | Relation::PrInjLong => p <= n,
                    Relation::PrInjShared => p - t <= n && q <= n,
                    _ => p <= n && q <= n,
                };
                if ok {
                    out.push((p, q, t));
                }
            }
        }
    }
    out
}

type OpFn<'a> = dyn Fn(&TensorVector) -> Result<TensorVector, OpsError> + Sync + 'a;

/// Matrix of a map `Delta (x) V^k_in -> Delta (x) V^k_out` given on vectors.
fn op_matrix(spec: &SpaceSpec, k_in: usize, k_out: usize, f: &OpFn) -> Result<SparseMat, OpsError> {
    let src = TensorSpace::new(*spec, k_in);
    let cols: Vec<SparseVec> = (0..src.dim())
        .into_par_iter()
        .map(|c| f(&[(c, S::from_int(1))].into_iter().collect()))
        .collect::<Result<_, _>>()?;
    Ok(SparseMat::from_cols(TensorSpace::new(*spec, k_out).dim(), cols))
}

/// Inserts `id_V` at the given final position pairs of a `k_out`-leg tensor;
/// the existing leg `j` goes to `keep[j]`.
fn embed(spec: &SpaceSpec, v: &TensorVector, k_out: usize, pairs: &[(usize, usize)], keep: &[usize]) -> Result<TensorVector, OpsError> {
    let m = keep.len();
    let mut w = v.clone();
    for u in 0..pairs.len() {
        w = insert_idv(spec, m + 2 * u + 2, m + 2 * u + 1, m + 2 * u + 2, &w)?;
    }
    let mut map: Vec<(usize, usize)> = keep.iter().enumerate().map(|(j, &x)| (j + 1, x)).collect();
    for (u, &(a, b)) in pairs.iter().enumerate() {
        map.push((m + 2 * u + 1, a));
        map.push((m + 2 * u + 2, b));
    }
    partial_perm(spec, k_out, &map, &w)
}

/// Contracts the given position pairs of a `k`-leg tensor; the remaining legs
/// keep their relative order.
fn contract(spec: &SpaceSpec, v: &TensorVector, k: usize, pairs: &[(usize, usize)]) -> Result<TensorVector, OpsError> {
    let used: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let rest: Vec<usize> = (1..=k).filter(|x| !used.contains(x)).collect();
    let m = rest.len();
    let mut map: Vec<(usize, usize)> = rest.iter().enumerate().map(|(j, &x)| (x, j + 1)).collect();
    for (u, &(a, b)) in pairs.iter().enumerate() {
        map.push((a, m + 2 * u + 1));
        map.push((b, m + 2 * u + 2));
    }
    let mut w = partial_perm(spec, k, &map, v)?;
    for u in (0..pairs.len()).rev() {
        w = cont(spec, m + 2 * u + 2, m + 2 * u + 1, m + 2 * u + 2, &w)?;
    }
    Ok(w)
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `^i phi` from all `p` upper legs to all `q` lower legs, realized at X = N.
fn phi_matrix(spec: &SpaceSpec, p: usize, q: usize, i: usize) -> Result<SparseMat, OpsError> {
    let e: DiagramExpr = ops::phi_i(p, q, i, &range(1, p), &range(1, q), &[])?;
    Ok(realize_expr(spec, &e)?.mat)
}

/// The sum over `i`, `sigma in S_q`, `tau in S_p` shared by (3) and (4):
/// pairs `(sigma(u), tau(q+u))` for `u <= i` and the ordered rest list.
fn paired_terms(p: usize, q: usize, family: Family, rel: Relation) -> Vec<(S, Vec<(usize, usize)>, Vec<usize>)> {
    let mut out = vec![];
    for i in 0..=p.min(q) {
        let norm = S::frac(1, factorial(i) * factorial(q - i) * factorial(p - i));
        let e = &eps(rel, family, p, q, 0, i) * &norm;
        for sigma in (1..=q).permutations(q) {
            for tau in (q + 1..=q + p).permutations(p) {
                let s = perm_sign(&sigma) * perm_sign(&tau);
                let pairs = (0..i).map(|u| (sigma[u], tau[u])).collect();
                let rest = sigma[i..].iter().chain(&tau[i..]).copied().collect();
                out.push((e.scale_int(s), pairs, rest));
            }
        }
    }
    out
}

/// Both sides of a relation as exact matrices at `spec` (X = N).
pub fn relation_sides(spec: &SpaceSpec, rel: Relation, p: usize, q: usize, t: usize) -> Result<(SparseMat, SparseMat), OpsError> {
    let family = Family::of(spec);
    let big_n = spec.big_n as i64;
    let s = *spec;
    let sp = &s;
    let ff = |pp: usize| S::from_bigint(crate::scalars::lower_factorial(big_n - pp as i64, q));
    match rel {
        Relation::PrInj => {
            let lhs = op_matrix(sp, p, 0, &|v| pr_t(sp, q + p, &range(1, q + p), &inj_t(sp, q + p, &range(1, q), v)?))?;
            let rhs = op_matrix(sp, p, 0, &|v| pr_t(sp, p, &range(1, p), v))?;
            Ok((lhs, rhs.scale(&(&ff(p) * &eps(rel, family, p, q, 0, 0)))))
        }
        Relation::PrInjLong => {
            let lhs = op_matrix(sp, 0, p, &|v| pr_t(sp, q + p, &range(1, q), &inj_t(sp, q + p, &range(1, q + p), v)?))?;
            let rhs = op_matrix(sp, 0, p, &|v| inj_t(sp, p, &range(1, p), v))?;
            Ok((lhs, rhs.scale(&(&ff(p) * &eps(rel, family, p, q, 0, 0)))))
        }
        Relation::InjInj => {
            let lhs = op_matrix(sp, 0, p + q, &|v| inj_t(sp, p + q, &range(1, q), &inj_t(sp, p, &range(1, p), v)?))?;
            let terms = paired_terms(p, q, family, rel);
            let rhs = op_matrix(sp, 0, p + q, &|v| {
                let mut acc = TensorVector::new();
                for (c, pairs, rest) in &terms {
                    let w = inj_t(sp, rest.len(), &range(1, rest.len()), v)?;
                    vec_axpy(&mut acc, c, &embed(sp, &w, p + q, pairs, rest)?);
                }
                Ok(acc)
            })?;
            Ok((lhs, rhs))
        }
        Relation::PrPr => {
            let lhs = op_matrix(sp, p + q, 0, &|v| pr_t(sp, q, &range(1, q), &pr_t(sp, p + q, &range(q + 1, q + p), v)?))?;
            let terms = paired_terms(p, q, family, rel);
            let rhs = op_matrix(sp, p + q, 0, &|v| {
                let mut acc = TensorVector::new();
                for (c, pairs, rest) in &terms {
                    // after contracting, the rest legs sit in increasing order
                    let mut sorted = rest.clone();
                    sorted.sort();
                    let pos: Vec<usize> = rest.iter().map(|x| sorted.iter().position(|y| y == x).unwrap() + 1).collect();
                    let w = contract(sp, v, p + q, pairs)?;
                    vec_axpy(&mut acc, c, &pr_t(sp, rest.len(), &pos, &w)?);
                }
                Ok(acc)
            })?;
            Ok((lhs, rhs))
        }
        Relation::PrInjShared => {
            let lhs = op_matrix(sp, p - t, q, &|v| pr_t(sp, q + p, &range(q + 1, q + p), &inj_t(sp, q + p, &range(1, q + t), v)?))?;
            let mut rhs = SparseMat::zeros(TensorSpace::new(s, q).dim(), TensorSpace::new(s, p - t).dim());
            for i in 0..=(p - t).min(q) {
                let c = &eps(rel, family, p, q, t, i) * &shared_scalar(p, q, t, i).eval_int(big_n);
                rhs = rhs.axpy(&c, &phi_matrix(sp, p - t, q, i)?);
            }
            Ok((lhs, rhs))
        }
        Relation::ContInj => {
            let k = p + 2 * q;
            let pairs: Vec<(usize, usize)> = (1..=q).map(|i| (i, p + q + i)).collect();
            let lhs = op_matrix(sp, q, p, &|v| contract(sp, &inj_t(sp, k, &range(1, q + p), v)?, k, &pairs))?;
            let mut rhs = SparseMat::zeros(TensorSpace::new(s, p).dim(), TensorSpace::new(s, q).dim());
            for i in 0..=p.min(q) {
                rhs = rhs.axpy(&eps(rel, family, p, q, 0, i), &phi_matrix(sp, q, p, i)?);
            }
            Ok((lhs, rhs))
        }
        Relation::PrIdv => {
            let k = q + 2 * p;
            let pairs: Vec<(usize, usize)> = (1..=p).map(|i| (q + i, p + q + i)).collect();
            let lhs = op_matrix(sp, q, p, &|v| pr_t(sp, k, &range(1, q + p), &embed(sp, v, k, &pairs, &range(1, q))?))?;
            let mut rhs = SparseMat::zeros(TensorSpace::new(s, p).dim(), TensorSpace::new(s, q).dim());
            for i in 0..=p.min(q) {
                rhs = rhs.axpy(&eps(rel, family, p, q, 0, i), &phi_matrix(sp, q, p, i)?);
            }
            Ok((lhs, rhs))
        }
    }
}

/// Whether a relation holds exactly at `spec` for `(p, q, t)`.
pub fn check_relation(spec: &SpaceSpec, rel: Relation, p: usize, q: usize, t: usize) -> Result<bool, OpsError> {
    let (a, b) = relation_sides(spec, rel, p, q, t)?;
    Ok(a == b)
}
