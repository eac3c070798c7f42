//! Named verification suites. Each suite runs exact comparisons and reports
//! the number of checks, the failures and the wall time.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::algebra::{multiply, multiply_diagrams};
use crate::characters::{dim_cpk, CharError, MultiplicityMap, iterated_vector_multiplicities, spin_irrep_dimension, supported_rule_cases, tensor_oracle, tensor_rule, updown_table, IrrepKind, IrrepLabel, Partition};
use crate::clifford::{group_generators, lie_generators, tensor_matrix, Generator, SpaceSpec};
use crate::diagrams::{enumerate_gb, gb_count, y, DiagramExpr, GBDiagram, Parametrization, Vertex};
use crate::exterior::{en_split, ext_index, ext_matrix, ext_single, ext_to_sparse, r_ell_matrix, ExtVector};
use crate::linalg::{rank_of, SparseMat};
use crate::ops::{a_split, basis_change, psi, psi_oracle, realize, realize_expr, t0_subspace, Direction, Family, LinearMap, OpsError, TensorSpace};
use crate::phi::{hadamard_block, legal_even, phi_matrix, sector_basis, sector_inverse_matrix, sector_phi_matrix, PhiSector, PhiVariant};
use crate::relations::{check_relation, relation_sides, Relation, ALL_RELATIONS};
use crate::scalars::{AlgebraicScalar as S, PolyX};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
    /// Suite-specific values worth printing (dimensions, counts).
    pub facts: Vec<(String, String)>,
}

/// Collects check outcomes; keeps at most a few failure messages.
struct Checker {
    checks: usize,
    failures: Vec<String>,
    facts: Vec<(String, String)>,
    start: Instant,
}

impl Checker {
    fn new() -> Self {
        Checker { checks: 0, failures: vec![], facts: vec![], start: Instant::now() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.check(false, || msg);
    }

    fn fact(&mut self, k: &str, v: impl ToString) {
        self.facts.push((k.to_string(), v.to_string()));
    }

    fn finish(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            passed: self.failures.is_empty() && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
            seconds: self.start.elapsed().as_secs_f64(),
            facts: self.facts,
        }
    }
}

/// Lie generators that act nontrivially (so(2) only has `h_1`).
pub fn active_lie_generators(sp: &SpaceSpec) -> Vec<Generator> {
    lie_generators(sp).into_iter().filter(|g| sp.is_odd() || sp.n > 1 || *g == Generator::H(1)).collect()
}

fn equivariant(m: &LinearMap) -> Result<bool, String> {
    let (sp, tsp) = (m.domain.spec, m.codomain.spec);
    for g in active_lie_generators(&sp).into_iter().chain(group_generators(&sp)) {
        let a = tensor_matrix(&tsp, g, m.codomain.k).map_err(|e| e.to_string())?.mul(&m.mat);
        let b = m.mat.mul(&tensor_matrix(&sp, g, m.domain.k).map_err(|e| e.to_string())?);
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|GB^2_2| = dim CP_2 = 10`, `dim CP_3 = 76` and independence of the rt
/// realizations for `k <= 2`.
pub fn dimension_identity(ns: &[usize]) -> SuiteReport {
    let mut c = Checker::new();
    let gb = enumerate_gb(2, 2).len();
    c.check(gb == 10 && gb_count(2, 2) == 10 && dim_cpk(2) == 10, || format!("|GB^2_2| = {gb}, dim_cpk(2) = {}", dim_cpk(2)));
    c.check(dim_cpk(3) == 76 && enumerate_gb(3, 3).len() == 76, || format!("dim_cpk(3) = {}", dim_cpk(3)));
    c.fact("|GB^2_2|", gb);
    c.fact("dim_cpk(3)", dim_cpk(3));
    for &n in ns {
        for sp in [SpaceSpec::odd(n), SpaceSpec::even(n)] {
            for k in 0..=2 {
                let ds = enumerate_gb(k, k);
                let flat: Result<Vec<_>, _> = ds.iter().map(|d| realize(&sp, d, Parametrization::Rt).map(|m| m.mat.flatten())).collect();
                match flat {
                    Ok(f) => {
                        let r = rank_of(f);
                        c.check(r == ds.len(), || format!("N={} k={k}: rank {r} of {}", sp.big_n, ds.len()));
                    }
                    Err(e) => c.fail(format!("N={} k={k}: {e}", sp.big_n)),
                }
            }
        }
    }
    c.finish("dimension_identity")
}

fn phi_variants(sp: &SpaceSpec, l: usize) -> Vec<PhiVariant> {
    if sp.is_odd() {
        return vec![PhiVariant::Odd];
    }
    let mut v = vec![PhiVariant::Pin];
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        if legal_even(l, e1, e2) {
            v.push(PhiVariant::Even { e1, e2 });
        }
    }
    v
}

fn on_delta_pair(sp: &SpaceSpec, tgt: &SpaceSpec, g: Generator) -> Result<SparseMat, String> {
    let a = crate::clifford::delta_matrix(sp, g).map_err(|e| e.to_string())?;
    let b = crate::clifford::delta_matrix(&tgt.dualized(), g).map_err(|e| e.to_string())?;
    if g.is_lie() {
        let id = SparseMat::identity(sp.dim_delta());
        Ok(a.kron(&id).add(&id.kron(&b)))
    } else {
        Ok(a.kron(&b))
    }
}

/// Every phi variant commutes with the Lie generators and with the
/// reflection (Pin variant) or `z` (odd N, both lifts); images are isometric.
/// With `with_diagrams` the realizations of `GB^{<=2}_{<=2}` are swept too.
pub fn equivariance(sp: &SpaceSpec, with_diagrams: bool) -> SuiteReport {
    let mut c = Checker::new();
    let run = |c: &mut Checker| -> Result<(), String> {
        for l in 0..=sp.big_n {
            for v in phi_variants(sp, l) {
                let phi = phi_matrix(sp, v, l).map_err(|e| e.to_string())?;
                let mut gens = active_lie_generators(sp);
                if v == PhiVariant::Pin {
                    gens.push(Generator::Reflection);
                }
                for g in gens {
                    let lhs = phi.mul(&ext_matrix(sp, g, l).map_err(|e| e.to_string())?);
                    let rhs = on_delta_pair(sp, sp, g)?.mul(&phi);
                    c.check(lhs == rhs, || format!("N={} l={l} {v:?} {g:?}", sp.big_n));
                }
                if sp.is_odd() {
                    for s in [1i8, -1] {
                        let src = sp.with_sign(s);
                        let tgt = src.with_sign(if l % 2 == 0 { s } else { -s });
                        let phi = phi_matrix(&src, v, l).map_err(|e| e.to_string())?;
                        let lhs = phi.mul(&ext_matrix(&src, Generator::Z, l).map_err(|e| e.to_string())?);
                        let rhs = on_delta_pair(&src, &tgt, Generator::Z)?.mul(&phi);
                        c.check(lhs == rhs, || format!("N={} l={l} z, sign {s}", sp.big_n));
                    }
                }
                // isometry (on e_n^{e1} for the split even variants in degree n)
                let gram = phi.transpose().mul(&phi);
                let want = match v {
                    PhiVariant::Even { e1, .. } if l == sp.n => {
                        let r = r_ell_matrix(sp, l);
                        SparseMat::identity(r.ncols).add(&r.scale(&S::from_int(e1 as i64))).scale(&S::frac(1, 2))
                    }
                    _ => SparseMat::identity(phi.ncols),
                };
                c.check(gram == want, || format!("N={} l={l} {v:?} not isometric", sp.big_n));
            }
        }
        if with_diagrams {
            let mut skipped = 0usize;
            for k in 0..=2 {
                for l in 0..=2 {
                    for d in enumerate_gb(k, l) {
                        for param in [Parametrization::Rt, Parametrization::Inv] {
                            // psi needs p + q <= N, which small N cannot give
                            let m = match realize(sp, &d, param) {
                                Err(OpsError::OutOfRange { .. }) => {
                                    skipped += 1;
                                    continue;
                                }
                                r => r.map_err(|e| e.to_string())?,
                            };
                            let ok = equivariant(&m)?;
                            c.check(ok, || format!("N={} {d} {param:?}", sp.big_n));
                        }
                    }
                }
            }
            if skipped > 0 {
                c.fact(&format!("N={} inv realizations outside psi range", sp.big_n), skipped);
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail(e);
    }
    c.finish("equivariance")
}

fn sectors(sp: &SpaceSpec) -> Vec<PhiSector> {
    if sp.is_odd() {
        vec![PhiSector::OddEvenDegrees, PhiSector::OddOddDegrees]
    } else {
        let mut v = vec![PhiSector::Pin { odd: false }, PhiSector::Pin { odd: true }];
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            v.push(PhiSector::Even { e1, e2 });
        }
        v
    }
}

/// `H H^T = 2^m Id` for every block with `n <= n_hadamard`, and the phi
/// inverses round-trip for every `spec` given.
pub fn hadamard_and_inverses(n_hadamard: usize, specs: &[SpaceSpec]) -> SuiteReport {
    let mut c = Checker::new();
    for n in 0..=n_hadamard {
        for j in 0u32..(1 << n) {
            for i in 0u32..(1 << n) {
                if i & j != 0 {
                    continue;
                }
                match hadamard_block(n, j, i) {
                    Ok(h) => c.check(h.is_hadamard(), || format!("n={n} J={j:b} I={i:b}")),
                    Err(e) => c.fail(e.to_string()),
                }
            }
        }
    }
    for sp in specs {
        for sec in sectors(sp) {
            let (phi, inv) = match (sector_phi_matrix(sp, sec), sector_inverse_matrix(sp, sec)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    c.fail(e.to_string());
                    continue;
                }
            };
            let d = sp.dim_delta();
            let mut target = SparseMat::zeros(d * d, d * d);
            for a in 0..d * d {
                if sec.contains((a / d) as u32, (a % d) as u32) {
                    target.add_to(a, a, &S::from_int(1));
                }
            }
            c.check(phi.mul(&inv) == target, || format!("N={} {sec:?}: phi o inverse", sp.big_n));
            let back = inv.mul(&phi);
            let basis = sector_basis(sp, sec);
            let idx = ext_index(&basis);
            let mut ok = true;
            for (col, e) in basis.iter().enumerate() {
                let want: ExtVector = match sec {
                    PhiSector::Even { e1, .. } if e.degree() == sp.n => match en_split(sp, &ext_single(*e)) {
                        Ok((p, m)) => {
                            if e1 == 1 {
                                p
                            } else {
                                m
                            }
                        }
                        Err(_) => {
                            ok = false;
                            continue;
                        }
                    },
                    _ => ext_single(*e),
                };
                ok &= back.cols[col] == ext_to_sparse(&want, &idx);
            }
            c.check(ok, || format!("N={} {sec:?}: inverse o phi", sp.big_n));
        }
    }
    c.finish("hadamard_and_inverses")
}

/// Closed-form psi against the invariant-element construction on every basis
/// vector, `p + q <= max_r`.
pub fn psi_vs_oracle(sp: &SpaceSpec, max_r: usize) -> SuiteReport {
    let mut c = Checker::new();
    for r in 0..=max_r.min(sp.big_n) {
        for p in 0..=r {
            let q = r - p;
            let src = TensorSpace::new(*sp, p);
            let mut ok = true;
            for i in 0..src.dim() {
                let v = [(i, S::from_int(1))].into_iter().collect();
                match (psi(sp, p, q, &v), psi_oracle(sp, p, q, &v)) {
                    (Ok(a), Ok(b)) => ok &= a == b,
                    _ => ok = false,
                }
            }
            c.check(ok, || format!("N={} p={p} q={q}", sp.big_n));
        }
    }
    c.finish("psi")
}

/// The composition relations as matrix identities for all `p, q <= max_pq`.
pub fn relations(sp: &SpaceSpec, max_pq: usize) -> SuiteReport {
    let mut c = Checker::new();
    for rel in ALL_RELATIONS {
        for (p, q, t) in crate::relations::cases(rel, sp.n, max_pq) {
            match check_relation(sp, rel, p, q, t) {
                Ok(ok) => c.check(ok, || format!("N={} {rel:?} p={p} q={q} t={t}", sp.big_n)),
                Err(e) => c.fail(format!("N={} {rel:?} p={p} q={q} t={t}: {e}", sp.big_n)),
            }
        }
    }
    // the scalar of pr_{1} o inj_{1} on Delta
    if let Ok((lhs, _)) = relation_sides(sp, Relation::PrInj, 0, 1, 0) {
        let x = lhs.get(0, 0);
        let want = if sp.is_odd() { sp.big_n as i64 } else { -(sp.big_n as i64) };
        c.check(lhs == SparseMat::scalar(sp.dim_delta(), &S::from_int(want)), || format!("pr_1 o inj_1 = {x}"));
        c.fact("pr_{1} o inj_{1}", x);
    }
    c.finish("relations")
}

/// `realize(d, inv) = realize(basis_change(d), rt)` on `GB^2_2` (and back),
/// plus the seven-term expansion of the all-isolated diagram.
pub fn basis_change_suite(sp: &SpaceSpec) -> SuiteReport {
    let mut c = Checker::new();
    let fam = Family::of(sp);
    let run = |c: &mut Checker| -> Result<(), String> {
        for d in enumerate_gb(2, 2) {
            let inv = realize(sp, &d, Parametrization::Inv).map_err(|e| e.to_string())?;
            let e = basis_change(fam, sp.n, &d, Direction::InvToRt).map_err(|e| e.to_string())?;
            c.check(realize_expr(sp, &e).map_err(|e| e.to_string())?.mat == inv.mat, || format!("N={} {d} inv->rt", sp.big_n));
            let rt = realize(sp, &d, Parametrization::Rt).map_err(|e| e.to_string())?;
            let e = basis_change(fam, sp.n, &d, Direction::RtToInv).map_err(|e| e.to_string())?;
            c.check(realize_expr(sp, &e).map_err(|e| e.to_string())?.mat == rt.mat, || format!("N={} {d} rt->inv", sp.big_n));
        }
        let e = basis_change(fam, sp.n, &y(10), Direction::InvToRt).map_err(|e| e.to_string())?;
        c.check(e.terms.len() == 7, || format!("y10 expands to {} terms", e.terms.len()));
        c.fact("y10 (inv)", &e);
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail(e);
    }
    c.finish("basis_change")
}

/// `e_i` on `k` strands: cap and cup on `(i, i+1)`.
pub fn e_diagram(k: usize, i: usize) -> GBDiagram {
    let mut edges = vec![(Vertex::U(i), Vertex::U(i + 1)), (Vertex::L(i), Vertex::L(i + 1))];
    edges.extend((1..=k).filter(|&j| j != i && j != i + 1).map(|j| (Vertex::U(j), Vertex::L(j))));
    GBDiagram::new(k, k, edges).expect("valid e_i")
}

/// Symbolic products against matrix composition on all of `GB^2_2`, the
/// `y5 y8` example (odd family) and `e1 e2 e1 = e1`.
pub fn algebra_soundness(sp: &SpaceSpec) -> SuiteReport {
    let mut c = Checker::new();
    let fam = Family::of(sp);
    let run = |c: &mut Checker| -> Result<(), String> {
        let ds = enumerate_gb(2, 2);
        let mats: Vec<SparseMat> = ds.iter().map(|d| realize(sp, d, Parametrization::Rt).map(|m| m.mat)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for (i, a) in ds.iter().enumerate() {
            for (j, b) in ds.iter().enumerate() {
                let e = multiply_diagrams(fam, a, b).map_err(|e| e.to_string())?;
                let got = realize_expr(sp, &e).map_err(|e| e.to_string())?.mat;
                c.check(got == mats[i].mul(&mats[j]), || format!("N={} {a}*{b} = {e}", sp.big_n));
            }
        }
        let got = multiply_diagrams(Family::Odd, &y(5), &y(8)).map_err(|e| e.to_string())?;
        let mut want = DiagramExpr::zero(2, 2, Parametrization::Rt);
        want.add_term(y(8), &PolyX::x_plus(-1)).map_err(|e| e.to_string())?;
        want.add_term(y(3), &PolyX::x_plus(-1)).map_err(|e| e.to_string())?;
        c.check(got == want, || format!("y5*y8 = {got}"));
        c.fact("y5*y8 (odd)", &got);
        let e1 = DiagramExpr::single(e_diagram(3, 1), Parametrization::Rt);
        let e2 = DiagramExpr::single(e_diagram(3, 2), Parametrization::Rt);
        let e121 = multiply(fam, &multiply(fam, &e1, &e2).map_err(|e| e.to_string())?, &e1).map_err(|e| e.to_string())?;
        c.check(e121 == e1, || format!("e1 e2 e1 = {e121}"));
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail(e);
    }
    c.finish("algebra")
}

fn dim_of(kind: IrrepKind, lam: &Partition, n: usize, big_n: usize) -> Result<u64, String> {
    let l = IrrepLabel::new(kind, lam.clone(), n, big_n).map_err(|e| e.to_string())?;
    spin_irrep_dimension(&l).map_err(|e| e.to_string())
}

/// `dim T^0_{k,s} = sum f^lam dim [Delta, lam]` over `|lam| = k`,
/// `l(lam) <= s`; for even N also the split under `A (x) id`.
pub fn dual_pair(sp: &SpaceSpec, k: usize, s: usize) -> SuiteReport {
    let mut c = Checker::new();
    let run = |c: &mut Checker| -> Result<(), String> {
        let basis = t0_subspace(sp, k, s).map_err(|e| e.to_string())?;
        let lams: Vec<Partition> = Partition::all_of_size(k as u32, s);
        let (n, nn) = (sp.n, sp.big_n);
        let f = |l: &Partition| l.num_standard_tableaux() as u64;
        c.fact("dim T0", basis.len());
        if sp.is_odd() {
            let want: u64 = lams.iter().map(|l| Ok(f(l) * dim_of(IrrepKind::DeltaBracket, l, n, nn)?)).sum::<Result<u64, String>>()?;
            c.fact("sum f dim[Delta,lam]", want);
            c.check(basis.len() as u64 == want, || format!("N={nn} k={k} s={s}: dim {} vs {want}", basis.len()));
        } else {
            let plus: u64 = lams.iter().map(|l| Ok(f(l) * dim_of(IrrepKind::SpinPlus, l, n, nn)?)).sum::<Result<u64, String>>()?;
            let minus: u64 = lams.iter().map(|l| Ok(f(l) * dim_of(IrrepKind::SpinMinus, l, n, nn)?)).sum::<Result<u64, String>>()?;
            let (p, m) = a_split(sp, k, &basis).map_err(|e| e.to_string())?;
            c.fact("dim T0+ / T0-", format!("{} / {}", p.len(), m.len()));
            c.fact("sum f dim(1/2+lam)^+ / ^-", format!("{plus} / {minus}"));
            c.check(basis.len() as u64 == plus + minus, || format!("N={nn} k={k} s={s}: dim {} vs {}", basis.len(), plus + minus));
            c.check(p.len() as u64 == plus && m.len() as u64 == minus, || format!("N={nn}: split {} / {} vs {plus} / {minus}", p.len(), m.len()));
        }
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail(e);
    }
    c.finish("dual_pair")
}

/// Every closed-form tensor rule against the Weyl-character oracle.
pub fn tensor_rules(n: usize, big_n: usize, max: u32) -> SuiteReport {
    let mut c = Checker::new();
    for (a, b) in supported_rule_cases(n, big_n, max) {
        match (tensor_rule(&a, &b), tensor_oracle(&a, &b)) {
            (Ok(r), Ok(o)) => c.check(r.to_irreducible() == o, || format!("{a} (x) {b}")),
            (Err(e), _) | (_, Err(e)) => c.fail(format!("{a} (x) {b}: {e}")),
        }
    }
    c.finish("tensor_rules")
}

/// `sum m_lam^2 = dim CP_k` and walk counts equal the iterated tensor
/// multiplicities, for `k <= k_max` and `k <= n <= n_max`.
pub fn walks(k_max: usize, n_max: usize) -> SuiteReport {
    let mut c = Checker::new();
    for k in 0..=k_max {
        for n in k.max(1)..=n_max {
            for nn in [2 * n, 2 * n + 1] {
                let table = updown_table(n, nn, k);
                let sq: u128 = table.values().map(|m| m * m).sum();
                c.check(sq == dim_cpk(k), || format!("n={n} N={nn} k={k}: sum m^2 = {sq}"));
                match iterated_vector_multiplicities(n, nn, k).map(|m| m.into_iter().collect()).or_else(|_| iterated_by_characters(n, nn, k)) {
                    Ok(it) => {
                        let a: Vec<(Partition, i64)> = table.iter().filter(|x| *x.1 > 0).map(|(p, m)| (p.clone(), *m as i64)).collect();
                        let b: Vec<(Partition, i64)> = it.into_iter().filter(|x| x.1 != 0).collect();
                        c.check(a == b, || format!("n={n} N={nn} k={k}: walks {a:?} vs tensor {b:?}"));
                    }
                    Err(e) => c.fail(e.to_string()),
                }
            }
        }
    }
    c.finish("walks")
}

/// Same as [`iterated_vector_multiplicities`] but through Weyl characters,
/// for ranks where no closed-form rule exists (so(2)).
fn iterated_by_characters(n: usize, big_n: usize, k: usize) -> Result<Vec<(Partition, i64)>, CharError> {
    let v = IrrepLabel::new(IrrepKind::SO, Partition::new(vec![1]), n, big_n)?;
    let mut cur = MultiplicityMap::single(IrrepLabel::new(IrrepKind::DeltaBracket, Partition::empty(), n, big_n)?);
    for _ in 0..k {
        let mut next = MultiplicityMap::new();
        for (l, c) in cur.iter() {
            next.add_map(&tensor_oracle(l, &v)?, *c);
        }
        cur = next;
    }
    Ok(cur.iter().map(|(l, c)| (l.parts.clone(), *c)).collect())
}

/// Seeded random triples in `GB^k_k`: associativity of the symbolic product
/// and agreement with matrix composition on a product of each triple.
pub fn random_products(sp: &SpaceSpec, k: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut c = Checker::new();
    let fam = Family::of(sp);
    let ds = enumerate_gb(k, k);
    let mut rng = StdRng::seed_from_u64(seed);
    let run = |c: &mut Checker, rng: &mut StdRng| -> Result<(), String> {
        for _ in 0..samples {
            let [a, b, d] = [0; 3].map(|_| DiagramExpr::single(ds.choose(rng).expect("nonempty").clone(), Parametrization::Rt));
            let ab = multiply(fam, &a, &b).map_err(|e| e.to_string())?;
            let left = multiply(fam, &ab, &d).map_err(|e| e.to_string())?;
            let right = multiply(fam, &a, &multiply(fam, &b, &d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            c.check(left == right, || format!("({a} {b}) {d} != {a} ({b} {d})"));
            let m = |e: &DiagramExpr| realize_expr(sp, e).map(|m| m.mat).map_err(|e| e.to_string());
            c.check(m(&ab)? == m(&a)?.mul(&m(&b)?), || format!("N={} {a} {b} = {ab}", sp.big_n));
        }
        Ok(())
    };
    if let Err(e) = run(&mut c, &mut rng) {
        c.fail(e);
    }
    c.fact("seed", seed);
    c.finish("random_products")
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 11] = ["dims", "equivariance", "hadamard", "psi", "relations", "basis_change", "algebra", "dual_pair", "tensor_rules", "walks", "random_products"];

/// Runs a named suite at one `(n, N)`; `k` is used by `dual_pair`, `walks`
/// and `random_products`, `seed` only by the latter.
pub fn run_suite(name: &str, n: usize, big_n: usize, k: usize, seed: u64) -> Result<SuiteReport, String> {
    let sp = SpaceSpec::new(n, big_n).map_err(|e| e.to_string())?;
    Ok(match name {
        "dims" => dimension_identity(&[n]),
        "equivariance" => equivariance(&sp, true),
        "hadamard" => hadamard_and_inverses(n, &[sp]),
        "psi" => psi_vs_oracle(&sp, 4),
        "relations" => relations(&sp, 2),
        "basis_change" => basis_change_suite(&sp),
        "algebra" => algebra_soundness(&sp),
        "dual_pair" => dual_pair(&sp, k, k.min(n)),
        "tensor_rules" => tensor_rules(n, big_n, 3),
        "walks" => walks(k, n.max(k)),
        "random_products" => random_products(&sp, k, 20, seed),
        _ => return Err(format!("unknown suite {name}; known: {}", SUITES.join(", "))),
    })
}
