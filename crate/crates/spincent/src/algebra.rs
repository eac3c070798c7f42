//! The generic diagram algebra over `Q(sqrt2)[X]`: products of rt diagrams
//! computed symbolically with the composition relations, N replaced by X.
//!
//! A product `a b` means `a o b` (`b` is applied first). The engine keeps a
//! normal form `inj o (id_V pairs, through strands) o cont o pr` with tensor
//! slots named by labels, and applies the operators of `a` one at a time.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::perm_sign;
use crate::diagrams::{enumerate_gb, read_diagram, DiagramError, DiagramExpr, GBDiagram, Parametrization, Vertex};
use crate::ops::Family;
use crate::relations::{eps, shared_scalar, Relation};
use crate::scalars::{AlgebraicScalar as S, PolyX};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("multiply needs rt-parametrized expressions")]
    Parametrization,
    #[error("shapes do not compose: {0}x{1} after {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("structure constants are only tabulated for k <= 3, got {0}")]
    TooLarge(usize),
    #[error("rewriting left a malformed word: {0}")]
    Internal(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Name of a tensor slot: inputs of the whole word are `Top`, the slots
/// between the two factors `Mid`, the outputs `Bot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Top(usize),
    Mid(usize),
    Bot(usize),
}

/// Atomic operators. List order matters for `Pr`/`Inj`: the j-th exterior
/// component sits at the j-th label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    Pr(Vec<Label>),
    Inj(Vec<Label>),
    Cont(Label, Label),
    IdV(Label, Label),
    Relabel(Vec<(Label, Label)>),
}

/// A word of operators, applied left to right, with a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpWord {
    pub ops: Vec<Op>,
    pub coeff: PolyX,
}

impl OpWord {
    /// The rt realization of `d` as a word from `upper` labels to `lower`
    /// labels.
    pub fn of_diagram(d: &GBDiagram, upper: fn(usize) -> Label, lower: fn(usize) -> Label) -> Self {
        let r = read_diagram(d);
        let mut ops = vec![];
        for &(a, b) in &r.upper_pairs {
            ops.push(Op::Cont(upper(a), upper(b)));
        }
        if !r.t_upper.is_empty() {
            ops.push(Op::Pr(r.t_upper.iter().map(|&x| upper(x)).collect()));
        }
        ops.push(Op::Relabel(r.through.iter().map(|&(a, b)| (upper(a), lower(b))).collect()));
        for &(a, b) in &r.lower_pairs {
            ops.push(Op::IdV(lower(a), lower(b)));
        }
        if !r.t_lower.is_empty() {
            ops.push(Op::Inj(r.t_lower.iter().map(|&x| lower(x)).collect()));
        }
        OpWord { ops, coeff: PolyX::from_int(1) }
    }
}

/// `inj(inj) o (id_V pairs, through) o cont(cont) o pr(pr)`. Through strands
/// map an output label to a `Top` label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct NormalForm {
    pr: Vec<Label>,
    cont: Vec<(Label, Label)>,
    through: BTreeMap<Label, Label>,
    idv: Vec<(Label, Label)>,
    inj: Vec<Label>,
}

enum Slot {
    Inj(usize),
    IdV(Label),
    Through(Label),
}

fn sorted_pair(a: Label, b: Label) -> (Label, Label) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn rel_sign(seq: &[Label], target: &[Label]) -> i64 {
    let idx: Vec<usize> = target.iter().map(|t| seq.iter().position(|s| s == t).expect("same labels")).collect();
    perm_sign(&idx)
}

impl NormalForm {
    fn identity(k: usize) -> Self {
        NormalForm {
            pr: vec![],
            cont: vec![],
            through: (1..=k).map(|i| (Label::Top(i), Label::Top(i))).collect(),
            idv: vec![],
            inj: vec![],
        }
    }

    fn slot(&self, s: Label) -> Result<Slot, AlgebraError> {
        if let Some(j) = self.inj.iter().position(|&x| x == s) {
            return Ok(Slot::Inj(j));
        }
        for &(a, b) in &self.idv {
            if a == s {
                return Ok(Slot::IdV(b));
            }
            if b == s {
                return Ok(Slot::IdV(a));
            }
        }
        match self.through.get(&s) {
            Some(&t) => Ok(Slot::Through(t)),
            None => Err(AlgebraError::Internal(format!("no output slot {s:?}"))),
        }
    }

    fn remove_idv(&mut self, s: Label) {
        self.idv.retain(|&(a, b)| a != s && b != s);
    }

    fn relabel(&mut self, from: Label, to: Label) {
        let f = |x: &mut Label| {
            if *x == from {
                *x = to;
            }
        };
        self.inj.iter_mut().for_each(f);
        for (a, b) in self.idv.iter_mut() {
            f(a);
            f(b);
        }
        if let Some(t) = self.through.remove(&from) {
            self.through.insert(to, t);
        }
    }

    /// Sorts the lists and pairs; returns the alternation sign.
    fn canonical(mut self) -> (i64, Self) {
        let mut s = 1;
        for list in [&mut self.pr, &mut self.inj] {
            let mut sorted = list.clone();
            sorted.sort();
            s *= rel_sign(list, &sorted);
            *list = sorted;
        }
        self.cont = self.cont.iter().map(|&(a, b)| sorted_pair(a, b)).sorted().collect();
        self.idv = self.idv.iter().map(|&(a, b)| sorted_pair(a, b)).sorted().collect();
        (s, self)
    }
}

type Sum = BTreeMap<NormalForm, PolyX>;

fn add_to(acc: &mut Sum, nf: NormalForm, c: &PolyX) {
    if c.is_zero() {
        return;
    }
    let (s, nf) = nf.canonical();
    let c = c.scale(&S::from_int(s));
    let v = match acc.remove(&nf) {
        Some(x) => &x + &c,
        None => c,
    };
    if !v.is_zero() {
        acc.insert(nf, v);
    }
}

fn sc(x: &S) -> PolyX {
    PolyX::constant(x.clone())
}

/// Terms of `^i phi^{ins}_{outs}`: `(coeff, inj list, moves in -> out, pr list)`.
fn phi_terms(i: usize, ins: &[Label], outs: &[Label]) -> Vec<(S, Vec<Label>, Vec<(Label, Label)>, Vec<Label>)> {
    let (p, q) = (ins.len(), outs.len());
    let norm = S::frac(1, factorial(q - i) * factorial(i) * factorial(p - i));
    let mut out = vec![];
    for sigma in (0..q).permutations(q) {
        for tau in (0..p).permutations(p) {
            let c = norm.scale_int(perm_sign(&sigma) * perm_sign(&tau));
            let so: Vec<Label> = sigma.iter().map(|&x| outs[x]).collect();
            let ti: Vec<Label> = tau.iter().map(|&x| ins[x]).collect();
            let moves = (0..i).map(|u| (ti[u], so[u])).collect();
            out.push((c, so[i..].to_vec(), moves, ti[i..].to_vec()));
        }
    }
    out
}

/// The rewriting context: the sign tables depend on the family.
struct Engine {
    family: Family,
}

impl Engine {
    /// `pr_{l1} o pr_D` on top labels.
    fn top_pr(&self, nf: &NormalForm, l1: &[Label], c: &PolyX, acc: &mut Sum) {
        if l1.is_empty() {
            add_to(acc, nf.clone(), c);
            return;
        }
        let l2 = &nf.pr;
        let (q, p) = (l1.len(), l2.len());
        for i in 0..=p.min(q) {
            let e = &eps(Relation::PrPr, self.family, p, q, 0, i) * &S::frac(1, factorial(i) * factorial(q - i) * factorial(p - i));
            for sigma in l1.iter().permutations(q) {
                for tau in l2.iter().permutations(p) {
                    let s = rel_sign(l1, &sigma.iter().map(|x| **x).collect_vec()) * rel_sign(l2, &tau.iter().map(|x| **x).collect_vec());
                    let mut m = nf.clone();
                    m.pr = sigma[i..].iter().chain(&tau[i..]).map(|x| **x).collect();
                    m.cont.extend((0..i).map(|u| (*sigma[u], *tau[u])));
                    add_to(acc, m, &(c * &sc(&e.scale_int(s))));
                }
            }
        }
    }

    /// `inj_{l} o inj_D`.
    fn inj(&self, nf: &NormalForm, l: &[Label], c: &PolyX, acc: &mut Sum) {
        let l2 = &nf.inj;
        let (q, p) = (l.len(), l2.len());
        for i in 0..=p.min(q) {
            let e = &eps(Relation::InjInj, self.family, p, q, 0, i) * &S::frac(1, factorial(i) * factorial(q - i) * factorial(p - i));
            for sigma in l.iter().permutations(q) {
                for tau in l2.iter().permutations(p) {
                    let s = rel_sign(l, &sigma.iter().map(|x| **x).collect_vec()) * rel_sign(l2, &tau.iter().map(|x| **x).collect_vec());
                    let mut m = nf.clone();
                    m.inj = sigma[i..].iter().chain(&tau[i..]).map(|x| **x).collect();
                    m.idv.extend((0..i).map(|u| (*sigma[u], *tau[u])));
                    add_to(acc, m, &(c * &sc(&e.scale_int(s))));
                }
            }
        }
    }

    /// Replaces the inj of `nf` by `^i phi^{ins}_{outs}` (scaled by `c`),
    /// where `ins` are through strands.
    fn expand_phi(&self, nf: &NormalForm, i: usize, ins: &[Label], outs: &[Label], c: &PolyX, acc: &mut Sum) {
        for (x, inj, moves, pr) in phi_terms(i, ins, outs) {
            let mut m = nf.clone();
            let tops: BTreeMap<Label, Label> = ins.iter().map(|s| (*s, m.through.remove(s).expect("through strand"))).collect();
            m.inj = inj;
            for (a, b) in moves {
                m.through.insert(b, tops[&a]);
            }
            let pr_tops: Vec<Label> = pr.iter().map(|s| tops[s]).collect();
            self.top_pr(&m, &pr_tops, &(c * &sc(&x)), acc);
        }
    }

    fn cont(&self, nf: &NormalForm, s: Label, t: Label, c: &PolyX, acc: &mut Sum) -> Result<(), AlgebraError> {
        match (nf.slot(s)?, nf.slot(t)?) {
            (Slot::Inj(_), Slot::Inj(_)) => {}
            (Slot::IdV(x), _) if x == t => {
                let mut m = nf.clone();
                m.remove_idv(s);
                add_to(acc, m, &(c * &PolyX::x()));
            }
            (Slot::IdV(s2), _) => {
                let mut m = nf.clone();
                m.remove_idv(s);
                m.relabel(t, s2);
                add_to(acc, m, c);
            }
            (_, Slot::IdV(t2)) => {
                let mut m = nf.clone();
                m.remove_idv(t);
                m.relabel(s, t2);
                add_to(acc, m, c);
            }
            (Slot::Through(a), Slot::Through(b)) => {
                let mut m = nf.clone();
                m.through.remove(&s);
                m.through.remove(&t);
                m.cont.push((a, b));
                add_to(acc, m, c);
            }
            (Slot::Inj(j), Slot::Through(_)) => self.cont_inj(nf, j, t, c, acc),
            (Slot::Through(_), Slot::Inj(j)) => self.cont_inj(nf, j, s, c, acc),
        }
        Ok(())
    }

    /// Contraction of inj component `j` with the through strand at `t`.
    fn cont_inj(&self, nf: &NormalForm, j: usize, t: Label, c: &PolyX, acc: &mut Sum) {
        let rest: Vec<Label> = nf.inj.iter().enumerate().filter(|x| x.0 != j).map(|x| *x.1).collect();
        let p = rest.len();
        let c = c.scale(&S::sign(j as i64));
        for i in 0..=p.min(1) {
            let e = eps(Relation::ContInj, self.family, p, 1, 0, i);
            self.expand_phi(nf, i, &[t], &rest, &c.scale(&e), acc);
        }
    }

    fn pr(&self, nf: &NormalForm, a: &[Label], c: &PolyX, acc: &mut Sum) -> Result<(), AlgebraError> {
        if a.is_empty() {
            add_to(acc, nf.clone(), c);
            return Ok(());
        }
        let slots: Vec<Slot> = a.iter().map(|&s| nf.slot(s)).collect::<Result<_, _>>()?;
        let idv_end = slots.iter().position(|x| matches!(x, Slot::IdV(_)));
        if let Some(pos) = idv_end {
            let Slot::IdV(partner) = slots[pos] else { unreachable!() };
            if a.contains(&partner) {
                return Ok(());
            }
            // pr_{A', s} id_V(s, s') = sum_i eps(i) ^i phi^{A'}_{[s']}
            let s = a[pos];
            let rest: Vec<Label> = a.iter().copied().filter(|&x| x != s).collect();
            let q = rest.len();
            let c = c.scale(&S::sign((a.len() - 1 - pos) as i64));
            let mut base = nf.clone();
            base.remove_idv(s);
            let e0 = eps(Relation::PrIdv, self.family, 1, q, 0, 0);
            let mut tmp = Sum::new();
            self.pr(&base, &rest, &c.scale(&e0), &mut tmp)?;
            for (m, x) in tmp {
                self.inj(&m, &[partner], &x, acc);
            }
            if q > 0 {
                let e1 = eps(Relation::PrIdv, self.family, 1, q, 0, 1);
                for (j, &aj) in rest.iter().enumerate() {
                    let mut m = base.clone();
                    m.relabel(aj, partner);
                    let others: Vec<Label> = rest.iter().copied().filter(|&x| x != aj).collect();
                    self.pr(&m, &others, &c.scale(&(&e1 * &S::sign(j as i64))), acc)?;
                }
            }
            return Ok(());
        }
        // pr_{[q+1,q+p]} inj_{[1,q+t]} with inj = (outs, shared), pr = (shared, ins)
        let shared: Vec<Label> = a.iter().copied().filter(|s| nf.inj.contains(s)).collect();
        let ins: Vec<Label> = a.iter().copied().filter(|s| !nf.inj.contains(s)).collect();
        let outs: Vec<Label> = nf.inj.iter().copied().filter(|s| !a.contains(s)).collect();
        let inj_order: Vec<Label> = outs.iter().chain(&shared).copied().collect();
        let pr_order: Vec<Label> = shared.iter().chain(&ins).copied().collect();
        let sign = rel_sign(&nf.inj, &inj_order) * rel_sign(a, &pr_order);
        let (p, q, t) = (a.len(), outs.len(), shared.len());
        let mut base = nf.clone();
        base.inj.clear();
        for i in 0..=(p - t).min(q) {
            let x = shared_scalar(p, q, t, i).scale(&eps(Relation::PrInjShared, self.family, p, q, t, i).scale_int(sign));
            self.expand_phi(&base, i, &ins, &outs, &(c * &x), acc);
        }
        Ok(())
    }

    fn apply(&self, terms: Sum, op: &Op) -> Result<Sum, AlgebraError> {
        let mut acc = Sum::new();
        for (nf, c) in terms {
            match op {
                Op::Pr(a) => self.pr(&nf, a, &c, &mut acc)?,
                Op::Inj(l) => self.inj(&nf, l, &c, &mut acc),
                Op::Cont(s, t) => self.cont(&nf, *s, *t, &c, &mut acc)?,
                Op::IdV(s, t) => {
                    let mut m = nf.clone();
                    m.idv.push((*s, *t));
                    add_to(&mut acc, m, &c);
                }
                Op::Relabel(map) => {
                    let mut m = nf.clone();
                    // through a scratch name first, so that overlapping names cannot collide
                    for (j, &(a, _)) in map.iter().enumerate() {
                        m.relabel(a, Label::Mid(usize::MAX - j));
                    }
                    for (j, &(_, b)) in map.iter().enumerate() {
                        m.relabel(Label::Mid(usize::MAX - j), b);
                    }
                    add_to(&mut acc, m, &c);
                }
            }
        }
        Ok(acc)
    }
}

fn to_diagram(k: usize, l: usize, nf: &NormalForm) -> Result<GBDiagram, AlgebraError> {
    let up = |x: Label| match x {
        Label::Top(i) => Ok(Vertex::U(i)),
        _ => Err(AlgebraError::Internal(format!("{x:?} left on the input side"))),
    };
    let down = |x: Label| match x {
        Label::Bot(i) => Ok(Vertex::L(i)),
        _ => Err(AlgebraError::Internal(format!("{x:?} left on the output side"))),
    };
    let mut edges = vec![];
    for &(a, b) in &nf.cont {
        edges.push((up(a)?, up(b)?));
    }
    for &(a, b) in &nf.idv {
        edges.push((down(a)?, down(b)?));
    }
    for (&o, &t) in &nf.through {
        edges.push((up(t)?, down(o)?));
    }
    for &x in &nf.pr {
        up(x)?;
    }
    for &x in &nf.inj {
        down(x)?;
    }
    let d = GBDiagram::new(k, l, edges)?;
    if d.isolated_count() != nf.pr.len() + nf.inj.len() {
        return Err(AlgebraError::Internal("isolated vertices do not match the pr/inj lists".into()));
    }
    Ok(d)
}

/// Evaluates a word on `k` inputs labelled `Top(1..k)` whose outputs end up
/// on `Bot(1..l)`.
pub fn evaluate_word(family: Family, k: usize, l: usize, word: &OpWord) -> Result<DiagramExpr, AlgebraError> {
    let engine = Engine { family };
    let mut terms = Sum::new();
    add_to(&mut terms, NormalForm::identity(k), &word.coeff);
    for op in &word.ops {
        terms = engine.apply(terms, op)?;
    }
    let mut out = DiagramExpr::zero(k, l, Parametrization::Rt);
    for (nf, c) in &terms {
        // lists are sorted by label, which is the realization order
        out.add_term(to_diagram(k, l, nf)?, c)?;
    }
    Ok(out)
}

fn product_word(a: &GBDiagram, b: &GBDiagram) -> OpWord {
    let mut w = OpWord::of_diagram(b, Label::Top, Label::Mid);
    w.ops.extend(OpWord::of_diagram(a, Label::Mid, Label::Bot).ops);
    w
}

/// `a b = a o b` of two diagrams.
pub fn multiply_diagrams(family: Family, a: &GBDiagram, b: &GBDiagram) -> Result<DiagramExpr, AlgebraError> {
    if a.k != b.l {
        return Err(AlgebraError::Shape(a.k, a.l, b.k, b.l));
    }
    evaluate_word(family, b.k, a.l, &product_word(a, b))
}

/// Bilinear extension of [`multiply_diagrams`] to rt expressions.
pub fn multiply(family: Family, a: &DiagramExpr, b: &DiagramExpr) -> Result<DiagramExpr, AlgebraError> {
    if a.param != Parametrization::Rt || b.param != Parametrization::Rt {
        return Err(AlgebraError::Parametrization);
    }
    if a.k != b.l {
        return Err(AlgebraError::Shape(a.k, a.l, b.k, b.l));
    }
    let mut out = DiagramExpr::zero(b.k, a.l, Parametrization::Rt);
    for (da, ca) in &a.terms {
        for (db, cb) in &b.terms {
            out.add_expr(&multiply_diagrams(family, da, db)?, &(ca * cb))?;
        }
    }
    Ok(out)
}

/// Multiplication table of `GB^k_k` in the rt basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub k: usize,
    pub family: Family,
    pub basis: Vec<GBDiagram>,
    /// `(d1, d2, d1 d2)` for all ordered pairs.
    pub products: Vec<(GBDiagram, GBDiagram, DiagramExpr)>,
}

impl StructureTable {
    /// JSON list of `(d1, d2, [(d, poly)])`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .products
            .iter()
            .map(|(a, b, e)| serde_json::json!([a, b, e.terms.iter().map(|(d, c)| (d.clone(), c.clone())).collect::<Vec<_>>()]))
            .collect();
        serde_json::Value::Array(rows)
    }

    pub fn get(&self, a: &GBDiagram, b: &GBDiagram) -> Option<&DiagramExpr> {
        let i = self.basis.binary_search(a).ok()?;
        let j = self.basis.binary_search(b).ok()?;
        Some(&self.products[i * self.basis.len() + j].2)
    }
}

pub fn structure_constants(k: usize, family: Family) -> Result<StructureTable, AlgebraError> {
    if k > 3 {
        return Err(AlgebraError::TooLarge(k));
    }
    let basis = enumerate_gb(k, k);
    let pairs: Vec<(GBDiagram, GBDiagram)> = basis.iter().cartesian_product(&basis).map(|(a, b)| (a.clone(), b.clone())).collect();
    let products = pairs
        .into_par_iter()
        .map(|(a, b)| multiply_diagrams(family, &a, &b).map(|e| (a, b, e)))
        .collect::<Result<_, _>>()?;
    Ok(StructureTable { k, family, basis, products })
}

/// Outcome of the through-strand filtration check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub k: usize,
    /// No product term has more through strands than either factor.
    pub monotone: bool,
    /// Number of diagrams with `k` through strands.
    pub quotient_dim: usize,
    /// Products of two such diagrams are single diagrams with coefficient 1
    /// (the quotient is the group algebra of `S_k`).
    pub quotient_is_group_algebra: bool,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.monotone && self.quotient_is_group_algebra && self.quotient_dim == factorial(self.k) as usize
    }
}

pub fn ideal_filtration_check(k: usize, family: Family) -> Result<FiltrationReport, AlgebraError> {
    let table = structure_constants(k, family)?;
    let mut monotone = true;
    let mut group = true;
    for (a, b, e) in &table.products {
        let bound = a.through_count().min(b.through_count());
        if e.terms.keys().any(|d| d.through_count() > bound) {
            monotone = false;
        }
        if a.through_count() == k && b.through_count() == k {
            let one = PolyX::from_int(1);
            group &= e.terms.len() == 1 && e.terms.iter().all(|(d, c)| d.through_count() == k && *c == one);
        }
    }
    let quotient_dim = table.basis.iter().filter(|d| d.through_count() == k).count();
    Ok(FiltrationReport { k, monotone, quotient_dim, quotient_is_group_algebra: group })
}
