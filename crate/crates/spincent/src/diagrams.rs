//! Generalized Brauer diagrams `GB^k_l`: partial matchings on an upper row of
//! `k` vertices and a lower row of `l` vertices. Unmatched vertices are the
//! isolated ones.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::PolyX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("bad vertex name {0:?}")]
    BadVertex(String),
    #[error("vertex {0} is out of range for k = {1}, l = {2}")]
    OutOfRange(Vertex, usize, usize),
    #[error("vertex {0} has more than one edge")]
    Degree(Vertex),
    #[error("loop at {0}")]
    Loop(Vertex),
    #[error("unknown diagram alias {0:?}")]
    UnknownAlias(String),
    #[error("shape mismatch: ({0},{1}) vs ({2},{3})")]
    Shape(usize, usize, usize, usize),
}

/// A vertex; upper-row vertices sort before lower-row ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    U(usize),
    L(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::U(i) => write!(f, "U{i}"),
            Vertex::L(i) => write!(f, "L{i}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::BadVertex(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|x| x.0).ok_or_else(bad)?);
        let i: usize = tail.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match head {
            "U" | "u" => Ok(Vertex::U(i)),
            "L" | "l" => Ok(Vertex::L(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GBDiagram {
    pub k: usize,
    pub l: usize,
    /// Sorted; each edge is stored as (smaller, larger).
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Deserialize)]
struct RawDiagram {
    k: usize,
    l: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl<'de> Deserialize<'de> for GBDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RawDiagram::deserialize(d)?;
        GBDiagram::new(r.k, r.l, r.edges).map_err(serde::de::Error::custom)
    }
}

impl GBDiagram {
    pub fn new(k: usize, l: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, DiagramError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            for v in [a, b] {
                let ok = match v {
                    Vertex::U(i) => (1..=k).contains(&i),
                    Vertex::L(i) => (1..=l).contains(&i),
                };
                if !ok {
                    return Err(DiagramError::OutOfRange(v, k, l));
                }
            }
            if a == b {
                return Err(DiagramError::Loop(a));
            }
            for v in [a, b] {
                if !seen.insert(v) {
                    return Err(DiagramError::Degree(v));
                }
            }
            out.push(if a < b { (a, b) } else { (b, a) });
        }
        out.sort();
        Ok(GBDiagram { k, l, edges: out })
    }

    /// Shorthand for the edge list, e.g. `&[("U1", "L2")]`.
    pub fn from_names(k: usize, l: usize, edges: &[(&str, &str)]) -> Result<Self, DiagramError> {
        let e = edges.iter().map(|(a, b)| Ok((a.parse()?, b.parse()?))).collect::<Result<Vec<_>, DiagramError>>()?;
        GBDiagram::new(k, l, e)
    }

    /// The identity of `GB^k_k`.
    pub fn identity(k: usize) -> Self {
        GBDiagram::new(k, k, (1..=k).map(|i| (Vertex::U(i), Vertex::L(i))).collect()).expect("valid")
    }

    pub fn isolated_count(&self) -> usize {
        self.k + self.l - 2 * self.edges.len()
    }

    pub fn through_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| matches!((a, b), (Vertex::U(_), Vertex::L(_)))).count()
    }
}

impl fmt::Display for GBDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 2 && self.l == 2 {
            if let Some(i) = Y_EDGES.iter().position(|e| names_match(e, &self.edges)) {
                return write!(f, "y{}", i + 1);
            }
        }
        write!(f, "GB[{},{}]{{", self.k, self.l)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GBDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn double_factorial_odd(m: usize) -> u128 {
    // (2i-1)!! with m = 2i
    (1..m).step_by(2).map(|x| x as u128).product()
}

fn binom(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `sum_i C(k+l, 2i) (2i-1)!!`
pub fn gb_count(k: usize, l: usize) -> u128 {
    (0..=(k + l) / 2).map(|i| binom(k + l, 2 * i) * double_factorial_odd(2 * i)).sum()
}

fn matchings(verts: &[Vertex], acc: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
    let Some((&first, rest)) = verts.split_first() else {
        out.push(acc.clone());
        return;
    };
    // first vertex isolated
    matchings(rest, acc, out);
    for (i, &v) in rest.iter().enumerate() {
        let mut r = rest.to_vec();
        r.remove(i);
        acc.push((first, v));
        matchings(&r, acc, out);
        acc.pop();
    }
}

/// All of `GB^k_l`, sorted lexicographically by edge list.
pub fn enumerate_gb(k: usize, l: usize) -> Vec<GBDiagram> {
    let verts: Vec<Vertex> = (1..=k).map(Vertex::U).chain((1..=l).map(Vertex::L)).collect();
    let mut raw = vec![];
    matchings(&verts, &mut vec![], &mut raw);
    let mut out: Vec<GBDiagram> = raw.into_iter().map(|e| GBDiagram::new(k, l, e).expect("valid matching")).collect();
    out.sort();
    out
}

/// Structural reading of a diagram. All indices are 1-based row positions;
/// pairs are stored (smaller, larger).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReading {
    pub t_upper: Vec<usize>,
    pub t_lower: Vec<usize>,
    pub upper_pairs: Vec<(usize, usize)>,
    pub lower_pairs: Vec<(usize, usize)>,
    /// upper position -> lower position, sorted by upper position
    pub through: Vec<(usize, usize)>,
}

pub fn read_diagram(d: &GBDiagram) -> DiagramReading {
    let mut r = DiagramReading { t_upper: vec![], t_lower: vec![], upper_pairs: vec![], lower_pairs: vec![], through: vec![] };
    let mut up = vec![false; d.k + 1];
    let mut lo = vec![false; d.l + 1];
    for &(a, b) in &d.edges {
        match (a, b) {
            (Vertex::U(i), Vertex::U(j)) => {
                r.upper_pairs.push((i.min(j), i.max(j)));
                up[i] = true;
                up[j] = true;
            }
            (Vertex::L(i), Vertex::L(j)) => {
                r.lower_pairs.push((i.min(j), i.max(j)));
                lo[i] = true;
                lo[j] = true;
            }
            (Vertex::U(i), Vertex::L(j)) | (Vertex::L(j), Vertex::U(i)) => {
                r.through.push((i, j));
                up[i] = true;
                lo[j] = true;
            }
        }
    }
    r.t_upper = (1..=d.k).filter(|&i| !up[i]).collect();
    r.t_lower = (1..=d.l).filter(|&i| !lo[i]).collect();
    r.upper_pairs.sort();
    r.lower_pairs.sort();
    r.through.sort();
    r
}

/// Inverse of [`read_diagram`].
pub fn diagram_from_reading(k: usize, l: usize, r: &DiagramReading) -> Result<GBDiagram, DiagramError> {
    let mut e = vec![];
    e.extend(r.upper_pairs.iter().map(|&(a, b)| (Vertex::U(a), Vertex::U(b))));
    e.extend(r.lower_pairs.iter().map(|&(a, b)| (Vertex::L(a), Vertex::L(b))));
    e.extend(r.through.iter().map(|&(a, b)| (Vertex::U(a), Vertex::L(b))));
    GBDiagram::new(k, l, e)
}

// The ten diagrams of GB^2_2, in the numbering used for the aliases y1..y10.
const Y_EDGES: [&[(&str, &str)]; 10] = [
    &[("U1", "L1"), ("U2", "L2")],
    &[("U1", "L2"), ("U2", "L1")],
    &[("U1", "U2"), ("L1", "L2")],
    &[("U1", "L1")],
    &[("U2", "L2")],
    &[("U1", "L2")],
    &[("U2", "L1")],
    &[("U1", "U2")],
    &[("L1", "L2")],
    &[],
];

fn names_match(names: &[(&str, &str)], edges: &[(Vertex, Vertex)]) -> bool {
    GBDiagram::from_names(2, 2, names).is_ok_and(|d| d.edges == edges)
}

/// `y1..y10` of `GB^2_2`.
pub fn y(i: usize) -> GBDiagram {
    GBDiagram::from_names(2, 2, Y_EDGES[i - 1]).expect("alias table is valid")
}

/// Parses `y5`, or a JSON diagram.
pub fn parse_diagram(s: &str) -> Result<GBDiagram, DiagramError> {
    let t = s.trim();
    if let Some(num) = t.strip_prefix('y').or_else(|| t.strip_prefix('Y')) {
        return match num.parse::<usize>() {
            Ok(i) if (1..=10).contains(&i) => Ok(y(i)),
            _ => Err(DiagramError::UnknownAlias(s.to_string())),
        };
    }
    serde_json::from_str(t).map_err(|_| DiagramError::UnknownAlias(s.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parametrization {
    Inv,
    Rt,
}

/// A linear combination of diagrams of one shape, over `Q(sqrt2)[X]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramExpr {
    pub k: usize,
    pub l: usize,
    pub param: Parametrization,
    pub terms: BTreeMap<GBDiagram, PolyX>,
}

impl DiagramExpr {
    pub fn zero(k: usize, l: usize, param: Parametrization) -> Self {
        DiagramExpr { k, l, param, terms: BTreeMap::new() }
    }

    pub fn single(d: GBDiagram, param: Parametrization) -> Self {
        let mut e = DiagramExpr::zero(d.k, d.l, param);
        e.terms.insert(d, PolyX::from_int(1));
        e
    }

    pub fn add_term(&mut self, d: GBDiagram, c: &PolyX) -> Result<(), DiagramError> {
        if (d.k, d.l) != (self.k, self.l) {
            return Err(DiagramError::Shape(d.k, d.l, self.k, self.l));
        }
        let v = match self.terms.get(&d) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, v);
        }
        Ok(())
    }

    pub fn add_expr(&mut self, other: &DiagramExpr, c: &PolyX) -> Result<(), DiagramError> {
        for (d, x) in &other.terms {
            self.add_term(d.clone(), &(x * c))?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for DiagramExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){d}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawExpr {
    k: usize,
    l: usize,
    param: Parametrization,
    terms: Vec<(GBDiagram, PolyX)>,
}

impl Serialize for DiagramExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawExpr { k: self.k, l: self.l, param: self.param, terms: self.terms.iter().map(|(d, c)| (d.clone(), c.clone())).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RawExpr::deserialize(d)?;
        let mut e = DiagramExpr::zero(r.k, r.l, r.param);
        for (g, c) in r.terms {
            e.add_term(g, &c).map_err(serde::de::Error::custom)?;
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_gb(1, 1).len(), 2);
        assert_eq!(enumerate_gb(2, 2).len(), 10);
        assert_eq!(enumerate_gb(0, 0).len(), 1);
        for (k, l) in [(0, 3), (2, 3), (3, 3), (4, 2)] {
            assert_eq!(enumerate_gb(k, l).len() as u128, gb_count(k, l));
        }
    }

    #[test]
    fn readings() {
        let r8 = read_diagram(&y(8));
        assert_eq!(r8.upper_pairs, vec![(1, 2)]);
        assert_eq!(r8.t_lower, vec![1, 2]);
        assert!(r8.t_upper.is_empty());
        let r5 = read_diagram(&y(5));
        assert_eq!((r5.t_upper.clone(), r5.through.clone(), r5.t_lower.clone()), (vec![1], vec![(2, 2)], vec![1]));
        let r1 = read_diagram(&y(1));
        assert_eq!(r1.through, vec![(1, 1), (2, 2)]);
        for d in enumerate_gb(3, 2) {
            assert_eq!(diagram_from_reading(3, 2, &read_diagram(&d)).unwrap(), d);
        }
    }

    #[test]
    fn json_round_trip() {
        let d = y(6);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"k":2,"l":2,"edges":[["U1","L2"]]}"#);
        assert_eq!(parse_diagram(&s).unwrap(), d);
        assert_eq!(parse_diagram("y6").unwrap(), d);
        assert!(parse_diagram(r#"{"k":1,"l":1,"edges":[["U1","U1"]]}"#).is_err());
        assert_eq!(d.to_string(), "y6");
    }
}
