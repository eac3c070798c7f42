//! Partitions, Littlewood-Richardson and symplectic tensor coefficients,
//! closed-form decomposition rules for spin/orthogonal tensor products, and a
//! brute-force Weyl character oracle to check them against.
//!
//! Characters are Laurent polynomials in `y_i` with `x_i = y_i^2`, i.e. the
//! exponent vector of a weight is twice the weight.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("rank {0} exceeds the supported bound 4")]
    RankBound(usize),
    #[error("not a character: negative multiplicity {mult} at weight {weight:?}")]
    NotACharacter { weight: Vec<i32>, mult: i64 },
    #[error("no closed form for {0}")]
    Unsupported(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
}

// ---------------------------------------------------------------------------
// partitions

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts nothing: panics if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing: {parts:?}");
        Partition(parts)
    }

    pub fn try_new(parts: Vec<u32>) -> Option<Self> {
        if parts.windows(2).all(|w| w[0] >= w[1]) {
            Some(Self::new(parts))
        } else {
            None
        }
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    /// `(1^k)`
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0) as usize;
        Partition((0..m).map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32).collect())
    }

    /// `self / inner` is a vertical strip (at most one box per row).
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (0..self.len()).all(|i| self.part(i) - inner.part(i) <= 1)
    }

    /// Partitions obtained by adding one box, with at most `max_len` rows.
    pub fn add_box(&self, max_len: usize) -> Vec<Partition> {
        let mut out = vec![];
        for i in 0..=self.len() {
            if i >= max_len {
                break;
            }
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut p = self.0.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push(Partition(p));
            }
        }
        out
    }

    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = vec![];
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut p = self.0.clone();
                p[i] -= 1;
                out.push(Partition::new(p));
            }
        }
        out
    }

    /// All `mu` with `self / mu` a vertical strip.
    pub fn remove_vertical_strips(&self) -> Vec<Partition> {
        let choices = (0..self.len()).map(|i| {
            (self.part(i).saturating_sub(1)..=self.part(i)).collect::<Vec<_>>()
        });
        if self.is_empty() {
            return vec![Partition::empty()];
        }
        choices.multi_cartesian_product().filter_map(Partition::try_new).collect()
    }

    /// All `kappa` with `kappa / self` a vertical strip and at most `max_len` rows.
    pub fn add_vertical_strips(&self, max_len: usize) -> Vec<Partition> {
        let mut out = vec![];
        for mask in 0u32..(1 << max_len) {
            let mut p: Vec<u32> = (0..max_len).map(|i| self.part(i) + ((mask >> i) & 1)).collect();
            if p.windows(2).all(|w| w[0] >= w[1]) {
                while p.last() == Some(&0) {
                    p.pop();
                }
                out.push(Partition(p));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Number of standard Young tableaux (hook length formula).
    pub fn num_standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.size() as u128).product();
        let mut den: u128 = 1;
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r as usize {
                den *= (r as u128 - j as u128) + (conj.part(j) as u128 - i as u128) - 1;
            }
        }
        num /= den;
        num
    }

    /// All partitions of `size` with at most `max_len` rows.
    pub fn all_of_size(size: u32, max_len: usize) -> Vec<Partition> {
        fn rec(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=rem.min(max_part)).rev() {
                cur.push(p);
                rec(rem - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(size, size, max_len, &mut vec![], &mut out);
        out
    }

    pub fn all_up_to(size: u32, max_len: usize) -> Vec<Partition> {
        (0..=size).flat_map(|s| Self::all_of_size(s, max_len)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "({})", self.0.iter().join(","))
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson

/// Number of LR tableaux of shape `lam / mu` with content `nu`.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.size() != mu.size() + nu.size() || !lam.contains(mu) || !lam.contains(nu) {
        return 0;
    }
    // cells in reading order: rows top to bottom, each row right to left
    let mut cells = vec![];
    for r in 0..lam.len() {
        for c in (mu.part(r)..lam.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = lam.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; lam.len()];
    let mut counts = vec![0u32; nu.len() + 1];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        mu: &Partition,
        nu: &Partition,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=nu.len() as u32 {
            // content bound and lattice condition
            if counts[v as usize] >= nu.part(v as usize - 1) {
                continue;
            }
            if v > 1 && counts[v as usize] >= counts[v as usize - 1] {
                continue;
            }
            // weakly increasing along rows: right neighbour (already filled) must be >= v
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && grid[r][c + 1] < v {
                continue;
            }
            // strictly increasing down columns: cell above is either in mu or < v
            if r > 0 && (c as u32) >= mu.part(r - 1) && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            counts[v as usize] += 1;
            total += rec(idx + 1, cells, grid, counts, mu, nu);
            counts[v as usize] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut counts, mu, nu)
}

/// Multiplicity of `lam` in `mu (x) nu` for Sp(2n).
pub fn sp_tensor_coefficient(n: usize, mu: &Partition, nu: &Partition, lam: &Partition) -> Result<u64, CharError> {
    for p in [mu, nu, lam] {
        if p.len() > n {
            return Err(CharError::RankMismatch(format!("partition {p} longer than rank {n}")));
        }
    }
    if mu.len() + nu.len() <= n {
        // Newell-Littlewood
        let mut total = 0;
        let max = mu.size().min(nu.size());
        for d in 0..=max {
            for delta in Partition::all_of_size(d, n) {
                if !mu.contains(&delta) || !nu.contains(&delta) {
                    continue;
                }
                for alpha in Partition::all_of_size(mu.size() - d, n) {
                    let a = lr_coefficient(mu, &delta, &alpha);
                    if a == 0 {
                        continue;
                    }
                    for beta in Partition::all_of_size(nu.size() - d, n) {
                        let b = lr_coefficient(nu, &delta, &beta);
                        if b == 0 {
                            continue;
                        }
                        total += a * b * lr_coefficient(lam, &alpha, &beta);
                    }
                }
            }
        }
        Ok(total)
    } else {
        let prod = char_mul(&weyl_char_raw(RootType::C, n, &doubled(mu, n))?, &weyl_char_raw(RootType::C, n, &doubled(nu, n))?);
        let dec = peel(RootType::C, n, prod, false)?;
        Ok(dec.get(&doubled(lam, n)).copied().unwrap_or(0).max(0) as u64)
    }
}

fn doubled(p: &Partition, n: usize) -> Vec<i32> {
    (0..n).map(|i| 2 * p.part(i) as i32).collect()
}

// ---------------------------------------------------------------------------
// labels

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum IrrepKind {
    /// `mu_{SO(N)}`
    SO,
    /// `(mu_1, ..., -mu_n)_{SO(2n)}`
    SoNeg,
    /// O(N) irreducible restricted to SO(N)
    O,
    SpinPlus,
    SpinMinus,
    /// `[Delta, delta]`
    DeltaBracket,
    /// `[Delta', delta]`
    DeltaPrimeBracket,
    /// `mu^{(+)}`
    SumChar,
    /// `mu^{(-)}`
    DiffChar,
    Det,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub kind: IrrepKind,
    pub parts: Partition,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pin_sign: Option<i8>,
}

impl IrrepLabel {
    pub fn new(kind: IrrepKind, parts: Partition, n: usize, big_n: usize) -> Result<Self, CharError> {
        let l = IrrepLabel { kind, parts, n, big_n, pin_sign: None };
        l.validate()?;
        Ok(l)
    }

    fn raw(kind: IrrepKind, parts: Partition, n: usize, big_n: usize) -> Self {
        IrrepLabel { kind, parts, n, big_n, pin_sign: None }
    }

    pub fn with_pin_sign(mut self, s: i8) -> Self {
        self.pin_sign = Some(s);
        self
    }

    pub fn even(&self) -> bool {
        self.big_n == 2 * self.n
    }

    pub fn validate(&self) -> Result<(), CharError> {
        use IrrepKind::*;
        let bad = |m: &str| Err(CharError::InvalidLabel(format!("{self}: {m}")));
        if self.big_n != 2 * self.n && self.big_n != 2 * self.n + 1 {
            return bad("N must be 2n or 2n+1");
        }
        if self.parts.len() > self.n {
            return bad("partition longer than rank");
        }
        let even_only = matches!(self.kind, SoNeg | SpinPlus | SpinMinus | DeltaPrimeBracket | SumChar | DiffChar);
        if even_only && !self.even() {
            return bad("kind requires N = 2n");
        }
        if self.pin_sign.is_some() && self.even() {
            return bad("pin sign only for N = 2n+1");
        }
        if self.kind == Det && !self.parts.is_empty() {
            return bad("Det carries no partition");
        }
        Ok(())
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IrrepKind::*;
        let p = &self.parts;
        let nn = self.big_n;
        let sign = match self.pin_sign {
            Some(s) if s > 0 => "_+",
            Some(_) => "_-",
            None => "",
        };
        match self.kind {
            SO => write!(f, "{p}_SO({nn})"),
            SoNeg => write!(f, "{p}~_SO({nn})"),
            O => write!(f, "{p}_O({nn})"),
            SpinPlus => write!(f, "(1/2+{p})^+_Spin({nn})"),
            SpinMinus => write!(f, "(1/2+{p})^-_Spin({nn})"),
            DeltaBracket => write!(f, "[Δ{sign},{p}]_Spin({nn})"),
            DeltaPrimeBracket => write!(f, "[Δ',{p}]_Spin({nn})"),
            SumChar => write!(f, "{p}^(+)_SO({nn})"),
            DiffChar => write!(f, "{p}^(-)_SO({nn})"),
            Det => write!(f, "det_O({nn})"),
        }
    }
}

/// Formal integer combination of labels.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiplicityMap(pub BTreeMap<IrrepLabel, i64>);

impl MultiplicityMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(l: IrrepLabel) -> Self {
        let mut m = Self::new();
        m.add(l, 1);
        m
    }

    pub fn add(&mut self, l: IrrepLabel, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(l.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&l);
        }
    }

    pub fn add_map(&mut self, other: &MultiplicityMap, c: i64) {
        for (l, m) in &other.0 {
            self.add(l.clone(), c * m);
        }
    }

    pub fn get(&self, l: &IrrepLabel) -> i64 {
        self.0.get(l).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, &i64)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rewrite composite labels in terms of irreducible characters of Spin(N):
    /// `SO`, `SoNeg` (only with l(mu) = n), `SpinPlus`, `SpinMinus`, and
    /// `DeltaBracket` for odd N. Pin signs and Det are forgotten.
    pub fn to_irreducible(&self) -> MultiplicityMap {
        let mut out = MultiplicityMap::new();
        for (l, &c) in &self.0 {
            for (m, d) in irreducible_parts(l) {
                out.add(m, c * d);
            }
        }
        out
    }

    pub fn character(&self) -> Result<LaurentChar, CharError> {
        let mut acc = LaurentChar::new();
        for (l, &c) in &self.0 {
            char_axpy(&mut acc, c, &weyl_character(l)?);
        }
        Ok(acc)
    }

    pub fn dimension(&self) -> Result<i64, CharError> {
        let mut d = 0i64;
        for (l, &c) in self.to_irreducible().iter() {
            d += c * weyl_dimension_signed(l)?;
        }
        Ok(d)
    }
}

impl fmt::Display for MultiplicityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .0
            .iter()
            .map(|(l, c)| if *c == 1 { l.to_string() } else { format!("{c}·{l}") })
            .join(" + ");
        write!(f, "{s}")
    }
}

impl fmt::Debug for MultiplicityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MultiplicityMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&IrrepLabel, &i64)> = self.0.iter().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiplicityMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(IrrepLabel, i64)> = Vec::deserialize(d)?;
        let mut m = MultiplicityMap::new();
        for (l, c) in v {
            m.add(l, c);
        }
        Ok(m)
    }
}

fn irreducible_parts(l: &IrrepLabel) -> Vec<(IrrepLabel, i64)> {
    use IrrepKind::*;
    let (n, nn) = (l.n, l.big_n);
    let p = l.parts.clone();
    let full = p.len() == n && n > 0;
    let so = |p: Partition| IrrepLabel::raw(SO, p, n, nn);
    let soneg = |p: Partition| IrrepLabel::raw(SoNeg, p, n, nn);
    let sp = |p: Partition| IrrepLabel::raw(SpinPlus, p, n, nn);
    let sm = |p: Partition| IrrepLabel::raw(SpinMinus, p, n, nn);
    if !l.even() {
        return match l.kind {
            SO | O => vec![(so(p), 1)],
            Det => vec![(so(Partition::empty()), 1)],
            _ => vec![(IrrepLabel::raw(DeltaBracket, p, n, nn), 1)],
        };
    }
    match l.kind {
        SO => vec![(so(p), 1)],
        SoNeg if full => vec![(soneg(p), 1)],
        SoNeg => vec![(so(p), 1)],
        O if full => vec![(so(p.clone()), 1), (soneg(p), 1)],
        O => vec![(so(p), 1)],
        Det => vec![(so(Partition::empty()), 1)],
        SpinPlus => vec![(sp(p), 1)],
        SpinMinus => vec![(sm(p), 1)],
        DeltaBracket => vec![(sp(p.clone()), 1), (sm(p), 1)],
        DeltaPrimeBracket => vec![(sp(p.clone()), 1), (sm(p), -1)],
        SumChar if full => vec![(so(p.clone()), 1), (soneg(p), 1)],
        SumChar => vec![(so(p), 2)],
        DiffChar if full => vec![(so(p.clone()), 1), (soneg(p), -1)],
        DiffChar => vec![],
    }
}

// ---------------------------------------------------------------------------
// Weyl characters

pub type LaurentChar = BTreeMap<Vec<i32>, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    B,
    C,
    D,
}

fn positive_roots(t: RootType, n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![];
    let unit = |i: usize, c: i32| {
        let mut v = vec![0; n];
        v[i] = c;
        v
    };
    for i in 0..n {
        for j in i + 1..n {
            let mut a = vec![0; n];
            a[i] = 1;
            a[j] = -1;
            out.push(a.clone());
            a[j] = 1;
            out.push(a);
        }
        match t {
            RootType::B => out.push(unit(i, 1)),
            RootType::C => out.push(unit(i, 2)),
            RootType::D => {}
        }
    }
    out
}

fn rho_doubled(t: RootType, n: usize) -> Vec<i32> {
    (0..n as i32)
        .map(|i| {
            let k = n as i32 - i;
            match t {
                RootType::B => 2 * k - 1,
                RootType::C => 2 * k,
                RootType::D => 2 * k - 2,
            }
        })
        .collect()
}

pub fn char_mul(a: &LaurentChar, b: &LaurentChar) -> LaurentChar {
    let mut out = LaurentChar::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert(0);
            *v += ca * cb;
            if *v == 0 {
                out.remove(&e);
            }
        }
    }
    out
}

pub fn char_axpy(acc: &mut LaurentChar, c: i64, b: &LaurentChar) {
    for (e, x) in b {
        let v = acc.entry(e.clone()).or_insert(0);
        *v += c * x;
        if *v == 0 {
            acc.remove(e);
        }
    }
}

/// Alternating sum over the Weyl group of `exp` (doubled exponents).
fn alternant(t: RootType, n: usize, exp: &[i32]) -> LaurentChar {
    let mut out = LaurentChar::new();
    for perm in (0..n).permutations(n) {
        let psign = perm_sign(&perm);
        for signs in 0u32..(1 << n) {
            let nneg = signs.count_ones() as usize;
            if t == RootType::D && nneg % 2 == 1 {
                continue;
            }
            let e: Vec<i32> =
                (0..n).map(|i| if (signs >> i) & 1 == 1 { -exp[perm[i]] } else { exp[perm[i]] }).collect();
            let s = if t == RootType::D { psign } else { psign * if nneg.is_multiple_of(2) { 1 } else { -1 } };
            let v = out.entry(e.clone()).or_insert(0);
            *v += s;
            if *v == 0 {
                out.remove(&e);
            }
        }
    }
    out
}

pub(crate) fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact division by `y^a - y^{-a}` (greedy on the lex-largest term).
fn divide_by_root(mut p: LaurentChar, a: &[i32]) -> LaurentChar {
    let mut q = LaurentChar::new();
    while let Some((m, c)) = p.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
        let qm: Vec<i32> = m.iter().zip(a).map(|(x, y)| x - y).collect();
        let low: Vec<i32> = qm.iter().zip(a).map(|(x, y)| x - y).collect();
        *q.entry(qm).or_insert(0) += c;
        p.remove(&m);
        let v = p.entry(low.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            p.remove(&low);
        }
    }
    q
}

fn weyl_char_raw(t: RootType, n: usize, hw_doubled: &[i32]) -> Result<LaurentChar, CharError> {
    if n > 4 {
        return Err(CharError::RankBound(n));
    }
    let rho = rho_doubled(t, n);
    let shifted: Vec<i32> = hw_doubled.iter().chain(std::iter::repeat(&0)).take(n).zip(&rho).map(|(a, b)| a + b).collect();
    let mut p = alternant(t, n, &shifted);
    for a in positive_roots(t, n) {
        p = divide_by_root(p, &a);
    }
    Ok(p)
}

fn root_type(l: &IrrepLabel) -> RootType {
    if l.even() {
        RootType::D
    } else {
        RootType::B
    }
}

/// Doubled highest weight of an irreducible label (after `to_irreducible`).
fn highest_weight(l: &IrrepLabel) -> Vec<i32> {
    use IrrepKind::*;
    let n = l.n;
    let mut w: Vec<i32> = (0..n).map(|i| 2 * l.parts.part(i) as i32).collect();
    match l.kind {
        SpinPlus | SpinMinus | DeltaBracket => w.iter_mut().for_each(|x| *x += 1),
        _ => {}
    }
    if matches!(l.kind, SoNeg | SpinMinus) && n > 0 {
        w[n - 1] = -w[n - 1];
    }
    w
}

/// Character of any label as a Laurent polynomial in `y`.
pub fn weyl_character(l: &IrrepLabel) -> Result<LaurentChar, CharError> {
    l.validate()?;
    if l.n > 4 {
        return Err(CharError::RankBound(l.n));
    }
    let mut acc = LaurentChar::new();
    for (m, c) in irreducible_parts(l) {
        char_axpy(&mut acc, c, &weyl_char_raw(root_type(&m), m.n, &highest_weight(&m))?);
    }
    Ok(acc)
}

/// Peel off highest weights; keys of the result are doubled dominant weights.
fn peel(t: RootType, n: usize, mut c: LaurentChar, strict: bool) -> Result<BTreeMap<Vec<i32>, i64>, CharError> {
    let mut out = BTreeMap::new();
    while let Some((m, k)) = c.iter().next_back().map(|(m, k)| (m.clone(), *k)) {
        if strict && k < 0 {
            return Err(CharError::NotACharacter { weight: m, mult: k });
        }
        let ch = weyl_char_raw(t, n, &m)?;
        char_axpy(&mut c, -k, &ch);
        out.insert(m, k);
    }
    Ok(out)
}

fn label_of_weight(n: usize, big_n: usize, m: &[i32]) -> Result<IrrepLabel, CharError> {
    use IrrepKind::*;
    let half = m.iter().all(|x| x.rem_euclid(2) == 1);
    let int = m.iter().all(|x| x.rem_euclid(2) == 0);
    let neg = n > 0 && m[n - 1] < 0;
    let parts: Vec<u32> = m.iter().map(|&x| if half { (x.unsigned_abs() - 1) / 2 } else { x.unsigned_abs() / 2 }).collect();
    let parts = Partition::try_new(parts).ok_or_else(|| CharError::NotACharacter { weight: m.to_vec(), mult: 0 })?;
    let kind = match (big_n == 2 * n, half, int, neg) {
        (_, false, false, _) => return Err(CharError::NotACharacter { weight: m.to_vec(), mult: 0 }),
        (false, true, _, _) => DeltaBracket,
        (false, _, true, _) => SO,
        (true, true, _, false) => SpinPlus,
        (true, true, _, true) => SpinMinus,
        (true, _, true, false) => SO,
        (true, _, true, true) => SoNeg,
    };
    Ok(IrrepLabel::raw(kind, parts, n, big_n))
}

fn decompose_impl(n: usize, big_n: usize, c: &LaurentChar, strict: bool) -> Result<MultiplicityMap, CharError> {
    if n > 4 {
        return Err(CharError::RankBound(n));
    }
    let t = if big_n == 2 * n { RootType::D } else { RootType::B };
    let mut out = MultiplicityMap::new();
    for (m, k) in peel(t, n, c.clone(), strict)? {
        out.add(label_of_weight(n, big_n, &m)?, k);
    }
    Ok(out)
}

/// Expansion of a genuine character into irreducibles.
pub fn decompose_character(n: usize, big_n: usize, c: &LaurentChar) -> Result<MultiplicityMap, CharError> {
    decompose_impl(n, big_n, c, true)
}

/// Same as [`decompose_character`] but allows virtual (signed) characters.
pub fn decompose_virtual(n: usize, big_n: usize, c: &LaurentChar) -> Result<MultiplicityMap, CharError> {
    decompose_impl(n, big_n, c, false)
}

// ---------------------------------------------------------------------------
// dimensions

fn weyl_dimension_signed(l: &IrrepLabel) -> Result<i64, CharError> {
    let t = root_type(l);
    let n = l.n;
    let rho = rho_doubled(t, n);
    let hw = highest_weight(l);
    let (mut num, mut den) = (1i128, 1i128);
    for a in positive_roots(t, n) {
        let dot = |v: &[i32]| v.iter().zip(&a).map(|(x, y)| (*x as i128) * (*y as i128)).sum::<i128>();
        let s: Vec<i32> = hw.iter().zip(&rho).map(|(x, y)| x + y).collect();
        num *= dot(&s);
        den *= dot(&rho);
    }
    Ok((num / den) as i64)
}

/// Dimension of a (genuine) label.
pub fn spin_irrep_dimension(l: &IrrepLabel) -> Result<u64, CharError> {
    l.validate()?;
    let mut d = 0i64;
    for (m, c) in irreducible_parts(l) {
        if c < 0 {
            return Err(CharError::InvalidLabel(format!("{l} is a virtual character")));
        }
        d += c * weyl_dimension_signed(&m)?;
    }
    Ok(d as u64)
}

/// `sum_j C(2k, 2j) (2k-2j-1)!!`
pub fn dim_cpk(k: usize) -> u128 {
    let binom = |n: u128, r: u128| (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1));
    let dfact = |m: i64| -> u128 {
        let mut r = 1u128;
        let mut x = m;
        while x > 1 {
            r *= x as u128;
            x -= 2;
        }
        r
    };
    (0..=k).map(|j| binom(2 * k as u128, 2 * j as u128) * dfact(2 * (k - j) as i64 - 1)).sum()
}

/// Number of k-step walks from the empty diagram to `lam` (add / remove / stay).
pub fn updown_multiplicity(n: usize, big_n: usize, k: usize, lam: &Partition) -> u128 {
    updown_table(n, big_n, k).get(lam).copied().unwrap_or(0)
}

/// All endpoint counts of k-step walks.
pub fn updown_table(n: usize, big_n: usize, k: usize) -> BTreeMap<Partition, u128> {
    let odd = big_n == 2 * n + 1;
    let mut cur: BTreeMap<Partition, u128> = BTreeMap::new();
    cur.insert(Partition::empty(), 1);
    for _ in 0..k {
        let mut next = BTreeMap::new();
        for (p, c) in &cur {
            for q in p.add_box(n).into_iter().chain(p.remove_box()) {
                *next.entry(q).or_insert(0) += c;
            }
            if odd || p.len() < n {
                *next.entry(p.clone()).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur
}

// ---------------------------------------------------------------------------
// closed-form tensor product rules

fn e_label(i: usize, n: usize, big_n: usize) -> IrrepLabel {
    if big_n == 2 * n && i == n {
        IrrepLabel::raw(IrrepKind::SumChar, Partition::column(n), n, big_n)
    } else {
        IrrepLabel::raw(IrrepKind::SO, Partition::column(i.min(big_n - i)), n, big_n)
    }
}

fn spin_eps(eps: i8, p: Partition, n: usize, big_n: usize) -> IrrepLabel {
    let k = if eps > 0 { IrrepKind::SpinPlus } else { IrrepKind::SpinMinus };
    IrrepLabel::raw(k, p, n, big_n)
}

fn eps_of(kind: IrrepKind) -> Option<i8> {
    match kind {
        IrrepKind::SpinPlus => Some(1),
        IrrepKind::SpinMinus => Some(-1),
        _ => None,
    }
}

/// `(2^s, 1^t)`
fn two_one(s: usize, t: usize) -> Partition {
    Partition::new([vec![2; s], vec![1; t]].concat())
}

/// Closed-form decomposition of `label (x) factor`.
pub fn tensor_rule(label: &IrrepLabel, factor: &IrrepLabel) -> Result<MultiplicityMap, CharError> {
    label.validate()?;
    factor.validate()?;
    if (label.n, label.big_n) != (factor.n, factor.big_n) {
        return Err(CharError::RankMismatch(format!("{label} vs {factor}")));
    }
    if let Some(m) = tensor_rule_ordered(label, factor)? {
        return Ok(m);
    }
    if let Some(m) = tensor_rule_ordered(factor, label)? {
        return Ok(m);
    }
    Err(CharError::Unsupported(format!("{label} (x) {factor}")))
}

fn is_vector(f: &IrrepLabel) -> bool {
    matches!(f.kind, IrrepKind::SO | IrrepKind::O) && f.parts == Partition::new(vec![1]) && (f.n >= 2 || !f.even())
}

fn tensor_rule_ordered(a: &IrrepLabel, b: &IrrepLabel) -> Result<Option<MultiplicityMap>, CharError> {
    use IrrepKind::*;
    let (n, nn) = (a.n, a.big_n);
    let mut out = MultiplicityMap::new();
    let delta = &a.parts;
    if a.even() {
        // [Delta, delta] or [Delta', delta] times mu^(-) with l(mu) = n
        if matches!(a.kind, DeltaBracket | DeltaPrimeBracket) && b.kind == DiffChar && b.parts.len() == n && n > 0 {
            let mu = &b.parts;
            let mu1 = Partition::new(mu.parts().iter().map(|x| x - 1).collect());
            let prime = a.kind == DeltaPrimeBracket;
            for nu in delta.remove_vertical_strips() {
                let strip = (delta.size() - nu.size()) as i64;
                let bound = nu.size() + mu1.size();
                for lam in Partition::all_up_to(bound, n) {
                    if !(bound - lam.size()).is_multiple_of(2) {
                        continue;
                    }
                    let c = sp_tensor_coefficient(n, &nu, &mu1, &lam)? as i64;
                    if c == 0 {
                        continue;
                    }
                    for kappa in lam.add_vertical_strips(n) {
                        if prime {
                            let s = sgn(mu.size() as i64 + nu.size() as i64 + kappa.size() as i64);
                            out.add(IrrepLabel::raw(DeltaBracket, kappa, n, nn), s * c);
                        } else {
                            out.add(IrrepLabel::raw(DeltaPrimeBracket, kappa, n, nn), sgn(strip) * c);
                        }
                    }
                }
            }
            return Ok(Some(out));
        }
        // (Delta^eps)^2 and Delta^+ Delta^-
        if let (Some(e1), Some(e2)) = (eps_of(a.kind), eps_of(b.kind)) {
            if delta.is_empty() && b.parts.is_empty() {
                if e1 == e2 {
                    let top = if e1 > 0 { SO } else { SoNeg };
                    out.add(IrrepLabel::raw(top, Partition::column(n), n, nn), 1);
                    // the sum starts at i = 1: the i = 0 term is the e_n^eps above
                    for i in 1..=n / 2 {
                        out.add(e_label(n - 2 * i, n, nn), 1);
                    }
                } else {
                    for i in 0..=(n.saturating_sub(1)) / 2 {
                        if 2 * i + 1 > n {
                            break;
                        }
                        out.add(e_label(n - 1 - 2 * i, n, nn), 1);
                    }
                }
                return Ok(Some(out));
            }
        }
        // Spin^eps delta times the vector representation
        if let Some(e) = eps_of(a.kind) {
            if is_vector(b) {
                if delta.len() < n {
                    out.add(spin_eps(-e, delta.clone(), n, nn), 1);
                }
                for mu in delta.add_box(n).into_iter().chain(delta.remove_box()) {
                    out.add(spin_eps(e, mu, n, nn), 1);
                }
                return Ok(Some(out));
            }
        }
        // [Delta, delta] times the vector (sum of the two previous cases)
        if a.kind == DeltaBracket && is_vector(b) {
            if delta.len() < n {
                out.add(a.clone(), 1);
            }
            for mu in delta.add_box(n).into_iter().chain(delta.remove_box()) {
                out.add(IrrepLabel::raw(DeltaBracket, mu, n, nn), 1);
            }
            return Ok(Some(out));
        }
        // Delta^eps times mu_SO
        if let Some(e) = eps_of(a.kind) {
            if delta.is_empty() {
                let mu = &b.parts;
                let plain = matches!(b.kind, SO | O) && mu.len() < n;
                let signed = matches!(b.kind, SO | SoNeg) && mu.len() == n && n > 0;
                if plain {
                    for nu in mu.remove_vertical_strips() {
                        let s = (mu.size() - nu.size()) % 2;
                        out.add(spin_eps(if s == 0 { e } else { -e }, nu, n, nn), 1);
                    }
                    return Ok(Some(out));
                }
                if signed {
                    let e2: i8 = if b.kind == SO { 1 } else { -1 };
                    for nu in mu.remove_vertical_strips() {
                        let s = sgn((mu.size() - nu.size()) as i64);
                        if s == (e * e2) as i64 {
                            out.add(spin_eps(e2, nu, n, nn), 1);
                        }
                    }
                    return Ok(Some(out));
                }
            }
        }
        // e_n^{+-} products
        let col = Partition::column(n);
        if n > 0 && a.parts == col && b.parts == col && matches!(a.kind, SO | SoNeg) && matches!(b.kind, SO | SoNeg) {
            match (a.kind, b.kind) {
                (SO, SO) => {
                    for s in (0..=n).filter(|s| s % 2 == n % 2) {
                        for t in (0..=n - s).step_by(2) {
                            out.add(IrrepLabel::raw(SO, two_one(s, t), n, nn), 1);
                        }
                    }
                }
                (SO, SoNeg) | (SoNeg, SO) => {
                    for s in (0..n).filter(|s| s % 2 == (n - 1) % 2) {
                        for t in (0..=n - 1 - s).step_by(2) {
                            out.add(IrrepLabel::raw(SO, two_one(s, t), n, nn), 1);
                        }
                    }
                }
                _ => {
                    out.add(IrrepLabel::raw(SoNeg, two_one(n, 0), n, nn), 1);
                    for s in (0..=n.saturating_sub(2)).filter(|s| s % 2 == n % 2) {
                        if s + 2 > n {
                            break;
                        }
                        out.add(IrrepLabel::raw(SoNeg, two_one(s, n - s), n, nn), 1);
                    }
                    if n >= 2 {
                        for s in (0..=n - 2).filter(|s| s % 2 == n % 2) {
                            for t in (0..=n - 2 - s).step_by(2) {
                                out.add(IrrepLabel::raw(SO, two_one(s, t), n, nn), 1);
                            }
                        }
                    }
                }
            }
            return Ok(Some(out));
        }
        // Delta' Delta' = e_n - 2 e_{n-1} + ... + (-1)^n 2 e_0 and Delta Delta
        if matches!(a.kind, DeltaPrimeBracket | DeltaBracket) && a.kind == b.kind && delta.is_empty() && b.parts.is_empty() {
            let prime = a.kind == DeltaPrimeBracket;
            out.add(e_label(n, n, nn), 1);
            for i in 0..n {
                let c = if prime { 2 * sgn((n - i) as i64) } else { 2 };
                out.add(e_label(i, n, nn), c);
            }
            return Ok(Some(out));
        }
        return Ok(None);
    }

    // N = 2n + 1
    if a.kind != DeltaBracket {
        return Ok(None);
    }
    let flip = |s: Option<i8>, k: u32| s.map(|s| if k.is_multiple_of(2) { s } else { -s });
    if b.kind == DeltaBracket && delta.is_empty() && b.parts.is_empty() {
        for i in 0..=n {
            out.add(e_label(i, n, nn), 1);
        }
        return Ok(Some(out));
    }
    if is_vector(b) {
        let sign = flip(a.pin_sign, 1);
        let mk = |p: Partition| IrrepLabel { kind: DeltaBracket, parts: p, n, big_n: nn, pin_sign: sign };
        out.add(mk(delta.clone()), 1);
        for mu in delta.add_box(n).into_iter().chain(delta.remove_box()) {
            out.add(mk(mu), 1);
        }
        return Ok(Some(out));
    }
    if delta.is_empty() && matches!(b.kind, SO | O) {
        let lam = &b.parts;
        let sign = flip(a.pin_sign, lam.size());
        for mu in lam.remove_vertical_strips() {
            out.add(IrrepLabel { kind: DeltaBracket, parts: mu, n, big_n: nn, pin_sign: sign }, 1);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

fn sgn(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Oracle: decompose the product of Weyl characters (virtual allowed).
pub fn tensor_oracle(a: &IrrepLabel, b: &IrrepLabel) -> Result<MultiplicityMap, CharError> {
    let prod = char_mul(&weyl_character(a)?, &weyl_character(b)?);
    decompose_virtual(a.n, a.big_n, &prod)
}

/// Multiplicities of `[Delta, lam]` in `Delta (x) V^{(x) k}`, by iterating
/// the closed-form rule for tensoring with the vector representation.
pub fn iterated_vector_multiplicities(n: usize, big_n: usize, k: usize) -> Result<BTreeMap<Partition, i64>, CharError> {
    let v = IrrepLabel::new(IrrepKind::SO, Partition::new(vec![1]), n, big_n)?;
    let mut cur = MultiplicityMap::single(IrrepLabel::new(IrrepKind::DeltaBracket, Partition::empty(), n, big_n)?);
    for _ in 0..k {
        let mut next = MultiplicityMap::new();
        for (l, c) in cur.iter() {
            next.add_map(&tensor_rule(l, &v)?, *c);
        }
        cur = next;
    }
    Ok(cur.iter().map(|(l, c)| (l.parts.clone(), *c)).collect())
}

/// Every (label, factor) pair covered by [`tensor_rule`] with partitions of
/// size at most `max`, for the given rank.
pub fn supported_rule_cases(n: usize, big_n: usize, max: u32) -> Vec<(IrrepLabel, IrrepLabel)> {
    use IrrepKind::*;
    let l = |k, p: Partition| IrrepLabel::raw(k, p, n, big_n);
    let parts = Partition::all_up_to(max, n);
    let full: Vec<Partition> = parts.iter().filter(|p| p.len() == n && n > 0).cloned().collect();
    let short: Vec<Partition> = parts.iter().filter(|p| p.len() < n).cloned().collect();
    let vec1 = l(SO, Partition::new(vec![1]));
    let e = Partition::empty();
    let mut out = vec![];
    if big_n == 2 * n + 1 {
        out.push((l(DeltaBracket, e.clone()), l(DeltaBracket, e.clone())));
        for d in &parts {
            out.push((l(DeltaBracket, d.clone()), vec1.clone()));
            out.push((l(DeltaBracket, e.clone()), l(SO, d.clone())));
        }
        return out;
    }
    for d in &parts {
        for m in &full {
            out.push((l(DeltaBracket, d.clone()), l(DiffChar, m.clone())));
            out.push((l(DeltaPrimeBracket, d.clone()), l(DiffChar, m.clone())));
        }
    }
    for (a, b) in [(SpinPlus, SpinPlus), (SpinMinus, SpinMinus), (SpinPlus, SpinMinus)] {
        out.push((l(a, e.clone()), l(b, e.clone())));
    }
    if n >= 2 {
        for d in &parts {
            out.push((l(SpinPlus, d.clone()), vec1.clone()));
            out.push((l(SpinMinus, d.clone()), vec1.clone()));
            out.push((l(DeltaBracket, d.clone()), vec1.clone()));
        }
    }
    for eps in [SpinPlus, SpinMinus] {
        for m in &short {
            out.push((l(eps, e.clone()), l(SO, m.clone())));
        }
        for m in &full {
            out.push((l(eps, e.clone()), l(SO, m.clone())));
            out.push((l(eps, e.clone()), l(SoNeg, m.clone())));
        }
    }
    if n > 0 {
        let c = Partition::column(n);
        for (a, b) in [(SO, SO), (SO, SoNeg), (SoNeg, SoNeg)] {
            out.push((l(a, c.clone()), l(b, c.clone())));
        }
    }
    out.push((l(DeltaPrimeBracket, e.clone()), l(DeltaPrimeBracket, e.clone())));
    out.push((l(DeltaBracket, e.clone()), l(DeltaBracket, e)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1, 1]), &p(&[1])), 0);
        // s_(2,1)^2 contains s_(3,2,1) twice
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
    }

    #[test]
    fn sp_examples() {
        let one = p(&[1]);
        assert_eq!(sp_tensor_coefficient(2, &one, &one, &p(&[1, 1])).unwrap(), 1);
        assert_eq!(sp_tensor_coefficient(2, &one, &one, &p(&[])).unwrap(), 1);
        assert_eq!(sp_tensor_coefficient(2, &one, &one, &p(&[2])).unwrap(), 1);
    }

    #[test]
    fn weyl_character_examples() {
        let d = IrrepLabel::new(IrrepKind::DeltaBracket, p(&[]), 2, 5).unwrap();
        let c = weyl_character(&d).unwrap();
        let expect: LaurentChar = [(vec![1, 1], 1), (vec![1, -1], 1), (vec![-1, 1], 1), (vec![-1, -1], 1)].into_iter().collect();
        assert_eq!(c, expect);

        let dp = IrrepLabel::new(IrrepKind::DeltaPrimeBracket, p(&[]), 1, 2).unwrap();
        let expect: LaurentChar = [(vec![1], 1), (vec![-1], -1)].into_iter().collect();
        assert_eq!(weyl_character(&dp).unwrap(), expect);

        let v = IrrepLabel::new(IrrepKind::SO, p(&[1]), 1, 3).unwrap();
        let expect: LaurentChar = [(vec![2], 1), (vec![0], 1), (vec![-2], 1)].into_iter().collect();
        assert_eq!(weyl_character(&v).unwrap(), expect);
    }

    #[test]
    fn decompose_examples() {
        let d = IrrepLabel::new(IrrepKind::DeltaBracket, p(&[]), 1, 3).unwrap();
        let sq = char_mul(&weyl_character(&d).unwrap(), &weyl_character(&d).unwrap());
        let dec = decompose_character(1, 3, &sq).unwrap();
        let mut expect = MultiplicityMap::new();
        expect.add(IrrepLabel::new(IrrepKind::SO, p(&[]), 1, 3).unwrap(), 1);
        expect.add(IrrepLabel::new(IrrepKind::SO, p(&[1]), 1, 3).unwrap(), 1);
        assert_eq!(dec, expect);

        let dp = IrrepLabel::new(IrrepKind::SpinPlus, p(&[]), 2, 4).unwrap();
        let dm = IrrepLabel::new(IrrepKind::SpinMinus, p(&[]), 2, 4).unwrap();
        let prod = char_mul(&weyl_character(&dp).unwrap(), &weyl_character(&dm).unwrap());
        let dec = decompose_character(2, 4, &prod).unwrap();
        assert_eq!(dec, MultiplicityMap::single(IrrepLabel::new(IrrepKind::SO, p(&[1]), 2, 4).unwrap()));

        let triv = IrrepLabel::new(IrrepKind::SO, p(&[]), 3, 7).unwrap();
        assert_eq!(decompose_character(3, 7, &weyl_character(&triv).unwrap()).unwrap(), MultiplicityMap::single(triv));
    }

    #[test]
    fn strict_decompose_rejects_virtual() {
        let dp = IrrepLabel::new(IrrepKind::DeltaPrimeBracket, p(&[]), 2, 4).unwrap();
        assert!(decompose_character(2, 4, &weyl_character(&dp).unwrap()).is_err());
    }

    #[test]
    fn dims() {
        let d = |k, v: &[u32], n, nn| spin_irrep_dimension(&IrrepLabel::new(k, p(v), n, nn).unwrap()).unwrap();
        assert_eq!(d(IrrepKind::DeltaBracket, &[], 2, 5), 4);
        assert_eq!(d(IrrepKind::DeltaBracket, &[1], 2, 5), 16);
        assert_eq!(d(IrrepKind::SpinPlus, &[], 2, 4), 2);
        assert_eq!(d(IrrepKind::SO, &[1], 3, 7), 7);
        assert_eq!(d(IrrepKind::SO, &[1, 1], 2, 4), 3);
        assert_eq!(d(IrrepKind::SumChar, &[1, 1], 2, 4), 6);
    }

    #[test]
    fn cpk_dims() {
        assert_eq!(dim_cpk(0), 1);
        assert_eq!(dim_cpk(1), 2);
        assert_eq!(dim_cpk(2), 10);
        assert_eq!(dim_cpk(3), 76);
    }

    #[test]
    fn updown_examples() {
        assert_eq!(updown_multiplicity(2, 5, 2, &p(&[])), 2);
        assert_eq!(updown_multiplicity(2, 5, 1, &p(&[1])), 1);
        assert_eq!(updown_multiplicity(2, 5, 2, &p(&[2])), 1);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[2, 1]).num_standard_tableaux(), 2);
        assert_eq!(p(&[3, 2, 1]).num_standard_tableaux(), 16);
        assert_eq!(p(&[]).num_standard_tableaux(), 1);
    }

    #[test]
    fn tensor_rule_examples() {
        let l = |k, v: &[u32], n, nn| IrrepLabel::new(k, p(v), n, nn).unwrap();
        let got = tensor_rule(&l(IrrepKind::DeltaBracket, &[1], 2, 5), &l(IrrepKind::SO, &[1], 2, 5)).unwrap();
        let mut expect = MultiplicityMap::new();
        for v in [&[1][..], &[2], &[1, 1], &[]] {
            expect.add(l(IrrepKind::DeltaBracket, v, 2, 5), 1);
        }
        assert_eq!(got, expect);

        let got = tensor_rule(&l(IrrepKind::SpinPlus, &[1, 1], 2, 4), &l(IrrepKind::SO, &[1], 2, 4)).unwrap();
        let mut expect = MultiplicityMap::new();
        expect.add(l(IrrepKind::SpinPlus, &[2, 1], 2, 4), 1);
        expect.add(l(IrrepKind::SpinPlus, &[1], 2, 4), 1);
        assert_eq!(got, expect);

        for k in 0..=3usize {
            let got = tensor_rule(&l(IrrepKind::DeltaBracket, &[], 3, 7), &l(IrrepKind::SO, &vec![1; k], 3, 7)).unwrap();
            let mut expect = MultiplicityMap::new();
            for i in 0..=k {
                expect.add(l(IrrepKind::DeltaBracket, &vec![1; i], 3, 7), 1);
            }
            assert_eq!(got, expect);
        }
    }
}
