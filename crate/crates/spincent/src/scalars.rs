//! Exact scalars: rationals, the quadratic field Q(sqrt 2), and polynomials
//! in the generic parameter X with coefficients in Q(sqrt 2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Reduced fraction with positive denominator (guaranteed by `BigRational`).
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// `a + b*sqrt(2)` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraicScalar {
    pub a: Rational,
    pub b: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl AlgebraicScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        AlgebraicScalar { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicScalar { a: Rational::from_integer(n.into()), b: Rational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        AlgebraicScalar { a: Rational::from_integer(n), b: Rational::zero() }
    }

    pub fn from_rational(a: Rational) -> Self {
        AlgebraicScalar { a, b: Rational::zero() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn sqrt2() -> Self {
        AlgebraicScalar { a: Rational::zero(), b: Rational::one() }
    }

    /// `2^(e/2)` for any integer `e`.
    pub fn pow_sqrt2(e: i64) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let p = if half >= 0 {
            Rational::from_integer(BigInt::one() << (half as usize))
        } else {
            Rational::new(BigInt::one(), BigInt::one() << ((-half) as usize))
        };
        if odd {
            AlgebraicScalar { a: Rational::zero(), b: p }
        } else {
            AlgebraicScalar { a: p, b: Rational::zero() }
        }
    }

    /// `(-1)^e`
    pub fn sign(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        AlgebraicScalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(self.a.recip()));
        }
        let nrm = self.norm();
        Ok(AlgebraicScalar { a: &self.a / &nrm, b: -(&self.b / &nrm) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = Rational::from_integer(k.into());
        AlgebraicScalar { a: &self.a * &k, b: &self.b * &k }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl Zero for AlgebraicScalar {
    fn zero() -> Self {
        AlgebraicScalar { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for AlgebraicScalar {
    fn one() -> Self {
        AlgebraicScalar { a: Rational::one(), b: Rational::zero() }
    }
}

impl From<i64> for AlgebraicScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl AddAssign<&AlgebraicScalar> for AlgebraicScalar {
    fn add_assign(&mut self, rhs: &AlgebraicScalar) {
        if !rhs.a.is_zero() {
            self.a += &rhs.a;
        }
        if !rhs.b.is_zero() {
            self.b += &rhs.b;
        }
    }
}

impl AddAssign for AlgebraicScalar {
    fn add_assign(&mut self, rhs: AlgebraicScalar) {
        *self += &rhs;
    }
}

impl<'a> Sub<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl SubAssign<&AlgebraicScalar> for AlgebraicScalar {
    fn sub_assign(&mut self, rhs: &AlgebraicScalar) {
        if !rhs.a.is_zero() {
            self.a -= &rhs.a;
        }
        if !rhs.b.is_zero() {
            self.b -= &rhs.b;
        }
    }
}

impl<'a> Mul<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        // cheap paths: most entries are rational or pure multiples of sqrt2
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => AlgebraicScalar::from_rational(&self.a * &rhs.a),
            (true, false) => AlgebraicScalar { a: &self.a * &rhs.a, b: &self.a * &rhs.b },
            (false, true) => AlgebraicScalar { a: &self.a * &rhs.a, b: &self.b * &rhs.a },
            (false, false) => {
                let two = Rational::from_integer(2.into());
                AlgebraicScalar {
                    a: &self.a * &rhs.a + two * &self.b * &rhs.b,
                    b: &self.a * &rhs.b + &self.b * &rhs.a,
                }
            }
        }
    }
}

impl Mul for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
        &self * &rhs
    }
}

impl MulAssign<&AlgebraicScalar> for AlgebraicScalar {
    fn mul_assign(&mut self, rhs: &AlgebraicScalar) {
        *self = &*self * rhs;
    }
}

impl Div for AlgebraicScalar {
    type Output = AlgebraicScalar;
    /// Panics on division by zero; use [`AlgebraicScalar::checked_div`] otherwise.
    fn div(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.a)),
            (true, false) => write!(f, "{}*sqrt2", fmt_rat(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*sqrt2", fmt_rat(&self.a), fmt_rat(&-self.b.clone()))
                } else {
                    write!(f, "{} + {}*sqrt2", fmt_rat(&self.a), fmt_rat(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn parse_term(t: &str) -> Option<(bool, Rational)> {
    let t = t.trim();
    if let Some(c) = t.strip_suffix("sqrt2") {
        let c = c.trim().trim_end_matches('*').trim();
        let c = match c {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            _ => parse_rat(c)?,
        };
        Some((true, c))
    } else {
        Some((false, parse_rat(t)?))
    }
}

impl FromStr for AlgebraicScalar {
    type Err = ScalarError;

    /// Accepts the forms produced by `Display`: `a`, `c*sqrt2`, `a + c*sqrt2`, `a - c*sqrt2`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let s = s.trim();
        // split on a binary +/- (one that is not at the start and not after '/')
        let bytes = s.as_bytes();
        let mut split = None;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] == b' ' {
                split = Some(i);
            }
        }
        let mut out = AlgebraicScalar::zero();
        let parts: Vec<(String, bool)> = match split {
            Some(i) => vec![(s[..i].to_string(), false), (s[i + 1..].to_string(), bytes[i] == b'-')],
            None => vec![(s.to_string(), false)],
        };
        for (p, negate) in parts {
            let (is_sqrt, mut c) = parse_term(&p).ok_or_else(err)?;
            if negate {
                c = -c;
            }
            if is_sqrt {
                out.b += c;
            } else {
                out.a += c;
            }
        }
        Ok(out)
    }
}

impl Serialize for AlgebraicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgebraicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Polynomial in X over Q(sqrt 2); `coeffs[i]` multiplies `X^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PolyX {
    coeffs: Vec<AlgebraicScalar>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<AlgebraicScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: vec![] }
    }

    pub fn constant(c: AlgebraicScalar) -> Self {
        PolyX::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        PolyX::constant(AlgebraicScalar::from_int(c))
    }

    pub fn x() -> Self {
        PolyX::new(vec![AlgebraicScalar::zero(), AlgebraicScalar::one()])
    }

    /// `X + c`
    pub fn x_plus(c: i64) -> Self {
        PolyX::new(vec![AlgebraicScalar::from_int(c), AlgebraicScalar::one()])
    }

    pub fn coeffs(&self) -> &[AlgebraicScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &AlgebraicScalar) -> Self {
        PolyX::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &AlgebraicScalar) -> AlgebraicScalar {
        let mut acc = AlgebraicScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Specialization X -> N.
    pub fn eval_int(&self, n: i64) -> AlgebraicScalar {
        self.eval(&AlgebraicScalar::from_int(n))
    }

    /// `p (p-1) ... (p-i+1)`
    pub fn lower_factorial(&self, i: usize) -> Self {
        let mut acc = PolyX::from_int(1);
        for j in 0..i {
            acc = &acc * &(self - &PolyX::from_int(j as i64));
        }
        acc
    }
}

/// Integer lower factorial `x (x-1) ... (x-i+1)`.
pub fn lower_factorial(x: i64, i: usize) -> BigInt {
    (0..i as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(x - j))
}

impl<'a> Add<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = AlgebraicScalar::zero();
        PolyX::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = AlgebraicScalar::zero();
        PolyX::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut out = vec![AlgebraicScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyX::new(out)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl AddAssign<&PolyX> for PolyX {
    fn add_assign(&mut self, rhs: &PolyX) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let (neg, mag) = if c.is_rational() && c.a.is_negative() { (true, -c) } else { (false, c.clone()) };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else if mag.is_rational() {
                format!("{mag}{mono}")
            } else {
                format!("({mag}){mono}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> AlgebraicScalar {
        x.parse().unwrap()
    }

    #[test]
    fn conjugate_product() {
        let x = s("1 + 1*sqrt2");
        let y = s("1 - 1*sqrt2");
        assert_eq!(&x * &y, AlgebraicScalar::from_int(-1));
    }

    #[test]
    fn rationalize_inverse_sqrt2() {
        let r = AlgebraicScalar::sqrt2().inv().unwrap();
        assert_eq!(r, s("1/2*sqrt2"));
        assert_eq!(r.to_string(), "1/2*sqrt2");
    }

    #[test]
    fn sqrt2_squared() {
        let r = AlgebraicScalar::sqrt2();
        assert_eq!(&r * &r, AlgebraicScalar::from_int(2));
    }

    #[test]
    fn div_by_zero_is_error() {
        assert_eq!(AlgebraicScalar::one().checked_div(&AlgebraicScalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn pow_sqrt2_matches_repeated_product() {
        for e in -6..=6i64 {
            let mut expect = AlgebraicScalar::one();
            let r = AlgebraicScalar::sqrt2();
            let step = if e >= 0 { r.clone() } else { r.inv().unwrap() };
            for _ in 0..e.abs() {
                expect = &expect * &step;
            }
            assert_eq!(AlgebraicScalar::pow_sqrt2(e), expect, "e={e}");
        }
    }

    #[test]
    fn text_round_trip() {
        for t in ["0", "3", "-3/4", "1/2*sqrt2", "-5*sqrt2", "1/3 + 2*sqrt2", "-1 - 7/2*sqrt2"] {
            assert_eq!(s(t).to_string(), t);
        }
        let json = serde_json::to_string(&s("1/3 - 2*sqrt2")).unwrap();
        let back: AlgebraicScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s("1/3 - 2*sqrt2"));
    }

    #[test]
    fn lower_factorials() {
        assert_eq!(lower_factorial(5, 0), BigInt::from(1));
        assert_eq!(lower_factorial(4, 2), BigInt::from(12));
        assert_eq!(PolyX::x_plus(-1).lower_factorial(1), PolyX::x_plus(-1));
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(PolyX::x_plus(-1).eval_int(5), AlgebraicScalar::from_int(4));
        assert_eq!(PolyX::x_plus(-1).eval_int(2), AlgebraicScalar::from_int(1));
        assert_eq!(PolyX::zero().eval_int(17), AlgebraicScalar::zero());
    }

    #[test]
    fn poly_display() {
        assert_eq!(PolyX::x_plus(-1).to_string(), "X - 1");
        let p = &PolyX::x() * &PolyX::x_plus(-1);
        assert_eq!(p.to_string(), "X^2 - X");
    }
}
