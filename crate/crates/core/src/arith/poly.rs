//! Sparse integer polynomials and the nonnegative subtype used as elements of
//! ℕ₀[x].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::parse_expr;
use super::rational::{abs_uint, Rational};
use crate::error::{Error, Result};

/// Polynomial in ℤ[x] stored as degree → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        IntPoly { coeffs }
    }

    /// From coefficients listed low degree first.
    pub fn from_dense(c: &[BigInt]) -> Self {
        Self::from_terms(c.iter().enumerate().map(|(k, a)| (k as u32, a.clone())))
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_terms(c.iter().enumerate().map(|(k, &a)| (k as u32, BigInt::from(a))))
    }

    /// Sums the given terms; repeated degrees accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (k, a) in terms {
            *coeffs.entry(k).or_default() += a;
        }
        coeffs.retain(|_, a| !a.is_zero());
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|a| a.is_one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, k: u32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.values().next_back().cloned().unwrap_or_default()
    }

    /// Nonzero terms, ascending by degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    pub fn support(&self) -> Vec<u32> {
        self.coeffs.keys().copied().collect()
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let n = self.degree().map_or(0, |d| d as usize + 1);
        (0..n).map(|k| self.coeff(k as u32)).collect()
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigUint {
        self.coeffs
            .values()
            .fold(BigUint::zero(), |g, a| g.gcd(&abs_uint(a)))
    }

    /// `self / content`, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = BigInt::from(self.content());
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a / &c)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|a| !a.is_negative())
    }

    pub fn max_abs_coeff(&self) -> BigUint {
        self.coeffs
            .values()
            .map(abs_uint)
            .max()
            .unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u32) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(d, a)| (d + k, a.clone())).collect(),
        }
    }

    /// Divides by `x^k`; the caller guarantees `k <= low_degree`.
    pub fn unshift(&self, k: u32) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(d, a)| (d - k, a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Exact quotient in ℤ[x], or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let dl = d.lc();
        let mut r = self.clone();
        let mut q = BTreeMap::new();
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (t, rem) = r.lc().div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            let k = rd - dd;
            for (j, b) in d.terms() {
                let e = r.coeffs.entry(j + k).or_default();
                *e -= &t * b;
                if e.is_zero() {
                    r.coeffs.remove(&(j + k));
                }
            }
            q.insert(k, t);
        }
        Some(IntPoly { coeffs: q })
    }

    pub fn divides(&self, f: &IntPoly) -> bool {
        f.div_exact(self).is_some()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut last = self.degree().unwrap_or(0);
        for (k, a) in self.coeffs.iter().rev() {
            for _ in *k..last {
                acc *= x;
            }
            acc += Rational::from_integer(a.clone());
            last = *k;
        }
        for _ in 0..last {
            acc *= x;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval(&Rational::from_integer(x.clone())).to_integer()
    }

    pub fn derivative(&self) -> IntPoly {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(k, a)| (k - 1, a * BigInt::from(*k))),
        )
    }

    /// Parses text such as `"3x^2 + 2x + 1"`; coefficients must be integers.
    pub fn parse(s: &str) -> Result<IntPoly> {
        Self::parse_at(s, 0)
    }

    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<IntPoly> {
        parse_expr(s, "x", offset)?
            .to_int()
            .ok_or_else(|| Error::parse(offset, "polynomial coefficients must be integers"))
    }
}

/// Canonical order: by degree, then coefficient vectors compared from the
/// constant term upward.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .map(|d| d as i64)
            .unwrap_or(-1)
            .cmp(&other.degree().map(|d| d as i64).unwrap_or(-1))
            .then_with(|| self.to_dense().cmp(&other.to_dense()))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_terms(
            self.terms()
                .chain(rhs.terms())
                .map(|(k, a)| (k, a.clone())),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_terms(
            self.terms()
                .map(|(k, a)| (k, a.clone()))
                .chain(rhs.terms().map(|(k, a)| (k, -a))),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                *out.entry(i + j).or_default() += a * b;
            }
        }
        out.retain(|_, a| !a.is_zero());
        IntPoly { coeffs: out }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, -a)).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, a)) in self.coeffs.iter().rev().enumerate() {
            let mag = a.abs();
            if i == 0 {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { "-" } else { "+" })?;
            }
            if *k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffsJson {
    coeffs: BTreeMap<String, String>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffsJson {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (k.to_string(), a.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CoeffsJson::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, a) in raw.coeffs {
            let k: u32 = k.parse().map_err(D::Error::custom)?;
            let a: BigInt = a.parse().map_err(D::Error::custom)?;
            terms.push((k, a));
        }
        Ok(IntPoly::from_terms(terms))
    }
}

/// A polynomial with nonnegative integer coefficients: an element of ℕ₀[x].
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NatPoly(IntPoly);

impl NatPoly {
    pub fn new(p: IntPoly) -> Result<NatPoly> {
        if p.is_nonnegative() {
            Ok(NatPoly(p))
        } else {
            Err(Error::invalid(format!("{p} has a negative coefficient")))
        }
    }

    pub fn from_u64(c: &[u64]) -> NatPoly {
        NatPoly(IntPoly::from_terms(
            c.iter().enumerate().map(|(k, &a)| (k as u32, BigInt::from(a))),
        ))
    }

    pub fn parse(s: &str) -> Result<NatPoly> {
        NatPoly::new(IntPoly::parse(s)?)
    }

    pub fn as_int(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_int(self) -> IntPoly {
        self.0
    }

    pub fn add(&self, other: &NatPoly) -> NatPoly {
        NatPoly(&self.0 + &other.0)
    }

    pub fn mul(&self, other: &NatPoly) -> NatPoly {
        NatPoly(&self.0 * &other.0)
    }
}

impl std::ops::Deref for NatPoly {
    type Target = IntPoly;
    fn deref(&self) -> &IntPoly {
        &self.0
    }
}

impl fmt::Display for NatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for NatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        NatPoly::new(IntPoly::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn text_round_trip() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.to_string(), "3x^2 + 2x + 1");
        assert_eq!(IntPoly::parse("3x^2 + 2x + 1").unwrap(), f);
        assert_eq!(p(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        for s in ["x^4 + 3x^3 + x^2 + 2x + 4", "-2x^5 + 7", "x", "12"] {
            assert_eq!(IntPoly::parse(s).unwrap().to_string(), s);
        }
        assert!(IntPoly::parse("x/2").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = p(&[1, 2, 3]);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"coeffs":{"0":"1","1":"2","2":"3"}}"#);
        let g: IntPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<NatPoly>(r#"{"coeffs":{"0":"-1"}}"#).is_err());
    }

    #[test]
    fn exact_division() {
        let f = &p(&[1, 1]) * &p(&[2, 1]);
        assert_eq!(f, p(&[2, 3, 1]));
        assert_eq!(f.div_exact(&p(&[1, 1])), Some(p(&[2, 1])));
        assert_eq!(f.div_exact(&p(&[3, 1])), None);
        assert_eq!(p(&[2, 2]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[4, 6]).content(), BigUint::from(2u32));
        assert_eq!(p(&[4, 6]).primitive_part(), p(&[2, 3]));
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![p(&[2, 1]), p(&[1, -1, 1]), p(&[1, 1])];
        v.sort();
        assert_eq!(v, vec![p(&[1, 1]), p(&[2, 1]), p(&[1, -1, 1])]);
    }

    #[test]
    fn evaluation() {
        let f = p(&[-5, 0, 1]);
        assert_eq!(f.eval_int(&BigInt::from(3)), BigInt::from(4));
        assert_eq!(p(&[0, 0, 0, 1]).eval_int(&BigInt::from(2)), BigInt::from(8));
        assert_eq!(f.derivative(), p(&[0, 2]));
    }
}
