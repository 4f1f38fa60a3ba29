//! Real algebraic numbers given by a minimal polynomial and an isolating
//! interval. Zero tests are symbolic (divisibility by the minimal polynomial);
//! interval refinement only decides the sign of values known to be nonzero.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::factor::is_irreducible_over_q;
use super::poly::IntPoly;
use super::qpoly::QPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    min_poly: IntPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    /// Validates irreducibility and that `(lo, hi)` contains exactly one root.
    pub fn new(poly: IntPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if !is_irreducible_over_q(&poly) {
            return Err(Error::invalid(format!("{poly} is not irreducible over Q")));
        }
        let mut m = poly.primitive_part();
        if m.lc().is_negative() {
            m = -&m;
        }
        if lo >= hi {
            return Err(Error::invalid("isolating interval must satisfy lo < hi"));
        }
        let roots = QPoly::from_int(&m).count_roots_open(&lo, &hi);
        if roots != 1 {
            return Err(Error::invalid(format!(
                "interval ({lo}, {hi}) contains {roots} roots of {m}, expected exactly one"
            )));
        }
        Ok(AlgebraicNumber { min_poly: m, lo, hi })
    }

    /// The rational number `q` viewed as an algebraic number of degree 1.
    pub fn from_rational(q: &Rational) -> Self {
        let m = IntPoly::from_dense(&[-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber {
            min_poly: m,
            lo: q - Rational::one(),
            hi: q + Rational::one(),
        }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> u32 {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// The exact value when the degree is 1.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| {
            Rational::new(-self.min_poly.coeff(0), self.min_poly.coeff(1))
        })
    }

    /// Whether the minimal polynomial is monic (α an algebraic integer).
    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly.lc().is_one()
    }

    /// A new value with the isolating interval halved.
    pub fn refine(&self) -> Self {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let m = QPoly::from_int(&self.min_poly);
        let v = m.eval(&mid);
        let mut out = self.clone();
        if v.is_zero() {
            // Only possible in degree 1: shrink symmetrically around the root.
            let w = (&self.hi - &self.lo) / Rational::from_integer(BigInt::from(4));
            out.lo = &mid - &w;
            out.hi = &mid + w;
        } else if m.count_roots_open(&self.lo, &mid) == 1 {
            out.hi = mid;
        } else {
            out.lo = mid;
        }
        out
    }

    /// Refines until the interval width is at most `eps`.
    pub fn refined_to(&self, eps: &Rational) -> Self {
        let mut a = self.clone();
        while &(&a.hi - &a.lo) > eps {
            a = a.refine();
        }
        a
    }

    /// `f(α)` reduced to a polynomial of degree below `deg α`.
    pub fn reduce(&self, f: &IntPoly) -> QPoly {
        QPoly::from_int(f).rem(&QPoly::from_int(&self.min_poly))
    }

    /// Sign of `f(α)`.
    pub fn sign_of(&self, f: &IntPoly) -> i8 {
        self.sign_of_q(&QPoly::from_int(f))
    }

    pub fn sign_of_q(&self, f: &QPoly) -> i8 {
        let r = f.rem(&QPoly::from_int(&self.min_poly));
        if r.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return sign(&r.eval(&q));
        }
        let mut a = self.clone();
        loop {
            let (lo, hi) = interval_eval(&r, &a.lo, &a.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            a = a.refine();
        }
    }

    /// Compares `f(α)` with `g(α)`.
    pub fn compare(&self, f: &IntPoly, g: &IntPoly) -> Ordering {
        self.sign_of(&(f - g)).cmp(&0)
    }

    /// Compares α with a rational number.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let f = QPoly::x().sub(&QPoly::constant(q.clone()));
        self.sign_of_q(&f).cmp(&0)
    }
}

/// Sign of `f(α)`; 0 exactly when the minimal polynomial of α divides `f`.
pub fn alg_sign(alpha: &AlgebraicNumber, f: &IntPoly) -> i8 {
    alpha.sign_of(f)
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Enclosure of `{f(t) : lo <= t <= hi}` by interval Horner evaluation.
fn interval_eval(f: &QPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in f.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alg({}, {}, {})", self.min_poly, self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn sqrt5() -> AlgebraicNumber {
        AlgebraicNumber::new(IntPoly::from_i64(&[-5, 0, 1]), int(2), int(3)).unwrap()
    }

    #[test]
    fn signs() {
        let a = sqrt5();
        assert_eq!(alg_sign(&a, &IntPoly::from_i64(&[-5, 0, 1])), 0);
        assert_eq!(alg_sign(&a, &IntPoly::from_i64(&[-2, 1])), 1);
        assert_eq!(alg_sign(&a, &IntPoly::from_i64(&[-12, 0, 0, 1])), -1);
        // 5√5 - 11 > 0
        assert_eq!(alg_sign(&a, &IntPoly::from_i64(&[-11, 0, 0, 1])), 1);
    }

    #[test]
    fn validation() {
        assert!(AlgebraicNumber::new(IntPoly::from_i64(&[-5, 0, 1]), int(-3), int(3)).is_err());
        assert!(AlgebraicNumber::new(IntPoly::from_i64(&[2, 3, 1]), int(-3), int(0)).is_err());
        let half = AlgebraicNumber::new(IntPoly::from_i64(&[-1, 2]), int(0), int(1)).unwrap();
        assert_eq!(half.as_rational(), Some(rat(1, 2)));
        assert_eq!(half.cmp_rational(&rat(1, 3)), Ordering::Greater);
    }

    #[test]
    fn refinement_keeps_root() {
        let a = sqrt5().refined_to(&rat(1, 1000));
        assert!(a.hi() - a.lo() <= rat(1, 1000));
        assert!(a.lo() * a.lo() < int(5));
        assert!(a.hi() * a.hi() > int(5));
    }
}
