//! Dense univariate polynomials over ℚ, used for gcds, remainders and Sturm
//! sequences. Coefficients are stored low degree first with no trailing zeros.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(a: Rational) -> Self {
        Self::from_vec(vec![a])
    }

    /// `a·x^k`
    pub fn monomial(a: Rational, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = a;
        Self::from_vec(c)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_vec(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        Self::from_vec((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        Self::from_vec((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, a: &Rational) -> QPoly {
        Self::from_vec(self.c.iter().map(|b| b * a).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_vec(c)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let lc = d.lc();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &lc;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &t * b;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::from_vec(q), Self::from_vec(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lc = self.lc();
        self.scale(&(Rational::one() / lc))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        Self::from_vec(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Clears denominators and removes content; the result has positive
    /// leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let l = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let scaled: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let p = IntPoly::from_dense(&scaled).primitive_part();
        if p.lc().is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn from_int(f: &IntPoly) -> QPoly {
        let n = f.degree().map_or(0, |d| d as usize + 1);
        Self::from_vec(
            (0..n)
                .map(|k| Rational::from_integer(f.coeff(k as u32)))
                .collect(),
        )
    }

    /// The integer polynomial with these coefficients, if all are integers.
    pub fn to_int(&self) -> Option<IntPoly> {
        if self.c.iter().any(|a| !a.is_integer()) {
            return None;
        }
        let v: Vec<BigInt> = self.c.iter().map(|a| a.to_integer()).collect();
        Some(IntPoly::from_dense(&v))
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> usize {
        if self.is_zero() || a >= b {
            return 0;
        }
        // Work with the square-free part so Sturm's theorem counts distinct roots.
        let g = self.gcd(&self.derivative());
        let p = if g.is_constant() {
            self.clone()
        } else {
            self.divrem(&g).0
        };
        let seq = p.sturm_sequence();
        let va = sign_changes(&seq, a);
        let vb = sign_changes(&seq, b);
        // V(a) - V(b) counts roots in (a, b].
        let mut n = va.saturating_sub(vb);
        if p.eval(b).is_zero() {
            n -= 1;
        }
        n
    }
}

fn sign_changes(seq: &[QPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.c.len()).rev() {
            let a = &self.c[k];
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn q(v: &[i64]) -> QPoly {
        QPoly::from_vec(v.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = q(&[2, 3, 1]); // (x+1)(x+2)
        let b = q(&[1, 1]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq, q(&[2, 1]));
        assert!(r.is_zero());
        let c = q(&[3, 4, 1]); // (x+1)(x+3)
        assert_eq!(a.gcd(&c), q(&[1, 1]));
    }

    #[test]
    fn sturm_counts() {
        let p = q(&[-5, 0, 1]);
        assert_eq!(p.count_roots_open(&int(2), &int(3)), 1);
        assert_eq!(p.count_roots_open(&int(-3), &int(3)), 2);
        assert_eq!(p.count_roots_open(&int(0), &int(2)), 0);
        // root at the right endpoint is excluded
        let l = q(&[-2, 1]);
        assert_eq!(l.count_roots_open(&int(1), &int(2)), 0);
        assert_eq!(l.count_roots_open(&int(1), &rat(5, 2)), 1);
        // repeated roots counted once
        let sq = q(&[1, 2, 1]);
        assert_eq!(sq.count_roots_open(&int(-2), &int(0)), 1);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(
            QPoly::from_vec(vec![rat(-2, 3), int(1)]).to_string(),
            "x - 2/3"
        );
        assert_eq!(QPoly::from_vec(vec![int(0), rat(1, 2)]).to_string(), "(1/2)x");
    }
}
