//! The semirings S_r = ℕ₀ ∪ ℝ≥r (r > 1), restricted to rational elements.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes::is_prime_u64;
use crate::arith::rational::parse_rational;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::kernel::{Candidates, Certificate, MonoidView, Part, Payload, SearchBudget};
use crate::model::Side;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaySemiring {
    r: Rational,
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RaySemiring {
    pub fn new(r: Rational) -> Result<Self> {
        if r == Rational::one() {
            return Err(Error::unsupported(
                "S_1 has an antimatter multiplicative monoid; r must exceed 1",
            ));
        }
        if r < Rational::one() {
            return Err(Error::unsupported(
                "for r < 1 the semiring generated by the ray is all of ℝ≥0; r must exceed 1",
            ));
        }
        Ok(RaySemiring { r })
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn spec(&self) -> String {
        format!("ray({})", self.r)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        !x.is_negative() && (x.is_integer() || x >= &self.r)
    }

    fn ceil_r(&self) -> Rational {
        self.r.ceil()
    }

    fn check(&self, x: &Rational) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::invalid(format!("{x} is not in {}", self.spec())));
        }
        Ok(())
    }

    /// `x ∈ ({1} ∪ [r, r+1)) ∖ {⌈r⌉}`.
    pub fn is_additive_atom(&self, x: &Rational) -> Result<bool> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::invalid("0 is the additive identity"));
        }
        Ok(x.is_one() || (x >= &self.r && x < &(&self.r + ri(1)) && *x != self.ceil_r()))
    }

    /// `x ∈ (ℙ_{<r²} ∪ [r, r²)) ∖ ℙ·(S_r)_{>1}`.
    pub fn is_mult_atom(&self, x: &Rational) -> Result<bool> {
        self.check(x)?;
        if x.is_zero() || x.is_one() {
            return Err(Error::invalid("0 and 1 are not candidates for multiplicative atoms"));
        }
        let r2 = &self.r * &self.r;
        let prime = x.is_integer() && x.to_integer().to_u64().is_some_and(is_prime_u64);
        let in_range = (prime && x < &r2) || (x >= &self.r && x < &r2);
        Ok(in_range && self.prime_split(x).is_none())
    }

    /// A prime `p < x` with `x/p ∈ S_r` and `x/p > 1`.
    fn prime_split(&self, x: &Rational) -> Option<(Rational, Rational)> {
        let top = x.floor().to_integer().to_u64()?;
        (2..=top).filter(|&p| is_prime_u64(p)).find_map(|p| {
            let s = x / ri(p as i64);
            (s > Rational::one() && self.contains(&s)).then(|| (ri(p as i64), s))
        })
    }

    /// Distinct length-2 factorizations `(r + 1/n) + (t - r - 1/n)` of `target`.
    pub fn non_ff_family(&self, target: &Rational, count: usize) -> Result<Certificate> {
        let two_r = &self.r * ri(2);
        if !(target > &two_r && target < &(&two_r + ri(1))) {
            return Err(Error::unsupported(format!(
                "target {target} must lie in ({two_r}, {})",
                &two_r + ri(1)
            )));
        }
        if count == 0 {
            return Err(Error::invalid("count must be positive"));
        }
        let gap = target - &two_r;
        // n > 1/gap keeps the second summand above r
        let n0: BigInt = (Rational::one() / &gap).floor().to_integer() + 1;
        let mut seen = std::collections::BTreeSet::new();
        let mut fams = Vec::new();
        let mut n = n0;
        while fams.len() < count {
            let a = &self.r + Rational::new(BigInt::one(), n.clone());
            let b = target - &a;
            n += 1;
            let pair = if a <= b { (a, b) } else { (b, a) };
            if !self.is_additive_atom(&pair.0)? || !self.is_additive_atom(&pair.1)? {
                continue;
            }
            if seen.insert(pair.clone()) {
                fams.push(pair);
            }
        }
        let factorizations = fams
            .iter()
            .map(|(a, b)| {
                if a == b {
                    vec![Part { atom: a.to_string(), count: 2 }]
                } else {
                    vec![
                        Part { atom: a.to_string(), count: 1 },
                        Part { atom: b.to_string(), count: 1 },
                    ]
                }
            })
            .collect();
        Certificate::issue(Payload::NonFFFamily {
            model: self.spec(),
            side: Side::Add,
            element: target.to_string(),
            factorizations,
            length: 2,
        })
    }

    /// The four S_2 certificates: additive and multiplicative NotHF and NotLF.
    pub fn s2_counterexamples() -> Result<Vec<Certificate>> {
        let model = "ray(2)".to_string();
        let p = |a: &str, c: usize| Part { atom: a.into(), count: c };
        Ok(vec![
            Certificate::issue(Payload::NotHF {
                model: model.clone(),
                side: Side::Add,
                element: "5".into(),
                factorization_a: vec![p("5/2", 2)],
                factorization_b: vec![p("1", 5)],
                lengths: vec![2, 5],
            })?,
            Certificate::issue(Payload::NotLF {
                model: model.clone(),
                side: Side::Add,
                element: "5".into(),
                factorization_a: vec![p("5/2", 2)],
                factorization_b: vec![p("7/3", 1), p("8/3", 1)],
                lengths: vec![2, 2],
            })?,
            Certificate::issue(Payload::NotHF {
                model: model.clone(),
                side: Side::Mul,
                element: "8".into(),
                factorization_a: vec![p("8/3", 1), p("3", 1)],
                factorization_b: vec![p("2", 3)],
                lengths: vec![2, 3],
            })?,
            Certificate::issue(Payload::NotLF {
                model,
                side: Side::Mul,
                element: "6".into(),
                factorization_a: vec![p("2", 1), p("3", 1)],
                factorization_b: vec![p("15/7", 1), p("14/5", 1)],
                lengths: vec![2, 2],
            })?,
        ])
    }

    /// Rationals in `[lo, hi]` with denominator dividing `den`.
    fn grid(lo: &Rational, hi: &Rational, den: &BigInt) -> Vec<Rational> {
        let d = Rational::from_integer(den.clone());
        let a = (lo * &d).ceil().to_integer();
        let b = (hi * &d).floor().to_integer();
        let mut out = Vec::new();
        let mut k = a;
        while k <= b {
            out.push(Rational::new(k.clone(), den.clone()));
            k += 1;
        }
        out
    }

    /// Denominators searched for atoms dividing `x` when the set is infinite.
    fn search_dens(x: &Rational, budget: &SearchBudget) -> Vec<BigInt> {
        let base = x.denom().clone();
        let m = (budget.max_exponent as i64).min(12);
        let mut out: Vec<BigInt> = (1..=m).map(|k| &base * k).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug)]
pub struct RayAdd {
    pub s: RaySemiring,
}

impl MonoidView for RayAdd {
    type Elem = Rational;

    fn describe(&self) -> String {
        format!("({}, +)", self.s.spec())
    }

    fn identity(&self) -> Rational {
        Rational::zero()
    }

    fn is_member(&self, x: &Rational) -> bool {
        self.s.contains(x)
    }

    fn compose(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }

    fn divide(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let z = x - y;
        self.s.contains(&z).then_some(z)
    }

    fn render(&self, x: &Rational) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }

    fn atom_rule(&self, x: &Rational) -> Option<bool> {
        self.s.is_additive_atom(x).ok()
    }

    fn divisor_candidates(&self, x: &Rational, _budget: &SearchBudget) -> Candidates<Rational> {
        // Every non-atom x is 1 + (x - 1) with x - 1 ∈ S_r.
        Candidates::complete(self.divide(x, &Rational::one()).map(|_| Rational::one()).into_iter().collect())
    }

    fn atoms_dividing(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        let r = self.s.r().clone();
        let top = (&r + ri(1)).min(x.clone());
        let mut items = Vec::new();
        if self.divide(x, &Rational::one()).is_some() {
            items.push(Rational::one());
        }
        // a with x - a an integer, or with x - a >= r
        let exact = x < &(&r * ri(2));
        let mut k = BigInt::zero();
        while Rational::from_integer(k.clone()) <= x - &r {
            let a = x - Rational::from_integer(k.clone());
            if a < top || a == *x {
                items.push(a);
            }
            k += 1;
        }
        if !exact {
            for den in RaySemiring::search_dens(x, budget) {
                items.extend(RaySemiring::grid(&r, &(x - &r), &den).into_iter().filter(|a| a < &top));
            }
        }
        items.retain(|a| self.s.is_additive_atom(a).unwrap_or(false) && self.divide(x, a).is_some());
        items.sort();
        items.dedup();
        Candidates { items, complete: exact }
    }
}

#[derive(Clone, Debug)]
pub struct RayMul {
    pub s: RaySemiring,
}

impl MonoidView for RayMul {
    type Elem = Rational;

    fn describe(&self) -> String {
        format!("({}•, ·)", self.s.spec())
    }

    fn identity(&self) -> Rational {
        Rational::one()
    }

    fn is_member(&self, x: &Rational) -> bool {
        x.is_positive() && self.s.contains(x)
    }

    fn compose(&self, x: &Rational, y: &Rational) -> Rational {
        x * y
    }

    fn divide(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        if y.is_zero() {
            return None;
        }
        let z = x / y;
        self.is_member(&z).then_some(z)
    }

    fn render(&self, x: &Rational) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }

    fn atom_rule(&self, x: &Rational) -> Option<bool> {
        self.s.is_mult_atom(x).ok()
    }

    fn divisor_candidates(&self, x: &Rational, _budget: &SearchBudget) -> Candidates<Rational> {
        let mut items = Vec::new();
        if let Some((p, _)) = self.s.prime_split(x) {
            items.push(p);
        }
        let r = self.s.r().clone();
        if x >= &(&r * &r) {
            items.push(r);
        }
        if x.is_integer() {
            if let Some(n) = x.to_integer().to_u64() {
                items.extend((2..n).filter(|d| n % d == 0).take(1).map(|d| ri(d as i64)));
            }
        }
        Candidates::complete(items)
    }

    fn atoms_dividing(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        let r = self.s.r().clone();
        let r2 = &r * &r;
        let mut items = Vec::new();
        let top = x.floor().to_integer().to_u64().unwrap_or(0);
        for p in (2..=top).filter(|&p| is_prime_u64(p)) {
            items.push(ri(p as i64));
        }
        // y with x/y an integer, plus a grid when the divisor set is infinite
        let mut k = 2u64;
        while ri(k as i64) <= *x && k <= 4096 {
            items.push(x / ri(k as i64));
            k += 1;
        }
        // Below r² a cofactor is an integer or the atom is a prime.
        let exact = x < &r2;
        if !exact {
            for den in RaySemiring::search_dens(x, budget) {
                items.extend(RaySemiring::grid(&r, &r2, &den));
            }
        }
        items.push(x.clone());
        items.retain(|a| {
            a != &Rational::one()
                && self.s.is_mult_atom(a).unwrap_or(false)
                && self.divide(x, a).is_some()
        });
        items.sort();
        items.dedup();
        Candidates { items, complete: exact }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::kernel::{is_atom, AtomResult};

    #[test]
    fn atom_predicates() {
        let s2 = RaySemiring::new(int(2)).unwrap();
        assert!(s2.is_additive_atom(&rat(5, 2)).unwrap());
        assert!(!s2.is_additive_atom(&int(2)).unwrap());
        let s52 = RaySemiring::new(rat(5, 2)).unwrap();
        assert!(!s52.is_additive_atom(&int(3)).unwrap());
        assert!(s2.is_mult_atom(&rat(8, 3)).unwrap());
        assert!(!s2.is_mult_atom(&int(4)).unwrap());
        assert!(!s2.is_mult_atom(&int(6)).unwrap());
        assert!(s2.is_additive_atom(&rat(3, 2)).is_err());
        assert!(RaySemiring::new(int(1)).is_err());
    }

    #[test]
    fn four_splits() {
        let v = RayMul { s: RaySemiring::new(int(2)).unwrap() };
        assert_eq!(
            is_atom(&v, &int(4), &SearchBudget::default()).unwrap(),
            AtomResult::NotAtom(int(2), int(2))
        );
    }

    #[test]
    fn non_ff() {
        let s2 = RaySemiring::new(int(2)).unwrap();
        let c = s2.non_ff_family(&rat(9, 2), 3).unwrap();
        match &c.payload {
            Payload::NonFFFamily { factorizations, .. } => {
                let atoms: Vec<Vec<&str>> = factorizations
                    .iter()
                    .map(|f| f.iter().map(|p| p.atom.as_str()).collect())
                    .collect();
                assert_eq!(atoms, vec![vec!["13/6", "7/3"], vec!["9/4"], vec!["11/5", "23/10"]]);
            }
            _ => unreachable!(),
        }
        assert!(s2.non_ff_family(&int(5), 3).is_err());
        assert_eq!(RaySemiring::s2_counterexamples().unwrap().len(), 4);
    }
}
