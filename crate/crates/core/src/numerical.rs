//! Numerical monoids ⟨g₁, …, g_k⟩ ⊆ ℕ₀ and their multiplicative monoids
//! `(S• ∪ {1}, ·)`.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::primes::{divisors_biguint, is_prime_u64};
use crate::error::{Error, Result};
use crate::kernel::{Candidates, Certificate, MonoidView, Part, Payload, SearchBudget};
use crate::model::Side;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalMonoid {
    gens: Vec<u64>,
    apery: Vec<u64>,
}

impl NumericalMonoid {
    /// Builds the monoid; the generator list is reduced to the minimal
    /// generating set.
    pub fn new(gens: &[u64]) -> Result<Self> {
        let mut g: Vec<u64> = gens.iter().copied().filter(|&x| x > 0).collect();
        if g.is_empty() {
            return Err(Error::invalid("a numerical monoid needs a positive generator"));
        }
        g.sort_unstable();
        g.dedup();
        if g.iter().fold(0, |a, &b| a.gcd(&b)) != 1 {
            return Err(Error::invalid(format!("generators {g:?} have gcd > 1")));
        }
        let m = g[0];
        // Dijkstra over residues mod m.
        let mut dist = vec![u64::MAX; m as usize];
        dist[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &x in &g[1..] {
                let nd = d + x;
                let nr = ((r as u64 + x) % m) as usize;
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        let mut s = NumericalMonoid { gens: g, apery: dist };
        let all = s.gens.clone();
        s.gens = all
            .iter()
            .copied()
            .filter(|&x| !all.iter().any(|&h| h < x && s.contains_u64(x - h)))
            .collect();
        Ok(s)
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn multiplicity(&self) -> u64 {
        self.gens[0]
    }

    pub fn spec(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|x| x.to_string()).collect();
        format!("numerical({})", g.join(","))
    }

    /// Apéry set with respect to `m` (which must be a member), by residue.
    pub fn apery(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 || !self.contains_u64(m) {
            return Err(Error::invalid(format!("{m} is not a nonzero element")));
        }
        Ok((0..m)
            .map(|r| {
                let mut w = r;
                while !self.contains_u64(w) {
                    w += m;
                }
                w
            })
            .collect())
    }

    /// Frobenius number; -1 for ℕ₀.
    pub fn frobenius(&self) -> i64 {
        *self.apery.iter().max().unwrap() as i64 - self.multiplicity() as i64
    }

    pub fn gaps(&self) -> Vec<u64> {
        let f = self.frobenius();
        (1..=f.max(0) as u64).filter(|&n| !self.contains_u64(n)).collect()
    }

    pub fn contains_u64(&self, n: u64) -> bool {
        n >= self.apery[(n % self.multiplicity()) as usize]
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        let m = BigUint::from(self.multiplicity());
        let r = (n % &m).to_usize().unwrap();
        n >= &BigUint::from(self.apery[r])
    }

    /// Multiplicative atoms of `(S• ∪ {1}, ·)` in `[2, b]`.
    pub fn mult_atoms_up_to(&self, b: u64) -> Result<Vec<u64>> {
        if b < 2 {
            return Err(Error::invalid("bound must be at least 2"));
        }
        let view = NumericalMul { s: self.clone() };
        Ok((2..=b)
            .filter(|&x| self.contains_u64(x))
            .filter(|&x| {
                let x = BigUint::from(x);
                view.divisor_candidates(&x, &SearchBudget::default()).items.is_empty()
            })
            .collect())
    }

    /// Searches `(q, n)` with q a prime outside S, n >= 2, q^n and q^(2n-1)
    /// in S and q^(n-1) not in S.
    pub fn find_remark_parameters(&self, prime_cap: u64, n_cap: u32) -> Option<(u64, u32)> {
        for q in 2..=prime_cap {
            if !is_prime_u64(q) || self.contains_u64(q) {
                continue;
            }
            for n in 2..=n_cap {
                if self.remark_check(q, n).is_ok() {
                    return Some((q, n));
                }
            }
        }
        None
    }

    fn remark_check(&self, q: u64, n: u32) -> Result<u64> {
        if !is_prime_u64(q) {
            return Err(Error::unsupported(format!("{q} is not prime")));
        }
        if self.contains_u64(q) {
            return Err(Error::unsupported(format!("q = {q} lies in {}", self.spec())));
        }
        if n < 2 {
            return Err(Error::unsupported("n must be at least 2"));
        }
        let qb = BigUint::from(q);
        let pw = |e: u32| qb.pow(e);
        if !self.contains(&pw(n)) {
            return Err(Error::unsupported(format!("q^n = {} is not in S", pw(n))));
        }
        if !self.contains(&pw(2 * n - 1)) {
            return Err(Error::unsupported(format!("q^(2n-1) = {} is not in S", pw(2 * n - 1))));
        }
        if self.contains(&pw(n - 1)) {
            return Err(Error::unsupported(format!("q^(n-1) = {} lies in S", pw(n - 1))));
        }
        let p = (2..)
            .find(|&p| is_prime_u64(p) && self.contains_u64(p))
            .expect("S is cofinite");
        Ok(p)
    }

    /// The NotLF and NotHF certificates `p·q^(2n-1) = (p·q^(n-1))·q^n` and
    /// `(q^n)^(2n-1) = (q^(2n-1))^n`.
    pub fn remark_witnesses(&self, q: u64, n: u32) -> Result<(Certificate, Certificate)> {
        let p = self.remark_check(q, n)?;
        let qb = BigUint::from(q);
        let pb = BigUint::from(p);
        let a = qb.pow(n);
        let b = qb.pow(2 * n - 1);
        let c = &pb * qb.pow(n - 1);
        let view = NumericalMul { s: self.clone() };
        let part = |x: &BigUint, k: usize| Part {
            atom: x.to_string(),
            count: k,
        };
        let sorted = |mut v: Vec<Part>| {
            v.sort_by_key(|p| p.atom.parse::<BigUint>().unwrap());
            v
        };
        let lf = Certificate::issue(Payload::NotLF {
            model: self.spec(),
            side: Side::Mul,
            element: view.render(&(&pb * &b)),
            factorization_a: sorted(vec![part(&pb, 1), part(&b, 1)]),
            factorization_b: sorted(vec![part(&a, 1), part(&c, 1)]),
            lengths: vec![2, 2],
        })?;
        let hf = Certificate::issue(Payload::NotHF {
            model: self.spec(),
            side: Side::Mul,
            element: a.pow(2 * n - 1).to_string(),
            factorization_a: vec![part(&b, n as usize)],
            factorization_b: vec![part(&a, 2 * n as usize - 1)],
            lengths: vec![n as usize, 2 * n as usize - 1],
        })?;
        Ok((lf, hf))
    }
}

fn parse_uint(s: &str) -> Result<BigUint> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("`{}` is not a nonnegative integer", s.trim())))
}

#[derive(Clone, Debug)]
pub struct NumericalAdd {
    pub s: NumericalMonoid,
}

impl MonoidView for NumericalAdd {
    type Elem = BigUint;

    fn describe(&self) -> String {
        format!("({}, +)", self.s.spec())
    }

    fn identity(&self) -> BigUint {
        BigUint::zero()
    }

    fn is_member(&self, x: &BigUint) -> bool {
        self.s.contains(x)
    }

    fn compose(&self, x: &BigUint, y: &BigUint) -> BigUint {
        x + y
    }

    fn divide(&self, x: &BigUint, y: &BigUint) -> Option<BigUint> {
        (y <= x && self.s.contains(&(x - y))).then(|| x - y)
    }

    fn render(&self, x: &BigUint) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<BigUint> {
        parse_uint(s)
    }

    fn atom_rule(&self, x: &BigUint) -> Option<bool> {
        Some(self.s.gens.iter().any(|&g| BigUint::from(g) == *x))
    }

    fn divisor_candidates(&self, x: &BigUint, budget: &SearchBudget) -> Candidates<BigUint> {
        let a = self.atoms_dividing(x, budget);
        Candidates::complete(a.items.into_iter().filter(|y| y != x).collect())
    }

    fn atoms_dividing(&self, x: &BigUint, _budget: &SearchBudget) -> Candidates<BigUint> {
        Candidates::complete(
            self.s
                .gens
                .iter()
                .map(|&g| BigUint::from(g))
                .filter(|g| self.divide(x, g).is_some())
                .collect(),
        )
    }

    fn finite_atoms(&self) -> Option<Vec<BigUint>> {
        Some(self.s.gens.iter().map(|&g| BigUint::from(g)).collect())
    }
}

/// `(S• ∪ {1}, ·)` with 1 adjoined as identity.
#[derive(Clone, Debug)]
pub struct NumericalMul {
    pub s: NumericalMonoid,
}

impl MonoidView for NumericalMul {
    type Elem = BigUint;

    fn describe(&self) -> String {
        format!("({}• ∪ {{1}}, ·)", self.s.spec())
    }

    fn identity(&self) -> BigUint {
        BigUint::one()
    }

    fn is_member(&self, x: &BigUint) -> bool {
        x.is_one() || (!x.is_zero() && self.s.contains(x))
    }

    fn compose(&self, x: &BigUint, y: &BigUint) -> BigUint {
        x * y
    }

    fn divide(&self, x: &BigUint, y: &BigUint) -> Option<BigUint> {
        if y.is_zero() || !(x % y).is_zero() {
            return None;
        }
        let z = x / y;
        self.is_member(&z).then_some(z)
    }

    fn render(&self, x: &BigUint) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<BigUint> {
        parse_uint(s)
    }

    fn divisor_candidates(&self, x: &BigUint, _budget: &SearchBudget) -> Candidates<BigUint> {
        let items = divisors_biguint(x)
            .into_iter()
            .filter(|y| !y.is_one() && y != x && self.is_member(y) && self.divide(x, y).is_some())
            .collect();
        Candidates::complete(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_numbers() {
        assert_eq!(NumericalMonoid::new(&[3, 5]).unwrap().frobenius(), 7);
        assert_eq!(NumericalMonoid::new(&[2, 3]).unwrap().frobenius(), 1);
        assert_eq!(NumericalMonoid::new(&[6, 9, 20]).unwrap().frobenius(), 43);
        assert_eq!(NumericalMonoid::new(&[1]).unwrap().frobenius(), -1);
        assert!(NumericalMonoid::new(&[4, 6]).is_err());
    }

    #[test]
    fn minimal_generators_and_apery() {
        let s = NumericalMonoid::new(&[3, 5, 6, 8]).unwrap();
        assert_eq!(s.generators(), &[3, 5]);
        assert_eq!(s.apery(3).unwrap(), vec![0, 10, 5]);
        assert_eq!(s.gaps(), vec![1, 2, 4, 7]);
    }

    #[test]
    fn mult_atoms() {
        let s = NumericalMonoid::new(&[3, 5]).unwrap();
        let a = s.mult_atoms_up_to(35).unwrap();
        for x in [3, 5, 8, 12, 32] {
            assert!(a.contains(&x), "{x}");
        }
        for x in [9, 15, 24, 25] {
            assert!(!a.contains(&x), "{x}");
        }
        let t = NumericalMonoid::new(&[2, 3]).unwrap();
        assert_eq!(t.mult_atoms_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert!(s.mult_atoms_up_to(2).unwrap().is_empty());
        assert!(s.mult_atoms_up_to(1).is_err());
    }

    #[test]
    fn remark() {
        let s = NumericalMonoid::new(&[3, 5]).unwrap();
        let (lf, hf) = s.remark_witnesses(2, 3).unwrap();
        assert!(lf.verified && hf.verified);
        assert_eq!(hf.lengths(), vec![3, 5]);
        assert!(matches!(s.remark_witnesses(2, 2), Err(Error::Unsupported(_))));
        let t = NumericalMonoid::new(&[2, 3]).unwrap();
        assert!(matches!(t.remark_witnesses(2, 3), Err(Error::Unsupported(_))));
        assert_eq!(t.find_remark_parameters(50, 6), None);
        assert_eq!(s.find_remark_parameters(50, 6), Some((2, 3)));
    }
}
