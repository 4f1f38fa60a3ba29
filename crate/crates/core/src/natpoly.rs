//! The polynomial semiring ℕ₀[x]: multiplicative factorization by regrouping
//! the ℤ[x] factor multiset into nonnegative irreducible blocks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::primes::factor_biguint;
use crate::arith::{factor_int_poly, IntPoly, NatPoly};
use crate::error::{Error, Result};
use crate::kernel::{
    Candidates, Certificate, Factorization, FactorizationSet, MonoidView, Payload, SearchBudget,
};
use crate::model::Side;

pub const SPEC: &str = "N0[x]";

/// ℤ[x]-prime items of `f`: content primes as constants, then irreducible
/// factors, with multiplicity, in canonical order.
pub fn prime_items(f: &NatPoly) -> Result<Vec<IntPoly>> {
    if f.is_zero() {
        return Err(Error::invalid("0 has no factorization"));
    }
    let fac = factor_int_poly(f.as_int())?;
    let mut items = Vec::new();
    for (p, e) in factor_biguint(&fac.content) {
        for _ in 0..e {
            items.push(IntPoly::constant(BigInt::from(p.clone())));
        }
    }
    items.extend(fac.factors);
    items.sort();
    Ok(items)
}

fn product(items: &[&IntPoly]) -> IntPoly {
    items.iter().fold(IntPoly::one(), |acc, p| &acc * p)
}

/// Distinct sub-multiset index masks of a sorted item list (equal items are
/// taken as prefixes of their run, so each sub-multiset appears once).
fn submultisets(items: &[IntPoly]) -> Vec<Vec<usize>> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (i, it) in items.iter().enumerate() {
        match runs.last_mut() {
            Some((s, l)) if items[*s] == *it => *l += 1,
            _ => runs.push((i, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (start, len) in runs {
        let mut next = Vec::new();
        for base in &out {
            for take in 0..=len {
                let mut v = base.clone();
                v.extend(start..start + take);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(NatPoly, NatPoly),
}

/// Decides irreducibility in (ℕ₀[x]•, ·) from the ℤ[x] factor multiset.
pub fn is_irreducible_natpoly(f: &NatPoly) -> Result<Irreducibility> {
    if f.is_zero() || f.is_one() {
        return Err(Error::invalid("0 and 1 are not candidates for irreducibility"));
    }
    let items = prime_items(f)?;
    Ok(match split_of(&items) {
        Some((a, b)) => Irreducibility::Reducible(a, b),
        None => Irreducibility::Irreducible,
    })
}

/// A split of the block into two nonunit nonnegative parts.
fn split_of(items: &[IntPoly]) -> Option<(NatPoly, NatPoly)> {
    let n = items.len();
    for sub in submultisets(items) {
        if sub.is_empty() || sub.len() == n {
            continue;
        }
        let a = product(&sub.iter().map(|&i| &items[i]).collect::<Vec<_>>());
        if !a.is_nonnegative() {
            continue;
        }
        let rest: Vec<&IntPoly> = (0..n).filter(|i| !sub.contains(i)).map(|i| &items[i]).collect();
        let b = product(&rest);
        if b.is_nonnegative() {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            return Some((NatPoly::new(a).unwrap(), NatPoly::new(b).unwrap()));
        }
    }
    None
}

/// All factorizations of `f` in (ℕ₀[x]•, ·). Always complete.
pub fn factorizations_natpoly(f: &NatPoly) -> Result<FactorizationSet<NatPoly>> {
    let items = prime_items(f)?;
    let mut found: BTreeSet<Vec<NatPoly>> = BTreeSet::new();
    partitions(&items, &mut Vec::new(), &mut found);
    let view = NatPolyMul;
    let facts = found
        .into_iter()
        .map(|blocks| Factorization::from_atoms(&view, &blocks))
        .collect();
    Ok(FactorizationSet::new(&view, f.clone(), facts, true))
}

fn partitions(rest: &[IntPoly], acc: &mut Vec<NatPoly>, out: &mut BTreeSet<Vec<NatPoly>>) {
    if rest.is_empty() {
        let mut v = acc.clone();
        v.sort();
        out.insert(v);
        return;
    }
    // the block containing rest[0]
    let tail = &rest[1..];
    for sub in submultisets(tail) {
        let mut block: Vec<IntPoly> = vec![rest[0].clone()];
        block.extend(sub.iter().map(|&i| tail[i].clone()));
        let p = product(&block.iter().collect::<Vec<_>>());
        if !p.is_nonnegative() || split_of(&block).is_some() {
            continue;
        }
        let remaining: Vec<IntPoly> = (0..tail.len())
            .filter(|i| !sub.contains(i))
            .map(|i| tail[i].clone())
            .collect();
        acc.push(NatPoly::new(p).unwrap());
        partitions(&remaining, acc, out);
        acc.pop();
    }
}

fn lin(n: i64) -> NatPoly {
    NatPoly::from_u64(&[n as u64, 1])
}

fn part(view: &NatPolyMul, f: &Factorization<NatPoly>) -> Vec<crate::kernel::Part> {
    f.render(view).parts
}

/// `[(x+n)^n (x²-x+1)]·(x+1)^k = (x+n)^n·[(x²-x+1)(x+1)]·(x+1)^(k-1)`,
/// lengths k+1 and n+k.
pub fn hf_witness_family(n: u32, k: u32) -> Result<Certificate> {
    if n < 2 || k < 1 {
        return Err(Error::invalid("need n >= 2 and k >= 1"));
    }
    if n > 4 || k > 3 {
        return Err(Error::unsupported("parameters are capped at n <= 4, k <= 3"));
    }
    let view = NatPolyMul;
    let xn = lin(n as i64);
    let trinom = IntPoly::from_i64(&[1, -1, 1]);
    let big = NatPoly::new(&xn.as_int().pow(n) * &trinom).expect("nonnegative by construction");
    let cube = NatPoly::new(&trinom * lin(1).as_int()).unwrap();
    let x1 = lin(1);
    let mut a = vec![big.clone()];
    a.extend(std::iter::repeat_n(x1.clone(), k as usize));
    let mut b: Vec<NatPoly> = std::iter::repeat_n(xn.clone(), n as usize).collect();
    b.push(cube);
    b.extend(std::iter::repeat_n(x1, k as usize - 1));
    let fa = Factorization::from_atoms(&view, &a);
    let fb = Factorization::from_atoms(&view, &b);
    let element = fa.evaluate(&view);
    Certificate::issue(Payload::NotHF {
        model: SPEC.into(),
        side: Side::Mul,
        element: element.to_string(),
        factorization_a: part(&view, &fa),
        factorization_b: part(&view, &fb),
        lengths: vec![fa.len(), fb.len()],
    })
}

/// `(x+1)(x+2)(x²-x+3)` regrouped two ways.
pub fn lf_witness() -> Result<Certificate> {
    let view = NatPolyMul;
    let t = IntPoly::from_i64(&[3, -1, 1]);
    let a1 = NatPoly::new(&t * lin(1).as_int()).unwrap();
    let b1 = NatPoly::new(&t * lin(2).as_int()).unwrap();
    let fa = Factorization::from_atoms(&view, &[a1, lin(2)]);
    let fb = Factorization::from_atoms(&view, &[b1, lin(1)]);
    Certificate::issue(Payload::NotLF {
        model: SPEC.into(),
        side: Side::Mul,
        element: fa.evaluate(&view).to_string(),
        factorization_a: part(&view, &fa),
        factorization_b: part(&view, &fb),
        lengths: vec![2, 2],
    })
}

/// (ℕ₀[x]•, ·).
#[derive(Clone, Copy, Debug, Default)]
pub struct NatPolyMul;

impl MonoidView for NatPolyMul {
    type Elem = NatPoly;

    fn describe(&self) -> String {
        format!("({SPEC}•, ·)")
    }

    fn identity(&self) -> NatPoly {
        NatPoly::from_u64(&[1])
    }

    fn is_member(&self, x: &NatPoly) -> bool {
        !x.is_zero()
    }

    fn compose(&self, x: &NatPoly, y: &NatPoly) -> NatPoly {
        x.mul(y)
    }

    fn divide(&self, x: &NatPoly, y: &NatPoly) -> Option<NatPoly> {
        if y.is_zero() {
            return None;
        }
        x.as_int().div_exact(y.as_int()).and_then(|q| NatPoly::new(q).ok())
    }

    fn render(&self, x: &NatPoly) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<NatPoly> {
        NatPoly::parse(s)
    }

    fn divisor_candidates(&self, x: &NatPoly, _budget: &SearchBudget) -> Candidates<NatPoly> {
        let Ok(items) = prime_items(x) else {
            return Candidates::complete(Vec::new());
        };
        let n = items.len();
        let mut out = Vec::new();
        for sub in submultisets(&items) {
            if sub.is_empty() || sub.len() == n {
                continue;
            }
            let p = product(&sub.iter().map(|&i| &items[i]).collect::<Vec<_>>());
            if let Ok(p) = NatPoly::new(p) {
                if self.divide(x, &p).is_some() {
                    out.push(p);
                }
            }
        }
        out.sort();
        out.dedup();
        Candidates::complete(out)
    }

    fn atom_rule(&self, x: &NatPoly) -> Option<bool> {
        match is_irreducible_natpoly(x) {
            Ok(Irreducibility::Irreducible) => Some(true),
            Ok(Irreducibility::Reducible(..)) => Some(false),
            Err(_) => None,
        }
    }
}

/// (ℕ₀[x], +): free on the monomials x^k.
#[derive(Clone, Copy, Debug, Default)]
pub struct NatPolyAdd;

impl MonoidView for NatPolyAdd {
    type Elem = NatPoly;

    fn describe(&self) -> String {
        format!("({SPEC}, +)")
    }

    fn identity(&self) -> NatPoly {
        NatPoly::from_u64(&[])
    }

    fn is_member(&self, _x: &NatPoly) -> bool {
        true
    }

    fn compose(&self, x: &NatPoly, y: &NatPoly) -> NatPoly {
        x.add(y)
    }

    fn divide(&self, x: &NatPoly, y: &NatPoly) -> Option<NatPoly> {
        NatPoly::new(x.as_int() - y.as_int()).ok()
    }

    fn render(&self, x: &NatPoly) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<NatPoly> {
        NatPoly::parse(s)
    }

    fn atom_rule(&self, x: &NatPoly) -> Option<bool> {
        let t: Vec<_> = x.terms().collect();
        Some(t.len() == 1 && t[0].1.is_one())
    }

    fn divisor_candidates(&self, x: &NatPoly, budget: &SearchBudget) -> Candidates<NatPoly> {
        let a = self.atoms_dividing(x, budget);
        Candidates::complete(a.items.into_iter().filter(|y| y != x).collect())
    }

    fn atoms_dividing(&self, x: &NatPoly, _budget: &SearchBudget) -> Candidates<NatPoly> {
        Candidates::complete(
            x.support()
                .into_iter()
                .map(|k| NatPoly::new(IntPoly::monomial(BigInt::one(), k)).unwrap())
                .collect(),
        )
    }
}
