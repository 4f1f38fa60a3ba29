//! Positive monoids in ℚ + ℚω with ω irrational, known only through a
//! rational enclosure. Elements are coordinate pairs; {1, ω} is taken to be
//! ℚ-linearly independent, so equality is coordinate equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::parse::parse_expr;
use crate::arith::rational::parse_rational;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::kernel::{Candidates, Certificate, MonoidView, Part, Payload, SearchBudget};
use crate::model::Side;

const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510582097494459";

/// `a + bω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank2Elem {
    pub a: Rational,
    pub b: Rational,
}

impl Rank2Elem {
    pub fn new(a: Rational, b: Rational) -> Self {
        Rank2Elem { a, b }
    }

    pub fn zero() -> Self {
        Rank2Elem::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Rank2Elem) -> Rank2Elem {
        Rank2Elem::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Rank2Elem) -> Rank2Elem {
        Rank2Elem::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn scale(&self, k: &Rational) -> Rank2Elem {
        Rank2Elem::new(&self.a * k, &self.b * k)
    }

    /// Renders with the given symbol, over a common denominator:
    /// `(pi+2)/2`, `3omega/2`, `2`.
    pub fn render(&self, sym: &str) -> String {
        let d = self.a.denom().lcm(self.b.denom());
        let dr = Rational::from_integer(d.clone());
        let a = (&self.a * &dr).to_integer();
        let b = (&self.b * &dr).to_integer();
        let mut inner = String::new();
        if !b.is_zero() {
            if b == BigInt::from(-1) {
                inner.push('-');
            } else if !b.is_one() {
                inner.push_str(&b.to_string());
            }
            inner.push_str(sym);
        }
        if !a.is_zero() {
            if !inner.is_empty() && a.is_positive() {
                inner.push('+');
            }
            inner.push_str(&a.to_string());
        }
        if inner.is_empty() {
            inner.push('0');
        }
        if d.is_one() {
            inner
        } else if !a.is_zero() && !b.is_zero() {
            format!("({inner})/{d}")
        } else {
            format!("{inner}/{d}")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Omega {
    /// π, enclosed by its decimal expansion truncated to k digits.
    Pi,
    Custom { lo: Rational, hi: Rational },
}

impl Omega {
    pub fn symbol(&self) -> &'static str {
        match self {
            Omega::Pi => "pi",
            Omega::Custom { .. } => "omega",
        }
    }

    fn levels(&self) -> usize {
        match self {
            Omega::Pi => PI_DIGITS.len(),
            Omega::Custom { .. } => 1,
        }
    }

    /// Enclosure at refinement level `k`.
    pub fn enclosure(&self, k: usize) -> (Rational, Rational) {
        match self {
            Omega::Pi => {
                let k = k.min(PI_DIGITS.len() - 1);
                let n: BigInt = PI_DIGITS[..=k].parse().unwrap();
                let d = BigInt::from(10u32).pow(k as u32);
                (Rational::new(n.clone(), d.clone()), Rational::new(n + 1, d))
            }
            Omega::Custom { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    fn value_bounds(&self, x: &Rank2Elem, k: usize) -> (Rational, Rational) {
        let (lo, hi) = self.enclosure(k);
        let u = &x.a + &x.b * &lo;
        let v = &x.a + &x.b * &hi;
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Sign of the value of `x`, refining the enclosure as far as it goes.
    pub fn sign(&self, x: &Rank2Elem) -> Option<Ordering> {
        if x.is_zero() {
            return Some(Ordering::Equal);
        }
        if x.b.is_zero() {
            return Some(x.a.cmp(&Rational::zero()));
        }
        for k in 0..self.levels() {
            let (l, h) = self.value_bounds(x, k);
            if l.is_positive() {
                return Some(Ordering::Greater);
            }
            if h.is_negative() {
                return Some(Ordering::Less);
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Generators(Vec<Rank2Elem>),
    /// `{q + (1-q)ω : q ∈ [0, 1], den(q) ≤ cap}`.
    Family { cap: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rank2Monoid {
    omega: Omega,
    presentation: Presentation,
    gens: Vec<Rank2Elem>,
    atoms: Vec<Rank2Elem>,
}

/// Farey fractions in `[0, 1]` with denominator at most `cap`, ascending.
fn farey(cap: u32) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=cap as i64)
        .flat_map(|d| (0..=d).map(move |n| Rational::new(n.into(), d.into())))
        .collect();
    v.sort();
    v.dedup();
    v
}

fn family_atom(q: &Rational) -> Rank2Elem {
    Rank2Elem::new(q.clone(), Rational::one() - q)
}

impl Rank2Monoid {
    pub fn new(omega: Omega, presentation: Presentation) -> Result<Self> {
        if let Omega::Custom { lo, hi } = &omega {
            if !(Rational::one() < *lo && lo < hi) {
                return Err(Error::invalid("the enclosure of omega needs 1 < lo < hi"));
            }
        }
        let gens = match &presentation {
            Presentation::Generators(g) => g.clone(),
            Presentation::Family { cap } => {
                if *cap == 0 {
                    return Err(Error::invalid("family cap must be positive"));
                }
                farey(*cap).iter().map(family_atom).collect()
            }
        };
        if gens.is_empty() {
            return Err(Error::invalid("a rank-2 monoid needs generators"));
        }
        for g in &gens {
            match omega.sign(g) {
                Some(Ordering::Greater) => {}
                Some(_) => {
                    return Err(Error::invalid(format!(
                        "generator {} is not positive",
                        g.render(omega.symbol())
                    )))
                }
                None => {
                    return Err(Error::undecided(format!(
                        "the sign of {} is not decided by the enclosure",
                        g.render(omega.symbol())
                    )))
                }
            }
        }
        let mut m = Rank2Monoid {
            omega,
            presentation,
            gens: gens.clone(),
            atoms: Vec::new(),
        };
        let mut atoms = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let others: Vec<Rank2Elem> = gens
                .iter()
                .enumerate()
                .filter(|(j, h)| *j != i && *h != g)
                .map(|(_, h)| h.clone())
                .collect();
            if !m.member_over(&others, g) && !atoms.contains(g) {
                atoms.push(g.clone());
            }
        }
        m.atoms = atoms;
        Ok(m)
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[Rank2Elem] {
        &self.gens
    }

    /// Generators not in the monoid generated by the others, checked exactly
    /// in coordinates.
    pub fn atoms(&self) -> &[Rank2Elem] {
        &self.atoms
    }

    pub fn render(&self, x: &Rank2Elem) -> String {
        x.render(self.omega.symbol())
    }

    pub fn parse_elem(&self, s: &str) -> Result<Rank2Elem> {
        parse_coords(s, self.omega.symbol(), 0)
    }

    pub fn spec(&self) -> String {
        let enc = match &self.omega {
            Omega::Pi => None,
            Omega::Custom { lo, hi } => Some(format!("omega=({lo},{hi})")),
        };
        match &self.presentation {
            Presentation::Generators(g) => {
                let mut parts: Vec<String> = g.iter().map(|x| self.render(x)).collect();
                parts.extend(enc);
                format!("rank2({})", parts.join("; "))
            }
            Presentation::Family { cap } => {
                let mut s = format!("rank2family(cap={cap}");
                if let Some(e) = enc {
                    s.push_str(", ");
                    s.push_str(&e);
                }
                s.push(')');
                s
            }
        }
    }

    pub fn contains(&self, x: &Rank2Elem) -> bool {
        self.member_over(&self.atoms, x)
    }

    /// Membership of `x` in the monoid generated by `gens`: nonnegative
    /// integer coefficients bounded through the enclosure, exact at the leaves.
    fn member_over(&self, gens: &[Rank2Elem], x: &Rank2Elem) -> bool {
        if x.is_zero() {
            return true;
        }
        if gens.is_empty() {
            return false;
        }
        let lows: Vec<Rational> = gens
            .iter()
            .map(|g| self.omega.value_bounds(g, self.omega.levels() - 1).0)
            .collect();
        let mut memo = HashMap::new();
        self.member_rec(gens, &lows, 0, x.clone(), &mut memo)
    }

    fn member_rec(
        &self,
        gens: &[Rank2Elem],
        lows: &[Rational],
        i: usize,
        rem: Rank2Elem,
        memo: &mut HashMap<(usize, Rank2Elem), bool>,
    ) -> bool {
        if rem.is_zero() {
            return true;
        }
        if i == gens.len() {
            return false;
        }
        if let Some(&b) = memo.get(&(i, rem.clone())) {
            return b;
        }
        let (_, hi) = self.omega.value_bounds(&rem, 0);
        let found = if hi.is_negative() {
            false
        } else {
            let cap = (&hi / &lows[i]).floor().to_integer().to_u64().unwrap_or(0);
            (0..=cap).rev().any(|c| {
                let next = rem.sub(&gens[i].scale(&Rational::from_integer(c.into())));
                self.member_rec(gens, lows, i + 1, next, memo)
            })
        };
        memo.insert((i, rem), found);
        found
    }

    /// Total value order, decided through the enclosure; coordinate order
    /// when the enclosure cannot separate the two values.
    pub fn value_cmp(&self, x: &Rank2Elem, y: &Rank2Elem) -> Ordering {
        if x == y {
            return Ordering::Equal;
        }
        self.omega.sign(&x.sub(y)).unwrap_or_else(|| x.cmp(y))
    }

    /// A linear functional `L(a + bω) = ua + vb` with `L = 1` on every atom.
    pub fn hf_certificate(&self) -> Result<HfOutcome> {
        let Some((u, v)) = solve_functional(&self.atoms) else {
            return Ok(HfOutcome::NotFound(
                "no linear functional takes the value 1 on every atom".into(),
            ));
        };
        let cert = Certificate::issue(Payload::HFLinearFunctional {
            model: self.spec(),
            side: Side::Add,
            atoms: self.atoms.iter().map(|a| self.render(a)).collect(),
            functional: [u.to_string(), v.to_string()],
        })?;
        Ok(HfOutcome::Certified(cert))
    }

    /// Length-2 factorizations `1 + ω = (q + (1-q)ω) + ((1-q) + qω)` for the
    /// `count` largest `q ≤ 1/2` in the family.
    pub fn non_ff_witness(&self, count: usize) -> Result<Certificate> {
        let Presentation::Family { cap } = self.presentation else {
            return Err(Error::unsupported("non-FF families need the rank2family presentation"));
        };
        if count == 0 {
            return Err(Error::invalid("count must be positive"));
        }
        if (cap as usize) < count + 1 {
            return Err(Error::unsupported(format!(
                "cap {cap} is too small for {count} factorizations; need cap >= {}",
                count + 1
            )));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut qs: Vec<Rational> = farey(cap)
            .into_iter()
            .filter(|q| q.is_positive() && q <= &half)
            .collect();
        qs.reverse();
        qs.truncate(count);
        qs.reverse();
        let factorizations = qs
            .iter()
            .map(|q| {
                let a = self.render(&family_atom(q));
                let b = self.render(&family_atom(&(Rational::one() - q)));
                if a == b {
                    vec![Part { atom: a, count: 2 }]
                } else {
                    let (a, b) = if self.value_cmp(&family_atom(q), &family_atom(&(Rational::one() - q)))
                        == Ordering::Greater
                    {
                        (b, a)
                    } else {
                        (a, b)
                    };
                    vec![Part { atom: a, count: 1 }, Part { atom: b, count: 1 }]
                }
            })
            .collect();
        Certificate::issue(Payload::NonFFFamily {
            model: self.spec(),
            side: Side::Add,
            element: self.render(&Rank2Elem::new(Rational::one(), Rational::one())),
            factorizations,
            length: 2,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum HfOutcome {
    Certified(Certificate),
    NotFound(String),
}

/// Solves `u·a + v·b = 1` on all points.
fn solve_functional(pts: &[Rank2Elem]) -> Option<(Rational, Rational)> {
    let p = pts.first()?;
    let q = pts.iter().find(|q| &p.a * &q.b - &p.b * &q.a != Rational::zero());
    let (u, v) = match q {
        Some(q) => {
            let det = &p.a * &q.b - &p.b * &q.a;
            ((&q.b - &p.b) / &det, (&p.a - &q.a) / &det)
        }
        None if !p.a.is_zero() => (Rational::one() / &p.a, Rational::zero()),
        None => (Rational::zero(), Rational::one() / &p.b),
    };
    pts.iter()
        .all(|x| &u * &x.a + &v * &x.b == Rational::one())
        .then_some((u, v))
}

/// Parses a linear expression in `sym` into coordinates.
pub fn parse_coords(s: &str, sym: &str, offset: usize) -> Result<Rank2Elem> {
    let p = parse_expr(s, sym, offset)?;
    if p.degree().unwrap_or(0) > 1 {
        return Err(Error::parse(
            offset,
            format!("`{s}` is not linear in {sym}; products of {sym} are not modeled"),
        ));
    }
    Ok(Rank2Elem::new(p.coeff(0), p.coeff(1)))
}

/// Parses `rank2(g; g; ...; omega=(lo,hi))` or `rank2family(cap=N, omega=(lo,hi))`.
pub fn parse_rank2(spec: &str) -> Result<Rank2Monoid> {
    let s = spec.trim();
    let lead = spec.len() - spec.trim_start().len();
    let parse_enc = |t: &str, at: usize| -> Result<Omega> {
        let inner = t
            .trim()
            .strip_prefix("omega=")
            .map(str::trim)
            .and_then(|x| x.strip_prefix('('))
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::parse(at, "expected omega=(lo,hi)"))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(at, "expected omega=(lo,hi)"))?;
        Ok(Omega::Custom {
            lo: parse_rational(lo.trim()).map_err(|_| Error::parse(at, "bad lower bound"))?,
            hi: parse_rational(hi.trim()).map_err(|_| Error::parse(at, "bad upper bound"))?,
        })
    };
    if let Some(body) = s.strip_prefix("rank2family(") {
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(lead + s.len(), "missing `)`"))?;
        let base = lead + "rank2family(".len();
        let mut cap = None;
        let mut omega = None;
        // split on the comma that is not inside parentheses
        let mut depth = 0;
        let mut start = 0;
        let mut fields = Vec::new();
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    fields.push((start, &body[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        fields.push((start, &body[start..]));
        for (at, f) in fields {
            let f_t = f.trim();
            if let Some(v) = f_t.strip_prefix("cap=") {
                cap = Some(
                    v.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::parse(base + at, "cap must be a positive integer"))?,
                );
            } else if f_t.starts_with("omega=") {
                omega = Some(parse_enc(f_t, base + at)?);
            } else {
                return Err(Error::parse(base + at, format!("unknown field `{f_t}`")));
            }
        }
        let cap = cap.ok_or_else(|| Error::parse(base, "missing cap="))?;
        let omega = omega.ok_or_else(|| Error::parse(base, "missing omega=(lo,hi)"))?;
        return Rank2Monoid::new(omega, Presentation::Family { cap });
    }
    let body = s
        .strip_prefix("rank2(")
        .ok_or_else(|| Error::parse(lead, "expected rank2(...) or rank2family(...)"))?
        .strip_suffix(')')
        .ok_or_else(|| Error::parse(lead + s.len(), "missing `)`"))?;
    let base = lead + "rank2(".len();
    let mut fields = Vec::new();
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        if ch == ';' {
            fields.push((start, &body[start..i]));
            start = i + 1;
        }
    }
    fields.push((start, &body[start..]));
    let mut omega = None;
    let mut gens_src = Vec::new();
    for (at, f) in fields {
        if f.trim().starts_with("omega=") {
            omega = Some(parse_enc(f, base + at)?);
        } else {
            gens_src.push((at, f));
        }
    }
    let uses_pi = gens_src.iter().any(|(_, f)| f.contains("pi"));
    let omega = match (omega, uses_pi) {
        (Some(_), true) => {
            return Err(Error::parse(base, "pi and omega cannot be mixed"));
        }
        (Some(o), false) => o,
        (None, _) => Omega::Pi,
    };
    let sym = omega.symbol();
    let gens = gens_src
        .into_iter()
        .map(|(at, f)| parse_coords(f, sym, base + at))
        .collect::<Result<Vec<_>>>()?;
    Rank2Monoid::new(omega, Presentation::Generators(gens))
}

/// (M, +) for a rank-2 monoid.
#[derive(Clone, Debug)]
pub struct Rank2Add {
    pub m: Rank2Monoid,
}

impl MonoidView for Rank2Add {
    type Elem = Rank2Elem;

    fn describe(&self) -> String {
        format!("({}, +)", self.m.spec())
    }

    fn identity(&self) -> Rank2Elem {
        Rank2Elem::zero()
    }

    fn is_member(&self, x: &Rank2Elem) -> bool {
        self.m.contains(x)
    }

    fn compose(&self, x: &Rank2Elem, y: &Rank2Elem) -> Rank2Elem {
        x.add(y)
    }

    fn divide(&self, x: &Rank2Elem, y: &Rank2Elem) -> Option<Rank2Elem> {
        let z = x.sub(y);
        self.m.contains(&z).then_some(z)
    }

    fn value_cmp(&self, a: &Rank2Elem, b: &Rank2Elem) -> Ordering {
        self.m.value_cmp(a, b)
    }

    fn render(&self, x: &Rank2Elem) -> String {
        self.m.render(x)
    }

    fn parse_elem(&self, s: &str) -> Result<Rank2Elem> {
        self.m.parse_elem(s)
    }

    fn atom_rule(&self, x: &Rank2Elem) -> Option<bool> {
        self.m.contains(x).then(|| self.m.atoms.contains(x))
    }

    fn divisor_candidates(&self, x: &Rank2Elem, budget: &SearchBudget) -> Candidates<Rank2Elem> {
        let a = self.atoms_dividing(x, budget);
        Candidates::complete(a.items.into_iter().filter(|y| y != x).collect())
    }

    fn atoms_dividing(&self, x: &Rank2Elem, _budget: &SearchBudget) -> Candidates<Rank2Elem> {
        let mut items: Vec<Rank2Elem> = self
            .m
            .atoms
            .iter()
            .filter(|a| self.divide(x, a).is_some())
            .cloned()
            .collect();
        items.sort_by(|a, b| self.value_cmp(a, b));
        Candidates::complete(items)
    }

    fn finite_atoms(&self) -> Option<Vec<Rank2Elem>> {
        Some(self.m.atoms.clone())
    }

    fn linear_coords(&self, x: &Rank2Elem) -> Option<(Rational, Rational)> {
        Some((x.a.clone(), x.b.clone()))
    }
}

impl fmt::Display for Rank2Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::kernel::length_set;

    #[test]
    fn pi_monoid() {
        let m = parse_rank2("rank2(pi; 2; (pi+2)/2)").unwrap();
        assert_eq!(m.spec(), "rank2(pi; 2; (pi+2)/2)");
        assert_eq!(m.atoms().len(), 3);
        match m.hf_certificate().unwrap() {
            HfOutcome::Certified(c) => match c.payload {
                Payload::HFLinearFunctional { functional, .. } => {
                    assert_eq!(functional, ["1/2".to_string(), "1".to_string()])
                }
                _ => unreachable!(),
            },
            HfOutcome::NotFound(r) => panic!("{r}"),
        }
        let v = Rank2Add { m };
        let x = v.parse_elem("2pi + 4").unwrap();
        let (l, complete) = length_set(&v, &x, &SearchBudget::default()).unwrap();
        assert!(complete);
        assert_eq!(l.into_iter().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn family() {
        let m = parse_rank2("rank2family(cap=3, omega=(3/2,8/5))").unwrap();
        let qs: Vec<Rational> = m.atoms().iter().map(|a| a.a.clone()).collect();
        assert_eq!(qs, vec![int(0), rat(1, 3), rat(1, 2), rat(2, 3), int(1)]);
        let m4 = parse_rank2("rank2family(cap=4, omega=(3/2,8/5))").unwrap();
        let c = m4.non_ff_witness(3).unwrap();
        match &c.payload {
            Payload::NonFFFamily { factorizations, element, .. } => {
                assert_eq!(element, "omega+1");
                assert_eq!(factorizations.len(), 3);
                assert_eq!(factorizations[2], vec![Part { atom: "(omega+1)/2".into(), count: 2 }]);
            }
            _ => unreachable!(),
        }
        assert!(m4.non_ff_witness(1).is_ok());
        let m2 = parse_rank2("rank2family(cap=2, omega=(3/2,8/5))").unwrap();
        assert!(matches!(m2.non_ff_witness(3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn collinear_has_no_functional() {
        let m = parse_rank2("rank2(2omega; 3omega; omega=(3/2,8/5))").unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!(matches!(m.hf_certificate().unwrap(), HfOutcome::NotFound(_)));
        let free = parse_rank2("rank2(1; omega; omega=(3/2,8/5))").unwrap();
        assert!(matches!(free.hf_certificate().unwrap(), HfOutcome::Certified(_)));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_rank2("rank2(pi^2)").is_err());
        assert!(parse_rank2("rank2(pi; omega=(3/2,2))").is_err());
        assert!(parse_rank2("rank2(1-pi)").is_err());
        assert!(parse_rank2("rank2family(cap=3)").is_err());
    }
}
