//! Exponential semirings E(M): formal ℕ-combinations of symbols e^m over a
//! finitely generated Puiseux monoid M, free as an additive monoid.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::primes::{first_primes, primes_up_to};
use crate::arith::rational::parse_rational;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::kernel::{
    Candidates, Certificate, Factorization, FactorizationSet, MonoidView, Payload, SearchBudget,
};
use crate::model::Side;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExpKind {
    /// ⟨1/p : p prime ≤ P⟩
    UnitFractions(u64),
    /// ⟨⌊√p⌋/p : p prime ≤ P⟩
    FloorSqrt(u64),
    /// ⟨(p_{2n}²+1)/p_{2n}, (p_{2n+1}+1)/p_{2n+1} : 1 ≤ n ≤ K⟩
    MixedSquares(u32),
    Generated(Vec<Rational>),
}

/// A finitely generated Puiseux monoid.
#[derive(Clone, Debug)]
pub struct ExponentMonoid {
    kind: ExpKind,
    atoms: Vec<Rational>,
    lcm: BigInt,
    memo: RefCell<HashMap<BigInt, bool>>,
}

impl PartialEq for ExponentMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for ExponentMonoid {}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn rq(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl ExponentMonoid {
    pub fn new(kind: ExpKind) -> Result<Self> {
        let gens: Vec<Rational> = match &kind {
            ExpKind::UnitFractions(p) => primes_up_to(*p).into_iter().map(|p| rq(1, p)).collect(),
            ExpKind::FloorSqrt(p) => primes_up_to(*p)
                .into_iter()
                .map(|p| rq(isqrt(p), p))
                .collect(),
            ExpKind::MixedSquares(k) => {
                let ps = first_primes(2 * *k as usize + 1);
                (1..=*k as usize)
                    .flat_map(|n| {
                        let a = ps[2 * n - 1];
                        let b = ps[2 * n];
                        [rq(a * a + 1, a), rq(b + 1, b)]
                    })
                    .collect()
            }
            ExpKind::Generated(g) => g.clone(),
        };
        if gens.is_empty() {
            return Err(Error::invalid("the exponent monoid needs at least one generator"));
        }
        if gens.iter().any(|g| !g.is_positive()) {
            return Err(Error::invalid("generators must be positive"));
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let lcm = gens.iter().fold(BigInt::one(), |a, g| a.lcm(g.denom()));
        let mut m = ExponentMonoid {
            kind,
            atoms: gens.clone(),
            lcm,
            memo: RefCell::new(HashMap::new()),
        };
        // keep only generators outside the monoid of the others
        let atoms: Vec<Rational> = gens
            .iter()
            .filter(|g| {
                let others: Vec<Rational> = gens.iter().filter(|h| h != g).cloned().collect();
                !member_of(&others, &m.lcm, g)
            })
            .cloned()
            .collect();
        m.atoms = atoms;
        Ok(m)
    }

    pub fn kind(&self) -> &ExpKind {
        &self.kind
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn spec_inner(&self) -> String {
        match &self.kind {
            ExpKind::UnitFractions(p) => format!("unitfrac<={p}"),
            ExpKind::FloorSqrt(p) => format!("floorsqrt<={p}"),
            ExpKind::MixedSquares(k) => format!("mixedsq<={k}"),
            ExpKind::Generated(g) => {
                let v: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("gen:{}", v.join(","))
            }
        }
    }

    pub fn spec(&self) -> String {
        format!("E({})", self.spec_inner())
    }

    pub fn contains(&self, t: &Rational) -> bool {
        if t.is_negative() {
            return false;
        }
        if t.is_zero() {
            return true;
        }
        let scaled = t * Rational::from_integer(self.lcm.clone());
        if !scaled.is_integer() {
            return false;
        }
        let key = scaled.to_integer();
        if let Some(&b) = self.memo.borrow().get(&key) {
            return b;
        }
        let b = member_of(&self.atoms, &self.lcm, t);
        self.memo.borrow_mut().insert(key, b);
        b
    }

    /// Additive divisors of `t` in M: `{d ∈ M : t - d ∈ M}`, ascending.
    pub fn divisors(&self, t: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .members_up_to(t)
            .into_iter()
            .filter(|d| self.contains(&(t - d)))
            .collect();
        out.sort();
        out
    }

    /// All members of M in `[0, t]`.
    pub fn members_up_to(&self, t: &Rational) -> BTreeSet<Rational> {
        let mut out = BTreeSet::new();
        fn rec(atoms: &[Rational], i: usize, acc: Rational, t: &Rational, out: &mut BTreeSet<Rational>) {
            if i == atoms.len() {
                out.insert(acc);
                return;
            }
            let mut v = acc;
            while &v <= t {
                rec(atoms, i + 1, v.clone(), t, out);
                v += &atoms[i];
            }
        }
        rec(&self.atoms, 0, Rational::zero(), t, &mut out);
        out
    }

    /// Additive factorizations of `m` over the atoms of M, as count vectors.
    pub fn factorizations(&self, m: &Rational, budget: &SearchBudget) -> Result<(Vec<Vec<u64>>, bool)> {
        if !self.contains(m) {
            return Err(Error::invalid(format!("{m} is not in {}", self.spec_inner())));
        }
        let mut out = Vec::new();
        let mut nodes = 0usize;
        let cap = budget.max_candidates.saturating_mul(10);
        let mut complete = true;
        let mut cur = vec![0u64; self.atoms.len()];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            atoms: &[Rational],
            i: usize,
            rem: Rational,
            cur: &mut Vec<u64>,
            out: &mut Vec<Vec<u64>>,
            nodes: &mut usize,
            cap: usize,
            complete: &mut bool,
        ) {
            *nodes += 1;
            if *nodes > cap {
                *complete = false;
                return;
            }
            if rem.is_zero() {
                out.push(cur.clone());
                return;
            }
            if i == atoms.len() {
                return;
            }
            let maxc = (&rem / &atoms[i]).floor().to_integer().to_u64().unwrap_or(0);
            for c in (0..=maxc).rev() {
                cur[i] = c;
                let next = &rem - &atoms[i] * Rational::from_integer(BigInt::from(c));
                rec(atoms, i + 1, next, cur, out, nodes, cap, complete);
            }
            cur[i] = 0;
        }
        rec(&self.atoms, 0, m.clone(), &mut cur, &mut out, &mut nodes, cap, &mut complete);
        Ok((out, complete))
    }

    /// Additive factorizations of `m` in M as a factorization set over the
    /// atoms of M.
    pub fn exp_monoid_factorizations(
        &self,
        m: &Rational,
        budget: &SearchBudget,
    ) -> Result<FactorizationSet<Rational>> {
        let (vs, complete) = self.factorizations(m, budget)?;
        let view = MonoidOf(self);
        let facts = vs
            .iter()
            .map(|v| {
                let parts: Vec<(Rational, usize)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(i, &c)| (self.atoms[i].clone(), c as usize))
                    .collect();
                Factorization::from_parts(&view, &parts)
            })
            .collect();
        Ok(FactorizationSet::new(&view, m.clone(), facts, complete))
    }
}

/// The exponent monoid as a view, used for rendering factorizations of M.
struct MonoidOf<'a>(&'a ExponentMonoid);

impl MonoidView for MonoidOf<'_> {
    type Elem = Rational;
    fn describe(&self) -> String {
        self.0.spec_inner()
    }
    fn identity(&self) -> Rational {
        Rational::zero()
    }
    fn is_member(&self, x: &Rational) -> bool {
        self.0.contains(x)
    }
    fn compose(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
    fn divide(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let z = x - y;
        self.0.contains(&z).then_some(z)
    }
    fn render(&self, x: &Rational) -> String {
        x.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }
    fn divisor_candidates(&self, x: &Rational, _b: &SearchBudget) -> Candidates<Rational> {
        Candidates::complete(
            self.0
                .divisors(x)
                .into_iter()
                .filter(|d| !d.is_zero() && d != x)
                .collect(),
        )
    }
}

/// Knapsack membership of `t` in the monoid generated by `gens`, over the
/// lattice (1/lcm)ℤ.
fn member_of(gens: &[Rational], lcm: &BigInt, t: &Rational) -> bool {
    let scaled = t * Rational::from_integer(lcm.clone());
    if !scaled.is_integer() || scaled.is_negative() {
        return false;
    }
    let target = scaled.to_integer();
    let mut w: Vec<BigInt> = gens
        .iter()
        .map(|g| (g * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    w.sort_by(|a, b| b.cmp(a));
    let mut memo: HashMap<(usize, BigInt), bool> = HashMap::new();
    fn rec(w: &[BigInt], i: usize, rem: BigInt, memo: &mut HashMap<(usize, BigInt), bool>) -> bool {
        if rem.is_zero() {
            return true;
        }
        if i == w.len() {
            return false;
        }
        if i + 1 == w.len() {
            return (&rem % &w[i]).is_zero();
        }
        if let Some(&b) = memo.get(&(i, rem.clone())) {
            return b;
        }
        let mut c = &rem / &w[i];
        let mut found = false;
        loop {
            if rec(w, i + 1, &rem - &c * &w[i], memo) {
                found = true;
                break;
            }
            if c.is_zero() {
                break;
            }
            c -= 1;
        }
        memo.insert((i, rem), found);
        found
    }
    rec(&w, 0, target, &mut memo)
}

/// A nonzero formal sum Σ c_m e^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpSum(BTreeMap<Rational, BigUint>);

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(Rational::zero(), BigUint::one())
    }

    pub fn term(m: Rational, c: BigUint) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(m, c);
        }
        ExpSum(t)
    }

    pub fn exp(m: Rational) -> Self {
        Self::term(m, BigUint::one())
    }

    pub fn terms(&self) -> &BTreeMap<Rational, BigUint> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `Some(m)` when the sum is the single symbol e^m.
    pub fn as_exp(&self) -> Option<&Rational> {
        match self.0.iter().next() {
            Some((m, c)) if self.0.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn max_exp(&self) -> Option<&Rational> {
        self.0.keys().next_back()
    }

    pub fn min_exp(&self) -> Option<&Rational> {
        self.0.keys().next()
    }

    pub fn max_coeff(&self) -> BigUint {
        self.0.values().max().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut t = self.0.clone();
        for (m, c) in &other.0 {
            *t.entry(m.clone()).or_default() += c;
        }
        ExpSum(t)
    }

    /// Convolution of exponents.
    pub fn multiply(&self, other: &ExpSum) -> ExpSum {
        let mut t: BTreeMap<Rational, BigUint> = BTreeMap::new();
        for (a, c) in &self.0 {
            for (b, d) in &other.0 {
                *t.entry(a + b).or_default() += c * d;
            }
        }
        ExpSum(t)
    }

    /// The exact quotient `self / d` if it has nonnegative coefficients.
    pub fn divide(&self, d: &ExpSum) -> Option<ExpSum> {
        let (dmax, dc) = d.0.iter().next_back()?;
        let dmin = d.min_exp()?.clone();
        let floor = self.min_exp()? - &dmin;
        let mut rem: BTreeMap<Rational, BigInt> = self
            .0
            .iter()
            .map(|(m, c)| (m.clone(), BigInt::from(c.clone())))
            .collect();
        let dc = BigInt::from(dc.clone());
        let mut q: BTreeMap<Rational, BigUint> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let e = &m - dmax;
            if e < floor || !c.is_positive() || !(&c % &dc).is_zero() {
                return None;
            }
            let k = &c / &dc;
            for (b, bc) in &d.0 {
                let key = &e + b;
                let v = rem.entry(key.clone()).or_default();
                *v -= &k * BigInt::from(bc.clone());
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            q.insert(e, k.to_biguint().unwrap());
        }
        Some(ExpSum(q))
    }

    pub fn parse(s: &str) -> Result<ExpSum> {
        let mut out = ExpSum::zero();
        let mut pos = 0;
        for raw in s.split('+') {
            let start = pos + raw.len() - raw.trim_start().len();
            pos += raw.len() + 1;
            let t = raw.trim();
            if t.is_empty() {
                return Err(Error::parse(start, "empty term"));
            }
            let (coef, exp) = match t.find('e') {
                None => (t, None),
                Some(i) => (t[..i].trim_end_matches('*').trim(), Some(t[i + 1..].trim())),
            };
            let c: BigUint = if coef.is_empty() {
                BigUint::one()
            } else {
                coef.parse()
                    .map_err(|_| Error::parse(start, format!("bad coefficient `{coef}`")))?
            };
            let m = match exp {
                None => Rational::zero(),
                Some("") => Rational::one(),
                Some(e) => {
                    let e = e
                        .strip_prefix('^')
                        .ok_or_else(|| Error::parse(start, "expected `^` after `e`"))?
                        .trim();
                    let e = e
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .unwrap_or(e);
                    parse_rational(e).map_err(|_| Error::parse(start, format!("bad exponent `{e}`")))?
                }
            };
            if m.is_negative() {
                return Err(Error::parse(start, "negative exponent"));
            }
            out = out.add(&ExpSum::term(m, c));
        }
        Ok(out)
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}")?;
            }
            if m.is_integer() {
                write!(f, "e^{m}")?;
            } else {
                write!(f, "e^({m})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ExpSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (m, c) in &self.0 {
            match c.to_u64() {
                Some(v) => map.serialize_entry(&m.to_string(), &v)?,
                None => map.serialize_entry(&m.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

/// Divisors of `s` in (E(M)•, ·). Every exponent q of a divisor f satisfies
/// `q + max(s/f) ∈ supp s`, which confines the supports to shifts of supp s.
pub fn divisors_mult(m: &ExponentMonoid, s: &ExpSum, budget: &SearchBudget) -> Candidates<ExpSum> {
    let Some(top) = s.max_exp().cloned() else {
        return Candidates::complete(Vec::new());
    };
    let supp: Vec<Rational> = s.terms().keys().cloned().collect();
    let bmax = s.max_coeff().to_u64().unwrap_or(u64::MAX);
    let mut out = BTreeSet::new();
    let mut tried = 0usize;
    let mut complete = true;
    'outer: for a in m.divisors(&top) {
        let shift = &top - &a;
        let support: Vec<Rational> = supp
            .iter()
            .map(|t| t - &shift)
            .filter(|q| q <= &a && m.contains(q))
            .collect();
        // `a` is the top exponent of f and must be used
        let rest: Vec<Rational> = support.iter().filter(|q| *q != &a).cloned().collect();
        let mut coeffs = vec![0u64; rest.len()];
        loop {
            for lead in 1..=bmax {
                tried += 1;
                if tried > budget.max_candidates {
                    complete = false;
                    break 'outer;
                }
                let mut f = ExpSum::term(a.clone(), BigUint::from(lead));
                for (q, &c) in rest.iter().zip(&coeffs) {
                    f = f.add(&ExpSum::term(q.clone(), BigUint::from(c)));
                }
                if let Some(g) = s.divide(&f) {
                    if g.terms().keys().all(|q| m.contains(q)) {
                        out.insert(f);
                    }
                }
            }
            // odometer over the remaining coefficients in [0, bmax]
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    continue 'outer;
                }
                if coeffs[i] < bmax {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
    Candidates {
        items: out.into_iter().collect(),
        complete,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClosedReport {
    pub trials: usize,
    pub divisors_checked: usize,
    pub probes: usize,
    pub violations: Vec<String>,
}

/// Splits random e^m exhaustively and probes random multi-term candidates;
/// every divisor found must be a single symbol e^r.
pub fn check_divisor_closed<R: Rng>(
    m: &ExponentMonoid,
    trials: usize,
    rng: &mut R,
) -> DivisorClosedReport {
    let mut report = DivisorClosedReport {
        trials,
        divisors_checked: 0,
        probes: 0,
        violations: Vec::new(),
    };
    let budget = SearchBudget {
        max_length: 12,
        max_exponent: 12,
        max_candidates: 100_000,
    };
    for _ in 0..trials {
        let k = rng.gen_range(0..=3);
        let mut t = Rational::zero();
        for _ in 0..k {
            t += &m.atoms[rng.gen_range(0..m.atoms.len())];
        }
        let s = ExpSum::exp(t.clone());
        let divs = divisors_mult(m, &s, &budget);
        for f in &divs.items {
            report.divisors_checked += 1;
            let g = s.divide(f);
            let ok = f.as_exp().is_some() && g.as_ref().and_then(|g| g.as_exp()).is_some();
            if !ok {
                report.violations.push(format!("e^({t}) = ({f})·({})", g.unwrap_or_default()));
            }
        }
        // random candidate with two or three terms drawn from D(t)
        let d = m.divisors(&t);
        if d.len() >= 2 {
            let n = rng.gen_range(2..=3usize.min(d.len()));
            let mut f = ExpSum::zero();
            for _ in 0..n {
                let q = d[rng.gen_range(0..d.len())].clone();
                f = f.add(&ExpSum::term(q, BigUint::from(rng.gen_range(1u32..=3))));
            }
            report.probes += 1;
            if f.as_exp().is_none() {
                if let Some(g) = s.divide(&f) {
                    report.violations.push(format!("e^({t}) = ({f})·({g})"));
                }
            }
        }
    }
    report
}

/// [`check_divisor_closed`] with a ChaCha generator seeded by `seed`.
pub fn check_divisor_closed_seeded(m: &ExponentMonoid, trials: usize, seed: u64) -> DivisorClosedReport {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    check_divisor_closed(m, trials, &mut rng)
}

#[derive(Clone, Debug)]
pub enum AccpProbe {
    StableUpTo { length: usize, reason: String },
    FailChain(Certificate),
}

/// Looks for a self-similar chain `x = σ_c(x)·d` with σ_c(e^r) = e^(cr), 0 < c < 1
/// and c·M ⊆ M. Such a relation would iterate to a chain that never
/// stabilizes; none found means stable up to the requested length.
pub fn accp_probe(m: &ExponentMonoid, chain_length: usize, budget: &SearchBudget) -> Result<AccpProbe> {
    let maxd = budget.max_exponent.max(2) as u64;
    for b in 2..=maxd {
        for a in 1..b {
            if a.gcd(&b) != 1 {
                continue;
            }
            let c = rq(a, b);
            if !m.atoms.iter().all(|g| m.contains(&(g * &c))) {
                continue;
            }
            // x = e^g for a generator g: x = e^(cg)·e^((1-c)g)
            for g in &m.atoms {
                let d = g * (Rational::one() - &c);
                if !m.contains(&d) || d.is_zero() {
                    continue;
                }
                let mut chain = Vec::new();
                let mut diffs = Vec::new();
                let mut x = g.clone();
                for _ in 0..=chain_length {
                    chain.push(ExpSum::exp(x.clone()).to_string());
                    diffs.push(ExpSum::exp(&x * (Rational::one() - &c)).to_string());
                    x = &x * &c;
                }
                diffs.pop();
                let cert = Certificate::issue(Payload::AccpFailChain {
                    model: m.spec(),
                    side: Side::Mul,
                    chain,
                    differences: diffs,
                    construction: None,
                })?;
                return Ok(AccpProbe::FailChain(cert));
            }
        }
    }
    Ok(AccpProbe::StableUpTo {
        length: chain_length,
        reason: format!(
            "no contraction e^r -> e^(cr) with 0 < c < 1, den(c) <= {maxd} maps M into itself"
        ),
    })
}

/// (E(M), +): free on {e^m : m ∈ M}.
#[derive(Clone, Debug)]
pub struct ExpAdd {
    pub m: ExponentMonoid,
}

impl MonoidView for ExpAdd {
    type Elem = ExpSum;

    fn describe(&self) -> String {
        format!("({}, +)", self.m.spec())
    }

    fn identity(&self) -> ExpSum {
        ExpSum::zero()
    }

    fn is_member(&self, x: &ExpSum) -> bool {
        x.terms().keys().all(|q| self.m.contains(q))
    }

    fn compose(&self, x: &ExpSum, y: &ExpSum) -> ExpSum {
        x.add(y)
    }

    fn divide(&self, x: &ExpSum, y: &ExpSum) -> Option<ExpSum> {
        let mut t = x.terms().clone();
        for (q, c) in y.terms() {
            let v = t.get_mut(q)?;
            if &*v < c {
                return None;
            }
            *v -= c;
            if v.is_zero() {
                t.remove(q);
            }
        }
        Some(ExpSum(t))
    }

    fn render(&self, x: &ExpSum) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<ExpSum> {
        if s.trim() == "0" {
            return Ok(ExpSum::zero());
        }
        ExpSum::parse(s)
    }

    fn atom_rule(&self, x: &ExpSum) -> Option<bool> {
        Some(x.as_exp().is_some())
    }

    fn divisor_candidates(&self, x: &ExpSum, budget: &SearchBudget) -> Candidates<ExpSum> {
        let a = self.atoms_dividing(x, budget);
        Candidates::complete(a.items.into_iter().filter(|y| y != x).collect())
    }

    fn atoms_dividing(&self, x: &ExpSum, _budget: &SearchBudget) -> Candidates<ExpSum> {
        Candidates::complete(x.terms().keys().map(|q| ExpSum::exp(q.clone())).collect())
    }
}

/// (E(M)•, ·).
#[derive(Clone, Debug)]
pub struct ExpMul {
    pub m: ExponentMonoid,
}

impl MonoidView for ExpMul {
    type Elem = ExpSum;

    fn describe(&self) -> String {
        format!("({}•, ·)", self.m.spec())
    }

    fn identity(&self) -> ExpSum {
        ExpSum::one()
    }

    fn is_member(&self, x: &ExpSum) -> bool {
        !x.is_zero() && x.terms().keys().all(|q| self.m.contains(q))
    }

    fn compose(&self, x: &ExpSum, y: &ExpSum) -> ExpSum {
        x.multiply(y)
    }

    fn divide(&self, x: &ExpSum, y: &ExpSum) -> Option<ExpSum> {
        x.divide(y).filter(|z| self.is_member(z))
    }

    fn render(&self, x: &ExpSum) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<ExpSum> {
        ExpSum::parse(s)
    }

    fn atom_rule(&self, x: &ExpSum) -> Option<bool> {
        // e(M) is divisor-closed, so e^a is an atom iff a is an atom of M
        x.as_exp().map(|a| self.m.atoms.contains(a))
    }

    fn divisor_candidates(&self, x: &ExpSum, budget: &SearchBudget) -> Candidates<ExpSum> {
        if let Some(t) = x.as_exp() {
            let items = self
                .m
                .divisors(t)
                .into_iter()
                .filter(|d| !d.is_zero() && d != t)
                .map(ExpSum::exp)
                .collect();
            return Candidates::complete(items);
        }
        let mut c = divisors_mult(&self.m, x, budget);
        c.items.retain(|f| f != x && *f != ExpSum::one());
        c
    }

    fn atoms_dividing(&self, x: &ExpSum, budget: &SearchBudget) -> Candidates<ExpSum> {
        if let Some(t) = x.as_exp() {
            let items = self
                .m
                .atoms
                .iter()
                .filter(|a| self.m.contains(&(t - *a)))
                .map(|a| ExpSum::exp(a.clone()))
                .collect();
            return Candidates::complete(items);
        }
        let cands = self.divisor_candidates(x, budget);
        let mut complete = cands.complete;
        let mut items = Vec::new();
        for y in cands.items.iter().chain(std::iter::once(x)) {
            match crate::kernel::is_atom(self, y, budget) {
                Ok(r) if r.is_atom() => items.push(y.clone()),
                Ok(crate::kernel::AtomResult::Unknown) => complete = false,
                _ => {}
            }
        }
        items.sort();
        items.dedup();
        Candidates { items, complete }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::kernel::{is_atom, length_set, AtomResult};

    fn e(s: &str) -> ExpSum {
        ExpSum::parse(s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(e("e^(1/2)").multiply(&e("e^(1/2)")), e("e^1"));
        assert_eq!(e("1 + e^(1/2)").multiply(&e("1 + e^(1/2)")).to_string(), "1 + 2e^(1/2) + e^1");
        let s = e("e^2 + e^3");
        assert_eq!(s.multiply(&s), e("e^2").multiply(&e("e^2 + 2e^3 + e^4")));
        assert_eq!(s.multiply(&s).divide(&s), Some(s.clone()));
        assert_eq!(e("e^2 + e^3").divide(&e("e")), Some(e("e^1 + e^2")));
        assert_eq!(e("e^2 + e^3").divide(&e("2")), None);
    }

    #[test]
    fn monoid_kinds() {
        let u = ExponentMonoid::new(ExpKind::UnitFractions(5)).unwrap();
        assert_eq!(u.atoms(), &[rat(1, 5), rat(1, 3), rat(1, 2)]);
        let f = ExponentMonoid::new(ExpKind::FloorSqrt(13)).unwrap();
        assert!(f.atoms().contains(&rat(3, 13)));
        let mx = ExponentMonoid::new(ExpKind::MixedSquares(2)).unwrap();
        assert_eq!(mx.atoms(), &[rat(12, 11), rat(6, 5), rat(10, 3), rat(50, 7)]);
        let g = ExponentMonoid::new(ExpKind::Generated(vec![int(2), int(3), int(4)])).unwrap();
        assert_eq!(g.atoms(), &[int(2), int(3)]);
    }

    #[test]
    fn e_one_lengths() {
        let m = ExponentMonoid::new(ExpKind::UnitFractions(5)).unwrap();
        let v = ExpMul { m };
        let (l, complete) = length_set(&v, &e("e^1"), &SearchBudget::default()).unwrap();
        assert!(complete);
        assert_eq!(l.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
    }

    #[test]
    fn atoms_of_e23() {
        let m = ExponentMonoid::new(ExpKind::Generated(vec![int(2), int(3)])).unwrap();
        let v = ExpMul { m };
        let b = SearchBudget::default();
        assert_eq!(is_atom(&v, &e("e^2 + e^3"), &b).unwrap(), AtomResult::Atom);
        assert_eq!(is_atom(&v, &e("e^2 + 2e^3 + e^4"), &b).unwrap(), AtomResult::Atom);
        assert!(matches!(is_atom(&v, &e("e^4 + 2e^5 + e^6"), &b).unwrap(), AtomResult::NotAtom(..)));
        assert_eq!(is_atom(&v, &e("e^3"), &b).unwrap(), AtomResult::Atom);
    }

    #[test]
    fn monoid_factorizations() {
        let g = ExponentMonoid::new(ExpKind::Generated(vec![rat(1, 2), rat(1, 3)])).unwrap();
        let fs = g.exp_monoid_factorizations(&rat(5, 6), &SearchBudget::default()).unwrap();
        assert_eq!(fs.factorizations.len(), 1);
        assert_eq!(fs.factorizations[0].len(), 2);
        let f = ExponentMonoid::new(ExpKind::FloorSqrt(13)).unwrap();
        let fs = f.exp_monoid_factorizations(&rat(3, 13), &SearchBudget::default()).unwrap();
        assert_eq!(fs.lengths().into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn divisor_closed_sample() {
        let m = ExponentMonoid::new(ExpKind::Generated(vec![int(2), int(3)])).unwrap();
        let r = check_divisor_closed_seeded(&m, 40, 7);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.divisors_checked > 0);
    }

    #[test]
    fn probe_is_stable() {
        let u = ExponentMonoid::new(ExpKind::UnitFractions(5)).unwrap();
        assert!(matches!(
            accp_probe(&u, 6, &SearchBudget::default()).unwrap(),
            AccpProbe::StableUpTo { length: 6, .. }
        ));
    }
}
