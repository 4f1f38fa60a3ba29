//! Cyclic positive semirings ℕ₀[q] (q rational) and ℕ₀[α] (α algebraic).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::primes::{divisors_biguint, factor_biguint};
use crate::arith::rational::{parse_rational, power_exponent_dividing, split_coprime};
use crate::arith::{factor::is_irreducible_over_q, AlgebraicNumber, IntPoly, NatPoly, QPoly, Rational};
use crate::error::{Error, Result};
use crate::kernel::certificate::ChainConstruction;
use crate::kernel::{Candidates, Certificate, MonoidView, Payload, SearchBudget};
use crate::model::Side;

/// Atom horizon n(α).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Horizon {
    /// `α^n = Σ_{j<n} witness[j]·α^j`.
    Finite { n: u32, witness: Vec<String> },
    /// Closed-form: every power of α is an atom.
    Infinite { reason: String },
    /// The additive monoid is not atomic.
    Zero { reason: String },
    UnknownAtLeast { cap: u32 },
}

impl Horizon {
    pub fn is_zero(&self) -> bool {
        matches!(self, Horizon::Zero { .. })
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Horizon::Finite { n, .. } => write!(f, "Finite({n})"),
            Horizon::Infinite { .. } => write!(f, "Infinite"),
            Horizon::Zero { .. } => write!(f, "Zero"),
            Horizon::UnknownAtLeast { cap } => write!(f, "UnknownAtLeast({cap})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(NatPoly),
    No(String),
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// ℕ₀[q] for a positive rational q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicRational {
    q: Rational,
}

impl CyclicRational {
    pub fn new(q: Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::invalid("N0[q] needs q > 0"));
        }
        Ok(CyclicRational { q })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn n(&self) -> BigUint {
        self.q.numer().to_biguint().unwrap()
    }

    pub fn d(&self) -> BigUint {
        self.q.denom().to_biguint().unwrap()
    }

    /// q ∈ ℕ, so the semiring is ℕ₀.
    pub fn is_trivial(&self) -> bool {
        self.q.is_integer()
    }

    /// num(q) = 1 < den(q): the additive monoid has no atoms.
    pub fn is_antimatter(&self) -> bool {
        !self.is_trivial() && self.q.numer().is_one()
    }

    pub fn spec(&self) -> String {
        if self.q.is_one() {
            return "N0".into();
        }
        format!("N0[{}]", self.q)
    }

    pub fn atom_horizon(&self) -> Horizon {
        if self.is_trivial() {
            Horizon::Finite {
                n: 1,
                witness: vec![self.q.to_string()],
            }
        } else if self.is_antimatter() {
            Horizon::Zero {
                reason: format!(
                    "1 = {d}·(1/{d}) and every q^k = {d}·q^(k+1), so no element is an atom",
                    d = self.d()
                ),
            }
        } else {
            Horizon::Infinite {
                reason: format!(
                    "num(q) = {} > 1: the atoms are exactly the powers q^k, k >= 0",
                    self.n()
                ),
            }
        }
    }

    /// First `count` additive atoms `q^0, q^1, ...`, truncated at the horizon.
    pub fn additive_atoms(&self, count: usize) -> Vec<Rational> {
        let limit = match self.atom_horizon() {
            Horizon::Zero { .. } => 0,
            Horizon::Finite { n, .. } => n as usize,
            _ => usize::MAX,
        };
        let mut out = Vec::new();
        let mut p = Rational::one();
        for _ in 0..count.min(limit) {
            out.push(p.clone());
            p *= &self.q;
        }
        out
    }

    /// Exact membership test. `node_cap` bounds the search; `Unknown` is only
    /// returned when the cap is hit.
    pub fn member(&self, t: &Rational, node_cap: Option<usize>) -> Result<Membership> {
        if t.is_negative() {
            return Err(Error::invalid("membership is only defined for t >= 0"));
        }
        if t.is_zero() {
            return Ok(Membership::Yes(NatPoly::from_u64(&[])));
        }
        let n = BigInt::from(self.n());
        let d = BigInt::from(self.d());
        let tden = t.denom().to_biguint().unwrap();
        let j = match power_exponent_dividing(&tden, &self.d()) {
            Some(j) => j,
            None => {
                return Ok(Membership::No(format!(
                    "den({t}) has a prime factor not dividing den(q) = {d}"
                )))
            }
        };
        let big_t = (t * Rational::from_integer(num_traits::pow(d.clone(), j as usize))).to_integer();
        let mut nodes = 0usize;
        let mut coeffs = vec![BigInt::zero(); j as usize + 1];
        match represent(&n, &d, j, big_t, &mut coeffs, &mut nodes, node_cap) {
            Some(true) => Ok(Membership::Yes(
                NatPoly::new(IntPoly::from_dense(&coeffs)).expect("coefficients are nonnegative"),
            )),
            Some(false) => Ok(Membership::No(format!(
                "{t}·{d}^{j} has no representation as Σ c_i·{n}^i·{d}^({j}-i) with c_i >= 0 (exhaustive)"
            ))),
            None => Ok(Membership::Unknown),
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        !t.is_negative() && self.member(t, None).map(|m| m.is_yes()).unwrap_or(false)
    }

    /// x is a multiplicative unit iff 1/x is a member.
    pub fn is_unit_mult(&self, x: &Rational) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::invalid("0 is not in the multiplicative monoid"));
        }
        if !self.contains(x) {
            return Err(Error::invalid(format!("{x} is not a member of {}", self.spec())));
        }
        Ok(self.contains(&x.recip()))
    }

    pub fn is_bireduced(&self) -> bool {
        !self.atom_horizon().is_zero()
    }

    /// For ℕ₀[1/d]: the d-coprime part of the numerator, the image of `x` in the
    /// reduced multiplicative monoid.
    pub fn reduce_mod_units(&self, x: &Rational) -> Result<BigUint> {
        if !self.is_antimatter() {
            return Err(Error::invalid("reduce_mod_units applies to N0[1/d]"));
        }
        if !x.is_positive() || !self.contains(x) {
            return Err(Error::invalid(format!("{x} is not a nonzero member of {}", self.spec())));
        }
        let (_, coprime) = split_coprime(&x.numer().to_biguint().unwrap(), &self.d());
        Ok(coprime)
    }

    /// Proper non-unit divisors of `x` in (ℕ₀[q]•, ·) for num(q) > 1 or q ∈ ℕ,
    /// and whether the list is exhaustive.
    pub fn mult_divisors(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        let d = self.d();
        let n = self.n();
        let (_, bx) = split_coprime(&x.numer().to_biguint().unwrap(), &d);
        let dprimes: Vec<(BigUint, u32)> = factor_biguint(&d);
        let mut out = Vec::new();
        let mut complete = true;
        for b in divisors_biguint(&bx) {
            let bz = &bx / &b;
            let ranges: Vec<(i64, i64)> = if dprimes.len() == 1 {
                // d = p^a: a member y = b·p^e with e < 0 has clearing exponent
                // j = ⌈-e/a⌉ and needs n^j <= y·d^j <= b·p^(a-1); likewise for x/y.
                let (p, a) = &dprimes[0];
                let vx = valuation(x, p);
                let cap = |c: &BigUint| -> i64 {
                    let lim = c * p.pow(a - 1);
                    let mut j = 0i64;
                    let mut pw = BigUint::one();
                    if n > BigUint::one() {
                        while &pw * &n <= lim {
                            pw *= &n;
                            j += 1;
                        }
                    }
                    j * *a as i64
                };
                vec![(-cap(&b), vx + cap(&bz))]
            } else {
                complete = false;
                let e = budget.max_exponent as i64;
                dprimes
                    .iter()
                    .map(|(p, a)| (-e * *a as i64, valuation(x, p) + e * *a as i64))
                    .collect()
            };
            for exps in box_points(&ranges) {
                let mut y = Rational::from_integer(BigInt::from(b.clone()));
                for ((p, _), e) in dprimes.iter().zip(&exps) {
                    let pe = Rational::from_integer(BigInt::from(p.pow(e.unsigned_abs() as u32)));
                    if *e >= 0 {
                        y *= pe;
                    } else {
                        y /= pe;
                    }
                }
                if y.is_one() || &y == x {
                    continue;
                }
                if self.contains(&y) && self.contains(&(x / &y)) {
                    out.push(y);
                }
            }
        }
        out.sort();
        out.dedup();
        Candidates { items: out, complete }
    }

    /// Minimal pair of q.
    pub fn minimal_pair(&self) -> MinimalPair {
        let m = QPoly::from_vec(vec![-self.q.clone(), Rational::one()]);
        minimal_pair(&m).expect("x - q is irreducible")
    }

    /// Chain `x_n = num(q)·q^n` for n = 0..=N with verified differences.
    pub fn accp_fail_chain(&self, len: usize) -> std::result::Result<AccpChain, NoChain> {
        if len == 0 {
            return Err(NoChain {
                transcript: vec!["chain length must be at least 1".into()],
            });
        }
        let mp = self.minimal_pair();
        let dec = decompose(&mp)?;
        let alpha = self.q.clone();
        let eval = |f: &IntPoly| f.eval(&alpha);
        let m_minus = eval(mp.m_minus.as_int());
        let c_val = eval(&dec.c);
        if !(c_val.is_positive()) {
            return Err(NoChain {
                transcript: vec![format!("c(q) = {c_val} is not positive; q >= 1")],
            });
        }
        let s = dec.s;
        let step = num_traits::pow(alpha.clone(), s as usize);
        let mut chain = Vec::new();
        let mut diffs = Vec::new();
        let mut pw = Rational::one();
        for k in 0..=len {
            chain.push(&m_minus * &pw);
            if k < len {
                diffs.push(&c_val * &pw);
            }
            pw *= &step;
        }
        for k in 0..len {
            debug_assert_eq!(chain[k], &chain[k + 1] + &diffs[k]);
        }
        Ok(AccpChain {
            chain,
            differences: diffs,
            pair: mp,
            s,
            c: dec.c,
            transcript: dec.transcript,
        })
    }
}

fn valuation(x: &Rational, p: &BigUint) -> i64 {
    let p = BigInt::from(p.clone());
    let mut v = 0i64;
    let mut n = x.numer().clone();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

fn box_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        let mut next = Vec::new();
        for p in &out {
            for e in lo..=hi {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Tries to write `T = Σ_{i<=j} c_i n^i d^(j-i)`. `None` means the node cap
/// was exceeded.
fn represent(
    n: &BigInt,
    d: &BigInt,
    j: u32,
    t: BigInt,
    coeffs: &mut Vec<BigInt>,
    nodes: &mut usize,
    cap: Option<usize>,
) -> Option<bool> {
    *nodes += 1;
    if cap.is_some_and(|c| *nodes > c) {
        return None;
    }
    if j == 0 {
        coeffs[0] = t;
        return Some(true);
    }
    let nj = num_traits::pow(n.clone(), j as usize);
    if nj > t {
        // c_j = 0 forces d | t; minimal clearing exponents never reach here
        // with t ≢ 0, but deeper levels can.
        if (&t % d).is_zero() {
            coeffs[j as usize] = BigInt::zero();
            return represent(n, d, j - 1, t / d, coeffs, nodes, cap);
        }
        return Some(false);
    }
    // c_j·n^j ≡ t (mod d)
    let inv = nj.mod_floor(d).extended_gcd(d).x.mod_floor(d);
    let mut c = (&t * inv).mod_floor(d);
    while &c * &nj <= t {
        let rest = &t - &c * &nj;
        coeffs[j as usize] = c.clone();
        match represent(n, d, j - 1, rest / d, coeffs, nodes, cap) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        c += d;
    }
    Some(false)
}

/// `ℓ·m = m⁺ - m⁻` with disjoint supports and content 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPair {
    pub ell: String,
    pub m_plus: NatPoly,
    pub m_minus: NatPoly,
}

pub fn minimal_pair(m: &QPoly) -> Result<MinimalPair> {
    let prim = m.to_primitive_int();
    if !is_irreducible_over_q(&prim) {
        return Err(Error::invalid(format!("{m} is not irreducible over Q")));
    }
    let ell = (Rational::from_integer(prim.lc()) / m.monic().lc() / m.lc() * m.lc()).to_integer();
    let plus = IntPoly::from_terms(
        prim.terms()
            .filter(|(_, a)| a.is_positive())
            .map(|(k, a)| (k, a.clone())),
    );
    let minus = IntPoly::from_terms(
        prim.terms()
            .filter(|(_, a)| a.is_negative())
            .map(|(k, a)| (k, -a)),
    );
    Ok(MinimalPair {
        ell: ell.to_string(),
        m_plus: NatPoly::new(plus).unwrap(),
        m_minus: NatPoly::new(minus).unwrap(),
    })
}

/// `m⁺ = a + b·m⁻` with `s ∈ supp b` and `c = a + (b - x^s)·m⁻`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub a: IntPoly,
    pub b: IntPoly,
    pub s: u32,
    pub c: IntPoly,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoChain {
    pub transcript: Vec<String>,
}

impl fmt::Display for NoChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no chain: {}", self.transcript.join("; "))
    }
}

/// Exhaustive search over `b ∈ ℕ₀[x]•` in the box forced by `a >= 0`.
pub fn decompose(mp: &MinimalPair) -> std::result::Result<Decomposition, NoChain> {
    let plus = mp.m_plus.as_int();
    let minus = mp.m_minus.as_int();
    let mut transcript = Vec::new();
    let (dp, dm) = match (plus.degree(), minus.degree()) {
        (Some(dp), Some(dm)) => (dp, dm),
        _ => {
            transcript.push("m+ or m- is zero".into());
            return Err(NoChain { transcript });
        }
    };
    if dp < dm {
        transcript.push(format!("deg m+ = {dp} < deg m- = {dm}: b must be 0"));
        return Err(NoChain { transcript });
    }
    let lcm = minus.lc();
    let bounds: Vec<BigInt> = (0..=dp - dm)
        .map(|k| plus.coeff(k + dm) / &lcm)
        .collect();
    transcript.push(format!(
        "box: {}",
        bounds
            .iter()
            .enumerate()
            .map(|(k, b)| format!("b_{k} in [0, {b}]"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let sizes: Vec<u64> = bounds.iter().map(|b| b.to_u64().unwrap_or(u64::MAX).min(64)).collect();
    let mut cur = vec![0u64; sizes.len()];
    let mut tried = 0u64;
    loop {
        // advance odometer (skips the all-zero vector)
        let mut i = 0;
        loop {
            if i == cur.len() {
                transcript.push(format!("checked {tried} nonzero candidates, none has a >= 0"));
                return Err(NoChain { transcript });
            }
            if cur[i] < sizes[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        tried += 1;
        let b = IntPoly::from_terms(cur.iter().enumerate().map(|(k, &c)| (k as u32, BigInt::from(c))));
        let a = plus - &(&b * minus);
        if a.is_nonnegative() {
            let s = b.low_degree().unwrap();
            let c = &a + &(&(&b - &IntPoly::monomial(BigInt::one(), s)) * minus);
            transcript.push(format!("found b = {b}, a = {a}, s = {s}"));
            return Ok(Decomposition {
                a,
                b,
                s,
                c,
                transcript,
            });
        }
    }
}

#[derive(Clone, Debug)]
pub struct AccpChain {
    pub chain: Vec<Rational>,
    pub differences: Vec<Rational>,
    pub pair: MinimalPair,
    pub s: u32,
    pub c: IntPoly,
    pub transcript: Vec<String>,
}

impl AccpChain {
    /// The chain as a certificate for `(model, +)`.
    pub fn certificate(&self, model: &str) -> Result<Certificate> {
        Certificate::issue(Payload::AccpFailChain {
            model: model.to_string(),
            side: Side::Add,
            chain: self.chain.iter().map(|x| x.to_string()).collect(),
            differences: self.differences.iter().map(|x| x.to_string()).collect(),
            construction: Some(ChainConstruction {
                m_plus: self.pair.m_plus.to_string(),
                m_minus: self.pair.m_minus.to_string(),
                s: self.s,
                c: self.c.to_string(),
            }),
        })
    }
}

/// ℕ₀[α] for a positive real algebraic α.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicAlgebraic {
    alpha: AlgebraicNumber,
}

pub const DEFAULT_HORIZON_CAP: u32 = 12;

impl CyclicAlgebraic {
    pub fn new(alpha: AlgebraicNumber) -> Result<Self> {
        if alpha.cmp_rational(&Rational::zero()) != Ordering::Greater {
            return Err(Error::invalid("N0[alpha] needs alpha > 0"));
        }
        Ok(CyclicAlgebraic { alpha })
    }

    pub fn alpha(&self) -> &AlgebraicNumber {
        &self.alpha
    }

    pub fn spec(&self) -> String {
        format!("N0[{}]", self.alpha)
    }

    pub fn as_rational(&self) -> Option<CyclicRational> {
        self.alpha
            .as_rational()
            .map(|q| CyclicRational::new(q).expect("alpha > 0"))
    }

    pub fn atom_horizon(&self, cap: u32) -> Horizon {
        if let Some(r) = self.as_rational() {
            return r.atom_horizon();
        }
        let m = self.alpha.min_poly();
        let one = Rational::one();
        match self.alpha.cmp_rational(&one) {
            Ordering::Greater => {
                if !self.alpha.is_algebraic_integer() {
                    return Horizon::Infinite {
                        reason: format!(
                            "alpha > 1 and {m} is not monic: a relation α^n = Σ c_j α^j would make α an algebraic integer"
                        ),
                    };
                }
                let deg = self.alpha.degree();
                for n in deg..=cap.max(deg) {
                    if let Some(c) = self.power_relation(n) {
                        return Horizon::Finite {
                            n,
                            witness: c.iter().map(|v| v.to_string()).collect(),
                        };
                    }
                }
                Horizon::UnknownAtLeast { cap }
            }
            _ => {
                // α < 1: no power is a combination of larger ones, so the
                // horizon is ∞ if 1 is an atom and 0 otherwise.
                if let Some(f) = self.decompose_one(cap) {
                    Horizon::Zero {
                        reason: format!("1 = {f} evaluated at alpha"),
                    }
                } else {
                    Horizon::UnknownAtLeast { cap }
                }
            }
        }
    }

    /// Coefficients `c_0..c_{n-1} >= 0` with `α^n = Σ c_j α^j`, by exhaustive
    /// search in the box `c_j <= α^(n-j)`.
    fn power_relation(&self, n: u32) -> Option<Vec<BigInt>> {
        let mut a = self.alpha.clone();
        while a.lo() <= &Rational::one() {
            a = a.refine();
        }
        let a = a.refined_to(&Rational::new(1.into(), 1000.into()));
        let hi = a.hi().clone();
        let lo = a.lo().clone();
        let target = QPoly::monomial(Rational::one(), n as usize);
        let m = QPoly::from_int(self.alpha.min_poly());
        let mut c = vec![BigInt::zero(); n as usize];
        // value budget: α^n <= hi^n
        let budget = num_traits::pow(hi.clone(), n as usize);
        fn rec(
            j: usize,
            c: &mut Vec<BigInt>,
            rem: Rational,
            lo: &Rational,
            target: &QPoly,
            m: &QPoly,
        ) -> bool {
            if j == 0 {
                // c_0 is determined by the reduction of α^n - Σ_{j>=1} c_j α^j.
                let mut p = target.clone();
                for (k, v) in c.iter().enumerate().skip(1) {
                    p = p.sub(&QPoly::monomial(Rational::from_integer(v.clone()), k));
                }
                let r = p.rem(m);
                if r.degree().unwrap_or(0) == 0 {
                    let c0 = r.coeff(0);
                    if c0.is_integer() && !c0.is_negative() {
                        c[0] = c0.to_integer();
                        return true;
                    }
                }
                return false;
            }
            let pj = num_traits::pow(lo.clone(), j);
            let maxc = (&rem / &pj).floor().to_integer();
            let mut v = BigInt::zero();
            while v <= maxc {
                c[j] = v.clone();
                let next = &rem - &pj * Rational::from_integer(v.clone());
                if rec(j - 1, c, next, lo, target, m) {
                    return true;
                }
                v += 1;
            }
            c[j] = BigInt::zero();
            false
        }
        rec(n as usize - 1, &mut c, budget, &lo, &target, &m).then_some(c)
    }

    /// Searches `1 = Σ_{1<=i<=cap} c_i α^i` for α < 1.
    fn decompose_one(&self, cap: u32) -> Option<IntPoly> {
        let a = self.alpha.refined_to(&Rational::new(1.into(), 1000.into()));
        let lo = a.lo().clone().max(Rational::zero());
        if lo.is_zero() {
            return None;
        }
        let m = QPoly::from_int(self.alpha.min_poly());
        let mut c = vec![BigInt::zero(); cap as usize + 1];
        fn rec(
            i: usize,
            cap: usize,
            c: &mut Vec<BigInt>,
            rem: Rational,
            lo: &Rational,
            m: &QPoly,
            nodes: &mut usize,
        ) -> bool {
            *nodes += 1;
            if *nodes > 200_000 {
                return false;
            }
            if i > cap {
                let f = IntPoly::from_dense(c);
                if f.is_zero() {
                    return false;
                }
                let p = QPoly::from_int(&f).sub(&QPoly::one());
                return p.rem(m).is_zero();
            }
            let pi = num_traits::pow(lo.clone(), i);
            let maxc = (&rem / &pi).floor().to_integer();
            let mut v = BigInt::zero();
            while v <= maxc {
                c[i] = v.clone();
                let next = &rem - &pi * Rational::from_integer(v.clone());
                if rec(i + 1, cap, c, next, lo, m, nodes) {
                    return true;
                }
                v += 1;
            }
            c[i] = BigInt::zero();
            false
        }
        // α^i >= lo^i, so Σ c_i lo^i <= 1 bounds the box.
        let mut nodes = 0;
        rec(1, cap as usize, &mut c, Rational::one(), &lo, &m, &mut nodes)
            .then(|| IntPoly::from_dense(&c))
    }

    /// First `count` additive atoms as exponents `j` of `α^j`, or `None` when
    /// the horizon is unknown for α < 1.
    pub fn additive_atoms(&self, count: usize, cap: u32) -> Option<Vec<u32>> {
        match self.atom_horizon(cap) {
            Horizon::Zero { .. } => Some(Vec::new()),
            Horizon::Finite { n, .. } => Some((0..(n as usize).min(count) as u32).collect()),
            Horizon::Infinite { .. } => Some((0..count as u32).collect()),
            Horizon::UnknownAtLeast { cap } => {
                if self.alpha.cmp_rational(&Rational::one()) == Ordering::Greater {
                    Some((0..(cap as usize + 1).min(count) as u32).collect())
                } else {
                    None
                }
            }
        }
    }

    pub fn is_bireduced(&self, cap: u32) -> Option<bool> {
        match self.atom_horizon(cap) {
            Horizon::Zero { .. } => Some(false),
            Horizon::UnknownAtLeast { .. }
                if self.alpha.cmp_rational(&Rational::one()) != Ordering::Greater =>
            {
                None
            }
            _ => Some(true),
        }
    }
}

/// Additive monoid of ℕ₀[q].
#[derive(Clone, Debug)]
pub struct RationalAdd {
    pub s: CyclicRational,
}

impl MonoidView for RationalAdd {
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
        if self.s.is_antimatter() {
            return Some(false);
        }
        if self.s.is_trivial() {
            return Some(x.is_one());
        }
        Some(is_power_of(x, self.s.q()))
    }

    fn divisor_candidates(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        if self.s.is_antimatter() {
            // x = d·(x/d) with x/d a member whenever x is.
            let d = Rational::from_integer(BigInt::from(self.s.d()));
            return Candidates::complete(vec![x / d]);
        }
        let atoms = self.atoms_dividing(x, budget);
        let items = atoms.items.into_iter().filter(|a| a != x).collect();
        Candidates {
            items,
            complete: atoms.complete,
        }
    }

    fn atoms_dividing(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        if self.s.is_antimatter() {
            return Candidates::complete(Vec::new());
        }
        let q = self.s.q().clone();
        let mut items = Vec::new();
        let mut p = Rational::one();
        if q > Rational::one() || self.s.is_trivial() {
            // powers above x cannot divide it
            while &p <= x {
                if self.divide(x, &p).is_some() {
                    items.push(p.clone());
                }
                if self.s.is_trivial() {
                    break;
                }
                p *= &q;
            }
            return Candidates::complete(items);
        }
        for _ in 0..=budget.max_exponent {
            if &p <= x && self.divide(x, &p).is_some() {
                items.push(p.clone());
            }
            p *= &q;
        }
        Candidates::partial(items)
    }
}

fn is_power_of(x: &Rational, q: &Rational) -> bool {
    if q.is_one() {
        return x.is_one();
    }
    let mut p = Rational::one();
    if q < &Rational::one() {
        while &p > x {
            p *= q;
        }
    } else {
        while &p < x {
            p *= q;
        }
    }
    &p == x
}

/// Multiplicative monoid of ℕ₀[q] for num(q) > 1 or q ∈ ℕ.
#[derive(Clone, Debug)]
pub struct RationalMul {
    pub s: CyclicRational,
}

impl MonoidView for RationalMul {
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

    fn divisor_candidates(&self, x: &Rational, budget: &SearchBudget) -> Candidates<Rational> {
        self.s.mult_divisors(x, budget)
    }
}

/// The reduced multiplicative monoid of ℕ₀[1/d]: positive integers coprime
/// to d, elements given by their image under `reduce_mod_units`.
#[derive(Clone, Debug)]
pub struct UnitFractionMul {
    pub s: CyclicRational,
}

impl UnitFractionMul {
    fn d(&self) -> BigUint {
        self.s.d()
    }
}

impl MonoidView for UnitFractionMul {
    type Elem = BigUint;

    fn describe(&self) -> String {
        format!("({}•, ·) modulo units", self.s.spec())
    }

    fn identity(&self) -> BigUint {
        BigUint::one()
    }

    fn is_member(&self, x: &BigUint) -> bool {
        !x.is_zero() && x.gcd(&self.d()).is_one()
    }

    fn compose(&self, x: &BigUint, y: &BigUint) -> BigUint {
        x * y
    }

    fn divide(&self, x: &BigUint, y: &BigUint) -> Option<BigUint> {
        (!y.is_zero() && (x % y).is_zero()).then(|| x / y)
    }

    fn render(&self, x: &BigUint) -> String {
        x.to_string()
    }

    /// Accepts any member of ℕ₀[1/d] and maps it to its reduced image.
    fn parse_elem(&self, s: &str) -> Result<BigUint> {
        self.s.reduce_mod_units(&parse_rational(s)?)
    }

    fn divisor_candidates(&self, x: &BigUint, _budget: &SearchBudget) -> Candidates<BigUint> {
        let items = divisors_biguint(x)
            .into_iter()
            .filter(|y| !y.is_one() && y != x)
            .collect();
        Candidates::complete(items)
    }
}

/// An element of ℕ₀[α]: its canonical residue modulo the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElem(pub QPoly);

/// Additive monoid of ℕ₀[α] when the atom horizon is finite.
#[derive(Clone, Debug)]
pub struct AlgebraicAdd {
    pub s: CyclicAlgebraic,
    n: u32,
    m: QPoly,
}

impl AlgebraicAdd {
    pub fn new(s: CyclicAlgebraic) -> Result<Self> {
        match s.atom_horizon(DEFAULT_HORIZON_CAP) {
            Horizon::Finite { n, .. } => {
                let m = QPoly::from_int(s.alpha().min_poly());
                Ok(AlgebraicAdd { s, n, m })
            }
            h => Err(Error::unsupported(format!(
                "additive factorization in {} needs a finite atom horizon (found {h})",
                s.spec()
            ))),
        }
    }

    pub fn horizon(&self) -> u32 {
        self.n
    }

    pub fn elem(&self, f: &IntPoly) -> AlgElem {
        AlgElem(QPoly::from_int(f).rem(&self.m))
    }

    pub fn atom(&self, j: u32) -> AlgElem {
        self.elem(&IntPoly::monomial(BigInt::one(), j))
    }

    /// A representative with nonnegative integer coefficients on α^0..α^(n-1).
    pub fn representative(&self, x: &AlgElem) -> Option<NatPoly> {
        let deg = self.s.alpha().degree();
        if self.n == deg {
            let f = x.0.to_int()?;
            return NatPoly::new(f).ok();
        }
        // General case: bounded search, each atom is >= 1.
        let hi = {
            let a = self.s.alpha().refined_to(&Rational::new(1.into(), 1000.into()));
            interval_hi(&x.0, a.lo(), a.hi())
        };
        let bound = hi.floor().to_integer().to_u64()?;
        let atoms: Vec<AlgElem> = (0..self.n).map(|j| self.atom(j)).collect();
        let mut c = vec![0u64; self.n as usize];
        fn rec(
            j: usize,
            left: u64,
            c: &mut Vec<u64>,
            atoms: &[AlgElem],
            target: &QPoly,
        ) -> bool {
            if j == atoms.len() {
                let mut s = QPoly::zero();
                for (k, a) in atoms.iter().enumerate() {
                    s = s.add(&a.0.scale(&Rational::from_integer(c[k].into())));
                }
                return &s == target;
            }
            for v in 0..=left {
                c[j] = v;
                if rec(j + 1, left - v, c, atoms, target) {
                    return true;
                }
            }
            c[j] = 0;
            false
        }
        rec(0, bound, &mut c, &atoms, &x.0).then(|| NatPoly::from_u64(&c))
    }
}

fn interval_hi(f: &QPoly, lo: &Rational, hi: &Rational) -> Rational {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in f.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        a = prods.iter().min().unwrap().clone() + c;
        b = prods.iter().max().unwrap().clone() + c;
    }
    b
}

impl MonoidView for AlgebraicAdd {
    type Elem = AlgElem;

    fn describe(&self) -> String {
        format!("({}, +)", self.s.spec())
    }

    fn identity(&self) -> AlgElem {
        AlgElem(QPoly::zero())
    }

    fn is_member(&self, x: &AlgElem) -> bool {
        self.representative(x).is_some()
    }

    fn compose(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        AlgElem(x.0.add(&y.0))
    }

    fn divide(&self, x: &AlgElem, y: &AlgElem) -> Option<AlgElem> {
        let z = AlgElem(x.0.sub(&y.0));
        self.is_member(&z).then_some(z)
    }

    fn value_cmp(&self, a: &AlgElem, b: &AlgElem) -> Ordering {
        self.s.alpha().sign_of_q(&a.0.sub(&b.0)).cmp(&0)
    }

    fn render(&self, x: &AlgElem) -> String {
        match self.representative(x) {
            Some(f) => f.to_string(),
            None => x.0.to_string(),
        }
    }

    fn parse_elem(&self, s: &str) -> Result<AlgElem> {
        let f = NatPoly::parse(s)?;
        Ok(self.elem(f.as_int()))
    }

    fn atom_rule(&self, x: &AlgElem) -> Option<bool> {
        Some((0..self.n).any(|j| self.atom(j) == *x))
    }

    fn divisor_candidates(&self, x: &AlgElem, budget: &SearchBudget) -> Candidates<AlgElem> {
        let atoms = self.atoms_dividing(x, budget);
        Candidates::complete(atoms.items.into_iter().filter(|a| a != x).collect())
    }

    fn atoms_dividing(&self, x: &AlgElem, _budget: &SearchBudget) -> Candidates<AlgElem> {
        let mut items: Vec<AlgElem> = (0..self.n)
            .map(|j| self.atom(j))
            .filter(|a| self.divide(x, a).is_some())
            .collect();
        items.sort_by(|a, b| self.value_cmp(a, b));
        Candidates::complete(items)
    }

    fn finite_atoms(&self) -> Option<Vec<AlgElem>> {
        Some((0..self.n).map(|j| self.atom(j)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn nq(n: i64, d: i64) -> CyclicRational {
        CyclicRational::new(rat(n, d)).unwrap()
    }

    #[test]
    fn membership_examples() {
        match nq(3, 2).member(&rat(5, 2), None).unwrap() {
            Membership::Yes(f) => assert_eq!(f.to_string(), "x + 1"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(nq(2, 3).member(&rat(1, 3), None).unwrap(), Membership::No(_)));
        assert!(matches!(nq(3, 2).member(&rat(1, 2), None).unwrap(), Membership::No(_)));
        assert!(nq(2, 3).member(&int(-1), None).is_err());
        assert!(nq(2, 3).contains(&int(2)));
        assert!(nq(2, 3).contains(&rat(4, 9)));
        assert!(!nq(2, 3).contains(&rat(1, 2)));
    }

    #[test]
    fn horizons() {
        assert!(matches!(nq(2, 3).atom_horizon(), Horizon::Infinite { .. }));
        assert!(matches!(nq(1, 2).atom_horizon(), Horizon::Zero { .. }));
        assert_eq!(
            nq(2, 3).additive_atoms(4),
            vec![int(1), rat(2, 3), rat(4, 9), rat(8, 27)]
        );
        assert!(nq(1, 2).additive_atoms(5).is_empty());
    }

    #[test]
    fn units_and_reduction() {
        assert!(nq(1, 2).is_unit_mult(&int(2)).unwrap());
        assert!(!nq(2, 3).is_unit_mult(&rat(2, 3)).unwrap());
        assert!(nq(1, 2).is_unit_mult(&int(0)).is_err());
        assert_eq!(nq(1, 2).reduce_mod_units(&rat(6, 4)).unwrap(), BigUint::from(3u32));
        assert_eq!(nq(1, 2).reduce_mod_units(&int(8)).unwrap(), BigUint::one());
        assert_eq!(nq(1, 6).reduce_mod_units(&rat(35, 36)).unwrap(), BigUint::from(35u32));
        assert!(nq(1, 2).reduce_mod_units(&rat(1, 3)).is_err());
    }

    #[test]
    fn divisor_numerators() {
        let s = nq(2, 3);
        let d = s.d();
        let b = SearchBudget::default();
        let free = |x: &Rational| split_coprime(&x.numer().to_biguint().unwrap(), &d).1;
        for x in [int(2), int(4), int(6), rat(8, 9), rat(20, 27)] {
            let divs = s.mult_divisors(&x, &b);
            assert!(divs.complete);
            for y in &divs.items {
                assert!(s.contains(&(&x / y)));
                assert!((free(&x) % free(y)).is_zero(), "{y} | {x}");
            }
        }
        // n(y) <= n(x) fails literally: 2 = 3·(2/3)
        let divs = s.mult_divisors(&int(2), &b);
        assert!(divs.items.contains(&int(3)));
        assert!(divs.items.contains(&rat(2, 3)));
    }

    #[test]
    fn minimal_pairs() {
        let mp = nq(2, 3).minimal_pair();
        assert_eq!(mp.ell, "3");
        assert_eq!(mp.m_plus.to_string(), "3x");
        assert_eq!(mp.m_minus.to_string(), "2");
        let mp = minimal_pair(&QPoly::from_vec(vec![int(-5), int(0), int(1)])).unwrap();
        assert_eq!((mp.m_plus.to_string(), mp.m_minus.to_string()), ("x^2".into(), "5".into()));
        let mp = minimal_pair(&QPoly::from_vec(vec![int(-1), int(-1), int(1)])).unwrap();
        assert_eq!((mp.m_plus.to_string(), mp.m_minus.to_string()), ("x^2".into(), "x + 1".into()));
        assert!(minimal_pair(&QPoly::from_vec(vec![int(2), int(3), int(1)])).is_err());
    }

    #[test]
    fn chains() {
        let c = nq(2, 3).accp_fail_chain(3).unwrap();
        assert_eq!(c.chain, vec![int(2), rat(4, 3), rat(8, 9), rat(16, 27)]);
        assert_eq!(c.differences, vec![rat(2, 3), rat(4, 9), rat(8, 27)]);
        let c = nq(3, 5).accp_fail_chain(2).unwrap();
        assert_eq!(c.chain, vec![int(3), rat(9, 5), rat(27, 25)]);
        assert_eq!(c.differences, vec![rat(6, 5), rat(18, 25)]);
        assert!(nq(3, 2).accp_fail_chain(4).is_err());
    }

    #[test]
    fn algebraic_horizon() {
        let a = AlgebraicNumber::new(IntPoly::from_i64(&[-5, 0, 1]), int(2), int(3)).unwrap();
        let s = CyclicAlgebraic::new(a).unwrap();
        match s.atom_horizon(8) {
            Horizon::Finite { n, witness } => {
                assert_eq!(n, 2);
                assert_eq!(witness, vec!["5".to_string(), "0".to_string()]);
            }
            h => panic!("{h:?}"),
        }
        assert_eq!(s.additive_atoms(4, 8), Some(vec![0, 1]));
    }
}
