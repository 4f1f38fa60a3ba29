//! Property refutation: closed-form witnesses where a construction is known,
//! otherwise a bounded search over small elements for HF and LF failures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{NatPoly, Rational};
use crate::cyclic::{CyclicRational, Horizon, DEFAULT_HORIZON_CAP};
use crate::error::{Error, Result};
use crate::exp::{accp_probe, AccpProbe, ExpKind, ExpMul, ExpSum, ExponentMonoid};
use crate::kernel::certificate::Split;
use crate::kernel::{enumerate_factorizations, Certificate, MonoidView, Part, Payload, SearchBudget};
use crate::model::{SemiringModel, Side, ViewVisitor};
use crate::rank2::{HfOutcome, Presentation, Rank2Monoid};
use crate::{natpoly, ray::RaySemiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    #[serde(rename = "atomic")]
    Atomic,
    #[serde(rename = "ACCP")]
    Accp,
    BF,
    FF,
    HF,
    LF,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Atomic => "atomic",
            Property::Accp => "ACCP",
            Property::BF => "BF",
            Property::FF => "FF",
            Property::HF => "HF",
            Property::LF => "LF",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        let t = s.trim().to_ascii_uppercase();
        let t = t.strip_suffix('M').or_else(|| t.strip_suffix('S')).unwrap_or(&t);
        Ok(match t {
            "ATOMIC" => Property::Atomic,
            "ACCP" => Property::Accp,
            "BF" => Property::BF,
            "FF" => Property::FF,
            "HF" => Property::HF,
            "LF" => Property::LF,
            _ => {
                return Err(Error::parse(
                    0,
                    format!("unknown property `{}`; expected atomic, ACCP, BF, FF, HF or LF", s.trim()),
                ))
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RefuteOutcome {
    Refuted {
        certificate: Certificate,
    },
    NotFound {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        supporting: Option<Certificate>,
    },
}

impl RefuteOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            RefuteOutcome::Refuted { certificate } => Some(certificate),
            RefuteOutcome::NotFound { supporting, .. } => supporting.as_ref(),
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, RefuteOutcome::Refuted { .. })
    }
}

fn refuted(c: Certificate) -> Result<RefuteOutcome> {
    Ok(RefuteOutcome::Refuted { certificate: c })
}

fn not_found(reason: impl Into<String>) -> Result<RefuteOutcome> {
    Ok(RefuteOutcome::NotFound {
        reason: reason.into(),
        supporting: None,
    })
}

/// Length of chains emitted for ACCP refutations.
pub const CHAIN_LENGTH: usize = 10;

pub fn refute(
    model: &SemiringModel,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    use Property::*;
    match model {
        SemiringModel::CyclicRational(c) => refute_cyclic(c, side, property, budget),
        SemiringModel::CyclicAlgebraic(c) => {
            if side == Side::Mul {
                return Err(Error::unsupported(
                    "the multiplicative monoid of N0[alpha] for irrational alpha is not modeled",
                ));
            }
            match (c.atom_horizon(DEFAULT_HORIZON_CAP), property) {
                (Horizon::Finite { n, .. }, HF | LF) => generic(model, side, property, budget)
                    .map(|o| o.unwrap_or_else(|| nf(format!("no {property} failure among small elements; horizon n = {n}")))),
                (Horizon::Finite { n, .. }, _) => not_found(format!(
                    "finitely many atoms (α^j for j < {n}) generate the additive monoid, so it is an FFM"
                )),
                (h, _) => not_found(format!("atom horizon {h}; no closed-form route")),
            }
        }
        SemiringModel::NatPoly => match (side, property) {
            (Side::Add, _) => not_found("(N0[x], +) is free on the monomials x^k, hence a UFM"),
            (Side::Mul, HF) => refuted(natpoly::hf_witness_family(2, 1)?),
            (Side::Mul, LF) => refuted(natpoly::lf_witness()?),
            (Side::Mul, _) => not_found(
                "a nonzero polynomial has finitely many divisors in N0[x], so the multiplicative monoid is an FFM",
            ),
        },
        SemiringModel::Ray(r) => refute_ray(model, r, side, property, budget),
        SemiringModel::Exp(m) => refute_exp(model, m, side, property, budget),
        SemiringModel::Numerical(n) => match (side, property) {
            (_, Atomic | Accp | BF | FF) => not_found(
                "every element has finitely many divisors (finitely generated or bounded by value), so the monoid is an FFM",
            ),
            (Side::Add, _) => generic_or(model, side, property, budget),
            (Side::Mul, _) => {
                if n.generators() == [1] {
                    return not_found("(N0•, ·) is free on the primes, hence a UFM");
                }
                match n.find_remark_parameters(100, 8) {
                    Some((q, k)) => {
                        let (lf, hf) = n.remark_witnesses(q, k)?;
                        refuted(if property == HF { hf } else { lf })
                    }
                    None => not_found("no (q, n) with q <= 100, n <= 8 satisfies the witness conditions"),
                }
            }
        },
        SemiringModel::Rank2(m) => {
            if side == Side::Mul {
                return Err(Error::unsupported("rank-2 monoids carry no multiplication; use --side add"));
            }
            refute_rank2(model, m, property, budget)
        }
    }
}

fn nf(reason: String) -> RefuteOutcome {
    RefuteOutcome::NotFound {
        reason,
        supporting: None,
    }
}

fn generic_or(
    model: &SemiringModel,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    Ok(generic(model, side, property, budget)?.unwrap_or_else(|| {
        nf(format!(
            "no {property} failure among {} small elements within the search budget",
            candidate_elements(model, side).len()
        ))
    }))
}

fn refute_cyclic(
    c: &CyclicRational,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    use Property::*;
    let model = SemiringModel::CyclicRational(c.clone());
    if c.is_trivial() {
        return not_found("N0 is free on 1 additively and on the primes multiplicatively");
    }
    let below_one = c.q() < &Rational::one();
    match side {
        Side::Add => match property {
            Atomic if c.is_antimatter() => {
                let d = c.d();
                let left = Rational::new(1.into(), d.clone().into());
                let right = Rational::one() - &left;
                let cert = Certificate::issue(Payload::AtomListing {
                    model: c.spec(),
                    side: Side::Add,
                    atoms: Vec::new(),
                    non_atoms: vec![Split {
                        element: "1".into(),
                        left: left.to_string(),
                        right: right.to_string(),
                    }],
                })?
                .with_note(format!("every x equals the sum of {d} copies of x/{d}, so there are no atoms"));
                refuted(cert)
            }
            Atomic => not_found(format!("atomic: the atoms are q^j, horizon {}", c.atom_horizon())),
            Accp | BF | FF if below_one => match c.accp_fail_chain(CHAIN_LENGTH) {
                Ok(ch) => {
                    let mut cert = ch.certificate(&c.spec())?;
                    if property != Accp {
                        cert = cert.with_note(format!("{property} implies ACCP"));
                    }
                    refuted(cert)
                }
                Err(e) => not_found(e.to_string()),
            },
            Accp | BF | FF => not_found(
                "q > 1: the atoms q^j form a strongly increasing sequence, so the additive monoid is an FFM",
            ),
            HF | LF if c.is_antimatter() => not_found("antimatter: no factorizations exist"),
            HF | LF => refuted(cyclic_relation_witness(c, property)?),
        },
        Side::Mul => {
            if c.is_antimatter() {
                return not_found(
                    "modulo units the multiplicative monoid is the positive integers coprime to d, a UFM",
                );
            }
            match property {
                HF | LF => generic_or(&model, side, property, budget),
                _ => not_found(format!(
                    "no closed-form route for {property} on the multiplicative side; bounded search covers HF and LF"
                )),
            }
        }
    }
}

/// With q = n/d: `n·1 = d·q` (lengths n and d) and
/// `n·1 + d·q² = (n + d)·q` (two factorizations of length n + d).
fn cyclic_relation_witness(c: &CyclicRational, property: Property) -> Result<Certificate> {
    let n = c.n().to_usize().ok_or_else(|| Error::unsupported("numerator too large"))?;
    let d = c.d().to_usize().ok_or_else(|| Error::unsupported("denominator too large"))?;
    let q = c.q().clone();
    let part = |x: &Rational, k: usize| Part { atom: x.to_string(), count: k };
    let one = Rational::one();
    let model = c.spec();
    let sorted = |mut v: Vec<(Rational, usize)>| {
        v.sort();
        v.iter().map(|(x, k)| part(x, *k)).collect::<Vec<_>>()
    };
    if property == Property::HF {
        Certificate::issue(Payload::NotHF {
            model,
            side: Side::Add,
            element: n.to_string(),
            factorization_a: sorted(vec![(one, n)]),
            factorization_b: sorted(vec![(q, d)]),
            lengths: vec![n, d],
        })
    } else {
        let q2 = &q * &q;
        let element = Rational::from_integer(n.into()) + &q2 * Rational::from_integer(d.into());
        Certificate::issue(Payload::NotLF {
            model,
            side: Side::Add,
            element: element.to_string(),
            factorization_a: sorted(vec![(q2, d), (one, n)]),
            factorization_b: sorted(vec![(q, n + d)]),
            lengths: vec![n + d, n + d],
        })
    }
}

fn refute_ray(
    model: &SemiringModel,
    r: &RaySemiring,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    use Property::*;
    let is_s2 = r.r() == &Rational::from_integer(2.into());
    match (side, property) {
        (_, Atomic | Accp | BF) => not_found(
            "1 is not a limit point of S_r, so both monoids are BFMs (hence atomic and ACCP)",
        ),
        (Side::Add, FF) => {
            let target = r.r() * Rational::from_integer(2.into()) + Rational::new(1.into(), 2.into());
            refuted(r.non_ff_family(&target, budget.max_length.clamp(2, 25))?)
        }
        (Side::Mul, FF) => not_found("no closed-form route for multiplicative FF"),
        (_, HF | LF) if is_s2 => {
            let certs = RaySemiring::s2_counterexamples()?;
            let want = if property == HF { "NotHF" } else { "NotLF" };
            let c = certs
                .into_iter()
                .find(|c| c.kind() == want && payload_side(&c.payload) == side)
                .expect("all four witnesses are present");
            refuted(c)
        }
        _ => generic_or(model, side, property, budget),
    }
}

fn payload_side(p: &Payload) -> Side {
    match p {
        Payload::NotHF { side, .. }
        | Payload::NotLF { side, .. }
        | Payload::AccpFailChain { side, .. }
        | Payload::NonBFFamily { side, .. }
        | Payload::NonFFFamily { side, .. }
        | Payload::HFLinearFunctional { side, .. }
        | Payload::AtomListing { side, .. } => *side,
    }
}

/// `L(e^1)` in E(unitfrac<=P): one factorization per length (the primes <= P).
pub fn e_one_family(m: &ExponentMonoid, budget: &SearchBudget) -> Result<Certificate> {
    let view = ExpMul { m: m.clone() };
    let x = ExpSum::exp(Rational::one());
    let fs = enumerate_factorizations(&view, &x, budget)?;
    let mut by_len: BTreeMap<usize, _> = BTreeMap::new();
    for f in &fs.factorizations {
        by_len.entry(f.len()).or_insert_with(|| f.render(&view).parts);
    }
    if by_len.len() < 2 {
        return Err(Error::unsupported(format!("e^1 has fewer than two lengths in {}", m.spec())));
    }
    Certificate::issue(Payload::NonBFFamily {
        model: m.spec(),
        side: Side::Mul,
        element: x.to_string(),
        lengths: by_len.keys().copied().collect(),
        factorizations: by_len.into_values().collect(),
    })
}

fn refute_exp(
    model: &SemiringModel,
    m: &ExponentMonoid,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    use Property::*;
    if side == Side::Add {
        return not_found("(E(M), +) is free on the symbols e^m, hence a UFM");
    }
    match property {
        Accp => match accp_probe(m, CHAIN_LENGTH, budget)? {
            AccpProbe::FailChain(c) => refuted(c),
            AccpProbe::StableUpTo { length, reason } => {
                not_found(format!("no failure chain found (probe up to length {length}): {reason}"))
            }
        },
        BF | FF if matches!(m.kind(), ExpKind::UnitFractions(p) if *p >= 3) => {
            let c = e_one_family(m, budget)?.with_note(
                "the lengths of e^1 are the primes <= P; the family grows without bound as P grows, \
                 while each truncation is finitely generated",
            );
            Ok(RefuteOutcome::NotFound {
                reason: format!(
                    "{} is a truncation with finitely generated exponents; the supporting family shows unbounded lengths across truncations",
                    m.spec()
                ),
                supporting: Some(c),
            })
        }
        HF | LF => generic_or(model, side, property, budget),
        _ => not_found(format!("no closed-form route for {property} on {}", m.spec())),
    }
}

fn refute_rank2(
    model: &SemiringModel,
    m: &Rank2Monoid,
    property: Property,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    use Property::*;
    match property {
        Atomic | Accp | BF => not_found("finitely generated by its atoms, hence a BFM"),
        FF => {
            let supporting = match m.presentation() {
                Presentation::Family { cap } if *cap >= 3 => {
                    let count = (*cap as usize - 1).min(8);
                    Some(m.non_ff_witness(count)?.with_note(
                        "1 + omega has one length-2 factorization per q <= 1/2 in the family; the count grows with cap",
                    ))
                }
                _ => None,
            };
            Ok(RefuteOutcome::NotFound {
                reason: "finitely generated presentations are FFMs".into(),
                supporting,
            })
        }
        HF => match m.hf_certificate()? {
            HfOutcome::Certified(c) => Ok(RefuteOutcome::NotFound {
                reason: "a linear functional equal to 1 on every atom fixes the length of every element".into(),
                supporting: Some(c),
            }),
            HfOutcome::NotFound(_) => generic_or(model, Side::Add, property, budget),
        },
        LF => generic_or(model, Side::Add, property, budget),
    }
}

/// Small elements searched by the generic route, in the model's syntax.
pub fn candidate_elements(model: &SemiringModel, side: Side) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    match model {
        SemiringModel::CyclicRational(c) => {
            let q = c.q();
            let mut vals = BTreeSet::new();
            for a in 0..=4u32 {
                for b in 0..=4u32 {
                    for e in 0..=3u32 {
                        let v = Rational::from_integer(a.into())
                            + q * Rational::from_integer(b.into())
                            + q * q * Rational::from_integer(e.into());
                        if !v.is_zero() && !(side == Side::Mul && v.is_one()) {
                            vals.insert(v);
                        }
                    }
                }
            }
            out.extend(vals.iter().map(|v| v.to_string()));
        }
        SemiringModel::CyclicAlgebraic(_) => {
            for code in 1..81u32 {
                let mut c = code;
                let coeffs: Vec<u64> = (0..4)
                    .map(|_| {
                        let d = c % 3;
                        c /= 3;
                        d as u64
                    })
                    .collect();
                out.push(NatPoly::from_u64(&coeffs).to_string());
            }
        }
        SemiringModel::NatPoly => {}
        SemiringModel::Ray(r) => {
            let top = (r.r() * Rational::from_integer(3.into())).ceil() + Rational::from_integer(2.into());
            let mut vals = BTreeSet::new();
            for den in 1..=4i64 {
                let mut k = 1i64;
                loop {
                    let v = Rational::new(k.into(), den.into());
                    if v > top {
                        break;
                    }
                    if r.contains(&v) && !(side == Side::Mul && v.is_one()) {
                        vals.insert(v);
                    }
                    k += 1;
                }
            }
            out.extend(vals.iter().map(|v| v.to_string()));
        }
        SemiringModel::Exp(m) => {
            if side == Side::Mul {
                let top = m.atoms().iter().max().cloned().unwrap_or_default() * Rational::from_integer(3.into());
                for t in m.members_up_to(&top).into_iter().filter(|t| !t.is_zero()).take(40) {
                    out.push(ExpSum::exp(t).to_string());
                }
                let atoms: Vec<&Rational> = m.atoms().iter().take(6).collect();
                for (i, a) in atoms.iter().enumerate() {
                    for b in &atoms[i + 1..] {
                        let s = ExpSum::exp((*a).clone()).add(&ExpSum::exp((*b).clone()));
                        out.push(s.multiply(&s).to_string());
                    }
                }
            }
        }
        SemiringModel::Numerical(n) => {
            let top = if side == Side::Add { 60u64 } else { 200 };
            let lo = if side == Side::Add { 1 } else { 2 };
            out.extend((lo..=top).filter(|&k| n.contains_u64(k)).map(|k| k.to_string()));
        }
        SemiringModel::Rank2(m) => {
            let atoms = m.atoms();
            let mut seen = BTreeSet::new();
            for (i, a) in atoms.iter().enumerate() {
                for (j, b) in atoms.iter().enumerate().skip(i) {
                    seen.insert(a.add(b));
                    for c in atoms.iter().skip(j) {
                        seen.insert(a.add(b).add(c));
                    }
                }
            }
            out.extend(seen.iter().map(|x| m.render(x)));
        }
    }
    out
}

struct SmallSearch<'a> {
    property: Property,
    model: String,
    side: Side,
    elems: &'a [String],
    budget: SearchBudget,
}

impl ViewVisitor for SmallSearch<'_> {
    type Output = Result<Option<Certificate>>;

    fn visit<V: MonoidView>(self, view: &V) -> Result<Option<Certificate>> {
        for s in self.elems {
            let Ok(x) = view.parse_elem(s) else { continue };
            if !view.is_member(&x) || view.is_unit(&x) {
                continue;
            }
            let fs = enumerate_factorizations(view, &x, &self.budget)?;
            let mut by_len: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, f) in fs.factorizations.iter().enumerate() {
                by_len.entry(f.len()).or_default().push(i);
            }
            let pair = match self.property {
                Property::HF if by_len.len() >= 2 => {
                    let a = by_len.values().next().unwrap()[0];
                    let b = by_len.values().next_back().unwrap()[0];
                    Some((a, b))
                }
                Property::LF => by_len.values().find(|v| v.len() >= 2).map(|v| (v[0], v[1])),
                _ => None,
            };
            let Some((a, b)) = pair else { continue };
            let fa = &fs.factorizations[a];
            let fb = &fs.factorizations[b];
            let (element, factorization_a, factorization_b) =
                (view.render(&x), fa.render(view).parts, fb.render(view).parts);
            let lengths = vec![fa.len(), fb.len()];
            let payload = if self.property == Property::HF {
                Payload::NotHF {
                    model: self.model.clone(),
                    side: self.side,
                    element,
                    factorization_a,
                    factorization_b,
                    lengths,
                }
            } else {
                Payload::NotLF {
                    model: self.model.clone(),
                    side: self.side,
                    element,
                    factorization_a,
                    factorization_b,
                    lengths,
                }
            };
            return Certificate::issue(payload).map(Some);
        }
        Ok(None)
    }
}

/// Bounded search for an HF or LF failure among small elements.
pub fn generic(
    model: &SemiringModel,
    side: Side,
    property: Property,
    budget: &SearchBudget,
) -> Result<Option<RefuteOutcome>> {
    if !matches!(property, Property::HF | Property::LF) {
        return Ok(None);
    }
    let elems = candidate_elements(model, side);
    let found = model.with_view(
        side,
        SmallSearch {
            property,
            model: model.spec(),
            side,
            elems: &elems,
            budget: *budget,
        },
    )??;
    Ok(found.map(|c| RefuteOutcome::Refuted { certificate: c }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &str, side: Side, p: Property) -> RefuteOutcome {
        let m = SemiringModel::parse(spec).unwrap();
        refute(&m, side, p, &SearchBudget::default()).unwrap()
    }

    fn kind(o: &RefuteOutcome) -> Option<&'static str> {
        match o {
            RefuteOutcome::Refuted { certificate } => Some(certificate.kind()),
            _ => None,
        }
    }

    #[test]
    fn closed_form_routes() {
        assert_eq!(kind(&run("N0[2/3]", Side::Add, Property::Accp)), Some("AccpFailChain"));
        assert_eq!(kind(&run("N0[1/2]", Side::Add, Property::Atomic)), Some("AtomListing"));
        assert_eq!(kind(&run("N0[x]", Side::Mul, Property::HF)), Some("NotHF"));
        assert_eq!(kind(&run("N0[x]", Side::Mul, Property::LF)), Some("NotLF"));
        assert_eq!(kind(&run("ray(2)", Side::Add, Property::FF)), Some("NonFFFamily"));
        assert_eq!(kind(&run("ray(2)", Side::Mul, Property::LF)), Some("NotLF"));
        assert_eq!(kind(&run("numerical(3,5)", Side::Mul, Property::HF)), Some("NotHF"));
        assert_eq!(kind(&run("N0[3/2]", Side::Add, Property::Accp)), None);
    }

    #[test]
    fn generic_routes() {
        let o = run("N0[2/3]", Side::Add, Property::HF);
        let c = o.certificate().unwrap();
        assert_eq!(c.kind(), "NotHF");
        assert!(c.verified);
        assert_eq!(kind(&run("numerical(3,5,7)", Side::Add, Property::LF)), Some("NotLF"));
        assert_eq!(kind(&run("numerical(3,5)", Side::Add, Property::LF)), None);
        assert_eq!(kind(&run("E(gen:2,3)", Side::Mul, Property::HF)), Some("NotHF"));
        assert_eq!(kind(&run("E(gen:2,3)", Side::Mul, Property::LF)), Some("NotLF"));
        assert_eq!(kind(&run("rank2(pi; 2; (pi+2)/2)", Side::Add, Property::LF)), Some("NotLF"));
    }

    #[test]
    fn supporting_evidence() {
        let o = run("rank2(pi; 2; (pi+2)/2)", Side::Add, Property::HF);
        assert!(!o.is_refuted());
        assert_eq!(o.certificate().unwrap().kind(), "HFLinearFunctional");
        let o = run("E(unitfrac<=5)", Side::Mul, Property::BF);
        assert_eq!(o.certificate().unwrap().lengths(), vec![2, 3, 5]);
        let o = run("E(unitfrac<=5)", Side::Mul, Property::Accp);
        assert!(!o.is_refuted());
    }

    #[test]
    fn property_names() {
        assert_eq!("bfm".parse::<Property>().unwrap(), Property::BF);
        assert_eq!("ACCP".parse::<Property>().unwrap(), Property::Accp);
        assert!("UF".parse::<Property>().is_err());
    }
}
