//! Self-contained witness objects. Every element is stored in the model's text
//! syntax together with the model spec string and side, so a certificate can
//! be re-checked from its JSON alone.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::factorization::Factorization;
use super::{is_atom, AtomResult, MonoidView, SearchBudget};
use crate::error::{Error, Result};
use crate::model::{SemiringModel, Side, ViewVisitor};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Part {
    pub atom: String,
    pub count: usize,
}

/// Data behind an ACCP failure chain built from a minimal-pair decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainConstruction {
    pub m_plus: String,
    pub m_minus: String,
    pub s: u32,
    pub c: String,
}

/// A split `element = left ∘ right` into two non-units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub element: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all_fields = "camelCase")]
pub enum Payload {
    NotHF {
        model: String,
        side: Side,
        element: String,
        factorization_a: Vec<Part>,
        factorization_b: Vec<Part>,
        lengths: Vec<usize>,
    },
    NotLF {
        model: String,
        side: Side,
        element: String,
        factorization_a: Vec<Part>,
        factorization_b: Vec<Part>,
        lengths: Vec<usize>,
    },
    AccpFailChain {
        model: String,
        side: Side,
        chain: Vec<String>,
        differences: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        construction: Option<ChainConstruction>,
    },
    NonBFFamily {
        model: String,
        side: Side,
        element: String,
        factorizations: Vec<Vec<Part>>,
        lengths: Vec<usize>,
    },
    NonFFFamily {
        model: String,
        side: Side,
        element: String,
        factorizations: Vec<Vec<Part>>,
        length: usize,
    },
    HFLinearFunctional {
        model: String,
        side: Side,
        atoms: Vec<String>,
        /// `(u, v)` with `u·a + v·b = 1` on every atom `a + bω`.
        functional: [String; 2],
    },
    AtomListing {
        model: String,
        side: Side,
        atoms: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        non_atoms: Vec<Split>,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::NotHF { .. } => "NotHF",
            Payload::NotLF { .. } => "NotLF",
            Payload::AccpFailChain { .. } => "AccpFailChain",
            Payload::NonBFFamily { .. } => "NonBFFamily",
            Payload::NonFFFamily { .. } => "NonFFFamily",
            Payload::HFLinearFunctional { .. } => "HFLinearFunctional",
            Payload::AtomListing { .. } => "AtomListing",
        }
    }

    fn model_side(&self) -> (&str, Side) {
        match self {
            Payload::NotHF { model, side, .. }
            | Payload::NotLF { model, side, .. }
            | Payload::AccpFailChain { model, side, .. }
            | Payload::NonBFFamily { model, side, .. }
            | Payload::NonFFFamily { model, side, .. }
            | Payload::HFLinearFunctional { model, side, .. }
            | Payload::AtomListing { model, side, .. } => (model, *side),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub payload: Payload,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    /// Runs the independent re-check and returns the certificate with
    /// `verified = true`, or a verification error.
    pub fn issue(payload: Payload) -> Result<Certificate> {
        let mut c = Certificate {
            payload,
            verified: false,
            note: None,
        };
        c.verify()?;
        c.verified = true;
        Ok(c)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }

    /// Re-parses the model and every element, then re-checks all equalities
    /// and atomicity claims with exact arithmetic.
    pub fn verify(&self) -> Result<()> {
        let (model, side) = self.payload.model_side();
        let m = SemiringModel::parse(model)?;
        m.with_view(side, Verifier(&self.payload))?
    }

    /// Lengths claimed by the payload (empty for kinds without lengths).
    pub fn lengths(&self) -> Vec<usize> {
        match &self.payload {
            Payload::NotHF { lengths, .. }
            | Payload::NotLF { lengths, .. }
            | Payload::NonBFFamily { lengths, .. } => lengths.clone(),
            Payload::NonFFFamily { length, .. } => vec![*length],
            _ => Vec::new(),
        }
    }
}

/// Budget used when re-checking atomicity of certificate parts.
pub fn verification_budget() -> SearchBudget {
    SearchBudget {
        max_length: 24,
        max_exponent: 24,
        max_candidates: 200_000,
    }
}

struct Verifier<'a>(&'a Payload);

fn fail(msg: impl Into<String>) -> Error {
    Error::verification(msg)
}

fn parse_parts<V: MonoidView>(view: &V, parts: &[Part]) -> Result<Factorization<V::Elem>> {
    let mut out = Vec::new();
    for p in parts {
        if p.count == 0 {
            return Err(fail(format!("part {} has multiplicity 0", p.atom)));
        }
        out.push((view.parse_elem(&p.atom)?, p.count));
    }
    Ok(Factorization::from_parts(view, &out))
}

fn check_factorization<V: MonoidView>(
    view: &V,
    target: &V::Elem,
    parts: &[Part],
    budget: &SearchBudget,
) -> Result<Factorization<V::Elem>> {
    let f = parse_parts(view, parts)?;
    for (a, _) in &f.parts {
        check_atom(view, a, budget)?;
    }
    let v = f.evaluate(view);
    if v != *target {
        return Err(fail(format!(
            "factorization composes to {}, not {}",
            view.render(&v),
            view.render(target)
        )));
    }
    Ok(f)
}

fn check_atom<V: MonoidView>(view: &V, a: &V::Elem, budget: &SearchBudget) -> Result<()> {
    match is_atom(view, a, budget) {
        Ok(AtomResult::Atom) => Ok(()),
        Ok(AtomResult::NotAtom(y, z)) => Err(fail(format!(
            "{} is not an atom: {} ∘ {}",
            view.render(a),
            view.render(&y),
            view.render(&z)
        ))),
        Ok(AtomResult::Unknown) => Err(fail(format!(
            "atomicity of {} could not be certified",
            view.render(a)
        ))),
        Err(e) => Err(fail(e.to_string())),
    }
}

fn check_member<V: MonoidView>(view: &V, x: &V::Elem) -> Result<()> {
    if view.is_member(x) {
        Ok(())
    } else {
        Err(fail(format!("{} is not a member", view.render(x))))
    }
}

impl ViewVisitor for Verifier<'_> {
    type Output = Result<()>;

    fn visit<V: MonoidView>(self, view: &V) -> Result<()> {
        let budget = verification_budget();
        match self.0 {
            Payload::NotHF {
                element,
                factorization_a,
                factorization_b,
                lengths,
                ..
            }
            | Payload::NotLF {
                element,
                factorization_a,
                factorization_b,
                lengths,
                ..
            } => {
                let x = view.parse_elem(element)?;
                check_member(view, &x)?;
                let a = check_factorization(view, &x, factorization_a, &budget)?;
                let b = check_factorization(view, &x, factorization_b, &budget)?;
                if lengths != &vec![a.len(), b.len()] {
                    return Err(fail("recorded lengths do not match the factorizations"));
                }
                if matches!(self.0, Payload::NotHF { .. }) {
                    if a.len() == b.len() {
                        return Err(fail("NotHF needs two different lengths"));
                    }
                } else if a.len() != b.len() || a == b {
                    return Err(fail("NotLF needs two distinct factorizations of equal length"));
                }
                Ok(())
            }
            Payload::AccpFailChain {
                chain, differences, ..
            } => {
                if chain.len() < 2 || differences.len() + 1 != chain.len() {
                    return Err(fail("chain needs n+1 elements and n differences"));
                }
                let xs: Vec<V::Elem> = chain
                    .iter()
                    .map(|s| view.parse_elem(s))
                    .collect::<Result<_>>()?;
                let ds: Vec<V::Elem> = differences
                    .iter()
                    .map(|s| view.parse_elem(s))
                    .collect::<Result<_>>()?;
                for x in xs.iter().chain(ds.iter()) {
                    check_member(view, x)?;
                }
                for (n, d) in ds.iter().enumerate() {
                    if view.is_unit(d) {
                        return Err(fail(format!("difference {n} is a unit")));
                    }
                    if view.compose(&xs[n + 1], d) != xs[n] {
                        return Err(fail(format!("step {n}: x_n != x_(n+1) ∘ d_n")));
                    }
                    if xs[n + 1] == xs[n] {
                        return Err(fail(format!("step {n} does not decrease")));
                    }
                }
                Ok(())
            }
            Payload::NonBFFamily {
                element,
                factorizations,
                ..
            }
            | Payload::NonFFFamily {
                element,
                factorizations,
                ..
            } => {
                let x = view.parse_elem(element)?;
                check_member(view, &x)?;
                let fs: Vec<Factorization<V::Elem>> = factorizations
                    .iter()
                    .map(|p| check_factorization(view, &x, p, &budget))
                    .collect::<Result<_>>()?;
                let distinct: BTreeSet<Vec<(V::Elem, usize)>> =
                    fs.iter().map(|f| f.parts.clone()).collect();
                if distinct.len() != fs.len() {
                    return Err(fail("factorizations are not pairwise distinct"));
                }
                match self.0 {
                    Payload::NonFFFamily { length, .. } => {
                        if fs.iter().any(|f| f.len() != *length) {
                            return Err(fail("family factorizations differ in length"));
                        }
                        if fs.is_empty() {
                            return Err(fail("a family needs at least one factorization"));
                        }
                    }
                    Payload::NonBFFamily { lengths, .. } => {
                        let ls: Vec<usize> = fs.iter().map(|f| f.len()).collect();
                        if &ls != lengths {
                            return Err(fail("recorded lengths do not match"));
                        }
                        let set: BTreeSet<usize> = ls.iter().copied().collect();
                        if set.len() != ls.len() || ls.len() < 2 {
                            return Err(fail("lengths must be pairwise distinct"));
                        }
                    }
                    _ => unreachable!(),
                }
                Ok(())
            }
            Payload::HFLinearFunctional {
                atoms, functional, ..
            } => {
                let u: Rational = crate::arith::rational::parse_rational(&functional[0])?;
                let v: Rational = crate::arith::rational::parse_rational(&functional[1])?;
                let listed: Vec<V::Elem> = atoms
                    .iter()
                    .map(|s| view.parse_elem(s))
                    .collect::<Result<_>>()?;
                for a in &listed {
                    check_atom(view, a, &budget)?;
                    let (x, y) = view
                        .linear_coords(a)
                        .ok_or_else(|| fail("model has no linear coordinates"))?;
                    if &u * x + &v * y != Rational::from_integer(1.into()) {
                        return Err(fail(format!(
                            "functional does not take value 1 on {}",
                            view.render(a)
                        )));
                    }
                }
                // The listing must be the full atom set of the presentation.
                let all = view
                    .finite_atoms()
                    .ok_or_else(|| fail("model does not expose a finite atom set"))?;
                let a: BTreeSet<&V::Elem> = all.iter().collect();
                let b: BTreeSet<&V::Elem> = listed.iter().collect();
                if a != b {
                    return Err(fail("listed atoms differ from the atoms of the model"));
                }
                Ok(())
            }
            Payload::AtomListing {
                atoms, non_atoms, ..
            } => {
                for s in atoms {
                    let a = view.parse_elem(s)?;
                    check_atom(view, &a, &budget)?;
                }
                for sp in non_atoms {
                    let x = view.parse_elem(&sp.element)?;
                    let l = view.parse_elem(&sp.left)?;
                    let r = view.parse_elem(&sp.right)?;
                    for e in [&x, &l, &r] {
                        check_member(view, e)?;
                    }
                    if view.is_unit(&l) || view.is_unit(&r) || view.compose(&l, &r) != x {
                        return Err(fail(format!("split of {} is invalid", sp.element)));
                    }
                }
                Ok(())
            }
        }
    }
}
