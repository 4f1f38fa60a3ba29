//! Generic monoid views and the bounded enumeration engine shared by every
//! semiring family.

pub mod certificate;
pub mod factorization;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use certificate::{Certificate, Payload, Part};
pub use factorization::{enumerate_factorizations, length_set, Factorization, FactorizationSet};

pub const BUDGET_ENV: &str = "POSRING_BUDGET_DEFAULT";

/// Bounds for every search. All fields are at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_length: usize,
    pub max_exponent: u32,
    pub max_candidates: usize,
}

impl SearchBudget {
    pub fn new(max_length: usize, max_exponent: u32, max_candidates: usize) -> Result<Self> {
        if max_length == 0 || max_exponent == 0 || max_candidates == 0 {
            return Err(Error::invalid("search budget bounds must be positive"));
        }
        Ok(SearchBudget {
            max_length,
            max_exponent,
            max_candidates,
        })
    }

    /// Budget derived from a single scale `n`: lengths and exponents up to `n`,
    /// a thousand candidates per unit.
    pub fn scaled(n: usize) -> Result<Self> {
        Self::new(n, n as u32, n.saturating_mul(1000))
    }

    /// Reads `POSRING_BUDGET_DEFAULT`, falling back to the built-in default
    /// when unset. A value that is not a positive integer is an error.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                let n: usize = v.trim().parse().map_err(|_| {
                    Error::invalid(format!("{BUDGET_ENV} must be a positive integer, got `{v}`"))
                })?;
                Self::scaled(n)
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_length: 12,
            max_exponent: 12,
            max_candidates: 12_000,
        }
    }
}

/// A finite batch of candidates and whether it is provably exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidates<E> {
    pub items: Vec<E>,
    pub complete: bool,
}

impl<E> Candidates<E> {
    pub fn complete(items: Vec<E>) -> Self {
        Candidates {
            items,
            complete: true,
        }
    }

    pub fn partial(items: Vec<E>) -> Self {
        Candidates {
            items,
            complete: false,
        }
    }
}

/// One side (additive or multiplicative) of a semiring, or a monoid, seen as
/// a commutative cancellative monoid.
pub trait MonoidView {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    /// Spec string of the underlying model plus side, for messages.
    fn describe(&self) -> String;

    fn identity(&self) -> Self::Elem;

    fn is_member(&self, x: &Self::Elem) -> bool;

    fn is_unit(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    fn compose(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// The member `z` with `y ∘ z = x`, if it exists.
    fn divide(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical order used for output (value order where one exists).
    fn value_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.cmp(b)
    }

    fn render(&self, x: &Self::Elem) -> String;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// Non-unit proper divisors of `x` (a finite overapproximation is not
    /// allowed: every item must divide `x`). `complete` records whether every
    /// proper non-unit divisor is listed.
    fn divisor_candidates(&self, x: &Self::Elem, budget: &SearchBudget) -> Candidates<Self::Elem>;

    /// Closed-form atom predicate, when the model has one.
    fn atom_rule(&self, _x: &Self::Elem) -> Option<bool> {
        None
    }

    /// Atoms dividing `x` (including `x` itself when it is an atom).
    fn atoms_dividing(&self, x: &Self::Elem, budget: &SearchBudget) -> Candidates<Self::Elem> {
        let cands = self.divisor_candidates(x, budget);
        let mut complete = cands.complete;
        let mut items = Vec::new();
        for y in cands.items.iter().chain(std::iter::once(x)) {
            match is_atom_unchecked(self, y, budget) {
                AtomResult::Atom => items.push(y.clone()),
                AtomResult::NotAtom(..) => {}
                AtomResult::Unknown => complete = false,
            }
        }
        items.sort_by(|a, b| self.value_cmp(a, b));
        items.dedup();
        Candidates { items, complete }
    }

    /// The complete atom set, for finitely generated presentations.
    fn finite_atoms(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Coordinates `(a, b)` for rank-2 models, used by linear functionals.
    fn linear_coords(&self, _x: &Self::Elem) -> Option<(crate::Rational, crate::Rational)> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomResult<E> {
    Atom,
    NotAtom(E, E),
    Unknown,
}

impl<E> AtomResult<E> {
    pub fn is_atom(&self) -> bool {
        matches!(self, AtomResult::Atom)
    }
}

/// Decides whether `x` is an atom. A `NotAtom` answer always carries a
/// verified splitting; `Atom` requires an exhaustive divisor search or the
/// model's closed form.
pub fn is_atom<V: MonoidView + ?Sized>(
    view: &V,
    x: &V::Elem,
    budget: &SearchBudget,
) -> Result<AtomResult<V::Elem>> {
    if !view.is_member(x) {
        return Err(Error::invalid(format!(
            "{} is not a member of {}",
            view.render(x),
            view.describe()
        )));
    }
    if view.is_unit(x) {
        return Err(Error::invalid(format!(
            "{} is a unit of {}",
            view.render(x),
            view.describe()
        )));
    }
    Ok(is_atom_unchecked(view, x, budget))
}

fn is_atom_unchecked<V: MonoidView + ?Sized>(
    view: &V,
    x: &V::Elem,
    budget: &SearchBudget,
) -> AtomResult<V::Elem> {
    if view.is_unit(x) {
        return AtomResult::Unknown;
    }
    let rule = view.atom_rule(x);
    if rule == Some(true) {
        return AtomResult::Atom;
    }
    let cands = view.divisor_candidates(x, budget);
    for y in &cands.items {
        if view.is_unit(y) || y == x {
            continue;
        }
        if let Some(z) = view.divide(x, y) {
            if !view.is_unit(&z) && view.compose(y, &z) == *x {
                let (a, b) = if view.value_cmp(y, &z) == Ordering::Greater {
                    (z, y.clone())
                } else {
                    (y.clone(), z)
                };
                return AtomResult::NotAtom(a, b);
            }
        }
    }
    if cands.complete && rule != Some(false) {
        AtomResult::Atom
    } else {
        AtomResult::Unknown
    }
}
