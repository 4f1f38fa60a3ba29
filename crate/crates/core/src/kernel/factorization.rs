//! Factorizations as multisets of atoms and the bounded depth-first
//! enumerator.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use super::{Candidates, MonoidView, SearchBudget};
use crate::error::{Error, Result};

/// A multiset of atoms, parts sorted by ascending value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization<E> {
    pub parts: Vec<(E, usize)>,
}

impl<E: Clone + Eq> Factorization<E> {
    /// Builds the multiset from a list of atoms (any order, repeats allowed).
    pub fn from_atoms<V: MonoidView<Elem = E> + ?Sized>(view: &V, atoms: &[E]) -> Self {
        let mut sorted = atoms.to_vec();
        sorted.sort_by(|a, b| view.value_cmp(a, b));
        let mut parts: Vec<(E, usize)> = Vec::new();
        for a in sorted {
            match parts.last_mut() {
                Some((b, c)) if *b == a => *c += 1,
                _ => parts.push((a, 1)),
            }
        }
        Factorization { parts }
    }

    pub fn from_parts<V: MonoidView<Elem = E> + ?Sized>(view: &V, parts: &[(E, usize)]) -> Self {
        let atoms: Vec<E> = parts
            .iter()
            .flat_map(|(a, c)| std::iter::repeat_n(a.clone(), *c))
            .collect();
        Self::from_atoms(view, &atoms)
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(|(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &E> {
        self.parts
            .iter()
            .flat_map(|(a, c)| std::iter::repeat_n(a, *c))
    }

    /// Composes all parts.
    pub fn evaluate<V: MonoidView<Elem = E> + ?Sized>(&self, view: &V) -> E {
        self.atoms()
            .fold(view.identity(), |acc, a| view.compose(&acc, a))
    }

    pub fn render<V: MonoidView<Elem = E> + ?Sized>(&self, view: &V) -> RenderedFactorization {
        RenderedFactorization {
            parts: self
                .parts
                .iter()
                .map(|(a, c)| super::Part {
                    atom: view.render(a),
                    count: *c,
                })
                .collect(),
            length: self.len(),
        }
    }

    fn cmp_with<V: MonoidView<Elem = E> + ?Sized>(&self, other: &Self, view: &V) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for ((a, c), (b, d)) in self.parts.iter().zip(other.parts.iter()) {
                let o = view.value_cmp(a, b).then(c.cmp(d));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.parts.len().cmp(&other.parts.len())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedFactorization {
    pub parts: Vec<super::Part>,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSet<E> {
    pub target: E,
    pub factorizations: Vec<Factorization<E>>,
    pub complete: bool,
}

impl<E: Clone + Eq> FactorizationSet<E> {
    /// Deduplicates and sorts by length, then by parts.
    pub fn new<V: MonoidView<Elem = E> + ?Sized>(
        view: &V,
        target: E,
        mut factorizations: Vec<Factorization<E>>,
        complete: bool,
    ) -> Self {
        factorizations.sort_by(|a, b| a.cmp_with(b, view));
        factorizations.dedup();
        FactorizationSet {
            target,
            factorizations,
            complete,
        }
    }

    pub fn lengths(&self) -> BTreeSet<usize> {
        self.factorizations.iter().map(|f| f.len()).collect()
    }

    pub fn render<V: MonoidView<Elem = E> + ?Sized>(&self, view: &V) -> RenderedSet {
        RenderedSet {
            target: view.render(&self.target),
            factorizations: self.factorizations.iter().map(|f| f.render(view)).collect(),
            lengths: self.lengths().into_iter().collect(),
            complete: self.complete,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedSet {
    pub target: String,
    pub factorizations: Vec<RenderedFactorization>,
    pub lengths: Vec<usize>,
    pub complete: bool,
}

struct Search<'a, V: MonoidView + ?Sized> {
    view: &'a V,
    budget: &'a SearchBudget,
    memo: HashMap<V::Elem, Rc<Candidates<V::Elem>>>,
    found: Vec<Factorization<V::Elem>>,
    complete: bool,
    nodes: usize,
}

impl<V: MonoidView + ?Sized> Search<'_, V> {
    fn atoms(&mut self, x: &V::Elem) -> Rc<Candidates<V::Elem>> {
        if let Some(c) = self.memo.get(x) {
            return c.clone();
        }
        let c = Rc::new(self.view.atoms_dividing(x, self.budget));
        self.memo.insert(x.clone(), c.clone());
        c
    }

    /// Extends `prefix` (atoms in non-increasing order) to factorizations of `rest`.
    fn go(&mut self, rest: &V::Elem, prefix: &mut Vec<V::Elem>) {
        if self.view.is_unit(rest) {
            self.found
                .push(Factorization::from_atoms(self.view, prefix));
            return;
        }
        if prefix.len() >= self.budget.max_length {
            self.complete = false;
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_candidates {
            self.complete = false;
            return;
        }
        let atoms = self.atoms(rest);
        if !atoms.complete {
            self.complete = false;
        }
        for a in atoms.items.iter().rev() {
            if let Some(last) = prefix.last() {
                if self.view.value_cmp(a, last) == Ordering::Greater {
                    continue;
                }
            }
            if let Some(z) = self.view.divide(rest, a) {
                prefix.push(a.clone());
                self.go(&z, prefix);
                prefix.pop();
            }
        }
    }
}

/// Every factorization of `x` reachable within `budget`.
pub fn enumerate_factorizations<V: MonoidView + ?Sized>(
    view: &V,
    x: &V::Elem,
    budget: &SearchBudget,
) -> Result<FactorizationSet<V::Elem>> {
    if !view.is_member(x) {
        return Err(Error::invalid(format!(
            "{} is not a member of {}",
            view.render(x),
            view.describe()
        )));
    }
    let mut s = Search {
        view,
        budget,
        memo: HashMap::new(),
        found: Vec::new(),
        complete: true,
        nodes: 0,
    };
    s.go(x, &mut Vec::new());
    let complete = s.complete;
    Ok(FactorizationSet::new(view, x.clone(), s.found, complete))
}

/// Lengths of the factorizations of `x` and whether the list is exhaustive.
pub fn length_set<V: MonoidView + ?Sized>(
    view: &V,
    x: &V::Elem,
    budget: &SearchBudget,
) -> Result<(BTreeSet<usize>, bool)> {
    let fs = enumerate_factorizations(view, x, budget)?;
    Ok((fs.lengths(), fs.complete))
}
