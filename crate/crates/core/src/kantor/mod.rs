//! Kantor families `(F, F*)` of type `(u, v)` in a finite group of order
//! `u^2 v`: axiom verification, Frohardt classification, the skew
//! translation condition, and exhaustive search.

mod frohardt;
mod search;
mod stgq;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupTable, Subgroup};

pub use frohardt::{classify, frohardt_condition, FamilyClassification, FrohardtCase, FrohardtReport};
pub use search::{search_kantor_families, Dedup, SearchOptions, SearchOutcome};
pub use stgq::stgq_condition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KantorError {
    #[error("indices must be distinct (got {0} twice)")]
    SameIndex(usize),
    #[error("index {index} out of range for a family of {len} members")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("family failed verification: {0}")]
    NotVerified(String),
    #[error("group of order {order} cannot carry a family of type ({u},{v})")]
    BadType { order: usize, u: usize, v: usize },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KantorType {
    pub u: usize,
    pub v: usize,
}

impl KantorType {
    pub fn new(u: usize, v: usize) -> Self {
        KantorType { u, v }
    }

    pub fn group_order(self) -> usize {
        self.u * self.u * self.v
    }
}

/// A candidate Kantor family. Construction does not verify the axioms;
/// call [`KantorFamily::verify`] or use [`KantorFamily::verified`].
#[derive(Clone, Debug)]
pub struct KantorFamily {
    pub group: Arc<GroupTable>,
    pub ktype: KantorType,
    /// `f[i] <= fstar[i]` for each index.
    pub f: Vec<Subgroup>,
    pub fstar: Vec<Subgroup>,
}

/// Families compare as sets of `(A, A*)` pairs; member order is ignored.
impl PartialEq for KantorFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ktype == other.ktype && self.canonical_pairs() == other.canonical_pairs()
    }
}

impl Eq for KantorFamily {}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum AxiomResult {
    Pass,
    Fail { witness: Witness },
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomResult::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `|F|` or `|F*|` differs from `v + 1`.
    Count { f: usize, fstar: usize, expected: usize },
    /// `elem` lies in `F[index]` but not in `F*[index]`.
    NotContained { index: usize, elem: usize },
    Size { index: usize, which: String, expected: usize, actual: usize },
    /// `a * b = c` with `a` in `F[i]`, `b` in `F[j]`, `c != id` in `F[k]`.
    Triple { i: usize, j: usize, k: usize, a: usize, b: usize, c: usize },
    /// `elem != id` lies in `F[i]` and in `F*[j]`.
    Pair { i: usize, j: usize, elem: usize },
}

/// Per-axiom verdicts of [`KantorFamily::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KantorReport {
    /// Set when `|K| != u^2 v` or the parameters are not thick.
    pub structural: Option<String>,
    pub axiom_a: AxiomResult,
    pub axiom_b: AxiomResult,
    pub axiom_c: AxiomResult,
    pub axiom_d: AxiomResult,
}

impl KantorReport {
    pub fn passed(&self) -> bool {
        self.structural.is_none()
            && self.axiom_a.passed()
            && self.axiom_b.passed()
            && self.axiom_c.passed()
            && self.axiom_d.passed()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            return "all axioms pass".into();
        }
        let mut parts = Vec::new();
        if let Some(s) = &self.structural {
            parts.push(s.clone());
        }
        for (name, r) in [("a", &self.axiom_a), ("b", &self.axiom_b), ("c", &self.axiom_c), ("d", &self.axiom_d)] {
            if let AxiomResult::Fail { witness } = r {
                parts.push(format!("axiom ({name}) fails: {witness:?}"));
            }
        }
        parts.join("; ")
    }
}

impl KantorFamily {
    pub fn new(group: Arc<GroupTable>, ktype: KantorType, f: Vec<Subgroup>, fstar: Vec<Subgroup>) -> Self {
        KantorFamily { group, ktype, f, fstar }
    }

    /// Builds the family and fails unless all four axioms hold.
    pub fn verified(
        group: Arc<GroupTable>,
        ktype: KantorType,
        f: Vec<Subgroup>,
        fstar: Vec<Subgroup>,
    ) -> Result<Self, KantorError> {
        let fam = Self::new(group, ktype, f, fstar);
        let report = fam.verify();
        if report.passed() {
            Ok(fam)
        } else {
            Err(KantorError::NotVerified(report.summary()))
        }
    }

    /// `(A, A*)` pairs sorted by `A` then `A*`.
    pub fn canonical_pairs(&self) -> Vec<(&Subgroup, &Subgroup)> {
        let mut v: Vec<_> = self.f.iter().zip(&self.fstar).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Exhaustive check of axioms (a)-(d); failures carry a witness.
    pub fn verify(&self) -> KantorReport {
        let g = &*self.group;
        let KantorType { u, v } = self.ktype;
        let structural = if u < 2 || v < 2 {
            Some(format!("type ({u},{v}) is not thick"))
        } else if g.order() != u * u * v {
            Some(format!("|K| = {} but u^2 v = {}", g.order(), u * u * v))
        } else {
            None
        };

        let axiom_a = self.check_a();
        let axiom_b = self.check_b();
        let n = self.f.len().min(self.fstar.len());

        let mut axiom_c = AxiomResult::Pass;
        'c: for i in 0..n {
            for j in i + 1..n {
                for k in (0..n).filter(|&k| k != i && k != j) {
                    if let Some((a, b, c)) = product_hit(g, &self.f[i], &self.f[j], &self.f[k]) {
                        axiom_c = AxiomResult::Fail { witness: Witness::Triple { i, j, k, a, b, c } };
                        break 'c;
                    }
                }
            }
        }

        let mut axiom_d = AxiomResult::Pass;
        'd: for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                if let Some(elem) = self.f[i].members().find(|&x| x != 0 && self.fstar[j].contains(x)) {
                    axiom_d = AxiomResult::Fail { witness: Witness::Pair { i, j, elem } };
                    break 'd;
                }
            }
        }

        KantorReport { structural, axiom_a, axiom_b, axiom_c, axiom_d }
    }

    fn check_a(&self) -> AxiomResult {
        let expected = self.ktype.v + 1;
        if self.f.len() != expected || self.fstar.len() != expected {
            return AxiomResult::Fail {
                witness: Witness::Count { f: self.f.len(), fstar: self.fstar.len(), expected },
            };
        }
        for (index, (a, astar)) in self.f.iter().zip(&self.fstar).enumerate() {
            if let Some(elem) = a.members().find(|&x| !astar.contains(x)) {
                return AxiomResult::Fail { witness: Witness::NotContained { index, elem } };
            }
        }
        AxiomResult::Pass
    }

    fn check_b(&self) -> AxiomResult {
        let KantorType { u, v } = self.ktype;
        for (index, a) in self.f.iter().enumerate() {
            if a.order() != u {
                return AxiomResult::Fail {
                    witness: Witness::Size { index, which: "F".into(), expected: u, actual: a.order() },
                };
            }
        }
        for (index, a) in self.fstar.iter().enumerate() {
            if a.order() != u * v {
                return AxiomResult::Fail {
                    witness: Witness::Size { index, which: "F*".into(), expected: u * v, actual: a.order() },
                };
            }
        }
        AxiomResult::Pass
    }

    /// The family with `F*[index]` replaced.
    pub fn with_fstar(&self, index: usize, replacement: Subgroup) -> Self {
        let mut fam = self.clone();
        fam.fstar[index] = replacement;
        fam
    }
}

/// Some `(a, b, a*b)` with `a in A`, `b in B`, `a*b in C \ {id}`, if any.
/// Since `BA = (AB)^-1` and `C` is inverse-closed, one order suffices.
pub(crate) fn product_hit(g: &GroupTable, a: &Subgroup, b: &Subgroup, c: &Subgroup) -> Option<(usize, usize, usize)> {
    for x in a.members() {
        for y in b.members() {
            let z = g.mul(x, y);
            if z != 0 && c.contains(z) {
                return Some((x, y, z));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
