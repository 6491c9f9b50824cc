//! Finite groups as explicit multiplication tables.
//!
//! Element ids are dense integers `0..order`; id `0` is always the identity.
//! Every constructor validates the Latin-square property and associativity
//! before handing out a [`GroupTable`].

mod builders;
mod enumerate;
pub mod field;
mod iso;
mod structure;
mod subgroup;

use std::sync::OnceLock;

use thiserror::Error;

use crate::par::{self, Exec};

pub use builders::*;
pub use enumerate::SubgroupStream;
pub use field::{prime_power, FiniteField};
pub use iso::groups_isomorphic;
pub use structure::{Cosets, InvolutionStats};
pub use subgroup::Subgroup;

pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the size cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("element {elem} out of range for a group of order {order}")]
    OutOfRange { elem: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

/// Group-order cap; `FORGE_SIZE_CAP` overrides the default of 4096.
pub fn size_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("FORGE_SIZE_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_SIZE_CAP)
    })
}

pub(crate) fn check_cap(order: usize) -> Result<(), GroupError> {
    let cap = size_cap();
    if order > cap {
        Err(GroupError::SizeCap { order, cap })
    } else {
        Ok(())
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl GroupTable {
    /// Builds a table from explicit rows, validating every group axiom.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(GroupError::InvalidTable(format!(
                "row {i} has {} entries, expected {order}",
                r.len()
            )));
        }
        Self::from_fn(name, order, |a, b| rows[a][b])
    }

    pub(crate) fn from_fn(
        name: impl Into<String>,
        order: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        check_cap(order)?;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "entry ({a},{b}) = {c} out of range"
                    )));
                }
                table.push(c as u32);
            }
        }
        let g = GroupTable {
            name: name.into(),
            order,
            inverse: Vec::new(),
            table,
        };
        g.validate()?.finish()
    }

    fn validate(self) -> Result<Self, GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a + 1 {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {c}")));
                }
                seen[c] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b + 1 {
                    return Err(GroupError::InvalidTable(format!("column {b} repeats {c}")));
                }
                seen[c] = b + 1;
            }
        }
        let assoc_ok = par::all_range(Exec::Parallel, n, |a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        if !assoc_ok {
            return Err(GroupError::InvalidTable("multiplication is not associative".into()));
        }
        Ok(self)
    }

    fn finish(mut self) -> Result<Self, GroupError> {
        let n = self.order;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            // Latin rows guarantee exactly one solution
            let b = (0..n).find(|&b| self.mul(a, b) == 0).unwrap();
            inverse[a] = b as u32;
        }
        self.inverse = inverse;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a^-1 b^-1 a b`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `b^-1 a b`
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(b), self.mul(a, b))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn check_element(&self, a: usize) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::OutOfRange { elem: a, order: self.order })
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The group induced on a subgroup, relabelled densely in the order of
    /// `h.members()`; the returned vector maps new ids to ids of `self`.
    pub fn subgroup_table(&self, h: &Subgroup, name: impl Into<String>) -> (GroupTable, Vec<usize>) {
        let embed: Vec<usize> = h.members().collect();
        let mut local = vec![usize::MAX; self.order];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = i;
        }
        let sub = GroupTable::from_fn(name, embed.len(), |a, b| local[self.mul(embed[a], embed[b])])
            .expect("a subgroup induces a valid group table");
        (sub, embed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_latin_and_non_associative_tables() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            GroupTable::from_rows("bad", &bad),
            Err(GroupError::InvalidTable(_))
        ));
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_rows("loop", &loop5).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(GroupTable::from_rows("ragged", &ragged).is_err());
    }

    #[test]
    fn subgroup_table_relabels() {
        let g = dihedral(8).unwrap();
        let c = g.center();
        let (z, embed) = g.subgroup_table(&c, "Z");
        assert_eq!(z.order(), 2);
        assert_eq!(embed[0], 0);
        assert_eq!(g.mul(embed[1], embed[1]), 0);
    }
}
