use std::collections::HashSet;

use super::{GroupError, GroupTable, Subgroup};

/// Result of a bounded subgroup enumeration.
#[derive(Clone, Debug, Default)]
pub struct SubgroupStream {
    /// Canonical order: lexicographic on sorted members.
    pub subgroups: Vec<Subgroup>,
    /// Set when the work budget ran out; the list is then incomplete.
    pub truncated: bool,
}

impl GroupTable {
    /// Every subgroup of order `m`, each exactly once.
    ///
    /// Subgroups are grown from the trivial group by joining one cyclic
    /// generator at a time, keeping only intermediate subgroups whose order
    /// divides `m`; every subgroup of order `m` is reached because all of
    /// its subgroups have order dividing `m`. `budget` caps the number of
    /// joins performed.
    pub fn enumerate_subgroups_of_order(
        &self,
        m: usize,
        budget: Option<u64>,
    ) -> Result<SubgroupStream, GroupError> {
        if m == 0 || !self.order().is_multiple_of(m) {
            return Err(GroupError::Unsupported(format!(
                "{m} does not divide the group order {}",
                self.order()
            )));
        }
        let n = self.order();
        // cyclic generators: one representative (smallest id) per cyclic subgroup
        let mut reps = Vec::new();
        let mut seen_cyclic: HashSet<Subgroup> = HashSet::new();
        for a in 1..n {
            if !m.is_multiple_of(self.element_order(a)) {
                continue;
            }
            let c = self.closure(&[a]);
            if seen_cyclic.insert(c) {
                reps.push(a);
            }
        }

        let mut work = 0u64;
        let mut truncated = false;
        let mut all: HashSet<Subgroup> = HashSet::new();
        let trivial = Subgroup::trivial(self);
        all.insert(trivial.clone());
        let mut frontier = vec![trivial];
        'outer: while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                if h.order() == m {
                    continue;
                }
                for &a in &reps {
                    if h.contains(a) {
                        continue;
                    }
                    work += 1;
                    if budget.is_some_and(|b| work > b) {
                        truncated = true;
                        break 'outer;
                    }
                    let k = self.join_element(h, a);
                    if m.is_multiple_of(k.order()) && !all.contains(&k) {
                        all.insert(k.clone());
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = all.into_iter().filter(|h| h.order() == m).collect();
        subgroups.sort();
        Ok(SubgroupStream { subgroups, truncated })
    }

    pub fn normal_subgroups_of_order(
        &self,
        m: usize,
        budget: Option<u64>,
    ) -> Result<SubgroupStream, GroupError> {
        let mut s = self.enumerate_subgroups_of_order(m, budget)?;
        s.subgroups.retain(|h| h.is_normal_in(self));
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use crate::group::*;

    #[test]
    fn counts_match_brute_force() {
        let e = elementary_abelian(2, 3).unwrap();
        assert_eq!(e.enumerate_subgroups_of_order(2, None).unwrap().subgroups.len(), 7);
        assert_eq!(e.enumerate_subgroups_of_order(4, None).unwrap().subgroups.len(), 7);
        assert_eq!(cyclic(4).unwrap().enumerate_subgroups_of_order(2, None).unwrap().subgroups.len(), 1);
        assert_eq!(dihedral(8).unwrap().enumerate_subgroups_of_order(4, None).unwrap().subgroups.len(), 3);
        // Gaussian binomial [6,2]_2 = 651
        let e6 = elementary_abelian(2, 6).unwrap();
        assert_eq!(e6.enumerate_subgroups_of_order(4, None).unwrap().subgroups.len(), 651);
    }

    #[test]
    fn deterministic_and_sorted() {
        let g = heisenberg(3, 3).unwrap();
        let a = g.enumerate_subgroups_of_order(3, None).unwrap();
        let b = g.enumerate_subgroups_of_order(3, None).unwrap();
        assert_eq!(a.subgroups, b.subgroups);
        assert!(a.subgroups.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a.subgroups.len(), 13);
    }

    #[test]
    fn budget_truncates() {
        let e6 = elementary_abelian(2, 6).unwrap();
        let s = e6.enumerate_subgroups_of_order(16, Some(10)).unwrap();
        assert!(s.truncated);
        assert!(e6.enumerate_subgroups_of_order(5, None).is_err());
    }
}
