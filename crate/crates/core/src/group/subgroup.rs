use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::{GroupError, GroupTable};

/// A subgroup stored as a sorted id list plus a membership bit-vector.
///
/// Equality, ordering and hashing look at the member list only; ordering is
/// lexicographic on the sorted members, which is the canonical order used by
/// every enumeration in this crate.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: FixedBitSet,
}

impl Subgroup {
    /// Validates closure under products and inverses.
    pub fn new(g: &GroupTable, members: impl IntoIterator<Item = usize>) -> Result<Self, GroupError> {
        let mut ids: Vec<usize> = members.into_iter().collect();
        for &a in &ids {
            g.check_element(a)?;
        }
        ids.sort_unstable();
        ids.dedup();
        let h = Self::from_sorted(g.order(), ids);
        if !h.contains(0) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for a in h.members() {
            if !h.contains(g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in h.members() {
                if !h.contains(g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        assert_eq!(g.order() % h.order(), 0, "Lagrange");
        Ok(h)
    }

    /// Trusted constructor for sets already known to be subgroups.
    pub(crate) fn from_sorted(parent_order: usize, ids: Vec<usize>) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent_order);
        for &a in &ids {
            mask.insert(a);
        }
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members: ids.into_iter().map(|a| a as u32).collect(), mask }
    }

    pub(crate) fn from_mask(mask: FixedBitSet) -> Self {
        let members = mask.ones().map(|a| a as u32).collect();
        Subgroup { members, mask }
    }

    pub fn trivial(g: &GroupTable) -> Self {
        Self::from_sorted(g.order(), vec![0])
    }

    pub fn whole(g: &GroupTable) -> Self {
        Self::from_sorted(g.order(), (0..g.order()).collect())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask.contains(a)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&a| a as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    /// True when the two subgroups share only the identity.
    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.mask.intersection(&other.mask).take(2).count() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.mask.clone();
        m.intersect_with(&other.mask);
        Subgroup::from_mask(m)
    }

    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        self.members()
            .all(|h| (0..g.order()).all(|x| self.contains(g.conjugate(h, x))))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral};

    #[test]
    fn validates_closure() {
        let g = cyclic(6).unwrap();
        assert!(Subgroup::new(&g, [0, 2, 4]).is_ok());
        assert!(Subgroup::new(&g, [0, 2]).is_err());
        assert!(Subgroup::new(&g, [1, 2, 4]).is_err());
        assert!(matches!(Subgroup::new(&g, [0, 9]), Err(GroupError::OutOfRange { .. })));
    }

    #[test]
    fn normality() {
        let d8 = dihedral(8).unwrap();
        // <s> is not normal, <r> is
        assert!(!Subgroup::new(&d8, [0, 4]).unwrap().is_normal_in(&d8));
        assert!(Subgroup::new(&d8, [0, 1, 2, 3]).unwrap().is_normal_in(&d8));
    }
}
