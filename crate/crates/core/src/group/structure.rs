use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::field::prime_power;
use super::{GroupError, GroupTable, Subgroup};

/// Involution count of a subgroup `S` (identity included) together with the
/// order of the commutator subgroup of the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionStats {
    pub ell: usize,
    pub commutator_order: usize,
}

/// Left cosets `gH`, each sorted, ordered by smallest member.
#[derive(Clone, Debug)]
pub struct Cosets {
    pub cosets: Vec<Vec<usize>>,
    /// `index_of[g]` is the coset containing `g`.
    pub index_of: Vec<usize>,
}

impl GroupTable {
    /// Closure of `gens` under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            self.check_element(g)?;
        }
        Ok(self.closure(gens))
    }

    pub(crate) fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        let mut queue = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask.put(y) {
                    queue.push(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// Smallest subgroup containing both `h` and `x`.
    pub(crate) fn join_element(&self, h: &Subgroup, x: usize) -> Subgroup {
        let mut mask = h.mask().clone();
        let mut queue: Vec<usize> = h.members().collect();
        let mut gens: Vec<usize> = vec![x];
        // h is already closed, so new elements arise from products with x
        // and with members of h applied to fresh elements
        if !mask.put(x) {
            queue.push(x);
        }
        gens.extend(h.members().filter(|&a| a != 0));
        while let Some(y) = queue.pop() {
            for &g in &gens {
                let z = self.mul(y, g);
                if !mask.put(z) {
                    queue.push(z);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        let ids = (0..n)
            .filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted(n, ids)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let n = self.order();
        let mut comms = FixedBitSet::with_capacity(n);
        for a in 0..n {
            for b in 0..n {
                comms.insert(self.commutator(a, b));
            }
        }
        let gens: Vec<usize> = comms.ones().collect();
        self.closure(&gens)
    }

    /// `G^p [G,G]` for a `p`-group, which is its Frattini subgroup; for
    /// groups that are not of prime-power order the subgroup generated by
    /// squares and commutators is returned.
    pub fn frattini(&self) -> Subgroup {
        let p = prime_power(self.order()).map_or(2, |(p, _)| p);
        let mut gens: Vec<usize> = (0..self.order()).map(|a| self.power(a, p)).collect();
        gens.extend(self.commutator_subgroup().members());
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    pub fn exponent(&self) -> usize {
        self.subgroup_exponent(&Subgroup::whole(self))
    }

    pub fn subgroup_exponent(&self, h: &Subgroup) -> usize {
        h.members().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_elementary_abelian(&self) -> bool {
        self.is_elementary_abelian_subgroup(&Subgroup::whole(self))
    }

    /// Abelian with prime exponent (the trivial group counts).
    pub fn is_elementary_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let e = self.subgroup_exponent(h);
        (e == 1 || super::field::is_prime(e)) && self.is_abelian_subgroup(h)
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        h.members().all(|a| h.members().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `C_B(a) = { b in B : ab = ba }`.
    pub fn centralizer(&self, b: &Subgroup, a: usize) -> Result<Subgroup, GroupError> {
        self.check_element(a)?;
        let ids = b.members().filter(|&x| self.mul(a, x) == self.mul(x, a)).collect();
        let c = Subgroup::from_sorted(self.order(), ids);
        if b.contains(a) {
            let class = self.conjugacy_class_under(b, a)?;
            assert_eq!(b.order(), class.len() * c.order(), "orbit-stabilizer");
        }
        Ok(c)
    }

    /// The orbit `a^B = { b^-1 a b : b in B }`, sorted.
    pub fn conjugacy_class_under(&self, b: &Subgroup, a: usize) -> Result<Vec<usize>, GroupError> {
        self.check_element(a)?;
        let mut orbit: Vec<usize> = b.members().map(|x| self.conjugate(a, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        Ok(orbit)
    }

    pub fn conjugacy_class_size(&self, a: usize) -> Result<usize, GroupError> {
        Ok(self.conjugacy_class_under(&Subgroup::whole(self), a)?.len())
    }

    pub fn left_cosets(&self, h: &Subgroup) -> Cosets {
        let n = self.order();
        let mut index_of = vec![usize::MAX; n];
        let mut cosets = Vec::with_capacity(n / h.order());
        for g in 0..n {
            if index_of[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.members().map(|x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                index_of[x] = cosets.len();
            }
            cosets.push(c);
        }
        Cosets { cosets, index_of }
    }

    /// Whether `G/N` is abelian, i.e. every commutator lies in `N`.
    pub fn quotient_is_abelian(&self, n: &Subgroup) -> Result<bool, GroupError> {
        if !n.is_normal_in(self) {
            return Err(GroupError::NotNormal);
        }
        let ord = self.order();
        Ok((0..ord).all(|a| (0..ord).all(|b| n.contains(self.commutator(a, b)))))
    }

    /// Product set `AB` as a membership bit-vector.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.order());
        for x in a.members() {
            for y in b.members() {
                m.insert(self.mul(x, y));
            }
        }
        m
    }

    /// `ell` = number of elements of `s` with square 1. When `case3_t` is
    /// given the caller asserts a Frohardt case-(3) context of type `(t,t)`
    /// and the bound `ell >= sqrt(t)` is enforced.
    pub fn involution_stats(
        &self,
        s: &Subgroup,
        case3_t: Option<usize>,
    ) -> Result<InvolutionStats, GroupError> {
        let ell = s.members().filter(|&a| self.mul(a, a) == 0).count();
        let stats = InvolutionStats {
            ell,
            commutator_order: self.commutator_subgroup().order(),
        };
        if let Some(t) = case3_t {
            if ell * ell < t {
                return Err(GroupError::BoundViolated(format!(
                    "ell = {ell} < sqrt({t}) in a case-(3) context"
                )));
            }
        }
        Ok(stats)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
