use serde::{Deserialize, Serialize};

use super::{KantorError, KantorFamily};
use crate::group::Subgroup;

/// Frohardt's trichotomy for families with a central `S = A* ∩ B*` and
/// abelian `K/S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrohardtCase {
    /// `Z(K)` and every member of `F` elementary abelian.
    #[serde(rename = "1")]
    One,
    /// `Z(K)` an elementary abelian 2-group and some member of exponent 4.
    #[serde(rename = "2")]
    Two,
    /// `Z(K)` of exponent 4 and every member an elementary abelian 2-group.
    #[serde(rename = "3")]
    Three,
    /// The centrality or abelian-quotient hypothesis fails for this pair.
    #[serde(rename = "not-applicable")]
    NotApplicable,
    /// Hypotheses hold but none of the three cases matches. Never produced
    /// by a correct family; kept so that such an instance is reported rather
    /// than silently mislabelled.
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl FrohardtCase {
    pub fn number(self) -> Option<u8> {
        match self {
            FrohardtCase::One => Some(1),
            FrohardtCase::Two => Some(2),
            FrohardtCase::Three => Some(3),
            _ => None,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(FrohardtCase::One),
            2 => Some(FrohardtCase::Two),
            3 => Some(FrohardtCase::Three),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrohardtReport {
    pub pair: (usize, usize),
    /// `S = F*[i] ∩ F*[j]`, sorted members.
    pub s: Vec<usize>,
    pub central: bool,
    pub quotient_abelian: bool,
    pub case: FrohardtCase,
}

/// Tests Frohardt's hypotheses for the pair `(i, j)` and classifies.
pub fn frohardt_condition(fam: &KantorFamily, i: usize, j: usize) -> Result<FrohardtReport, KantorError> {
    if i == j {
        return Err(KantorError::SameIndex(i));
    }
    let len = fam.fstar.len();
    for index in [i, j] {
        if index >= len {
            return Err(KantorError::IndexOutOfRange { index, len });
        }
    }
    let g = &*fam.group;
    let s = fam.fstar[i].intersection(&fam.fstar[j]);
    let z = g.center();
    let central = s.is_subset(&z);
    // a central subgroup is normal, so the quotient test is well posed
    let quotient_abelian = central && g.quotient_is_abelian(&s)?;
    let case = if central && quotient_abelian {
        case_of(fam, &z)
    } else {
        FrohardtCase::NotApplicable
    };
    Ok(FrohardtReport { pair: (i, j), s: s.to_vec(), central, quotient_abelian, case })
}

fn case_of(fam: &KantorFamily, z: &Subgroup) -> FrohardtCase {
    let g = &*fam.group;
    let z_exp = g.subgroup_exponent(z);
    let z_elem = g.is_elementary_abelian_subgroup(z);
    let members_elem = fam.f.iter().all(|a| g.is_elementary_abelian_subgroup(a));
    let members_elem_2 = members_elem && fam.f.iter().all(|a| g.subgroup_exponent(a) <= 2);
    let some_exp4 = fam.f.iter().any(|a| g.subgroup_exponent(a) == 4);
    if z_elem && members_elem {
        FrohardtCase::One
    } else if z_elem && z_exp <= 2 && some_exp4 {
        FrohardtCase::Two
    } else if z_exp == 4 && members_elem_2 {
        FrohardtCase::Three
    } else {
        FrohardtCase::Unclassified
    }
}

/// Frohardt reports for every unordered pair, plus the family's case when
/// at least one pair satisfies the hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub pairs: Vec<FrohardtReport>,
    pub case: FrohardtCase,
}

pub fn classify(fam: &KantorFamily) -> FamilyClassification {
    let n = fam.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(frohardt_condition(fam, i, j).expect("distinct in-range indices"));
        }
    }
    let case = pairs
        .iter()
        .map(|r| r.case)
        .find(|c| *c != FrohardtCase::NotApplicable)
        .unwrap_or(FrohardtCase::NotApplicable);
    // the case depends only on Z(K) and F, never on the pair
    debug_assert!(pairs
        .iter()
        .all(|r| r.case == FrohardtCase::NotApplicable || r.case == case));
    FamilyClassification { pairs, case }
}
