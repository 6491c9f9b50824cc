//! Exhaustive search for Kantor families.
//!
//! Candidates are pairs `(A, A*)`; a family is a set of `v + 1` pairs chosen
//! in increasing candidate order, so each family is produced once. Every
//! partial tuple is pruned on axioms (c) and (d) by forward checking: after
//! a pair is chosen, the remaining candidates that clash with it are
//! dropped before descending.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{classify, FrohardtCase, KantorError, KantorFamily, KantorType};
use crate::group::{GroupTable, Subgroup};
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    /// Families equal as sets of `(A, A*)` pairs are identified.
    #[default]
    Exact,
    /// Families with the same `F` are identified (first `F*` kept).
    FSet,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Cap on search nodes (and subgroup-enumeration joins).
    pub budget: Option<u64>,
    pub dedup: Dedup,
    /// Only families with `F* = F C` for a normal `C` of order `v`.
    pub require_stgq: bool,
    /// Only families with a pair satisfying Frohardt's hypotheses.
    pub require_frohardt: bool,
    /// Only families of the given Frohardt case (implies `require_frohardt`).
    pub require_case: Option<u8>,
    /// Stop after this many families; the result is then not exhaustive.
    pub max_families: Option<usize>,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            dedup: Dedup::Exact,
            require_stgq: false,
            require_frohardt: false,
            require_case: None,
            max_families: None,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub families: Vec<KantorFamily>,
    /// Budget ran out; callers must not claim exhaustiveness.
    pub truncated: bool,
    /// Stopped early because `max_families` was reached.
    pub limited: bool,
    pub nodes: u64,
    /// Why the search space was empty before any backtracking, if it was.
    pub pruned_reason: Option<String>,
}

impl SearchOutcome {
    pub fn exhaustive(&self) -> bool {
        !self.truncated && !self.limited
    }

    fn empty(reason: String) -> Self {
        SearchOutcome { families: Vec::new(), truncated: false, limited: false, nodes: 0, pruned_reason: Some(reason) }
    }
}

struct Pair {
    a: Subgroup,
    astar: Subgroup,
}

struct Ctx<'a> {
    g: &'a GroupTable,
    pairs: Vec<Pair>,
    need: usize,
    budget: Option<u64>,
    max_families: Option<usize>,
    nodes: AtomicU64,
    found: AtomicUsize,
    truncated: AtomicBool,
    limited: AtomicBool,
}

impl Ctx<'_> {
    fn compatible(&self, p: usize, q: usize) -> bool {
        let (x, y) = (&self.pairs[p], &self.pairs[q]);
        x.a.meets_trivially(&y.astar) && y.a.meets_trivially(&x.astar)
    }

    /// Axiom (c) for the triple in all three roles.
    fn triple_ok(&self, p: usize, q: usize, r: usize) -> bool {
        let (a, b, c) = (&self.pairs[p].a, &self.pairs[q].a, &self.pairs[r].a);
        super::product_hit(self.g, a, b, c).is_none()
            && super::product_hit(self.g, a, c, b).is_none()
            && super::product_hit(self.g, b, c, a).is_none()
    }

    fn stop(&self) -> bool {
        self.truncated.load(Ordering::Relaxed) || self.limited.load(Ordering::Relaxed)
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.truncated.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn dfs(&self, chosen: &mut Vec<usize>, remaining: &[usize], out: &mut Vec<Vec<usize>>) {
        if chosen.len() == self.need {
            let total = self.found.fetch_add(1, Ordering::Relaxed) + 1;
            if self.max_families.is_some_and(|m| total > m) {
                self.limited.store(true, Ordering::Relaxed);
                return;
            }
            out.push(chosen.clone());
            return;
        }
        for (pos, &c) in remaining.iter().enumerate() {
            if self.stop() || !self.tick() {
                return;
            }
            let left = self.need - chosen.len() - 1;
            if remaining.len() - pos - 1 < left {
                return;
            }
            let next: Vec<usize> = remaining[pos + 1..]
                .iter()
                .copied()
                .filter(|&x| self.compatible(c, x) && chosen.iter().all(|&p| self.triple_ok(p, c, x)))
                .collect();
            if next.len() < left {
                continue;
            }
            chosen.push(c);
            self.dfs(chosen, &next, out);
            chosen.pop();
        }
    }
}

/// Exhaustive search for Kantor families of type `(u, v)` in `g`.
///
/// Results are in canonical order (lexicographic on the sorted pair
/// indices) and are identical for serial and parallel execution unless the
/// search was truncated or limited.
pub fn search_kantor_families(
    g: Arc<GroupTable>,
    u: usize,
    v: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome, KantorError> {
    if u < 2 || v < 2 || g.order() != u * u * v {
        return Err(KantorError::BadType { order: g.order(), u, v });
    }
    let require_case = match opts.require_case {
        Some(n) => Some(FrohardtCase::from_number(n).ok_or_else(|| {
            KantorError::Group(crate::group::GroupError::Unsupported(format!("no Frohardt case {n}")))
        })?),
        None => None,
    };

    // group-level filters implied by the requested case
    let z = g.center();
    let z_exp = g.subgroup_exponent(&z);
    let z_elem = g.is_elementary_abelian_subgroup(&z);
    match require_case {
        Some(FrohardtCase::One) if !z_elem => {
            return Ok(SearchOutcome::empty("Z(K) is not elementary abelian".into()))
        }
        Some(FrohardtCase::Two) if !(z_elem && z_exp <= 2) => {
            return Ok(SearchOutcome::empty("Z(K) is not an elementary abelian 2-group".into()))
        }
        Some(FrohardtCase::Three) if z_exp != 4 => {
            return Ok(SearchOutcome::empty(format!("Z(K) has exponent {z_exp}, not 4")))
        }
        _ => {}
    }

    let mut sub_truncated = false;
    let small = g.enumerate_subgroups_of_order(u, opts.budget)?;
    sub_truncated |= small.truncated;
    let members: Vec<Subgroup> = small
        .subgroups
        .into_iter()
        .filter(|a| match require_case {
            Some(FrohardtCase::One) => g.is_elementary_abelian_subgroup(a),
            Some(FrohardtCase::Three) => g.is_elementary_abelian_subgroup(a) && g.subgroup_exponent(a) <= 2,
            _ => true,
        })
        .collect();

    // one candidate list per common subgroup C in STGQ mode, a single list otherwise
    let mut groups_of_pairs: Vec<Vec<Pair>> = Vec::new();
    if opts.require_stgq {
        let normals = g.normal_subgroups_of_order(v, opts.budget)?;
        sub_truncated |= normals.truncated;
        for c in normals.subgroups {
            let pairs: Vec<Pair> = members
                .iter()
                .filter(|a| a.meets_trivially(&c))
                .map(|a| Pair { a: a.clone(), astar: Subgroup::from_mask(g.product_set(a, &c)) })
                .collect();
            groups_of_pairs.push(pairs);
        }
    } else {
        let big = g.enumerate_subgroups_of_order(u * v, opts.budget)?;
        sub_truncated |= big.truncated;
        let mut pairs = Vec::new();
        for a in &members {
            for astar in big.subgroups.iter().filter(|s| a.is_subset(s)) {
                pairs.push(Pair { a: a.clone(), astar: astar.clone() });
            }
        }
        groups_of_pairs.push(pairs);
    }

    let ktype = KantorType::new(u, v);
    let mut families = Vec::new();
    let mut truncated = sub_truncated;
    let mut limited = false;
    let mut nodes = 0;
    for mut pairs in groups_of_pairs {
        pairs.sort_by(|x, y| (&x.a, &x.astar).cmp(&(&y.a, &y.astar)));
        let ctx = Ctx {
            g: &g,
            pairs,
            need: v + 1,
            budget: opts.budget.map(|b| b.saturating_sub(nodes)),
            max_families: opts.max_families.map(|m| m.saturating_sub(families.len())),
            nodes: AtomicU64::new(0),
            found: AtomicUsize::new(0),
            truncated: AtomicBool::new(false),
            limited: AtomicBool::new(false),
        };
        let n = ctx.pairs.len();
        let branches = par::map_range(opts.exec, n, |first| {
            let mut out = Vec::new();
            if ctx.stop() || !ctx.tick() {
                return out;
            }
            let rest: Vec<usize> = (first + 1..n).filter(|&x| ctx.compatible(first, x)).collect();
            if rest.len() + 1 >= ctx.need {
                ctx.dfs(&mut vec![first], &rest, &mut out);
            }
            out
        });
        nodes += ctx.nodes.load(Ordering::Relaxed);
        truncated |= ctx.truncated.load(Ordering::Relaxed);
        limited |= ctx.limited.load(Ordering::Relaxed);

        for idx in branches.into_iter().flatten() {
            let (f, fstar): (Vec<_>, Vec<_>) =
                idx.iter().map(|&i| (ctx.pairs[i].a.clone(), ctx.pairs[i].astar.clone())).unzip();
            let fam = KantorFamily::new(g.clone(), ktype, f, fstar);
            let report = fam.verify();
            assert!(report.passed(), "search emitted a non-family: {}", report.summary());
            if opts.require_frohardt || require_case.is_some() {
                let case = classify(&fam).case;
                if case == FrohardtCase::NotApplicable || require_case.is_some_and(|want| want != case) {
                    continue;
                }
            }
            families.push(fam);
        }
        if truncated || limited {
            break;
        }
    }

    families.sort_by(|x, y| (&x.f, &x.fstar).cmp(&(&y.f, &y.fstar)));
    if opts.dedup == Dedup::FSet {
        families.dedup_by(|x, y| x.f == y.f);
    }
    if let Some(m) = opts.max_families {
        families.truncate(m);
    }
    Ok(SearchOutcome { families, truncated, limited, nodes, pruned_reason: None })
}
