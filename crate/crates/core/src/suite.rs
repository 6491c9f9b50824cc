//! The two catalogue suites and their reports.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::geometry::{automorphisms, gq_from_kantor, IsoOptions};
use crate::group::{GroupError, GroupTable};
use crate::io::{self, GroupFile, IoError};
use crate::kantor::{classify, search_kantor_families, FrohardtCase, KantorError, SearchOptions};
use crate::par::{self, Exec};
use crate::regularity::{is_center_of_symmetry, is_regular, Element};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Kantor(#[from] KantorError),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    ConfirmedOnSearchedSpace,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceStatus {
    Pass,
    /// Nothing to check: no family passed the filters.
    Vacuous,
    Fail,
}

/// A list of groups to run a suite over.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub source: String,
    pub groups: Vec<GroupTable>,
    /// Whether the list contains every group of its order up to isomorphism.
    pub exhaustive: bool,
    pub sha256: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub name: String,
    #[serde(default)]
    pub exhaustive: bool,
    pub groups: Vec<GroupFile>,
}

impl Catalog {
    /// All groups of order 8, all groups of order 27, or the partial list of
    /// groups of order 64.
    pub fn builtin(t: usize) -> Result<Catalog, SuiteError> {
        let (groups, exhaustive, source) = match t {
            2 => (catalog::order8_groups(), true, "built-in: all groups of order 8"),
            3 => (catalog::order27_groups(), true, "built-in: all groups of order 27"),
            4 => (
                catalog::order64_catalog().iter().map(|k| k.build()).collect::<Result<Vec<_>, _>>()?,
                false,
                "built-in: partial list of groups of order 64",
            ),
            _ => return Err(SuiteError::Usage(format!("no built-in catalogue for t = {t}"))),
        };
        Ok(Catalog { source: source.into(), groups, exhaustive, sha256: None })
    }

    pub fn to_file(&self) -> CatalogFile {
        CatalogFile {
            name: self.source.clone(),
            exhaustive: self.exhaustive,
            groups: self.groups.iter().map(GroupFile::from_group).collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Catalog, SuiteError> {
        let text = io::read_text(path)?;
        let file: CatalogFile = io::parse(path, &text)?;
        let groups = file
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| g.to_group(path, &format!("groups[{i}].table")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog {
            source: path.display().to_string(),
            groups,
            exhaustive: file.exhaustive,
            sha256: Some(io::sha256_hex(text.as_bytes())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub group: String,
    pub order: usize,
    pub group_sha256: String,
    #[serde(rename = "type")]
    pub ktype: [usize; 2],
    pub filters: Vec<String>,
    pub families: usize,
    pub truncated: bool,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub case_tallies: BTreeMap<String, usize>,
    pub status: InstanceStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// Timing, kept apart so reports can be compared byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub t: usize,
    pub catalog: String,
    pub catalog_exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_sha256: Option<String>,
    pub instances: Vec<InstanceReport>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sidecar: Option<Sidecar>,
}

impl SuiteReport {
    /// The report without timing, as pretty JSON.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.sidecar = None;
        serde_json::to_string_pretty(&r).expect("serializable report")
    }

    fn finish(
        suite: &str,
        t: usize,
        cat: &Catalog,
        instances: Vec<InstanceReport>,
        mut warnings: Vec<String>,
        start: Instant,
    ) -> Self {
        let verdict = if instances.iter().any(|i| i.status == InstanceStatus::Fail) {
            Verdict::Failed
        } else if instances.iter().any(|i| i.truncated) || !cat.exhaustive {
            Verdict::ConfirmedOnSearchedSpace
        } else {
            Verdict::Confirmed
        };
        if instances.iter().any(|i| i.truncated) {
            warnings.push("at least one search was truncated by the budget".into());
        }
        if !cat.exhaustive {
            warnings.push("the catalogue does not contain every group of this order".into());
        }
        if instances.is_empty() {
            warnings.push("empty catalogue: the verdict is vacuous".into());
        }
        SuiteReport {
            suite: suite.into(),
            t,
            catalog: cat.source.clone(),
            catalog_exhaustive: cat.exhaustive,
            catalog_sha256: cat.sha256.clone(),
            instances,
            verdict,
            warnings,
            sidecar: Some(Sidecar { wall_time_ms: start.elapsed().as_millis() }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Node budget for each search.
    pub budget: Option<u64>,
    pub exec: Exec,
}

fn group_hash(g: &GroupTable) -> String {
    io::sha256_hex(serde_json::to_string(&GroupFile::from_group(g)).expect("serializable").as_bytes())
}

fn check_order(cat: &Catalog, t: usize) -> Result<(), SuiteError> {
    if t < 2 {
        return Err(SuiteError::Usage(format!("t = {t} must be at least 2")));
    }
    if let Some(g) = cat.groups.iter().find(|g| g.order() != t * t * t) {
        return Err(SuiteError::Usage(format!("{} has order {}, expected {}", g.name(), g.order(), t * t * t)));
    }
    Ok(())
}

/// Searches every group for type-`(t,t)` families and classifies them by
/// Frohardt's trichotomy; passes when none is in case (3). For `t <= 3`
/// all families are found and tallied; beyond that the search looks only
/// for case-(3) families.
pub fn suite_frohardt_case3(cat: &Catalog, t: usize, opts: SuiteOptions) -> Result<SuiteReport, SuiteError> {
    check_order(cat, t)?;
    let start = Instant::now();
    let full = t <= 3;
    let rows = par::map(opts.exec, &cat.groups, |g| -> Result<InstanceReport, SuiteError> {
        let g = Arc::new(g.clone());
        let search = SearchOptions {
            budget: opts.budget,
            require_case: (!full).then_some(3),
            exec: opts.exec,
            ..Default::default()
        };
        let out = search_kantor_families(g.clone(), t, t, &search)?;
        let mut tallies = BTreeMap::new();
        let mut failures = Vec::new();
        for (i, fam) in out.families.iter().enumerate() {
            let case = classify(fam).case;
            let key = case.number().map_or_else(|| format!("{case:?}").to_lowercase(), |n| n.to_string());
            *tallies.entry(key).or_insert(0) += 1;
            if case == FrohardtCase::Three {
                failures.push(format!("family {i} is in case 3"));
            }
        }
        let mut notes = Vec::new();
        if let Some(r) = out.pruned_reason {
            notes.push(format!("no search needed: {r}"));
        }
        if t % 2 == 1 {
            notes.push("case 3 needs a center of exponent 4, impossible in odd order".into());
        }
        let status = if !failures.is_empty() {
            InstanceStatus::Fail
        } else if out.families.is_empty() {
            InstanceStatus::Vacuous
        } else {
            InstanceStatus::Pass
        };
        Ok(InstanceReport {
            group: g.name().into(),
            order: g.order(),
            group_sha256: group_hash(&g),
            ktype: [t, t],
            filters: if full { vec![] } else { vec!["frohardt-case=3".into()] },
            families: out.families.len(),
            truncated: out.truncated,
            nodes: out.nodes,
            case_tallies: tallies,
            status,
            notes,
            failures,
        })
    });
    let instances = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::finish("frohardt-case3", t, cat, instances, Vec::new(), start))
}

/// Checks that every line through `(∞)` is an axis of symmetry, using the
/// elation group and, for 15 points or fewer, the full automorphism group.
fn lines_are_axes(fam: &crate::kantor::KantorFamily) -> Result<(bool, String), SuiteError> {
    let kg = gq_from_kantor(fam).map_err(|e| SuiteError::Usage(e.to_string()))?;
    let gq = &kg.gq;
    let pencil = gq.geometry().pencil(kg.layout.infinity).to_vec();
    let axis = |maps: &[crate::geometry::GeometryMap]| {
        pencil.iter().all(|&l| is_center_of_symmetry(gq, Element::line(l), maps).expect("automorphisms"))
    };
    let regular = pencil.iter().all(|&l| is_regular(gq, Element::line(l), Exec::Serial).expect("in range"));
    if !regular {
        return Ok((false, "a line through (∞) is not regular".into()));
    }
    if axis(&kg.action.maps) {
        return Ok((true, "axes found in the elation group".into()));
    }
    if gq.num_points() <= 15 {
        let auts = automorphisms(gq.geometry(), IsoOptions::default()).map_err(|e| SuiteError::Usage(e.to_string()))?;
        if axis(&auts) {
            return Ok((true, "axes found in the full automorphism group".into()));
        }
    }
    Ok((false, "a line through (∞) is not an axis of symmetry".into()))
}

/// For even `t`: every type-`(t,t)` family satisfying the skew-translation
/// condition must live in an elementary abelian group, and the lines through
/// `(∞)` of its quadrangle must be axes of symmetry. In elementary abelian
/// groups of order above 8 only one witness family is examined, since the
/// conclusion holds for the group as a whole.
pub fn suite_even_stgq_is_tgq(cat: &Catalog, t: usize, opts: SuiteOptions) -> Result<SuiteReport, SuiteError> {
    check_order(cat, t)?;
    if t % 2 == 1 {
        return Err(SuiteError::Usage(format!("t = {t} must be even")));
    }
    let start = Instant::now();
    let rows = par::map(opts.exec, &cat.groups, |g| -> Result<InstanceReport, SuiteError> {
        let g = Arc::new(g.clone());
        let ea = g.is_elementary_abelian();
        let witness_only = ea && t > 2;
        let search = SearchOptions {
            budget: opts.budget,
            require_stgq: true,
            max_families: witness_only.then_some(1),
            exec: opts.exec,
            ..Default::default()
        };
        let out = search_kantor_families(g.clone(), t, t, &search)?;
        let mut failures = Vec::new();
        let mut notes = Vec::new();
        if witness_only {
            notes.push("elementary abelian: one witness family examined".into());
        }
        for (i, fam) in out.families.iter().enumerate() {
            if !ea {
                failures.push(format!("family {i} satisfies the skew-translation condition in a group that is not elementary abelian"));
                continue;
            }
            let (ok, how) = lines_are_axes(fam)?;
            if ok {
                if !notes.contains(&how) {
                    notes.push(how);
                }
            } else {
                failures.push(format!("family {i}: {how}"));
            }
        }
        let status = if !failures.is_empty() {
            InstanceStatus::Fail
        } else if out.families.is_empty() {
            InstanceStatus::Vacuous
        } else {
            InstanceStatus::Pass
        };
        Ok(InstanceReport {
            group: g.name().into(),
            order: g.order(),
            group_sha256: group_hash(&g),
            ktype: [t, t],
            filters: vec!["stgq".into()],
            families: out.families.len(),
            truncated: out.truncated,
            nodes: out.nodes,
            case_tallies: BTreeMap::new(),
            status,
            notes,
            failures,
        })
    });
    let instances = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::finish("even-stgq-is-tgq", t, cat, instances, Vec::new(), start))
}

/// Several suite reports with the worst verdict among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedReport {
    pub verdict: Verdict,
    pub reports: Vec<SuiteReport>,
}

pub fn merge_reports(reports: Vec<SuiteReport>) -> MergedReport {
    let verdict = reports.iter().map(|r| r.verdict).max().unwrap_or(Verdict::Confirmed);
    MergedReport { verdict, reports }
}
