//! Subquadrangles of an elation quadrangle induced by subplanes of the
//! translation plane at its elation point.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    gq_from_kantor, gq_isomorphic, symplectic_quadrangle, GeometryError, IsoError, IsoOptions, KantorGq,
};
use crate::group::{prime_power, GroupError, Subgroup};
use crate::kantor::{KantorError, KantorFamily, KantorReport, KantorType};
use crate::planes::{
    derived_plane, find_subplanes, plane_translation_group, AffinePlane, PlaneError, PlaneTranslationGroup, Subplane,
};
use crate::regularity::{is_regular_point, symmetry_group, Element, RegularityError};

#[derive(Debug, Error)]
pub enum SubGqError {
    #[error("the plane point of the base point is not in the subplane")]
    BasepointNotInSubplane,
    #[error("order ({s}, {t}) is not of the form (p^h, p^h)")]
    NotPrimePowerOrder { s: usize, t: usize },
    /// The constructed pair fails the Kantor axioms, which the
    /// subquadrangle construction says cannot happen.
    #[error("lemma counterexample candidate: {0}")]
    LemmaCounterexample(String),
    #[error("embedding into the parent failed: {0}")]
    Embedding(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Kantor(#[from] KantorError),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// The data of one induced subquadrangle.
#[derive(Clone, Debug)]
pub struct SubGqResult {
    pub r: usize,
    pub sigma: usize,
    /// `K' = <A'_j>` as a subgroup of `K`.
    pub kprime: Subgroup,
    /// Kernel of `K'` on the subplane.
    pub sprime: Subgroup,
    /// `A'_j` and `A'_j S'` as subgroups of `K`.
    pub fprime: Vec<Subgroup>,
    pub fprimestar: Vec<Subgroup>,
    /// The same family written in the subgroup table of `K'`.
    pub family: KantorFamily,
    pub report: KantorReport,
    pub sub: KantorGq,
    /// Parent point id of each sub-quadrangle point.
    pub point_embedding: Vec<usize>,
    pub line_embedding: Vec<usize>,
    /// Whether `S <= K'`.
    pub s_in_kprime: bool,
    /// `x` is regular in the sub-quadrangle.
    pub x_regular: bool,
    /// Size of the group of symmetries about `x` inside `K'`.
    pub x_symmetries: usize,
    pub subplane_classes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubGqSummary {
    pub r: usize,
    pub sigma: usize,
    pub kprime_order: usize,
    pub sprime: Vec<usize>,
    pub fprime: Vec<Vec<usize>>,
    pub fprimestar: Vec<Vec<usize>>,
    pub s_in_kprime: bool,
    pub x_regular: bool,
    pub x_symmetries: usize,
    pub subplane_classes: Vec<usize>,
    pub axioms_pass: bool,
    pub sub_order: (usize, usize),
}

impl SubGqResult {
    pub fn summary(&self) -> SubGqSummary {
        SubGqSummary {
            r: self.r,
            sigma: self.sigma,
            kprime_order: self.kprime.order(),
            sprime: self.sprime.to_vec(),
            fprime: self.fprime.iter().map(|a| a.to_vec()).collect(),
            fprimestar: self.fprimestar.iter().map(|a| a.to_vec()).collect(),
            s_in_kprime: self.s_in_kprime,
            x_regular: self.x_regular,
            x_symmetries: self.x_symmetries,
            subplane_classes: self.subplane_classes.clone(),
            axioms_pass: self.report.passed(),
            sub_order: self.sub.gq.order(),
        }
    }
}

/// Elements of the elation group fixing every point collinear with `(∞)`:
/// the symmetries about `(∞)` inside `K`, which is the kernel of `K` on the
/// plane at `(∞)`.
pub fn elation_kernel(kg: &KantorGq) -> Subgroup {
    let perp: Vec<usize> = kg.gq.perp_mask(kg.layout.infinity).ones().collect();
    let ids: Vec<usize> = (0..kg.action.maps.len())
        .filter(|&k| perp.iter().all(|&p| kg.action.maps[k].point(p) == p))
        .collect();
    Subgroup::new(&kg.family.group, ids).expect("a pointwise stabilizer is a subgroup")
}

/// The plane, its translation group and the plane point of the base point
/// `z` (the identity element's point) for a quadrangle built from a family.
pub struct PlaneContext {
    pub plane: AffinePlane,
    pub tgroup: PlaneTranslationGroup,
    pub basepoint: usize,
}

pub fn plane_context(kg: &KantorGq, s: &Subgroup) -> Result<PlaneContext, SubGqError> {
    let plane = derived_plane(&kg.gq, kg.layout.infinity)?;
    let tgroup = plane_translation_group(&plane, &kg.action, s)?;
    let z = kg.layout.element_point(0);
    let key = crate::planes::trace_key(&kg.gq, kg.layout.infinity, z);
    let basepoint = plane.point_by_key(&key).expect("the trace of z is a plane point");
    Ok(PlaneContext { plane, tgroup, basepoint })
}

/// Builds the subquadrangle induced by `sub`: `A'_j = A_j ∩ π^{-1}(T')`
/// for the selected classes, `K' = <A'_j>`, `S'` the kernel of `K'` on the
/// subplane and `A'_j* = A'_j S'`. The family is verified, realized by the
/// coset construction inside `K'`, and embedded into the parent.
pub fn subgq_from_subplane(
    kg: &KantorGq,
    s: &Subgroup,
    ctx: &PlaneContext,
    sub: &Subplane,
) -> Result<SubGqResult, SubGqError> {
    let g = &*kg.family.group;
    let gq = &kg.gq;
    let x = kg.layout.infinity;
    if sub.points.binary_search(&ctx.basepoint).is_err() {
        return Err(SubGqError::BasepointNotInSubplane);
    }
    let projection = ctx.tgroup.projection.as_ref().expect("induced translation group");
    let r = sub.plane.order;

    // class of the line through x meeting the line of member i through z
    let line_keys = ctx.plane.line_keys.as_ref().expect("derived plane");
    let member_class: Vec<usize> = (0..kg.family.len())
        .map(|i| {
            let u = kg.layout.member_line(i, 0);
            let p = gq.projection(x, u).expect("z's lines miss x");
            let y = line_keys.binary_search(&p).expect("projection lies in x^⊥");
            ctx.plane.class_of(y)
        })
        .collect();

    let mut fprime = Vec::new();
    let mut members_used = Vec::new();
    for &c in &sub.classes {
        // lowest member index realizing the class
        let i = (0..member_class.len()).find(|&i| member_class[i] == c).expect("every class meets z");
        let ids: Vec<usize> = kg.family.f[i].members().filter(|&k| sub.tsub.contains(projection[k])).collect();
        fprime.push(Subgroup::new(g, ids)?);
        members_used.push(i);
    }
    let gens: Vec<usize> = fprime.iter().flat_map(|a| a.members()).collect();
    let kprime = g.subgroup_generated(&gens)?;
    let sub_points: Vec<usize> = sub.points.clone();
    let sprime_ids: Vec<usize> = kprime
        .members()
        .filter(|&k| {
            let m = &ctx.tgroup.maps[projection[k]];
            sub_points.iter().all(|&p| m.point(p) == p)
        })
        .collect();
    let sprime = Subgroup::new(g, sprime_ids)?;
    let sigma = sprime.order();
    let fprimestar: Vec<Subgroup> =
        fprime.iter().map(|a| Subgroup::from_mask(g.product_set(a, &sprime))).collect();

    let (ktab, embed) = g.subgroup_table(&kprime, format!("K' < {}", g.name()));
    let mut local = vec![usize::MAX; g.order()];
    for (i, &e) in embed.iter().enumerate() {
        local[e] = i;
    }
    let ktab = Arc::new(ktab);
    let to_local = |h: &Subgroup| Subgroup::new(&ktab, h.members().map(|e| local[e]));
    let lf = fprime.iter().map(&to_local).collect::<Result<Vec<_>, _>>();
    let lfs = fprimestar.iter().map(&to_local).collect::<Result<Vec<_>, _>>();
    let (lf, lfs) = match (lf, lfs) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return Err(SubGqError::LemmaCounterexample(format!("F' or F'* is not a subgroup of K': {e}")))
        }
    };
    let family = KantorFamily::new(ktab.clone(), KantorType::new(r, sigma), lf, lfs);
    let report = family.verify();
    if !report.passed() || sigma < 2 || kprime.order() != r * r * sigma {
        return Err(SubGqError::LemmaCounterexample(format!(
            "|K'| = {}, r = {r}, sigma = {sigma}: {}",
            kprime.order(),
            report.summary()
        )));
    }
    let subkg = gq_from_kantor(&family)?;

    // embed by matching cosets
    let sl = &subkg.layout;
    let mut point_embedding = vec![usize::MAX; subkg.gq.num_points()];
    point_embedding[sl.infinity] = x;
    for (j, &i) in members_used.iter().enumerate() {
        for coset in &sl.star_cosets[j].cosets {
            point_embedding[sl.star_point(j, coset[0])] = kg.layout.star_point(i, embed[coset[0]]);
        }
    }
    for k in 0..ktab.order() {
        point_embedding[sl.element_point(k)] = kg.layout.element_point(embed[k]);
    }
    let mut line_embedding = vec![usize::MAX; subkg.gq.num_lines()];
    for (j, &i) in members_used.iter().enumerate() {
        line_embedding[sl.symbol_line(j)] = kg.layout.symbol_line(i);
        for coset in &sl.member_cosets[j].cosets {
            line_embedding[sl.member_line(j, coset[0])] = kg.layout.member_line(i, embed[coset[0]]);
        }
    }
    let sg = subkg.gq.geometry();
    let pg = gq.geometry();
    let mut seen = point_embedding.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != point_embedding.len() {
        return Err(SubGqError::Embedding("point embedding is not injective".into()));
    }
    for l in 0..sg.num_lines() {
        if let Some(&p) = sg.line(l).iter().find(|&&p| !pg.incident(point_embedding[p], line_embedding[l])) {
            return Err(SubGqError::Embedding(format!("sub point {p} is not on the image of sub line {l}")));
        }
    }

    let x_regular = is_regular_point(&subkg.gq, sl.infinity)?;
    let sym_maps: Vec<_> = (0..ktab.order())
        .filter(|&k| sprime.contains(embed[k]))
        .map(|k| subkg.action.maps[k].clone())
        .collect();
    let x_symmetries = symmetry_group(&subkg.gq, Element::point(sl.infinity), &sym_maps)?.len();
    Ok(SubGqResult {
        r,
        sigma,
        s_in_kprime: s.is_subset(&kprime),
        kprime,
        sprime,
        fprime,
        fprimestar,
        family,
        report,
        sub: subkg,
        point_embedding,
        line_embedding,
        x_regular,
        x_symmetries,
        subplane_classes: sub.classes.clone(),
    })
}

/// All subquadrangles of order `(p, σ)` induced by subplanes of order `p`,
/// where `t = p^h`.
pub struct ClassicalOutcome {
    pub p: usize,
    pub results: Vec<SubGqResult>,
    /// For `p` in {2, 3}: whether each result is isomorphic to `W(p)`.
    pub classical: Vec<Option<bool>>,
    pub subplanes_searched: usize,
    pub truncated: bool,
}

pub fn classical_subgqs(kg: &KantorGq, s: &Subgroup, budget: Option<u64>) -> Result<ClassicalOutcome, SubGqError> {
    let (st, tt) = kg.gq.order();
    let (p, _) = prime_power(tt).filter(|_| st == tt).ok_or(SubGqError::NotPrimePowerOrder { s: st, t: tt })?;
    let ctx = plane_context(kg, s)?;
    let search = find_subplanes(&ctx.plane, &ctx.tgroup, p, ctx.basepoint, budget)?;
    let w = if p <= 3 { Some(symplectic_quadrangle(p)?) } else { None };
    let mut results = Vec::new();
    let mut classical = Vec::new();
    for sp in &search.subplanes {
        let res = subgq_from_subplane(kg, s, &ctx, sp)?;
        classical.push(match &w {
            Some(w) => Some(gq_isomorphic(&res.sub.gq, w, IsoOptions::default())?.is_some()),
            None => None,
        });
        results.push(res);
    }
    Ok(ClassicalOutcome {
        p,
        results,
        classical,
        subplanes_searched: search.subplanes.len(),
        truncated: search.truncated,
    })
}


#[cfg(test)]
mod gq44 {
    use super::*;
    use crate::catalog;
    use crate::kantor::stgq_condition;

    #[test]
    fn w2_inside_gq44() {
        let fam = catalog::conic_translation_family(4).unwrap();
        let s = stgq_condition(&fam).unwrap();
        let kg = gq_from_kantor(&fam).unwrap();
        assert_eq!(kg.gq.num_points(), 85);
        let out = classical_subgqs(&kg, &s, None).unwrap();
        assert!(!out.results.is_empty());
        for (res, c) in out.results.iter().zip(&out.classical) {
            assert_eq!(res.r, 2);
            assert!(res.report.passed());
            assert_eq!(*c, Some(true));
            assert!(res.x_regular);
            assert_eq!(res.x_symmetries, res.sigma);
        }
    }
}
