use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use forge_core::geometry::{
    benson_check, benson_table, gq_from_kantor, gq_isomorphic, symplectic_quadrangle, verify_gq, Gq, IsoError,
    IsoOptions, KantorGq,
};
use forge_core::group::{GroupKind, GroupTable};
use forge_core::io::{self, FamilyFile, GeometryFile, GroupFile, IoError, PlaneFile};
use forge_core::kantor::{classify, search_kantor_families, KantorFamily, SearchOptions};
use forge_core::planes::{find_spreads, find_subplanes, plane_from_spread};
use forge_core::regularity::{
    check_star_property, double_perp, irregular_witness, is_regular_pair, perp, symmetry_group, Element,
};
use forge_core::subgq::{elation_kernel, plane_context, subgq_from_subplane, SubGqError};
use forge_core::suite::{merge_reports, suite_even_stgq_is_tgq, suite_frohardt_case3, Catalog, SuiteOptions, SuiteReport, Verdict};
use forge_core::{catalog, Exec};
use serde_json::{json, Value};

use crate::{usage, Cli, Command, Exit, GqCmd, GqSource, Global, GroupCmd, KantorCmd, PlaneCmd, RegCmd, ReportCmd, SubgqCmd, SuiteCmd};

fn input(e: IoError) -> anyhow::Error {
    usage(e.to_string())
}

fn exec(g: &Global) -> Exec {
    if g.threads == Some(1) {
        Exec::Serial
    } else {
        Exec::Parallel
    }
}

fn emit(g: &Global, value: &Value) -> Result<()> {
    match &g.out {
        Some(p) => io::write_json(p, value).map_err(input),
        None => print_json(value),
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(value)?) {
        // a closed pipe (e.g. `| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn load_family(path: &Path) -> Result<KantorFamily> {
    io::read_family(path).map_err(input)
}

fn load_group(spec: &str) -> Result<GroupTable> {
    if Path::new(spec).is_file() {
        return io::read_group(Path::new(spec)).map_err(input);
    }
    let kind = GroupKind::parse(spec).map_err(|e| usage(e.to_string()))?;
    kind.build().map_err(|e| usage(e.to_string()))
}

fn family_gq(path: &Path) -> Result<KantorGq> {
    let fam = load_family(path)?;
    gq_from_kantor(&fam).map_err(|e| Exit { code: 1, message: e.to_string() }.into())
}

fn load_gq(src: &GqSource) -> Result<(Gq, Option<KantorGq>)> {
    match (&src.family, &src.geometry) {
        (Some(f), _) => {
            let kg = family_gq(f)?;
            Ok((kg.gq.clone(), Some(kg)))
        }
        (None, Some(g)) => {
            let geom = io::read_geometry(g).map_err(input)?;
            let gq = verify_gq(&geom).map_err(|f| Exit { code: 1, message: format!("not a quadrangle: {f}") })?;
            Ok((gq, None))
        }
        (None, None) => Err(usage("give --family or --geometry")),
    }
}

fn element(lines: bool, id: usize) -> Element {
    if lines {
        Element::line(id)
    } else {
        Element::point(id)
    }
}

fn iso_error(e: IsoError) -> anyhow::Error {
    match e {
        IsoError::Budget(_) => Exit { code: 3, message: e.to_string() }.into(),
        IsoError::TooLarge(_) => usage(e.to_string()),
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    let g = cli.global;
    #[cfg(feature = "parallel")]
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
    }
    if g.seed_doc {
        return seed_doc(&g);
    }
    let Some(command) = cli.command else {
        return Err(usage("no command given; see --help"));
    };
    match command {
        Command::Group(GroupCmd::Build { spec }) => {
            let grp = load_group(&spec)?;
            emit(&g, &serde_json::to_value(GroupFile::from_group(&grp))?)?;
            Ok(0)
        }
        Command::Kantor(k) => kantor(&g, k),
        Command::Gq(c) => gq(&g, c),
        Command::Reg(c) => reg(&g, c),
        Command::Plane(c) => plane(&g, c),
        Command::Subgq(SubgqCmd::Extract { parent, family, subplane_order }) => {
            extract(&g, parent.as_deref(), &family, subplane_order)
        }
        Command::Suite(c) => suite(&g, c),
        Command::Report(ReportCmd::Merge { reports }) => {
            let rs = reports.iter().map(|p| io::read_json::<SuiteReport>(p).map_err(input)).collect::<Result<Vec<_>>>()?;
            let merged = merge_reports(rs);
            emit(&g, &serde_json::to_value(&merged)?)?;
            Ok(if merged.verdict == Verdict::Failed { 1 } else { 0 })
        }
    }
}

fn seed_doc(g: &Global) -> Result<u8> {
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut written = Vec::new();
    for t in [2, 3, 4] {
        let cat = Catalog::builtin(t)?;
        let path = dir.join(format!("catalog-order{}.json", t * t * t));
        io::write_json(&path, &cat.to_file()).map_err(input)?;
        written.push(path.display().to_string());
    }
    print_json(&json!({ "written": written }))?;
    Ok(0)
}

fn kantor(g: &Global, cmd: KantorCmd) -> Result<u8> {
    match cmd {
        KantorCmd::Verify { family } => {
            let fam = load_family(&family)?;
            let report = fam.verify();
            emit(g, &json!({ "passed": report.passed(), "report": report }))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        KantorCmd::Classify { family } => {
            let fam = load_family(&family)?;
            let report = fam.verify();
            if !report.passed() {
                emit(g, &json!({ "passed": false, "report": report }))?;
                return Ok(1);
            }
            emit(g, &serde_json::to_value(classify(&fam))?)?;
            Ok(0)
        }
        KantorCmd::Search { group, r#type, require_stgq, require_case, max_families } => {
            let grp = Arc::new(load_group(&group)?);
            let opts = SearchOptions {
                budget: g.budget,
                require_stgq,
                require_case,
                max_families,
                exec: exec(g),
                ..Default::default()
            };
            let out = search_kantor_families(grp.clone(), r#type[0], r#type[1], &opts)
                .map_err(|e| usage(e.to_string()))?;
            let fams: Vec<Value> = out
                .families
                .iter()
                .map(|f| {
                    json!({
                        "F": f.f.iter().map(|a| a.to_vec()).collect::<Vec<_>>(),
                        "Fstar": f.fstar.iter().map(|a| a.to_vec()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(
                g,
                &json!({
                    "group": GroupFile::from_group(&grp),
                    "type": r#type,
                    "families": fams,
                    "count": out.families.len(),
                    "truncated": out.truncated,
                    "limited": out.limited,
                    "nodes": out.nodes,
                    "pruned_reason": out.pruned_reason,
                }),
            )?;
            Ok(if out.truncated { 3 } else { 0 })
        }
        KantorCmd::Builtin { name } => {
            let fam = match name.as_str() {
                "e8" => catalog::e8_family(),
                "heis3" => catalog::heisenberg3_family()?,
                "conic4" => catalog::conic_translation_family(4)?,
                other => return Err(usage(format!("unknown built-in family {other:?}; try e8, heis3, conic4"))),
            };
            emit(g, &serde_json::to_value(FamilyFile::inline(&fam))?)?;
            Ok(0)
        }
    }
}

fn gq(g: &Global, cmd: GqCmd) -> Result<u8> {
    match cmd {
        GqCmd::Build { family } => {
            let kg = family_gq(&family)?;
            emit(g, &serde_json::to_value(GeometryFile::from_geometry(kg.gq.geometry()))?)?;
            Ok(0)
        }
        GqCmd::Verify { geometry } => {
            let geom = io::read_geometry(&geometry).map_err(input)?;
            match verify_gq(&geom) {
                Ok(q) => {
                    emit(g, &json!({ "ok": true, "order": [q.s(), q.t()], "points": q.num_points(), "lines": q.num_lines() }))?;
                    Ok(0)
                }
                Err(f) => {
                    emit(g, &json!({ "ok": false, "witness": f }))?;
                    Ok(1)
                }
            }
        }
        GqCmd::Benson { family, table } => {
            if let Some(max) = table {
                let rows = benson_table(max);
                emit(g, &json!({ "congruence": "(t+1)(s+1) + st ≡ st + 1 (mod s+t)", "rows": rows }))?;
                return Ok(0);
            }
            let family = family.ok_or_else(|| usage("give a family file or --table"))?;
            let kg = family_gq(&family)?;
            let reports = kg
                .action
                .maps
                .iter()
                .map(|m| benson_check(&kg.gq, m))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.ok);
            emit(g, &json!({ "ok": ok, "order": kg.gq.order(), "elements": reports }))?;
            Ok(if ok { 0 } else { 1 })
        }
        GqCmd::Iso { a, b } => {
            let load = |p: &Path| -> Result<Gq> {
                let geom = io::read_geometry(p).map_err(input)?;
                verify_gq(&geom).map_err(|f| Exit { code: 1, message: format!("{}: not a quadrangle: {f}", p.display()) }.into())
            };
            let (qa, qb) = (load(&a)?, load(&b)?);
            let opts = g.budget.map_or_else(IsoOptions::default, |budget| IsoOptions { budget });
            let m = gq_isomorphic(&qa, &qb, opts).map_err(iso_error)?;
            emit(g, &json!({ "isomorphic": m.is_some(), "map": m }))?;
            Ok(0)
        }
    }
}

fn reg(g: &Global, cmd: RegCmd) -> Result<u8> {
    let bad = |e: forge_core::regularity::RegularityError| usage(e.to_string());
    match cmd {
        RegCmd::Perp { src, lines, ids } => {
            let (q, _) = load_gq(&src)?;
            let set: Vec<Element> = ids.iter().map(|&i| element(lines, i)).collect();
            let p = perp(&q, &set).map_err(bad)?;
            let mut out = json!({ "perp": p, "size": p.len() });
            if set.len() == 2 {
                let dp = double_perp(&q, set[0], set[1]).map_err(bad)?;
                out["double_perp"] = json!({ "members": dp.members, "size": dp.len() });
            }
            emit(g, &out)?;
            Ok(0)
        }
        RegCmd::Pair { src, lines, x, y } => {
            let (q, _) = load_gq(&src)?;
            let (ex, ey) = (element(lines, x), element(lines, y));
            let regular = is_regular_pair(&q, ex, ey).map_err(bad)?;
            let dp = double_perp(&q, ex, ey).map_err(bad)?;
            emit(g, &json!({ "regular": regular, "double_perp": dp.members }))?;
            Ok(0)
        }
        RegCmd::Point { src, lines, x } => {
            let (q, _) = load_gq(&src)?;
            let w = irregular_witness(&q, element(lines, x), exec(g)).map_err(bad)?;
            emit(g, &json!({ "regular": w.is_none(), "irregular_with": w }))?;
            Ok(0)
        }
        RegCmd::Symmetry { family, lines, x } => {
            let kg = family_gq(&family)?;
            let e = element(lines, x);
            let sym = symmetry_group(&kg.gq, e, &kg.action.maps).map_err(bad)?;
            let want = if lines { kg.gq.s() } else { kg.gq.t() };
            emit(g, &json!({ "center": e, "size": sym.len(), "needed": want, "is_center": sym.len() == want }))?;
            Ok(0)
        }
        RegCmd::Star { family, line } => {
            let kg = family_gq(&family)?;
            let holds = check_star_property(&kg.gq, &kg.action.maps, kg.layout.infinity, line).map_err(bad)?;
            emit(g, &json!({ "holds": holds }))?;
            Ok(0)
        }
    }
}

fn plane(g: &Global, cmd: PlaneCmd) -> Result<u8> {
    match cmd {
        PlaneCmd::Derive { family } => {
            let kg = family_gq(&family)?;
            let s = elation_kernel(&kg);
            let ctx = plane_context(&kg, &s).map_err(|e| Exit { code: 1, message: e.to_string() })?;
            let mut out = serde_json::to_value(PlaneFile::from_plane(&ctx.plane))?;
            out["order"] = json!(ctx.plane.order);
            out["translation_group_order"] = json!(ctx.tgroup.order());
            out["kernel"] = json!(s.to_vec());
            emit(g, &out)?;
            Ok(0)
        }
        PlaneCmd::FromSpread { q, h } => {
            let spreads = find_spreads(q, h, 1).map_err(|e| usage(e.to_string()))?;
            let spread = spreads.first().ok_or_else(|| Exit { code: 1, message: "no spread found".into() })?;
            let (p, t) = plane_from_spread(spread).map_err(|e| usage(e.to_string()))?;
            let mut out = serde_json::to_value(PlaneFile::from_plane(&p))?;
            out["order"] = json!(p.order);
            out["spread"] = json!(spread.subspaces);
            out["translation_group_order"] = json!(t.order());
            emit(g, &out)?;
            Ok(0)
        }
        PlaneCmd::Subplanes { family, r } => {
            let kg = family_gq(&family)?;
            let s = elation_kernel(&kg);
            let ctx = plane_context(&kg, &s).map_err(|e| Exit { code: 1, message: e.to_string() })?;
            let found = find_subplanes(&ctx.plane, &ctx.tgroup, r, ctx.basepoint, g.budget)
                .map_err(|e| usage(e.to_string()))?;
            let list: Vec<Value> = found
                .subplanes
                .iter()
                .map(|sp| json!({ "translations": sp.tsub.to_vec(), "classes": sp.classes, "points": sp.points, "lines": sp.lines }))
                .collect();
            emit(g, &json!({ "basepoint": ctx.basepoint, "count": list.len(), "truncated": found.truncated, "subplanes": list }))?;
            Ok(if found.truncated { 3 } else { 0 })
        }
    }
}

fn extract(g: &Global, parent: Option<&Path>, family: &Path, order: Option<usize>) -> Result<u8> {
    let kg = family_gq(family)?;
    if let Some(p) = parent {
        let geom = io::read_geometry(p).map_err(input)?;
        let pq = verify_gq(&geom).map_err(|f| Exit { code: 1, message: format!("parent is not a quadrangle: {f}") })?;
        if gq_isomorphic(&pq, &kg.gq, IsoOptions::default()).map_err(iso_error)?.is_none() {
            return Err(Exit { code: 1, message: "the parent is not the quadrangle of the family".into() }.into());
        }
    }
    let t = kg.gq.t();
    let r = match order {
        Some(r) => r,
        None => forge_core::group::prime_power(t).map(|(p, _)| p).ok_or_else(|| usage(format!("t = {t} is not a prime power")))?,
    };
    let s = elation_kernel(&kg);
    let ctx = plane_context(&kg, &s).map_err(|e| Exit { code: 1, message: e.to_string() })?;
    let found = find_subplanes(&ctx.plane, &ctx.tgroup, r, ctx.basepoint, g.budget).map_err(|e| usage(e.to_string()))?;
    let w = if r <= 3 { Some(symplectic_quadrangle(r)?) } else { None };
    let mut summaries = Vec::new();
    let mut failed = false;
    for (k, sp) in found.subplanes.iter().enumerate() {
        match subgq_from_subplane(&kg, &s, &ctx, sp) {
            Ok(res) => {
                let classical = match &w {
                    Some(w) if res.sigma == r => Some(gq_isomorphic(&res.sub.gq, w, IsoOptions::default()).map_err(iso_error)?.is_some()),
                    _ => None,
                };
                let mut summary = serde_json::to_value(res.summary())?;
                summary["classical"] = json!(classical);
                summary["point_embedding"] = json!(res.point_embedding);
                summary["line_embedding"] = json!(res.line_embedding);
                if let Some(dir) = &g.out {
                    let d = dir.join(format!("result-{k}"));
                    io::write_json(&d.join("family.json"), &FamilyFile::inline(&res.family)).map_err(input)?;
                    io::write_json(&d.join("geometry.json"), &GeometryFile::from_geometry(res.sub.gq.geometry())).map_err(input)?;
                    io::write_json(&d.join("report.json"), &json!({ "summary": summary, "kantor": res.report })).map_err(input)?;
                }
                summaries.push(summary);
            }
            Err(SubGqError::LemmaCounterexample(m)) => {
                eprintln!("LEMMA COUNTEREXAMPLE CANDIDATE in subplane {k}: {m}");
                summaries.push(json!({ "lemma_counterexample_candidate": m, "classes": sp.classes }));
                failed = true;
            }
            Err(e) => return Err(Exit { code: 1, message: e.to_string() }.into()),
        }
    }
    let out = json!({ "r": r, "subplanes": found.subplanes.len(), "truncated": found.truncated, "results": summaries });
    match &g.out {
        Some(dir) => io::write_json(&dir.join("summary.json"), &out).map_err(input)?,
        None => print_json(&out)?,
    }
    Ok(if failed {
        1
    } else if found.truncated {
        3
    } else {
        0
    })
}

fn suite(g: &Global, cmd: SuiteCmd) -> Result<u8> {
    let t = match cmd {
        SuiteCmd::Frohardt { t } | SuiteCmd::Evensq { t } => t,
    };
    let cat = match &g.catalog {
        Some(p) => Catalog::read(p).map_err(|e| usage(e.to_string()))?,
        None => Catalog::builtin(t).map_err(|e| usage(e.to_string()))?,
    };
    let opts = SuiteOptions { budget: g.budget, exec: exec(g) };
    let report = match cmd {
        SuiteCmd::Frohardt { .. } => suite_frohardt_case3(&cat, t, opts),
        SuiteCmd::Evensq { .. } => suite_even_stgq_is_tgq(&cat, t, opts),
    }
    .map_err(|e| usage(e.to_string()))?;
    emit(g, &serde_json::to_value(&report)?)?;
    Ok(match report.verdict {
        Verdict::Failed => 1,
        _ if report.instances.iter().any(|i| i.truncated) => 3,
        _ => 0,
    })
}
