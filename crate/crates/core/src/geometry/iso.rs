//! Isomorphism search on the incidence (Levi) graph.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::{GeometryMap, Gq, IncidenceGeometry};

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
    #[error("geometry too large for the search: {0}")]
    TooLarge(String),
}

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Cap on backtracking nodes.
    pub budget: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { budget: 5_000_000 }
    }
}

/// Levi graph with distance-2 relation, vertices `0..np` points then lines.
struct Levi {
    np: usize,
    adj: Vec<FixedBitSet>,
    near: Vec<FixedBitSet>,
    fp: Vec<Vec<u64>>,
}

impl Levi {
    fn new(g: &IncidenceGeometry, extra: Option<&[u64]>) -> Self {
        let np = g.num_points();
        let n = np + g.num_lines();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (l, pts) in g.lines().iter().enumerate() {
            for &p in pts {
                adj[p].insert(np + l);
                adj[np + l].insert(p);
            }
        }
        let mut near = vec![FixedBitSet::with_capacity(n); n];
        for v in 0..n {
            for w in adj[v].ones() {
                near[v].union_with(&adj[w]);
            }
            near[v].set(v, false);
        }
        let fp = (0..n)
            .map(|v| {
                let mut f = vec![(v >= np) as u64, adj[v].count_ones(..) as u64, near[v].count_ones(..) as u64];
                if let Some(e) = extra {
                    f.push(e[v]);
                }
                f
            })
            .collect();
        Levi { np, adj, near, fp }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }
}

struct Search<'a> {
    a: &'a Levi,
    b: &'a Levi,
    order: Vec<usize>,
    parent: Vec<usize>,
    map: Vec<usize>,
    used: FixedBitSet,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<(), IsoError> {
        if self.found.len() >= self.limit {
            return Ok(());
        }
        if depth == self.order.len() {
            self.found.push(self.map.clone());
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(IsoError::Budget(self.budget));
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.parent[v] {
            NONE => (0..self.b.len()).collect(),
            p => self.b.adj[self.map[p]].ones().collect(),
        };
        for c in candidates {
            if self.used.contains(c) || self.a.fp[v] != self.b.fp[c] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let w = self.map[u];
                self.a.adj[v].contains(u) == self.b.adj[c].contains(w)
                    && self.a.near[v].contains(u) == self.b.near[c].contains(w)
            });
            if !consistent {
                continue;
            }
            self.map[v] = c;
            self.used.insert(c);
            self.run(depth + 1)?;
            self.used.set(c, false);
            self.map[v] = NONE;
            if self.found.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

fn search(a: &Levi, b: &Levi, budget: u64, limit: usize) -> Result<Vec<GeometryMap>, IsoError> {
    let n = a.len();
    if n != b.len() || a.np != b.np {
        return Ok(Vec::new());
    }
    let mut fa: Vec<&Vec<u64>> = a.fp.iter().collect();
    let mut fb: Vec<&Vec<u64>> = b.fp.iter().collect();
    fa.sort();
    fb.sort();
    if fa != fb {
        return Ok(Vec::new());
    }
    // breadth-first order so each vertex after a component root has a mapped neighbour
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![NONE; n];
    let mut seen = FixedBitSet::with_capacity(n);
    for root in 0..n {
        if seen.contains(root) {
            continue;
        }
        seen.insert(root);
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for w in a.adj[v].ones() {
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut s = Search {
        a,
        b,
        order,
        parent,
        map: vec![NONE; n],
        used: FixedBitSet::with_capacity(n),
        nodes: 0,
        budget,
        limit,
        found: Vec::new(),
    };
    s.run(0)?;
    let np = a.np;
    Ok(s
        .found
        .into_iter()
        .map(|m| GeometryMap {
            point_perm: m[..np].to_vec(),
            line_perm: m[np..].iter().map(|&x| x - np).collect(),
        })
        .collect())
}

/// Finds an incidence-preserving bijection from `a` to `b`. `Ok(None)`
/// means the search completed without finding one.
pub fn incidence_isomorphism(
    a: &IncidenceGeometry,
    b: &IncidenceGeometry,
    opts: IsoOptions,
) -> Result<Option<GeometryMap>, IsoError> {
    let found = search(&Levi::new(a, None), &Levi::new(b, None), opts.budget, 1)?;
    Ok(found.into_iter().next().inspect(|m| assert!(a.is_isomorphism_to(b, m))))
}

/// Number of points `q` not collinear with `p` such that `{p, q}` is regular.
fn regular_pair_counts(gq: &Gq) -> Vec<u64> {
    let n = gq.num_points();
    let mut out = vec![0u64; n + gq.num_lines()];
    for (p, slot) in out.iter_mut().enumerate().take(n) {
        for q in 0..n {
            if gq.collinear(p, q) {
                continue;
            }
            let mut pq = gq.perp_mask(p).clone();
            pq.intersect_with(gq.perp_mask(q));
            let mut dp = FixedBitSet::with_capacity(n);
            dp.insert_range(..);
            for r in pq.ones() {
                dp.intersect_with(gq.perp_mask(r));
            }
            if dp.count_ones(..) == gq.t() + 1 {
                *slot += 1;
            }
        }
    }
    out
}

/// Isomorphism test for quadrangles of order at most `(4, 4)`, pruning by
/// degree, distance-2 counts and the number of regular pairs on each point.
pub fn gq_isomorphic(a: &Gq, b: &Gq, opts: IsoOptions) -> Result<Option<GeometryMap>, IsoError> {
    for g in [a, b] {
        if g.s() > 4 || g.t() > 4 {
            return Err(IsoError::TooLarge(format!("order ({}, {}) exceeds (4, 4)", g.s(), g.t())));
        }
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let ea = regular_pair_counts(a);
    let eb = regular_pair_counts(b);
    let found = search(
        &Levi::new(a.geometry(), Some(&ea)),
        &Levi::new(b.geometry(), Some(&eb)),
        opts.budget,
        1,
    )?;
    Ok(found.into_iter().next().inspect(|m| assert!(a.geometry().is_isomorphism_to(b.geometry(), m))))
}

/// All automorphisms of a geometry with at most 15 points.
pub fn automorphisms(g: &IncidenceGeometry, opts: IsoOptions) -> Result<Vec<GeometryMap>, IsoError> {
    if g.num_points() > 15 {
        return Err(IsoError::TooLarge(format!("{} points; full search is limited to 15", g.num_points())));
    }
    let levi = Levi::new(g, None);
    search(&levi, &levi, opts.budget, usize::MAX)
}
