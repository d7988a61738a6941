//! Convex thrackles: edge sets on the convex point set in which every two
//! edges meet. These are exactly the independent sets of `D_n`.
//!
//! A maximal convex thrackle on `n >= 3` points is an odd cycle plus pendant
//! vertices, each pendant hanging off the apex of the wedge it sits in. The
//! maximal ones are in bijection with monotone staircase paths in `Ω_n`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::convex::{intersecting, Omega, Segment};
use crate::error::{Error, Result};
use crate::PointLabel;

/// First pair of edges that fails to meet, if any.
pub fn find_disjoint_pair<'a, I>(edges: I) -> Option<(Segment, Segment)>
where
    I: IntoIterator<Item = &'a Segment>,
{
    let edges: Vec<Segment> = edges.into_iter().copied().collect();
    for (i, &s) in edges.iter().enumerate() {
        for &t in &edges[i + 1..] {
            if !intersecting(s, t) {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn is_thrackle<'a, I>(edges: I) -> bool
where
    I: IntoIterator<Item = &'a Segment>,
{
    find_disjoint_pair(edges).is_none()
}

fn check_range(n: u32, edges: &BTreeSet<Segment>) -> Result<()> {
    match edges.iter().find(|s| !s.fits(n)) {
        Some(s) => Err(Error::InvalidSegment { a: s.a(), b: s.b(), n }),
        None => Ok(()),
    }
}

/// A segment of `Ω_n` that could still be added, if any.
fn extension_candidate(n: u32, edges: &BTreeSet<Segment>) -> Option<Segment> {
    Omega::new(n)
        .cells()
        .find(|s| !edges.contains(s) && edges.iter().all(|&e| intersecting(*s, e)))
}

/// Edge-maximality: no absent segment meets every edge. Input must already be
/// a thrackle.
pub fn is_maximal_thrackle(n: u32, edges: &BTreeSet<Segment>) -> Result<bool> {
    check_range(n, edges)?;
    if let Some((s, t)) = find_disjoint_pair(edges) {
        return Err(Error::NotThrackle(s, t));
    }
    Ok(extension_candidate(n, edges).is_none())
}

/// Greedily add segments in row-major order until the thrackle is maximal.
pub fn extend_to_maximal(n: u32, edges: &BTreeSet<Segment>) -> Result<BTreeSet<Segment>> {
    check_range(n, edges)?;
    if let Some((s, t)) = find_disjoint_pair(edges) {
        return Err(Error::NotThrackle(s, t));
    }
    let mut out = edges.clone();
    for s in Omega::new(n).cells() {
        if !out.contains(&s) && out.iter().all(|&e| intersecting(s, e)) {
            out.insert(s);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexThrackle {
    n: u32,
    edges: BTreeSet<Segment>,
}

impl ConvexThrackle {
    pub fn new(n: u32, edges: impl IntoIterator<Item = Segment>) -> Result<Self> {
        let edges: BTreeSet<Segment> = edges.into_iter().collect();
        check_range(n, &edges)?;
        if let Some((s, t)) = find_disjoint_pair(&edges) {
            return Err(Error::NotThrackle(s, t));
        }
        Ok(ConvexThrackle { n, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Segment> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        extension_candidate(self.n, &self.edges).is_none()
    }
}

/// `u` lies strictly inside the clockwise arc from `x` to `y` on `1..=n`.
pub fn strictly_between_clockwise(x: PointLabel, y: PointLabel, u: PointLabel) -> bool {
    if x < y {
        x < u && u < y
    } else {
        u > x || u < y
    }
}

/// Apex of the wedge of `cycle` containing `u`. The wedge at a cycle vertex
/// `v` with cycle neighbours `x`, `y` holds the points strictly inside the arc
/// between `x` and `y` that avoids `v`.
fn apex_for(cycle: &[PointLabel], u: PointLabel) -> Result<PointLabel> {
    if cycle.contains(&u) {
        return Err(Error::domain(format!("{u} is a cycle vertex, not inside a wedge")));
    }
    let len = cycle.len();
    let mut apexes = (0..len).filter_map(|i| {
        let v = cycle[i];
        let x = cycle[(i + len - 1) % len];
        let y = cycle[(i + 1) % len];
        let (lo, hi) = if strictly_between_clockwise(x, y, v) { (y, x) } else { (x, y) };
        strictly_between_clockwise(lo, hi, u).then_some(v)
    });
    match (apexes.next(), apexes.next()) {
        (Some(v), None) => Ok(v),
        (None, _) => Err(Error::ProofObligation(format!("{u} lies in no wedge of cycle {cycle:?}"))),
        (Some(v), Some(w)) => Err(Error::ProofObligation(format!(
            "{u} lies in the wedges of both {v} and {w}"
        ))),
    }
}

/// A maximal convex thrackle with its odd cycle and the apex of every
/// pendant vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalThrackle {
    n: u32,
    edges: BTreeSet<Segment>,
    cycle: Vec<PointLabel>,
    pendant_apex: BTreeMap<PointLabel, PointLabel>,
}

/// Split a maximal thrackle into its odd cycle (the 2-core) and pendants.
///
/// The cycle starts at its smallest label and continues towards the smaller
/// of that vertex's two cycle neighbours.
pub fn decompose(n: u32, edges: &BTreeSet<Segment>) -> Result<MaximalThrackle> {
    if n < 3 {
        return Err(Error::domain("maximal thrackles with a cycle need n >= 3"));
    }
    check_range(n, edges)?;
    if let Some((s, t)) = find_disjoint_pair(edges) {
        return Err(Error::NotThrackle(s, t));
    }
    if let Some(missing) = extension_candidate(n, edges) {
        return Err(Error::NotMaximal { n, missing });
    }

    let mut adj: BTreeMap<PointLabel, BTreeSet<PointLabel>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.a()).or_default().insert(e.b());
        adj.entry(e.b()).or_default().insert(e.a());
    }
    if adj.len() != n as usize {
        return Err(Error::ProofObligation(format!(
            "maximal thrackle on {n} points leaves a point isolated"
        )));
    }

    // 2-core by repeated removal of degree-1 vertices
    let mut core = adj.clone();
    loop {
        let leaves: Vec<PointLabel> =
            core.iter().filter(|(_, nb)| nb.len() <= 1).map(|(&v, _)| v).collect();
        if leaves.is_empty() {
            break;
        }
        for v in leaves {
            if let Some(nb) = core.remove(&v) {
                for w in nb {
                    if let Some(set) = core.get_mut(&w) {
                        set.remove(&v);
                    }
                }
            }
        }
    }
    if core.values().any(|nb| nb.len() != 2) || core.len() < 3 || core.len().is_multiple_of(2) {
        return Err(Error::ProofObligation(format!(
            "2-core of a maximal thrackle is not an odd cycle: {core:?}"
        )));
    }

    let start = *core.keys().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *core[&start].iter().next().unwrap();
    while cur != start {
        cycle.push(cur);
        let next = *core[&cur].iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    if cycle.len() != core.len() {
        return Err(Error::ProofObligation("2-core is a union of several cycles".into()));
    }

    let mut pendant_apex = BTreeMap::new();
    for (&u, nb) in &adj {
        if core.contains_key(&u) {
            continue;
        }
        let apex = match (nb.len(), nb.iter().next()) {
            (1, Some(&v)) if core.contains_key(&v) => v,
            _ => {
                return Err(Error::ProofObligation(format!(
                    "vertex {u} is neither on the cycle nor a pendant of it"
                )))
            }
        };
        pendant_apex.insert(u, apex);
    }

    Ok(MaximalThrackle { n, edges: edges.clone(), cycle, pendant_apex })
}

impl MaximalThrackle {
    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = Segment>) -> Result<Self> {
        decompose(n, &edges.into_iter().collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Segment> {
        &self.edges
    }

    pub fn cycle(&self) -> &[PointLabel] {
        &self.cycle
    }

    pub fn pendant_apex(&self) -> &BTreeMap<PointLabel, PointLabel> {
        &self.pendant_apex
    }

    pub fn cycle_vertices(&self) -> BTreeSet<PointLabel> {
        self.cycle.iter().copied().collect()
    }

    pub fn on_cycle(&self, v: PointLabel) -> bool {
        self.cycle.contains(&v)
    }

    pub fn cycle_edges(&self) -> BTreeSet<Segment> {
        let len = self.cycle.len();
        (0..len)
            .map(|i| Segment::joining(self.cycle[i], self.cycle[(i + 1) % len]).unwrap())
            .collect()
    }

    /// The two cycle neighbours of a cycle vertex.
    pub fn cycle_neighbors(&self, v: PointLabel) -> Option<(PointLabel, PointLabel)> {
        let len = self.cycle.len();
        let i = self.cycle.iter().position(|&w| w == v)?;
        Some((self.cycle[(i + len - 1) % len], self.cycle[(i + 1) % len]))
    }

    /// Whether `u` lies strictly inside the wedge with apex `v`.
    pub fn in_wedge(&self, v: PointLabel, u: PointLabel) -> bool {
        match self.cycle_neighbors(v) {
            Some((x, y)) if u != x && u != y && u != v => {
                let (lo, hi) = if strictly_between_clockwise(x, y, v) { (y, x) } else { (x, y) };
                strictly_between_clockwise(lo, hi, u)
            }
            _ => false,
        }
    }

    pub fn into_thrackle(self) -> ConvexThrackle {
        ConvexThrackle { n: self.n, edges: self.edges }
    }
}

/// Cycle vertex whose wedge contains the non-cycle point `u`.
pub fn wedge_apex(t: &MaximalThrackle, u: PointLabel) -> Result<PointLabel> {
    if u == 0 || u > t.n {
        return Err(Error::domain(format!("point {u} is not among 1..={}", t.n)));
    }
    apex_for(&t.cycle, u)
}

/// Monotone staircase in `Ω_n` from `(1, r)` to `(r, n)`, stepping east or
/// south one cell at a time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThracklePath {
    n: u32,
    cells: Vec<Segment>,
}

impl ThracklePath {
    pub fn new(n: u32, cells: Vec<Segment>) -> Result<Self> {
        let (first, last) = match (cells.first(), cells.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::domain("empty path")),
        };
        let r = first.b();
        if n < 3 || first.a() != 1 || last.a() != r || last.b() != n {
            return Err(Error::domain(format!(
                "path from {first} to {last} is not a maximal thrackle path in Ω_{n}"
            )));
        }
        if let Some(bad) = cells.iter().find(|c| c.a() >= c.b() || c.b() > n) {
            return Err(Error::domain(format!("cell {bad} is outside Ω_{n}")));
        }
        for w in cells.windows(2) {
            let (p, q) = (w[0], w[1]);
            let east = q.a() == p.a() && q.b() == p.b() + 1;
            let south = q.b() == p.b() && q.a() == p.a() + 1;
            if !(east || south) {
                return Err(Error::domain(format!("step {p} -> {q} is not east or south")));
            }
        }
        Ok(ThracklePath { n, cells })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.cells[0].b()
    }

    pub fn cells(&self) -> &[Segment] {
        &self.cells
    }

    pub fn cell_set(&self) -> BTreeSet<Segment> {
        self.cells.iter().copied().collect()
    }

    /// Cells where the path switches between east and south.
    pub fn turning_cells(&self) -> Vec<Segment> {
        self.cells
            .windows(3)
            .filter(|w| (w[1].a() == w[0].a()) != (w[2].a() == w[1].a()))
            .map(|w| w[1])
            .collect()
    }
}

pub fn thrackle_from_path(p: &ThracklePath) -> Result<MaximalThrackle> {
    decompose(p.n, &p.cell_set())
}

/// Order the edges as a staircase; `a + b` grows by one along the path.
pub fn path_from_thrackle(t: &MaximalThrackle) -> Result<ThracklePath> {
    let mut cells: Vec<Segment> = t.edges.iter().copied().collect();
    cells.sort_by_key(|s| (s.a() + s.b(), s.a()));
    ThracklePath::new(t.n, cells)
}

/// Number of ways to finish a staircase in `Ω_n` from `(1, r)` to `(r, n)`,
/// indexed by south steps `s` and east steps `e` taken so far. The current
/// cell is `(1 + s, r + e)` and must stay above the diagonal.
fn completion_counts(n: u32, r: u32) -> Result<Vec<Vec<u128>>> {
    let (souths, easts) = ((r - 1) as usize, (n - r) as usize);
    let mut counts = vec![vec![0u128; easts + 1]; souths + 1];
    for s in (0..=souths).rev() {
        for e in (0..=easts).rev() {
            if 1 + s >= r as usize + e {
                continue;
            }
            counts[s][e] = if s == souths && e == easts {
                1
            } else {
                let down = if s < souths { counts[s + 1][e] } else { 0 };
                let right = if e < easts { counts[s][e + 1] } else { 0 };
                down.checked_add(right).ok_or(Error::Overflow("staircase count"))?
            };
        }
    }
    Ok(counts)
}

/// Number of maximal thrackle paths in `Ω_n` that start at `(1, r)`.
pub fn count_paths_from(n: u32, r: u32) -> Result<u128> {
    if n < 3 || r < 2 || r >= n {
        return Err(Error::domain(format!("no maximal paths start at (1,{r}) in Ω_{n}")));
    }
    Ok(completion_counts(n, r)?[0][0])
}

/// Uniform staircase from `(1, r)` to `(r, n)` for `r` uniform in `[2, n-1]`.
pub fn random_path<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<ThracklePath> {
    if n < 3 {
        return Err(Error::domain("maximal thrackle paths need n >= 3"));
    }
    let r = rng.gen_range(2..n);
    let counts = completion_counts(n, r)?;
    let (souths, easts) = ((r - 1) as usize, (n - r) as usize);
    let (mut s, mut e) = (0usize, 0usize);
    let mut cells = vec![Segment::raw(1, r)];
    while (s, e) != (souths, easts) {
        let down = if s < souths { counts[s + 1][e] } else { 0 };
        let right = if e < easts { counts[s][e + 1] } else { 0 };
        if rng.gen_range(0..down + right) < down {
            s += 1;
        } else {
            e += 1;
        }
        cells.push(Segment::raw(1 + s as u32, r + e as u32));
    }
    ThracklePath::new(n, cells)
}

pub fn random_maximal_thrackle<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<MaximalThrackle> {
    thrackle_from_path(&random_path(n, rng)?)
}

/// The shared edge guaranteed for two maximal thrackles with vertex-disjoint
/// cycles, found by following wedge arcs.
///
/// Every vertex of `C1` points at the apex of the `T2`-wedge it lies in, and
/// every vertex of `C2` at the apex of its `T1`-wedge. Each vertex has out-degree
/// one, so the walk closes a directed cycle; that cycle is a 2-cycle `{u, v}`
/// and `uv` lies in both thrackles.
pub fn common_edge(t1: &MaximalThrackle, t2: &MaximalThrackle) -> Result<Segment> {
    if t1.n != t2.n {
        return Err(Error::domain(format!("thrackles on {} and {} points", t1.n, t2.n)));
    }
    if let Some(&v) = t1.cycle.iter().find(|v| t2.on_cycle(**v)) {
        return Err(Error::CyclesIntersect(v));
    }
    let step = |u: PointLabel| -> Result<PointLabel> {
        if t1.on_cycle(u) {
            apex_for(&t2.cycle, u)
        } else {
            apex_for(&t1.cycle, u)
        }
    };
    let mut seen: Vec<PointLabel> = vec![t1.cycle[0]];
    loop {
        let next = step(*seen.last().unwrap())?;
        if let Some(pos) = seen.iter().position(|&w| w == next) {
            let closed = &seen[pos..];
            if closed.len() != 2 {
                return Err(Error::ProofObligation(format!(
                    "wedge arcs close a cycle of length {}: {closed:?}",
                    closed.len()
                )));
            }
            let edge = Segment::joining(closed[0], closed[1])?;
            if !(t1.edges.contains(&edge) && t2.edges.contains(&edge)) {
                return Err(Error::ProofObligation(format!("2-cycle {edge} is not a shared edge")));
            }
            return Ok(edge);
        }
        seen.push(next);
    }
}

/// A vertex `v` on the cycles of members `i < j` (0-based) of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConflictTriple {
    pub v: PointLabel,
    pub i: usize,
    pub j: usize,
}

pub fn conflict_triples(family: &[MaximalThrackle]) -> BTreeSet<ConflictTriple> {
    let cycles: Vec<BTreeSet<PointLabel>> = family.iter().map(|t| t.cycle_vertices()).collect();
    let mut out = BTreeSet::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            for &v in cycles[i].intersection(&cycles[j]) {
                out.insert(ConflictTriple { v, i, j });
            }
        }
    }
    out
}

/// Replace the shared cycle vertex `v` of members `i` and `j` by two
/// consecutive points `v' = v` and `v'' = v + 1`, shifting every later label.
///
/// Members whose cycle passes through `v` (other than `j`) keep `v'` and gain
/// an edge from `v''` to the apex of the wedge `v''` lands in; member `j`
/// keeps `v''` and gains the analogous edge to `v'`; members with `v` as a
/// pendant replace the pendant edge `zv` by `zv'` and `zv''`. Each member
/// gains exactly one edge and stays a maximal thrackle on `n + 1` points.
pub fn split_vertex(
    family: &[MaximalThrackle],
    v: PointLabel,
    i: usize,
    j: usize,
) -> Result<Vec<MaximalThrackle>> {
    let triple = ConflictTriple { v, i, j };
    if !conflict_triples(family).contains(&triple) {
        return Err(Error::domain(format!(
            "({v}, {i}, {j}) is not a conflict triple of the family"
        )));
    }
    let n = family[0].n;
    let (v1, v2) = (v, v + 1);
    let shift = |w: PointLabel, image_of_v: PointLabel| match w.cmp(&v) {
        std::cmp::Ordering::Less => w,
        std::cmp::Ordering::Equal => image_of_v,
        std::cmp::Ordering::Greater => w + 1,
    };
    let relabel = |e: &Segment, image_of_v: PointLabel| {
        Segment::raw(shift(e.a(), image_of_v), shift(e.b(), image_of_v))
    };

    family
        .iter()
        .enumerate()
        .map(|(l, t)| {
            let mut edges: BTreeSet<Segment>;
            if t.on_cycle(v) {
                let (kept, inserted) = if l == j { (v2, v1) } else { (v1, v2) };
                edges = t.edges.iter().map(|e| relabel(e, kept)).collect();
                let cycle: Vec<PointLabel> = t.cycle.iter().map(|&w| shift(w, kept)).collect();
                let apex = apex_for(&cycle, inserted)?;
                edges.insert(Segment::joining(apex, inserted)?);
            } else {
                let z = *t.pendant_apex.get(&v).ok_or_else(|| {
                    Error::ProofObligation(format!("{v} is neither on a cycle nor a pendant"))
                })?;
                edges = t.edges.iter().filter(|e| !e.has_endpoint(v)).map(|e| relabel(e, v1)).collect();
                let z = shift(z, v1);
                edges.insert(Segment::joining(z, v1)?);
                edges.insert(Segment::joining(z, v2)?);
            }
            decompose(n + 1, &edges).map_err(|err| {
                Error::ProofObligation(format!("member {l} after splitting {v}: {err}"))
            })
        })
        .collect()
}

/// Split conflicts away until every pair of cycles is vertex-disjoint.
/// Returns the final family and the number of splits performed.
pub fn resolve_conflicts(family: &[MaximalThrackle]) -> Result<(Vec<MaximalThrackle>, usize)> {
    let mut current = family.to_vec();
    let mut remaining = conflict_triples(&current).len();
    let mut steps = 0;
    while let Some(&ConflictTriple { v, i, j }) = conflict_triples(&current).iter().next() {
        let next = split_vertex(&current, v, i, j)?;
        let count = conflict_triples(&next).len();
        if count >= remaining {
            return Err(Error::ProofObligation(format!(
                "splitting did not reduce conflicts ({remaining} -> {count})"
            )));
        }
        remaining = count;
        current = next;
        steps += 1;
    }
    Ok((current, steps))
}
