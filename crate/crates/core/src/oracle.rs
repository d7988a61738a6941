//! Ground truth at desk scale: exact chromatic numbers by branch and bound,
//! maximum cliques, maximal independent sets, and the staircase enumerator.
//!
//! Graphs here have at most 64 vertices so that a vertex set is one `u64`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::convex::{DnGraph, Segment};
use crate::error::{Error, Result};
use crate::thrackle::ThracklePath;

pub type VertexMask = u64;

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn vertices_of(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(v)
    })
}

/// Simple undirected graph on at most 64 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn edgeless(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::GraphTooLarge(n));
        }
        Ok(SmallGraph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = SmallGraph::edgeless(n)?;
        let all = g.all();
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// From adjacency rows; rejects loops and asymmetric rows.
    pub fn from_masks(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        let g = SmallGraph { n, adj };
        if n > 64 {
            return Err(Error::GraphTooLarge(n));
        }
        for v in 0..n {
            if g.adj[v] & bit(v) != 0 || g.adj[v] & !g.all() != 0 {
                return Err(Error::domain(format!("vertex {v} has a loop or out-of-range neighbour")));
            }
            for w in vertices_of(g.adj[v]) {
                if g.adj[w] & bit(v) == 0 {
                    return Err(Error::domain(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(g)
    }

    pub fn from_dn(g: &DnGraph) -> Result<Self> {
        SmallGraph::from_masks(g.adjacency_masks()?)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::domain(format!("cannot add edge {u}-{v}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn is_independent(&self, set: VertexMask) -> bool {
        vertices_of(set).all(|v| self.adj[v] & set == 0)
    }

    /// A proper coloring: color `c` for vertex `v` at `colors[v]`.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n
            && (0..self.n).all(|v| vertices_of(self.adj[v]).all(|w| colors[v] != colors[w]))
    }
}

/// A maximum clique, by branch and bound with a greedy-coloring bound.
pub fn max_clique(g: &SmallGraph) -> VertexMask {
    fn color_bound(g: &SmallGraph, mut p: u64) -> usize {
        let mut colors = 0;
        while p != 0 {
            colors += 1;
            let mut q = p;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !bit(v) & !g.adj[v];
                p &= !bit(v);
            }
        }
        colors
    }
    fn expand(g: &SmallGraph, r: u64, mut p: u64, best: &mut u64) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        while p != 0 {
            if r.count_ones() as usize + color_bound(g, p) <= best.count_ones() as usize {
                return;
            }
            let v = 63 - p.leading_zeros() as usize;
            expand(g, r | bit(v), p & g.adj[v], best);
            p &= !bit(v);
        }
    }
    let mut best = 0;
    expand(g, 0, g.all(), &mut best);
    best
}

/// All maximal independent sets, by Bron–Kerbosch with pivoting on the
/// complement graph.
pub fn enumerate_maximal_independent_sets(g: &SmallGraph) -> Vec<VertexMask> {
    let all = g.all();
    let comp: Vec<u64> = (0..g.n).map(|v| all & !g.adj[v] & !bit(v)).collect();
    fn bk(comp: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = vertices_of(p | x)
            .max_by_key(|&u| (p & comp[u]).count_ones())
            .expect("p | x is non-empty");
        for v in vertices_of(p & !comp[pivot]) {
            bk(comp, r | bit(v), p & comp[v], x & comp[v], out);
            p &= !bit(v);
            x |= bit(v);
        }
    }
    let mut out = Vec::new();
    bk(&comp, 0, all, 0, &mut out);
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChromaticResult {
    Exact(usize),
    /// The budget ran out; `lower <= χ <= upper`.
    Bounds { lower: usize, upper: usize },
}

impl ChromaticResult {
    pub fn exact(self) -> Option<usize> {
        match self {
            ChromaticResult::Exact(c) => Some(c),
            ChromaticResult::Bounds { .. } => None,
        }
    }

    pub fn contains(self, value: usize) -> bool {
        match self {
            ChromaticResult::Exact(c) => c == value,
            ChromaticResult::Bounds { lower, upper } => lower <= value && value <= upper,
        }
    }
}

/// Partial coloring as one vertex mask per color class.
#[derive(Debug, Clone)]
struct Partial {
    classes: Vec<u64>,
    uncolored: u64,
}

struct Search<'a> {
    g: &'a SmallGraph,
    k: usize,
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
    found: &'a AtomicBool,
    nodes: &'a AtomicU64,
}

enum Pick {
    Done,
    Dead,
    Branch(usize),
}

impl Search<'_> {
    /// DSATUR choice: most distinct neighbouring colors, then most
    /// uncolored neighbours.
    fn pick(&self, s: &Partial) -> Pick {
        if s.uncolored == 0 {
            return Pick::Done;
        }
        let mut best: Option<(usize, u32, usize)> = None;
        for v in vertices_of(s.uncolored) {
            let nb = self.g.adj[v];
            let sat = s.classes.iter().filter(|&&c| c & nb != 0).count();
            if sat >= self.k {
                return Pick::Dead;
            }
            let deg = (nb & s.uncolored).count_ones();
            if best.is_none_or(|(bs, bd, _)| (sat, deg) > (bs, bd)) {
                best = Some((sat, deg, v));
            }
        }
        Pick::Branch(best.unwrap().2)
    }

    fn options(&self, s: &Partial, v: usize) -> Vec<usize> {
        let nb = self.g.adj[v];
        let used = s.classes.iter().take_while(|&&c| c != 0).count();
        (0..(used + 1).min(self.k)).filter(|&c| s.classes[c] & nb == 0).collect()
    }

    fn tick(&self) -> bool {
        if self.abort.load(Ordering::Relaxed) || self.found.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed);
        if count.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.abort.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    /// Complete `s` to a `k`-coloring if possible.
    fn solve(&self, s: &mut Partial) -> bool {
        if !self.tick() {
            return false;
        }
        let v = match self.pick(s) {
            Pick::Done => return true,
            Pick::Dead => return false,
            Pick::Branch(v) => v,
        };
        for c in self.options(s, v) {
            s.classes[c] |= bit(v);
            s.uncolored &= !bit(v);
            if self.solve(s) {
                return true;
            }
            s.classes[c] &= !bit(v);
            s.uncolored |= bit(v);
        }
        false
    }

    /// Subproblems from branching until there are at least `target` of them.
    fn frontier(&self, root: Partial, target: usize) -> (Vec<Partial>, bool) {
        let mut layer = vec![root];
        loop {
            if layer.len() >= target {
                return (layer, false);
            }
            let mut next = Vec::new();
            let mut progressed = false;
            for s in layer {
                match self.pick(&s) {
                    Pick::Done => return (vec![s], true),
                    Pick::Dead => {}
                    Pick::Branch(v) => {
                        progressed = true;
                        for c in self.options(&s, v) {
                            let mut t = s.clone();
                            t.classes[c] |= bit(v);
                            t.uncolored &= !bit(v);
                            next.push(t);
                        }
                    }
                }
            }
            if !progressed {
                return (next, false);
            }
            layer = next;
        }
    }
}

fn worker_count() -> usize {
    std::env::var("DN_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Whether `g` has a proper `k`-coloring; `None` when the deadline passes.
/// The clique `seed` is precolored with distinct colors.
fn k_colorable(g: &SmallGraph, k: usize, seed: u64, deadline: Option<Instant>, workers: usize) -> Option<bool> {
    if (seed.count_ones() as usize) > k {
        return Some(false);
    }
    let mut classes = vec![0u64; k.max(1)];
    for (c, v) in vertices_of(seed).enumerate() {
        classes[c] = bit(v);
    }
    let root = Partial { classes, uncolored: g.all() & !seed };
    let (abort, found, nodes) = (AtomicBool::new(false), AtomicBool::new(false), AtomicU64::new(0));
    let search = Search { g, k, deadline, abort: &abort, found: &found, nodes: &nodes };
    let (frontier, done) = search.frontier(root, workers * 8);
    if done {
        return Some(true);
    }
    let run = || {
        frontier.into_par_iter().for_each(|mut s| {
            if search.solve(&mut s) {
                found.store(true, Ordering::Relaxed);
            }
        })
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
    if found.load(Ordering::Relaxed) {
        Some(true)
    } else if abort.load(Ordering::Relaxed) {
        None
    } else {
        Some(false)
    }
}

/// DSATUR greedy coloring; returns the colors used per vertex.
pub fn dsatur_coloring(g: &SmallGraph) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.n];
    let mut uncolored = g.all();
    while uncolored != 0 {
        let v = vertices_of(uncolored)
            .max_by_key(|&v| {
                let mut seen = 0u64;
                for w in vertices_of(g.adj[v] & !uncolored) {
                    seen |= bit(colors[w]);
                }
                (seen.count_ones(), (g.adj[v] & uncolored).count_ones(), std::cmp::Reverse(v))
            })
            .unwrap();
        let blocked = vertices_of(g.adj[v] & !uncolored).fold(0u64, |m, w| m | bit(colors[w]));
        colors[v] = (!blocked).trailing_zeros() as usize;
        uncolored &= !bit(v);
    }
    colors
}

/// Exact chromatic number with an optional time budget, using the
/// `DN_WORKERS` environment variable (default: available parallelism).
pub fn chromatic_number_exact(g: &SmallGraph, budget: Option<Duration>) -> ChromaticResult {
    chromatic_number_with_workers(g, budget, worker_count())
}

/// Same as [`chromatic_number_exact`] on a fixed number of workers. The
/// result does not depend on `workers`.
pub fn chromatic_number_with_workers(g: &SmallGraph, budget: Option<Duration>, workers: usize) -> ChromaticResult {
    if g.n == 0 {
        return ChromaticResult::Exact(0);
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let clique = max_clique(g);
    let lower = clique.count_ones() as usize;
    let upper = dsatur_coloring(g).iter().max().map_or(0, |&c| c + 1);
    for k in lower..upper {
        match k_colorable(g, k, clique, deadline, workers.max(1)) {
            Some(true) => return ChromaticResult::Exact(k),
            Some(false) => {}
            None => return ChromaticResult::Bounds { lower: k, upper },
        }
    }
    ChromaticResult::Exact(upper)
}

/// All monotone staircases from `(1, r)` to `(r, n)`, `r` ascending and
/// cells in lexicographic order within each `r`.
#[derive(Debug, Clone)]
pub struct MaximalPaths {
    n: u32,
    r: u32,
    moves: u64,
    started: bool,
}

pub fn enumerate_maximal_paths(n: u32) -> Result<MaximalPaths> {
    if n > 40 {
        return Err(Error::domain(format!("path enumeration for n = {n} is out of reach")));
    }
    Ok(MaximalPaths { n, r: 2, moves: 0, started: false })
}

impl MaximalPaths {
    /// Moves are read most-significant first over `n - 1` bits, east = 0 and
    /// south = 1, so increasing integers are lexicographically increasing
    /// paths.
    fn decode(&self) -> Option<ThracklePath> {
        let steps = self.n - 1;
        let (mut a, mut b) = (1u32, self.r);
        let mut cells = vec![Segment::raw(a, b)];
        for s in (0..steps).rev() {
            if self.moves >> s & 1 == 1 {
                a += 1;
            } else {
                b += 1;
            }
            if a >= b {
                return None;
            }
            cells.push(Segment::raw(a, b));
        }
        ThracklePath::new(self.n, cells).ok()
    }

    fn advance(&mut self) -> bool {
        let steps = self.n - 1;
        let souths = self.r - 1;
        if !self.started {
            self.started = true;
            self.moves = (1u64 << souths) - 1;
            return true;
        }
        // next integer with the same popcount
        let x = self.moves;
        let c = x & x.wrapping_neg();
        let r = x + c;
        let next = (((r ^ x) >> 2) / c) | r;
        if next < (1u64 << steps) {
            self.moves = next;
            return true;
        }
        self.r += 1;
        if self.r >= self.n {
            return false;
        }
        self.moves = (1u64 << (self.r - 1)) - 1;
        true
    }
}

impl Iterator for MaximalPaths {
    type Item = ThracklePath;

    fn next(&mut self) -> Option<ThracklePath> {
        if self.n < 3 {
            return None;
        }
        while self.advance() {
            if let Some(p) = self.decode() {
                return Some(p);
            }
        }
        None
    }
}
