//! Edge counts for unions of maximal convex thrackles.
//!
//! `k` maximal thrackles on `n` points cover at most `kn - C(k,2)` segments:
//! each has `n` edges and every pair shares one. The stars `T_v` (all
//! segments at `v` plus the chord joining `v`'s two neighbours) over a set of
//! pairwise non-consecutive apexes meet that bound.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::choose2;
use crate::convex::{Omega, Segment};
use crate::error::{Error, Result};
use crate::oracle::enumerate_maximal_paths;
use crate::thrackle::{decompose, thrackle_from_path, MaximalThrackle};

/// `kn - C(k, 2)`.
pub fn union_edge_bound(n: u64, k: u64) -> Result<u64> {
    n.checked_mul(k)
        .and_then(|kn| kn.checked_sub(choose2(k).ok()?))
        .ok_or(Error::Overflow("union_edge_bound"))
}

/// The bound capped by `C(n, 2)`: no simple graph on `n` points has more.
pub fn attainable_union(n: u64, k: u64) -> Result<u64> {
    Ok(union_edge_bound(n, k)?.min(choose2(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThrackleFamily {
    n: u32,
    members: Vec<MaximalThrackle>,
}

impl ThrackleFamily {
    pub fn new(n: u32, members: Vec<MaximalThrackle>) -> Result<Self> {
        if let Some(t) = members.iter().find(|t| t.n() != n) {
            return Err(Error::domain(format!("member on {} points in a family on {n}", t.n())));
        }
        Ok(ThrackleFamily { n, members })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[MaximalThrackle] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn union(&self) -> BTreeSet<Segment> {
        self.members.iter().flat_map(|t| t.edges().iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnionBoundReport {
    pub union_edges: usize,
    pub bound: u64,
    pub satisfied: bool,
}

/// Count distinct edges across the family and compare with `kn - C(k,2)`.
/// Exceeding the bound is reported as [`Error::BoundViolated`].
pub fn verify_union_bound(family: &ThrackleFamily) -> Result<UnionBoundReport> {
    for t in &family.members {
        // members are built through `decompose`; re-check in case the family
        // was assembled from mismatched parts
        decompose(t.n(), t.edges())?;
    }
    let union_edges = family.union().len();
    let k = family.k();
    let bound = union_edge_bound(u64::from(family.n), k as u64)?;
    if union_edges as u64 > bound {
        return Err(Error::BoundViolated { n: family.n, k, count: union_edges, bound });
    }
    Ok(UnionBoundReport { union_edges, bound, satisfied: true })
}

/// Star at `v` plus the chord between the circular neighbours of `v`.
pub fn star_thrackle(n: u32, v: u32) -> Result<MaximalThrackle> {
    if n < 3 || v == 0 || v > n {
        return Err(Error::domain(format!("no star thrackle at {v} on {n} points")));
    }
    let x = if v == 1 { n } else { v - 1 };
    let y = if v == n { 1 } else { v + 1 };
    let mut edges: BTreeSet<Segment> = (1..=n)
        .filter(|&w| w != v)
        .map(|w| Segment::joining(v, w))
        .collect::<Result<_>>()?;
    edges.insert(Segment::joining(x, y)?);
    decompose(n, &edges)
}

/// Stars at the apexes `1, 3, ..., 2k - 1`, pairwise non-consecutive around
/// the circle whenever `n >= 2k`.
pub fn extremal_family(n: u32, k: u32) -> Result<ThrackleFamily> {
    if k == 0 || n < 2 * k {
        return Err(Error::domain(format!("extremal family needs k >= 1 and n >= 2k (n = {n}, k = {k})")));
    }
    if n < 3 {
        return Err(Error::domain("maximal thrackles need n >= 3"));
    }
    let members = (0..k).map(|i| star_thrackle(n, 2 * i + 1)).collect::<Result<_>>()?;
    ThrackleFamily::new(n, members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveMax {
    pub max_union: usize,
    /// False when the budget ran out before every subset was seen.
    pub complete: bool,
}

fn subsets_from(first: usize, count: usize, k: usize, masks: &[u64], stop: &dyn Fn() -> bool) -> Option<usize> {
    fn rec(start: usize, left: usize, acc: u64, masks: &[u64], stop: &dyn Fn() -> bool, best: &mut usize) -> bool {
        if left == 0 {
            *best = (*best).max(acc.count_ones() as usize);
            return true;
        }
        if stop() {
            return false;
        }
        for i in start..masks.len() {
            if !rec(i + 1, left - 1, acc | masks[i], masks, stop, best) {
                return false;
            }
        }
        true
    }
    let mut best = 0;
    if k == 0 || count == 0 {
        return Some(0);
    }
    rec(first + 1, k - 1, masks[first], masks, stop, &mut best).then_some(best)
}

/// Largest union over all `k`-subsets of distinct maximal thrackles on `n`
/// points, enumerated through staircase paths.
pub fn exhaustive_union_max(n: u32, k: usize, budget: Option<Duration>) -> Result<ExhaustiveMax> {
    if !(3..=11).contains(&n) {
        return Err(Error::domain(format!("exhaustive union search supports 3 <= n <= 11, got {n}")));
    }
    let omega = Omega::new(n);
    let masks: Vec<u64> = enumerate_maximal_paths(n)?
        .map(|p| {
            let t = thrackle_from_path(&p)?;
            Ok(t.edges().iter().fold(0u64, |m, &s| m | 1 << omega.index_of(s).unwrap()))
        })
        .collect::<Result<_>>()?;
    if k == 0 {
        return Ok(ExhaustiveMax { max_union: 0, complete: true });
    }
    if k > masks.len() {
        return Err(Error::domain(format!("only {} maximal thrackles on {n} points", masks.len())));
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let expired = AtomicBool::new(false);
    let stop = || {
        if expired.load(Ordering::Relaxed) {
            return true;
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    };
    let partial: Vec<Option<usize>> = (0..masks.len())
        .into_par_iter()
        .map(|first| subsets_from(first, masks.len(), k, &masks, &stop))
        .collect();
    let complete = partial.iter().all(Option::is_some);
    let max_union = partial.into_iter().flatten().max().unwrap_or(0);
    Ok(ExhaustiveMax { max_union, complete })
}
