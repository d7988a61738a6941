//! Segments on a convex point set, the disjointness predicate, the graph
//! `D_n` and its lattice model `Ω_n`.
//!
//! Points are labelled `1..=n` clockwise. A segment `(a, b)` always has
//! `a < b` and doubles as the lattice point in row `a`, column `b`.

use std::fmt;

use crate::error::{Error, Result};
use crate::PointLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    a: PointLabel,
    b: PointLabel,
}

impl Segment {
    /// Segment between `a < b`, without an ambient `n`.
    pub fn new(a: PointLabel, b: PointLabel) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::InvalidSegment { a, b, n: b.max(a) });
        }
        Ok(Segment { a, b })
    }

    /// Segment between `a < b`, both at most `n`.
    pub fn within(a: PointLabel, b: PointLabel, n: u32) -> Result<Self> {
        if a == 0 || a >= b || b > n {
            return Err(Error::InvalidSegment { a, b, n });
        }
        Ok(Segment { a, b })
    }

    /// Segment between two distinct labels given in either order.
    pub fn joining(x: PointLabel, y: PointLabel) -> Result<Self> {
        Segment::new(x.min(y), x.max(y))
    }

    pub(crate) const fn raw(a: PointLabel, b: PointLabel) -> Self {
        Segment { a, b }
    }

    pub fn a(self) -> PointLabel {
        self.a
    }

    pub fn b(self) -> PointLabel {
        self.b
    }

    pub fn endpoints(self) -> [PointLabel; 2] {
        [self.a, self.b]
    }

    pub fn has_endpoint(self, v: PointLabel) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: PointLabel) -> Option<PointLabel> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn fits(self, n: u32) -> bool {
        self.b <= n
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// How two distinct chords of a convex polygon meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    ShareEndpoint,
    Cross,
}

pub fn relation(s: Segment, t: Segment) -> Result<SegmentRelation> {
    if s == t {
        return Err(Error::SameSegment(s));
    }
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    Ok(if a == c || a == d || b == c || b == d {
        SegmentRelation::ShareEndpoint
    } else if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
        SegmentRelation::Cross
    } else {
        SegmentRelation::Disjoint
    })
}

/// Adjacency in `D_n`: the closed chords have no point in common.
///
/// The chords meet exactly when the labels interleave weakly,
/// `a <= c <= b <= d` or `c <= a <= d <= b`.
pub fn disjoint(s: Segment, t: Segment) -> Result<bool> {
    if s == t {
        return Err(Error::SameSegment(s));
    }
    Ok(!intersecting(s, t))
}

/// Weak interleaving test; true for `s == t`.
#[inline]
pub(crate) fn intersecting(s: Segment, t: Segment) -> bool {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    (a <= c && c <= b && b <= d) || (c <= a && a <= d && d <= b)
}

/// Row and column of the lattice point identified with `s`.
pub fn segment_to_lattice(s: Segment) -> (u32, u32) {
    (s.a, s.b)
}

pub fn lattice_to_segment(row: u32, col: u32) -> Result<Segment> {
    if row == 0 || row >= col {
        return Err(Error::domain(format!(
            "lattice point ({row},{col}) is not in Ω: need 1 <= row < col"
        )));
    }
    Ok(Segment::raw(row, col))
}

/// The triangular polyomino `Ω_n = {(i, j) : 1 <= i < j <= n}`, rows growing
/// downward and columns to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Omega {
    n: u32,
}

impl Omega {
    pub fn new(n: u32) -> Self {
        Omega { n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        let n = self.n as usize;
        n * n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, s: Segment) -> bool {
        s.fits(self.n)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.n;
        (1..n).flat_map(move |a| (a + 1..=n).map(move |b| Segment::raw(a, b)))
    }

    /// Position of `s` in [`Omega::cells`] order.
    pub fn index_of(&self, s: Segment) -> Option<usize> {
        if !self.contains(s) {
            return None;
        }
        let (n, a, b) = (self.n as usize, s.a as usize, s.b as usize);
        Some((a - 1) * (2 * n - a) / 2 + (b - a - 1))
    }
}

/// The convex segment disjointness graph, as one adjacency bitset per vertex.
///
/// Storage is quadratic in the vertex count, so this is meant for desk-scale
/// `n`; bulk checks at larger `n` use [`disjoint`] directly.
#[derive(Debug, Clone)]
pub struct DnGraph {
    n: u32,
    vertices: Vec<Segment>,
    words: usize,
    adjacency: Vec<Vec<u64>>,
}

pub fn build_dn(n: u32) -> DnGraph {
    let omega = Omega::new(n);
    let vertices: Vec<Segment> = omega.cells().collect();
    let count = vertices.len();
    let words = count.div_ceil(64);
    let mut adjacency = vec![vec![0u64; words]; count];
    for (i, &s) in vertices.iter().enumerate() {
        for (j, &t) in vertices.iter().enumerate().skip(i + 1) {
            if !intersecting(s, t) {
                adjacency[i][j / 64] |= 1 << (j % 64);
                adjacency[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    DnGraph { n, vertices, words, adjacency }
}

impl DnGraph {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Segment] {
        &self.vertices
    }

    pub fn index_of(&self, s: Segment) -> Option<usize> {
        Omega::new(self.n).index_of(s)
    }

    pub fn adjacent_indices(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn are_adjacent(&self, s: Segment, t: Segment) -> bool {
        match (self.index_of(s), self.index_of(t)) {
            (Some(i), Some(j)) => self.adjacent_indices(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.words * 64)
            .take(self.vertex_count())
            .filter(move |&j| self.adjacent_indices(i, j))
    }

    /// Adjacency rows as single-word bitsets, for graphs of at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.vertex_count() > 64 {
            return Err(Error::GraphTooLarge(self.vertex_count()));
        }
        Ok(self.adjacency.iter().map(|row| row.first().copied().unwrap_or(0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{float_circle_points, rational_circle_points, segments_intersect};

    fn seg(a: u32, b: u32) -> Segment {
        Segment::new(a, b).unwrap()
    }

    #[test]
    fn disjoint_examples() {
        assert!(disjoint(seg(1, 3), seg(4, 5)).unwrap());
        assert!(!disjoint(seg(1, 3), seg(2, 4)).unwrap());
        assert!(disjoint(seg(1, 4), seg(2, 3)).unwrap());
        assert!(!disjoint(seg(1, 3), seg(3, 5)).unwrap());
        assert_eq!(disjoint(seg(1, 3), seg(1, 3)), Err(Error::SameSegment(seg(1, 3))));
    }

    #[test]
    fn segment_validation() {
        assert!(Segment::new(0, 2).is_err());
        assert!(Segment::new(3, 3).is_err());
        assert!(Segment::new(4, 2).is_err());
        assert!(Segment::within(2, 6, 5).is_err());
        assert_eq!(Segment::joining(5, 2).unwrap(), seg(2, 5));
    }

    #[test]
    fn lattice_identification() {
        assert_eq!(segment_to_lattice(seg(1, 2)), (1, 2));
        assert_eq!(segment_to_lattice(seg(3, 7)), (3, 7));
        assert!(lattice_to_segment(4, 4).is_err());
        assert!(lattice_to_segment(5, 2).is_err());
        for s in Omega::new(10).cells() {
            let (r, c) = segment_to_lattice(s);
            assert_eq!(lattice_to_segment(r, c).unwrap(), s);
        }
    }

    #[test]
    fn omega_indexing_matches_iteration_order() {
        let omega = Omega::new(12);
        for (i, s) in omega.cells().enumerate() {
            assert_eq!(omega.index_of(s), Some(i));
        }
        assert_eq!(omega.len(), 66);
        assert_eq!(omega.cells().count(), 66);
        assert!(Omega::new(1).is_empty());
        assert!(Omega::new(0).is_empty());
    }

    fn brute_edge_count(n: u32) -> usize {
        let cells: Vec<_> = Omega::new(n).cells().collect();
        let mut count = 0;
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if disjoint(cells[i], cells[j]).unwrap() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn small_graphs() {
        assert_eq!(build_dn(0).vertex_count(), 0);
        assert_eq!(build_dn(1).vertex_count(), 0);
        assert_eq!(build_dn(2).edge_count(), 0);
        let d3 = build_dn(3);
        assert_eq!((d3.vertex_count(), d3.edge_count()), (3, 0));
        let d4 = build_dn(4);
        assert_eq!((d4.vertex_count(), d4.edge_count()), (6, brute_edge_count(4)));
        assert_eq!(d4.edge_count(), 2);
        assert!(d4.are_adjacent(seg(1, 2), seg(3, 4)));
        assert!(d4.are_adjacent(seg(1, 4), seg(2, 3)));
        let d5 = build_dn(5);
        assert_eq!((d5.vertex_count(), d5.edge_count()), (10, brute_edge_count(5)));
        assert_eq!(d5.edge_count(), 10);
        for n in 0..12 {
            // two disjoint pairings per 4-subset of points
            let four = (n as usize) * (n as usize).saturating_sub(1) * (n as usize).saturating_sub(2) * (n as usize).saturating_sub(3) / 24;
            assert_eq!(build_dn(n).edge_count(), brute_edge_count(n));
            assert_eq!(build_dn(n).edge_count(), 2 * four);
        }
    }

    #[test]
    fn relation_is_a_trichotomy() {
        let cells: Vec<_> = Omega::new(9).cells().collect();
        for &s in &cells {
            for &t in &cells {
                if s == t {
                    continue;
                }
                let shares = s.endpoints().iter().any(|&v| t.has_endpoint(v));
                let (a, b, c, d) = (s.a(), s.b(), t.a(), t.b());
                let crosses = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                let is_disjoint = disjoint(s, t).unwrap();
                assert_eq!(
                    [is_disjoint, shares, crosses].iter().filter(|&&x| x).count(),
                    1,
                    "{s} {t}"
                );
                assert_eq!(is_disjoint, disjoint(t, s).unwrap());
                let expected = if shares {
                    SegmentRelation::ShareEndpoint
                } else if crosses {
                    SegmentRelation::Cross
                } else {
                    SegmentRelation::Disjoint
                };
                assert_eq!(relation(s, t).unwrap(), expected);
                if !is_disjoint {
                    assert!(a.max(c) <= b.min(d));
                }
            }
        }
    }

    #[test]
    fn label_predicate_matches_exact_geometry() {
        for n in 2..=8 {
            let pts = rational_circle_points(n);
            let pt = |v: u32| pts[(v - 1) as usize];
            let g = build_dn(n);
            for (i, &s) in g.vertices().iter().enumerate() {
                for (j, &t) in g.vertices().iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let meet = segments_intersect(pt(s.a()), pt(s.b()), pt(t.a()), pt(t.b()));
                    assert_eq!(g.adjacent_indices(i, j), !meet, "n={n} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn label_predicate_matches_evenly_spaced_float_points() {
        for n in 2..=8 {
            let pts = float_circle_points::<f64>(n);
            let pt = |v: u32| pts[(v - 1) as usize];
            for s in Omega::new(n).cells() {
                for t in Omega::new(n).cells().filter(|&t| t != s) {
                    let meet = segments_intersect(pt(s.a()), pt(s.b()), pt(t.a()), pt(t.b()));
                    assert_eq!(disjoint(s, t).unwrap(), !meet, "n={n} {s} {t}");
                }
            }
        }
    }
}
