//! The explicit optimal coloring of `D_n`.
//!
//! For every non-triangular `i >= 2` there is an infinite staircase `P_i` in
//! `Ω`: down column `i` to the turn row `m = C(C(k+1,2) - i + 1, 2)`, one step
//! east, down column `i + 1` to row `i`, then east along row `i` forever.
//! Restricted to `Ω_n` these `n - k` staircases cover every cell, and each is
//! an independent set of `D_n`.

use std::collections::BTreeMap;

use crate::arith::{choose2, is_triangular, triangular, IntervalBlock};
use crate::convex::{intersecting, Omega, Segment};
use crate::error::{Error, Result};
use crate::thrackle::ThracklePath;

pub use crate::arith::{chi_formula, triangular_k};

/// Closed form of the infinite path `P_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathDescriptor {
    index: u32,
    block: u32,
    turn_row: u32,
}

pub fn path_p(i: u32) -> Result<PathDescriptor> {
    if i < 2 || is_triangular(i)? {
        return Err(Error::NoSuchPath(u64::from(i)));
    }
    let block = IntervalBlock::containing(i)?.k;
    let ell = triangular(block)? - i;
    let turn_row = triangular(ell)?;
    Ok(PathDescriptor { index: i, block, turn_row })
}

impl PathDescriptor {
    pub fn index(&self) -> u32 {
        self.index
    }

    /// The `k` with `i` in `N'_k`.
    pub fn block(&self) -> u32 {
        self.block
    }

    pub fn turn_row(&self) -> u32 {
        self.turn_row
    }

    pub fn contains(&self, cell: Segment) -> bool {
        let (a, b, i, m) = (cell.a(), cell.b(), self.index, self.turn_row);
        (b == i && a <= m) || (b == i + 1 && m <= a && a <= i) || (a == i && b > i)
    }

    /// Cells of the infinite path in order.
    pub fn cells(&self) -> impl Iterator<Item = Segment> {
        let (i, m) = (self.index, self.turn_row);
        (1..=m)
            .map(move |a| Segment::raw(a, i))
            .chain((m..=i).map(move |a| Segment::raw(a, i + 1)))
            .chain((i + 2..).map(move |b| Segment::raw(i, b)))
    }

    pub fn restrict(&self, n: u32) -> Result<RestrictedPath> {
        if self.index > n {
            return Err(Error::domain(format!("P_{} does not meet Ω_{n}", self.index)));
        }
        let cells: Vec<Segment> = self.cells().take_while(|c| c.b() <= n).collect();
        let maximal = ThracklePath::new(n, cells.clone()).is_ok();
        Ok(RestrictedPath { index: self.index, n, cells, maximal })
    }
}

/// `P_i ∩ Ω_n` in path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedPath {
    pub index: u32,
    pub n: u32,
    pub cells: Vec<Segment>,
    /// Runs from some `(1, r)` to `(r, n)`.
    pub maximal: bool,
}

impl RestrictedPath {
    pub fn as_thrackle_path(&self) -> Option<ThracklePath> {
        ThracklePath::new(self.n, self.cells.clone()).ok()
    }
}

pub fn restrict_path(i: u32, n: u32) -> Result<RestrictedPath> {
    path_p(i)?.restrict(n)
}

/// Every `P_i ∩ Ω_n` for non-triangular `i` in `[2, n]`.
pub fn path_cover(n: u32) -> Result<Vec<RestrictedPath>> {
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_triangular(i)? {
            out.push(restrict_path(i, n)?);
        }
    }
    Ok(out)
}

/// A partition (or cover) of `Ω_n` into classes meant to be independent in
/// `D_n`. `class_labels[c]` is the index of the generating path, 0 when the
/// class came from elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub n: u32,
    pub classes: Vec<Vec<Segment>>,
    pub class_labels: Vec<u32>,
}

impl ColoringCertificate {
    pub fn new(n: u32, classes: Vec<Vec<Segment>>) -> Self {
        let class_labels = vec![0; classes.len()];
        ColoringCertificate { n, classes, class_labels }
    }

    pub fn color_count(&self) -> usize {
        self.classes.len()
    }
}

/// The `chi_formula(n)`-coloring from the path cover. A cell on several
/// paths goes to the smallest path index.
pub fn optimal_coloring(n: u32) -> Result<ColoringCertificate> {
    let omega = Omega::new(n);
    let mut taken = vec![false; omega.len()];
    let mut classes = Vec::new();
    let mut class_labels = Vec::new();
    for path in path_cover(n)? {
        let mut class = Vec::new();
        for &cell in &path.cells {
            let idx = omega.index_of(cell).expect("restricted paths stay in Ω_n");
            if !taken[idx] {
                taken[idx] = true;
                class.push(cell);
            }
        }
        class.sort();
        classes.push(class);
        class_labels.push(path.index);
    }
    Ok(ColoringCertificate { n, classes, class_labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassConflict {
    pub class: usize,
    pub first: Segment,
    pub second: Segment,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub uncovered: Vec<Segment>,
    pub conflicts: Vec<ClassConflict>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.uncovered.is_empty() && self.conflicts.is_empty()
    }
}

/// Check that the classes cover `Ω_n` and that no class holds two disjoint
/// segments. Cells outside `Ω_n` are a structural error.
pub fn verify_coloring(cert: &ColoringCertificate) -> Result<Verdict> {
    let omega = Omega::new(cert.n);
    let mut covered = vec![false; omega.len()];
    for (c, class) in cert.classes.iter().enumerate() {
        for &cell in class {
            let idx = omega.index_of(cell).ok_or_else(|| {
                Error::domain(format!("class {c}: cell {cell} lies outside Ω_{}", cert.n))
            })?;
            covered[idx] = true;
        }
    }
    let uncovered = omega.cells().zip(&covered).filter(|(_, &c)| !c).map(|(s, _)| s).collect();
    let mut conflicts = Vec::new();
    for (c, class) in cert.classes.iter().enumerate() {
        for (x, &s) in class.iter().enumerate() {
            for &t in &class[x + 1..] {
                if s != t && !intersecting(s, t) {
                    conflicts.push(ClassConflict { class: c, first: s, second: t });
                }
            }
        }
    }
    Ok(Verdict { uncovered, conflicts })
}

/// Assign every cell of column `j` to a path `P_i`, `i <= j`, through it,
/// following the case analysis on the block `N_k` containing `j`:
///
/// * `j = C(k,2) + 1`: `P_j` covers the column;
/// * `j = C(k+1,2)`: `P_{j-1}` covers it;
/// * otherwise, with `l = C(k+1,2) - j`, the top `C(l+1,2)` cells lie on `P_j`,
///   the next `l` rows on the row runs of `P_h` for `h` in `N'_{l+1}`, and
///   the rest on `P_{j-1}`.
///
/// Every assignment is checked against the closed form of the path.
pub fn column_coverage_witness(n: u32, j: u32) -> Result<BTreeMap<u32, u32>> {
    if j < 2 || j > n {
        return Err(Error::domain(format!("column {j} is not a column of Ω_{n}")));
    }
    let k = IntervalBlock::containing(j)?.k;
    let mut witness = BTreeMap::new();
    if j == choose2(k)? + 1 {
        witness.extend((1..j).map(|a| (a, j)));
    } else if j == triangular(k)? {
        witness.extend((1..j).map(|a| (a, j - 1)));
    } else {
        let ell = triangular(k)? - j;
        let top = triangular(ell)?;
        let middle_end = triangular(ell + 1)? - 1;
        for a in 1..j {
            let idx = if a <= top {
                j
            } else if a <= middle_end {
                a
            } else {
                j - 1
            };
            witness.insert(a, idx);
        }
    }
    for (&a, &idx) in &witness {
        let on_path = idx <= j && path_p(idx)?.contains(Segment::raw(a, j));
        if !on_path {
            return Err(Error::ProofObligation(format!(
                "cell ({a},{j}) assigned to P_{idx}, which misses it"
            )));
        }
    }
    Ok(witness)
}

/// Which restricted paths of `Ω_n` are maximal staircases.
pub fn maximality_census(n: u32) -> Result<Vec<(u32, bool)>> {
    Ok(path_cover(n)?.into_iter().map(|p| (p.index, p.maximal)).collect())
}
