//! Planar points in convex position and closed-segment intersection.
//!
//! Used as an independent check of the label predicate in [`crate::convex`]:
//! the combinatorial rule must agree with actual geometry. Generic over the
//! coordinate scalar so the same predicate runs on exact rationals and on
//! floats.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Float, Num};

pub trait Scalar: Num + Copy + PartialOrd {}

impl<S: Num + Copy + PartialOrd> Scalar for S {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }
}

fn sign<S: Scalar>(v: S) -> Ordering {
    v.partial_cmp(&S::zero()).unwrap_or(Ordering::Equal)
}

/// Sign of the cross product `(b - a) × (c - a)`.
pub fn orientation<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>) -> Ordering {
    let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    sign(cross)
}

fn within<S: Scalar>(lo: S, hi: S, v: S) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= v && v <= hi
}

/// `c` lies on the closed segment `ab`, given the three are collinear.
fn on_segment<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>) -> bool {
    within(a.x, b.x, c.x) && within(a.y, b.y, c.y)
}

/// Closed segments `pq` and `rs` share at least one point.
pub fn segments_intersect<S: Scalar>(p: Point<S>, q: Point<S>, r: Point<S>, s: Point<S>) -> bool {
    let o1 = orientation(p, q, r);
    let o2 = orientation(p, q, s);
    let o3 = orientation(r, s, p);
    let o4 = orientation(r, s, q);
    let proper = |x: Ordering, y: Ordering| x != Ordering::Equal && y != Ordering::Equal && x != y;
    if proper(o1, o2) && proper(o3, o4) {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(p, q, r))
        || (o2 == Ordering::Equal && on_segment(p, q, s))
        || (o3 == Ordering::Equal && on_segment(r, s, p))
        || (o4 == Ordering::Equal && on_segment(r, s, q))
}

/// `n` rational points on the unit circle in clockwise order, from the
/// parametrisation `t ↦ ((1 - t²)/(1 + t²), 2t/(1 + t²))`.
pub fn rational_circle_points(n: u32) -> Vec<Point<Ratio<i64>>> {
    let n = i64::from(n);
    (1..=n)
        .map(|m| {
            // decreasing t walks the circle clockwise
            let t = Ratio::new(n + 1 - 2 * m, n.max(1));
            let one = Ratio::from_integer(1);
            let denom = one + t * t;
            Point::new((one - t * t) / denom, (t + t) / denom)
        })
        .collect()
}

/// `n` points at angles `2πm/n`, clockwise from the top of the unit circle.
pub fn float_circle_points<F: Float>(n: u32) -> Vec<Point<F>> {
    let tau = F::from(std::f64::consts::TAU).unwrap();
    let count = F::from(n).unwrap();
    (0..n)
        .map(|m| {
            let theta = tau * F::from(m).unwrap() / count;
            Point { x: theta.sin(), y: theta.cos() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    #[test]
    fn intersection_cases() {
        assert!(segments_intersect(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_intersect(p(0, 0), p(1, 0), p(0, 1), p(1, 1)));
        // shared endpoint
        assert!(segments_intersect(p(0, 0), p(1, 0), p(1, 0), p(1, 1)));
        // touching in the interior
        assert!(segments_intersect(p(0, 0), p(2, 0), p(1, 0), p(1, 3)));
        // collinear, overlapping and separated
        assert!(segments_intersect(p(0, 0), p(2, 0), p(1, 0), p(3, 0)));
        assert!(!segments_intersect(p(0, 0), p(1, 0), p(2, 0), p(3, 0)));
        // lines cross, segments do not
        assert!(!segments_intersect(p(0, 0), p(1, 1), p(3, 0), p(2, 1)));
    }

    #[test]
    fn rational_points_lie_on_circle_in_strictly_convex_position() {
        let pts = rational_circle_points(9);
        let one = Ratio::from_integer(1);
        for q in &pts {
            assert_eq!(q.x * q.x + q.y * q.y, one);
        }
        // clockwise: every consecutive triple turns right
        for w in pts.windows(3) {
            assert_eq!(orientation(w[0], w[1], w[2]), Ordering::Less);
        }
    }

    #[test]
    fn float_points_turn_clockwise() {
        let pts = float_circle_points::<f64>(7);
        for w in pts.windows(3) {
            assert_eq!(orientation(w[0], w[1], w[2]), Ordering::Less);
        }
    }
}
