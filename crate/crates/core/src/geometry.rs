//! Objective-space machinery: dominance, the upper-bound archive, lower-bound
//! segments and the filtering / tightening operations applied to them.
//!
//! Everything here works in min–min orientation. Feasible images live on the
//! integer grid (objectives are gcd-scaled at model build time), lower-bound
//! points may be fractional.

use std::fmt;

use crate::error::{Error, Result};

/// Snap applied before rounding fractional values onto the objective grid.
pub const GRID_SNAP: f64 = 1e-6;

/// Tolerance used in line / coordinate comparisons between bound sets.
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ObjectivePoint {
    pub z1: f64,
    pub z2: f64,
}

impl ObjectivePoint {
    pub const fn new(z1: f64, z2: f64) -> Self {
        Self { z1, z2 }
    }

    /// Sentinel used as the objective bound of the root node.
    pub const fn unbounded() -> Self {
        Self {
            z1: f64::INFINITY,
            z2: f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    pub fn component_min(&self, other: &Self) -> Self {
        Self::new(self.z1.min(other.z1), self.z2.min(other.z2))
    }

    pub fn component_max(&self, other: &Self) -> Self {
        Self::new(self.z1.max(other.z1), self.z2.max(other.z2))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.z1 - other.z1).abs() <= tol && (self.z2 - other.z2).abs() <= tol
    }
}

impl fmt::Debug for ObjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z1, self.z2)
    }
}

impl From<(f64, f64)> for ObjectivePoint {
    fn from((z1, z2): (f64, f64)) -> Self {
        Self::new(z1, z2)
    }
}

/// Per-objective step between feasible objective values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Granularity {
    pub g1: i64,
    pub g2: i64,
}

impl Granularity {
    pub const UNIT: Granularity = Granularity { g1: 1, g2: 1 };

    pub fn new(g1: i64, g2: i64) -> Result<Self> {
        if g1 < 1 || g2 < 1 {
            return Err(Error::InvalidInput(format!(
                "granularity must be positive, got ({g1}, {g2})"
            )));
        }
        Ok(Self { g1, g2 })
    }
}

/// Round down onto the grid `g·ℤ`, treating values within [`GRID_SNAP`] below a
/// grid line as lying on it.
pub fn floor_to_grid(x: f64, g: i64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let g = g as f64;
    (x / g + GRID_SNAP).floor() * g
}

/// Round up onto the grid `g·ℤ` with the same snap as [`floor_to_grid`].
pub fn ceil_to_grid(x: f64, g: i64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let g = g as f64;
    (x / g - GRID_SNAP).ceil() * g
}

/// `u` dominates `v`: no worse in both objectives, strictly better in one.
pub fn dominates(u: &ObjectivePoint, v: &ObjectivePoint) -> bool {
    u.z1 <= v.z1 && u.z2 <= v.z2 && (u.z1 < v.z1 || u.z2 < v.z2)
}

/// `u` dominates or equals `v`.
pub fn weakly_dominates(u: &ObjectivePoint, v: &ObjectivePoint) -> bool {
    u.z1 <= v.z1 && u.z2 <= v.z2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    Discarded,
    Inserted { removed: usize },
}

/// The upper-bound set: mutually nondominated points sorted by `z1`
/// ascending (hence `z2` strictly descending), each with one solution.
#[derive(Debug, Clone)]
pub struct NondominatedArchive<S> {
    entries: Vec<(ObjectivePoint, S)>,
}

impl<S> Default for NondominatedArchive<S> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

impl<S> NondominatedArchive<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(ObjectivePoint, S)] {
        &self.entries
    }

    pub fn points(&self) -> impl Iterator<Item = ObjectivePoint> + '_ {
        self.entries.iter().map(|(z, _)| *z)
    }

    pub fn into_entries(self) -> Vec<(ObjectivePoint, S)> {
        self.entries
    }

    /// Is `z` dominated by or equal to some archive point.
    pub fn covers(&self, z: &ObjectivePoint) -> bool {
        let idx = self.entries.partition_point(|(e, _)| e.z1 <= z.z1);
        idx > 0 && self.entries[idx - 1].0.z2 <= z.z2
    }

    pub fn insert(&mut self, z: ObjectivePoint, solution: S) -> InsertOutcome {
        let idx = self.entries.partition_point(|(e, _)| e.z1 <= z.z1);
        // entries[idx - 1] has the smallest z2 among all entries with z1 <= z.z1
        if idx > 0 && self.entries[idx - 1].0.z2 <= z.z2 {
            return InsertOutcome::Discarded;
        }
        let start = if idx > 0 && self.entries[idx - 1].0.z1 == z.z1 {
            idx - 1
        } else {
            idx
        };
        let mut end = start;
        while end < self.entries.len() && self.entries[end].0.z2 >= z.z2 {
            end += 1;
        }
        let removed = end - start;
        self.entries.splice(start..end, std::iter::once((z, solution)));
        InsertOutcome::Inserted { removed }
    }

    /// Full-scan check of the sortedness / nondominance invariant.
    pub fn check_invariant(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].0.z1 < w[1].0.z1 && w[0].0.z2 > w[1].0.z2)
    }
}

/// Two extreme points plus a local nadir point. The covered region is the
/// polygon `p, q, (c1, q2), c, (p1, c2)`; when `p == q` it is the rectangle
/// spanned by `p` and `c`.
#[derive(Clone, Copy, PartialEq)]
pub struct LbSegment {
    pub p: ObjectivePoint,
    pub q: ObjectivePoint,
    pub c: ObjectivePoint,
}

impl fmt::Debug for LbSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "Rect[{:?} c={:?}]", self.p, self.c)
        } else {
            write!(f, "Seg[{:?}-{:?} c={:?}]", self.p, self.q, self.c)
        }
    }
}

impl LbSegment {
    pub fn new(p: ObjectivePoint, q: ObjectivePoint, c: ObjectivePoint) -> Self {
        debug_assert!(
            p == q || (p.z1 < q.z1 && p.z2 > q.z2),
            "segment endpoints out of order: {p:?} {q:?}"
        );
        Self { p, q, c }
    }

    pub fn point(p: ObjectivePoint, c: ObjectivePoint) -> Self {
        Self { p, q: p, c }
    }

    pub fn is_point(&self) -> bool {
        self.p == self.q
    }

    /// Slope of the line through `p` and `q`; only meaningful when `p != q`.
    pub fn slope(&self) -> f64 {
        (self.q.z2 - self.p.z2) / (self.q.z1 - self.p.z1)
    }

    pub fn intercept(&self) -> f64 {
        self.p.z2 - self.slope() * self.p.z1
    }

    /// `z2` of the supporting line at `z1`.
    pub fn line_at(&self, z1: f64) -> f64 {
        // interpolate from p to keep endpoints exact
        self.p.z2 + self.slope() * (z1 - self.p.z1)
    }

    /// `z1` where the supporting line reaches `z2`.
    pub fn line_inverse(&self, z2: f64) -> f64 {
        self.p.z1 + (z2 - self.p.z2) / self.slope()
    }

    /// Does the covered region contain `z` (closed region)?
    pub fn contains(&self, z: &ObjectivePoint) -> bool {
        let eps = GEOM_EPS;
        if z.z1 < self.p.z1 - eps || z.z1 > self.c.z1 + eps {
            return false;
        }
        if self.is_point() {
            return z.z2 >= self.p.z2 - eps && z.z2 <= self.c.z2 + eps;
        }
        z.z2 >= self.q.z2 - eps && z.z2 <= self.c.z2 + eps && z.z2 >= self.line_at(z.z1) - eps
    }
}

/// Subtract the region weakly dominated by `u − shift` from the region covered
/// by `s`.
///
/// Follows the case analysis of the classic filtering routine: nadir tightening
/// when the shifted point sits on/above the line, splitting at the line
/// intersections when it lies strictly below it. When the shifted point is on or
/// above the line strictly inside the bounding box, the remainder is L-shaped
/// and is returned as two copies of `s` with tightened nadirs.
pub fn filter_segment(s: &LbSegment, u: &ObjectivePoint, shift: (f64, f64)) -> Vec<LbSegment> {
    let u = ObjectivePoint::new(u.z1 - shift.0, u.z2 - shift.1);
    let (p, q, c) = (s.p, s.q, s.c);

    if s.is_point() {
        if weakly_dominates(&u, &p) {
            return Vec::new();
        }
        if u.z1 <= p.z1 {
            return vec![LbSegment::point(p, ObjectivePoint::new(c.z1, c.z2.min(u.z2)))];
        }
        if u.z2 <= p.z2 {
            return vec![LbSegment::point(p, ObjectivePoint::new(c.z1.min(u.z1), c.z2))];
        }
        if u.z1 < c.z1 && u.z2 < c.z2 {
            return vec![
                LbSegment::point(p, ObjectivePoint::new(u.z1, c.z2)),
                LbSegment::point(p, ObjectivePoint::new(c.z1, u.z2)),
            ];
        }
        return vec![*s];
    }

    let on_or_above = u.z2 >= s.line_at(u.z1) - GEOM_EPS;
    if on_or_above || u.z2 >= p.z2 || u.z1 >= q.z1 {
        if u.z1 <= p.z1 {
            return vec![LbSegment::new(p, q, ObjectivePoint::new(c.z1, c.z2.min(u.z2)))];
        }
        if u.z2 <= q.z2 {
            return vec![LbSegment::new(p, q, ObjectivePoint::new(c.z1.min(u.z1), c.z2))];
        }
        if u.z1 < c.z1 && u.z2 < c.z2 {
            return vec![
                LbSegment::new(p, q, ObjectivePoint::new(u.z1, c.z2)),
                LbSegment::new(p, q, ObjectivePoint::new(c.z1, u.z2)),
            ];
        }
        return vec![*s];
    }

    // a cut within rounding distance of an endpoint leaves a single point
    let piece = |a: ObjectivePoint, b: ObjectivePoint, keep: ObjectivePoint, c: ObjectivePoint| {
        if b.z1 - a.z1 > GEOM_EPS && a.z2 - b.z2 > GEOM_EPS {
            LbSegment::new(a, b, c)
        } else {
            LbSegment::point(keep, c)
        }
    };
    let mut out = Vec::with_capacity(2);
    if u.z1 > p.z1 {
        let cut = ObjectivePoint::new(u.z1, s.line_at(u.z1));
        out.push(piece(p, cut, p, ObjectivePoint::new(u.z1, c.z2)));
    }
    if u.z2 > q.z2 {
        let cut = ObjectivePoint::new(s.line_inverse(u.z2), u.z2);
        out.push(piece(cut, q, q, ObjectivePoint::new(c.z1, u.z2)));
    }
    out
}

/// A lower bound set as a list of segments sorted by `p.z1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LowerBoundSet {
    pub segments: Vec<LbSegment>,
}

impl LowerBoundSet {
    pub fn new(mut segments: Vec<LbSegment>) -> Self {
        segments.sort_by(|a, b| a.p.z1.total_cmp(&b.p.z1));
        Self { segments }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    /// Component-wise maximum of all local nadir points.
    pub fn nadir(&self) -> Option<ObjectivePoint> {
        self.segments
            .iter()
            .map(|s| s.c)
            .reduce(|a, b| a.component_max(&b))
    }

    pub fn contains(&self, z: &ObjectivePoint) -> bool {
        self.segments.iter().any(|s| s.contains(z))
    }
}

/// Filter every segment with every archive point.
pub fn filter_bound_set<S>(
    lb: &LowerBoundSet,
    archive: &NondominatedArchive<S>,
    shift: (f64, f64),
) -> LowerBoundSet {
    let mut segments = lb.segments.clone();
    for u in archive.points() {
        if segments.is_empty() {
            break;
        }
        segments = segments
            .iter()
            .flat_map(|s| filter_segment(s, &u, shift))
            .collect();
    }
    let mut unique: Vec<LbSegment> = Vec::with_capacity(segments.len());
    for s in segments {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    LowerBoundSet::new(unique)
}

/// Does the covered region of `s` contain at least one point of the
/// objective grid. Constant time.
pub fn segment_covers_grid_point(s: &LbSegment, g: Granularity) -> bool {
    let f1 = floor_to_grid(s.c.z1, g.g1);
    let f2 = floor_to_grid(s.c.z2, g.g2);
    if s.is_point() {
        return f1 >= s.p.z1 - GRID_SNAP && f2 >= s.p.z2 - GRID_SNAP;
    }
    if f1 < s.p.z1 - GRID_SNAP || f2 < s.q.z2 - GRID_SNAP {
        return false;
    }
    if f1.is_infinite() || f2.is_infinite() {
        return true;
    }
    f2 >= s.slope() * f1 + s.intercept() - GRID_SNAP
}

/// True when the right triangle `p, (p1, q2), q` holds no grid point strictly
/// below the line through `p` and `q`, i.e. the pair already forms a valid
/// lower bound segment.
pub fn triangle_skip(p: &ObjectivePoint, q: &ObjectivePoint, g: Granularity) -> bool {
    let s = LbSegment::new(*p, *q, ObjectivePoint::unbounded());
    let c1 = ceil_to_grid(p.z1, g.g1);
    let c2 = ceil_to_grid(q.z2, g.g2);
    c2 >= s.intercept() + s.slope() * c1 - GEOM_EPS
}

/// A maximal connected group of segments and the nadir bounding all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Portion {
    pub segments: Vec<LbSegment>,
    pub nadir: ObjectivePoint,
}

/// Split a lower bound set into its connected chains. Consecutive segments `s`,
/// `t` share a portion iff `s.q == t.p` and `s.c1 <= t.p1`, or they are
/// copies of one segment with different nadirs (the two arms of an L-shaped
/// remainder), which overlap.
pub fn disjoint_portions(lb: &LowerBoundSet) -> Vec<Portion> {
    let mut sorted = lb.segments.clone();
    sorted.sort_by(|a, b| a.p.z1.total_cmp(&b.p.z1));
    let mut groups: Vec<Vec<LbSegment>> = Vec::new();
    for s in sorted {
        let joins = groups.last().and_then(|g| g.last()).is_some_and(|prev| {
            let chained = prev.q.approx_eq(&s.p, 1e-7) && prev.c.z1 <= s.p.z1 + 1e-7;
            let copies = prev.p.approx_eq(&s.p, 1e-7) && prev.q.approx_eq(&s.q, 1e-7);
            chained || copies
        });
        if joins {
            groups.last_mut().unwrap().push(s);
        } else {
            groups.push(vec![s]);
        }
    }
    groups
        .into_iter()
        .map(|segments| {
            let nadir = segments
                .iter()
                .map(|s| s.c)
                .reduce(|a, b| a.component_max(&b))
                .expect("non-empty group");
            Portion { segments, nadir }
        })
        .collect()
}

/// Assemble consecutive extreme points into segments. Every segment but the
/// last has its `c1` cut at the `z1` of its right endpoint.
pub fn link_nadirs(extremes: &[ObjectivePoint], global_nadir: ObjectivePoint) -> Result<LowerBoundSet> {
    for w in extremes.windows(2) {
        if !(w[0].z1 < w[1].z1 && w[0].z2 > w[1].z2) {
            return Err(Error::InvalidInput(format!(
                "extreme points must be sorted and mutually nondominated: {:?} then {:?}",
                w[0], w[1]
            )));
        }
    }
    let segments = match extremes {
        [] => Vec::new(),
        [p] => vec![LbSegment::point(*p, global_nadir.component_max(p))],
        _ => {
            let last = extremes.len() - 2;
            extremes
                .windows(2)
                .enumerate()
                .map(|(k, w)| {
                    let (p, q) = (w[0], w[1]);
                    let c = if k == last {
                        global_nadir
                    } else {
                        ObjectivePoint::new(q.z1, global_nadir.z2)
                    };
                    // nadir may not sit below the segment it bounds
                    let c = ObjectivePoint::new(c.z1.max(q.z1), c.z2.max(p.z2));
                    LbSegment::new(p, q, c)
                })
                .collect()
        }
    };
    Ok(LowerBoundSet::new(segments))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> ObjectivePoint {
        ObjectivePoint::new(a, b)
    }

    fn seg(p: (f64, f64), q: (f64, f64), c: (f64, f64)) -> LbSegment {
        LbSegment::new(p.into(), q.into(), c.into())
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&pt(3., 6.), &pt(4., 7.)));
        assert!(!dominates(&pt(3., 6.), &pt(3., 6.)));
        assert!(!dominates(&pt(3., 6.), &pt(4., 5.)));
    }

    #[test]
    fn archive_examples() {
        let mut a = NondominatedArchive::new();
        a.insert(pt(3., 6.), ());
        a.insert(pt(7., 2.), ());
        assert_eq!(a.insert(pt(5., 4.), ()), InsertOutcome::Inserted { removed: 0 });
        assert_eq!(a.points().collect::<Vec<_>>(), vec![pt(3., 6.), pt(5., 4.), pt(7., 2.)]);

        let mut a = NondominatedArchive::new();
        a.insert(pt(3., 6.), ());
        a.insert(pt(5., 4.), ());
        assert_eq!(a.insert(pt(4., 7.), ()), InsertOutcome::Discarded);

        let mut a = NondominatedArchive::new();
        for z in [pt(3., 6.), pt(5., 4.), pt(7., 2.)] {
            a.insert(z, ());
        }
        // (4, 3) dominates (5, 4) but not (7, 2)
        assert_eq!(a.insert(pt(4., 3.), ()), InsertOutcome::Inserted { removed: 1 });
        assert_eq!(a.points().collect::<Vec<_>>(), vec![pt(3., 6.), pt(4., 3.), pt(7., 2.)]);
        assert!(a.check_invariant());
    }

    #[test]
    fn archive_equal_first_coordinate() {
        let mut a = NondominatedArchive::new();
        a.insert(pt(3., 6.), 0);
        assert_eq!(a.insert(pt(3., 5.), 1), InsertOutcome::Inserted { removed: 1 });
        assert_eq!(a.insert(pt(3., 5.), 2), InsertOutcome::Discarded);
        assert_eq!(a.entries(), &[(pt(3., 5.), 1)]);
    }

    #[test]
    fn filter_segment_examples() {
        let s = seg((0., 10.), (10., 0.), (20., 20.));
        assert_eq!(
            filter_segment(&s, &pt(4., 4.), (0., 0.)),
            vec![
                seg((0., 10.), (4., 6.), (4., 20.)),
                seg((6., 4.), (10., 0.), (20., 4.)),
            ]
        );
        assert!(filter_segment(&s, &pt(-1., -1.), (0., 0.)).is_empty());
        assert_eq!(
            filter_segment(&s, &pt(12., -1.), (0., 0.)),
            vec![seg((0., 10.), (10., 0.), (12., 20.))]
        );
    }

    #[test]
    fn filter_segment_interior_point_above_line() {
        let s = seg((0., 10.), (10., 0.), (20., 20.));
        assert_eq!(
            filter_segment(&s, &pt(8., 8.), (0., 0.)),
            vec![
                seg((0., 10.), (10., 0.), (8., 20.)),
                seg((0., 10.), (10., 0.), (20., 8.)),
            ]
        );
        // outside the box: nothing to remove
        assert_eq!(filter_segment(&s, &pt(25., 8.), (0., 0.)), vec![s]);
    }

    #[test]
    fn filter_rectangle() {
        let r = LbSegment::point(pt(2., 3.), pt(9., 9.));
        assert!(filter_segment(&r, &pt(2., 3.), (0., 0.)).is_empty());
        assert_eq!(
            filter_segment(&r, &pt(1., 5.), (0., 0.)),
            vec![LbSegment::point(pt(2., 3.), pt(9., 5.))]
        );
        assert_eq!(
            filter_segment(&r, &pt(5., 1.), (0., 0.)),
            vec![LbSegment::point(pt(2., 3.), pt(5., 9.))]
        );
        assert_eq!(filter_segment(&r, &pt(5., 5.), (0., 0.)).len(), 2);
    }

    #[test]
    fn filter_bound_set_examples() {
        let lb = LowerBoundSet::new(vec![seg((0., 10.), (10., 0.), (20., 20.))]);
        let empty: NondominatedArchive<()> = NondominatedArchive::new();
        assert_eq!(filter_bound_set(&lb, &empty, (0., 0.)), lb);

        let mut a = NondominatedArchive::new();
        a.insert(pt(0., 0.), ());
        assert!(filter_bound_set(&lb, &a, (0., 0.)).is_empty());

        let mut a = NondominatedArchive::new();
        a.insert(pt(4., 5.), ());
        let out = filter_bound_set(&lb, &a, (0.5, 0.5));
        assert_eq!(
            out.segments,
            vec![
                seg((0., 10.), (3.5, 6.5), (3.5, 20.)),
                seg((5.5, 4.5), (10., 0.), (20., 4.5)),
            ]
        );
    }

    #[test]
    fn filtering_is_idempotent_on_examples() {
        let lb = LowerBoundSet::new(vec![seg((0., 10.), (10., 0.), (20., 20.))]);
        let mut a = NondominatedArchive::new();
        for z in [pt(2., 9.), pt(8., 8.), pt(12., -1.)] {
            a.insert(z, ());
        }
        for shift in [(0., 0.), (0.5, 0.5)] {
            let once = filter_bound_set(&lb, &a, shift);
            let twice = filter_bound_set(&once, &a, shift);
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn covers_grid_point_examples() {
        let g = Granularity::UNIT;
        assert!(segment_covers_grid_point(&seg((0.5, 9.5), (9.5, 0.5), (10.2, 10.2)), g));
        assert!(segment_covers_grid_point(&LbSegment::point(pt(2., 3.), pt(2.9, 3.7)), g));
        assert!(!segment_covers_grid_point(&seg((0.5, 0.6), (0.6, 0.5), (0.9, 0.9)), g));
    }

    #[test]
    fn triangle_skip_examples() {
        let g = Granularity::UNIT;
        assert!(triangle_skip(&pt(0.2, 0.9), &pt(0.9, 0.2), g));
        assert!(!triangle_skip(&pt(0.9, 3.1), &pt(3.1, 0.9), g));
        assert!(!triangle_skip(&pt(1., 5.), &pt(5., 1.), g));
    }

    #[test]
    fn grid_rounding_respects_granularity() {
        assert_eq!(floor_to_grid(7.9, 3), 6.0);
        assert_eq!(ceil_to_grid(6.0000001, 3), 6.0);
        assert_eq!(floor_to_grid(5.9999999, 1), 6.0);
    }

    #[test]
    fn portions_examples() {
        let chain = LowerBoundSet::new(vec![
            seg((0., 10.), (5., 5.), (5., 20.)),
            seg((5., 5.), (10., 0.), (20., 20.)),
        ]);
        assert_eq!(disjoint_portions(&chain).len(), 1);

        let split = LowerBoundSet::new(vec![
            seg((0., 10.), (4., 6.), (4., 20.)),
            seg((6., 4.), (10., 0.), (20., 4.)),
        ]);
        let portions = disjoint_portions(&split);
        assert_eq!(portions.len(), 2);
        assert_eq!(portions[0].nadir, pt(4., 20.));
        assert_eq!(portions[1].nadir, pt(20., 4.));

        let arms = LowerBoundSet::new(vec![
            seg((0., 10.), (10., 0.), (6., 20.)),
            seg((0., 10.), (10., 0.), (20., 7.)),
        ]);
        let portions = disjoint_portions(&arms);
        assert_eq!(portions.len(), 1);
        assert_eq!(portions[0].nadir, pt(20., 20.));

        assert!(disjoint_portions(&LowerBoundSet::default()).is_empty());
    }

    #[test]
    fn link_nadirs_examples() {
        let lb = link_nadirs(&[pt(0., 10.), pt(10., 0.)], pt(20., 20.)).unwrap();
        assert_eq!(lb.segments, vec![seg((0., 10.), (10., 0.), (20., 20.))]);

        let lb = link_nadirs(&[pt(0., 10.), pt(4., 4.), pt(10., 0.)], pt(20., 20.)).unwrap();
        assert_eq!(lb.segments[0].c, pt(4., 20.));
        assert_eq!(lb.segments[1].c, pt(20., 20.));

        let lb = link_nadirs(&[pt(3., 6.)], pt(9., 9.)).unwrap();
        assert_eq!(lb.segments, vec![LbSegment::point(pt(3., 6.), pt(9., 9.))]);

        assert!(link_nadirs(&[pt(4., 4.), pt(3., 6.)], pt(9., 9.)).is_err());
        assert!(link_nadirs(&[pt(3., 4.), pt(4., 6.)], pt(9., 9.)).is_err());
    }
}
