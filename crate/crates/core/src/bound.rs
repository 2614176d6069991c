//! Lower bound set computation for one search node.
//!
//! Endpoints come from the two lexicographic optima; the space between them
//! is explored with weighted-sum solves whose weights are the normal of the
//! current chord. With lifting enabled, a chord whose lower-left triangle holds
//! no grid point is accepted without a solve.

use std::fmt;

use crate::error::Result;
use crate::geometry::{link_nadirs, triangle_skip, Granularity, LowerBoundSet, ObjectivePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    First,
    Second,
}

/// A solution produced by a scalar solve at a node: its image, the values of
/// the entities used for branching, and the solution itself when it is
/// integer feasible.
#[derive(Debug, Clone)]
pub struct Support<S> {
    pub image: ObjectivePoint,
    pub entities: Vec<f64>,
    pub solution: Option<S>,
}

/// The scalar solver behind a bi-objective search, specialized for one node at
/// a time.
pub trait NodeProblem {
    type Decision: Clone + fmt::Debug;
    type Solution: Clone;

    /// Install objective bounds and branching decisions for the next solves.
    fn prepare(&mut self, nadir: ObjectivePoint, decisions: &[Self::Decision]) -> Result<()>;

    /// `None` when the node is infeasible.
    fn lexmin(&mut self, first: Objective) -> Result<Option<Support<Self::Solution>>>;

    /// Minimize `w1·f1 + w2·f2`. Solvers that enforce integrality may use
    /// `cutoff` and return `None` when nothing lies strictly below it.
    fn weighted(&mut self, w1: f64, w2: f64, cutoff: Option<f64>) -> Result<Option<Support<Self::Solution>>>;

    /// Integer feasible solutions met inside the solver since the last call.
    fn take_harvest(&mut self) -> Vec<(ObjectivePoint, Self::Solution)>;

    /// Decision-space children for a portion described by its supports.
    fn branch(&self, supports: &[&Support<Self::Solution>]) -> Result<Vec<Self::Decision>>;

    /// Children when every support is integral on every entity. `Ok` with no
    /// decisions means the node holds a single solution.
    fn branch_any(&self) -> Result<Vec<Self::Decision>> {
        Ok(Vec::new())
    }

    fn lp_count(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct BoundOutcome<S> {
    pub extremes: Vec<ObjectivePoint>,
    pub lb: LowerBoundSet,
    pub supports: Vec<Support<S>>,
}

impl<S> BoundOutcome<S> {
    fn empty() -> Self {
        Self {
            extremes: Vec::new(),
            lb: LowerBoundSet::default(),
            supports: Vec::new(),
        }
    }
}

/// Weighted-sum solve at the current node.
pub fn scalarized_solve<P: NodeProblem>(
    problem: &mut P,
    w1: f64,
    w2: f64,
    cutoff: Option<f64>,
) -> Result<Option<Support<P::Solution>>> {
    debug_assert!(w1 >= 0.0 && w2 >= 0.0 && (w1 > 0.0 || w2 > 0.0));
    problem.weighted(w1, w2, cutoff)
}

fn strictly_between(u: &ObjectivePoint, p: &ObjectivePoint, q: &ObjectivePoint) -> bool {
    let eps = 1e-9;
    u.z1 > p.z1 + eps && u.z1 < q.z1 - eps && u.z2 < p.z2 - eps && u.z2 > q.z2 + eps
}

/// Compute the lower bound set of the prepared node.
pub fn bound<P: NodeProblem>(
    problem: &mut P,
    nadir: ObjectivePoint,
    lifting: bool,
    use_cutoff: bool,
) -> Result<BoundOutcome<P::Solution>> {
    let g = Granularity::UNIT;
    let Some(left) = problem.lexmin(Objective::First)? else {
        return Ok(BoundOutcome::empty());
    };
    let right = problem.lexmin(Objective::Second)?;
    let p = left.image;
    let mut supports = vec![left];
    let q = match right {
        Some(r) => {
            let q = r.image;
            supports.push(r);
            q
        }
        None => p,
    };

    let mut extremes = vec![p];
    if q.z1 > p.z1 + 1e-9 && q.z2 < p.z2 - 1e-9 {
        extremes.push(q);
        let mut stack = vec![(p, q)];
        while let Some((p, q)) = stack.pop() {
            if lifting && triangle_skip(&p, &q, g) {
                continue;
            }
            let w2 = q.z1 - p.z1;
            let w1 = p.z2 - q.z2;
            let line = w1 * p.z1 + w2 * p.z2;
            let cutoff = use_cutoff.then_some(line);
            let Some(sup) = scalarized_solve(problem, w1, w2, cutoff)? else {
                continue;
            };
            let u = sup.image;
            let below = w1 * u.z1 + w2 * u.z2 < line - 1e-6 * line.abs().max(1.0);
            let fresh = below && strictly_between(&u, &p, &q);
            supports.push(sup);
            if fresh {
                extremes.push(u);
                stack.push((p, u));
                stack.push((u, q));
            }
        }
        extremes.sort_by(|a, b| a.z1.total_cmp(&b.z1));
    }

    let lb = link_nadirs(&extremes, nadir)?;
    Ok(BoundOutcome {
        extremes,
        lb,
        supports,
    })
}
