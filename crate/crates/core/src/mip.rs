//! Single-objective branch-and-bound for pure integer programs, plus the
//! two-stage lexicographic solve shared by every method.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::lp::{dot, solve_lp_with_bounds, LinearModel, LpStatus, Sense};

pub const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarStatus {
    Optimal,
    Infeasible,
    CutoffExceeded,
}

#[derive(Debug, Clone)]
pub struct ScalarResult {
    pub status: ScalarStatus,
    pub x: Vec<f64>,
    pub value: f64,
    /// Row duals; only populated for LP solves.
    pub duals: Vec<f64>,
    /// Column reduced costs; only populated for LP solves.
    pub reduced_costs: Vec<f64>,
    pub lp_count: u64,
}

impl ScalarResult {
    pub fn is_optimal(&self) -> bool {
        self.status == ScalarStatus::Optimal
    }

    fn without_solution(status: ScalarStatus, n: usize, lp_count: u64) -> Self {
        Self {
            status,
            x: vec![0.0; n],
            value: f64::INFINITY,
            duals: Vec::new(),
            reduced_costs: Vec::new(),
            lp_count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Lp,
    Mip,
}

pub fn is_integral(model: &LinearModel, x: &[f64]) -> bool {
    model
        .vars
        .iter()
        .zip(x)
        .all(|(v, &xi)| !v.integer || (xi - xi.round()).abs() <= INT_TOL)
}

/// Round integer variables to the nearest integer.
pub fn round_integers(model: &LinearModel, x: &[f64]) -> Vec<f64> {
    model
        .vars
        .iter()
        .zip(x)
        .map(|(v, &xi)| if v.integer { xi.round() } else { xi })
        .collect()
}

pub fn solve_lp_scalar(
    model: &LinearModel,
    cost: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> Result<ScalarResult> {
    let sol = solve_lp_with_bounds(model, cost, lower, upper)?;
    Ok(match sol.status {
        LpStatus::Optimal => ScalarResult {
            status: ScalarStatus::Optimal,
            x: sol.x,
            value: sol.value,
            duals: sol.duals,
            reduced_costs: sol.reduced_costs,
            lp_count: 1,
        },
        LpStatus::Infeasible => ScalarResult::without_solution(ScalarStatus::Infeasible, model.num_vars(), 1),
    })
}

struct Node {
    bound: f64,
    seq: u64,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // max-heap: smaller bound first, then older node
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Best-first branch-and-bound. Only solutions with value strictly below
/// `cutoff` are accepted. Every integral LP solution met during the search is
/// passed to `sink` (rounded), improving or not.
pub fn solve_mip(
    model: &LinearModel,
    cost: &[f64],
    lower: &[f64],
    upper: &[f64],
    cutoff: Option<f64>,
    sink: &mut dyn FnMut(&[f64]),
) -> Result<ScalarResult> {
    let n = model.num_vars();
    let integral_objective = model
        .vars
        .iter()
        .zip(cost)
        .all(|(v, &c)| c == 0.0 || (v.integer && c == c.round()));
    let prunable = |bound: f64, incumbent: f64| {
        if integral_objective {
            (bound - INT_TOL).ceil() >= incumbent - INT_TOL
        } else {
            bound >= incumbent - 1e-9 * incumbent.abs().max(1.0)
        }
    };

    let mut incumbent_value = cutoff.unwrap_or(f64::INFINITY);
    let mut incumbent: Option<Vec<f64>> = None;
    let mut pruned_by_bound = false;
    let mut lp_count = 0u64;
    let mut seq = 0u64;

    let mut heap = BinaryHeap::new();
    heap.push(Node {
        bound: f64::NEG_INFINITY,
        seq,
        lower: lower.to_vec(),
        upper: upper.to_vec(),
    });

    while let Some(node) = heap.pop() {
        if prunable(node.bound, incumbent_value) {
            pruned_by_bound = true;
            continue;
        }
        let sol = solve_lp_with_bounds(model, cost, &node.lower, &node.upper)?;
        lp_count += 1;
        if sol.status == LpStatus::Infeasible {
            continue;
        }
        if is_integral(model, &sol.x) {
            let x = round_integers(model, &sol.x);
            sink(&x);
            let value = dot(cost, &x);
            if value < incumbent_value - 1e-9 && !prunable(value, incumbent_value) {
                incumbent_value = value;
                incumbent = Some(x);
            } else {
                pruned_by_bound = true;
            }
            continue;
        }
        if prunable(sol.value, incumbent_value) {
            pruned_by_bound = true;
            continue;
        }
        // most fractional, ties to lowest index
        let mut branch_var = None;
        let mut best = -1.0;
        for (j, v) in model.vars.iter().enumerate() {
            if !v.integer {
                continue;
            }
            let score = (sol.x[j] - sol.x[j].round()).abs();
            if score <= INT_TOL {
                continue;
            }
            if score > best + 1e-12 {
                best = score;
                branch_var = Some(j);
            }
        }
        let j = branch_var.expect("fractional solution has a fractional integer variable");
        let xj = sol.x[j];
        let mut down = Node {
            bound: sol.value,
            seq: 0,
            lower: node.lower.clone(),
            upper: node.upper.clone(),
        };
        down.upper[j] = xj.floor();
        let mut up = Node {
            bound: sol.value,
            seq: 0,
            lower: node.lower,
            upper: node.upper,
        };
        up.lower[j] = xj.ceil();
        for mut child in [down, up] {
            seq += 1;
            child.seq = seq;
            heap.push(child);
        }
    }

    Ok(match incumbent {
        Some(x) => ScalarResult {
            status: ScalarStatus::Optimal,
            value: dot(cost, &x),
            x,
            duals: Vec::new(),
            reduced_costs: Vec::new(),
            lp_count,
        },
        None if cutoff.is_some() && pruned_by_bound => {
            ScalarResult::without_solution(ScalarStatus::CutoffExceeded, n, lp_count)
        }
        None => ScalarResult::without_solution(ScalarStatus::Infeasible, n, lp_count),
    })
}

/// Right-hand side pinning `first·x` to its integer-program optimum.
fn pin_rhs(model: &LinearModel, first: &[f64], value: f64) -> f64 {
    let integral = model.vars.iter().zip(first).all(|(v, &c)| c == 0.0 || (v.integer && c == c.round()));
    if integral {
        value.round() + 0.5
    } else {
        value + 1e-6 * value.abs().max(1.0)
    }
}

/// Dual tolerance used to identify the optimal face of an LP.
const FACE_TOL: f64 = 1e-9;

/// Two sequential scalar solves: optimize `first`, then `second` over the set
/// of optima of the first stage. For LPs that set is the optimal face, given by
/// the stage-one reduced costs and duals; for integer programs `first·x` is
/// pinned to its optimum. Returns the second stage result, with the lp count of
/// both stages.
pub fn solve_lexmin(
    model: &LinearModel,
    first: &[f64],
    second: &[f64],
    lower: &[f64],
    upper: &[f64],
    mode: SolveMode,
    sink: &mut dyn FnMut(&[f64]),
) -> Result<ScalarResult> {
    let stage1 = match mode {
        SolveMode::Lp => solve_lp_scalar(model, first, lower, upper)?,
        SolveMode::Mip => solve_mip(model, first, lower, upper, None, sink)?,
    };
    if !stage1.is_optimal() {
        return Ok(stage1);
    }
    let mut stage2 = match mode {
        SolveMode::Lp => {
            let mut face = model.clone();
            let (mut lo, mut up) = (lower.to_vec(), upper.to_vec());
            for (j, &d) in stage1.reduced_costs.iter().enumerate() {
                if d > FACE_TOL {
                    up[j] = lo[j];
                } else if d < -FACE_TOL {
                    lo[j] = up[j];
                }
            }
            for (row, &y) in face.rows.iter_mut().zip(&stage1.duals) {
                if y.abs() > FACE_TOL && row.rhs.is_finite() {
                    row.sense = Sense::Eq;
                }
            }
            solve_lp_scalar(&face, second, &lo, &up)?
        }
        SolveMode::Mip => {
            let mut pinned = model.clone();
            let terms: Vec<(usize, f64)> = first.iter().copied().enumerate().filter(|(_, a)| *a != 0.0).collect();
            pinned.add_row(&terms, Sense::Le, pin_rhs(model, first, stage1.value));
            solve_mip(&pinned, second, lower, upper, None, sink)?
        }
    };
    stage2.lp_count += stage1.lp_count;
    if stage2.duals.len() > model.rows.len() {
        stage2.duals.truncate(model.rows.len());
    }
    if !stage2.is_optimal() {
        // numerically the restricted problem must be feasible; fall back to stage one
        let mut fallback = stage1;
        fallback.lp_count = stage2.lp_count;
        return Ok(fallback);
    }
    Ok(stage2)
}
