//! The bi-objective branch-and-bound tree search.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bound::{bound, NodeProblem, Support};
use crate::error::{Error, Result};
use crate::geometry::{
    disjoint_portions, filter_segment, floor_to_grid, segment_covers_grid_point, Granularity, LbSegment, LowerBoundSet,
    NondominatedArchive, ObjectivePoint,
};

/// Shift applied to archive points when integer dominance is enabled.
pub const INT_DOMINANCE_SHIFT: f64 = 0.5;

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(7200);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchingDecision {
    VarFix { var: usize, value: i64 },
    /// Control point `i` must (`true`) or must not be visited.
    ControlPoint(usize, bool),
    /// Arc `(i, j)` must (`true`) or must not be used.
    Arc(usize, usize, bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub osb: bool,
    pub tightening: bool,
    pub lifting: bool,
    pub int_dominance: bool,
    pub time_limit: Option<Duration>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            osb: true,
            tightening: true,
            lifting: true,
            int_dominance: true,
            time_limit: Some(DEFAULT_TIME_LIMIT),
        }
    }
}

impl EngineConfig {
    /// All sixteen combinations of the enhancement toggles.
    pub fn all_toggle_combinations() -> Vec<EngineConfig> {
        (0..16u8)
            .map(|m| EngineConfig {
                osb: m & 1 != 0,
                tightening: m & 2 != 0,
                lifting: m & 4 != 0,
                int_dominance: m & 8 != 0,
                time_limit: Some(DEFAULT_TIME_LIMIT),
            })
            .collect()
    }

    fn shift(&self) -> (f64, f64) {
        if self.int_dominance {
            (INT_DOMINANCE_SHIFT, INT_DOMINANCE_SHIFT)
        } else {
            (0.0, 0.0)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub lp_count: u64,
    pub node_count: u64,
    pub osb_branches_root: u64,
    pub osb_branches_other: u64,
    pub max_osb_depth: u32,
    /// Scalar integer solves of the criterion-space methods; zero for the
    /// tree search.
    pub iterations: u64,
    pub cpu_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct SearchNode<D> {
    pub nadir: ObjectivePoint,
    pub decisions: Vec<D>,
    pub depth: u32,
}

#[derive(Debug, Clone)]
pub struct RunOutcome<S> {
    pub archive: NondominatedArchive<S>,
    pub stats: SearchStats,
    /// False when the time limit cut the search short.
    pub complete: bool,
}

/// Outcome of filtering and tightening a node's lower bound set.
#[derive(Debug, Clone, PartialEq)]
pub enum FathomCheck {
    Fathom,
    Branch(LowerBoundSet),
}

/// Drop segments without grid points (when `tightening`) and report whether
/// anything remains.
pub fn fathom_check(lb: LowerBoundSet, tightening: bool) -> FathomCheck {
    let lb = if tightening {
        LowerBoundSet::new(
            lb.segments
                .into_iter()
                .filter(|s| segment_covers_grid_point(s, Granularity::UNIT))
                .collect(),
        )
    } else {
        lb
    };
    if lb.is_empty() {
        FathomCheck::Fathom
    } else {
        FathomCheck::Branch(lb)
    }
}

/// A filtered piece together with the z1 range of the unfiltered segment(s)
/// it came from.
#[derive(Debug, Clone, Copy)]
struct Piece {
    seg: LbSegment,
    range: (f64, f64),
}

fn filter_with_origin<S>(lb: &LowerBoundSet, archive: &NondominatedArchive<S>, shift: (f64, f64)) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::new();
    for s in &lb.segments {
        let mut pieces = vec![*s];
        for u in archive.points() {
            if pieces.is_empty() {
                break;
            }
            pieces = pieces.iter().flat_map(|t| filter_segment(t, &u, shift)).collect();
        }
        for seg in pieces {
            let range = (s.p.z1, s.q.z1);
            match out.iter_mut().find(|x| x.seg == seg) {
                Some(x) => x.range = (x.range.0.min(range.0), x.range.1.max(range.1)),
                None => out.push(Piece { seg, range }),
            }
        }
    }
    out
}

/// Children of a node for one group of surviving segments.
fn decision_children<P: NodeProblem>(
    problem: &P,
    supports: &[Support<P::Solution>],
    range: (f64, f64),
    node: &SearchNode<P::Decision>,
    nadir: ObjectivePoint,
) -> Result<Vec<SearchNode<P::Decision>>> {
    let in_range: Vec<&Support<P::Solution>> = supports
        .iter()
        .filter(|s| s.image.z1 >= range.0 - 1e-7 && s.image.z1 <= range.1 + 1e-7)
        .collect();
    let decisions = match problem.branch(&in_range) {
        Err(Error::NoFractionalEntity) => {
            let all: Vec<&Support<P::Solution>> = supports.iter().collect();
            match problem.branch(&all) {
                Err(Error::NoFractionalEntity) => problem.branch_any()?,
                other => other?,
            }
        }
        other => other?,
    };
    Ok(decisions
        .into_iter()
        .map(|d| {
            let mut decisions = node.decisions.clone();
            decisions.push(d);
            SearchNode {
                nadir,
                decisions,
                depth: node.depth + 1,
            }
        })
        .collect())
}

/// Run the tree search to completion or until the time limit.
pub fn run_biobab<P: NodeProblem>(problem: &mut P, config: &EngineConfig) -> Result<RunOutcome<P::Solution>> {
    let start = Instant::now();
    let mut archive: NondominatedArchive<P::Solution> = NondominatedArchive::new();
    let mut stats = SearchStats::default();
    let mut queue = VecDeque::new();
    queue.push_back(SearchNode {
        nadir: ObjectivePoint::unbounded(),
        decisions: Vec::new(),
        depth: 0,
    });
    let mut complete = true;

    while let Some(node) = queue.pop_front() {
        if config.time_limit.is_some_and(|t| start.elapsed() > t) {
            complete = false;
            break;
        }
        stats.node_count += 1;
        problem.prepare(node.nadir, &node.decisions)?;
        let outcome = bound(problem, node.nadir, config.lifting, true)?;
        for (z, sol) in problem.take_harvest() {
            archive.insert(z, sol);
        }
        for s in &outcome.supports {
            if let Some(sol) = &s.solution {
                archive.insert(s.image, sol.clone());
            }
        }
        if outcome.lb.is_empty() {
            continue;
        }

        let pieces = filter_with_origin(&outcome.lb, &archive, config.shift());
        let filtered = LowerBoundSet::new(pieces.iter().map(|p| p.seg).collect());
        let FathomCheck::Branch(lb) = fathom_check(filtered, config.tightening) else {
            continue;
        };

        let range_of = |seg: &LbSegment| {
            pieces
                .iter()
                .find(|p| p.seg == *seg)
                .map(|p| p.range)
                .unwrap_or((seg.p.z1, seg.q.z1))
        };

        if config.osb {
            let portions = disjoint_portions(&lb);
            let k = portions.len() as u64;
            if k > 1 {
                if node.depth == 0 {
                    stats.osb_branches_root += k;
                } else {
                    stats.osb_branches_other += k;
                }
                stats.max_osb_depth = stats.max_osb_depth.max(node.depth);
            }
            for portion in portions {
                let range = portion
                    .segments
                    .iter()
                    .map(range_of)
                    .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
                    .expect("portion has segments");
                // internal objective values are integral
                let nadir = ObjectivePoint::new(
                    floor_to_grid(portion.nadir.z1, 1),
                    floor_to_grid(portion.nadir.z2, 1),
                )
                .component_min(&node.nadir);
                queue.extend(decision_children(&*problem, &outcome.supports, range, &node, nadir)?);
            }
        } else {
            let range = (f64::NEG_INFINITY, f64::INFINITY);
            queue.extend(decision_children(&*problem, &outcome.supports, range, &node, node.nadir)?);
        }
    }

    stats.lp_count = problem.lp_count();
    stats.cpu_seconds = start.elapsed().as_secs_f64();
    debug_assert!(archive.check_invariant());
    Ok(RunOutcome {
        archive,
        stats,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fathom_check_toggle() {
        assert_eq!(fathom_check(LowerBoundSet::default(), true), FathomCheck::Fathom);
        let s = LbSegment::new((0.5, 0.6).into(), (0.6, 0.5).into(), (0.9, 0.9).into());
        let lb = LowerBoundSet::new(vec![s]);
        assert_eq!(fathom_check(lb.clone(), true), FathomCheck::Fathom);
        assert_eq!(fathom_check(lb.clone(), false), FathomCheck::Branch(lb));
    }

    #[test]
    fn toggle_combinations_are_distinct() {
        let all = EngineConfig::all_toggle_combinations();
        assert_eq!(all.len(), 16);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }
}
