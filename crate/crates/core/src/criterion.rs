//! Criterion-space baselines: the ε-constraint method (either direction, or
//! alternating) and the balanced box method. Both work on the gcd-scaled
//! model, where ε is 1 in every objective, and solve integer programs
//! lexicographically.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::bound::Objective;
use crate::engine::{SearchStats, DEFAULT_TIME_LIMIT};
use crate::error::{Error, Result};
use crate::geometry::{Granularity, NondominatedArchive, ObjectivePoint};
use crate::lp::LinearModel;
use crate::mip::{solve_lexmin, SolveMode};
use crate::model::{coefficient_gcd, Assignment, BiObjectiveModel};
use crate::problems::{ParetoFront, SolveOutput};

/// Internal spacing of objective values; the model is already gcd-scaled.
const EPS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Optimize `f1` first, then constrain `f2`.
    Obj1First,
    Obj2First,
}

/// Per-objective gcd of the objective coefficients: the smallest possible
/// gap between two distinct objective values.
pub fn compute_epsilon(first: &[f64], second: &[f64]) -> Result<Granularity> {
    Granularity::new(coefficient_gcd(first)?, coefficient_gcd(second)?)
}

/// The box spanned by two nondominated points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    /// Top-left corner.
    pub top: ObjectivePoint,
    /// Bottom-right corner.
    pub bottom: ObjectivePoint,
}

impl Rectangle {
    pub fn new(top: ObjectivePoint, bottom: ObjectivePoint) -> Result<Self> {
        if !(top.z1 < bottom.z1 && top.z2 > bottom.z2) {
            return Err(Error::InvalidInput(format!("degenerate rectangle {top:?} {bottom:?}")));
        }
        Ok(Self { top, bottom })
    }
}

/// Lexicographic integer solves under objective upper bounds, recording
/// every integer solution met along the way.
struct Lexicographic<'a> {
    model: &'a BiObjectiveModel,
    lp: LinearModel,
    lower: Vec<f64>,
    upper: Vec<f64>,
    archive: NondominatedArchive<Assignment>,
    stats: SearchStats,
    start: Instant,
    limit: Option<Duration>,
}

impl<'a> Lexicographic<'a> {
    fn new(model: &'a BiObjectiveModel, limit: Option<Duration>) -> Self {
        Self {
            model,
            lp: model.lp.clone(),
            lower: model.lp.lower_bounds(),
            upper: model.lp.upper_bounds(),
            archive: NondominatedArchive::new(),
            stats: SearchStats::default(),
            start: Instant::now(),
            limit,
        }
    }

    fn lexmin(&mut self, first: Objective, bounds: [f64; 2]) -> Result<Option<ObjectivePoint>> {
        if self.limit.is_some_and(|t| self.start.elapsed() > t) {
            return Err(Error::TimeLimitExceeded);
        }
        self.lp.rows[self.model.bound_rows[0]].rhs = bounds[0];
        self.lp.rows[self.model.bound_rows[1]].rhs = bounds[1];
        let second = match first {
            Objective::First => Objective::Second,
            Objective::Second => Objective::First,
        };
        let model = self.model;
        let mut found: Vec<(ObjectivePoint, Assignment)> = Vec::new();
        let r = {
            let mut sink = |x: &[f64]| found.push((model.image(x), x.iter().map(|v| v.round() as i64).collect()));
            solve_lexmin(
                &self.lp,
                model.objective(first),
                model.objective(second),
                &self.lower,
                &self.upper,
                SolveMode::Mip,
                &mut sink,
            )?
        };
        self.stats.lp_count += r.lp_count;
        self.stats.iterations += 1;
        for (z, x) in found {
            self.archive.insert(z, x);
        }
        if !r.is_optimal() {
            return Ok(None);
        }
        let z = model.image(&r.x);
        self.archive.insert(z, r.x.iter().map(|v| v.round() as i64).collect());
        Ok(Some(z))
    }

    fn finish(mut self, outcome: Result<()>) -> Result<SolveOutput> {
        let complete = match outcome {
            Ok(()) => true,
            Err(Error::TimeLimitExceeded) => false,
            Err(e) => return Err(e),
        };
        self.stats.cpu_seconds = self.start.elapsed().as_secs_f64();
        Ok(SolveOutput {
            front: ParetoFront::from_archive(self.model, self.archive),
            stats: self.stats,
            complete,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriterionConfig {
    pub time_limit: Option<Duration>,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self {
            time_limit: Some(DEFAULT_TIME_LIMIT),
        }
    }
}

/// ε-constraint method: repeatedly optimize one objective lexicographically
/// while forcing the other to improve by ε on the last point found. Solves
/// `|front| + 1` integer programs.
pub fn run_epsilon_constraint(
    model: &BiObjectiveModel,
    direction: Direction,
    config: &CriterionConfig,
) -> Result<SolveOutput> {
    let mut lx = Lexicographic::new(model, config.time_limit);
    let (first, k) = match direction {
        Direction::Obj1First => (Objective::First, 1),
        Direction::Obj2First => (Objective::Second, 0),
    };
    let outcome = (|| {
        let mut bounds = [f64::INFINITY; 2];
        while let Some(z) = lx.lexmin(first, bounds)? {
            bounds[k] = [z.z1, z.z2][k] - EPS;
        }
        Ok(())
    })();
    lx.finish(outcome)
}

/// ε-constraint method working from both ends of the front, one solve per
/// direction in turn. Each side tightens its own bound; both bounds apply to
/// every solve, so the search stops as soon as the remaining box is empty.
pub fn run_epsilon_bidirectional(model: &BiObjectiveModel, config: &CriterionConfig) -> Result<SolveOutput> {
    let mut lx = Lexicographic::new(model, config.time_limit);
    let outcome = (|| {
        let mut bounds = [f64::INFINITY; 2];
        let mut turn = Objective::First;
        while let Some(z) = lx.lexmin(turn, bounds)? {
            turn = match turn {
                Objective::First => {
                    bounds[1] = z.z2 - EPS;
                    Objective::Second
                }
                Objective::Second => {
                    bounds[0] = z.z1 - EPS;
                    Objective::First
                }
            };
        }
        Ok(())
    })();
    lx.finish(outcome)
}

/// Balanced box method. Each rectangle is halved at the middle of its `f2`
/// range; the lower half is searched with `f1` first, the upper half, capped
/// just left of the point found below, with `f2` first.
pub fn run_balanced_box(model: &BiObjectiveModel, config: &CriterionConfig) -> Result<SolveOutput> {
    let mut lx = Lexicographic::new(model, config.time_limit);
    let outcome = (|| {
        let unbounded = [f64::INFINITY; 2];
        let Some(top) = lx.lexmin(Objective::First, unbounded)? else {
            return Ok(());
        };
        let bottom = lx.lexmin(Objective::Second, unbounded)?.unwrap_or(top);
        let mut queue = VecDeque::new();
        if top.z1 < bottom.z1 {
            queue.push_back(Rectangle::new(top, bottom)?);
        }
        while let Some(r) = queue.pop_front() {
            lx.stats.node_count += 1;
            let mid = (r.top.z2 + r.bottom.z2) / 2.0;
            let low = lx.lexmin(Objective::First, [r.bottom.z1, mid])?.unwrap_or(r.bottom);
            if low.z1 < r.bottom.z1 {
                queue.push_back(Rectangle::new(low, r.bottom)?);
            }
            if let Some(high) = lx.lexmin(Objective::Second, [low.z1 - EPS, r.top.z2])? {
                if r.top.z1 < high.z1 {
                    queue.push_back(Rectangle::new(r.top, high)?);
                }
            }
        }
        Ok(())
    })();
    lx.finish(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::uboflp::UboflpInstance;

    #[test]
    fn epsilon_examples() {
        assert_eq!(compute_epsilon(&[4., 3.], &[0.]).unwrap(), Granularity::new(1, 1).unwrap());
        assert_eq!(compute_epsilon(&[6., 9., 12.], &[0., 0.]).unwrap().g1, 3);
        assert_eq!(compute_epsilon(&[0., 0.], &[2.]).unwrap(), Granularity::new(1, 2).unwrap());
        assert!(compute_epsilon(&[0.5], &[1.]).is_err());
    }

    #[test]
    fn tiny_epsilon_constraint_steps() {
        let model = UboflpInstance::tiny().build().unwrap();
        let out = run_epsilon_constraint(&model, Direction::Obj1First, &CriterionConfig::default()).unwrap();
        assert_eq!(out.front.points(), vec![(3, 6), (4, 7), (7, 11)]);
        assert_eq!(out.stats.iterations, 4);
        let back = run_epsilon_constraint(&model, Direction::Obj2First, &CriterionConfig::default()).unwrap();
        assert_eq!(back.front.points(), out.front.points());
        assert_eq!(back.stats.iterations, 4);
    }

    #[test]
    fn tiny_balanced_box_and_bidirectional() {
        let model = UboflpInstance::tiny().build().unwrap();
        let cfg = CriterionConfig::default();
        assert_eq!(run_balanced_box(&model, &cfg).unwrap().front.points(), vec![(3, 6), (4, 7), (7, 11)]);
        let bi = run_epsilon_bidirectional(&model, &cfg).unwrap();
        assert_eq!(bi.front.points(), vec![(3, 6), (4, 7), (7, 11)]);
        assert_eq!(bi.stats.iterations, 4);
    }

    #[test]
    fn rectangle_invariant() {
        assert!(Rectangle::new((0., 2.).into(), (1., 1.).into()).is_ok());
        assert!(Rectangle::new((1., 2.).into(), (1., 1.).into()).is_err());
    }
}
