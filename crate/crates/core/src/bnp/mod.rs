//! Branch-and-price for the bi-objective team orienteering problem with time
//! windows: minimize travel cost, maximize collected score.

pub mod instance;
pub mod master;
pub mod oracle;
pub mod pricing;

use crate::bound::{NodeProblem, Objective, Support};
use crate::engine::{run_biobab, BranchingDecision, EngineConfig};
use crate::error::{Error, Result};
use crate::geometry::ObjectivePoint;
use crate::mip::INT_TOL;
use crate::problems::{FrontEntry, ParetoFront, SolveOutput};

pub use instance::{BitoptwInstance, Site};
pub use master::{Column, CoverState, Master, MasterSolution, RouteSet};
pub use pricing::{MasterDuals, PricedRoute, Restrictions};

fn pin(v: f64) -> f64 {
    v + 1e-9 * v.abs().max(1.0)
}

/// Pick the undecided control point whose average visit count is fractional
/// and closest to 0.5 (lowest index on ties). `avg[i]` is for point `i`;
/// index 0 is ignored.
pub fn select_control_point(avg: &[f64], decided: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in 1..avg.len() {
        let a = avg[i];
        if decided[i] || a <= INT_TOL || a >= 1.0 - INT_TOL {
            continue;
        }
        let d = (a - 0.5).abs();
        if best.is_none_or(|(_, bd)| d < bd - 1e-12) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// Node solver backed by the column-generation master.
pub struct BnpProblem<'a> {
    master: Master<'a>,
    point_decided: Vec<bool>,
    arc_decided: Vec<Vec<bool>>,
}

impl<'a> BnpProblem<'a> {
    pub fn new(inst: &'a BitoptwInstance) -> Result<Self> {
        let v = inst.sites.len();
        Ok(Self {
            master: Master::new(inst)?,
            point_decided: vec![false; v],
            arc_decided: vec![vec![false; v]; v],
        })
    }

    pub fn master(&self) -> &Master<'a> {
        &self.master
    }

    fn inst(&self) -> &'a BitoptwInstance {
        self.master.instance()
    }

    fn entity_len(&self) -> usize {
        let v = self.inst().sites.len();
        v + v * v
    }

    /// Visit counts indexed by vertex, then arc flows `(i, j)` at
    /// `v + i * v + j`.
    fn support(&self, sol: MasterSolution) -> Support<RouteSet> {
        let inst = self.inst();
        let v = inst.sites.len();
        let mut entities = vec![0.0; self.entity_len()];
        for &(k, x) in &sol.x {
            let r = &self.master.pool()[k].route;
            for &i in &r[1..r.len() - 1] {
                entities[i] += x;
            }
            for w in r.windows(2) {
                entities[v + w[0] * v + w[1]] += x;
            }
        }
        let solution = sol.is_integral().then(|| self.master.routes_of(&sol.x));
        let image = if solution.is_some() {
            ObjectivePoint::new(sol.image.z1.round(), sol.image.z2.round())
        } else {
            sol.image
        };
        Support {
            image,
            entities,
            solution,
        }
    }
}

impl NodeProblem for BnpProblem<'_> {
    type Decision = BranchingDecision;
    type Solution = RouteSet;

    fn prepare(&mut self, nadir: ObjectivePoint, decisions: &[BranchingDecision]) -> Result<()> {
        let inst = self.inst();
        let (v, end) = (inst.sites.len(), inst.end());
        self.master.reset_node();
        self.master.bounds = [nadir.z1, nadir.z2];
        self.point_decided = vec![false; v];
        self.arc_decided = vec![vec![false; v]; v];
        for d in decisions {
            match *d {
                BranchingDecision::ControlPoint(i, forced) => {
                    self.point_decided[i] = true;
                    if forced {
                        self.master.cover[i] = CoverState::Forced;
                    } else {
                        self.master.cover[i] = CoverState::Forbidden;
                        self.master.restrict.banned_point[i] = true;
                    }
                }
                BranchingDecision::Arc(i, j, forced) => {
                    self.arc_decided[i][j] = true;
                    if forced {
                        for k in 0..v {
                            if i != 0 && k != j {
                                self.master.restrict.banned_arc[i][k] = true;
                            }
                            if j != end && k != i {
                                self.master.restrict.banned_arc[k][j] = true;
                            }
                        }
                    } else {
                        self.master.restrict.banned_arc[i][j] = true;
                    }
                }
                BranchingDecision::VarFix { .. } => {
                    return Err(Error::InvalidInput(format!("unsupported decision {d:?}")));
                }
            }
        }
        self.master.refresh_active();
        Ok(())
    }

    fn lexmin(&mut self, first: Objective) -> Result<Option<Support<RouteSet>>> {
        let (k, w_first, w_second) = match first {
            Objective::First => (0, (1.0, 0.0), (0.0, 1.0)),
            Objective::Second => (1, (0.0, 1.0), (1.0, 0.0)),
        };
        let Some(s1) = self.master.solve(w_first.0, w_first.1)? else {
            return Ok(None);
        };
        let v = if k == 0 { s1.image.z1 } else { s1.image.z2 };
        let saved = self.master.bounds[k];
        self.master.bounds[k] = saved.min(pin(v));
        let s2 = self.master.solve(w_second.0, w_second.1);
        self.master.bounds[k] = saved;
        let best = s2?.unwrap_or(s1);
        Ok(Some(self.support(best)))
    }

    fn weighted(&mut self, w1: f64, w2: f64, _cutoff: Option<f64>) -> Result<Option<Support<RouteSet>>> {
        Ok(self.master.solve(w1, w2)?.map(|s| self.support(s)))
    }

    fn take_harvest(&mut self) -> Vec<(ObjectivePoint, RouteSet)> {
        self.master
            .take_harvest()
            .into_iter()
            .map(|(z, r)| (ObjectivePoint::new(z.z1.round(), z.z2.round()), r))
            .collect()
    }

    fn branch(&self, supports: &[&Support<RouteSet>]) -> Result<Vec<BranchingDecision>> {
        if supports.is_empty() {
            return Err(Error::NoFractionalEntity);
        }
        let inst = self.inst();
        let (v, end) = (inst.sites.len(), inst.end());
        let mut avg = vec![0.0; self.entity_len()];
        for s in supports {
            for (a, e) in avg.iter_mut().zip(&s.entities) {
                *a += e;
            }
        }
        for a in &mut avg {
            *a /= supports.len() as f64;
        }
        let mut visits = avg[..v].to_vec();
        visits[end] = 0.0;
        if let Some(i) = select_control_point(&visits, &self.point_decided) {
            return Ok(vec![
                BranchingDecision::ControlPoint(i, true),
                BranchingDecision::ControlPoint(i, false),
            ]);
        }
        let mut best: Option<((usize, usize), f64)> = None;
        for i in 0..v {
            for j in 0..v {
                if !inst.is_arc(i, j) || (i == 0 && j == end) || self.arc_decided[i][j] {
                    continue;
                }
                let a = avg[v + i * v + j];
                if a <= INT_TOL || a >= 1.0 - INT_TOL {
                    continue;
                }
                let d = (a - 0.5).abs();
                if best.is_none_or(|(_, bd)| d < bd - 1e-12) {
                    best = Some(((i, j), d));
                }
            }
        }
        match best {
            Some(((i, j), _)) => Ok(vec![
                BranchingDecision::Arc(i, j, true),
                BranchingDecision::Arc(i, j, false),
            ]),
            None => Err(Error::NoFractionalEntity),
        }
    }

    fn branch_any(&self) -> Result<Vec<BranchingDecision>> {
        let inst = self.inst();
        let (v, end) = (inst.sites.len(), inst.end());
        if let Some(i) = (1..end).find(|&i| !self.point_decided[i]) {
            return Ok(vec![
                BranchingDecision::ControlPoint(i, true),
                BranchingDecision::ControlPoint(i, false),
            ]);
        }
        let arc = (0..v)
            .flat_map(|i| (0..v).map(move |j| (i, j)))
            .find(|&(i, j)| inst.is_arc(i, j) && !(i == 0 && j == end) && !self.arc_decided[i][j]);
        Ok(arc
            .map(|(i, j)| vec![BranchingDecision::Arc(i, j, true), BranchingDecision::Arc(i, j, false)])
            .unwrap_or_default())
    }

    fn lp_count(&self) -> u64 {
        self.master.lp_count()
    }
}

/// Solve a team orienteering instance with column-generation bounding.
pub fn run_biobab_bitoptw(inst: &BitoptwInstance, config: &EngineConfig) -> Result<SolveOutput<RouteSet>> {
    let mut problem = BnpProblem::new(inst)?;
    let out = run_biobab(&mut problem, config)?;
    let master = problem.master();
    let front = ParetoFront::from_entries(
        out.archive
            .into_entries()
            .into_iter()
            .map(|(z, solution)| {
                let (f1, f2) = master.to_original(z);
                FrontEntry { f1, f2, solution }
            })
            .collect(),
    );
    Ok(SolveOutput {
        front,
        stats: out.stats,
        complete: out.complete,
    })
}

/// Route set as text, e.g. `3-1 | 2`.
pub fn describe_routes(routes: &RouteSet) -> String {
    routes
        .iter()
        .map(|r| r.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("-"))
        .collect::<Vec<_>>()
        .join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_point_selection() {
        assert_eq!(select_control_point(&[0.0, 0.5, 0.9], &[false; 3]), Some(1));
        assert_eq!(select_control_point(&[0.0, 0.4, 0.6], &[false; 3]), Some(1));
        assert_eq!(select_control_point(&[0.0, 1.0, 0.0], &[false; 3]), None);
        assert_eq!(select_control_point(&[0.0, 0.5, 0.9], &[false, true, false]), Some(2));
    }
}
