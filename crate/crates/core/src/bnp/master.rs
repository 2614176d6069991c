//! Column-generation master over routes.

use std::collections::HashMap;

use super::instance::BitoptwInstance;
use super::pricing::{price, reduced_cost_matrix, MasterDuals, Restrictions};
use crate::error::Result;
use crate::geometry::ObjectivePoint;
use crate::lp::{solve_lp, LinearModel, LpSolution, Sense, Variable};
use crate::mip::INT_TOL;
use crate::model::coefficient_gcd;

/// Upper bound on routes added to the master per pricing round.
const MAX_NEW_COLUMNS: usize = 64;

/// Nonempty routes as control-point sequences, sorted.
pub type RouteSet = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    /// Full vertex sequence, depots included.
    pub route: Vec<usize>,
    pub cost: i64,
    pub score: i64,
    pub visits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverState {
    Free,
    Forced,
    Forbidden,
}

/// Converged master solution for one scalarization.
#[derive(Debug, Clone)]
pub struct MasterSolution {
    /// `(pool index, value)` for the columns with a positive value.
    pub x: Vec<(usize, f64)>,
    pub value: f64,
    pub image: ObjectivePoint,
    pub duals: MasterDuals,
}

impl MasterSolution {
    pub fn is_integral(&self) -> bool {
        self.x.iter().all(|(_, v)| (v - v.round()).abs() <= INT_TOL)
    }
}

pub struct Master<'a> {
    inst: &'a BitoptwInstance,
    /// Per-objective gcd: arc costs and scores are divided by these.
    pub scale: [i64; 2],
    cost: Vec<Vec<f64>>,
    score: Vec<f64>,
    pool: Vec<Column>,
    index: HashMap<Vec<usize>, usize>,
    active: Vec<bool>,
    pub bounds: [f64; 2],
    pub cover: Vec<CoverState>,
    pub restrict: Restrictions,
    lp_count: u64,
    harvest: Vec<(ObjectivePoint, RouteSet)>,
}

impl<'a> Master<'a> {
    pub fn new(inst: &'a BitoptwInstance) -> Result<Self> {
        let arc_costs: Vec<f64> = (0..inst.sites.len())
            .flat_map(|i| (0..inst.sites.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| inst.is_arc(i, j))
            .map(|(i, j)| inst.travel[i][j] as f64)
            .collect();
        let scores: Vec<f64> = inst.sites.iter().map(|s| s.score as f64).collect();
        let scale = [coefficient_gcd(&arc_costs)?, coefficient_gcd(&scores)?];
        let cost = inst
            .travel
            .iter()
            .map(|r| r.iter().map(|&c| c as f64 / scale[0] as f64).collect())
            .collect();
        let score = scores.iter().map(|s| s / scale[1] as f64).collect();
        let mut m = Self {
            inst,
            scale,
            cost,
            score,
            pool: Vec::new(),
            index: HashMap::new(),
            active: Vec::new(),
            bounds: [f64::INFINITY; 2],
            cover: vec![CoverState::Free; inst.n() + 1],
            restrict: Restrictions::none(inst),
            lp_count: 0,
            harvest: Vec::new(),
        };
        m.add_column(vec![0, inst.end()]);
        Ok(m)
    }

    pub fn instance(&self) -> &'a BitoptwInstance {
        self.inst
    }

    pub fn pool(&self) -> &[Column] {
        &self.pool
    }

    pub fn lp_count(&self) -> u64 {
        self.lp_count
    }

    pub fn take_harvest(&mut self) -> Vec<(ObjectivePoint, RouteSet)> {
        std::mem::take(&mut self.harvest)
    }

    /// Internal (scaled, min-min) image of a route.
    pub fn column_image(&self, c: &Column) -> ObjectivePoint {
        ObjectivePoint::new(
            c.cost as f64 / self.scale[0] as f64,
            -(c.score as f64) / self.scale[1] as f64,
        )
    }

    pub fn to_original(&self, z: ObjectivePoint) -> (i64, i64) {
        (
            (z.z1 * self.scale[0] as f64).round() as i64,
            (-z.z2 * self.scale[1] as f64).round() as i64,
        )
    }

    /// Add a route unless already pooled; returns its index and whether it
    /// is new.
    pub fn add_column(&mut self, route: Vec<usize>) -> (usize, bool) {
        if let Some(&k) = self.index.get(&route) {
            return (k, false);
        }
        let visits = route[1..route.len() - 1].iter().fold(0u64, |m, &i| m | 1 << i);
        let col = Column {
            cost: self.inst.route_cost(&route),
            score: self.inst.route_score(&route),
            visits,
            route: route.clone(),
        };
        let ok = self.column_allowed(&col);
        self.pool.push(col);
        self.active.push(ok);
        self.index.insert(route, self.pool.len() - 1);
        (self.pool.len() - 1, true)
    }

    fn column_allowed(&self, c: &Column) -> bool {
        self.restrict.allows_route(self.inst, &c.route)
    }

    /// Recompute which pooled columns respect the current restrictions.
    pub fn refresh_active(&mut self) {
        self.active = self.pool.iter().map(|c| self.column_allowed(c)).collect();
    }

    pub fn reset_node(&mut self) {
        self.bounds = [f64::INFINITY; 2];
        self.cover = vec![CoverState::Free; self.inst.n() + 1];
        self.restrict = Restrictions::none(self.inst);
    }

    fn active_columns(&self) -> Vec<usize> {
        (0..self.pool.len()).filter(|&k| self.active[k]).collect()
    }

    /// Restricted master LP over `cols`, plus the dummy column when
    /// `with_dummy`. Rows: covering, fleet, two objective bounds.
    fn build_lp(&self, cols: &[usize], with_dummy: bool) -> LinearModel {
        let n = self.inst.n();
        let mut lp = LinearModel::new();
        for &k in cols {
            let z = self.column_image(&self.pool[k]);
            lp.add_var(Variable::continuous(0.0, f64::INFINITY), z.z1, z.z2);
        }
        if with_dummy {
            lp.add_var(Variable::continuous(0.0, f64::INFINITY), 0.0, 0.0);
        }
        let dummy = cols.len();
        for i in 1..=n {
            let mut terms: Vec<(usize, f64)> = cols
                .iter()
                .enumerate()
                .filter(|(_, &k)| self.pool[k].visits >> i & 1 == 1)
                .map(|(v, _)| (v, 1.0))
                .collect();
            let (sense, rhs) = match self.cover[i] {
                CoverState::Free => (Sense::Le, 1.0),
                CoverState::Forced => (Sense::Eq, 1.0),
                CoverState::Forbidden => (Sense::Le, 0.0),
            };
            if with_dummy && self.cover[i] == CoverState::Forced {
                terms.push((dummy, 1.0));
            }
            lp.add_row(&terms, sense, rhs);
        }
        let mut fleet: Vec<(usize, f64)> = (0..cols.len()).map(|v| (v, 1.0)).collect();
        if with_dummy {
            fleet.push((dummy, self.inst.fleet as f64));
        }
        lp.add_row(&fleet, Sense::Eq, self.inst.fleet as f64);
        for obj in 0..2 {
            let mut terms: Vec<(usize, f64)> = (0..cols.len()).map(|v| (v, lp.objectives[obj][v])).collect();
            let rhs = self.bounds[obj];
            if with_dummy && rhs.is_finite() {
                terms.push((dummy, rhs));
            }
            lp.add_row(&terms, Sense::Le, rhs);
        }
        lp
    }

    fn duals_of(&self, sol: &LpSolution) -> MasterDuals {
        let n = self.inst.n();
        let mut pi = vec![0.0; n + 1];
        pi[1..=n].copy_from_slice(&sol.duals[..n]);
        MasterDuals {
            pi,
            alpha: sol.duals[n],
            lambda1: sol.duals[n + 1],
            lambda2: -sol.duals[n + 2],
        }
    }

    /// Add priced routes; returns whether any was new.
    fn add_priced(&mut self, w: (f64, f64), duals: &MasterDuals) -> bool {
        let rc = reduced_cost_matrix(&self.cost, &self.score, w, duals);
        let mut added = false;
        for r in price(self.inst, &rc, &self.restrict).into_iter().take(MAX_NEW_COLUMNS) {
            let (k, new) = self.add_column(r.route);
            added |= new || !self.active[k];
        }
        added
    }

    fn record_if_integral(&mut self, cols: &[usize], sol: &LpSolution) {
        let x: Vec<(usize, f64)> = cols.iter().zip(&sol.x).filter(|(_, &v)| v > INT_TOL).map(|(&k, &v)| (k, v)).collect();
        if x.iter().all(|(_, v)| (v - v.round()).abs() <= INT_TOL) {
            let z = self.image_of(&x);
            let routes = self.routes_of(&x);
            self.harvest.push((z, routes));
        }
    }

    pub fn image_of(&self, x: &[(usize, f64)]) -> ObjectivePoint {
        let mut z = ObjectivePoint::new(0.0, 0.0);
        for &(k, v) in x {
            let c = self.column_image(&self.pool[k]);
            z.z1 += v * c.z1;
            z.z2 += v * c.z2;
        }
        z
    }

    /// Route set of an integral solution.
    pub fn routes_of(&self, x: &[(usize, f64)]) -> RouteSet {
        let mut routes: RouteSet = x
            .iter()
            .filter(|(k, _)| self.pool[*k].visits != 0)
            .map(|&(k, _)| {
                let r = &self.pool[k].route;
                r[1..r.len() - 1].to_vec()
            })
            .collect();
        routes.sort();
        routes
    }

    /// Column generation for `min w1 f1 + w2 f2` at the current node. `None`
    /// when the node's master is infeasible.
    pub fn solve(&mut self, w1: f64, w2: f64) -> Result<Option<MasterSolution>> {
        let cols = self.active_columns();
        let first = solve_lp(&self.build_lp(&cols, false), &self.cost_vector(&cols, w1, w2))?;
        self.lp_count += 1;
        if !first.is_optimal() {
            // phase one: minimize the dummy column, pricing with zero weights
            loop {
                let cols = self.active_columns();
                let lp = self.build_lp(&cols, true);
                let mut cost = vec![0.0; cols.len() + 1];
                cost[cols.len()] = 1.0;
                let sol = solve_lp(&lp, &cost)?;
                self.lp_count += 1;
                let dummy = sol.x[cols.len()];
                if dummy <= INT_TOL {
                    break;
                }
                let duals = self.duals_of(&sol);
                if !self.add_priced((0.0, 0.0), &duals) {
                    return Ok(None);
                }
            }
        }
        loop {
            let cols = self.active_columns();
            let lp = self.build_lp(&cols, false);
            let sol = solve_lp(&lp, &self.cost_vector(&cols, w1, w2))?;
            self.lp_count += 1;
            if !sol.is_optimal() {
                return Ok(None);
            }
            self.record_if_integral(&cols, &sol);
            let duals = self.duals_of(&sol);
            if !self.add_priced((w1, w2), &duals) {
                let x: Vec<(usize, f64)> =
                    cols.iter().zip(&sol.x).filter(|(_, &v)| v > 1e-9).map(|(&k, &v)| (k, v)).collect();
                return Ok(Some(MasterSolution {
                    image: self.image_of(&x),
                    value: sol.value,
                    x,
                    duals,
                }));
            }
        }
    }

    fn cost_vector(&self, cols: &[usize], w1: f64, w2: f64) -> Vec<f64> {
        cols.iter()
            .map(|&k| {
                let z = self.column_image(&self.pool[k]);
                w1 * z.z1 + w2 * z.z2
            })
            .collect()
    }
}
