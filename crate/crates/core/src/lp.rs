//! Dense bounded-variable primal simplex.
//!
//! Rows are turned into equalities with one slack per row whose bounds encode
//! the row sense. Phase one drives artificial variables to zero; phase two
//! optimizes the requested cost vector. Dantzig pricing switches to Bland's
//! rule after a run of degenerate pivots.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-6;
const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub coefs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    /// Rows with an infinite right-hand side are inactive.
    pub fn is_active(&self) -> bool {
        self.rhs.is_finite()
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        dot(&self.coefs, x)
    }

    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        if !self.is_active() {
            return true;
        }
        let a = self.activity(x);
        match self.sense {
            Sense::Le => a <= self.rhs + tol,
            Sense::Ge => a >= self.rhs - tol,
            Sense::Eq => (a - self.rhs).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Variable {
    pub lower: f64,
    pub upper: f64,
    pub integer: bool,
}

impl Variable {
    pub fn binary() -> Self {
        Self {
            lower: 0.0,
            upper: 1.0,
            integer: true,
        }
    }

    pub fn continuous(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            integer: false,
        }
    }
}

/// Dense integer linear program with two objective rows.
#[derive(Debug, Clone, Default)]
pub struct LinearModel {
    pub vars: Vec<Variable>,
    pub rows: Vec<Row>,
    pub objectives: [Vec<f64>; 2],
}

impl LinearModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn add_var(&mut self, var: Variable, obj1: f64, obj2: f64) -> usize {
        self.vars.push(var);
        self.objectives[0].push(obj1);
        self.objectives[1].push(obj2);
        for row in &mut self.rows {
            row.coefs.push(0.0);
        }
        self.vars.len() - 1
    }

    /// Add a row from sparse `(var, coef)` terms; returns the row index.
    pub fn add_row(&mut self, terms: &[(usize, f64)], sense: Sense, rhs: f64) -> usize {
        let mut coefs = vec![0.0; self.vars.len()];
        for &(j, a) in terms {
            coefs[j] += a;
        }
        self.rows.push(Row { coefs, sense, rhs });
        self.rows.len() - 1
    }

    pub fn lower_bounds(&self) -> Vec<f64> {
        self.vars.iter().map(|v| v.lower).collect()
    }

    pub fn upper_bounds(&self) -> Vec<f64> {
        self.vars.iter().map(|v| v.upper).collect()
    }

    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        self.vars
            .iter()
            .zip(x)
            .all(|(v, &xi)| xi >= v.lower - tol && xi <= v.upper + tol)
            && self.rows.iter().all(|r| r.is_satisfied(x, tol))
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub value: f64,
    /// One dual per model row (zero for inactive rows), in the convention
    /// `reduced_j = cost_j − Σ_i duals_i · a_ij`.
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    pub pivots: usize,
}

impl LpSolution {
    fn infeasible(n: usize, m: usize, pivots: usize) -> Self {
        Self {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            value: f64::INFINITY,
            duals: vec![0.0; m],
            reduced_costs: vec![0.0; n],
            pivots,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

pub fn solve_lp(model: &LinearModel, cost: &[f64]) -> Result<LpSolution> {
    solve_lp_with_bounds(model, cost, &model.lower_bounds(), &model.upper_bounds())
}

/// Solve with variable bounds overriding the ones stored in the model.
pub fn solve_lp_with_bounds(
    model: &LinearModel,
    cost: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> Result<LpSolution> {
    let n = model.num_vars();
    let m_all = model.rows.len();
    if lower.iter().zip(upper).any(|(l, u)| l > &(u + 1e-9)) {
        return Ok(LpSolution::infeasible(n, m_all, 0));
    }
    let active: Vec<usize> = (0..m_all).filter(|&i| model.rows[i].is_active()).collect();
    let mut tab = Tableau::build(model, &active, lower, upper)?;

    let ncols = tab.ncols;
    let mut phase1 = vec![0.0; ncols];
    for &a in &tab.artificials {
        phase1[a] = 1.0;
    }
    if !tab.artificials.is_empty() {
        tab.price(&phase1);
        tab.run()?;
        let infeas: f64 = tab.artificials.iter().map(|&a| tab.val[a]).sum();
        if infeas > FEAS_TOL {
            return Ok(LpSolution::infeasible(n, m_all, tab.pivots));
        }
        for &a in &tab.artificials.clone() {
            tab.up[a] = 0.0;
            if tab.row_of[a] == NONE {
                tab.val[a] = 0.0;
                tab.at_upper[a] = false;
            }
        }
    }

    let mut phase2 = vec![0.0; ncols];
    phase2[..n].copy_from_slice(cost);
    tab.price(&phase2);
    tab.run()?;

    let x: Vec<f64> = tab.val[..n].to_vec();
    let value = dot(cost, &x);
    let mut duals = vec![0.0; m_all];
    for (k, &i) in active.iter().enumerate() {
        duals[i] = -tab.d[n + k];
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        value,
        duals,
        reduced_costs: tab.d[..n].to_vec(),
        pivots: tab.pivots,
    })
}

struct Tableau {
    m: usize,
    ncols: usize,
    t: Vec<f64>,
    lo: Vec<f64>,
    up: Vec<f64>,
    val: Vec<f64>,
    at_upper: Vec<bool>,
    basis: Vec<usize>,
    row_of: Vec<usize>,
    d: Vec<f64>,
    artificials: Vec<usize>,
    pivots: usize,
    pivot_limit: usize,
    degenerate_limit: usize,
}

impl Tableau {
    fn build(model: &LinearModel, active: &[usize], lower: &[f64], upper: &[f64]) -> Result<Self> {
        let n = model.num_vars();
        let m = active.len();

        let mut val = vec![0.0; n + m];
        let mut at_upper = vec![false; n + m];
        for j in 0..n {
            if lower[j].is_finite() {
                val[j] = lower[j];
            } else if upper[j].is_finite() {
                val[j] = upper[j];
                at_upper[j] = true;
            } else {
                return Err(Error::InvalidInput(format!("variable {j} is free")));
            }
        }
        let mut lo: Vec<f64> = lower.to_vec();
        let mut up: Vec<f64> = upper.to_vec();

        // slack bounds encode the row sense: a·x + s = rhs
        let mut residual = Vec::with_capacity(m);
        for &i in active {
            let row = &model.rows[i];
            let (sl, su) = match row.sense {
                Sense::Le => (0.0, f64::INFINITY),
                Sense::Ge => (f64::NEG_INFINITY, 0.0),
                Sense::Eq => (0.0, 0.0),
            };
            lo.push(sl);
            up.push(su);
            residual.push(row.rhs - dot(&row.coefs, &val[..n]));
        }

        let mut artificial_rows = Vec::new();
        for k in 0..m {
            let r = residual[k];
            if r < lo[n + k] - 1e-12 || r > up[n + k] + 1e-12 {
                artificial_rows.push(k);
            }
        }
        let ncols = n + m + artificial_rows.len();
        lo.resize(ncols, 0.0);
        up.resize(ncols, f64::INFINITY);
        val.resize(ncols, 0.0);
        at_upper.resize(ncols, false);

        let mut t = vec![0.0; m * ncols];
        let mut basis = vec![NONE; m];
        let mut row_of = vec![NONE; ncols];
        let mut art_of_row = vec![NONE; m];
        let mut artificials = Vec::with_capacity(artificial_rows.len());
        for (k, &row) in artificial_rows.iter().enumerate() {
            art_of_row[row] = n + m + k;
            artificials.push(n + m + k);
        }

        for (k, &i) in active.iter().enumerate() {
            let coefs = &model.rows[i].coefs;
            let base = k * ncols;
            if art_of_row[k] == NONE {
                t[base..base + n].copy_from_slice(coefs);
                t[base + n + k] = 1.0;
                basis[k] = n + k;
                row_of[n + k] = k;
                val[n + k] = residual[k];
            } else {
                let a = art_of_row[k];
                let sigma = residual[k].signum();
                for j in 0..n {
                    t[base + j] = coefs[j] / sigma;
                }
                t[base + n + k] = 1.0 / sigma;
                t[base + a] = 1.0;
                basis[k] = a;
                row_of[a] = k;
                val[a] = residual[k].abs();
                // slack sits nonbasic at its finite bound (zero)
                val[n + k] = 0.0;
                at_upper[n + k] = lo[n + k] == f64::NEG_INFINITY;
            }
        }

        let size = n + m;
        Ok(Self {
            m,
            ncols,
            t,
            lo,
            up,
            val,
            at_upper,
            basis,
            row_of,
            d: vec![0.0; ncols],
            artificials,
            pivots: 0,
            pivot_limit: 50 * size.max(1),
            degenerate_limit: 3 * size.max(1),
        })
    }

    fn price(&mut self, cost: &[f64]) {
        self.d.copy_from_slice(cost);
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            let row = &self.t[i * self.ncols..(i + 1) * self.ncols];
            for (dj, &tij) in self.d.iter_mut().zip(row) {
                *dj -= cb * tij;
            }
        }
        for i in 0..self.m {
            self.d[self.basis[i]] = 0.0;
        }
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best = None;
        let mut best_score = 0.0;
        for j in 0..self.ncols {
            if self.row_of[j] != NONE || self.up[j] - self.lo[j] <= 0.0 {
                continue;
            }
            let dj = self.d[j];
            let improving = if self.at_upper[j] {
                dj > COST_TOL
            } else {
                dj < -COST_TOL
            };
            if !improving {
                continue;
            }
            if bland {
                return Some(j);
            }
            if dj.abs() > best_score {
                best_score = dj.abs();
                best = Some(j);
            }
        }
        best
    }

    fn run(&mut self) -> Result<()> {
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            let Some(j) = self.entering(bland) else {
                return Ok(());
            };
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };

            let mut step = self.up[j] - self.lo[j];
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let alpha = self.t[i * self.ncols + j] * dir;
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let b = self.basis[i];
                let lim = if alpha > 0.0 {
                    (self.val[b] - self.lo[b]) / alpha
                } else {
                    (self.up[b] - self.val[b]) / (-alpha)
                };
                let lim = lim.max(0.0);
                let take = if lim < step - 1e-12 {
                    true
                } else if lim <= step + 1e-12 {
                    match leave {
                        Some((r, a)) => {
                            if bland {
                                b < self.basis[r]
                            } else {
                                alpha.abs() > a.abs()
                            }
                        }
                        None => false,
                    }
                } else {
                    false
                };
                if take {
                    step = lim;
                    leave = Some((i, alpha));
                }
            }
            if step.is_infinite() {
                return Err(Error::InvalidInput("linear program is unbounded".into()));
            }

            self.val[j] += dir * step;
            if step != 0.0 {
                for i in 0..self.m {
                    let tij = self.t[i * self.ncols + j];
                    if tij != 0.0 {
                        self.val[self.basis[i]] -= dir * step * tij;
                    }
                }
            }

            match leave {
                None => {
                    self.at_upper[j] = !self.at_upper[j];
                    self.val[j] = if self.at_upper[j] { self.up[j] } else { self.lo[j] };
                }
                Some((r, alpha)) => {
                    let b = self.basis[r];
                    if alpha > 0.0 {
                        self.val[b] = self.lo[b];
                        self.at_upper[b] = false;
                    } else {
                        self.val[b] = self.up[b];
                        self.at_upper[b] = true;
                    }
                    self.pivot(r, j);
                }
            }

            if step < 1e-11 {
                degenerate += 1;
                if degenerate > self.degenerate_limit {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivots += 1;
            if self.pivots > self.pivot_limit {
                return Err(Error::IterationLimit(self.pivots));
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let nc = self.ncols;
        let piv = self.t[r * nc + j];
        {
            let row = &mut self.t[r * nc..(r + 1) * nc];
            for v in row.iter_mut() {
                *v /= piv;
            }
            row[j] = 1.0;
        }
        let pivot_row: Vec<f64> = self.t[r * nc..(r + 1) * nc].to_vec();
        let nz: Vec<usize> = (0..nc).filter(|&k| pivot_row[k] != 0.0).collect();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * nc + j];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.t[i * nc..(i + 1) * nc];
            for &k in &nz {
                row[k] -= f * pivot_row[k];
            }
            row[j] = 0.0;
        }
        let dj = self.d[j];
        if dj != 0.0 {
            for &k in &nz {
                self.d[k] -= dj * pivot_row[k];
            }
            self.d[j] = 0.0;
        }
        let old = self.basis[r];
        self.row_of[old] = NONE;
        self.basis[r] = j;
        self.row_of[j] = r;
    }
}
