//! Bi-objective integer programs stored as an explicit matrix, and the
//! node-level scalar solver used to search them.

use crate::bound::{NodeProblem, Objective, Support};
use crate::engine::{run_biobab, BranchingDecision, EngineConfig};
use crate::error::{Error, Result};
use crate::geometry::ObjectivePoint;
use crate::problems::{ParetoFront, SolveOutput};
use crate::lp::{dot, LinearModel, Sense};
use crate::mip::{
    is_integral, round_integers, solve_lexmin, solve_lp_scalar, solve_mip, ScalarStatus, SolveMode, INT_TOL,
};

pub type Assignment = Vec<i64>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of the nonzero coefficients, 1 when all are zero. Rejects
/// non-integral coefficients.
pub fn coefficient_gcd(coefs: &[f64]) -> Result<i64> {
    let mut g = 0i64;
    for &c in coefs {
        if c != c.round() || !c.is_finite() {
            return Err(Error::InvalidInput(format!("objective coefficient {c} is not integral")));
        }
        g = gcd(g, c as i64);
    }
    Ok(if g == 0 { 1 } else { g })
}

/// An integer program with two objectives. Internally both objectives are
/// minimized and divided by the gcd of their coefficients, so feasible images
/// lie on the unit grid.
#[derive(Debug, Clone)]
pub struct BiObjectiveModel {
    /// Constraint rows plus the two objective-bound rows at `bound_rows`.
    pub lp: LinearModel,
    pub bound_rows: [usize; 2],
    pub scale: [i64; 2],
    pub maximize: [bool; 2],
}

impl BiObjectiveModel {
    /// `lp.objectives` hold the objectives in original units; `maximize`
    /// flags the ones to be maximized.
    pub fn new(mut lp: LinearModel, maximize: [bool; 2]) -> Result<Self> {
        if lp.vars.iter().any(|v| !v.integer || !v.lower.is_finite() || !v.upper.is_finite()) {
            return Err(Error::InvalidInput(
                "all variables must be integer with finite bounds".into(),
            ));
        }
        let mut scale = [1i64; 2];
        for k in 0..2 {
            scale[k] = coefficient_gcd(&lp.objectives[k])?;
            let factor = if maximize[k] { -1.0 } else { 1.0 } / scale[k] as f64;
            for c in &mut lp.objectives[k] {
                *c *= factor;
                if *c == 0.0 {
                    *c = 0.0;
                }
            }
        }
        let obj_terms = |k: usize, lp: &LinearModel| -> Vec<(usize, f64)> {
            lp.objectives[k].iter().copied().enumerate().filter(|(_, a)| *a != 0.0).collect()
        };
        let t1 = obj_terms(0, &lp);
        let t2 = obj_terms(1, &lp);
        let r1 = lp.add_row(&t1, Sense::Le, f64::INFINITY);
        let r2 = lp.add_row(&t2, Sense::Le, f64::INFINITY);
        Ok(Self {
            lp,
            bound_rows: [r1, r2],
            scale,
            maximize,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.lp.num_vars()
    }

    /// Constraint rows, excluding the objective-bound rows.
    pub fn num_constraints(&self) -> usize {
        self.lp.rows.len() - 2
    }

    pub fn objective(&self, k: Objective) -> &[f64] {
        match k {
            Objective::First => &self.lp.objectives[0],
            Objective::Second => &self.lp.objectives[1],
        }
    }

    /// Image in internal (scaled, min–min) units.
    pub fn image(&self, x: &[f64]) -> ObjectivePoint {
        ObjectivePoint::new(dot(&self.lp.objectives[0], x), dot(&self.lp.objectives[1], x))
    }

    pub fn to_original(&self, z: ObjectivePoint) -> (i64, i64) {
        let conv = |v: f64, k: usize| {
            let s = if self.maximize[k] { -1.0 } else { 1.0 };
            (v * s * self.scale[k] as f64).round() as i64
        };
        (conv(z.z1, 0), conv(z.z2, 1))
    }

    /// Feasibility of an assignment against the constraint rows.
    pub fn is_feasible(&self, x: &Assignment) -> bool {
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let n = self.num_constraints();
        self.lp.vars.iter().zip(&xf).all(|(v, &xi)| xi >= v.lower && xi <= v.upper)
            && self.lp.rows[..n].iter().all(|r| r.is_satisfied(&xf, 1e-9))
    }
}

/// Average each binary variable over the supporting solutions and return the
/// fractional-on-average one whose mean is closest to 1 (lowest index on ties).
pub fn select_branching_variable(means: &[f64], candidates: &[bool]) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &avg) in means.iter().enumerate() {
        if !candidates[j] || avg <= INT_TOL || avg >= 1.0 - INT_TOL {
            continue;
        }
        if best.is_none_or(|(_, b)| avg > b + 1e-12) {
            best = Some((j, avg));
        }
    }
    best.map(|(j, _)| j).ok_or(Error::NoFractionalEntity)
}

/// Node solver over an explicit matrix, bounding with the LP relaxation or
/// with the integer program itself.
pub struct MatrixProblem<'a> {
    model: &'a BiObjectiveModel,
    lp: LinearModel,
    lower: Vec<f64>,
    upper: Vec<f64>,
    mode: SolveMode,
    lp_count: u64,
    harvest: Vec<(ObjectivePoint, Assignment)>,
}

impl<'a> MatrixProblem<'a> {
    pub fn new(model: &'a BiObjectiveModel, mode: SolveMode) -> Self {
        Self {
            model,
            lp: model.lp.clone(),
            lower: model.lp.lower_bounds(),
            upper: model.lp.upper_bounds(),
            mode,
            lp_count: 0,
            harvest: Vec::new(),
        }
    }

    pub fn mode(&self) -> SolveMode {
        self.mode
    }

    fn to_assignment(x: &[f64]) -> Assignment {
        x.iter().map(|v| v.round() as i64).collect()
    }

    fn support(&self, x: Vec<f64>) -> Support<Assignment> {
        if is_integral(&self.lp, &x) {
            let xr = round_integers(&self.lp, &x);
            Support {
                image: self.model.image(&xr),
                solution: Some(Self::to_assignment(&xr)),
                entities: xr,
            }
        } else {
            Support {
                image: self.model.image(&x),
                entities: x,
                solution: None,
            }
        }
    }

    fn sink<'b>(model: &'b BiObjectiveModel, harvest: &'b mut Vec<(ObjectivePoint, Assignment)>) -> impl FnMut(&[f64]) + 'b {
        move |x: &[f64]| harvest.push((model.image(x), Self::to_assignment(x)))
    }
}

impl NodeProblem for MatrixProblem<'_> {
    type Decision = BranchingDecision;
    type Solution = Assignment;

    fn prepare(&mut self, nadir: ObjectivePoint, decisions: &[BranchingDecision]) -> Result<()> {
        self.lp.rows[self.model.bound_rows[0]].rhs = nadir.z1;
        self.lp.rows[self.model.bound_rows[1]].rhs = nadir.z2;
        self.lower = self.model.lp.lower_bounds();
        self.upper = self.model.lp.upper_bounds();
        for d in decisions {
            match *d {
                BranchingDecision::VarFix { var, value } => {
                    self.lower[var] = value as f64;
                    self.upper[var] = value as f64;
                }
                ref other => {
                    return Err(Error::InvalidInput(format!("unsupported decision {other:?}")));
                }
            }
        }
        Ok(())
    }

    fn lexmin(&mut self, first: Objective) -> Result<Option<Support<Assignment>>> {
        let (a, b) = match first {
            Objective::First => (Objective::First, Objective::Second),
            Objective::Second => (Objective::Second, Objective::First),
        };
        let model = self.model;
        let r = {
            let mut sink = Self::sink(model, &mut self.harvest);
            solve_lexmin(
                &self.lp,
                model.objective(a),
                model.objective(b),
                &self.lower,
                &self.upper,
                self.mode,
                &mut sink,
            )?
        };
        self.lp_count += r.lp_count;
        if !r.is_optimal() {
            return Ok(None);
        }
        Ok(Some(self.support(r.x)))
    }

    fn weighted(&mut self, w1: f64, w2: f64, cutoff: Option<f64>) -> Result<Option<Support<Assignment>>> {
        let cost: Vec<f64> = self.model.lp.objectives[0]
            .iter()
            .zip(&self.model.lp.objectives[1])
            .map(|(a, b)| w1 * a + w2 * b)
            .collect();
        let r = match self.mode {
            SolveMode::Lp => solve_lp_scalar(&self.lp, &cost, &self.lower, &self.upper)?,
            SolveMode::Mip => {
                let model = self.model;
                let mut sink = Self::sink(model, &mut self.harvest);
                solve_mip(&self.lp, &cost, &self.lower, &self.upper, cutoff, &mut sink)?
            }
        };
        self.lp_count += r.lp_count;
        match r.status {
            ScalarStatus::Optimal => Ok(Some(self.support(r.x))),
            ScalarStatus::Infeasible | ScalarStatus::CutoffExceeded => Ok(None),
        }
    }

    fn take_harvest(&mut self) -> Vec<(ObjectivePoint, Assignment)> {
        std::mem::take(&mut self.harvest)
    }

    fn branch(&self, supports: &[&Support<Assignment>]) -> Result<Vec<BranchingDecision>> {
        let n = self.model.num_vars();
        if supports.is_empty() {
            return Err(Error::NoFractionalEntity);
        }
        let mut means = vec![0.0; n];
        for s in supports {
            for (m, v) in means.iter_mut().zip(&s.entities) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= supports.len() as f64;
        }
        let candidates: Vec<bool> = (0..n).map(|j| self.lower[j] == 0.0 && self.upper[j] == 1.0).collect();
        let j = select_branching_variable(&means, &candidates)?;
        Ok(vec![
            BranchingDecision::VarFix { var: j, value: 1 },
            BranchingDecision::VarFix { var: j, value: 0 },
        ])
    }

    fn branch_any(&self) -> Result<Vec<BranchingDecision>> {
        Ok((0..self.model.num_vars())
            .find(|&j| self.lower[j] < self.upper[j])
            .map(|var| {
                let lo = self.lower[var] as i64;
                vec![
                    BranchingDecision::VarFix { var, value: lo + 1 },
                    BranchingDecision::VarFix { var, value: lo },
                ]
            })
            .unwrap_or_default())
    }

    fn lp_count(&self) -> u64 {
        self.lp_count
    }
}

/// Solve a matrix model with the tree search, bounding with the LP
/// relaxation or with the integer program.
pub fn run_biobab_matrix(model: &BiObjectiveModel, mode: SolveMode, config: &EngineConfig) -> Result<SolveOutput> {
    let mut problem = MatrixProblem::new(model, mode);
    let out = run_biobab(&mut problem, config)?;
    Ok(SolveOutput {
        front: ParetoFront::from_archive(model, out.archive),
        stats: out.stats,
        complete: out.complete,
    })
}
