//! Small random bi-objective binary programs, used as an exhaustive-oracle
//! test bed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{brute_force_model, ParetoFront};
use crate::error::{Error, Result};
use crate::lp::{LinearModel, Sense, Variable};
use crate::model::BiObjectiveModel;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryProgram {
    pub objectives: [Vec<i64>; 2],
    pub maximize: [bool; 2],
    /// `(coefficients, sense, rhs)` per row.
    pub rows: Vec<(Vec<i64>, Sense, i64)>,
}

impl BinaryProgram {
    pub fn num_vars(&self) -> usize {
        self.objectives[0].len()
    }

    pub fn build(&self) -> Result<BiObjectiveModel> {
        let n = self.num_vars();
        if self.objectives[1].len() != n || self.rows.iter().any(|r| r.0.len() != n) {
            return Err(Error::InvalidInput("inconsistent dimensions".into()));
        }
        let mut lp = LinearModel::new();
        for j in 0..n {
            lp.add_var(Variable::binary(), self.objectives[0][j] as f64, self.objectives[1][j] as f64);
        }
        for (coefs, sense, rhs) in &self.rows {
            let terms: Vec<(usize, f64)> = coefs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(j, &a)| (j, a as f64))
                .collect();
            lp.add_row(&terms, *sense, *rhs as f64);
        }
        BiObjectiveModel::new(lp, self.maximize)
    }

    pub fn brute_force(&self) -> Result<ParetoFront> {
        brute_force_model(&self.build()?)
    }

    /// `n` binaries, `m` rows, coefficients in `-max_coef..=max_coef`. Each row
    /// is satisfied by a hidden random point, so most instances are feasible;
    /// the rows sometimes use `>=`. Objective senses are drawn at random.
    pub fn generate(n: usize, m: usize, max_coef: i64, seed: u64) -> Result<Self> {
        if n == 0 || max_coef <= 0 {
            return Err(Error::InvalidInput("need variables and a positive coefficient range".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hidden: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let coefs = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-max_coef..=max_coef)).collect() };
        let objectives = [coefs(&mut rng), coefs(&mut rng)];
        let maximize = [rng.gen_bool(0.3), rng.gen_bool(0.3)];
        let rows = (0..m)
            .map(|_| {
                let a = coefs(&mut rng);
                let act: i64 = a.iter().zip(&hidden).map(|(x, y)| x * y).sum();
                let slack = rng.gen_range(0..=max_coef);
                if rng.gen_bool(0.7) {
                    (a, Sense::Le, act + slack)
                } else {
                    (a, Sense::Ge, act - slack)
                }
            })
            .collect();
        Ok(Self {
            objectives,
            maximize,
            rows,
        })
    }
}
