//! Bi-objective set covering: two cost vectors over binary columns, every row
//! covered at least once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::text::{join, parse_index_list, LineReader};
use super::{brute_force_model, ones, ParetoFront};
use crate::error::{Error, Result};
use crate::lp::{LinearModel, Sense, Variable};
use crate::model::{Assignment, BiObjectiveModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoveringInstance {
    pub cost1: Vec<i64>,
    pub cost2: Vec<i64>,
    /// Columns covering each row.
    pub rows: Vec<Vec<usize>>,
}

impl SetCoveringInstance {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.cost1.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_columns();
        if self.cost2.len() != n {
            return Err(Error::InvalidInput("cost vectors differ in length".into()));
        }
        if self.rows.iter().flatten().any(|&j| j >= n) {
            return Err(Error::InvalidInput("column index out of range".into()));
        }
        if self.rows.iter().any(Vec::is_empty) {
            return Err(Error::InvalidInput("every row needs a covering column".into()));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<BiObjectiveModel> {
        self.validate()?;
        let mut lp = LinearModel::new();
        for j in 0..self.num_columns() {
            lp.add_var(Variable::binary(), self.cost1[j] as f64, self.cost2[j] as f64);
        }
        for row in &self.rows {
            let terms: Vec<(usize, f64)> = row.iter().map(|&j| (j, 1.0)).collect();
            lp.add_row(&terms, Sense::Ge, 1.0);
        }
        BiObjectiveModel::new(lp, [false, false])
    }

    pub fn evaluate(&self, x: &Assignment) -> (i64, i64) {
        let a = self.cost1.iter().zip(x).map(|(c, v)| c * v).sum();
        let b = self.cost2.iter().zip(x).map(|(c, v)| c * v).sum();
        (a, b)
    }

    pub fn describe(&self, x: &Assignment) -> String {
        format!("columns {}", ones(x))
    }

    pub fn brute_force(&self) -> Result<ParetoFront> {
        brute_force_model(&self.build()?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = LineReader::new(text);
        let head = r.exact::<usize>(2, "header m n")?;
        let (m, n) = (head[0], head[1]);
        let cost1 = r.exact::<i64>(n, "first cost vector")?;
        let cost2 = r.exact::<i64>(n, "second cost vector")?;
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            rows.push(parse_index_list(&mut r, n, "column")?);
        }
        r.finish()?;
        let inst = Self { cost1, cost2, rows };
        inst.validate().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n{}\n{}\n", self.num_rows(), self.num_columns(), join(&self.cost1), join(&self.cost2));
        for row in &self.rows {
            s += &join(row);
            s.push('\n');
        }
        s
    }

    /// Each column covers each row with probability `density`; rows left
    /// uncovered get one random column. Costs uniform in 1..=100.
    pub fn generate(rows: usize, columns: usize, density: f64, seed: u64) -> Result<Self> {
        if rows == 0 || columns == 0 || !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidInput("need rows, columns and a density in [0, 1]".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cost1 = (0..columns).map(|_| rng.gen_range(1..=100)).collect();
        let cost2 = (0..columns).map(|_| rng.gen_range(1..=100)).collect();
        let rows = (0..rows)
            .map(|_| {
                let mut cover: Vec<usize> = (0..columns).filter(|_| rng.gen_bool(density)).collect();
                if cover.is_empty() {
                    cover.push(rng.gen_range(0..columns));
                }
                cover
            })
            .collect();
        Ok(Self { cost1, cost2, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_column_front() {
        let inst = SetCoveringInstance {
            cost1: vec![1, 5],
            cost2: vec![5, 1],
            rows: vec![vec![0, 1]],
        };
        assert_eq!(inst.brute_force().unwrap().points(), vec![(1, 5), (5, 1)]);
    }

    #[test]
    fn cheap_universal_column() {
        let inst = SetCoveringInstance {
            cost1: vec![1, 1, 2],
            cost2: vec![1, 1, 3],
            rows: vec![vec![0, 2], vec![1, 2]],
        };
        assert_eq!(inst.brute_force().unwrap().points(), vec![(2, 2)]);
    }

    #[test]
    fn generated_rows_are_covered() {
        let inst = SetCoveringInstance::generate(5, 25, 0.2, 7).unwrap();
        assert!(inst.rows.iter().all(|r| !r.is_empty()));
        assert_eq!(SetCoveringInstance::parse(&inst.to_text()).unwrap(), inst);
    }
}
