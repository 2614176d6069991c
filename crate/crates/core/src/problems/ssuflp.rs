//! Bi-objective single-source uncapacitated facility location: minimize
//! opening cost and assignment cost.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::text::{join, LineReader};
use super::{ones, subsets, FrontEntry, ParetoFront};
use crate::error::{Error, Result};
use crate::geometry::{NondominatedArchive, ObjectivePoint};
use crate::lp::{LinearModel, Sense, Variable};
use crate::model::{Assignment, BiObjectiveModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsuflpInstance {
    pub opening_cost: Vec<i64>,
    /// `assign_cost[i][j]`: cost of serving location `j` from facility `i`.
    pub assign_cost: Vec<Vec<i64>>,
}

impl SsuflpInstance {
    pub fn num_facilities(&self) -> usize {
        self.opening_cost.len()
    }

    pub fn num_locations(&self) -> usize {
        self.assign_cost.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.assign_cost.len() != self.num_facilities() {
            return Err(Error::InvalidInput("one cost row per facility required".into()));
        }
        let n = self.num_locations();
        if self.assign_cost.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("assignment cost matrix must be complete".into()));
        }
        if self.opening_cost.iter().chain(self.assign_cost.iter().flatten()).any(|&c| c < 0) {
            return Err(Error::InvalidInput("costs must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize, j: usize) -> usize {
        self.num_facilities() + i * self.num_locations() + j
    }

    pub fn build(&self) -> Result<BiObjectiveModel> {
        self.validate()?;
        let (nv, nn) = (self.num_facilities(), self.num_locations());
        let mut lp = LinearModel::new();
        for i in 0..nv {
            lp.add_var(Variable::binary(), self.opening_cost[i] as f64, 0.0);
        }
        for i in 0..nv {
            for j in 0..nn {
                lp.add_var(Variable::binary(), 0.0, self.assign_cost[i][j] as f64);
            }
        }
        for j in 0..nn {
            let terms: Vec<(usize, f64)> = (0..nv).map(|i| (self.x(i, j), 1.0)).collect();
            lp.add_row(&terms, Sense::Eq, 1.0);
        }
        for i in 0..nv {
            for j in 0..nn {
                lp.add_row(&[(self.x(i, j), 1.0), (i, -1.0)], Sense::Le, 0.0);
            }
        }
        BiObjectiveModel::new(lp, [false, false])
    }

    pub fn evaluate(&self, x: &Assignment) -> (i64, i64) {
        let (nv, nn) = (self.num_facilities(), self.num_locations());
        let open = (0..nv).map(|i| self.opening_cost[i] * x[i]).sum();
        let assign = (0..nv)
            .flat_map(|i| (0..nn).map(move |j| (i, j)))
            .map(|(i, j)| self.assign_cost[i][j] * x[self.x(i, j)])
            .sum();
        (open, assign)
    }

    pub fn describe(&self, x: &Assignment) -> String {
        format!("open {}", ones(&x[..self.num_facilities()]))
    }

    /// Exact front over open-facility subsets, each location served by its
    /// cheapest open facility.
    pub fn brute_force(&self) -> Result<ParetoFront> {
        self.validate()?;
        let (nv, nn) = (self.num_facilities(), self.num_locations());
        let mut archive = NondominatedArchive::new();
        for mask in subsets(nv)? {
            let open: Vec<usize> = (0..nv).filter(|i| mask >> i & 1 == 1).collect();
            let mut x = vec![0i64; nv + nv * nn];
            for &i in &open {
                x[i] = 1;
            }
            for j in 0..nn {
                let i = *open.iter().min_by_key(|&&i| self.assign_cost[i][j]).expect("nonempty subset");
                x[self.x(i, j)] = 1;
            }
            let (a, b) = self.evaluate(&x);
            archive.insert(ObjectivePoint::new(a as f64, b as f64), x);
        }
        Ok(ParetoFront::from_entries(
            archive
                .into_entries()
                .into_iter()
                .map(|(z, solution)| FrontEntry {
                    f1: z.z1 as i64,
                    f2: z.z2 as i64,
                    solution,
                })
                .collect(),
        ))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = LineReader::new(text);
        let head = r.exact::<usize>(2, "header |V| |N|")?;
        let (nv, nn) = (head[0], head[1]);
        let opening_cost = r.exact::<i64>(nv, "opening costs")?;
        let mut assign_cost = Vec::with_capacity(nv);
        for _ in 0..nv {
            assign_cost.push(r.exact::<i64>(nn, "assignment costs")?);
        }
        r.finish()?;
        let inst = Self {
            opening_cost,
            assign_cost,
        };
        inst.validate().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n{}\n", self.num_facilities(), self.num_locations(), join(&self.opening_cost));
        for row in &self.assign_cost {
            s += &join(row);
            s.push('\n');
        }
        s
    }

    /// Facilities and locations uniform on a 100 x 100 square; assignment
    /// cost is the rounded-down Euclidean distance, opening costs in 40..=120.
    pub fn generate(facilities: usize, locations: usize, seed: u64) -> Result<Self> {
        if facilities == 0 || locations == 0 {
            return Err(Error::InvalidInput("need at least one facility and location".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = |rng: &mut ChaCha8Rng| (rng.gen_range(0.0..100.0f64), rng.gen_range(0.0..100.0f64));
        let fac: Vec<(f64, f64)> = (0..facilities).map(|_| point(&mut rng)).collect();
        let loc: Vec<(f64, f64)> = (0..locations).map(|_| point(&mut rng)).collect();
        let opening_cost = (0..facilities).map(|_| rng.gen_range(40..=120)).collect();
        let assign_cost = fac
            .iter()
            .map(|f| {
                loc.iter()
                    .map(|l| ((f.0 - l.0).powi(2) + (f.1 - l.1).powi(2)).sqrt().floor() as i64)
                    .collect()
            })
            .collect();
        Ok(Self {
            opening_cost,
            assign_cost,
        })
    }
}
