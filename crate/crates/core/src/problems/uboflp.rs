//! Bi-objective uncapacitated facility location with coverage: minimize
//! opening cost, maximize the weight of locations assigned to a facility that
//! covers them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::text::{join, parse_index_list, LineReader};
use super::{ones, subsets, FrontEntry, ParetoFront};
use crate::error::{Error, Result};
use crate::geometry::{NondominatedArchive, ObjectivePoint};
use crate::lp::{LinearModel, Sense, Variable};
use crate::model::{Assignment, BiObjectiveModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UboflpInstance {
    pub opening_cost: Vec<i64>,
    pub weight: Vec<i64>,
    /// Locations covered by each facility.
    pub coverage: Vec<Vec<usize>>,
}

impl UboflpInstance {
    pub fn num_facilities(&self) -> usize {
        self.opening_cost.len()
    }

    pub fn num_locations(&self) -> usize {
        self.weight.len()
    }

    /// Two facilities A, B and three locations; A covers {0, 1}, B covers
    /// {1, 2}. Its front is (3, 6), (4, 7), (7, 11).
    pub fn tiny() -> Self {
        Self {
            opening_cost: vec![4, 3],
            weight: vec![5, 2, 4],
            coverage: vec![vec![0, 1], vec![1, 2]],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coverage.len() != self.num_facilities() {
            return Err(Error::InvalidInput("one coverage list per facility required".into()));
        }
        if self.opening_cost.iter().chain(&self.weight).any(|&v| v < 0) {
            return Err(Error::InvalidInput("costs and weights must be nonnegative".into()));
        }
        if self.coverage.iter().flatten().any(|&j| j >= self.num_locations()) {
            return Err(Error::InvalidInput("coverage index out of range".into()));
        }
        Ok(())
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.coverage[i].contains(&j)
    }

    /// Variable index of `y_i`.
    pub fn y(&self, i: usize) -> usize {
        i
    }

    /// Variable index of `x_ij`.
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
                let credit = if self.covers(i, j) { self.weight[j] as f64 } else { 0.0 };
                lp.add_var(Variable::binary(), 0.0, credit);
            }
        }
        for j in 0..nn {
            let terms: Vec<(usize, f64)> = (0..nv).map(|i| (self.x(i, j), 1.0)).collect();
            lp.add_row(&terms, Sense::Eq, 1.0);
        }
        for i in 0..nv {
            for j in 0..nn {
                lp.add_row(&[(self.x(i, j), 1.0), (self.y(i), -1.0)], Sense::Le, 0.0);
            }
        }
        BiObjectiveModel::new(lp, [false, true])
    }

    /// Objective values of a model assignment in original units.
    pub fn evaluate(&self, x: &Assignment) -> (i64, i64) {
        let (nv, nn) = (self.num_facilities(), self.num_locations());
        let cost = (0..nv).map(|i| self.opening_cost[i] * x[self.y(i)]).sum();
        let cover = (0..nv)
            .flat_map(|i| (0..nn).map(move |j| (i, j)))
            .filter(|&(i, j)| self.covers(i, j))
            .map(|(i, j)| self.weight[j] * x[self.x(i, j)])
            .sum();
        (cost, cover)
    }

    pub fn describe(&self, x: &Assignment) -> String {
        format!("open {}", ones(&x[..self.num_facilities()]))
    }

    /// Exact front by enumerating open-facility subsets; each location goes
    /// to a covering open facility when there is one.
    pub fn brute_force(&self) -> Result<ParetoFront> {
        self.validate()?;
        let (nv, nn) = (self.num_facilities(), self.num_locations());
        let mut archive = NondominatedArchive::new();
        for mask in subsets(nv)? {
            let open: Vec<usize> = (0..nv).filter(|i| mask >> i & 1 == 1).collect();
            let mut x = vec![0i64; nv + nv * nn];
            for &i in &open {
                x[self.y(i)] = 1;
            }
            for j in 0..nn {
                let i = open.iter().copied().find(|&i| self.covers(i, j)).unwrap_or(open[0]);
                x[self.x(i, j)] = 1;
            }
            let (cost, cover) = self.evaluate(&x);
            archive.insert(ObjectivePoint::new(cost as f64, -cover as f64), x);
        }
        Ok(ParetoFront::from_entries(
            archive
                .into_entries()
                .into_iter()
                .map(|(z, solution)| FrontEntry {
                    f1: z.z1 as i64,
                    f2: -z.z2 as i64,
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
        let weight = r.exact::<i64>(nn, "location weights")?;
        let mut coverage = Vec::with_capacity(nv);
        for _ in 0..nv {
            coverage.push(parse_index_list(&mut r, nn, "location")?);
        }
        r.finish()?;
        let inst = Self {
            opening_cost,
            weight,
            coverage,
        };
        inst.validate().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.num_facilities(), self.num_locations());
        s += &format!("{}\n{}\n", join(&self.opening_cost), join(&self.weight));
        for c in &self.coverage {
            s += &join(c);
            s.push('\n');
        }
        s
    }

    /// Facilities and locations uniform on a 100 x 100 square; a facility
    /// covers the locations within `radius`. Opening costs in 20..=60,
    /// weights in 1..=20.
    pub fn generate(facilities: usize, locations: usize, radius: f64, seed: u64) -> Result<Self> {
        if facilities == 0 || locations == 0 || radius <= 0.0 {
            return Err(Error::InvalidInput("need facilities, locations and a positive radius".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = |rng: &mut ChaCha8Rng| (rng.gen_range(0.0..100.0f64), rng.gen_range(0.0..100.0f64));
        let fac: Vec<(f64, f64)> = (0..facilities).map(|_| point(&mut rng)).collect();
        let loc: Vec<(f64, f64)> = (0..locations).map(|_| point(&mut rng)).collect();
        let opening_cost = (0..facilities).map(|_| rng.gen_range(20..=60)).collect();
        let weight = (0..locations).map(|_| rng.gen_range(1..=20)).collect();
        let coverage = fac
            .iter()
            .map(|f| {
                (0..locations)
                    .filter(|&j| ((f.0 - loc[j].0).powi(2) + (f.1 - loc[j].1).powi(2)).sqrt() <= radius)
                    .collect()
            })
            .collect();
        Ok(Self {
            opening_cost,
            weight,
            coverage,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_model_shape() {
        let m = UboflpInstance::tiny().build().unwrap();
        assert_eq!(m.num_vars(), 8);
        assert_eq!(m.num_constraints(), 3 + 6);
    }

    #[test]
    fn tiny_brute_force() {
        let f = UboflpInstance::tiny().brute_force().unwrap();
        assert_eq!(f.points(), vec![(3, 6), (4, 7), (7, 11)]);
    }

    #[test]
    fn no_facility_is_infeasible() {
        let inst = UboflpInstance {
            opening_cost: vec![],
            weight: vec![3],
            coverage: vec![],
        };
        assert!(inst.brute_force().unwrap().is_empty());
    }

    #[test]
    fn text_round_trip() {
        let inst = UboflpInstance::generate(5, 15, 35.0, 1).unwrap();
        assert_eq!(UboflpInstance::parse(&inst.to_text()).unwrap(), inst);
        let tiny = UboflpInstance::tiny();
        assert_eq!(UboflpInstance::parse(&tiny.to_text()).unwrap(), tiny);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = UboflpInstance::generate(5, 15, 35.0, 1).unwrap().to_text();
        let b = UboflpInstance::generate(5, 15, 35.0, 1).unwrap().to_text();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_reports_line() {
        let err = UboflpInstance::parse("# c\n2 3\n4 3\n5 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }
}
