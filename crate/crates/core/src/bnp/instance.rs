//! Bi-objective team orienteering instances with time windows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problems::text::LineReader;

/// Vertex data. Vertex 0 is the start depot, vertex `n + 1` the end depot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site {
    pub x: i64,
    pub y: i64,
    pub service: i64,
    pub score: i64,
    pub open: i64,
    pub close: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitoptwInstance {
    pub sites: Vec<Site>,
    pub fleet: usize,
    /// Travel cost, equal to travel time: floor(100 * Euclidean distance).
    pub travel: Vec<Vec<i64>>,
}

/// Control point bitmasks are `u64`, so the instance size is capped.
pub const MAX_CONTROL_POINTS: usize = 62;

impl BitoptwInstance {
    pub fn new(sites: Vec<Site>, fleet: usize) -> Result<Self> {
        if sites.len() < 2 {
            return Err(Error::InvalidInput("start and end depot required".into()));
        }
        if sites.len() - 2 > MAX_CONTROL_POINTS {
            return Err(Error::InvalidInput(format!("at most {MAX_CONTROL_POINTS} control points")));
        }
        for (i, s) in sites.iter().enumerate() {
            if s.open > s.close || s.service < 0 || s.score < 0 {
                return Err(Error::InvalidInput(format!("site {i} has inconsistent data")));
            }
        }
        let travel = sites
            .iter()
            .map(|a| {
                sites
                    .iter()
                    .map(|b| {
                        let d = (((a.x - b.x).pow(2) + (a.y - b.y).pow(2)) as f64).sqrt();
                        (100.0 * d + 1e-9).floor() as i64
                    })
                    .collect()
            })
            .collect();
        let inst = Self { sites, fleet, travel };
        if inst.schedule(&[0, inst.end()]).is_none() {
            return Err(Error::InvalidInput("the empty route must be time feasible".into()));
        }
        Ok(inst)
    }

    /// Number of control points.
    pub fn n(&self) -> usize {
        self.sites.len() - 2
    }

    pub fn end(&self) -> usize {
        self.sites.len() - 1
    }

    pub fn control_points(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    /// Whether `i -> j` is an arc of the routing graph.
    pub fn is_arc(&self, i: usize, j: usize) -> bool {
        i != j && i != self.end() && j != 0
    }

    /// Service start time at `j` when leaving `i` whose service started at `t`,
    /// or `None` when `j`'s window is missed.
    pub fn arrive(&self, i: usize, t: i64, j: usize) -> Option<i64> {
        let b = (t + self.sites[i].service + self.travel[i][j]).max(self.sites[j].open);
        (b <= self.sites[j].close).then_some(b)
    }

    /// Service start at the last vertex of a route starting at the start
    /// depot, or `None` when infeasible.
    pub fn schedule(&self, route: &[usize]) -> Option<i64> {
        let mut t = self.sites[route[0]].open;
        for w in route.windows(2) {
            t = self.arrive(w[0], t, w[1])?;
        }
        Some(t)
    }

    pub fn route_cost(&self, route: &[usize]) -> i64 {
        route.windows(2).map(|w| self.travel[w[0]][w[1]]).sum()
    }

    pub fn route_score(&self, route: &[usize]) -> i64 {
        route.iter().map(|&i| self.sites[i].score).sum()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = LineReader::new(text);
        let head = r.exact::<usize>(2, "header n m")?;
        let (n, fleet) = (head[0], head[1]);
        let mut sites = Vec::with_capacity(n + 2);
        for k in 0..n + 2 {
            let line = r.current_line();
            let v = r.exact::<i64>(7, "site `id x y d S e l`")?;
            if v[0] != k as i64 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected site id {k}, found {}", v[0]),
                });
            }
            sites.push(Site {
                x: v[1],
                y: v[2],
                service: v[3],
                score: v[4],
                open: v[5],
                close: v[6],
            });
        }
        r.finish()?;
        Self::new(sites, fleet).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.fleet);
        for (k, v) in self.sites.iter().enumerate() {
            s += &format!("{k} {} {} {} {} {} {}\n", v.x, v.y, v.service, v.score, v.open, v.close);
        }
        s
    }

    /// Control points on the integer square `[0, 20]^2`, both depots at its
    /// centre with horizon `[0, 6000]`. Windows start in `0..=3000` and last
    /// `1000..=3000`; service times in `0..=200`; scores in `1..=10`.
    pub fn generate(n: usize, fleet: usize, seed: u64) -> Result<Self> {
        if n == 0 || fleet == 0 {
            return Err(Error::InvalidInput("need control points and vehicles".into()));
        }
        const HORIZON: i64 = 6000;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let depot = Site {
            x: 10,
            y: 10,
            service: 0,
            score: 0,
            open: 0,
            close: HORIZON,
        };
        let mut sites = vec![depot];
        for _ in 0..n {
            let open = rng.gen_range(0..=HORIZON / 2);
            let width = rng.gen_range(1000..=3000);
            sites.push(Site {
                x: rng.gen_range(0..=20),
                y: rng.gen_range(0..=20),
                service: rng.gen_range(0..=200),
                score: rng.gen_range(1..=10),
                open,
                close: (open + width).min(HORIZON),
            });
        }
        sites.push(depot);
        Self::new(sites, fleet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let inst = BitoptwInstance::generate(6, 2, 4).unwrap();
        assert_eq!(BitoptwInstance::parse(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn travel_rule() {
        let inst = BitoptwInstance::generate(3, 1, 1).unwrap();
        let (a, b) = (inst.sites[0], inst.sites[1]);
        let d = (((a.x - b.x).pow(2) + (a.y - b.y).pow(2)) as f64).sqrt();
        assert_eq!(inst.travel[0][1], (100.0 * d).floor() as i64);
    }

    #[test]
    fn parse_rejects_bad_id() {
        let text = "0 1\n0 0 0 0 0 0 10\n5 0 0 0 0 0 10\n";
        assert!(matches!(BitoptwInstance::parse(text), Err(Error::Parse { line: 3, .. })));
    }
}
