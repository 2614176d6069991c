//! Method dispatch, benchmark records and performance profiles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bnp::{describe_routes, oracle::route_enumeration_front, run_biobab_bitoptw};
use crate::criterion::{run_balanced_box, run_epsilon_bidirectional, run_epsilon_constraint, CriterionConfig, Direction};
use crate::engine::{EngineConfig, SearchStats};
use crate::error::{Error, Result};
use crate::mip::SolveMode;
use crate::model::run_biobab_matrix;
use crate::problems::{Family, Instance, ParetoFront, SolveOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BiobabLp,
    BiobabMip,
    BiobabCg,
    Eps12,
    Eps21,
    EpsBidir,
    BalancedBox,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::BiobabLp,
        Method::BiobabMip,
        Method::BiobabCg,
        Method::Eps12,
        Method::Eps21,
        Method::EpsBidir,
        Method::BalancedBox,
        Method::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::BiobabLp => "biobab-lp",
            Method::BiobabMip => "biobab-mip",
            Method::BiobabCg => "biobab-cg",
            Method::Eps12 => "eps-12",
            Method::Eps21 => "eps-21",
            Method::EpsBidir => "eps-bidir",
            Method::BalancedBox => "balanced-box",
            Method::BruteForce => "brute-force",
        }
    }

    /// Can this method solve instances of `family`.
    pub fn supports(self, family: Family) -> bool {
        match self {
            Method::BruteForce => true,
            Method::BiobabCg => family == Family::Bitoptw,
            _ => family != Family::Bitoptw,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown method {s:?}")))
    }
}

/// Solve an instance with a method. Solutions are rendered as short text.
pub fn solve_instance(inst: &Instance, method: Method, config: &EngineConfig) -> Result<SolveOutput<String>> {
    if !method.supports(inst.family()) {
        return Err(Error::Unsupported(format!(
            "method {method} does not apply to .{} instances",
            inst.family().extension()
        )));
    }
    let criterion = CriterionConfig {
        time_limit: config.time_limit,
    };
    let exhaustive = |front: ParetoFront<String>| SolveOutput {
        front,
        stats: SearchStats::default(),
        complete: true,
    };
    if let Instance::Bitoptw(b) = inst {
        let out = match method {
            Method::BiobabCg => run_biobab_bitoptw(b, config)?,
            _ => {
                let front = route_enumeration_front(b)?;
                SolveOutput {
                    front,
                    stats: SearchStats::default(),
                    complete: true,
                }
            }
        };
        return Ok(SolveOutput {
            front: out.front.map(|r| describe_routes(&r)),
            stats: out.stats,
            complete: out.complete,
        });
    }
    let model = inst.model().expect("matrix family")?;
    let out = match method {
        Method::BiobabLp => run_biobab_matrix(&model, SolveMode::Lp, config)?,
        Method::BiobabMip => run_biobab_matrix(&model, SolveMode::Mip, config)?,
        Method::Eps12 => run_epsilon_constraint(&model, Direction::Obj1First, &criterion)?,
        Method::Eps21 => run_epsilon_constraint(&model, Direction::Obj2First, &criterion)?,
        Method::EpsBidir => run_epsilon_bidirectional(&model, &criterion)?,
        Method::BalancedBox => run_balanced_box(&model, &criterion)?,
        Method::BruteForce => {
            let front = match inst {
                Instance::Uboflp(i) => i.brute_force()?,
                Instance::Ssuflp(i) => i.brute_force()?,
                Instance::SetCovering(i) => i.brute_force()?,
                Instance::Bitoptw(_) => unreachable!("handled above"),
            };
            return Ok(exhaustive(front.map(|x| inst.describe(&x))));
        }
        Method::BiobabCg => unreachable!("checked by supports"),
    };
    Ok(SolveOutput {
        front: out.front.map(|x| inst.describe(&x)),
        stats: out.stats,
        complete: out.complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    Solved,
    TimeLimit,
}

/// One (instance, method) run. `cpu_seconds` is wall-clock time and is the
/// only field that varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub method: String,
    pub status: RunStatus,
    pub cpu_seconds: f64,
    pub lp_count: u64,
    pub node_count: u64,
    pub osb_branches_root: u64,
    pub osb_branches_other: u64,
    pub max_osb_depth: u32,
    pub iterations: u64,
    pub front_size: usize,
}

impl RunRecord {
    pub fn new(instance: &str, method: Method, out: &SolveOutput<String>) -> Self {
        let s = &out.stats;
        Self {
            instance: instance.to_string(),
            method: method.name().to_string(),
            status: if out.complete {
                RunStatus::Solved
            } else {
                RunStatus::TimeLimit
            },
            cpu_seconds: s.cpu_seconds,
            lp_count: s.lp_count,
            node_count: s.node_count,
            osb_branches_root: s.osb_branches_root,
            osb_branches_other: s.osb_branches_other,
            max_osb_depth: s.max_osb_depth,
            iterations: s.iterations,
            front_size: out.front.len(),
        }
    }
}

/// Run every method on every instance, one record per pair. Fronts of the
/// runs that completed must agree point for point.
pub fn benchmark(instances: &[(String, Instance)], methods: &[Method], config: &EngineConfig) -> Result<Vec<RunRecord>> {
    let mut records = Vec::new();
    for (name, inst) in instances {
        let mut reference: Option<(Method, Vec<(i64, i64)>)> = None;
        for &method in methods {
            let out = solve_instance(inst, method, config)?;
            records.push(RunRecord::new(name, method, &out));
            if !out.complete {
                continue;
            }
            let points = out.front.points();
            match &reference {
                None => reference = Some((method, points)),
                Some((m0, p0)) if *p0 != points => {
                    return Err(Error::FrontMismatch {
                        instance: name.clone(),
                        detail: front_difference(*m0, p0, method, &points),
                    });
                }
                Some(_) => {}
            }
        }
    }
    Ok(records)
}

fn front_difference(a: Method, pa: &[(i64, i64)], b: Method, pb: &[(i64, i64)]) -> String {
    let only = |x: &[(i64, i64)], y: &[(i64, i64)]| -> Vec<(i64, i64)> { x.iter().filter(|p| !y.contains(p)).copied().collect() };
    format!("only in {a}: {:?}; only in {b}: {:?}", only(pa, pb), only(pb, pa))
}

/// Times below this are treated as equal to it, so that instant runs give
/// finite ratios.
const MIN_TIME: f64 = 1e-6;

/// Performance profiles: for each method, the step curve of the fraction of
/// instances solved within each ratio to the best time on that instance.
/// Runs that hit the time limit count as unsolved; instances that no method
/// solved are dropped. Each curve is a list of `(ratio, fraction)` corners.
pub fn performance_profile(records: &[RunRecord]) -> BTreeMap<String, Vec<(f64, f64)>> {
    let mut best: BTreeMap<&str, f64> = BTreeMap::new();
    for r in records.iter().filter(|r| r.status == RunStatus::Solved) {
        let t = r.cpu_seconds.max(MIN_TIME);
        let e = best.entry(r.instance.as_str()).or_insert(t);
        *e = e.min(t);
    }
    let retained = best.len();
    let mut ratios: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in records {
        let list = ratios.entry(r.method.clone()).or_default();
        if r.status == RunStatus::Solved {
            if let Some(&b) = best.get(r.instance.as_str()) {
                list.push(r.cpu_seconds.max(MIN_TIME) / b);
            }
        }
    }
    ratios
        .into_iter()
        .map(|(method, mut rs)| {
            rs.sort_by(f64::total_cmp);
            let mut curve: Vec<(f64, f64)> = Vec::new();
            for (k, &r) in rs.iter().enumerate() {
                let frac = (k + 1) as f64 / retained as f64;
                match curve.last_mut() {
                    Some(last) if last.0 == r => last.1 = frac,
                    _ => curve.push((r, frac)),
                }
            }
            (method, curve)
        })
        .collect()
}

/// Profile curves as CSV with header `method,ratio,fraction`.
pub fn profile_csv(curves: &BTreeMap<String, Vec<(f64, f64)>>) -> String {
    let mut s = String::from("method,ratio,fraction\n");
    for (m, curve) in curves {
        for (r, f) in curve {
            s += &format!("{m},{r},{f}\n");
        }
    }
    s
}

/// Front as CSV with header `f1,f2,solution`, sorted by `f1`.
pub fn front_csv(front: &ParetoFront<String>) -> String {
    let mut s = String::from("f1,f2,solution\n");
    for e in &front.entries {
        s += &format!("{},{},{}\n", e.f1, e.f2, e.solution);
    }
    s
}

/// Run budget from an optional number of seconds.
pub fn time_limit(seconds: Option<f64>) -> Option<Duration> {
    seconds.map(Duration::from_secs_f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(instance: &str, method: &str, t: f64, solved: bool) -> RunRecord {
        RunRecord {
            instance: instance.into(),
            method: method.into(),
            status: if solved { RunStatus::Solved } else { RunStatus::TimeLimit },
            cpu_seconds: t,
            lp_count: 0,
            node_count: 0,
            osb_branches_root: 0,
            osb_branches_other: 0,
            max_osb_depth: 0,
            iterations: 0,
            front_size: 0,
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("simplex".parse::<Method>().is_err());
    }

    #[test]
    fn profile_examples() {
        let same = performance_profile(&[rec("i", "a", 3.0, true), rec("i", "b", 3.0, true)]);
        assert_eq!(same["a"], vec![(1.0, 1.0)]);
        assert_eq!(same["b"], vec![(1.0, 1.0)]);
        let two = performance_profile(&[rec("i", "a", 2.0, true), rec("i", "b", 4.0, true)]);
        assert_eq!(two["a"], vec![(1.0, 1.0)]);
        assert_eq!(two["b"], vec![(2.0, 1.0)]);
        let half = performance_profile(&[
            rec("i", "a", 1.0, true),
            rec("j", "a", 1.0, false),
            rec("i", "b", 1.0, true),
            rec("j", "b", 2.0, true),
        ]);
        assert_eq!(half["a"], vec![(1.0, 0.5)]);
        assert_eq!(half["b"], vec![(1.0, 1.0)]);
    }

    #[test]
    fn unsolved_everywhere_is_dropped() {
        let p = performance_profile(&[
            rec("i", "a", 1.0, true),
            rec("i", "b", 2.0, true),
            rec("j", "a", 9.0, false),
            rec("j", "b", 9.0, false),
        ]);
        assert_eq!(p["a"], vec![(1.0, 1.0)]);
        assert_eq!(p["b"], vec![(2.0, 1.0)]);
    }
}
