//! Exhaustive references for small instances: elementary path enumeration and
//! the exact front over route combinations.

use super::instance::BitoptwInstance;
use super::master::RouteSet;
use super::pricing::Restrictions;
use crate::error::{Error, Result};
use crate::geometry::{NondominatedArchive, ObjectivePoint};
use crate::lp::{solve_lp, LinearModel, Sense, Variable};
use crate::problems::{FrontEntry, ParetoFront};

/// Control points accepted by the enumeration oracles.
pub const ORACLE_LIMIT: usize = 10;

fn check_size(inst: &BitoptwInstance) -> Result<()> {
    if inst.n() > ORACLE_LIMIT {
        return Err(Error::SizeLimit(format!("{} control points", inst.n())));
    }
    Ok(())
}

/// Visit every elementary, time-feasible route from the start depot to the
/// end depot allowed by `restrict`.
pub fn for_each_route(inst: &BitoptwInstance, restrict: &Restrictions, mut f: impl FnMut(&[usize])) {
    fn walk(
        inst: &BitoptwInstance,
        restrict: &Restrictions,
        path: &mut Vec<usize>,
        time: i64,
        f: &mut dyn FnMut(&[usize]),
    ) {
        let v = *path.last().expect("path starts at the depot");
        for w in 1..=inst.end() {
            if !restrict.allows(inst, v, w) || path.contains(&w) {
                continue;
            }
            let Some(t) = inst.arrive(v, time, w) else {
                continue;
            };
            path.push(w);
            if w == inst.end() {
                f(path);
            } else {
                walk(inst, restrict, path, t, f);
            }
            path.pop();
        }
    }
    let mut path = vec![0];
    walk(inst, restrict, &mut path, inst.sites[0].open, &mut f);
}

/// Minimum of `Σ rc[i][j]` over all routes.
pub fn min_reduced_cost_exhaustive(
    inst: &BitoptwInstance,
    rc: &[Vec<f64>],
    restrict: &Restrictions,
) -> Result<Option<f64>> {
    check_size(inst)?;
    let mut best: Option<f64> = None;
    for_each_route(inst, restrict, |r| {
        let v: f64 = r.windows(2).map(|w| rc[w[0]][w[1]]).sum();
        best = Some(best.map_or(v, |b: f64| b.min(v)));
    });
    Ok(best)
}

/// Cheapest route for every visited set, `(mask, cost, route)`, empty set
/// included.
pub fn cheapest_routes(inst: &BitoptwInstance) -> Result<Vec<(u64, i64, Vec<usize>)>> {
    check_size(inst)?;
    let mut best: std::collections::BTreeMap<u64, (i64, Vec<usize>)> = Default::default();
    for_each_route(inst, &Restrictions::none(inst), |r| {
        let mask = r[1..r.len() - 1].iter().fold(0u64, |m, &i| m | 1 << i);
        let cost = inst.route_cost(r);
        let entry = best.entry(mask).or_insert((i64::MAX, Vec::new()));
        if cost < entry.0 || (cost == entry.0 && r < entry.1.as_slice()) {
            *entry = (cost, r.to_vec());
        }
    });
    Ok(best.into_iter().map(|(m, (c, r))| (m, c, r)).collect())
}

/// Exact front by combining up to `fleet` routes with disjoint visited sets;
/// idle vehicles drive the empty route.
pub fn route_enumeration_front(inst: &BitoptwInstance) -> Result<ParetoFront<RouteSet>> {
    let routes = cheapest_routes(inst)?;
    let empty_cost = inst.route_cost(&[0, inst.end()]);
    let nonempty: Vec<&(u64, i64, Vec<usize>)> = routes.iter().filter(|r| r.0 != 0).collect();
    let score_of = |mask: u64| -> i64 {
        inst.control_points().filter(|&i| mask >> i & 1 == 1).map(|i| inst.sites[i].score).sum()
    };
    let mut archive: NondominatedArchive<RouteSet> = NondominatedArchive::new();

    fn combine(
        start: usize,
        left: usize,
        used: u64,
        cost: i64,
        chosen: &mut Vec<usize>,
        ctx: &mut dyn FnMut(u64, i64, &[usize]),
        nonempty: &[&(u64, i64, Vec<usize>)],
    ) {
        ctx(used, cost, chosen);
        if left == 0 {
            return;
        }
        for k in start..nonempty.len() {
            let (mask, c, _) = nonempty[k];
            if used & mask != 0 {
                continue;
            }
            chosen.push(k);
            combine(k + 1, left - 1, used | mask, cost + c, chosen, ctx, nonempty);
            chosen.pop();
        }
    }

    let fleet = inst.fleet;
    let mut visit = |used: u64, cost: i64, chosen: &[usize]| {
        let total = cost + (fleet - chosen.len()) as i64 * empty_cost;
        let mut set: RouteSet = chosen
            .iter()
            .map(|&k| {
                let r = &nonempty[k].2;
                r[1..r.len() - 1].to_vec()
            })
            .collect();
        set.sort();
        archive.insert(ObjectivePoint::new(total as f64, -score_of(used) as f64), set);
    };
    combine(0, fleet, 0, 0, &mut Vec::new(), &mut visit, &nonempty);

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

/// Value of the linear relaxation over every cheapest route, for the
/// scalarization `w1 * cost - w2 * score` in original units.
pub fn full_route_lp(inst: &BitoptwInstance, w1: f64, w2: f64) -> Result<Option<f64>> {
    let routes = cheapest_routes(inst)?;
    let mut lp = LinearModel::new();
    for (_, cost, r) in &routes {
        let score = inst.route_score(r);
        lp.add_var(Variable::continuous(0.0, f64::INFINITY), *cost as f64, -score as f64);
    }
    for i in inst.control_points() {
        let terms: Vec<(usize, f64)> = routes
            .iter()
            .enumerate()
            .filter(|(_, r)| r.0 >> i & 1 == 1)
            .map(|(k, _)| (k, 1.0))
            .collect();
        lp.add_row(&terms, Sense::Le, 1.0);
    }
    let fleet: Vec<(usize, f64)> = (0..routes.len()).map(|k| (k, 1.0)).collect();
    lp.add_row(&fleet, Sense::Eq, inst.fleet as f64);
    let cost: Vec<f64> = (0..routes.len())
        .map(|k| w1 * lp.objectives[0][k] + w2 * lp.objectives[1][k])
        .collect();
    let sol = solve_lp(&lp, &cost)?;
    Ok(sol.is_optimal().then_some(sol.value))
}
