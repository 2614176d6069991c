//! Route pricing: elementary shortest paths with time windows, by forward
//! labeling.

use std::collections::VecDeque;

use super::instance::BitoptwInstance;

/// Routes with reduced cost below this are returned by [`price`].
pub const PRICING_TOL: f64 = 1e-6;

/// Master duals relevant to pricing. `pi[i]` is the covering dual of control
/// point `i` (index 0 unused), `alpha` the fleet dual, `lambda1` and `lambda2`
/// the objective-bound duals (zero when the bound is slack).
#[derive(Debug, Clone, PartialEq)]
pub struct MasterDuals {
    pub pi: Vec<f64>,
    pub alpha: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl MasterDuals {
    pub fn zero(n: usize) -> Self {
        Self {
            pi: vec![0.0; n + 1],
            alpha: 0.0,
            lambda1: 0.0,
            lambda2: 0.0,
        }
    }
}

/// Arc reduced costs `(w1 - λ1) c_ij - (w2 + λ2) S_i - π_i`, with `π_0`
/// replaced by the fleet dual. `cost` and `score` are in the units of the
/// master objectives.
pub fn reduced_cost_matrix(cost: &[Vec<f64>], score: &[f64], w: (f64, f64), duals: &MasterDuals) -> Vec<Vec<f64>> {
    let v = cost.len();
    let (a, b) = (w.0 - duals.lambda1, w.1 + duals.lambda2);
    (0..v)
        .map(|i| {
            let pi = if i == 0 {
                duals.alpha
            } else {
                duals.pi.get(i).copied().unwrap_or(0.0)
            };
            (0..v).map(|j| a * cost[i][j] - b * score[i] - pi).collect()
        })
        .collect()
}

/// Arcs and control points excluded by branching.
#[derive(Debug, Clone, PartialEq)]
pub struct Restrictions {
    pub banned_arc: Vec<Vec<bool>>,
    pub banned_point: Vec<bool>,
}

impl Restrictions {
    pub fn none(inst: &BitoptwInstance) -> Self {
        let v = inst.sites.len();
        Self {
            banned_arc: vec![vec![false; v]; v],
            banned_point: vec![false; v],
        }
    }

    pub fn allows(&self, inst: &BitoptwInstance, i: usize, j: usize) -> bool {
        inst.is_arc(i, j) && !self.banned_arc[i][j] && !self.banned_point[j] && !self.banned_point[i]
    }

    pub fn allows_route(&self, inst: &BitoptwInstance, route: &[usize]) -> bool {
        route.windows(2).all(|w| self.allows(inst, w[0], w[1]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PricedRoute {
    /// Full vertex sequence, depots included.
    pub route: Vec<usize>,
    pub reduced_cost: f64,
}

#[derive(Debug, Clone, Copy)]
struct Label {
    node: usize,
    time: i64,
    rc: f64,
    visited: u64,
    parent: usize,
    alive: bool,
}

const ROOT: usize = usize::MAX;

fn dominates(a: &Label, b: &Label) -> bool {
    a.time <= b.time && a.rc <= b.rc + 1e-12 && a.visited & !b.visited == 0
}

/// All nondominated labels reaching the end depot, best first.
pub fn label_routes(inst: &BitoptwInstance, rc: &[Vec<f64>], restrict: &Restrictions) -> Vec<PricedRoute> {
    let end = inst.end();
    let mut arena = vec![Label {
        node: 0,
        time: inst.sites[0].open,
        rc: 0.0,
        visited: 0,
        parent: ROOT,
        alive: true,
    }];
    let mut at_node: Vec<Vec<usize>> = vec![Vec::new(); inst.sites.len()];
    at_node[0].push(0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        let l = arena[id];
        if !l.alive || l.node == end {
            continue;
        }
        for w in 1..=end {
            if !restrict.allows(inst, l.node, w) || (w < end && l.visited >> w & 1 == 1) {
                continue;
            }
            let Some(time) = inst.arrive(l.node, l.time, w) else {
                continue;
            };
            let cand = Label {
                node: w,
                time,
                rc: l.rc + rc[l.node][w],
                visited: if w < end { l.visited | 1 << w } else { l.visited },
                parent: id,
                alive: true,
            };
            if at_node[w].iter().any(|&o| dominates(&arena[o], &cand)) {
                continue;
            }
            at_node[w].retain(|&o| {
                if dominates(&cand, &arena[o]) {
                    arena[o].alive = false;
                    false
                } else {
                    true
                }
            });
            let new_id = arena.len();
            arena.push(cand);
            at_node[w].push(new_id);
            queue.push_back(new_id);
        }
    }

    let mut out: Vec<PricedRoute> = at_node[end]
        .iter()
        .map(|&id| {
            let mut route = Vec::new();
            let mut k = id;
            while k != ROOT {
                route.push(arena[k].node);
                k = arena[k].parent;
            }
            route.reverse();
            PricedRoute {
                route,
                reduced_cost: arena[id].rc,
            }
        })
        .collect();
    out.sort_by(|a, b| a.reduced_cost.total_cmp(&b.reduced_cost).then_with(|| a.route.cmp(&b.route)));
    out
}

/// Smallest reduced cost over all elementary time-feasible routes.
pub fn min_reduced_cost(inst: &BitoptwInstance, rc: &[Vec<f64>], restrict: &Restrictions) -> Option<f64> {
    label_routes(inst, rc, restrict).first().map(|r| r.reduced_cost)
}

/// Routes with negative reduced cost.
pub fn price(inst: &BitoptwInstance, rc: &[Vec<f64>], restrict: &Restrictions) -> Vec<PricedRoute> {
    let mut routes = label_routes(inst, rc, restrict);
    routes.retain(|r| r.reduced_cost < -PRICING_TOL);
    routes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bnp::instance::Site;

    fn line_graph(windows: [(i64, i64); 3]) -> BitoptwInstance {
        let depot = Site {
            x: 0,
            y: 0,
            service: 0,
            score: 0,
            open: 0,
            close: 10_000,
        };
        let mut sites = vec![depot];
        for (k, (open, close)) in windows.into_iter().enumerate() {
            sites.push(Site {
                x: k as i64 + 1,
                y: 0,
                service: 0,
                score: 5,
                open,
                close,
            });
        }
        sites.push(depot);
        BitoptwInstance::new(sites, 1).unwrap()
    }

    fn raw_costs(inst: &BitoptwInstance) -> (Vec<Vec<f64>>, Vec<f64>) {
        let c = inst.travel.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
        let s = inst.sites.iter().map(|s| s.score as f64).collect();
        (c, s)
    }

    #[test]
    fn matrix_examples() {
        let inst = line_graph([(0, 10_000); 3]);
        let (c, s) = raw_costs(&inst);
        let zero = MasterDuals::zero(inst.n());
        assert_eq!(reduced_cost_matrix(&c, &s, (1.0, 0.0), &zero), c);
        let m = reduced_cost_matrix(&c, &s, (0.0, 1.0), &zero);
        assert_eq!(m[2][3], -5.0);
        let c4 = vec![vec![0.0, 0.0], vec![4.0, 4.0]];
        let duals = MasterDuals {
            pi: vec![0.0, 1.0],
            alpha: 0.0,
            lambda1: 0.5,
            lambda2: 0.25,
        };
        // (1 - 0.5) * 4 - (1 + 0.25) * 2 - 1
        let m = reduced_cost_matrix(&c4, &[0.0, 2.0], (1.0, 1.0), &duals);
        assert!((m[1][0] + 1.5).abs() < 1e-12);
    }

    #[test]
    fn nonnegative_costs_price_nothing() {
        let inst = line_graph([(0, 10_000); 3]);
        let (c, s) = raw_costs(&inst);
        let rc = reduced_cost_matrix(&c, &s, (1.0, 0.0), &MasterDuals::zero(inst.n()));
        assert!(price(&inst, &rc, &Restrictions::none(&inst)).is_empty());
    }

    #[test]
    fn large_dual_prices_single_visit() {
        let inst = line_graph([(0, 10_000); 3]);
        let (c, s) = raw_costs(&inst);
        let mut duals = MasterDuals::zero(inst.n());
        duals.pi[2] = 1000.0;
        let rc = reduced_cost_matrix(&c, &s, (1.0, 0.0), &duals);
        let best = &price(&inst, &rc, &Restrictions::none(&inst))[0];
        assert_eq!(best.route, vec![0, 2, 4]);
        assert!((best.reduced_cost - (400.0 - 1000.0)).abs() < 1e-9);
    }

    #[test]
    fn windows_block_sequence() {
        // point 1 opens late, point 2 closes early: 1 then 2 is impossible
        let inst = line_graph([(5000, 10_000), (0, 300), (0, 10_000)]);
        let (c, s) = raw_costs(&inst);
        let mut duals = MasterDuals::zero(inst.n());
        duals.pi = vec![0.0, 1e4, 1e4, 1e4];
        let rc = reduced_cost_matrix(&c, &s, (1.0, 0.0), &duals);
        for r in label_routes(&inst, &rc, &Restrictions::none(&inst)) {
            let p1 = r.route.iter().position(|&v| v == 1);
            let p2 = r.route.iter().position(|&v| v == 2);
            if let (Some(a), Some(b)) = (p1, p2) {
                assert!(b < a, "{:?}", r.route);
            }
        }
    }
}
