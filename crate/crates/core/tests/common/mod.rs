//! Exact reference computations shared by the integration tests.
#![allow(dead_code)]

use biobab::geometry::{Granularity, LbSegment, ObjectivePoint};
use biobab::lp::{LinearModel, LpSolution, Sense, Variable};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i64>;

/// Coordinates are generated as multiples of 1/4, exact in both `f64` and `Q`.
pub const DEN: i64 = 4;

#[derive(Debug, Clone, Copy)]
pub struct QPoint {
    pub z1: Q,
    pub z2: Q,
}

impl QPoint {
    pub fn quarters(a: i64, b: i64) -> Self {
        Self {
            z1: Q::new(a, DEN),
            z2: Q::new(b, DEN),
        }
    }

    pub fn to_f64(self) -> ObjectivePoint {
        ObjectivePoint::new(to_f64(self.z1), to_f64(self.z2))
    }
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Segment with exact corners; `p == q` for a rectangle.
#[derive(Debug, Clone, Copy)]
pub struct QSegment {
    pub p: QPoint,
    pub q: QPoint,
    pub c: QPoint,
}

impl QSegment {
    pub fn to_f64(self) -> LbSegment {
        if self.is_point() {
            LbSegment::point(self.p.to_f64(), self.c.to_f64())
        } else {
            LbSegment::new(self.p.to_f64(), self.q.to_f64(), self.c.to_f64())
        }
    }

    pub fn is_point(&self) -> bool {
        self.p.z1 == self.q.z1 && self.p.z2 == self.q.z2
    }

    /// Closed covered region, in exact arithmetic.
    pub fn contains(&self, z1: Q, z2: Q) -> bool {
        let (p, q, c) = (self.p, self.q, self.c);
        if z1 < p.z1 || z1 > c.z1 || z2 > c.z2 || z2 < q.z2 {
            return false;
        }
        if self.is_point() {
            return true;
        }
        // on or above the line through p and q
        (z2 - p.z2) * (q.z1 - p.z1) >= (q.z2 - p.z2) * (z1 - p.z1)
    }

    /// Does the region hold a point of the grid `g`.
    pub fn has_grid_point(&self, g: Granularity) -> bool {
        grid(self.p.z1, self.c.z1, g.g1)
            .into_iter()
            .any(|z1| grid(self.q.z2, self.c.z2, g.g2).into_iter().any(|z2| self.contains(z1, z2)))
    }
}

/// Multiples of `g` in `[lo, hi]`.
pub fn grid(lo: Q, hi: Q, g: i64) -> Vec<Q> {
    let g = Q::from_integer(g);
    let mut k = (lo / g).ceil();
    let mut out = Vec::new();
    while k * g <= hi {
        out.push(k * g);
        k += Q::from_integer(1);
    }
    out
}

/// Does the triangle spanned by `p`, `(p1, q2)`, `q` contain a grid point
/// strictly below the line through `p` and `q`.
pub fn grid_point_below_chord(p: QPoint, q: QPoint, g: Granularity) -> bool {
    grid(p.z1, q.z1, g.g1).into_iter().any(|z1| {
        grid(q.z2, p.z2, g.g2)
            .into_iter()
            .any(|z2| (z2 - p.z2) * (q.z1 - p.z1) < (q.z2 - p.z2) * (z1 - p.z1))
    })
}

/// Random segment in a small window: corners on the quarter grid, nadir at
/// or beyond the endpoints. One in five is a rectangle.
pub fn random_segment(rng: &mut ChaCha8Rng) -> QSegment {
    let p1 = rng.gen_range(-24..=24);
    let p2 = rng.gen_range(-24..=24);
    let point = rng.gen_bool(0.2);
    let (q1, q2) = if point {
        (p1, p2)
    } else {
        (p1 + rng.gen_range(1..=32), p2 - rng.gen_range(1..=32))
    };
    let c1 = q1 + rng.gen_range(0..=16);
    let c2 = p2 + rng.gen_range(0..=16);
    QSegment {
        p: QPoint::quarters(p1, p2),
        q: QPoint::quarters(q1, q2),
        c: QPoint::quarters(c1, c2),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random LP with finite bounds: 2..=4 variables, 1..=3 rows of each sense.
pub fn random_lp(rng: &mut ChaCha8Rng) -> (LinearModel, Vec<f64>) {
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(1..=3);
    let mut lp = LinearModel::new();
    for _ in 0..n {
        let lo = rng.gen_range(-2..=0) as f64;
        let up = lo + rng.gen_range(1..=5) as f64;
        lp.add_var(Variable::continuous(lo, up), 0.0, 0.0);
    }
    for _ in 0..m {
        let terms: Vec<(usize, f64)> = (0..n).map(|j| (j, rng.gen_range(-5..=5) as f64)).collect();
        let sense = match rng.gen_range(0..6) {
            0 => Sense::Eq,
            1 | 2 => Sense::Ge,
            _ => Sense::Le,
        };
        lp.add_row(&terms, sense, rng.gen_range(-6..=8) as f64);
    }
    let cost = (0..n).map(|_| rng.gen_range(-6..=6) as f64).collect();
    (lp, cost)
}

/// Random pure integer program with small boxes.
pub fn random_ip(rng: &mut ChaCha8Rng) -> (LinearModel, Vec<f64>) {
    let n = rng.gen_range(2..=6);
    let m = rng.gen_range(1..=3);
    let mut lp = LinearModel::new();
    for _ in 0..n {
        let up = rng.gen_range(1..=3) as f64;
        lp.add_var(
            Variable {
                lower: 0.0,
                upper: up,
                integer: true,
            },
            0.0,
            0.0,
        );
    }
    for _ in 0..m {
        let terms: Vec<(usize, f64)> = (0..n).map(|j| (j, rng.gen_range(-6..=6) as f64)).collect();
        let sense = if rng.gen_bool(0.25) { Sense::Ge } else { Sense::Le };
        lp.add_row(&terms, sense, rng.gen_range(-3..=10) as f64);
    }
    let cost = (0..n).map(|_| rng.gen_range(-9..=9) as f64).collect();
    (lp, cost)
}

fn qi(x: f64) -> Q {
    assert_eq!(x, x.round(), "oracle expects integral data");
    Q::from_integer(x as i64)
}

/// Solve a square system exactly; `None` when singular.
fn solve_square(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Q::from_integer(0))?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] != Q::from_integer(0) {
                let f = a[r][col] / a[col][col];
                for k in col..n {
                    let v = a[col][k];
                    a[r][k] -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn exactly_feasible(lp: &LinearModel, x: &[Q]) -> bool {
    lp.vars.iter().zip(x).all(|(v, &xi)| xi >= qi(v.lower) && xi <= qi(v.upper))
        && lp.rows.iter().all(|r| {
            let a: Q = r.coefs.iter().zip(x).map(|(&c, &xi)| qi(c) * xi).sum();
            match r.sense {
                Sense::Le => a <= qi(r.rhs),
                Sense::Ge => a >= qi(r.rhs),
                Sense::Eq => a == qi(r.rhs),
            }
        })
}

/// Optimal value of a bounded LP by enumerating every basic solution.
pub fn lp_by_vertices(lp: &LinearModel, cost: &[f64]) -> Option<Q> {
    let n = lp.num_vars();
    // hyperplanes: rows, then lower bounds, then upper bounds
    let mut planes: Vec<(Vec<Q>, Q)> = lp.rows.iter().map(|r| (r.coefs.iter().map(|&c| qi(c)).collect(), qi(r.rhs))).collect();
    for upper in [false, true] {
        for j in 0..n {
            let mut a = vec![Q::from_integer(0); n];
            a[j] = Q::from_integer(1);
            let v = lp.vars[j];
            planes.push((a, qi(if upper { v.upper } else { v.lower })));
        }
    }
    let mut best: Option<Q> = None;
    for combo in combinations(planes.len(), n) {
        let a = combo.iter().map(|&i| planes[i].0.clone()).collect();
        let b = combo.iter().map(|&i| planes[i].1).collect();
        if let Some(x) = solve_square(a, b) {
            if exactly_feasible(lp, &x) {
                let v: Q = cost.iter().zip(&x).map(|(&c, &xi)| qi(c) * xi).sum();
                best = Some(best.map_or(v, |b: Q| b.min(v)));
            }
        }
    }
    best
}

/// Optimal value of a pure integer program by enumerating its box.
pub fn ip_by_enumeration(lp: &LinearModel, cost: &[f64]) -> Option<i64> {
    let n = lp.num_vars();
    let mut x: Vec<i64> = lp.vars.iter().map(|v| v.lower as i64).collect();
    let mut best: Option<i64> = None;
    loop {
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        if lp.is_feasible(&xf, 0.0) {
            let v: i64 = cost.iter().zip(&x).map(|(&c, &xi)| c as i64 * xi).sum();
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        let mut j = 0;
        loop {
            if j == n {
                return best;
            }
            if x[j] < lp.vars[j].upper as i64 {
                x[j] += 1;
                break;
            }
            x[j] = lp.vars[j].lower as i64;
            j += 1;
        }
    }
}

/// Dual bound implied by the row duals of `sol`: `y·b` plus the best bound
/// contribution of every reduced cost. Fails when a dual has the wrong sign.
pub fn dual_bound(lp: &LinearModel, cost: &[f64], sol: &LpSolution, tol: f64) -> Result<f64, String> {
    let y = &sol.duals;
    let mut bound = 0.0;
    for (i, r) in lp.rows.iter().enumerate() {
        if !r.is_active() {
            continue;
        }
        let ok = match r.sense {
            Sense::Le => y[i] <= tol,
            Sense::Ge => y[i] >= -tol,
            Sense::Eq => true,
        };
        if !ok {
            return Err(format!("row {i} dual {} has the wrong sign", y[i]));
        }
        bound += y[i] * r.rhs;
    }
    for (j, v) in lp.vars.iter().enumerate() {
        let d = cost[j] - lp.rows.iter().enumerate().filter(|(_, r)| r.is_active()).map(|(i, r)| y[i] * r.coefs[j]).sum::<f64>();
        bound += if d >= 0.0 { d * v.lower } else { d * v.upper };
    }
    Ok(bound)
}

pub mod props {
    use super::*;
    use biobab::geometry::{filter_segment, segment_covers_grid_point, triangle_skip};
    use proptest::prelude::*;

    pub fn segment() -> impl Strategy<Value = QSegment> {
        (-24i64..=24, -24i64..=24, 1i64..=32, 1i64..=32, 0i64..=16, 0i64..=16, 0u8..5).prop_map(
            |(p1, p2, d1, d2, e1, e2, kind)| {
                let (q1, q2) = if kind == 0 { (p1, p2) } else { (p1 + d1, p2 - d2) };
                QSegment {
                    p: QPoint::quarters(p1, p2),
                    q: QPoint::quarters(q1, q2),
                    c: QPoint::quarters(q1 + e1, p2 + e2),
                }
            },
        )
    }

    pub fn granularity() -> impl Strategy<Value = Granularity> {
        (1i64..=3, 1i64..=3).prop_map(|(a, b)| Granularity::new(a, b).unwrap())
    }

    /// Filtering point in integer coordinates and whether the integer
    /// dominance shift is applied. Unshifted points sit half a unit off the
    /// lattice so that no lattice point lies on a cut boundary.
    pub fn filter_point() -> impl Strategy<Value = ((i64, i64), bool)> {
        ((-8i64..=16, -16i64..=12), any::<bool>())
    }

    /// Lattice points inside the filtered region are exactly those inside the
    /// original region and not weakly dominated by the shifted point.
    pub fn conservation(s: QSegment, u: (i64, i64), shifted: bool) -> Result<(), String> {
        let (up, shift) = if shifted {
            (ObjectivePoint::new(u.0 as f64, u.1 as f64), (0.5, 0.5))
        } else {
            (ObjectivePoint::new(u.0 as f64 + 0.5, u.1 as f64 + 0.5), (0.0, 0.0))
        };
        let cut = (Q::new(2 * u.0 - 1 + 2 * i64::from(!shifted), 2), Q::new(2 * u.1 - 1 + 2 * i64::from(!shifted), 2));
        let pieces = filter_segment(&s.to_f64(), &up, shift);
        let lo1 = s.p.z1.floor() - Q::from_integer(1);
        let hi1 = s.c.z1.ceil() + Q::from_integer(1);
        let lo2 = s.q.z2.floor() - Q::from_integer(1);
        let hi2 = s.c.z2.ceil() + Q::from_integer(1);
        for z1 in grid(lo1, hi1, 1) {
            for z2 in grid(lo2, hi2, 1) {
                let expect = s.contains(z1, z2) && !(z1 >= cut.0 && z2 >= cut.1);
                let zf = ObjectivePoint::new(to_f64(z1), to_f64(z2));
                let got = pieces.iter().any(|t| t.contains(&zf));
                if expect != got {
                    return Err(format!("{s:?} u={u:?} shifted={shifted}: z={zf:?} expected {expect}, pieces {pieces:?}"));
                }
            }
        }
        Ok(())
    }

    pub fn covers_grid(s: QSegment, g: Granularity) -> Result<(), String> {
        let expect = s.has_grid_point(g);
        let got = segment_covers_grid_point(&s.to_f64(), g);
        if expect == got {
            Ok(())
        } else {
            Err(format!("{s:?} g={g:?}: expected {expect}, got {got}"))
        }
    }

    pub fn skip_triangle(s: QSegment, g: Granularity) -> Result<(), String> {
        if s.is_point() {
            return Ok(());
        }
        let expect = !grid_point_below_chord(s.p, s.q, g);
        let got = triangle_skip(&s.p.to_f64(), &s.q.to_f64(), g);
        if expect == got {
            Ok(())
        } else {
            Err(format!("p={:?} q={:?} g={g:?}: expected {expect}, got {got}", s.p, s.q))
        }
    }
}
