//! Samplers for the true Pareto fronts, built from the known parametric
//! descriptions of each problem.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::{dtlz, wfg, Family, ProblemSpec};
use crate::error::{Error, Result};
use crate::pareto::non_dominated_indices;

/// Residual bound for analytic front conditions (simplex, sphere).
pub const FRONT_TOLERANCE: f64 = 1e-9;

/// Draws `count` objective vectors on the Pareto front of `spec`.
///
/// Fronts with exact parametric forms are sampled directly. Fronts whose
/// parametrization also covers dominated regions (DTLZ8, WFG1, WFG2) are
/// oversampled and passed through non-dominated filtering until `count`
/// mutually non-dominated points are available.
pub fn sample_true_front<R: Rng + ?Sized>(spec: &ProblemSpec, count: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::InvalidConfig("front sample size must be at least 1".into()));
    }
    let m = spec.n_obj;
    let needs_filter = matches!((spec.id.family, spec.id.index), (Family::Dtlz, 8) | (Family::Wfg, 1 | 2));
    let dtlz7 = Dtlz7Regions::new();
    let draw = |rng: &mut R| -> Vec<f64> {
        match (spec.id.family, spec.id.index) {
            (Family::Dtlz, 1) => simplex(m, rng).into_iter().map(|v| 0.5 * v).collect(),
            (Family::Dtlz, 2..=4) => sphere(m, rng),
            (Family::Dtlz, 5 | 6) => {
                let mut angles = vec![0.5; m - 1];
                angles[0] = rng.random::<f64>();
                spherical_unit(&angles, m)
            }
            (Family::Dtlz, 7) => {
                let head: Vec<f64> = (0..m - 1).map(|_| dtlz7.sample(rng)).collect();
                let last = dtlz::dtlz7_last(&head, 1.0, m);
                let mut f = head;
                f.push(last);
                f
            }
            (Family::Dtlz, 8) => dtlz8_point(m, rng),
            (Family::Dtlz, 9) => {
                let theta = rng.random::<f64>() * PI / 2.0;
                let mut f = vec![theta.cos(); m - 1];
                f.push(theta.sin());
                f
            }
            (Family::Wfg, index) => {
                let mut x: Vec<f64> = (0..m - 1).map(|_| rng.random::<f64>()).collect();
                if index == 3 {
                    x[1..].iter_mut().for_each(|v| *v = 0.5);
                }
                x.push(0.0);
                wfg::objectives_from_shape(index, &x)
            }
            _ => unreachable!("problem id validated at construction"),
        }
    };

    if !needs_filter {
        return Ok((0..count).map(|_| draw(rng)).collect());
    }
    let mut pool: Vec<Vec<f64>> = Vec::with_capacity(2 * count);
    while pool.len() < count {
        let missing = count - pool.len();
        pool.extend((0..missing + missing / 2 + 1).map(|_| draw(rng)));
        let keep = non_dominated_indices(&pool);
        pool = keep.into_iter().map(|i| std::mem::take(&mut pool[i])).collect();
    }
    pool.truncate(count);
    Ok(pool)
}

fn simplex<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..m).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|v| v / total).collect()
}

fn sphere<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..m)
            .map(|_| {
                let v: f64 = StandardNormal.sample(rng);
                v.abs()
            })
            .collect();
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return g.into_iter().map(|v| v / norm).collect();
        }
    }
}

fn spherical_unit(angles: &[f64], m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = 1.0;
            for a in &angles[..m - 1 - i] {
                f *= (a * PI / 2.0).cos();
            }
            if i > 0 {
                f *= (angles[m - 1 - i] * PI / 2.0).sin();
            }
            f
        })
        .collect()
}

/// DTLZ8 front: the line `f_1 = … = f_{M-1} = t, f_M = 1 - 4t` for
/// `t ∈ [0, 1/6]`, and the region on the last constraint's boundary where the
/// smallest of the first `M - 1` objectives is `s`, the rest equal `t`, and
/// `2 f_M + s + t = 1`.
fn dtlz8_point<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    const LINE_SHARE: f64 = 0.2;
    if rng.random::<f64>() < LINE_SHARE {
        let t = rng.random::<f64>() / 6.0;
        let mut f = vec![t; m - 1];
        f.push(1.0 - 4.0 * t);
        return f;
    }
    let last = rng.random::<f64>() / 3.0;
    let s_min = (1.0 - last) / 4.0;
    let s_max = (1.0 - 2.0 * last) / 2.0;
    let s = s_min + rng.random::<f64>() * (s_max - s_min);
    let t = 1.0 - 2.0 * last - s;
    let mut f = vec![t; m - 1];
    f[rng.random_range(0..m - 1)] = s;
    f.push(last);
    f
}

/// Intervals of `[0, 1]` where a DTLZ7 head objective is Pareto-optimal: the
/// values at which `h(f) = f (1 + sin 3πf)` exceeds its maximum over all
/// smaller arguments.
struct Dtlz7Regions {
    first_end: f64,
    second_start: f64,
    second_end: f64,
}

impl Dtlz7Regions {
    fn new() -> Self {
        let h = dtlz::dtlz7_h;
        let first_end = golden_max(h, 0.0, 0.5);
        let second_end = golden_max(h, 0.5, 1.0);
        let valley = golden_max(|f| -h(f), first_end, second_end);
        let target = h(first_end);
        let (mut lo, mut hi) = (valley, second_end);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Self {
            first_end,
            second_start: hi,
            second_end,
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let total = self.first_end + (self.second_end - self.second_start);
        let u = rng.random::<f64>() * total;
        if u <= self.first_end {
            u
        } else {
            self.second_start + (u - self.first_end)
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}
