//! Shared fixtures and a brute-force reference implementation of the
//! outranking relations, written from the definitions with plain `(lo, hi)`
//! pairs so it shares no code with the library.

#![allow(dead_code)]

use ioaco::interval::Interval;
use ioaco::outranking::DmModel;
use rand::Rng;

pub type Pair = (f64, f64);

fn pair(i: &Interval) -> Pair {
    (i.lo(), i.hi())
}

pub fn possibility(e: Pair, d: Pair) -> f64 {
    let (we, wd) = (e.1 - e.0, d.1 - d.0);
    if we == 0.0 && wd == 0.0 {
        return if e.0 >= d.0 { 1.0 } else { 0.0 };
    }
    ((e.1 - d.0) / (we + wd)).clamp(0.0, 1.0)
}

/// Concordance interval as the extreme values of the coalition weight over
/// all weight vectors inside the box that sum to one.
pub fn concordance(mask: &[bool], w: &[Pair]) -> Pair {
    let mut c = (0.0, 0.0);
    let mut d = (0.0, 0.0);
    for (k, &inside) in mask.iter().enumerate() {
        if inside {
            c = (c.0 + w[k].0, c.1 + w[k].1);
        } else {
            d = (d.0 + w[k].0, d.1 + w[k].1);
        }
    }
    // Minimizing pushes the outside weights to their upper limits, and
    // maximizing pushes them to their lower limits.
    if mask.iter().all(|&m| !m) {
        return (0.0, 0.0);
    }
    if mask.iter().all(|&m| m) {
        return (1.0, 1.0);
    }
    let hi = c.1.min(1.0 - d.0).clamp(0.0, 1.0);
    (c.0.max(1.0 - d.1).clamp(0.0, 1.0).min(hi), hi)
}

pub struct Reference {
    pub sigma: Vec<Vec<f64>>,
    pub s: Vec<Vec<bool>>,
    pub pr: Vec<Vec<bool>>,
    pub strength: Vec<usize>,
    pub weakness: Vec<usize>,
    pub fronts: Vec<usize>,
    pub best: Vec<usize>,
}

pub fn sigma(fx: &[f64], fy: &[f64], dm: &DmModel) -> f64 {
    let n = fx.len();
    let w: Vec<Pair> = dm.weights().iter().map(pair).collect();
    let mask: Vec<bool> = (0..n)
        .map(|k| {
            let q = pair(&dm.indifference()[k]);
            possibility((fy[k] - fx[k], fy[k] - fx[k]), (-q.1, -q.0)) >= 0.5
        })
        .collect();
    let c = concordance(&mask, &w);
    let mut d = 1.0;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        if !mask[k] {
            let diff = fx[k] - fy[k];
            worst = worst.max(possibility((diff, diff), pair(&dm.veto()[k])));
        }
    }
    if mask.iter().any(|m| !m) {
        d = 1.0 - worst;
    }
    possibility(c, pair(&dm.lambda())).min(d)
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

pub fn reference(pop: &[Vec<f64>], dm: &DmModel) -> Reference {
    let n = pop.len();
    let mut sig = vec![vec![0.0; n]; n];
    let mut s = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sig[i][j] = sigma(&pop[i], &pop[j], dm);
                s[i][j] = sig[i][j] >= dm.beta();
            }
        }
    }
    let mut pr = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pr[i][j] = dominates(&pop[i], &pop[j]) || (s[i][j] && !s[j][i]);
            }
        }
    }
    let strength: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| s[i][j]).count()).collect();
    let weakness: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| pr[j][i]).count()).collect();
    let better = |a: usize, b: usize| weakness[a] < weakness[b] || (weakness[a] == weakness[b] && strength[a] > strength[b]);
    let fronts: Vec<usize> = (0..n).map(|i| 1 + (0..n).filter(|&j| better(j, i)).count()).collect();
    let best = (0..n).filter(|&i| fronts[i] == 1).collect();
    Reference {
        sigma: sig,
        s,
        pr,
        strength,
        weakness,
        fronts,
        best,
    }
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

/// A random valid model; about one time in five every threshold is a point.
pub fn random_dm<R: Rng>(rng: &mut R, n: usize) -> DmModel {
    let degenerate = rng.random_bool(0.2);
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let spread = if degenerate { 0.0 } else { rng.random_range(0.0..0.3) };
    let weights = raw.iter().map(|c| iv(c / total * (1.0 - spread), c / total * (1.0 + spread))).collect();
    let mut indifference = Vec::new();
    let mut veto = Vec::new();
    for _ in 0..n {
        let q_lo = rng.random_range(0.0..0.15);
        let q_hi = if degenerate { q_lo } else { q_lo + rng.random_range(0.0..0.1) };
        let v_lo = q_hi + rng.random_range(0.05..0.4);
        let v_hi = if degenerate { v_lo } else { v_lo + rng.random_range(0.0..0.3) };
        indifference.push(iv(q_lo, q_hi));
        veto.push(iv(v_lo, v_hi));
    }
    let l_lo = rng.random_range(0.5..0.85);
    let lambda = if degenerate { iv(l_lo, l_lo) } else { iv(l_lo, rng.random_range(l_lo..1.0)) };
    let beta = rng.random_range(0.5..1.0);
    DmModel::new(weights, indifference, veto, lambda, beta).unwrap()
}

/// Objective vectors in `[0, 1]`, with a share of values on a coarse grid so
/// that ties and exact threshold hits occur.
pub fn random_population<R: Rng>(rng: &mut R, size: usize, n: usize) -> Vec<Vec<f64>> {
    (0..size)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.random_bool(0.3) {
                        rng.random_range(0..=10) as f64 / 10.0
                    } else {
                        rng.random::<f64>()
                    }
                })
                .collect()
        })
        .collect()
}
