//! Pareto dominance utilities (minimization).

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Dominance comparison: `Less` if `a` dominates `b`, `Greater` if `b`
/// dominates `a`, `Equal` when they are mutually non-dominated or identical.
#[inline]
pub fn dominance(a: &[f64], b: &[f64]) -> Ordering {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return Ordering::Equal;
        }
    }
    match (a_better, b_better) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// True iff `fx <= fy` componentwise with at least one strict inequality.
pub fn pareto_dominates(fx: &[f64], fy: &[f64]) -> Result<bool> {
    if fx.len() != fy.len() {
        return Err(Error::DimensionMismatch {
            expected: fx.len(),
            actual: fy.len(),
        });
    }
    Ok(dominance(fx, fy) == Ordering::Less)
}

/// Non-dominated sorting. Returns the 1-based front index of every point.
pub fn non_dominated_sort(points: &[Vec<f64>]) -> Vec<usize> {
    let len = points.len();
    let mut dominated_by = vec![0usize; len];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); len];
    for i in 0..len {
        for j in (i + 1)..len {
            match dominance(&points[i], &points[j]) {
                Ordering::Less => {
                    dominates[i].push(j);
                    dominated_by[j] += 1;
                }
                Ordering::Greater => {
                    dominates[j].push(i);
                    dominated_by[i] += 1;
                }
                Ordering::Equal => {}
            }
        }
    }
    let mut fronts = vec![0usize; len];
    let mut current: Vec<usize> = (0..len).filter(|&i| dominated_by[i] == 0).collect();
    let mut rank = 1;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            fronts[i] = rank;
            for &j in &dominates[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        current = next;
        rank += 1;
    }
    fronts
}

/// Indices (ascending) of the points not dominated by any other point.
pub fn non_dominated_indices(points: &[Vec<f64>]) -> Vec<usize> {
    // Visit in order of coordinate sum so dominators come first.
    let mut order: Vec<usize> = (0..points.len()).collect();
    let sums: Vec<f64> = points.iter().map(|p| p.iter().sum()).collect();
    order.sort_by(|&a, &b| sums[a].total_cmp(&sums[b]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let dominated = kept
            .iter()
            .any(|&k| dominance(&points[k], &points[i]) == Ordering::Less);
        if !dominated {
            // Rounding can make a dominating point's sum tie with the dominated one.
            kept.retain(|&k| dominance(&points[i], &points[k]) != Ordering::Less);
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}
