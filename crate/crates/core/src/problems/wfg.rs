//! WFG1–WFG9 (Huband, Hingston, Barone and While).
//!
//! Variable `z_i` (1-based) ranges over `[0, 2i]`. The first `k` variables are
//! position-related and the remaining `l` are distance-related. Each problem is
//! a chain of transformations from normalized variables to an `M`-vector
//! `t`, followed by a shape function. Objectives are `f_m = x_M + 2m · h_m(x)`.

use std::f64::consts::PI;

const PARAM_A: f64 = 0.98 / 49.98;

#[inline]
fn correct(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

pub(crate) fn b_poly(y: f64, alpha: f64) -> f64 {
    correct(y.powf(alpha))
}

pub(crate) fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - b).floor().min(0.0) * a * (b - y) / b;
    let t2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    correct(a + t1 - t2)
}

fn param_exponent(u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    b + (c - b) * v
}

pub(crate) fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    correct(y.powf(param_exponent(u, a, b, c)))
}

pub(crate) fn s_linear(y: f64, a: f64) -> f64 {
    correct((y - a).abs() / ((a - y).floor() + a).abs())
}

pub(crate) fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    correct(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
}

pub(crate) fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let t2 = (4.0 * a + 2.0) * PI * (0.5 - t1);
    correct((1.0 + t2.cos() + 4.0 * b * t1 * t1) / (b + 2.0))
}

fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    correct(num / w.iter().sum::<f64>())
}

fn mean(y: &[f64]) -> f64 {
    correct(y.iter().sum::<f64>() / y.len() as f64)
}

pub(crate) fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(j + k + 1) % n]).abs();
        }
    }
    let half = a.div_ceil(2) as f64;
    let den = (n as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    correct(num / den)
}

#[derive(Clone, Copy)]
enum Shape {
    Convex,
    Concave,
    Linear,
}

fn shape(kind: Shape, x: &[f64], m: usize) -> f64 {
    // `m` is 1-based; x has M-1 position entries in use.
    let n_obj = x.len();
    let mut r = 1.0;
    for &v in &x[..n_obj - m] {
        r *= match kind {
            Shape::Convex => 1.0 - (v * PI / 2.0).cos(),
            Shape::Concave => (v * PI / 2.0).sin(),
            Shape::Linear => v,
        };
    }
    if m != 1 {
        let v = x[n_obj - m];
        r *= match kind {
            Shape::Convex => 1.0 - (v * PI / 2.0).sin(),
            Shape::Concave => (v * PI / 2.0).cos(),
            Shape::Linear => 1.0 - v,
        };
    }
    r
}

fn mixed(x0: f64, a: f64, alpha: f64) -> f64 {
    let v = 1.0 - x0 - (2.0 * a * PI * x0 + PI / 2.0).cos() / (2.0 * a * PI);
    v.max(0.0).powf(alpha)
}

fn disc(x0: f64, a: f64, alpha: f64, beta: f64) -> f64 {
    1.0 - x0.powf(alpha) * (a * x0.powf(beta) * PI).cos().powi(2)
}

/// Shape values `h_1..h_M` for a given WFG index and shape-parameter vector
/// (`x.len() == M`, only the first `M - 1` entries are read).
pub(crate) fn shape_values(index: u8, x: &[f64]) -> Vec<f64> {
    let n_obj = x.len();
    (1..=n_obj)
        .map(|m| match index {
            1 if m == n_obj => mixed(x[0], 5.0, 1.0),
            1 => shape(Shape::Convex, x, m),
            2 if m == n_obj => disc(x[0], 5.0, 1.0, 1.0),
            2 => shape(Shape::Convex, x, m),
            3 => shape(Shape::Linear, x, m),
            _ => shape(Shape::Concave, x, m),
        })
        .collect()
}

/// Objectives from the shape-parameter vector `x` (length M, `x[M-1]` the
/// distance term).
pub(crate) fn objectives_from_shape(index: u8, x: &[f64]) -> Vec<f64> {
    let distance = x[x.len() - 1];
    shape_values(index, x)
        .into_iter()
        .enumerate()
        .map(|(i, h)| distance + 2.0 * (i + 1) as f64 * h)
        .collect()
}

fn position_groups(k: usize, n_obj: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    let g = k / (n_obj - 1);
    (0..n_obj - 1).map(move |i| i * g..(i + 1) * g)
}

fn reduce_sum(y: &[f64], k: usize, n_obj: usize, weights: &[f64]) -> Vec<f64> {
    let mut t: Vec<f64> = position_groups(k, n_obj).map(|r| r_sum(&y[r.clone()], &weights[r])).collect();
    t.push(r_sum(&y[k..], &weights[k..]));
    t
}

fn reduce_nonsep(y: &[f64], k: usize, n_obj: usize) -> Vec<f64> {
    let g = k / (n_obj - 1);
    let mut t: Vec<f64> = position_groups(k, n_obj).map(|r| r_nonsep(&y[r], g)).collect();
    t.push(r_nonsep(&y[k..], y.len() - k));
    t
}

/// Pairs up distance variables. An odd count leaves a trailing group of one,
/// for which `r_nonsep` reduces to the identity.
fn pair_distance(y: &[f64], k: usize) -> Vec<f64> {
    let mut out = y[..k].to_vec();
    out.extend(y[k..].chunks(2).map(|c| r_nonsep(c, c.len())));
    out
}

fn transform(index: u8, y: &mut Vec<f64>, k: usize, n_obj: usize) -> Vec<f64> {
    let n = y.len();
    let ones = vec![1.0; n];
    match index {
        1 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            for v in &mut y[k..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in y.iter_mut() {
                *v = b_poly(*v, 0.02);
            }
            let w: Vec<f64> = (1..=n).map(|i| 2.0 * i as f64).collect();
            reduce_sum(y, k, n_obj, &w)
        }
        2 | 3 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            let paired = pair_distance(y, k);
            reduce_sum(&paired, k, n_obj, &vec![1.0; paired.len()])
        }
        4 => {
            for v in y.iter_mut() {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            reduce_sum(y, k, n_obj, &ones)
        }
        5 => {
            for v in y.iter_mut() {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            reduce_sum(y, k, n_obj, &ones)
        }
        6 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            reduce_nonsep(y, k, n_obj)
        }
        7 => {
            let src = y.clone();
            for i in 0..k {
                y[i] = b_param(src[i], mean(&src[i + 1..]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            reduce_sum(y, k, n_obj, &ones)
        }
        8 => {
            let src = y.clone();
            for i in k..n {
                y[i] = b_param(src[i], mean(&src[..i]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            reduce_sum(y, k, n_obj, &ones)
        }
        9 => {
            let src = y.clone();
            for i in 0..n - 1 {
                y[i] = b_param(src[i], mean(&src[i + 1..]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[..k] {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            for v in &mut y[k..] {
                *v = s_multi(*v, 30.0, 95.0, 0.35);
            }
            reduce_nonsep(y, k, n_obj)
        }
        _ => unreachable!("WFG index validated at construction"),
    }
}

/// Evaluates WFG`index` with `k` position variables at `z`.
pub(crate) fn evaluate(index: u8, z: &[f64], k: usize, n_obj: usize) -> Vec<f64> {
    let mut y: Vec<f64> = z.iter().enumerate().map(|(i, v)| correct(v / (2.0 * (i + 1) as f64))).collect();
    let t = transform(index, &mut y, k, n_obj);
    let distance = t[n_obj - 1];
    let mut x: Vec<f64> = (0..n_obj - 1)
        .map(|i| {
            let a = if index == 3 && i > 0 { 0.0 } else { 1.0 };
            distance.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    x.push(distance);
    objectives_from_shape(index, &x)
}

/// Normalized distance variables (`y`, before scaling by `2i`) that put a
/// solution on the Pareto front, given the normalized position variables.
#[cfg(test)]
pub(crate) fn optimal_distance(index: u8, position: &[f64], n_vars: usize) -> Vec<f64> {
    let k = position.len();
    let mut y = position.to_vec();
    y.resize(n_vars, 0.35);
    match index {
        8 => {
            for i in k..n_vars {
                let u = mean(&y[..i]);
                y[i] = 0.35f64.powf(1.0 / param_exponent(u, PARAM_A, 0.02, 50.0));
            }
        }
        9 => {
            for i in (k..n_vars - 1).rev() {
                let u = mean(&y[i + 1..]);
                y[i] = 0.35f64.powf(1.0 / param_exponent(u, PARAM_A, 0.02, 50.0));
            }
        }
        _ => {}
    }
    y[k..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transformation_fixed_points() {
        assert_eq!(s_linear(0.35, 0.35), 0.0);
        assert_eq!(b_flat(0.0, 0.8, 0.75, 0.85), 0.0);
        assert_eq!(b_flat(0.8, 0.8, 0.75, 0.85), 0.8);
        assert!(s_multi(0.35, 30.0, 10.0, 0.35) < 1e-12);
        assert!(s_decept(0.35, 0.35, 0.001, 0.05) < 1e-12);
        assert_eq!(r_nonsep(&[0.0, 0.0, 0.0], 3), 0.0);
        assert!((r_nonsep(&[1.0, 0.0], 2) - 1.0).abs() < 1e-12);
        assert_eq!(r_nonsep(&[0.4], 1), 0.4);
        assert!((b_poly(0.5, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn concave_front_lies_on_ellipsoid() {
        // Σ (f_m / 2m)^2 = 1 for the concave problems at optimal distance.
        for index in 4..=9u8 {
            let (k, n, m) = (4, 24, 3);
            let pos_y = [0.1, 0.7, 0.45, 0.9];
            let mut y = pos_y.to_vec();
            y.extend(optimal_distance(index, &pos_y, n));
            let z: Vec<f64> = y.iter().enumerate().map(|(i, v)| v * 2.0 * (i + 1) as f64).collect();
            let f = evaluate(index, &z, k, m);
            let r: f64 = f.iter().enumerate().map(|(i, v)| (v / (2.0 * (i + 1) as f64)).powi(2)).sum();
            assert!((r - 1.0).abs() < 1e-6, "WFG{index}: {r}");
        }
    }

    #[test]
    fn linear_front_for_wfg3() {
        let (k, n, m) = (4, 24, 3);
        let pos_y = [0.3, 0.6, 0.2, 0.8];
        let mut y = pos_y.to_vec();
        y.extend(optimal_distance(3, &pos_y, n));
        let z: Vec<f64> = y.iter().enumerate().map(|(i, v)| v * 2.0 * (i + 1) as f64).collect();
        let f = evaluate(3, &z, k, m);
        let s: f64 = f.iter().enumerate().map(|(i, v)| v / (2.0 * (i + 1) as f64)).sum();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn odd_distance_count_is_accepted() {
        // m = 5: k = 8, l = 39.
        let z: Vec<f64> = (1..=47).map(|i| i as f64).collect();
        let f = evaluate(2, &z, 8, 5);
        assert_eq!(f.len(), 5);
        assert!(f.iter().all(|v| v.is_finite()));
    }
}
