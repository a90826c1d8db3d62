//! DTLZ1–DTLZ9 (Deb, Thiele, Laumanns and Zitzler). All variables lie in `[0, 1]`.

use std::f64::consts::PI;

/// Multimodal distance function of DTLZ1 and DTLZ3.
fn g_rastrigin(xm: &[f64]) -> f64 {
    let s: f64 = xm
        .iter()
        .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
        .sum();
    100.0 * (xm.len() as f64 + s)
}

fn g_sphere(xm: &[f64]) -> f64 {
    xm.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

/// Spherical objective mapping shared by DTLZ2–DTLZ6. `angles` are in `[0, 1]`
/// and are scaled by `π/2`.
fn spherical(angles: &[f64], radius: f64, n_obj: usize) -> Vec<f64> {
    (0..n_obj)
        .map(|i| {
            let mut f = radius;
            for a in &angles[..n_obj - 1 - i] {
                f *= (a * PI / 2.0).cos();
            }
            if i > 0 {
                f *= (angles[n_obj - 1 - i] * PI / 2.0).sin();
            }
            f
        })
        .collect()
}

pub(crate) fn dtlz1(x: &[f64], n_obj: usize) -> Vec<f64> {
    let g = g_rastrigin(&x[n_obj - 1..]);
    (0..n_obj)
        .map(|i| {
            let mut f = 0.5 * (1.0 + g);
            for v in &x[..n_obj - 1 - i] {
                f *= v;
            }
            if i > 0 {
                f *= 1.0 - x[n_obj - 1 - i];
            }
            f
        })
        .collect()
}

pub(crate) fn dtlz2(x: &[f64], n_obj: usize) -> Vec<f64> {
    let g = g_sphere(&x[n_obj - 1..]);
    spherical(&x[..n_obj - 1], 1.0 + g, n_obj)
}

pub(crate) fn dtlz3(x: &[f64], n_obj: usize) -> Vec<f64> {
    let g = g_rastrigin(&x[n_obj - 1..]);
    spherical(&x[..n_obj - 1], 1.0 + g, n_obj)
}

pub(crate) fn dtlz4(x: &[f64], n_obj: usize) -> Vec<f64> {
    const ALPHA: i32 = 100;
    let g = g_sphere(&x[n_obj - 1..]);
    let angles: Vec<f64> = x[..n_obj - 1].iter().map(|v| v.powi(ALPHA)).collect();
    spherical(&angles, 1.0 + g, n_obj)
}

fn degenerate_angles(x: &[f64], n_obj: usize, g: f64) -> Vec<f64> {
    x[..n_obj - 1]
        .iter()
        .enumerate()
        .map(|(i, &v)| if i == 0 { v } else { (1.0 + 2.0 * g * v) / (2.0 * (1.0 + g)) })
        .collect()
}

pub(crate) fn dtlz5(x: &[f64], n_obj: usize) -> Vec<f64> {
    let g = g_sphere(&x[n_obj - 1..]);
    spherical(&degenerate_angles(x, n_obj, g), 1.0 + g, n_obj)
}

pub(crate) fn dtlz6(x: &[f64], n_obj: usize) -> Vec<f64> {
    let g: f64 = x[n_obj - 1..].iter().map(|v| v.powf(0.1)).sum();
    spherical(&degenerate_angles(x, n_obj, g), 1.0 + g, n_obj)
}

/// `h(f) = f (1 + sin(3π f))`, the per-objective term of DTLZ7's last objective.
pub(crate) fn dtlz7_h(f: f64) -> f64 {
    f * (1.0 + (3.0 * PI * f).sin())
}

/// Last DTLZ7 objective as a function of the first `M - 1` objectives and `g`.
pub(crate) fn dtlz7_last(head: &[f64], g: f64, n_obj: usize) -> f64 {
    let h = n_obj as f64 - head.iter().map(|&f| dtlz7_h(f) / (1.0 + g)).sum::<f64>();
    (1.0 + g) * h
}

pub(crate) fn dtlz7(x: &[f64], n_obj: usize) -> Vec<f64> {
    let xm = &x[n_obj - 1..];
    let g = 1.0 + 9.0 * xm.iter().sum::<f64>() / xm.len() as f64;
    let mut f = x[..n_obj - 1].to_vec();
    f.push(dtlz7_last(&x[..n_obj - 1], g, n_obj));
    f
}

fn block_bounds(j: usize, n_vars: usize, n_obj: usize) -> (usize, usize) {
    (j * n_vars / n_obj, (j + 1) * n_vars / n_obj)
}

/// DTLZ8 objectives and aggregate constraint violation.
pub(crate) fn dtlz8(x: &[f64], n_obj: usize) -> (Vec<f64>, f64) {
    let n = x.len();
    let block = (n / n_obj) as f64;
    let f: Vec<f64> = (0..n_obj)
        .map(|j| {
            let (a, b) = block_bounds(j, n, n_obj);
            x[a..b].iter().sum::<f64>() / block
        })
        .collect();
    (f.clone(), dtlz8_violation(&f))
}

pub(crate) fn dtlz8_violation(f: &[f64]) -> f64 {
    let m = f.len();
    let last = f[m - 1];
    let mut violation = 0.0;
    for &fj in &f[..m - 1] {
        violation += (-(last + 4.0 * fj - 1.0)).max(0.0);
    }
    if m >= 3 {
        let mut min_pair = f64::INFINITY;
        for i in 0..m - 1 {
            for j in (i + 1)..m - 1 {
                min_pair = min_pair.min(f[i] + f[j]);
            }
        }
        violation += (-(2.0 * last + min_pair - 1.0)).max(0.0);
    }
    violation
}

/// DTLZ9 objectives and aggregate constraint violation.
pub(crate) fn dtlz9(x: &[f64], n_obj: usize) -> (Vec<f64>, f64) {
    let n = x.len();
    let f: Vec<f64> = (0..n_obj)
        .map(|j| {
            let (a, b) = block_bounds(j, n, n_obj);
            x[a..b].iter().map(|v| v.powf(0.1)).sum()
        })
        .collect();
    (f.clone(), dtlz9_violation(&f))
}

pub(crate) fn dtlz9_violation(f: &[f64]) -> f64 {
    let last = f[f.len() - 1];
    f[..f.len() - 1]
        .iter()
        .map(|&fj| (-(last * last + fj * fj - 1.0)).max(0.0))
        .sum()
}
