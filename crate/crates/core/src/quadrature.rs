//! Gauss–Legendre rules, composite panels and tensor products.
//!
//! Sums run in node order, so every integral is bit-for-bit reproducible.

use std::f64::consts::PI;

/// n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the three-term Legendre recurrence.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (mid + half * x, half * w))
            .collect()
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).into_iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Composite rule: `panels` equal sub-intervals, this rule on each.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        (0..panels)
            .flat_map(|p| {
                let lo = a + width * p as f64;
                let hi = if p + 1 == panels { b } else { lo + width };
                self.mapped(lo, hi)
            })
            .collect()
    }
}

/// P_n(x) and P_n'(x).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product sum over three pre-mapped `(node, weight)` lists, ordered x, y, z.
pub fn integrate_box<F>(axes: [&[(f64, f64)]; 3], mut f: F) -> f64
where
    F: FnMut(f64, f64, f64) -> f64,
{
    let mut total = 0.0;
    for &(z, wz) in axes[2] {
        let mut plane = 0.0;
        for &(y, wy) in axes[1] {
            let mut line = 0.0;
            for &(x, wx) in axes[0] {
                line += wx * f(x, y, z);
            }
            plane += wy * line;
        }
        total += wz * plane;
    }
    total
}

/// Like [`integrate_box`], for `N` integrands sharing one field evaluation.
pub fn integrate_box_many<const N: usize, F>(axes: [&[(f64, f64)]; 3], mut f: F) -> [f64; N]
where
    F: FnMut(f64, f64, f64) -> [f64; N],
{
    let mut total = [0.0; N];
    for &(z, wz) in axes[2] {
        let mut plane = [0.0; N];
        for &(y, wy) in axes[1] {
            let mut line = [0.0; N];
            for &(x, wx) in axes[0] {
                for (acc, v) in line.iter_mut().zip(f(x, y, z)) {
                    *acc += wx * v;
                }
            }
            for (acc, v) in plane.iter_mut().zip(line) {
                *acc += wy * v;
            }
        }
        for (acc, v) in total.iter_mut().zip(plane) {
            *acc += wz * v;
        }
    }
    total
}
