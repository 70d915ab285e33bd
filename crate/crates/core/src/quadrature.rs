//! Gauss–Legendre rules and a globally adaptive panel integrator.
//!
//! Panels are bisected in order of decreasing error estimate. The estimate
//! for a panel is the difference between the rule applied to the whole panel
//! and the rule applied to its two halves, which overestimates the error of
//! the (retained) two-half value for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the `n`-point rule by Newton iteration on the three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
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

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

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
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Estimated relative error of `value`.
    pub rel_err: f64,
    /// Integral of `|f|`, the scale for absolute error control.
    pub abs: f64,
    pub panels: usize,
}

/// Failure to reach the requested tolerance; carries the best result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotConverged(pub Integral);

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    left: f64,
    err: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration of `f` over consecutive intervals `breaks[i]..breaks[i+1]`.
///
/// Breakpoints are hard panel boundaries: no panel ever straddles one.
#[derive(Debug, Clone)]
pub struct AdaptiveIntegrator {
    rule: GaussRule,
    max_panels: usize,
}

impl Default for AdaptiveIntegrator {
    fn default() -> Self {
        Self::new(20, 20_000)
    }
}

impl AdaptiveIntegrator {
    pub fn new(order: usize, max_panels: usize) -> Self {
        Self {
            rule: GaussRule::new(order),
            max_panels,
        }
    }

    fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, coarse: f64) -> Panel {
        let m = 0.5 * (a + b);
        let left = self.rule.integrate(f, a, m);
        let right = self.rule.integrate(f, m, b);
        let abs = self.rule.integrate(|x| f(x).abs(), a, b);
        let value = left + right;
        Panel {
            a,
            b,
            value,
            left,
            err: (value - coarse).abs(),
            abs,
        }
    }

    /// Integrates until the estimated error is at most `tol · |∫f|`.
    pub fn integrate<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breaks: &[f64],
        tol: f64,
    ) -> Result<Integral, NotConverged> {
        self.run(f, breaks, tol, false)
    }

    /// Integrates until the estimated error is at most `tol · ∫|f|`; suited
    /// to integrands that change sign and may cancel.
    pub fn integrate_l1<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breaks: &[f64],
        tol: f64,
    ) -> Result<Integral, NotConverged> {
        self.run(f, breaks, tol, true)
    }

    fn run<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breaks: &[f64],
        tol: f64,
        l1: bool,
    ) -> Result<Integral, NotConverged> {
        let mut heap = BinaryHeap::new();
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let coarse = self.rule.integrate(&f, a, b);
            heap.push(self.panel(&f, a, b, coarse));
        }
        loop {
            let (value, err, abs) = heap.iter().fold((0.0, 0.0, 0.0), |(v, e, s), p| {
                (v + p.value, e + p.err, s + p.abs)
            });
            let floor = 64.0 * f64::EPSILON * abs;
            let scale = if l1 { abs } else { value.abs() }.max(f64::MIN_POSITIVE);
            let rel_err = err.max(floor) / scale;
            let result = Integral {
                value,
                rel_err,
                abs,
                panels: heap.len(),
            };
            if err <= (tol * scale).max(floor) {
                return if rel_err <= tol || value == 0.0 {
                    Ok(result)
                } else {
                    Err(NotConverged(result))
                };
            }
            if heap.len() >= self.max_panels {
                return Err(NotConverged(result));
            }
            let worst = heap.pop().expect("non-empty panel set");
            let m = 0.5 * (worst.a + worst.b);
            if m <= worst.a || m >= worst.b {
                heap.push(Panel { err: 0.0, ..worst });
                continue;
            }
            // The halves of the retired panel serve as coarse estimates for the children.
            let right = worst.value - worst.left;
            heap.push(self.panel(&f, worst.a, m, worst.left));
            heap.push(self.panel(&f, m, worst.b, right));
        }
    }
}
