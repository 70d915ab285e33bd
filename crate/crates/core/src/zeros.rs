//! Zeros of weighted Bergman kernels.
//!
//! On the diagonal variable `t = z w̄` the kernel is `F(t) = Σ α_n tⁿ`, and
//! `(1−t)² F(t)` splits into the affine part `L(t) = α₀ + (α₁ − 2α₀) t` and
//! the series `S(t) = Σ_{k≥2} Δ²_k tᵏ` of second differences. A Rouché
//! certificate compares `min |L|` against `Σ |Δ²_k|` on a circle. The
//! winding counter is an independent route: it counts zeros of the
//! truncated `G_N(t) = (1−t)² Σ_{n≤N} α_n tⁿ` along `|t| = ρ` and certifies
//! that truncation cannot change the count.

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kernel::{horner, horner_with_derivative, tail_majorant, KernelSeries};
use crate::quadrature::AdaptiveIntegrator;
use crate::weights::RadialWeight;

/// Default cutoff for explicit second differences.
pub const DEFAULT_CUTOFF: usize = 500;

/// `Σ_{k≥2} |α_k − 2α_{k−1} + α_{k−2}|`, split into an explicit part and a
/// certified remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondDifferenceBound {
    pub cutoff: usize,
    /// `Σ_{k=2}^{cutoff} |Δ²_k|`.
    pub partial_sum: f64,
    /// Bound on `Σ_{k>cutoff} |Δ²_k|`; infinite when unavailable.
    pub remainder_bound: f64,
    /// `partial_sum + remainder_bound`.
    pub s_bound: f64,
    /// `(α₁ − α₀) − (α_N − α_{N−1})`, equal to `partial_sum` when every Δ² is negative.
    pub telescoped_value: f64,
    /// `(α₁ − α₀) − lim (α_k − α_{k−1})`, when the limit is known.
    pub limit_value: Option<f64>,
    pub all_negative: bool,
    pub certified: bool,
}

pub fn second_difference_bound(
    series: &KernelSeries,
    cutoff: usize,
) -> Result<SecondDifferenceBound> {
    if cutoff < 2 {
        return Err(invalid(
            "N_cutoff",
            "needs at least one second difference (N >= 2)",
        ));
    }
    let mut partial_sum = 0.0;
    let mut all_negative = true;
    for k in 2..=cutoff {
        let d = series.second_difference(k)?;
        all_negative &= d.signum() < 0.0;
        partial_sum += d.value().abs();
    }
    let telescoped_value = series.first_difference(1)? - series.first_difference(cutoff)?;
    let profile = series.tail_profile();
    // |Δ²_k| ≤ |δ_k| + 2|δ_{k−1}| + |δ_{k−2}|, so the remainder is at most 4 Σ_{j≥N−1} |δ_j|
    let remainder_bound = match profile {
        Some(p) => 4.0 * p.alpha_deviation_tail(cutoff - 1),
        None => f64::INFINITY,
    };
    let certified = remainder_bound.is_finite();
    Ok(SecondDifferenceBound {
        cutoff,
        partial_sum,
        remainder_bound,
        s_bound: partial_sum + remainder_bound,
        telescoped_value,
        limit_value: profile
            .map(|p| series.first_difference(1).unwrap_or(f64::NAN) - p.limit_difference()),
        all_negative,
        certified,
    })
}

/// Outcome of comparing `min |L|` with the second-difference sum on `|t| = 1 − ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoucheCertificate {
    pub epsilon: f64,
    pub ring_radius: f64,
    /// Root of `L(t) = α₀ + (α₁ − 2α₀)t`, absent when `L` is constant.
    pub linear_root: Option<f64>,
    /// Exact minimum of `|L|` on the ring.
    pub min_l: f64,
    /// Minimum over a dense sample of the ring, as a cross-check of `min_l`.
    pub min_l_sampled: f64,
    pub s_bound: f64,
    pub s_certified: bool,
    pub holds: bool,
}

pub fn rouche_certificate(series: &KernelSeries, epsilon: f64) -> Result<RoucheCertificate> {
    rouche_certificate_with(series, epsilon, DEFAULT_CUTOFF)
}

pub fn rouche_certificate_with(
    series: &KernelSeries,
    epsilon: f64,
    cutoff: usize,
) -> Result<RoucheCertificate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid("eps", format!("{epsilon} must lie in (0, 1)")));
    }
    let a = series.coeffs(1)?;
    let (c0, c1) = (a[0], a[1] - 2.0 * a[0]);
    let ring = 1.0 - epsilon;
    let linear_root = (c1 != 0.0).then(|| -c0 / c1);
    // |c0 + c1 t| on |t| = ring is minimised where c1 t points against c0
    let min_l = (c0.abs() - c1.abs() * ring).abs();
    let samples = 4096;
    let min_l_sampled = (0..samples)
        .map(|j| {
            let t = Complex64::from_polar(ring, 2.0 * PI * j as f64 / samples as f64);
            (c0 + c1 * t).norm()
        })
        .fold(f64::INFINITY, f64::min);
    debug_assert!(min_l_sampled >= min_l * (1.0 - 1e-12) - 1e-15);
    let sb = second_difference_bound(series, cutoff)?;
    let inside = linear_root.is_some_and(|r| r.abs() < ring);
    Ok(RoucheCertificate {
        epsilon,
        ring_radius: ring,
        linear_root,
        min_l,
        min_l_sampled,
        s_bound: sb.s_bound,
        s_certified: sb.certified,
        holds: sb.certified && inside && min_l > sb.s_bound,
    })
}

/// The ε grid searched when no ε is given: 16 log-spaced values in `[0.001, 0.03]`.
pub fn epsilon_grid() -> Vec<f64> {
    let (lo, hi) = (0.001f64.ln(), 0.03f64.ln());
    (0..16)
        .map(|i| (lo + (hi - lo) * i as f64 / 15.0).exp())
        .collect()
}

/// Largest ε of [`epsilon_grid`] whose certificate holds.
pub fn largest_passing_epsilon(series: &KernelSeries) -> Result<Option<RoucheCertificate>> {
    let sb = second_difference_bound(series, DEFAULT_CUTOFF)?;
    let mut best = None;
    for eps in epsilon_grid() {
        let cert = rouche_certificate(series, eps)?;
        debug_assert_eq!(cert.s_bound, sb.s_bound);
        if cert.holds {
            best = Some(cert);
        }
    }
    Ok(best)
}

/// A zero of `F` located by refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocatedZero {
    pub re: f64,
    pub im: f64,
    /// Certified bound on `|F(t)|` at the reported point.
    pub residual: f64,
    pub iterations: usize,
}

impl LocatedZero {
    pub fn t(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Zero count of `F` inside `|t| < ρ` by the argument principle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    pub requested_radius: f64,
    /// Radius actually used (perturbed when the contour came too close to a zero).
    pub disc_radius: f64,
    pub truncation: usize,
    pub zero_count: usize,
    /// Raw winding `Σ Δarg / 2π`; an integer up to rounding.
    pub winding: f64,
    pub located_zeros: Vec<LocatedZero>,
    /// Guaranteed lower bound of `|G_N|` on the contour.
    pub min_modulus: f64,
    /// `(1+ρ)² · tail_bound(ρ, N)`, the largest possible `|G − G_N|` on the contour.
    pub truncation_margin: f64,
    pub contour_points: usize,
    pub certified: bool,
    pub diagnostics: Vec<String>,
}

const MAX_DEPTH: usize = 48;
const MAX_LOCATE: usize = 8;

struct Contour {
    winding: f64,
    min_modulus: f64,
    points: usize,
}

/// Tracks arg G_N along `|t| = ρ` with an a-priori Lipschitz bound, so every
/// accepted arc provably keeps G_N inside a disc that excludes the origin.
fn trace_contour(g: &[f64], rho: f64) -> Option<Contour> {
    let deriv: f64 = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c.abs() * rho.powi(k as i32 - 1))
        .sum();
    let eval = |theta: f64| horner(g, Complex64::from_polar(rho, theta));
    let start = 256usize;
    let mut winding = 0.0;
    let mut min_modulus = f64::INFINITY;
    let mut points = 0usize;
    for j in 0..start {
        let a = 2.0 * PI * j as f64 / start as f64;
        let b = 2.0 * PI * (j + 1) as f64 / start as f64;
        let mut stack = vec![(a, eval(a), b, eval(b), 0usize)];
        while let Some((ta, (ga, ea), tb, (gb, eb), depth)) = stack.pop() {
            let arc = rho * (tb - ta);
            let err = ea.max(eb);
            let lo = ga.norm().min(gb.norm());
            if deriv * arc + 2.0 * err <= 0.5 * lo {
                winding += (gb / ga).arg();
                min_modulus = min_modulus.min(lo - err - 0.5 * deriv * arc);
                points += 1;
                continue;
            }
            if depth >= MAX_DEPTH {
                return None;
            }
            let tm = 0.5 * (ta + tb);
            let gm = eval(tm);
            // right half first so the left half is processed next (keeps order)
            stack.push((tm, gm, tb, (gb, eb), depth + 1));
            stack.push((ta, (ga, ea), tm, gm, depth + 1));
        }
    }
    Some(Contour {
        winding: winding / (2.0 * PI),
        min_modulus,
        points,
    })
}

/// Counts zeros of `F` in `|t| < ρ` using the truncation `N` (chosen
/// automatically when `None`).
pub fn count_zeros_winding(
    series: &KernelSeries,
    rho: f64,
    n: Option<usize>,
) -> Result<ZeroReport> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid("rho", format!("radius {rho} must lie in (0, 1)")));
    }
    let mut diagnostics = Vec::new();
    let offsets = [0.0, 1e-3, -1e-3, 2e-3, -2e-3];
    for off in offsets {
        let r = rho + off;
        if !(r > 0.0 && r < 1.0) {
            continue;
        }
        match count_at_radius(series, r, n)? {
            Some(mut report) => {
                report.requested_radius = rho;
                diagnostics.append(&mut report.diagnostics);
                report.diagnostics = diagnostics;
                return Ok(report);
            }
            None => diagnostics.push(format!("contour |t| = {r} passes too close to a zero")),
        }
    }
    Err(Error::InvalidArgument {
        name: "rho",
        reason: diagnostics.join("; "),
    })
}

fn count_at_radius(
    series: &KernelSeries,
    rho: f64,
    n: Option<usize>,
) -> Result<Option<ZeroReport>> {
    let c = series.comparability();
    let a0 = series.alpha(0)?.abs();
    let plans: Vec<usize> = match n {
        Some(n) => vec![n.max(2)],
        None => {
            let mut v = Vec::new();
            for rel in [1e-6, 1e-9, 1e-12] {
                match series.truncation_for(rho, rel * a0) {
                    Ok(n) => v.push(n.max(2)),
                    Err(_) => v.push(series.budget()),
                }
            }
            v.dedup();
            v
        }
    };
    let mut last = None;
    for trunc in plans {
        let g = series.diagonal_poly(trunc)?;
        let Some(contour) = trace_contour(&g, rho) else {
            return Ok(None);
        };
        let margin = (1.0 + rho).powi(2) * tail_majorant(c, rho, trunc);
        let certified = contour.min_modulus > margin;
        let zero_count = contour.winding.round().max(0.0) as usize;
        let mut diagnostics = Vec::new();
        if (contour.winding - contour.winding.round()).abs() > 1e-6 {
            diagnostics.push(format!(
                "winding {} is not close to an integer",
                contour.winding
            ));
        }
        if !certified {
            diagnostics.push(format!(
                "min |G_N| bound {:e} does not exceed truncation margin {:e} at N = {trunc}",
                contour.min_modulus, margin
            ));
        }
        let report = ZeroReport {
            requested_radius: rho,
            disc_radius: rho,
            truncation: trunc,
            zero_count,
            winding: contour.winding,
            located_zeros: Vec::new(),
            min_modulus: contour.min_modulus,
            truncation_margin: margin,
            contour_points: contour.points,
            certified,
            diagnostics,
        };
        last = Some((report, g));
        if certified {
            break;
        }
    }
    let (mut report, g) = last.expect("at least one truncation plan");
    if report.zero_count > 0 && report.zero_count <= MAX_LOCATE {
        report.located_zeros = locate_zeros(series, &g, report.truncation, rho, report.zero_count)?;
        if report.located_zeros.len() != report.zero_count {
            report.diagnostics.push(format!(
                "located {} of {} zeros",
                report.located_zeros.len(),
                report.zero_count
            ));
        }
    } else if report.zero_count > MAX_LOCATE {
        report.diagnostics.push(format!(
            "{} zeros inside; location skipped",
            report.zero_count
        ));
    }
    Ok(Some(report))
}

/// Power sums `Σ t_j^k` of the zeros inside the contour by trapezoidal
/// quadrature of `t^k G'/G`, turned into a monic polynomial by Newton's
/// identities; its roots are polished by Newton's method on `G_N`.
fn locate_zeros(
    series: &KernelSeries,
    g: &[f64],
    trunc: usize,
    rho: f64,
    count: usize,
) -> Result<Vec<LocatedZero>> {
    let m = 8192;
    let mut sums = vec![Complex64::new(0.0, 0.0); count + 1];
    for j in 0..m {
        let t = Complex64::from_polar(rho, 2.0 * PI * j as f64 / m as f64);
        let (p, d) = horner_with_derivative(g, t);
        let q = d / p * t / m as f64;
        let mut tk = Complex64::new(1.0, 0.0);
        for s in sums.iter_mut() {
            *s += q * tk;
            tk *= t;
        }
    }
    // e_k from Newton's identities: k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=count {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += e[k - i] * sums[i] * sign;
        }
        e.push(acc / k as f64);
    }
    // monic polynomial Π (t − t_j), coefficients ascending
    let poly: Vec<Complex64> = (0..=count)
        .map(|i| {
            let k = count - i;
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            e[k] * sign
        })
        .collect();
    let guesses = polynomial_roots(&poly);
    let coeffs = series.coeffs(trunc)?;
    let c = series.comparability();
    let mut found: Vec<LocatedZero> = Vec::new();
    for guess in guesses {
        let mut t = guess;
        let mut iterations = 0;
        for _ in 0..60 {
            iterations += 1;
            let (p, d) = horner_with_derivative(g, t);
            if d.norm() == 0.0 {
                break;
            }
            let step = p / d;
            t -= step;
            if step.norm() <= 1e-15 * t.norm().max(1e-3) {
                break;
            }
        }
        if t.im.abs() < 1e-12 {
            t.im = 0.0;
        }
        if !(t.norm() < rho) {
            continue;
        }
        let (value, rounding) = horner(&coeffs, t);
        let residual = value.norm() + rounding + tail_majorant(c, t.norm(), trunc);
        if found.iter().any(|z| (z.t() - t).norm() < 1e-9) {
            continue;
        }
        found.push(LocatedZero {
            re: t.re,
            im: t.im,
            residual,
            iterations,
        });
    }
    found.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(found)
}

/// Roots of a small complex polynomial (ascending coefficients, monic) by
/// Durand–Kerner iteration.
fn polynomial_roots(poly: &[Complex64]) -> Vec<Complex64> {
    let deg = poly.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let eval = |t: Complex64| {
        poly.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    };
    let radius = 1.0 + poly[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| seed.powu(k as u32) * radius.min(1.0))
        .collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// One cell of a step-weight sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub x: f64,
    pub zero_count: Option<usize>,
    pub certified: bool,
    pub error: Option<String>,
}

/// Zero counts for the two-level weights `A·1[0,x] + 1(x,1]` over a grid.
///
/// Cells are independent; a failing cell is reported in its row and the
/// sweep continues. Rows come back in `(A, x)` row-major order.
pub fn sweep_step_weights(a_values: &[f64], x_values: &[f64], rho: f64) -> Vec<SweepRow> {
    let cells: Vec<(f64, f64)> = a_values
        .iter()
        .flat_map(|&a| x_values.iter().map(move |&x| (a, x)))
        .collect();
    cells
        .into_par_iter()
        .map(|(a, x)| {
            let outcome = RadialWeight::two_level(a, x)
                .and_then(KernelSeries::from_weight)
                .and_then(|s| count_zeros_winding(&s, rho, None));
            match outcome {
                Ok(r) => SweepRow {
                    a,
                    x,
                    zero_count: Some(r.zero_count),
                    certified: r.certified,
                    error: None,
                },
                Err(e) => SweepRow {
                    a,
                    x,
                    zero_count: None,
                    certified: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Points sampled across each mollified breakpoint.
const TRANSITION_SAMPLES: usize = 65;

/// `C^∞` transition from 0 at `s = 0` to 1 at `s = 1`.
fn smooth_transition(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let f = |x: f64| (-1.0 / x).exp();
    f(s) / (f(s) + f(1.0 - s))
}

/// Replaces every jump of a step weight by a smooth transition of total
/// width `width` centred at the breakpoint, sampled and interpolated
/// piecewise-linearly. Outside those windows the weight is unchanged.
pub fn mollify_weight(step: &RadialWeight, width: f64) -> Result<RadialWeight> {
    let segments = match step {
        RadialWeight::Constant { value } => vec![(1.0, *value)],
        RadialWeight::Step { segments } => segments.clone(),
        _ => return Err(Error::Unsupported("only step weights can be mollified")),
    };
    if !(width > 0.0) {
        return Err(invalid("width", format!("{width} must be positive")));
    }
    let mut prev = 0.0;
    for &(r, _) in &segments {
        if width >= r - prev {
            return Err(invalid(
                "width",
                format!(
                    "{width} is not smaller than the gap {} between breakpoints",
                    r - prev
                ),
            ));
        }
        prev = r;
    }
    let mut grid = vec![0.0];
    let mut values = vec![segments[0].1];
    for pair in segments.windows(2) {
        let (x, left) = pair[0];
        let right = pair[1].1;
        for i in 0..TRANSITION_SAMPLES {
            let s = i as f64 / (TRANSITION_SAMPLES - 1) as f64;
            grid.push(x - 0.5 * width + s * width);
            values.push(left + (right - left) * smooth_transition(s));
        }
    }
    RadialWeight::sampled(grid, values)
}

/// Zero of the kernel for Lebesgue measure plus a point mass `k` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiracZero {
    pub mass: f64,
    /// `π/3`; a zero lies in the disc exactly when `mass` exceeds it.
    pub threshold: f64,
    pub has_zero_in_disc: bool,
    /// `1 − √(1 + π/k)`, the only zero of `F_k` inside `|t| < 1 + √(1+π/k)`.
    pub zero_location: Option<f64>,
}

/// `F_k(t) = 1/(π+k) − 1/π + 1/(π(1−t)²)`.
pub fn dirac_kernel(mass: f64, t: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let u = one - t;
    1.0 / (PI + mass) - 1.0 / PI + one / (u * u * PI)
}

pub fn dirac_zero_threshold(mass: f64) -> Result<DiracZero> {
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(invalid(
            "k",
            format!("point mass {mass} must be non-negative"),
        ));
    }
    // 1/(1−t)² = k/(π+k) has the real solutions t = 1 ± √(1 + π/k)
    let zero_location = (mass > 0.0).then(|| 1.0 - (1.0 + PI / mass).sqrt());
    Ok(DiracZero {
        mass,
        threshold: FRAC_PI_3,
        has_zero_in_disc: mass > FRAC_PI_3,
        zero_location,
    })
}

/// `‖z^m w^j‖²` in `A²(Ω)` for the Hartogs domain `Ω = {|w|² < λ(z)}`:
/// `(π/(j+1)) ∫_D |z|^{2m} λ(z)^{j+1} dA(z)`, by quadrature.
pub fn hartogs_monomial_norm(weight: &RadialWeight, m: usize, j: usize) -> Result<f64> {
    if weight.is_singular() {
        return Err(Error::Unsupported(
            "the Hartogs domain needs a weight function",
        ));
    }
    let p = 2 * m as i32 + 1;
    let e = j as i32 + 1;
    let res = AdaptiveIntegrator::new(24, 20_000).integrate(
        |r| r.powi(p) * weight.value_at(r).powi(e),
        &weight.breakpoints(),
        1e-13,
    );
    match res {
        Ok(i) => Ok(PI / (j as f64 + 1.0) * 2.0 * PI * i.value),
        Err(fail) => Err(Error::QuadratureFailed {
            index: m,
            achieved: fail.0.rel_err,
            requested: 1e-13,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InflationCheck {
    /// `B_Ω[(z,0),(t,0)]` from the monomial norms of `Ω`.
    pub lhs: Complex64,
    /// `B_λ(z,t)/π`.
    pub rhs: Complex64,
    pub difference: f64,
    pub terms: usize,
    pub agree: bool,
}

/// Compares the Hartogs-domain kernel on the slice `w = s = 0` with the
/// weighted disc kernel divided by `π`.
pub fn inflation_check(
    weight: &RadialWeight,
    z: Complex64,
    t: Complex64,
    tol: f64,
) -> Result<InflationCheck> {
    if z.norm() >= 1.0 || t.norm() >= 1.0 {
        return Err(invalid(
            "z, t",
            "both points must lie in the open unit disc",
        ));
    }
    if !(tol > 0.0) {
        return Err(invalid("tol", "must be positive"));
    }
    let series = KernelSeries::from_weight(weight.clone())?;
    let rhs = series.kernel_eval(z, t, 0.25 * PI * tol)?.value / PI;
    let u = z * t.conj();
    // 1/‖z^m‖²_Ω = α_m/π ≤ C(m+1)/π²
    let terms = series.truncation_for(u.norm(), 0.25 * PI * tol)?;
    let inv_norms: Vec<f64> = (0..=terms)
        .into_par_iter()
        .map(|m| hartogs_monomial_norm(weight, m, 0).map(|v| 1.0 / v))
        .collect::<Result<_>>()?;
    let (lhs, _) = horner(&inv_norms, u);
    let difference = (lhs - rhs).norm();
    Ok(InflationCheck {
        lhs,
        rhs,
        difference,
        terms: terms + 1,
        agree: difference <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heavy_step() -> KernelSeries {
        KernelSeries::from_weight(RadialWeight::two_level(18.0, 0.25).unwrap()).unwrap()
    }

    fn unit() -> KernelSeries {
        KernelSeries::from_weight(RadialWeight::constant(1.0).unwrap()).unwrap()
    }

    #[test]
    fn linear_root_and_certificate() {
        let s = heavy_step();
        let c = rouche_certificate(&s, 0.01).unwrap();
        assert!((c.linear_root.unwrap() + 91.0 / 170.0).abs() < 1e-12);
        assert!(c.holds, "{c:?}");
        assert!((c.min_l - 0.131150).abs() < 1e-4, "{}", c.min_l);
        assert!((c.s_bound - 0.12435).abs() < 1e-4, "{}", c.s_bound);
        assert!(c.min_l_sampled >= c.min_l - 1e-15);
        assert!(c.min_l_sampled - c.min_l < 1e-6);
        let c5 = rouche_certificate(&s, 0.05).unwrap();
        assert!(!c5.holds);
    }

    #[test]
    fn min_l_matches_formula_when_root_inside() {
        let s = heavy_step();
        let a = s.coeffs(1).unwrap();
        for eps in [0.001, 0.01, 0.02, 0.1] {
            let c = rouche_certificate(&s, eps).unwrap();
            let formula = (a[1] - 3.0 * a[0]) - eps * (a[1] - 2.0 * a[0]);
            assert!((c.min_l - formula).abs() < 1e-15);
        }
    }

    #[test]
    fn unweighted_has_no_certificate() {
        let c = rouche_certificate(&unit(), 0.01).unwrap();
        assert_eq!(c.linear_root, None);
        assert!(!c.holds);
        assert!((c.min_l - 1.0 / PI).abs() < 1e-15);
        let sb = second_difference_bound(&unit(), 50).unwrap();
        assert_eq!(sb.s_bound, 0.0);
        assert!(!sb.all_negative);
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(rouche_certificate(&unit(), 0.0).is_err());
        assert!(rouche_certificate(&unit(), 1.0).is_err());
        assert!(second_difference_bound(&unit(), 1).is_err());
    }

    #[test]
    fn second_difference_bound_telescopes() {
        let s = heavy_step();
        let b = second_difference_bound(&s, 500).unwrap();
        assert!(b.all_negative && b.certified);
        assert!((b.partial_sum - b.telescoped_value).abs() < 1e-12);
        assert!(b.remainder_bound < 1e-200);
        let a = s.coeffs(1).unwrap();
        let limit = a[1] - a[0] - 1.0 / PI;
        assert!((b.limit_value.unwrap() - limit).abs() < 1e-15);
        assert!(b.s_bound >= limit);
        assert!((b.s_bound - limit).abs() < 1e-12);
    }

    #[test]
    fn fixed_series_bound_is_uncertified() {
        let a = heavy_step().coeffs(60).unwrap();
        let f = KernelSeries::from_coefficients(a, 18.0);
        let b = second_difference_bound(&f, 60).unwrap();
        assert!(!b.certified);
        assert!(b.s_bound.is_infinite());
        assert!(!rouche_certificate_with(&f, 0.01, 60).unwrap().holds);
    }

    #[test]
    fn largest_epsilon_on_grid() {
        let best = largest_passing_epsilon(&heavy_step()).unwrap().unwrap();
        assert!((best.epsilon - 0.03).abs() < 1e-12);
        assert!(largest_passing_epsilon(&unit()).unwrap().is_none());
    }

    #[test]
    fn winding_counts() {
        let s = heavy_step();
        let r = count_zeros_winding(&s, 0.99, None).unwrap();
        assert!(r.certified, "{r:?}");
        assert_eq!(r.zero_count, 1);
        let z = r.located_zeros[0];
        assert!(z.im == 0.0 && (z.re + 0.4769).abs() < 1e-3, "{z:?}");
        assert!(z.residual <= 1e-9 * s.alpha(0).unwrap());

        let r = count_zeros_winding(&s, 0.3, None).unwrap();
        assert!(r.certified);
        assert_eq!(r.zero_count, 0);

        let r = count_zeros_winding(&unit(), 0.999, None).unwrap();
        assert!(r.certified, "{r:?}");
        assert_eq!(r.zero_count, 0);
    }

    #[test]
    fn winding_with_fixed_truncation_can_be_uncertified() {
        let r = count_zeros_winding(&heavy_step(), 0.99, Some(20)).unwrap();
        assert!(!r.certified);
        assert!(!r.diagnostics.is_empty());
        assert!(count_zeros_winding(&unit(), 1.0, None).is_err());
    }

    #[test]
    fn polynomial_roots_small() {
        // (t − 0.5)(t + 0.25i)
        let one = Complex64::new(1.0, 0.0);
        let a = Complex64::new(0.5, 0.0);
        let b = Complex64::new(0.0, -0.25);
        let poly = vec![a * b, -(a + b), one];
        let mut r = polynomial_roots(&poly);
        r.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((r[0] - b).norm() < 1e-12 && (r[1] - a).norm() < 1e-12);
    }

    #[test]
    fn dirac_closed_form() {
        let d = dirac_zero_threshold(10.0).unwrap();
        assert!(d.has_zero_in_disc);
        let t = d.zero_location.unwrap();
        assert!((t - (1.0 - (1.0 + PI / 10.0).sqrt())).abs() < 1e-15);
        assert!(dirac_kernel(10.0, Complex64::new(t, 0.0)).norm() < 1e-14);
        let b = dirac_zero_threshold(FRAC_PI_3).unwrap();
        assert!(!b.has_zero_in_disc);
        assert!((b.zero_location.unwrap() + 1.0).abs() < 1e-15);
        let z = dirac_zero_threshold(0.0).unwrap();
        assert!(!z.has_zero_in_disc && z.zero_location.is_none());
        assert!(dirac_zero_threshold(-1.0).is_err());
    }

    #[test]
    fn dirac_series_agrees_with_closed_form() {
        let s = KernelSeries::from_weight(RadialWeight::dirac(10.0).unwrap()).unwrap();
        let t = Complex64::new(-0.3, 0.2);
        let v = s.eval_diagonal(t, 1e-12).unwrap();
        assert!((v.value - dirac_kernel(10.0, t)).norm() < 1e-11);
        let r = count_zeros_winding(&s, 0.9, None).unwrap();
        assert_eq!(r.zero_count, 1);
        assert!((r.located_zeros[0].re - (1.0 - (1.0 + PI / 10.0).sqrt())).abs() < 1e-10);
    }

    #[test]
    fn mollifier() {
        let w = RadialWeight::two_level(18.0, 0.25).unwrap();
        let m = mollify_weight(&w, 1e-3).unwrap();
        assert_eq!(m.comparability(), 18.0);
        assert_eq!(m.value_at(0.2), 18.0);
        assert_eq!(m.value_at(0.26), 1.0);
        let v = m.value_at(0.25);
        assert!(v > 1.0 && v < 18.0);
        assert!(mollify_weight(&w, 0.25).is_err());
        assert!(mollify_weight(&w, 0.0).is_err());
        let c = mollify_weight(&RadialWeight::constant(1.0).unwrap(), 0.1).unwrap();
        for r in [0.0, 0.3, 0.99] {
            assert_eq!(c.value_at(r), 1.0);
        }
        assert!(mollify_weight(&RadialWeight::dirac(1.0).unwrap(), 0.1).is_err());
    }

    #[test]
    fn inflation_at_origin_and_unweighted() {
        let w = RadialWeight::two_level(18.0, 0.25).unwrap();
        let o = Complex64::new(0.0, 0.0);
        let c = inflation_check(&w, o, o, 1e-10).unwrap();
        let a0 = 16.0 / (33.0 * PI);
        assert!((c.lhs.re - a0 / PI).abs() < 1e-14 && (c.rhs.re - a0 / PI).abs() < 1e-14);
        let u = RadialWeight::constant(1.0).unwrap();
        let z = Complex64::new(0.3, 0.0);
        let t = Complex64::new(0.0, -0.2);
        let c = inflation_check(&u, z, t, 1e-10).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let expect = one / ((one - z * t.conj()).powu(2) * PI * PI);
        assert!((c.lhs - expect).norm() < 1e-10);
        assert!(c.agree);
    }

    #[test]
    fn hartogs_norms_closed_form() {
        let w = RadialWeight::constant(2.0).unwrap();
        for (m, j) in [(0, 0), (3, 1), (10, 2)] {
            let expect = PI / (j as f64 + 1.0) * PI / (m as f64 + 1.0) * 2f64.powi(j as i32 + 1);
            assert!((hartogs_monomial_norm(&w, m, j).unwrap() - expect).abs() / expect < 1e-13);
        }
    }

    #[test]
    fn sweep_rows_in_order() {
        let rows = sweep_step_weights(&[1.0, 18.0], &[0.25, 0.5], 0.9);
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].a, rows[0].x), (1.0, 0.25));
        assert_eq!((rows[3].a, rows[3].x), (18.0, 0.5));
        assert_eq!(rows[0].zero_count, Some(0));
        assert_eq!(rows[2].zero_count, Some(1));
        let bad = sweep_step_weights(&[2.0], &[1.5], 0.9);
        assert!(bad[0].error.is_some() && bad[0].zero_count.is_none());
    }
}
