//! Coefficient-level and integral-level diagnostics for `L^p` boundedness
//! of operators with kernels `K(z, w) = Σ β_n (z w̄)ⁿ`.
//!
//! Nothing here proves boundedness. The checks are witnesses computed on a
//! finite stretch of the coefficient sequence and are labelled as such.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::beta::ln_beta;

use crate::error::{invalid, Error, Result};
use crate::kernel::KernelSeries;
use crate::quadrature::AdaptiveIntegrator;
use crate::weights::RadialWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceSource {
    KernelCoefficients,
    KernelDifferences,
    UserSupplied,
}

/// Coefficients `β_0..=β_N` of `K(z, w) = Σ β_n (z w̄)ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSequence {
    betas: Vec<Complex64>,
    /// Declared bound on `|β_n|` for `n > N` when the sequence continues past
    /// the stored entries; `None` means the kernel is the finite sum.
    tail_sup: Option<f64>,
    source: SequenceSource,
}

impl CoefficientSequence {
    pub fn new(betas: Vec<Complex64>) -> Result<Self> {
        if betas.len() < 3 {
            return Err(invalid("betas", "need at least beta_0..beta_2"));
        }
        if betas
            .iter()
            .any(|b| !(b.re.is_finite() && b.im.is_finite()))
        {
            return Err(invalid("betas", "entries must be finite"));
        }
        Ok(Self {
            betas,
            tail_sup: None,
            source: SequenceSource::UserSupplied,
        })
    }

    pub fn from_real(betas: &[f64]) -> Result<Self> {
        Self::new(betas.iter().map(|&b| Complex64::new(b, 0.0)).collect())
    }

    /// `β_n = value` for `n ≤ last`, continuing with the same bound beyond.
    pub fn constant(value: f64, last: usize) -> Result<Self> {
        Ok(Self::from_real(&vec![value; last + 1])?.with_tail_sup(value.abs()))
    }

    /// `α_0..=α_N` of a kernel series.
    pub fn from_series(series: &KernelSeries, n: usize) -> Result<Self> {
        let mut s = Self::from_real(&series.coeffs(n)?)?;
        s.source = SequenceSource::KernelCoefficients;
        Ok(s)
    }

    /// `b_n = α_n − α_{n−1}` for `n ≤ N`, with a bound on `|b_n|` beyond `N`
    /// from the series' tail structure, or `C³/π` without one.
    pub fn differences_of(series: &KernelSeries, n: usize) -> Result<Self> {
        let alphas = Self::from_series(series, n)?;
        let tail_sup = match series.tail_profile() {
            // b_j = lim + δ_j − δ_{j−1} with Σ_{j≥N} |δ_j| bounded
            Some(p) => p.limit_difference() + 2.0 * p.alpha_deviation_tail(n),
            None => series.comparability().powi(3) / PI,
        };
        let mut b = decompose_b(&alphas).to_sequence()?.with_tail_sup(tail_sup);
        b.source = SequenceSource::KernelDifferences;
        Ok(b)
    }

    pub fn with_tail_sup(mut self, sup: f64) -> Self {
        self.tail_sup = Some(sup);
        self
    }

    pub fn betas(&self) -> &[Complex64] {
        &self.betas
    }

    pub fn last_index(&self) -> usize {
        self.betas.len() - 1
    }

    pub fn source(&self) -> SequenceSource {
        self.source
    }

    pub fn tail_sup(&self) -> Option<f64> {
        self.tail_sup
    }

    /// `sup |β_n|` over the stored entries and the declared tail.
    pub fn sup_abs(&self) -> f64 {
        self.betas
            .iter()
            .map(|b| b.norm())
            .fold(self.tail_sup.unwrap_or(0.0), f64::max)
    }
}

/// Trend of a positive sequence over a window: flat or decaying, or growth
/// that would not double its median by the time the index doubles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendWitness {
    pub window_start: usize,
    pub window_end: usize,
    pub max: f64,
    pub median: f64,
    pub slope: f64,
    /// Linear fit extrapolated to index `2 · window_end`.
    pub projected: f64,
    pub non_increasing: bool,
    pub bounded: bool,
}

fn trend(values: &[(usize, f64)]) -> TrendWitness {
    let n = values.len() as f64;
    let mean_x = values.iter().map(|v| v.0 as f64).sum::<f64>() / n;
    let mean_y = values.iter().map(|v| v.1).sum::<f64>() / n;
    let (sxy, sxx) = values.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| {
        let dx = x as f64 - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let end = values[values.len() - 1].0;
    let projected = mean_y + slope * (2.0 * end as f64 - mean_x);
    let mut sorted: Vec<f64> = values.iter().map(|v| v.1).collect();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let max = sorted[sorted.len() - 1];
    let non_increasing = values
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12) + 1e-300);
    TrendWitness {
        window_start: values[0].0,
        window_end: end,
        max,
        median,
        slope,
        projected,
        non_increasing,
        bounded: non_increasing || projected <= 2.0 * median,
    }
}

/// Witness for `limsup |β_n|/n < ∞`, a necessary condition for boundedness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NecessaryCheck {
    /// `max |β_n|/n` over the last half of the range.
    pub limsup_estimate: f64,
    pub finite_trend: bool,
    pub trend: TrendWitness,
    /// Always false: a finite range cannot settle a limsup.
    pub conclusive: bool,
}

pub fn necessary_check(seq: &CoefficientSequence) -> Result<NecessaryCheck> {
    let last = seq.last_index();
    if last < 10 {
        return Err(invalid(
            "N",
            "the necessary-condition witness needs N >= 10",
        ));
    }
    let window: Vec<(usize, f64)> = (last.div_ceil(2).max(1)..=last)
        .map(|n| (n, seq.betas[n].norm() / n as f64))
        .collect();
    let t = trend(&window);
    Ok(NecessaryCheck {
        limsup_estimate: t.max,
        finite_trend: t.bounded,
        trend: t,
        conclusive: false,
    })
}

/// First differences `b_n = β_n − β_{n−1}` with `β_{−1} = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub b: Vec<Complex64>,
    pub sup_abs: f64,
    /// Largest `|Σ_{k≤n} b_k − β_n|`.
    pub reconstruction_error: f64,
    /// Whether the partial sums give back `β` up to rounding.
    pub reconstructs: bool,
}

pub fn decompose_b(seq: &CoefficientSequence) -> Decomposition {
    let mut prev = Complex64::new(0.0, 0.0);
    let b: Vec<Complex64> = seq
        .betas
        .iter()
        .map(|&beta| {
            let d = beta - prev;
            prev = beta;
            d
        })
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut reconstruction_error = 0.0f64;
    let mut scale = 0.0f64;
    for (bk, beta) in b.iter().zip(&seq.betas) {
        acc += bk;
        reconstruction_error = reconstruction_error.max((acc - beta).norm());
        scale = scale.max(beta.norm());
    }
    Decomposition {
        sup_abs: b.iter().map(|x| x.norm()).fold(0.0, f64::max),
        reconstructs: reconstruction_error <= 4.0 * b.len() as f64 * f64::EPSILON * scale,
        reconstruction_error,
        b,
    }
}

impl Decomposition {
    /// The differences as a sequence of their own.
    pub fn to_sequence(&self) -> Result<CoefficientSequence> {
        CoefficientSequence::new(self.b.clone())
    }
}

/// Range within which `α_{n+1} − α_n` must lie for a weight with
/// `1/C ≤ λ ≤ C`: each of the three moments in
/// `(μ_n − μ_{n+1}) / (μ_n μ_{n+1})` moves by at most a factor `C`, and the
/// unweighted value is `1/π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparabilityWindow {
    pub lower: f64,
    pub upper: f64,
    pub all_within: bool,
}

/// Witness for a bounded difference sequence, the sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SufficientCheck {
    pub sup_diff: f64,
    pub bounded_verdict: bool,
    pub trend: TrendWitness,
    pub comparability: Option<ComparabilityWindow>,
    pub conclusive: bool,
}

pub fn sufficient_check(
    seq: &CoefficientSequence,
    weight: Option<&RadialWeight>,
) -> Result<SufficientCheck> {
    let last = seq.last_index();
    if last < 10 {
        return Err(invalid(
            "N",
            "the sufficient-condition witness needs N >= 10",
        ));
    }
    let diffs: Vec<(usize, f64)> = seq
        .betas
        .windows(2)
        .enumerate()
        .map(|(n, w)| (n, (w[1] - w[0]).norm()))
        .collect();
    let sup_diff = diffs.iter().map(|d| d.1).fold(0.0, f64::max);
    let t = trend(&diffs[diffs.len() / 2..]);
    let comparability = weight.map(|w| {
        let c3 = w.comparability().powi(3);
        let (lower, upper) = (1.0 / (c3 * PI), c3 / PI);
        let all_within = seq.betas.windows(2).all(|p| {
            let d = p[1].re - p[0].re;
            d >= lower * (1.0 - 1e-12) && d <= upper * (1.0 + 1e-12)
        });
        ComparabilityWindow {
            lower,
            upper,
            all_within,
        }
    });
    Ok(SufficientCheck {
        sup_diff,
        bounded_verdict: t.bounded,
        trend: t,
        comparability,
        conclusive: false,
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > -1.0 && epsilon < 0.0) {
        return Err(invalid("eps", format!("{epsilon} must lie in (-1, 0)")));
    }
    Ok(())
}

/// `∫_D |w|^{2n} (1−|w|²)^ε dA(w) = π B(n+1, ε+1)`.
pub fn weighted_monomial_integral(n: usize, epsilon: f64) -> f64 {
    PI * ln_beta(n as f64 + 1.0, epsilon + 1.0).exp()
}

/// `I(ε, z)` with a bound on the contribution of undeclared tail terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurValue {
    pub value: f64,
    /// Zero for finite sequences.
    pub tail_bound: f64,
}

impl SchurValue {
    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }
}

/// `I(ε, z) = ∫_D |Σ β_n (z w̄)ⁿ|² (1−|w|²)^ε dA(w)`, reduced by orthogonality
/// of the monomials to `Σ |β_n|² |z|^{2n} π B(n+1, ε+1)`.
pub fn schur_integral(
    seq: &CoefficientSequence,
    epsilon: f64,
    z_radius: f64,
) -> Result<SchurValue> {
    check_epsilon(epsilon)?;
    if !(0.0..1.0).contains(&z_radius) {
        return Err(invalid("z", format!("|z| = {z_radius} must lie in [0, 1)")));
    }
    let r2 = z_radius * z_radius;
    let mut value = 0.0;
    let mut power = 1.0;
    for (n, b) in seq.betas.iter().enumerate() {
        value += b.norm_sqr() * power * weighted_monomial_integral(n, epsilon);
        power *= r2;
    }
    // B(n+1, ε+1) ≤ B(1, ε+1) = 1/(ε+1); here `power` = r^{2(N+1)}
    let tail_bound = match seq.tail_sup {
        Some(s) if r2 > 0.0 => s * s * PI / (epsilon + 1.0) * power / (1.0 - r2),
        _ => 0.0,
    };
    Ok(SchurValue { value, tail_bound })
}

/// `I(ε, r)` for a kernel `K(t)`, `t = z w̄`, by direct polar quadrature of
/// the defining integral: trapezoidal in angle, adaptive Gauss in radius
/// after the substitution `v = (1−|w|²)^{ε+1}` that absorbs the boundary
/// singularity. Independent of the orthogonality reduction.
pub fn schur_integral_direct<K>(
    kernel: K,
    epsilon: f64,
    z_radius: f64,
    angles: usize,
    tol: f64,
) -> Result<f64>
where
    K: Fn(Complex64) -> Complex64 + Sync,
{
    check_epsilon(epsilon)?;
    if !(0.0..1.0).contains(&z_radius) {
        return Err(invalid("z", format!("|z| = {z_radius} must lie in [0, 1)")));
    }
    let p = 1.0 / (epsilon + 1.0);
    let ring_mean = |s: f64| -> f64 {
        (0..angles)
            .map(|k| {
                let t = Complex64::from_polar(z_radius * s, -2.0 * PI * k as f64 / angles as f64);
                kernel(t).norm_sqr()
            })
            .sum::<f64>()
            / angles as f64
    };
    // ∫_D g (1−|w|²)^ε dA = 2π ∫ mean(s) (1−s²)^ε s ds = π/(ε+1) ∫_0^1 mean(√(1 − v^p)) dv
    let res = AdaptiveIntegrator::new(20, 4000).integrate(
        |v: f64| ring_mean((1.0 - v.powf(p)).max(0.0).sqrt()),
        &[0.0, 1.0],
        tol,
    );
    match res {
        Ok(i) => Ok(PI / (epsilon + 1.0) * i.value),
        Err(fail) => Err(Error::QuadratureFailed {
            index: 0,
            achieved: fail.0.rel_err,
            requested: tol,
        }),
    }
}

/// Schur-test witness over a radius grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurReport {
    pub epsilon: f64,
    /// Conjugate pair with `ε = −1/(pq)`; exists only for `ε ≥ −1/4`.
    pub exponents: Option<(f64, f64)>,
    pub z_grid: Vec<f64>,
    /// `I(ε, z) / (1−|z|²)^ε / sup|β|²`, using the upper value of `I`.
    pub ratios: Vec<f64>,
    pub sup_beta: f64,
    pub empirical_c: f64,
    /// `π (1/(ε+1) − 1/ε)`.
    pub theoretical_c: f64,
    pub passes: bool,
}

/// The bound constant `π(1/(ε+1) − 1/ε)` for `sup |β_n| ≤ 1`.
pub fn schur_constant(epsilon: f64) -> f64 {
    PI * (1.0 / (epsilon + 1.0) - 1.0 / epsilon)
}

/// `ε = −1/(pq)` for conjugate exponents `1/p + 1/q = 1`.
pub fn epsilon_for_exponent(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid("p", format!("{p} must lie in (1, inf)")));
    }
    let q = p / (p - 1.0);
    Ok(-1.0 / (p * q))
}

fn exponents_for(epsilon: f64) -> Option<(f64, f64)> {
    // pq = p²/(p−1) = −1/ε has a solution with p > 1 iff −1/ε ≥ 4
    let m = -1.0 / epsilon;
    let disc = m * m - 4.0 * m;
    (disc >= 0.0).then(|| {
        let p = 0.5 * (m + disc.sqrt());
        (p, p / (p - 1.0))
    })
}

pub fn schur_bound_check(
    seq: &CoefficientSequence,
    epsilon: f64,
    grid: &[f64],
) -> Result<SchurReport> {
    check_epsilon(epsilon)?;
    let sup_beta = seq.sup_abs();
    if !sup_beta.is_finite() || sup_beta == 0.0 {
        return Err(invalid("betas", "need a finite, non-zero sup |beta_n|"));
    }
    let ratios = grid
        .iter()
        .map(|&r| {
            let i = schur_integral(seq, epsilon, r)?;
            Ok(i.upper() / (1.0 - r * r).powf(epsilon) / (sup_beta * sup_beta))
        })
        .collect::<Result<Vec<f64>>>()?;
    let empirical_c = ratios.iter().copied().fold(0.0, f64::max);
    let theoretical_c = schur_constant(epsilon);
    Ok(SchurReport {
        epsilon,
        exponents: exponents_for(epsilon),
        z_grid: grid.to_vec(),
        passes: ratios.iter().all(|r| r.is_finite() && *r > 0.0)
            && empirical_c <= theoretical_c * (1.0 + 1e-6),
        ratios,
        sup_beta,
        empirical_c,
        theoretical_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arithmetic(n: usize) -> CoefficientSequence {
        CoefficientSequence::from_real(&(0..=n).map(|k| (k as f64 + 1.0) / PI).collect::<Vec<_>>())
            .unwrap()
    }

    fn heavy_alphas(n: usize) -> CoefficientSequence {
        let s = KernelSeries::from_weight(RadialWeight::two_level(18.0, 0.25).unwrap()).unwrap();
        CoefficientSequence::from_series(&s, n).unwrap()
    }

    #[test]
    fn necessary_condition_witness() {
        let c = necessary_check(&arithmetic(100)).unwrap();
        assert!(c.finite_trend && !c.conclusive);
        assert!((c.limsup_estimate - 1.0 / PI).abs() < 0.03 / PI);
        let sq =
            CoefficientSequence::from_real(&(0..=100).map(|k| (k * k) as f64).collect::<Vec<_>>())
                .unwrap();
        let c = necessary_check(&sq).unwrap();
        assert!(!c.finite_trend, "{c:?}");
        let c = necessary_check(&heavy_alphas(200)).unwrap();
        assert!(c.finite_trend);
        assert!((c.limsup_estimate - 1.0 / PI).abs() < 0.011 / PI);
        assert!(necessary_check(&arithmetic(9)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_b(&arithmetic(50));
        assert!(d.b.iter().all(|b| (b.re - 1.0 / PI).abs() < 1e-14));
        assert!(d.reconstructs);
        let d = decompose_b(&CoefficientSequence::constant(1.0, 20).unwrap());
        assert_eq!(d.b[0].re, 1.0);
        assert!(d.b[1..].iter().all(|b| b.norm() == 0.0));
        let d = decompose_b(&heavy_alphas(200));
        assert!(d.sup_abs < 1.0);
        assert!((d.b[200].re - 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn sufficient_condition_witness() {
        let c = sufficient_check(&arithmetic(100), None).unwrap();
        assert!((c.sup_diff - 1.0 / PI).abs() < 1e-14);
        assert!(c.bounded_verdict);
        let w = RadialWeight::two_level(18.0, 0.25).unwrap();
        let c = sufficient_check(&heavy_alphas(500), Some(&w)).unwrap();
        assert!(c.bounded_verdict);
        assert!(c.comparability.unwrap().all_within);
        let alt = CoefficientSequence::from_real(
            &(0..=100)
                .map(|k| k as f64 * if k % 2 == 0 { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let c = sufficient_check(&alt, None).unwrap();
        assert!(!c.bounded_verdict, "{c:?}");
        assert_eq!(c.sup_diff, 199.0);
    }

    #[test]
    fn schur_integral_examples() {
        let one = CoefficientSequence::constant(1.0, 4000).unwrap();
        let v = schur_integral(&one, -0.5, 0.0).unwrap();
        assert!((v.value - 2.0 * PI).abs() < 1e-12);
        assert_eq!(v.tail_bound, 0.0);
        let v = schur_integral(&one, -0.5, 0.9).unwrap();
        assert!(v.upper() <= 4.0 * PI * (1.0f64 - 0.81).powf(-0.5));
        assert!(schur_integral(&one, 0.0, 0.5).is_err());
        assert!(schur_integral(&one, -1.0, 0.5).is_err());
        assert!(schur_integral(&one, -0.5, 1.0).is_err());
    }

    #[test]
    fn beta_values_match_recurrence() {
        // B(n+1, a) = B(n, a) · n/(n+a), B(1, a) = 1/a
        for eps in [-0.75, -0.5, -2.0 / 9.0] {
            let a = eps + 1.0;
            let mut b = 1.0 / a;
            for n in 0..3000usize {
                if n > 0 {
                    b *= n as f64 / (n as f64 + a);
                }
                let got = weighted_monomial_integral(n, eps) / PI;
                assert!((got - b).abs() / b < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn direct_quadrature_matches_reduction() {
        let seq = arithmetic(30);
        let poly: Vec<f64> = seq.betas().iter().map(|b| b.re).collect();
        let k = |t: Complex64| {
            poly.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
        };
        let direct = schur_integral_direct(k, -0.25, 0.5, 128, 1e-11).unwrap();
        let reduced = schur_integral(&seq, -0.25, 0.5).unwrap().value;
        assert!(
            (direct - reduced).abs() / reduced < 1e-8,
            "{direct} vs {reduced}"
        );
    }

    #[test]
    fn schur_reports() {
        let one = CoefficientSequence::constant(1.0, 5000).unwrap();
        let r = schur_bound_check(&one, -0.5, &[0.0, 0.5, 0.9, 0.99]).unwrap();
        assert!(r.passes, "{r:?}");
        let eps = epsilon_for_exponent(3.0).unwrap();
        assert!((eps + 2.0 / 9.0).abs() < 1e-15);
        let r = schur_bound_check(&one, eps, &[0.0, 0.5, 0.9, 0.99]).unwrap();
        assert!(r.passes);
        let (p, q) = r.exponents.unwrap();
        assert!((p - 3.0).abs() < 1e-12 && (q - 1.5).abs() < 1e-12);
        let s = KernelSeries::from_weight(RadialWeight::two_level(18.0, 0.25).unwrap()).unwrap();
        let b = CoefficientSequence::differences_of(&s, 400).unwrap();
        assert!((b.tail_sup().unwrap() - 1.0 / PI).abs() < 1e-12);
        let alpha = |n: i32| (n + 1) as f64 / PI / (1.0 + 17.0 * 16f64.powi(-(n + 1)));
        let sup = (0..=400)
            .map(|n| {
                if n == 0 {
                    alpha(0)
                } else {
                    alpha(n) - alpha(n - 1)
                }
            })
            .fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(
            (b.sup_abs() - sup).abs() < 1e-12 * sup,
            "{} vs {sup}",
            b.sup_abs()
        );
        let r = schur_bound_check(&b, -0.25, &[0.0, 0.3, 0.6, 0.9, 0.99]).unwrap();
        assert!(r.passes);
        assert!(exponents_for(-0.5).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn reduction_matches_direct(
            betas in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3..16),
            eps in -0.9f64..-0.1,
            r in 0.0f64..0.95,
        ) {
            let seq = CoefficientSequence::new(betas.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap();
            let coeffs = seq.betas().to_vec();
            let k = |t: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c);
            let direct = schur_integral_direct(k, eps, r, 64, 1e-10).unwrap();
            let reduced = schur_integral(&seq, eps, r).unwrap().value;
            prop_assert!((direct - reduced).abs() <= 1e-6 * reduced);
        }

        #[test]
        fn monotone_in_radius(
            betas in proptest::collection::vec(0.0f64..2.0, 3..40),
            eps in -0.9f64..-0.1,
            r1 in 0.0f64..0.99,
            r2 in 0.0f64..0.99,
        ) {
            let seq = CoefficientSequence::from_real(&betas).unwrap();
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let a = schur_integral(&seq, eps, lo).unwrap().value;
            let b = schur_integral(&seq, eps, hi).unwrap().value;
            prop_assert!(a <= b * (1.0 + 1e-14));
        }

        #[test]
        fn reconstruction_holds(betas in proptest::collection::vec(-1e3f64..1e3, 3..200)) {
            let seq = CoefficientSequence::from_real(&betas).unwrap();
            prop_assert!(decompose_b(&seq).reconstructs);
        }
    }
}
