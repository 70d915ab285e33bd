//! The weighted Bergman kernel `B_λ(z, w) = Σ α_n (z w̄)ⁿ`.
//!
//! Everything on the diagonal is expressed through the single variable
//! `t = z w̄` and the power series `F(t) = Σ α_n tⁿ`.

use std::f64::consts::PI;
use std::sync::RwLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::weights::{
    moment_closed_form_step, moment_excess, pow_index, RadialWeight, TailProfile, DEFAULT_TOL,
};

/// Largest coefficient index a weight-backed series will compute.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone)]
enum Source {
    Weight { weight: RadialWeight, tol: f64 },
    Fixed,
}

/// Coefficients `α_0, α_1, ...` of a kernel, extended on demand.
///
/// Weight-backed series compute further coefficients lazily into an
/// append-only cache, so a series can be shared between threads.
#[derive(Debug)]
pub struct KernelSeries {
    source: Source,
    comparability: f64,
    scale: f64,
    overrides: Vec<(usize, f64)>,
    budget: usize,
    cache: RwLock<Vec<f64>>,
    // scaled moment excess per index (see `moment_excess`); NaN when unknown
    excess: RwLock<Vec<f64>>,
}

/// A real number stored as `mantissa · exp(ln_scale)`, for quantities far
/// below the range of `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl ScaledValue {
    pub const ZERO: Self = Self {
        mantissa: 0.0,
        ln_scale: 0.0,
    };

    pub fn new(value: f64) -> Self {
        Self {
            mantissa: value,
            ln_scale: 0.0,
        }
    }

    /// Nearest `f64`; underflows to zero.
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.ln_scale.exp()
        }
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// `log10 |x|`, `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        self.mantissa.abs().log10() + self.ln_scale / std::f64::consts::LN_10
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            mantissa: self.mantissa * factor,
            ..self
        }
    }

    /// Sum of terms, aligned to the largest scale present.
    pub fn sum(terms: &[Self]) -> Self {
        let top = terms
            .iter()
            .filter(|t| t.mantissa != 0.0)
            .map(|t| t.ln_scale)
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let mantissa = terms
            .iter()
            .filter(|t| t.mantissa != 0.0)
            .map(|t| t.mantissa * (t.ln_scale - top).exp())
            .sum();
        Self {
            mantissa,
            ln_scale: top,
        }
    }
}

impl Clone for KernelSeries {
    fn clone(&self) -> Self {
        Self {
            source: self.source.clone(),
            comparability: self.comparability,
            scale: self.scale,
            overrides: self.overrides.clone(),
            budget: self.budget,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
            excess: RwLock::new(self.excess.read().expect("cache lock").clone()),
        }
    }
}

/// A kernel value with a bound on its truncation and rounding error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: Complex64,
    pub err_bound: f64,
    pub n_used: usize,
}

impl KernelSeries {
    pub fn from_weight(weight: RadialWeight) -> Result<Self> {
        Self::from_weight_with_tol(weight, DEFAULT_TOL)
    }

    pub fn from_weight_with_tol(weight: RadialWeight, tol: f64) -> Result<Self> {
        weight.validate()?;
        let comparability = weight.comparability();
        let s = Self {
            source: Source::Weight { weight, tol },
            comparability,
            scale: 1.0,
            overrides: Vec::new(),
            budget: DEFAULT_BUDGET,
            cache: RwLock::new(Vec::new()),
            excess: RwLock::new(Vec::new()),
        };
        s.ensure(32)?;
        Ok(s)
    }

    /// A series with a finite list of coefficients and a declared bound
    /// `α_n ≤ C (n+1)/π` used for tail estimates.
    pub fn from_coefficients(coeffs: Vec<f64>, comparability: f64) -> Self {
        Self {
            source: Source::Fixed,
            comparability,
            scale: 1.0,
            overrides: Vec::new(),
            budget: coeffs.len().saturating_sub(1),
            excess: RwLock::new(vec![f64::NAN; coeffs.len()]),
            cache: RwLock::new(coeffs),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        if matches!(self.source, Source::Weight { .. }) {
            self.budget = budget;
        }
        self
    }

    /// Every coefficient multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0, "scale factor must be positive");
        let mut s = self.clone();
        s.scale *= factor;
        s.overrides.iter_mut().for_each(|o| o.1 *= factor);
        s.cache
            .get_mut()
            .expect("cache lock")
            .iter_mut()
            .for_each(|a| *a *= factor);
        s
    }

    /// The same series with `α_n` replaced by `value`.
    pub fn with_coefficient(&self, n: usize, value: f64) -> Result<Self> {
        self.ensure(n)?;
        let mut s = self.clone();
        s.overrides.retain(|o| o.0 != n);
        s.overrides.push((n, value));
        s.cache.get_mut().expect("cache lock")[n] = value;
        Ok(s)
    }

    pub fn weight(&self) -> Option<&RadialWeight> {
        match &self.source {
            Source::Weight { weight, .. } => Some(weight),
            Source::Fixed => None,
        }
    }

    /// Constant `C` in `α_n ≤ C (n+1)/π`, including any rescaling.
    pub fn comparability(&self) -> f64 {
        self.comparability * self.scale
    }

    /// Largest index that can be computed.
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Large-index structure of the coefficients, when a weight backs the series.
    pub fn tail_profile(&self) -> Option<TailProfile> {
        let w = self.weight()?;
        let p = w.tail_profile();
        if self.overrides.iter().any(|o| o.0 > 0 && w.is_singular()) {
            return None;
        }
        Some(TailProfile {
            limit: p.limit / self.scale,
            radius: p.radius,
            deviation: p.deviation / self.scale,
        })
    }

    fn ensure(&self, n: usize) -> Result<()> {
        let have = self.cache.read().expect("cache lock").len();
        if n < have {
            return Ok(());
        }
        let (weight, tol) = match &self.source {
            Source::Weight { weight, tol } => (weight, *tol),
            Source::Fixed => {
                return Err(Error::ToleranceUnreachable {
                    requested: 0.0,
                    achieved: f64::INFINITY,
                    budget: have.saturating_sub(1),
                })
            }
        };
        if n > self.budget {
            return Err(invalid(
                "n",
                format!("index {n} exceeds the coefficient budget {}", self.budget),
            ));
        }
        // grow geometrically so repeated extension stays cheap
        let target = (n + 1).max(2 * have).min(self.budget + 1);
        let profile = weight.tail_profile();
        let entry = |k: usize| -> Result<(f64, f64)> {
            match weight {
                RadialWeight::DiracAugmented { .. } => {
                    Ok((moment_closed_form_step(weight, k)?.alpha, f64::NAN))
                }
                RadialWeight::Sampled { .. } => {
                    let e = moment_excess(weight, k, tol)?;
                    let s = profile.limit + e * pow_index(profile.radius, 2 * k + 2);
                    Ok(((k as f64 + 1.0) / (PI * s), e))
                }
                _ => Ok((
                    moment_closed_form_step(weight, k)?.alpha,
                    moment_excess(weight, k, tol)?,
                )),
            }
        };
        let fresh: Vec<(f64, f64)> = if matches!(weight, RadialWeight::Sampled { .. }) {
            (have..target)
                .into_par_iter()
                .map(entry)
                .collect::<Result<_>>()?
        } else {
            (have..target).map(entry).collect::<Result<_>>()?
        };
        let mut cache = self.cache.write().expect("cache lock");
        let mut excess = self.excess.write().expect("cache lock");
        if cache.len() == have {
            for (a, e) in fresh {
                cache.push(a * self.scale);
                excess.push(e);
            }
            for &(k, v) in &self.overrides {
                if k < cache.len() {
                    cache[k] = v;
                }
            }
        }
        Ok(())
    }

    fn is_overridden(&self, k: usize) -> bool {
        self.overrides.iter().any(|o| o.0 == k)
    }

    /// `δ_j = α_j − (j+1)/(π·limit)`, the departure from the limiting arithmetic sequence.
    fn delta(&self, j: usize) -> Result<ScaledValue> {
        let weight = self.weight().expect("weight-backed series");
        let p = weight.tail_profile();
        let base = self.scale * (j as f64 + 1.0) / (PI * p.limit);
        let alpha = self.alpha(j)?;
        if self.is_overridden(j) || weight.is_singular() {
            return Ok(ScaledValue::new(alpha - base));
        }
        if p.deviation == 0.0 || p.radius == 0.0 {
            return Ok(ScaledValue::ZERO);
        }
        let e = self.excess.read().expect("cache lock")[j];
        let k = 2 * j + 2;
        let s = p.limit + e * pow_index(p.radius, k);
        Ok(ScaledValue {
            mantissa: -self.scale * (j as f64 + 1.0) * e / (PI * p.limit * s),
            ln_scale: k as f64 * p.radius.ln(),
        })
    }

    /// `α_k − 2α_{k−1} + α_{k−2}`, evaluated without cancellation for
    /// weight-backed series (the limiting arithmetic part drops out exactly).
    pub fn second_difference(&self, k: usize) -> Result<ScaledValue> {
        if k < 2 {
            return Err(invalid("k", "second differences start at k = 2"));
        }
        self.ensure(k)?;
        if self.weight().is_none() {
            let a = self.coeffs(k)?;
            return Ok(ScaledValue::new(a[k] - 2.0 * a[k - 1] + a[k - 2]));
        }
        Ok(ScaledValue::sum(&[
            self.delta(k)?,
            self.delta(k - 1)?.scale(-2.0),
            self.delta(k - 2)?,
        ]))
    }

    /// `α_k − α_{k−1}`.
    pub fn first_difference(&self, k: usize) -> Result<f64> {
        if k < 1 {
            return Err(invalid("k", "first differences start at k = 1"));
        }
        self.ensure(k)?;
        match self.weight() {
            None => {
                let a = self.coeffs(k)?;
                Ok(a[k] - a[k - 1])
            }
            Some(w) => {
                let limit = self.scale / (PI * w.tail_profile().limit);
                let d = ScaledValue::sum(&[self.delta(k)?, self.delta(k - 1)?.scale(-1.0)]);
                Ok(limit + d.value())
            }
        }
    }

    pub fn alpha(&self, n: usize) -> Result<f64> {
        self.ensure(n)?;
        Ok(self.cache.read().expect("cache lock")[n])
    }

    /// `α_0..=α_n`.
    pub fn coeffs(&self, n: usize) -> Result<Vec<f64>> {
        self.ensure(n)?;
        Ok(self.cache.read().expect("cache lock")[..=n].to_vec())
    }

    /// Majorant of `|Σ_{n>N} α_n tⁿ|` on `|t| ≤ ρ` from `α_n ≤ C(n+1)/π`:
    /// `(C/π) ρ^{N+1} ((N+2) − (N+1)ρ) / (1−ρ)²`.
    pub fn tail_bound(&self, rho: f64, n: usize) -> Result<f64> {
        if !(0.0..1.0).contains(&rho) {
            return Err(invalid("rho", format!("radius {rho} must lie in [0, 1)")));
        }
        Ok(tail_majorant(self.comparability(), rho, n))
    }

    /// Smallest truncation `N` with `tail_bound(ρ, N) ≤ tol`.
    pub fn truncation_for(&self, rho: f64, tol: f64) -> Result<usize> {
        let c = self.comparability();
        let achieved = |n| tail_majorant(c, rho, n);
        if achieved(self.budget) > tol {
            return Err(Error::ToleranceUnreachable {
                requested: tol,
                achieved: achieved(self.budget),
                budget: self.budget,
            });
        }
        let (mut lo, mut hi) = (0usize, self.budget);
        if achieved(0) <= tol {
            return Ok(0);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if achieved(mid) <= tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Partial sum `Σ_{n≤N} α_n tⁿ` and a bound on its rounding error.
    pub fn partial_sum(&self, t: Complex64, n: usize) -> Result<(Complex64, f64)> {
        let coeffs = self.coeffs(n)?;
        Ok(horner(&coeffs, t))
    }

    /// `F(t) = Σ α_n tⁿ` to within `tol`.
    pub fn eval_diagonal(&self, t: Complex64, tol: f64) -> Result<KernelValue> {
        let rho = t.norm();
        if rho >= 1.0 {
            return Err(invalid("t", format!("|t| = {rho} must be < 1")));
        }
        let n = self.truncation_for(rho, tol)?;
        let tail = tail_majorant(self.comparability(), rho, n);
        let (value, rounding) = self.partial_sum(t, n)?;
        Ok(KernelValue {
            value,
            err_bound: tail + rounding,
            n_used: n,
        })
    }

    /// `B_λ(z, w)` with certified truncation error at most `tol`.
    pub fn kernel_eval(&self, z: Complex64, w: Complex64, tol: f64) -> Result<KernelValue> {
        if z.norm() >= 1.0 || w.norm() >= 1.0 {
            return Err(invalid(
                "z, w",
                "both points must lie in the open unit disc",
            ));
        }
        self.eval_diagonal(z * w.conj(), tol)
    }

    /// Coefficients of `G_N(t) = (1−t)² Σ_{n≤N} α_n tⁿ`, of degree `N+2`.
    ///
    /// Entries `2..=N` are the second differences `α_k − 2α_{k−1} + α_{k−2}`.
    pub fn diagonal_poly(&self, n: usize) -> Result<Vec<f64>> {
        if n < 2 {
            return Err(invalid("N", "the diagonal polynomial needs N >= 2"));
        }
        let a = self.coeffs(n)?;
        let mut g = Vec::with_capacity(n + 3);
        g.push(a[0]);
        g.push(a[1] - 2.0 * a[0]);
        for k in 2..=n {
            g.push(self.second_difference(k)?.value());
        }
        g.push(a[n - 1] - 2.0 * a[n]);
        g.push(a[n]);
        Ok(g)
    }
}

pub(crate) fn tail_majorant(c: f64, rho: f64, n: usize) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    c / PI * pow_index(rho, n + 1) * ((nf + 2.0) - (nf + 1.0) * rho) / ((1.0 - rho) * (1.0 - rho))
}

/// Horner evaluation with the standard a-priori rounding bound
/// `γ_{2n} Σ |a_k| |t|^k`.
pub(crate) fn horner(coeffs: &[f64], t: Complex64) -> (Complex64, f64) {
    let r = t.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for &a in coeffs.iter().rev() {
        acc = acc * t + a;
        abs = abs * r + a.abs();
    }
    let k = 4.0 * coeffs.len() as f64 + 4.0;
    let gamma = k * f64::EPSILON / (1.0 - k * f64::EPSILON);
    (acc, gamma * abs)
}

/// Horner evaluation of a polynomial and its derivative.
pub(crate) fn horner_with_derivative(coeffs: &[f64], t: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        d = d * t + p;
        p = p * t + a;
    }
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit() -> KernelSeries {
        KernelSeries::from_weight(RadialWeight::constant(1.0).unwrap()).unwrap()
    }

    fn heavy_step() -> KernelSeries {
        KernelSeries::from_weight(RadialWeight::two_level(18.0, 0.25).unwrap()).unwrap()
    }

    #[test]
    fn tail_bound_values() {
        let s = unit();
        assert_eq!(s.tail_bound(0.0, 7).unwrap(), 0.0);
        assert!((s.tail_bound(0.5, 0).unwrap() - 3.0 / PI).abs() < 1e-15);
        // Σ_{n≥1} (n+1) 2^{-n} = 3
        let direct: f64 = (1..200).map(|n| (n as f64 + 1.0) * 0.5f64.powi(n)).sum();
        assert!((direct - 3.0).abs() < 1e-12);
        assert!(s.tail_bound(1.0, 3).is_err());
    }

    #[test]
    fn tail_bound_decreases() {
        let s = heavy_step();
        let mut prev = f64::INFINITY;
        for n in 0..3000 {
            let b = s.tail_bound(0.9, n).unwrap();
            assert!(b <= prev);
            prev = b;
        }
        assert!(prev < 1e-100);
    }

    #[test]
    fn unweighted_kernel_closed_form() {
        let v = unit().kernel_eval(c(0.5, 0.0), c(0.5, 0.0), 1e-12).unwrap();
        assert!((v.value - c(16.0 / (9.0 * PI), 0.0)).norm() < 1e-12);
        assert!(v.err_bound <= 1e-12 + 1e-14);
    }

    #[test]
    fn kernel_at_origin_is_alpha0() {
        let s = heavy_step();
        let v = s.kernel_eval(c(0.0, 0.0), c(0.3, -0.7), 1e-12).unwrap();
        assert_eq!(v.value, c(s.alpha(0).unwrap(), 0.0));
        assert_eq!(v.n_used, 0);
    }

    #[test]
    fn unreachable_tolerance() {
        let s = unit().with_budget(10);
        match s.kernel_eval(c(0.9, 0.0), c(0.9, 0.0), 1e-12) {
            Err(Error::ToleranceUnreachable {
                budget, achieved, ..
            }) => {
                assert_eq!(budget, 10);
                assert!(achieved > 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert!(unit().kernel_eval(c(1.0, 0.0), c(0.1, 0.0), 1e-8).is_err());
    }

    #[test]
    fn diagonal_poly_structure() {
        let u = unit().diagonal_poly(4).unwrap();
        assert_eq!(u.len(), 7);
        assert!((u[0] - 1.0 / PI).abs() < 1e-16);
        assert!(u[1].abs() < 1e-15);
        assert!(u[2..=4].iter().all(|d| d.abs() < 1e-15));
        let s = heavy_step();
        let g = s.diagonal_poly(400).unwrap();
        assert!((g[1] - 8160.0 / (9009.0 * PI)).abs() < 1e-15);
        assert!(g[2..=200].iter().all(|&d| d < 0.0));
        // far terms underflow to zero in f64 but never change sign
        assert!(g[2..=400].iter().all(|&d| d <= 0.0));
        let a = s.coeffs(400).unwrap();
        assert!((g[401] - (a[399] - 2.0 * a[400])).abs() < 1e-12);
        assert_eq!(g[402], a[400]);
        assert!(s.diagonal_poly(1).is_err());
    }

    #[test]
    fn second_differences_keep_sign_far_out() {
        let s = heavy_step();
        for k in 2..=600 {
            let d = s.second_difference(k).unwrap();
            assert_eq!(d.signum(), -1.0, "k={k}");
        }
        // Δ²_k ≈ -17·(k-1)/π · 16^{-(k-1)} · (1 - ...) for large k
        let d = s.second_difference(500).unwrap();
        let approx = (17.0 * 499.0 / PI).log10() - 499.0 * 16f64.log10();
        assert!((d.log10_abs() - approx).abs() < 0.1, "{}", d.log10_abs());
        // agrees with naive differencing where that is still accurate
        let a = s.coeffs(12).unwrap();
        for k in 2..=6 {
            let naive = a[k] - 2.0 * a[k - 1] + a[k - 2];
            assert!((s.second_difference(k).unwrap().value() - naive).abs() < 1e-14);
        }
        let u = unit();
        assert_eq!(u.second_difference(40).unwrap().value(), 0.0);
        assert!((s.first_difference(1).unwrap() - (a[1] - a[0])).abs() < 1e-15);
        assert!((s.first_difference(300).unwrap() - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn scaled_value_sum_aligns() {
        let a = ScaledValue {
            mantissa: 1.0,
            ln_scale: -2000.0,
        };
        let b = ScaledValue {
            mantissa: -3.0,
            ln_scale: -2000.0,
        };
        let s = ScaledValue::sum(&[a, b, ScaledValue::ZERO]);
        assert_eq!(s.mantissa, -2.0);
        assert_eq!(s.value(), 0.0);
        assert_eq!(s.signum(), -1.0);
    }

    #[test]
    fn sampled_series_matches_moment_table() {
        use crate::weights::moment_table;
        let w = RadialWeight::sampled(vec![0.0, 0.2, 0.5], vec![5.0, 1.0, 2.0]).unwrap();
        let s = KernelSeries::from_weight(w.clone()).unwrap();
        let t = moment_table(&w, 40, 1e-12).unwrap();
        for (n, a) in t.alphas().into_iter().enumerate() {
            assert!((s.alpha(n).unwrap() - a).abs() / a < 1e-11, "n={n}");
        }
    }

    #[test]
    fn scaling_and_overrides() {
        let s = heavy_step();
        let t = s.scaled(3.0);
        assert!((t.alpha(5).unwrap() - 3.0 * s.alpha(5).unwrap()).abs() < 1e-14);
        assert!((t.alpha(500).unwrap() - 3.0 * s.alpha(500).unwrap()).abs() < 1e-11);
        assert_eq!(t.comparability(), 54.0);
        let p = t.tail_profile().unwrap();
        assert!((p.limit_difference() - 3.0 / PI).abs() < 1e-15);
        let o = s.with_coefficient(0, 1.0).unwrap();
        assert_eq!(o.alpha(0).unwrap(), 1.0);
        assert_eq!(o.alpha(1).unwrap(), s.alpha(1).unwrap());
        let o2 = o.scaled(2.0);
        assert_eq!(o2.alpha(0).unwrap(), 2.0);
    }

    #[test]
    fn fixed_series_cannot_extend() {
        let f = KernelSeries::from_coefficients(vec![1.0, 2.0, 3.0], 10.0);
        assert_eq!(f.coeffs(2).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(f.alpha(3).is_err());
    }
}
