//! Radial weights comparable to 1 and their moment sequences.
//!
//! A radial weight `λ` on the unit disc has moments
//! `μ_n = 2π ∫₀¹ r^{2n+1} λ(r) dr`, the squared norms of the monomials `zⁿ`
//! in `A²(λ)`. The kernel coefficients are `α_n = 1/μ_n`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::AdaptiveIntegrator;

/// Default relative tolerance for moment quadrature.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A radial weight on the unit disc.
///
/// Construct through the checked constructors ([`RadialWeight::step`],
/// [`RadialWeight::sampled`], ...) or [`RadialWeight::from_json`]; the
/// variants are public so that callers can match on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RadialWeight {
    Constant {
        value: f64,
    },
    /// `segments[i] = (r_i, v_i)`: the weight is `v_i` on `(r_{i-1}, r_i]`, with `r_{-1} = 0`.
    Step {
        segments: Vec<(f64, f64)>,
    },
    /// Piecewise-linear interpolation of `values` at `grid`, held constant
    /// before the first and after the last knot.
    Sampled {
        grid: Vec<f64>,
        values: Vec<f64>,
    },
    /// Lebesgue measure plus a point mass `mass` at the origin. Singular;
    /// only closed-form moments are available.
    #[serde(rename = "dirac")]
    DiracAugmented {
        mass: f64,
    },
}

impl RadialWeight {
    pub fn constant(value: f64) -> Result<Self> {
        let w = Self::Constant { value };
        w.validate()?;
        Ok(w)
    }

    pub fn step(segments: Vec<(f64, f64)>) -> Result<Self> {
        let w = Self::Step { segments };
        w.validate()?;
        Ok(w)
    }

    /// The two-level weight equal to `a` on `[0, x]` and `1` on `(x, 1]`.
    pub fn two_level(a: f64, x: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(invalid("x", format!("breakpoint {x} must lie in (0, 1)")));
        }
        Self::step(vec![(x, a), (1.0, 1.0)])
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let w = Self::Sampled { grid, values };
        w.validate()?;
        Ok(w)
    }

    pub fn dirac(mass: f64) -> Result<Self> {
        let w = Self::DiracAugmented { mass };
        w.validate()?;
        Ok(w)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidWeight(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weights always serialize")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWeight(m));
        match self {
            Self::Constant { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return bad(format!("constant value {value} must be positive"));
                }
            }
            Self::Step { segments } => {
                if segments.is_empty() {
                    return bad("step weight needs at least one segment".into());
                }
                let mut prev = 0.0;
                for &(r, v) in segments {
                    if !(r > prev) {
                        return bad(format!(
                            "breakpoints must increase strictly (got {r} after {prev})"
                        ));
                    }
                    if !(v.is_finite() && v > 0.0) {
                        return bad(format!("segment value {v} must be positive"));
                    }
                    prev = r;
                }
                if prev != 1.0 {
                    return bad(format!("last breakpoint must be 1, got {prev}"));
                }
            }
            Self::Sampled { grid, values } => {
                if grid.is_empty() || grid.len() != values.len() {
                    return bad("sampled weight needs equally many (>= 1) radii and values".into());
                }
                if !(grid[0] >= 0.0) || !(grid[grid.len() - 1] < 1.0) {
                    return bad("sample radii must lie in [0, 1)".into());
                }
                if grid.windows(2).any(|w| !(w[1] > w[0])) {
                    return bad("sample radii must increase strictly".into());
                }
                if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                    return bad("sample values must be positive".into());
                }
            }
            Self::DiracAugmented { mass } => {
                if !(mass.is_finite() && *mass >= 0.0) {
                    return bad(format!("point mass {mass} must be non-negative"));
                }
            }
        }
        Ok(())
    }

    /// Density of the absolutely continuous part at radius `r`.
    pub fn value_at(&self, r: f64) -> f64 {
        match self {
            Self::Constant { value } => *value,
            Self::Step { segments } => segments
                .iter()
                .find(|(end, _)| r <= *end)
                .or(segments.last())
                .map(|s| s.1)
                .unwrap_or(1.0),
            Self::Sampled { grid, values } => {
                let i = grid.partition_point(|&g| g <= r);
                if i == 0 {
                    values[0]
                } else if i == grid.len() {
                    values[grid.len() - 1]
                } else {
                    let (r0, r1) = (grid[i - 1], grid[i]);
                    let s = (r - r0) / (r1 - r0);
                    values[i - 1] + s * (values[i] - values[i - 1])
                }
            }
            Self::DiracAugmented { .. } => 1.0,
        }
    }

    fn extrema(&self) -> (f64, f64) {
        let fold = |it: &mut dyn Iterator<Item = f64>| {
            it.fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
        };
        match self {
            Self::Constant { value } => (*value, *value),
            Self::Step { segments } => fold(&mut segments.iter().map(|s| s.1)),
            Self::Sampled { values, .. } => fold(&mut values.iter().copied()),
            Self::DiracAugmented { .. } => (1.0, 1.0),
        }
    }

    /// The smallest `C ≥ 1` with `1/C ≤ λ ≤ C`.
    ///
    /// For [`RadialWeight::DiracAugmented`] this is the constant of the
    /// Lebesgue part only.
    pub fn comparability(&self) -> f64 {
        let (lo, hi) = self.extrema();
        hi.max(1.0 / lo).max(1.0)
    }

    /// Radii in `[0, 1]` across which the weight may fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![0.0];
        match self {
            Self::Step { segments } => b.extend(segments.iter().map(|s| s.0)),
            Self::Sampled { grid, .. } => {
                b.extend(grid.iter().copied().filter(|&g| g > 0.0));
                b.push(1.0);
            }
            _ => b.push(1.0),
        }
        b.dedup();
        b
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Self::DiracAugmented { .. })
    }

    /// Structure of the moments for large `n`; see [`TailProfile`].
    pub fn tail_profile(&self) -> TailProfile {
        match self {
            Self::Constant { value } => TailProfile {
                limit: *value,
                radius: 0.0,
                deviation: 0.0,
            },
            Self::Step { segments } => {
                let limit = segments[segments.len() - 1].1;
                let radius = if segments.len() > 1 {
                    segments[segments.len() - 2].0
                } else {
                    0.0
                };
                let deviation = segments
                    .iter()
                    .map(|s| (s.1 - limit).abs())
                    .fold(0.0, f64::max);
                TailProfile {
                    limit,
                    radius,
                    deviation,
                }
            }
            Self::Sampled { grid, values } => {
                let limit = values[values.len() - 1];
                let deviation = values.iter().map(|v| (v - limit).abs()).fold(0.0, f64::max);
                TailProfile {
                    limit,
                    radius: if deviation > 0.0 {
                        grid[grid.len() - 1]
                    } else {
                        0.0
                    },
                    deviation,
                }
            }
            // exact for n >= 1; only μ₀ carries the point mass
            Self::DiracAugmented { .. } => TailProfile {
                limit: 1.0,
                radius: 0.0,
                deviation: 0.0,
            },
        }
    }
}

/// Large-index structure of the moments.
///
/// Writing `(n+1) μ_n / π = limit + e_n`, every weight here satisfies
/// `|e_n| ≤ deviation · radius^{2n+2}`, because the weight equals `limit`
/// on `(radius, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProfile {
    pub limit: f64,
    pub radius: f64,
    pub deviation: f64,
}

impl TailProfile {
    /// Relative perturbation `η_n = deviation · radius^{2n+2} / limit`.
    pub fn eta(&self, n: usize) -> f64 {
        if self.deviation == 0.0 {
            return 0.0;
        }
        self.deviation * pow_index(self.radius, 2 * n + 2) / self.limit
    }

    /// Bound on `|α_n − (n+1)/(π·limit)|`, infinite when `η_n ≥ 1`.
    pub fn alpha_deviation_bound(&self, n: usize) -> f64 {
        let eta = self.eta(n);
        if eta >= 1.0 {
            return f64::INFINITY;
        }
        (n as f64 + 1.0) / (PI * self.limit) * eta / (1.0 - eta)
    }

    /// Bound on `Σ_{j ≥ m} |α_j − (j+1)/(π·limit)|`.
    pub fn alpha_deviation_tail(&self, m: usize) -> f64 {
        if self.deviation == 0.0 {
            return 0.0;
        }
        let eta = self.eta(m);
        if eta >= 1.0 {
            return f64::INFINITY;
        }
        let q = self.radius * self.radius;
        let c = self.deviation / (PI * self.limit * self.limit * (1.0 - eta));
        // Σ_{j≥m} (j+1) q^{j+1}, in logs; an underflowed bound must not read as zero
        let mf = m as f64;
        let ln_bound =
            c.ln() + (mf + 1.0) * q.ln() + ((mf + 1.0) - mf * q).ln() - 2.0 * (1.0 - q).ln();
        (ln_bound.exp() * (1.0 + 1e-12)).max(f64::MIN_POSITIVE)
    }

    /// `lim (α_{n+1} − α_n) = 1/(π·limit)`.
    pub fn limit_difference(&self) -> f64 {
        1.0 / (PI * self.limit)
    }
}

pub(crate) fn pow_index(x: f64, k: usize) -> f64 {
    if k <= i32::MAX as usize {
        x.powi(k as i32)
    } else {
        x.powf(k as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    Quadrature,
}

/// One row of a [`MomentTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moment {
    pub n: usize,
    pub mu: f64,
    pub alpha: f64,
    pub method: MomentMethod,
    /// Bound on the relative error of `mu`.
    pub err: f64,
}

impl Moment {
    fn new(n: usize, mu: f64, method: MomentMethod, err: f64) -> Self {
        Self {
            n,
            mu,
            alpha: 1.0 / mu,
            method,
            err,
        }
    }
}

/// Exact moment of a piecewise-constant weight:
/// `μ_n = π/(n+1) · Σ v_i (r_i^{2n+2} − r_{i−1}^{2n+2})`.
///
/// Constant weights are accepted as one-segment steps and the point mass of a
/// [`RadialWeight::DiracAugmented`] weight is added to `μ₀`.
pub fn moment_closed_form_step(weight: &RadialWeight, n: usize) -> Result<Moment> {
    let k = 2 * n + 2;
    let scale = PI / (n as f64 + 1.0);
    let (sum, terms) = match weight {
        RadialWeight::Constant { value } => (*value, 1),
        RadialWeight::Step { segments } => {
            let mut prev = 0.0;
            let mut sum = 0.0;
            for &(r, v) in segments {
                let hi = pow_index(r, k);
                sum += v * (hi - prev);
                prev = hi;
            }
            (sum, segments.len())
        }
        RadialWeight::DiracAugmented { mass } => {
            let mu = if n == 0 { PI + mass } else { scale };
            return Ok(Moment::new(
                n,
                mu,
                MomentMethod::ClosedForm,
                4.0 * f64::EPSILON,
            ));
        }
        RadialWeight::Sampled { .. } => {
            return Err(Error::Unsupported(
                "closed-form moments need a piecewise-constant weight",
            ))
        }
    };
    let err = (4 * terms + 4) as f64 * f64::EPSILON;
    Ok(Moment::new(n, scale * sum, MomentMethod::ClosedForm, err))
}

/// Moment by adaptive Gauss panels, with every breakpoint of the weight as a
/// hard panel boundary.
pub fn moment_quadrature(weight: &RadialWeight, n: usize, tol: f64) -> Result<Moment> {
    moment_quadrature_with(&AdaptiveIntegrator::default(), weight, n, tol)
}

pub(crate) fn moment_quadrature_with(
    integrator: &AdaptiveIntegrator,
    weight: &RadialWeight,
    n: usize,
    tol: f64,
) -> Result<Moment> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("{tol} must be positive")));
    }
    if weight.is_singular() {
        return Err(Error::Unsupported(
            "singular weights have no quadrature moments",
        ));
    }
    let p = 2 * n as i32 + 1;
    let breaks = weight.breakpoints();
    let res = integrator.integrate(|r| r.powi(p) * weight.value_at(r), &breaks, tol);
    match res {
        Ok(i) => Ok(Moment::new(
            n,
            2.0 * PI * i.value,
            MomentMethod::Quadrature,
            i.rel_err,
        )),
        Err(fail) => Err(Error::QuadratureFailed {
            index: n,
            achieved: fail.0.rel_err,
            requested: tol,
        }),
    }
}

/// Scaled excess `ẽ_n` of the moment over its limiting profile.
///
/// With `(n+1) μ_n / π = limit + e_n` (see [`TailProfile`]) this returns
/// `ẽ_n = e_n / radius^{2n+2}`, which stays of order `deviation` for every
/// `n`, so differences of coefficients can be formed without cancellation or
/// underflow. Not defined for singular weights.
pub fn moment_excess(weight: &RadialWeight, n: usize, tol: f64) -> Result<f64> {
    let p = weight.tail_profile();
    if p.deviation == 0.0 || p.radius == 0.0 {
        return Ok(0.0);
    }
    let k = 2 * n + 2;
    match weight {
        RadialWeight::Step { segments } => {
            let mut prev = 0.0;
            let mut sum = 0.0;
            for &(r, v) in segments {
                if r > p.radius {
                    break;
                }
                let hi = pow_index(r / p.radius, k);
                sum += (v - p.limit) * (hi - prev);
                prev = hi;
            }
            Ok(sum)
        }
        RadialWeight::Sampled { .. } => {
            let breaks: Vec<f64> = weight
                .breakpoints()
                .into_iter()
                .filter(|&b| b <= p.radius)
                .map(|b| b / p.radius)
                .chain(std::iter::once(1.0))
                .collect::<Vec<_>>();
            let mut breaks = breaks;
            breaks.dedup();
            let e = (k - 1) as i32;
            let res = AdaptiveIntegrator::default().integrate_l1(
                |u| (weight.value_at(u * p.radius) - p.limit) * u.powi(e),
                &breaks,
                tol,
            );
            match res {
                Ok(i) => Ok(k as f64 * i.value),
                Err(fail) => Err(Error::QuadratureFailed {
                    index: n,
                    achieved: fail.0.rel_err,
                    requested: tol,
                }),
            }
        }
        RadialWeight::Constant { .. } => Ok(0.0),
        RadialWeight::DiracAugmented { .. } => {
            Err(Error::Unsupported("singular weights have no moment excess"))
        }
    }
}

/// Moments `μ_0..=μ_N` of a weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub entries: Vec<Moment>,
}

impl MomentTable {
    pub fn alphas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.alpha).collect()
    }

    pub fn mus(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.mu).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Whether `(n+1)/(Cπ) ≤ α_n ≤ C(n+1)/π` holds up to the entry's error.
pub fn satisfies_sandwich(m: &Moment, c: f64) -> bool {
    let base = (m.n as f64 + 1.0) / PI;
    let slack = 1.0 + 10.0 * m.err;
    m.alpha * slack >= base / c && m.alpha <= c * base * slack
}

/// Moments `0..=max_index`, closed form where available and quadrature otherwise.
pub fn moment_table(weight: &RadialWeight, max_index: usize, tol: f64) -> Result<MomentTable> {
    weight.validate()?;
    let entries: Vec<Moment> = match weight {
        RadialWeight::Sampled { .. } => (0..=max_index)
            .into_par_iter()
            .map(|n| moment_quadrature(weight, n, tol))
            .collect::<Result<_>>()?,
        _ => (0..=max_index)
            .map(|n| moment_closed_form_step(weight, n))
            .collect::<Result<_>>()?,
    };
    if !weight.is_singular() {
        let c = weight.comparability();
        if let Some(bad) = entries.iter().find(|m| !satisfies_sandwich(m, c)) {
            return Err(Error::InvalidWeight(format!(
                "moment {} violates the comparability sandwich with C = {c}",
                bad.n
            )));
        }
    }
    Ok(MomentTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heavy_step() -> RadialWeight {
        RadialWeight::two_level(18.0, 0.25).unwrap()
    }

    #[test]
    fn step_closed_form_matches_known_coefficients() {
        let w = heavy_step();
        let a0 = moment_closed_form_step(&w, 0).unwrap().alpha;
        let a1 = moment_closed_form_step(&w, 1).unwrap().alpha;
        assert!((a0 - 16.0 / (33.0 * PI)).abs() < 1e-15);
        assert!((a1 - 512.0 / (273.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn step_closed_form_matches_explicit_formula() {
        // α_n = (n+1)/π · 16^{n+1}/(16^{n+1} + 17)
        let w = heavy_step();
        for n in [0usize, 1, 2, 5, 10, 40] {
            let q = 16f64.powi(n as i32 + 1);
            let expect = (n as f64 + 1.0) / PI * q / (q + 17.0);
            let got = moment_closed_form_step(&w, n).unwrap().alpha;
            assert!((got - expect).abs() / expect < 1e-14, "n={n}");
        }
    }

    #[test]
    fn quadrature_constant_weight() {
        let w = RadialWeight::constant(1.0).unwrap();
        let m = moment_quadrature(&w, 5, 1e-12).unwrap();
        assert!((m.mu - PI / 6.0).abs() < 1e-13);
        assert!(m.err <= 1e-12);
    }

    #[test]
    fn quadrature_large_index_refines() {
        let w = heavy_step();
        let exact = moment_closed_form_step(&w, 700).unwrap().mu;
        let q = moment_quadrature(&w, 700, 1e-12).unwrap();
        assert!((q.mu - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn quadrature_rejects_dirac_and_bad_tol() {
        let d = RadialWeight::dirac(1.0).unwrap();
        assert!(matches!(
            moment_quadrature(&d, 0, 1e-10),
            Err(Error::Unsupported(_))
        ));
        let c = RadialWeight::constant(1.0).unwrap();
        assert!(moment_quadrature(&c, 0, 0.0).is_err());
    }

    #[test]
    fn quadrature_failure_carries_index() {
        let w = heavy_step();
        let tiny = AdaptiveIntegrator::new(2, 2);
        match moment_quadrature_with(&tiny, &w, 300, 1e-14) {
            Err(Error::QuadratureFailed {
                index, achieved, ..
            }) => {
                assert_eq!(index, 300);
                assert!(achieved > 1e-14);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn tables() {
        let t = moment_table(&RadialWeight::constant(1.0).unwrap(), 3, DEFAULT_TOL).unwrap();
        for (n, a) in t.alphas().into_iter().enumerate() {
            assert!((a - (n as f64 + 1.0) / PI).abs() < 1e-15);
        }
        let c = 2.5;
        let t = moment_table(&RadialWeight::constant(c).unwrap(), 2, DEFAULT_TOL).unwrap();
        for (n, a) in t.alphas().into_iter().enumerate() {
            assert!((a - (n as f64 + 1.0) / (c * PI)).abs() < 1e-15);
        }
        let t = moment_table(&heavy_step(), 1, DEFAULT_TOL).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t
            .entries
            .iter()
            .all(|e| e.method == MomentMethod::ClosedForm));
        for e in &t.entries {
            assert!((e.alpha * e.mu - 1.0).abs() <= 10.0 * e.err);
        }
    }

    #[test]
    fn sampled_table_uses_quadrature() {
        let w = RadialWeight::sampled(vec![0.0, 0.5, 0.9], vec![2.0, 1.0, 3.0]).unwrap();
        let t = moment_table(&w, 6, DEFAULT_TOL).unwrap();
        assert!(t
            .entries
            .iter()
            .all(|e| e.method == MomentMethod::Quadrature));
        // the interpolant is piecewise linear, so each moment has a closed form
        let exact = |n: usize| {
            let k = 2 * n + 1;
            let piece = |a: f64, b: f64, va: f64, vb: f64| {
                let s = (vb - va) / (b - a);
                let c0 = va - s * a;
                let p = |x: f64| {
                    c0 * x.powi(k as i32 + 1) / (k + 1) as f64
                        + s * x.powi(k as i32 + 2) / (k + 2) as f64
                };
                p(b) - p(a)
            };
            let tail = 3.0 * (1.0 - 0.9f64.powi(k as i32 + 1)) / (k + 1) as f64;
            2.0 * PI * (piece(0.0, 0.5, 2.0, 1.0) + piece(0.5, 0.9, 1.0, 3.0) + tail)
        };
        for e in &t.entries {
            assert!((e.mu - exact(e.n)).abs() / e.mu < 1e-12, "n={}", e.n);
        }
    }

    #[test]
    fn validation() {
        assert!(RadialWeight::constant(0.0).is_err());
        assert!(RadialWeight::step(vec![(0.5, 1.0), (0.4, 2.0), (1.0, 1.0)]).is_err());
        assert!(RadialWeight::step(vec![(0.5, 1.0), (0.9, 2.0)]).is_err());
        assert!(RadialWeight::step(vec![(0.5, -1.0), (1.0, 2.0)]).is_err());
        assert!(RadialWeight::sampled(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(RadialWeight::sampled(vec![0.2, 0.1], vec![1.0, 1.0]).is_err());
        assert!(RadialWeight::dirac(-1.0).is_err());
        assert!(RadialWeight::two_level(2.0, 1.0).is_err());
    }

    #[test]
    fn json_schema() {
        let w = RadialWeight::from_json(r#"{"type":"step","segments":[[0.25,18.0],[1.0,1.0]]}"#)
            .unwrap();
        assert_eq!(w, heavy_step());
        let back = RadialWeight::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        let d = RadialWeight::from_json(r#"{"type":"dirac","mass":2.0}"#).unwrap();
        assert_eq!(d, RadialWeight::DiracAugmented { mass: 2.0 });
        assert!(RadialWeight::from_json(r#"{"type":"constant","value":-3}"#).is_err());
    }

    #[test]
    fn comparability_and_values() {
        let w = heavy_step();
        assert_eq!(w.comparability(), 18.0);
        assert_eq!(w.value_at(0.25), 18.0);
        assert_eq!(w.value_at(0.2500001), 1.0);
        let s = RadialWeight::sampled(vec![0.1, 0.3], vec![0.5, 1.5]).unwrap();
        assert_eq!(s.comparability(), 2.0);
        assert!((s.value_at(0.2) - 1.0).abs() < 1e-15);
        assert_eq!(s.value_at(0.05), 0.5);
        assert_eq!(s.value_at(0.9), 1.5);
    }

    #[test]
    fn excess_reconstructs_moments() {
        let step = RadialWeight::step(vec![(0.3, 4.0), (0.6, 0.5), (1.0, 2.0)]).unwrap();
        let sampled = RadialWeight::sampled(vec![0.0, 0.4, 0.7], vec![3.0, 0.5, 2.0]).unwrap();
        for w in [step, sampled] {
            let p = w.tail_profile();
            for n in [0usize, 1, 7, 30] {
                let e = moment_excess(&w, n, 1e-13).unwrap();
                assert!(e.abs() <= p.deviation * (1.0 + 1e-12));
                let mu = PI / (n as f64 + 1.0) * (p.limit + e * p.radius.powi(2 * n as i32 + 2));
                let direct = moment_quadrature(&w, n, 1e-13).unwrap().mu;
                assert!((mu - direct).abs() / direct < 1e-12, "n={n}");
            }
        }
        assert_eq!(
            moment_excess(&RadialWeight::constant(2.0).unwrap(), 3, 1e-12).unwrap(),
            0.0
        );
        // far beyond the underflow of radius^{2n+2}
        let w = RadialWeight::two_level(18.0, 0.25).unwrap();
        assert!((moment_excess(&w, 5000, 1e-12).unwrap() - 17.0).abs() < 1e-12);
    }

    #[test]
    fn tail_profile_bounds_actual_deviation() {
        let w = heavy_step();
        let p = w.tail_profile();
        assert_eq!((p.limit, p.radius, p.deviation), (1.0, 0.25, 17.0));
        for n in 1..60 {
            let a = moment_closed_form_step(&w, n).unwrap().alpha;
            let d = (a - (n as f64 + 1.0) / PI).abs();
            assert!(
                d <= p.alpha_deviation_bound(n) * (1.0 + 1e-12) + 8.0 * f64::EPSILON * a,
                "n={n}"
            );
        }
        let direct: f64 = (5..400)
            .map(|n| moment_closed_form_step(&w, n).unwrap().alpha - (n as f64 + 1.0) / PI)
            .map(f64::abs)
            .sum();
        assert!(direct <= p.alpha_deviation_tail(5));
    }
}
