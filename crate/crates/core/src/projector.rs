//! Discretised weighted Bergman projection on a polar grid.
//!
//! The grid is Gauss–Legendre in the radius (per smooth piece of the weight)
//! times uniform in angle. With at least `4N + 4` angles the discrete angular
//! sums kill every product `z^m w̄^n`, `m ≠ n ≤ N`, so the discrete monomials
//! are orthogonal and the truncated projection
//! `Pf(z) = Σ_{n≤N} zⁿ ⟨f, wⁿ⟩_λ / μ_n` is an exact orthogonal projection for
//! the discrete inner product.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kernel::KernelSeries;
use crate::quadrature::GaussRule;
use crate::regularity::{decompose_b, CoefficientSequence};
use crate::weights::RadialWeight;

pub const DEFAULT_RADIAL_NODES: usize = 200;

/// Tensor grid of Gauss radii and equispaced angles `θ_k = 2πk/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    radii: Vec<f64>,
    /// Gauss weight times `r`, so `Σ_j radial_weights[j] g(r_j) ≈ ∫ g(r) r dr`.
    radial_weights: Vec<f64>,
    angles: usize,
}

impl PolarGrid {
    /// `per_segment` Gauss nodes on each interval between consecutive breakpoints.
    pub fn new(breakpoints: &[f64], per_segment: usize, angles: usize) -> Result<Self> {
        if per_segment == 0 || angles == 0 {
            return Err(invalid("grid", "node counts must be positive"));
        }
        let rule = GaussRule::new(per_segment);
        let mut radii = Vec::new();
        let mut radial_weights = Vec::new();
        for w in breakpoints.windows(2) {
            for (x, h) in rule.mapped(w[0], w[1]) {
                radii.push(x);
                radial_weights.push(h * x);
            }
        }
        Ok(Self {
            radii,
            radial_weights,
            angles,
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.radii.len(), self.angles)
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, j: usize, k: usize) -> Complex64 {
        Complex64::from_polar(self.radii[j], 2.0 * PI * k as f64 / self.angles as f64)
    }

    /// Area weight of node `(j, ·)`: `r dr dθ`.
    fn area(&self, j: usize) -> f64 {
        self.radial_weights[j] * 2.0 * PI / self.angles as f64
    }

    pub fn sample<F: Fn(Complex64) -> Complex64>(&self, f: F) -> GridFunction {
        let mut values = Vec::with_capacity(self.len());
        for j in 0..self.radii.len() {
            for k in 0..self.angles {
                values.push(f(self.point(j, k)));
            }
        }
        GridFunction {
            values,
            shape: self.shape(),
        }
    }

    /// `∫ |f|^p ω dA` for a radial density `ω` given at the radii.
    fn power_integral(&self, f: &GridFunction, p: f64, density: &[f64]) -> f64 {
        f.values
            .chunks(self.angles)
            .enumerate()
            .map(|(j, row)| {
                self.area(j) * density[j] * row.iter().map(|v| v.norm().powf(p)).sum::<f64>()
            })
            .sum()
    }
}

/// Samples on a [`PolarGrid`], radius-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
    shape: (usize, usize),
}

impl GridFunction {
    pub fn zeros(shape: (usize, usize)) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); shape.0 * shape.1],
            shape,
        }
    }

    pub fn from_values(values: Vec<Complex64>, shape: (usize, usize)) -> Result<Self> {
        if values.len() != shape.0 * shape.1 {
            return Err(Error::GridMismatch {
                expected: shape.0 * shape.1,
                got: values.len(),
            });
        }
        Ok(Self { values, shape })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            shape: self.shape,
        }
    }
}

/// Truncated projection `P_N` for a radial weight.
#[derive(Debug, Clone)]
pub struct DiscreteProjector {
    weight: RadialWeight,
    truncation: usize,
    grid: PolarGrid,
    /// `λ` at the radii.
    lambda: Vec<f64>,
    /// Discrete `μ_n = ‖zⁿ‖²_λ` on the grid.
    moments: Vec<f64>,
    /// `e^{2πik/M}`.
    roots: Vec<Complex64>,
}

impl DiscreteProjector {
    /// Default grid: 200 radial nodes per weight segment and `4N + 8` angles.
    pub fn new(weight: RadialWeight, truncation: usize) -> Result<Self> {
        Self::with_grid(weight, truncation, DEFAULT_RADIAL_NODES, 4 * truncation + 8)
    }

    pub fn with_grid(
        weight: RadialWeight,
        truncation: usize,
        per_segment: usize,
        angles: usize,
    ) -> Result<Self> {
        weight.validate()?;
        if weight.is_singular() {
            return Err(Error::Unsupported(
                "projection for a weight with a point mass",
            ));
        }
        if angles < 4 * truncation + 4 {
            return Err(invalid(
                "angles",
                format!(
                    "{angles} angles cannot resolve truncation {truncation}; need at least {}",
                    4 * truncation + 4
                ),
            ));
        }
        if per_segment < truncation + 2 {
            return Err(invalid(
                "radial nodes",
                format!(
                    "{per_segment} per segment cannot integrate r^(2N+1) exactly; need at least {}",
                    truncation + 2
                ),
            ));
        }
        let grid = PolarGrid::new(&weight.breakpoints(), per_segment, angles)?;
        let lambda: Vec<f64> = grid.radii.iter().map(|&r| weight.value_at(r)).collect();
        let moments = (0..=truncation)
            .map(|n| {
                2.0 * PI
                    * grid
                        .radii
                        .iter()
                        .zip(&grid.radial_weights)
                        .zip(&lambda)
                        .map(|((&r, &h), &l)| l * h * r.powi(2 * n as i32))
                        .sum::<f64>()
            })
            .collect();
        let roots = (0..angles)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / angles as f64))
            .collect();
        Ok(Self {
            weight,
            truncation,
            grid,
            lambda,
            moments,
            roots,
        })
    }

    pub fn weight(&self) -> &RadialWeight {
        &self.weight
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    pub fn sample<F: Fn(Complex64) -> Complex64>(&self, f: F) -> GridFunction {
        self.grid.sample(f)
    }

    fn check(&self, f: &GridFunction) -> Result<()> {
        if f.shape != self.grid.shape() {
            return Err(Error::GridMismatch {
                expected: self.grid.len(),
                got: f.values.len(),
            });
        }
        Ok(())
    }

    /// `⟨f, g⟩_λ = ∫ f ḡ λ dA` on the grid.
    pub fn inner(&self, f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
        self.check(f)?;
        self.check(g)?;
        let m = self.grid.angles;
        Ok((0..self.grid.radii.len())
            .map(|j| {
                let row: Complex64 = (0..m)
                    .map(|k| f.values[j * m + k] * g.values[j * m + k].conj())
                    .sum();
                row * self.lambda[j] * self.grid.area(j)
            })
            .sum())
    }

    /// Coefficients `c_n = ⟨f, wⁿ⟩_λ / μ_n`, `n ≤ N`.
    pub fn coefficients(&self, f: &GridFunction) -> Result<Vec<Complex64>> {
        self.check(f)?;
        let m = self.grid.angles;
        let mut c = vec![Complex64::new(0.0, 0.0); self.truncation + 1];
        for (j, row) in f.values.chunks(m).enumerate() {
            let r = self.grid.radii[j];
            let h = self.lambda[j] * self.grid.area(j);
            let mut rn = 1.0;
            for (n, cn) in c.iter_mut().enumerate() {
                // Σ_k f_k e^{−inθ_k}
                let dft: Complex64 = row
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| v * self.roots[(n * k) % m].conj())
                    .sum();
                *cn += dft * (h * rn);
                rn *= r;
            }
        }
        for (cn, mu) in c.iter_mut().zip(&self.moments) {
            *cn /= *mu;
        }
        Ok(c)
    }

    /// `Σ_{n≤N} c_n zⁿ` on the grid.
    pub fn synthesize(&self, c: &[Complex64]) -> GridFunction {
        let m = self.grid.angles;
        let mut out = GridFunction::zeros(self.grid.shape());
        for (j, &r) in self.grid.radii.iter().enumerate() {
            let mut rn = 1.0;
            let row = &mut out.values[j * m..(j + 1) * m];
            for (n, cn) in c.iter().enumerate() {
                let a = cn * rn;
                for (k, v) in row.iter_mut().enumerate() {
                    *v += a * self.roots[(n * k) % m];
                }
                rn *= r;
            }
        }
        out
    }

    pub fn project(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(self.synthesize(&self.coefficients(f)?))
    }

    /// `(∫ |f|^p λ dA)^{1/p}` on the grid.
    pub fn lp_norm(&self, f: &GridFunction, p: f64) -> Result<f64> {
        self.check(f)?;
        check_exponent(p)?;
        Ok(self.grid.power_integral(f, p, &self.lambda).powf(1.0 / p))
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid("p", format!("{p} must lie in (1, inf)")));
    }
    Ok(())
}

/// Test functions for the `L^p` probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TestFunction {
    /// `z^m`, or `z̄^m` when `conjugate`.
    Monomial {
        m: u32,
        #[serde(default)]
        conjugate: bool,
    },
    /// `(1 − |z|²)^s`.
    RadialPower { s: f64 },
    /// `exp(−((|z| − center)/width)²)`.
    RadialBump { center: f64, width: f64 },
    /// `Σ_{|k|≤degree} c_k e^{ikθ} r^{|k|} cos(π a_k r)` with seeded coefficients.
    TrigRadial { seed: u64, degree: u32 },
}

impl TestFunction {
    pub fn label(&self) -> String {
        match self {
            Self::Monomial {
                m,
                conjugate: false,
            } => format!("z^{m}"),
            Self::Monomial { m, conjugate: true } => format!("conj(z)^{m}"),
            Self::RadialPower { s } => format!("(1-|z|^2)^{s}"),
            Self::RadialBump { center, width } => format!("bump({center},{width})"),
            Self::TrigRadial { seed, degree } => format!("trig(seed={seed},deg={degree})"),
        }
    }

    /// A closure evaluating the function; random coefficients are drawn once.
    pub fn evaluator(&self) -> Box<dyn Fn(Complex64) -> Complex64 + Send + Sync> {
        match *self {
            Self::Monomial { m, conjugate } => Box::new(move |z: Complex64| {
                let z = if conjugate { z.conj() } else { z };
                z.powu(m)
            }),
            Self::RadialPower { s } => Box::new(move |z: Complex64| {
                Complex64::new((1.0 - z.norm_sqr()).max(0.0).powf(s), 0.0)
            }),
            Self::RadialBump { center, width } => Box::new(move |z: Complex64| {
                let u = (z.norm() - center) / width;
                Complex64::new((-u * u).exp(), 0.0)
            }),
            Self::TrigRadial { seed, degree } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let d = degree as i32;
                let terms: Vec<(i32, Complex64, f64)> = (-d..=d)
                    .map(|k| {
                        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                        (k, c, rng.gen_range(0.0..2.0))
                    })
                    .collect();
                Box::new(move |z: Complex64| {
                    let (r, theta) = z.to_polar();
                    terms
                        .iter()
                        .map(|&(k, c, a)| {
                            c * Complex64::from_polar(
                                r.powi(k.abs()) * (PI * a * r).cos(),
                                k as f64 * theta,
                            )
                        })
                        .sum()
                })
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::RadialPower { s } if !(s >= 0.0 && s.is_finite()) => {
                Err(invalid("s", "exponent must be finite and >= 0"))
            }
            Self::RadialBump { width, .. } if !(width > 0.0 && width.is_finite()) => {
                Err(invalid("width", "must be positive"))
            }
            _ => Ok(()),
        }
    }
}

/// The default probe family; it does not depend on `N`, so results for
/// different truncations are comparable.
pub fn default_family() -> Vec<TestFunction> {
    let mut family = Vec::new();
    for m in 0..=6 {
        family.push(TestFunction::Monomial {
            m,
            conjugate: false,
        });
        if m > 0 {
            family.push(TestFunction::Monomial { m, conjugate: true });
        }
    }
    for s in [0.25, 0.5, 1.0] {
        family.push(TestFunction::RadialPower { s });
    }
    for center in [0.0, 0.3, 0.6, 0.9] {
        family.push(TestFunction::RadialBump { center, width: 0.1 });
    }
    for seed in 1..=6 {
        family.push(TestFunction::TrigRadial { seed, degree: 4 });
    }
    family
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub label: String,
    pub norm_f: f64,
    pub norm_pf: f64,
    pub ratio: Option<f64>,
    pub note: Option<String>,
}

/// Lower-bound probe of `‖P‖_{L^p(λ) → L^p(λ)}` by maximising over a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub p: f64,
    pub truncation: usize,
    pub grid_shape: (usize, usize),
    pub max_ratio: f64,
    pub rows: Vec<ProbeRow>,
}

pub fn lp_probe(proj: &DiscreteProjector, p: f64, family: &[TestFunction]) -> Result<ProbeReport> {
    Ok(lp_probe_multi(proj, &[p], family)?.remove(0))
}

/// [`lp_probe`] for several exponents, projecting each test function once.
pub fn lp_probe_multi(
    proj: &DiscreteProjector,
    ps: &[f64],
    family: &[TestFunction],
) -> Result<Vec<ProbeReport>> {
    for &p in ps {
        check_exponent(p)?;
    }
    if ps.is_empty() {
        return Err(invalid("p", "needs at least one exponent"));
    }
    if family.is_empty() {
        return Err(invalid("family", "needs at least one test function"));
    }
    let pairs = family
        .par_iter()
        .map(|tf| {
            tf.validate()?;
            let f = proj.sample(tf.evaluator());
            let pf = proj.project(&f)?;
            Ok((f, pf))
        })
        .collect::<Result<Vec<_>>>()?;
    ps.iter()
        .map(|&p| {
            let rows = family
                .iter()
                .zip(&pairs)
                .map(|(tf, (f, pf))| {
                    let norm_f = proj.lp_norm(f, p)?;
                    let norm_pf = proj.lp_norm(pf, p)?;
                    let degenerate = !(norm_f > 1e-300);
                    Ok(ProbeRow {
                        label: tf.label(),
                        norm_f,
                        norm_pf,
                        ratio: (!degenerate).then(|| norm_pf / norm_f),
                        note: degenerate.then(|| "skipped: zero norm".to_string()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ProbeReport {
                p,
                truncation: proj.truncation,
                grid_shape: proj.grid.shape(),
                max_ratio: rows.iter().filter_map(|r| r.ratio).fold(0.0, f64::max),
                rows,
            })
        })
        .collect()
}

/// Both sides of `‖Tf‖_p^{2p} ≤ ‖S₁|f|‖_p^p ‖S₂|f|‖_p^p` on a grid, where
/// `T` has kernel `K₁K₂` with `K₁(t) = 1/(1−t)`, `K₂(t) = Σ_{n≤N} b_n tⁿ`,
/// `b_n = α_n − α_{n−1}`, and `S_i` has kernel `|K_i|²`. Integrals are
/// against unweighted area measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CsSplit {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessGrid {
    pub radial_per_segment: usize,
    pub angles: usize,
    pub truncation: usize,
}

impl Default for WitnessGrid {
    fn default() -> Self {
        Self {
            radial_per_segment: 24,
            angles: 48,
            truncation: 40,
        }
    }
}

pub fn cs_split_witness(
    weight: &RadialWeight,
    f: &TestFunction,
    p: f64,
    opts: WitnessGrid,
) -> Result<CsSplit> {
    f.validate()?;
    cs_split_witness_with(weight, &*f.evaluator(), p, opts)
}

/// [`cs_split_witness`] for an arbitrary function.
pub fn cs_split_witness_with(
    weight: &RadialWeight,
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    p: f64,
    opts: WitnessGrid,
) -> Result<CsSplit> {
    check_exponent(p)?;
    let series = KernelSeries::from_weight(weight.clone())?;
    let b = decompose_b(&CoefficientSequence::from_series(
        &series,
        opts.truncation.max(2),
    )?);
    let b: Vec<Complex64> = b.b;
    let grid = PolarGrid::new(&weight.breakpoints(), opts.radial_per_segment, opts.angles)?;
    let fv = grid.sample(f);
    let nr = grid.radii.len();
    let m = grid.angles;
    // kernels depend on θ_z − θ_w only: tables indexed by (j_z, j_w, Δ)
    let table = |j: usize, jj: usize, d: usize| -> (Complex64, f64, f64) {
        let t = Complex64::from_polar(
            grid.radii[j] * grid.radii[jj],
            2.0 * PI * d as f64 / m as f64,
        );
        let k1 = 1.0 / (1.0 - t);
        let k2 = b
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c);
        (k1 * k2, k1.norm_sqr(), k2.norm_sqr())
    };
    let tables: Vec<(Complex64, f64, f64)> = (0..nr * nr * m)
        .into_par_iter()
        .map(|i| table(i / (nr * m), (i / m) % nr, i % m))
        .collect();
    let abs_f: Vec<f64> = fv.values.iter().map(|v| v.norm()).collect();
    let rows: Vec<[Vec<f64>; 3]> = (0..nr)
        .into_par_iter()
        .map(|j| {
            let mut out = [vec![0.0; m], vec![0.0; m], vec![0.0; m]];
            for k in 0..m {
                let (mut tf, mut s1, mut s2) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
                for jj in 0..nr {
                    let h = grid.area(jj);
                    let base = (j * nr + jj) * m;
                    for kk in 0..m {
                        let (kk12, a1, a2) = tables[base + (k + m - kk) % m];
                        let idx = jj * m + kk;
                        tf += kk12 * fv.values[idx] * h;
                        s1 += a1 * abs_f[idx] * h;
                        s2 += a2 * abs_f[idx] * h;
                    }
                }
                out[0][k] = tf.norm();
                out[1][k] = s1;
                out[2][k] = s2;
            }
            out
        })
        .collect();
    let integral = |which: usize| -> f64 {
        rows.iter()
            .enumerate()
            .map(|(j, r)| grid.area(j) * r[which].iter().map(|v| v.powf(p)).sum::<f64>())
            .sum()
    };
    let lhs = integral(0).powi(2);
    let rhs = integral(1) * integral(2);
    Ok(CsSplit {
        p,
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights() -> Vec<RadialWeight> {
        vec![
            RadialWeight::constant(1.0).unwrap(),
            RadialWeight::two_level(18.0, 0.25).unwrap(),
        ]
    }

    #[test]
    fn discrete_monomials_are_orthogonal() {
        for w in weights() {
            let proj = DiscreteProjector::new(w.clone(), 40).unwrap();
            let mu_min = proj.moments().iter().copied().fold(f64::INFINITY, f64::min);
            for (m, n) in [(0, 1), (3, 7), (0, 40), (39, 40), (12, 25)] {
                let a = proj.sample(|z| z.powu(m));
                let b = proj.sample(|z| z.powu(n));
                assert!(
                    proj.inner(&a, &b).unwrap().norm() <= 1e-13 * mu_min,
                    "{m},{n}"
                );
            }
            // against the exact moments
            let table = crate::weights::moment_table(&w, 40, 1e-13).unwrap();
            for (d, e) in proj.moments().iter().zip(table.mus()) {
                assert!((d - e).abs() <= 1e-12 * e);
            }
        }
    }

    #[test]
    fn projection_examples() {
        for w in weights() {
            let proj = DiscreteProjector::new(w, 40).unwrap();
            let f = proj.sample(|z| z.powu(3));
            assert!(proj.project(&f).unwrap().max_abs_diff(&f) <= 1e-10);
            let g = proj.sample(|z| z.conj().powu(2));
            assert!(proj.project(&g).unwrap().max_abs() <= 1e-10);
        }
        let proj = DiscreteProjector::new(RadialWeight::constant(1.0).unwrap(), 10).unwrap();
        let f = proj.sample(|z| Complex64::new(1.0 - z.norm_sqr(), 0.0));
        let pf = proj.project(&f).unwrap();
        assert!(pf.values().iter().all(|v| (v - 0.5).norm() < 1e-13));
    }

    #[test]
    fn rejects_bad_grids() {
        let w = RadialWeight::constant(1.0).unwrap();
        assert!(DiscreteProjector::with_grid(w.clone(), 10, 200, 43).is_err());
        assert!(DiscreteProjector::with_grid(w.clone(), 10, 200, 44).is_ok());
        assert!(
            DiscreteProjector::with_grid(RadialWeight::dirac(1.0).unwrap(), 10, 200, 60).is_err()
        );
        let a = DiscreteProjector::new(w.clone(), 10).unwrap();
        let b = DiscreteProjector::new(w, 12).unwrap();
        let f = b.sample(|z| z);
        assert!(matches!(a.project(&f), Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn lp_norm_examples() {
        let proj = DiscreteProjector::new(RadialWeight::constant(1.0).unwrap(), 4).unwrap();
        let one = proj.sample(|_| Complex64::new(1.0, 0.0));
        assert!((proj.lp_norm(&one, 2.0).unwrap() - PI.sqrt()).abs() < 1e-13);
        let z = proj.sample(|z| z);
        assert!((proj.lp_norm(&z, 2.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-13);
        let proj = DiscreteProjector::new(RadialWeight::two_level(18.0, 0.25).unwrap(), 4).unwrap();
        let z = proj.sample(|z| z);
        assert!((proj.lp_norm(&z, 2.0).unwrap() - (273.0 * PI / 512.0).sqrt()).abs() < 1e-13);
        assert!(proj.lp_norm(&z, 1.0).is_err());
    }

    #[test]
    fn probe_examples() {
        let proj = DiscreteProjector::new(RadialWeight::constant(1.0).unwrap(), 20).unwrap();
        let r = lp_probe(
            &proj,
            2.0,
            &[TestFunction::Monomial {
                m: 2,
                conjugate: false,
            }],
        )
        .unwrap();
        assert!((r.max_ratio - 1.0).abs() < 1e-12);
        let r = lp_probe(
            &proj,
            2.0,
            &[TestFunction::Monomial {
                m: 3,
                conjugate: true,
            }],
        )
        .unwrap();
        assert!(r.max_ratio < 1e-12);
        // an orthogonal projection cannot increase L² norms
        let r = lp_probe(&proj, 2.0, &default_family()).unwrap();
        assert!(r.max_ratio <= 1.0 + 1e-12);
        let json = r#"{"type":"monomial","m":3,"conjugate":true}"#;
        let tf: TestFunction = serde_json::from_str(json).unwrap();
        assert_eq!(
            tf,
            TestFunction::Monomial {
                m: 3,
                conjugate: true
            }
        );
    }

    fn random_function(seed: u64) -> TestFunction {
        TestFunction::TrigRadial { seed, degree: 6 }
    }

    #[test]
    fn projector_algebra() {
        for w in weights() {
            let proj = DiscreteProjector::new(w, 40).unwrap();
            for seed in 0..4 {
                let f = proj.sample(random_function(seed).evaluator());
                let g = proj.sample(random_function(seed + 100).evaluator());
                let pf = proj.project(&f).unwrap();
                assert!(proj.project(&pf).unwrap().max_abs_diff(&pf) <= 1e-9 * pf.max_abs());
                let lhs = proj.inner(&pf, &g).unwrap();
                let rhs = proj.inner(&f, &proj.project(&g).unwrap()).unwrap();
                assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
            }
        }
    }

    #[test]
    fn cs_split_examples() {
        let opts = WitnessGrid {
            radial_per_segment: 12,
            angles: 24,
            truncation: 30,
        };
        let step = RadialWeight::two_level(18.0, 0.25).unwrap();
        let one = TestFunction::Monomial {
            m: 0,
            conjugate: false,
        };
        let c = cs_split_witness(&step, &one, 2.0, opts).unwrap();
        assert!(c.holds && c.lhs > 0.0);
        let c = cs_split_witness(
            &RadialWeight::constant(1.0).unwrap(),
            &TestFunction::Monomial {
                m: 1,
                conjugate: false,
            },
            2.0,
            opts,
        )
        .unwrap();
        assert!(c.holds && c.lhs > 0.0);
        let c = cs_split_witness_with(&step, &|_| Complex64::new(0.0, 0.0), 3.0, opts).unwrap();
        assert!(c.holds && c.lhs == 0.0 && c.rhs == 0.0);
    }
}
