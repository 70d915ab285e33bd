//! The reproduction suite: every numerically checkable claim about the
//! weighted kernels, each with its computed value, target and tolerance.
//!
//! Pass/fail is always decided in true units (`α_n = 1/μ_n`). With
//! [`Units::Scaled`] coefficient-level quantities are reported multiplied by
//! `2π`, in which the first differences of the coefficients tend to 2.

use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::kernel::KernelSeries;
use crate::projector::{
    cs_split_witness, default_family, lp_probe_multi, DiscreteProjector, TestFunction, WitnessGrid,
    DEFAULT_RADIAL_NODES,
};
use crate::regularity::{
    schur_bound_check, schur_constant, schur_integral, schur_integral_direct, CoefficientSequence,
};
use crate::weights::{moment_closed_form_step, moment_quadrature, RadialWeight};
use crate::zeros::{
    count_zeros_winding, dirac_kernel, dirac_zero_threshold, inflation_check, mollify_weight,
    rouche_certificate, second_difference_bound,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    /// `α_n = 1/μ_n`.
    #[default]
    True,
    /// `2π α_n`.
    Scaled,
}

impl Units {
    pub fn factor(self) -> f64 {
        match self {
            Self::True => 1.0,
            Self::Scaled => 2.0 * PI,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Self::True => "true units: alpha_n = 1/mu_n, mu_n = 2*pi*int_0^1 r^(2n+1) lambda(r) dr",
            Self::Scaled => "scaled units: 2*pi*alpha_n, alpha_n = 1/mu_n",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReproOptions {
    /// Criterion ids or module names; empty runs everything.
    pub only: Vec<String>,
    /// Relative change applied to `α₀` of the two-level `(18, 1/4)` series
    /// used by the kernel-coefficient and zero criteria (2 to 5).
    pub perturbation: Option<f64>,
    pub units: Units,
}

/// One checked quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub computed: f64,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    /// Whether `tolerance` is relative to `expected`.
    pub relative: bool,
    /// Whether the quantity is coefficient-valued and follows the units.
    #[serde(skip)]
    coefficient: bool,
}

impl Check {
    fn close(label: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: Some(expected),
            tolerance: Some(tol),
            pass: (computed - expected).abs() <= tol,
            relative: false,
            coefficient: false,
        }
    }

    fn rel(label: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        let mut c = Self::close(label, computed, expected, tol * expected.abs());
        c.tolerance = Some(tol);
        c.relative = true;
        c
    }

    fn truth(label: impl Into<String>, computed: f64, pass: bool) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: None,
            tolerance: None,
            pass,
            relative: false,
            coefficient: false,
        }
    }

    fn coefficient(mut self) -> Self {
        self.coefficient = true;
        self
    }

    fn in_units(mut self, units: Units) -> Self {
        if self.coefficient {
            let f = units.factor();
            self.computed *= f;
            self.expected = self.expected.map(|e| e * f);
            if !self.relative {
                self.tolerance = self.tolerance.map(|t| t * f);
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub module: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub note: Option<&'static str>,
    pub error: Option<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        write!(
            f,
            "[{}] {:>2} {:<10} {} ({}/{} checks)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.module,
            self.name,
            self.checks.len() - failed,
            self.checks.len()
        )?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        if let Some(c) = self.checks.iter().find(|c| !c.pass) {
            write!(f, " first failure: {} = {:e}", c.label, c.computed)?;
            if let Some(e) = c.expected {
                write!(f, " vs {e:e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub units: Units,
    pub normalization: &'static str,
    pub perturbation: Option<f64>,
    pub criteria: Vec<CriterionResult>,
    pub all_pass: bool,
}

impl ReproReport {
    pub fn failed_ids(&self) -> Vec<u8> {
        self.criteria
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id)
            .collect()
    }
}

struct Criterion {
    id: u8,
    module: &'static str,
    name: &'static str,
    note: Option<&'static str>,
    run: fn(&Ctx) -> Result<Vec<Check>>,
}

struct Ctx {
    perturbation: Option<f64>,
}

impl Ctx {
    fn reference_weight() -> RadialWeight {
        RadialWeight::two_level(18.0, 0.25).expect("valid weight")
    }

    fn reference_series(&self) -> Result<KernelSeries> {
        let s = KernelSeries::from_weight(Self::reference_weight())?;
        match self.perturbation {
            Some(d) => {
                let a0 = s.alpha(0)?;
                s.with_coefficient(0, a0 * (1.0 + d))
            }
            None => Ok(s),
        }
    }
}

/// `α_n = (n+1)/π · 16^{n+1}/(16^{n+1} + 17)` for the `(18, 1/4)` weight,
/// written to stay finite for large `n`.
fn step_alpha(n: usize) -> f64 {
    let q = 17.0 * 16f64.powi(-(n as i32 + 1));
    (n as f64 + 1.0) / PI / (1.0 + q)
}

const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        module: "weights",
        name: "coefficient exactness for the (18, 1/4) weight",
        note: None,
        run: c1_coefficients,
    },
    Criterion {
        id: 2,
        module: "zeros",
        name: "root of the linear part",
        note: None,
        run: c2_linear_root,
    },
    Criterion {
        id: 3,
        module: "zeros",
        name: "second differences and telescoped bound",
        note: None,
        run: c3_second_differences,
    },
    Criterion {
        id: 4,
        module: "zeros",
        name: "Rouche certificate and certified winding counts",
        note: None,
        run: c4_rouche,
    },
    Criterion {
        id: 5,
        module: "zeros",
        name: "located zeros and radius stability",
        note: None,
        run: c5_located,
    },
    Criterion {
        id: 6,
        module: "zeros",
        name: "zero persists under mollification",
        note: Some("numerical persistence check; no limit argument is performed"),
        run: c6_mollified,
    },
    Criterion {
        id: 7,
        module: "zeros",
        name: "point-mass threshold k > pi/3",
        note: None,
        run: c7_dirac,
    },
    Criterion {
        id: 8,
        module: "zeros",
        name: "Hartogs inflation identity",
        note: None,
        run: c8_inflation,
    },
    Criterion {
        id: 9,
        module: "regularity",
        name: "Schur integral closed form and quadrature",
        note: None,
        run: c9_schur,
    },
    Criterion {
        id: 10,
        module: "projector",
        name: "projector algebra",
        note: None,
        run: c10_projector,
    },
    Criterion {
        id: 11,
        module: "projector",
        name: "L^p probe stability",
        note: Some("no norm constant is known to compare against; only stability is tested"),
        run: c11_probe,
    },
    Criterion {
        id: 12,
        module: "projector",
        name: "Cauchy-Schwarz split",
        note: None,
        run: c12_cs_split,
    },
];

/// `(id, module, name)` of every criterion.
pub fn criteria() -> Vec<(u8, &'static str, &'static str)> {
    CRITERIA.iter().map(|s| (s.id, s.module, s.name)).collect()
}

fn selected(def: &Criterion, only: &[String]) -> bool {
    only.is_empty()
        || only.iter().any(|o| {
            o.eq_ignore_ascii_case(def.module) || o.parse::<u8>().is_ok_and(|id| id == def.id)
        })
}

pub fn run(opts: &ReproOptions) -> Result<ReproReport> {
    for o in &opts.only {
        let known = CRITERIA.iter().any(|s| {
            o.eq_ignore_ascii_case(s.module) || o.parse::<u8>().is_ok_and(|id| id == s.id)
        });
        if !known {
            return Err(invalid(
                "only",
                format!("unknown criterion or module '{o}'"),
            ));
        }
    }
    if let Some(d) = opts.perturbation {
        if !(d.is_finite() && d > -1.0) {
            return Err(invalid(
                "perturbation",
                format!("{d} must be finite and > -1"),
            ));
        }
    }
    let ctx = Ctx {
        perturbation: opts.perturbation,
    };
    let criteria: Vec<CriterionResult> = CRITERIA
        .iter()
        .filter(|s| selected(s, &opts.only))
        .map(|s| run_one(s, &ctx, opts.units))
        .collect();
    Ok(ReproReport {
        units: opts.units,
        normalization: opts.units.describe(),
        perturbation: opts.perturbation,
        all_pass: criteria.iter().all(|c| c.pass),
        criteria,
    })
}

/// Runs a single criterion by id.
pub fn run_criterion(id: u8, opts: &ReproOptions) -> Result<CriterionResult> {
    let def = CRITERIA
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| invalid("id", format!("no criterion {id}")))?;
    let ctx = Ctx {
        perturbation: opts.perturbation,
    };
    Ok(run_one(def, &ctx, opts.units))
}

fn run_one(def: &Criterion, ctx: &Ctx, units: Units) -> CriterionResult {
    let (checks, error) = match (def.run)(ctx) {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    CriterionResult {
        id: def.id,
        module: def.module,
        name: def.name,
        pass: error.is_none() && !checks.is_empty() && checks.iter().all(|c| c.pass),
        checks: checks.into_iter().map(|c| c.in_units(units)).collect(),
        note: def.note,
        error,
    }
}

fn c1_coefficients(_: &Ctx) -> Result<Vec<Check>> {
    let w = Ctx::reference_weight();
    let targets = [16.0 / (33.0 * PI), 512.0 / (273.0 * PI)];
    let mut out = Vec::new();
    for (n, &t) in targets.iter().enumerate() {
        let closed = moment_closed_form_step(&w, n)?.alpha;
        out.push(Check::rel(format!("alpha_{n} closed form"), closed, t, 1e-12).coefficient());
        let quad = moment_quadrature(&w, n, 1e-12)?.alpha;
        out.push(Check::rel(format!("alpha_{n} quadrature"), quad, t, 1e-10).coefficient());
    }
    Ok(out)
}

fn c2_linear_root(ctx: &Ctx) -> Result<Vec<Check>> {
    let cert = rouche_certificate(&ctx.reference_series()?, 0.01)?;
    let root = cert.linear_root.unwrap_or(f64::NAN);
    Ok(vec![Check::close("t*", root, -91.0 / 170.0, 1e-12)])
}

fn c3_second_differences(ctx: &Ctx) -> Result<Vec<Check>> {
    let s = ctx.reference_series()?;
    let mut out = Vec::new();
    let mut negative = 0usize;
    for k in 2..=500 {
        if s.second_difference(k)?.signum() < 0.0 {
            negative += 1;
        }
    }
    out.push(Check::truth(
        "k in [2, 500] with negative second difference",
        negative as f64,
        negative == 499,
    ));
    let sb = second_difference_bound(&s, 500)?;
    let oracle = (step_alpha(1) - step_alpha(0)) - (step_alpha(500) - step_alpha(499));
    out.push(
        Check::close(
            "sum |second differences|, k <= 500, vs telescoped",
            sb.partial_sum,
            sb.telescoped_value,
            1e-12,
        )
        .coefficient(),
    );
    out.push(
        Check::close(
            "telescoped value vs closed form",
            sb.telescoped_value,
            oracle,
            1e-12,
        )
        .coefficient(),
    );
    out.push(
        Check::close(
            "alpha_500 - alpha_499",
            s.first_difference(500)?,
            1.0 / PI,
            1e-6,
        )
        .coefficient(),
    );
    if let Some(limit) = sb.limit_value {
        out.push(
            Check::close(
                "(alpha_1 - alpha_0) - lim first difference",
                limit,
                step_alpha(1) - step_alpha(0) - 1.0 / PI,
                1e-12,
            )
            .coefficient(),
        );
    }
    Ok(out)
}

fn c4_rouche(ctx: &Ctx) -> Result<Vec<Check>> {
    let s = ctx.reference_series()?;
    let cert = rouche_certificate(&s, 0.01)?;
    let report = count_zeros_winding(&s, 0.99, None)?;
    let unit = KernelSeries::from_weight(RadialWeight::constant(1.0)?)?;
    let flat = count_zeros_winding(&unit, 0.999, None)?;
    Ok(vec![
        Check::close("min |L| on |t| = 0.99", cert.min_l, 0.1311, 1e-4).coefficient(),
        Check::close("series bound S", cert.s_bound, 0.1244, 1e-4).coefficient(),
        Check::truth(
            "min |L| - S > 0 (certificate holds)",
            cert.min_l - cert.s_bound,
            cert.holds,
        )
        .coefficient(),
        Check::truth(
            "(18, 1/4) zero count at rho = 0.99, certified",
            report.zero_count as f64,
            report.certified && report.zero_count >= 1,
        ),
        Check::truth(
            "Constant(1) zero count at rho = 0.999, certified",
            flat.zero_count as f64,
            flat.certified && flat.zero_count == 0,
        ),
    ])
}

fn c5_located(ctx: &Ctx) -> Result<Vec<Check>> {
    let s = ctx.reference_series()?;
    let a0 = s.alpha(0)?;
    let base = count_zeros_winding(&s, 0.99, None)?;
    let mut out = vec![Check::truth(
        "certified",
        base.zero_count as f64,
        base.certified,
    )];
    out.push(Check::truth(
        "every zero located",
        base.located_zeros.len() as f64,
        base.located_zeros.len() == base.zero_count,
    ));
    for (i, z) in base.located_zeros.iter().enumerate() {
        out.push(Check::truth(
            format!("|F(t_{i})| / alpha_0"),
            z.residual / a0,
            z.residual <= 1e-9 * a0,
        ));
    }
    for rho in [0.989, 0.991] {
        let r = count_zeros_winding(&s, rho, None)?;
        out.push(Check::truth(
            format!("zero count at rho = {rho}"),
            r.zero_count as f64,
            r.certified && r.zero_count == base.zero_count,
        ));
    }
    Ok(out)
}

fn c6_mollified(_: &Ctx) -> Result<Vec<Check>> {
    let w = mollify_weight(&Ctx::reference_weight(), 1e-3)?;
    let s = KernelSeries::from_weight(w)?;
    let r = count_zeros_winding(&s, 0.99, None)?;
    Ok(vec![Check::truth(
        "mollified zero count at rho = 0.99, certified",
        r.zero_count as f64,
        r.certified && r.zero_count >= 1,
    )])
}

fn c7_dirac(_: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in [1.0, 1.04, 1.05, 2.0, 10.0] {
        let d = dirac_zero_threshold(k)?;
        out.push(Check::truth(
            format!("k = {k}: zero in disc"),
            d.has_zero_in_disc as u8 as f64,
            d.has_zero_in_disc == (k > FRAC_PI_3),
        ));
        // F_k is real and decreasing on (−1, 0] with F_k(0) > 0
        let edge = dirac_kernel(k, Complex64::new(-1.0, 0.0)).re;
        out.push(Check::truth(
            format!("k = {k}: sign of F_k(-1)"),
            edge,
            (edge < 0.0) == d.has_zero_in_disc,
        ));
    }
    let d = dirac_zero_threshold(10.0)?;
    let t0 = d.zero_location.unwrap_or(f64::NAN);
    out.push(Check::close(
        "k = 10 zero",
        t0,
        1.0 - (1.0 + PI / 10.0).sqrt(),
        1e-10,
    ));
    out.push(Check::close(
        "|F_10(t0)|",
        dirac_kernel(10.0, Complex64::new(t0, 0.0)).norm(),
        0.0,
        1e-12,
    ));
    Ok(out)
}

fn c8_inflation(_: &Ctx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut points = Vec::new();
    for _ in 0..20 {
        let mut p =
            || Complex64::from_polar(0.9 * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
        points.push((p(), p()));
    }
    let mut out = Vec::new();
    for (name, w) in [
        ("Constant(1)", RadialWeight::constant(1.0)?),
        ("(18, 1/4)", Ctx::reference_weight()),
    ] {
        let mut worst = 0.0f64;
        for &(z, t) in &points {
            worst = worst.max(inflation_check(&w, z, t, 1e-10)?.difference);
        }
        out.push(Check::close(
            format!("{name}: max |B_Omega - B_lambda/pi| over 20 pairs"),
            worst,
            0.0,
            1e-8,
        ));
    }
    Ok(out)
}

fn c9_schur(_: &Ctx) -> Result<Vec<Check>> {
    let one = CoefficientSequence::constant(1.0, 6000)?;
    let grid: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
    let mut out = Vec::new();
    for eps in [-0.75, -0.5, -2.0 / 9.0] {
        let r = schur_bound_check(&one, eps, &grid)?;
        out.push(Check::truth(
            format!(
                "eps = {eps:.4}: max ratio (bound {:.6})",
                schur_constant(eps)
            ),
            r.empirical_c,
            r.passes,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let eps = rng.gen_range(-0.9..-0.1);
        let r = rng.gen_range(0.0..0.95);
        let series = schur_integral(&one, eps, r)?;
        let direct = schur_integral_direct(|t| 1.0 / (1.0 - t), eps, r, 1024, 1e-12)?;
        let err = ((direct - series.value).abs() - series.tail_bound).max(0.0) / series.value;
        worst = worst.max(err);
    }
    out.push(Check::close(
        "max rel. gap, series vs direct quadrature (10 points)",
        worst,
        0.0,
        1e-6,
    ));
    Ok(out)
}

fn c10_projector(_: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (name, w) in [
        ("Constant(1)", RadialWeight::constant(1.0)?),
        ("(18, 1/4)", Ctx::reference_weight()),
    ] {
        let proj = DiscreteProjector::new(w, 40)?;
        let (mut idem, mut adj, mut repro, mut annih) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for seed in 0..4u64 {
            let f = proj.sample(TestFunction::TrigRadial { seed, degree: 6 }.evaluator());
            let g = proj.sample(
                TestFunction::TrigRadial {
                    seed: seed + 100,
                    degree: 6,
                }
                .evaluator(),
            );
            let pf = proj.project(&f)?;
            idem = idem.max(proj.project(&pf)?.max_abs_diff(&pf) / pf.max_abs().max(1.0));
            let lhs = proj.inner(&pf, &g)?;
            let rhs = proj.inner(&f, &proj.project(&g)?)?;
            adj = adj.max((lhs - rhs).norm() / lhs.norm().max(1.0));
            let coeffs: Vec<Complex64> = (0..=40)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let poly = proj.synthesize(&coeffs);
            repro = repro.max(proj.project(&poly)?.max_abs_diff(&poly));
        }
        for m in 1..=40 {
            let f = proj.sample(|z| z.conj().powu(m));
            annih = annih.max(proj.project(&f)?.max_abs());
        }
        out.push(Check::close(
            format!("{name}: idempotence"),
            idem,
            0.0,
            1e-9,
        ));
        out.push(Check::close(
            format!("{name}: self-adjointness"),
            adj,
            0.0,
            1e-9,
        ));
        out.push(Check::close(
            format!("{name}: degree-40 polynomial reproduction"),
            repro,
            0.0,
            1e-9,
        ));
        out.push(Check::close(
            format!("{name}: annihilation of conj(z)^m, 1 <= m <= 40"),
            annih,
            0.0,
            1e-10,
        ));
    }
    Ok(out)
}

fn c11_probe(_: &Ctx) -> Result<Vec<Check>> {
    let ps = [1.5, 2.0, 3.0, 4.0];
    let family = default_family();
    let coarse = DiscreteProjector::new(Ctx::reference_weight(), 40)?;
    let fine = DiscreteProjector::with_grid(
        Ctx::reference_weight(),
        60,
        2 * DEFAULT_RADIAL_NODES,
        2 * (4 * 40 + 8),
    )?;
    let a = lp_probe_multi(&coarse, &ps, &family)?;
    let b = lp_probe_multi(&fine, &ps, &family)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(a, b)| {
            let change = (b.max_ratio - a.max_ratio).abs() / a.max_ratio;
            Check::truth(
                format!(
                    "p = {}: max ratio {:.6} -> {:.6}, rel. change",
                    a.p, a.max_ratio, b.max_ratio
                ),
                change,
                a.max_ratio.is_finite() && change < 0.05,
            )
        })
        .collect())
}

fn c12_cs_split(_: &Ctx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut out = Vec::new();
    for i in 0..10 {
        let a = rng.gen_range(0.2..30.0);
        let x = rng.gen_range(0.1..0.9);
        let w = if i == 0 {
            RadialWeight::constant(1.0)?
        } else {
            RadialWeight::two_level(a, x)?
        };
        let f = TestFunction::TrigRadial {
            seed: rng.gen(),
            degree: 3,
        };
        let p = rng.gen_range(1.2..5.0);
        let c = cs_split_witness(&w, &f, p, WitnessGrid::default())?;
        out.push(Check::truth(
            format!("triple {i} (p = {p:.3}): lhs / rhs"),
            c.lhs / c.rhs,
            c.holds,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtering_and_validation() {
        let ids = |only: &[&str]| -> Vec<u8> {
            CRITERIA
                .iter()
                .filter(|s| selected(s, &only.iter().map(|s| s.to_string()).collect::<Vec<_>>()))
                .map(|s| s.id)
                .collect()
        };
        assert_eq!(ids(&[]).len(), 12);
        assert_eq!(ids(&["zeros"]), vec![2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(ids(&["1", "projector"]), vec![1, 10, 11, 12]);
        let bad = ReproOptions {
            only: vec!["nope".into()],
            ..Default::default()
        };
        assert!(run(&bad).is_err());
    }

    #[test]
    fn closed_form_oracle() {
        assert!((step_alpha(0) - 16.0 / (33.0 * PI)).abs() < 1e-16);
        assert!((step_alpha(1) - 512.0 / (273.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn perturbation_flips_the_certificate() {
        let opts = ReproOptions {
            only: vec!["2".into(), "4".into()],
            perturbation: Some(0.1),
            ..Default::default()
        };
        let r = run(&opts).unwrap();
        assert_eq!(r.failed_ids(), vec![2, 4]);
        let clean = run(&ReproOptions {
            only: vec!["2".into(), "4".into()],
            ..Default::default()
        })
        .unwrap();
        assert!(clean.all_pass, "{:?}", clean);
    }

    #[test]
    fn scaled_units_show_the_limit_two() {
        let opts = ReproOptions {
            only: vec!["3".into()],
            units: Units::Scaled,
            ..Default::default()
        };
        let r = run(&opts).unwrap();
        assert!(r.all_pass);
        let diff = r.criteria[0]
            .checks
            .iter()
            .find(|c| c.label.starts_with("alpha_500"))
            .unwrap();
        assert!((diff.expected.unwrap() - 2.0).abs() < 1e-15);
    }
}
