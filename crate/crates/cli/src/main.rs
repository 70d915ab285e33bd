// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;

use std::f64::consts::PI;
use std::fs;
use std::process::ExitCode;

use bergkern::kernel::KernelSeries;
use bergkern::projector::{default_family, lp_probe_multi, DiscreteProjector, TestFunction};
use bergkern::regularity::{
    decompose_b, necessary_check, schur_bound_check, schur_integral, sufficient_check,
    CoefficientSequence,
};
use bergkern::repro::{self, ReproOptions, Units};
use bergkern::weights::RadialWeight;
use bergkern::zeros::{
    count_zeros_winding, dirac_kernel, dirac_zero_threshold, inflation_check,
    largest_passing_epsilon, mollify_weight, rouche_certificate_with, second_difference_bound,
    sweep_step_weights,
};
use bergkern::Error;
use clap::Parser;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use args::{Cli, Command, SequenceKind, WeightArgs};
use output::{csv_document, emit, json_document, num};

/// Why a run did not succeed; maps onto the exit code.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWeight(_) | Error::InvalidArgument { .. } | Error::Unsupported(_) => {
                Self::Usage(e.to_string())
            }
            _ => Self::Compute(e.to_string()),
        }
    }
}

/// A finished run: text to emit and whether its result is certified.
struct Outcome {
    text: String,
    certified: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let units = if cli.scaled_units {
        Units::Scaled
    } else {
        Units::True
    };
    match run(&cli.command, units) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.text, cli.out.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if outcome.certified {
                ExitCode::SUCCESS
            } else {
                eprintln!("result is not certified");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("BERGKERN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BERGKERN_THREADS='{raw}' must be a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn load_weight(args: &WeightArgs) -> Result<RadialWeight, Failure> {
    let base = match (&args.weight, args.step) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage("--weight and --step are exclusive".into()))
        }
        (None, Some((a, x))) => RadialWeight::two_level(a, x)?,
        (Some(arg), None) => parse_weight_arg(arg)?,
        (None, None) => {
            return Err(Failure::Usage(
                "a weight is required: --weight or --step".into(),
            ))
        }
    };
    match args.mollify {
        Some(width) => Ok(mollify_weight(&base, width)?),
        None => Ok(base),
    }
}

fn parse_weight_arg(arg: &str) -> Result<RadialWeight, Failure> {
    if arg == "constant1" {
        return Ok(RadialWeight::constant(1.0)?);
    }
    if let Some(v) = arg.strip_prefix("constant:") {
        let v: f64 = v
            .parse()
            .map_err(|_| Failure::Usage(format!("--weight: bad constant '{v}'")))?;
        return Ok(RadialWeight::constant(v)?);
    }
    if let Some(rest) = arg.strip_prefix("step:") {
        let (a, x) =
            args::parse_pair(rest).map_err(|e| Failure::Usage(format!("--weight: {e}")))?;
        return Ok(RadialWeight::two_level(a, x)?);
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| Failure::Usage(format!("--weight: cannot read '{arg}': {e}")))?;
    Ok(RadialWeight::from_json(&text)?)
}

/// The weight and its series, perturbed and then rescaled to `units`.
fn load_series(args: &WeightArgs, units: Units) -> Result<(RadialWeight, KernelSeries), Failure> {
    let weight = load_weight(args)?;
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(Failure::Usage(format!(
            "--tol {} must lie in (0, 1)",
            args.tol
        )));
    }
    let series = KernelSeries::from_weight_with_tol(weight.clone(), args.tol)?;
    let series = match args.perturb {
        Some(d) if d > -1.0 && d.is_finite() => {
            series.with_coefficient(0, series.alpha(0)? * (1.0 + d))?
        }
        Some(d) => {
            return Err(Failure::Usage(format!(
                "--perturb {d} must be finite and > -1"
            )))
        }
        None => series,
    };
    Ok((weight, series.scaled(units.factor())))
}

const TREND_FIELDS: &[&str] = &["max", "median", "slope", "projected"];

/// Multiplies the named numeric fields of a JSON object by `factor`.
fn scale_fields(v: &mut Value, fields: &[&str], factor: f64) {
    for f in fields {
        if let Some(x) = v.get(*f).and_then(Value::as_f64) {
            v[*f] = json!(x * factor);
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable result")
}

fn run(command: &Command, units: Units) -> Result<Outcome, Failure> {
    let u = units.factor();
    match command {
        Command::KernelEval {
            weight,
            z,
            w,
            eval_tol,
        } => {
            let (weight, series) = load_series(weight, units)?;
            let w = w.unwrap_or(*z);
            let v = series.kernel_eval(*z, w, *eval_tol)?;
            let result = json!({
                "weight": to_value(&weight),
                "z": [z.re, z.im],
                "w": [w.re, w.im],
                "value": [v.value.re, v.value.im],
                "err_bound": v.err_bound,
                "terms": v.n_used,
            });
            Ok(Outcome {
                text: json_document("kernel-eval", units, result),
                certified: true,
            })
        }
        Command::FindZeros {
            weight,
            rho,
            truncation,
        } => {
            let (weight, series) = load_series(weight, units)?;
            let report = count_zeros_winding(&series, *rho, *truncation)?;
            let certified = report.certified;
            let mut result = to_value(&report);
            result["weight"] = to_value(&weight);
            Ok(Outcome {
                text: json_document("find-zeros", units, result),
                certified,
            })
        }
        Command::Rouche {
            weight,
            eps,
            cutoff,
        } => {
            let (weight, series) = load_series(weight, units)?;
            let cert = match eps {
                Some(e) => rouche_certificate_with(&series, *e, *cutoff)?,
                None => match largest_passing_epsilon(&series)? {
                    Some(c) => c,
                    None => rouche_certificate_with(
                        &series,
                        bergkern::zeros::epsilon_grid()[0],
                        *cutoff,
                    )?,
                },
            };
            let sb = second_difference_bound(&series, *cutoff)?;
            let a = series.coeffs(1)?;
            let result = json!({
                "weight": to_value(&weight),
                "epsilon": cert.epsilon,
                "ring_radius": cert.ring_radius,
                "linear_root": cert.linear_root,
                "alpha_0": a[0],
                "alpha_1": a[1],
                "min_l": cert.min_l,
                "min_l_sampled": cert.min_l_sampled,
                "s_bound": cert.s_bound,
                "s_certified": cert.s_certified,
                "second_differences": {
                    "cutoff": sb.cutoff,
                    "all_negative": sb.all_negative,
                    "partial_sum": sb.partial_sum,
                    "remainder_bound": sb.remainder_bound,
                    "telescoped_value": sb.telescoped_value,
                    "limit_value": sb.limit_value,
                    "limit_first_difference": sb.limit_value.map(|v| (a[1] - a[0]) - v),
                },
                "holds": cert.holds,
            });
            Ok(Outcome {
                text: json_document("rouche", units, result),
                certified: cert.holds,
            })
        }
        Command::Sweep { a, x, rho } => {
            let rows = sweep_step_weights(&a.0, &x.0, *rho);
            let certified = rows.iter().all(|r| r.certified);
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.a),
                        num(r.x),
                        r.zero_count.map(|c| c.to_string()).unwrap_or_default(),
                        r.certified.to_string(),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            Ok(Outcome {
                text: csv_document(
                    &format!("sweep rho={}", num(*rho)),
                    units,
                    &["a", "x", "zero_count", "certified", "error"],
                    &table,
                ),
                certified,
            })
        }
        Command::Dirac { k } => {
            let d = dirac_zero_threshold(*k)?;
            let mut result = to_value(&d);
            result["f_at_minus_one"] = json!(dirac_kernel(*k, Complex64::new(-1.0, 0.0)).re * u);
            result["alpha_0"] = json!(u / (PI + k));
            Ok(Outcome {
                text: json_document("dirac", units, result),
                certified: true,
            })
        }
        Command::InflateCheck {
            weight,
            z,
            t,
            pairs,
            seed,
            agree_tol,
        } => {
            let w = load_weight(weight)?;
            let points: Vec<(Complex64, Complex64)> = match (z, t) {
                (Some(z), Some(t)) => vec![(*z, *t)],
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*pairs)
                        .map(|_| {
                            let mut p = || {
                                Complex64::from_polar(
                                    0.9 * rng.gen::<f64>().sqrt(),
                                    2.0 * PI * rng.gen::<f64>(),
                                )
                            };
                            (p(), p())
                        })
                        .collect()
                }
            };
            let mut rows = Vec::new();
            let mut all_agree = true;
            for (z, t) in points {
                let c = inflation_check(&w, z, t, 0.01 * agree_tol)?;
                let agree = c.difference <= *agree_tol;
                all_agree &= agree;
                rows.push(json!({
                    "z": [z.re, z.im],
                    "t": [t.re, t.im],
                    "hartogs_slice": [c.lhs.re, c.lhs.im],
                    "kernel_over_pi": [c.rhs.re, c.rhs.im],
                    "difference": c.difference,
                    "terms": c.terms,
                    "agree": agree,
                }));
            }
            let result = json!({ "weight": to_value(&w), "tolerance": agree_tol, "all_agree": all_agree, "points": rows });
            Ok(Outcome {
                text: json_document("inflate-check", units, result),
                certified: all_agree,
            })
        }
        Command::Schur {
            weight,
            eps,
            grid,
            sequence,
            terms,
        } => {
            // the Schur test is scale-free: ratios are normalised by sup |β|²
            let seq = match sequence {
                SequenceKind::Ones => CoefficientSequence::constant(1.0, *terms)?,
                SequenceKind::Alpha => {
                    CoefficientSequence::from_series(&load_series(weight, Units::True)?.1, *terms)?
                }
                SequenceKind::Diff => CoefficientSequence::differences_of(
                    &load_series(weight, Units::True)?.1,
                    *terms,
                )?,
            };
            let report = schur_bound_check(&seq, *eps, &grid.0)?;
            let mut table = Vec::new();
            for (&r, &ratio) in report.z_grid.iter().zip(&report.ratios) {
                let i = schur_integral(&seq, *eps, r)?;
                table.push(vec![
                    num(r),
                    num(i.value),
                    num(i.tail_bound),
                    num(ratio),
                    num(report.theoretical_c),
                ]);
            }
            let title = format!(
                "schur eps={} sequence={} sup_beta={} empirical_c={} passes={}",
                num(*eps),
                match sequence {
                    SequenceKind::Diff => "diff",
                    SequenceKind::Alpha => "alpha",
                    SequenceKind::Ones => "ones",
                },
                num(report.sup_beta),
                num(report.empirical_c),
                report.passes
            );
            Ok(Outcome {
                text: csv_document(
                    &title,
                    units,
                    &[
                        "r",
                        "integral",
                        "tail_bound",
                        "normalized_ratio",
                        "bound_c_eps",
                    ],
                    &table,
                ),
                certified: report.passes,
            })
        }
        Command::CoeffCheck { weight, terms } => {
            let (w, series) = load_series(weight, Units::True)?;
            let seq = CoefficientSequence::from_series(&series, *terms)?;
            let nec = necessary_check(&seq)?;
            let suf = sufficient_check(&seq, Some(&w))?;
            let dec = decompose_b(&seq);
            let b_last = dec.b.last().map(|b| b.re).unwrap_or(f64::NAN);
            let mut nec_v = to_value(&nec);
            let mut suf_v = to_value(&suf);
            scale_fields(&mut nec_v, &["limsup_estimate"], u);
            scale_fields(&mut nec_v["trend"], TREND_FIELDS, u);
            scale_fields(&mut suf_v, &["sup_diff"], u);
            scale_fields(&mut suf_v["trend"], TREND_FIELDS, u);
            scale_fields(&mut suf_v["comparability"], &["lower", "upper"], u);
            let result = json!({
                "weight": to_value(&w),
                "terms": terms,
                "necessary": nec_v,
                "sufficient": suf_v,
                "differences": {
                    "sup_abs": dec.sup_abs * u,
                    "last": b_last * u,
                    "reconstruction_error": dec.reconstruction_error * u,
                    "reconstructs": dec.reconstructs,
                },
                "note": "finite-range witnesses, not proofs",
            });
            Ok(Outcome {
                text: json_document("coeff-check", units, result),
                certified: nec.finite_trend && suf.bounded_verdict,
            })
        }
        Command::LpProbe {
            weight,
            p,
            truncation,
            radial_nodes,
            angles,
            family,
        } => {
            let w = load_weight(weight)?;
            let family = match family {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        Failure::Usage(format!("--family: cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<Vec<TestFunction>>(&text)
                        .map_err(|e| Failure::Usage(format!("--family: {e}")))?
                }
                None => default_family(),
            };
            let angles = angles.unwrap_or(4 * truncation + 8);
            let proj = DiscreteProjector::with_grid(w, *truncation, *radial_nodes, angles)?;
            let reports = lp_probe_multi(&proj, &p.0, &family)?;
            let mut table = Vec::new();
            for r in &reports {
                for row in &r.rows {
                    table.push(vec![
                        num(r.p),
                        row.label.clone(),
                        num(row.norm_f),
                        num(row.norm_pf),
                        row.ratio.map(num).unwrap_or_default(),
                        row.note.clone().unwrap_or_default(),
                    ]);
                }
                table.push(vec![
                    num(r.p),
                    "max".into(),
                    String::new(),
                    String::new(),
                    num(r.max_ratio),
                    "lower bound on the operator norm".into(),
                ]);
            }
            let (nr, na) = proj.grid().shape();
            Ok(Outcome {
                text: csv_document(
                    &format!("lp-probe N={truncation} grid={nr}x{na}"),
                    units,
                    &["p", "function", "norm_f", "norm_pf", "ratio", "note"],
                    &table,
                ),
                certified: true,
            })
        }
        Command::Repro {
            only,
            perturb,
            json,
        } => {
            let opts = ReproOptions {
                only: only.clone(),
                perturbation: *perturb,
                units,
            };
            let report = repro::run(&opts)?;
            let text = if *json {
                json_document("repro", units, to_value(&report))
            } else {
                let mut s = format!("# bergkern repro\n# units: {}\n", units.describe());
                if let Some(d) = perturb {
                    s.push_str(&format!("# perturbation: alpha_0 scaled by 1 + {d}\n"));
                }
                for c in &report.criteria {
                    s.push_str(&format!("{c}\n"));
                    for check in &c.checks {
                        s.push_str(&format!(
                            "       {} {}: computed {}",
                            if check.pass { "ok  " } else { "FAIL" },
                            check.label,
                            num(check.computed)
                        ));
                        if let Some(e) = check.expected {
                            s.push_str(&format!(", expected {}", num(e)));
                        }
                        if let Some(t) = check.tolerance {
                            s.push_str(&format!(
                                ", tol {}{}",
                                num(t),
                                if check.relative { " rel" } else { "" }
                            ));
                        }
                        s.push('\n');
                    }
                    if let Some(n) = c.note {
                        s.push_str(&format!("       note: {n}\n"));
                    }
                }
                let failed = report.failed_ids();
                s.push_str(&format!(
                    "{} of {} criteria passed\n",
                    report.criteria.len() - failed.len(),
                    report.criteria.len()
                ));
                if !failed.is_empty() {
                    s.push_str(&format!("failed: {failed:?}\n"));
                }
                s
            };
            Ok(Outcome {
                text,
                certified: report.all_pass,
            })
        }
    }
}
