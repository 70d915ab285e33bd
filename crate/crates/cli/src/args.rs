use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

/// Weighted Bergman kernels for radial weights on the unit disc.
#[derive(Debug, Parser)]
#[command(name = "bergkern", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report coefficient-level quantities multiplied by 2π
    #[arg(long, global = true)]
    pub scaled_units: bool,

    /// Write the result here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct WeightArgs {
    /// Weight JSON file, or a shorthand: constant1, constant:<v>, step:<A>,<x>
    #[arg(long, value_name = "FILE|SHORTHAND", conflicts_with = "step")]
    pub weight: Option<String>,

    /// Two-level step weight A on [0, x], 1 on (x, 1)
    #[arg(long, value_name = "A,x", value_parser = parse_pair)]
    pub step: Option<(f64, f64)>,

    /// Smooth every jump of a step weight over this width
    #[arg(long, value_name = "WIDTH")]
    pub mollify: Option<f64>,

    /// Relative accuracy of moment quadrature
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,

    /// Multiply alpha_0 by (1 + REL) before any computation
    #[arg(long, value_name = "REL", allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate B(z, w) with a certified truncation bound
    KernelEval {
        #[command(flatten)]
        weight: WeightArgs,
        /// First point, "re,im"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        /// Second point, "re,im"; defaults to z
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Option<Complex64>,
        /// Absolute error target for the series
        #[arg(long, default_value_t = 1e-12)]
        eval_tol: f64,
    },
    /// Count and locate zeros of F(t) = Σ α_n tⁿ in |t| < rho
    FindZeros {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 0.99)]
        rho: f64,
        /// Truncation; chosen automatically when omitted
        #[arg(short = 'N', long = "truncation")]
        truncation: Option<usize>,
    },
    /// Rouché certificate on |t| = 1 - eps
    Rouche {
        #[command(flatten)]
        weight: WeightArgs,
        /// Ring parameter; the largest passing value on a grid when omitted
        #[arg(long)]
        eps: Option<f64>,
        /// Explicit second differences before the certified remainder
        #[arg(long, default_value_t = 500)]
        cutoff: usize,
    },
    /// Zero counts over a grid of two-level step weights (CSV)
    Sweep {
        /// Values of A: list "1,2,3" or range "start:stop:step"
        #[arg(long, value_parser = parse_values)]
        a: Values,
        /// Values of x, same syntax
        #[arg(long, value_parser = parse_values)]
        x: Values,
        #[arg(long, default_value_t = 0.99)]
        rho: f64,
    },
    /// Zero of the kernel for Lebesgue measure plus a point mass k at 0
    Dirac {
        #[arg(long)]
        k: f64,
    },
    /// Compare the Hartogs-domain kernel with B_λ/π at random or given points
    InflateCheck {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, requires = "t")]
        z: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, requires = "z")]
        t: Option<Complex64>,
        /// Number of random pairs when z and t are not given
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 8)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        agree_tol: f64,
    },
    /// Schur-test ratios I(ε, r)/(1 - r²)^ε over a radius grid (CSV)
    Schur {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        /// Radii "start:stop:step" or a list
        #[arg(long, value_parser = parse_values, default_value = "0:0.99:0.01")]
        grid: Values,
        /// Coefficients to test: the weight's differences, its coefficients, or all ones
        #[arg(long, value_enum, default_value_t = SequenceKind::Diff)]
        sequence: SequenceKind,
        /// Number of explicit coefficients
        #[arg(short = 'N', long = "terms", default_value_t = 4000)]
        terms: usize,
    },
    /// Coefficient conditions for L^p boundedness (JSON)
    CoeffCheck {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(short = 'N', long = "terms", default_value_t = 500)]
        terms: usize,
    },
    /// Ratios |Pf|_p / |f|_p for a test family (CSV)
    LpProbe {
        #[command(flatten)]
        weight: WeightArgs,
        /// Exponents, e.g. 1.5,2,3,4
        #[arg(long, value_parser = parse_values, default_value = "1.5,2,3,4")]
        p: Values,
        #[arg(short = 'N', long = "truncation", default_value_t = 40)]
        truncation: usize,
        /// Gauss radii per weight segment
        #[arg(long, default_value_t = 200)]
        radial_nodes: usize,
        /// Angles; 4N+8 when omitted
        #[arg(long)]
        angles: Option<usize>,
        /// JSON array of test functions instead of the default family
        #[arg(long, value_name = "FILE")]
        family: Option<PathBuf>,
    },
    /// Run the reproduction suite and print a pass/fail table
    Repro {
        /// Criterion ids or module names, comma separated
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Relative perturbation of alpha_0 for the coefficient and zero criteria
        #[arg(long, value_name = "REL", allow_hyphen_values = true)]
        perturb: Option<f64>,
        /// Emit JSON instead of the table
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SequenceKind {
    Diff,
    Alpha,
    Ones,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Values(pub Vec<f64>);

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok((parse_number(a)?, parse_number(b)?)),
        _ => Err(format!("expected two comma-separated numbers, got '{s}'")),
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = parse_pair(s)?;
    Ok(Complex64::new(re, im))
}

/// "a,b,c" or an inclusive range "start:stop:step".
pub fn parse_values(s: &str) -> Result<Values, String> {
    if s.contains(':') {
        let parts: Vec<f64> = s.split(':').map(parse_number).collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(format!("expected start:stop:step, got '{s}'"));
        };
        if !(step > 0.0) || stop < start {
            return Err(format!("range '{s}' needs step > 0 and stop >= start"));
        }
        // round to kill drift such as 0.30000000000000004
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        if count > 1_000_000 {
            return Err(format!("range '{s}' has too many points"));
        }
        let values = (0..=count)
            .map(|i| {
                let v = start + i as f64 * step;
                (v * 1e12).round() / 1e12
            })
            .collect();
        return Ok(Values(values));
    }
    let values: Vec<f64> = s.split(',').map(parse_number).collect::<Result<_, _>>()?;
    Ok(Values(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let v = parse_values("0:0.99:0.01").unwrap().0;
        assert_eq!(v.len(), 100);
        assert_eq!(v[30], 0.3);
        assert_eq!(v[99], 0.99);
        assert_eq!(parse_values("1.5,2,3").unwrap().0, vec![1.5, 2.0, 3.0]);
        assert!(parse_values("1:0:0.1").is_err());
        assert!(parse_values("a,b").is_err());
        assert_eq!(parse_pair("18,0.25").unwrap(), (18.0, 0.25));
        assert_eq!(
            parse_complex("-0.5,0.25").unwrap(),
            Complex64::new(-0.5, 0.25)
        );
    }
}
