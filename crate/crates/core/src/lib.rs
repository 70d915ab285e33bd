//! Weighted Bergman kernels for radial weights on the unit disc.
//!
//! For a radial weight `λ` with `1/C ≤ λ ≤ C` the kernel is
//! `B_λ(z, w) = Σ α_n (z w̄)ⁿ` with `α_n = 1/μ_n` and
//! `μ_n = 2π ∫₀¹ r^{2n+1} λ(r) dr`. The modules compute the coefficients
//! ([`weights`]), evaluate the series with certified truncation ([`kernel`]),
//! certify and locate its zeros ([`zeros`]), check coefficient conditions
//! for `L^p` boundedness ([`regularity`]) and probe a discretised projection
//! ([`projector`]). [`repro`] runs the full verification suite.
//!
//! ```
//! use bergkern::kernel::KernelSeries;
//! use bergkern::weights::RadialWeight;
//! use bergkern::zeros::rouche_certificate;
//!
//! let s = KernelSeries::from_weight(RadialWeight::two_level(18.0, 0.25)?)?;
//! assert!(rouche_certificate(&s, 0.01)?.holds);
//! # Ok::<(), bergkern::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kernel;
pub mod projector;
pub mod quadrature;
pub mod regularity;
pub mod repro;
pub mod weights;
pub mod zeros;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/zeros.md")]
    mod zeros {}
    #[doc = include_str!("../../../book/src/regularity.md")]
    mod regularity {}
    #[doc = include_str!("../../../book/src/projector.md")]
    mod projector {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
