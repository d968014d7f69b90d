//! Riemann–Siegel theta: the average part of the zero-counting phase.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use rug::Float;

/// theta(T) = Im log Gamma(iT/2 + 1/4) - (T/2) log pi, principal branch,
/// continuous from theta(0) = 0 (log Gamma is analytic on Re > 0).
pub fn theta_avg(t: f64, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec_bits();
    if t < 0.0 {
        return Err(Error::Domain {
            value: t,
            domain: "T >= 0".into(),
        });
    }
    if t == 0.0 {
        return Ok(Float::new(prec));
    }
    let z = ComplexHP::from_parts(
        Float::with_val(prec, 0.25),
        Float::with_val(prec, t) / 2u32,
    );
    let lg = ln_gamma(&z, ctx)?;
    let half_t_ln_pi = Float::with_val(prec, t) / 2u32 * crate::complex::ln_pi(ctx);
    Ok(lg.im - half_t_ln_pi)
}

/// Classical asymptotic expansion of theta(T); O(T^-7) error, used as an
/// independent large-T cross-check.
pub fn theta_asymptotic(t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    t / 2.0 * ((t / two_pi).ln() - 1.0) - std::f64::consts::PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    #[test]
    fn vanishes_at_zero_and_small_t() {
        assert_eq!(theta_avg(0.0, &ctx()).unwrap().to_f64(), 0.0);
        // continuity down to the real axis: theta(t) ~ t (psi(1/4) - ln pi)/2
        let v = theta_avg(1e-8, &ctx()).unwrap().to_f64();
        assert!(v.abs() < 1e-7);
        let slope = v / 1e-8;
        // psi(1/4) = -gamma - 3 ln 2 - pi/2 = -4.2274535...; (psi - ln pi)/2 = -2.6860917...
        assert!((slope + 2.686091699).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn asymptotic_agreement_at_100() {
        let v = theta_avg(100.0, &ctx()).unwrap().to_f64();
        let a = theta_asymptotic(100.0);
        assert!((v - a).abs() < 1e-12, "{v} vs {a}");
    }

    #[test]
    fn negative_is_domain_error() {
        assert!(matches!(
            theta_avg(-1.0, &ctx()),
            Err(Error::Domain { .. })
        ));
    }
}
