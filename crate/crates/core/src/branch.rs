//! Continuous branch of Im log xi(1/2 + iT), the argument-principle phase
//! behind the exact zero count N(T) = Im log xi(1/2 + iT) / pi.
//!
//! The branch is anchored at T = 0 where log xi is real, and followed along
//! the homotopic path 1/2 -> 2 -> 2 + iT -> 1/2 + iT. The first two legs need
//! no stepping: on [1/2, 2] xi is real positive, and on Re = 2 every term of
//!   log xi = log(1/2) + log s + log(s-1) - (s/2) log pi + lnGamma(s/2) + log zeta
//! stays principal (|zeta(2+it) - 1| < pi^2/6 - 1 < 1 keeps Re zeta > 0, the
//! other factors never cross the cut). Only arg zeta needs phase tracking on
//! the final horizontal leg, done by adaptive step halving so consecutive
//! samples differ by less than pi/2.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::theta::theta_avg;
use crate::zeta::zeta;
use rug::Float;

/// Continuously tracked arg zeta(sigma + iT) from sigma = 2 down to 1/2,
/// seeded with the principal value at sigma = 2 (equal to the branch
/// continued up the Re = 2 line from the real axis).
pub(crate) fn arg_zeta_to_half(t: f64, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let half_pi = Float::with_val(prec, &pi / 2u32);
    let two_pi = Float::with_val(prec, &pi * 2u32);

    let arg_at = |sigma: f64| -> Result<Float> {
        let s = ComplexHP::from_parts(Float::with_val(prec, sigma), Float::with_val(prec, t));
        Ok(zeta(&s, ctx)?.arg())
    };

    let mut sigma = 2.0;
    let mut prev_raw = arg_at(sigma)?;
    let mut unwrapped = prev_raw.clone();
    let mut h = ctx.max_branch_step;
    while sigma > 0.5 {
        let next = (sigma - h).max(0.5);
        let raw = arg_at(next)?;
        // principal-value jump folded into (-pi, pi]
        let mut delta = Float::with_val(prec, &raw - &prev_raw);
        while delta > half_pi.clone() * 2u32 {
            delta -= &two_pi;
        }
        while delta < -(half_pi.clone() * 2u32) {
            delta += &two_pi;
        }
        if delta.clone().abs() >= half_pi {
            h /= 2.0;
            if h < 1e-12 {
                return Err(Error::BranchTracking { at: t });
            }
            continue;
        }
        unwrapped += &delta;
        prev_raw = raw;
        sigma = next;
        h = (h * 1.5).min(ctx.max_branch_step);
    }
    Ok(unwrapped)
}

/// Im log xi(1/2 + iT), branch tracked continuously from T = 0.
///
/// Between consecutive zero ordinates the value is an exact integer multiple
/// of pi (xi is real on the critical line); it jumps by pi alpha_j across an
/// ordinate of multiplicity alpha_j.
pub fn im_log_xi_critical(t: f64, ctx: &PrecisionCtx) -> Result<Float> {
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
    // Refuse points essentially on a zero: |zeta(1/2+iT)| below tolerance.
    let s = ComplexHP::from_parts(Float::with_val(prec, 0.5), Float::with_val(prec, t));
    let z_half = zeta(&s, ctx)?;
    // |zeta| ~ |Z'| d near an ordinate at distance d; flag anything closer
    // than the bisection scale
    if z_half.abs().to_f64() < (ctx.target_tol * 1e6).max(1e-8) {
        return Err(Error::NearZero { at: t });
    }
    // Im[log(1/2+iT) + log(-1/2+iT)] = pi exactly; with theta(T) collecting
    // the Gamma and pi^(s/2) parts this is eq. N(T) = 1 + theta/pi + S(T).
    let theta = theta_avg(t, ctx)?;
    let s_arg = arg_zeta_to_half(t, ctx)?;
    let pi = crate::complex::pi(ctx);
    Ok(pi + theta + s_arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    #[test]
    fn zero_at_origin() {
        assert_eq!(im_log_xi_critical(0.0, &ctx()).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn one_zero_below_fifteen() {
        let ct = ctx();
        let v = im_log_xi_critical(15.0, &ct).unwrap().to_f64();
        assert!((v - std::f64::consts::PI).abs() < 1e-9, "{v}");
    }

    #[test]
    fn three_zeros_below_thirty() {
        let v = im_log_xi_critical(30.0, &ctx()).unwrap().to_f64();
        assert!((v - 3.0 * std::f64::consts::PI).abs() < 1e-9, "{v}");
    }

    #[test]
    fn small_t_continuity() {
        // no zeros below mu_1: phase stays 0 mod pi, i.e. exactly 0
        for t in [0.5, 2.0, 8.0, 13.9] {
            let v = im_log_xi_critical(t, &ctx()).unwrap().to_f64();
            assert!(v.abs() < 1e-9, "t = {t}: {v}");
        }
    }

    #[test]
    fn near_zero_ordinate_is_error() {
        assert!(matches!(
            im_log_xi_critical(14.134725141734694, &ctx()),
            Err(Error::NearZero { .. })
        ));
    }

    #[test]
    fn theta_cross_check_at_first_zero_height() {
        // theta(T) vs im_log_xi_critical(T) - pi - Im log zeta(1/2 + iT) with
        // the last term taken as the *principal* argument, valid here because
        // the fluctuation lies inside (-pi, pi] just below mu_1.
        let ct = ctx();
        let t = 14.134725; // close to, but not on, the ordinate
        let total = im_log_xi_critical(t, &ct).unwrap();
        let s = ComplexHP::from_f64(ct.prec_bits(), 0.5, t);
        let principal_arg = zeta(&s, &ct).unwrap().arg();
        let theta = theta_avg(t, &ct).unwrap();
        let pi = crate::complex::pi(&ct);
        let resid = (total - theta - principal_arg - pi).abs().to_f64();
        assert!(resid < 1e-30, "{resid:e}");
    }
}
