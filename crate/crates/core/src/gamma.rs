//! Principal-branch complex log-gamma via the Stirling series with downward
//! recurrence, plus the Bernoulli-number ratios shared with the zeta module.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Cache of B_{2k}/(2k)! per binary precision, k = 1.. (index 0 holds k = 1).
static BFACT_CACHE: Lazy<RwLock<HashMap<u32, Arc<Vec<Float>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// B_{2k}/(2k)! for k = 1..=k_max, computed as (-1)^(k+1) * 2 zeta(2k) / (2 pi)^(2k).
pub(crate) fn bernoulli_fact_ratios(k_max: usize, prec: u32) -> Arc<Vec<Float>> {
    {
        let cache = BFACT_CACHE.read().unwrap();
        if let Some(v) = cache.get(&prec) {
            if v.len() >= k_max {
                return Arc::clone(v);
            }
        }
    }
    let mut cache = BFACT_CACHE.write().unwrap();
    let existing = cache.get(&prec).map(|v| v.len()).unwrap_or(0);
    if existing >= k_max {
        return Arc::clone(cache.get(&prec).unwrap());
    }
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    let mut v: Vec<Float> = cache.get(&prec).map(|a| (**a).clone()).unwrap_or_default();
    for k in (v.len() + 1)..=k_max {
        let zeta2k = Float::with_val(prec, 2 * k as u32).zeta();
        let mut val = zeta2k * 2u32 / Float::with_val(prec, two_pi.clone().pow_u(2 * k as u32));
        if k % 2 == 0 {
            val = -val;
        }
        v.push(val);
    }
    let arc = Arc::new(v);
    cache.insert(prec, Arc::clone(&arc));
    arc
}

trait PowU {
    fn pow_u(self, e: u32) -> Self;
}
impl PowU for Float {
    fn pow_u(self, e: u32) -> Self {
        use rug::ops::Pow;
        self.pow(e)
    }
}

fn is_nonpositive_integer(z: &ComplexHP, tol: f64) -> Option<i64> {
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    if im.abs() > tol {
        return None;
    }
    let r = re.round();
    if r <= 0.0 && (re - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

/// Stirling shift threshold: far enough right that `em_terms` asymptotic
/// terms reach the target tolerance.
fn stirling_threshold(ctx: &PrecisionCtx) -> f64 {
    let k = ctx.em_terms as f64;
    let d = ctx.work_digits as f64;
    let r = (2.0 * k) / (2.0 * std::f64::consts::PI * std::f64::consts::E)
        * 10f64.powf((d + 8.0) / (2.0 * k));
    r.max(12.0)
}

/// Principal-branch log Gamma(z).
///
/// Satisfies `ln_gamma(z+1) = ln_gamma(z) + ln z` with principal logs for
/// Re(z) > 0, and is the analytic continuation off the cut (-inf, 0] elsewhere
/// (the negative real axis is taken as the limit from the upper half-plane).
pub fn ln_gamma(z: &ComplexHP, ctx: &PrecisionCtx) -> Result<ComplexHP> {
    let prec = ctx.prec_bits();
    if let Some(p) = is_nonpositive_integer(z, ctx.target_tol) {
        return Err(Error::Pole {
            location: format!("gamma pole at z = {}", p),
        });
    }
    let threshold = stirling_threshold(ctx);
    let re = z.re.to_f64();
    let shift = if re < threshold {
        (threshold - re).ceil() as u32
    } else {
        0
    };

    // log of the shift product: sum of principal logs of z, z+1, ..., z+m-1.
    // All factors stay in one half-plane (or on the positive axis), so the
    // principal-branch identity holds term by term.
    let mut log_shift = ComplexHP::zero(prec);
    let mut w = z.clone();
    for _ in 0..shift {
        log_shift = log_shift.add(&w.ln());
        w = w.add_f64(1.0);
    }

    // Stirling at w: (w - 1/2) ln w - w + ln(2 pi)/2 + sum c_k / w^(2k-1),
    // c_k = B_{2k} / (2k (2k-1)).
    let ln_w = w.ln();
    let half = Float::with_val(prec, 0.5);
    let mut acc = w.add_f64(-0.5).mul(&ln_w).sub(&w);
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    acc.re += two_pi.ln() * &half;

    let k_max = ctx.em_terms as usize;
    let bfac = bernoulli_fact_ratios(k_max, prec);
    let winv = w.recip();
    let winv2 = winv.mul(&winv);
    let mut pow = winv.clone();
    let tol_stop = ctx.target_tol * 1e-4;
    let mut prev_mag = f64::INFINITY;
    let mut converged = false;
    let mut fact = Float::with_val(prec, 1); // (2k-2)!
    for k in 1..=k_max {
        if k > 1 {
            fact *= ((2 * k - 3) * (2 * k - 2)) as u32;
        }
        let ck = Float::with_val(prec, &bfac[k - 1] * &fact);
        let term = pow.scale(&ck);
        let mag = term.abs().to_f64();
        acc = acc.add(&term);
        if mag < tol_stop {
            converged = true;
            break;
        }
        if mag > prev_mag {
            break; // asymptotic series turned; threshold too small
        }
        prev_mag = mag;
        pow = pow.mul(&winv2);
    }
    if !converged {
        return Err(Error::PrecisionExhausted {
            tol: ctx.target_tol,
            digits: ctx.work_digits,
            context: format!("Stirling series stalled at |w| = {:.3e}", w.abs().to_f64()),
        });
    }

    let out = acc.sub(&log_shift);
    out.ensure_finite()?;
    Ok(out)
}

/// psi_2(1) = (d^3/dz^3) log Gamma(z) at z = 1, extracted from three Cauchy
/// derivatives of `ln_gamma` on the circle |z - 1| = 1/2.
pub fn polygamma2_at_1(ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec_bits();
    let center = ComplexHP::from_f64(prec, 1.0, 0.0);
    let radius = Float::with_val(prec, 0.5);
    let coeffs = crate::cauchy::taylor_coeffs(
        |z| ln_gamma(z, ctx),
        &center,
        &radius,
        160,
        3,
        ctx,
        false,
    )?;
    // log Gamma(1 + w) = sum c_k w^k; psi_2(1) = 3! c_3.
    Ok(Float::with_val(prec, &coeffs[3].re * 6u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    fn c(re: f64, im: f64) -> ComplexHP {
        ComplexHP::from_f64(ctx().prec_bits(), re, im)
    }

    #[test]
    fn gamma_one_is_zero() {
        let v = ln_gamma(&c(1.0, 0.0), &ctx()).unwrap();
        assert!(v.abs().to_f64() < 1e-40);
    }

    #[test]
    fn gamma_half_is_half_log_pi() {
        let ct = ctx();
        let v = ln_gamma(&c(0.5, 0.0), &ct).unwrap();
        let expect = crate::complex::ln_pi(&ct) / 2u32;
        assert!(Float::with_val(ct.prec_bits(), &v.re - &expect).abs() < 1e-40);
        assert!(v.im.to_f64().abs() < 1e-40);
    }

    #[test]
    fn gamma_quarter_thirty_digits() {
        // Frozen oracle: Stirling series at a shifted argument plus downward
        // product recurrence, evaluated independently before the build.
        let expect = "1.288022524698077457370610440220";
        let v = ln_gamma(&c(0.25, 0.0), &ctx()).unwrap();
        let got = v.re.to_string_radix(10, Some(31));
        assert!(
            got.starts_with(&expect[..28]),
            "got {} want prefix {}",
            got,
            expect
        );
    }

    #[test]
    fn recurrence_random_points() {
        use rand::{Rng, SeedableRng};
        let ct = ctx();
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11ce);
        for _ in 0..30 {
            let re = rng.gen_range(0.01..10.0);
            let im = rng.gen_range(-20.0..20.0);
            let z = c(re, im);
            let lhs = ln_gamma(&z.add_f64(1.0), &ct).unwrap();
            let rhs = ln_gamma(&z, &ct).unwrap().add(&z.ln());
            let diff = lhs.sub(&rhs).abs().to_f64();
            assert!(diff < 1e-38, "recurrence residual {diff:e} at {re}+{im}i");
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let ct = ctx();
        let z = c(0.3, 7.7);
        let a = ln_gamma(&z, &ct).unwrap();
        let b = ln_gamma(&z.conj(), &ct).unwrap();
        assert!(a.sub(&b.conj()).abs().to_f64() < 1e-38);
    }

    #[test]
    fn pole_error_at_nonpositive_integers() {
        for p in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(
                ln_gamma(&c(p, 0.0), &ctx()),
                Err(Error::Pole { .. })
            ));
        }
    }

    #[test]
    fn left_half_plane_against_reflection() {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z) as a numeric cross-check for a
        // shifted left-half-plane argument. 1-z must be formed from z itself,
        // not from decimal literals, or the points are not exact complements.
        let ct = ctx();
        let z = c(-1.3, 2.4);
        let lg = ln_gamma(&z, &ct).unwrap();
        let lg1mz = ln_gamma(&z.neg().add_f64(1.0), &ct).unwrap();
        let pi = crate::complex::pi(&ct);
        let piz = z.scale(&pi);
        let rhs = ComplexHP::real(pi).div(&piz.sin()).ln();
        // branches may differ by 2 pi i; compare exp of both sides
        let lhs_exp = lg.add(&lg1mz).exp();
        let rhs_exp = rhs.exp();
        assert!(lhs_exp.sub(&rhs_exp).abs().to_f64() < 1e-36);
    }

    #[test]
    fn psi2_at_one_is_minus_two_zeta3() {
        let ct = ctx();
        let v = polygamma2_at_1(&ct).unwrap();
        // -2 zeta(3)
        let expect = Float::with_val(ct.prec_bits(), 3u32).zeta() * -2i32;
        assert!(Float::with_val(ct.prec_bits(), &v - &expect).abs() < 1e-35);
    }
}
