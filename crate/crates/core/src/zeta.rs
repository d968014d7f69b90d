//! Riemann zeta on the whole plane: Euler–Maclaurin summation with Bernoulli
//! corrections, functional-equation reflection for Re(z) < 0.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::gamma::{bernoulli_fact_ratios, ln_gamma};
use once_cell::sync::Lazy;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

static LN_CACHE: Lazy<RwLock<HashMap<u32, Arc<Vec<Float>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// ln(n) for n = 1..=n_max at the given precision (index n-1).
fn ln_table(n_max: usize, prec: u32) -> Arc<Vec<Float>> {
    {
        let cache = LN_CACHE.read().unwrap();
        if let Some(v) = cache.get(&prec) {
            if v.len() >= n_max {
                return Arc::clone(v);
            }
        }
    }
    let mut cache = LN_CACHE.write().unwrap();
    let mut v: Vec<Float> = cache.get(&prec).map(|a| (**a).clone()).unwrap_or_default();
    if v.len() < n_max {
        let grow_to = n_max.next_power_of_two().max(1024);
        for n in (v.len() + 1)..=grow_to {
            v.push(Float::with_val(prec, n as u64).ln());
        }
    }
    let arc = Arc::new(v);
    cache.insert(prec, Arc::clone(&arc));
    arc
}

/// Euler–Maclaurin truncation point: N such that K Bernoulli terms reach the
/// target tolerance; the decay ratio per term is ((|t| + 2K) / (2 pi N))^2.
fn em_cutoff(im_abs: f64, ctx: &PrecisionCtx) -> usize {
    let k = ctx.em_terms as f64;
    let d_eff = -ctx.target_tol.log10() + 2.0;
    let q = 10f64.powf(d_eff / (2.0 * k));
    let base = q * (im_abs + 2.0 * k) / (2.0 * std::f64::consts::PI);
    (base.ceil() as usize)
        .max((0.8 * ctx.work_digits as f64).ceil() as usize)
        .max(16)
}

struct EmSum {
    /// main sum + N^{-s}/2 + Bernoulli corrections (everything except the pole term)
    regular: ComplexHP,
    /// N^{1-s}
    n_pow_1ms: ComplexHP,
}

/// Core Euler–Maclaurin pieces for Re(s) >= 0, s != 1 not required here: the
/// pole lives entirely in the N^{1-s}/(s-1) term which the caller assembles.
fn em_pieces(s: &ComplexHP, ctx: &PrecisionCtx) -> Result<EmSum> {
    let prec = ctx.prec_bits();
    let sigma = s.re.to_f64();
    let t_abs = s.im.to_f64().abs();
    let k_max = ctx.em_terms as usize;
    let bfac = bernoulli_fact_ratios(k_max, prec);

    let mut n = em_cutoff(t_abs, ctx);
    for attempt in 0..3 {
        let lns = ln_table(n, prec);
        let neg_s = s.neg();
        // main sum over n = 1..N-1 of exp(-s ln n), chunked and tree-reduced
        let main = exec::chunked_sum(
            n - 1,
            64,
            ExecMode::default(),
            || ComplexHP::zero(prec),
            |acc, i| {
                // i = 0 -> n = 1 -> term 1
                if i == 0 {
                    return acc.add_f64(1.0);
                }
                let ln_n = &lns[i];
                acc.add(&neg_s.scale(ln_n).exp())
            },
            |a, b| a.add(&b),
        );

        let ln_big_n = Float::with_val(prec, n as u64).ln();
        let n_pow_ms = neg_s.scale(&ln_big_n).exp(); // N^{-s}
        let n_pow_1ms = n_pow_ms.scale(&Float::with_val(prec, n as u64)); // N^{1-s}

        let mut regular = main.add(&n_pow_ms.scale_f64(0.5));

        // Bernoulli corrections: term_k = B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
        let n_inv2 = Float::with_val(prec, n as u64).square().recip();
        let mut poch = s.clone(); // (s)_1
        let mut npow = n_pow_1ms.scale(&n_inv2); // N^{-s-1}
        let mut converged = false;
        let mut prev_mag = f64::INFINITY;
        let tol_stop = ctx.target_tol * 1e-2;
        for k in 1..=k_max {
            if k > 1 {
                let a = s.add_f64((2 * k - 3) as f64);
                let b = s.add_f64((2 * k - 2) as f64);
                poch = poch.mul(&a).mul(&b);
                npow = npow.scale(&n_inv2);
            }
            let term = poch.mul(&npow).scale(&bfac[k - 1]);
            let mag = term.abs().to_f64();
            regular = regular.add(&term);
            if mag < tol_stop {
                converged = true;
                break;
            }
            if mag > prev_mag {
                break; // divergence onset; need larger N
            }
            prev_mag = mag;
        }
        if converged {
            return Ok(EmSum { regular, n_pow_1ms });
        }
        if attempt < 2 {
            n *= 2;
        } else {
            return Err(Error::PrecisionExhausted {
                tol: ctx.target_tol,
                digits: ctx.work_digits,
                context: format!(
                    "Euler-Maclaurin stalled at N = {n}, sigma = {sigma:.3}, |t| = {t_abs:.3e}"
                ),
            });
        }
    }
    unreachable!()
}

/// Reflection factor chi(s) such that zeta(s) = chi(s) zeta(1-s):
/// chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s).
fn reflection_factor(s: &ComplexHP, ctx: &PrecisionCtx) -> Result<ComplexHP> {
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let ln2 = Float::with_val(prec, rug::float::Constant::Log2);
    let ln_pi = pi.clone().ln();
    let one_minus_s = s.neg().add_f64(1.0);
    // exp(s ln 2 + (s-1) ln pi + ln Gamma(1-s)) * sin(pi s / 2)
    let mut log_part = s.scale(&ln2);
    log_part = log_part.add(&s.add_f64(-1.0).scale(&ln_pi));
    log_part = log_part.add(&ln_gamma(&one_minus_s, ctx)?);
    let sin_part = s.scale(&pi).scale_f64(0.5).sin();
    Ok(log_part.exp().mul(&sin_part))
}

/// zeta(z) to the context tolerance, whole plane minus the pole at z = 1.
pub fn zeta(z: &ComplexHP, ctx: &PrecisionCtx) -> Result<ComplexHP> {
    let dist_pole = z.add_f64(-1.0).abs().to_f64();
    if dist_pole < 10f64.powi(-(ctx.work_digits as i32)) {
        return Err(Error::Pole {
            location: "z = 1".into(),
        });
    }
    if z.re.to_f64() < 0.0 {
        let one_minus = z.neg().add_f64(1.0);
        let z1 = zeta(&one_minus, ctx)?;
        let out = reflection_factor(z, ctx)?.mul(&z1);
        out.ensure_finite()?;
        return Ok(out);
    }
    let pieces = em_pieces(z, ctx)?;
    let s_minus_1 = z.add_f64(-1.0);
    let out = pieces.regular.add(&pieces.n_pow_1ms.div(&s_minus_1));
    out.ensure_finite()?;
    Ok(out)
}

/// (z - 1) zeta(z): entire, safe arbitrarily close to z = 1 (the pole term is
/// multiplied out analytically rather than cancelled numerically).
pub fn zeta_star(z: &ComplexHP, ctx: &PrecisionCtx) -> Result<ComplexHP> {
    let s_minus_1 = z.add_f64(-1.0);
    if z.re.to_f64() < 0.0 {
        let one_minus = z.neg().add_f64(1.0);
        let z1 = zeta(&one_minus, ctx)?;
        let out = reflection_factor(z, ctx)?.mul(&z1).mul(&s_minus_1);
        out.ensure_finite()?;
        return Ok(out);
    }
    let pieces = em_pieces(z, ctx)?;
    let out = pieces.regular.mul(&s_minus_1).add(&pieces.n_pow_1ms);
    out.ensure_finite()?;
    Ok(out)
}

/// Euler–Maclaurin truncation actually used at height t (diagnostics/benches).
pub fn em_terms_used(im_abs: f64, ctx: &PrecisionCtx) -> usize {
    em_cutoff(im_abs, ctx)
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
    fn basel_value() {
        let ct = ctx();
        let v = zeta(&c(2.0, 0.0), &ct).unwrap();
        let pi2_6 = crate::complex::pi(&ct).square() / 6u32;
        assert!(Float::with_val(ct.prec_bits(), &v.re - &pi2_6).abs() < 1e-40);
        assert!(v.im.to_f64().abs() < 1e-40);
    }

    #[test]
    fn trivial_zero_at_minus_two() {
        let v = zeta(&c(-2.0, 0.0), &ctx()).unwrap();
        assert!(v.abs().to_f64() < 1e-40);
    }

    #[test]
    fn half_matches_alternating_series_oracle() {
        // zeta(1/2) = -1.4603545088095868128894991525152980124672... frozen from
        // the accelerated alternating eta series computed ahead of the build.
        let v = zeta(&c(0.5, 0.0), &ctx()).unwrap();
        let expect = -1.4603545088095868128894991525153e0;
        assert!((v.re.to_f64() - expect).abs() < 1e-14);
        let s = v.re.to_string_radix(10, Some(26));
        assert!(s.starts_with("-1.460354508809586812889499"), "{s}");
    }

    #[test]
    fn pole_error() {
        assert!(matches!(
            zeta(&c(1.0, 0.0), &ctx()),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn zeta_star_smooth_through_pole() {
        let ct = ctx();
        // (s-1) zeta(s) -> 1 as s -> 1
        let v = zeta_star(&c(1.0, 0.0), &ct).unwrap();
        assert!((v.re.to_f64() - 1.0).abs() < 1e-39);
        let v2 = zeta_star(&c(1.0 + 1e-20, 1e-22), &ct).unwrap();
        assert!((v2.re.to_f64() - 1.0).abs() < 1e-18);
    }

    #[test]
    fn zeta_zero_value() {
        // zeta(0) = -1/2
        let v = zeta(&c(0.0, 0.0), &ctx()).unwrap();
        assert!((v.re.to_f64() + 0.5).abs() < 1e-40);
    }

    #[test]
    fn reflection_region_spot_value() {
        // zeta(-1) = -1/12
        let v = zeta(&c(-1.0, 0.0), &ctx()).unwrap();
        assert!((v.re.to_f64() + 1.0 / 12.0).abs() < 1e-38);
    }

    #[test]
    fn critical_line_spot_value() {
        // zeta(1/2 + 25i), reference digits frozen ahead of the build
        let v = zeta(&c(0.5, 25.0), &ctx()).unwrap();
        let (re, im) = v.to_f64_pair();
        assert!((re - 0.004984593364035675383).abs() < 1e-16, "{re}");
        assert!((im - (-0.014012301962583382963)).abs() < 1e-16, "{im}");
    }
}
