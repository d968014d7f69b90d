//! The completed zeta function xi(z) = z(z-1)/2 pi^(-z/2) Gamma(z/2) zeta(z),
//! entire, with xi(z) = xi(1-z).

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::Result;
use crate::gamma::ln_gamma;
use crate::zeta::{zeta, zeta_star};
use rug::Float;

/// xi(z) to the context tolerance, valid for any finite z.
///
/// For Re(z) >= 0 the removable singularities at z = 0, 1 are handled by the
/// identities z Gamma(z/2) = 2 Gamma(z/2 + 1) and (z-1) zeta(z) entire, so
///   xi(z) = pi^(-z/2) Gamma(z/2 + 1) (z-1) zeta(z).
/// For Re(z) < 0, reflecting zeta and collapsing sin(pi z/2) Gamma(z/2)
/// through the Gamma reflection formula gives the pole-free form
///   xi(z) = z(z-1)/2 2^z pi^(z/2) Gamma(1-z)/Gamma(1-z/2) zeta(1-z).
pub fn xi(z: &ComplexHP, ctx: &PrecisionCtx) -> Result<ComplexHP> {
    let prec = ctx.prec_bits();
    let ln_pi = crate::complex::ln_pi(ctx);
    let out = if z.re.to_f64() >= 0.0 {
        let half_z = z.scale_f64(0.5);
        let lg = ln_gamma(&half_z.add_f64(1.0), ctx)?;
        let log_factor = lg.sub(&half_z.scale(&ln_pi));
        log_factor.exp().mul(&zeta_star(z, ctx)?)
    } else {
        let one_minus_z = z.neg().add_f64(1.0);
        let ln2 = Float::with_val(prec, rug::float::Constant::Log2);
        let mut log_factor = z.scale(&ln2);
        log_factor = log_factor.add(&z.scale_f64(0.5).scale(&ln_pi));
        log_factor = log_factor.add(&ln_gamma(&one_minus_z, ctx)?);
        log_factor = log_factor.sub(&ln_gamma(&z.scale_f64(-0.5).add_f64(1.0), ctx)?);
        let poly = z.mul(&z.add_f64(-1.0)).scale_f64(0.5);
        poly.mul(&log_factor.exp()).mul(&zeta(&one_minus_z, ctx)?)
    };
    out.ensure_finite()?;
    Ok(out)
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
    fn xi_at_zero_and_one_is_half() {
        for z in [c(0.0, 0.0), c(1.0, 0.0)] {
            let v = xi(&z, &ctx()).unwrap();
            assert!((v.re.to_f64() - 0.5).abs() < 1e-40);
            assert!(v.im.to_f64().abs() < 1e-40);
        }
    }

    #[test]
    fn xi_at_two_is_pi_over_six() {
        let ct = ctx();
        let v = xi(&c(2.0, 0.0), &ct).unwrap();
        let expect = crate::complex::pi(&ct) / 6u32;
        assert!(Float::with_val(ct.prec_bits(), &v.re - &expect).abs() < 1e-40);
    }

    #[test]
    fn xi_at_half_matches_constant() {
        // xi(1/2) = -Gamma(1/4) zeta(1/2) / (8 pi^(1/4)), frozen ahead of build
        let v = xi(&c(0.5, 0.0), &ctx()).unwrap();
        let s = v.re.to_string_radix(10, Some(26));
        assert!(s.starts_with("4.9712077818831410991277"), "{s}");
        assert!((v.re.to_f64() - 0.4971207781883141).abs() < 1e-15);
    }

    #[test]
    fn functional_equation_random_strip() {
        use rand::{Rng, SeedableRng};
        let ct = ctx();
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xf_e);
        for _ in 0..100 {
            let re = rng.gen_range(-2.0..3.0);
            let im = rng.gen_range(-50.0..50.0);
            let z = c(re, im);
            let a = xi(&z, &ct).unwrap();
            let b = xi(&z.neg().add_f64(1.0), &ct).unwrap();
            let bound = 10.0 * ct.target_tol * (1.0 + a.abs().to_f64());
            let diff = a.sub(&b).abs().to_f64();
            assert!(diff <= bound, "fe residual {diff:e} > {bound:e} at {re}+{im}i");
        }
    }

    #[test]
    fn conjugation() {
        let ct = ctx();
        for (re, im) in [(0.3, 12.0), (-1.1, 4.2), (2.4, 33.0)] {
            let a = xi(&c(re, im), &ct).unwrap();
            let b = xi(&c(re, -im), &ct).unwrap();
            assert!(a.sub(&b.conj()).abs().to_f64() <= 10.0 * ct.target_tol * (1.0 + a.abs().to_f64()));
        }
    }

    #[test]
    fn entire_near_removable_points() {
        let ct = ctx();
        // approach z = 1 and z = 0; values must stay near 1/2
        for z in [c(1.0 + 1e-18, 1e-19), c(1e-18, -1e-19)] {
            let v = xi(&z, &ct).unwrap();
            assert!((v.re.to_f64() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn precision_scaling() {
        // doubling work_digits moves the result by less than the coarse tolerance
        let coarse = PrecisionCtx::new(25, 1e-18, 20, 0.05).unwrap();
        let fine = PrecisionCtx::new(50, 1e-40, 20, 0.05).unwrap();
        let z_c = ComplexHP::from_f64(coarse.prec_bits(), 0.3, 17.0);
        let z_f = ComplexHP::from_f64(fine.prec_bits(), 0.3, 17.0);
        let a = xi(&z_c, &coarse).unwrap();
        let b = xi(&z_f, &fine).unwrap();
        let diff = (a.re.to_f64() - b.re.to_f64()).abs() + (a.im.to_f64() - b.im.to_f64()).abs();
        assert!(diff < coarse.target_tol * (1.0 + a.abs().to_f64()) * 10.0);
    }
}
