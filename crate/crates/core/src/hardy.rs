//! Hardy's Z function: the real-valued rotation e^(i theta(t)) zeta(1/2 + it)
//! whose sign changes mark odd-multiplicity critical-line zeros.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::theta::theta_avg;
use crate::zeta::zeta;
use rug::Float;

/// Z(t) = Re[e^(i theta(t)) zeta(1/2 + it)]; the imaginary residue of the
/// rotation is checked against the context tolerance.
pub fn hardy_z(t: f64, ctx: &PrecisionCtx) -> Result<Float> {
    if t <= 0.0 {
        return Err(Error::Domain {
            value: t,
            domain: "t > 0".into(),
        });
    }
    let prec = ctx.prec_bits();
    let theta = theta_avg(t, ctx)?;
    let s = ComplexHP::from_parts(Float::with_val(prec, 0.5), Float::with_val(prec, t));
    let zv = zeta(&s, ctx)?;
    let (sin_t, cos_t) = theta.sin_cos(Float::new(prec));
    let z_re = Float::with_val(prec, &cos_t * &zv.re) - Float::with_val(prec, &sin_t * &zv.im);
    let z_im = Float::with_val(prec, &sin_t * &zv.re) + Float::with_val(prec, &cos_t * &zv.im);
    let scale = 1.0 + zv.abs().to_f64();
    if z_im.clone().abs().to_f64() > ctx.target_tol * scale * 100.0 {
        return Err(Error::PrecisionExhausted {
            tol: ctx.target_tol,
            digits: ctx.work_digits,
            context: format!("Z({t}) imaginary residue {:e}", z_im.to_f64()),
        });
    }
    Ok(z_re)
}
