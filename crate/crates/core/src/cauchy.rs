//! Taylor coefficient extraction by trapezoidal Cauchy integrals on a circle.
//!
//! For f analytic on |z - c| <= r the M-point trapezoid rule is spectrally
//! accurate: the alias error of coefficient n is sum_l c_{n+lM} r^{lM}.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use rug::Float;

/// Sample points and unit twiddles for an M-node circle.
fn circle_nodes(m_nodes: usize, prec: u32) -> Vec<ComplexHP> {
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    (0..m_nodes)
        .map(|k| {
            let angle = Float::with_val(prec, &two_pi * (k as u32)) / (m_nodes as u32);
            let (s, c) = angle.sin_cos(Float::new(prec));
            ComplexHP::from_parts(c, s)
        })
        .collect()
}

/// Taylor coefficients c_0..=n_max of f about `center` from M samples on the
/// circle of the given radius.
///
/// With `unwrap_log` set, the sampled values are treated as logarithms and
/// their imaginary parts are made continuous around the circle; a non-zero
/// total winding (enclosed zero or pole of the underlying function) is an
/// error.
pub fn taylor_coeffs<F>(
    f: F,
    center: &ComplexHP,
    radius: &Float,
    m_nodes: usize,
    n_max: usize,
    ctx: &PrecisionCtx,
    unwrap_log: bool,
) -> Result<Vec<ComplexHP>>
where
    F: Fn(&ComplexHP) -> Result<ComplexHP> + Sync,
{
    let prec = ctx.prec_bits();
    let roots = circle_nodes(m_nodes, prec);
    let samples: Vec<Result<ComplexHP>> = exec::map_indexed(m_nodes, ExecMode::default(), |k| {
        let z = center.add(&roots[k].scale(radius));
        f(&z)
    });
    let mut values = Vec::with_capacity(m_nodes);
    for s in samples {
        values.push(s?);
    }

    if unwrap_log {
        let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
        let mut prev = values[0].im.clone();
        for v in values.iter_mut().skip(1) {
            let raw = v.im.clone();
            let jump = Float::with_val(prec, &prev - &raw) / &two_pi;
            let k = jump.round();
            v.im += Float::with_val(prec, &k * &two_pi);
            prev = v.im.clone();
        }
        // closure: continuing past the last node must land back on values[0]
        let wind = Float::with_val(prec, &prev - &values[0].im) / &two_pi;
        let w = wind.round().to_f64() as i64;
        if w != 0 {
            return Err(Error::Winding { winding: w });
        }
    }

    // c_n = (1 / (M r^n)) sum_k v_k w^(-kn), with w^(-kn) read from the
    // precomputed unit roots by index (M - kn mod M).
    let coeffs = exec::map_indexed(n_max + 1, ExecMode::default(), |n| {
        let mut acc = ComplexHP::zero(prec);
        for (k, v) in values.iter().enumerate() {
            let idx = (m_nodes - (k * n) % m_nodes) % m_nodes;
            acc = acc.add(&v.mul(&roots[idx]));
        }
        acc
    });

    let mut out = Vec::with_capacity(n_max + 1);
    let mut rpow = Float::with_val(prec, 1);
    for (n, c) in coeffs.into_iter().enumerate() {
        let denom = Float::with_val(prec, &rpow * (m_nodes as u32));
        out.push(ComplexHP::from_parts(
            Float::with_val(prec, &c.re / &denom),
            Float::with_val(prec, &c.im / &denom),
        ));
        if n < n_max {
            rpow *= radius;
        }
    }
    Ok(out)
}
