//! Standalone numerical verification of the identities the Li pipeline rests
//! on: definite trig integrals, the refined Hadamard product, the Fermi–Dirac
//! Mellin identity, and the unimodular form of the zero sum.

use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::gamma::ln_gamma;
use crate::li::li_by_sum;
use crate::quad::{integrate, integrate_vec};
use crate::xi::xi;
use crate::zeros::ZeroTable;
use crate::zeta::zeta;
use rug::Float;
use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of one identity check; `passed` iff `abs_err <= tol`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_err: f64,
    pub tol: f64,
    pub passed: bool,
    pub params: BTreeMap<String, String>,
}

impl CheckReport {
    fn new(name: impl Into<String>, lhs: [f64; 2], rhs: [f64; 2], abs_err: f64, tol: f64) -> Self {
        CheckReport {
            name: name.into(),
            lhs,
            rhs,
            abs_err,
            tol,
            passed: abs_err <= tol,
            params: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn binom_float(n: u64, k: u64, prec: u32) -> Float {
    if k > n {
        return Float::new(prec);
    }
    let mut v = Float::with_val(prec, 1);
    for i in 0..k {
        v *= n - i;
        v /= i + 1;
    }
    v
}

/// int_0^{pi/2} cos^n t sin(n t) sin(2 m t) dt = pi / 2^(n+2) C(n, m).
pub fn check_integral_identity(m: u32, n: u32, ctx: &PrecisionCtx) -> Result<CheckReport> {
    if m < 1 || n < 1 {
        return Err(Error::Domain {
            value: m.min(n) as f64,
            domain: "m, n >= 1".into(),
        });
    }
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let half_pi = Float::with_val(prec, &pi / 2u32);
    let quad_tol = 10f64.powi(-(ctx.work_digits as i32 / 2) - 4).max(1e-20);
    let lhs = integrate(
        |t: &Float| {
            use rug::ops::Pow;
            let c = t.clone().cos().pow(n);
            let s1 = Float::with_val(prec, t * n).sin();
            let s2 = Float::with_val(prec, t * (2 * m)).sin();
            Ok(c * s1 * s2)
        },
        &Float::new(prec),
        &half_pi,
        quad_tol,
        prec,
    )?;
    let rhs = pi / Float::with_val(prec, 2u32).pow_u(n + 2) * binom_float(n as u64, m as u64, prec);
    let abs_err = Float::with_val(prec, &lhs - &rhs).abs().to_f64();
    Ok(
        CheckReport::new(
            format!("integral_identity_m{m:02}_n{n:02}"),
            [lhs.to_f64(), 0.0],
            [rhs.to_f64(), 0.0],
            abs_err,
            1e-12,
        )
        .with("m", m)
        .with("n", n),
    )
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

/// The pair of cosine identities: int cos^n t cos((n+2) t) dt = 0 and
/// int cos^n t cos((n+2) t) cos(2 m t) dt = pi / 2^(n+2) C(n, m-1) for
/// n > m - 2 (zero otherwise). Both folded into one report.
pub fn check_cos_identities(m: u32, n: u32, ctx: &PrecisionCtx) -> Result<CheckReport> {
    if m < 1 {
        return Err(Error::Domain {
            value: m as f64,
            domain: "m >= 1".into(),
        });
    }
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let half_pi = Float::with_val(prec, &pi / 2u32);
    let quad_tol = 10f64.powi(-(ctx.work_digits as i32 / 2) - 4).max(1e-20);
    let both = integrate_vec(
        |t: &Float| {
            use rug::ops::Pow;
            let base = t.clone().cos().pow(n) * Float::with_val(prec, t * (n + 2)).cos();
            let modulated = Float::with_val(prec, &base * &Float::with_val(prec, t * (2 * m)).cos());
            Ok(vec![base, modulated])
        },
        &Float::new(prec),
        &half_pi,
        2,
        &[quad_tol, quad_tol],
        prec,
    )?;
    let rhs2 = if n + 2 > m {
        pi / Float::with_val(prec, 2u32).pow_u(n + 2)
            * binom_float(n as u64, (m - 1) as u64, prec)
    } else {
        Float::new(prec)
    };
    let err1 = both[0].clone().abs().to_f64();
    let err2 = Float::with_val(prec, &both[1] - &rhs2).abs().to_f64();
    Ok(
        CheckReport::new(
            format!("cos_identities_n{n:02}_m{m:02}"),
            [both[1].to_f64(), 0.0],
            [rhs2.to_f64(), 0.0],
            err1.max(err2),
            1e-12,
        )
        .with("m", m)
        .with("n", n)
        .with("first_identity_err", format!("{err1:e}")),
    )
}

/// Refined Hadamard product over the table against xi(z), relative tolerance.
pub fn check_hadamard(
    z: &ComplexHP,
    zeros: &ZeroTable,
    ctx: &PrecisionCtx,
    tol: f64,
) -> Result<CheckReport> {
    let prec = ctx.prec_bits();
    let records = zeros.records();
    let h = zeros.max_height;

    // log-product tail estimate from the density integral
    let two_pi = 2.0 * std::f64::consts::PI;
    let z_f = ComplexHP::from_parts(z.re.clone(), z.im.clone());
    let z_one_minus = z_f.mul(&z_f.neg().add_f64(1.0)); // z(1-z)
    let tail_est = if h > 15.0 {
        z_one_minus.abs().to_f64() * ((h / two_pi).ln() + 1.0) / (two_pi * h)
    } else {
        f64::INFINITY
    };
    if !records.is_empty() && tail_est > tol {
        return Err(Error::TailTooLarge {
            estimate: tail_est,
            tol,
        });
    }

    // product of ((z - 1/2)^2 + mu^2) / (1/4 + mu^2), chunked and tree-reduced
    let zs = z.add_f64(-0.5);
    let zs2 = zs.mul(&zs);
    let product = exec::chunked_sum(
        records.len(),
        256,
        ExecMode::default(),
        || ComplexHP::from_f64(prec, 1.0, 0.0),
        |acc, i| {
            let r = &records[i];
            let mu2 = Float::with_val(prec, r.mu).square();
            let num = zs2.add(&ComplexHP::real(mu2.clone()));
            let den = Float::with_val(prec, &mu2 + 0.25f64);
            let factor = ComplexHP::from_parts(
                Float::with_val(prec, &num.re / &den),
                Float::with_val(prec, &num.im / &den),
            );
            acc.mul(&factor.powi(r.alpha))
        },
        |a, b| a.mul(&b),
    );
    let rhs = product.scale_f64(0.5);
    let lhs = xi(z, ctx)?;
    let scale = lhs.abs().to_f64().max(f64::MIN_POSITIVE);
    let rel_err = lhs.sub(&rhs).abs().to_f64() / scale;
    Ok(CheckReport::new(
        format!(
            "hadamard_z_{}_{}",
            fmt_coord(z.re.to_f64()),
            fmt_coord(z.im.to_f64())
        ),
        [lhs.re.to_f64(), lhs.im.to_f64()],
        [rhs.re.to_f64(), rhs.im.to_f64()],
        rel_err,
        tol,
    )
    .with("zeros_used", zeros.total_multiplicity())
    .with("tail_estimate", format!("{tail_est:e}"))
    .with("error_kind", "relative"))
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.4}").replace('-', "m").replace('.', "p")
}

/// Fermi–Dirac Mellin identity: zeta(z) Gamma(z) (1 - 2^(1-z)) equals
/// int_0^inf x^(z-1)/(e^x + 1) dx, relative tolerance 1e-12.
pub fn check_fermi_dirac(z: &ComplexHP, ctx: &PrecisionCtx) -> Result<CheckReport> {
    let prec = ctx.prec_bits();
    let re_z = z.re.to_f64();
    if re_z <= 0.0 {
        return Err(Error::Domain {
            value: re_z,
            domain: "Re(z) > 0".into(),
        });
    }
    if z.add_f64(-1.0).abs().to_f64() < 1e-12 {
        return Err(Error::Pole {
            location: "z = 1".into(),
        });
    }

    // LHS
    let ln2 = Float::with_val(prec, rug::float::Constant::Log2);
    let two_pow = z.neg().add_f64(1.0).scale(&ln2).exp();
    let one = ComplexHP::from_f64(prec, 1.0, 0.0);
    let lhs = zeta(z, ctx)?
        .mul(&ln_gamma(z, ctx)?.exp())
        .mul(&one.sub(&two_pow));
    let lhs_abs = lhs.abs().to_f64();

    let quad_tol =
        (lhs_abs * 5e-14).max(10f64.powi(-(ctx.work_digits as i32) + 12)) / 2.0;

    // x in (0, 1]: substitute x = e^u, integrand e^(u z) / (e^(e^u) + 1)
    let u_min = (quad_tol.ln() - 8.0) / re_z;
    let low = integrate_vec(
        |u: &Float| {
            let zu = z.scale(u);
            let ex = u.clone().exp().exp();
            let den = Float::with_val(prec, &ex + 1u32);
            let v = zu.exp();
            Ok(vec![
                Float::with_val(prec, &v.re / &den),
                Float::with_val(prec, &v.im / &den),
            ])
        },
        &Float::with_val(prec, u_min),
        &Float::new(prec),
        2,
        &[quad_tol, quad_tol],
        prec,
    )?;
    // x in [1, x_max]
    let x_max = ctx.work_digits as f64 * std::f64::consts::LN_10 * 1.3 + 40.0;
    let zm1 = z.add_f64(-1.0);
    let high = integrate_vec(
        |x: &Float| {
            let v = zm1.scale(&x.clone().ln()).exp();
            let den = Float::with_val(prec, x.clone().exp() + 1u32);
            Ok(vec![
                Float::with_val(prec, &v.re / &den),
                Float::with_val(prec, &v.im / &den),
            ])
        },
        &Float::with_val(prec, 1),
        &Float::with_val(prec, x_max),
        2,
        &[quad_tol, quad_tol],
        prec,
    )?;
    let rhs = ComplexHP::from_parts(
        Float::with_val(prec, &low[0] + &high[0]),
        Float::with_val(prec, &low[1] + &high[1]),
    );
    let rel_err = lhs.sub(&rhs).abs().to_f64() / lhs_abs.max(f64::MIN_POSITIVE);
    Ok(CheckReport::new(
        format!(
            "fermi_dirac_z_{}_{}",
            fmt_coord(z.re.to_f64()),
            fmt_coord(z.im.to_f64())
        ),
        [lhs.re.to_f64(), lhs.im.to_f64()],
        [rhs.re.to_f64(), rhs.im.to_f64()],
        rel_err,
        1e-12,
    )
    .with("error_kind", "relative")
    .with("lhs_magnitude", format!("{lhs_abs:e}")))
}

/// Z(beta) = sum alpha_j e^(-beta mu_j) over the table.
pub fn partition_function(beta: f64, zeros: &ZeroTable) -> Result<f64> {
    Ok(partition_function_hp(beta, zeros, 192)?.to_f64())
}

pub fn partition_function_hp(beta: f64, zeros: &ZeroTable, prec: u32) -> Result<Float> {
    if !(beta > 0.0) {
        return Err(Error::Domain {
            value: beta,
            domain: "beta > 0".into(),
        });
    }
    let records = zeros.records();
    Ok(exec::chunked_sum(
        records.len(),
        512,
        ExecMode::default(),
        || Float::new(prec),
        |mut acc, i| {
            let r = &records[i];
            acc += Float::with_val(prec, -beta * r.mu).exp() * r.alpha;
            acc
        },
        |a, b| a + b,
    ))
}

/// Unimodular form: li_by_sum's k_n equals 2 sum alpha_j (1 - cos(n theta_j))
/// with cos theta_j = (4 mu_j^2 - 1)/(4 mu_j^2 + 1).
pub fn check_kn_li_equiv(n: u32, zeros: &ZeroTable, ctx: &PrecisionCtx) -> Result<CheckReport> {
    let prec = ctx.prec_bits();
    let lhs = li_by_sum(n, zeros, ctx)?
        .pop()
        .expect("nonempty result")
        .value;
    let records = zeros.records();
    let rhs = exec::chunked_sum(
        records.len(),
        256,
        ExecMode::default(),
        || Float::new(prec),
        |mut acc, i| {
            let r = &records[i];
            let mu2 = Float::with_val(prec, r.mu).square() * 4u32;
            let x = Float::with_val(prec, &mu2 - 1u32) / Float::with_val(prec, &mu2 + 1u32);
            let theta = x.acos();
            let c = (theta * n).cos();
            acc += (Float::with_val(prec, 1u32) - c) * (2 * r.alpha) as u32;
            acc
        },
        |a, b| a + b,
    );
    let abs_err = (lhs - rhs.to_f64()).abs();
    Ok(CheckReport::new(
        format!("kn_li_equiv_n{n:03}"),
        [lhs, 0.0],
        [rhs.to_f64(), 0.0],
        abs_err,
        1e-12,
    )
    .with("n", n)
    .with("zeros_used", zeros.total_multiplicity()))
}

/// The full default check grid, reports sorted by name. `filter` keeps checks
/// whose name contains the substring.
pub fn run_all(
    zeros: &ZeroTable,
    ctx: &PrecisionCtx,
    filter: Option<&str>,
) -> Result<Vec<CheckReport>> {
    let prec = ctx.prec_bits();
    let mu_1 = zeros
        .records()
        .first()
        .map(|r| r.mu)
        .unwrap_or(14.134725142);

    enum Task {
        IntegralIdentity(u32, u32),
        CosIdentities(u32, u32),
        Hadamard(f64, f64),
        FermiDirac(f64, f64),
        KnLiEquiv(u32),
        PartitionMonotone,
    }

    let mut tasks: Vec<(String, Task)> = Vec::new();
    for m in 1..=10 {
        for n in 1..=10 {
            tasks.push((
                format!("integral_identity_m{m:02}_n{n:02}"),
                Task::IntegralIdentity(m, n),
            ));
        }
    }
    for n in 0..=10 {
        for m in 1..=10 {
            tasks.push((
                format!("cos_identities_n{n:02}_m{m:02}"),
                Task::CosIdentities(m, n),
            ));
        }
    }
    if !zeros.is_empty() {
        tasks.push(("hadamard_z2".into(), Task::Hadamard(2.0, 0.0)));
        for n in [1, 7, 20] {
            tasks.push((format!("kn_li_equiv_n{n:03}"), Task::KnLiEquiv(n)));
        }
        tasks.push(("partition_monotone".into(), Task::PartitionMonotone));
    }
    tasks.push(("fermi_dirac_z2".into(), Task::FermiDirac(2.0, 0.0)));
    tasks.push(("fermi_dirac_z3".into(), Task::FermiDirac(3.0, 0.0)));
    tasks.push(("fermi_dirac_mu1".into(), Task::FermiDirac(0.5, mu_1)));

    if let Some(f) = filter {
        tasks.retain(|(name, _)| name.contains(f));
    }
    tasks.sort_by(|a, b| a.0.cmp(&b.0));

    let results: Vec<Result<CheckReport>> =
        exec::map_indexed(tasks.len(), ExecMode::default(), |i| {
            let (name, task) = &tasks[i];
            let mut report = match task {
                Task::IntegralIdentity(m, n) => check_integral_identity(*m, *n, ctx)?,
                Task::CosIdentities(m, n) => check_cos_identities(*m, *n, ctx)?,
                Task::Hadamard(re, im) => {
                    check_hadamard(&ComplexHP::from_f64(prec, *re, *im), zeros, ctx, 0.01)?
                }
                Task::FermiDirac(re, im) => {
                    check_fermi_dirac(&ComplexHP::from_f64(prec, *re, *im), ctx)?
                }
                Task::KnLiEquiv(n) => check_kn_li_equiv(*n, zeros, ctx)?,
                Task::PartitionMonotone => {
                    let z1 = partition_function(1.0, zeros)?;
                    let z2 = partition_function(2.0, zeros)?;
                    CheckReport::new(
                        "partition_monotone",
                        [z1, 0.0],
                        [z2, 0.0],
                        (z2 - z1).max(0.0),
                        0.0,
                    )
                    .with("beta_pair", "1,2")
                }
            };
            report.name = name.clone();
            Ok(report)
        });

    let mut out = Vec::with_capacity(results.len());
    for r in results {
        out.push(r?);
    }
    Ok(out)
}
