//! Li coefficients k_n by independent routes: truncated zero sum, piecewise
//! integral with a smooth tail, Cauchy-extracted Taylor coefficients, the
//! a-coefficient recursion, binomial resummation of the b-series, and the
//! closed forms for k_1..k_3 in terms of Stieltjes constants.

use crate::cauchy::taylor_coeffs;
use crate::complex::ComplexHP;
use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::gamma::{ln_gamma, polygamma2_at_1};
use crate::quad::integrate_vec;
use crate::xi::xi;
use crate::zeros::ZeroTable;
use crate::zeta::{zeta, zeta_star};
use rug::Float;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiMethod {
    Expansion,
    Integral,
    Sum,
    ARecursion,
    ClosedForm,
    FromB,
}

impl LiMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            LiMethod::Expansion => "expansion",
            LiMethod::Integral => "integral",
            LiMethod::Sum => "sum",
            LiMethod::ARecursion => "a_recursion",
            LiMethod::ClosedForm => "closed_form",
            LiMethod::FromB => "from_b",
        }
    }
}

/// Truncation bookkeeping attached to every result.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Truncation {
    pub zeros_used: Option<i64>,
    pub cutoff_height: Option<f64>,
    pub series_terms: Option<usize>,
}

/// One computed Li coefficient with provenance and an error estimate.
#[derive(Debug, Clone, Serialize)]
pub struct LiResult {
    pub n: u32,
    pub value: f64,
    pub method: LiMethod,
    pub truncation: Truncation,
    pub err_est: f64,
}

/// Taylor coefficients b_n of log xi(1/(1-z)) about z = -1.
#[derive(Debug, Clone)]
pub struct BSeries {
    b: Vec<Float>,
}

impl BSeries {
    pub fn coeff(&self, n: usize) -> &Float {
        &self.b[n]
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.b.iter().map(|v| v.to_f64()).collect()
    }

    /// Test/bench constructor for synthetic series.
    pub fn from_raw(b: Vec<Float>) -> Self {
        BSeries { b }
    }
}

/// Stieltjes constants gamma_0..gamma_max.
#[derive(Debug, Clone)]
pub struct StieltjesSet {
    gamma: Vec<Float>,
}

impl StieltjesSet {
    pub fn gamma(&self, n: usize) -> &Float {
        &self.gamma[n]
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.gamma.iter().map(|v| v.to_f64()).collect()
    }
}

/// x(mu) = (4 mu^2 - 1) / (4 mu^2 + 1), the Chebyshev argument of a zero at
/// height mu.
fn cheb_arg(mu: f64, prec: u32) -> Float {
    let mu2 = Float::with_val(prec, mu).square() * 4u32;
    let num = Float::with_val(prec, &mu2 - 1u32);
    let den = Float::with_val(prec, &mu2 + 1u32);
    num / den
}

/// Tail bound for the truncated zero sum: m^2 (log(H/2pi) + 1) / (2 pi H),
/// the density integral of the omitted summands.
fn sum_tail_bound(m: u32, max_height: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    (m as f64).powi(2) * ((max_height / two_pi).ln() + 1.0) / (two_pi * max_height)
}

/// k_m = 2 sum_j alpha_j (1 - T_m(x_j)) truncated at the table; every summand
/// is checked non-negative during accumulation.
pub fn li_by_sum(n_max: u32, zeros: &ZeroTable, ctx: &PrecisionCtx) -> Result<Vec<LiResult>> {
    if zeros.is_empty() {
        return Err(Error::Domain {
            value: 0.0,
            domain: "nonempty zero table".into(),
        });
    }
    let prec = ctx.prec_bits();
    let records = zeros.records();
    let nm = n_max as usize;

    type Partial = Result<Vec<Float>>;
    let folded: Partial = exec::chunked_sum(
        records.len(),
        256,
        ExecMode::default(),
        || Ok(vec![Float::new(prec); nm]),
        |acc: Partial, j| {
            let mut acc = acc?;
            let r = &records[j];
            let x = cheb_arg(r.mu, prec);
            // T_m(x) by the three-term recurrence
            let mut t_prev = Float::with_val(prec, 1);
            let mut t_cur = x.clone();
            let two_x = Float::with_val(prec, &x * 2u32);
            for m in 1..=nm {
                let summand =
                    (Float::with_val(prec, 1u32) - &t_cur) * (2 * r.alpha) as u32;
                if summand < -1e-30f64 {
                    return Err(Error::NegativeSummand {
                        index: j,
                        value: summand.to_f64(),
                    });
                }
                acc[m - 1] += summand;
                let t_next = Float::with_val(prec, &two_x * &t_cur) - &t_prev;
                t_prev = t_cur;
                t_cur = t_next;
            }
            Ok(acc)
        },
        |a, b| match (a, b) {
            (Ok(mut a), Ok(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    );
    let sums = folded?;
    let zeros_used = zeros.total_multiplicity();
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = i as u32 + 1;
            LiResult {
                n: m,
                value: v.to_f64(),
                method: LiMethod::Sum,
                truncation: Truncation {
                    zeros_used: Some(zeros_used),
                    cutoff_height: None,
                    series_terms: None,
                },
                err_est: sum_tail_bound(m, zeros.max_height),
            }
        })
        .collect())
}

/// k_m = 32 m int_0^cutoff mu/(4mu^2+1)^2 N(mu) U_{m-1}(x(mu)) dmu.
///
/// The table part is integrated exactly: N is constant between ordinates and
/// the integrand has antiderivative g(mu) = 2 (T_m(x(mu)) - 1), so the
/// piecewise pieces telescope, with the final stretch [H, inf) carrying the
/// frozen table count (g -> 0). The tail on [H, cutoff] then integrates the
/// model's *excess* counting n_smooth(mu) - N(H) by adaptive quadrature.
pub fn li_by_integral(
    n_max: u32,
    zeros: &ZeroTable,
    cutoff: f64,
    ctx: &PrecisionCtx,
) -> Result<Vec<LiResult>> {
    if zeros.is_empty() {
        return Err(Error::Domain {
            value: 0.0,
            domain: "nonempty zero table".into(),
        });
    }
    let h = zeros.max_height;
    if cutoff < h {
        return Err(Error::Cutoff {
            cutoff,
            max_height: h,
        });
    }
    let prec = ctx.prec_bits();
    let nm = n_max as usize;
    let records = zeros.records();

    // g values at the zero ordinates and at H, for all m at once
    let g_at = |mu: f64| -> Vec<Float> {
        let x = cheb_arg(mu, prec);
        let two_x = Float::with_val(prec, &x * 2u32);
        let mut t_prev = Float::with_val(prec, 1);
        let mut t_cur = x.clone();
        let mut out = Vec::with_capacity(nm);
        for _ in 0..nm {
            out.push(Float::with_val(prec, &t_cur - 1u32) * 2u32);
            let t_next = Float::with_val(prec, &two_x * &t_cur) - &t_prev;
            t_prev = t_cur;
            t_cur = t_next;
        }
        out
    };
    let g_nodes: Vec<Vec<Float>> =
        exec::map_indexed(records.len(), ExecMode::default(), |i| g_at(records[i].mu));

    // sum_i C_i (g(mu_{i+1}) - g(mu_i)) + C_J (0 - g(mu_J)), C_i cumulative
    let mut exact = vec![Float::new(prec); nm];
    let mut cum: i64 = 0;
    for i in 0..records.len() {
        cum += records[i].alpha as i64;
        let cf = Float::with_val(prec, cum);
        if i + 1 < records.len() {
            for m in 0..nm {
                let diff = Float::with_val(prec, &g_nodes[i + 1][m] - &g_nodes[i][m]);
                exact[m] += diff * &cf;
            }
        } else {
            for m in 0..nm {
                exact[m] -= Float::with_val(prec, &g_nodes[i][m] * &cf);
            }
        }
    }
    let n_table = cum;

    // smooth tail over [H, cutoff] in log coordinates
    let has_tail = cutoff > h * (1.0 + 1e-12);
    let mut tail = vec![Float::new(prec); nm];
    if has_tail {
        let pi = crate::complex::pi(ctx);
        let lo = Float::with_val(prec, h).ln();
        let hi = Float::with_val(prec, cutoff).ln();
        let tols: Vec<f64> = (1..=nm).map(|m| 1e-18 * (m * m) as f64).collect();
        tail = integrate_vec(
            |v: &Float| {
                let mu = v.clone().exp();
                let mu_f64 = mu.to_f64();
                let theta = crate::theta::theta_avg(mu_f64, ctx)?;
                let excess = theta / &pi + 1u32 - Float::with_val(prec, n_table);
                let mu2 = mu.clone().square() * 4u32;
                let den = Float::with_val(prec, &mu2 + 1u32);
                let x = Float::with_val(prec, &mu2 - 1u32) / &den;
                // weight * jacobian: 32 mu/(4mu^2+1)^2 * mu
                let base = Float::with_val(prec, mu.square() * 32u32)
                    / den.clone().square()
                    * &excess;
                let two_x = Float::with_val(prec, &x * 2u32);
                let mut u_prev = Float::with_val(prec, 1); // U_0
                let mut u_cur = two_x.clone(); // U_1
                let mut out = Vec::with_capacity(nm);
                for m in 1..=nm {
                    out.push(Float::with_val(prec, &base * &u_prev) * (m as u32));
                    let u_next = Float::with_val(prec, &two_x * &u_cur) - &u_prev;
                    u_prev = u_cur;
                    u_cur = u_next;
                }
                Ok(out)
            },
            &lo,
            &hi,
            nm,
            &tols,
            prec,
        )
        .map_err(|e| match e {
            Error::Quadrature { tol, .. } => Error::Quadrature {
                tol,
                context: "smooth-tail integration".into(),
            },
            other => other,
        })?;
    }

    let two_pi = 2.0 * std::f64::consts::PI;
    let n_smooth_h = crate::zeros::n_smooth(h, ctx)?;
    let zeros_used = zeros.total_multiplicity();
    Ok((1..=nm)
        .map(|m| {
            let v = Float::with_val(prec, &exact[m - 1] + &tail[m - 1]);
            // one-zero uncertainty at the boundary plus the beyond-cutoff remainder
            let boundary = g_nodes
                .last()
                .map(|g| g[m - 1].to_f64().abs())
                .unwrap_or(0.0)
                * ((n_table as f64 - n_smooth_h).abs() + 0.5);
            let beyond = if has_tail {
                (m * m) as f64 * ((cutoff / two_pi).ln() + 1.0) / (two_pi * cutoff)
            } else {
                0.0
            };
            LiResult {
                n: m as u32,
                value: v.to_f64(),
                method: LiMethod::Integral,
                truncation: Truncation {
                    zeros_used: Some(zeros_used),
                    cutoff_height: Some(cutoff),
                    series_terms: None,
                },
                err_est: boundary + beyond,
            }
        })
        .collect())
}

/// k_n as Taylor coefficients of (log xi(1/(1-z)))' at 0, by Cauchy circle
/// integrals of the log itself: k_n = n c_n. Radius must stay inside 1/4.
pub fn li_by_expansion(n_max: u32, ctx: &PrecisionCtx) -> Result<Vec<LiResult>> {
    li_by_expansion_with_radius(n_max, 0.2, ctx)
}

pub fn li_by_expansion_with_radius(
    n_max: u32,
    radius: f64,
    ctx: &PrecisionCtx,
) -> Result<Vec<LiResult>> {
    if !(radius > 0.0) || radius >= 0.25 {
        return Err(Error::Radius {
            radius,
            bound: 0.25,
        });
    }
    let prec = ctx.prec_bits();
    let m_nodes = (8 * n_max as usize).max(64);
    let center = ComplexHP::zero(prec);
    let r = Float::with_val(prec, radius);
    let coeffs = taylor_coeffs(
        |z| {
            let s = z.neg().add_f64(1.0).recip();
            Ok(xi(&s, ctx)?.ln())
        },
        &center,
        &r,
        m_nodes,
        n_max as usize,
        ctx,
        true,
    )?;
    let noise = 10f64.powi(-(ctx.work_digits as i32) + 4);
    Ok((1..=n_max as usize)
        .map(|n| {
            let k = Float::with_val(prec, &coeffs[n].re * (n as u32));
            LiResult {
                n: n as u32,
                value: k.to_f64(),
                method: LiMethod::Expansion,
                truncation: Truncation {
                    zeros_used: None,
                    cutoff_height: None,
                    series_terms: Some(m_nodes),
                },
                err_est: noise / radius.powi(n as i32),
            }
        })
        .collect())
}

/// Coefficients a_j of phi(z)/phi(0) = 1 + sum a_j z^j (phi normalized so the
/// recursion k_n = n a_n - sum k_j a_{n-j} holds), by quadrature of the theta
/// series integral with lower limit 1.
pub fn a_coeffs(n_max: u32, ctx: &PrecisionCtx) -> Result<Vec<Float>> {
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let nm = n_max as usize;
    let digits = ctx.work_digits as f64;

    // psi(x) = sum e^(-pi n^2 x); derivatives truncated where the first
    // omitted term is below tolerance for x >= 1
    let n_trunc = ((digits + 12.0) * std::f64::consts::LN_10 / std::f64::consts::PI)
        .sqrt()
        .ceil() as u32;
    let upper = (digits * std::f64::consts::LN_10 + 40.0) / std::f64::consts::PI + 5.0;

    let tols: Vec<f64> = (1..=nm).map(|_| 1e-30f64).collect();
    let integrals = integrate_vec(
        |x: &Float| {
            // [x^(3/2) psi'(x)]' = (3/2) sqrt(x) psi' + x^(3/2) psi''
            let mut psi1 = Float::new(prec);
            let mut psi2 = Float::new(prec);
            for n in 1..=n_trunc {
                let n2 = Float::with_val(prec, n).square();
                let e = Float::with_val(prec, -(Float::with_val(prec, &pi * &n2)) * x).exp();
                psi1 -= Float::with_val(prec, &pi * &n2) * &e;
                psi2 += Float::with_val(prec, pi.clone().square() * n2.square()) * &e;
            }
            let sqrt_x = x.clone().sqrt();
            let h = Float::with_val(prec, &sqrt_x * &psi1) * 3u32 / 2u32
                + Float::with_val(prec, &sqrt_x * x) * &psi2;
            let half_log = x.clone().ln() / 2u32;
            let inv_sqrt = sqrt_x.recip();
            let mut pow = Float::with_val(prec, 1);
            let mut out = Vec::with_capacity(nm);
            for p in 1..=nm {
                pow *= &half_log;
                let bracket = if p % 2 == 0 {
                    Float::with_val(prec, 1u32 + &inv_sqrt)
                } else {
                    Float::with_val(prec, 1u32 - &inv_sqrt)
                };
                out.push(Float::with_val(prec, &h * &pow) * bracket);
            }
            Ok(out)
        },
        &Float::with_val(prec, 1),
        &Float::with_val(prec, upper),
        nm,
        &tols,
        prec,
    )?;

    let mut out = Vec::with_capacity(nm);
    for j in 1..=nm {
        let mut a_j = Float::new(prec);
        let mut binom = Float::with_val(prec, 1); // C(j-1, p-1) at p = 1
        let mut fact = Float::with_val(prec, 1);
        for p in 1..=j {
            fact *= p as u32;
            a_j += Float::with_val(prec, &binom * &integrals[p - 1]) / &fact;
            if p < j {
                // advance C(j-1, p-1) -> C(j-1, p)
                binom *= (j - p) as u32;
                binom /= p as u32;
            }
        }
        a_j *= 4u32;
        if a_j <= 0.0f64 {
            return Err(Error::PrecisionExhausted {
                tol: ctx.target_tol,
                digits: ctx.work_digits,
                context: format!("a_{j} not positive: {}", a_j.to_f64()),
            });
        }
        out.push(a_j);
    }
    Ok(out)
}

/// k_n = n a_n - sum_{j<n} k_j a_{n-j}, pure arithmetic on the a inputs.
pub fn li_by_a_recursion(n_max: u32, a: &[Float]) -> Result<Vec<LiResult>> {
    let nm = n_max as usize;
    if a.len() < nm {
        return Err(Error::Domain {
            value: a.len() as f64,
            domain: format!("a must have length >= {nm}"),
        });
    }
    let prec = a.first().map(|v| v.prec()).unwrap_or(128);
    let mut ks: Vec<Float> = Vec::with_capacity(nm);
    for n in 1..=nm {
        let mut k = Float::with_val(prec, &a[n - 1] * (n as u32));
        for j in 1..n {
            k -= Float::with_val(prec, &ks[j - 1] * &a[n - j - 1]);
        }
        if ks.iter().all(|v| *v >= 0.0f64) {
            // with nonnegative k_1..k_{n-1} the recursion bounds k_n by n a_n
            let bound = Float::with_val(prec, &a[n - 1] * (n as u32)).to_f64();
            assert!(
                k.to_f64() <= bound + 1e-25,
                "k_{n} exceeds n a_n: {} > {}",
                k.to_f64(),
                bound
            );
        }
        ks.push(k);
    }
    Ok(ks
        .into_iter()
        .enumerate()
        .map(|(i, k)| LiResult {
            n: i as u32 + 1,
            value: k.to_f64(),
            method: LiMethod::ARecursion,
            truncation: Truncation::default(),
            err_est: 0.0,
        })
        .collect())
}

/// Taylor coefficients b_n of log xi(1/(1-z)) about z = -1, radius-1 Cauchy
/// circle (inside the radius-2 disk of analyticity), with b_0 cross-checked
/// against its closed form.
pub fn b_coeffs(n_max: u32, ctx: &PrecisionCtx) -> Result<BSeries> {
    b_coeffs_with_radius(n_max, 1.0, ctx)
}

pub fn b_coeffs_with_radius(n_max: u32, radius: f64, ctx: &PrecisionCtx) -> Result<BSeries> {
    if !(radius > 0.0) || radius >= 2.0 {
        return Err(Error::Radius { radius, bound: 2.0 });
    }
    let prec = ctx.prec_bits();
    let m_nodes = (8 * (n_max as usize + 1)).max(128);
    let center = ComplexHP::from_f64(prec, -1.0, 0.0);
    let r = Float::with_val(prec, radius);
    let coeffs = taylor_coeffs(
        |z| {
            let s = z.neg().add_f64(1.0).recip();
            Ok(xi(&s, ctx)?.ln())
        },
        &center,
        &r,
        m_nodes,
        n_max as usize,
        ctx,
        true,
    )?;

    // b_0 = log( -Gamma(1/4) zeta(1/2) / (8 pi^(1/4)) )
    let quarter = ComplexHP::from_f64(prec, 0.25, 0.0);
    let lg = ln_gamma(&quarter, ctx)?.re;
    let z_half = zeta(&ComplexHP::from_f64(prec, 0.5, 0.0), ctx)?.re;
    let closed = lg + (-z_half).ln() - Float::with_val(prec, 8u32).ln()
        - crate::complex::ln_pi(ctx) / 4u32;
    let check = Float::with_val(prec, &coeffs[0].re - &closed)
        .abs()
        .to_f64();
    if check > 10f64.powi(-(ctx.work_digits as i32) + 10) {
        return Err(Error::PrecisionExhausted {
            tol: ctx.target_tol,
            digits: ctx.work_digits,
            context: format!("b_0 differs from closed form by {check:e}"),
        });
    }
    Ok(BSeries {
        b: coeffs.into_iter().map(|c| c.re).collect(),
    })
}

/// k_n = n sum_{j>=n} C(j, n) b_j from a truncated b-series; the last included
/// terms must be decaying.
pub fn kn_from_b(n_max: u32, b: &BSeries) -> Result<Vec<LiResult>> {
    let len = b.len();
    if len <= n_max as usize + 1 {
        return Err(Error::Domain {
            value: len as f64,
            domain: format!("b series must extend past n_max = {n_max}"),
        });
    }
    let prec = b.b[0].prec();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as usize {
        let mut binom = Float::with_val(prec, 1); // C(n, n)
        let mut acc = Float::new(prec);
        let mut last_mags = [0.0f64; 4];
        for j in n..len {
            let term = Float::with_val(prec, &binom * &b.b[j]);
            acc += &term;
            last_mags.rotate_left(1);
            last_mags[3] = term.abs().to_f64();
            // C(j+1, n) = C(j, n) (j+1) / (j+1-n)
            binom *= (j + 1) as u32;
            binom /= (j + 1 - n) as u32;
        }
        if last_mags[3] > last_mags[0] && last_mags[0] > 0.0 {
            return Err(Error::Divergence { n, index: len - 1 });
        }
        let k = acc * (n as u32);
        out.push(LiResult {
            n: n as u32,
            value: k.to_f64(),
            method: LiMethod::FromB,
            truncation: Truncation {
                zeros_used: None,
                cutoff_height: None,
                series_terms: Some(len),
            },
            err_est: last_mags[3] * 10.0 * n as f64,
        });
    }
    Ok(out)
}

/// Stieltjes constants as Taylor coefficients of zeta(z) - 1/(z-1) at z = 1,
/// scaled per the Laurent convention gamma_n = (-1)^n n! c_n.
pub fn stieltjes(n_max: u32, ctx: &PrecisionCtx) -> Result<StieltjesSet> {
    let prec = ctx.prec_bits();
    let m_nodes = (8 * (n_max as usize + 1)).max(128);
    let center = ComplexHP::from_f64(prec, 1.0, 0.0);
    let r = Float::with_val(prec, 0.5);
    let coeffs = taylor_coeffs(
        |z| {
            // zeta(z) - 1/(z-1) = (zeta_star(z) - 1)/(z - 1), pole-free
            let zm1 = z.add_f64(-1.0);
            let num = zeta_star(z, ctx)?.add_f64(-1.0);
            Ok(num.div(&zm1))
        },
        &center,
        &r,
        m_nodes,
        n_max as usize,
        ctx,
        false,
    )?;
    let mut gamma = Vec::with_capacity(n_max as usize + 1);
    let mut fact = Float::with_val(prec, 1);
    for (n, c) in coeffs.into_iter().enumerate() {
        if n > 1 {
            fact *= n as u32;
        }
        let mut g = Float::with_val(prec, &c.re * &fact);
        if n % 2 == 1 {
            g = -g;
        }
        gamma.push(g);
    }
    // gamma_0 is the Euler–Mascheroni constant
    let euler = crate::complex::euler_gamma(ctx);
    let drift = Float::with_val(prec, &gamma[0] - &euler).abs().to_f64();
    if drift > 10f64.powi(-(ctx.work_digits as i32) + 10) {
        return Err(Error::PrecisionExhausted {
            tol: ctx.target_tol,
            digits: ctx.work_digits,
            context: format!("gamma_0 differs from Euler constant by {drift:e}"),
        });
    }
    Ok(StieltjesSet { gamma })
}

/// Closed forms for k_1, k_2, k_3 in terms of gamma, gamma_1, gamma_2,
/// psi_2(1) and zeta(3).
pub fn li_closed_form(n: u32, s: &StieltjesSet, ctx: &PrecisionCtx) -> Result<LiResult> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedIndex(n as usize));
    }
    if s.len() < 3 {
        return Err(Error::Domain {
            value: s.len() as f64,
            domain: "StieltjesSet must contain gamma_0..gamma_2".into(),
        });
    }
    let prec = ctx.prec_bits();
    let pi = crate::complex::pi(ctx);
    let g = s.gamma(0).clone();
    let g1 = s.gamma(1).clone();
    let g2 = s.gamma(2).clone();
    let ln_inv_4pi = -(Float::with_val(prec, &pi * 4u32).ln());

    let value = match n {
        1 => (Float::with_val(prec, 2u32 + &g) + &ln_inv_4pi) / 2u32,
        2 => {
            Float::with_val(prec, 1u32 + &g) - g.clone().square()
                + pi.clone().square() / 8u32
                + &ln_inv_4pi
                - Float::with_val(prec, &g1 * 2u32)
        }
        3 => {
            let psi2 = polygamma2_at_1(ctx)?;
            let zeta3 = zeta(&ComplexHP::from_f64(prec, 3.0, 0.0), ctx)?.re;
            let g_sq = g.clone().square();
            Float::with_val(prec, 1u32) - Float::with_val(prec, &g_sq * 3u32)
                + Float::with_val(prec, &g_sq * &g)
                + pi.clone().square() * 3u32 / 8u32
                + Float::with_val(prec, &ln_inv_4pi * 3u32) / 2u32
                - psi2 / 16u32
                - Float::with_val(prec, &g1 * 6u32)
                + Float::with_val(prec, &g * (Float::with_val(prec, &g1 * 3u32) + 1.5f64))
                + Float::with_val(prec, &g2 * 3u32) / 2u32
                - zeta3
        }
        _ => unreachable!(),
    };
    Ok(LiResult {
        n,
        value: value.to_f64(),
        method: LiMethod::ClosedForm,
        truncation: Truncation::default(),
        err_est: 10f64.powi(-(ctx.work_digits as i32) + 8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::ingest_zero_table;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    #[test]
    fn sum_single_zero_closed_form() {
        // T_1(x) = x, so k_1 = 2 (1 - x) = 4 / (4 mu^2 + 1)
        let table = ingest_zero_table("14.134725142\n").unwrap();
        let r = li_by_sum(1, &table, &ctx()).unwrap();
        let mu = 14.134725142f64;
        let expect = 4.0 / (4.0 * mu * mu + 1.0);
        assert!((r[0].value - expect).abs() < 1e-16);
    }

    #[test]
    fn expansion_first_three() {
        // frozen reference values computed ahead of the build
        let r = li_by_expansion(3, &ctx()).unwrap();
        assert!((r[0].value - 0.0230957089661210338).abs() < 1e-16);
        assert!((r[1].value - 0.0923457352280466704).abs() < 1e-15);
        assert!((r[2].value - 0.207638920554324804).abs() < 1e-15);
    }

    #[test]
    fn expansion_radius_independent() {
        let a = li_by_expansion_with_radius(1, 0.2, &ctx()).unwrap();
        let b = li_by_expansion_with_radius(1, 0.1, &ctx()).unwrap();
        assert!((a[0].value - b[0].value).abs() < 1e-20);
    }

    #[test]
    fn expansion_radius_guard() {
        assert!(matches!(
            li_by_expansion_with_radius(2, 0.25, &ctx()),
            Err(Error::Radius { .. })
        ));
    }

    #[test]
    fn integral_no_tail_equals_sum_single_zero() {
        let table = ingest_zero_table("14.134725142\n").unwrap();
        let ct = ctx();
        let s = li_by_sum(3, &table, &ct).unwrap();
        let i = li_by_integral(3, &table, table.max_height, &ct).unwrap();
        for (a, b) in s.iter().zip(i.iter()) {
            assert!((a.value - b.value).abs() < 1e-15);
        }
    }

    #[test]
    fn integral_cutoff_guard() {
        let table = ingest_zero_table("14.134725142\n21.022039639\n").unwrap();
        assert!(matches!(
            li_by_integral(1, &table, 15.0, &ctx()),
            Err(Error::Cutoff { .. })
        ));
    }

    #[test]
    fn recursion_base_and_toy_sequence() {
        let prec = 128;
        // a_j = 2^-j: k = 1/2, 1/4, 1/8, 1/16 (hand-checked against the recursion)
        let a: Vec<Float> = (1..=4).map(|j| Float::with_val(prec, 0.5f64.powi(j))).collect();
        let ks = li_by_a_recursion(4, &a).unwrap();
        for (i, expect) in [0.5, 0.25, 0.125, 0.0625].iter().enumerate() {
            assert!((ks[i].value - expect).abs() < 1e-15, "k_{}", i + 1);
        }
        assert!((ks[0].value - a[0].to_f64()).abs() < 1e-15);
    }

    #[test]
    fn kn_from_b_single_spike() {
        // b with one nonzero b_j = 1 gives k_m = m C(j, m) for m <= j
        let prec = 128;
        let j = 6usize;
        let mut b = vec![Float::new(prec); 10];
        b[j] = Float::with_val(prec, 1);
        let bs = BSeries::from_raw(b);
        let ks = kn_from_b(5, &bs).unwrap();
        let binom = |n: u64, k: u64| -> f64 {
            let mut v = 1f64;
            for i in 0..k {
                v = v * (n - i) as f64 / (i + 1) as f64;
            }
            v
        };
        for m in 1..=5usize {
            let expect = m as f64 * binom(j as u64, m as u64);
            assert!((ks[m - 1].value - expect).abs() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn closed_form_index_guard() {
        let s = stieltjes(2, &ctx()).unwrap();
        assert!(matches!(
            li_closed_form(4, &s, &ctx()),
            Err(Error::UnsupportedIndex(4))
        ));
    }
}
