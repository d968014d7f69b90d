//! Adaptive quadrature with an embedded Gauss–Legendre pair (15/31 points)
//! and interval bisection: high-order panels for smooth integrands, splitting
//! at whatever structure the error estimate flags.

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

struct Rule {
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

static RULE_CACHE: Lazy<RwLock<HashMap<(usize, u32), Arc<Rule>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    for k in 2..=n {
        let a = Float::with_val(prec, x * &p) * (2 * k as u32 - 1);
        let next = (a - Float::with_val(prec, &p_prev * (k as u32 - 1))) / (k as u32);
        p_prev = p;
        p = next;
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (Float::with_val(prec, x * &p) - &p_prev) * (n as u32);
    let den = Float::with_val(prec, x.clone().square() - 1u32);
    (p, num / den)
}

fn gl_rule(order: usize, prec: u32) -> Arc<Rule> {
    if let Some(r) = RULE_CACHE.read().unwrap().get(&(order, prec)) {
        return Arc::clone(r);
    }
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    let pi = std::f64::consts::PI;
    for i in 0..order {
        let seed = (pi * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, seed);
        // Newton: quadratic convergence from the f64 seed
        let iters = (prec as f64 / 50.0).log2().ceil().max(1.0) as usize + 3;
        for _ in 0..iters {
            let (p, dp) = legendre(order, &x, prec);
            x -= p / dp;
        }
        let (_, dp) = legendre(order, &x, prec);
        let w = Float::with_val(prec, 2u32)
            / (Float::with_val(prec, 1u32) - x.clone().square()) / dp.square();
        nodes.push(x);
        weights.push(w);
    }
    let arc = Arc::new(Rule { nodes, weights });
    RULE_CACHE
        .write()
        .unwrap()
        .insert((order, prec), Arc::clone(&arc));
    arc
}

fn apply_rule<F>(rule: &Rule, f: &F, a: &Float, b: &Float, dim: usize, prec: u32) -> Result<Vec<Float>>
where
    F: Fn(&Float) -> Result<Vec<Float>>,
{
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let mut acc = vec![Float::new(prec); dim];
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let point = Float::with_val(prec, &mid + Float::with_val(prec, &half * x));
        let vals = f(&point)?;
        debug_assert_eq!(vals.len(), dim);
        for (acc_j, v) in acc.iter_mut().zip(vals) {
            *acc_j += v * w;
        }
    }
    for a_j in acc.iter_mut() {
        *a_j *= &half;
    }
    Ok(acc)
}

/// Integrate a vector-valued integrand over [a, b] to the given absolute
/// tolerance per component. Panels are accepted when the embedded 15/31 error
/// estimate falls below the tolerance share of the panel's length.
pub fn integrate_vec<F>(
    f: F,
    a: &Float,
    b: &Float,
    dim: usize,
    tol_abs: &[f64],
    prec: u32,
) -> Result<Vec<Float>>
where
    F: Fn(&Float) -> Result<Vec<Float>>,
{
    assert_eq!(tol_abs.len(), dim);
    let lo_rule = gl_rule(15, prec);
    let hi_rule = gl_rule(31, prec);
    let total_len = Float::with_val(prec, b - a).to_f64().abs().max(f64::MIN_POSITIVE);
    let mut acc = vec![Float::new(prec); dim];
    let mut stack = vec![(a.clone(), b.clone(), 0u32)];
    let mut panels = 0usize;
    while let Some((pa, pb, depth)) = stack.pop() {
        panels += 1;
        if panels > 100_000 || depth > 48 {
            return Err(Error::Quadrature {
                tol: tol_abs.iter().cloned().fold(f64::INFINITY, f64::min),
                context: format!("panel budget exhausted ({panels} panels, depth {depth})"),
            });
        }
        let q_lo = apply_rule(&lo_rule, &f, &pa, &pb, dim, prec)?;
        let q_hi = apply_rule(&hi_rule, &f, &pa, &pb, dim, prec)?;
        let share = Float::with_val(prec, &pb - &pa).to_f64().abs() / total_len;
        let ok = q_lo.iter().zip(q_hi.iter()).zip(tol_abs.iter()).all(|((l, h), t)| {
            Float::with_val(prec, h - l).abs().to_f64() <= t * share.max(1e-6)
        });
        if ok {
            for (acc_j, v) in acc.iter_mut().zip(q_hi) {
                *acc_j += v;
            }
        } else {
            let mid = Float::with_val(prec, &pa + &pb) / 2u32;
            stack.push((mid.clone(), pb, depth + 1));
            stack.push((pa, mid, depth + 1));
        }
    }
    Ok(acc)
}

/// Scalar convenience wrapper over [`integrate_vec`].
pub fn integrate<F>(f: F, a: &Float, b: &Float, tol_abs: f64, prec: u32) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let v = integrate_vec(|x| f(x).map(|y| vec![y]), a, b, 1, &[tol_abs], prec)?;
    Ok(v.into_iter().next().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let prec = 192;
        let v = integrate(
            |x| Ok(x.clone().square() * x),
            &Float::with_val(prec, 0),
            &Float::with_val(prec, 2),
            1e-30,
            prec,
        )
        .unwrap();
        assert!((v.to_f64() - 4.0).abs() < 1e-28);
    }

    #[test]
    fn oscillatory_cosine() {
        // int_0^pi cos(20 x) dx = 0, int_0^pi cos^2(20 x) dx = pi / 2
        let prec = 192;
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        let v = integrate_vec(
            |x| {
                let c = Float::with_val(prec, x * 20u32).cos();
                Ok(vec![c.clone(), c.square()])
            },
            &Float::new(prec),
            &pi,
            2,
            &[1e-25, 1e-25],
            prec,
        )
        .unwrap();
        assert!(v[0].to_f64().abs() < 1e-24);
        assert!((v[1].to_f64() - std::f64::consts::PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrable_spike_forces_splitting() {
        // int_0^1 1/sqrt(x + 1e-6) dx = 2 (sqrt(1 + 1e-6) - 1e-3)
        let prec = 192;
        let v = integrate(
            |x| Ok((Float::with_val(prec, x + 1e-6f64)).sqrt().recip()),
            &Float::new(prec),
            &Float::with_val(prec, 1),
            1e-20,
            prec,
        )
        .unwrap();
        let expect = 2.0 * ((1.0f64 + 1e-6).sqrt() - 1e-3);
        assert!((v.to_f64() - expect).abs() < 1e-15);
    }
}
