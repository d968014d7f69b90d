//! Chebyshev polynomials in their stable trigonometric form on [-1, 1]:
//! T_n(cos t) = cos(n t), U_n(cos t) = sin((n+1) t) / sin t.

use crate::error::{Error, Result};
use rug::Float;

const CHEB_PREC: u32 = 160;

fn check_domain(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::Domain {
            value: x,
            domain: "-1 <= x <= 1".into(),
        });
    }
    Ok(())
}

/// Chebyshev polynomial of the first kind, T_n(x) = cos(n arccos x).
pub fn cheb_t(n: u32, x: f64) -> Result<f64> {
    check_domain(x)?;
    let xf = Float::with_val(CHEB_PREC, x);
    Ok(cheb_t_hp(n, &xf).to_f64())
}

/// Chebyshev polynomial of the second kind, U_n(x) = sin((n+1) arccos x) / sin(arccos x),
/// with the limit values U_n(+-1) = (+-1)^n (n+1).
pub fn cheb_u(n: u32, x: f64) -> Result<f64> {
    check_domain(x)?;
    let xf = Float::with_val(CHEB_PREC, x);
    Ok(cheb_u_hp(n, &xf).to_f64())
}

pub(crate) fn cheb_t_hp(n: u32, x: &Float) -> Float {
    let theta = x.clone().acos();
    (theta * n).cos()
}

pub(crate) fn cheb_u_hp(n: u32, x: &Float) -> Float {
    let prec = x.prec();
    // endpoint limits; the trig form cancels catastrophically at |x| = 1
    if *x == 1u32 || *x == -1i32 {
        let sign = if x.is_sign_negative() && n % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        return Float::with_val(prec, sign * (n as f64 + 1.0));
    }
    let theta = x.clone().acos();
    let s = theta.clone().sin();
    (theta * (n + 1)).sin() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recurrence_t(n: u32, x: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, x);
        if n == 0 {
            return a;
        }
        for _ in 1..n {
            let c = 2.0 * x * b - a;
            a = b;
            b = c;
        }
        b
    }

    fn recurrence_u(n: u32, x: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, 2.0 * x);
        if n == 0 {
            return a;
        }
        for _ in 1..n {
            let c = 2.0 * x * b - a;
            a = b;
            b = c;
        }
        b
    }

    #[test]
    fn spot_values() {
        assert!((cheb_t(3, 0.5).unwrap() - (-1.0)).abs() < 1e-15);
        for n in [0, 1, 5, 17] {
            assert!((cheb_t(n, 1.0).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(cheb_u(2, 0.5).unwrap().abs() < 1e-15);
        for n in [0, 2, 9] {
            assert!((cheb_u(n, 1.0).unwrap() - (n as f64 + 1.0)).abs() < 1e-13);
            assert!((cheb_u(n, -1.0).unwrap() - (n as f64 + 1.0) * (-1f64).powi(n as i32)).abs() < 1e-13);
        }
    }

    #[test]
    fn matches_recurrence_oracle() {
        assert!((cheb_t(5, 0.3).unwrap() - recurrence_t(5, 0.3)).abs() < 1e-15);
        assert!((cheb_u(4, -0.2).unwrap() - recurrence_u(4, -0.2)).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(cheb_t(2, 1.0001).is_err());
        assert!(cheb_u(2, -1.0001).is_err());
    }

    #[test]
    fn recurrences_on_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xc4eb);
        for _ in 0..100 {
            let n = rng.gen_range(2u32..=50);
            let x: f64 = rng.gen_range(-1.0..1.0);
            let t3 = 2.0 * x * cheb_t(n, x).unwrap() - cheb_t(n - 1, x).unwrap();
            assert!((t3 - cheb_t(n + 1, x).unwrap()).abs() <= 1e-15 * (1.0 + t3.abs()));
            let u3 = 2.0 * x * cheb_u(n, x).unwrap() - cheb_u(n - 1, x).unwrap();
            assert!((u3 - cheb_u(n + 1, x).unwrap()).abs() <= 1e-15 * (1.0 + u3.abs() + n as f64));
        }
    }

    #[test]
    fn derivative_relation() {
        // d/dx T_{n+1} / (n+1) = U_n, checked by central differences
        let h = 1e-6;
        for (n, x) in [(3u32, 0.4f64), (7, -0.3), (12, 0.1)] {
            let d = (cheb_t(n + 1, x + h).unwrap() - cheb_t(n + 1, x - h).unwrap()) / (2.0 * h);
            let u = cheb_u(n, x).unwrap() * (n as f64 + 1.0);
            assert!((d - u).abs() < 1e-4 * (1.0 + u.abs()), "n={n} x={x}");
        }
    }
}
