use crate::ctx::PrecisionCtx;
use crate::error::{Error, Result};
use rug::float::Constant;
use rug::Float;
use std::fmt;

/// Arbitrary-precision complex number: the substrate for all special-function
/// evaluation. Real and imaginary parts carry the same MPFR precision.
///
/// Stored parts are finite by construction; operations that could overflow to
/// infinity are caught at the public API boundary via [`ComplexHP::ensure_finite`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexHP {
    pub re: Float,
    pub im: Float,
}

impl ComplexHP {
    pub fn new(re: Float, im: Float) -> Result<Self> {
        let z = ComplexHP { re, im };
        z.ensure_finite()?;
        Ok(z)
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        ComplexHP { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        ComplexHP {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexHP {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        ComplexHP {
            re,
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.re.is_finite() && self.im.is_finite() {
            Ok(())
        } else {
            Err(Error::PrecisionExhausted {
                tol: 0.0,
                digits: 0,
                context: "non-finite value produced (overflow or invalid operation)".into(),
            })
        }
    }

    pub fn conj(&self) -> Self {
        ComplexHP {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexHP {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        ComplexHP {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        ComplexHP {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        ComplexHP { re, im }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let den = Float::with_val(p, o.re.clone().square() + o.im.clone().square());
        let re = (Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im))
            / den.clone();
        let im =
            (Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im)) / den;
        ComplexHP { re, im }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        ComplexHP {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        let p = self.prec();
        ComplexHP {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn add_f64(&self, s: f64) -> Self {
        let p = self.prec();
        ComplexHP {
            re: Float::with_val(p, &self.re + s),
            im: self.im.clone(),
        }
    }

    /// |z| as hypot(re, im); never overflows prematurely.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn abs_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    /// Principal argument in (-pi, pi], via atan2.
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    /// exp(z) = e^re (cos im, sin im).
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        ComplexHP {
            re: Float::with_val(p, &r * &c),
            im: Float::with_val(p, &r * &s),
        }
    }

    /// Principal branch log: (ln |z|, arg z).
    pub fn ln(&self) -> Self {
        ComplexHP {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// sin(x+iy) = sin x cosh y + i cos x sinh y.
    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sx, cx) = self.re.clone().sin_cos(Float::new(p));
        let (shy, chy) = self.im.clone().sinh_cosh(Float::new(p));
        ComplexHP {
            re: Float::with_val(p, &sx * &chy),
            im: Float::with_val(p, &cx * &shy),
        }
    }

    /// z^w = exp(w ln z), principal branch.
    pub fn pow(&self, w: &Self) -> Self {
        w.mul(&self.ln()).exp()
    }

    /// z^k for small non-negative integer k, by repeated squaring.
    pub fn powi(&self, mut k: u32) -> Self {
        let p = self.prec();
        let mut base = self.clone();
        let mut acc = ComplexHP {
            re: Float::with_val(p, 1),
            im: Float::new(p),
        };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let one = ComplexHP {
            re: Float::with_val(p, 1),
            im: Float::new(p),
        };
        one.div(self)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// pi at the context's working precision.
pub fn pi(ctx: &PrecisionCtx) -> Float {
    Float::with_val(ctx.prec_bits(), Constant::Pi)
}

/// ln(pi) at the context's working precision.
pub fn ln_pi(ctx: &PrecisionCtx) -> Float {
    pi(ctx).ln()
}

/// Euler–Mascheroni constant at the context's working precision.
pub fn euler_gamma(ctx: &PrecisionCtx) -> Float {
    Float::with_val(ctx.prec_bits(), Constant::Euler)
}
