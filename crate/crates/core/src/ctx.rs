use crate::error::{Error, Result};

/// Global numeric policy: working precision, tolerances, truncation knobs.
///
/// All evaluation routines are pure functions of `(inputs, ctx)`; a context can
/// be cloned freely and sent across worker threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionCtx {
    /// Decimal digits of working precision.
    pub work_digits: u32,
    /// Absolute tolerance for returned values.
    pub target_tol: f64,
    /// Maximum number of Euler–Maclaurin / Stirling correction terms.
    pub em_terms: u32,
    /// Initial step for phase tracking, in units of imaginary height.
    pub max_branch_step: f64,
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx {
            work_digits: 50,
            target_tol: 1e-40,
            em_terms: 20,
            max_branch_step: 0.05,
        }
    }
}

impl PrecisionCtx {
    pub fn new(
        work_digits: u32,
        target_tol: f64,
        em_terms: u32,
        max_branch_step: f64,
    ) -> Result<Self> {
        let ctx = PrecisionCtx {
            work_digits,
            target_tol,
            em_terms,
            max_branch_step,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Context with `digits` working digits and the matching default tolerance
    /// `10^(5 - digits)` padded by a couple of digits of slack.
    pub fn with_digits(digits: u32) -> Result<Self> {
        let tol = 10f64.powi(7 - digits as i32);
        PrecisionCtx::new(digits, tol, 20, 0.05)
    }

    pub fn validate(&self) -> Result<()> {
        if self.work_digits < 20 {
            return Err(Error::InvalidCtx(format!(
                "work_digits must be >= 20, got {}",
                self.work_digits
            )));
        }
        let floor = 10f64.powi(5 - self.work_digits as i32);
        if self.target_tol < floor {
            return Err(Error::InvalidCtx(format!(
                "target_tol {:e} below 10^(-work_digits+5) = {:e}",
                self.target_tol, floor
            )));
        }
        if self.em_terms < 2 {
            return Err(Error::InvalidCtx(format!(
                "em_terms must be >= 2, got {}",
                self.em_terms
            )));
        }
        if !(self.max_branch_step > 0.0) {
            return Err(Error::InvalidCtx("max_branch_step must be positive".into()));
        }
        Ok(())
    }

    /// Binary working precision: decimal digits converted to bits plus guard
    /// bits for accumulated rounding in long sums.
    pub fn prec_bits(&self) -> u32 {
        (self.work_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        PrecisionCtx::default().validate().unwrap();
    }

    #[test]
    fn rejects_low_digits() {
        assert!(PrecisionCtx::new(10, 1e-5, 4, 0.05).is_err());
    }

    #[test]
    fn rejects_tolerance_below_precision_floor() {
        // 20 digits cannot promise 1e-30.
        assert!(PrecisionCtx::new(20, 1e-30, 4, 0.05).is_err());
        assert!(PrecisionCtx::new(20, 1e-14, 4, 0.05).is_ok());
    }

    #[test]
    fn rejects_too_few_em_terms() {
        assert!(PrecisionCtx::new(30, 1e-20, 1, 0.05).is_err());
    }

    #[test]
    fn prec_bits_covers_digits() {
        let ctx = PrecisionCtx::default();
        assert!(ctx.prec_bits() >= 50 * 10 / 3);
    }
}
