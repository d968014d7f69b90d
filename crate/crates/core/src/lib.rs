//! High-precision machinery around the Riemann xi function: critical-line
//! zero location, the exact counting function N(T), and the Li coefficients
//! k_n computed by independent methods that cross-validate each other.
//!
//! The arbitrary-precision substrate is MPFR (via `rug`); complex arithmetic
//! and all special functions are built on top of it. Data-parallel inner
//! loops run on rayon when the default `parallel` feature is enabled and fall
//! back to identical sequential code without it; either way reductions use a
//! fixed chunked tree so results are bit-reproducible.

pub mod branch;
pub mod cauchy;
pub mod cheb;
pub mod complex;
pub mod ctx;
pub mod error;
pub mod exec;
pub mod gamma;
pub mod hardy;
pub mod li;
pub mod quad;
pub mod theta;
pub mod verify;
pub mod xi;
pub mod zeros;
pub mod zeta;

pub use branch::im_log_xi_critical;
pub use cheb::{cheb_t, cheb_u};
pub use complex::ComplexHP;
pub use ctx::PrecisionCtx;
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use gamma::{ln_gamma, polygamma2_at_1};
pub use hardy::hardy_z;
pub use li::{
    a_coeffs, b_coeffs, kn_from_b, li_by_a_recursion, li_by_expansion, li_by_integral, li_by_sum,
    li_closed_form, stieltjes, BSeries, LiMethod, LiResult, StieltjesSet, Truncation,
};
pub use theta::theta_avg;
pub use verify::{
    check_cos_identities, check_fermi_dirac, check_hadamard, check_integral_identity,
    check_kn_li_equiv, partition_function, run_all, CheckReport,
};
pub use xi::xi;
pub use zeros::{
    count_zeros, ingest_zero_table, load_table, locate_zeros, n_smooth, save_table, Source,
    ZeroRecord, ZeroTable,
};
pub use zeta::{zeta, zeta_star};
