//! Exact combinatorial coefficients and the polynomial chains built on them.

mod dilcher;
mod limit;
mod numbers;
mod poly;

pub use dilcher::{coeff_a, coeff_c, coeff_small_a, q_coef, DilcherTable};
pub use limit::{d_coeffs, direct_generating_function, e_coeff, eval_poly_at, generating_function, limit_coeffs};
pub use numbers::{
    binomial, divisor_sigma, eulerian_coeffs, factorial, gen_binom, polylog_neg, stirling,
    stirling1, stirling1_row, stirling2, stirling2_row, StirlingKind,
};
pub use poly::{bell_poly, bell_poly_recurrence, eulerian_poly, n_poly, p_poly, PolyOverQ, PolyRing};
