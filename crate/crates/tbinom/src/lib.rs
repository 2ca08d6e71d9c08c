//! Exact arithmetic for the t-deformed binomial coefficients `<x, k>`.
//!
//! The deformation is defined by `<x, 0> = 1`, `<x, k> = 0` for `k < 0`, and
//!
//! ```text
//! <x, k> = (x / k) * ( t * <x - 1, k - 1> + (1 - t) * <x - 2, k - 2> )
//! ```
//!
//! so that `t = 1` recovers the ordinary binomial coefficient. Everything here
//! is computed over arbitrary-precision rationals; there is no floating point
//! anywhere, and every verification routine reports exact equality.
//!
//! Module map:
//! * [`numeric`] - big rationals and rational-argument binomials
//! * [`polyalg`] - dense polynomials in `t` and in `(x, t)`, binomial-basis
//!   conversion, integer-grid equality proofs
//! * [`series`] - truncated power series over `Q[t]`, the generating series
//!   `G` and `H`, symbolic powers `G^x`
//! * [`genbinom`] - the coefficient engine: symbolic `<x, k>` tables, the
//!   diagonal, the `f_{n,k}` ladder, binomial-basis expansions
//! * [`identities`] - checkable identity catalog producing machine-readable
//!   reports
//! * [`hookpsi`] - exponential-polynomial solutions of the hook ODE system
//! * [`latex`] - LaTeX rendering of the above

pub mod genbinom;
pub mod hookpsi;
pub mod identities;
pub mod latex;
pub mod numeric;
pub mod polyalg;
pub mod series;

pub use genbinom::{
    above_diagonal_bridge_holds, diagonal, expansion_method1, expansion_method2,
    genbinom_minus_one, superdiagonal_sum_holds, FTable, GenBinomTable,
};
pub use hookpsi::{psi_r, psi_r1, psi_r11, ExpPoly, HookSolution};
pub use identities::{
    run_all, run_identity, IdentityError, IdentityId, IdentityReport, SweepRanges,
};
pub use numeric::{binom, factorial, NumericError, Rational};
pub use polyalg::{
    binom_x, equal_on_grid, to_binomial_basis, BinomialExpansion, PolyError, PolyT, PolyXT,
};
pub use series::{factor_product, series_g, series_h, solve_ode_g, SeriesError, TruncSeries};
