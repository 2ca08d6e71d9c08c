//! Dense exact polynomial algebra in one variable `t` and two variables
//! `(x, t)`, plus the two proof tools the identity checks are built on:
//! conversion to the binomial basis `{ binom(x, i) }` and equality testing on
//! integer grids large enough to separate polynomials of bounded degree.

mod binomial;
mod grid;
mod poly_t;
mod poly_xt;

pub use binomial::{binom_x, to_binomial_basis, BinomialExpansion};
pub use grid::equal_on_grid;
pub use poly_t::PolyT;
pub use poly_xt::PolyXT;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
}
