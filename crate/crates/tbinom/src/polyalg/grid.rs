//! Polynomial identity checking by exhaustive evaluation on integer grids.
//!
//! Two polynomials of degree at most `d_v` in each variable `v` agree
//! identically iff they agree on the product grid `{0, ..., d_v}`. The
//! check below is therefore a proof whenever the supplied bounds dominate
//! the true degrees; with undersized bounds it degrades to a spot check.

use crate::numeric::Rational;

/// Compares two callables on the full integer grid determined by `degrees`
/// (one inclusive bound per variable). Exact arithmetic throughout.
pub fn equal_on_grid<F, G>(degrees: &[usize], f: F, g: G) -> bool
where
    F: Fn(&[i64]) -> Rational,
    G: Fn(&[i64]) -> Rational,
{
    let mut point = vec![0i64; degrees.len()];
    loop {
        if f(&point) != g(&point) {
            return false;
        }
        let mut v = 0;
        loop {
            if v == degrees.len() {
                return true;
            }
            point[v] += 1;
            if point[v] <= degrees[v] as i64 {
                break;
            }
            point[v] = 0;
            v += 1;
        }
    }
}
