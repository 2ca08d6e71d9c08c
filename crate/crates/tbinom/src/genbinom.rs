//! The coefficient engine for `<x, k>`.
//!
//! Everything is driven by the defining recurrence
//! `<x, k> = (x/k) ( t <x-1, k-1> + (1-t) <x-2, k-2> )` with `<x, 0> = 1`.
//! A [`GenBinomTable`] caches the symbolic polynomials up to a chosen `k`;
//! the other items here are the closed forms derived from them: the values
//! at `x = -1`, the diagonal `<n, n>`, the `f_{n,k}` ladder that links
//! super-diagonal entries back to `<-1, .>`, and two independent ways of
//! writing `<x, k>` in the binomial basis.

use crate::numeric::{binom, factorial, Rational};
use crate::polyalg::{BinomialExpansion, PolyT, PolyXT};
use crate::series::factor_product;

/// Symbolic `<x, k>` for `0 <= k <= max_k`, built once and then read-only.
pub struct GenBinomTable {
    entries: Vec<PolyXT>,
}

impl GenBinomTable {
    pub fn up_to(max_k: usize) -> GenBinomTable {
        let mut entries: Vec<PolyXT> = Vec::with_capacity(max_k + 1);
        entries.push(PolyXT::one());
        for k in 1..=max_k {
            let mut inner = entries[k - 1].shift_x(-1).mul_polyt(&PolyT::t());
            if k >= 2 {
                inner = &inner + &entries[k - 2].shift_x(-2).mul_polyt(&PolyT::one_minus_t());
            }
            entries.push(inner.mul_x().scale(&Rational::new(1, k as i64)));
        }
        GenBinomTable { entries }
    }

    pub fn max_k(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn symbolic(&self, k: usize) -> &PolyXT {
        assert!(k <= self.max_k(), "table built only up to k = {}", self.max_k());
        &self.entries[k]
    }

    /// `<x, k>` specialized at a rational `x`, still a polynomial in `t`.
    pub fn at(&self, x: &Rational, k: usize) -> PolyT {
        self.symbolic(k).eval_x(x)
    }

    pub fn at_int(&self, x: i64, k: usize) -> PolyT {
        self.at(&Rational::from(x), k)
    }
}

/// `<-1, k>` in closed form: `(-1)^k/k! prod_{i=1}^{k} (k - i + 1 + (t-1) i)`.
pub fn genbinom_minus_one(k: usize) -> PolyT {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    factor_product(k, 1).scale(&(Rational::from(sign) / factorial(k)))
}

/// The diagonal `<n, n> = (1 - (t-1)^{n+1}) / (2 - t)`, certified by exact
/// division.
pub fn diagonal(n: usize) -> PolyT {
    let tm1_pow = PolyT::from_ints(&[-1, 1]).pow(n + 1);
    let num = &PolyT::one() - &tm1_pow;
    num.exact_div(&PolyT::from_ints(&[2, -1]))
        .expect("1 - (t-1)^{n+1} vanishes at t = 2, so 2 - t divides it")
}

/// The ladder `f_{n,k}`: polynomials in `(k, t)` with `f_1 = 1`, `f_2 = t`,
/// `f_n = t f_{n-1, k-1} + (1-t) (k-1)/(n-1) f_{n-2, k-2}`. Each `f_n` is
/// monic of degree `n - 1` in `t`.
pub struct FTable {
    entries: Vec<PolyXT>,
}

impl FTable {
    pub fn up_to(n_max: usize) -> FTable {
        assert!(n_max >= 1);
        let mut entries = vec![PolyXT::one().with_xvar("k")];
        if n_max >= 2 {
            entries.push(PolyXT::from_polyt(PolyT::t()).with_xvar("k"));
        }
        for n in 3..=n_max {
            let a = entries[n - 2].shift_x(-1).mul_polyt(&PolyT::t());
            let k_minus_1 = PolyXT::x().with_xvar("k") - PolyXT::one();
            let b = (&k_minus_1 * &entries[n - 3].shift_x(-2))
                .mul_polyt(&PolyT::one_minus_t())
                .scale(&Rational::new(1, n as i64 - 1));
            entries.push(&a + &b);
        }
        FTable { entries }
    }

    pub fn n_max(&self) -> usize {
        self.entries.len()
    }

    /// `f_n` as a polynomial in `(k, t)`, 1-based.
    pub fn f(&self, n: usize) -> &PolyXT {
        assert!(n >= 1 && n <= self.n_max(), "f_{n} outside the built range");
        &self.entries[n - 1]
    }

    /// `f_{n,k}` at an integer `k`.
    pub fn f_at(&self, n: usize, k: i64) -> PolyT {
        self.f(n).eval_x(&Rational::from(k))
    }
}

/// Checks `binom(k, n) <n, k> = (1 - t) f_{n,k} <-1, k - n - 1>` for
/// `1 <= n < k`, the bridge between above-diagonal entries and `x = -1`.
pub fn above_diagonal_bridge_holds(table: &GenBinomTable, ftable: &FTable, n: usize, k: usize) -> bool {
    assert!(n >= 1 && n < k);
    let lhs = table
        .at_int(n as i64, k)
        .scale(&binom(&Rational::from(k as i64), n));
    let rhs = (&PolyT::one_minus_t() * &ftable.f_at(n, k as i64))
        * genbinom_minus_one(k - n - 1);
    lhs == rhs
}

/// Checks `<n, n+1> / (1 - t) = sum_{i=1}^{n} i/(i+1) <n, n-i> <-1, i-1>`.
pub fn superdiagonal_sum_holds(table: &GenBinomTable, n: usize) -> bool {
    let lhs = match table.at_int(n as i64, n + 1).exact_div(&PolyT::one_minus_t()) {
        Ok(q) => q,
        Err(_) => return false,
    };
    let mut rhs = PolyT::zero();
    for i in 1..=n {
        let w = Rational::new(i as i64, i as i64 + 1);
        rhs = &rhs
            + &(&table.at_int(n as i64, n - i) * &genbinom_minus_one(i - 1)).scale(&w);
    }
    lhs == rhs
}

/// Binomial-basis expansion of `<x, k>` built purely from the coefficient
/// recurrence `(k/i) c_i(k) = t c_{i-1}(k-1) + (1-t) sum_{m=0}^{k-i-1} (-1)^m c_{i+m-1}(k-2)`,
/// seeded by `c_0(0) = 1` and `c_0(j) = 0` for `j >= 1`.
pub fn expansion_method1(k: usize) -> BinomialExpansion {
    // c[kp][i] for 0 <= i <= kp; rows grow with kp.
    let mut c: Vec<Vec<PolyT>> = vec![vec![PolyT::one()]];
    for kp in 1..=k {
        let mut row = vec![PolyT::zero()];
        for i in 1..=kp {
            let mut rhs = &PolyT::t() * &c[kp - 1][i - 1];
            if kp >= 2 && kp >= i + 1 {
                let mut alt = PolyT::zero();
                for m in 0..=(kp - i - 1) {
                    let term = &c[kp - 2][i + m - 1];
                    if m % 2 == 0 {
                        alt = &alt + term;
                    } else {
                        alt = &alt - term;
                    }
                }
                rhs = &rhs + &(&PolyT::one_minus_t() * &alt);
            }
            row.push(rhs.scale(&Rational::new(i as i64, kp as i64)));
        }
        c.push(row);
    }
    BinomialExpansion::new(k, c[k][1..].to_vec())
}

/// The same expansion through the ladder: for `1 <= i <= k - 1`,
/// `binom(k,i) c_i(k) = (1-t) sum_{m=1}^{i} (-1)^{i-m} f_{m,k} binom(k-m, i-m) <-1, k-m-1>`,
/// with `c_k(k) = t^k`. Requires the ladder built through `n = k - 1`.
pub fn expansion_method2(k: usize, ftable: &FTable) -> BinomialExpansion {
    assert!(k == 0 || k == 1 || ftable.n_max() >= k - 1);
    let mut coeffs = Vec::with_capacity(k);
    for i in 1..k {
        let mut sum = PolyT::zero();
        for m in 1..=i {
            let term = (&ftable.f_at(m, k as i64) * &genbinom_minus_one(k - m - 1))
                .scale(&binom(&Rational::from((k - m) as i64), i - m));
            if (i - m) % 2 == 0 {
                sum = &sum + &term;
            } else {
                sum = &sum - &term;
            }
        }
        let denominator = binom(&Rational::from(k as i64), i);
        coeffs.push(
            (&PolyT::one_minus_t() * &sum).scale(&denominator.inv().expect("binom(k,i) > 0")),
        );
    }
    if k >= 1 {
        coeffs.push(PolyT::t_pow(k));
    }
    BinomialExpansion::new(k, coeffs)
}
