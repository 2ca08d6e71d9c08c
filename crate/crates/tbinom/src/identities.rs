//! Catalog of checkable identities with machine-readable reports.
//!
//! Every identity family known to the crate has a stable string id and a
//! check function that sweeps it over a configurable range, returning a
//! single [`IdentityReport`]. A report records the id, the parameters of the
//! sweep, and whether the identity held exactly; on failure the two
//! disagreeing sides are attached as JSON values together with the failing
//! point.
//!
//! [`run_identity`] runs one family with defaults filled from
//! [`SweepRanges`]; [`run_all`] runs the whole catalog in declaration order,
//! so output is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genbinom::{
    above_diagonal_bridge_holds, diagonal, expansion_method1, expansion_method2,
    genbinom_minus_one, superdiagonal_sum_holds, FTable, GenBinomTable,
};
use crate::hookpsi::{psi_r, psi_r1, psi_r11, verify_system_s0, verify_system_s1,
    verify_system_s2};
use crate::numeric::{binom, factorial, Rational};
use crate::polyalg::{equal_on_grid, to_binomial_basis, PolyT, PolyXT};
use crate::series::{factor_product, series_g, series_h, solve_ode_g, TruncSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    /// The convolution-sum identity is evaluated with a vanishing leading
    /// parameter, so its first summand is 0/0 with no removable reading.
    #[error("summand is undefined: the leading parameter is zero")]
    PoleInSummand,
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
}

/// Outcome of one identity sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    /// Sweep ranges and, on failure, the failing point, all as strings.
    pub parameters: BTreeMap<String, String>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<serde_json::Value>,
}

impl IdentityReport {
    pub fn pass(id: &str, parameters: BTreeMap<String, String>) -> IdentityReport {
        IdentityReport {
            identity_id: id.to_string(),
            parameters,
            holds: true,
            lhs: None,
            rhs: None,
        }
    }

    pub fn fail<L: Serialize, R: Serialize>(
        id: &str,
        parameters: BTreeMap<String, String>,
        lhs: &L,
        rhs: &R,
    ) -> IdentityReport {
        IdentityReport {
            identity_id: id.to_string(),
            parameters,
            holds: false,
            lhs: Some(serde_json::to_value(lhs).expect("operands serialize")),
            rhs: Some(serde_json::to_value(rhs).expect("operands serialize")),
        }
    }

    /// One JSON line, the exchange format of the `verify` command.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Stable ids of the identity families, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `G(u) H(u) = 1`.
    Thm1,
    /// `G'(u) = t + (1 - t) u H(u)`.
    GDeriv,
    /// The series solved from the first-order ODE equals `G`.
    Cor1,
    /// `sum_k <x, k> u^k = G(u)^x`, symbolically and for integer `x`.
    Thm2,
    /// `<-1, k>` as a closed product.
    Cor2,
    /// Convolution rule `sum_i <x, i> <y, k-i> = <x+y, k>`.
    Cor3,
    /// Weighted convolution `(x+y) sum_i i <x, i> <y, k-i> = k x <x+y, k>`.
    Cor4,
    /// `sum_i i <n, n-i> <-1, i-1> = 0` for `n >= 2`.
    Cor5,
    /// Downward Pascal-type recurrence relating `<x, m>` to `<x-1, *>`.
    PascalDown,
    /// Upward Pascal-type recurrence relating `<x, m>` to `<x+1, *>`.
    PascalUp,
    /// The convolution-sum identity behind the series inversion.
    Rothe,
    /// Closed form and recurrence of the diagonal `<n, n>`.
    Diag,
    /// `(1 - t)` divides `<n, k>` for integer `0 < n < k`.
    Divisibility,
    /// `binom(k, n) <n, k> = (1-t) f_{n,k} <-1, k-n-1>` above the diagonal.
    Bridge,
    /// `<n, n+1> / (1 - t)` as a weighted convolution with `x = -1`.
    Superdiag,
    /// The two expansion methods and the basis conversion agree.
    Expansion,
    /// Closed rows for the top binomial-basis coefficients `c_{k-i}(k)`.
    TopCoeffs,
    /// Closed rows for the low binomial-basis coefficients `c_1 .. c_4`.
    LowCoeffs,
    /// Hook ODE system, `s = 0` family.
    PsiS0,
    /// Hook ODE system, `s = 1` family.
    PsiS1,
    /// Hook ODE system, `s = 2` family.
    PsiS2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 21] = [
        IdentityId::Thm1,
        IdentityId::GDeriv,
        IdentityId::Cor1,
        IdentityId::Thm2,
        IdentityId::Cor2,
        IdentityId::Cor3,
        IdentityId::Cor4,
        IdentityId::Cor5,
        IdentityId::PascalDown,
        IdentityId::PascalUp,
        IdentityId::Rothe,
        IdentityId::Diag,
        IdentityId::Divisibility,
        IdentityId::Bridge,
        IdentityId::Superdiag,
        IdentityId::Expansion,
        IdentityId::TopCoeffs,
        IdentityId::LowCoeffs,
        IdentityId::PsiS0,
        IdentityId::PsiS1,
        IdentityId::PsiS2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "thm1",
            IdentityId::GDeriv => "gderiv",
            IdentityId::Cor1 => "cor1",
            IdentityId::Thm2 => "thm2",
            IdentityId::Cor2 => "cor2",
            IdentityId::Cor3 => "cor3",
            IdentityId::Cor4 => "cor4",
            IdentityId::Cor5 => "cor5",
            IdentityId::PascalDown => "pascal_down",
            IdentityId::PascalUp => "pascal_up",
            IdentityId::Rothe => "rothe",
            IdentityId::Diag => "diag",
            IdentityId::Divisibility => "divisibility",
            IdentityId::Bridge => "bridge",
            IdentityId::Superdiag => "superdiag",
            IdentityId::Expansion => "expansion",
            IdentityId::TopCoeffs => "top_coeffs",
            IdentityId::LowCoeffs => "low_coeffs",
            IdentityId::PsiS0 => "psi_s0",
            IdentityId::PsiS1 => "psi_s1",
            IdentityId::PsiS2 => "psi_s2",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<IdentityId, IdentityError> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

/// Optional overrides for the per-identity default sweep ranges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepRanges {
    /// Truncation order of series checks.
    pub order: Option<usize>,
    /// Upper index `k` (or `m`) bound of coefficient sweeps.
    pub max_k: Option<usize>,
    /// Upper `n` bound of integer-row sweeps.
    pub max_n: Option<usize>,
    /// Upper row bound of the hook ODE sweeps.
    pub max_r: Option<usize>,
}

/// `G(u) H(u) = 1` compared on explicit series, so callers can feed
/// deliberately perturbed operands.
pub fn check_thm1_series(g: &TruncSeries, h: &TruncSeries) -> IdentityReport {
    let order = g.order().min(h.order());
    let p = params([("order", order.to_string())]);
    let product = g.mul(h);
    let one = TruncSeries::one(order);
    if product == one {
        IdentityReport::pass("thm1", p)
    } else {
        IdentityReport::fail("thm1", p, &product, &one)
    }
}

/// `G(u) H(u) = 1` up to `u^order`.
pub fn check_thm1(order: usize) -> IdentityReport {
    check_thm1_series(&series_g(order), &series_h(order))
}

/// `G'(u) = t + (1 - t) u H(u)` compared on explicit series; the relation is
/// checked at order `g.order() - 1`.
pub fn check_gderiv_series(g: &TruncSeries, h: &TruncSeries) -> IdentityReport {
    let order = g.order();
    assert!(order >= 2 && h.order() >= order - 2);
    let p = params([("order", order.to_string())]);
    let lhs = g.derivative();
    let rhs = TruncSeries::constant(PolyT::t(), order - 1)
        .add(&h.truncate(order - 2).mul_u().scale_polyt(&PolyT::one_minus_t()));
    if lhs == rhs {
        IdentityReport::pass("gderiv", p)
    } else {
        IdentityReport::fail("gderiv", p, &lhs, &rhs)
    }
}

/// `G'(u) = t + (1 - t) u H(u)` for `G` truncated at `order`.
pub fn check_gderiv(order: usize) -> IdentityReport {
    check_gderiv_series(&series_g(order), &series_h(order))
}

/// The ODE-driven coefficient recursion reproduces `G` up to `u^order`.
pub fn check_cor1(order: usize) -> IdentityReport {
    let p = params([("order", order.to_string())]);
    let lhs = solve_ode_g(order);
    let rhs = series_g(order);
    if lhs == rhs {
        IdentityReport::pass("cor1", p)
    } else {
        IdentityReport::fail("cor1", p, &lhs, &rhs)
    }
}

/// `sum_k <x, k> u^k = G(u)^x`: symbolically for `k <= sym_order` and as
/// truncated series for integer `x = 0 .. max_n` at order `int_order`.
pub fn check_thm2(
    table: &GenBinomTable,
    max_n: usize,
    int_order: usize,
    sym_order: usize,
) -> IdentityReport {
    let mut p = params([
        ("max_n", max_n.to_string()),
        ("int_order", int_order.to_string()),
        ("sym_order", sym_order.to_string()),
    ]);

    let powers = series_g(sym_order)
        .pow_symbolic()
        .expect("G has constant term one");
    for (k, power_coeff) in powers.iter().enumerate() {
        if power_coeff != table.symbolic(k) {
            p.insert("failed_at".into(), format!("symbolic k = {k}"));
            return IdentityReport::fail("thm2", p, power_coeff, table.symbolic(k));
        }
    }

    let g = series_g(int_order);
    let mut power = TruncSeries::one(int_order);
    for n in 0..=max_n {
        let rows = TruncSeries::from_coeffs(
            int_order,
            (0..=int_order).map(|k| table.at_int(n as i64, k)).collect(),
        );
        if power != rows {
            p.insert("failed_at".into(), format!("integer n = {n}"));
            return IdentityReport::fail("thm2", p, &power, &rows);
        }
        power = power.mul(&g);
    }
    IdentityReport::pass("thm2", p)
}

/// `<-1, k> = (-1)^k / k! * prod_{i=1}^k (k - i + 1 + (t-1) i)` against the
/// recurrence table.
pub fn check_cor2(table: &GenBinomTable, max_k: usize) -> IdentityReport {
    let mut p = params([("max_k", max_k.to_string())]);
    for k in 0..=max_k {
        let closed = genbinom_minus_one(k);
        let from_table = table.at_int(-1, k);
        if closed != from_table {
            p.insert("failed_at".into(), format!("k = {k}"));
            return IdentityReport::fail("cor2", p, &closed, &from_table);
        }
    }
    IdentityReport::pass("cor2", p)
}

/// Scans an integer grid and reports the first point where two evaluations
/// disagree.
fn first_grid_mismatch<F, G>(
    degrees: &[usize],
    f: F,
    g: G,
) -> Option<(Vec<i64>, Rational, Rational)>
where
    F: Fn(&[i64]) -> Rational,
    G: Fn(&[i64]) -> Rational,
{
    let mut point = vec![0i64; degrees.len()];
    loop {
        let (a, b) = (f(&point), g(&point));
        if a != b {
            return Some((point, a, b));
        }
        let mut v = 0;
        loop {
            if v == degrees.len() {
                return None;
            }
            if (point[v] as usize) < degrees[v] {
                point[v] += 1;
                break;
            }
            point[v] = 0;
            v += 1;
        }
    }
}

/// Evaluation caches for the convolution checks: `single[x][i][tv]` holds
/// `<x, i>` and `joined[xy][tv]` holds `<xy, k>`, both at `t = tv`.
fn convolution_caches(
    table: &GenBinomTable,
    k: usize,
    x_max: usize,
    t_max: usize,
) -> (Vec<Vec<Vec<Rational>>>, Vec<Vec<Rational>>) {
    let t_points: Vec<Rational> = (0..=t_max as i64).map(Rational::from).collect();
    let single = (0..=x_max as i64)
        .map(|x| {
            (0..=k)
                .map(|i| {
                    let poly = table.at_int(x, i);
                    t_points.iter().map(|tv| poly.eval(tv)).collect()
                })
                .collect()
        })
        .collect();
    let joined = (0..=2 * x_max as i64)
        .map(|xy| {
            let poly = table.at_int(xy, k);
            t_points.iter().map(|tv| poly.eval(tv)).collect()
        })
        .collect();
    (single, joined)
}

/// `sum_i <x, i> <y, k-i> = <x+y, k>`, proved on a grid with bounds
/// `(k, k, k)` in `(x, y, t)`, which dominate both sides' degrees.
pub fn check_cor3(table: &GenBinomTable, max_k: usize) -> IdentityReport {
    let mut p = params([
        ("max_k", max_k.to_string()),
        ("grid_bounds", "deg_x = k, deg_y = k, deg_t = k".to_string()),
    ]);
    for k in 0..=max_k {
        if k > 0 {
            let top = table.symbolic(k);
            assert!(top.deg_x() == Some(k) && top.deg_t() == Some(k));
        }
        let (single, joined) = convolution_caches(table, k, k, k);
        let lhs = |pt: &[i64]| {
            let (x, y, tv) = (pt[0] as usize, pt[1] as usize, pt[2] as usize);
            let mut sum = Rational::zero();
            for i in 0..=k {
                sum += &single[x][i][tv] * &single[y][k - i][tv];
            }
            sum
        };
        let rhs = |pt: &[i64]| joined[(pt[0] + pt[1]) as usize][pt[2] as usize].clone();
        if !equal_on_grid(&[k, k, k], lhs, rhs) {
            let (point, a, b) = first_grid_mismatch(&[k, k, k], lhs, rhs)
                .expect("grid disagreement has a witness");
            p.insert("failed_at".into(), format!("k = {k}, (x, y, t) = {point:?}"));
            return IdentityReport::fail("cor3", p, &a, &b);
        }
    }
    IdentityReport::pass("cor3", p)
}

/// `(x+y) sum_i i <x, i> <y, k-i> = k x <x+y, k>` on a grid with bounds
/// `(k+1, k+1, k)`; clearing the denominator keeps both sides polynomial.
pub fn check_cor4(table: &GenBinomTable, max_k: usize) -> IdentityReport {
    let mut p = params([
        ("max_k", max_k.to_string()),
        ("grid_bounds", "deg_x = k+1, deg_y = k+1, deg_t = k".to_string()),
    ]);
    for k in 0..=max_k {
        if k > 0 {
            let top = table.symbolic(k);
            assert!(top.deg_x() == Some(k) && top.deg_t() == Some(k));
        }
        let (single, joined) = convolution_caches(table, k, k + 1, k);
        let lhs = |pt: &[i64]| {
            let (x, y, tv) = (pt[0] as usize, pt[1] as usize, pt[2] as usize);
            let mut sum = Rational::zero();
            for i in 1..=k {
                sum += &(&single[x][i][tv] * &single[y][k - i][tv]) * &Rational::from(i as i64);
            }
            &sum * &Rational::from(pt[0] + pt[1])
        };
        let rhs = |pt: &[i64]| {
            &joined[(pt[0] + pt[1]) as usize][pt[2] as usize]
                * &Rational::from(k as i64 * pt[0])
        };
        if !equal_on_grid(&[k + 1, k + 1, k], lhs, rhs) {
            let (point, a, b) = first_grid_mismatch(&[k + 1, k + 1, k], lhs, rhs)
                .expect("grid disagreement has a witness");
            p.insert("failed_at".into(), format!("k = {k}, (x, y, t) = {point:?}"));
            return IdentityReport::fail("cor4", p, &a, &b);
        }
    }
    IdentityReport::pass("cor4", p)
}

/// `sum_{i=1}^n i <n, n-i> <-1, i-1> = 0` for `2 <= n <= max_n`; the `i = 0`
/// summand carries a zero factor and is omitted.
pub fn check_cor5(table: &GenBinomTable, max_n: usize) -> IdentityReport {
    let mut p = params([("max_n", max_n.to_string())]);
    for n in 2..=max_n {
        let mut sum = PolyT::zero();
        for i in 1..=n {
            sum = &sum
                + &(&table.at_int(n as i64, n - i) * &genbinom_minus_one(i - 1))
                    .scale(&Rational::from(i as i64));
        }
        if !sum.is_zero() {
            p.insert("failed_at".into(), format!("n = {n}"));
            return IdentityReport::fail("cor5", p, &sum, &PolyT::zero());
        }
    }
    IdentityReport::pass("cor5", p)
}

/// `<x, m> - <x-1, m> = t <x-1, m-1>
///  + (1-t) sum_{k=0}^{m-2} (-1)^k/(k+2)! <x-1, m-k-2> prod_{i=0}^k (k-i+1+(t-1)i)`.
pub fn check_pascal_down(table: &GenBinomTable, max_m: usize) -> IdentityReport {
    let mut p = params([("max_m", max_m.to_string())]);
    for m in 1..=max_m {
        let lhs = table.symbolic(m) - &table.symbolic(m).shift_x(-1);
        let mut sum = PolyXT::zero();
        for k in 0..m.saturating_sub(1) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let weight = factorial(k + 2).inv().unwrap() * Rational::from(sign);
            sum = &sum
                + &table
                    .symbolic(m - k - 2)
                    .shift_x(-1)
                    .mul_polyt(&factor_product(k, 0))
                    .scale(&weight);
        }
        let rhs = &table.symbolic(m - 1).shift_x(-1).mul_polyt(&PolyT::t())
            + &sum.mul_polyt(&PolyT::one_minus_t());
        if lhs != rhs {
            p.insert("failed_at".into(), format!("m = {m}"));
            return IdentityReport::fail("pascal_down", p, &lhs, &rhs);
        }
    }
    IdentityReport::pass("pascal_down", p)
}

/// `<x, m> - <x+1, m> = sum_{k=1}^m <x+1, m-k> <-1, k>`, the coefficient of
/// the upward shift being exactly the closed `x = -1` column.
pub fn check_pascal_up(table: &GenBinomTable, max_m: usize) -> IdentityReport {
    let mut p = params([("max_m", max_m.to_string())]);
    for m in 1..=max_m {
        let lhs = table.symbolic(m) - &table.symbolic(m).shift_x(1);
        let mut rhs = PolyXT::zero();
        for k in 1..=m {
            rhs = &rhs
                + &table
                    .symbolic(m - k)
                    .shift_x(1)
                    .mul_polyt(&genbinom_minus_one(k));
        }
        if lhs != rhs {
            p.insert("failed_at".into(), format!("m = {m}"));
            return IdentityReport::fail("pascal_up", p, &lhs, &rhs);
        }
    }
    IdentityReport::pass("pascal_up", p)
}

/// `sum_{k=0}^n A/(A+Bk) binom(A+Bk, k) binom(C-Bk, n-k) = binom(A+C, n)`.
///
/// Summands are evaluated in the cancelled form
/// `A prod_{j=1}^{k-1} (A+Bk-j) / k! * binom(C-Bk, n-k)`, which extends each
/// term across the removable points `A + Bk = 0` with `k >= 1`. Only `A = 0`
/// is fatal: the `k = 0` summand is then 0/0 with no cancellation available.
pub fn check_rothe(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    n: usize,
) -> Result<IdentityReport, IdentityError> {
    if a.is_zero() {
        return Err(IdentityError::PoleInSummand);
    }
    let p = params([
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("c", c.to_string()),
        ("n", n.to_string()),
    ]);
    let mut lhs = binom(c, n);
    for k in 1..=n {
        let bk = b * &Rational::from(k as i64);
        let mut product = a.clone();
        for j in 1..k {
            product = &product * &(&(a + &bk) - &Rational::from(j as i64));
        }
        let term = &(&product * &binom(&(c - &bk), n - k)) * &factorial(k).inv().unwrap();
        lhs = &lhs + &term;
    }
    let rhs = binom(&(a + c), n);
    Ok(if lhs == rhs {
        IdentityReport::pass("rothe", p)
    } else {
        IdentityReport::fail("rothe", p, &lhs, &rhs)
    })
}

/// The convolution-sum identity at the parameter curve used by the series
/// inversion, `A = (t-1)/(t-2)`, `B = -1/(t-2)`, `C = -1 - (n+1)/(t-2)`,
/// sampled at rational `t`, plus the `B = 0` Chu-Vandermonde degeneration.
pub fn check_rothe_samples(max_n: usize) -> IdentityReport {
    let samples = ["0", "1/2", "3", "-1", "7/3"];
    let mut p = params([
        ("max_n", max_n.to_string()),
        ("t_values", samples.join(", ")),
        ("extra", "vandermonde: a = 2, b = 0, c = 3, n = 2".to_string()),
    ]);
    for t_str in samples {
        let t: Rational = t_str.parse().unwrap();
        let inv = (&t - &Rational::from(2)).inv().expect("t != 2 at all samples");
        let a = Rational::one() + &inv; // (t-1)/(t-2), nonzero since t != 1
        let b = -inv.clone();
        for n in 0..=max_n {
            let c = -(Rational::one() + &(&inv * &Rational::from(n as i64 + 1)));
            let report = check_rothe(&a, &b, &c, n).expect("leading parameter is nonzero");
            if !report.holds {
                p.insert("failed_at".into(), format!("t = {t}, n = {n}"));
                return IdentityReport {
                    identity_id: "rothe".into(),
                    parameters: p,
                    ..report
                };
            }
        }
    }
    let plain = check_rothe(&Rational::from(2), &Rational::zero(), &Rational::from(3), 2)
        .expect("leading parameter is nonzero");
    if !plain.holds {
        p.insert("failed_at".into(), "vandermonde degeneration".to_string());
        return IdentityReport {
            identity_id: "rothe".into(),
            parameters: p,
            ..plain
        };
    }
    IdentityReport::pass("rothe", p)
}

/// `<n, n> = (1 - (t-1)^{n+1}) / (2 - t)` and the first-order recurrence
/// `<n, n> = 1 + (t-1) <n-1, n-1>`.
pub fn check_diag(table: &GenBinomTable, max_n: usize) -> IdentityReport {
    let mut p = params([("max_n", max_n.to_string())]);
    let t_minus_1 = PolyT::from_ints(&[-1, 1]);
    for n in 0..=max_n {
        let closed = diagonal(n);
        let from_table = table.at_int(n as i64, n);
        if closed != from_table {
            p.insert("failed_at".into(), format!("closed form, n = {n}"));
            return IdentityReport::fail("diag", p, &closed, &from_table);
        }
        if n >= 1 {
            let stepped = &PolyT::one() + &(&t_minus_1 * &diagonal(n - 1));
            if closed != stepped {
                p.insert("failed_at".into(), format!("recurrence, n = {n}"));
                return IdentityReport::fail("diag", p, &closed, &stepped);
            }
        }
    }
    IdentityReport::pass("diag", p)
}

/// `(1 - t)` divides `<n, k>` for `1 <= n < k`.
pub fn check_divisibility(table: &GenBinomTable, max_k: usize, max_n: usize) -> IdentityReport {
    let mut p = params([("max_k", max_k.to_string()), ("max_n", max_n.to_string())]);
    for k in 2..=max_k {
        for n in 1..k.min(max_n + 1) {
            let entry = table.at_int(n as i64, k);
            if entry.exact_div(&PolyT::one_minus_t()).is_err() {
                p.insert("failed_at".into(), format!("n = {n}, k = {k}"));
                return IdentityReport::fail("divisibility", p, &entry, &PolyT::zero());
            }
        }
    }
    IdentityReport::pass("divisibility", p)
}

/// `binom(k, n) <n, k> = (1-t) f_{n,k} <-1, k-n-1>` for `1 <= n < k`.
pub fn check_bridge(
    table: &GenBinomTable,
    ftable: &FTable,
    max_k: usize,
    max_n: usize,
) -> IdentityReport {
    let mut p = params([("max_k", max_k.to_string()), ("max_n", max_n.to_string())]);
    for k in 2..=max_k {
        for n in 1..k.min(max_n + 1) {
            if !above_diagonal_bridge_holds(table, ftable, n, k) {
                p.insert("failed_at".into(), format!("n = {n}, k = {k}"));
                let lhs = table
                    .at_int(n as i64, k)
                    .scale(&binom(&Rational::from(k as i64), n));
                let rhs = (&PolyT::one_minus_t() * &ftable.f_at(n, k as i64))
                    * genbinom_minus_one(k - n - 1);
                return IdentityReport::fail("bridge", p, &lhs, &rhs);
            }
        }
    }
    IdentityReport::pass("bridge", p)
}

/// `<n, n+1> / (1-t) = sum_{i=1}^n i/(i+1) <n, n-i> <-1, i-1>`.
pub fn check_superdiag(table: &GenBinomTable, max_n: usize) -> IdentityReport {
    let mut p = params([("max_n", max_n.to_string())]);
    for n in 0..=max_n {
        if !superdiagonal_sum_holds(table, n) {
            p.insert("failed_at".into(), format!("n = {n}"));
            let lhs = table.at_int(n as i64, n + 1);
            return IdentityReport::fail("superdiag", p, &lhs, &PolyT::zero());
        }
    }
    IdentityReport::pass("superdiag", p)
}

/// The recurrence-driven expansion, the ladder-driven expansion, and direct
/// basis conversion of the symbolic entry all agree for `1 <= k <= max_k`.
pub fn check_expansion(table: &GenBinomTable, ftable: &FTable, max_k: usize) -> IdentityReport {
    let mut p = params([("max_k", max_k.to_string())]);
    for k in 1..=max_k {
        let by_recurrence = expansion_method1(k);
        let by_ladder = expansion_method2(k, ftable);
        let by_basis = to_binomial_basis(table.symbolic(k));
        if by_recurrence != by_ladder || by_recurrence != by_basis {
            p.insert("failed_at".into(), format!("k = {k}"));
            return IdentityReport::fail("expansion", p, &by_recurrence.to_poly(),
                &by_ladder.to_poly());
        }
    }
    IdentityReport::pass("expansion", p)
}

/// Closed form of the top expansion coefficient `c_{k-i}(k)` for
/// `1 <= i <= 5`: up to sign and the factor `(k-i)/(i+1) t^{k-2i} (t-1)`,
/// a polynomial in `t^2 (t-1)` whose coefficients are the `a` lists below.
fn top_coeff_row(k: usize, i: usize) -> PolyT {
    let kq = Rational::from(k as i64);
    let lin = |p: i64, q: i64, den: i64| {
        (&(&kq * &Rational::from(p)) + &Rational::from(q)) * &Rational::new(1, den)
    };
    let kbinom = |shift: i64, j: usize| binom(&(&kq - &Rational::from(shift)), j);
    let a_list: Vec<Rational> = match i {
        1 => vec![Rational::one()],
        2 => vec![Rational::one(), lin(3, -9, 8)],
        3 => vec![
            Rational::one(),
            lin(4, -13, 6),
            kbinom(4, 2) * Rational::new(1, 6),
        ],
        4 => vec![
            Rational::one(),
            lin(65, -229, 72),
            &lin(10, -45, 48) * &(&kq - &Rational::from(5)),
            kbinom(5, 3) * Rational::new(5, 64),
        ],
        5 => {
            let k_sq = &kq * &kq;
            let quad = &(&(&k_sq * &Rational::from(85)) - &(&kq * &Rational::from(853)))
                + &Rational::from(2148);
            vec![
                Rational::one(),
                lin(66, -251, 60),
                quad * Rational::new(1, 240),
                &lin(4, -23, 48) * &kbinom(6, 2),
                kbinom(6, 4) * Rational::new(3, 80),
            ]
        }
        _ => unreachable!(),
    };
    let t_minus_1 = PolyT::from_ints(&[-1, 1]);
    let mut s = PolyT::zero();
    for (m, am) in a_list.iter().enumerate() {
        s = &s + &(&PolyT::t_pow(2 * (i - m - 1)) * &t_minus_1.pow(m)).scale(am);
    }
    let cleared = &t_minus_1 * &s;
    let shifted = if k >= 2 * i {
        &cleared * &PolyT::t_pow(k - 2 * i)
    } else {
        cleared
            .exact_div(&PolyT::t_pow(2 * i - k))
            .expect("the row is a polynomial in t")
    };
    let sign = if i % 2 == 0 { 1 } else { -1 };
    shifted.scale(&Rational::new(sign * (k - i) as i64, i as i64 + 1))
}

/// The five closed top rows `c_{k-1}(k) .. c_{k-5}(k)` against the
/// recurrence-driven expansion, for `6 <= k <= max_k`.
pub fn check_top_coeffs(max_k: usize) -> IdentityReport {
    let mut p = params([("k_range", format!("6 ..= {max_k}"))]);
    for k in 6..=max_k {
        let expansion = expansion_method1(k);
        for i in 1..=5 {
            let closed = top_coeff_row(k, i);
            let engine = expansion.coeff(k - i);
            if closed != *engine {
                p.insert("failed_at".into(), format!("k = {k}, i = {i}"));
                return IdentityReport::fail("top_coeffs", p, &closed, engine);
            }
        }
    }
    IdentityReport::pass("top_coeffs", p)
}

/// The four closed low rows: `binom(k, i) c_i(k)` as `(1-t)`-multiples of
/// short combinations of `<-1, k-i-1> .. <-1, k-2>`, for `i <= 4`.
pub fn check_low_coeffs(max_k: usize) -> IdentityReport {
    let mut p = params([("max_k", max_k.to_string())]);
    let one_minus_t = PolyT::one_minus_t();
    // t^2 + c (1 - t), the quadratic that climbs the ladder.
    let quad = |c: Rational| &PolyT::t_pow(2) + &one_minus_t.scale(&c);
    for k in 2..=max_k {
        let kq = Rational::from(k as i64);
        let expansion = expansion_method1(k);
        let mo = genbinom_minus_one;
        let mut rows: Vec<(usize, PolyT, PolyT)> = Vec::new();
        rows.push((1, expansion.coeff(1).scale(&kq), &one_minus_t * &mo(k - 2)));
        if k >= 3 {
            let rhs = &(&PolyT::t() * &mo(k - 3))
                - &mo(k - 2).scale(&(&kq - &Rational::one()));
            rows.push((
                2,
                expansion.coeff(2).scale(&binom(&kq, 2)),
                &one_minus_t * &rhs,
            ));
        }
        if k >= 4 {
            let rhs = &(&(&quad((&kq - &Rational::one()) * Rational::new(1, 2)) * &mo(k - 4))
                - &(&PolyT::t() * &mo(k - 3)).scale(&(&kq - &Rational::from(2))))
                + &mo(k - 2).scale(&binom(&(&kq - &Rational::one()), 2));
            rows.push((
                3,
                expansion.coeff(3).scale(&binom(&kq, 3)),
                &one_minus_t * &rhs,
            ));
        }
        if k >= 5 {
            let f3 = quad((&kq - &Rational::one()) * Rational::new(1, 2));
            let f4_like = quad((&(&kq * &Rational::from(5)) - &Rational::from(8)) * Rational::new(1, 6));
            let rhs = &(&(&(&PolyT::t() * &f4_like) * &mo(k - 5))
                - &(&f3 * &mo(k - 4)).scale(&(&kq - &Rational::from(3))))
                + &(&(&PolyT::t() * &mo(k - 3)).scale(&binom(&(&kq - &Rational::from(2)), 2))
                    - &mo(k - 2).scale(&binom(&(&kq - &Rational::one()), 3)));
            rows.push((
                4,
                expansion.coeff(4).scale(&binom(&kq, 4)),
                &one_minus_t * &rhs,
            ));
        }
        for (i, lhs, rhs) in rows {
            if lhs != rhs {
                p.insert("failed_at".into(), format!("k = {k}, i = {i}"));
                return IdentityReport::fail("low_coeffs", p, &lhs, &rhs);
            }
        }
    }
    IdentityReport::pass("low_coeffs", p)
}

/// Full verification of one hook ODE family: initial condition, residual of
/// the defining relation, and the `t = 1` product specialization (which is
/// genuinely excluded at `(r, s) = (1, 0)`).
pub fn check_psi_family(table: &GenBinomTable, s: usize, max_r: usize) -> IdentityReport {
    assert!(s <= 2);
    let id = ["psi_s0", "psi_s1", "psi_s2"][s];
    let mut p = params([("s", s.to_string()), ("max_r", max_r.to_string())]);
    for r in 1..=max_r {
        let sol = match s {
            0 => psi_r(table, r),
            1 => psi_r1(table, r),
            _ => psi_r11(table, r),
        };
        if !sol.initial_condition_holds() {
            p.insert("failed_at".into(), format!("initial condition, r = {r}"));
            return IdentityReport::fail(id, p, sol.body(), &crate::hookpsi::ExpPoly::zero());
        }
        let residual = match s {
            0 => verify_system_s0(table, r),
            1 => verify_system_s1(table, r),
            _ => verify_system_s2(table, r),
        };
        if !residual.holds {
            let mut report = residual;
            report.parameters.insert("max_r".into(), max_r.to_string());
            return report;
        }
        if !(r == 1 && s == 0) && !sol.t1_specialization_holds() {
            p.insert("failed_at".into(), format!("t = 1 specialization, r = {r}"));
            return IdentityReport::fail(id, p, sol.body(), &crate::hookpsi::ExpPoly::zero());
        }
    }
    IdentityReport::pass(id, p)
}

/// Runs one identity family, filling unspecified ranges with the defaults
/// the acceptance checks use.
pub fn run_identity(id: IdentityId, ranges: &SweepRanges) -> IdentityReport {
    let SweepRanges {
        order,
        max_k,
        max_n,
        max_r,
    } = *ranges;
    match id {
        IdentityId::Thm1 => check_thm1(order.unwrap_or(40)),
        IdentityId::GDeriv => check_gderiv(order.unwrap_or(40)),
        IdentityId::Cor1 => check_cor1(order.unwrap_or(40)),
        IdentityId::Thm2 => {
            let int_order = max_k.unwrap_or(20);
            let sym_order = max_k.unwrap_or(15);
            let n = max_n.unwrap_or(10);
            let table = GenBinomTable::up_to(int_order.max(sym_order));
            check_thm2(&table, n, int_order, sym_order)
        }
        IdentityId::Cor2 => {
            let k = max_k.unwrap_or(30);
            check_cor2(&GenBinomTable::up_to(k), k)
        }
        IdentityId::Cor3 => {
            let k = max_k.unwrap_or(10);
            check_cor3(&GenBinomTable::up_to(k), k)
        }
        IdentityId::Cor4 => {
            let k = max_k.unwrap_or(10);
            check_cor4(&GenBinomTable::up_to(k), k)
        }
        IdentityId::Cor5 => {
            let n = max_n.unwrap_or(20);
            check_cor5(&GenBinomTable::up_to(n), n)
        }
        IdentityId::PascalDown => {
            let m = max_k.unwrap_or(10);
            check_pascal_down(&GenBinomTable::up_to(m), m)
        }
        IdentityId::PascalUp => {
            let m = max_k.unwrap_or(10);
            check_pascal_up(&GenBinomTable::up_to(m), m)
        }
        IdentityId::Rothe => check_rothe_samples(max_n.unwrap_or(15)),
        IdentityId::Diag => {
            let n = max_n.unwrap_or(30);
            check_diag(&GenBinomTable::up_to(n), n)
        }
        IdentityId::Divisibility => {
            let k = max_k.unwrap_or(16);
            let n = max_n.unwrap_or(8);
            check_divisibility(&GenBinomTable::up_to(k), k, n)
        }
        IdentityId::Bridge => {
            let k = max_k.unwrap_or(16);
            let n = max_n.unwrap_or(8);
            check_bridge(&GenBinomTable::up_to(k), &FTable::up_to(n), k, n)
        }
        IdentityId::Superdiag => {
            let n = max_n.unwrap_or(20);
            check_superdiag(&GenBinomTable::up_to(n + 1), n)
        }
        IdentityId::Expansion => {
            let k = max_k.unwrap_or(12);
            let ftable = FTable::up_to(if k >= 2 { k - 1 } else { 1 });
            check_expansion(&GenBinomTable::up_to(k), &ftable, k)
        }
        IdentityId::TopCoeffs => check_top_coeffs(max_k.unwrap_or(12)),
        IdentityId::LowCoeffs => check_low_coeffs(max_k.unwrap_or(16)),
        IdentityId::PsiS0 => {
            let r = max_r.unwrap_or(10);
            check_psi_family(&GenBinomTable::up_to(r + 2), 0, r)
        }
        IdentityId::PsiS1 => {
            let r = max_r.unwrap_or(10);
            check_psi_family(&GenBinomTable::up_to(r + 2), 1, r)
        }
        IdentityId::PsiS2 => {
            let r = max_r.unwrap_or(8);
            check_psi_family(&GenBinomTable::up_to(r + 2), 2, r)
        }
    }
}

/// Runs the whole catalog in declaration order.
pub fn run_all(ranges: &SweepRanges) -> Vec<IdentityReport> {
    IdentityId::ALL
        .iter()
        .map(|&id| run_identity(id, ranges))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn report_json_shape() {
        let pass = IdentityReport::pass("thm1", params([("order", "8".to_string())]));
        assert_eq!(
            pass.to_json_line(),
            r#"{"identity_id":"thm1","parameters":{"order":"8"},"holds":true}"#
        );
        let fail = IdentityReport::fail("diag", params([]), &r(1, 2), &r(1, 3));
        assert_eq!(
            fail.to_json_line(),
            r#"{"identity_id":"diag","parameters":{},"holds":false,"lhs":["1","2"],"rhs":["1","3"]}"#
        );
        let back: IdentityReport = serde_json::from_str(&fail.to_json_line()).unwrap();
        assert_eq!(back, fail);
    }

    #[test]
    fn identity_id_parsing() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!(
            "bogus".parse::<IdentityId>(),
            Err(IdentityError::UnknownIdentity("bogus".to_string()))
        );
    }

    #[test]
    fn series_identities_hold() {
        assert!(check_thm1(12).holds);
        assert!(check_gderiv(12).holds);
        assert!(check_cor1(12).holds);
    }

    #[test]
    fn perturbed_series_fail() {
        let g = series_g(8);
        let mut coeffs = series_h(8).coeffs().to_vec();
        coeffs[3] = -coeffs[3].clone();
        let bad_h = TruncSeries::from_coeffs(8, coeffs);
        let report = check_thm1_series(&g, &bad_h);
        assert!(!report.holds);
        assert!(report.lhs.is_some() && report.rhs.is_some());
        assert!(!check_gderiv_series(&g, &bad_h).holds);
    }

    #[test]
    fn generating_function_powers() {
        let table = GenBinomTable::up_to(8);
        assert!(check_thm2(&table, 4, 8, 6).holds);
    }

    #[test]
    fn closed_minus_one_column() {
        let table = GenBinomTable::up_to(12);
        assert!(check_cor2(&table, 12).holds);
    }

    #[test]
    fn convolution_identities() {
        let table = GenBinomTable::up_to(4);
        assert!(check_cor3(&table, 4).holds);
        assert!(check_cor4(&table, 4).holds);
        let table = GenBinomTable::up_to(8);
        assert!(check_cor5(&table, 8).holds);
    }

    #[test]
    fn pascal_recurrences() {
        let table = GenBinomTable::up_to(6);
        assert!(check_pascal_down(&table, 6).holds);
        assert!(check_pascal_up(&table, 6).holds);
    }

    #[test]
    fn rothe_instances() {
        // t = 3, n = 2 walks through a removable pole at k = 2.
        let report = check_rothe(&r(2, 1), &r(-1, 1), &r(-4, 1), 2).unwrap();
        assert!(report.holds);
        // B = 0 collapses to plain Chu-Vandermonde.
        assert!(check_rothe(&r(2, 1), &r(0, 1), &r(3, 1), 2).unwrap().holds);
        // A = 0 leaves the first summand undefined.
        assert_eq!(
            check_rothe(&r(0, 1), &r(1, 1), &r(3, 1), 2),
            Err(IdentityError::PoleInSummand)
        );
        // The identity is parameter-free, so detuned parameters still hold.
        assert!(check_rothe(&r(2, 1), &r(-1, 1), &r(-3, 1), 2).unwrap().holds);
        // Hand-evaluated summands of the t = 3, n = 2 instance: 10 - 6 - 1.
        let hand = &(&r(10, 1) - &r(6, 1)) - &r(1, 1);
        assert_eq!(hand, binom(&r(-2, 1), 2));
        assert_ne!(&hand + &r(1, 1), binom(&r(-2, 1), 2));

        assert!(check_rothe_samples(6).holds);
    }

    #[test]
    fn row_structure_sweeps() {
        let table = GenBinomTable::up_to(9);
        assert!(check_diag(&table, 8).holds);
        assert!(check_divisibility(&table, 9, 5).holds);
        assert!(check_bridge(&table, &FTable::up_to(5), 9, 5).holds);
        assert!(check_superdiag(&table, 8).holds);
    }

    #[test]
    fn expansion_sweeps() {
        let table = GenBinomTable::up_to(6);
        assert!(check_expansion(&table, &FTable::up_to(5), 6).holds);
        assert!(check_top_coeffs(9).holds);
        assert!(check_low_coeffs(9).holds);
    }

    #[test]
    fn hook_families() {
        let table = GenBinomTable::up_to(6);
        assert!(check_psi_family(&table, 0, 4).holds);
        assert!(check_psi_family(&table, 1, 4).holds);
        assert!(check_psi_family(&table, 2, 4).holds);
    }

    #[test]
    fn run_all_is_deterministic_and_green() {
        let ranges = SweepRanges {
            order: Some(8),
            max_k: Some(6),
            max_n: Some(5),
            max_r: Some(3),
        };
        let reports = run_all(&ranges);
        assert_eq!(reports.len(), IdentityId::ALL.len());
        for (report, id) in reports.iter().zip(IdentityId::ALL) {
            assert_eq!(report.identity_id, id.as_str());
            assert!(report.holds, "{} failed: {}", id, report.to_json_line());
            let back: IdentityReport = serde_json::from_str(&report.to_json_line()).unwrap();
            assert_eq!(back, *report);
        }
    }
}
