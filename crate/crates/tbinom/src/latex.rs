//! LaTeX rendering for the engine's value types.
//!
//! Output is plain ASCII math-mode source. Polynomials in `t` print with
//! powers descending, binomial-basis expansions with the basis index
//! descending, and exponential polynomials with the exponent of `e^{u}`
//! descending, matching the order the closed forms are usually displayed in.
//! These strings are a convenience rendering; the JSON schemas remain the
//! stable machine interface.

use crate::hookpsi::{ExpPoly, HookSolution};
use crate::numeric::Rational;
use crate::polyalg::{BinomialExpansion, PolyT};

/// `3`, `-3`, `\frac{1}{2}`, `-\frac{1}{2}`.
pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let (mut n, d) = (r.numer().clone(), r.denom());
    if r.is_negative() {
        n = -n;
    }
    format!("{sign}\\frac{{{n}}}{{{d}}}")
}

/// Signed-term accumulator producing `a - b + c` with a bare leading sign.
struct Terms(String);

impl Terms {
    fn new() -> Terms {
        Terms(String::new())
    }

    fn push(&mut self, negative: bool, body: &str) {
        if self.0.is_empty() {
            if negative {
                self.0.push('-');
            }
        } else {
            self.0.push_str(if negative { " - " } else { " + " });
        }
        self.0.push_str(body);
    }

    fn finish(self) -> String {
        if self.0.is_empty() {
            "0".to_string()
        } else {
            self.0
        }
    }
}

/// `t` to the power `e`: `1`, `t`, `t^{2}`.
fn t_power(e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => "t".to_string(),
        _ => format!("t^{{{e}}}"),
    }
}

/// A single `c * t^e` factor with the sign already stripped from `c`.
fn magnitude_times(mag: &Rational, power: &str) -> String {
    if power == "1" {
        rational(mag)
    } else if mag.is_one() {
        power.to_string()
    } else {
        format!("{} {power}", rational(mag))
    }
}

/// Polynomial in `t`, powers descending: `t^{2} - t + 1`.
pub fn poly_t(p: &PolyT) -> String {
    let mut out = Terms::new();
    for e in (0..p.coeffs().len()).rev() {
        let c = p.coeff(e);
        if c.is_zero() {
            continue;
        }
        let mag = if c.is_negative() { -&c } else { c.clone() };
        out.push(c.is_negative(), &magnitude_times(&mag, &t_power(e)));
    }
    out.finish()
}

/// Number of nonzero coefficients, to decide whether a factor needs fencing.
fn term_count(p: &PolyT) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// `p` as a prefactor of `basis`, fencing multi-term `p` in `\left( \right)`.
///
/// Returns the rendered term body and whether a sign was pulled out front.
fn coefficient_times(p: &PolyT, basis: &str) -> (String, bool) {
    match term_count(p) {
        0 => ("0".to_string(), false),
        1 => {
            let e = p.degree().expect("nonzero polynomial has a degree");
            let c = p.coeff(e);
            let mag = if c.is_negative() { -&c } else { c.clone() };
            let factor = magnitude_times(&mag, &t_power(e));
            if factor == "1" {
                (basis.to_string(), c.is_negative())
            } else {
                (format!("{factor} {basis}"), c.is_negative())
            }
        }
        _ => (format!("\\left({}\\right) {basis}", poly_t(p)), false),
    }
}

/// The binomial basis element: `x` for `i = 1`, `\binom{x}{i}` above.
fn binom_basis(i: usize) -> String {
    if i == 1 {
        "x".to_string()
    } else {
        format!("\\binom{{x}}{{{i}}}")
    }
}

/// Expansion `sum_i c_i binom(x, i)` with `i` descending: the leading term of
/// `<x, k>` prints first, as `t^{k} \binom{x}{k} + ...`.
pub fn binomial_expansion(e: &BinomialExpansion) -> String {
    let mut out = Terms::new();
    for i in (1..=e.k()).rev() {
        let c = e.coeff(i);
        if c.is_zero() {
            continue;
        }
        let (body, negative) = coefficient_times(c, &binom_basis(i));
        out.push(negative, &body);
    }
    out.finish()
}

/// The exponential: `1`, `e^{u}`, `e^{-u}`, `e^{2u}`.
fn exp_basis(i: i64) -> String {
    match i {
        0 => "1".to_string(),
        1 => "e^{u}".to_string(),
        -1 => "e^{-u}".to_string(),
        _ => format!("e^{{{i}u}}"),
    }
}

/// Exponential polynomial `sum_i c_i(t) e^{iu}` with `i` descending.
pub fn exp_poly(p: &ExpPoly) -> String {
    let mut out = Terms::new();
    for (&i, c) in p.terms().iter().rev() {
        if c.is_zero() {
            continue;
        }
        let basis = exp_basis(i);
        if basis == "1" {
            // Constant term: fall back to plain polynomial terms in t.
            let rendered = poly_t(c);
            match rendered.strip_prefix('-') {
                Some(rest) if term_count(c) == 1 => out.push(true, rest),
                _ if term_count(c) == 1 => out.push(false, &rendered),
                _ => out.push(false, &format!("\\left({rendered}\\right)")),
            }
        } else {
            let (body, negative) = coefficient_times(c, &basis);
            out.push(negative, &body);
        }
    }
    out.finish()
}

/// `\psi_2`, `\psi_{10}`, `\psi_{2,1}`, `\psi_{1,1^2}`.
pub fn psi_name(r: usize, s: usize) -> String {
    let sub = match s {
        0 => r.to_string(),
        1 => format!("{r},1"),
        _ => format!("{r},1^{s}"),
    };
    if sub.len() == 1 {
        format!("\\psi_{sub}")
    } else {
        format!("\\psi_{{{sub}}}")
    }
}

/// Full display `2\psi_2 = e^{u} - 1`: the scaled left side, then the body.
pub fn hook_solution(h: &HookSolution) -> String {
    let prefactor = if h.scale().is_one() {
        String::new()
    } else if (-h.scale()).is_one() {
        "-".to_string()
    } else {
        rational(h.scale())
    };
    format!(
        "{prefactor}{} = {}",
        psi_name(h.r(), h.s()),
        exp_poly(h.body())
    )
}
