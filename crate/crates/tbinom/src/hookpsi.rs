//! Exponential-polynomial solutions of the coupled hook ODE system.
//!
//! The system couples a family of functions indexed by a row length `r >= 1`
//! and a column depth `s`, with initial value `0` at `u = 0`:
//!
//! ```text
//! (r + 1) psi'_{r+1}  =  r (r + 1) psi_{r+1} + t r psi_r - (1 - t) psi_{r-1}
//! (r + 1) psi'_{r,1}  =  - (r + 1) psi_{r,1} - t r psi_r + (1 - t) psi_{r-1}
//! r psi'_{r+1,1} - 2 psi'_{r,1^2}  =  r^2 psi_{r+1,1} + 4 psi_{r,1^2}
//!                     + t (r + 1) psi_{r,1} - (1 - t) (psi_{r-1,1} + psi_r)
//! ```
//!
//! All solutions live in the ring of exponential polynomials: finite sums
//! `sum_i p_i(t) e^{iu}` with integer exponents of either sign ([`ExpPoly`]).
//! The closed forms are assembled from the coefficient engine in
//! [`crate::genbinom`]; each family carries an integer scale so the stored
//! body is denominator-free (for example the `r = 3`, `s = 0` member is
//! `-6 psi_3 = t (-e^{2u} + 2 e^u - 1)`).
//!
//! Two index-0 boundary values are forced by the `r = 1` instances of the
//! system and are baked into the residual checks: `(1 - t) psi_0 = -1` (the
//! empty-index member contributes only through this product) and
//! `psi_{0,1} = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::genbinom::{diagonal, genbinom_minus_one, GenBinomTable};
use crate::identities::IdentityReport;
use crate::numeric::{binom, factorial, Rational};
use crate::polyalg::PolyT;

/// A finite sum `sum_i p_i(t) e^{iu}` with `i` ranging over integers.
///
/// Zero coefficients are never stored, so equality on the term map is
/// structural equality of the functions.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpPoly {
    terms: BTreeMap<i64, PolyT>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant function `p(t) e^{0u}`.
    pub fn constant(p: PolyT) -> Self {
        Self::from_terms(vec![(0, p)])
    }

    pub fn from_terms(terms: Vec<(i64, PolyT)>) -> Self {
        let mut e = ExpPoly::zero();
        for (i, p) in terms {
            e.add_term(i, p);
        }
        e
    }

    /// Adds `p(t) e^{iu}` into the sum.
    pub fn add_term(&mut self, i: i64, p: PolyT) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(PolyT::zero);
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e^{iu}`; zero for absent exponents.
    pub fn coeff(&self, i: i64) -> PolyT {
        self.terms.get(&i).cloned().unwrap_or_else(PolyT::zero)
    }

    /// Term map in ascending exponent order.
    pub fn terms(&self) -> &BTreeMap<i64, PolyT> {
        &self.terms
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(&i, p)| (i, p.scale(c)))
                .collect(),
        }
    }

    pub fn mul_polyt(&self, q: &PolyT) -> Self {
        let mut e = ExpPoly::zero();
        for (&i, p) in &self.terms {
            e.add_term(i, p * q);
        }
        e
    }

    /// d/du, term by term: `p e^{iu}` maps to `i p e^{iu}`.
    pub fn derivative(&self) -> Self {
        let mut e = ExpPoly::zero();
        for (&i, p) in &self.terms {
            e.add_term(i, p.scale(&Rational::from(i)));
        }
        e
    }

    /// Value at `u = 0`, a polynomial in `t`.
    pub fn eval_at_zero(&self) -> PolyT {
        let mut sum = PolyT::zero();
        for p in self.terms.values() {
            sum = &sum + p;
        }
        sum
    }

    /// Specializes `t`, leaving exponent -> value with zeros dropped.
    pub fn specialize_t(&self, t: &Rational) -> BTreeMap<i64, Rational> {
        self.terms
            .iter()
            .map(|(&i, p)| (i, p.eval(t)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

impl std::ops::Add<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut e = self.clone();
        for (&i, p) in &rhs.terms {
            e.add_term(i, p.clone());
        }
        e
    }
}

impl std::ops::Sub<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(&i, p)| (i, -p)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $method(self, rhs: ExpPoly) -> ExpPoly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $method(self, rhs: &ExpPoly) -> ExpPoly {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<ExpPoly> for &ExpPoly {
            type Output = ExpPoly;
            fn $method(self, rhs: ExpPoly) -> ExpPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl std::ops::Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest exponent first reads like the hand-written solutions.
        for (&i, p) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p}) e^u")?,
                _ => write!(f, "({p}) e^{{{i}u}}")?,
            }
        }
        Ok(())
    }
}

/// One member of a solution family: `scale * psi = body`, with `scale` the
/// integer prefactor that clears all denominators of the closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct HookSolution {
    r: usize,
    s: usize,
    scale: Rational,
    body: ExpPoly,
}

impl HookSolution {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn body(&self) -> &ExpPoly {
        &self.body
    }

    /// The solution itself, `body / scale`.
    pub fn normalized(&self) -> ExpPoly {
        self.body.scale(&self.scale.inv().expect("scale is nonzero"))
    }

    /// The initial condition `psi(0) = 0`.
    pub fn initial_condition_holds(&self) -> bool {
        self.body.eval_at_zero().is_zero()
    }

    /// Whether the `t = 1` specialization collapses to
    /// `(r + s)! psi = (e^u - 1)^{r-1} (e^{-u} - 1)^s`.
    ///
    /// The product form genuinely fails for `(r, s) = (1, 0)`, where it
    /// degenerates to the constant `1` while the solution is identically zero.
    pub fn t1_specialization_holds(&self) -> bool {
        let r = self.r as i64;
        let s = self.s as i64;
        let got = self
            .normalized()
            .scale(&factorial(self.r + self.s))
            .specialize_t(&Rational::one());
        let mut expected = BTreeMap::new();
        for i in -s..=(r - 1) {
            let sign = if (r + s + i - 1) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let c = sign * binom(&Rational::from(r + s - 1), (r - i - 1) as usize);
            if !c.is_zero() {
                expected.insert(i, c);
            }
        }
        got == expected
    }
}

impl Serialize for HookSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("HookSolution", 4)?;
        st.serialize_field("r", &self.r.to_string())?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("scale", &self.scale)?;
        st.serialize_field("terms", &self.body)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HookSolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;

        impl<'de> Visitor<'de> for V {
            type Value = HookSolution;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a hook solution object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<HookSolution, A::Error> {
                let mut r: Option<String> = None;
                let mut s: Option<String> = None;
                let mut scale: Option<Rational> = None;
                let mut body: Option<ExpPoly> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "r" => r = Some(map.next_value()?),
                        "s" => s = Some(map.next_value()?),
                        "scale" => scale = Some(map.next_value()?),
                        "terms" => body = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["r", "s", "scale", "terms"],
                            ))
                        }
                    }
                }
                let parse = |name, v: Option<String>| {
                    v.ok_or_else(|| de::Error::missing_field(name))?
                        .parse::<usize>()
                        .map_err(de::Error::custom)
                };
                Ok(HookSolution {
                    r: parse("r", r)?,
                    s: parse("s", s)?,
                    scale: scale.ok_or_else(|| de::Error::missing_field("scale"))?,
                    body: body.ok_or_else(|| de::Error::missing_field("terms"))?,
                })
            }
        }

        deserializer.deserialize_map(V)
    }
}

fn signed_factorial(n: usize, negative: bool) -> Rational {
    let f = factorial(n);
    if negative {
        -f
    } else {
        f
    }
}

fn div_one_minus_t(p: &PolyT) -> PolyT {
    p.exact_div(&PolyT::one_minus_t())
        .expect("above-diagonal entries are divisible by 1 - t")
}

/// The `s = 0` member: `(-1)^r r! psi_r = sum_{i=1}^{r-1} <r-1, r-i-1> <-1, i-1> e^{iu} - <r-2, r-2>`.
pub fn psi_r(table: &GenBinomTable, r: usize) -> HookSolution {
    assert!(r >= 1, "rows start at 1");
    assert!(table.max_k() + 2 >= r, "table too small for psi_{r}");
    let mut body = ExpPoly::zero();
    for i in 1..r {
        body.add_term(
            i as i64,
            &table.at_int(r as i64 - 1, r - i - 1) * &genbinom_minus_one(i - 1),
        );
    }
    if r >= 2 {
        body.add_term(0, -diagonal(r - 2));
    }
    HookSolution {
        r,
        s: 0,
        scale: signed_factorial(r, r % 2 == 1),
        body,
    }
}

/// The `s = 1` member:
/// `(-1)^{r+1} (r+1)! psi_{r,1} = sum_{i=1}^{r-1} (r-i)/(i+1) <r, r-i> <-1, i-1> e^{iu}
///  - r <r-1, r-1> + (r+1)/(1-t) <r, r+1> e^{-u}`.
pub fn psi_r1(table: &GenBinomTable, r: usize) -> HookSolution {
    assert!(r >= 1, "rows start at 1");
    assert!(table.max_k() >= r + 1, "table too small for psi_{{{r},1}}");
    let mut body = ExpPoly::zero();
    for i in 1..r {
        let w = Rational::new((r - i) as i64, i as i64 + 1);
        body.add_term(
            i as i64,
            (&table.at_int(r as i64, r - i) * &genbinom_minus_one(i - 1)).scale(&w),
        );
    }
    body.add_term(0, diagonal(r - 1).scale(&-Rational::from(r as i64)));
    body.add_term(
        -1,
        div_one_minus_t(&table.at_int(r as i64, r + 1)).scale(&Rational::from(r as i64 + 1)),
    );
    HookSolution {
        r,
        s: 1,
        scale: signed_factorial(r + 1, r % 2 == 0),
        body,
    }
}

/// The `s = 2` member:
/// `(-1)^r (r+2)! psi_{r,1^2} = sum_{i=1}^{r-1} [ (r-i)(r-i+1)/((i+1)(i+2)) <r+1, r-i+1>
///  + (1-t) i(r+1)(r+2)/(2(i+1)(i+2)) <r-1, r-i-1> ] <-1, i-1> e^{iu}
///  - binom(r+1, 2) <r, r>
///  + binom(r+2, 2) ( 2/(1-t) <r+1, r+2> - <r-1, r> ) e^{-u}
///  + binom(r+2, 2) 1/(1-t) <r, r+2> e^{-2u}`.
pub fn psi_r11(table: &GenBinomTable, r: usize) -> HookSolution {
    assert!(r >= 1, "rows start at 1");
    assert!(
        table.max_k() >= r + 2,
        "table too small for psi_{{{r},1^2}}"
    );
    let rr = r as i64;
    let mut body = ExpPoly::zero();
    for i in 1..r {
        let ii = i as i64;
        let w1 = Rational::new((rr - ii) * (rr - ii + 1), (ii + 1) * (ii + 2));
        let w2 = Rational::new(ii * (rr + 1) * (rr + 2), 2 * (ii + 1) * (ii + 2));
        let inner = &table.at_int(rr + 1, r - i + 1).scale(&w1)
            + &(&PolyT::one_minus_t() * &table.at_int(rr - 1, r - i - 1)).scale(&w2);
        body.add_term(ii, &inner * &genbinom_minus_one(i - 1));
    }
    let half_pairs = binom(&Rational::from(rr + 1), 2);
    let half_pairs_next = binom(&Rational::from(rr + 2), 2);
    body.add_term(0, diagonal(r).scale(&-half_pairs));
    body.add_term(
        -1,
        (&div_one_minus_t(&table.at_int(rr + 1, r + 2)).scale(&Rational::from(2))
            - &table.at_int(rr - 1, r))
            .scale(&half_pairs_next),
    );
    body.add_term(
        -2,
        div_one_minus_t(&table.at_int(rr, r + 2)).scale(&half_pairs_next),
    );
    HookSolution {
        r,
        s: 2,
        scale: signed_factorial(r + 2, r % 2 == 1),
        body,
    }
}

/// `(1 - t) psi_m` for the `s = 0` family, honoring the boundary
/// `(1 - t) psi_0 = -1`.
fn one_minus_t_psi(table: &GenBinomTable, m: usize) -> ExpPoly {
    if m == 0 {
        ExpPoly::constant(PolyT::from_ints(&[-1]))
    } else {
        psi_r(table, m).normalized().mul_polyt(&PolyT::one_minus_t())
    }
}

/// `psi_{m,1}` with the boundary `psi_{0,1} = 0`.
fn psi_r1_or_zero(table: &GenBinomTable, m: usize) -> ExpPoly {
    if m == 0 {
        ExpPoly::zero()
    } else {
        psi_r1(table, m).normalized()
    }
}

fn residual_report(id: &str, r: usize, lhs: ExpPoly, rhs: ExpPoly) -> IdentityReport {
    let params = BTreeMap::from([("r".to_string(), r.to_string())]);
    if lhs == rhs {
        IdentityReport::pass(id, params)
    } else {
        IdentityReport::fail(id, params, &lhs, &rhs)
    }
}

/// Residual of `(r+1) psi'_{r+1} = r(r+1) psi_{r+1} + t r psi_r - (1-t) psi_{r-1}`.
pub fn verify_system_s0(table: &GenBinomTable, r: usize) -> IdentityReport {
    assert!(r >= 1);
    let next = psi_r(table, r + 1).normalized();
    let cur = psi_r(table, r).normalized();
    let lhs = next.derivative().scale(&Rational::from(r as i64 + 1));
    let rhs = &(&next.scale(&Rational::from((r * (r + 1)) as i64))
        + &cur.mul_polyt(&PolyT::t()).scale(&Rational::from(r as i64)))
        - &one_minus_t_psi(table, r - 1);
    residual_report("psi_s0", r, lhs, rhs)
}

/// Residual of `(r+1) psi'_{r,1} = -(r+1) psi_{r,1} - t r psi_r + (1-t) psi_{r-1}`.
pub fn verify_system_s1(table: &GenBinomTable, r: usize) -> IdentityReport {
    assert!(r >= 1);
    let cur = psi_r1(table, r).normalized();
    let row = psi_r(table, r).normalized();
    let lhs = cur.derivative().scale(&Rational::from(r as i64 + 1));
    let rhs = &(&cur.scale(&-Rational::from(r as i64 + 1))
        - &row.mul_polyt(&PolyT::t()).scale(&Rational::from(r as i64)))
        + &one_minus_t_psi(table, r - 1);
    residual_report("psi_s1", r, lhs, rhs)
}

/// Residual of `r psi'_{r+1,1} - 2 psi'_{r,1^2} = r^2 psi_{r+1,1} + 4 psi_{r,1^2}
/// + t(r+1) psi_{r,1} - (1-t)(psi_{r-1,1} + psi_r)`.
pub fn verify_system_s2(table: &GenBinomTable, r: usize) -> IdentityReport {
    assert!(r >= 1);
    let up = psi_r1(table, r + 1).normalized();
    let deep = psi_r11(table, r).normalized();
    let cur = psi_r1(table, r).normalized();
    let lhs = &up.derivative().scale(&Rational::from(r as i64))
        - &deep.derivative().scale(&Rational::from(2));
    let drop_terms = &psi_r1_or_zero(table, r - 1) + &psi_r(table, r).normalized();
    let rhs = &(&(&up.scale(&Rational::from((r * r) as i64)) + &deep.scale(&Rational::from(4)))
        + &cur
            .mul_polyt(&PolyT::t())
            .scale(&Rational::from(r as i64 + 1)))
        - &drop_terms.mul_polyt(&PolyT::one_minus_t());
    residual_report("psi_s2", r, lhs, rhs)
}
