//! Dense bivariate polynomials in `x` (or another formal first variable) and `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::Rational;
use crate::polyalg::{PolyError, PolyT};

/// Polynomial in two variables, stored as a vector of `PolyT` rows where row
/// `j` is the coefficient of `x^j`. Canonical form carries no zero top rows.
///
/// The name of the first variable is display metadata only (the `f_{n,k}`
/// ladder reads it as `k`); equality compares coefficients alone.
#[derive(Clone)]
pub struct PolyXT {
    rows: Vec<PolyT>,
    xvar: String,
}

impl PolyXT {
    pub fn from_rows(mut rows: Vec<PolyT>) -> PolyXT {
        while rows.last().is_some_and(PolyT::is_zero) {
            rows.pop();
        }
        PolyXT {
            rows,
            xvar: "x".to_string(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> PolyXT {
        PolyXT::from_rows(rows.iter().map(|r| PolyT::from_ints(r)).collect())
    }

    pub fn zero() -> PolyXT {
        PolyXT::from_rows(Vec::new())
    }

    pub fn one() -> PolyXT {
        PolyXT::from_polyt(PolyT::one())
    }

    /// Embeds a `t`-polynomial as the `x^0` row.
    pub fn from_polyt(p: PolyT) -> PolyXT {
        PolyXT::from_rows(vec![p])
    }

    pub fn from_rational(c: Rational) -> PolyXT {
        PolyXT::from_polyt(PolyT::constant(c))
    }

    /// The first variable as a polynomial.
    pub fn x() -> PolyXT {
        PolyXT::from_rows(vec![PolyT::zero(), PolyT::one()])
    }

    /// Renames the first variable (display and JSON metadata only).
    pub fn with_xvar(mut self, name: &str) -> PolyXT {
        self.xvar = name.to_string();
        self
    }

    pub fn xvar(&self) -> &str {
        &self.xvar
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows.iter().filter_map(PolyT::degree).max()
    }

    pub fn rows(&self) -> &[PolyT] {
        &self.rows
    }

    /// Coefficient of `x^j` as a `t`-polynomial, zero beyond the degree.
    pub fn row(&self, j: usize) -> PolyT {
        self.rows.get(j).cloned().unwrap_or_else(PolyT::zero)
    }

    /// Coefficient of `x^j t^i`.
    pub fn coeff(&self, j: usize, i: usize) -> Rational {
        self.rows
            .get(j)
            .map(|r| r.coeff(i))
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> PolyXT {
        if c.is_zero() {
            return PolyXT::zero().with_xvar(&self.xvar);
        }
        PolyXT {
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
            xvar: self.xvar.clone(),
        }
    }

    pub fn mul_polyt(&self, p: &PolyT) -> PolyXT {
        if p.is_zero() {
            return PolyXT::zero().with_xvar(&self.xvar);
        }
        PolyXT {
            rows: self.rows.iter().map(|r| r * p).collect(),
            xvar: self.xvar.clone(),
        }
    }

    /// Multiplication by the first variable: shifts every row up one slot.
    pub fn mul_x(&self) -> PolyXT {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(PolyT::zero());
        rows.extend(self.rows.iter().cloned());
        PolyXT {
            rows,
            xvar: self.xvar.clone(),
        }
    }

    /// Substitutes `x := x + c`, re-expanding by Horner in `(x + c)`.
    pub fn shift_x(&self, c: i64) -> PolyXT {
        let c = Rational::from(c);
        let mut acc = PolyXT::zero().with_xvar(&self.xvar);
        for row in self.rows.iter().rev() {
            // acc = acc * (x + c) + row
            let mut rows = Vec::with_capacity(acc.rows.len() + 1);
            rows.push(PolyT::zero());
            rows.extend(acc.rows.iter().cloned());
            for (j, r) in acc.rows.iter().enumerate() {
                rows[j] = &rows[j] + &r.scale(&c);
            }
            rows[0] = &rows[0] + row;
            acc = PolyXT {
                rows,
                xvar: self.xvar.clone(),
            };
            acc.trim();
        }
        acc
    }

    fn trim(&mut self) {
        while self.rows.last().is_some_and(PolyT::is_zero) {
            self.rows.pop();
        }
    }

    /// Specializes the first variable, leaving a polynomial in `t`.
    pub fn eval_x(&self, x: &Rational) -> PolyT {
        let mut acc = PolyT::zero();
        for row in self.rows.iter().rev() {
            acc = &acc.scale(x) + row;
        }
        acc
    }

    /// Full evaluation at a rational point `(x, t)`.
    pub fn eval_xt(&self, x: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.rows.iter().rev() {
            acc = acc * x + row.eval(t);
        }
        acc
    }

    /// Divides every row by a `t`-polynomial; exact in each row or an error.
    pub fn exact_div_polyt(&self, d: &PolyT) -> Result<PolyXT, PolyError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.exact_div(d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyXT {
            rows,
            xvar: self.xvar.clone(),
        })
    }

    /// Divides by the first variable; exact only when the `x^0` row vanishes.
    pub fn exact_div_x(&self) -> Result<PolyXT, PolyError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if !self.rows[0].is_zero() {
            return Err(PolyError::InexactDivision);
        }
        Ok(PolyXT {
            rows: self.rows[1..].to_vec(),
            xvar: self.xvar.clone(),
        })
    }
}

impl PartialEq for PolyXT {
    fn eq(&self, other: &PolyXT) -> bool {
        self.rows == other.rows
    }
}

impl Eq for PolyXT {}

impl Add<&PolyXT> for &PolyXT {
    type Output = PolyXT;
    fn add(self, rhs: &PolyXT) -> PolyXT {
        let n = self.rows.len().max(rhs.rows.len());
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            rows.push(self.row(j) + rhs.row(j));
        }
        let mut out = PolyXT {
            rows,
            xvar: self.xvar.clone(),
        };
        out.trim();
        out
    }
}

impl Sub<&PolyXT> for &PolyXT {
    type Output = PolyXT;
    fn sub(self, rhs: &PolyXT) -> PolyXT {
        let n = self.rows.len().max(rhs.rows.len());
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            rows.push(self.row(j) - rhs.row(j));
        }
        let mut out = PolyXT {
            rows,
            xvar: self.xvar.clone(),
        };
        out.trim();
        out
    }
}

impl Mul<&PolyXT> for &PolyXT {
    type Output = PolyXT;
    fn mul(self, rhs: &PolyXT) -> PolyXT {
        if self.is_zero() || rhs.is_zero() {
            return PolyXT::zero().with_xvar(&self.xvar);
        }
        let mut rows = vec![PolyT::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        let mut out = PolyXT {
            rows,
            xvar: self.xvar.clone(),
        };
        out.trim();
        out
    }
}

impl Neg for &PolyXT {
    type Output = PolyXT;
    fn neg(self) -> PolyXT {
        PolyXT {
            rows: self.rows.iter().map(|r| -r).collect(),
            xvar: self.xvar.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<PolyXT> for PolyXT {
            type Output = PolyXT;
            fn $method(self, rhs: PolyXT) -> PolyXT {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PolyXT> for PolyXT {
            type Output = PolyXT;
            fn $method(self, rhs: &PolyXT) -> PolyXT {
                (&self).$method(rhs)
            }
        }
        impl $trait<PolyXT> for &PolyXT {
            type Output = PolyXT;
            fn $method(self, rhs: PolyXT) -> PolyXT {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyXT {
    type Output = PolyXT;
    fn neg(self) -> PolyXT {
        -&self
    }
}

impl fmt::Display for PolyXT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v = &self.xvar;
        let mut first = true;
        for j in (0..self.rows.len()).rev() {
            let row = &self.rows[j];
            if row.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{row}")?,
                _ => {
                    let single_term = row.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
                    if row == &PolyT::one() {
                        // bare power of x
                    } else if single_term {
                        write!(f, "{row}*")?;
                    } else {
                        write!(f, "({row})*")?;
                    }
                    if j == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyXT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PolyXT {
    /// Rectangular layout: `coeffs[j][i]` is the coefficient of `x^j t^i`,
    /// every row padded to the full `t`-width.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let width = self.deg_t().map_or(0, |d| d + 1);
        let grid: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| (0..width).map(|i| r.coeff(i)).collect())
            .collect();
        let mut s = serializer.serialize_struct("PolyXT", 2)?;
        s.serialize_field("vars", &[self.xvar.as_str(), "t"])?;
        s.serialize_field("coeffs", &grid)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PolyXT {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PolyXT, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vars: Vec<String>,
            coeffs: Vec<Vec<Rational>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.vars.len() != 2 || raw.vars[1] != "t" {
            return Err(de::Error::custom(format!(
                "expected two variables ending in \"t\", got {:?}",
                raw.vars
            )));
        }
        let rows = raw.coeffs.into_iter().map(PolyT::from_coeffs).collect();
        Ok(PolyXT::from_rows(rows).with_xvar(&raw.vars[0]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form_trims_zero_top_rows() {
        let p = PolyXT::from_ints(&[&[1], &[0, 1], &[0]]);
        assert_eq!(p.deg_x(), Some(1));
        assert!(PolyXT::from_ints(&[&[0], &[0]]).is_zero());
    }

    #[test]
    fn shift_x_example() {
        // p = t*x shifted by -1 is t*x - t.
        let p = PolyXT::x().mul_polyt(&PolyT::t());
        let shifted = p.shift_x(-1);
        let expected = PolyXT::from_ints(&[&[0, -1], &[0, 1]]);
        assert_eq!(shifted, expected);
        // Quadratic case: (x + 1)^2 = x^2 + 2x + 1.
        let sq = &PolyXT::x() * &PolyXT::x();
        assert_eq!(sq.shift_x(1), PolyXT::from_ints(&[&[1], &[2], &[1]]));
    }

    #[test]
    fn eval_examples() {
        // p = (1 - t) x^2 + t x at x = 2: 4 - 4t + 2t = 4 - 2t.
        let p = PolyXT::from_ints(&[&[0], &[0, 1], &[1, -1]]);
        assert_eq!(p.eval_x(&Rational::from(2)), PolyT::from_ints(&[4, -2]));
        assert_eq!(
            p.eval_xt(&Rational::from(2), &r(1, 2)),
            Rational::from(3)
        );
        assert_eq!(PolyXT::zero().eval_x(&Rational::from(5)), PolyT::zero());
    }

    #[test]
    fn division_by_polyt_and_x() {
        let d = PolyT::one_minus_t();
        let p = PolyXT::from_ints(&[&[0], &[1, -1], &[2, -2]]);
        let q = p.exact_div_polyt(&d).unwrap();
        assert_eq!(q, PolyXT::from_ints(&[&[0], &[1], &[2]]));
        assert_eq!(
            PolyXT::one().exact_div_polyt(&d),
            Err(PolyError::InexactDivision)
        );

        let px = PolyXT::from_ints(&[&[0], &[3], &[0, 7]]);
        assert_eq!(
            px.exact_div_x().unwrap(),
            PolyXT::from_ints(&[&[3], &[0, 7]])
        );
        assert_eq!(
            PolyXT::one().exact_div_x(),
            Err(PolyError::InexactDivision)
        );
    }

    #[test]
    fn xvar_is_metadata_only() {
        let a = PolyXT::x();
        let b = PolyXT::x().with_xvar("k");
        assert_eq!(a, b);
        assert_eq!(b.xvar(), "k");
        assert_eq!((&b - &PolyXT::one()).xvar(), "k");
    }

    #[test]
    fn json_schema_and_round_trip() {
        // t*x as a 2 x 2 rectangle.
        let p = PolyXT::x().mul_polyt(&PolyT::t());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"vars":["x","t"],"coeffs":[[["0","1"],["0","1"]],[["0","1"],["1","1"]]]}"#
        );
        let back: PolyXT = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);

        let f = PolyXT::x().with_xvar("k");
        let json_k = serde_json::to_string(&f).unwrap();
        assert!(json_k.starts_with(r#"{"vars":["k","t"]"#));
        let back_k: PolyXT = serde_json::from_str(&json_k).unwrap();
        assert_eq!(back_k.xvar(), "k");
    }

    #[test]
    fn display_examples() {
        let p = PolyXT::from_ints(&[&[0], &[1, -1], &[0, 0, 2]]);
        assert_eq!(p.to_string(), "2*t^2*x^2 + (-t + 1)*x");
        assert_eq!(PolyXT::zero().to_string(), "0");
    }

    fn arb_polyt(max_deg: usize) -> impl Strategy<Value = PolyT> {
        proptest::collection::vec((-9i64..9, 1i64..5), 0..=max_deg + 1)
            .prop_map(|cs| PolyT::from_coeffs(cs.into_iter().map(|(n, d)| r(n, d)).collect()))
    }

    fn arb_polyxt() -> impl Strategy<Value = PolyXT> {
        proptest::collection::vec(arb_polyt(3), 0..5).prop_map(PolyXT::from_rows)
    }

    proptest! {
        #[test]
        fn shift_is_a_ring_hom(a in arb_polyxt(), b in arb_polyxt(), c in -4i64..4) {
            prop_assert_eq!((&a * &b).shift_x(c), &a.shift_x(c) * &b.shift_x(c));
            prop_assert_eq!((&a + &b).shift_x(c), &a.shift_x(c) + &b.shift_x(c));
        }

        #[test]
        fn shift_round_trips(a in arb_polyxt(), c in -4i64..4) {
            prop_assert_eq!(a.shift_x(c).shift_x(-c), a);
        }

        #[test]
        fn eval_commutes_with_arithmetic(a in arb_polyxt(), b in arb_polyxt(), n in -5i64..5, m in -5i64..5) {
            let (x, t) = (Rational::from(n), Rational::from(m));
            prop_assert_eq!((&a * &b).eval_xt(&x, &t), a.eval_xt(&x, &t) * b.eval_xt(&x, &t));
            prop_assert_eq!((&a - &b).eval_xt(&x, &t), a.eval_xt(&x, &t) - b.eval_xt(&x, &t));
            prop_assert_eq!((&a + &b).eval_x(&x), a.eval_x(&x) + b.eval_x(&x));
        }

        #[test]
        fn shift_matches_shifted_evaluation(a in arb_polyxt(), c in -4i64..4, n in -5i64..5, m in -3i64..3) {
            let t = Rational::from(m);
            prop_assert_eq!(
                a.shift_x(c).eval_xt(&Rational::from(n), &t),
                a.eval_xt(&Rational::from(n + c), &t)
            );
        }
    }
}
