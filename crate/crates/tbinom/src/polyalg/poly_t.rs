//! Univariate polynomials over the rationals in the deformation parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::Rational;
use crate::polyalg::PolyError;

/// Dense polynomial in `t` with rational coefficients, stored in ascending
/// order of exponent. Canonical form carries no trailing zeros; the zero
/// polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyT {
    coeffs: Vec<Rational>,
}

impl PolyT {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> PolyT {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> PolyT {
        PolyT::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> PolyT {
        PolyT { coeffs: Vec::new() }
    }

    pub fn one() -> PolyT {
        PolyT::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> PolyT {
        PolyT::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn t() -> PolyT {
        PolyT::from_ints(&[0, 1])
    }

    /// `1 - t`, the factor that controls the deformation.
    pub fn one_minus_t() -> PolyT {
        PolyT::from_ints(&[1, -1])
    }

    pub fn monomial(c: Rational, exp: usize) -> PolyT {
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        PolyT::from_coeffs(coeffs)
    }

    pub fn t_pow(exp: usize) -> PolyT {
        PolyT::monomial(Rational::one(), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i`, zero beyond the stored degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> PolyT {
        if c.is_zero() {
            return PolyT::zero();
        }
        PolyT {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn pow(&self, exp: usize) -> PolyT {
        let mut acc = PolyT::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient `self / d` when the division is exact; the remainder is
    /// required to vanish. Panics on a zero divisor.
    pub fn exact_div(&self, d: &PolyT) -> Result<PolyT, PolyError> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(PolyT::zero());
        }
        let dd = d.degree().unwrap();
        let lead = d.coeff(dd);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let q = rem.last().unwrap() / &lead;
            let pos = rem.len() - 1 - dd;
            for i in 0..=dd {
                let delta = &q * &d.coeff(i);
                rem[pos + i] -= &delta;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[pos] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        Ok(PolyT::from_coeffs(quot))
    }
}

impl Add<&PolyT> for &PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyT::from_coeffs(coeffs)
    }
}

impl Sub<&PolyT> for &PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        PolyT::from_coeffs(coeffs)
    }
}

impl Mul<&PolyT> for &PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        if self.is_zero() || rhs.is_zero() {
            return PolyT::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        PolyT::from_coeffs(coeffs)
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<PolyT> for PolyT {
            type Output = PolyT;
            fn $method(self, rhs: PolyT) -> PolyT {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PolyT> for PolyT {
            type Output = PolyT;
            fn $method(self, rhs: &PolyT) -> PolyT {
                (&self).$method(rhs)
            }
        }
        impl $trait<PolyT> for &PolyT {
            type Output = PolyT;
            fn $method(self, rhs: PolyT) -> PolyT {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        -&self
    }
}

impl fmt::Display for PolyT {
    /// Human-readable form with powers of `t` descending, e.g. `t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[e];
            if c.is_zero() {
                continue;
            }
            let mag = if c.is_negative() { -c } else { c.clone() };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PolyT {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PolyT", 2)?;
        s.serialize_field("var", "t")?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PolyT {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PolyT, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            coeffs: Vec<Rational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.var != "t" {
            return Err(de::Error::custom(format!(
                "expected var \"t\", got {:?}",
                raw.var
            )));
        }
        Ok(PolyT::from_coeffs(raw.coeffs))
    }
}
