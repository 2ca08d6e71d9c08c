//! Truncated formal power series in `u` with `t`-polynomial coefficients.
//!
//! The two distinguished series here generate the deformed coefficients:
//! `G(u)` has `<x, k>` as the `u^k` coefficient of its formal `x`-th power,
//! and `H(u)` collects the values `<-1, k>`. Both start `1 + O(u)`, `G` with
//! linear term `t u`. A truncation order is carried with every series and
//! all arithmetic results take the minimum order of their operands.

use std::fmt;

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::Rational;
use crate::polyalg::{PolyT, PolyXT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("inversion requires a nonzero rational constant term")]
    NonUnitConstantTerm,
    #[error("logarithm requires constant term exactly one")]
    ConstantTermNotOne,
}

/// Power series truncated after `u^order`; `coeffs` always has `order + 1`
/// entries.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<PolyT>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> TruncSeries {
        TruncSeries {
            coeffs: vec![PolyT::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncSeries {
        TruncSeries::constant(PolyT::one(), order)
    }

    pub fn constant(c: PolyT, order: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds from explicit low-order coefficients, padding with zeros.
    pub fn from_coeffs(order: usize, coeffs: Vec<PolyT>) -> TruncSeries {
        assert!(coeffs.len() <= order + 1, "more coefficients than the order admits");
        let mut s = TruncSeries::zero(order);
        for (i, c) in coeffs.into_iter().enumerate() {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `u^n`. Panics past the truncation order, where the
    /// coefficient is unknown rather than zero.
    pub fn coeff(&self, n: usize) -> PolyT {
        assert!(n <= self.order(), "coefficient {n} beyond order {}", self.order());
        self.coeffs[n].clone()
    }

    pub fn coeffs(&self) -> &[PolyT] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order());
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![PolyT::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale_polyt(&self, p: &PolyT) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Multiplication by `u`. No information is lost, so the order grows.
    pub fn mul_u(&self) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(PolyT::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs }
    }

    /// Termwise `d/du`; the order drops by one.
    pub fn derivative(&self) -> TruncSeries {
        assert!(self.order() >= 1, "cannot differentiate an order-0 series");
        TruncSeries {
            coeffs: (1..self.coeffs.len())
                .map(|n| self.coeffs[n].scale(&Rational::from(n as i64)))
                .collect(),
        }
    }

    /// Termwise antiderivative with constant term zero; the order grows.
    pub fn integrate(&self) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(PolyT::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(1, n as i64 + 1)));
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse. The constant term must be a nonzero rational
    /// (degree zero in `t`), otherwise the inverse leaves `Q[t]`.
    pub fn inverse(&self) -> Result<TruncSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || c0.degree() != Some(0) {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let inv0 = c0.coeff(0).inv().expect("nonzero by the check above");
        let mut coeffs = vec![PolyT::zero(); self.coeffs.len()];
        coeffs[0] = PolyT::constant(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = PolyT::zero();
            for j in 1..=n {
                acc = &acc + &(&self.coeffs[j] * &coeffs[n - j]);
            }
            coeffs[n] = acc.scale(&-&inv0);
        }
        Ok(TruncSeries { coeffs })
    }

    /// Formal logarithm of a series starting at exactly 1, via
    /// `log(a) = integral of a' / a`. Keeps the order of `self`.
    pub fn log(&self) -> Result<TruncSeries, SeriesError> {
        if self.coeffs[0] != PolyT::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        if self.order() == 0 {
            return Ok(TruncSeries::zero(0));
        }
        let quotient = self
            .derivative()
            .mul(&self.inverse().expect("constant term one is invertible"));
        Ok(quotient.integrate())
    }

    /// Integer power by repeated squaring, at the order of `self`.
    pub fn pow_int(&self, exp: usize) -> TruncSeries {
        let mut acc = TruncSeries::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients of the formal symbolic power `self^x`: entry `k` is a
    /// polynomial in `(x, t)` of `x`-degree at most `k`. Defined through
    /// `E = exp(x log a)`, computed by the linear ODE `E' = x (log a)' E`
    /// with `E(0) = 1`.
    pub fn pow_symbolic(&self) -> Result<Vec<PolyXT>, SeriesError> {
        let l = self.log()?;
        let mut es = vec![PolyXT::one()];
        for m in 1..=self.order() {
            let mut sum = PolyXT::zero();
            for j in 0..m {
                // (log a)' coefficient of u^j
                let mu = l.coeffs[j + 1].scale(&Rational::from(j as i64 + 1));
                if mu.is_zero() {
                    continue;
                }
                sum = &sum + &es[m - 1 - j].mul_polyt(&mu);
            }
            es.push(sum.mul_x().scale(&Rational::new(1, m as i64)));
        }
        Ok(es)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(order {}; ", self.order())?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            write!(f, "u^{n}: {c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TruncSeries", 3)?;
        s.serialize_field("var", "u")?;
        s.serialize_field("order", &self.order().to_string())?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<TruncSeries, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            order: String,
            coeffs: Vec<PolyT>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.var != "u" {
            return Err(de::Error::custom(format!(
                "expected var \"u\", got {:?}",
                raw.var
            )));
        }
        let order: usize = raw
            .order
            .parse()
            .map_err(|_| de::Error::custom(format!("bad order {:?}", raw.order)))?;
        if raw.coeffs.len() != order + 1 {
            return Err(de::Error::custom(format!(
                "order {} demands {} coefficients, got {}",
                order,
                order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncSeries { coeffs: raw.coeffs })
    }
}

/// The factor string `prod_{i=lowest}^{k} (k - i + 1 + (t - 1) i)` common to
/// the series coefficients below and to the values `<-1, k>`.
pub fn factor_product(k: usize, lowest: usize) -> PolyT {
    let mut acc = PolyT::one();
    for i in lowest..=k {
        let (k, i) = (k as i64, i as i64);
        acc = &acc * &PolyT::from_coeffs(vec![Rational::from(k - 2 * i + 1), Rational::from(i)]);
    }
    acc
}

/// `G(u) = 1 + t u + (1 - t) sum_{k>=0} (-u)^{k+2}/(k+2)! prod_{i=0}^{k} (k - i + 1 + (t-1) i)`.
pub fn series_g(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    let mut coeffs = vec![PolyT::one()];
    if order >= 1 {
        coeffs.push(PolyT::t());
    }
    for m in 2..=order {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let c = factor_product(m - 2, 0)
            .scale(&(Rational::from(sign) / crate::numeric::factorial(m)));
        coeffs.push(&PolyT::one_minus_t() * &c);
    }
    for (i, c) in coeffs.into_iter().enumerate() {
        s.coeffs[i] = c;
    }
    s
}

/// `H(u) = 1 + sum_{k>=1} (-u)^k/k! prod_{i=1}^{k} (k - i + 1 + (t-1) i)`;
/// the `u^k` coefficient equals `<-1, k>`.
pub fn series_h(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    s.coeffs[0] = PolyT::one();
    for k in 1..=order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        s.coeffs[k] =
            factor_product(k, 1).scale(&(Rational::from(sign) / crate::numeric::factorial(k)));
    }
    s
}

/// Solves `G(0) = 1`, `G G' = t G + (1 - t) u` coefficient by coefficient;
/// this is the unique series solution of `G' = t + (1 - t) u / G`.
pub fn solve_ode_g(order: usize) -> TruncSeries {
    let mut g = vec![PolyT::one()];
    for n in 0..order {
        // (n+1) g_{n+1} = t g_n + (1-t)[n == 1] - sum_{j=0}^{n-1} (j+1) g_{j+1} g_{n-j}
        let mut rhs = &PolyT::t() * &g[n];
        if n == 1 {
            rhs = &rhs + &PolyT::one_minus_t();
        }
        for j in 0..n {
            let prod = &g[j + 1] * &g[n - j];
            rhs = &rhs - &prod.scale(&Rational::from(j as i64 + 1));
        }
        g.push(rhs.scale(&Rational::new(1, n as i64 + 1)));
    }
    TruncSeries { coeffs: g }
}
