//! Conversion between the power basis and the binomial basis
//! `{ binom(x, i) : i >= 1 }` used throughout for presenting `<x, k>`.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{binom, factorial, Rational};
use crate::polyalg::{PolyT, PolyXT};

/// `binom(x, i)` as a polynomial in `x` (so `t`-degree zero).
pub fn binom_x(i: usize) -> PolyXT {
    let mut p = PolyXT::one();
    for j in 0..i {
        p = &p * &(PolyXT::x() - PolyXT::from_rational(Rational::from(j as i64)));
    }
    p.scale(&factorial(i).inv().expect("factorial is nonzero"))
}

/// A polynomial with zero constant term written as
/// `sum_{i=1}^{k} c_i(k) binom(x, i)`; `coeffs[i-1]` stores `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialExpansion {
    k: usize,
    coeffs: Vec<PolyT>,
}

impl BinomialExpansion {
    pub fn new(k: usize, coeffs: Vec<PolyT>) -> BinomialExpansion {
        assert_eq!(coeffs.len(), k, "expected one coefficient per 1 <= i <= k");
        BinomialExpansion { k, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Coefficient `c_i`, 1-based.
    pub fn coeff(&self, i: usize) -> &PolyT {
        assert!(i >= 1 && i <= self.k, "index {i} outside 1..={}", self.k);
        &self.coeffs[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &PolyT)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    /// Expands back into the power basis.
    pub fn to_poly(&self) -> PolyXT {
        let mut acc = PolyXT::zero();
        for (i, c) in self.iter() {
            acc = &acc + &binom_x(i).mul_polyt(c);
        }
        acc
    }
}

impl Serialize for BinomialExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BinomialExpansion", 2)?;
        st.serialize_field("k", &self.k.to_string())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BinomialExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;

        impl<'de> Visitor<'de> for V {
            type Value = BinomialExpansion;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a binomial-basis expansion object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut k: Option<String> = None;
                let mut coeffs: Option<Vec<PolyT>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "k" => k = Some(map.next_value()?),
                        "coeffs" => coeffs = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["k", "coeffs"])),
                    }
                }
                let k = k
                    .ok_or_else(|| de::Error::missing_field("k"))?
                    .parse::<usize>()
                    .map_err(de::Error::custom)?;
                let coeffs = coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))?;
                if coeffs.len() != k {
                    return Err(de::Error::custom(format!(
                        "expected {k} coefficients, found {}",
                        coeffs.len()
                    )));
                }
                Ok(BinomialExpansion { k, coeffs })
            }
        }

        deserializer.deserialize_map(V)
    }
}

/// Rewrites `p` in the binomial basis by evaluating at the integer nodes
/// `x = 0, ..., deg_x` and back-substituting through the triangular system
/// `p(j) = sum_i binom(j, i) c_i`. Requires a zero constant term in `x`.
pub fn to_binomial_basis(p: &PolyXT) -> BinomialExpansion {
    let k = p.deg_x().unwrap_or(0);
    assert!(
        p.row(0).is_zero(),
        "binomial-basis conversion requires a zero constant term in x"
    );
    let mut coeffs: Vec<PolyT> = Vec::with_capacity(k);
    for j in 1..=k {
        let mut c = p.eval_x(&Rational::from(j as i64));
        for (i, prev) in coeffs.iter().enumerate() {
            let b = binom(&Rational::from(j as i64), i + 1);
            c = &c - &prev.scale(&b);
        }
        coeffs.push(c);
    }
    BinomialExpansion::new(k, coeffs)
}
