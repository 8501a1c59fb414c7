//! Laurent polynomials in one variable `q` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[q, q^-1]`. Zero coefficients are never stored, so the
/// representation is canonical and derived equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exponent: i32, coefficient: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// The loop value `q + q^-1`.
    pub fn delta() -> Self {
        LaurentPoly::from_pairs([(-1, 1), (1, 1)])
    }

    /// `delta^k`.
    pub fn delta_pow(k: u32) -> Self {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * &LaurentPoly::delta())
    }

    pub fn from_pairs<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exponent: i32, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Sum of all coefficients, i.e. the specialization `q = 1`.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                let e = ea.checked_add(eb).expect("Laurent exponent overflow");
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefficientRepr {
    Small(i64),
    Big(String),
}

impl Serialize for LaurentPoly {
    /// A list of `[exponent, coefficient]` pairs sorted by exponent.
    /// Coefficients outside the `i64` range are written as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, CoefficientRepr)> = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let repr = c.to_i64().map_or_else(|| CoefficientRepr::Big(c.to_string()), CoefficientRepr::Small);
                (e, repr)
            })
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i32, CoefficientRepr)>::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            let c = match c {
                CoefficientRepr::Small(v) => BigInt::from(v),
                CoefficientRepr::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn delta_powers() {
        let d = LaurentPoly::delta();
        let d2 = &d * &d;
        assert_eq!(d2, LaurentPoly::from_pairs([(-2, 1), (0, 2), (2, 1)]));
        assert_eq!((&d2 * &d).evaluate_at_one(), BigInt::from(8));
        assert_eq!(d.evaluate_at_one(), BigInt::from(2));
        assert_eq!(d2.evaluate_at_one(), BigInt::from(4));
        assert_eq!(LaurentPoly::delta_pow(3), &d2 * &d);
        assert_eq!(LaurentPoly::zero().evaluate_at_one(), BigInt::zero());
        assert_eq!(&d + &LaurentPoly::zero(), d);
    }

    #[test]
    fn cancellation_is_canonical() {
        let d = LaurentPoly::delta();
        assert!((&d - &d).is_zero());
        assert_eq!(&d - &d, LaurentPoly::zero());
        assert_eq!(LaurentPoly::from_pairs([(3, 0)]), LaurentPoly::zero());
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::delta_pow(2).to_string(), "q^2 + 2 + q^-2");
        assert_eq!(LaurentPoly::from_pairs([(1, -3), (0, 1)]).to_string(), "-3q + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json() {
        let p = LaurentPoly::delta_pow(2);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[-2,1],[0,2],[2,1]]");
        let big = LaurentPoly::monomial(1, BigInt::from(i64::MAX) * 4);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), big);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly()) {
            prop_assert_eq!((&a * &b).evaluate_at_one(), a.evaluate_at_one() * b.evaluate_at_one());
            prop_assert_eq!((&a + &b).evaluate_at_one(), a.evaluate_at_one() + b.evaluate_at_one());
        }
    }
}
