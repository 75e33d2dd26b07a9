//! Exact coefficient arithmetic.
//!
//! Every quantity in this crate lives in the Laurent polynomial ring
//! Z[q^{1/2}, q^{-1/2}] or in its subring Z[q_1] where q_1 = q^{1/2} - q^{-1/2}.
//! [`LaurentPoly`] stores exponents as integer multiples of 1/2, so the
//! exponent key `k` denotes the monomial q^{k/2}; `q` itself has key 2.
//! Coefficients are 64-bit integers with *checked* arithmetic: an overflow
//! aborts loudly instead of silently wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in coefficient arithmetic")
}

fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in coefficient arithmetic")
}

/// An element of Z[q^{1/2}, q^{-1/2}].
///
/// Internally a sparse map from half-integer exponents (stored as the integer
/// numerator over 2) to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The monomial q^{units/2}; `units` counts powers of q^{1/2}.
    pub fn monomial(units: i32) -> Self {
        Self::term(units, 1)
    }

    /// The single term c * q^{units/2}.
    pub fn term(units: i32, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(units, c);
        }
        LaurentPoly { terms }
    }

    /// The constant polynomial c.
    pub fn constant(c: i64) -> Self {
        Self::term(0, c)
    }

    /// q = q^{2/2}.
    pub fn q() -> Self {
        Self::monomial(2)
    }

    /// q^{1/2}.
    pub fn q_half() -> Self {
        Self::monomial(1)
    }

    /// q^{1/2} - q^{-1/2}, the image of the variable of [`Q1Poly`].
    pub fn q_half_diff() -> Self {
        &Self::monomial(1) - &Self::monomial(-1)
    }

    /// Builds a polynomial from (exponent units, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in pairs {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, units: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(units).or_insert(0);
        *entry = cadd(*entry, c);
        if *entry == 0 {
            self.terms.remove(&units);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0) == 1
    }

    /// Coefficient of q^{units/2}.
    pub fn coeff(&self, units: i32) -> i64 {
        self.terms.get(&units).copied().unwrap_or(0)
    }

    /// Iterates over (exponent units, coefficient) pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by c.
    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&k, &v)| (k, cmul(v, c))).collect() }
    }

    /// Multiplies by q^{units/2}.
    pub fn shift(&self, units: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&k, &v)| (k + units, v)).collect() }
    }

    /// Small non-negative integer power.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at q^{1/2} = 1, i.e. the sum of all coefficients.
    ///
    /// This is the classical specialization: Hecke algebra quantities collapse
    /// to their symmetric group counterparts under it.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| cadd(acc, c))
    }

    /// True when the polynomial lies in N[q]: nonnegative coefficients
    /// supported on nonnegative integer powers of q.
    pub fn is_nonneg_in_q(&self) -> bool {
        self.terms.iter().all(|(&k, &c)| k >= 0 && k % 2 == 0 && c > 0)
    }

    /// JSON encoding: an array of [exponent units, coefficient] pairs sorted
    /// by exponent, e.g. q + q^2 encodes as [[2,1],[4,1]].
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&k, &c)| serde_json::json!([k, c]))
                .collect(),
        )
    }

    /// Inverse of [`LaurentPoly::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected JSON array".into()))?;
        let mut p = Self::zero();
        for item in arr {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("expected [exponent, coefficient] pair".into()))?;
            let k = pair[0]
                .as_i64()
                .ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
            let c = pair[1]
                .as_i64()
                .ok_or_else(|| Error::Parse("coefficient must be an integer".into()))?;
            p.add_term(
                i32::try_from(k).map_err(|_| Error::Parse("exponent out of range".into()))?,
                c,
            );
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, c.checked_neg().expect("integer overflow"));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in self.iter() {
            for (kb, cb) in rhs.iter() {
                out.add_term(ka + kb, cmul(ca, cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical textual form: terms in ascending exponent order, whole
    /// powers printed as `q^2`, half powers as `q^(3/2)`, joined by " + " or
    /// " - " according to sign.  The zero polynomial prints as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let power = match k {
                0 => String::new(),
                2 => "q".into(),
                k if k % 2 == 0 => format!("q^{}", k / 2),
                k => format!("q^({k}/2)"),
            };
            match (mag, power.as_str()) {
                (m, "") => write!(f, "{m}")?,
                (1, p) => write!(f, "{p}")?,
                (m, p) => write!(f, "{m}*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial in the single variable q_1 = q^{1/2} - q^{-1/2} with integer
/// coefficients, stored densely with no trailing zero.
///
/// Transition and walk polynomials naturally live here; their coefficients
/// count combinatorial objects and are nonnegative, but the type does not
/// insist on that.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Q1Poly {
    coeffs: Vec<i64>,
}

impl Q1Poly {
    pub fn zero() -> Self {
        Q1Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Q1Poly { coeffs: vec![1] }
    }

    /// The variable q_1.
    pub fn gen() -> Self {
        Q1Poly { coeffs: vec![0, 1] }
    }

    /// The monomial q_1^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Q1Poly { coeffs }
    }

    /// Builds from coefficients in ascending degree, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Q1Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Q1Poly) -> Q1Poly {
        let mut coeffs = vec![0; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = cadd(self.coeff(i), rhs.coeff(i));
        }
        Q1Poly::new(coeffs)
    }

    pub fn mul(&self, rhs: &Q1Poly) -> Q1Poly {
        if self.is_zero() || rhs.is_zero() {
            return Q1Poly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = cadd(coeffs[i + j], cmul(a, b));
            }
        }
        Q1Poly::new(coeffs)
    }

    /// Multiplies by the variable q_1.
    pub fn times_gen(&self) -> Q1Poly {
        if self.is_zero() {
            return Q1Poly::zero();
        }
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.coeffs);
        Q1Poly { coeffs }
    }

    /// Ring homomorphism into Z[q^{1/2}, q^{-1/2}] sending
    /// q_1 to q^{1/2} - q^{-1/2}.
    pub fn substitute(&self) -> LaurentPoly {
        let g = LaurentPoly::q_half_diff();
        let mut acc = LaurentPoly::zero();
        let mut power = LaurentPoly::one();
        for &c in &self.coeffs {
            acc = &acc + &power.scale(c);
            power = &power * &g;
        }
        acc
    }
}

impl fmt::Display for Q1Poly {
    /// Terms in ascending degree, e.g. `1 + 2*q1 + q1^3`; zero prints "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            match (first, c < 0) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, false) => write!(f, " + ")?,
                (false, true) => write!(f, " - ")?,
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "q1".into(),
                k => format!("q1^{k}"),
            };
            match (c.unsigned_abs(), power.as_str()) {
                (m, "") => write!(f, "{m}")?,
                (1, p) => write!(f, "{p}")?,
                (m, p) => write!(f, "{m}*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Q1Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn half_powers_multiply() {
        let h = LaurentPoly::q_half();
        assert_eq!(&h * &h, LaurentPoly::q());
    }

    #[test]
    fn shift_by_negative_half() {
        // (1 + q) * q^{-1/2} = q^{-1/2} + q^{1/2}
        let p = &LaurentPoly::one() + &LaurentPoly::q();
        let got = &p * &LaurentPoly::monomial(-1);
        assert_eq!(got, LaurentPoly::from_pairs([(-1, 1), (1, 1)]));
    }

    #[test]
    fn difference_of_squares() {
        // (q^{1/2} - q^{-1/2})(q^{1/2} + q^{-1/2}) = q - q^{-1}
        let a = LaurentPoly::q_half_diff();
        let b = &LaurentPoly::monomial(1) + &LaurentPoly::monomial(-1);
        assert_eq!(&a * &b, LaurentPoly::from_pairs([(2, 1), (-2, -1)]));
    }

    #[test]
    fn substitute_generator() {
        assert_eq!(Q1Poly::gen().substitute(), LaurentPoly::q_half_diff());
        assert_eq!(Q1Poly::one().substitute(), LaurentPoly::one());
        // q_1^2 = q - 2 + q^{-1}
        let sq = Q1Poly::monomial(2);
        assert_eq!(sq.substitute(), LaurentPoly::from_pairs([(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn specialize_at_one() {
        let p = LaurentPoly::from_pairs([(2, 1), (4, 1)]); // q + q^2
        assert_eq!(p.eval_at_one(), 2);
        assert_eq!(LaurentPoly::zero().eval_at_one(), 0);
        // q^{1/2} + q^{3/2}
        assert_eq!(LaurentPoly::from_pairs([(1, 1), (3, 1)]).eval_at_one(), 2);
    }

    #[test]
    fn canonical_display() {
        let p = LaurentPoly::from_pairs([(2, 1), (-1, -3), (0, 2)]);
        assert_eq!(p.to_string(), "-3*q^(-1/2) + 2 + q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_pairs([(2, 1), (4, 1)]).to_string(), "q + q^2");
        assert_eq!(LaurentPoly::from_pairs([(1, 1), (3, 1)]).to_string(), "q^(1/2) + q^(3/2)");
        assert_eq!(LaurentPoly::from_pairs([(0, 1), (2, -1)]).to_string(), "1 - q");
        assert_eq!(LaurentPoly::from_pairs([(-4, 2)]).to_string(), "2*q^-2");
        assert_eq!(Q1Poly::new(vec![1, 0, 2]).to_string(), "1 + 2*q1^2");
        assert_eq!(Q1Poly::new(vec![0, 1, 1]).to_string(), "q1 + q1^2");
    }

    #[test]
    fn nonneg_in_q_detection() {
        assert!(LaurentPoly::from_pairs([(0, 1), (2, 4)]).is_nonneg_in_q());
        assert!(!LaurentPoly::from_pairs([(1, 1)]).is_nonneg_in_q()); // half power
        assert!(!LaurentPoly::from_pairs([(-2, 1)]).is_nonneg_in_q()); // negative power
        assert!(!LaurentPoly::from_pairs([(2, -1)]).is_nonneg_in_q()); // negative coeff
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..=6, -9i64..=9), 0..6)
            .prop_map(LaurentPoly::from_pairs)
    }

    fn arb_q1() -> impl Strategy<Value = Q1Poly> {
        proptest::collection::vec(-9i64..=9, 0..5).prop_map(Q1Poly::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert_eq!(&a - &a, LaurentPoly::zero());
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(a in arb_q1(), b in arb_q1()) {
            prop_assert_eq!(a.mul(&b).substitute(), &a.substitute() * &b.substitute());
            prop_assert_eq!(a.add(&b).substitute(), &a.substitute() + &b.substitute());
        }

        #[test]
        fn specialization_is_a_ring_homomorphism(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
        }

        #[test]
        fn json_round_trip(a in arb_laurent()) {
            prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
