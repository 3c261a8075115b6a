//! Sparse bivariate polynomials in `q` and `t` over an integer ring.
//!
//! Every Stirling quantity in this crate is a [`Poly`]. The coefficient type is
//! generic (see [`Ring`]); the crate root fixes it to [`num_bigint::BigInt`] via
//! the [`crate::BiPoly`] alias, and `i64` works for small tables.

mod analog;

pub use analog::{gauss_binomial, q_factorial, q_int, qt_int};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{FromPrimitive, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficient ring for [`Poly`].
///
/// Anything integer-like with exact arithmetic qualifies: `i64`, `i128`,
/// `BigInt`.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Eq
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Sub<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// Exponent pair `(deg_q, deg_t)`.
pub type Exponent = (u32, u32);

/// A polynomial in `q` and `t` stored as a map from exponent pairs to
/// non-zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Ring> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(C::from_i64(c).expect("coefficient ring cannot hold i64"))
    }

    /// `c * q^dq * t^dt`.
    pub fn monomial(c: C, dq: u32, dt: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dq, dt, c);
        p
    }

    pub fn q() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `q^d`.
    pub fn q_pow(d: u32) -> Self {
        Self::monomial(C::one(), d, 0)
    }

    /// `q^dq * t^dt`.
    pub fn qt_pow(dq: u32, dt: u32) -> Self {
        Self::monomial(C::one(), dq, dt)
    }

    /// Builds a polynomial from `(deg_q, deg_t, coefficient)` triples; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (dq, dt, c) in terms {
            p.add_term(dq, dt, c);
        }
        p
    }

    /// Univariate polynomial in `q` from a dense coefficient list, lowest degree
    /// first.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, 0, C::from_i64(c).unwrap())),
        )
    }

    pub fn add_term(&mut self, dq: u32, dt: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((dq, dt)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^dq t^dt` (zero when absent).
    pub fn coeff(&self, dq: u32, dt: u32) -> C {
        self.terms.get(&(dq, dt)).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in canonical order: lexicographic by `(deg_q, deg_t)` ascending.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e.1 == 0)
    }

    /// If the polynomial is a single monomial with coefficient one, its exponent.
    pub fn as_unit_monomial(&self) -> Option<Exponent> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        c.is_one().then_some(*e)
    }

    /// Dense `q`-coefficients of a `t`-free polynomial, lowest degree first.
    pub fn q_coeffs(&self) -> Option<Vec<C>> {
        if !self.is_t_free() {
            return None;
        }
        let len = self.degree_q().map_or(0, |d| d as usize + 1);
        let mut v = vec![C::zero(); len];
        for ((dq, _), c) in &self.terms {
            v[*dq as usize] = c.clone();
        }
        Some(v)
    }

    /// `p * q^dq * t^dt`.
    pub fn shift(&self, dq: u32, dt: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + dq, b + dt), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|((a, b), c)| (*a, *b, c.clone() * s.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every `t` by `1 + q`.
    pub fn subst_t_with_one_plus_q(&self) -> Self {
        let one_plus_q = Self::one() + Self::q();
        let mut powers: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for ((dq, dt), c) in &self.terms {
            while powers.len() <= *dt as usize {
                let next = powers.last().unwrap() * &one_plus_q;
                powers.push(next);
            }
            out += powers[*dt as usize].shift(*dq, 0).scale(c);
        }
        out
    }

    /// Replaces `q` by `q^2`.
    pub fn subst_q_squared(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((2 * a, *b), c.clone()))
                .collect(),
        }
    }

    /// Substitutes the integer `q0` for `q`, leaving a polynomial in `t` only.
    pub fn eval_q(&self, q0: i64) -> Self {
        let base = C::from_i64(q0).expect("coefficient ring cannot hold i64");
        let mut out = Self::zero();
        for ((dq, dt), c) in &self.terms {
            out.add_term(0, *dt, c.clone() * ring_pow(&base, *dq));
        }
        out
    }

    /// Substitutes the integer `t0` for `t`.
    pub fn eval_t(&self, t0: i64) -> Self {
        let base = C::from_i64(t0).expect("coefficient ring cannot hold i64");
        let mut out = Self::zero();
        for ((dq, dt), c) in &self.terms {
            out.add_term(*dq, 0, c.clone() * ring_pow(&base, *dt));
        }
        out
    }

    /// Full evaluation at integers.
    pub fn eval(&self, q0: i64, t0: i64) -> C {
        let p = self.eval_q(q0).eval_t(t0);
        p.coeff(0, 0)
    }

    /// Sum of all coefficients (evaluation at `q = t = 1`).
    pub fn coeff_sum(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }
}

fn ring_pow<C: Ring>(base: &C, e: u32) -> C {
    let mut acc = C::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

impl<'a, C: Ring> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        self += &rhs;
        self
    }
}

impl<C: Ring> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for ((dq, dt), c) in &rhs.terms {
            self.add_term(*dq, *dt, c.clone());
        }
    }
}

impl<C: Ring> AddAssign for Poly<C> {
    fn add_assign(&mut self, rhs: Poly<C>) {
        *self += &rhs;
    }
}

impl<C: Ring> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for ((dq, dt), c) in &rhs.terms {
            self.add_term(*dq, *dt, -c.clone());
        }
    }
}

impl<'a, C: Ring> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(mut self, rhs: Poly<C>) -> Poly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Ring> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -self.clone()
    }
}

impl<'a, C: Ring> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Ring> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Poly<C>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<C: Ring> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Poly<C>>>(iter: I) -> Self {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

/// Human-readable form with terms in canonical order, e.g. `3 + 3q + q^2`
/// or `q^2 + q^2*t + 2t + t^2`.
impl<C: Ring> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((dq, dt), c)) in self.terms.iter().enumerate() {
            let mut text = c.to_string();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut vars = Vec::new();
            match dq {
                0 => {}
                1 => vars.push("q".to_string()),
                d => vars.push(format!("q^{d}")),
            }
            match dt {
                0 => {}
                1 => vars.push("t".to_string()),
                d => vars.push(format!("t^{d}")),
            }
            if vars.is_empty() {
                write!(f, "{text}")?;
            } else {
                if text != "1" {
                    write!(f, "{text}")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    q: u32,
    t: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

/// `{"terms":[{"q":Dq,"t":Dt,"c":"C"}, ...]}` with canonical term order and
/// decimal-string coefficients.
impl<C: Ring> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JsonPoly {
            terms: self
                .terms
                .iter()
                .map(|((q, t), c)| JsonTerm {
                    q: *q,
                    t: *t,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Ring> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(deserializer)?;
        let mut p = Poly::zero();
        for term in raw.terms {
            let c = term
                .c
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            p.add_term(term.q, term.t, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    #[test]
    fn add_examples() {
        assert_eq!(&P::q() + &P::t(), P::from_terms([(1, 0, 1.into()), (0, 1, 1.into())]));
        let p = P::from_q_coeffs(&[4, 0, -2]);
        assert_eq!(&p + &P::zero(), p);
        assert_eq!(P::from_q_coeffs(&[1, 1]) + P::from_int(-1), P::q());
    }

    #[test]
    fn mul_examples() {
        let one_q = P::from_q_coeffs(&[1, 1]);
        assert_eq!(&one_q * &one_q, P::from_q_coeffs(&[1, 2, 1]));
        assert_eq!(&one_q * &P::one(), one_q);
        assert_eq!(&P::q_pow(2) * &one_q, P::from_q_coeffs(&[0, 0, 1, 1]));
    }

    #[test]
    fn subst_t_examples() {
        assert_eq!(P::t().subst_t_with_one_plus_q(), P::from_q_coeffs(&[1, 1]));
        assert_eq!(
            P::t().pow(2).subst_t_with_one_plus_q(),
            P::from_q_coeffs(&[1, 2, 1])
        );
        assert_eq!(
            P::qt_pow(2, 1).subst_t_with_one_plus_q(),
            P::from_q_coeffs(&[0, 0, 1, 1])
        );
    }

    #[test]
    fn eval_q_examples() {
        assert_eq!(P::from_q_coeffs(&[3, 3, 1]).eval_q(-1), P::one());
        assert_eq!(P::from_q_coeffs(&[3, 4, 3, 1]).eval_q(-1), P::one());
        let p = P::from_terms([(3, 0, 2.into()), (1, 2, 5.into()), (0, 0, (-1).into())]);
        assert_eq!(p.eval(1, 1), p.coeff_sum());
        assert_eq!(p.eval_q(1), P::from_terms([(0, 0, 1.into()), (0, 2, 5.into())]));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(P::from_q_coeffs(&[3, 3, 1]).to_string(), "3 + 3q + q^2");
        let p = P::from_terms([
            (2, 0, 1.into()),
            (2, 1, 1.into()),
            (0, 2, 1.into()),
            (0, 1, 2.into()),
        ]);
        assert_eq!(p.to_string(), "2t + t^2 + q^2 + q^2*t");
        assert_eq!((-P::t() - P::t().pow(2)).to_string(), "-t - t^2");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let p = P::from_terms([(1, 0, (-7).into()), (0, 1, 2.into())]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"q":0,"t":1,"c":"2"},{"q":1,"t":0,"c":"-7"}]}"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<P>(r#"{"terms":[{"q":0,"t":0,"c":"x"}]}"#).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = P::from_q_coeffs(&[1, 2, 3]);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0u32..4, 0u32..3, -5i64..6), 0..6)
            .prop_map(|v| P::from_terms(v.into_iter().map(|(a, b, c)| (a, b, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(
                (&a * &b).subst_t_with_one_plus_q(),
                &a.subst_t_with_one_plus_q() * &b.subst_t_with_one_plus_q()
            );
            prop_assert_eq!((&a + &b).eval_q(-1), &a.eval_q(-1) + &b.eval_q(-1));
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<P>(&s).unwrap(), a);
        }
    }

    #[test]
    fn works_over_machine_integers() {
        let p: Poly<i64> = Poly::from_q_coeffs(&[1, 1]);
        assert_eq!(p.pow(3), Poly::from_q_coeffs(&[1, 3, 3, 1]));
    }
}
