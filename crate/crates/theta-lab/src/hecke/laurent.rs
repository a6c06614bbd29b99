//! Laurent polynomials in `v` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[v, v^-1]`.
///
/// Stored densely from the lowest nonzero exponent; the zero polynomial has
/// no coefficients. Arithmetic panics on `i64` overflow rather than wrapping.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self { low: e, coeffs: vec![c] }.normalized()
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut map: BTreeMap<i32, i64> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert(0);
            *slot = slot.checked_add(c).expect("coefficient overflow");
        }
        Self::from_map(&map)
    }

    fn from_map(map: &BTreeMap<i32, i64>) -> Self {
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Self::zero();
        };
        let mut coeffs = vec![0; (hi - lo) as usize + 1];
        for (&e, &c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self { low: lo, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&x| x.checked_mul(c).expect("coefficient overflow")).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| acc.checked_add(c).expect("coefficient overflow"))
    }

    /// Substitute `v^2 = q`, returning coefficients of `q^0, q^1, ...` after
    /// multiplying by the smallest power of `q` that clears negative powers.
    /// The second component is that power. `None` if an odd power of `v` occurs.
    pub fn in_q(&self) -> Option<(Vec<i64>, i32)> {
        if self.terms().any(|(e, _)| e.rem_euclid(2) != 0) {
            return None;
        }
        let Some(lo) = self.min_exp() else {
            return Some((Vec::new(), 0));
        };
        let shift = if lo < 0 { -lo / 2 } else { 0 };
        let hi = self.max_exp().unwrap();
        let mut out = vec![0; ((hi / 2) + shift) as usize + 1];
        for (e, c) in self.terms() {
            out[(e / 2 + shift) as usize] = c;
        }
        Some((out, shift))
    }

    /// Exact value at the rational point `v = x`.
    pub fn eval(&self, x: Ratio<i64>) -> Ratio<i64> {
        let mut acc = Ratio::from_integer(0);
        for (e, c) in self.terms() {
            acc += Ratio::from_integer(c) * x.pow(e);
        }
        acc
    }

    /// Exact value at `v^2 = q` for an integer `q`; `None` on odd powers.
    pub fn eval_q(&self, q: i64) -> Option<Ratio<i64>> {
        let (poly, shift) = self.in_q()?;
        let mut acc = Ratio::from_integer(0);
        let qr = Ratio::from_integer(q);
        for (k, &c) in poly.iter().enumerate() {
            acc += Ratio::from_integer(c) * qr.pow(k as i32 - shift);
        }
        Some(acc)
    }

    fn to_map(&self) -> BTreeMap<i32, i64> {
        self.terms().collect()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let coeffs = (lo..=hi)
            .map(|e| self.coeff(e).checked_add(rhs.coeff(e)).expect("coefficient overflow"))
            .collect();
        LaurentPoly { low: lo, coeffs }.normalized()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let p = a.checked_mul(b).expect("coefficient overflow");
                coeffs[i + j] = coeffs[i + j].checked_add(p).expect("coefficient overflow");
            }
        }
        LaurentPoly { low: self.low + rhs.low, coeffs }.normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "{mag}v")?,
                (_, 1) => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<i32, i64>::deserialize(d)?;
        Ok(Self::from_map(&map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn zero_is_normalized() {
        let p = LaurentPoly::from_terms([(3, 2), (3, -2)]);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        assert_eq!(p.min_exp(), None);
    }

    #[test]
    fn q_specialization() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        assert_eq!(p.in_q(), Some((vec![1, 1], 0)));
        assert_eq!(p.eval_q(3), Some(Ratio::from_integer(4)));
        assert_eq!(LaurentPoly::v_pow(1).in_q(), None);
        let r = LaurentPoly::from_terms([(-2, 1), (0, 1)]);
        assert_eq!(r.in_q(), Some((vec![1, 1], 1)));
        assert_eq!(r.eval_q(2), Some(Ratio::new(3, 2)));
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(-2, 1), (0, -3), (1, 1)]);
        assert_eq!(p.to_string(), "v^-2 - 3 + v");
    }

    #[test]
    fn json_roundtrip() {
        let p = LaurentPoly::from_terms([(-2, 1), (4, 7)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-2":1,"4":7}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in poly(), b in poly()) {
            prop_assert_eq!((&a * &b).at_one(), a.at_one() * b.at_one());
            let x = Ratio::new(2, 3);
            prop_assert_eq!((&a * &b).eval(x), a.eval(x) * b.eval(x));
        }

        #[test]
        fn shift_matches_monomial_product(a in poly(), k in -5i32..5) {
            prop_assert_eq!(a.shift(k), &a * &LaurentPoly::v_pow(k));
        }
    }
}
