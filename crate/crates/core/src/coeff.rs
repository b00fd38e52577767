//! Scalar coefficients: exact rationals and the ring/field traits that let
//! the enveloping-algebra and linear-algebra code run over Q, Q[t], or Q(t).

use num::{BigInt, One, Zero};
use std::fmt;

/// Arbitrary-precision rational number. `num` keeps these normalized
/// (reduced, positive denominator), which is exactly the invariant we need.
pub type Rat = num::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Commutative ring of coefficients. Implemented by [`Rat`],
/// [`crate::poly::ParamPoly`], and [`crate::ratfunc::RatFunc`].
///
/// Methods take references because the implementors are heap-backed; generic
/// code calls these rather than the operator traits so a single bound covers
/// all three scalar types.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embed a rational scalar. Every coefficient ring here contains Q.
    fn from_rat(r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_int(n: i64) -> Self {
        Self::from_rat(&rat_int(n))
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r))
    }
    /// True if the printed form needs parentheses when used as a factor.
    fn display_is_composite(&self) -> bool {
        false
    }
}

/// Coefficients forming a field; required wherever a linear system is solved.
pub trait FieldCoeff: Coeff {
    /// Multiplicative inverse. Panics on zero (callers check first).
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl FieldCoeff for Rat {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Integer;
    use proptest::prelude::*;

    pub fn arb_rat() -> impl Strategy<Value = Rat> {
        (-200i64..=200, 1i64..=40).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn normalized_after_ops(a in arb_rat(), b in arb_rat()) {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(r.denom() > &BigInt::from(0));
                prop_assert_eq!(r.numer().gcd(r.denom()), BigInt::from(1));
            }
        }

        #[test]
        fn inverse_cancels(a in arb_rat()) {
            if !Coeff::is_zero(&a) {
                prop_assert_eq!(Coeff::mul(&a, &FieldCoeff::inv(&a)), <Rat as Coeff>::one());
            }
        }
    }

    #[test]
    fn display_matches_p_over_q() {
        assert_eq!(rat(3, 6).to_string(), "1/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(rat_int(0).to_string(), "0");
    }
}
