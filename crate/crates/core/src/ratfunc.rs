//! Rational functions in the parameter `t`: the fraction field of
//! [`crate::poly::ParamPoly`], used as the scalar field when solving linear
//! systems that depend polynomially on `t`.

use crate::coeff::{Coeff, FieldCoeff, Rat};
use crate::poly::ParamPoly;
use std::fmt;

/// Quotient `num/den` of polynomials in `t`, kept canonical: `den` is monic,
/// `gcd(num, den) = 1`, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    /// Build and normalize. Panics if `den` is the zero polynomial.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: ParamPoly::zero(),
                den: ParamPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        RatFunc {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        RatFunc {
            num: p,
            den: ParamPoly::one(),
        }
    }

    /// The parameter `t` as a rational function.
    pub fn t() -> Self {
        Self::from_poly(ParamPoly::t())
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&ParamPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Evaluate at `t = t0`; `None` if the denominator vanishes there.
    pub fn eval(&self, t0: &Rat) -> Option<Rat> {
        let d = self.den.eval(t0);
        if Coeff::is_zero(&d) {
            None
        } else {
            Some(&self.num.eval(t0) / &d)
        }
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::from_poly(ParamPoly::constant(r.clone()))
    }
    fn display_is_composite(&self) -> bool {
        !self.den.is_one() || self.num.display_is_composite()
    }
}

impl FieldCoeff for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_int};
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> ParamPoly {
        ParamPoly::from_coeffs(coeffs.iter().map(|&n| rat_int(n)).collect())
    }

    #[test]
    fn normalization_reduces_and_makes_den_monic() {
        // (2t^2 - 2) / (4t - 4) = (t + 1) / 2
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[-4, 4]));
        assert_eq!(r.num(), &ParamPoly::from_coeffs(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.den(), &ParamPoly::one());
        assert_eq!(r.to_string(), "1/2*t + 1/2");
    }

    #[test]
    fn eval_detects_poles() {
        let r = RatFunc::new(p(&[1]), p(&[-1, 1])); // 1/(t-1)
        assert_eq!(r.eval(&rat_int(1)), None);
        assert_eq!(r.eval(&rat_int(3)), Some(rat(1, 2)));
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        (
            proptest::collection::vec(-9i64..=9, 0..4),
            proptest::collection::vec(-9i64..=9, 1..4),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let den = p(&d);
                if den.is_zero() {
                    None
                } else {
                    Some(RatFunc::new(p(&n), den))
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !Coeff::is_zero(&a) {
                prop_assert_eq!(a.mul(&a.inv()), <RatFunc as Coeff>::one());
            }
        }

        #[test]
        fn canonical_den_is_monic_and_coprime(a in arb_rf(), b in arb_rf()) {
            let r = a.mul(&b);
            if !Coeff::is_zero(&r) {
                prop_assert_eq!(r.den().leading(), rat_int(1));
                let g = r.num().gcd(r.den());
                prop_assert_eq!(g, ParamPoly::one());
            }
        }
    }
}
