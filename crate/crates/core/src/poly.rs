//! Dense univariate polynomials over Q in one parameter `t`.
//!
//! Used for polynomial families of invariants (coefficients in Q[t]) and as
//! the numerator/denominator type of [`crate::ratfunc::RatFunc`].

use crate::coeff::{Coeff, Rat};
use num::{BigInt, Integer, Signed};
use std::fmt;

/// Polynomial in `t` with exact rational coefficients, stored dense in
/// ascending degree. Canonical form: no trailing zero coefficient, and the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ParamPoly {
    coeffs: Vec<Rat>,
}

impl ParamPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ParamPoly { coeffs }
    }

    pub fn zero() -> Self {
        ParamPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(<Rat as Coeff>::one())
    }

    /// The parameter itself.
    pub fn t() -> Self {
        Self::monomial(<Rat as Coeff>::one(), 1)
    }

    /// `c * t^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![<Rat as Coeff>::zero(); deg + 1];
        coeffs[deg] = c;
        ParamPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(<Rat as Coeff>::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(<Rat as Coeff>::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![<Rat as Coeff>::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, t0: &Rat) -> Rat {
        let mut acc = <Rat as Coeff>::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t0) + c;
        }
        acc
    }

    /// Exact division with remainder over Q. Panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().recip();
        let mut rem = self.clone();
        let mut quo = vec![<Rat as Coeff>::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = &rem.leading() * &lead_inv;
            let shift = rd - dd;
            quo[shift] = factor.clone();
            let sub = div.mul(&Self::monomial(factor, shift));
            rem = rem.sub(&sub);
        }
        (Self::from_coeffs(quo), rem)
    }

    /// Monic greatest common divisor (gcd(0,0) = 0).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial has content 1 by convention.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return <Rat as Coeff>::one();
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }
}

impl Coeff for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ParamPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ParamPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ParamPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        ParamPoly::neg(self)
    }
    fn from_rat(r: &Rat) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn display_is_composite(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
            || self.degree().map_or(false, |d| d > 0)
            || self.leading().is_negative()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag_one = mag.is_one();
            match (deg, mag_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{deg}")?,
                (_, false) => write!(f, "{mag}*t^{deg}")?,
            }
        }
        Ok(())
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
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[2, 0, -3, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        // (t-1)(t+2) and (t-1)(t-3) share exactly (t-1).
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[1, 0, -2]).to_string(), "-2*t^2 + 1");
        assert_eq!(p(&[0, 1]).to_string(), "t");
        assert_eq!(
            ParamPoly::from_coeffs(vec![rat(1, 2), rat(-1, 3)]).to_string(),
            "-1/3*t + 1/2"
        );
    }

    #[test]
    fn content_strips_to_primitive_integers() {
        let a = ParamPoly::from_coeffs(vec![rat(2, 3), rat(4, 3)]);
        assert_eq!(a.content(), rat(2, 3));
    }

    fn arb_poly() -> impl Strategy<Value = ParamPoly> {
        proptest::collection::vec(-20i64..=20, 0..5).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.div_rem(&g).1.is_zero());
                prop_assert!(b.div_rem(&g).1.is_zero());
            }
        }

        #[test]
        fn eval_is_ring_hom(a in arb_poly(), b in arb_poly(), t0 in -10i64..=10) {
            let t0 = rat_int(t0);
            prop_assert_eq!(a.mul(&b).eval(&t0), &a.eval(&t0) * &b.eval(&t0));
            prop_assert_eq!(a.add(&b).eval(&t0), &a.eval(&t0) + &b.eval(&t0));
        }
    }
}
