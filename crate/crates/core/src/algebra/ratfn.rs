//! Rational functions of `u`, kept reduced after every operation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Signed;

use super::UPoly;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and a positive leading coefficient on `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: UPoly,
    den: UPoly,
}

impl RationalFn {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RationalFn {
                num,
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        );
        if den.lead().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFn { num, den }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RationalFn {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFn) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        // already coprime, powers stay coprime
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        Self::reduced(self.num.scale(&c.into()), self.den.clone())
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.num.eval(u) / self.den.eval(u)
    }

    /// Derivative with respect to `u`.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(n, self.den.pow(2))
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: &[i64]) -> UPoly {
        UPoly::from_i64s(v)
    }

    #[test]
    fn reduces_on_construction() {
        // (u² − 1)/(2u − 2) = (u + 1)/2
        let r = RationalFn::new(c(&[-1, 0, 1]), c(&[-2, 2])).unwrap();
        assert_eq!(r.num(), &c(&[1, 1]));
        assert_eq!(r.den(), &c(&[2]));
        let neg = RationalFn::new(c(&[1]), c(&[0, -1])).unwrap();
        assert_eq!(neg.num(), &c(&[-1]));
        assert_eq!(neg.den(), &c(&[0, 1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFn::new(c(&[1]), UPoly::zero()).is_err());
        assert!(RationalFn::one().div(&RationalFn::zero()).is_err());
    }

    #[test]
    fn sums_cancel() {
        let a = RationalFn::new(c(&[1, -2, 3]), c(&[0, 2])).unwrap();
        assert!((&a - &a).is_zero());
        let two_a = &a + &a;
        assert_eq!(two_a, RationalFn::new(c(&[1, -2, 3]), c(&[0, 1])).unwrap());
    }

    fn small_poly() -> impl Strategy<Value = UPoly> {
        prop::collection::vec(-20i64..=20, 1..5).prop_map(|v| UPoly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn product_with_reciprocal_is_one(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let x = RationalFn::new(a.clone(), b.clone()).unwrap();
            let y = RationalFn::new(b, a).unwrap();
            prop_assert!((&x * &y).is_one());
        }
    }
}
