//! Dense univariate polynomials in `u` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};



/// A polynomial in `u` over ℤ, stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The polynomial `u`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplicity of `u = 0` as a root.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out the largest power of `u`.
    pub fn strip_u(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs[self.low_order().min(self.coeffs.len())..].to_vec())
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p(-u)`.
    pub fn reflect(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval_int(&self, u: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + to_f64(c))
    }

    /// Coefficients as `f64`, low degree first.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) · a mod d`.
    pub fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let lc = d.lead();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let rl = r.lead();
            r = &r.scale(&lc) - &d.scale(&rl).shift(shift);
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in ℤ[u].
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let lc = d.lead();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (c, rem) = r.lead().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = rd - dd;
            r = &r - &d.scale(&c).shift(shift);
            q[shift] = c;
        }
        Some(UPoly::from_coeffs(q))
    }

    /// Greatest common divisor in ℤ[u], normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_part().scale(&c);
            }
            if r.is_constant() {
                return UPoly::constant(c);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    pub fn normalized_sign(&self) -> UPoly {
        if self.lead().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Square-free part: the product of the distinct irreducible factors, made primitive.
    pub fn square_free(&self) -> UPoly {
        if self.is_constant() {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Complex roots (with multiplicity) computed in double precision.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let c: Vec<Complex64> = self
            .coeffs
            .iter()
            .map(|c| Complex64::new(to_f64(c), 0.0))
            .collect();
        crate::numeric::roots::poly_roots(&c).unwrap_or_default()
    }
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl super::ExactRing for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
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
    fn div_exact(&self, other: &Self) -> Option<Self> {
        UPoly::div_exact(self, other)
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs(
            (0..n)
                .map(|k| self.coeff(k) + rhs.coeff(k))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs(
            (0..n)
                .map(|k| self.coeff(k) - rhs.coeff(k))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{mag}u^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -2, 3]);
        let b = p(&[0, 1]);
        assert_eq!(&a * &b, p(&[0, 1, -2, 3]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(a.to_string(), "1 - 2u + 3u^2");
        assert_eq!(p(&[0, -1]).to_string(), "-u");
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -4, 3]); // (1-u)(1-3u)
        assert_eq!(a.div_exact(&p(&[1, -1])), Some(p(&[1, -3])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[4])), None);
    }

    #[test]
    fn gcd_over_integers() {
        let f = &p(&[1, -1]) * &p(&[1, 2, 3]);
        let g = &p(&[1, -1]) * &p(&[5, 0, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
        let h = p(&[6, 12]);
        assert_eq!(h.gcd(&p(&[4, 8])), p(&[2, 4]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), UPoly::one());
    }

    #[test]
    fn square_free_part() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[1, 0, 3]);
        assert_eq!(f.square_free(), &p(&[-1, 1]) * &p(&[1, 0, 3]));
    }

    #[test]
    fn strip_u_factor() {
        assert_eq!(p(&[0, 0, 2, 1]).strip_u(), p(&[2, 1]));
        assert_eq!(p(&[0, 0, 2, 1]).low_order(), 2);
    }
}
