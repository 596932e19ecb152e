//! Exact arithmetic: ℤ[u], ℤ[u][t, t⁻¹], the `x`-basis, ℚ(u) and ℚ(u)[T].

mod det;
mod laurent;
mod ratfn;
mod tpoly;
mod upoly;
mod xpoly;

pub use det::{bareiss_det, cofactor_det, laurent_det, COFACTOR_MAX};
pub use laurent::LaurentPoly;
pub use ratfn::RationalFn;
pub use tpoly::{deflate_repeated_factors, discriminant_t, Deflation, TPoly};
pub use upoly::UPoly;
pub use xpoly::{chebyshev_t, to_x_basis, XPoly};

/// A commutative integral domain with exact division, enough for Bareiss.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `q · other = self`, if such `q` exists.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl ExactRing for num_bigint::BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
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
        use num_integer::Integer;
        if num_traits::Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        num_traits::Zero::is_zero(&r).then_some(q)
    }
}
