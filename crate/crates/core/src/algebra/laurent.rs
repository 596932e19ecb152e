//! Laurent polynomials in `t` whose coefficients are polynomials in `u`.
//!
//! These are the entries of the group-ring matrices `δ` and `Δ_u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{ExactRing, UPoly};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, UPoly>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(UPoly::one())
    }

    pub fn constant(c: UPoly) -> Self {
        Self::term(0, c)
    }

    /// `c · t^k`
    pub fn term(k: i64, c: UPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// `t^k`
    pub fn t_pow(k: i64) -> Self {
        Self::term(k, UPoly::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, UPoly)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: &UPoly) {
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> UPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &UPoly)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn mirror(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&k, c)| self.terms.get(&-k) == Some(c))
    }

    /// Multiplies every coefficient by the polynomial `c`.
    pub fn scale(&self, c: &UPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&k, a)| (k, a * c)))
    }

    pub fn eval(&self, u: Complex64, t: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.eval(u) * t.powi(k as i32))
            .sum()
    }

    /// Specializes `u` to an integer, leaving a Laurent polynomial with constant coefficients.
    pub fn at_u_int(&self, u: i64) -> LaurentPoly {
        let u = u.into();
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&k, c)| (k, UPoly::constant(c.eval_int(&u)))),
        )
    }

    /// Exact division in ℤ[u][t, t⁻¹]; `None` when the quotient does not exist.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dmin, dmax) = (d.min_degree()?, d.max_degree()?);
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let lowest_quotient = self.min_degree()? - dmin;
        let dlead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rmax) = rem.max_degree() {
            let k = rmax - dmax;
            if k < lowest_quotient {
                return None;
            }
            let c = rem.coeff(rmax).div_exact(&dlead)?;
            for (j, dc) in d.terms() {
                rem.add_term(j + k, &-(dc * &c));
            }
            quot.add_term(k, &c);
        }
        Some(quot)
    }
}

impl ExactRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
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
        LaurentPoly::div_exact(self, other)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
