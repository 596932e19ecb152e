//! Polynomials in `x = (t + t⁻¹)/2` with coefficients in ℤ[u], and the
//! Chebyshev rewriting that produces them from symmetric Laurent polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::{LaurentPoly, UPoly};
use crate::error::{Error, Result};

/// `P(x) = Σ coeffs[k] · x^k`, each coefficient a polynomial in `u`.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<UPoly>,
}

impl XPoly {
    pub fn from_coeffs(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree in `x`; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> UPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Complex coefficients in `x` at a numeric `u`.
    pub fn at_u(&self, u: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval(u)).collect()
    }

    pub fn eval(&self, u: Complex64, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.eval(u))
    }

    /// `P_u(x0)` as a polynomial in `u`, for an integer `x0`.
    pub fn at_x_int(&self, x0: i64) -> UPoly {
        let x0 = UPoly::constant(x0);
        self.coeffs
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| &(&acc * &x0) + c)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

/// Integer coefficients of the Chebyshev polynomial of the first kind `T_k`,
/// built by `T_k = 2x·T_{k-1} − T_{k-2}`.
pub fn chebyshev_t(k: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::from(1)];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Rewrites a `t ↔ t⁻¹` symmetric Laurent polynomial as `P((t+t⁻¹)/2)`,
/// using `t^k + t^-k = 2·T_k(x)`.
pub fn to_x_basis(l: &LaurentPoly) -> Result<XPoly> {
    if !l.is_symmetric() {
        return Err(Error::NotSymmetric(l.to_string()));
    }
    let top = l.max_degree().unwrap_or(0).max(0) as usize;
    let mut coeffs = vec![UPoly::zero(); top + 1];
    coeffs[0] = l.coeff(0);
    for k in 1..=top {
        let c = l.coeff(k as i64);
        if c.is_zero() {
            continue;
        }
        for (j, tk) in chebyshev_t(k).iter().enumerate() {
            if tk.is_zero() {
                continue;
            }
            coeffs[j] = &coeffs[j] + &c.scale(&(tk * 2));
        }
    }
    Ok(XPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> UPoly {
        UPoly::from_i64s(v)
    }

    #[test]
    fn chebyshev_recurrence() {
        let as_i64 = |v: Vec<BigInt>| v.iter().map(|b| i64::try_from(b).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(chebyshev_t(0)), vec![1]);
        assert_eq!(as_i64(chebyshev_t(2)), vec![-1, 0, 2]);
        assert_eq!(as_i64(chebyshev_t(3)), vec![0, -3, 0, 4]);
        assert_eq!(as_i64(chebyshev_t(4)), vec![1, 0, -8, 0, 8]);
    }

    #[test]
    fn t_plus_inverse_is_two_x() {
        let l = LaurentPoly::from_terms([(1, UPoly::one()), (-1, UPoly::one())]);
        let p = to_x_basis(&l).unwrap();
        assert_eq!(p.coeffs(), &[UPoly::zero(), UPoly::constant(2)]);
    }

    #[test]
    fn line_delta() {
        let l = LaurentPoly::from_terms([(0, c(&[1, 0, 1])), (1, c(&[0, -1])), (-1, c(&[0, -1]))]);
        let p = to_x_basis(&l).unwrap();
        assert_eq!(p.coeffs(), &[c(&[1, 0, 1]), c(&[0, -2])]);
    }

    #[test]
    fn two_loop_vertex() {
        // 1 − (t⁻¹ + 2 + t)u + 3u²  ↦  1 − 2u + 3u² − 2ux
        let l = LaurentPoly::from_terms([(0, c(&[1, -2, 3])), (1, c(&[0, -1])), (-1, c(&[0, -1]))]);
        let p = to_x_basis(&l).unwrap();
        assert_eq!(p.coeffs(), &[c(&[1, -2, 3]), c(&[0, -2])]);
    }

    #[test]
    fn rejects_asymmetric() {
        let l = LaurentPoly::from_terms([(1, UPoly::one())]);
        assert!(matches!(to_x_basis(&l), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn evaluation_at_integer_x() {
        let p = XPoly::from_coeffs(vec![c(&[1, 0, 1]), c(&[0, -2])]);
        assert_eq!(p.at_x_int(1), c(&[1, -2, 1]));
    }
}
