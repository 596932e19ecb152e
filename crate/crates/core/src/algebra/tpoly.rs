//! Polynomials in `T` over the field ℚ(u): discriminants and square-free
//! decomposition.

use std::fmt;

use num_complex::Complex64;

use super::{bareiss_det, RationalFn, UPoly};
use crate::error::{Error, Result};

/// `Σ coeffs[k] · T^k` with rational-function coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<RationalFn>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<RationalFn>) -> Self {
        while coeffs.last().is_some_and(RationalFn::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn one() -> Self {
        TPoly::new(vec![RationalFn::one()])
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RationalFn {
        self.coeffs.get(k).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `T`; zero for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> RationalFn {
        self.coeffs.last().cloned().unwrap_or_else(RationalFn::zero)
    }

    /// Coefficient list equal to its own reversal.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn monic(&self) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        TPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.div(&l).expect("nonzero leading coefficient"))
                .collect(),
        )
    }

    pub fn derivative(&self) -> TPoly {
        TPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_int(k as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::new(Vec::new());
        }
        let mut out = vec![RationalFn::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::new(out)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    /// Quotient and remainder over ℚ(u).
    pub fn div_rem(&self, d: &TPoly) -> (TPoly, TPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial in T");
        let dd = d.degree();
        let dl = d.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RationalFn::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].div(&dl).expect("nonzero leading coefficient");
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k - dd + j] = &rem[k - dd + j] - &(dc * &c);
                }
                quot[k - dd] = c;
            }
            rem.pop();
            while rem.last().is_some_and(RationalFn::is_zero) {
                rem.pop();
            }
        }
        (TPoly::new(quot), TPoly::new(rem))
    }

    /// Monic gcd over ℚ(u), via a primitive pseudo-remainder sequence in ℤ[u][T].
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (primitive(self.cleared().0), primitive(other.cleared().0));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.len() == 1 {
                return TPoly::one();
            }
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                let g = TPoly::new(b.into_iter().map(RationalFn::from_poly).collect());
                return g.monic();
            }
            a = b;
            b = primitive(r);
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::one(), |acc, c| {
            let g = acc.gcd(c.den());
            (&acc * c.den()).div_exact(&g).expect("gcd divides product")
        })
    }

    /// `(F, c)` with `F = c · self` having coefficients in ℤ[u].
    pub fn cleared(&self) -> (Vec<UPoly>, UPoly) {
        let c = self.denominator_lcm();
        let f = self
            .coeffs
            .iter()
            .map(|r| (r.num() * &c).div_exact(r.den()).expect("lcm is a multiple"))
            .collect();
        (f, c)
    }

    /// Complex coefficients at a numeric `u` (undefined at poles of the coefficients).
    pub fn at_u(&self, u: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval(u)).collect()
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("[{c}]"),
                1 => format!("[{c}]T"),
                _ => format!("[{c}]T^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

/// Discriminant in `T`, `(−1)^{N(N−1)/2} Res(P, P′) / lc(P)`, as a reduced
/// rational function of `u`. The resultant is a Sylvester determinant over
/// ℤ[u] after clearing denominators.
pub fn discriminant_t(p: &TPoly) -> Result<RationalFn> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::ConstantInT);
    }
    let (f, c) = p.cleared();
    let df: Vec<UPoly> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a.scale(&(k as i64).into()))
        .collect();
    let size = 2 * n - 1;
    let mut syl = vec![vec![UPoly::zero(); size]; size];
    // n − 1 shifted copies of F, then n shifted copies of F′, highest degree first
    for i in 0..n - 1 {
        for (j, a) in f.iter().rev().enumerate() {
            syl[i][i + j] = a.clone();
        }
    }
    for i in 0..n {
        for (j, a) in df.iter().rev().enumerate() {
            syl[n - 1 + i][i + j] = a.clone();
        }
    }
    let mut res = bareiss_det(&syl);
    if (n * (n - 1) / 2) % 2 == 1 {
        res = -res;
    }
    let den = &f[n] * &c.pow(2 * n as u32 - 2);
    RationalFn::new(res, den)
}

/// Square-free decomposition of a polynomial in `T`.
#[derive(Clone, Debug)]
pub struct Deflation {
    /// Monic product of the distinct irreducible factors.
    pub square_free: TPoly,
    /// Factors that occur with multiplicity ≥ 2, grouped by multiplicity.
    pub repeated: Vec<(TPoly, usize)>,
}

/// Yun's algorithm over ℚ(u).
pub fn deflate_repeated_factors(p: &TPoly) -> Deflation {
    let f = p.monic();
    if f.degree() == 0 {
        return Deflation {
            square_free: f,
            repeated: Vec::new(),
        };
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    if a0.degree() == 0 {
        return Deflation {
            square_free: f,
            repeated: Vec::new(),
        };
    }
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut square_free = TPoly::one();
    let mut repeated = Vec::new();
    let mut mult = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            square_free = square_free.mul(&a);
            if mult > 1 {
                repeated.push((a.clone(), mult));
            }
        }
        let next_b = b.div_rem(&a).0;
        let next_c = d.div_rem(&a).0;
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        mult += 1;
    }
    Deflation {
        square_free: square_free.monic(),
        repeated,
    }
}

/// Divides out the ℤ[u] content of the coefficients.
fn primitive(mut c: Vec<UPoly>) -> Vec<UPoly> {
    while c.last().is_some_and(UPoly::is_zero) {
        c.pop();
    }
    let g = c.iter().fold(UPoly::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == UPoly::one() {
        return c;
    }
    c.iter().map(|x| x.div_exact(&g).expect("content divides")).collect()
}

/// `lc(b)^k · a mod b` in ℤ[u][T]; the empty vector is zero.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] = &r[k - db + j] - &(bc * &lr);
        }
        r.pop();
        while r.last().is_some_and(UPoly::is_zero) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFn {
        RationalFn::new(UPoly::from_i64s(n), UPoly::from_i64s(d)).unwrap()
    }

    fn k(c: i64) -> RationalFn {
        RationalFn::constant(c)
    }

    #[test]
    fn quadratic_discriminant() {
        // T² − 2rT + 1 with r = (1 − 2u + 3u²)/(2u): 4r² − 4
        let r = rf(&[1, -2, 3], &[0, 2]);
        let p = TPoly::new(vec![k(1), r.scale_int(-2), k(1)]);
        let disc = discriminant_t(&p).unwrap();
        let expected = &(&r * &r).scale_int(4) - &k(4);
        assert_eq!(disc, expected);
        // zeros of the numerator: (3u² − 4u + 1)(3u² + 1)
        assert_eq!(
            disc.num().primitive_part(),
            (&UPoly::from_i64s(&[1, -4, 3]) * &UPoly::from_i64s(&[1, 0, 3])).primitive_part()
        );
    }

    #[test]
    fn constant_rejected() {
        assert!(matches!(discriminant_t(&TPoly::one()), Err(Error::ConstantInT)));
    }

    #[test]
    fn cubic_discriminant_matches_formula() {
        // T³ + aT + b has discriminant −4a³ − 27b²
        let a = rf(&[1, 1], &[1]);
        let b = rf(&[0, 2], &[1, 0, 1]);
        let p = TPoly::new(vec![b.clone(), a.clone(), k(0), k(1)]);
        let expected = &a.pow(3).scale_int(-4) - &b.pow(2).scale_int(27);
        assert_eq!(discriminant_t(&p).unwrap(), expected);
    }

    #[test]
    fn square_free_input_untouched() {
        let p = TPoly::new(vec![k(1), rf(&[-1, 0, -1], &[0, 1]), k(1)]);
        let d = deflate_repeated_factors(&p);
        assert_eq!(d.square_free, p);
        assert!(d.repeated.is_empty());
    }

    #[test]
    fn double_linear_factor() {
        // (T − u)²
        let p = TPoly::new(vec![rf(&[0, 0, 1], &[1]), rf(&[0, -2], &[1]), k(1)]);
        let d = deflate_repeated_factors(&p);
        let lin = TPoly::new(vec![rf(&[0, -1], &[1]), k(1)]);
        assert_eq!(d.square_free, lin);
        assert_eq!(d.repeated, vec![(lin, 2)]);
        assert!(discriminant_t(&p).unwrap().is_zero());
    }

    #[test]
    fn mixed_multiplicities() {
        let a = TPoly::new(vec![rf(&[1], &[0, 1]), k(1)]); // T + 1/u
        let b = TPoly::new(vec![k(1), rf(&[0, 3], &[1]), k(1)]); // T² + 3uT + 1
        let c = TPoly::new(vec![k(-2), k(1)]); // T − 2
        let p = a.mul(&b).mul(&b).mul(&c).mul(&c).mul(&c);
        let d = deflate_repeated_factors(&p);
        assert_eq!(d.square_free, a.mul(&b).mul(&c));
        assert_eq!(d.repeated, vec![(b, 2), (c, 3)]);
    }

    #[test]
    fn palindromic_check() {
        let p = TPoly::new(vec![k(1), rf(&[1], &[0, 1]), k(1)]);
        assert!(p.is_palindromic());
        let q = TPoly::new(vec![k(2), rf(&[1], &[0, 1]), k(1)]);
        assert!(!q.is_palindromic());
    }
}
