//! Exact determinants over integral domains.

use super::{ExactRing, LaurentPoly};

/// Largest size handled by cofactor expansion in [`laurent_det`].
pub const COFACTOR_MAX: usize = 4;

/// Fraction-free Gaussian elimination. Every division is exact in an
/// integral domain; a failed division means the ring impl is broken.
pub fn bareiss_det<R: ExactRing>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::one();
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_det<R: ExactRing>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    match n {
        0 => R::one(),
        1 => matrix[0][0].clone(),
        2 => matrix[0][0]
            .mul(&matrix[1][1])
            .sub(&matrix[0][1].mul(&matrix[1][0])),
        _ => {
            let mut acc = R::zero();
            for (j, a) in matrix[0].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = a.mul(&cofactor_det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Determinant of a square matrix over ℤ[u][t, t⁻¹].
pub fn laurent_det(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    debug_assert!(matrix.iter().all(|r| r.len() == matrix.len()));
    if matrix.len() <= COFACTOR_MAX {
        cofactor_det(matrix)
    } else {
        bareiss_det(matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UPoly;
    use num_bigint::BigInt;

    fn c(v: &[i64]) -> UPoly {
        UPoly::from_i64s(v)
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_determinants_agree() {
        let m = ints(&[&[2, -1, 0, 3, 1], &[0, 4, 1, -2, 0], &[1, 0, 0, 5, 2], &[3, 3, -1, 0, 1], &[0, 2, 2, 1, -3]]);
        assert_eq!(bareiss_det(&m), cofactor_det(&m));
        let singular = ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&singular), BigInt::from(0));
        let needs_pivot = ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(bareiss_det(&needs_pivot), BigInt::from(-1));
    }

    #[test]
    fn identity_and_empty() {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        let id = vec![vec![one.clone(), zero.clone()], vec![zero, one.clone()]];
        assert_eq!(laurent_det(&id), one);
        assert_eq!(laurent_det(&[]), LaurentPoly::one());
    }

    #[test]
    fn line_one_by_one() {
        let e = LaurentPoly::from_terms([(0, c(&[1, 0, 1])), (1, c(&[0, -1])), (-1, c(&[0, -1]))]);
        assert_eq!(laurent_det(&[vec![e.clone()]]), e);
    }

    #[test]
    fn sawtooth_by_hand() {
        // diagonal d = 1 − (t+t⁻¹)u + 3u², off-diagonal −u(1+t⁻¹), −u(1+t)
        let d = LaurentPoly::from_terms([(0, c(&[1, 0, 3])), (1, c(&[0, -1])), (-1, c(&[0, -1]))]);
        let a = LaurentPoly::from_terms([(0, c(&[0, -1])), (-1, c(&[0, -1]))]);
        let b = LaurentPoly::from_terms([(0, c(&[0, -1])), (1, c(&[0, -1]))]);
        let m = vec![vec![d.clone(), a], vec![b, d.clone()]];
        // (1−(t+t⁻¹)u+3u²)² − u²(1+t)(1+t⁻¹)
        let one_t = LaurentPoly::from_terms([(0, c(&[1])), (1, c(&[1]))]);
        let expected = &(&d * &d) - (&(&one_t * &one_t.mirror()).scale(&c(&[0, 0, 1])));
        assert_eq!(laurent_det(&m), expected);
        assert_eq!(bareiss_det(&m), expected);
        assert!(expected.is_symmetric());
    }
}
