use num_complex::Complex64;

/// Determinant by LU with partial pivoting. Consumes a scratch copy.
pub fn complex_det(matrix: &[Vec<Complex64>]) -> Complex64 {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let piv = m[k][k];
        det *= piv;
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let mkj = m[k][j];
                m[i][j] -= f * mkj;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(complex_det(&[]), c(1.0, 0.0));
        let m = vec![vec![c(0.0, 0.0), c(2.0, 1.0)], vec![c(3.0, 0.0), c(1.0, -1.0)]];
        let d = complex_det(&m);
        assert!((d - c(-6.0, -3.0)).norm() < 1e-14);
        let m = vec![
            vec![c(2.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            vec![c(-1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)],
        ];
        assert!((complex_det(&m) - c(4.0, 0.0)).norm() < 1e-14);
    }
}
