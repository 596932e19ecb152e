//! Simultaneous polynomial root finding (Aberth–Ehrlich) in double precision.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 800;

/// Value, derivative and a running rounding-error bound of a polynomial
/// (low degree first) at `z`.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + p.norm();
    }
    (p, dp, 8.0 * f64::EPSILON * bound)
}

/// Roots of `Σ coeffs[k] z^k`. Trailing (leading-degree) coefficients that are
/// exactly zero are dropped, as are exact zero roots.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    poly_roots_from(coeffs, None)
}

/// As [`poly_roots`], starting the iteration at `guesses` when they fit the degree.
pub fn poly_roots_from(coeffs: &[Complex64], guesses: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1] == Complex64::new(0.0, 0.0) {
        hi -= 1;
    }
    let coeffs = &coeffs[..hi];
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::RootsDidNotConverge("non-finite coefficient".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros.min(coeffs.len())..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros.min(coeffs.len().saturating_sub(1))];
    if reduced.len() <= 1 {
        return Ok(roots);
    }
    let n = reduced.len() - 1;
    let mut z: Vec<Complex64> = match guesses {
        Some(g) if g.len() == n + roots.len() && zeros == 0 => g.to_vec(),
        _ => initial_guesses(reduced),
    };
    aberth(reduced, &mut z)?;
    for r in z.iter_mut() {
        *r = newton_polish(reduced, *r);
    }
    roots.extend(z);
    Ok(roots)
}

/// One Newton step, kept only if it lowers the residual.
pub fn newton_polish(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp, _) = horner(coeffs, z);
    if dp.norm() == 0.0 {
        return z;
    }
    let cand = z - p / dp;
    let (pc, _, _) = horner(coeffs, cand);
    if pc.is_finite() && pc.norm() < p.norm() {
        cand
    } else {
        z
    }
}

fn aberth(coeffs: &[Complex64], z: &mut [Complex64]) -> Result<()> {
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = horner(coeffs, z[i]);
            if p.norm() <= bound {
                done[i] = true;
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            } else {
                p / dp
            };
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                return Err(Error::RootsDidNotConverge("non-finite Aberth correction".into()));
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(());
        }
    }
    // accept when every residual is at rounding level even if corrections still jitter
    let ok = z
        .iter()
        .all(|&zi| {
            let (p, _, bound) = horner(coeffs, zi);
            p.norm() <= 1e3 * bound.max(f64::MIN_POSITIVE)
        });
    if ok {
        Ok(())
    } else {
        Err(Error::RootsDidNotConverge(format!(
            "Aberth iteration exceeded {MAX_ITERATIONS} sweeps (degree {n})"
        )))
    }
}

/// Starting points on circles read off the upper convex hull of
/// `(k, ln|a_k|)`, so roots of very different magnitudes start near their scale.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let mut idx = 0usize;
    for w in hull.windows(2) {
        let (k0, l0) = w[0];
        let (k1, l1) = w[1];
        let m = k1 - k0;
        let radius = ((l0 - l1) / m as f64).exp();
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64)
                + 2.0 * std::f64::consts::PI * (idx as f64) / (n as f64)
                + 0.4;
            out.push(Complex64::from_polar(radius, theta));
        }
        idx += m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (k, a) in p.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            p = next;
        }
        p
    }

    fn assert_same_multiset(mut a: Vec<Complex64>, b: &[Complex64], tol: f64) {
        for r in b {
            let (i, d) = a
                .iter()
                .enumerate()
                .map(|(i, x)| (i, (x - r).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < tol, "root {r} missing (closest {d:e})");
            a.remove(i);
        }
        assert!(a.is_empty());
    }

    #[test]
    fn recovers_known_roots() {
        let roots = [c(1.0, 0.0), c(-2.0, 0.5), c(0.25, -3.0), c(1e-3, 0.0), c(40.0, 1.0)];
        let found = poly_roots(&from_roots(&roots)).unwrap();
        assert_same_multiset(found, &roots, 1e-9);
    }

    #[test]
    fn widely_spread_magnitudes() {
        let roots = [c(1e-4, 0.0), c(-1e-4, 1e-5), c(1.0, 1.0), c(1e4, 0.0), c(-3e3, 2e3)];
        let p = from_roots(&roots);
        let found = poly_roots(&p).unwrap();
        for r in &roots {
            let best = found.iter().map(|x| (x - r).norm() / r.norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "{r}: {best:e}");
        }
    }

    #[test]
    fn zero_roots_and_trailing_zeros() {
        // z²(z − 2), padded with a zero leading coefficient
        let p = vec![c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let found = poly_roots(&p).unwrap();
        assert_same_multiset(found, &[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], 1e-12);
    }

    #[test]
    fn warm_start_is_honoured() {
        let roots = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let p = from_roots(&roots);
        let found = poly_roots_from(&p, Some(&[c(1.1, 0.0), c(1.9, 0.0), c(3.05, 0.0)])).unwrap();
        for (f, r) in found.iter().zip(roots.iter()) {
            assert!((f - r).norm() < 1e-12);
        }
    }
}
