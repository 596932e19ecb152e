//! Quadrature rules: periodic trapezoid and double-exponential (tanh-sinh).

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Mean of `f` over one period `[0, 2π)` with `n` equispaced nodes.
pub fn periodic_mean<F: FnMut(f64) -> Complex64>(n: usize, mut f: F) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += f(k as f64 * h);
    }
    acc / n as f64
}

/// Tanh-sinh rule on `[a, b]` with step `h` in the transformed variable.
///
/// The integrand receives `(x, x − a, b − x)`; the endpoint distances are
/// computed without cancellation so singularities at `a` or `b` stay tame.
pub fn tanh_sinh<F>(a: f64, b: f64, h: f64, mut f: F) -> Complex64
where
    F: FnMut(f64, f64, f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = f(mid, half, half) * FRAC_PI_2;
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let cs = s.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cs * cs);
        // distance of the node from the nearer endpoint, in units of `half`
        let d = (-s).exp() / cs;
        if w < 1e-300 || d * half == 0.0 {
            break;
        }
        let off = half * d;
        let left = f(a + off, off, b - a - off);
        let right = f(b - off, b - a - off, off);
        acc += (left + right) * w;
        k += 1;
        if t > 7.0 {
            break;
        }
    }
    acc * h * half
}

/// Tanh-sinh with step halving until two successive estimates agree to `tol`.
pub fn tanh_sinh_adaptive<F>(a: f64, b: f64, tol: f64, mut f: F) -> Complex64
where
    F: FnMut(f64, f64, f64) -> Complex64,
{
    let mut h = 0.5;
    let mut prev = tanh_sinh(a, b, h, &mut f);
    for _ in 0..8 {
        h *= 0.5;
        let next = tanh_sinh(a, b, h, &mut f);
        if (next - prev).norm() <= tol * (1.0 + next.norm()) {
            return next;
        }
        prev = next;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_exact_for_trig_polynomials() {
        let m = periodic_mean(16, |t| Complex64::new(3.0 + (2.0 * t).cos() + (5.0 * t).sin(), 0.0));
        assert!((m.re - 3.0).abs() < 1e-15);
    }

    #[test]
    fn tanh_sinh_polynomial_and_endpoint_singularity() {
        let v = tanh_sinh_adaptive(0.0, 2.0, 1e-14, |x, _, _| Complex64::new(x * x, 0.0));
        assert!((v.re - 8.0 / 3.0).abs() < 1e-13);
        // ∫_0^1 ln x dx = −1
        let v = tanh_sinh_adaptive(0.0, 1.0, 1e-14, |_, da, _| Complex64::new(da.ln(), 0.0));
        assert!((v.re + 1.0).abs() < 1e-12, "{v}");
        // ∫_0^1 1/√(1−x) dx = 2
        let v = tanh_sinh_adaptive(0.0, 1.0, 1e-14, |_, _, db| Complex64::new(db.sqrt().recip(), 0.0));
        assert!((v.re - 2.0).abs() < 1e-10, "{v}");
    }
}
