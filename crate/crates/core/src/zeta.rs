//! Evaluation of the zeta function from its closed form, and the θ-integral
//! oracle for the determinant.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::{deflate_repeated_factors, RationalFn, TPoly, UPoly, XPoly};
use crate::error::{Error, Result};
use crate::graph::VoltageGraph;
use crate::numeric::{complex_det, poly_roots, quad};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `P_u(x)` together with the data the closed form needs.
#[derive(Clone, Debug, PartialEq)]
pub struct PuData {
    pub p: XPoly,
    /// Degree of `P_u` in `x`.
    pub n: usize,
    /// `(−1)ⁿ` times the leading coefficient of `P_u`.
    pub alpha: UPoly,
    /// `χ(X) = v − e`.
    pub chi: i64,
    /// `q` for regular graphs.
    pub q: Option<i64>,
    pub vertices: usize,
    pub edges: usize,
    /// Square-free factors of `P_u` in `x` with their multiplicities, each
    /// cleared of denominators (coefficients in ℤ[u], low degree first).
    pub factors: Vec<(Vec<UPoly>, usize)>,
}

impl PuData {
    pub fn from_graph(g: &VoltageGraph) -> Result<Self> {
        let p = g.p_u()?;
        let n = p.degree();
        let alpha = if n % 2 == 0 { p.leading() } else { -p.leading() };
        let inv = g.invariants();
        let factors = square_free_factors(&p);
        Ok(PuData {
            p,
            n,
            alpha,
            chi: inv.chi,
            q: inv.q,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            factors,
        })
    }

    /// `σ_i = (−1)^i · coef_{n−i} / coef_n`, the i-th elementary symmetric
    /// function of the roots; `σ_0 = 1`.
    pub fn sigma(&self, i: usize) -> RationalFn {
        assert!(i <= self.n);
        let num = self.p.coeff(self.n - i);
        let num = if i.is_multiple_of(2) { num } else { -num };
        RationalFn::new(num, self.p.leading()).expect("leading coefficient is nonzero")
    }

    /// The single root `r(u)` when `n = 1`.
    pub fn r_of_u(&self) -> Option<RationalFn> {
        (self.n == 1).then(|| self.sigma(1))
    }

    pub fn alpha_at(&self, u: Complex64) -> Complex64 {
        self.alpha.eval(u)
    }

    /// Whether `α(u₀)` vanishes to working precision.
    fn alpha_degenerate(&self, u: Complex64) -> bool {
        let scale: f64 = self
            .alpha
            .to_f64_coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * u.norm().powi(k as i32))
            .sum();
        self.alpha_at(u).norm() <= 1e-13 * scale
    }
}

fn square_free_factors(p: &XPoly) -> Vec<(Vec<UPoly>, usize)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let as_t = TPoly::new(p.coeffs().iter().cloned().map(RationalFn::from_poly).collect());
    let defl = deflate_repeated_factors(&as_t);
    let mut simple = defl.square_free.clone();
    for (f, _) in &defl.repeated {
        simple = simple.div_rem(f).0;
    }
    let mut out = Vec::new();
    if simple.degree() > 0 {
        out.push((simple.cleared().0, 1));
    }
    for (f, m) in &defl.repeated {
        out.push((f.cleared().0, *m));
    }
    out
}

/// The roots `r_i(u₀)` of `P_{u₀}`, as an unordered multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub u: Complex64,
    pub roots: Vec<Complex64>,
}

pub fn roots_at(p: &PuData, u0: Complex64) -> Result<RootSet> {
    if p.n == 0 {
        return Ok(RootSet { u: u0, roots: Vec::new() });
    }
    if p.alpha_degenerate(u0) {
        return Err(Error::DegenerateLeadingCoefficient(u0));
    }
    let mut roots = Vec::with_capacity(p.n);
    for (f, mult) in &p.factors {
        let coeffs: Vec<Complex64> = f.iter().map(|c| c.eval(u0)).collect();
        for r in poly_roots(&coeffs)? {
            roots.extend(std::iter::repeat_n(r, *mult));
        }
    }
    if roots.len() != p.n {
        return Err(Error::RootsDidNotConverge(format!(
            "expected {} roots of P_u at u = {u0}, found {}",
            p.n,
            roots.len()
        )));
    }
    Ok(RootSet { u: u0, roots })
}

/// `√(r+1)·√(r−1)` with principal square roots.
pub fn paired_sqrt(r: Complex64) -> Complex64 {
    (r + 1.0).sqrt() * (r - 1.0).sqrt()
}

/// `r − √(r+1)√(r−1)` without cancellation: the two sheet values multiply
/// to 1, so the smaller one is taken as the reciprocal of the larger.
pub fn minus_sheet(r: Complex64) -> Complex64 {
    let s = paired_sqrt(r);
    let (plus, minus) = (r + s, r - s);
    if plus.norm() >= minus.norm() {
        plus.inv()
    } else {
        minus
    }
}

/// `r + √(r+1)√(r−1)`, the reciprocal of [`minus_sheet`].
pub fn plus_sheet(r: Complex64) -> Complex64 {
    let s = paired_sqrt(r);
    let (plus, minus) = (r + s, r - s);
    if minus.norm() > plus.norm() {
        minus.inv()
    } else {
        plus
    }
}

/// Principal `arccosh(r) = log(r + √(r+1)√(r−1))`.
pub fn arccosh(r: Complex64) -> Complex64 {
    plus_sheet(r).ln()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    /// `u₀ = 0`: the value is the limit 1, not a formula evaluation.
    pub limit_value: bool,
    /// No `r_i` on `[−1, 1]` and `Re P_{u₀}(x) > 0` on a grid of `[−1, 1]`.
    pub in_checked_region: bool,
    /// Some `r_i` lies on `[−1, 1]`, where the principal branch is ambiguous.
    pub branch_ambiguous: bool,
}

fn on_segment(r: Complex64, tol: f64) -> bool {
    r.im.abs() <= tol && r.re.abs() <= 1.0 + tol
}

/// Positivity of `Re P_{u₀}` on 64 points of `[−1, 1]`.
fn real_part_positive(p: &PuData, u0: Complex64) -> bool {
    (0..64).all(|k| {
        let x = -1.0 + 2.0 * k as f64 / 63.0;
        p.p.eval(u0, Complex64::new(x, 0.0)).re > 0.0
    })
}

/// `(1−u₀²)^χ · 2ⁿ/α(u₀)`, which turns a sheet value `W_I` into a value of `Z`.
pub fn sheet_prefactor(p: &PuData, u0: Complex64) -> Complex64 {
    (ONE - u0 * u0).powi(p.chi as i32) * 2f64.powi(p.n as i32) / p.alpha_at(u0)
}

/// `Z(u₀)` from the closed form with principal square roots.
pub fn zeta_at(p: &PuData, u0: Complex64) -> Result<ZetaValue> {
    if u0 == ZERO {
        return Ok(ZetaValue {
            value: ONE,
            limit_value: true,
            in_checked_region: true,
            branch_ambiguous: false,
        });
    }
    let rs = roots_at(p, u0)?;
    let ambiguous = rs.roots.iter().any(|&r| on_segment(r, 1e-12));
    // Z = (1−u²)^χ · 2ⁿ/α · Π (r − √(r+1)√(r−1)), using (r + s)(r − s) = 1
    let prod: Complex64 = rs.roots.iter().map(|&r| minus_sheet(r)).product();
    let value = sheet_prefactor(p, u0) * prod;
    Ok(ZetaValue {
        value,
        limit_value: false,
        in_checked_region: !rs.roots.iter().any(|&r| on_segment(r, 1e-9)) && real_part_positive(p, u0),
        branch_ambiguous: ambiguous,
    })
}

/// Convenience wrapper around [`zeta_at`].
pub fn zeta_closed_form(g: &VoltageGraph, u0: Complex64) -> Result<ZetaValue> {
    zeta_at(&PuData::from_graph(g)?, u0)
}

/// `M_u(θ) = I − δ(e^{iθ})u + Qu²`, assembled straight from the edge list.
pub fn theta_matrix(g: &VoltageGraph, u0: Complex64, theta: f64) -> Vec<Vec<Complex64>> {
    let n = g.vertex_count();
    let mut m = vec![vec![ZERO; n]; n];
    for e in g.edges() {
        let z = Complex64::from_polar(1.0, theta * e.shift as f64);
        m[e.from][e.to] -= u0 * z;
        m[e.to][e.from] -= u0 * z.conj();
    }
    for (i, d) in g.degrees().into_iter().enumerate() {
        m[i][i] += ONE + (d - 1) as f64 * u0 * u0;
    }
    m
}

/// `exp` of the mean of `log det M_{u₀}(θ)` over `samples` equispaced θ, with
/// the logarithm continued along the grid rather than taken principal.
pub fn theta_integral_fixed(g: &VoltageGraph, u0: Complex64, samples: usize) -> Result<Complex64> {
    let h = 2.0 * PI / samples as f64;
    let mut acc = ZERO;
    let mut prev_arg: Option<f64> = None;
    for k in 0..samples {
        let theta = k as f64 * h;
        let m = theta_matrix(g, u0, theta);
        let scale: f64 = m
            .iter()
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .product::<f64>()
            .max(f64::MIN_POSITIVE);
        let d = complex_det(&m);
        if d.norm() <= 1e-13 * scale {
            return Err(Error::IntegrandSingularity {
                theta,
                magnitude: d.norm(),
            });
        }
        let mut arg = d.arg();
        if let Some(p) = prev_arg {
            arg += 2.0 * PI * ((p - arg) / (2.0 * PI)).round();
        }
        prev_arg = Some(arg);
        acc += Complex64::new(d.norm().ln(), arg);
    }
    Ok((acc / samples as f64).exp())
}

/// Maximum sample count for [`theta_integral_det`].
pub const THETA_SAMPLE_CAP: usize = 1 << 20;

/// `Det_π Δ_{u₀}` by the θ-integral, doubling `samples` until two successive
/// estimates agree to 1e-10 (relative) or the cap is reached.
pub fn theta_integral_det(g: &VoltageGraph, u0: Complex64, samples: usize) -> Result<Complex64> {
    let mut n = samples.max(64);
    let mut prev = theta_integral_fixed(g, u0, n)?;
    while n < THETA_SAMPLE_CAP {
        n *= 2;
        let next = theta_integral_fixed(g, u0, n)?;
        if (next - prev).norm() <= 1e-10 * next.norm() {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// Maximum sample count for the trapezoid in [`arccosh_integral_check`].
pub const ARCCOSH_SAMPLE_CAP: usize = 1 << 16;

/// `((1/2π)∫ log(r − cos θ) dθ, arccosh(r) − log 2)`.
///
/// On the segment `[−1, 1]` the real part is integrated as `log|r − cos θ|`
/// by a rule split at the singularity, and the imaginary part is the measure
/// of `{cos θ > r}` times π.
pub fn arccosh_integral_check(r: Complex64, samples: usize) -> (Complex64, Complex64) {
    let rhs = arccosh(r) - LN_2;
    let lhs = if r.im == 0.0 && r.re.abs() <= 1.0 {
        segment_integral(r.re)
    } else {
        off_segment_integral(r, samples.max(64))
    };
    (lhs, rhs)
}

fn off_segment_integral(r: Complex64, samples: usize) -> Complex64 {
    let f = |theta: f64| Complex64::new(r.re - theta.cos(), r.im + 0.0).ln();
    let mut n = samples;
    let mut prev = quad::periodic_mean(n, f);
    while n < ARCCOSH_SAMPLE_CAP {
        n *= 2;
        let next = quad::periodic_mean(n, f);
        if (next - prev).norm() <= 1e-12 * (1.0 + next.norm()) {
            return next;
        }
        prev = next;
    }
    // close to the segment: the integrand has a near-singularity at arccos(Re r)
    let phi = r.re.clamp(-1.0, 1.0).acos();
    let g = |theta: f64, _: f64, _: f64| f(theta);
    let left = if phi > 0.0 { quad::tanh_sinh_adaptive(0.0, phi, 1e-13, g) } else { ZERO };
    let right = if phi < PI { quad::tanh_sinh_adaptive(phi, PI, 1e-13, g) } else { ZERO };
    (left + right) / PI
}

fn segment_integral(r: f64) -> Complex64 {
    let phi = r.acos();
    // |r − cos θ| = 2 |sin((θ+φ)/2) sin((θ−φ)/2)|, each factor formed from
    // endpoint distances so neither loses digits near θ = φ, 0 or π
    let log_abs = |half_sum: f64, half_diff: f64| {
        Complex64::new(LN_2 + half_sum.sin().abs().ln() + half_diff.sin().abs().ln(), 0.0)
    };
    let left = if phi > 0.0 {
        quad::tanh_sinh_adaptive(0.0, phi, 1e-14, |theta, _, db| {
            // sin((θ+φ)/2) = sin((2π − θ − φ)/2)
            let sum = if theta + phi <= PI { theta + phi } else { (PI - phi) + (PI - theta) };
            log_abs(0.5 * sum, 0.5 * db)
        })
    } else {
        ZERO
    };
    let right = if phi < PI {
        quad::tanh_sinh_adaptive(phi, PI, 1e-14, |theta, da, db| {
            let sum = if theta + phi <= PI { theta + phi } else { (PI - phi) + db };
            log_abs(0.5 * sum, 0.5 * da)
        })
    } else {
        ZERO
    };
    Complex64::new((left + right).re / PI, phi)
}

/// Taylor coefficients of `Z` at 0 through `degree`, from a Cauchy integral
/// of the closed form on a small circle, rounded to integers.
pub fn closed_form_taylor(p: &PuData, degree: usize) -> Result<Vec<BigInt>> {
    const NODES: usize = 64;
    assert!(degree < NODES / 2);
    let mut rho = 0.1;
    for _ in 0..6 {
        let mut values = Vec::with_capacity(NODES);
        let mut ok = true;
        for j in 0..NODES {
            let u = Complex64::from_polar(rho, 2.0 * PI * (j as f64 + 0.5) / NODES as f64);
            let z = zeta_at(p, u)?;
            if !z.in_checked_region || z.branch_ambiguous {
                ok = false;
                break;
            }
            values.push((u, z.value));
        }
        if !ok {
            rho *= 0.5;
            continue;
        }
        let mut out = Vec::with_capacity(degree + 1);
        for k in 0..=degree {
            let c: Complex64 = values.iter().map(|&(u, z)| z * u.powi(-(k as i32))).sum::<Complex64>() / NODES as f64;
            let rounded = c.re.round();
            if (c - rounded).norm() > 1e-4 {
                return Err(Error::Numeric(format!(
                    "Taylor coefficient {k} is not close to an integer: {c}"
                )));
            }
            out.push(BigInt::from(rounded as i64));
        }
        return Ok(out);
    }
    Err(Error::Numeric("no circle around 0 inside the checked region".into()))
}

/// True when every coefficient of `P_u` has zero constant term except `x⁰`,
/// i.e. `P_0 = 1`.
pub fn p_at_zero_is_one(p: &PuData) -> bool {
    p.p.coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| c.coeff(0) == if k == 0 { BigInt::from(1) } else { BigInt::zero() })
}
