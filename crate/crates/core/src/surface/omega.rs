//! Ω(T) = Π_I (T − W_I) for a particular graph, exactly over ℚ(u) or sampled
//! numerically at a point.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use super::symmetric::{omega_in_sigma, N_MAX};
use crate::algebra::{deflate_repeated_factors, Deflation, RationalFn, TPoly, UPoly};
use crate::error::{Error, Result};
use crate::numeric::poly_roots;
use crate::zeta::{minus_sheet, paired_sqrt, roots_at, PuData};

/// Ω over ℚ(u), by substituting `σ_i = (−1)^i p_{n−i}/p_n` into the
/// universal formula.
pub fn omega_symbolic(p: &PuData) -> Result<TPoly> {
    if p.n > N_MAX {
        return Err(Error::SymbolicDegreeTooLarge { n: p.n, max: N_MAX });
    }
    let lead = p.p.leading();
    // a_i = (−1)^i p_{n−i}, so σ_i = a_i / lead
    let a: Vec<UPoly> = (0..=p.n)
        .map(|i| {
            let c = p.p.coeff(p.n - i);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let coeffs = omega_in_sigma(p.n)
        .iter()
        .map(|poly| {
            let top = poly.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
            let mut num = UPoly::zero();
            for (e, c) in poly {
                let mut term = UPoly::constant(c.clone());
                for (i, &k) in e.iter().enumerate() {
                    term = &term * &a[i + 1].pow(k);
                }
                term = &term * &lead.pow(top - e.iter().sum::<u32>());
                num = &num + &term;
            }
            RationalFn::new(num, lead.pow(top)).expect("leading coefficient of P_u is nonzero")
        })
        .collect();
    Ok(TPoly::new(coeffs))
}

/// All 2ⁿ sheet values `W_I = Π_i (r_i + ι_i s_i)` at `u₀`; bit `i` of the
/// index set means `ι_i = +1`. Index 0 is `W_{−…−}`.
pub fn sheet_values(p: &PuData, u0: Complex64) -> Result<Vec<Complex64>> {
    let rs = roots_at(p, u0)?;
    let mut out = Vec::with_capacity(1 << p.n);
    for mask in 0usize..(1 << p.n) {
        let w = rs
            .roots
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let m = minus_sheet(r);
                if mask >> i & 1 == 1 {
                    m.inv()
                } else {
                    m
                }
            })
            .product();
        out.push(w);
    }
    Ok(out)
}

/// `Π (T − v)` over `values`, coefficients low degree first.
pub fn expand_from_roots(values: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::one()];
    for &v in values {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * v;
        }
        c = next;
    }
    c
}

/// Monic Ω at `u₀` from the numeric sheet values (degree 2ⁿ).
pub fn omega_numeric_at(p: &PuData, u0: Complex64) -> Result<Vec<Complex64>> {
    Ok(expand_from_roots(&sheet_values(p, u0)?))
}

/// One value per distinct sheet when `P_u` has repeated factors: a root of
/// multiplicity m contributes `w^{2k−m}` for `k = 0..=m` instead of 2^m
/// sign choices. Index 0 is the base sheet `W_{−…−}`.
pub fn distinct_sheet_values(p: &PuData, u0: Complex64) -> Result<Vec<Complex64>> {
    if p.n > 0 && p.alpha.eval(u0).norm() == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient(u0));
    }
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for (f, mult) in &p.factors {
        let coeffs: Vec<Complex64> = f.iter().map(|c| c.eval(u0)).collect();
        for r in poly_roots(&coeffs)? {
            groups.push((minus_sheet(r), *mult));
        }
    }
    let mut values = vec![Complex64::one()];
    for (m, mult) in groups {
        let mut next = Vec::with_capacity(values.len() * (mult + 1));
        for k in 0..=mult {
            // m = w⁻¹, so w^{2k−mult} = m^{mult−2k}
            let f = m.powi(mult as i32 - 2 * k as i32);
            next.extend(values.iter().map(|v| v * f));
        }
        values = next;
    }
    Ok(values)
}

/// `W_{−…−}(u₀)` straight from the roots of `P_{u₀}`.
pub fn base_sheet_value(p: &PuData, u0: Complex64) -> Result<Complex64> {
    Ok(roots_at(p, u0)?.roots.iter().map(|&r| minus_sheet(r)).product())
}

/// `s = √(r+1)√(r−1)` for each root, useful for diagnostics.
pub fn s_values(p: &PuData, u0: Complex64) -> Result<Vec<Complex64>> {
    Ok(roots_at(p, u0)?.roots.iter().map(|&r| paired_sqrt(r)).collect())
}

/// Ω for one graph. Root tracking runs on a square-free version: the exact
/// square-free part when the symbolic form exists, otherwise the product over
/// distinct sheet values.
#[derive(Clone, Debug)]
pub struct OmegaPoly {
    pub pu: PuData,
    pub symbolic: Option<TPoly>,
    pub deflation: Option<Deflation>,
    /// Square-free Ω with denominators cleared (ℤ[u] coefficients).
    cleared: Option<Vec<UPoly>>,
    /// Denominator removed when clearing.
    clearing_factor: Option<UPoly>,
    /// `cleared` in floating point, for fast evaluation while tracking.
    cleared_f64: Vec<Vec<f64>>,
}

impl OmegaPoly {
    /// `symbolic = false` forces the numeric path even when `n ≤ n_max`.
    pub fn new(pu: PuData, symbolic: bool) -> Result<Self> {
        if symbolic && pu.n <= N_MAX {
            let full = omega_symbolic(&pu)?;
            let deflation = deflate_repeated_factors(&full);
            let (cleared, c) = deflation.square_free.cleared();
            let cleared_f64 = cleared.iter().map(UPoly::to_f64_coeffs).collect();
            Ok(OmegaPoly {
                cleared_f64,
                pu,
                symbolic: Some(full),
                deflation: Some(deflation),
                cleared: Some(cleared),
                clearing_factor: Some(c),
            })
        } else {
            Ok(OmegaPoly {
                pu,
                symbolic: None,
                deflation: None,
                cleared: None,
                clearing_factor: None,
                cleared_f64: Vec::new(),
            })
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic.is_some()
    }

    /// Number of sheets of the square-free Ω.
    pub fn working_degree(&self) -> usize {
        match &self.cleared {
            Some(c) => c.len() - 1,
            None => self.pu.factors.iter().map(|(f, m)| (m + 1).pow((f.len() - 1) as u32)).product(),
        }
    }

    /// Coefficients of the square-free Ω at `u₀` (not necessarily monic).
    pub fn working_at(&self, u0: Complex64) -> Result<Vec<Complex64>> {
        match &self.cleared {
            Some(_) => Ok(self
                .cleared_f64
                .iter()
                .map(|k| k.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u0 + c))
                .collect()),
            None => Ok(expand_from_roots(&distinct_sheet_values(&self.pu, u0)?)),
        }
    }

    /// Roots of the square-free Ω at `u₀`.
    pub fn working_roots(&self, u0: Complex64, guess: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
        match &self.cleared {
            Some(_) => {
                let coeffs = self.working_at(u0)?;
                let roots = crate::numeric::poly_roots_from(&coeffs, guess)?;
                if roots.len() != self.working_degree() {
                    return Err(Error::DegenerateLeadingCoefficient(u0));
                }
                Ok(roots)
            }
            None => distinct_sheet_values(&self.pu, u0),
        }
    }

    /// The ℤ[u] polynomial whose zeros make the cleared leading coefficient
    /// vanish (sheets escape to ∞ there).
    pub fn pole_polynomial(&self) -> UPoly {
        match &self.clearing_factor {
            Some(c) => c.clone(),
            None => self.pu.alpha.clone(),
        }
    }

    /// Repeated factors of the full Ω as (degree in T, multiplicity).
    pub fn repeated_factors(&self) -> Vec<(usize, usize)> {
        self.deflation
            .as_ref()
            .map(|d| d.repeated.iter().map(|(f, m)| (f.degree(), *m)).collect())
            .unwrap_or_default()
    }
}

/// `BigInt` shorthand for tests and callers building expected coefficients.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rf(n: &[i64], d: &[i64]) -> RationalFn {
        RationalFn::new(UPoly::from_i64s(n), UPoly::from_i64s(d)).unwrap()
    }

    fn pu(g: &crate::graph::VoltageGraph) -> PuData {
        PuData::from_graph(g).unwrap()
    }

    #[test]
    fn sawtooth_symbolic_matches_printed_quartic() {
        let o = omega_symbolic(&pu(&fixtures::sawtooth())).unwrap();
        let a = rf(&[-1, 0, -4, 0, -9], &[0, 0, 1]);
        let b = rf(&[2, 4, 15, 12, 18], &[0, 0, 1]);
        let one = RationalFn::one();
        assert_eq!(o, TPoly::new(vec![one.clone(), a.clone(), b, a, one]));
        assert!(o.is_palindromic());
    }

    #[test]
    fn degree_one_graph() {
        let o = omega_symbolic(&pu(&fixtures::table1(1))).unwrap();
        let r = rf(&[1, -2, 3], &[0, 2]);
        assert_eq!(o, TPoly::new(vec![RationalFn::one(), r.scale_int(-2), RationalFn::one()]));
    }

    #[test]
    fn line_numeric() {
        let p = pu(&fixtures::line());
        let c = omega_numeric_at(&p, Complex64::new(0.5, 0.0)).unwrap();
        // (T − 1/2)(T − 2)
        let want = [1.0, -2.5, 1.0];
        for (x, y) in c.iter().zip(want) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn product_of_sheets_is_one() {
        for (name, g) in fixtures::all() {
            let v = sheet_values(&pu(&g), Complex64::new(0.07, 0.02)).unwrap();
            let prod: Complex64 = v.iter().product();
            assert!((prod - 1.0).norm() < 1e-9, "{name}: {prod}");
        }
    }

    #[test]
    fn symbolic_agrees_with_numeric() {
        let u = Complex64::new(0.07, 0.03);
        for (name, g) in fixtures::all() {
            let p = pu(&g);
            let sym = omega_symbolic(&p).unwrap().at_u(u);
            let num = omega_numeric_at(&p, u).unwrap();
            let scale = num.iter().map(|z| z.norm()).fold(0.0, f64::max);
            for (a, b) in sym.iter().zip(&num) {
                assert!((a - b).norm() <= 1e-8 * scale, "{name}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn triladder_deflation() {
        let o = OmegaPoly::new(pu(&fixtures::triladder()), true).unwrap();
        assert_eq!(o.symbolic.as_ref().unwrap().degree(), 8);
        assert_eq!(o.repeated_factors(), vec![(2, 2)]);
        assert_eq!(o.working_degree(), 6);
        let numeric = OmegaPoly::new(pu(&fixtures::triladder()), false).unwrap();
        assert_eq!(numeric.working_degree(), 6);
        // both square-free forms have the same roots
        let u = Complex64::new(0.06, -0.02);
        let mut a = o.working_roots(u, None).unwrap();
        let b = numeric.working_roots(u, None).unwrap();
        for z in &b {
            let (i, d) = a
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - z).norm() / z.norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < 1e-9);
            a.remove(i);
        }
    }

    #[test]
    fn too_large_for_symbolic() {
        let mut p = pu(&fixtures::sawtooth());
        p.n = 5;
        assert!(matches!(omega_symbolic(&p), Err(Error::SymbolicDegreeTooLarge { n: 5, max: 4 })));
    }
}
