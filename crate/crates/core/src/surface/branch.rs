//! Points of ℂP¹ over which sheets of Ω may be permuted.

use num_complex::Complex64;

use super::omega::OmegaPoly;
use crate::algebra::{discriminant_t, TPoly, UPoly};
use crate::error::{Error, Result};

/// Candidates closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-8;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(*z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Order by |u| then argument in [0, 2π), with ∞ last.
    pub fn display_cmp(&self, other: &Point) -> std::cmp::Ordering {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => std::cmp::Ordering::Equal,
            (Point::Infinity, _) => std::cmp::Ordering::Greater,
            (_, Point::Infinity) => std::cmp::Ordering::Less,
            (Point::Finite(a), Point::Finite(b)) => {
                let arg = |z: &Complex64| {
                    let t = z.arg();
                    if t < -1e-12 {
                        t + std::f64::consts::TAU
                    } else {
                        t.max(0.0)
                    }
                };
                let (ra, rb) = (a.norm(), b.norm());
                if (ra - rb).abs() > DEDUP_TOL * (1.0 + ra.max(rb)) {
                    ra.total_cmp(&rb)
                } else {
                    arg(a).total_cmp(&arg(b))
                }
            }
        }
    }

    pub fn close_to(&self, other: &Point, tol: f64) -> bool {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Finite(a), Point::Finite(b)) => (a - b).norm() <= tol * (1.0 + a.norm()),
            _ => false,
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// Where a candidate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Zero of the discriminant of the square-free Ω.
    Discriminant,
    /// Zero of the cleared leading coefficient (sheets run off to ∞ or 0).
    Pole,
    /// One of the mandatory points 0 and ∞.
    Mandatory,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub point: Point,
    pub origin: Origin,
}

/// Merges nearby points, keeping the first of each cluster, then sorts.
pub fn dedup(mut zs: Vec<Complex64>) -> Vec<Complex64> {
    // snap tiny components so conjugate pairs and real points compare cleanly
    for z in zs.iter_mut() {
        let s = 1e-11 * (1.0 + z.norm());
        if z.im.abs() < s {
            z.im = 0.0;
        }
        if z.re.abs() < s {
            z.re = 0.0;
        }
    }
    let mut out: Vec<Complex64> = Vec::new();
    for z in zs {
        if !out.iter().any(|w| (w - z).norm() <= DEDUP_TOL * (1.0 + w.norm())) {
            out.push(z);
        }
    }
    out.sort_by(|a, b| Point::Finite(*a).display_cmp(&Point::Finite(*b)));
    out
}

/// Nonzero complex zeros of a ℤ[u] polynomial, each once.
pub fn distinct_nonzero_zeros(p: &UPoly) -> Vec<Complex64> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    dedup(p.strip_u().square_free().complex_roots())
}

/// Zeros of the discriminant numerator of a T-polynomial. Fails with
/// [`Error::NeedsDeflation`] if the polynomial has a repeated factor.
pub fn discriminant_zeros(p: &TPoly) -> Result<Vec<Complex64>> {
    let disc = discriminant_t(p)?;
    if disc.is_zero() {
        return Err(Error::NeedsDeflation);
    }
    Ok(distinct_nonzero_zeros(disc.num()))
}

/// Discriminant zeros, pole zeros, 0 and ∞, without duplicates. Zeros of the
/// discriminant take precedence over pole zeros at the same point.
pub fn branch_candidates(omega: &OmegaPoly) -> Result<Vec<Candidate>> {
    let disc: Vec<Complex64> = match &omega.deflation {
        Some(d) => discriminant_zeros(&d.square_free)?,
        None => numeric_path_zeros(omega)?,
    };
    let poles = distinct_nonzero_zeros(&omega.pole_polynomial());
    let mut out: Vec<Candidate> = vec![Candidate {
        point: Point::Finite(Complex64::new(0.0, 0.0)),
        origin: Origin::Mandatory,
    }];
    let mut seen = vec![Complex64::new(0.0, 0.0)];
    for (zs, origin) in [(disc, Origin::Discriminant), (poles, Origin::Pole)] {
        for z in zs {
            if seen.iter().any(|w| (w - z).norm() <= DEDUP_TOL * (1.0 + w.norm())) {
                continue;
            }
            seen.push(z);
            out.push(Candidate {
                point: Point::Finite(z),
                origin,
            });
        }
    }
    out.push(Candidate {
        point: Point::Infinity,
        origin: Origin::Mandatory,
    });
    out.sort_by(|a, b| a.point.display_cmp(&b.point));
    Ok(out)
}

/// Without a symbolic Ω, two sheets can only meet where two roots of P_u
/// meet, where a root reaches ±1 (s = 0), or where a root escapes (α = 0).
fn numeric_path_zeros(omega: &OmegaPoly) -> Result<Vec<Complex64>> {
    let p = &omega.pu.p;
    let mut zs = Vec::new();
    zs.extend(distinct_nonzero_zeros(&p.at_x_int(1)));
    zs.extend(distinct_nonzero_zeros(&p.at_x_int(-1)));
    for (f, _) in &omega.pu.factors {
        if f.len() > 2 {
            let t = TPoly::new(f.iter().cloned().map(crate::algebra::RationalFn::from_poly).collect());
            zs.extend(discriminant_zeros(&t)?);
        }
    }
    // distinct factors meeting each other
    for i in 0..omega.pu.factors.len() {
        for j in i + 1..omega.pu.factors.len() {
            let a = &omega.pu.factors[i].0;
            let b = &omega.pu.factors[j].0;
            let ta = TPoly::new(a.iter().cloned().map(crate::algebra::RationalFn::from_poly).collect());
            let tb = TPoly::new(b.iter().cloned().map(crate::algebra::RationalFn::from_poly).collect());
            let prod = ta.mul(&tb);
            zs.extend(discriminant_zeros(&prod)?);
        }
    }
    Ok(dedup(zs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::zeta::PuData;

    fn finite(cs: &[Candidate], origin: Origin) -> Vec<Complex64> {
        cs.iter().filter(|c| c.origin == origin).filter_map(|c| c.point.finite()).collect()
    }

    fn contains(zs: &[Complex64], z: Complex64) -> bool {
        zs.iter().any(|w| (w - z).norm() < 1e-8)
    }

    fn omega(g: &crate::graph::VoltageGraph, symbolic: bool) -> OmegaPoly {
        OmegaPoly::new(PuData::from_graph(g).unwrap(), symbolic).unwrap()
    }

    #[test]
    fn graph1_candidates() {
        let c = branch_candidates(&omega(&fixtures::table1(1), true)).unwrap();
        let d = finite(&c, Origin::Discriminant);
        let s = 3f64.sqrt().recip();
        for z in [1.0.into(), (1.0 / 3.0).into(), Complex64::new(0.0, s), Complex64::new(0.0, -s)] {
            assert!(contains(&d, z), "{z}");
        }
        assert_eq!(d.len(), 4);
        assert!(c.first().unwrap().point == Point::Finite(0.0.into()));
        assert!(c.last().unwrap().point.is_infinite());
    }

    #[test]
    fn sawtooth_has_ten_discriminant_zeros() {
        let c = branch_candidates(&omega(&fixtures::sawtooth(), true)).unwrap();
        assert_eq!(finite(&c, Origin::Discriminant).len(), 10);
    }

    #[test]
    fn repeated_factor_needs_deflation() {
        let o = omega(&fixtures::triladder(), true);
        assert!(matches!(
            discriminant_zeros(o.symbolic.as_ref().unwrap()),
            Err(Error::NeedsDeflation)
        ));
    }

    #[test]
    fn numeric_path_contains_sawtooth_branch_points() {
        let num = branch_candidates(&omega(&fixtures::sawtooth(), false)).unwrap();
        let pts: Vec<Complex64> = num.iter().filter_map(|c| c.point.finite()).collect();
        let s3 = 3f64.sqrt().recip();
        let im = 111f64.sqrt() / 24.0;
        for z in [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0 / 3.0, 0.0),
            Complex64::new(0.0, s3),
            Complex64::new(0.0, -s3),
            Complex64::new(-0.375, im),
            Complex64::new(-0.375, -im),
        ] {
            assert!(contains(&pts, z), "{z}");
        }
    }

    #[test]
    fn ordering() {
        let mut v = [Point::Infinity,
            Point::Finite(Complex64::new(0.0, -1.0)),
            Point::Finite(Complex64::new(1.0, 0.0)),
            Point::Finite(Complex64::new(0.5, 0.0))];
        v.sort_by(|a, b| a.display_cmp(b));
        assert_eq!(v[0], Point::Finite(Complex64::new(0.5, 0.0)));
        assert_eq!(v[1], Point::Finite(Complex64::new(1.0, 0.0)));
        assert_eq!(v[3], Point::Infinity);
    }
}
