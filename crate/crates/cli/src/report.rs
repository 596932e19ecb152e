//! The JSON analysis report (schema version 1).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use l2zeta::algebra::UPoly;
use l2zeta::census::{geodesic_census, has_no_geodesics, series_from_census};
use l2zeta::surface::branch::Point;
use l2zeta::surface::omega::OmegaPoly;
use l2zeta::surface::report::{functional_eq_check, report_for, SurfaceReport};
use l2zeta::zeta::{closed_form_taylor, theta_integral_det, zeta_at, PuData};
use l2zeta::{Error, Result, VoltageGraph};

pub const SCHEMA_VERSION: u32 = 1;

/// Point where the θ-integral oracle is evaluated for reports.
pub const ORACLE_U: Complex64 = Complex64 { re: 0.05, im: 0.02 };
pub const ORACLE_SAMPLES: usize = 4096;
pub const ORACLE_CENSUS_LEN: usize = 8;

/// Points for the functional-equation residual.
pub const FE_SAMPLES: [Complex64; 5] = [
    Complex64 { re: 0.08, im: 0.0 },
    Complex64 { re: 0.05, im: 0.03 },
    Complex64 { re: -0.06, im: 0.02 },
    Complex64 { re: 0.03, im: -0.07 },
    Complex64 { re: 0.2, im: 0.1 },
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        // −0.0 would print as "-0.0"; keep the output canonical
        C { re: z.re + 0.0, im: z.im + 0.0 }
    }
}

impl From<C> for Complex64 {
    fn from(c: C) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Inf {
    #[serde(rename = "inf")]
    Inf,
}

/// A point of the sphere: `{"re", "im"}` or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Location {
    Infinity(Inf),
    Finite(C),
}

impl From<Point> for Location {
    fn from(p: Point) -> Self {
        match p {
            Point::Finite(z) => Location::Finite(z.into()),
            Point::Infinity => Location::Infinity(Inf::Inf),
        }
    }
}

impl Location {
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Location::Finite(c) => Some((*c).into()),
            Location::Infinity(_) => None,
        }
    }
}

/// `q`, or the string `"non-regular"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Regularity {
    Regular(i64),
    NonRegular(NonRegular),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonRegular {
    #[serde(rename = "non-regular")]
    NonRegular,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub chi: i64,
    pub q: Regularity,
    pub degrees: Vec<i64>,
}

/// A polynomial in u, coefficients low degree first as decimal strings.
pub type UCoeffs = Vec<String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalCoeff {
    pub num: UCoeffs,
    pub den: UCoeffs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepeatedFactor {
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaSummary {
    /// Degree of Ω in T, always 2ⁿ.
    pub degree: usize,
    /// Coefficients of T⁰ … T^{2ⁿ}, or `null` on the numeric path.
    pub coefficients: Option<Vec<RationalCoeff>>,
    pub repeated_factors: Vec<RepeatedFactor>,
    /// Number of sheets actually tracked (degree of the square-free part).
    pub tracked_sheets: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPointEntry {
    pub location: Location,
    pub cycle_structure: Vec<usize>,
    pub branching_order: usize,
    /// Membership in C; `null` for non-regular graphs.
    pub in_c: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub location: Location,
    pub origin: String,
    pub cycle_structure_all_sheets: Vec<usize>,
    pub cycle_structure_component: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub base_point: C,
    pub d: usize,
    pub b: usize,
    pub genus: i64,
    pub galois: bool,
    pub omega_irreducible: bool,
    pub tau_stable: Option<bool>,
    pub branch_points: Vec<BranchPointEntry>,
    pub candidates: Vec<CandidateEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquation {
    pub samples: Vec<C>,
    pub max_residual: Option<f64>,
    pub alpha_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Oracles {
    pub u: C,
    pub theta_samples: usize,
    /// `|Z⁻¹ − (1−u²)^{−χ} Det_θ| / |Z⁻¹|`; `null` if the integral failed.
    pub theta_residual: Option<f64>,
    pub census_length: usize,
    /// Whether the Taylor coefficients equal the census series; `null` if
    /// the census was over budget.
    pub census_match: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub graph: GraphSummary,
    /// `P_u(x)` as rows for x⁰ … xⁿ.
    pub p_u: Vec<UCoeffs>,
    pub alpha: UCoeffs,
    /// True when `Y` has no closed geodesics, so that Z ≡ 1.
    pub zeta_identically_one: bool,
    pub omega: OmegaSummary,
    pub surface: SurfaceSummary,
    pub functional_equation: Option<FunctionalEquation>,
    pub oracles: Oracles,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn coeffs(p: &UPoly) -> UCoeffs {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub struct AnalyzeOptions {
    pub symbolic: bool,
}

pub fn analyze(g: &VoltageGraph, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let pu = PuData::from_graph(g)?;
    let omega = OmegaPoly::new(pu.clone(), opts.symbolic)?;
    let base = l2zeta::surface::report::SurfaceOptions::default().base;
    let surface = report_for(&omega, base)?;
    let fe = match pu.q {
        Some(_) => {
            let r = functional_eq_check(g, &FE_SAMPLES)?;
            Some(FunctionalEquation {
                samples: FE_SAMPLES.iter().map(|&z| z.into()).collect(),
                max_residual: finite(r.max_residual),
                alpha_residual: finite(r.alpha_residual),
            })
        }
        None => None,
    };
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        graph: GraphSummary {
            vertices: pu.vertices,
            edges: pu.edges,
            chi: pu.chi,
            q: match pu.q {
                Some(q) => Regularity::Regular(q),
                None => Regularity::NonRegular(NonRegular::NonRegular),
            },
            degrees: g.degrees(),
        },
        p_u: pu.p.coeffs().iter().map(coeffs).collect(),
        alpha: coeffs(&pu.alpha),
        zeta_identically_one: has_no_geodesics(g)?,
        omega: OmegaSummary {
            degree: 1 << pu.n,
            coefficients: omega.symbolic.as_ref().map(|t| {
                t.coeffs().iter().map(|c| RationalCoeff { num: coeffs(c.num()), den: coeffs(c.den()) }).collect()
            }),
            repeated_factors: omega
                .repeated_factors()
                .into_iter()
                .map(|(degree, multiplicity)| RepeatedFactor { degree, multiplicity })
                .collect(),
            tracked_sheets: surface.tracked_sheets,
        },
        surface: surface_summary(&surface),
        functional_equation: fe,
        oracles: oracles(g, &pu, ORACLE_U, ORACLE_SAMPLES, ORACLE_CENSUS_LEN)?.summary(),
    })
}

fn surface_summary(s: &SurfaceReport) -> SurfaceSummary {
    SurfaceSummary {
        base_point: s.base.into(),
        d: s.d,
        b: s.b,
        genus: s.genus,
        galois: s.galois,
        omega_irreducible: s.omega_irreducible,
        tau_stable: s.tau_stable,
        branch_points: s
            .branch_points
            .iter()
            .map(|b| BranchPointEntry {
                location: b.location.into(),
                cycle_structure: b.cycle_structure.clone(),
                branching_order: b.branching_order,
                in_c: b.in_c,
            })
            .collect(),
        candidates: s
            .candidates
            .iter()
            .map(|c| CandidateEntry {
                location: c.location.into(),
                origin: format!("{:?}", c.origin).to_lowercase(),
                cycle_structure_all_sheets: c.full_cycle_structure.clone(),
                cycle_structure_component: c.component_cycle_structure.clone(),
            })
            .collect(),
    }
}

/// Full oracle comparison, as printed by the `oracle` command.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub u: Complex64,
    pub theta_samples: usize,
    pub closed_form_inverse: Complex64,
    pub theta_side: Option<Complex64>,
    pub theta_error: Option<String>,
    pub census_length: usize,
    pub taylor: Option<Vec<String>>,
    pub census: Option<Vec<String>>,
    pub census_error: Option<String>,
}

impl OracleRun {
    pub fn theta_residual(&self) -> Option<f64> {
        let t = self.theta_side?;
        Some((self.closed_form_inverse - t).norm() / self.closed_form_inverse.norm())
    }

    pub fn census_match(&self) -> Option<bool> {
        Some(self.taylor.as_ref()? == self.census.as_ref()?)
    }

    fn summary(&self) -> Oracles {
        Oracles {
            u: self.u.into(),
            theta_samples: self.theta_samples,
            theta_residual: self.theta_residual().and_then(finite),
            census_length: self.census_length,
            census_match: self.census_match(),
        }
    }
}

/// Runs both oracles. Resource-limit and integrand failures are recorded in
/// the result; other errors propagate.
pub fn oracles(g: &VoltageGraph, pu: &PuData, u: Complex64, samples: usize, len: usize) -> Result<OracleRun> {
    let z = zeta_at(pu, u)?.value;
    let (theta_side, theta_error) = match theta_integral_det(g, u, samples) {
        Ok(det) => (Some((1.0 - u * u).powi(-pu.chi as i32) * det), None),
        Err(e @ Error::IntegrandSingularity { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let (taylor, census, census_error) = match geodesic_census(g, len) {
        Ok(c) => {
            let series = series_from_census(&c).iter().map(|x| x.to_string()).collect();
            let taylor = closed_form_taylor(pu, len)?.iter().map(|x| x.to_string()).collect();
            (Some(taylor), Some(series), None)
        }
        Err(e @ Error::ResourceLimit(_)) => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(OracleRun {
        u,
        theta_samples: samples,
        closed_form_inverse: z.inv(),
        theta_side,
        theta_error,
        census_length: len,
        taylor,
        census,
        census_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use l2zeta::fixtures;

    #[test]
    fn locations_serialize_as_documented() {
        let inf: Location = Point::Infinity.into();
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"inf\"");
        let z: Location = Point::Finite(Complex64::new(0.5, -0.0)).into();
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"re":0.5,"im":0.0}"#);
        let back: Location = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(back, inf);
        let q = Regularity::NonRegular(NonRegular::NonRegular);
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"non-regular\"");
    }

    #[test]
    fn report_round_trip_is_byte_identical() {
        let r = analyze(&fixtures::sawtooth(), &AnalyzeOptions { symbolic: true }).unwrap();
        let a = r.to_json();
        let b = AnalysisReport::from_json(&a).unwrap().to_json();
        assert_eq!(a, b);
        assert_eq!(r.surface.genus, 3);
        assert!(!r.surface.galois);
    }

    #[test]
    fn line_report() {
        let r = analyze(&fixtures::line(), &AnalyzeOptions { symbolic: true }).unwrap();
        assert!(r.zeta_identically_one);
        assert_eq!((r.surface.d, r.surface.genus), (1, 0));
        let o = r.oracles;
        assert!(o.theta_residual.unwrap() < 1e-10);
        assert_eq!(o.census_match, Some(true));
    }
}
