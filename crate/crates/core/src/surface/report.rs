//! The Φ-component, genus, Galois and C-set checks, and the functional
//! equation.

use std::collections::HashSet;

use num_complex::Complex64;

use super::branch::{branch_candidates, dedup, Origin, Point};
use super::monodromy::{cycle_type, monodromy_all, orbits, LoopPlan, Perm, Tracker, BASE_POINT};
use super::omega::{base_sheet_value, sheet_values, OmegaPoly};
use crate::error::{Error, Result};
use crate::graph::VoltageGraph;
use crate::zeta::{sheet_prefactor, PuData};

/// Tolerance for membership in the set C.
pub const C_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct SurfaceOptions {
    pub base: Complex64,
    /// Use the exact Ω when `n ≤ n_max`.
    pub symbolic: bool,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        SurfaceOptions {
            base: Complex64::new(BASE_POINT, 0.0),
            symbolic: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoint {
    pub location: Point,
    /// Cycle lengths on the Φ-component, descending; they sum to `d`.
    pub cycle_structure: Vec<usize>,
    pub branching_order: usize,
    /// Membership in C, for regular graphs.
    pub in_c: Option<bool>,
}

/// Monodromy at one candidate, on all sheets and on the Φ-component.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateMonodromy {
    pub location: Point,
    pub origin: Origin,
    pub full_cycle_structure: Vec<usize>,
    pub component_cycle_structure: Vec<usize>,
}

impl CandidateMonodromy {
    pub fn branched(&self) -> bool {
        self.component_cycle_structure.iter().any(|&c| c > 1)
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceReport {
    pub base: Complex64,
    pub symbolic: bool,
    /// 2ⁿ.
    pub total_sheets: usize,
    /// Degree of the square-free Ω that was tracked.
    pub tracked_sheets: usize,
    /// Repeated factors of Ω as (degree, multiplicity); only known exactly on
    /// the symbolic path.
    pub repeated_factors: Vec<(usize, usize)>,
    /// Index of the base sheet among the tracked roots.
    pub base_sheet: usize,
    /// Tracked sheets forming the Φ-component.
    pub component: Vec<usize>,
    pub d: usize,
    pub candidates: Vec<CandidateMonodromy>,
    pub branch_points: Vec<BranchPoint>,
    pub b: usize,
    pub genus: i64,
    pub galois: bool,
    pub omega_irreducible: bool,
    /// Number of orbits of the monodromy group on the tracked sheets.
    pub orbit_count: usize,
    pub q: Option<i64>,
    /// Whether `u ↦ 1/(qu)` maps the Φ-component to itself (regular graphs).
    pub tau_stable: Option<bool>,
}

impl SurfaceReport {
    /// Candidates whose loop leaves the Φ-component's sheets in place.
    pub fn unbranched(&self) -> impl Iterator<Item = &CandidateMonodromy> {
        self.candidates.iter().filter(|c| !c.branched())
    }
}

/// Index of the tracked root matching `W_{−…−}` at the base.
pub fn identify_base_sheet(omega: &OmegaPoly, base: Complex64, roots: &[Complex64]) -> Result<usize> {
    let w = base_sheet_value(&omega.pu, base)?;
    let mut d: Vec<(usize, f64)> = roots.iter().enumerate().map(|(i, z)| (i, (z - w).norm())).collect();
    d.sort_by(|a, b| a.1.total_cmp(&b.1));
    let scale = 1.0 + w.norm();
    if d.len() > 1 && d[1].1 <= 1e-9 * scale {
        return Err(Error::AmbiguousBaseSheet { base, gap: d[1].1 });
    }
    if d[0].1 > 1e-6 * scale {
        return Err(Error::Numeric(format!(
            "no tracked root matches W(-,...,-) = {w} at the base (nearest off by {:.3e})",
            d[0].1
        )));
    }
    Ok(d[0].0)
}

/// Orbit of `base_sheet` under the group generated by `perms`.
pub fn phi_component(perms: &[Perm], sheets: usize, base_sheet: usize) -> Vec<usize> {
    orbits(sheets, perms)
        .into_iter()
        .find(|o| o.contains(&base_sheet))
        .expect("every sheet lies in an orbit")
}

/// Whether the monodromy group acts regularly on `component`: it is
/// transitive there, so the covering is normal exactly when the group
/// restricted to the component has order `d`.
pub fn galois_check(perms: &[Perm], component: &[usize]) -> bool {
    let d = component.len();
    let pos = |s: usize| component.iter().position(|&c| c == s);
    let gens: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| component.iter().map(|&s| pos(p[s]).expect("component is invariant")).collect())
        .collect();
    let id: Vec<usize> = (0..d).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(g) = queue.pop() {
        for h in &gens {
            let gh: Vec<usize> = g.iter().map(|&i| h[i]).collect();
            if seen.insert(gh.clone()) {
                if seen.len() > d {
                    return false;
                }
                queue.push(gh);
            }
        }
    }
    seen.len() == d
}

/// Membership in `{|u| = q^{−1/2}} ∪ [−1, −1/q] ∪ [1/q, 1]`. 0 and ∞ are never in C.
pub fn in_c(p: Point, q: i64) -> bool {
    let Some(u) = p.finite() else { return false };
    let q = q as f64;
    if u.norm() <= C_TOL {
        return false;
    }
    let on_circle = (u.norm() - q.powf(-0.5)).abs() <= C_TOL;
    let a = u.re.abs();
    let on_segment = u.im.abs() <= C_TOL && a >= 1.0 / q - C_TOL && a <= 1.0 + C_TOL;
    on_circle || on_segment
}

/// C-membership per branch point; `None` for non-regular graphs.
pub fn c_set_check(report: &SurfaceReport, q: Option<i64>) -> Option<Vec<bool>> {
    let q = q?;
    Some(report.branch_points.iter().map(|b| in_c(b.location, q)).collect())
}

/// The full pipeline with default options.
pub fn surface_report(g: &VoltageGraph) -> Result<SurfaceReport> {
    surface_report_with(g, SurfaceOptions::default())
}

pub fn surface_report_with(g: &VoltageGraph, opts: SurfaceOptions) -> Result<SurfaceReport> {
    let omega = OmegaPoly::new(PuData::from_graph(g)?, opts.symbolic)?;
    report_for(&omega, opts.base)
}

pub fn report_for(omega: &OmegaPoly, base: Complex64) -> Result<SurfaceReport> {
    let pu = &omega.pu;
    let cands = branch_candidates(omega)?;
    let points: Vec<Point> = cands.iter().map(|c| c.point).collect();
    let plan = LoopPlan::new(base, &points)?;
    let tracker = Tracker::new(omega);
    let roots = tracker.base_roots(base)?;
    let sheets = roots.len();
    let base_sheet = identify_base_sheet(omega, base, &roots)?;
    let perms = monodromy_all(omega, &plan, &points)?;
    let all: Vec<usize> = (0..sheets).collect();
    let component = phi_component(&perms, sheets, base_sheet);
    let d = component.len();
    let candidates: Vec<CandidateMonodromy> = cands
        .iter()
        .zip(&perms)
        .map(|(c, p)| CandidateMonodromy {
            location: c.point,
            origin: c.origin,
            full_cycle_structure: cycle_type(p, &all),
            component_cycle_structure: cycle_type(p, &component),
        })
        .collect();
    let branch_points: Vec<BranchPoint> = candidates
        .iter()
        .filter(|c| c.branched())
        .map(|c| BranchPoint {
            location: c.location,
            branching_order: c.component_cycle_structure.iter().map(|k| k - 1).sum(),
            cycle_structure: c.component_cycle_structure.clone(),
            in_c: pu.q.map(|q| in_c(c.location, q)),
        })
        .collect();
    let b: usize = branch_points.iter().map(|p| p.branching_order).sum();
    let genus = b as i64 / 2 - d as i64 + 1;
    let orbit_count = orbits(sheets, &perms).len();
    let repeated_factors = omega.repeated_factors();
    let repeated = !repeated_factors.is_empty() || pu.factors.iter().any(|(_, m)| *m > 1);
    let tau_stable = match pu.q {
        Some(q) => tau_stability(omega, &plan, &roots, &component, q)?,
        None => None,
    };
    Ok(SurfaceReport {
        base,
        symbolic: omega.is_symbolic(),
        total_sheets: 1 << pu.n,
        tracked_sheets: sheets,
        repeated_factors,
        base_sheet,
        galois: galois_check(&perms, &component),
        component,
        d,
        candidates,
        branch_points,
        b,
        genus,
        omega_irreducible: !repeated && orbit_count == 1,
        orbit_count,
        q: pu.q,
        tau_stable,
    })
}

/// `q^{2e−v} u^{2e} ((1−u²)/(q²u²−1))^{−χ}`, the factor relating `Z` at
/// `1/(qu)` to `Z` at `u`.
pub fn functional_factor(p: &PuData, q: i64, u: Complex64) -> Complex64 {
    let qf = q as f64;
    let (e, v) = (p.edges as i32, p.vertices as i32);
    let ratio = (1.0 - u * u) / (qf * qf * u * u - 1.0);
    qf.powi(2 * e - v) * u.powi(2 * e) * ratio.powi(-p.chi as i32)
}

/// Whether the continuation of the Φ-sheets to `1/(q u_b)` carries exactly
/// the values the functional equation predicts for the image of Φ. `None`
/// when `1/(q u_b)` sits too close to a candidate to be reached.
fn tau_stability(
    omega: &OmegaPoly,
    plan: &LoopPlan,
    roots: &[Complex64],
    component: &[usize],
    q: i64,
) -> Result<Option<bool>> {
    let u = plan.base;
    let target = (u * q as f64).inv();
    if plan.radius_for(target) < 1e-6 {
        return Ok(None);
    }
    let tracker = Tracker::new(omega);
    let moved = tracker.to_point(plan, target, roots)?;
    let factor = functional_factor(&omega.pu, q, u);
    let (pre_u, pre_t) = (sheet_prefactor(&omega.pu, u), sheet_prefactor(&omega.pu, target));
    let there: Vec<Complex64> = component.iter().map(|&i| pre_t * moved[i]).collect();
    let predicted: Vec<Complex64> = component.iter().map(|&i| factor * pre_u * roots[i]).collect();
    Ok(Some(multiset_residual(&there, &predicted) < 1e-6))
}

/// Largest relative mismatch when each of `a` is paired with a distinct
/// nearest element of `b`.
pub fn multiset_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm() / x.norm().max(y.norm()).max(f64::MIN_POSITIVE)))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((j, r)) => {
                used[j] = true;
                worst = worst.max(r);
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Residuals of the functional equation at sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalEqResidual {
    /// Largest multiset-matched relative residual over all sheet values.
    pub max_residual: f64,
    /// Largest `|α(1/(qu))·(qu²)^v/α(u) − 1|`.
    pub alpha_residual: f64,
}

/// Checks `Z(1/(qu)) = q^{2e−v} u^{2e} ((1−u²)/(q²u²−1))^{−χ} Z(u)` sheet by
/// sheet, as multisets over all 2ⁿ values.
pub fn functional_eq_check(g: &VoltageGraph, samples: &[Complex64]) -> Result<FunctionalEqResidual> {
    let p = PuData::from_graph(g)?;
    let q = p.q.ok_or(Error::NotRegular)?;
    let qf = q as f64;
    let mut max_residual: f64 = 0.0;
    let mut alpha_residual: f64 = 0.0;
    for &u in samples {
        let t = (u * qf).inv();
        let at_u: Vec<Complex64> = {
            let pre = sheet_prefactor(&p, u) * functional_factor(&p, q, u);
            sheet_values(&p, u)?.into_iter().map(|w| pre * w).collect()
        };
        let at_t: Vec<Complex64> = {
            let pre = sheet_prefactor(&p, t);
            sheet_values(&p, t)?.into_iter().map(|w| pre * w).collect()
        };
        max_residual = max_residual.max(multiset_residual(&at_t, &at_u));
        let scaled = p.alpha_at(t) * (qf * u * u).powi(p.vertices as i32) / p.alpha_at(u);
        alpha_residual = alpha_residual.max((scaled - 1.0).norm());
    }
    Ok(FunctionalEqResidual {
        max_residual,
        alpha_residual,
    })
}

/// A zero of `P_u(1)` and how it relates to the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleComparison {
    pub u: Complex64,
    pub is_candidate: bool,
    pub branched: bool,
}

/// Where `P_u(1) = 0`: whether each point is a candidate and whether it
/// is branched on the Φ-component.
pub fn pole_comparison(pu: &PuData, report: &SurfaceReport) -> Vec<PoleComparison> {
    let p1 = pu.p.at_x_int(1);
    if p1.is_zero() || p1.is_constant() {
        return Vec::new();
    }
    let mut zs = p1.square_free().complex_roots();
    if p1.low_order() > 0 && !zs.iter().any(|z| z.norm() == 0.0) {
        zs.push(Complex64::new(0.0, 0.0));
    }
    dedup(zs)
        .into_iter()
        .map(|u| {
            let pt = Point::Finite(u);
            let near = |q: &Point| q.close_to(&pt, 1e-8);
            PoleComparison {
                u,
                is_candidate: report.candidates.iter().any(|c| near(&c.location)),
                branched: report.branch_points.iter().any(|b| near(&b.location)),
            }
        })
        .collect()
}

pub fn quotient_pole_compare(g: &VoltageGraph) -> Result<Vec<PoleComparison>> {
    let pu = PuData::from_graph(g)?;
    let omega = OmegaPoly::new(pu.clone(), true)?;
    let report = report_for(&omega, SurfaceOptions::default().base)?;
    Ok(pole_comparison(&pu, &report))
}
