//! Sheet permutations from analytic continuation of the roots of Ω around
//! small loops.
//!
//! Every loop is a lasso: a path out from the base point, one counterclockwise
//! circle around the candidate, and the same path back. Paths are straight
//! segments; where a segment crosses another candidate's disk it follows that
//! disk's boundary on the side away from the centre, or on the left when the
//! centre is on the segment. That is the straight-line star of a slightly
//! perturbed configuration, so the lassos generate the fundamental group.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::branch::Point;
use super::omega::OmegaPoly;
use crate::error::{Error, Result};

/// Default base point.
pub const BASE_POINT: f64 = 0.05;
/// Initial number of steps per circle.
pub const STEPS_PER_LOOP: usize = 64;
/// Smallest parameter step before giving up.
pub const MIN_STEP: f64 = 1e-9;
/// Upper bound on loop radii.
pub const MAX_RADIUS: f64 = 0.1;

/// `perm[i] = j` means sheet `i` ends on sheet `j` after one loop.
pub type Perm = Vec<usize>;

#[derive(Clone, Copy, Debug)]
enum Piece {
    Line(Complex64, Complex64),
    Arc { c: Complex64, r: f64, a0: f64, a1: f64 },
}

impl Piece {
    fn at(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Line(a, b) => a + (b - a) * s,
            Piece::Arc { c, r, a0, a1 } => c + Complex64::from_polar(r, a0 + (a1 - a0) * s),
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Piece::Line(a, b) => (b - a).norm(),
            Piece::Arc { r, a0, a1, .. } => r * (a1 - a0).abs(),
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Line(a, b) => Piece::Line(b, a),
            Piece::Arc { c, r, a0, a1 } => Piece::Arc { c, r, a0: a1, a1: a0 },
        }
    }
}

/// A disk around a candidate that paths must not enter.
#[derive(Clone, Copy, Debug)]
struct Disk {
    c: Complex64,
    r: f64,
}

/// Segment from `a` to `b` with detours around the disks it crosses.
fn route(a: Complex64, b: Complex64, disks: &[Disk]) -> Vec<Piece> {
    let len = (b - a).norm();
    if len == 0.0 {
        return Vec::new();
    }
    let dir = (b - a) / len;
    let mut hits: Vec<(f64, f64, Disk)> = Vec::new();
    for d in disks {
        // |a + t·dir − c|² = r²
        let w = a - d.c;
        let bq = (w * dir.conj()).re;
        let cq = w.norm_sqr() - d.r * d.r;
        let disc = bq * bq - cq;
        if disc <= 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        let (t0, t1) = (-bq - sq, -bq + sq);
        if t1 <= 0.0 || t0 >= len {
            continue;
        }
        hits.push((t0.max(0.0), t1.min(len), *d));
    }
    hits.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = Vec::new();
    let mut cur = a;
    for (t0, t1, d) in hits {
        let entry = a + dir * t0;
        let exit = a + dir * t1;
        if (entry - cur).norm() > 0.0 {
            out.push(Piece::Line(cur, entry));
        }
        let side = ((d.c - a) * dir.conj()).im;
        let tie = 1e-9 * (1.0 + d.c.norm());
        // pass on the side away from the centre; a centre on the line is kept on the right
        let via = if side > tie { d.c - Complex64::i() * dir * d.r } else { d.c + Complex64::i() * dir * d.r };
        let a0 = (entry - d.c).arg();
        let am = (via - d.c).arg();
        let cw = (a0 - (exit - d.c).arg()).rem_euclid(TAU);
        let span = ((exit - d.c).arg() - a0).rem_euclid(TAU);
        let mid = (am - a0).rem_euclid(TAU);
        let a1 = if mid <= span { a0 + span } else { a0 - cw };
        out.push(Piece::Arc { c: d.c, r: d.r, a0, a1 });
        cur = exit;
    }
    if (b - cur).norm() > 0.0 {
        out.push(Piece::Line(cur, b));
    }
    out
}

/// Geometry for the loops around a fixed candidate set.
#[derive(Clone, Debug)]
pub struct LoopPlan {
    pub base: Complex64,
    finite: Vec<Complex64>,
    radii: Vec<f64>,
    /// Radius of the circle standing in for a small loop around ∞.
    pub big_radius: f64,
}

impl LoopPlan {
    pub fn new(base: Complex64, candidates: &[Point]) -> Result<Self> {
        let finite: Vec<Complex64> = candidates.iter().filter_map(Point::finite).collect();
        let mut radii = Vec::with_capacity(finite.len());
        for (i, &c) in finite.iter().enumerate() {
            let to_base = (c - base).norm();
            if to_base < 1e-8 {
                return Err(Error::BaseIsCandidate(base));
            }
            let nearest = finite
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &o)| (o - c).norm())
                .fold(f64::INFINITY, f64::min);
            radii.push((0.5 * nearest).min(0.5 * to_base).min(MAX_RADIUS));
        }
        let far = finite.iter().map(|c| c.norm()).fold(base.norm(), f64::max);
        // a circle of radius 1/ρ about u = 0 is a circle of radius ρ about w = 1/u = 0
        let big_radius = (2.0 * far).max(1.0 / MAX_RADIUS);
        Ok(LoopPlan { base, finite, radii, big_radius })
    }

    /// Loop radius for a finite point; a point that is not a candidate gets
    /// the same rule applied against every candidate.
    pub fn radius_for(&self, c: Complex64) -> f64 {
        if let Some(i) = self.finite.iter().position(|&z| (z - c).norm() < 1e-12) {
            return self.radii[i];
        }
        let nearest = self.finite.iter().map(|o| (o - c).norm()).fold(f64::INFINITY, f64::min);
        (0.5 * nearest).min(0.5 * (c - self.base).norm()).min(MAX_RADIUS)
    }

    fn obstacles(&self, except: Option<Complex64>) -> Vec<Disk> {
        self.finite
            .iter()
            .zip(&self.radii)
            .filter(|(c, _)| except.is_none_or(|e| (*c - e).norm() >= 1e-12))
            .map(|(&c, &r)| Disk { c, r })
            .collect()
    }

    fn lasso(&self, at: Point) -> (Vec<Piece>, f64) {
        let (center, radius, except) = match at {
            Point::Finite(c) => (c, self.radius_for(c), Some(c)),
            Point::Infinity => (Complex64::new(0.0, 0.0), self.big_radius, None),
        };
        let toward = if (self.base - center).norm() > 0.0 {
            (self.base - center) / (self.base - center).norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let start = center + toward * radius;
        let out = route(self.base, start, &self.obstacles(except));
        let a0 = toward.arg();
        let mut pieces = out.clone();
        pieces.push(Piece::Arc { c: center, r: radius, a0, a1: a0 + TAU });
        pieces.extend(out.iter().rev().map(Piece::reversed));
        (pieces, TAU * radius / STEPS_PER_LOOP as f64)
    }

    /// Path from the base to `target` avoiding every candidate disk.
    fn path_to(&self, target: Complex64) -> Vec<Piece> {
        route(self.base, target, &self.obstacles(None))
    }
}

/// Roots of the working Ω along a path.
pub struct Tracker<'a> {
    omega: &'a OmegaPoly,
}

fn nearest(zs: &[Complex64], z: Complex64) -> (usize, f64) {
    zs.iter()
        .enumerate()
        .map(|(j, w)| (j, (w - z).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty root list")
}

impl<'a> Tracker<'a> {
    pub fn new(omega: &'a OmegaPoly) -> Self {
        Tracker { omega }
    }

    /// Base roots in a fixed order (real part, then imaginary part).
    pub fn base_roots(&self, base: Complex64) -> Result<Vec<Complex64>> {
        let mut r = self.omega.working_roots(base, None)?;
        r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(r)
    }

    /// One accepted step: the new roots in the order of `old`, or `None` if
    /// the matching is not unambiguous.
    fn step(&self, old: &[Complex64], u: Complex64) -> Result<Option<Vec<Complex64>>> {
        let fresh = match self.omega.working_roots(u, Some(old)) {
            Ok(r) => r,
            Err(Error::RootsDidNotConverge(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if fresh.len() != old.len() {
            return Ok(None);
        }
        let mut used = vec![false; fresh.len()];
        let mut out = Vec::with_capacity(old.len());
        for (i, &z) in old.iter().enumerate() {
            let (j, motion) = nearest(&fresh, z);
            if used[j] {
                return Ok(None);
            }
            used[j] = true;
            let gap = old
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, w)| (w - z).norm())
                .fold(f64::INFINITY, f64::min);
            if 3.0 * motion >= gap {
                return Ok(None);
            }
            out.push(fresh[j]);
        }
        Ok(Some(out))
    }

    fn follow(&self, pieces: &[Piece], spacing: f64, start: Vec<Complex64>) -> Result<Vec<Complex64>> {
        let mut roots = start;
        for piece in pieces {
            let steps = (piece.length() / spacing).ceil().max(4.0);
            let h_max = 1.0 / steps;
            let (mut s, mut h) = (0.0f64, h_max);
            while s < 1.0 {
                let next = (s + h).min(1.0);
                match self.step(&roots, piece.at(next))? {
                    Some(r) => {
                        roots = r;
                        s = next;
                        h = (2.0 * h).min(h_max);
                    }
                    None => {
                        h *= 0.5;
                        if h < MIN_STEP {
                            let at = piece.at(s);
                            let gap = roots
                                .iter()
                                .enumerate()
                                .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).norm()))
                                .fold(f64::INFINITY, f64::min);
                            return Err(Error::CoincidentPath {
                                at,
                                detail: format!("minimal root gap {gap:.3e} with step below {MIN_STEP:e}"),
                            });
                        }
                    }
                }
            }
        }
        Ok(roots)
    }

    /// Continues `start` (roots at the base) along the lasso around `at`.
    pub fn around(&self, plan: &LoopPlan, at: Point, start: &[Complex64]) -> Result<Vec<Complex64>> {
        let (pieces, spacing) = plan.lasso(at);
        self.follow(&pieces, spacing, start.to_vec())
    }

    /// Continues `start` from the base to `target` avoiding candidate disks.
    pub fn to_point(&self, plan: &LoopPlan, target: Complex64, start: &[Complex64]) -> Result<Vec<Complex64>> {
        let spacing = TAU * plan.radius_for(target).max(1e-3) / STEPS_PER_LOOP as f64;
        self.follow(&plan.path_to(target), spacing, start.to_vec())
    }
}

/// Identifies continued roots with the base roots.
pub fn match_to_base(base: &[Complex64], end: &[Complex64], at: Point) -> Result<Perm> {
    let mut perm = Vec::with_capacity(end.len());
    let mut used = vec![false; base.len()];
    for z in end {
        let (j, d) = nearest(base, *z);
        if used[j] || d > 1e-6 * (1.0 + z.norm()) {
            return Err(Error::CoincidentPath {
                at: at.finite().unwrap_or(Complex64::new(f64::INFINITY, 0.0)),
                detail: format!("loop did not close onto the base roots (distance {d:.3e})"),
            });
        }
        used[j] = true;
        perm.push(j);
    }
    Ok(perm)
}

/// Sheet permutation of one loop around `at`.
pub fn monodromy_at(omega: &OmegaPoly, plan: &LoopPlan, at: Point) -> Result<Perm> {
    let t = Tracker::new(omega);
    let base = t.base_roots(plan.base)?;
    let end = t.around(plan, at, &base)?;
    match_to_base(&base, &end, at)
}

/// Permutations at every candidate, computed in parallel.
pub fn monodromy_all(omega: &OmegaPoly, plan: &LoopPlan, candidates: &[Point]) -> Result<Vec<Perm>> {
    let t = Tracker::new(omega);
    let base = t.base_roots(plan.base)?;
    candidates
        .par_iter()
        .map(|&c| {
            let end = t.around(plan, c, &base)?;
            match_to_base(&base, &end, c)
        })
        .collect()
}

/// Cycle lengths of `perm` on `subset`, sorted descending.
pub fn cycle_type(perm: &[usize], subset: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for &s in subset {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Orbits of the group generated by `perms` on `0..n`, each sorted.
pub fn orbits(n: usize, perms: &[Perm]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut orbit = vec![s];
        label[s] = out.len();
        let mut k = 0;
        while k < orbit.len() {
            let i = orbit[k];
            for p in perms {
                let j = p[i];
                if label[j] == usize::MAX {
                    label[j] = out.len();
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::branch::branch_candidates;
    use crate::zeta::PuData;

    fn setup(g: &crate::graph::VoltageGraph) -> (OmegaPoly, Vec<Point>, LoopPlan) {
        let o = OmegaPoly::new(PuData::from_graph(g).unwrap(), true).unwrap();
        let pts: Vec<Point> = branch_candidates(&o).unwrap().into_iter().map(|c| c.point).collect();
        let plan = LoopPlan::new(Complex64::new(BASE_POINT, 0.0), &pts).unwrap();
        (o, pts, plan)
    }

    #[test]
    fn route_avoids_disks() {
        let disks = [Disk { c: Complex64::new(1.0, 0.0), r: 0.2 }, Disk { c: Complex64::new(2.0, 0.05), r: 0.1 }];
        let pieces = route(Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0), &disks);
        assert_eq!(pieces.len(), 5);
        for p in &pieces {
            for k in 0..=100 {
                let z = p.at(k as f64 / 100.0);
                for d in &disks {
                    assert!((z - d.c).norm() >= d.r - 1e-12);
                }
            }
        }
        // centre on the segment: detour on the left, keeping the centre on the right
        let Piece::Arc { c, r, a0, a1 } = pieces[1] else { panic!() };
        let mid = c + Complex64::from_polar(r, 0.5 * (a0 + a1));
        assert!(mid.im > 0.0);
        // centre above the segment: pass below it
        let Piece::Arc { c, r, a0, a1 } = pieces[3] else { panic!() };
        let mid = c + Complex64::from_polar(r, 0.5 * (a0 + a1));
        assert!(mid.im < 0.0);
        assert!((pieces[4].at(1.0) - Complex64::new(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sawtooth_cycle_types() {
        let (o, _, plan) = setup(&fixtures::sawtooth());
        let all: Vec<usize> = (0..4).collect();
        let at_one = monodromy_at(&o, &plan, Point::Finite(Complex64::new(1.0, 0.0))).unwrap();
        assert_eq!(cycle_type(&at_one, &all), vec![2, 2]);
        let at_zero = monodromy_at(&o, &plan, Point::Finite(Complex64::new(0.0, 0.0))).unwrap();
        assert_eq!(cycle_type(&at_zero, &all), vec![2, 1, 1]);
        let at_inf = monodromy_at(&o, &plan, Point::Infinity).unwrap();
        assert_eq!(cycle_type(&at_inf, &all), vec![2, 1, 1]);
    }

    #[test]
    fn regular_point_is_identity() {
        let (o, _, plan) = setup(&fixtures::sawtooth());
        let p = monodromy_at(&o, &plan, Point::Finite(Complex64::new(0.2, 0.3))).unwrap();
        assert_eq!(p, vec![0, 1, 2, 3]);
    }

    #[test]
    fn product_of_all_loops_is_trivial_on_cycle_count() {
        // the total branching over the sphere is even
        let (o, pts, plan) = setup(&fixtures::table1(1));
        let perms = monodromy_all(&o, &plan, &pts).unwrap();
        let all: Vec<usize> = (0..o.working_degree()).collect();
        let b: usize = perms.iter().map(|p| cycle_type(p, &all).iter().map(|c| c - 1).sum::<usize>()).sum();
        assert_eq!(b % 2, 0);
        assert_eq!(b, 4);
    }

    #[test]
    fn orbit_and_cycle_helpers() {
        let p = vec![1, 0, 2, 4, 3];
        assert_eq!(cycle_type(&p, &[0, 1, 2, 3, 4]), vec![2, 2, 1]);
        assert_eq!(cycle_type(&p, &[0, 1, 2]), vec![2, 1]);
        assert_eq!(orbits(5, &[p]), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
