//! Closed geodesics of `Y` up to translation, counted by length.
//!
//! A closed geodesic in `Y` projects to a cyclically reduced non-backtracking
//! cycle in `X` whose shifts sum to zero, and every such cycle lifts to one
//! ℤ-orbit of closed geodesics. Counting is done on `X` with half-edges: each
//! edge, loops included, gives two mutually inverse darts, and a class and its
//! inverse are counted separately.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::VoltageGraph;

/// Walk budget for one census run.
pub const MAX_WALKS: f64 = 2e9;

/// Number of ℤ-orbits of primitive closed geodesics of each length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicCensus {
    pub max_len: usize,
    /// `counts[m]` for `m = 0..=max_len`; `counts[0]` is always 0.
    pub counts: Vec<u64>,
}

impl GeodesicCensus {
    pub fn empty(max_len: usize) -> Self {
        GeodesicCensus {
            max_len,
            counts: vec![0; max_len + 1],
        }
    }
}

/// Directed half-edge.
#[derive(Clone, Copy, Debug)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
    pub shift: i64,
}

/// Darts `2k` and `2k + 1` come from edge `k` and are inverse to each other.
pub fn darts(g: &VoltageGraph) -> Vec<Dart> {
    g.edges()
        .iter()
        .flat_map(|e| {
            [
                Dart { tail: e.from, head: e.to, shift: e.shift },
                Dart { tail: e.to, head: e.from, shift: -e.shift },
            ]
        })
        .collect()
}

pub fn inverse(d: usize) -> usize {
    d ^ 1
}

/// Successor lists of the non-backtracking (Hashimoto) relation.
pub fn successors(ds: &[Dart]) -> Vec<Vec<usize>> {
    (0..ds.len())
        .map(|a| {
            (0..ds.len())
                .filter(|&b| ds[b].tail == ds[a].head && b != inverse(a))
                .collect()
        })
        .collect()
}

fn is_canonical_primitive(w: &[usize]) -> bool {
    let m = w.len();
    for r in 1..m {
        // compare w against its rotation by r
        let mut ord = std::cmp::Ordering::Equal;
        for i in 0..m {
            ord = w[(i + r) % m].cmp(&w[i]);
            if ord != std::cmp::Ordering::Equal {
                break;
            }
        }
        match ord {
            // a smaller rotation exists, or w is periodic (a proper power)
            std::cmp::Ordering::Less | std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Greater => {}
        }
    }
    true
}

struct Search<'a> {
    ds: &'a [Dart],
    next: &'a [Vec<usize>],
    max_shift: i64,
    target: usize,
    counts: Vec<u64>,
}

impl Search<'_> {
    fn walk(&mut self, word: &mut Vec<usize>, voltage: i64) {
        let len = word.len();
        let last = word[len - 1];
        let first = word[0];
        if self.ds[last].head == self.ds[first].tail
            && voltage == 0
            && last != inverse(first)
            && is_canonical_primitive(word)
        {
            self.counts[len] += 1;
        }
        if len == self.target {
            return;
        }
        let remaining = (self.target - len) as i64;
        for &d in &self.next[last] {
            // every word is counted from its least dart, so nothing smaller may follow
            if d < first {
                continue;
            }
            let v = voltage + self.ds[d].shift;
            if v.abs() > self.max_shift * (remaining - 1) {
                continue;
            }
            word.push(d);
            self.walk(word, v);
            word.pop();
        }
    }
}

/// Counts primitive zero-voltage cyclic classes of length `1..=max_len`.
pub fn geodesic_census(g: &VoltageGraph, max_len: usize) -> Result<GeodesicCensus> {
    if max_len == 0 {
        return Err(Error::Numeric("census length must be at least 1".into()));
    }
    let ds = darts(g);
    if ds.is_empty() {
        return Ok(GeodesicCensus::empty(max_len));
    }
    let next = successors(&ds);
    let branching = next.iter().map(Vec::len).max().unwrap_or(0).max(1) as f64;
    let estimate = ds.len() as f64 * branching.powi(max_len as i32 - 1);
    if estimate > MAX_WALKS {
        return Err(Error::ResourceLimit(format!(
            "census to length {max_len} would walk about {estimate:.2e} paths (limit {MAX_WALKS:.0e})"
        )));
    }
    let max_shift = ds.iter().map(|d| d.shift.abs()).max().unwrap_or(0);
    let per_start: Vec<Vec<u64>> = (0..ds.len())
        .into_par_iter()
        .map(|start| {
            let mut s = Search {
                ds: &ds,
                next: &next,
                max_shift,
                target: max_len,
                counts: vec![0; max_len + 1],
            };
            let mut word = vec![start];
            s.walk(&mut word, ds[start].shift);
            s.counts
        })
        .collect();
    let mut counts = vec![0u64; max_len + 1];
    for c in per_start {
        for (a, b) in counts.iter_mut().zip(c) {
            *a += b;
        }
    }
    Ok(GeodesicCensus { max_len, counts })
}

/// Whether `Y` has no closed geodesics, so that `Z ≡ 1`. With two independent
/// cycles in `X` their commutator has voltage zero, so only `χ ≥ 0` can
/// qualify, and then a census up to the edge count decides.
pub fn has_no_geodesics(g: &VoltageGraph) -> Result<bool> {
    if g.invariants().chi < 0 {
        return Ok(false);
    }
    Ok(geodesic_census(g, g.edge_count().max(1))?.counts.iter().all(|&c| c == 0))
}

/// Coefficients of `Π_m (1 − u^m)^{−counts[m]}` through `u^{max_len}`.
pub fn series_from_census(c: &GeodesicCensus) -> Vec<BigInt> {
    let l = c.max_len;
    let mut a = vec![BigInt::from(0); l + 1];
    a[0] = BigInt::from(1);
    for m in 1..=l {
        for _ in 0..c.counts[m] {
            // multiply by 1/(1 − u^m)
            for k in m..=l {
                let prev = a[k - m].clone();
                a[k] += prev;
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeMap;

    /// `[t⁰] tr(B(t)^m)` for the Hashimoto matrix with voltages, then Möbius
    /// inversion to primitive class counts.
    fn census_by_trace(g: &VoltageGraph, max_len: usize) -> Vec<u64> {
        let ds = darts(g);
        let next = successors(&ds);
        let n = ds.len();
        type L = BTreeMap<i64, i64>;
        let mut power: Vec<Vec<L>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { L::from([(0, 1)]) } else { L::new() }).collect())
            .collect();
        let mut closed = vec![0i64; max_len + 1];
        for m in 1..=max_len {
            let mut out = vec![vec![L::new(); n]; n];
            for i in 0..n {
                for k in 0..n {
                    if power[i][k].is_empty() {
                        continue;
                    }
                    for &j in &next[k] {
                        for (&e, &c) in &power[i][k] {
                            *out[i][j].entry(e + ds[j].shift).or_insert(0) += c;
                        }
                    }
                }
            }
            power = out;
            // the voltage of d_1 … d_m is the voltage of the whole cycle
            closed[m] = (0..n).map(|i| power[i][i].get(&0).copied().unwrap_or(0)).sum();
        }
        let mobius = |k: usize| -> i64 {
            let (mut k, mut mu, mut p) = (k, 1i64, 2usize);
            while p * p <= k {
                if k % p == 0 {
                    k /= p;
                    if k % p == 0 {
                        return 0;
                    }
                    mu = -mu;
                }
                p += 1;
            }
            if k > 1 {
                mu = -mu;
            }
            mu
        };
        (0..=max_len)
            .map(|m| {
                if m == 0 {
                    return 0;
                }
                let s: i64 = (1..=m).filter(|d| m % d == 0).map(|d| mobius(m / d) * closed[d]).sum();
                assert_eq!(s % m as i64, 0);
                (s / m as i64) as u64
            })
            .collect()
    }

    #[test]
    fn line_has_no_geodesics() {
        let c = geodesic_census(&fixtures::line(), 10).unwrap();
        assert!(c.counts.iter().all(|&k| k == 0));
    }

    #[test]
    fn trivial_zeta_detection() {
        assert!(has_no_geodesics(&fixtures::line()).unwrap());
        let flat = VoltageGraph::parse(r#"{"vertices":["a"],"edges":[{"from":"a","to":"a","shift":0}]}"#).unwrap();
        assert!(!has_no_geodesics(&flat).unwrap());
        for row in 1..=6 {
            assert!(!has_no_geodesics(&fixtures::table1(row)).unwrap());
        }
    }

    #[test]
    fn graph1_length_one() {
        let c = geodesic_census(&fixtures::table1(1), 1).unwrap();
        assert_eq!(c.counts[1], 2);
    }

    #[test]
    fn length_one_counts_zero_shift_loops() {
        for (name, g) in fixtures::all() {
            let zero_loops = g.edges().iter().filter(|e| e.is_loop() && e.shift == 0).count() as u64;
            assert_eq!(geodesic_census(&g, 1).unwrap().counts[1], 2 * zero_loops, "{name}");
        }
    }

    #[test]
    fn matches_hashimoto_trace() {
        for (name, g) in fixtures::all() {
            let c = geodesic_census(&g, 7).unwrap();
            assert_eq!(c.counts, census_by_trace(&g, 7), "{name}");
        }
    }

    #[test]
    fn relabeling_and_relifting_preserve_counts() {
        let g = fixtures::sawtooth();
        let base = geodesic_census(&g, 7).unwrap();
        assert_eq!(geodesic_census(&g.with_potentials(&[3, -2]), 7).unwrap(), base);
        let swapped = VoltageGraph::parse(
            r#"{"vertices":["b","a"],"edges":[
                {"from":"b","to":"b","shift":1},{"from":"a","to":"a","shift":1},
                {"from":"b","to":"a","shift":0},{"from":"b","to":"a","shift":1}]}"#,
        )
        .unwrap();
        assert_eq!(geodesic_census(&swapped, 7).unwrap(), base);
    }

    #[test]
    fn series_examples() {
        let s = series_from_census(&GeodesicCensus::empty(5));
        assert_eq!(s, [1, 0, 0, 0, 0, 0].map(BigInt::from));
        let mut c = GeodesicCensus::empty(7);
        c.counts[3] = 1;
        assert_eq!(series_from_census(&c), [1, 0, 0, 1, 0, 0, 1, 0].map(BigInt::from));
    }

    #[test]
    fn resource_limit() {
        assert!(matches!(
            geodesic_census(&fixtures::table1(2), 40),
            Err(Error::ResourceLimit(_))
        ));
    }
}
