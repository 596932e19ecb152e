//! Voltage graphs: a finite quotient `X` with integer shifts describing a
//! ℤ-periodic graph `Y`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::Value;

use crate::algebra::{laurent_det, to_x_basis, LaurentPoly, UPoly, XPoly};
use crate::error::{Error, Result};

/// An undirected edge stored in a fixed orientation. Walking it from `to`
/// back to `from` uses shift `-shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub shift: i64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    /// `v − e` of the quotient.
    pub chi: i64,
    /// `q` when every vertex has degree `q + 1`.
    pub q: Option<i64>,
}

/// `I − δu + Qu²` over ℤ[u][t, t⁻¹].
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaU {
    pub matrix: Vec<Vec<LaurentPoly>>,
}

impl DeltaU {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn det(&self) -> LaurentPoly {
        laurent_det(&self.matrix)
    }

    /// `P_u` with `det Δ_u = P_u((t + t⁻¹)/2)`.
    pub fn p_u(&self) -> Result<XPoly> {
        to_x_basis(&self.det())
    }

    /// Entry `(i, j)` at `t^k` equals entry `(j, i)` at `t^{-k}`.
    pub fn is_transpose_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i].mirror()))
    }
}

impl VoltageGraph {
    pub fn new(labels: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        for (k, e) in edges.iter().enumerate() {
            for end in [e.from, e.to] {
                if end >= labels.len() {
                    return Err(Error::UnknownVertex {
                        edge: k,
                        vertex: format!("#{end}"),
                    });
                }
            }
        }
        Ok(VoltageGraph { labels, edges })
    }

    /// Parses `{"vertices": [...], "edges": [{"from", "to", "shift"}, ...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::MalformedGraph("top level must be an object".into()))?;
        let verts = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedGraph("\"vertices\" must be an array of strings".into()))?;
        let mut labels = Vec::with_capacity(verts.len());
        for (k, v) in verts.iter().enumerate() {
            let s = v
                .as_str()
                .ok_or_else(|| Error::MalformedGraph(format!("vertex {k} is not a string")))?;
            labels.push(s.to_string());
        }
        if labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != labels.len() {
            let dup = labels
                .iter()
                .enumerate()
                .find(|(i, l)| index[l.as_str()] != *i)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            return Err(Error::DuplicateVertex(dup));
        }
        let raw_edges = match obj.get("edges") {
            None => Vec::new(),
            Some(v) => v
                .as_array()
                .ok_or_else(|| Error::MalformedGraph("\"edges\" must be an array".into()))?
                .clone(),
        };
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (k, e) in raw_edges.iter().enumerate() {
            let end = |name: &str| -> Result<usize> {
                let label = e
                    .get(name)
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::MalformedGraph(format!("edge {k}: missing string field \"{name}\"")))?;
                index.get(label).copied().ok_or_else(|| Error::UnknownVertex {
                    edge: k,
                    vertex: label.to_string(),
                })
            };
            let from = end("from")?;
            let to = end("to")?;
            let shift = match e.get("shift") {
                None => return Err(Error::MalformedGraph(format!("edge {k}: missing field \"shift\""))),
                Some(s) => s.as_i64().ok_or_else(|| Error::NonIntegerShift {
                    edge: k,
                    value: s.to_string(),
                })?,
            };
            edges.push(Edge { from, to, shift });
        }
        VoltageGraph::new(labels, edges)
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "from": self.labels[e.from],
                    "to": self.labels[e.to],
                    "shift": e.shift,
                })
            })
            .collect();
        serde_json::json!({ "vertices": self.labels, "edges": edges }).to_string()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge endpoints per vertex; a loop counts twice.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d = vec![0; self.labels.len()];
        for e in &self.edges {
            d[e.from] += 1;
            d[e.to] += 1;
        }
        d
    }

    pub fn invariants(&self) -> GraphInvariants {
        let deg = self.degrees();
        let q = deg.iter().all(|&d| d == deg[0]).then(|| deg[0] - 1);
        GraphInvariants {
            chi: self.vertex_count() as i64 - self.edge_count() as i64,
            q,
        }
    }

    /// Re-lift with vertex potentials: the edge `i → j` gets shift
    /// `s + k_j − k_i`. The quotient and `Y` are unchanged up to isomorphism.
    pub fn with_potentials(&self, k: &[i64]) -> VoltageGraph {
        assert_eq!(k.len(), self.vertex_count());
        VoltageGraph {
            labels: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    shift: e.shift + k[e.to] - k[e.from],
                    ..*e
                })
                .collect(),
        }
    }

    /// `δ(t)`: the edge `i → j` with shift `s` adds `t^s` at `(i, j)` and
    /// `t^{-s}` at `(j, i)`; a loop adds `t^s + t^{-s}` on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.vertex_count();
        let mut m = vec![vec![LaurentPoly::zero(); n]; n];
        let one = UPoly::one();
        for e in &self.edges {
            m[e.from][e.to].add_term(e.shift, &one);
            m[e.to][e.from].add_term(-e.shift, &one);
        }
        m
    }

    pub fn delta_u(&self) -> DeltaU {
        let mut m = self.adjacency();
        let minus_u = UPoly::monomial(-1, 1);
        for row in m.iter_mut() {
            for entry in row.iter_mut() {
                *entry = entry.scale(&minus_u);
            }
        }
        for (i, d) in self.degrees().into_iter().enumerate() {
            let diag = UPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(0), BigInt::from(d - 1)]);
            m[i][i].add_term(0, &diag);
        }
        DeltaU { matrix: m }
    }

    /// `P_u(x)`.
    pub fn p_u(&self) -> Result<XPoly> {
        self.delta_u().p_u()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, &[i64])]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, UPoly::from_i64s(c))))
    }

    #[test]
    fn parse_line_and_two_loops() {
        let line = fixtures::line();
        assert_eq!(line.vertex_count(), 1);
        assert_eq!(line.adjacency(), vec![vec![lp(&[(1, &[1]), (-1, &[1])])]]);
        let g1 = fixtures::table1(1);
        assert_eq!(g1.adjacency(), vec![vec![lp(&[(1, &[1]), (0, &[2]), (-1, &[1])])]]);
    }

    #[test]
    fn sawtooth_adjacency() {
        let s = fixtures::sawtooth();
        let t_sym = lp(&[(1, &[1]), (-1, &[1])]);
        let expected = vec![
            vec![t_sym.clone(), lp(&[(0, &[1]), (-1, &[1])])],
            vec![lp(&[(0, &[1]), (1, &[1])]), t_sym],
        ];
        assert_eq!(s.adjacency(), expected);
    }

    #[test]
    fn delta_u_examples() {
        let line = fixtures::line().delta_u();
        assert_eq!(line.matrix[0][0], lp(&[(0, &[1, 0, 1]), (1, &[0, -1]), (-1, &[0, -1])]));
        let g1 = fixtures::table1(1).delta_u();
        assert_eq!(g1.matrix[0][0], lp(&[(0, &[1, -2, 3]), (1, &[0, -1]), (-1, &[0, -1])]));
        let saw = fixtures::sawtooth().delta_u();
        assert_eq!(saw.matrix[1][1], lp(&[(0, &[1, 0, 3]), (1, &[0, -1]), (-1, &[0, -1])]));
        for g in fixtures::all() {
            let d = g.1.delta_u();
            assert!(d.is_transpose_symmetric(), "{}", g.0);
            for (i, row) in d.matrix.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let at0 = e.eval(Complex64::new(0.0, 0.0), Complex64::new(0.7, 0.2));
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((at0 - want).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn invariants_match_table() {
        assert_eq!(fixtures::table1(1).invariants(), GraphInvariants { chi: -1, q: Some(3) });
        assert_eq!(fixtures::line().invariants(), GraphInvariants { chi: 0, q: Some(1) });
        assert_eq!(fixtures::table1(6).invariants(), GraphInvariants { chi: -2, q: None });
        let rows = [(2, -3, 4), (3, -2, 2), (4, -2, 3), (5, -1, 3)];
        for (row, chi, q) in rows {
            assert_eq!(fixtures::table1(row).invariants(), GraphInvariants { chi, q: Some(q) });
        }
    }

    #[test]
    fn parse_errors_are_located() {
        let bad = r#"{"vertices":["a"],"edges":[{"from":"a","to":"z","shift":0}]}"#;
        match VoltageGraph::parse(bad) {
            Err(Error::UnknownVertex { edge: 0, vertex }) => assert_eq!(vertex, "z"),
            other => panic!("{other:?}"),
        }
        let frac = r#"{"vertices":["a"],"edges":[{"from":"a","to":"a","shift":0},{"from":"a","to":"a","shift":1.5}]}"#;
        assert!(matches!(VoltageGraph::parse(frac), Err(Error::NonIntegerShift { edge: 1, .. })));
        assert!(matches!(VoltageGraph::parse(r#"{"vertices":[],"edges":[]}"#), Err(Error::EmptyVertexSet)));
        match VoltageGraph::parse("{\"vertices\": [\"a\"],\n \"edges\": [}") {
            Err(Error::Json { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            VoltageGraph::parse(r#"{"vertices":["a","a"],"edges":[]}"#),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(VoltageGraph::parse(r#"{"vertices":["a"],"edges":[{"from":"a","to":"a","shift":"1"}]}"#)
            .unwrap_err()
            .is_validation());
    }

    #[test]
    fn json_round_trip() {
        for (name, g) in fixtures::all() {
            assert_eq!(VoltageGraph::parse(&g.to_json()).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn p_u_at_zero_is_one() {
        for (name, g) in fixtures::all() {
            let p = g.p_u().unwrap();
            for (k, c) in p.coeffs().iter().enumerate() {
                let want = if k == 0 { 1 } else { 0 };
                assert_eq!(c.coeff(0), BigInt::from(want), "{name}: x^{k}");
            }
        }
    }

    #[test]
    fn degree_in_x_is_t_bandwidth() {
        for (name, g) in fixtures::all() {
            let det = g.delta_u().det();
            assert_eq!(g.p_u().unwrap().degree() as i64, det.max_degree().unwrap(), "{name}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn p_u_is_lift_independent(which in 0usize..9, pots in proptest::collection::vec(-3i64..=3, 4)) {
            let (_, g) = fixtures::all().swap_remove(which);
            let k = &pots[..g.vertex_count()];
            prop_assert_eq!(g.with_potentials(k).p_u().unwrap(), g.p_u().unwrap());
        }
    }
}
