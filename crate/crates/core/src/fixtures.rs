//! Example graphs bundled with the crate.

use crate::graph::VoltageGraph;

pub const LINE: &str = include_str!("../fixtures/line.json");
pub const SAWTOOTH: &str = include_str!("../fixtures/sawtooth.json");
pub const TRILADDER: &str = include_str!("../fixtures/triladder.json");
pub const TABLE1: [&str; 6] = [
    include_str!("../fixtures/table1_row1.json"),
    include_str!("../fixtures/table1_row2.json"),
    include_str!("../fixtures/table1_row3.json"),
    include_str!("../fixtures/table1_row4.json"),
    include_str!("../fixtures/table1_row5.json"),
    include_str!("../fixtures/table1_row6.json"),
];

fn load(text: &str) -> VoltageGraph {
    VoltageGraph::parse(text).expect("bundled fixture parses")
}

/// The integer line `n -- n+1`.
pub fn line() -> VoltageGraph {
    load(LINE)
}

/// Two-row ladder with diagonal rungs, 4-regular.
pub fn sawtooth() -> VoltageGraph {
    load(SAWTOOTH)
}

/// Cartesian product of the line with a triangle.
pub fn triladder() -> VoltageGraph {
    load(TRILADDER)
}

/// Rows 1 through 6 of the table of degree-one examples.
pub fn table1(row: usize) -> VoltageGraph {
    assert!((1..=6).contains(&row), "table rows are 1..=6");
    load(TABLE1[row - 1])
}

/// Every bundled graph with a short name.
pub fn all() -> Vec<(String, VoltageGraph)> {
    let mut out = vec![("line".to_string(), line())];
    for row in 1..=6 {
        out.push((format!("table1_row{row}"), table1(row)));
    }
    out.push(("sawtooth".to_string(), sawtooth()));
    out.push(("triladder".to_string(), triladder()));
    out
}
