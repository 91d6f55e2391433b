use std::fmt::Write;

use crate::algebra::{Algebra, Element};

/// Nodes and covering pairs `(lower, upper)` over `elements`, using the
/// algebra's order restricted to those elements.
pub fn covers(alg: &Algebra, elements: &[Element]) -> Vec<(usize, usize)> {
    let n = elements.len();
    let lt: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && alg.leq_unchecked(&elements[i], &elements[j]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && !(0..n).any(|k| lt[i][k] && lt[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT source for the Hasse diagram. `truncated` records the sampling bound
/// of a symbolic carrier.
pub fn dot(alg: &Algebra, elements: &[Element], truncated: Option<usize>) -> (String, usize) {
    let mut s = String::new();
    writeln!(s, "// Hasse diagram of {}", alg.name()).unwrap();
    if let Some(n) = truncated {
        writeln!(s, "// truncated at bound {n}: only sampled elements are drawn").unwrap();
    }
    writeln!(s, "digraph hasse {{").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    let names: Vec<String> = elements.iter().map(|e| alg.render(e)).collect();
    for name in &names {
        writeln!(s, "  {};", quote(name)).unwrap();
    }
    let edges = covers(alg, elements);
    for (i, j) in &edges {
        writeln!(s, "  {} -> {};", quote(&names[*i]), quote(&names[*j])).unwrap();
    }
    writeln!(s, "}}").unwrap();
    (s, edges.len())
}
