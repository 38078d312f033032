//! Graphviz rendering of Hasse diagrams.

use std::fmt::Write;

use crate::congruence::Congruence;
use crate::semilattice::Semilattice;

/// Node groups drawn as clusters.
#[derive(Debug, Clone, Copy, Default)]
pub enum Annotation<'a> {
    #[default]
    None,
    /// Named subsets. An element in several subsets is drawn in the first
    /// one and gets a double outline.
    Subsets(&'a [(String, Vec<usize>)]),
    /// One cluster per block.
    Partition(&'a Congruence),
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A DOT digraph of the covering relation, drawn bottom-up. Output depends
/// only on the inputs.
pub fn emit_dot(a: &Semilattice, annotation: Annotation<'_>) -> String {
    let groups: Vec<(String, Vec<usize>)> = match annotation {
        Annotation::None => Vec::new(),
        Annotation::Subsets(sets) => sets.to_vec(),
        Annotation::Partition(theta) => theta
            .blocks()
            .into_iter()
            .enumerate()
            .map(|(i, b)| (format!("block {i}"), b))
            .collect(),
    };
    let mut home: Vec<Option<usize>> = vec![None; a.size()];
    let mut memberships = vec![0usize; a.size()];
    for (g, (_, set)) in groups.iter().enumerate() {
        for &x in set.iter().filter(|&&x| x < a.size()) {
            memberships[x] += 1;
            home[x].get_or_insert(g);
        }
    }
    let node = |x: usize| {
        let extra = if memberships[x] > 1 { ", peripheries=2" } else { "" };
        format!("n{x} [label={}{extra}];", quote(&a.label(x)))
    };

    let mut out = String::new();
    out.push_str("digraph semilattice {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for (g, (name, _)) in groups.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{g} {{");
        let _ = writeln!(out, "    label={};", quote(name));
        for x in a.elements().filter(|&x| home[x] == Some(g)) {
            let _ = writeln!(out, "    {}", node(x));
        }
        out.push_str("  }\n");
    }
    for x in a.elements().filter(|&x| home[x].is_none()) {
        let _ = writeln!(out, "  {}", node(x));
    }
    for (x, y) in a.covers() {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}
