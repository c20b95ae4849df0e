//! Graphviz export: gates are nodes ranked by layer, wires are labelled
//! edges, and the boundary words become point nodes at the bottom and top.

use std::fmt::Write;

use proofdiag::sequential::{PortGraph, Target};
use proofdiag::Diagram;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(d: &Diagram) -> String {
    let c = d.canonical_form();
    let g = PortGraph::new(&c);
    let layers: Vec<usize> = c.gates().map(|r| r.layer).collect();
    let input = c.input();
    let output = c.output();
    let mut out = String::from("digraph diagram {\n  rankdir=BT;\n  node [shape=box];\n");

    let points = |out: &mut String, prefix: &str, n: usize| {
        if n > 0 {
            let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
            writeln!(out, "  {{ rank=same; node [shape=point]; {}; }}", names.join("; ")).unwrap();
        }
    };
    points(&mut out, "in", input.len());
    for layer in 0..c.layers().len() {
        let members: Vec<String> = (0..g.len()).filter(|&i| layers[i] == layer).map(|i| format!("g{i}")).collect();
        if !members.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
        }
    }
    for (i, s) in g.steps.iter().enumerate() {
        writeln!(out, "  g{i} [label={}];", quote(&s.gate.to_string())).unwrap();
    }
    points(&mut out, "out", output.len());

    let target_name = |t: Target| match t {
        Target::Output(k) => format!("out{k}"),
        Target::Port { gate, .. } => format!("g{gate}"),
    };
    for (j, t) in g.input_targets.iter().enumerate() {
        writeln!(out, "  in{j} -> {} [label={}];", target_name(*t), quote(&input[j].to_string())).unwrap();
    }
    for (i, s) in g.steps.iter().enumerate() {
        let cod = s.gate.codomain();
        for (port, t) in g.outputs[i].iter().enumerate() {
            writeln!(out, "  g{i} -> {} [label={}];", target_name(*t), quote(&cod[port].to_string())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
