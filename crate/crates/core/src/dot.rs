//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

/// Renders a Hasse diagram. `covers` holds `(lower, upper)` index pairs;
/// the drawing puts lower elements at the bottom.
pub fn hasse_dot(graph_name: &str, labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", escape_id(graph_name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape_label(label)).unwrap();
    }
    for &(lo, hi) in covers {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Cover pairs of a finite order given as a `less_or_equal` predicate.
pub fn covers(len: usize, le: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && le(a, b);
    let mut out = Vec::new();
    for a in 0..len {
        for b in 0..len {
            if lt(a, b) && !(0..len).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn escape_label(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn escape_id(s: &str) -> String {
    let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        s.to_string()
    } else {
        format!("\"{}\"", escape_label(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_covers() {
        let c = covers(3, |a, b| a <= b);
        assert_eq!(c, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn renders_nodes_and_edges() {
        let dot = hasse_dot("x", &["{0}".into(), "say \"hi\"".into()], &[(0, 1)]);
        assert!(dot.starts_with("digraph x {"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("say \\\"hi\\\""));
        assert!(dot.ends_with("}\n"));
    }
}
