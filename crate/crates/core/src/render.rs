//! Plain-text and Graphviz renderings of Satake and double Satake diagrams.
//! Output depends only on the diagram.

use std::fmt::Write as _;

use crate::double::DoubleSatakeDiagram;
use crate::rootsys::{CartanType, RootSystem};
use crate::sigma::SatakeDiagram;

/// Dynkin edges `(i, j, bond)` with `i < j`. `bond` is 1, 2 or 3 and is
/// negated when the arrow points from `j` to `i` (toward the shorter root).
fn edges(ct: CartanType) -> Vec<(usize, usize, i64)> {
    let rs = RootSystem::shared(ct);
    let c = rs.cartan();
    let l = ct.rank;
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            if c[i][j] != 0 {
                let m = c[i][j] * c[j][i];
                // |c[i][j]| > 1 means alpha_i is the shorter root.
                out.push((i, j, if c[i][j] < -1 { -m } else { m }));
            }
        }
    }
    out
}

fn edge_text(i: usize, j: usize, bond: i64) -> String {
    let (a, b) = (i + 1, j + 1);
    match bond {
        1 => format!("{a}-{b}"),
        2 => format!("{a}=>{b}"),
        3 => format!("{a}~>{b}"),
        -2 => format!("{a}<={b}"),
        _ => format!("{a}<~{b}"),
    }
}

fn nodes_text(s: &SatakeDiagram) -> String {
    (0..s.ctype.rank)
        .map(|k| format!("{}:{}", k + 1, if s.is_black(k) { '*' } else { 'o' }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn arrows_text(s: &SatakeDiagram) -> String {
    if s.arrows.is_empty() {
        return "-".into();
    }
    s.arrows.iter().map(|&(a, b)| format!("{}<->{}", a + 1, b + 1)).collect::<Vec<_>>().join(" ")
}

fn edges_text(ct: CartanType) -> String {
    edges(ct).into_iter().map(|(i, j, b)| edge_text(i, j, b)).collect::<Vec<_>>().join(" ")
}

/// ```text
/// D4
/// edges:  1-2 2-3 2-4
/// nodes:  1:o 2:o 3:o 4:o
/// arrows: 3<->4
/// ```
/// `*` marks a black node; labels are 1-based.
pub fn satake_text(s: &SatakeDiagram) -> String {
    format!("{}\nedges:  {}\nnodes:  {}\narrows: {}\n", s.ctype, edges_text(s.ctype), nodes_text(s), arrows_text(s))
}

pub fn double_text(d: &DoubleSatakeDiagram) -> String {
    let ct = d.ctype();
    format!(
        "{ct}\nedges:     {}\ns1 nodes:  {}\ns1 arrows: {}\ns2 nodes:  {}\ns2 arrows: {}\n",
        edges_text(ct),
        nodes_text(&d.s1),
        arrows_text(&d.s1),
        nodes_text(&d.s2),
        arrows_text(&d.s2)
    )
}

fn dot_body(out: &mut String, s: &SatakeDiagram, prefix: &str, indent: &str) {
    for k in 0..s.ctype.rank {
        let fill = if s.is_black(k) { "black" } else { "white" };
        let _ = writeln!(out, "{indent}{prefix}{} [xlabel=\"α{}\", fillcolor={fill}];", k + 1, k + 1);
    }
    for (i, j, bond) in edges(s.ctype) {
        let attrs = match bond {
            1 => String::new(),
            b => format!(" [label=\"{}\", dir={}]", b.abs(), if b > 0 { "forward" } else { "back" }),
        };
        let _ = writeln!(out, "{indent}{prefix}{} -- {prefix}{}{attrs};", i + 1, j + 1);
    }
    for &(a, b) in &s.arrows {
        let _ =
            writeln!(out, "{indent}{prefix}{} -- {prefix}{} [style=dashed, dir=both, constraint=false];", a + 1, b + 1);
    }
}

const NODE_STYLE: &str = "  node [shape=circle, style=filled, label=\"\", width=0.25];\n";

pub fn satake_dot(s: &SatakeDiagram) -> String {
    let mut out = format!("graph satake {{\n  label=\"{}\";\n{NODE_STYLE}", s.ctype);
    dot_body(&mut out, s, "a", "  ");
    out.push_str("}\n");
    out
}

/// Two copies of the Dynkin graph, one per involution, with matching nodes
/// aligned.
pub fn double_dot(d: &DoubleSatakeDiagram) -> String {
    let ct = d.ctype();
    let mut out = format!("graph double_satake {{\n  label=\"{ct}\";\n  rankdir=LR;\n{NODE_STYLE}");
    for (name, s, prefix) in [("s1", &d.s1, "p"), ("s2", &d.s2, "q")] {
        let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{name}\";");
        dot_body(&mut out, s, prefix, "    ");
        out.push_str("  }\n");
    }
    for k in 1..=ct.rank {
        let _ = writeln!(out, "  {{ rank=same; p{k}; q{k}; }}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(t: &str, black: &[usize], arrows: &[(usize, usize)]) -> SatakeDiagram {
        SatakeDiagram::new(t.parse().unwrap(), black.to_vec(), arrows.to_vec()).unwrap()
    }

    #[test]
    fn text_forms() {
        let s = sd("D4", &[], &[(2, 3)]);
        assert_eq!(satake_text(&s), "D4\nedges:  1-2 2-3 2-4\nnodes:  1:o 2:o 3:o 4:o\narrows: 3<->4\n");
        assert_eq!(edges_text("B3".parse().unwrap()), "1-2 2=>3");
        assert_eq!(edges_text("C3".parse().unwrap()), "1-2 2<=3");
        assert_eq!(edges_text("G2".parse().unwrap()), "1<~2");
        assert_eq!(edges_text("F4".parse().unwrap()), "1-2 2=>3 3-4");
        let diii = sd("D6", &[0, 2, 4], &[]);
        assert!(satake_text(&diii).contains("1:* 2:o 3:* 4:o 5:* 6:o"));
    }

    #[test]
    fn dot_forms() {
        let s = sd("D4", &[], &[(2, 3)]);
        let dot = satake_dot(&s);
        assert!(!dot.contains("fillcolor=black"));
        assert!(dot.contains("a3 -- a4 [style=dashed, dir=both, constraint=false];"));
        let d = DoubleSatakeDiagram::new(sd("D4", &[1, 2, 3], &[]), sd("D4", &[], &[(0, 2)])).unwrap();
        let dot = double_dot(&d);
        assert_eq!(dot.matches("fillcolor=black").count(), 3);
        assert!(dot.contains("{ rank=same; p4; q4; }"));
        assert_eq!(dot, double_dot(&d.clone()));
    }
}
