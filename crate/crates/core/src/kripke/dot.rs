use super::KripkeModel;

fn quote(s: &str) -> String {
    // labels may carry `\n` escapes, so backslashes pass through
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz rendering. Fallible worlds are double circles, `≼` edges are
/// dashed (reflexive pairs dropped, transitively reduced), `R` edges solid.
pub fn to_dot(m: &KripkeModel) -> String {
    let n = m.len();
    let strictly_below = |a: usize, b: usize| m.preceq(a, b) && !m.preceq(b, a);
    let mut out = String::from("digraph model {\n");
    for w in 0..n {
        let shape = if m.fallible().contains(w) {
            "doublecircle"
        } else {
            "circle"
        };
        let props: Vec<&str> = m
            .valuation()
            .iter()
            .filter(|(_, s)| s.contains(w))
            .map(|(p, _)| p.as_str())
            .collect();
        let name = m.world_name(w);
        let label = if props.is_empty() {
            name.to_string()
        } else {
            format!("{name}\\n{}", props.join(","))
        };
        out += &format!(
            "  {} [shape={shape}, label={}];\n",
            quote(name),
            quote(&label)
        );
    }
    for a in 0..n {
        for b in m.up(a).iter() {
            if a == b {
                continue;
            }
            // equivalent worlds keep both edges; otherwise drop pairs implied
            // by a strictly intermediate world
            let keep =
                m.preceq(b, a) || !(0..n).any(|c| strictly_below(a, c) && strictly_below(c, b));
            if keep {
                out += &format!(
                    "  {} -> {} [style=dashed];\n",
                    quote(m.world_name(a)),
                    quote(m.world_name(b))
                );
            }
        }
    }
    for a in 0..n {
        for b in m.successors(a).iter() {
            out += &format!(
                "  {} -> {};\n",
                quote(m.world_name(a)),
                quote(m.world_name(b))
            );
        }
    }
    out += "}\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{figure2_model, validate_model, RawModel};

    #[test]
    fn figure2_dot() {
        let dot = to_dot(&figure2_model());
        assert!(dot.contains("\"v\" -> \"v'\" [style=dashed];"));
        assert!(dot.contains("\"w\" -> \"v\";\n"));
        assert!(dot.contains("\"v\" -> \"w\";\n"));
        assert!(!dot.contains("\"w\" -> \"w\" [style=dashed]"));
        assert!(dot.contains("label=\"w\\np\""));
    }

    #[test]
    fn chain_is_reduced() {
        let s = |x: &str| x.to_string();
        let raw = RawModel {
            worlds: vec![s("a"), s("b"), s("c")],
            fallible: vec![s("c")],
            preceq: vec![(s("a"), s("b")), (s("b"), s("c"))],
            rel: vec![(s("c"), s("c"))],
            close_preceq: true,
            ..Default::default()
        };
        let dot = to_dot(&validate_model(&raw).unwrap());
        assert!(dot.contains("\"a\" -> \"b\" [style=dashed]"));
        assert!(dot.contains("\"b\" -> \"c\" [style=dashed]"));
        assert!(!dot.contains("\"a\" -> \"c\" [style=dashed]"));
        assert!(dot.contains("\"c\" [shape=doublecircle"));
    }
}
