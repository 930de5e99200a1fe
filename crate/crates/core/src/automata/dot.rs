use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::DigitDfa;

/// Rendering switches for [`to_dot_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Draw the dead state and the edges into it.
    pub include_dead: bool,
}

/// Graphviz source with the dead state left out.
pub fn to_dot(dfa: &DigitDfa) -> String {
    to_dot_with(dfa, DotOptions::default())
}

/// Graphviz source. States keep their table numbers; parallel edges are
/// merged into one edge labelled with a comma-separated digit list.
pub fn to_dot_with(dfa: &DigitDfa, options: DotOptions) -> String {
    let shown = |s: u32| options.include_dead || s != dfa.dead();
    let mut out = String::new();
    out.push_str("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  __start [shape=point];\n");
    let _ = writeln!(out, "  __start -> {};", dfa.start());
    for s in (0..dfa.state_count() as u32).filter(|&s| shown(s)) {
        let shape = if dfa.is_accepting(s) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {s} [shape={shape}];");
    }
    for s in (0..dfa.state_count() as u32).filter(|&s| shown(s)) {
        let mut edges: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        for d in 0..dfa.alphabet() {
            let t = dfa.step(s, d);
            if shown(t) {
                edges.entry(t).or_default().push(d);
            }
        }
        for (t, digits) in edges {
            let label: Vec<String> = digits.iter().map(|d| alloc::format!("{d}")).collect();
            let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", label.join(","));
        }
    }
    out.push_str("}\n");
    out
}
