use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, Output};

use proptest::prelude::*;
use walklab::formats::{parse_bfile, Format, Sequence};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

fn walklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walklab"))
        .args(args)
        .env_remove("WALKLAB_SCALE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = walklab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap()
}

#[test]
fn complementary_pair_matches_bfiles() {
    for (which, file) in [("a", "a_2sqrt2.b"), ("b", "b_2sqrt2.b")] {
        let out = stdout(&["seq", "--theta", "2sqrt2", "--which", which, "--n", "1000", "--format", "bfile"]);
        assert_eq!(out, fixture(file), "{which}");
    }
}

#[test]
fn zeros_and_walk_match_bfiles() {
    let zeros = stdout(&["zeros", "--theta", "2sqrt2", "--n", "100000", "--format", "bfile"]);
    assert_eq!(zeros, fixture("zeros_2sqrt2.b"));
    let walk = stdout(&["walk", "--theta", "sqrt2", "--n", "2000", "--format", "bfile"]);
    assert_eq!(walk, fixture("walk_sqrt2.b"));
}

#[test]
fn kotesovec_sides_match_bfiles() {
    for (name, file) in [("kotesovecA", "records_sqrt2_pos.b"), ("kotesovecB", "records_sqrt2_neg.b")] {
        let expected = fixture(file);
        let n = expected.lines().count().to_string();
        assert_eq!(stdout(&["recur", "--name", name, "--n", &n, "--format", "bfile"]), expected);
    }
}

#[test]
fn pell_numbers_are_place_values() {
    let pell = parse_bfile(&fixture("pell.b")).unwrap();
    let args: Vec<String> = pell[1..30].iter().map(|(_, v)| v.clone()).collect();
    let mut cmd = vec!["encode", "--base", "sqrt2m1"];
    cmd.extend(args.iter().map(String::as_str));
    for (k, line) in stdout(&cmd).lines().enumerate() {
        assert_eq!(line, format!("1{}", "0".repeat(k)));
    }
}

#[test]
fn encode_decode_roundtrip() {
    assert_eq!(stdout(&["encode", "--base", "sqrt2m1", "69"]), "20201\n");
    assert_eq!(stdout(&["encode", "--base", "sqrt2m1", "--lsd", "69"]), "10202\n");
    let numbers: Vec<String> = (0..300).map(|n| n.to_string()).collect();
    let mut cmd = vec!["encode", "--base", "sqrt3over2"];
    cmd.extend(numbers.iter().map(String::as_str));
    let words = stdout(&cmd);
    let mut cmd = vec!["decode", "--base", "sqrt3over2"];
    cmd.extend(words.lines().map(|w| if w.is_empty() { "ε" } else { w }));
    let back: Vec<String> = stdout(&cmd).lines().map(String::from).collect();
    assert_eq!(back, numbers);
}

#[test]
fn fast_query_and_records() {
    assert_eq!(stdout(&["walk", "--theta", "2sqrt2", "--at", "1000000000000"]), "8\n");
    assert_eq!(
        stdout(&["records", "--theta", "sqrt2", "--n", "10000"]),
        "1 3 8 20 49 119 288 696 1681 4059 9800\n"
    );
}

#[test]
fn dfa_run_verdicts() {
    let out = stdout(&["dfa", "run", "--kind", "zeros", "--base", "sqrt2m1", "10", "1", "21"]);
    assert_eq!(out, "10 2 accept\n1 1 reject\n21 - invalid\n");
}

#[test]
fn substitution_output() {
    assert_eq!(
        stdout(&["subst", "--m", "2"]),
        "a -> aacac\nb -> abcac\nc -> abcacac\n"
    );
    let coded = stdout(&["subst", "--m", "2", "--emit", "coded", "--len", "20"]);
    assert_eq!(coded, "11010110101001010110\n");
}

/// Minimal reader for the DOT subset the tool writes: `s [shape=…]` nodes
/// and `s -> t [label="d,d"]` edges.
struct Dot {
    accepting: BTreeSet<u32>,
    edges: BTreeMap<(u32, u64), u32>,
    start: u32,
}

fn parse_dot(text: &str) -> Dot {
    let mut dot = Dot {
        accepting: BTreeSet::new(),
        edges: BTreeMap::new(),
        start: u32::MAX,
    };
    for line in text.lines().map(str::trim) {
        let line = line.trim_end_matches(';');
        if let Some(rest) = line.strip_prefix("__start -> ") {
            dot.start = rest.parse().unwrap();
        } else if let Some((from, rest)) = line.split_once(" -> ") {
            let (to, label) = rest.split_once(" [label=\"").unwrap();
            let label = label.trim_end_matches("\"]");
            for d in label.split(',') {
                let old = dot
                    .edges
                    .insert((from.parse().unwrap(), d.parse().unwrap()), to.parse().unwrap());
                assert!(old.is_none(), "duplicate edge in {line}");
            }
        } else if let Some(node) = line.strip_suffix(" [shape=doublecircle]") {
            dot.accepting.insert(node.parse().unwrap());
        }
    }
    dot
}

/// Rows of the table output: `(accepting, targets)`.
fn parse_table(text: &str) -> (u32, u32, Vec<(bool, Vec<u32>)>) {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    let start = header[6].parse().unwrap();
    let dead = header[8].parse().unwrap();
    let rows = lines
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[1] == "accept", f[2..].iter().map(|t| t.parse().unwrap()).collect())
        })
        .collect();
    (start, dead, rows)
}

#[test]
fn dot_agrees_with_table() {
    for args in [
        vec!["dfa", "build", "--kind", "zeros", "--base", "sqrt2m1"],
        vec!["dfa", "build", "--kind", "records", "--base", "(-1+sqrt(2))/2"],
        vec!["dfa", "fixture", "zeros_2sqrt2"],
    ] {
        let dot = parse_dot(&stdout(&args));
        let mut table_args = args.clone();
        table_args.extend(["--out", "table"]);
        let (start, dead, rows) = parse_table(&stdout(&table_args));
        assert_eq!(dot.start, start);
        for (s, (acc, targets)) in rows.iter().enumerate() {
            let s = s as u32;
            assert_eq!(dot.accepting.contains(&s), *acc, "{args:?} state {s}");
            for (d, &t) in targets.iter().enumerate() {
                let edge = dot.edges.get(&(s, d as u64)).copied();
                if s == dead {
                    continue;
                }
                // The dead state and edges into it are left out of the picture.
                assert_eq!(edge.unwrap_or(dead), t, "{args:?} {s} --{d}-->");
            }
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(walklab(&["--help"]).status.code(), Some(0));
    assert_eq!(walklab(&["bogus"]).status.code(), Some(2));
    assert_eq!(walklab(&["walk", "--theta", "golden", "--at", "5"]).status.code(), Some(2));
    assert_eq!(walklab(&["dfa", "fixture", "nope"]).status.code(), Some(2));
    assert_eq!(walklab(&["subst", "--m", "3"]).status.code(), Some(2));
    let out = walklab(&["verify", "--suite", "recurrences"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("conjectural: pass"), "{text}");
}

#[test]
fn tamper_names_the_zero_check() {
    let out = walklab(&["verify", "--suite", "automata", "--tamper"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("first failing check: c07 zeros-2sqrt2"), "{text}");
}

#[test]
fn scale_from_environment() {
    let run = |scale: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_walklab"));
        cmd.args(["verify", "--suite", "recurrences", "--format", "json"]);
        match scale {
            Some(s) => cmd.env("WALKLAB_SCALE", s),
            None => cmd.env_remove("WALKLAB_SCALE"),
        };
        cmd.output().unwrap()
    };
    let doc: serde_json::Value = serde_json::from_slice(&run(Some("full")).stdout).unwrap();
    assert_eq!(doc["scale"], "full");
    let doc: serde_json::Value = serde_json::from_slice(&run(None).stdout).unwrap();
    assert_eq!(doc["scale"], "quick");
    assert_eq!(run(Some("huge")).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "substitution"];
    assert_eq!(walklab(&args).stdout, walklab(&args).stdout);
    let args = ["subst", "--m", "1", "--emit", "returns", "--points", "5"];
    assert_eq!(walklab(&args).stdout, walklab(&args).stdout);
}

proptest! {
    #[test]
    fn bfile_render_parse_roundtrip(
        offset in -5i64..100,
        values in proptest::collection::vec(any::<i64>(), 0..40),
    ) {
        let seq = Sequence::new("s", offset, values.iter());
        let parsed = parse_bfile(&seq.render(Format::Bfile)).unwrap();
        let expected: Vec<(i64, String)> = values
            .iter()
            .enumerate()
            .map(|(i, v)| (offset + i as i64, v.to_string()))
            .collect();
        prop_assert_eq!(parsed, expected);
    }
}
