use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use ocn_core::expr::{eval_cw, eval_msp, parse_cw, parse_msp};
use ocn_core::ilp::emit_bip;
use ocn_core::instances::{cycle, path, EX2, EX6};
use ocn_core::io::{parse_edgelist, write_edgelist};
use ocn_core::Digraph;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    /// `key=value` lines of porcelain output.
    fn keys(&self) -> BTreeMap<String, String> {
        self.stdout
            .lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }
}

fn ocn(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ocn")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

/// Colors from porcelain `color.<name>=c` lines, checked by the definition.
fn check_witness(g: &Digraph, keys: &BTreeMap<String, String>) -> usize {
    let c: Vec<usize> = (0..g.vertex_count()).map(|v| keys[&format!("color.{}", g.name(v))].parse().unwrap()).collect();
    let mut dir = BTreeMap::new();
    for (u, v) in g.arcs() {
        assert_ne!(c[u], c[v], "arc {u}->{v} is monochromatic");
        assert_ne!(dir.insert((c[u].min(c[v]), c[u].max(c[v])), c[u] < c[v]), Some(c[u] >= c[v]));
    }
    let mut used = c.clone();
    used.sort_unstable();
    used.dedup();
    used.len()
}

#[test]
fn solves_the_seven_color_example() {
    let r = ocn(&["solve", "--lang", "msp", "--expr", EX6, "--porcelain"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let keys = r.keys();
    assert_eq!(keys["chi_o"], "7");
    assert_eq!(keys["engine"], "msp");
    assert!(keys.contains_key("time_us"));
    assert_eq!(check_witness(&eval_msp(&parse_msp(EX6).unwrap()), &keys), 7);

    let human = ocn(&["solve", "--lang", "msp", "--expr", EX6]);
    assert!(human.stdout.starts_with("chi_o = 7\n"));
}

#[test]
fn solves_cographs_and_small_digraphs() {
    let r = ocn(&["solve", "--lang", "dico", "--expr", EX2, "--porcelain"]);
    assert_eq!((r.code, r.keys()["chi_o"].as_str(), r.keys()["engine"].as_str()), (0, "3", "cograph"));

    let c5 = file("c5.edgelist", &write_edgelist(&cycle(5)));
    let r = ocn(&["solve", "--algo", "oracle", "--input", &c5, "--porcelain"]);
    assert_eq!(r.keys()["chi_o"], "5");
    assert_eq!(check_witness(&cycle(5), &r.keys()), 5);

    let r = ocn(&["solve", "--input", &c5]);
    assert!(r.stdout.starts_with("chi_o = 5\n"));
    assert!(r.stdout.contains("engine: oracle"));
}

#[test]
fn auto_checks_class_predicates() {
    let tt = file("tt.edgelist", "3 3\n0 1\n1 2\n0 2\n");
    assert_eq!(ocn(&["solve", "--input", &tt, "--porcelain"]).keys()["engine"], "greedy-transitive");
    let p3 = file("p3-auto.edgelist", &write_edgelist(&path(3)));
    let r = ocn(&["solve", "--input", &p3, "--porcelain"]);
    assert_eq!((r.keys()["engine"].as_str(), r.keys()["chi_o"].as_str()), ("oracle", "3"));
    let r = ocn(&["solve", "--lang", "cw", "--expr", "A(1,2,U(V(a,1),V(b,2)))", "--porcelain"]);
    assert_eq!((r.keys()["engine"].as_str(), r.keys()["chi_o"].as_str()), ("cw", "2"));
    let r = ocn(&["solve", "--lang", "cw", "--expr", "A(1,2,V(a,1))"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn engine_mismatch_is_an_input_error() {
    let p3 = file("p3-mismatch.edgelist", &write_edgelist(&path(3)));
    let r = ocn(&["solve", "--algo", "greedy-transitive", "--input", &p3]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not transitive"), "{}", r.stderr);
    let r = ocn(&["solve", "--algo", "cograph", "--lang", "msp", "--expr", "a*b"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("di-co"), "{}", r.stderr);
    assert_eq!(ocn(&["solve", "--algo", "msp", "--input", &p3]).code, 2);
    assert_eq!(ocn(&["solve", "--algo", "cw", "--input", &p3]).code, 2);
}

#[test]
fn translated_expressions_go_through_the_cw_engine() {
    let r = ocn(&["solve", "--algo", "cw", "--lang", "msp", "--expr", "v1 * (v2 | v3 * v4) * v5 * v6", "--porcelain"]);
    assert_eq!((r.keys()["chi_o"].as_str(), r.keys()["engine"].as_str()), ("4", "cw"));
    assert!(!r.keys().keys().any(|k| k.starts_with("color.")));
    let r = ocn(&["solve", "--algo", "cw", "--lang", "dico", "--expr", EX2, "--porcelain"]);
    assert_eq!(r.keys()["chi_o"], "3");
}

#[test]
fn deciding_a_color_count() {
    let c5 = file("c5-r.edgelist", &write_edgelist(&cycle(5)));
    let r = ocn(&["solve", "--input", &c5, "--algo", "oracle", "--r", "4", "--porcelain"]);
    assert_eq!((r.code, r.keys()["feasible"].as_str()), (1, "false"));
    let r = ocn(&["solve", "--input", &c5, "--algo", "oracle", "--r", "5", "--porcelain"]);
    assert_eq!((r.code, r.keys()["feasible"].as_str()), (0, "true"));
    assert_eq!(check_witness(&cycle(5), &r.keys()), 5);

    let ex5 = "v1 * (v2 | v3 * v4) * v5 * v6";
    let r = ocn(&["solve", "--algo", "cw", "--lang", "msp", "--expr", ex5, "--r", "3", "--porcelain"]);
    assert_eq!((r.code, r.keys()["feasible"].as_str()), (1, "false"));
    let r = ocn(&["solve", "--algo", "cw", "--lang", "msp", "--expr", ex5, "--r", "6", "--porcelain"]);
    assert_eq!((r.code, r.keys()["chi_o"].as_str()), (0, "4"));
    let r = ocn(&["solve", "--lang", "msp", "--expr", ex5, "--r", "4"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("4 colors suffice"));
}

#[test]
fn oracle_size_guard() {
    let c = file("c12.edgelist", &write_edgelist(&cycle(12)));
    let r = ocn(&["solve", "--algo", "oracle", "--input", &c, "--max-n", "10"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("too large"), "{}", r.stderr);
}

#[test]
fn verify_exit_codes() {
    let g = file("p3-verify.edgelist", "3 2\nnames\na\nb\nc\n0 1\n1 2\n");
    let good = file("p3-good.col", "a 1\nb 2\nc 3\n");
    let r = ocn(&["verify", "--input", &g, &good]);
    assert_eq!(r.code, 0, "{}", r.stderr);

    let two = file("p3-two.col", "a 1\nb 2\nc 1\n");
    let r = ocn(&["verify", "--input", &g, &two, "--porcelain"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.keys()["violation"], "opposite");
    assert_eq!(r.keys()["arcs"], "a->b,b->c");
    let r = ocn(&["verify", "--input", &g, &two]);
    assert!(r.stdout.starts_with("invalid: arcs a->b and b->c"), "{}", r.stdout);

    let both = file("both.edgelist", "2 2\n0 1\n1 0\n");
    let col = file("both.col", "0 1\n1 2\n");
    let r = ocn(&["verify", "--input", &both, &col]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not oriented"), "{}", r.stderr);

    let partial = file("p3-partial.col", "a 1\nb 2\n");
    assert_eq!(ocn(&["verify", "--input", &g, &partial]).code, 2);
}

#[test]
fn translate_to_clique_width() {
    let r = ocn(&["translate", "--to", "cw", "--lang", "msp", "--expr", "a*b|c", "--porcelain"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let k: usize = r.keys()["labels"].parse().unwrap();
    assert!(k <= 7);
    let cw = parse_cw(&r.keys()["expr"]).unwrap();
    let (g, _) = eval_cw(&cw).unwrap();
    let want = eval_msp(&parse_msp("a*b|c").unwrap());
    let named = |g: &Digraph| {
        let mut arcs: Vec<(String, String)> =
            g.arcs().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect();
        arcs.sort();
        arcs
    };
    assert_eq!(named(&g), named(&want));

    let r = ocn(&["translate", "--to", "cw", "--lang", "dico", "--expr", EX2, "--porcelain"]);
    assert_eq!(r.keys()["labels"], "2");
    let p3 = file("p3-translate.edgelist", &write_edgelist(&path(3)));
    assert_eq!(ocn(&["translate", "--to", "cw", "--input", &p3]).code, 2);
}

#[test]
fn emit_ilp_matches_the_library() {
    let p3 = file("p3-ilp.edgelist", &write_edgelist(&path(3)));
    let r = ocn(&["emit-ilp", "--input", &p3]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, emit_bip(&path(3)).unwrap());
    assert!(r.stdout.contains(" pair_1_2_2_1: 2 x_2_2 + x_1_1 + x_3_1 <= 3\n"));
    let both = file("both-ilp.edgelist", "2 2\n0 1\n1 0\n");
    assert_eq!(ocn(&["emit-ilp", "--input", &both]).code, 2);
}

#[test]
fn gen_instances() {
    let r = ocn(&["gen", "Mprime", "3"]);
    assert_eq!(r.code, 0);
    let g = parse_edgelist(&r.stdout).unwrap();
    assert_eq!(g.vertex_count(), 27);

    let r = ocn(&["gen", "ex6", "--format", "expr"]);
    assert_eq!(parse_msp(&r.stdout).unwrap().leaf_count(), 27);
    let r = ocn(&["gen", "paley7", "--format", "dot"]);
    assert!(r.stdout.starts_with("digraph G {"));
    assert_eq!(r.stdout.matches("->").count(), 21);

    let a = ocn(&["gen", "random-msp", "40", "--seed", "9", "--format", "expr"]);
    let b = ocn(&["gen", "random-msp", "40", "--seed", "9", "--format", "expr"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(parse_msp(&a.stdout).unwrap().leaf_count(), 40);
    assert!(ocn(&["gen", "random-dico", "12", "--format", "expr"]).stdout.contains('>'));

    assert_eq!(ocn(&["gen", "path", "3", "--format", "expr"]).code, 2);
    assert_eq!(ocn(&["gen", "nosuch"]).code, 2);
    assert_eq!(ocn(&["gen", "knm", "2"]).code, 2);
    assert_eq!(ocn(&["gen", "random-msp", "0"]).code, 2);
}

#[test]
fn parse_reports_structure() {
    let r = ocn(&["parse", "--lang", "dico", "--expr", EX2, "--porcelain"]);
    let k = r.keys();
    assert_eq!(
        (k["kind"].as_str(), k["vertices"].as_str(), k["arcs"].as_str(), k["transitive"].as_str()),
        ("dico", "4", "5", "true")
    );
    let r = ocn(&["parse", "--lang", "cw", "--expr", "R(2,1,A(1,2,U(V(a,1),V(b,2))))", "--porcelain"]);
    assert_eq!(r.keys()["labels"], "2");
    let r = ocn(&["parse", "--lang", "msp", "--expr", "a * (b | c)", "--format", "edgelist"]);
    assert_eq!(parse_edgelist(&r.stdout).unwrap().arc_count(), 2);
    let r = ocn(&["parse", "--lang", "msp", "--expr", "a * (b | "]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("syntax error"), "{}", r.stderr);
}

#[test]
fn bench_suites_run() {
    let r = ocn(&["bench", "msp", "--max-n", "1000", "--porcelain"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("n=1000 seeds=10 "));
    let r = ocn(&["bench", "mprime", "--max-n", "3", "--porcelain"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[2].starts_with("i=3 n=27 chi_o=4 "));
    assert_eq!(ocn(&["bench", "msp", "--max-n", "10"]).code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ocn(&[]).code, 2);
    assert_eq!(ocn(&["solve"]).code, 2);
    assert_eq!(ocn(&["solve", "--expr", "a*b"]).code, 2);
    assert_eq!(ocn(&["solve", "--expr", "a", "--lang", "msp", "--input", "x"]).code, 2);
    assert_eq!(ocn(&["solve", "--lang", "msp", "--expr", "a", "--algo", "fast"]).code, 2);
    assert_eq!(ocn(&["solve", "--input", "/nonexistent/file"]).code, 2);
    assert_eq!(ocn(&["--help"]).code, 0);
}
