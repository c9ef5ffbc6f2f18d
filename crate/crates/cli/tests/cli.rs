//! End-to-end runs of the binary, covering exit codes and golden output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rootchips"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_graph(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("rootchips-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn a2_tilde_file() -> PathBuf {
    let out = run(&["catalog", "At", "2"]);
    assert!(out.status.success());
    write_graph("a2t.cox", &stdout(&out))
}

#[test]
fn reduce_reports_the_witness_and_exits_one() {
    let g = a2_tilde_file();
    let out = run(&["reduce", g.to_str().unwrap(), "a c a c"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("delete positions 1 and 4"), "{text}");
    assert!(text.contains("reduced word: ca"), "{text}");

    let ok = run(&["reduce", g.to_str().unwrap(), "a,b,c"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "reduced");
}

#[test]
fn smallroots_prints_six_sorted_lines() {
    let g = a2_tilde_file();
    let out = run(&["smallroots", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["0 0 1", "0 1 0", "0 1 1", "1 0 0", "1 0 1", "1 1 0"]);

    let dot = run(&["smallroots", g.to_str().unwrap(), "--dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn check_in_distinguishes_words() {
    let g = a2_tilde_file();
    let yes = run(&["check-in", g.to_str().unwrap(), "a b a"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = run(&["check-in", g.to_str().unwrap(), "a c a"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("misses neighbour `b`"));
}

#[test]
fn classify_finds_affine_witnesses() {
    let g = a2_tilde_file();
    let out = run(&["classify", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("matches At(2)"));

    let finite = write_graph("a2.cox", "vertex a\nvertex b\nedge a b 3\n");
    let none = run(&["classify", finite.to_str().unwrap()]);
    assert_eq!(none.status.code(), Some(1));
    assert!(stdout(&none).contains("no affine witness"));
}

#[test]
fn catalog_round_trips_through_both_formats() {
    for family_rank in [vec!["At", "4"], vec!["Bt", "3"], vec!["E7t"], vec!["F4t"]] {
        let mut args = vec!["catalog"];
        args.extend(&family_rank);
        let cox = run(&args);
        assert!(cox.status.success());
        let mut json_args = args.clone();
        json_args.push("--json");
        let json = run(&json_args);
        assert!(json.status.success());
        let cox_path = write_graph("round.cox", &stdout(&cox));
        let json_path = write_graph("round.json", &stdout(&json));
        let a = run(&["smallroots", cox_path.to_str().unwrap()]);
        let b = run(&["smallroots", json_path.to_str().unwrap()]);
        assert_eq!(stdout(&a), stdout(&b), "formats agree for {family_rank:?}");
    }
}

#[test]
fn catalog_rejects_bad_requests() {
    assert_eq!(run(&["catalog", "At"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "G2t", "3"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "Xt"]).status.code(), Some(2));
}

#[test]
fn game_plays_the_diamond_and_explores() {
    let out = run(&["catalog", "G2t"]);
    let g = write_graph("g2t.cox", &stdout(&out));
    let play = run(&["game", g.to_str().unwrap(), "--word", "b a c", "--trace"]);
    assert_eq!(play.status.code(), Some(0));
    let text = stdout(&play);
    assert!(text.contains("0 1 0 | b->a b->c"), "{text}");
    assert!(text.contains("r3 1 1 | a->b c->b"), "{text}");
    assert!(text.contains("diamond: true"), "{text}");

    let open = run(&[
        "game",
        g.to_str().unwrap(),
        "--explore",
        "--depth",
        "20",
        "--default-orientation",
        "bicoloured",
    ]);
    assert_eq!(open.status.code(), Some(0));
    assert!(stdout(&open).contains("open beyond cap"));

    let finite = write_graph("a2.cox", "vertex a\nvertex b\nedge a b 3\n");
    let conv = run(&["game", finite.to_str().unwrap(), "--explore", "--word", "a b"]);
    assert!(stdout(&conv).contains("converged after 2 moves"));
}

#[test]
fn speyer_property_run_is_reproducible() {
    let first = run(&[
        "speyer", "--family", "G2t", "--samples", "200", "--max-len", "40", "--seed", "7",
    ]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first).trim(), "0 counterexamples");
    let second = run(&[
        "speyer", "--family", "G2t", "--samples", "200", "--max-len", "40", "--seed", "7",
    ]);
    assert_eq!(stdout(&first), stdout(&second), "byte-identical across runs");
}

#[test]
fn speyer_on_finite_a2_needs_force_and_finds_counterexamples() {
    let finite = write_graph("a2.cox", "vertex a\nvertex b\nedge a b 3\n");
    let refused = run(&[
        "speyer", "--graph", finite.to_str().unwrap(), "--samples", "50", "--max-len", "12",
        "--seed", "3",
    ]);
    assert_eq!(refused.status.code(), Some(2));
    let forced = run(&[
        "speyer", "--graph", finite.to_str().unwrap(), "--samples", "50", "--max-len", "12",
        "--seed", "3", "--force",
    ]);
    assert_eq!(forced.status.code(), Some(1));
    assert!(stdout(&forced).contains("counterexample:"));
}

#[test]
fn speyer_handles_pendants_and_raises() {
    let out = run(&[
        "speyer", "--family", "C2t", "--samples", "100", "--max-len", "30", "--seed", "5",
    ]);
    // C2t is not a family token; the real one is Ct with rank 2
    assert_eq!(out.status.code(), Some(2));
    let ok = run(&[
        "speyer", "--family", "Ct", "2", "--samples", "100", "--max-len", "30", "--seed", "5",
        "--pendant", "a", "--raise", "a", "b", "5",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "0 counterexamples");
}

#[test]
fn bicolour_and_dfa_have_stable_output() {
    let out = run(&["catalog", "E6t"]);
    let g = write_graph("e6t.cox", &stdout(&out));
    let w = run(&["bicolour", g.to_str().unwrap(), "c", "8"]);
    assert_eq!(stdout(&w).trim(), "cbdfaceg");

    let a1 = write_graph("a1.cox", "vertex a\n");
    let dfa = run(&["dfa", a1.to_str().unwrap()]);
    assert!(stdout(&dfa).contains("states: 3"));
}

#[test]
fn errors_exit_with_code_two() {
    assert_eq!(run(&["reduce", "/nonexistent.cox", "a"]).status.code(), Some(2));
    let bad = write_graph("bad.cox", "vertex a\nedge a a 3\n");
    assert_eq!(run(&["smallroots", bad.to_str().unwrap()]).status.code(), Some(2));
    let label2 = write_graph("label2.cox", "vertex a\nvertex b\nedge a b 2\n");
    assert_eq!(run(&["smallroots", label2.to_str().unwrap()]).status.code(), Some(2));
}
