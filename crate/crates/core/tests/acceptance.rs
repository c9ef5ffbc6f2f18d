//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Results are exact; the wall-clock budgets are asserted too.

use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rootchips::catalog::{catalog, Family};
use rootchips::game::{
    explore, fire, initial_position, legal_moves, orientation_tour, ExploreOutcome, GamePosition,
    Orientation,
};
use rootchips::oracle::DeletionOracle;
use rootchips::recognizer::{run_first_letter_path, Recognizer};
use rootchips::root::{enumerate_small_roots, is_small, root_order, Root};
use rootchips::speyer::{check_speyer_property, SpeyerParams};
use rootchips::word::{bicoloured_word, has_intervening_neighbours, Word};
use rootchips::{CoxeterGraph, EdgeLabel, Value};

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(number: u32, name: &'static str, budget_secs: u64) -> Self {
        Criterion { number, name, budget: Duration::from_secs(budget_secs), started: Instant::now() }
    }

    fn pass(self) {
        let elapsed = self.started.elapsed();
        println!(
            "acceptance {:02} {}: PASS ({:.3} s, budget {} s)",
            self.number,
            self.name,
            elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        assert!(
            elapsed <= self.budget,
            "criterion {} exceeded its {} s budget: {:.3} s",
            self.number,
            self.budget.as_secs(),
            elapsed.as_secs_f64()
        );
    }
}

fn a2_tilde() -> CoxeterGraph {
    catalog(Family::ATilde, Some(2)).unwrap().graph
}

fn finite_a2() -> CoxeterGraph {
    CoxeterGraph::parse("vertex a\nvertex b\nedge a b 3\n").unwrap()
}

#[test]
fn criterion_01_small_root_count() {
    let c = Criterion::start(1, "Ã₂ has the six small roots of the figure", 1);
    let g = a2_tilde();
    let set = enumerate_small_roots(&g).unwrap();
    let mut roots: Vec<Root> = set.roots().to_vec();
    roots.sort_by(root_order);
    let rendered: Vec<String> = roots.iter().map(Root::render).collect();
    assert_eq!(
        rendered,
        ["0 0 1", "0 1 0", "0 1 1", "1 0 0", "1 0 1", "1 1 0"],
        "exactly the dashed-box roots"
    );
    c.pass();
}

#[test]
fn criterion_02_crossing_example() {
    let c = Criterion::start(2, "acac is non-reduced with shortened word ca", 1);
    let g = a2_tilde();
    let w = Word::parse("a c a c", &g).unwrap();
    let check = rootchips::is_reduced(&w, &g).unwrap();
    assert!(!check.reduced);
    let witness = check.witness.expect("a witness is reported");
    assert_eq!(witness.shortened.display(&g), "ca");
    assert_eq!((witness.i, witness.j), (1, 4));
    c.pass();
}

#[test]
fn criterion_03_trace_example() {
    let c = Criterion::start(3, "abc traces 100 → 110 → 112 and goes big", 1);
    let g = a2_tilde();
    let w = Word::parse("a b c", &g).unwrap();
    let trace = run_first_letter_path(&w, &g).unwrap();
    assert_eq!(trace.crossing, None);
    let rendered: Vec<String> = trace.states.iter().map(Root::render).collect();
    assert_eq!(rendered, ["1 0 0", "1 1 0", "1 1 2"]);
    let smalls = enumerate_small_roots(&g).unwrap();
    assert!(is_small(&trace.states[1], &smalls));
    assert!(!is_small(&trace.states[2], &smalls), "the last state is big");
    c.pass();
}

#[test]
fn criterion_04_e6_bicoloured_trace() {
    let c = Criterion::start(4, "Ẽ₆ centre values run 1, 2, 4 with a final +2", 1);
    let g = catalog(Family::E6Tilde, None).unwrap().graph;
    let centre = g.vertex("c").unwrap();
    assert_eq!(g.degree(centre), 3, "c is the branch vertex");
    let w = bicoloured_word(&g, centre, 16).unwrap();
    let trace = run_first_letter_path(&w, &g).unwrap();
    assert_eq!(trace.crossing, None);
    let mut centre_values = Vec::new();
    let mut centre_positions = Vec::new();
    for (pos0, &letter) in w.letters().iter().enumerate() {
        if letter == centre {
            centre_values.push(trace.states[pos0].component(centre).clone());
            centre_positions.push(pos0);
        }
    }
    assert!(centre_values.len() >= 3);
    assert_eq!(centre_values[0], Value::from_integer(1));
    assert_eq!(centre_values[1], Value::from_integer(2));
    assert_eq!(centre_values[2], Value::from_integer(4));
    let raise = centre_values[2].sub(&centre_values[1]);
    assert_eq!(raise, Value::from_integer(2), "the final step raises by 2");
    let smalls = enumerate_small_roots(&g).unwrap();
    let third = centre_positions[2];
    assert!(is_small(&trace.states[third - 1], &smalls));
    assert!(!is_small(&trace.states[third], &smalls), "the +2 step escapes the smalls");
    c.pass();
}

#[test]
fn criterion_05_speyer_property_across_the_catalog() {
    let c = Criterion::start(5, "1000 seeded IN-words per catalog graph, all reduced", 60);
    let picks = [
        (Family::ATilde, Some(1)),
        (Family::ATilde, Some(2)),
        (Family::ATilde, Some(3)),
        (Family::ATilde, Some(4)),
        (Family::BTilde, Some(3)),
        (Family::CTilde, Some(2)),
        (Family::DTilde, Some(4)),
        (Family::E6Tilde, None),
        (Family::F4Tilde, None),
        (Family::G2Tilde, None),
    ];
    for (f, n) in picks {
        let entry = catalog(f, n).unwrap();
        let report = check_speyer_property(
            &entry.graph,
            SpeyerParams { samples: 1000, max_len: 40, seed: 7, force: false },
        )
        .unwrap();
        assert!(
            report.holds(),
            "{}: {} counterexamples",
            entry.name(),
            report.counterexamples.len()
        );
    }
    c.pass();
}

#[test]
fn criterion_06_oracle_equivalence() {
    let c = Criterion::start(6, "recognizer matches the deletion oracle", 120);
    let graphs = [
        ("A2", finite_a2()),
        ("A3", CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n").unwrap()),
        ("B3", CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 4\nedge b c 3\n").unwrap()),
        ("At2", a2_tilde()),
    ];
    for (name, g) in &graphs {
        let recognizer = Recognizer::new(g).unwrap();
        let oracle = DeletionOracle::new(g, 12).unwrap();
        // exhaustive to length 8
        let n = g.vertex_count();
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(letters) = stack.pop() {
            if letters.len() < 8 {
                for l in 0..n {
                    let mut e = letters.clone();
                    e.push(l);
                    stack.push(e);
                }
            }
            if letters.is_empty() {
                continue;
            }
            let w = Word::new(letters);
            assert_eq!(
                oracle.is_reduced(&w).unwrap(),
                recognizer.is_reduced(&w).unwrap().reduced,
                "{name}: exhaustive disagreement on {:?}",
                w.letters()
            );
        }
        // 10⁴ random words of length ≤ 12 per graph
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
        for _ in 0..10_000 {
            let len = rng.random_range(1..=12);
            let w = Word::new((0..len).map(|_| rng.random_range(0..n)).collect());
            assert_eq!(
                oracle.is_reduced(&w).unwrap(),
                recognizer.is_reduced(&w).unwrap().reduced,
                "{name}: random disagreement on {:?}",
                w.letters()
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_07_hypothesis_necessity() {
    let c = Criterion::start(7, "abab has intervening neighbours on finite A₂ yet reduces to ba", 1);
    let g = finite_a2();
    let w = Word::parse("a b a b", &g).unwrap();
    assert!(has_intervening_neighbours(&w, &g).unwrap());
    let check = rootchips::is_reduced(&w, &g).unwrap();
    assert!(!check.reduced);
    assert_eq!(rootchips::reduce_fully(&w, &g).unwrap().display(&g), "ba");
    c.pass();
}

#[test]
fn criterion_08_g2_diamond() {
    let c = Criterion::start(8, "G̃₂ diamond commutes to values (√3, 1, 1)", 1);
    let g = catalog(Family::G2Tilde, None).unwrap().graph;
    let w = Word::parse("b a c", &g).unwrap();
    let p = initial_position(&g, &w).unwrap();
    assert_eq!(p.render(&g), "0 1 0 | b->a b->c", "the paper's starting diamond");
    let a = g.vertex("a").unwrap();
    let b = g.vertex("b").unwrap();
    let x = g.vertex("c").unwrap();
    let ac = fire(&fire(&p, a, &g).unwrap(), x, &g).unwrap();
    let ca = fire(&fire(&p, x, &g).unwrap(), a, &g).unwrap();
    assert_eq!(ac, ca, "both orders give the identical position");
    let sqrt3 = Value::Exact(rootchips::FieldValue::sqrt(3));
    assert_eq!(ac.values[a], sqrt3);
    assert_eq!(ac.values[b], Value::from_integer(1));
    assert_eq!(ac.values[x], Value::from_integer(1));
    c.pass();
}

#[test]
fn criterion_09_terminal_position() {
    let c = Criterion::start(9, "the 0-1-0 inward-arrow position is terminal", 1);
    let g = catalog(Family::G2Tilde, None).unwrap().graph;
    let b = g.vertex("b").unwrap();
    let p = GamePosition {
        values: vec![Value::zero(), Value::one(), Value::zero()],
        orientation: Orientation::new(vec![b, b]),
    };
    assert!(legal_moves(&p, &g).unwrap().is_empty());
    c.pass();
}

#[test]
fn criterion_10_convergence_dichotomy() {
    let c = Criterion::start(10, "A₂ converges uniquely; Ã₂ and G̃₂ stay open at caps 20/40/80", 30);
    let a2 = finite_a2();
    let w = Word::parse("a b", &a2).unwrap();
    let p = initial_position(&a2, &w).unwrap();
    match explore(&p, &a2, 100, 10_000).unwrap() {
        ExploreOutcome::Converged { position, length } => {
            assert_eq!(length, 2);
            assert_eq!(position.render(&a2), "0 1 | a->b");
        }
        other => panic!("A₂ should converge, got {other:?}"),
    }
    let open_cases: Vec<(String, CoxeterGraph, Word)> = {
        let at2 = a2_tilde();
        let at2_word = Word::parse("a b c a b c", &at2).unwrap();
        let g2 = catalog(Family::G2Tilde, None).unwrap().graph;
        let g2_word = bicoloured_word(&g2, 0, g2.vertex_count() + 1).unwrap();
        vec![("At2".into(), at2, at2_word), ("G2t".into(), g2, g2_word)]
    };
    for (name, g, w) in open_cases {
        let p = initial_position(&g, &w).unwrap();
        for depth_cap in [20, 40, 80] {
            assert!(
                matches!(
                    explore(&p, &g, depth_cap, 100_000).unwrap(),
                    ExploreOutcome::OpenBeyondCap { .. }
                ),
                "{name} should stay open at depth {depth_cap}"
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_11_orientation_tours() {
    let c = Criterion::start(11, "tours visit all 2ⁿ orientations on catalog trees with ≤ 7 edges", 30);
    let mut trees: Vec<(String, CoxeterGraph)> = Vec::new();
    for (f, ranks) in [
        (Family::ATilde, vec![Some(1)]),
        (Family::BTilde, vec![Some(3), Some(4), Some(5), Some(6), Some(7)]),
        (Family::CTilde, vec![Some(2), Some(3), Some(4), Some(5), Some(6), Some(7)]),
        (Family::DTilde, vec![Some(4), Some(5), Some(6), Some(7)]),
        (Family::E6Tilde, vec![None]),
        (Family::E7Tilde, vec![None]),
        (Family::F4Tilde, vec![None]),
        (Family::G2Tilde, vec![None]),
    ] {
        for rank in ranks {
            let entry = catalog(f, rank).unwrap();
            if entry.graph.is_tree() && entry.graph.edges().len() <= 7 {
                trees.push((entry.name(), entry.graph));
            }
        }
    }
    assert!(trees.len() >= 18, "the catalog yields {} trees with ≤ 7 edges", trees.len());
    for (name, g) in trees {
        let start = Orientation::from_bits(&g, 0);
        let tour = orientation_tour(&g, &start).unwrap();
        let mut replay = start.clone();
        let mut seen = std::collections::HashSet::new();
        seen.insert(replay.clone());
        for (k, &v) in tour.moves.iter().enumerate() {
            assert!(replay.is_sink(&g, v), "{name}: move {k} fires a non-sink");
            replay.fire(&g, v);
            assert_eq!(replay, tour.states[k], "{name}: recorded state diverges");
            seen.insert(replay.clone());
        }
        assert_eq!(seen.len(), 1 << g.edges().len(), "{name}: visits every orientation");
    }
    c.pass();
}

#[test]
fn criterion_12_proposition_closure() {
    let c = Criterion::start(12, "pendant extensions and label raises keep the property", 60);
    let g2 = catalog(Family::G2Tilde, None).unwrap().graph;
    let c2 = catalog(Family::CTilde, Some(2)).unwrap().graph;
    let params = SpeyerParams { samples: 1000, max_len: 40, seed: 7, force: false };

    let g2_pendant = g2.extend_pendant(g2.vertex("c").unwrap(), "d", EdgeLabel::Finite(3)).unwrap();
    assert!(check_speyer_property(&g2_pendant, params).unwrap().holds(), "G̃₂ + pendant");

    let g2_raised = g2
        .increase_label(g2.vertex("a").unwrap(), g2.vertex("b").unwrap(), EdgeLabel::Infinite)
        .unwrap();
    assert!(check_speyer_property(&g2_raised, params).unwrap().holds(), "G̃₂ with 6 → inf");

    let c2_pendant = c2.extend_pendant(c2.vertex("a").unwrap(), "d", EdgeLabel::Finite(3)).unwrap();
    assert!(check_speyer_property(&c2_pendant, params).unwrap().holds(), "C̃₂ + pendant");

    let c2_raised = c2
        .increase_label(c2.vertex("a").unwrap(), c2.vertex("b").unwrap(), EdgeLabel::Finite(5))
        .unwrap();
    assert!(check_speyer_property(&c2_raised, params).unwrap().holds(), "C̃₂ with 4 → 5");
    c.pass();
}
