//! Heavier randomized cross-validation than the fixed acceptance corpora.
//! The differential run is `#[ignore]`d by default; run it with
//! `cargo test -p vdfo --test fuzz_differential -- --ignored`.

mod common;

use common::{formula_text, random_graph, random_structure, rng, TestMatrix};
use rand::Rng;
use vdfo::engines::hitting_set::solve_ea_star;
use vdfo::engines::search_tree::solve_eae_star;
use vdfo::engines::witness_walk::{solve_ae_undirected, solve_eae_basic};
use vdfo::oracle::{brute_force_vd_bounded, VDInstance};
use vdfo::structures::{GraphClass, StructureClass};
use vdfo::Formula;

const BOUND: u64 = 1_000_000_000_000;

#[test]
#[ignore = "heavy differential corpus; run with --ignored"]
fn engines_match_oracle_on_a_large_random_corpus() {
    let rounds: u64 = std::env::var("VDFO_FUZZ_ROUNDS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4000);
    let mut r = rng(0xfeed);
    let mut checks = 0u64;
    for round in 0..rounds {
        let class = match round % 3 {
            0 => GraphClass::Basic,
            1 => GraphClass::Undirected,
            _ => GraphClass::Directed,
        };
        let g = random_graph(&mut r, 9, class);
        let k = r.gen_range(0..=4usize);

        // Route selection: dedicated walk engines on their home classes,
        // the generic engines everywhere.
        match round % 4 {
            0 if class == GraphClass::Basic => {
                let f = Formula::parse(&formula_text("eae", &TestMatrix::random(&mut r, 3, 4)))
                    .unwrap();
                let i = VDInstance::from_graph(g, f.clone(), k).unwrap();
                let engine = solve_eae_basic(&i).unwrap();
                let oracle = brute_force_vd_bounded(&i, BOUND).unwrap();
                assert_eq!(engine.answer, oracle.answer, "eae {f} k={k}");
                if let Some(w) = &engine.witness {
                    assert!(i.verify_witness(w).unwrap());
                }
            }
            1 if class == GraphClass::Undirected => {
                let f =
                    Formula::parse(&formula_text("ae", &TestMatrix::random(&mut r, 2, 4))).unwrap();
                let i = VDInstance::from_graph(g, f.clone(), k).unwrap();
                let engine = solve_ae_undirected(&i).unwrap();
                let oracle = brute_force_vd_bounded(&i, BOUND).unwrap();
                assert_eq!(engine.answer, oracle.answer, "ae {f} k={k}");
            }
            2 => {
                let ex = r.gen_range(0..=2usize);
                let all = r.gen_range(0..=3usize);
                let pattern = format!("{}{}", "e".repeat(ex), "a".repeat(all));
                // Mix in arbitrary multi-relation structures and
                // empty-universe mode; both generic engines must track the
                // oracle there too.
                let arbitrary = r.gen_bool(0.3);
                let allow_empty = r.gen_bool(0.3);
                let matrix = TestMatrix::random_over(&mut r, ex + all, 4, arbitrary);
                let f = Formula::parse(&formula_text(&pattern, &matrix)).unwrap();
                let i = if arbitrary {
                    let s = random_structure(&mut r, 9);
                    VDInstance::new(s, StructureClass::Arbitrary, f.clone(), k).unwrap()
                } else {
                    VDInstance::from_graph(g, f.clone(), k).unwrap()
                }
                .allow_empty(allow_empty);
                let engine = solve_ea_star(&i).unwrap();
                let oracle = brute_force_vd_bounded(&i, BOUND).unwrap();
                assert_eq!(
                    engine.answer, oracle.answer,
                    "e*a* {f} k={k} empty={allow_empty}"
                );
            }
            _ => {
                let ex = r.gen_range(0..=2usize);
                let all = r.gen_range(0..=2usize);
                let tail = r.gen_range(0..=2usize);
                let pattern = format!("{}{}{}", "e".repeat(ex), "a".repeat(all), "e".repeat(tail));
                let arbitrary = r.gen_bool(0.3);
                let allow_empty = r.gen_bool(0.3);
                let matrix = TestMatrix::random_over(&mut r, ex + all + tail, 4, arbitrary);
                let f = Formula::parse(&formula_text(&pattern, &matrix)).unwrap();
                let i = if arbitrary {
                    let s = random_structure(&mut r, 9);
                    VDInstance::new(s, StructureClass::Arbitrary, f.clone(), k).unwrap()
                } else {
                    VDInstance::from_graph(g, f.clone(), k).unwrap()
                }
                .allow_empty(allow_empty);
                let engine = solve_eae_star(&i).unwrap();
                let oracle = brute_force_vd_bounded(&i, BOUND).unwrap();
                assert_eq!(
                    engine.answer, oracle.answer,
                    "e*a*e* {f} k={k} empty={allow_empty}"
                );
            }
        }
        checks += 1;
    }
    println!("differential fuzz: {checks} instances agree with the oracle");
}

// The parser must reject garbage with an error, never panic.
#[test]
fn parser_never_panics_on_garbage() {
    let mut r = rng(0xbeef);
    let alphabet: Vec<char> = "AExyz12 ()!&|->=~,#\ntrue false adj".chars().collect();
    for _ in 0..4000 {
        let len = r.gen_range(0..60);
        let text: String = (0..len)
            .map(|_| alphabet[r.gen_range(0..alphabet.len())])
            .collect();
        let _ = Formula::parse(&text);
    }
    // Structured near-misses around real formulas.
    for broken in [
        "A x",
        "A x (",
        "A x ()",
        "A x (x ~)",
        "A x (x ~ y))",
        "((A x (x ~ x)))",
        "A x (x != )",
        "E E (x ~ x)",
        "A true (x ~ x)",
        "A x (adj(x))->",
        "A x (x = y = z)",
    ] {
        assert!(Formula::parse(broken).is_err(), "accepted: {broken}");
    }
}
