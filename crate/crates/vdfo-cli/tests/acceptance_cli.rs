//! CLI-level acceptance: exit codes, report format, and byte-identical
//! determinism across repeated invocations (the suite's ninth criterion).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vdfo(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdfo"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_fixtures(dir: &Path) {
    fs::write(dir.join("vc.fo"), "A x A y (!(x ~ y))\n").unwrap();
    fs::write(
        dir.join("deg2.fo"),
        "A x E y1 E y2 (x ~ y1 & x ~ y2 & y1 != y2)\n",
    )
    .unwrap();
    fs::write(dir.join("k3.graph"), "graph basic 3\n0 1\n1 2\n0 2\n").unwrap();
    fs::write(
        dir.join("c4pendant.graph"),
        "graph basic 5\n0 1\n1 2\n2 3\n3 0\n0 4\n",
    )
    .unwrap();
    fs::write(dir.join("m.mreach"), "mreach 3 2 0 2\n2 0 1\n").unwrap();
    fs::write(
        dir.join("sc.setcover"),
        "setcover 3 2 1\n0 0\n1 0\n1 1\n2 1\n",
    )
    .unwrap();
}

#[test]
fn acceptance_9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let invocations: Vec<Vec<&str>> = vec![
        vec!["classify", "-p", "aea", "-c", "basic"],
        vec![
            "solve", "-f", "vc.fo", "-g", "k3.graph", "-k", "2", "-c", "basic", "--verify",
        ],
        vec!["solve", "-f", "deg2.fo", "-g", "c4pendant.graph", "-k", "1"],
        vec!["reduce", "-s", "m.mreach", "-t", "ae_directed", "-o", "out"],
        vec![
            "generate", "mreach", "-n", "3", "-k", "4", "--seed", "7", "-o", "g.mreach",
        ],
    ];
    let read_outputs = |dir: &Path| -> Vec<Vec<u8>> {
        ["out.graph", "out.fo", "g.mreach"]
            .iter()
            .filter_map(|name| fs::read(dir.join(name)).ok())
            .collect()
    };
    for args in &invocations {
        let mut runs: Vec<(Output, Vec<Vec<u8>>)> = Vec::new();
        for _ in 0..3 {
            let out = vdfo(args, dir.path());
            let files = read_outputs(dir.path());
            runs.push((out, files));
        }
        let (first, first_files) = &runs[0];
        for (run, files) in &runs[1..] {
            assert_eq!(run.stdout, first.stdout, "stdout differs for {args:?}");
            assert_eq!(run.stderr, first.stderr, "stderr differs for {args:?}");
            assert_eq!(run.status.code(), first.status.code());
            assert_eq!(files, first_files, "output files differ for {args:?}");
        }
    }
    println!(
        "ACCEPTANCE 9 cli-determinism: PASS ({} invocations x 3 runs)",
        invocations.len()
    );
}

#[test]
fn classify_output_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = vdfo(&["classify", "-p", "aea", "-c", "basic"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "CONTAINS_W2_HARD (aea ⪯ p)\n");

    let out = vdfo(&["classify", "-p", "eae", "-c", "basic"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PARA_AC0 (p ⪯ eae)\n");

    let out = vdfo(&["classify", "-p", "", "-c", "arbitrary"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PARA_AC0 (p ∈ e*a*)\n");

    let out = vdfo(&["classify", "-p", "eax", "-c", "basic"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let out = vdfo(
        &[
            "solve", "-f", "vc.fo", "-g", "k3.graph", "-k", "2", "-c", "basic",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pattern: aa\n"), "{text}");
    assert!(text.contains("engine: hitting_set\n"), "{text}");
    assert!(text.contains("verdict: yes\n"), "{text}");
    assert!(text.contains("witness: 0 1\n"), "{text}");

    let out = vdfo(
        &[
            "solve", "-f", "vc.fo", "-g", "k3.graph", "-k", "1", "-c", "basic",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: no\n"));

    // Auto dispatch sends degree->=2 (pattern aee) to the search tree.
    let out = vdfo(
        &[
            "solve",
            "-f",
            "deg2.fo",
            "-g",
            "c4pendant.graph",
            "-k",
            "1",
            "-c",
            "basic",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("engine: search_tree\n"), "{text}");
    assert!(text.contains("witness: 4\n"), "{text}");

    // Unreadable input is an error.
    let out = vdfo(
        &["solve", "-f", "nope.fo", "-g", "k3.graph", "-k", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Engine/pattern mismatch is an error.
    let out = vdfo(
        &[
            "solve",
            "-f",
            "vc.fo",
            "-g",
            "k3.graph",
            "-k",
            "1",
            "-e",
            "witness_walk",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_warns_on_the_intractable_tier_but_still_solves() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    fs::write(
        dir.path().join("aea.fo"),
        "A x E y A z (((x ~ y) & ((y ~ z) -> !(x ~ z))) | (x = z))\n",
    )
    .unwrap();
    let out = vdfo(
        &[
            "solve", "-f", "aea.fo", "-g", "k3.graph", "-k", "1", "--verify",
        ],
        dir.path(),
    );
    let text = stdout(&out);
    assert!(text.contains("tier: CONTAINS_W2_HARD\n"), "{text}");
    assert!(text.contains("warning:"), "{text}");
    assert!(text.contains("engine: brute\n"), "{text}");
    assert!(text.contains("verify: ok\n"), "{text}");
}

#[test]
fn reduce_writes_instance_and_formula_files() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let out = vdfo(
        &["reduce", "-s", "m.mreach", "-t", "ae_directed", "-o", "out"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kprime: 2\n"), "{text}");
    assert!(text.contains("vertices: 8\n"), "{text}");
    let graph = fs::read_to_string(dir.path().join("out.graph")).unwrap();
    assert!(graph.starts_with("graph directed 8\n"), "{graph}");
    let formula = fs::read_to_string(dir.path().join("out.fo")).unwrap();
    assert_eq!(formula, "A x E y (x ~ y)\n");

    let out = vdfo(
        &["reduce", "-s", "sc.setcover", "-t", "aea", "-o", "cover"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("vertices: 16\n"), "{text}"); // 4|S| + (k+1)|U|
    assert!(text.contains("kprime: 1\n"), "{text}");

    // aea takes set-cover sources only.
    let out = vdfo(
        &["reduce", "-s", "m.mreach", "-t", "aea", "-o", "bad"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // And the matched-reach targets reject set-cover sources.
    let out = vdfo(
        &[
            "reduce",
            "-s",
            "sc.setcover",
            "-t",
            "aee_basic",
            "-o",
            "bad",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduced_output_files_solve_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    // m.mreach: rows 0 -> 2 under the matching, so s reaches t: the reduced
    // instance is a yes at k' = 2.
    let out = vdfo(
        &["reduce", "-s", "m.mreach", "-t", "eeae_basic", "-o", "red"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let out = vdfo(
        &[
            "solve",
            "-f",
            "red.fo",
            "-g",
            "red.graph",
            "-k",
            "2",
            "--verify",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn allow_empty_changes_the_verdict_where_it_should() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("loop.fo"), "A x (x ~ x)\n").unwrap();
    fs::write(dir.path().join("one.graph"), "graph undirected 1\n").unwrap();
    let out = vdfo(
        &["solve", "-f", "loop.fo", "-g", "one.graph", "-k", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let out = vdfo(
        &[
            "solve",
            "-f",
            "loop.fo",
            "-g",
            "one.graph",
            "-k",
            "1",
            "--allow-empty",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn class_override_validates_against_the_structure() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    // A basic graph validates as undirected, so the override is accepted.
    fs::write(dir.path().join("ae.fo"), "A x E y (x ~ y)\n").unwrap();
    let out = vdfo(
        &[
            "solve",
            "-f",
            "ae.fo",
            "-g",
            "k3.graph",
            "-k",
            "0",
            "-c",
            "undirected",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("engine: witness_walk\n"));

    // A graph with a self-loop cannot be treated as basic.
    fs::write(
        dir.path().join("loopy.graph"),
        "graph undirected 2\n0 0\n0 1\n",
    )
    .unwrap();
    let out = vdfo(
        &[
            "solve",
            "-f",
            "ae.fo",
            "-g",
            "loopy.graph",
            "-k",
            "0",
            "-c",
            "basic",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
