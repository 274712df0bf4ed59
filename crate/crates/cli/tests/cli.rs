use std::fs;
use std::process::{Command, Output};

fn cdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_only_matches_published_sizes() {
    for (args, expected) in [
        (vec!["--n", "8", "--set", "2,3,5"], "202"),
        (vec!["--n", "6", "--named", "even"], "42"),
        (vec!["--n", "8", "--fishburn"], "222"),
        (vec!["--n", "10", "--named", "truncated-even"], "922"),
    ] {
        let mut full = vec!["generate", "--count-only"];
        full.extend(args);
        let o = cdom(&full);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), expected);
    }
}

#[test]
fn scheme_file_and_domain_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("s.txt");
    fs::write(&scheme, "# B_8\nn 8\nset-alternating 2,3,5\n").unwrap();
    let domain = dir.path().join("d.txt");
    let o = cdom(&["generate", "--scheme-file", scheme.to_str().unwrap(), "--out", domain.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&domain).unwrap();
    assert!(text.starts_with("n 8\n1 2 3 4 5 6 7 8\n"));
    assert_eq!(text.lines().count(), 203);

    let o = cdom(&["analyze", "--domain", domain.to_str().unwrap()]);
    let report = stdout(&o);
    for line in ["size: 202", "condorcet: true", "copious: true", "peak_pit: true", "connected: true", "maximal: true"] {
        assert!(report.contains(line), "missing {line:?} in\n{report}");
    }
    let o = cdom(&["analyze", "--domain", domain.to_str().unwrap(), "--json"]);
    assert!(stdout(&o).contains("\"size\": 202"));
}

#[test]
fn size_single_and_batch() {
    let o = cdom(&["size", "--n", "16", "--set", "2,3,5,7,9,11,13"]);
    assert_eq!(stdout(&o).trim(), "109104");
    let dir = tempfile::tempdir().unwrap();
    let batch = dir.path().join("b.csv");
    fs::write(&batch, "n,set\n8,2 3 5\n6,2 4\n5,\n").unwrap();
    let o = cdom(&["size", "--batch", batch.to_str().unwrap()]);
    assert_eq!(stdout(&o), "n,set,size\n8,2 3 5,202\n6,2 4,42\n5,,16\n");
}

#[test]
fn scan_output_is_identical_across_engines_and_worker_counts() {
    let recurse = stdout(&cdom(&["scan", "--n", "9", "--engine", "recurse"]));
    let enumerate = stdout(&cdom(&["--jobs", "1", "scan", "--n", "9", "--engine", "enumerate"]));
    let parallel = stdout(&cdom(&["--jobs", "4", "scan", "--n", "9", "--engine", "enumerate"]));
    assert_eq!(recurse, enumerate);
    assert_eq!(enumerate, parallel);
    assert_eq!(recurse.lines().count(), 1 + 128);
}

#[test]
fn graph_export_and_median_check() {
    let dir = tempfile::tempdir().unwrap();
    let domain = dir.path().join("e6.txt");
    assert!(cdom(&["generate", "--n", "6", "--named", "even", "--out", domain.to_str().unwrap()]).status.success());
    let dot = dir.path().join("e6.dot");
    let o = cdom(&["graph", "--domain", domain.to_str().unwrap(), "--out", dot.to_str().unwrap(), "--check-median"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("42 vertices, 71 edges"));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph domain {\n"));
    assert_eq!(text.matches(" -- ").count(), 71);

    // a 6-cycle of orders is not a median graph
    let cycle = dir.path().join("c6.txt");
    fs::write(&cycle, "n 3\n1 2 3\n1 3 2\n3 1 2\n3 2 1\n2 3 1\n2 1 3\n").unwrap();
    let o = cdom(&["graph", "--domain", cycle.to_str().unwrap(), "--check-median"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_writes_domains_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let o = cdom(&["enumerate", "--n", "4", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let files = fs::read_dir(dir.path()).unwrap().count();
    let census = fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert!(census.starts_with("size,count,peak_pit,bipartite,midpoint_bipartite\n"));
    let domains: usize = stdout(&o).split_whitespace().next().unwrap().parse().unwrap();
    assert_eq!(files, domains + 1);
}

#[test]
fn dyck_table() {
    let o = cdom(&["dyck", "--n", "6", "--verify"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k,part_size,catalan_times_a\n1,18,18\n2,10,10\n3,14,14\n");
}

#[test]
fn verify_suite_and_negative_control() {
    let o = cdom(&["verify", "--suite", "properties"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("passed=true"));
    let o = cdom(&["verify", "--suite", "properties", "--mutate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed criteria: 3 (recursion equals enumeration)"));
}

#[test]
fn exit_codes() {
    assert_eq!(cdom(&["generate", "--n", "5"]).status.code(), Some(2));
    assert_eq!(cdom(&["generate", "--n", "30", "--named", "odd", "--count-only"]).status.code(), Some(3));
    assert_eq!(cdom(&["scan", "--n", "15", "--engine", "enumerate"]).status.code(), Some(3));
    assert_eq!(cdom(&["enumerate", "--n", "6", "--out", "/nonexistent"]).status.code(), Some(3));
    assert_eq!(cdom(&["analyze", "--domain", "/nonexistent/file"]).status.code(), Some(2));
}
