use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vck")).args(args).output().expect("binary runs")
}

fn vck_with_data(data: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vck")).env("VCK_DATA", data).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const FLIP2: &str = "n=2 base=1\n1,1 2,1\n1,2 2,2\n\n1,1 2,1\n1,2 2,2\n";

#[test]
fn check_accepts_the_z4_pair() {
    let o = vck(&["check", "--pair", "paper-z4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "virtual pair: OK\n");
}

#[test]
fn check_accepts_flip_pairs() {
    for n in 2..=4 {
        let o = vck(&["check", "--pair", &format!("flip{n}-flip{n}")]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
}

#[test]
fn check_rejects_a_broken_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, FLIP2.replacen("2,1", "1,1", 1)).unwrap();
    let o = vck(&["check", "--pair", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("INVALID"), "{}", stderr(&o));
}

#[test]
fn single_table_is_checked_as_a_biquandle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    fs::write(&path, "n=2 base=0\n0,0 1,0\n0,1 1,1\n").unwrap();
    let o = vck(&["check", "--pair", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "biquandle: OK\n");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(vck(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(vck(&["color", "--diagram", "trefoil"]).status.code(), Some(1));
    assert_eq!(vck(&["color", "--diagram", "no-such-link", "--pair", "flip2-flip2"]).status.code(), Some(1));
    assert_eq!(vck(&["reproduce", "no-such-table"]).status.code(), Some(1));
    assert_eq!(vck(&["--help"]).status.code(), Some(0));
}

#[test]
fn long_runs_need_opt_in() {
    let o = vck(&["enumerate", "--n", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--long"));
    assert_eq!(vck(&["census", "--max-n", "5"]).status.code(), Some(3));
}

#[test]
fn enumerate_writes_keys() {
    let dir = tempfile::tempdir().unwrap();
    let keys = dir.path().join("keys.txt");
    let o = vck(&["enumerate", "--n", "3", "--keys", keys.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=3 virtual pairs: 90\nconnected: 26\n"));
    assert_eq!(fs::read_to_string(&keys).unwrap().lines().count(), 90);
    let o = vck(&["enumerate", "--n", "3", "--mode", "involutive", "--flip-compatible"]);
    assert!(stdout(&o).contains("compatible with the flip"));
}

#[test]
fn color_counts_and_lists() {
    assert_eq!(stdout(&vck(&["color", "--diagram", "trefoil", "--pair", "dihedral3-i3()"])), "9\n");
    let o = vck(&["color", "--diagram", "hopf+", "--pair", "flip2-flip2", "--list"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "# 4 colorings of 4 semi-arcs");
    assert_eq!(lines.len(), 5);
}

#[test]
fn diagram_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    fs::write(&path, "# trefoil\nO1+ U2+ O3+ U1+ O2+ U3+\n").unwrap();
    let o = vck(&["color", "--diagram", path.to_str().unwrap(), "--pair", "dihedral3-i3()"]);
    assert_eq!(stdout(&o), "9\n");
    fs::write(&path, "O1+ U2+ O3+ U1+ O2+\n").unwrap();
    let o = vck(&["color", "--diagram", path.to_str().unwrap(), "--pair", "dihedral3-i3()"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariant_lines_format() {
    let o = vck(&["invariant", "--diagram", "paper-2comp", "--cocycle", "virtual-h", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\t(1, 1)\n1\t(h^-1, h^-1)\n2\t(h, h)\n3\t(1, 1)\n");
}

#[test]
fn invariant_with_universal_pair_reports_battery_images() {
    let o = vck(&["invariant", "--diagram", "v2.3", "--pair", "q248"]);
    let out = stdout(&o);
    assert!(out.contains("colorings: 8"));
    assert!(out.contains("Q8: 512 homomorphisms"));
    assert!(out.contains("2{-1, -1}, 6{1, 1}") || out.contains("6{1, 1}, 2{-1, -1}"), "{out}");
}

#[test]
fn cocycle_mismatching_the_pair_is_rejected() {
    let o = vck(&["invariant", "--diagram", "hopf+", "--pair", "antiflip2-flip2", "--cocycle", "flip2-flip2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn state_sum_over_a_finite_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.txt");
    fs::write(&path, format!("{FLIP2}target: Z2\n0 1\n1 0\n\n0 1\n1 0\n")).unwrap();
    let file = path.to_str().unwrap();
    let o = vck(&["check", "--cocycle", file]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = vck(&["invariant", "--diagram", "hopf+", "--cocycle", file, "--state-sum"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\t4\n");
    let o = vck(&["invariant", "--diagram", "hopf+", "--pair", "flip2-flip2", "--state-sum"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unc_and_homs() {
    let o = vck(&["unc", "--pair", "flip2-flip2", "--verify"]);
    let out = stdout(&o);
    assert!(out.contains("simplified: 3 generators, 2 relators"), "{out}");
    assert!(out.contains("universal pair: OK"));
    let o = vck(&["unc", "--pair", "q248", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&vck(&["homs", "--presentation", "q248", "--group", "Q8"])), "512 homomorphisms <f24,f42,g42> -> Q8\n");
}

#[test]
fn reproduce_matches_goldens() {
    for t in ["census", "kishino", "vlinks", "unc-flip", "pair248", "quaternion", "two-component"] {
        let o = vck(&["reproduce", t]);
        assert_eq!(o.status.code(), Some(0), "{t}: {}", stderr(&o));
        assert!(stdout(&o).ends_with(&format!("[{t}] matches golden\n")));
    }
}

#[test]
fn reproduce_needs_bless_to_write() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("golden")).unwrap();
    let o = vck_with_data(dir.path(), &["reproduce", "kishino"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("golden/kishino.txt").exists());
    let o = vck_with_data(dir.path(), &["reproduce", "kishino", "--bless"]);
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read(dir.path().join("golden/kishino.txt")).unwrap();
    fs::write(dir.path().join("golden/kishino.txt"), "tampered\n").unwrap();
    let o = vck_with_data(dir.path(), &["reproduce", "kishino"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("differs from golden"));
    let o = vck_with_data(dir.path(), &["reproduce", "kishino", "--bless"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("golden/kishino.txt")).unwrap(), first);
}

#[test]
fn data_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("diagrams")).unwrap();
    fs::write(dir.path().join("diagrams/trefoil.txt"), "O1- U2- ; U1- O2-\n").unwrap();
    let o = vck_with_data(dir.path(), &["color", "--diagram", "trefoil", "--pair", "dihedral3-i3()"]);
    assert_eq!(stdout(&o), "3\n");
    fs::create_dir(dir.path().join("pairs")).unwrap();
    fs::write(dir.path().join("pairs/mine.txt"), FLIP2).unwrap();
    assert_eq!(vck_with_data(dir.path(), &["check", "--pair", "mine"]).status.code(), Some(0));
}
