//! End-to-end runs of the `graphcx` binary.

use std::io::Write;
use std::process::{Command, Output};

use graphcx::complexes::{conv_mc, fgc_mc, ConvKind};
use graphcx::gra::{av, FgcVec};
use graphcx::graphs::{cable, LabeledGraph};

fn graphcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcx")).args(args).env_remove("GRAPHCX_BUDGET_VERTICES").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write");
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().expect("utf-8 path")
}

/// Rows `(degree, h_dim)` of a machine-format cohomology table.
fn h_dims(out: &str) -> Vec<(i64, Option<usize>)> {
    out.lines()
        .map(|l| {
            let field = |name: &str| {
                l.split_whitespace().find_map(|f| f.strip_prefix(name).and_then(|x| x.strip_prefix('='))).expect("field").to_string()
            };
            (field("degree").parse().expect("degree"), field("h_dim").parse().ok())
        })
        .collect()
}

#[test]
fn tetrahedron_basis() {
    let o = graphcx(&["basis", "--complex", "gc-conn", "--chi", "-2", "--degree", "0", "--valence3", "--noloop"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("g r=4 n=0 e=6 : 1-2, 1-3, 1-4, 2-3, 2-4, 3-4"));
}

#[test]
fn conv_basis_contains_edge_tensor_product() {
    let o = graphcx(&["basis", "--complex", "conv-gra", "--chi", "1", "--degree", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.ends_with("Av([1-2] (x) i(1*2))")));
}

#[test]
fn fgc_basis_contains_point() {
    let o = graphcx(&["basis", "--complex", "fgc", "--chi", "1", "--degree", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.ends_with("g r=1 n=0 e=0 :")));
}

#[test]
fn machine_basis_is_stable() {
    let args = ["--format", "machine", "basis", "--complex", "conv-gra", "--chi", "0", "--degree", "1"];
    let a = stdout(&graphcx(&args));
    assert!(a.lines().all(|l| l.starts_with("basis complex=conv-gra chi=0 degree=1 index=")));
    assert_eq!(a, stdout(&graphcx(&args)));
}

#[test]
fn diff_of_point_is_edge() {
    let f = file(&FgcVec::orbit(&LabeledGraph::edgeless(1, 0)).to_string());
    let o = graphcx(&["diff", "--input", path(&f)]);
    assert!(o.status.success());
    let out: FgcVec = stdout(&o).parse().expect("parses");
    assert_eq!(out, fgc_mc());
}

#[test]
fn diff_of_mc_element_is_zero() {
    for kind in [ConvKind::Ger, ConvKind::Gra] {
        let f = file(&conv_mc(kind).to_string());
        let o = graphcx(&["diff", "--input", path(&f)]);
        assert!(o.status.success());
        let out = stdout(&o);
        assert_eq!(out.lines().count(), 1, "{out}");
        assert!(out.starts_with("conv kind="));
    }
}

#[test]
fn diff_of_cable() {
    let f = file(&av(&cable(5)).to_string());
    let o = graphcx(&["diff", "--input", path(&f)]);
    assert!(o.status.success());
    let out: FgcVec = stdout(&o).parse().expect("parses");
    assert_eq!(out, av(&cable(6)));
}

#[test]
fn bracket_of_mc_element_vanishes_and_mismatch_exits_4() {
    let a = file(&conv_mc(ConvKind::Ger).to_string());
    let o = graphcx(&["bracket", "--left", path(&a), "--right", path(&a)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let e = file(&fgc_mc().to_string());
    let o = graphcx(&["bracket", "--left", path(&a), "--right", path(&e)]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn parse_and_profile_errors() {
    let junk = file("not a vector\n");
    assert_eq!(graphcx(&["diff", "--input", path(&junk)]).status.code(), Some(3));
    let wrong = file("fgcvec deg=1\n1 * g r=1 n=0 e=0 :\n");
    assert_eq!(graphcx(&["diff", "--input", path(&wrong)]).status.code(), Some(4));
    assert_eq!(graphcx(&["basis", "--complex", "nope", "--chi", "0", "--degree", "0"]).status.code(), Some(3));
    assert_eq!(graphcx(&["basis", "positional"]).status.code(), Some(3));
}

#[test]
fn budget_exit_code_and_env_override() {
    let args = ["basis", "--complex", "fgc", "--chi", "-1", "--degree", "1"];
    assert!(graphcx(&args).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_graphcx")).args(args).env("GRAPHCX_BUDGET_VERTICES", "3").output().expect("runs");
    assert_eq!(o.status.code(), Some(2));
    let o = graphcx(&["--vertex-budget", "3", "basis", "--complex", "fgc", "--chi", "-1", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_sets_format() {
    let cfg = file("output_format = \"machine\"\n");
    let o = graphcx(&["--config", path(&cfg), "cohomology", "--complex", "cables", "--window", "0:3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.starts_with("slice complex=cables")));
}

#[test]
fn conv_cohomology_window() {
    let o = graphcx(&["--format", "machine", "cohomology", "--complex", "conv-gra", "--chi", "1", "--window", "0:2"]);
    assert!(o.status.success());
    assert_eq!(h_dims(&stdout(&o)), vec![(0, None), (1, Some(1)), (2, Some(0))]);
}

#[test]
fn cables_cohomology_vanishes() {
    let o = graphcx(&["--format", "machine", "cohomology", "--complex", "cables", "--window", "0:6"]);
    assert!(o.status.success());
    let rows = h_dims(&stdout(&o));
    assert_eq!(rows.len(), 7);
    assert!(rows[1..].iter().all(|r| r.1 == Some(0)));
}

#[test]
fn tetrahedron_cohomology() {
    let o = graphcx(&["--format", "machine", "cohomology", "--complex", "gc-noloop-conn", "--chi", "-2", "--window", "-1:1"]);
    assert!(o.status.success());
    assert_eq!(h_dims(&stdout(&o))[1], (0, Some(1)));
}

#[test]
fn several_slices_in_order() {
    let o = graphcx(&["--format", "machine", "--parallelism", "2", "cohomology", "--complex", "conv-ger", "--chi", "1", "--chi", "0", "--window", "0:2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let chis: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(2).expect("chi")).collect();
    assert_eq!(chis, ["chi=1", "chi=1", "chi=1", "chi=0", "chi=0", "chi=0"]);
}

#[test]
fn representative_of_rigidity_class() {
    let o = graphcx(&["representative", "--complex", "conv-gra", "--chi", "1", "--degree", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("h_dim=1\nbivec deg=1\n"));
    assert!(out.contains("b n=2 s=1 d=0 : 1-2 |"));
}

#[test]
fn verify_suites() {
    for args in [vec!["verify", "appendix-d"], vec!["verify", "ger-dim", "--n", "5"], vec!["verify", "d-squared"], vec!["verify", "parity"]] {
        let o = graphcx(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("checks passed"));
    }
}
