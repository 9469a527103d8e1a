use std::path::PathBuf;
use std::process::{Command, Output};

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn primal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primal"))
        .args(args)
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = primal(args);
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

const TWO_POINT: &str =
    "# opens and primal on {a,b}\nuniverse 2\nopen 00\nopen 10\nopen 11\nprimal 00\nprimal 10\n";
const DISCRETE: &str = "universe 3\nlabels a b c\n\
open 000\nopen 100\nopen 010\nopen 001\nopen 110\nopen 101\nopen 011\nopen 111\n\
primal 000\nprimal 100\nprimal 010\nprimal 110\n";
const CHAIN: &str = "universe 3\nopen 000\nopen 100\nopen 010\nopen 110\nopen 111\n\
primal 000\nprimal 100\nprimal 010\nprimal 110\n";

#[test]
fn validate_two_point_space() {
    let f = write("two.space", TWO_POINT);
    let (code, out, _) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "VALID universe 2 opens 3 primal 2\n");
}

#[test]
fn validate_reports_missing_full_set() {
    let f = write("nofull.space", "universe 2\nopen 00\nopen 10\nprimal 00\n");
    let (code, out, _) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("INVALID MissingFullSet"), "{}", out);
}

#[test]
fn validate_reports_bad_primal() {
    let f = write(
        "badprimal.space",
        "universe 2\nopen 00\nopen 11\nprimal 00\n",
    );
    let (code, out, _) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "INVALID MeetConditionFails [10 01]\n");
}

#[test]
fn syntax_errors_are_positional() {
    let f = write("short.space", "universe 2\nopen 00\nopen 1\n");
    let (code, _, err) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 6"), "{}", err);
    let f = write("unknown.space", "universe 2\nclosed 00\n");
    let (code, _, err) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown keyword"), "{}", err);
}

#[test]
fn duplicate_lines_warn() {
    let f = write("dup.space", "universe 1\nopen 0\nopen 1\nopen 1\n");
    let (code, out, err) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "VALID universe 1 opens 2 primal 0\n");
    assert!(err.contains("warning: line 4: duplicate open 1 ignored"));
}

#[test]
fn diamond_and_closure() {
    let f = write("chain.space", CHAIN);
    let path = f.to_str().unwrap();
    assert_eq!(run(&["diamond", path, "--set", "110"]).1, "SET 000\n");
    assert_eq!(
        run(&["diamond", path, "--set", "110", "--naive"]).1,
        "SET 000\n"
    );
    assert_eq!(run(&["clstar", path, "--set", "110"]).1, "SET 110\n");
    let (code, _, err) = run(&["diamond", path, "--set", "11"]);
    assert_eq!(code, 2);
    assert!(err.contains("--set 11"));
}

#[test]
fn labels_only_touch_human_lines() {
    let f = write("discrete.space", DISCRETE);
    let path = f.to_str().unwrap();
    assert_eq!(run(&["diamond", path, "--set", "001"]).1, "SET 001\n");
    assert_eq!(
        run(&["--labels", "diamond", path, "--set", "001"]).1,
        "SET 001\n# {c}\n"
    );
    let plain = run(&["taustar", path]).1;
    let labelled = run(&["taustar", path, "--labels"]).1;
    let machine: String = labelled
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{}\n", l))
        .collect();
    assert_eq!(machine, plain);
}

#[test]
fn empty_primal_gives_discrete_tau_star() {
    let f = write("empty.space", "universe 3\nopen 000\nopen 100\nopen 111\n");
    let (code, out, _) = run(&["taustar", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "TOPOLOGY 8");
    let expected =
        ["000", "100", "010", "110", "001", "101", "011", "111"].map(|b| format!("open {}", b));
    assert_eq!(&lines[1..], expected);
}

#[test]
fn base_and_member() {
    let f = write("two2.space", TWO_POINT);
    let path = f.to_str().unwrap();
    assert_eq!(
        run(&["base", path]).1,
        "BASE 4\nSET 00\nSET 10\nSET 01\nSET 11\n"
    );
    assert_eq!(
        run(&["member", path, "--set", "01"]).1,
        "MEMBER yes\nPOINT 1 OPEN 11\n"
    );
    assert_eq!(
        run(&["member", path, "--set", "10"]).1,
        "MEMBER yes\nPOINT 0 OPEN 10\n"
    );
    let f = write(
        "indiscrete.space",
        "universe 2\nopen 00\nopen 11\nprimal 00\nprimal 10\n",
    );
    assert_eq!(
        run(&["member", f.to_str().unwrap(), "--set", "10"]).1,
        "MEMBER no\nBLOCKED 0\n"
    );
}

#[test]
fn enumerate_primals_on_two_points() {
    let (code, out, _) = run(&["enumerate", "primals", "--n", "2", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "PRIMAL {}\nPRIMAL {00, 10}\nPRIMAL {00, 01}\nPRIMAL {00, 10, 01}\nCOUNT 4\nORACLE COUNT 4 AGREE\n"
    );
}

#[test]
fn enumerate_topologies() {
    let (code, out, _) = run(&["enumerate", "topologies", "--n", "3", "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("COUNT 29\nORACLE COUNT 29 AGREE\n"));
    assert_eq!(run(&["enumerate", "topologies", "--n", "5"]).0, 2);
    let (code, out, _) = run(&["enumerate", "topologies", "--n", "5", "--allow-n5"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("COUNT 6942\n"));
    assert_eq!(
        run(&["enumerate", "topologies", "--n", "6", "--allow-n5"]).0,
        2
    );
}

#[test]
fn verify_single_property() {
    let (code, out, _) = run(&["verify", "--property", "T3_6", "--max-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "PROPERTY T3_6 SCOPE n<=3 CHECKED 250 VERDICT holds\nSUMMARY PROPERTIES 1 AS_EXPECTED 1\n"
    );
    assert_eq!(run(&["verify", "--property", "T3_10", "--max-n", "4"]).0, 2);
    assert_eq!(run(&["verify", "--property", "T9_9", "--max-n", "2"]).0, 2);
    assert_eq!(run(&["verify", "--max-n", "2"]).0, 2);
}

#[test]
fn verify_all_flags_only_the_pushforward() {
    let (code, out, _) = run(&["verify", "--all", "--max-n", "3"]);
    assert_eq!(code, 1);
    let property_lines: Vec<&str> = out.lines().filter(|l| l.starts_with("PROPERTY ")).collect();
    assert_eq!(property_lines.len(), 26);
    let off: Vec<&str> = property_lines
        .iter()
        .copied()
        .filter(|l| l.ends_with("VERDICT fails"))
        .collect();
    assert_eq!(off, ["PROPERTY T3_11 SCOPE n<=3 CHECKED 238 VERDICT fails"]);
    assert!(out.ends_with("SUMMARY PROPERTIES 26 AS_EXPECTED 25\n"));
}

#[test]
fn output_is_stable_across_worker_counts() {
    let run_with = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_primal"))
            .args(["verify", "--all", "--max-n", "3"])
            .env("PRIMAL_MAX_WORKERS", workers)
            .output()
            .unwrap()
            .stdout
    };
    let one = run_with("1");
    assert_eq!(run_with("4"), one);
    assert_eq!(run_with("1"), one);
}

#[test]
fn search_verbs() {
    let (code, out, _) = run(&["search", "R3_5_preimage", "--max-n", "2"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("WITNESS n=1 map=0->2 Q={00, 10} preimage={0, 1}"),
        "{}",
        out
    );
    assert_eq!(
        run(&["search", "T3_6", "--max-n", "3"]),
        (0, "NONE\n".into(), String::new())
    );
    assert_eq!(run(&["search", "T3_11", "--max-n", "2"]).0, 1);
}

#[test]
fn replicate_paper_has_one_documented_mismatch() {
    let (code, out, _) = run(&["replicate-paper"]);
    assert_eq!(code, 0);
    let mismatches: Vec<&str> = out.lines().filter(|l| l.ends_with(" MISMATCH")).collect();
    assert_eq!(
        mismatches,
        ["EXAMPLE diamond-discrete-singleton EXPECTED 111 COMPUTED 001 MISMATCH"]
    );
}

#[test]
fn push_along_maps() {
    let f = write("push.space", TWO_POINT);
    let path = f.to_str().unwrap();
    assert_eq!(
        run(&["push", path, "--map", "1,0", "--codomain", "2"]),
        (
            0,
            "SURJECTIVE yes\nFAMILY {00, 01}\nPRIMAL yes\n".into(),
            String::new()
        )
    );
    let (code, out, _) = run(&["push", path, "--map", "0,0", "--codomain", "3"]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "SURJECTIVE no\nFAMILY {000, 100}\nPRIMAL no MeetConditionFails [010 001]\n"
    );
    assert_eq!(run(&["push", path, "--map", "0,x", "--codomain", "2"]).0, 2);
    assert_eq!(run(&["push", path, "--map", "0,5", "--codomain", "2"]).0, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/file.space"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
