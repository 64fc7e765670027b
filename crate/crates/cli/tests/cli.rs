use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use hopfva_cli::{run, LoadError, Options, Status, Workspace, COMMANDS};
use hopfva_core::action::corpus;
use hopfva_core::hopf::sweedler;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> Workspace {
    Workspace::load(&[fixture(name)]).unwrap()
}

fn opts(object: &str) -> Options {
    Options { object: Some(object.into()), ..Default::default() }
}

fn hopfva(args: &[&str], files: &[&str]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopfva"));
    cmd.args(args).arg("--workspace");
    for f in files {
        cmd.arg(fixture(f));
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn machine(stdout: &str) -> Value {
    let block = stdout.split("\n---\n").next().unwrap();
    serde_json::from_str(block).unwrap()
}

#[test]
fn unresolved_reference_names_the_missing_id() {
    let text = r#"{"schema_version": 1, "hopf_algebras": [{"name": "H", "group": "Z7"}]}"#;
    match Workspace::from_str(text) {
        Err(LoadError::UnresolvedReference { kind, name, .. }) => {
            assert_eq!(kind, "group");
            assert_eq!(name, "Z7");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn duplicate_names_are_rejected() {
    let text = r#"{"schema_version": 1, "groups": [{"name": "A", "cyclic": 2}, {"name": "A", "cyclic": 3}]}"#;
    assert!(matches!(Workspace::from_str(text), Err(LoadError::DuplicateName { .. })));
}

#[test]
fn parse_errors_carry_positions() {
    let text = "{\n  \"schema_version\": 1,\n  \"groups\": [oops]\n}";
    match Workspace::from_str(text) {
        Err(LoadError::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn explicit_sweedler_matches_builtin() {
    let ws = load("sweedler.json");
    assert_eq!(ws.hopf_algebras.len(), 1);
    assert!(ws.hopf_algebras["sweedler"].same_structure(&sweedler()));
}

#[test]
fn text_images_round_trip_to_the_corpus_action() {
    let ws = load("z2_on_xddx.json");
    let act = ws.instantiate(&ws.actions["z2_on_x"], None).unwrap();
    assert_eq!(act.matrices(), corpus::cyclic_on_euler(2, 6).matrices());
    let ws = load("z3_on_xddx.json");
    let act = ws.instantiate(&ws.actions["z3_on_x"], Some(3)).unwrap();
    assert_eq!(act.matrices(), corpus::cyclic_on_euler(3, 3).matrices());
}

#[test]
fn cocommutativity_of_sweedler_is_a_failing_verdict() {
    let (code, out) = hopfva(&["cocommutative", "--object", "sweedler"], &["sweedler.json"]);
    assert_eq!(code, 3);
    let m = machine(&out);
    assert_eq!(m["result"]["verdict"], Value::Bool(false));
    assert_eq!(m["result"]["witness"], "x");
    assert!(out.contains("\n---\n") && out.contains("elapsed:"));
}

#[test]
fn fixed_points_of_z2() {
    let (code, out) = hopfva(&["fixed-points", "--object", "z2_on_x", "--cap-d", "4"], &["z2_on_xddx.json"]);
    assert_eq!(code, 0);
    let m = machine(&out);
    assert_eq!(m["result"]["fixed"]["dim"], 3);
    assert_eq!(m["result"]["fixed"]["basis"], serde_json::json!(["1", "x^2", "x^4"]));
}

#[test]
fn diagonal_pi2_kernel() {
    let args = ["pi2-kernel", "--object", "xy_diagonal", "--cap-d", "1", "--order-k", "10"];
    let (code, out) = hopfva(&args, &["xy_diagonal.json"]);
    assert_eq!(code, 3);
    let m = machine(&out);
    assert_eq!(m["result"]["kernel"]["dim"], 1);
    assert_eq!(m["result"]["stabilized"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(Status::Pass.exit_code(), 0);
    assert_eq!(Status::Refused.exit_code(), 2);
    assert_eq!(Status::Fail.exit_code(), 3);
    assert_eq!(Status::Error.exit_code(), 4);
    let (code, _) = hopfva(&["thm-5-4", "--object", "sweedler_z_m0"], &["sweedler_on_z.json"]);
    assert_eq!(code, 2);
    let (code, out) = hopfva(&["verify-hopf", "--object", "nope"], &["sweedler.json"]);
    assert_eq!(code, 4);
    assert_eq!(machine(&out)["status"], "error");
    let (code, out) = hopfva(&["verify-hopf", "--object", "sweedler"], &["missing.json"]);
    assert_eq!(code, 4);
    assert_eq!(machine(&out)["status"], "error");
}

#[test]
fn every_command_runs_on_a_fixture() {
    let z2 = load("z2_on_xddx.json");
    let mut table = opts("z2_on_x");
    table.table = Some("chars_Z2".into());
    let mut reach = table.clone();
    reach.character = Some("sign".into());
    reach.seed = Some("x".into());
    let mut dist = table.clone();
    dist.character = Some("trivial".into());
    dist.against = Some("sign".into());
    let mut pin = opts("x_ddx");
    pin.n = Some(3);
    pin.cap_d = Some(2);
    pin.order_k = Some(6);
    let mut z2k = opts("x_ddx");
    z2k.cap_d = Some(2);
    z2k.order_k = Some(6);
    z2k.bound = Some(1);
    let mut tens = opts("z2_on_x");
    tens.cap_d = Some(2);
    tens.s_max = Some(2);
    let groups = load("groups.json");
    let cases: Vec<(&Workspace, &str, Options, Status)> = vec![
        (&groups, "verify-hopf", opts("QS3"), Status::Pass),
        (&groups, "cocommutative", opts("QZ4"), Status::Pass),
        (&groups, "group-likes", opts("QZ3"), Status::Pass),
        (&groups, "recognize-group-algebra", opts("QZ2xZ2"), Status::Pass),
        (&z2, "verify-action", opts("z2_on_x"), Status::Pass),
        (&z2, "pi2-kernel", opts("x_ddx"), Status::Pass),
        (&z2, "pin-check", pin, Status::Pass),
        (&z2, "z2-kernel", z2k, Status::Pass),
        (&z2, "fixed-points", opts("z2_on_x"), Status::Pass),
        (&z2, "annihilator", opts("z2_on_x"), Status::Pass),
        (&z2, "inner-faithful", opts("z2_on_x"), Status::Pass),
        (&z2, "quotient", opts("z2_on_x"), Status::Pass),
        (&z2, "tensor-faithful", tens, Status::Pass),
        (&z2, "thm-5-1", opts("z2_on_x"), Status::Pass),
        (&z2, "thm-5-4", opts("z2_on_x"), Status::Pass),
        (&z2, "decompose", table.clone(), Status::Pass),
        (&z2, "multiplicity", reach.clone(), Status::Pass),
        (&z2, "commutant", table, Status::Pass),
        (&z2, "reach", reach, Status::Pass),
        (&z2, "distinguish", dist, Status::Pass),
    ];
    assert_eq!(cases.len(), COMMANDS.len());
    for (ws, cmd, o, expected) in cases {
        let r = run(ws, cmd, &o);
        assert_eq!(r.status, expected, "{cmd}: {}", r.machine_text());
        assert_eq!(r.machine["command"], cmd);
    }
}
