use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn blowup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blowup")).args(args).output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

const PLANE: &str = r#"{"kind":"config0","k":1,"r":2,"a1":[["1"]],"a2":[["2"]],"b":[["1","0"]],"c":[["0"],["1"]]}"#;

#[test]
fn betti_charge2_q2_rows() {
    let o = blowup(&["betti", "--charge", "2", "--q", "2", "--max-degree", "6", "--method", "closed-form"]);
    assert_eq!(code(&o), 0);
    let evens: Vec<(String, String)> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            assert_eq!(f[2], "-");
            (f[0].to_string(), f[1].to_string())
        })
        .filter(|(d, _)| d.parse::<u32>().unwrap() % 2 == 0)
        .collect();
    let want = [("0", "1"), ("2", "3"), ("4", "9"), ("6", "18")];
    assert_eq!(evens, want.map(|(a, b)| (a.to_string(), b.to_string())));
    assert!(stdout(&o).starts_with("degree\trank\ttorsion\n"));
}

#[test]
fn betti_charge1_q0_is_bu1() {
    let o = blowup(&["betti", "--charge", "1", "--q", "0", "--method", "cech"]);
    assert_eq!(code(&o), 0);
    for line in stdout(&o).lines().skip(1) {
        let f: Vec<u32> = line.split('\t').take(2).map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[1], u32::from(f[0] % 2 == 0));
    }
    assert_eq!(stdout(&o).lines().count(), 26);
}

#[test]
fn simplex_matches_closed_form() {
    let s = blowup(&["betti", "--charge", "2", "--q", "5", "--method", "simplex", "--max-degree", "12"]);
    let c = blowup(&["betti", "--charge", "2", "--q", "5", "--max-degree", "12"]);
    assert_eq!(code(&s), 0);
    assert_eq!(stdout(&s), stdout(&c));
}

#[test]
fn json_betti_is_stable() {
    let a = blowup(&["betti", "--charge", "2", "--q", "2", "--max-degree", "8", "--method", "cech", "--format", "json"]);
    let b = blowup(&["betti", "--charge", "2", "--q", "2", "--max-degree", "8", "--method", "cech", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["rows"][4]["rank"], 9);
}

#[test]
fn invalid_method_combinations_exit_2() {
    assert_eq!(code(&blowup(&["betti", "--charge", "2", "--q", "3", "--method", "cech"])), 2);
    assert_eq!(code(&blowup(&["betti", "--charge", "1", "--q", "3", "--method", "simplex"])), 2);
    assert_eq!(code(&blowup(&["betti", "--charge", "3", "--q", "0"])), 2);
    assert_eq!(code(&blowup(&["betti", "--charge", "2", "--q", "2", "--unknown"])), 2);
}

#[test]
fn verify_config_exit_codes() {
    let good = fixture("good.json", PLANE);
    let o = blowup(&["verify-config", "--file", &good, "--checks", "integrability,nondegeneracy,monad-complex,special-subspaces"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let c_zero = fixture("c_zero.json", &PLANE.replace(r#"[["0"],["1"]]"#, r#"[["0"],["0"]]"#));
    assert_eq!(code(&blowup(&["verify-config", "--file", &c_zero, "--checks", "nondegeneracy"])), 1);
    let bad = fixture("bad.json", &PLANE.replace(r#""2""#, r#""1/0""#));
    assert_eq!(code(&blowup(&["verify-config", "--file", &bad])), 2);
    assert_eq!(code(&blowup(&["verify-config", "--file", "/nonexistent/config.json"])), 2);
}

#[test]
fn verify_config_json_report() {
    let good = fixture("good_json.json", PLANE);
    let o = blowup(&["verify-config", "--file", &good, "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["provenance"]["operation"], "verify-config");
}

#[test]
fn glue_pair_then_classify() {
    let l = fixture(
        "l1.json",
        r#"{"kind":"config1","k":1,"r":2,"a1":[["2"]],"a2":[["1"]],"d":[["1/20"]],"b":[["1","0"]],"c":[["0"],["1"]]}"#,
    );
    let r = fixture(
        "r1.json",
        r#"{"kind":"config1","k":1,"r":2,"a1":[["3"]],"a2":[["-1"]],"d":[["0"]],"b":[["0","1"]],"c":[["0"],["0"]]}"#,
    );
    let o = blowup(&["glue", "--left", &l, "--right", &r, "--xl", "0,0", "--xr", "10,2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provenance"]["operation"], "glue_pair");
    assert_eq!(v["provenance"]["parameters"]["delta"], "1");
    let left = fixture("left2.json", &v["result"]["left"].to_string());
    let o = blowup(&["classify", "--file", &left, "--xl", "0,0", "--xr", "10,2"]);
    assert_eq!(code(&o), 0);
    let c: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(c["result"]["in_image"], false);
    assert_eq!(code(&blowup(&["glue", "--left", &l, "--right", &r])), 2);
}

#[test]
fn glue_plane_pair_and_collision() {
    let a = fixture("pa.json", PLANE);
    let b = fixture("pb.json", &PLANE.replace(r#"[["1"]]"#, r#"[["5/2"]]"#));
    let o = blowup(&["glue", "--left", &a, "--right", &b]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["k"], 2);
    assert_eq!(v["result"]["a1"][1][1], "5/2");
    assert_eq!(code(&blowup(&["glue", "--left", &a, "--right", &a])), 2);
}

#[test]
fn suite_filter_and_seed() {
    let o = blowup(&["suite", "--filter", "baselines", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("[PASS] 2 baselines"));
    let a = blowup(&["suite", "--filter", "gluing", "--seed", "7", "--trials", "20"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(stdout(&a).lines().count(), 2);
    assert_eq!(code(&blowup(&["suite", "--filter", "no-such-criterion"])), 2);
}
