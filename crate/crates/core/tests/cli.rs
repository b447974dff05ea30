use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn twoterm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoterm")).args(args).output().expect("spawn twoterm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &Path, kind: &str, name: &str) -> PathBuf {
    let o = twoterm(&["gen", kind, "--name", name]);
    assert!(o.status.success());
    write(dir, &format!("{}.json", name.replace(':', "_")), &stdout(&o))
}

#[test]
fn gen_is_deterministic_per_seed() {
    for kind in ["group", "map", "complex", "butterfly", "sequence"] {
        let a = twoterm(&["gen", kind, "--seed", "11"]);
        let b = twoterm(&["gen", kind, "--seed", "11"]);
        assert!(a.status.success(), "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
    let a = twoterm(&["gen", "butterfly", "--seed", "1", "--max-order", "64", "--max-rank", "2"]);
    let b = twoterm(&["gen", "butterfly", "--seed", "2", "--max-order", "64", "--max-rank", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn compose_with_identity_is_2_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let b = gen(dir.path(), "butterfly", "B");
    let id = gen(dir.path(), "butterfly", "IK2");
    let out = dir.path().join("out.json");
    let o = twoterm(&["compose", b.to_str().unwrap(), id.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "carrier Z/4");
    let o = twoterm(&["iso2", out.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = twoterm(&["iso2", b.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("isomorphic"));
}

#[test]
fn report_of_the_bockstein() {
    let dir = tempfile::tempdir().unwrap();
    let b = gen(dir.path(), "butterfly", "B");
    let o = twoterm(&["report", b.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for flag in ["invertible", "mono", "epi", "faithful", "cofaithful"] {
        assert_eq!(v[flag], true, "{flag}");
    }
    assert_eq!(v["pip"], "0");
    assert_eq!(v["copip"], "0");
    let z = gen(dir.path(), "butterfly", "zeroK2");
    let v: serde_json::Value = serde_json::from_slice(&twoterm(&["report", z.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["mono"], false);
    assert_eq!(v["epi"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(twoterm(&["validate", missing.to_str().unwrap()]).status.code(), Some(2));
    let wrong = write(dir.path(), "wrong.json", r#"{"type": "butterfly", "src": "Z/2"}"#);
    assert_eq!(twoterm(&["validate", wrong.to_str().unwrap()]).status.code(), Some(2));
    let badtag = write(dir.path(), "tag.json", r#"{"type": "sheaf"}"#);
    assert_eq!(twoterm(&["validate", badtag.to_str().unwrap()]).status.code(), Some(2));
    let ill = write(dir.path(), "ill.json", r#"{"type": "map", "src": "Z/2", "dst": "Z", "matrix": [["1"]]}"#);
    assert_eq!(twoterm(&["validate", ill.to_str().unwrap()]).status.code(), Some(1));
    let g = write(dir.path(), "g.json", r#""Z/2+Z/4""#);
    assert_eq!(twoterm(&["validate", g.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(twoterm(&["biext", "Z/2", "Z/x", "Z"]).status.code(), Some(2));
}

#[test]
fn batch_validation_reports_each_file() {
    let dir = tempfile::tempdir().unwrap();
    let b = gen(dir.path(), "butterfly", "B");
    let e = gen(dir.path(), "complex", "E2");
    let s = gen(dir.path(), "sequence", "shift:E2");
    let o = twoterm(&["validate", "--jobs", "3", b.to_str().unwrap(), e.to_str().unwrap(), s.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(": ok")).count(), 3);
}

#[test]
fn les_and_biext_outputs() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["presentation", "truncation", "shift"] {
        let s = gen(dir.path(), "sequence", &format!("{which}:E2"));
        let v: serde_json::Value = serde_json::from_slice(&twoterm(&["les", s.to_str().unwrap()]).stdout).unwrap();
        assert_eq!(v["exact"], serde_json::json!([true, true, true, true, true, true]), "{which}");
        assert_eq!(v["groups"].as_array().unwrap().len(), 6);
        assert_eq!(v["maps"].as_array().unwrap().len(), 5);
    }
    let v: serde_json::Value = serde_json::from_slice(&twoterm(&["biext", "2", "2", "Z"]).stdout).unwrap();
    assert_eq!((v["pi1"].as_str(), v["pi0"].as_str()), (Some("0"), Some("Z/2")));
    let v: serde_json::Value = serde_json::from_slice(&twoterm(&["biext", "Z", "Z/4", "Z/6"]).stdout).unwrap();
    assert_eq!((v["pi1"].as_str(), v["pi0"].as_str()), (Some("Z/2"), Some("Z/2")));
    let v: serde_json::Value = serde_json::from_slice(&twoterm(&["biext", "Z/3", "3,0", "0"]).stdout).unwrap();
    assert_eq!((v["pi1"].as_str(), v["pi0"].as_str()), (Some("0"), Some("0")));
}

#[test]
fn roundtrip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let loose =
        write(dir.path(), "loose.json", r#"{"deg0": "Z/4", "d": [[2]], "deg-1": {"ngens": 1, "relations": [[4]]}}"#);
    let once = twoterm(&["roundtrip", loose.to_str().unwrap()]);
    assert!(once.status.success());
    let canon = write(dir.path(), "canon.json", &stdout(&once));
    let twice = twoterm(&["roundtrip", canon.to_str().unwrap()]);
    assert_eq!(once.stdout, twice.stdout);
    assert!(stdout(&once).contains("\"type\": \"complex\""));
}
