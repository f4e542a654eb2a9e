use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(p: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("../../corpus");
    path.push(p);
    path.to_string_lossy().into_owned()
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

#[test]
fn check_messages() {
    let o = gentle(&["check", "--input", &corpus("torus_one_boundary/algebra.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gentle Jacobian; blocks: 3,3,2");

    let o = gentle(&["check", "--input", &corpus("loop/algebra.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gentle; not Jacobian (loop at 1)");

    let o = gentle(&["check", "--input", &corpus("not_gentle/algebra.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not gentle"));
}

#[test]
fn errors_exit_with_two() {
    let o = gentle(&["check", "--input", &corpus("malformed/algebra.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");

    let o = gentle(&["check", "--input", &corpus("does/not/exist.json")]);
    assert_eq!(o.status.code(), Some(2));

    let o = gentle(&["components", "--input", &corpus("loop/algebra.json"), "--dims", "1,x"]);
    assert_eq!(o.status.code(), Some(2));

    // sigma crosses itself, so it is not a lamination
    let t = corpus("three_holed_sphere/triangulation.json");
    let o = gentle(&["verify", "--input", &t, "--lamination", &corpus("three_holed_sphere/sigma.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("crosses itself"));
}

#[test]
fn components_of_loops_and_two_cycle() {
    let o = gentle(&[
        "components",
        "--input",
        &corpus("loops_and_two_cycle/algebra.json"),
        "--dims",
        "2,2,2,2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let zs = v["components"].as_array().unwrap();
    assert_eq!(zs.len(), 3);
    for z in zs {
        assert_eq!(z["dim"], 16);
        assert_eq!(z["kind"], "band");
    }
}

#[test]
fn smooth_verdicts() {
    let alg = corpus("loop/algebra.json");
    let o = gentle(&["smooth", "--input", &alg, "--module", &corpus("loop/zero_module.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = gentle(&["smooth", "--input", &alg, "--module", &corpus("loop/square_zero_2.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sphere_commands() {
    let t = corpus("three_holed_sphere/triangulation.json");
    let o = gentle(&["shear", "--input", &t, "--lamination", &corpus("three_holed_sphere/sigma.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<i64> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, vec![0, -1, 1, -1, 1, 0]);

    // bangle of sigma against the golden term list
    let o = gentle(&["bangle", "--input", &t, "--lamination", &corpus("three_holed_sphere/sigma.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("three_holed_sphere/golden.json")).unwrap()).unwrap();
    assert_eq!(v["terms"], golden["bangle_terms"]);

    for l in ["arcs", "mixed", "doubled_loop"] {
        let lam = corpus(&format!("three_holed_sphere/{l}.json"));
        let o = gentle(&["verify", "--input", &t, "--lamination", &lam]);
        assert_eq!(o.status.code(), Some(0), "{l}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), "EQUAL");

        // eta output re-parses to the same component
        let o = gentle(&["eta", "--input", &t, "--lamination", &lam, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let z: gentle_core::io::ComponentJson = serde_json::from_slice(&o.stdout).unwrap();
        let again = serde_json::to_value(&z).unwrap();
        assert_eq!(again, serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap());
    }
}

#[test]
fn annulus_bangle() {
    let o = gentle(&[
        "bangle",
        "--input",
        &corpus("annulus/triangulation.json"),
        "--lamination",
        &corpus("annulus/primitive_loop.json"),
        "--y-one",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 * x1^-1 x2^-1 + 1 * x1^-1 x2 + 1 * x1 x2^-1");
}

#[test]
fn fixed_seed_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("gentle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let args = |out: &str| {
        vec![
            "components".to_string(),
            "--input".into(),
            corpus("torus_one_boundary/algebra.json"),
            "--dims".into(),
            "1,1,1,1".into(),
            "--format".into(),
            "json".into(),
            "--seed".into(),
            "7".into(),
            "--output".into(),
            dir.join(out).to_string_lossy().into_owned(),
        ]
    };
    for name in ["a.json", "b.json"] {
        let a = args(name);
        let o = Command::new(env!("CARGO_BIN_EXE_gentle")).args(&a).output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read(dir.join("a.json")).unwrap();
    let b = std::fs::read(dir.join("b.json")).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).unwrap();
}
