use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(example: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(example)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqlef")).args(args).output().expect("binary runs")
}

fn verify_args(example: &str, fixed: &str) -> Vec<String> {
    let dir = corpus(example);
    vec![
        "verify".into(),
        "--group".into(),
        dir.join("group.json").display().to_string(),
        "--complex".into(),
        dir.join("complex.json").display().to_string(),
        "--map".into(),
        dir.join("map.json").display().to_string(),
        "--fixed".into(),
        dir.join(fixed).display().to_string(),
    ]
}

#[test]
fn corpus_examples_verify_exactly() {
    for example in [
        "reflection_selfmap",
        "north_south_flow",
        "octahedron_quarter_turn",
        "free_hexagon_rotation",
    ] {
        let args = verify_args(example, "fixed.json");
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{example}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn perturbed_tangent_sign_fails_with_exit_one_and_names_the_object() {
    let args = verify_args("north_south_flow", "fixed_bad.json");
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&args);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mismatch at object"), "{err}");
    assert!(err.contains("(H"), "{err}");
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("group.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let hex = corpus("hexagon_reflection_id");
    let out = run(&[
        "analyze",
        "--group",
        bad.to_str().unwrap(),
        "--complex",
        hex.join("complex.json").to_str().unwrap(),
        "--map",
        hex.join("map.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("group file"));
}

#[test]
fn analyze_lists_three_object_classes_for_the_reflected_hexagon() {
    let hex = corpus("hexagon_reflection_id");
    let out = run(&[
        "analyze",
        "--group",
        hex.join("group.json").to_str().unwrap(),
        "--complex",
        hex.join("complex.json").to_str().unwrap(),
        "--map",
        hex.join("map.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_identical_across_seeds() {
    let dir = corpus("north_south_flow");
    let mut outputs = Vec::new();
    for seed in ["0", "17", "2026", "90001", "31415926"] {
        let out = run(&[
            "lambda",
            "--group",
            dir.join("group.json").to_str().unwrap(),
            "--complex",
            dir.join("complex.json").to_str().unwrap(),
            "--map",
            dir.join("map.json").to_str().unwrap(),
            "--seed",
            seed,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
    }
    assert!(outputs.iter().all(|o| *o == outputs[0]));
}

#[test]
fn corpus_files_match_the_library_examples() {
    use eqlef::{io, lefschetz::flagship};
    let examples = [
        ("reflection_selfmap", 0),
        ("north_south_flow", 1),
        ("octahedron_quarter_turn", 2),
        ("free_hexagon_rotation", 3),
    ];
    let built = flagship::all();
    for (name, idx) in examples {
        let dir = corpus(name);
        let text = |f: &str| std::fs::read_to_string(dir.join(f)).unwrap();
        let g = io::group_from_json(&text("group.json")).unwrap();
        let x = io::complex_from_json(&text("complex.json"), g).unwrap();
        let f = io::map_from_json(&text("map.json"), &x).unwrap();
        let data = io::fixed_points_from_json(&text("fixed.json")).unwrap();
        let (bx, bf, bdata) = &built[idx];
        assert_eq!(x.simplices, bx.simplices, "{name}");
        assert_eq!(x.action, bx.action, "{name}");
        assert_eq!(f.vertex_images, bf.vertex_images, "{name}");
        assert_eq!(data.len(), bdata.len(), "{name}");
        for (a, b) in data.iter().zip(bdata) {
            assert_eq!(a.vertex, b.vertex, "{name}");
            assert_eq!(a.isotropy_gens, b.isotropy_gens, "{name}");
            assert_eq!(a.rep_action, b.rep_action, "{name}");
            assert_eq!(a.id_minus_df, b.id_minus_df, "{name}");
        }
    }
}
