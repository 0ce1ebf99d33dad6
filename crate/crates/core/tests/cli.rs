use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rise_coverage::export::format_summary;
use rise_coverage::*;

fn rise(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rise")).args(args).output().unwrap()
}

fn scenario(id: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{id}.json"))
        .display()
        .to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn run_writes_map_cdf_and_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let (map, cdf_path, pgm) = (dir.path().join("out.csv"), dir.path().join("cdf.csv"), dir.path().join("h.pgm"));
    let a30 = scenario("A_corner_30m");
    let out = rise(&[
        "run", "--scenario", &a30, "--structure", "es", "--mode", "dynamic",
        "--map", p(&map), "--cdf", p(&cdf_path), "--heatmap", p(&pgm),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let scene = load_scenario(Path::new(&a30)).unwrap().scene;
    let expected = evaluate_region(&scene, "es", BeamMode::Dynamic).unwrap();

    let text = std::fs::read_to_string(&map).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), scene.region.len() + 1);
    assert_eq!(lines[0], "x,y,attenuation_db");
    for (line, (pt, v)) in lines[1..].iter().zip(expected.iter()) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!((f[0], f[1]), (pt.x, pt.y));
        assert_eq!(f[2], v.unwrap_or(f64::INFINITY));
    }

    let cdf_text = std::fs::read_to_string(&cdf_path).unwrap();
    assert!(cdf_text.starts_with("attenuation_db,cdf\n"));
    assert_eq!(cdf_text.lines().count(), expected.reachable_values().count() + 1);
    assert!(cdf_text.trim_end().ends_with(",1"));

    let pgm_text = std::fs::read_to_string(&pgm).unwrap();
    let mut tokens = pgm_text.split_whitespace();
    assert_eq!(tokens.next(), Some("P2"));
    let dims: Vec<usize> = tokens.by_ref().take(3).map(|t| t.parse().unwrap()).collect();
    assert_eq!(dims, vec![scene.region.cols(), scene.region.rows(), 255]);
    assert_eq!(tokens.count(), scene.region.len());

    let row = ComparisonRow::from_map("es", &expected).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), format_summary(&[row]));
}

#[test]
fn fixed_mode_centroid_pipeline() {
    let out = rise(&["run", "--scenario", &scenario("A_corner_50m"), "--structure", "ss1", "--mode", "fixed", "--beam-strategy", "centroid"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("fixed beam ss1: "));
    assert!(stdout.contains("median_db"));
}

#[test]
fn compare_reproduces_engine_table() {
    let path = scenario("A_corner_30m");
    let scene = load_scenario(Path::new(&path)).unwrap().scene;
    let expected = compare_structures(
        &scene,
        &["ss1", "ss2", "es", "dee"],
        RegionMode::Fixed(BeamStrategy::Centroid),
    )
    .unwrap();
    for args in [
        vec!["run", "--scenario", &path, "--compare", "ss1,ss2,es,dee", "--mode", "fixed"],
        vec!["compare", "--scenario", &path, "--compare", "ss1,ss2,es,dee", "--mode", "fixed"],
    ] {
        let out = rise(&args);
        assert!(out.status.success());
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(stdout.lines().count(), 5);
        assert_eq!(stdout, format_summary(&expected));
    }
}

#[test]
fn shadow_only_flag_is_accepted() {
    let out = rise(&["compare", "--scenario", &scenario("B_wall"), "--shadow-only"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
}

#[test]
fn generate_matches_committed_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = rise(&["generate", "all", "--out", p(dir.path())]);
    assert!(out.status.success());
    for id in CanonicalScene::ALL {
        let name = format!("{}.json", id.id());
        let fresh = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        assert_eq!(fresh, std::fs::read_to_string(scenario(id.id())).unwrap());
    }
    let single = rise(&["generate", "B_wall"]);
    assert!(single.status.success());
    assert_eq!(String::from_utf8(single.stdout).unwrap(), generate_canonical(CanonicalScene::BWall).to_json());
}

#[test]
fn failures_exit_nonzero_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("m.csv");
    let out = rise(&["run", "--scenario", &scenario("A_corner_30m"), "--structure", "nope", "--map", p(&map)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown structure"));
    assert!(!map.exists());

    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(scenario("A_corner_30m")).unwrap().replace("\"gamma\": 0.5", "\"gamma\": 1.5");
    std::fs::write(&bad, text).unwrap();
    let out = rise(&["run", "--scenario", p(&bad), "--structure", "es"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("structures[2].panel.gamma"));

    assert!(!rise(&["run", "--scenario", &scenario("A_corner_30m")]).status.success());
    assert!(!rise(&["run", "--scenario", &scenario("A_corner_30m"), "--structure", "es", "--mode", "sideways"]).status.success());
    assert!(!rise(&["generate", "C_street"]).status.success());
}
