//! Writing, editing and reloading scenario files.

use rise_coverage::scenario::ScenarioFile;
use rise_coverage::*;

fn main() -> Result<()> {
    let mut file = generate_canonical(CanonicalScene::ACorner30m);
    println!("{}: {}", file.name, file.description);
    println!("{} buildings, {} structures", file.buildings.len(), file.structures.len());

    // move the reflective panels 10 m north along their wall and give the
    // base station a 10 dBi antenna
    for s in file.structures.iter_mut().filter(|s| s.name.starts_with("ss")) {
        s.position.y += 10.0;
    }
    file.bs.gain_dbi = 10.0;
    file.name = "A_corner_30m_moved".into();

    let path = std::env::temp_dir().join("rise_moved_panels.json");
    file.save(&path)?;
    let loaded = load_scenario(&path)?;
    assert_eq!(loaded.file, file);
    println!("saved and reloaded {}", path.display());

    let base = compare_structures(&generate_canonical(CanonicalScene::ACorner30m).to_scene()?, &["ss1"], RegionMode::Dynamic)?;
    let moved = compare_structures(&loaded.scene, &["ss1"], RegionMode::Dynamic)?;
    println!("ss1 median: {:.2} dB → {:.2} dB", base[0].median.unwrap(), moved[0].median.unwrap());

    // validation errors name the offending field
    let broken = loaded.file.to_json().replace("\"gamma\": 0.5", "\"gamma\": 1.5");
    match ScenarioFile::from_json(&broken).and_then(|f| f.to_scene()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
