//! Evaluates one structure over a canonical scene and writes the map CSV,
//! the CDF CSV and a PGM heatmap.
//!
//! cargo run --example coverage_map -- [A_corner_30m|A_corner_50m|B_wall] [structure] [out_dir]

use std::path::PathBuf;

use rise_coverage::export::{save_cdf_csv, save_map_csv, save_pgm};
use rise_coverage::*;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "A_corner_30m".into());
    let name = args.next().unwrap_or_else(|| "es".into());
    let dir = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("rise-coverage"));

    let id = CanonicalScene::from_id(&id).expect("unknown canonical scene");
    let scene = generate_canonical(id).to_scene()?;
    let map = evaluate_region(&scene, &name, BeamMode::Dynamic)?;
    let curve = cdf(&map)?;

    std::fs::create_dir_all(&dir).map_err(|e| Error::Io { path: dir.display().to_string(), source: e })?;
    let stem = format!("{}_{name}", id.id());
    save_map_csv(&map, &dir.join(format!("{stem}_map.csv")))?;
    save_cdf_csv(&curve, &dir.join(format!("{stem}_cdf.csv")))?;
    save_pgm(&map, &dir.join(format!("{stem}.pgm")))?;

    println!("{} × {} cells, {:.1}% reachable", map.cols(), map.rows(), 100.0 * map.reachable_fraction());
    println!("attenuation {:.2} .. {:.2} dB, median {:.2} dB", curve.min(), curve.max(), curve.median());
    println!("wrote {stem}_map.csv, {stem}_cdf.csv and {stem}.pgm to {}", dir.display());

    // coarse text rendering, north up: '#' best quartile … '.' worst, ' ' unreachable
    let q = [0.25, 0.5, 0.75].map(|f| percentile(&curve, f).unwrap());
    for r in (0..map.rows()).rev() {
        let line: String = (0..map.cols())
            .map(|c| match map.cells()[r * map.cols() + c] {
                None => ' ',
                Some(v) if v <= q[0] => '#',
                Some(v) if v <= q[1] => '+',
                Some(v) if v <= q[2] => '-',
                Some(_) => '.',
            })
            .collect();
        println!("  {line}");
    }
    Ok(())
}
