//! What a static beam costs: dynamic steering against a centroid-aimed
//! beam and the best 1° grid direction, on every canonical scene.

use rise_coverage::*;

fn median(map: &PathlossMap) -> f64 {
    percentile(&cdf(map).unwrap(), 0.5).unwrap()
}

fn main() -> Result<()> {
    println!("{:<14} {:<5} {:>10} {:>18} {:>18}", "scene", "panel", "dynamic", "centroid beam", "searched beam");
    for id in CanonicalScene::ALL {
        let scene = generate_canonical(id).to_scene()?;
        for name in ["ss1", "ss2", "es"] {
            let dynamic = median(&evaluate_region(&scene, name, BeamMode::Dynamic)?);
            let mut cols = Vec::new();
            for strategy in [BeamStrategy::Centroid, BeamStrategy::GridSearchMedian] {
                let beam = select_fixed_beam(&scene, name, strategy)?;
                let m = median(&evaluate_region(&scene, name, BeamMode::Fixed(beam))?);
                cols.push(format!("{m:.2} @{:>6.1}°", beam.desired.signed().to_degrees()));
            }
            println!("{:<14} {:<5} {:>10.2} {:>18} {:>18}", id.id(), name, dynamic, cols[0], cols[1]);
        }
    }
    Ok(())
}
