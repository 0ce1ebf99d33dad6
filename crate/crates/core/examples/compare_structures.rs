//! Side-by-side summary of every structure on every canonical scene, with
//! dynamic and fixed beams.

use rise_coverage::export::format_summary;
use rise_coverage::scenario::CANONICAL_STRUCTURES;
use rise_coverage::*;

fn main() -> Result<()> {
    for id in CanonicalScene::ALL {
        let scene = generate_canonical(id).to_scene()?;
        for (label, mode) in [
            ("dynamic beams", RegionMode::Dynamic),
            ("fixed beams (centroid)", RegionMode::Fixed(BeamStrategy::Centroid)),
        ] {
            println!("== {} — {label}", id.id());
            print!("{}", format_summary(&compare_structures(&scene, &CANONICAL_STRUCTURES, mode)?));
            println!();
        }
    }
    Ok(())
}
