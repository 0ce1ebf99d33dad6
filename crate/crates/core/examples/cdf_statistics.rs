//! Empirical CDFs and percentiles of attenuation maps.

use rise_coverage::*;

fn main() -> Result<()> {
    let scene = generate_canonical(CanonicalScene::BWall).to_scene()?;
    for name in ["ss1", "es", "dee"] {
        let map = evaluate_region(&scene, name, BeamMode::Dynamic)?;
        let curve = cdf(&map)?;
        print!("{name:<4} n = {:>3} ({:>5.1}% of cells) ", curve.len(), 100.0 * map.reachable_fraction());
        for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
            print!(" p{:<2} {:>7.2}", (q * 100.0) as u32, percentile(&curve, q)?);
        }
        println!();
        // fraction of served cells within a 120 dB budget
        println!("      P(attenuation ≤ 120 dB) = {:.3}", curve.eval(120.0));
    }
    Ok(())
}
