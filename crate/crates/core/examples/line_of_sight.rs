//! Scene geometry: blockage by building footprints and the local angles a
//! structure sees.

use rise_coverage::*;

fn main() -> Result<()> {
    let block = Building::rectangle(0.0, 0.0, 10.0, 10.0)?;
    let l_shape = Building::new(vec![
        Point2::new(20.0, 0.0),
        Point2::new(30.0, 0.0),
        Point2::new(30.0, 4.0),
        Point2::new(24.0, 4.0),
        Point2::new(24.0, 10.0),
        Point2::new(20.0, 10.0),
    ])?;
    let scene = Scene::new(
        vec![block, l_shape],
        Point2::new(-5.0, 5.0),
        Carrier::new(5.5e9)?,
        AntennaGains::unity(),
        Default::default(),
        Region::new(Point2::new(0.0, 12.0), Point2::new(30.0, 20.0), 2.0)?,
    )?;

    let cases = [
        ("through the block", Point2::new(-5.0, 5.0), Point2::new(15.0, 5.0)),
        ("grazing the top face", Point2::new(-5.0, 10.0), Point2::new(15.0, 10.0)),
        ("corner to corner", Point2::new(0.0, 0.0), Point2::new(10.0, 10.0)),
        ("into the L notch", Point2::new(27.0, 12.0), Point2::new(27.0, 6.0)),
        ("across the L arm", Point2::new(22.0, 12.0), Point2::new(22.0, -2.0)),
    ];
    for (what, a, b) in cases {
        println!("{what:<22} blocked = {}", los_blocked(a, b, &scene));
    }

    // a panel on the top face of the block, facing north
    let pose = StructurePose::new(Point2::new(5.0, 10.0), 90f64.to_radians(), StructureKind::SurfaceReflective);
    println!("\nlocal angles from a north-facing panel at (5, 10):");
    for p in [Point2::new(5.0, 20.0), Point2::new(15.0, 20.0), Point2::new(-5.0, 12.0), Point2::new(5.0, 0.0)] {
        let a = local_angles(&pose, p)?;
        println!("  ({:>5.1}, {:>5.1})  θ = {:>6.2}°  signed {:>7.2}°", p.x, p.y, a.theta.to_degrees(), a.signed().to_degrees());
    }

    let link = link_geometry(&scene, &pose, Point2::new(15.0, 20.0))?;
    println!(
        "\nbs → panel → (15, 20): d1 {:.2} m, d2 {:.2} m, θi {:.2}°, θs {:.2}°, bs visible {}",
        link.d1,
        link.d2,
        link.incident.theta.to_degrees(),
        link.scattered.theta.to_degrees(),
        link.bs_visible
    );
    println!("{} grid cells in the region", scene.grid_points().len());
    Ok(())
}
