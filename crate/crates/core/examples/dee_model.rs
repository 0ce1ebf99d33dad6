//! The diffraction enhancement edge: a static structure whose gain follows
//! an effective area and a cosine-power pattern around a fixed boresight.

use std::f64::consts::PI;

use rise_coverage::dee::{off_boresight, EFFICIENCY_5_5_GHZ};
use rise_coverage::*;

fn main() -> Result<()> {
    let carrier = Carrier::new(5.5e9)?;
    let gains = AntennaGains::unity();
    let cfg = DeeConfig::from_area(0.0256, EFFICIENCY_5_5_GHZ, -PI / 4.0);
    println!(
        "effective gain {:.5} m² (η = {}), exponents p = {}, q = {}",
        cfg.effective_gain, cfg.efficiency, cfg.incident_exponent, cfg.scattered_exponent
    );

    println!("\nd1 = 30 m, d2 = 20 m, normal incidence; user direction vs boresight -45°");
    for az in (-135..=45).step_by(15) {
        let azimuth = (az as f64).to_radians();
        let off = off_boresight(&cfg, azimuth);
        let link = LinkGeometry {
            d1: 30.0,
            d2: 20.0,
            incident: LocalAngles::BORESIGHT,
            scattered: LocalAngles::from_signed(off),
            bs_visible: true,
            user_visible: true,
        };
        match dee_path_gain(&cfg, &gains, &carrier, &link, off)?.attenuation_db() {
            Some(db) => println!("{az:>6}°  off-axis {:>5.1}°  {db:>8.2} dB", off.to_degrees()),
            None => println!("{az:>6}°  off-axis {:>5.1}°  unreachable", off.to_degrees()),
        }
    }

    println!("\nlarger edges collect more energy");
    for area in [0.01, 0.0256, 0.05, 0.1] {
        let c = DeeConfig::from_area(area, EFFICIENCY_5_5_GHZ, 0.0);
        let link = LinkGeometry {
            d1: 30.0,
            d2: 20.0,
            incident: LocalAngles::BORESIGHT,
            scattered: LocalAngles::BORESIGHT,
            bs_visible: true,
            user_visible: true,
        };
        let db = dee_path_gain(&c, &gains, &carrier, &link, 0.0)?.attenuation_db().unwrap();
        println!("  {area:>6.4} m²  {db:.2} dB");
    }
    Ok(())
}
