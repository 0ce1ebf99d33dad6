//! Link budget of a single panel-assisted path: how attenuation moves with
//! the scattering angle, the aperture size and the panel's own loss.

use rise_coverage::*;

fn main() -> Result<()> {
    let carrier = Carrier::new(5.5e9)?;
    let gains = AntennaGains::unity();
    println!("carrier {:.1} GHz, wavelength {:.4} m", carrier.frequency() / 1e9, carrier.wavelength());

    let panels = [("ss1 16x16", PanelConfig::ss1()), ("ss2 32x32", PanelConfig::ss2()), ("es 16x16 Γ=0.5", PanelConfig::es())];
    println!("\nbs 30 m at 20° incidence, user 25 m away, beam steered at the user");
    print!("{:>8}", "θs [°]");
    for (name, _) in &panels {
        print!("{name:>18}");
    }
    println!();
    for deg in [0.0f64, 15.0, 30.0, 45.0, 60.0, 75.0, 85.0] {
        let link = LinkGeometry {
            d1: 30.0,
            d2: 25.0,
            incident: LocalAngles::from_signed(20f64.to_radians()),
            scattered: LocalAngles::from_signed(-deg.to_radians()),
            bs_visible: true,
            user_visible: true,
        };
        let beam = BeamSpec { desired: link.scattered };
        print!("{deg:>8.0}");
        for (_, cfg) in &panels {
            let db = path_gain(cfg, &gains, &carrier, &link, &beam)?.attenuation_db().unwrap();
            print!("{db:>15.2} dB");
        }
        println!();
    }

    // a user behind the aperture is never served
    let behind = LinkGeometry {
        d1: 30.0,
        d2: 25.0,
        incident: LocalAngles::BORESIGHT,
        scattered: LocalAngles::from_signed(100f64.to_radians()),
        bs_visible: true,
        user_visible: true,
    };
    let pg = path_gain(&PanelConfig::ss1(), &gains, &carrier, &behind, &BeamSpec { desired: behind.scattered })?;
    println!("\nuser 100° off the normal: {pg:?}");
    Ok(())
}
