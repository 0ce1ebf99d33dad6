//! Beamforming gain |β| with continuous and 4-state phase control, and the
//! scan pattern of a beam frozen in one direction.

use std::f64::consts::FRAC_PI_4;

use rise_coverage::*;

fn link(scattered_deg: f64) -> LinkGeometry {
    LinkGeometry {
        d1: 30.0,
        d2: 30.0,
        incident: LocalAngles::from_signed(25f64.to_radians()),
        scattered: LocalAngles::from_signed(scattered_deg.to_radians()),
        bs_visible: true,
        user_visible: true,
    }
}

fn main() {
    let carrier = Carrier::new(5.5e9).unwrap();
    let quantized = PanelConfig::ss1();
    let continuous = PanelConfig { quantization: Quantization::Continuous, ..quantized };

    println!("aligned beam, 16x16 panel (floor for 4 states: cos(π/4) = {:.4})", FRAC_PI_4.cos());
    println!("{:>8} {:>12} {:>14} {:>14}", "θs [°]", "continuous", "4-state zero", "4-state best");
    for deg in (-80..=80).step_by(20) {
        let l = link(deg as f64);
        let beam = BeamSpec { desired: l.scattered };
        let cont = beamforming_gain(&continuous, &carrier, &l, &beam).norm();
        let zero = beamforming_gain(&quantized, &carrier, &l, &beam).norm();
        // the reference offset search picks the best of all 4-state settings
        let exc = Excitation::steer(&quantized, &carrier, &l.incident, &beam, PhaseReference::Optimal);
        let best = gain_from_excitation(&quantized, &carrier, &l, &exc).norm();
        println!("{deg:>8} {cont:>12.6} {zero:>14.6} {best:>14.6}");
    }

    println!("\nbeam frozen at -30°, observed at other angles");
    let aim = link(-30.0);
    let exc = Excitation::steer(&quantized, &carrier, &aim.incident, &BeamSpec { desired: aim.scattered }, PhaseReference::Optimal);
    for deg in (-60..=0).step_by(5) {
        let g = gain_from_excitation(&quantized, &carrier, &link(deg as f64), &exc).norm();
        let bar = "#".repeat((g * 50.0).round() as usize);
        println!("{deg:>6}° {g:>8.4} {bar}");
    }
}
