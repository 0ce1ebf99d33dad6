//! Diffraction enhancement edge (DEE).
//!
//! The DEE is a static structure on a building edge. It has no per-user
//! phase control; its link gain is
//!
//! ```text
//! PL = Gt·Gr·G̃·λ²·F̃ / (16π²·d1²·d2²)
//! ```
//!
//! with an effective area `G̃` in m² and a normalized incident-to-scattered
//! pattern `F̃`. The measured pattern of the physical structure is not
//! available, so `F̃` is a separable cosine-power stand-in:
//! `F̃ = max(cos θi, 0)^p · max(cos θ̃s, 0)^q`, where `θ̃s` is measured from the
//! configured boresight.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::panel::{check_distances, AntennaGains, Carrier, LinkGeometry, PathGain};
use crate::scene::LocalAngles;

/// Radiation efficiency at 5.5 GHz.
pub const EFFICIENCY_5_5_GHZ: f64 = 0.62;

/// Physical footprint matching a 16×16 panel at 1 cm pitch, in m².
pub const DEFAULT_AREA_M2: f64 = 0.16 * 0.16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeeConfig {
    /// `G̃` in m².
    pub effective_gain: f64,
    /// Global azimuth of the pattern maximum, pointing into the shadow.
    pub boresight_azimuth: f64,
    /// Incident-side exponent `p`.
    pub incident_exponent: f64,
    /// Scattered-side exponent `q`.
    pub scattered_exponent: f64,
    pub efficiency: f64,
}

impl Default for DeeConfig {
    fn default() -> Self {
        DeeConfig::from_area(DEFAULT_AREA_M2, EFFICIENCY_5_5_GHZ, 0.0)
    }
}

impl DeeConfig {
    /// `G̃ = η · area`, with the default `p = 2`, `q = 3` exponents.
    pub fn from_area(area_m2: f64, efficiency: f64, boresight_azimuth: f64) -> Self {
        DeeConfig {
            effective_gain: efficiency * area_m2,
            boresight_azimuth,
            incident_exponent: 2.0,
            scattered_exponent: 3.0,
            efficiency,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.effective_gain >= 0.0 && self.effective_gain.is_finite()) {
            return Err(Error::invalid("effective_gain_m2", "must be non-negative"));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::invalid(
                "efficiency",
                format!("{} not in (0, 1]", self.efficiency),
            ));
        }
        if !(self.incident_exponent >= 0.0 && self.scattered_exponent >= 0.0) {
            return Err(Error::invalid("pattern_exponents", "must be non-negative"));
        }
        if !self.boresight_azimuth.is_finite() {
            return Err(Error::invalid("boresight_deg", "non-finite"));
        }
        Ok(())
    }
}

fn lobe(theta: f64, exponent: f64) -> f64 {
    if theta.abs() < FRAC_PI_2 {
        theta.cos().powf(exponent)
    } else {
        0.0
    }
}

/// Normalized pattern `F̃ ∈ [0, 1]`.
pub fn dee_pattern(incident: &LocalAngles, scattered_from_boresight: f64, config: &DeeConfig) -> f64 {
    lobe(incident.theta, config.incident_exponent)
        * lobe(scattered_from_boresight, config.scattered_exponent)
}

/// Angle between the direction `azimuth` and the configured boresight, in `[0, π]`.
pub fn off_boresight(config: &DeeConfig, azimuth: f64) -> f64 {
    let d = (azimuth - config.boresight_azimuth).rem_euclid(2.0 * PI);
    if d > PI {
        2.0 * PI - d
    } else {
        d
    }
}

/// Path gain of a DEE-assisted link. `scattered_from_boresight` is the
/// angle between the structure→user direction and the boresight.
pub fn dee_path_gain(
    config: &DeeConfig,
    gains: &AntennaGains,
    carrier: &Carrier,
    link: &LinkGeometry,
    scattered_from_boresight: f64,
) -> Result<PathGain> {
    check_distances(link)?;
    if !link.bs_visible
        || !link.user_visible
        || link.incident.theta >= FRAC_PI_2
        || scattered_from_boresight.abs() >= FRAC_PI_2
    {
        return Ok(PathGain::Unreachable);
    }
    let lambda = carrier.wavelength();
    let f = dee_pattern(&link.incident, scattered_from_boresight, config);
    let num = gains.g_t * gains.g_r * config.effective_gain * lambda * lambda * f;
    let den = 16.0 * PI * PI * (link.d1 * link.d2).powi(2);
    Ok(PathGain::Reachable(num / den))
}
