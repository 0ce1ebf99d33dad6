//! Reflective and transmissive metasurface panels.
//!
//! A panel is an `M × N` grid of units with pitch `d_x × d_y`. Each unit
//! applies an excitation phase; the coherent sum of excitation and incident
//! phases gives the normalized beamforming gain `β`, which scales the
//! far-field path gain
//!
//! ```text
//! PL = Γ·Gt·Gr·G·M²N²·dx·dy·λ²·Fi(θi)·Fs(θs)·A² / (64π³·d1²·d2²) · |β|²
//! ```
//!
//! Unit indices are 1-based, `m` along the panel's horizontal axis (pitch
//! `d_x`) and `n` along its vertical axis (pitch `d_y`). Per-unit vectors are
//! stored row-major with `m` as the outer index.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scene::LocalAngles;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Carrier {
    frequency: f64,
}

impl Carrier {
    pub fn new(frequency: f64) -> Result<Self> {
        if !(frequency > 0.0 && frequency.is_finite()) {
            return Err(Error::invalid("carrier.frequency_hz", "must be positive"));
        }
        Ok(Carrier { frequency })
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency
    }

    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength()
    }
}

/// Number of discrete phase states per unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantization {
    Continuous,
    Levels(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelConfig {
    /// `M`, units along the horizontal axis.
    pub rows: u32,
    /// `N`, units along the vertical axis.
    pub cols: u32,
    pub dx: f64,
    pub dy: f64,
    /// Reflection/transmission attenuation `Γ`.
    pub gamma: f64,
    /// Excitation amplitude `A`.
    pub amplitude: f64,
    /// Maximum structure gain `G`.
    pub gain: f64,
    /// Exponent of the scattered pattern.
    pub alpha: f64,
    pub quantization: Quantization,
}

impl PanelConfig {
    /// Reflective 16×16 panel.
    pub fn ss1() -> Self {
        PanelConfig {
            rows: 16,
            cols: 16,
            dx: 0.01,
            dy: 0.01,
            gamma: 1.0,
            amplitude: 1.0,
            gain: 1.0,
            alpha: 3.0,
            quantization: Quantization::Levels(4),
        }
    }

    /// Reflective 32×32 panel.
    pub fn ss2() -> Self {
        PanelConfig {
            rows: 32,
            cols: 32,
            ..Self::ss1()
        }
    }

    /// Transmissive 16×16 edge panel with penetration loss.
    pub fn es() -> Self {
        PanelConfig {
            gamma: 0.5,
            ..Self::ss1()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 {
            return Err(Error::invalid("rows", "must be at least 1"));
        }
        if self.cols == 0 {
            return Err(Error::invalid("cols", "must be at least 1"));
        }
        for (name, v) in [("dx", self.dx), ("dy", self.dy)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, "unit pitch must be positive"));
            }
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::invalid("gamma", format!("{} not in (0, 1]", self.gamma)));
        }
        if !(self.amplitude > 0.0 && self.amplitude <= 1.0) {
            return Err(Error::invalid(
                "amplitude",
                format!("{} not in (0, 1]", self.amplitude),
            ));
        }
        if !(self.gain >= 1.0 && self.gain.is_finite()) {
            return Err(Error::invalid("gain", format!("{} is below 1", self.gain)));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid("alpha", "must be non-negative"));
        }
        if self.quantization == Quantization::Levels(0) {
            return Err(Error::invalid("quantization_levels", "must be at least 1"));
        }
        Ok(())
    }

    pub fn units(&self) -> usize {
        self.rows as usize * self.cols as usize
    }
}

/// Antenna gains as linear power ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaGains {
    pub g_t: f64,
    pub g_r: f64,
}

impl AntennaGains {
    pub fn unity() -> Self {
        AntennaGains { g_t: 1.0, g_r: 1.0 }
    }

    pub fn from_dbi(bs_dbi: f64, ue_dbi: f64) -> Result<Self> {
        if !bs_dbi.is_finite() || !ue_dbi.is_finite() {
            return Err(Error::invalid("gain_dbi", "non-finite antenna gain"));
        }
        Ok(AntennaGains {
            g_t: 10f64.powf(bs_dbi / 10.0),
            g_r: 10f64.powf(ue_dbi / 10.0),
        })
    }
}

/// Geometry of one bs → structure → user path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub d1: f64,
    pub d2: f64,
    pub incident: LocalAngles,
    pub scattered: LocalAngles,
    pub bs_visible: bool,
    pub user_visible: bool,
}

/// Desired beam direction in the panel's local frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub desired: LocalAngles,
}

/// `cos²θ` in front of the aperture, zero behind it.
pub fn incident_pattern(theta_i: f64) -> f64 {
    if theta_i.abs() < FRAC_PI_2 {
        theta_i.cos().powi(2)
    } else {
        0.0
    }
}

/// `cos^α θ` in front of the aperture, zero behind it.
pub fn scattered_pattern(theta_s: f64, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::invalid("alpha", "must be non-negative"));
    }
    Ok(if theta_s.abs() < FRAC_PI_2 {
        theta_s.cos().powf(alpha)
    } else {
        0.0
    })
}

fn unit_offsets(m: u32, n: u32, dx: f64, dy: f64) -> (f64, f64) {
    ((m as f64 - 0.5) * dx, (n as f64 - 0.5) * dy)
}

/// Phase of the incident wave at unit `(m, n)`, in `[0, 2π)`.
pub fn unit_incident_phase(
    m: u32,
    n: u32,
    link: &LinkGeometry,
    carrier: &Carrier,
    dx: f64,
    dy: f64,
) -> f64 {
    let (ix, iy) = link.incident.direction_cosines();
    let (sx, sy) = link.scattered.direction_cosines();
    let (px, py) = unit_offsets(m, n, dx, dy);
    wrap_phase(carrier.wavenumber() * ((ix + sx) * px + (iy + sy) * py))
}

/// Excitation phase of unit `(m, n)` steering toward `beam`, in `[0, 2π)`.
pub fn unit_excitation_phase(
    m: u32,
    n: u32,
    incident: &LocalAngles,
    beam: &BeamSpec,
    carrier: &Carrier,
    dx: f64,
    dy: f64,
) -> f64 {
    let (ix, iy) = incident.direction_cosines();
    let (bx, by) = beam.desired.direction_cosines();
    let (px, py) = unit_offsets(m, n, dx, dy);
    wrap_phase(carrier.wavenumber() * ((-ix - bx) * px + (-iy - by) * py))
}

pub(crate) fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn level_index(phase: f64, levels: u32) -> u32 {
    let step = TAU / levels as f64;
    let v = wrap_phase(phase) / step;
    let low = v.floor();
    let frac = v - low;
    let low = (low as u32).min(levels - 1);
    if frac > 0.5 {
        (low + 1) % levels
    } else if frac == 0.5 && low == levels - 1 {
        // tie between the top level and level 0
        0
    } else {
        low
    }
}

/// Nearest of the `levels` uniformly spaced phase states on `[0, 2π)`
/// under circular distance; ties go to the lower state index.
pub fn quantize_phase(phase: f64, levels: u32) -> Result<f64> {
    if levels == 0 {
        return Err(Error::invalid("quantization_levels", "must be at least 1"));
    }
    Ok(level_index(phase, levels) as f64 * TAU / levels as f64)
}

/// How the common phase reference is chosen before quantizing a steered
/// excitation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseReference {
    /// Quantize the steered phases as computed.
    Zero,
    /// Add the common offset that maximizes `|β|` toward the beam
    /// direction. Among all discrete configurations this attains the best
    /// gain at the aimed direction.
    #[default]
    Optimal,
}

/// Per-unit excitation phases of a panel, row-major (`m` outer).
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    phases: Vec<f64>,
    /// One phase per row when every unit of a row shares it, which is the
    /// case for any in-plane steering.
    rows: Option<Vec<f64>>,
}

fn in_plane(a: &LocalAngles, b: &LocalAngles) -> bool {
    a.direction_cosines().1 == 0.0 && b.direction_cosines().1 == 0.0
}

fn expand_rows(config: &PanelConfig, rows: &[f64]) -> Vec<f64> {
    rows.iter()
        .flat_map(|&p| std::iter::repeat_n(p, config.cols as usize))
        .collect()
}

impl Excitation {
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    fn from_rows(config: &PanelConfig, rows: Vec<f64>) -> Self {
        Excitation {
            phases: expand_rows(config, &rows),
            rows: Some(rows),
        }
    }

    /// Continuous steering phases toward `beam`.
    pub fn continuous(
        config: &PanelConfig,
        carrier: &Carrier,
        incident: &LocalAngles,
        beam: &BeamSpec,
    ) -> Self {
        if in_plane(incident, &beam.desired) {
            let rows = (1..=config.rows)
                .map(|m| unit_excitation_phase(m, 1, incident, beam, carrier, config.dx, config.dy))
                .collect();
            return Self::from_rows(config, rows);
        }
        let mut phases = Vec::with_capacity(config.units());
        for m in 1..=config.rows {
            for n in 1..=config.cols {
                phases.push(unit_excitation_phase(
                    m, n, incident, beam, carrier, config.dx, config.dy,
                ));
            }
        }
        Excitation { phases, rows: None }
    }

    /// Steering phases toward `beam`, quantized per `config.quantization`.
    pub fn steer(
        config: &PanelConfig,
        carrier: &Carrier,
        incident: &LocalAngles,
        beam: &BeamSpec,
        reference: PhaseReference,
    ) -> Self {
        let cont = Self::continuous(config, carrier, incident, beam);
        let levels = match config.quantization {
            Quantization::Continuous => return cont,
            Quantization::Levels(l) => l,
        };
        // with row-constant phases every row is N identical units, so the
        // search and the quantization can run on one unit per row
        let (phases, rows_only) = match &cont.rows {
            Some(r) => (r.as_slice(), true),
            None => (cont.phases.as_slice(), false),
        };
        let offset = match reference {
            PhaseReference::Zero => 0.0,
            PhaseReference::Optimal => {
                let aim = LinkGeometry {
                    d1: 1.0,
                    d2: 1.0,
                    incident: *incident,
                    scattered: beam.desired,
                    bs_visible: true,
                    user_visible: true,
                };
                let inc = if rows_only {
                    row_incident_phases(config, carrier, &aim)
                } else {
                    incident_phases(config, carrier, &aim)
                };
                best_offset(phases, &inc, levels)
            }
        };
        let step = TAU / levels as f64;
        let quantized: Vec<f64> = phases
            .iter()
            .map(|&p| level_index(p + offset, levels) as f64 * step)
            .collect();
        if rows_only {
            Self::from_rows(config, quantized)
        } else {
            Excitation {
                phases: quantized,
                rows: None,
            }
        }
    }
}

/// Incident phases of every unit, row-major.
pub fn incident_phases(config: &PanelConfig, carrier: &Carrier, link: &LinkGeometry) -> Vec<f64> {
    if in_plane(&link.incident, &link.scattered) {
        return expand_rows(config, &row_incident_phases(config, carrier, link));
    }
    let mut out = Vec::with_capacity(config.units());
    for m in 1..=config.rows {
        for n in 1..=config.cols {
            out.push(unit_incident_phase(m, n, link, carrier, config.dx, config.dy));
        }
    }
    out
}

/// Incident phase of the first unit of each row; valid for all units of the
/// row when the link is in-plane.
fn row_incident_phases(config: &PanelConfig, carrier: &Carrier, link: &LinkGeometry) -> Vec<f64> {
    (1..=config.rows)
        .map(|m| unit_incident_phase(m, 1, link, carrier, config.dx, config.dy))
        .collect()
}

/// Searches the common reference offset in `[0, 2π/L)` maximizing
/// `|Σ exp(j(q_k + incident_k))|`, where `q_k` is the quantized
/// `phase_k + offset`. Every distinct configuration reachable by an offset
/// is visited once by sweeping the per-unit switching points in order.
fn best_offset(phases: &[f64], incident: &[f64], levels: u32) -> f64 {
    if levels == 1 || phases.is_empty() {
        return 0.0;
    }
    let step = TAU / levels as f64;
    let rotor: Vec<Complex64> = (0..levels)
        .map(|k| Complex64::from_polar(1.0, k as f64 * step))
        .collect();
    let unit: Vec<Complex64> = incident
        .iter()
        .map(|&p| Complex64::from_polar(1.0, p))
        .collect();
    // offset at which each unit rounds up to its next state
    let mut switches: Vec<(f64, usize)> = phases
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let v = wrap_phase(p) / step;
            ((0.5 - (v - v.floor())).rem_euclid(1.0) * step, k)
        })
        .collect();
    switches.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let first = switches[0].0;
    let last = switches[switches.len() - 1].0;
    let start = 0.5 * (first + last - step);
    let mut level: Vec<u32> = phases
        .iter()
        .map(|&p| level_index(p + start, levels))
        .collect();
    let mut sum: Complex64 = level
        .iter()
        .zip(&unit)
        .map(|(&l, u)| u * rotor[l as usize])
        .sum();
    let (mut best, mut best_offset) = (sum.norm(), start);

    let mut i = 0;
    while i < switches.len() {
        let at = switches[i].0;
        while i < switches.len() && switches[i].0 == at {
            let k = switches[i].1;
            let next = (level[k] + 1) % levels;
            sum += unit[k] * (rotor[next as usize] - rotor[level[k] as usize]);
            level[k] = next;
            i += 1;
        }
        if i == switches.len() {
            // back to the starting configuration, rotated by one state
            break;
        }
        let norm = sum.norm();
        if norm > best {
            best = norm;
            best_offset = 0.5 * (at + switches[i].0);
        }
    }
    best_offset
}

/// `β = (1/MN) Σ exp(j(φ_k + φ^i_k))` over an explicit excitation.
pub fn gain_from_excitation(
    config: &PanelConfig,
    carrier: &Carrier,
    link: &LinkGeometry,
    excitation: &Excitation,
) -> Complex64 {
    if let (Some(rows), true) = (&excitation.rows, in_plane(&link.incident, &link.scattered)) {
        let inc = row_incident_phases(config, carrier, link);
        let sum: Complex64 = rows
            .iter()
            .zip(&inc)
            .map(|(&e, &i)| Complex64::from_polar(1.0, e + i))
            .sum();
        return sum / config.rows as f64;
    }
    let inc = incident_phases(config, carrier, link);
    let sum: Complex64 = excitation
        .phases
        .iter()
        .zip(&inc)
        .map(|(&e, &i)| Complex64::from_polar(1.0, e + i))
        .sum();
    sum / config.units() as f64
}

/// Normalized beamforming gain toward the link's scattered direction with
/// the panel steered at `beam`. Quantization, when configured, uses the zero
/// phase reference.
pub fn beamforming_gain(
    config: &PanelConfig,
    carrier: &Carrier,
    link: &LinkGeometry,
    beam: &BeamSpec,
) -> Complex64 {
    let exc = Excitation::steer(config, carrier, &link.incident, beam, PhaseReference::Zero);
    gain_from_excitation(config, carrier, link, &exc)
}

/// Outcome of a path-gain evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathGain {
    /// Received-to-transmitted power ratio.
    Reachable(f64),
    /// A sub-link is blocked or the path leaves through the back of the
    /// aperture.
    Unreachable,
}

impl PathGain {
    pub fn ratio(&self) -> Option<f64> {
        match *self {
            PathGain::Reachable(r) => Some(r),
            PathGain::Unreachable => None,
        }
    }

    /// `-10·log10(PL)`; larger is worse.
    pub fn attenuation_db(&self) -> Option<f64> {
        self.ratio().map(|r| -10.0 * r.log10())
    }
}

pub(crate) fn check_distances(link: &LinkGeometry) -> Result<()> {
    if link.d1.is_nan() || link.d1 <= 0.0 {
        return Err(Error::Coincident("zero bs-to-structure distance"));
    }
    if link.d2.is_nan() || link.d2 <= 0.0 {
        return Err(Error::Coincident("zero structure-to-user distance"));
    }
    Ok(())
}

/// True iff the panel can serve this link at all.
pub fn panel_reachable(link: &LinkGeometry) -> bool {
    link.bs_visible
        && link.user_visible
        && link.incident.theta < FRAC_PI_2
        && link.scattered.theta < FRAC_PI_2
}

/// Path gain for a given `|β|`.
pub fn path_gain_with_beta(
    config: &PanelConfig,
    gains: &AntennaGains,
    carrier: &Carrier,
    link: &LinkGeometry,
    beta_abs: f64,
) -> Result<PathGain> {
    check_distances(link)?;
    if !panel_reachable(link) {
        return Ok(PathGain::Unreachable);
    }
    let lambda = carrier.wavelength();
    let mn = config.units() as f64;
    let fi = incident_pattern(link.incident.theta);
    let fs = scattered_pattern(link.scattered.theta, config.alpha)?;
    let num = config.gamma
        * gains.g_t
        * gains.g_r
        * config.gain
        * mn
        * mn
        * config.dx
        * config.dy
        * lambda
        * lambda
        * fi
        * fs
        * config.amplitude
        * config.amplitude;
    let den = 64.0 * PI.powi(3) * (link.d1 * link.d2).powi(2);
    Ok(PathGain::Reachable(num / den * beta_abs * beta_abs))
}

/// Path gain of a panel-assisted link steered at `beam`.
pub fn path_gain(
    config: &PanelConfig,
    gains: &AntennaGains,
    carrier: &Carrier,
    link: &LinkGeometry,
    beam: &BeamSpec,
) -> Result<PathGain> {
    check_distances(link)?;
    if !panel_reachable(link) {
        return Ok(PathGain::Unreachable);
    }
    let beta = beamforming_gain(config, carrier, link, beam);
    path_gain_with_beta(config, gains, carrier, link, beta.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn carrier() -> Carrier {
        Carrier::new(5.5e9).unwrap()
    }

    fn link(incident: LocalAngles, scattered: LocalAngles) -> LinkGeometry {
        LinkGeometry {
            d1: 30.0,
            d2: 30.0,
            incident,
            scattered,
            bs_visible: true,
            user_visible: true,
        }
    }

    fn angles(signed: f64) -> LocalAngles {
        LocalAngles::from_signed(signed)
    }

    #[test]
    fn wavelength_at_5_5_ghz() {
        assert_abs_diff_eq!(carrier().wavelength(), 0.054507719636, epsilon = 1e-12);
        assert!(Carrier::new(0.0).is_err());
    }

    #[test]
    fn patterns() {
        assert_eq!(incident_pattern(0.0), 1.0);
        assert_abs_diff_eq!(incident_pattern(FRAC_PI_3), 0.25, epsilon = 1e-15);
        assert_eq!(incident_pattern(FRAC_PI_2 + 0.1), 0.0);
        assert_eq!(scattered_pattern(0.0, 3.0).unwrap(), 1.0);
        assert_abs_diff_eq!(scattered_pattern(FRAC_PI_3, 3.0).unwrap(), 0.125, epsilon = 1e-15);
        assert_eq!(scattered_pattern(2.0, 3.0).unwrap(), 0.0);
        assert!(scattered_pattern(0.1, -1.0).is_err());
    }

    #[test]
    fn patterns_non_increasing_on_front_half() {
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for i in 0..=900 {
            let t = i as f64 * FRAC_PI_2 / 900.0;
            let cur = (incident_pattern(t), scattered_pattern(t, 3.0).unwrap());
            assert!(cur.0 <= prev.0 && cur.1 <= prev.1);
            assert!((0.0..=1.0).contains(&cur.0) && (0.0..=1.0).contains(&cur.1));
            prev = cur;
        }
    }

    #[test]
    fn incident_phase_examples() {
        let c = carrier();
        let l = link(LocalAngles::BORESIGHT, LocalAngles::BORESIGHT);
        for (m, n) in [(1, 1), (7, 3), (16, 16)] {
            assert_eq!(unit_incident_phase(m, n, &l, &c, 0.01, 0.01), 0.0);
        }
        // direct evaluation: 2π/λ · sin(π/6) · 0.5 · 0.01
        let l = link(LocalAngles::BORESIGHT, angles(FRAC_PI_6));
        let p = unit_incident_phase(1, 1, &l, &c, 0.01, 0.01);
        assert_abs_diff_eq!(p, 0.2881786905, epsilon = 1e-9);
        assert_abs_diff_eq!(p, 0.28817, epsilon = 1e-5);
        // the n term vanishes in the plane
        for n in 1..=16 {
            assert_eq!(unit_incident_phase(3, n, &l, &c, 0.01, 0.01), unit_incident_phase(3, 1, &l, &c, 0.01, 0.01));
        }
        let l = link(angles(-0.4), angles(-FRAC_PI_6));
        for n in 1..=16 {
            assert_eq!(unit_incident_phase(5, n, &l, &c, 0.01, 0.01), unit_incident_phase(5, 1, &l, &c, 0.01, 0.01));
        }
    }

    #[test]
    fn excitation_phase_examples() {
        let c = carrier();
        let beam = BeamSpec { desired: LocalAngles::BORESIGHT };
        assert_eq!(unit_excitation_phase(4, 2, &LocalAngles::BORESIGHT, &beam, &c, 0.01, 0.01), 0.0);
        let beam = BeamSpec { desired: angles(FRAC_PI_6) };
        let p = unit_excitation_phase(1, 1, &LocalAngles::BORESIGHT, &beam, &c, 0.01, 0.01);
        assert_abs_diff_eq!(p, 5.9950066167, epsilon = 1e-9);
        assert_abs_diff_eq!(p, 5.99501, epsilon = 1e-5);
    }

    #[test]
    fn quantizer_examples() {
        assert_eq!(quantize_phase(0.3, 4).unwrap(), 0.0);
        assert_eq!(quantize_phase(0.8, 4).unwrap(), FRAC_PI_2);
        assert_eq!(quantize_phase(6.0, 4).unwrap(), 0.0);
        assert!(quantize_phase(1.0, 0).is_err());
        // ties go to the lower index
        assert_eq!(quantize_phase(FRAC_PI_4, 4).unwrap(), 0.0);
        assert_eq!(quantize_phase(7.0 * FRAC_PI_4, 4).unwrap(), 0.0);
        assert_eq!(quantize_phase(2.5, 1).unwrap(), 0.0);
    }

    #[test]
    fn aligned_continuous_beam_is_exactly_one() {
        let mut cfg = PanelConfig::ss1();
        cfg.quantization = Quantization::Continuous;
        let c = carrier();
        for i in 0..181 {
            let ts = i as f64 * FRAC_PI_2 / 181.0;
            let l = link(angles(-0.3), angles(ts));
            let b = beamforming_gain(&cfg, &c, &l, &BeamSpec { desired: l.scattered });
            assert!((b - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn half_and_half_cancel() {
        let cfg = PanelConfig {
            rows: 2,
            cols: 1,
            ..PanelConfig::ss1()
        };
        let l = link(LocalAngles::BORESIGHT, LocalAngles::BORESIGHT);
        let exc = Excitation { phases: vec![0.0, PI], rows: None };
        let b = gain_from_excitation(&cfg, &carrier(), &l, &exc);
        assert!(b.norm() < 1e-15);
    }

    #[test]
    fn optimal_reference_never_loses_to_zero_reference() {
        let cfg = PanelConfig::ss1();
        let c = carrier();
        for i in 0..90 {
            let ts = (i as f64 - 45.0).to_radians() * 1.9;
            let l = link(angles(0.7), angles(ts));
            let beam = BeamSpec { desired: l.scattered };
            let zero = Excitation::steer(&cfg, &c, &l.incident, &beam, PhaseReference::Zero);
            let opt = Excitation::steer(&cfg, &c, &l.incident, &beam, PhaseReference::Optimal);
            let bz = gain_from_excitation(&cfg, &c, &l, &zero).norm();
            let bo = gain_from_excitation(&cfg, &c, &l, &opt).norm();
            assert!(bo >= bz - 1e-12, "{bo} < {bz}");
            assert!(bo >= FRAC_PI_4.cos() - 1e-12);
        }
    }

    #[test]
    fn row_reduction_matches_full_sum() {
        let cfg = PanelConfig { rows: 8, cols: 5, ..PanelConfig::ss1() };
        let c = carrier();
        let k = c.wavenumber();
        for (ti, ts, td) in [(0.3, -0.8, -0.5), (-1.2, 0.4, 0.1), (0.0, 1.3, 1.0)] {
            let l = link(angles(ti), angles(ts));
            let beam = BeamSpec { desired: angles(td) };
            let exc = Excitation::steer(&cfg, &c, &l.incident, &beam, PhaseReference::Optimal);
            assert!(exc.rows.is_some());
            // every unit written out, in-plane offsets only
            let mut full = Complex64::new(0.0, 0.0);
            for m in 0..8 {
                for n in 0..5 {
                    let px = (m as f64 + 0.5) * 0.01;
                    let inc = k * (ti.sin() + ts.sin()) * px;
                    full += Complex64::from_polar(1.0, exc.phases()[m * 5 + n] + inc);
                }
            }
            let got = gain_from_excitation(&cfg, &c, &l, &exc);
            assert!((got - full / 40.0).norm() < 1e-12);
        }
    }

    /// Brute force over every 4-state configuration of a 6-unit row.
    #[test]
    fn optimal_reference_matches_exhaustive_search() {
        let cfg = PanelConfig {
            rows: 6,
            cols: 1,
            ..PanelConfig::ss1()
        };
        let c = carrier();
        for (ti, ts) in [(0.2, 0.9), (-0.6, 1.2), (0.0, -0.35), (1.1, -1.3)] {
            let l = link(angles(ti), angles(ts));
            let inc = incident_phases(&cfg, &c, &l);
            let mut best = 0.0f64;
            for code in 0..4usize.pow(6) {
                let s: Complex64 = (0..6)
                    .map(|k| {
                        let q = ((code >> (2 * k)) & 3) as f64 * FRAC_PI_2;
                        Complex64::from_polar(1.0, q + inc[k])
                    })
                    .sum();
                best = best.max(s.norm() / 6.0);
            }
            let exc = Excitation::steer(&cfg, &c, &l.incident, &BeamSpec { desired: l.scattered }, PhaseReference::Optimal);
            let got = gain_from_excitation(&cfg, &c, &l, &exc).norm();
            assert_abs_diff_eq!(got, best, epsilon = 1e-12);
        }
    }

    #[test]
    fn spot_check_path_gain() {
        let cfg = PanelConfig {
            gamma: 1.0,
            quantization: Quantization::Continuous,
            ..PanelConfig::ss1()
        };
        let l = link(LocalAngles::BORESIGHT, LocalAngles::BORESIGHT);
        let pl = path_gain_with_beta(&cfg, &AntennaGains::unity(), &carrier(), &l, 1.0).unwrap();
        // independent evaluation: 65536·1e-4·λ²/(64π³·900²)
        assert_relative_eq!(pl.ratio().unwrap(), 1.2113826426e-11, max_relative = 1e-9);
        assert_abs_diff_eq!(pl.attenuation_db().unwrap(), 109.1671865345, epsilon = 1e-6);
    }

    #[test]
    fn gamma_halving_costs_3_db() {
        let l = link(angles(0.2), angles(-0.5));
        let c = carrier();
        let g = AntennaGains::unity();
        let a = path_gain_with_beta(&PanelConfig::ss1(), &g, &c, &l, 0.9).unwrap();
        let b = path_gain_with_beta(&PanelConfig::es(), &g, &c, &l, 0.9).unwrap();
        assert_abs_diff_eq!(
            b.attenuation_db().unwrap() - a.attenuation_db().unwrap(),
            10.0 * 2f64.log10(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn blocked_or_behind_is_unreachable() {
        let c = carrier();
        let g = AntennaGains::unity();
        let beam = BeamSpec { desired: LocalAngles::BORESIGHT };
        let mut l = link(LocalAngles::BORESIGHT, LocalAngles::BORESIGHT);
        l.user_visible = false;
        assert_eq!(path_gain(&PanelConfig::ss1(), &g, &c, &l, &beam).unwrap(), PathGain::Unreachable);
        let l = link(LocalAngles::BORESIGHT, angles(2.0));
        assert_eq!(path_gain(&PanelConfig::ss1(), &g, &c, &l, &beam).unwrap(), PathGain::Unreachable);
        let mut l = link(LocalAngles::BORESIGHT, LocalAngles::BORESIGHT);
        l.d2 = 0.0;
        assert!(path_gain(&PanelConfig::ss1(), &g, &c, &l, &beam).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(PanelConfig::ss1().validate().is_ok());
        let bad = PanelConfig { gamma: 1.5, ..PanelConfig::ss1() };
        let err = bad.validate().unwrap_err().to_string();
        assert!(err.contains("gamma"), "{err}");
        assert!(PanelConfig { rows: 0, ..PanelConfig::ss1() }.validate().is_err());
        assert!(PanelConfig { amplitude: 0.0, ..PanelConfig::ss1() }.validate().is_err());
        assert!(PanelConfig { quantization: Quantization::Levels(0), ..PanelConfig::ss1() }.validate().is_err());
    }

    proptest! {
        #[test]
        fn beta_bounded_by_one(ti in -1.5f64..1.5, ts in -1.5f64..1.5, td in -1.5f64..1.5, levels in 1u32..9) {
            let cfg = PanelConfig { rows: 8, cols: 3, quantization: Quantization::Levels(levels), ..PanelConfig::ss1() };
            let l = link(angles(ti), angles(ts));
            let b = beamforming_gain(&cfg, &carrier(), &l, &BeamSpec { desired: angles(td) });
            prop_assert!(b.norm() <= 1.0 + 1e-12);
        }

        #[test]
        fn phases_in_range(m in 1u32..40, n in 1u32..40, ti in -3.1f64..3.1, ts in -3.1f64..3.1) {
            let l = link(angles(ti), angles(ts));
            let c = carrier();
            let p = unit_incident_phase(m, n, &l, &c, 0.013, 0.007);
            prop_assert!((0.0..TAU).contains(&p));
            let e = unit_excitation_phase(m, n, &l.incident, &BeamSpec { desired: l.scattered }, &c, 0.013, 0.007);
            prop_assert!((0.0..TAU).contains(&e));
            let d = wrap_phase(p + e);
            prop_assert!(d < 1e-9 || TAU - d < 1e-9);
        }

        #[test]
        fn quantized_aligned_beam_bound(ti in -1.5f64..1.5, ts in -1.5f64..1.5, levels in 2u32..9) {
            let cfg = PanelConfig { quantization: Quantization::Levels(levels), ..PanelConfig::ss1() };
            let l = link(angles(ti), angles(ts));
            let b = beamforming_gain(&cfg, &carrier(), &l, &BeamSpec { desired: l.scattered });
            prop_assert!(b.norm() >= (PI / levels as f64).cos() - 1e-12);
        }
    }
}
