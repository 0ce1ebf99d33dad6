//! Scenario evaluation: per-point and region-wide attenuation, fixed-beam
//! selection and side-by-side comparison of structures.
//!
//! Only the structure-assisted path is modeled. Every cell is evaluated
//! independently, so region maps are identical no matter how the work is
//! scheduled across threads.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;

use crate::dee::{dee_path_gain, off_boresight};
use crate::error::{Error, Result};
use crate::panel::{
    gain_from_excitation, panel_reachable, path_gain_with_beta, BeamSpec, Excitation,
    PathGain, PhaseReference,
};
use crate::scene::{link_geometry, los_blocked, local_angles, LocalAngles, Point2, Region, Scene, Structure, StructureModel};
use crate::stats::{percentile, CdfCurve};

/// Per-user realignment or one static beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BeamMode {
    Dynamic,
    Fixed(BeamSpec),
}

/// How a fixed beam direction is chosen for a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BeamStrategy {
    /// Aim at the centroid of the reachable cells.
    #[default]
    Centroid,
    /// Sweep the front half-space on a 1° grid and keep the direction with
    /// the lowest median attenuation.
    GridSearchMedian,
}

/// Beam handling for whole-region work, where fixed beams are selected per
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionMode {
    Dynamic,
    Fixed(BeamStrategy),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    /// Report cells with a clear direct bs → user path as unreachable, so
    /// that only the shadow region is analysed.
    pub shadow_only: bool,
}

/// Attenuation in dB for every grid cell, row-major; `None` marks an
/// unreachable cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PathlossMap {
    pub region: Region,
    cells: Vec<Option<f64>>,
}

impl PathlossMap {
    pub fn new(region: Region, cells: Vec<Option<f64>>) -> Result<Self> {
        if cells.len() != region.len() {
            return Err(Error::invalid(
                "cells",
                format!("{} cells for a {}-cell grid", cells.len(), region.len()),
            ));
        }
        Ok(PathlossMap { region, cells })
    }

    pub fn cells(&self) -> &[Option<f64>] {
        &self.cells
    }

    pub fn rows(&self) -> usize {
        self.region.rows()
    }

    pub fn cols(&self) -> usize {
        self.region.cols()
    }

    pub fn reachable_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.cells.iter().filter_map(|c| *c)
    }

    pub fn reachable_fraction(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        self.reachable_values().count() as f64 / self.cells.len() as f64
    }

    /// `(center, value)` pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Point2, Option<f64>)> + '_ {
        let cols = self.cols();
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.region.cell_center(i / cols, i % cols), v))
    }
}

/// True iff the structure can serve `user` at all: both sub-links clear and
/// the path in front of the aperture. Independent of any beam choice.
pub fn geometrically_reachable(scene: &Scene, structure: &Structure, user: Point2) -> Result<bool> {
    if user == structure.pose.position || user == scene.bs_position || scene.inside_building(user) {
        return Ok(false);
    }
    let link = link_geometry(scene, &structure.pose, user)?;
    Ok(match &structure.model {
        StructureModel::Panel(_) => panel_reachable(&link),
        StructureModel::Dee(cfg) => {
            let off = off_boresight(cfg, structure.pose.position.azimuth_to(user));
            link.bs_visible && link.user_visible && link.incident.theta < FRAC_PI_2 && off < FRAC_PI_2
        }
    })
}

/// Evaluator bound to one structure and beam mode. Fixed-beam excitations
/// are synthesized once and reused for every user.
struct Evaluator<'a> {
    scene: &'a Scene,
    structure: &'a Structure,
    fixed: Option<Excitation>,
    options: EvalOptions,
}

impl<'a> Evaluator<'a> {
    fn new(scene: &'a Scene, name: &str, mode: BeamMode, options: EvalOptions) -> Result<Self> {
        let structure = scene.structure(name)?;
        let fixed = match (&structure.model, mode) {
            (StructureModel::Panel(cfg), BeamMode::Fixed(beam)) => {
                let incident = local_angles(&structure.pose.incident_frame(), scene.bs_position)?;
                Some(Excitation::steer(cfg, &scene.carrier, &incident, &beam, PhaseReference::Optimal))
            }
            _ => None,
        };
        Ok(Evaluator {
            scene,
            structure,
            fixed,
            options,
        })
    }

    fn point(&self, user: Point2) -> Result<Option<f64>> {
        let scene = self.scene;
        let pose = &self.structure.pose;
        if user == pose.position || user == scene.bs_position || scene.inside_building(user) {
            return Ok(None);
        }
        if self.options.shadow_only && !los_blocked(scene.bs_position, user, scene) {
            return Ok(None);
        }
        let link = link_geometry(scene, pose, user)?;
        let gain = match &self.structure.model {
            StructureModel::Panel(cfg) => {
                if !panel_reachable(&link) {
                    return Ok(None);
                }
                let beta = match &self.fixed {
                    Some(exc) => gain_from_excitation(cfg, &scene.carrier, &link, exc),
                    None => {
                        let beam = BeamSpec { desired: link.scattered };
                        let exc = Excitation::steer(cfg, &scene.carrier, &link.incident, &beam, PhaseReference::Optimal);
                        gain_from_excitation(cfg, &scene.carrier, &link, &exc)
                    }
                };
                path_gain_with_beta(cfg, &scene.gains, &scene.carrier, &link, beta.norm())?
            }
            StructureModel::Dee(cfg) => {
                let off = off_boresight(cfg, pose.position.azimuth_to(user));
                dee_path_gain(cfg, &scene.gains, &scene.carrier, &link, off)?
            }
        };
        Ok(match gain {
            PathGain::Reachable(r) => Some(-10.0 * r.log10()),
            PathGain::Unreachable => None,
        })
    }
}

/// Attenuation in dB at `user`, or `None` when the structure cannot reach it.
///
/// Dynamic mode steers the panel at the user; fixed mode keeps the given
/// beam. DEE structures have no phase control and ignore `mode`.
pub fn evaluate_point(scene: &Scene, structure: &str, user: Point2, mode: BeamMode) -> Result<Option<f64>> {
    Evaluator::new(scene, structure, mode, EvalOptions::default())?.point(user)
}

pub fn evaluate_region(scene: &Scene, structure: &str, mode: BeamMode) -> Result<PathlossMap> {
    evaluate_region_with(scene, structure, mode, EvalOptions::default())
}

pub fn evaluate_region_with(
    scene: &Scene,
    structure: &str,
    mode: BeamMode,
    options: EvalOptions,
) -> Result<PathlossMap> {
    let eval = Evaluator::new(scene, structure, mode, options)?;
    let cells = scene
        .grid_points()
        .into_par_iter()
        .map(|p| eval.point(p))
        .collect::<Result<Vec<_>>>()?;
    PathlossMap::new(scene.region, cells)
}

fn reachable_cells(scene: &Scene, structure: &Structure, options: EvalOptions) -> Result<Vec<Point2>> {
    let mut out = Vec::new();
    for p in scene.grid_points() {
        if options.shadow_only && !los_blocked(scene.bs_position, p, scene) {
            continue;
        }
        if geometrically_reachable(scene, structure, p)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn median_attenuation(eval: &Evaluator<'_>, cells: &[Point2]) -> Result<f64> {
    let values = cells
        .iter()
        .map(|&p| eval.point(p))
        .collect::<Result<Vec<_>>>()?;
    let curve = CdfCurve::from_samples(values.into_iter().flatten().collect())?;
    Ok(curve.median())
}

/// Chooses one static beam direction for a panel structure.
pub fn select_fixed_beam(scene: &Scene, structure: &str, strategy: BeamStrategy) -> Result<BeamSpec> {
    select_fixed_beam_with(scene, structure, strategy, EvalOptions::default())
}

pub fn select_fixed_beam_with(
    scene: &Scene,
    name: &str,
    strategy: BeamStrategy,
    options: EvalOptions,
) -> Result<BeamSpec> {
    let structure = scene.structure(name)?;
    if matches!(structure.model, StructureModel::Dee(_)) {
        return Err(Error::invalid(
            format!("structures.{name}"),
            "a diffraction enhancement edge has no steerable beam",
        ));
    }
    let cells = reachable_cells(scene, structure, options)?;
    if cells.is_empty() {
        return Err(Error::NoReachableCells);
    }
    let n = cells.len() as f64;
    let centroid = Point2::new(
        cells.iter().map(|p| p.x).sum::<f64>() / n,
        cells.iter().map(|p| p.y).sum::<f64>() / n,
    );
    let toward_centroid = if centroid == structure.pose.position {
        BeamSpec { desired: LocalAngles::BORESIGHT }
    } else {
        BeamSpec { desired: local_angles(&structure.pose, centroid)? }
    };
    match strategy {
        BeamStrategy::Centroid => Ok(toward_centroid),
        BeamStrategy::GridSearchMedian => {
            // centroid first, then 0°, +1°, -1°, +2°, ... ; only strict
            // improvements replace the incumbent
            let mut candidates = vec![toward_centroid];
            candidates.push(BeamSpec { desired: LocalAngles::BORESIGHT });
            for deg in 1..90 {
                let t = (deg as f64).to_radians();
                candidates.push(BeamSpec { desired: LocalAngles::from_signed(t) });
                candidates.push(BeamSpec { desired: LocalAngles::from_signed(-t) });
            }
            let medians = candidates
                .par_iter()
                .map(|beam| {
                    let eval = Evaluator::new(scene, name, BeamMode::Fixed(*beam), options)?;
                    median_attenuation(&eval, &cells)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut best = 0;
            for (i, m) in medians.iter().enumerate().skip(1) {
                if *m < medians[best] {
                    best = i;
                }
            }
            Ok(candidates[best])
        }
    }
}

/// Resolves a region-level mode to the beam mode used for `structure`.
pub fn resolve_mode(scene: &Scene, structure: &str, mode: RegionMode, options: EvalOptions) -> Result<BeamMode> {
    let s = scene.structure(structure)?;
    Ok(match (mode, &s.model) {
        (RegionMode::Dynamic, _) | (_, StructureModel::Dee(_)) => BeamMode::Dynamic,
        (RegionMode::Fixed(strategy), StructureModel::Panel(_)) => {
            BeamMode::Fixed(select_fixed_beam_with(scene, structure, strategy, options)?)
        }
    })
}

/// Summary statistics for one structure.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    pub median: Option<f64>,
    pub p5: Option<f64>,
    pub p95: Option<f64>,
    pub reachable_fraction: f64,
}

impl ComparisonRow {
    pub fn from_map(name: &str, map: &PathlossMap) -> Result<Self> {
        let fraction = map.reachable_fraction();
        let curve = match crate::stats::cdf(map) {
            Ok(c) => c,
            Err(Error::NoReachableCells) => {
                return Ok(ComparisonRow {
                    name: name.to_owned(),
                    median: None,
                    p5: None,
                    p95: None,
                    reachable_fraction: fraction,
                })
            }
            Err(e) => return Err(e),
        };
        Ok(ComparisonRow {
            name: name.to_owned(),
            median: Some(percentile(&curve, 0.5)?),
            p5: Some(percentile(&curve, 0.05)?),
            p95: Some(percentile(&curve, 0.95)?),
            reachable_fraction: fraction,
        })
    }
}

/// Median, 5th and 95th percentile attenuation and reachable fraction for
/// each named structure over the scene's region.
pub fn compare_structures(scene: &Scene, names: &[&str], mode: RegionMode) -> Result<Vec<ComparisonRow>> {
    compare_structures_with(scene, names, mode, EvalOptions::default())
}

pub fn compare_structures_with(
    scene: &Scene,
    names: &[&str],
    mode: RegionMode,
    options: EvalOptions,
) -> Result<Vec<ComparisonRow>> {
    if names.is_empty() {
        return Err(Error::EmptyStructureList);
    }
    names
        .iter()
        .map(|name| {
            let beam = resolve_mode(scene, name, mode, options)?;
            let map = evaluate_region_with(scene, name, beam, options)?;
            ComparisonRow::from_map(name, &map)
        })
        .collect()
}

/// Bisector of the smallest arc containing every region cell (outside
/// buildings) as seen from `from`. Used as the default DEE boresight.
pub fn region_bisector(scene: &Scene, from: Point2) -> Result<f64> {
    let mut az: Vec<f64> = scene
        .grid_points()
        .into_iter()
        .filter(|&p| p != from && !scene.inside_building(p))
        .map(|p| from.azimuth_to(p).rem_euclid(TAU))
        .collect();
    if az.is_empty() {
        return Err(Error::NoReachableCells);
    }
    az.sort_by(f64::total_cmp);
    // the arc is the complement of the widest gap between neighbours
    let n = az.len();
    let (mut gap, mut after) = (az[0] + TAU - az[n - 1], 0);
    for i in 1..n {
        let g = az[i] - az[i - 1];
        if g > gap {
            gap = g;
            after = i;
        }
    }
    let start = az[after];
    let width = TAU - gap;
    Ok(crate::scene::normalize_azimuth(start + 0.5 * width))
}
