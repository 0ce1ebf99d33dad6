//! Scenario files and the built-in canonical scenes.
//!
//! A scenario is a versioned JSON document. Angles are in degrees and
//! positions in meters; everything is converted to radians and validated
//! when the file is turned into a [`Scene`].
//!
//! The canonical scenes are hand-authored approximations of two urban
//! layouts: a region shadowed by a building corner (with the reflective
//! panel on a facing wall 30 m or 50 m away) and a region directly behind a
//! wall. They are not surveyed coordinates.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dee::{DeeConfig, DEFAULT_AREA_M2, EFFICIENCY_5_5_GHZ};
use crate::engine::{region_bisector, BeamStrategy, EvalOptions, RegionMode};
use crate::error::{Error, Result};
use crate::panel::{AntennaGains, Carrier, PanelConfig, Quantization};
use crate::scene::{
    Building, Point2, Region, Scene, Structure, StructureKind, StructureModel, StructurePose,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub carrier_hz: f64,
    pub bs: BaseStation,
    #[serde(default)]
    pub ue_gain_dbi: f64,
    #[serde(default)]
    pub buildings: Vec<Vec<Point2>>,
    pub structures: Vec<StructureEntry>,
    pub region: RegionEntry,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseStation {
    pub position: Point2,
    #[serde(default)]
    pub gain_dbi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub name: String,
    pub kind: StructureKind,
    pub position: Point2,
    pub normal_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel: Option<PanelEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dee: Option<DeeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PanelEntry {
    pub rows: u32,
    pub cols: u32,
    pub dx_m: f64,
    pub dy_m: f64,
    pub gamma: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "one")]
    pub gain: f64,
    pub alpha: f64,
    /// Number of phase states; `null` means continuous phases.
    pub quantization_levels: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeeEntry {
    pub effective_gain_m2: f64,
    pub boresight_deg: f64,
    pub incident_exponent: f64,
    pub scattered_exponent: f64,
    pub efficiency: f64,
}

/// What blocks the direct path to the target region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Blockage {
    Corner,
    Wall,
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionEntry {
    pub min: Point2,
    pub max: Point2,
    pub resolution_m: f64,
    #[serde(default = "unspecified")]
    pub blockage: Blockage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeEntry {
    #[default]
    Dynamic,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyEntry {
    #[default]
    Centroid,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub mode: ModeEntry,
    #[serde(default)]
    pub beam_strategy: StrategyEntry,
    #[serde(default)]
    pub shadow_only: bool,
}

fn one() -> f64 {
    1.0
}

fn unspecified() -> Blockage {
    Blockage::Unspecified
}

impl From<StrategyEntry> for BeamStrategy {
    fn from(s: StrategyEntry) -> Self {
        match s {
            StrategyEntry::Centroid => BeamStrategy::Centroid,
            StrategyEntry::Search => BeamStrategy::GridSearchMedian,
        }
    }
}

impl Options {
    pub fn region_mode(&self) -> RegionMode {
        match self.mode {
            ModeEntry::Dynamic => RegionMode::Dynamic,
            ModeEntry::Fixed => RegionMode::Fixed(self.beam_strategy.into()),
        }
    }

    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            shadow_only: self.shadow_only,
        }
    }
}

impl From<&PanelConfig> for PanelEntry {
    fn from(c: &PanelConfig) -> Self {
        PanelEntry {
            rows: c.rows,
            cols: c.cols,
            dx_m: c.dx,
            dy_m: c.dy,
            gamma: c.gamma,
            amplitude: c.amplitude,
            gain: c.gain,
            alpha: c.alpha,
            quantization_levels: match c.quantization {
                Quantization::Continuous => None,
                Quantization::Levels(l) => Some(l),
            },
        }
    }
}

impl From<&PanelEntry> for PanelConfig {
    fn from(e: &PanelEntry) -> Self {
        PanelConfig {
            rows: e.rows,
            cols: e.cols,
            dx: e.dx_m,
            dy: e.dy_m,
            gamma: e.gamma,
            amplitude: e.amplitude,
            gain: e.gain,
            alpha: e.alpha,
            quantization: e.quantization_levels.map_or(Quantization::Continuous, Quantization::Levels),
        }
    }
}

impl From<&DeeConfig> for DeeEntry {
    fn from(c: &DeeConfig) -> Self {
        DeeEntry {
            effective_gain_m2: c.effective_gain,
            boresight_deg: c.boresight_azimuth.to_degrees(),
            incident_exponent: c.incident_exponent,
            scattered_exponent: c.scattered_exponent,
            efficiency: c.efficiency,
        }
    }
}

impl From<&DeeEntry> for DeeConfig {
    fn from(e: &DeeEntry) -> Self {
        DeeConfig {
            effective_gain: e.effective_gain_m2,
            boresight_azimuth: e.boresight_deg.to_radians(),
            incident_exponent: e.incident_exponent,
            scattered_exponent: e.scattered_exponent,
            efficiency: e.efficiency,
        }
    }
}

/// Prefixes the field of a validation error with its location in the file.
fn at(prefix: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Invalid { field, reason } => Error::Invalid {
            field: format!("{prefix}.{field}"),
            reason,
        },
        other => other,
    }
}

impl StructureEntry {
    fn to_structure(&self, path: &str) -> Result<Structure> {
        if !self.normal_deg.is_finite() {
            return Err(Error::invalid(format!("{path}.normal_deg"), "non-finite angle"));
        }
        let model = match (self.kind, &self.panel, &self.dee) {
            (StructureKind::EdgeDee, None, Some(d)) => {
                let cfg = DeeConfig::from(d);
                cfg.validate().map_err(at(&format!("{path}.dee")))?;
                StructureModel::Dee(cfg)
            }
            (StructureKind::SurfaceReflective | StructureKind::EdgeTransmissive, Some(p), None) => {
                let cfg = PanelConfig::from(p);
                cfg.validate().map_err(at(&format!("{path}.panel")))?;
                StructureModel::Panel(cfg)
            }
            (StructureKind::EdgeDee, ..) => {
                return Err(Error::invalid(path, "an edge_dee structure needs exactly a `dee` block"))
            }
            _ => {
                return Err(Error::invalid(path, "a panel structure needs exactly a `panel` block"))
            }
        };
        let pose = StructurePose::new(self.position, self.normal_deg.to_radians(), self.kind);
        Structure::new(pose, model).map_err(at(path))
    }
}

impl ScenarioFile {
    /// Validates the file and builds the scene it describes.
    pub fn to_scene(&self) -> Result<Scene> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", self.schema_version),
            ));
        }
        let carrier = Carrier::new(self.carrier_hz).map_err(|_| {
            Error::invalid("carrier_hz", format!("{} is not a positive frequency", self.carrier_hz))
        })?;
        let gains = AntennaGains::from_dbi(self.bs.gain_dbi, self.ue_gain_dbi)?;
        let buildings = self
            .buildings
            .iter()
            .enumerate()
            .map(|(i, v)| Building::new(v.clone()).map_err(at(&format!("buildings[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        let mut structures = BTreeMap::new();
        for (i, s) in self.structures.iter().enumerate() {
            let path = format!("structures[{i}]");
            let st = s.to_structure(&path)?;
            if structures.insert(s.name.clone(), st).is_some() {
                return Err(Error::invalid(
                    format!("{path}.name"),
                    format!("duplicate structure name `{}`", s.name),
                ));
            }
        }
        let region = Region {
            min: self.region.min,
            max: self.region.max,
            resolution: self.region.resolution_m,
        };
        Scene::new(buildings, self.bs.position, carrier, gains, structures, region)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            path: e.path().to_string(),
            source: e.into_inner(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

/// A loaded, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub scene: Scene,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file = ScenarioFile::from_json(text)?;
    let scene = file.to_scene()?;
    Ok(Scenario { file, scene })
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalScene {
    ACorner30m,
    ACorner50m,
    BWall,
}

impl CanonicalScene {
    pub const ALL: [CanonicalScene; 3] = [
        CanonicalScene::ACorner30m,
        CanonicalScene::ACorner50m,
        CanonicalScene::BWall,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CanonicalScene::ACorner30m => "A_corner_30m",
            CanonicalScene::ACorner50m => "A_corner_50m",
            CanonicalScene::BWall => "B_wall",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id().eq_ignore_ascii_case(id))
    }
}

/// Names of the structures present in every canonical scene.
pub const CANONICAL_STRUCTURES: [&str; 4] = ["ss1", "ss2", "es", "dee"];

const CARRIER_HZ: f64 = 5.5e9;

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point2> {
    vec![
        Point2::new(x0, y0),
        Point2::new(x1, y0),
        Point2::new(x1, y1),
        Point2::new(x0, y1),
    ]
}

fn panel(name: &str, kind: StructureKind, position: Point2, normal_deg: f64, cfg: PanelConfig) -> StructureEntry {
    StructureEntry {
        name: name.to_owned(),
        kind,
        position,
        normal_deg,
        panel: Some(PanelEntry::from(&cfg)),
        dee: None,
    }
}

/// Azimuth (radians) bisecting the region as seen from `from`.
fn region_bisector_from(from: Point2, bs: Point2, buildings: &[Vec<Point2>], region: &RegionEntry) -> f64 {
    let probe = ScenarioFile {
        schema_version: SCHEMA_VERSION,
        name: String::new(),
        description: String::new(),
        carrier_hz: CARRIER_HZ,
        bs: BaseStation { position: bs, gain_dbi: 0.0 },
        ue_gain_dbi: 0.0,
        buildings: buildings.to_vec(),
        structures: vec![],
        region: region.clone(),
        options: Options::default(),
    };
    let scene = probe.to_scene().expect("canonical geometry is valid");
    region_bisector(&scene, from).expect("canonical region is non-empty")
}

/// Transmissive edge panel at `edge`, facing the middle of the region
/// (normal rounded to whole degrees, as it would be on a mounting drawing).
fn es_at(edge: Point2, bs: Point2, buildings: &[Vec<Point2>], region: &RegionEntry) -> StructureEntry {
    let normal = crate::scene::normalize_azimuth(region_bisector_from(edge, bs, buildings, region));
    let mut deg = normal.to_degrees().round();
    if deg > 180.0 {
        deg -= 360.0;
    }
    panel("es", StructureKind::EdgeTransmissive, edge, deg, PanelConfig::es())
}

/// DEE at `edge`: the edge faces away from the base station (normal
/// incidence) and its pattern maximum bisects the region as seen from it.
fn dee_at(edge: Point2, bs: Point2, buildings: &[Vec<Point2>], region: &RegionEntry) -> StructureEntry {
    let boresight = region_bisector_from(edge, bs, buildings, region);
    let cfg = DeeConfig::from_area(DEFAULT_AREA_M2, EFFICIENCY_5_5_GHZ, boresight);
    StructureEntry {
        name: "dee".to_owned(),
        kind: StructureKind::EdgeDee,
        position: edge,
        normal_deg: bs.azimuth_to(edge).to_degrees(),
        panel: None,
        dee: Some(DeeEntry::from(&cfg)),
    }
}

fn scene_a(spacing: f64) -> ScenarioFile {
    // obstacle whose north-east corner (30, 30) shadows the region; the
    // reflective panels hang on the west face of a building `spacing` m east
    // of the corner
    let corner = Point2::new(30.0, 30.0);
    let bs = Point2::new(-5.0, 32.0);
    let wall_x = 30.0 + spacing;
    let buildings = vec![rect(0.0, -40.0, 30.0, 30.0), rect(wall_x, -100.0, wall_x + 20.0, 100.0)];
    let region = RegionEntry {
        min: Point2::new(30.0, 11.0),
        max: Point2::new(49.0, 29.0),
        resolution_m: 1.0,
        blockage: Blockage::Corner,
    };
    let ss_at = Point2::new(wall_x, 45.0);
    let structures = vec![
        panel("ss1", StructureKind::SurfaceReflective, ss_at, 180.0, PanelConfig::ss1()),
        panel("ss2", StructureKind::SurfaceReflective, ss_at, 180.0, PanelConfig::ss2()),
        es_at(corner, bs, &buildings, &region),
        dee_at(corner, bs, &buildings, &region),
    ];
    ScenarioFile {
        schema_version: SCHEMA_VERSION,
        name: format!("A_corner_{spacing}m"),
        description: format!(
            "Region shadowed by a building corner; reflective panels on a facing wall {spacing} m \
             east of the corner, edge structures on the corner. Hand-authored approximation, \
             not surveyed coordinates."
        ),
        carrier_hz: CARRIER_HZ,
        bs: BaseStation { position: bs, gain_dbi: 0.0 },
        ue_gain_dbi: 0.0,
        buildings,
        structures,
        region,
        options: Options::default(),
    }
}

fn scene_b() -> ScenarioFile {
    // east-west wall with a tapered far end at (40, 0.5); the region lies
    // directly behind it. The reflective panels sit on the south-west
    // corner of the building across the street, which sees the base
    // station past the wall end.
    let tip = Point2::new(40.0, 0.5);
    let bs = Point2::new(30.0, -40.0);
    let wall = vec![
        Point2::new(0.0, 0.0),
        Point2::new(38.0, 0.0),
        tip,
        Point2::new(38.0, 1.0),
        Point2::new(0.0, 1.0),
    ];
    let ss_at = Point2::new(50.0, 18.0);
    let buildings = vec![wall, rect(ss_at.x, ss_at.y, ss_at.x + 20.0, ss_at.y + 30.0)];
    let region = RegionEntry {
        min: Point2::new(2.0, 2.0),
        max: Point2::new(30.0, 14.0),
        resolution_m: 1.0,
        blockage: Blockage::Wall,
    };
    let structures = vec![
        panel("ss1", StructureKind::SurfaceReflective, ss_at, -135.0, PanelConfig::ss1()),
        panel("ss2", StructureKind::SurfaceReflective, ss_at, -135.0, PanelConfig::ss2()),
        es_at(tip, bs, &buildings, &region),
        dee_at(tip, bs, &buildings, &region),
    ];
    ScenarioFile {
        schema_version: SCHEMA_VERSION,
        name: "B_wall".to_owned(),
        description: "Region directly behind a wall; reflective panels on the corner of the \
                      building across the street, edge structures on the wall's far end. \
                      Hand-authored approximation, not surveyed coordinates."
            .to_owned(),
        carrier_hz: CARRIER_HZ,
        bs: BaseStation { position: bs, gain_dbi: 0.0 },
        ue_gain_dbi: 0.0,
        buildings,
        structures,
        region,
        options: Options::default(),
    }
}

/// Builds one of the canonical scenarios.
pub fn generate_canonical(id: CanonicalScene) -> ScenarioFile {
    match id {
        CanonicalScene::ACorner30m => scene_a(30.0),
        CanonicalScene::ACorner50m => scene_a(50.0),
        CanonicalScene::BWall => scene_b(),
    }
}
