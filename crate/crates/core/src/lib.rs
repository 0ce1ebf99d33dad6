//! Two-dimensional coverage simulation for shadowed urban regions served
//! through a metasurface: reflective and transmissive phase-controlled
//! panels, and static diffraction enhancement edges (DEE).
//!
//! The usual flow is: load or build a [`Scene`], evaluate a structure over
//! the scene's region with [`evaluate_region`], then summarize the map with
//! [`cdf`] / [`percentile`] or compare several structures with
//! [`compare_structures`].

pub mod cli;
pub mod dee;
pub mod engine;
pub mod error;
pub mod export;
pub mod panel;
pub mod scenario;
pub mod scene;
pub mod stats;

pub use dee::{dee_path_gain, dee_pattern, DeeConfig};
pub use engine::{
    compare_structures, evaluate_point, evaluate_region, select_fixed_beam, BeamMode,
    BeamStrategy, ComparisonRow, EvalOptions, PathlossMap, RegionMode,
};
pub use error::{Error, Result};
pub use panel::{
    beamforming_gain, gain_from_excitation, path_gain, path_gain_with_beta, quantize_phase,
    AntennaGains, BeamSpec, Carrier, Excitation, LinkGeometry, PanelConfig, PathGain,
    PhaseReference, Quantization,
};
pub use scene::{
    grid_points, link_geometry, local_angles, los_blocked, Building, LocalAngles, Point2,
    Region, Scene, Structure, StructureKind, StructureModel, StructurePose,
};
pub use scenario::{generate_canonical, load_scenario, parse_scenario, CanonicalScene, Scenario, ScenarioFile};
pub use stats::{cdf, percentile, CdfCurve};
