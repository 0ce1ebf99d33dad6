//! Planar world model: buildings, structure poses, line-of-sight tests and
//! the conversion from global positions to the local angles a panel sees.
//!
//! All transmitters, receivers, panels and buildings share one height, so
//! propagation is confined to the horizontal plane. A panel's in-plane
//! horizontal axis (local +x) points along `normal_azimuth + π/2`; its
//! vertical axis carries no direction cosine, which pins the local azimuth
//! `phi` to exactly `0` or `π`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::dee::DeeConfig;
use crate::error::{Error, Result};
use crate::panel::{AntennaGains, Carrier, LinkGeometry, PanelConfig};

/// Relative tolerance used by the boundary tests, scaled by segment length.
const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    fn sub(self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }

    fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Azimuth of the vector from `self` to `other`, in `(-π, π]`.
    pub fn azimuth_to(self, other: Point2) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }
}

fn cross(a: Point2, b: Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: Point2, b: Point2) -> f64 {
    a.x * b.x + a.y * b.y
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_azimuth(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// A simple polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Building {
    vertices: Vec<Point2>,
    min: Point2,
    max: Point2,
}

impl Building {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::invalid("vertices", "a building needs at least 3 vertices"));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("vertices[{i}]"), "non-finite coordinate"));
        }
        let n = vertices.len();
        let area2: f64 = (0..n)
            .map(|i| cross(vertices[i], vertices[(i + 1) % n]))
            .sum();
        if area2 <= 0.0 {
            return Err(Error::invalid(
                "vertices",
                "polygon must be counter-clockwise with non-zero area",
            ));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                // adjacent edges share a vertex and are allowed to touch there
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_touch(a, b, c, d) {
                    return Err(Error::invalid(
                        "vertices",
                        format!("edges {i} and {j} intersect"),
                    ));
                }
            }
        }
        let min = vertices.iter().fold(Point2::new(f64::INFINITY, f64::INFINITY), |m, v| {
            Point2::new(m.x.min(v.x), m.y.min(v.y))
        });
        let max = vertices
            .iter()
            .fold(Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |m, v| {
                Point2::new(m.x.max(v.x), m.y.max(v.y))
            });
        Ok(Building { vertices, min, max })
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Building::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn on_boundary(&self, p: Point2, eps: f64) -> bool {
        self.edges().any(|(a, b)| point_segment_distance(p, a, b) <= eps)
    }

    /// True iff `p` lies strictly inside the polygon (boundary excluded).
    pub fn contains_strict(&self, p: Point2) -> bool {
        let scale = (self.max.x - self.min.x).max(self.max.y - self.min.y).max(1.0);
        if p.x < self.min.x || p.x > self.max.x || p.y < self.min.y || p.y > self.max.y {
            return false;
        }
        if self.on_boundary(p, GEOM_EPS * scale) {
            return false;
        }
        // crossing number
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// True iff the open segment `(a, b)` passes through the interior.
    pub fn blocks(&self, a: Point2, b: Point2) -> bool {
        if a.x.max(b.x) < self.min.x
            || a.x.min(b.x) > self.max.x
            || a.y.max(b.y) < self.min.y
            || a.y.min(b.y) > self.max.y
        {
            return false;
        }
        let d = b.sub(a);
        let len = d.x.hypot(d.y);
        if len == 0.0 {
            return false;
        }
        let eps = GEOM_EPS;
        let mut ts = vec![0.0, 1.0];
        for (p, q) in self.edges() {
            let e = q.sub(p);
            let den = cross(d, e);
            let elen = e.x.hypot(e.y);
            if den.abs() > eps * len * elen {
                let ap = p.sub(a);
                let t = cross(ap, e) / den;
                let s = cross(ap, d) / den;
                if (-eps..=1.0 + eps).contains(&s) && t > 0.0 && t < 1.0 {
                    ts.push(t);
                }
            } else if cross(p.sub(a), d).abs() <= eps * len * len.max(1.0) {
                // collinear: the overlap endpoints are breakpoints
                for v in [p, q] {
                    let t = dot(v.sub(a), d) / (len * len);
                    if t > 0.0 && t < 1.0 {
                        ts.push(t);
                    }
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.windows(2)
            .filter(|w| w[1] - w[0] > eps)
            .any(|w| self.contains_strict(a.lerp(b, 0.5 * (w[0] + w[1]))))
    }
}

impl TryFrom<Vec<Point2>> for Building {
    type Error = Error;

    fn try_from(v: Vec<Point2>) -> Result<Self> {
        Building::new(v)
    }
}

impl From<Building> for Vec<Point2> {
    fn from(b: Building) -> Self {
        b.vertices
    }
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b.sub(a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(p.sub(a), ab) / len2).clamp(0.0, 1.0)
    };
    p.distance(a.lerp(b, t))
}

fn segments_touch(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = cross(b.sub(a), c.sub(a));
    let o2 = cross(b.sub(a), d.sub(a));
    let o3 = cross(d.sub(c), a.sub(c));
    let o4 = cross(d.sub(c), b.sub(c));
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    let eps = GEOM_EPS;
    point_segment_distance(c, a, b) <= eps
        || point_segment_distance(d, a, b) <= eps
        || point_segment_distance(a, c, d) <= eps
        || point_segment_distance(b, c, d) <= eps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    /// Reflective panel on a wall.
    SurfaceReflective,
    /// Transmissive panel mounted across a building edge.
    EdgeTransmissive,
    /// Diffraction enhancement edge.
    EdgeDee,
}

impl StructureKind {
    /// Edge-mounted structures receive through their back face.
    pub fn receives_through_back(self) -> bool {
        !matches!(self, StructureKind::SurfaceReflective)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructurePose {
    pub position: Point2,
    normal_azimuth: f64,
    pub kind: StructureKind,
}

impl StructurePose {
    pub fn new(position: Point2, normal_azimuth: f64, kind: StructureKind) -> Self {
        StructurePose {
            position,
            normal_azimuth: normalize_azimuth(normal_azimuth),
            kind,
        }
    }

    /// Outward normal direction in the global frame, in `[0, 2π)`.
    pub fn normal_azimuth(&self) -> f64 {
        self.normal_azimuth
    }

    /// The frame used for incident angles: the back face for edge
    /// structures, the front face for reflective panels.
    pub fn incident_frame(&self) -> StructurePose {
        if self.kind.receives_through_back() {
            StructurePose::new(self.position, self.normal_azimuth + PI, self.kind)
        } else {
            *self
        }
    }
}

/// Local spherical angles of a direction as seen from a panel.
///
/// `theta` is measured from the panel normal; `phi` is `0` when the
/// direction leans toward local +x and `π` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalAngles {
    pub theta: f64,
    pub phi: f64,
}

impl LocalAngles {
    pub const BORESIGHT: LocalAngles = LocalAngles { theta: 0.0, phi: 0.0 };

    /// Builds angles from a signed in-plane offset from the normal
    /// (positive toward local +x).
    pub fn from_signed(offset: f64) -> Self {
        let theta = offset.abs().min(PI);
        let phi = if offset < 0.0 && theta < PI { PI } else { 0.0 };
        LocalAngles { theta, phi }
    }

    /// Signed in-plane offset from the normal, inverse of [`from_signed`](Self::from_signed).
    pub fn signed(&self) -> f64 {
        if self.phi == 0.0 {
            self.theta
        } else {
            -self.theta
        }
    }

    /// `(sin θ cos φ, sin θ sin φ)` with the 2D reduction applied exactly:
    /// `sin φ` is zero and `cos φ` is `±1`.
    pub fn direction_cosines(&self) -> (f64, f64) {
        let sign = if self.phi == 0.0 { 1.0 } else { -1.0 };
        (sign * self.theta.sin(), 0.0)
    }
}

/// True iff the open segment `(a, b)` crosses the interior of any building.
/// Grazing a face or touching a corner does not block.
pub fn los_blocked(a: Point2, b: Point2, scene: &Scene) -> bool {
    scene.buildings.iter().any(|bld| bld.blocks(a, b))
}

/// Local angles of `external_point` as seen from `pose`.
pub fn local_angles(pose: &StructurePose, external_point: Point2) -> Result<LocalAngles> {
    let v = external_point.sub(pose.position);
    if v.x == 0.0 && v.y == 0.0 {
        return Err(Error::Coincident("external point lies on the structure"));
    }
    let n = Point2::new(pose.normal_azimuth.cos(), pose.normal_azimuth.sin());
    let offset = cross(n, v).atan2(dot(n, v));
    Ok(LocalAngles::from_signed(offset))
}

/// Propagation geometry of the bs → structure → user path.
pub fn link_geometry(scene: &Scene, pose: &StructurePose, user: Point2) -> Result<LinkGeometry> {
    let bs = scene.bs_position;
    if bs == pose.position {
        return Err(Error::Coincident("base station and structure"));
    }
    if user == pose.position {
        return Err(Error::Coincident("structure and user"));
    }
    if user == bs {
        return Err(Error::Coincident("base station and user"));
    }
    Ok(LinkGeometry {
        d1: bs.distance(pose.position),
        d2: pose.position.distance(user),
        incident: local_angles(&pose.incident_frame(), bs)?,
        scattered: local_angles(pose, user)?,
        bs_visible: !los_blocked(bs, pose.position, scene),
        user_visible: !los_blocked(pose.position, user, scene),
    })
}

/// Axis-aligned target area sampled on a square grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub min: Point2,
    pub max: Point2,
    /// Cell edge length in meters.
    pub resolution: f64,
}

impl Region {
    pub fn new(min: Point2, max: Point2, resolution: f64) -> Result<Self> {
        let r = Region { min, max, resolution };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return Err(Error::invalid("region.resolution", "must be positive"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::invalid("region", "non-finite bounds"));
        }
        if self.max.x <= self.min.x || self.max.y <= self.min.y {
            return Err(Error::invalid("region", "bounds are degenerate"));
        }
        Ok(())
    }

    pub fn cols(&self) -> usize {
        ((self.max.x - self.min.x) / self.resolution).ceil() as usize
    }

    pub fn rows(&self) -> usize {
        ((self.max.y - self.min.y) / self.resolution).ceil() as usize
    }

    pub fn len(&self) -> usize {
        self.cols() * self.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Center of cell `(row, col)`.
    pub fn cell_center(&self, row: usize, col: usize) -> Point2 {
        Point2::new(
            self.min.x + (col as f64 + 0.5) * self.resolution,
            self.min.y + (row as f64 + 0.5) * self.resolution,
        )
    }
}

/// Row-major cell centers covering `region` at `resolution` meters per cell.
pub fn grid_points(min: Point2, max: Point2, resolution: f64) -> Result<Vec<Point2>> {
    let region = Region::new(min, max, resolution)?;
    Ok(region_points(&region))
}

pub(crate) fn region_points(region: &Region) -> Vec<Point2> {
    let (rows, cols) = (region.rows(), region.cols());
    let mut pts = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            pts.push(region.cell_center(r, c));
        }
    }
    pts
}

#[derive(Debug, Clone, PartialEq)]
pub enum StructureModel {
    Panel(PanelConfig),
    Dee(DeeConfig),
}

/// A deployed structure: where it is and what it is.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    pub pose: StructurePose,
    pub model: StructureModel,
}

impl Structure {
    pub fn new(pose: StructurePose, model: StructureModel) -> Result<Self> {
        let ok = matches!(
            (pose.kind, &model),
            (StructureKind::EdgeDee, StructureModel::Dee(_))
                | (StructureKind::SurfaceReflective, StructureModel::Panel(_))
                | (StructureKind::EdgeTransmissive, StructureModel::Panel(_))
        );
        if !ok {
            return Err(Error::invalid("kind", "structure kind does not match its model"));
        }
        Ok(Structure { pose, model })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub buildings: Vec<Building>,
    pub bs_position: Point2,
    pub carrier: Carrier,
    pub gains: AntennaGains,
    pub structures: BTreeMap<String, Structure>,
    pub region: Region,
}

impl Scene {
    pub fn new(
        buildings: Vec<Building>,
        bs_position: Point2,
        carrier: Carrier,
        gains: AntennaGains,
        structures: BTreeMap<String, Structure>,
        region: Region,
    ) -> Result<Self> {
        let scene = Scene {
            buildings,
            bs_position,
            carrier,
            gains,
            structures,
            region,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        self.region.validate()?;
        if !self.bs_position.is_finite() {
            return Err(Error::invalid("bs.position", "non-finite coordinate"));
        }
        for (name, s) in &self.structures {
            if !s.pose.position.is_finite() {
                return Err(Error::invalid(
                    format!("structures.{name}.position"),
                    "non-finite coordinate",
                ));
            }
            if self
                .buildings
                .iter()
                .any(|b| b.contains_strict(s.pose.position))
            {
                return Err(Error::invalid(
                    format!("structures.{name}.position"),
                    "structure lies inside a building",
                ));
            }
        }
        Ok(())
    }

    pub fn structure(&self, name: &str) -> Result<&Structure> {
        self.structures
            .get(name)
            .ok_or_else(|| Error::UnknownStructure(name.to_owned()))
    }

    /// Row-major cell centers of the target region.
    pub fn grid_points(&self) -> Vec<Point2> {
        region_points(&self.region)
    }

    /// True iff any building strictly contains `p`.
    pub fn inside_building(&self, p: Point2) -> bool {
        self.buildings.iter().any(|b| b.contains_strict(p))
    }
}
