//! JSON input files: point lists and region descriptions.
//!
//! ```json
//! {"model": "hyperbolic", "points": [[0.1, 0.2], [-0.3, 0.0]]}
//! {"model": "spherical", "region": {"kind": "disk", "center": [0, 0], "radius": 1.0}}
//! ```
//!
//! Spherical points may also be the string `"inf"`.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::convexity::{MapSpec, PointMap, RegionSpec};
use crate::error::{GeomError, Result};
use crate::geometry::{Geometry, Hyperbolic, Model, Spherical};
use crate::hyperbolic::{HDilation, HPoint};
use crate::spherical::{SDilation, SPoint};
use crate::verify::AsymMap;

#[derive(Deserialize)]
struct ModelOnly {
    model: Model,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile<P> {
    pub model: Model,
    pub points: Vec<P>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile<P> {
    pub model: Model,
    pub region: RegionSpec<P>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Hyperbolic(Vec<HPoint>),
    Spherical(Vec<SPoint>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionDoc {
    Hyperbolic(RegionSpec<HPoint>),
    Spherical(RegionSpec<SPoint>),
}

fn with_source(source: &str, e: GeomError) -> GeomError {
    match e {
        GeomError::Schema(m) => GeomError::Schema(format!("{source}: {m}")),
        other => other,
    }
}

fn model_of(text: &str) -> Result<Model> {
    Ok(serde_json::from_str::<ModelOnly>(text)?.model)
}

fn typed<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    match model_of(text)? {
        Model::Hyperbolic => Ok(PointSet::Hyperbolic(typed::<PointFile<HPoint>>(text)?.points)),
        Model::Spherical => Ok(PointSet::Spherical(typed::<PointFile<SPoint>>(text)?.points)),
    }
}

pub fn parse_region(text: &str) -> Result<RegionDoc> {
    match model_of(text)? {
        Model::Hyperbolic => Ok(RegionDoc::Hyperbolic(typed::<RegionFile<HPoint>>(text)?.region)),
        Model::Spherical => Ok(RegionDoc::Spherical(typed::<RegionFile<SPoint>>(text)?.region)),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&read(path)?).map_err(|e| with_source(&path.display().to_string(), e))
}

pub fn read_region(path: &Path) -> Result<RegionDoc> {
    parse_region(&read(path)?).map_err(|e| with_source(&path.display().to_string(), e))
}

/// Geometry-specific construction of serialized maps.
pub trait MapFactory: Geometry {
    fn build_map(spec: &MapSpec<Self::Point>) -> Result<Arc<dyn PointMap<Self>>>;
}

impl MapFactory for Hyperbolic {
    fn build_map(spec: &MapSpec<HPoint>) -> Result<Arc<dyn PointMap<Self>>> {
        match spec {
            MapSpec::Dilation { center, k } => Ok(Arc::new(HDilation::new(*center, *k)?)),
            MapSpec::Asymmetric { center, k1, k2, .. } => Ok(Arc::new(AsymMap::<Self>::new(*center, *k1, *k2)?)),
            MapSpec::ChartScaling { k } => Ok(Arc::new(crate::convexity::ChartScaling::<Self>::new(*k)?)),
        }
    }
}

impl MapFactory for Spherical {
    fn build_map(spec: &MapSpec<SPoint>) -> Result<Arc<dyn PointMap<Self>>> {
        match spec {
            MapSpec::Dilation { center, k } => Ok(Arc::new(SDilation::new(*center, *k)?)),
            MapSpec::Asymmetric { center, k1, k2, .. } => Ok(Arc::new(AsymMap::<Self>::new(*center, *k1, *k2)?)),
            MapSpec::ChartScaling { k } => Ok(Arc::new(crate::convexity::ChartScaling::<Self>::new(*k)?)),
        }
    }
}
