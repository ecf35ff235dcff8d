//! Geodesic polygons, membership oracles, dilated regions, hulls and the
//! randomized convexity checker.

mod checker;
mod generate;
pub(crate) mod hull;
mod maps;
mod region;

pub use checker::{check_convex, recheck_witness, CheckConfig, ConvexityReport, Verdict, Witness, WitnessKind};
pub use generate::{random_convex_polygon, PolygonDraw, PolygonParams};
pub use hull::{hemisphere_frame, hull, hull_brute_force, Hull};
pub use maps::{ChartScaling, MapSpec, PointMap};
pub use region::{radial_farthest, GeodesicPolygon, OracleRegion, Region, RegionSpec};
