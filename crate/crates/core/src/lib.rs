//! Verification toolkit for eigenvalue and uncertainty bounds of discrete
//! Laplacians on weighted graphs.
//!
//! Every bound is evaluated next to an exact computation of the quantity it
//! bounds and returned as a [`BoundReport`].

pub mod centers;
pub mod cheeger;
pub mod error;
pub mod generators;
pub mod graph;
pub mod linalg;
pub mod metric;
pub mod potential;
pub mod report;
pub mod spectral;
pub mod voronoi;

pub use centers::parse_centers;
pub use error::{Error, Result};
pub use generators::{GeneratorSpec, RandomGraphSpec};
pub use graph::{Edge, GeometryConstants, VertexSet, WeightedGraph};
pub use metric::{compute_metric, MetricData};
pub use report::{BoundReport, Relation, BOUND_TOLERANCE};
pub use spectral::{NormChoice, OperatorSpec, SpectralData};
pub use voronoi::{build_voronoi, verify_voronoi, VoronoiDecomposition};
