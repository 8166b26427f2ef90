//! Metric → Christoffel data → canonical spray → connection → curvature.
//!
//! Frame conventions: on `TM` the coordinate frame is
//! `(∂/∂x1..∂/∂xn, ∂/∂y1..∂/∂yn)`, indexed by slots `0..2n`. Base indices are
//! 0-based in the API (`i = 0` is `x1`).

mod curvature;
mod metric;
mod oneform;
mod spray;

use thiserror::Error;

use crate::symexpr::ExprError;

pub use curvature::{curvature, curvature_potential, CurvatureData};
pub use metric::{MetricKind, MetricSpec};
pub use oneform::{
    connection_form, fn_bracket, identity, liouville, nijenhuis, projectors, tangent_structure,
    VectorOneForm, VectorTwoForm,
};
pub use spray::{
    christoffel_lower, christoffel_upper, connection_from_spray, spray_from_metric, Array3,
    ConnectionData, SprayData,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("metric inverse check failed: g * g_inv differs from the identity at ({0}, {1})")]
    NotInvertible(usize, usize),
    #[error("invalid spray: {0}")]
    InvalidSpray(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Everything computed from one metric, stage by stage.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub metric: MetricSpec,
    pub spray: SprayData,
    pub connection: ConnectionData,
    pub curvature: CurvatureData,
}

impl Geometry {
    pub fn from_metric(metric: MetricSpec) -> Result<Geometry, GeomError> {
        let spray = spray_from_metric(&metric)?;
        let connection = connection_from_spray(&spray);
        let curvature = curvature(&connection)?;
        Ok(Geometry {
            metric,
            spray,
            connection,
            curvature,
        })
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }
}
