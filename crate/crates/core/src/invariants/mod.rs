//! Link invariants from the skein normal form: finite-type coefficients of
//! singular links, the Jones polynomial on the disk, cables and spans of
//! generator products.

use thiserror::Error;

use crate::diagram::{DiagramError, Multicurve, SurfaceKind};
use crate::skein::SkeinError;

mod jones;
mod singular;
mod span;

pub use jones::{jones, jones_laurent, writhe, OrientedDiagram};
pub use singular::{
    fti_coefficients, fti_valuation, parse_singular, random_singular, resolve_singular, singular_normal_form,
    CoefficientTable, SingularLink, DEFAULT_MAX_DOUBLE_POINTS,
};
pub use span::{
    cable, evaluate_witness, span_check, span_check_bounded, FramedKnot, SpanWitness, DEFAULT_MAX_SPAN_DEGREE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{count} double points exceed the bound of {bound}")]
    DoublePointBound { count: usize, bound: usize },
    #[error("crossing `{0}` is marked as a double point twice")]
    RepeatedDoublePoint(String),
    #[error("decoration must be +1 or -1, got {0}")]
    BadDecoration(i8),
    #[error("truncation order {order} is below the number of double points {needed}")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("oriented diagrams live on the disk, not the {0}")]
    NotDisk(SurfaceKind),
    #[error("strands cannot be oriented consistently")]
    InconsistentOrientation,
    #[error("{0} is not a knot")]
    NotAKnot(Multicurve),
    #[error("{components} components but {counts} cable counts")]
    CableArity { components: usize, counts: usize },
    #[error("degree {degree} exceeds the bound of {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
