//! GKM fixed-point data: the document format, its validator, and the
//! circle-action profile derived from a choice of `xi`.

mod graph;
mod profile;

pub use graph::{
    parse_gkm, validate_document, CheckResult, Edge, EdgeDoc, GkmDocument, GkmGraph, Invariant,
    ValidationIssue, Vertex, VertexDoc,
};
pub use profile::{restrict_to_circle, CircleProfile, FixedPoint, Hypothesis, Level, LevelValue};
