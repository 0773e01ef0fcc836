use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exact::rational::serde_rational_vec;
use crate::exact::Rational;

/// On-disk form of a GKM graph. Field order is the emitted key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GkmDocument {
    pub rank: usize,
    pub dimension: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    #[serde(with = "serde_rational_vec")]
    pub position: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub v: String,
    pub w: String,
    pub weight: Vec<i64>,
}

impl GkmDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// The invariants a GKM document is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Dimension,
    RankBound,
    PositionLength,
    UniqueIds,
    EdgeEndpoints,
    WeightShape,
    DuplicateEdge,
    EdgeDirection,
    Valence,
    GkmIndependence,
    Connected,
}

impl Invariant {
    pub const ALL: [Invariant; 11] = [
        Invariant::Dimension,
        Invariant::RankBound,
        Invariant::PositionLength,
        Invariant::UniqueIds,
        Invariant::EdgeEndpoints,
        Invariant::WeightShape,
        Invariant::DuplicateEdge,
        Invariant::EdgeDirection,
        Invariant::Valence,
        Invariant::GkmIndependence,
        Invariant::Connected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Dimension => "dimension",
            Invariant::RankBound => "rank-bound",
            Invariant::PositionLength => "position-length",
            Invariant::UniqueIds => "unique-ids",
            Invariant::EdgeEndpoints => "edge-endpoints",
            Invariant::WeightShape => "weight-shape",
            Invariant::DuplicateEdge => "duplicate-edge",
            Invariant::EdgeDirection => "edge-direction",
            Invariant::Valence => "valence",
            Invariant::GkmIndependence => "gkm-independence",
            Invariant::Connected => "connected",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed invariant, naming the vertex or edge at fault.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{invariant} violated at {subject}: {detail}")]
pub struct ValidationIssue {
    pub invariant: Invariant,
    pub subject: String,
    pub detail: String,
}

/// Outcome of one invariant check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub invariant: Invariant,
    pub passed: bool,
    /// Failures, each naming its vertex or edge. Empty when passed.
    pub issues: Vec<ValidationIssue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub position: Vec<Rational>,
}

/// An edge stored once, with the primitive outward weight at `v`.
/// The outward weight at `w` is the negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub v: usize,
    pub w: usize,
    pub weight: Vec<i64>,
}

/// A validated GKM graph: fixed points with moment images and weighted edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    rank: usize,
    half_dim: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

fn edge_label(e: &EdgeDoc) -> String {
    format!("edge {} -- {}", e.v, e.w)
}

fn primitive(w: &[i64]) -> Vec<i64> {
    let g = w.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return w.to_vec();
    }
    w.iter().map(|x| x / g).collect()
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| {
        (i + 1..a.len()).all(|j| a[i] as i128 * b[j] as i128 == a[j] as i128 * b[i] as i128)
    })
}

/// `Some(lambda)` with `diff = lambda * weight`, if such a rational exists.
fn multiple_of(diff: &[Rational], weight: &[i64]) -> Option<Rational> {
    let j = weight.iter().position(|&x| x != 0)?;
    let lambda = &diff[j] / Rational::from_integer(weight[j].into());
    diff.iter()
        .zip(weight)
        .all(|(d, &w)| *d == &lambda * Rational::from_integer(w.into()))
        .then_some(lambda)
}

struct Checker<'a> {
    doc: &'a GkmDocument,
    results: Vec<CheckResult>,
}

impl Checker<'_> {
    fn record(&mut self, invariant: Invariant, issues: Vec<ValidationIssue>) {
        self.results.push(CheckResult {
            invariant,
            passed: issues.is_empty(),
            issues,
        });
    }

    fn issue(
        invariant: Invariant,
        subject: impl Into<String>,
        detail: impl Into<String>,
    ) -> ValidationIssue {
        ValidationIssue {
            invariant,
            subject: subject.into(),
            detail: detail.into(),
        }
    }

    fn run(mut self) -> Vec<CheckResult> {
        let doc = self.doc;
        let r = doc.rank;

        let mut issues = Vec::new();
        if doc.dimension == 0 || !doc.dimension.is_multiple_of(2) {
            issues.push(Self::issue(
                Invariant::Dimension,
                "document",
                format!("dimension {} is not a positive even number", doc.dimension),
            ));
        }
        if r == 0 {
            issues.push(Self::issue(
                Invariant::Dimension,
                "document",
                "rank must be at least 1",
            ));
        }
        self.record(Invariant::Dimension, issues);
        let n = doc.dimension / 2;

        let issues = if r > n && n > 0 {
            vec![Self::issue(
                Invariant::RankBound,
                "document",
                format!("torus rank {r} exceeds half the dimension {n}"),
            )]
        } else {
            vec![]
        };
        self.record(Invariant::RankBound, issues);

        let issues = doc
            .vertices
            .iter()
            .filter(|v| v.position.len() != r)
            .map(|v| {
                Self::issue(
                    Invariant::PositionLength,
                    format!("vertex {}", v.id),
                    format!("position has {} entries, rank is {r}", v.position.len()),
                )
            })
            .collect();
        self.record(Invariant::PositionLength, issues);

        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut issues = Vec::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                issues.push(Self::issue(
                    Invariant::UniqueIds,
                    format!("vertex {}", v.id),
                    "duplicate vertex id",
                ));
            }
        }
        self.record(Invariant::UniqueIds, issues);

        let mut issues = Vec::new();
        for e in &doc.edges {
            for end in [&e.v, &e.w] {
                if !index.contains_key(end.as_str()) {
                    issues.push(Self::issue(
                        Invariant::EdgeEndpoints,
                        edge_label(e),
                        format!("unknown vertex {end}"),
                    ));
                }
            }
            if e.v == e.w {
                issues.push(Self::issue(
                    Invariant::EdgeEndpoints,
                    edge_label(e),
                    "loop edge",
                ));
            }
        }
        self.record(Invariant::EdgeEndpoints, issues);

        let issues = doc
            .edges
            .iter()
            .filter_map(|e| {
                if e.weight.len() != r {
                    Some(Self::issue(
                        Invariant::WeightShape,
                        edge_label(e),
                        format!("weight has {} entries, rank is {r}", e.weight.len()),
                    ))
                } else if e.weight.iter().all(|&x| x == 0) {
                    Some(Self::issue(
                        Invariant::WeightShape,
                        edge_label(e),
                        "zero weight",
                    ))
                } else {
                    None
                }
            })
            .collect();
        self.record(Invariant::WeightShape, issues);

        let mut seen = BTreeSet::new();
        let mut issues = Vec::new();
        for e in &doc.edges {
            let key = if e.v <= e.w {
                (&e.v, &e.w)
            } else {
                (&e.w, &e.v)
            };
            if !seen.insert(key) {
                issues.push(Self::issue(
                    Invariant::DuplicateEdge,
                    edge_label(e),
                    "edge listed twice",
                ));
            }
        }
        self.record(Invariant::DuplicateEdge, issues);

        let well_formed = |e: &EdgeDoc| -> Option<(usize, usize)> {
            let (&a, &b) = (index.get(e.v.as_str())?, index.get(e.w.as_str())?);
            let ok = a != b
                && e.weight.len() == r
                && e.weight.iter().any(|&x| x != 0)
                && doc.vertices[a].position.len() == r
                && doc.vertices[b].position.len() == r;
            ok.then_some((a, b))
        };

        let mut issues = Vec::new();
        for e in &doc.edges {
            let Some((a, b)) = well_formed(e) else {
                continue;
            };
            let diff: Vec<Rational> = doc.vertices[b]
                .position
                .iter()
                .zip(&doc.vertices[a].position)
                .map(|(x, y)| x - y)
                .collect();
            match multiple_of(&diff, &e.weight) {
                Some(l) if l.is_positive() => {}
                Some(l) if l.is_zero() => issues.push(Self::issue(
                    Invariant::EdgeDirection,
                    edge_label(e),
                    "endpoints have the same position",
                )),
                Some(_) => issues.push(Self::issue(
                    Invariant::EdgeDirection,
                    edge_label(e),
                    "weight points from w to v; expected the outward weight at v",
                )),
                None => issues.push(Self::issue(
                    Invariant::EdgeDirection,
                    edge_label(e),
                    format!(
                        "weight {:?} is not parallel to the position difference",
                        e.weight
                    ),
                )),
            }
        }
        self.record(Invariant::EdgeDirection, issues);

        // outward weights per vertex
        let mut outward: Vec<Vec<(String, Vec<i64>)>> = vec![Vec::new(); doc.vertices.len()];
        let mut degree = vec![0usize; doc.vertices.len()];
        for e in &doc.edges {
            let (Some(&a), Some(&b)) = (index.get(e.v.as_str()), index.get(e.w.as_str())) else {
                continue;
            };
            degree[a] += 1;
            degree[b] += 1;
            if well_formed(e).is_some() {
                outward[a].push((edge_label(e), e.weight.clone()));
                outward[b].push((edge_label(e), e.weight.iter().map(|x| -x).collect()));
            }
        }

        let issues = doc
            .vertices
            .iter()
            .zip(&degree)
            .filter(|(_, &d)| d != n)
            .map(|(v, d)| {
                Self::issue(
                    Invariant::Valence,
                    format!("vertex {}", v.id),
                    format!("{d} incident edges, expected {n}"),
                )
            })
            .collect();
        self.record(Invariant::Valence, issues);

        let mut issues = Vec::new();
        for (v, ws) in doc.vertices.iter().zip(&outward) {
            for i in 0..ws.len() {
                for j in i + 1..ws.len() {
                    if parallel(&ws[i].1, &ws[j].1) {
                        issues.push(Self::issue(
                            Invariant::GkmIndependence,
                            format!("vertex {}", v.id),
                            format!(
                                "weights of {} and {} are linearly dependent",
                                ws[i].0, ws[j].0
                            ),
                        ));
                    }
                }
            }
        }
        self.record(Invariant::GkmIndependence, issues);

        let mut adj = vec![Vec::new(); doc.vertices.len()];
        for e in &doc.edges {
            if let (Some(&a), Some(&b)) = (index.get(e.v.as_str()), index.get(e.w.as_str())) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut issues = Vec::new();
        if doc.vertices.is_empty() {
            issues.push(Self::issue(Invariant::Connected, "document", "no vertices"));
        } else {
            let mut seen = vec![false; doc.vertices.len()];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            for (v, s) in doc.vertices.iter().zip(seen) {
                if !s {
                    issues.push(Self::issue(
                        Invariant::Connected,
                        format!("vertex {}", v.id),
                        format!("not reachable from vertex {}", doc.vertices[0].id),
                    ));
                }
            }
        }
        self.record(Invariant::Connected, issues);

        self.results
    }
}

/// Checks every invariant, collecting all failures instead of stopping at the first.
pub fn validate_document(doc: &GkmDocument) -> Vec<CheckResult> {
    Checker {
        doc,
        results: Vec::new(),
    }
    .run()
}

/// Parses and validates a JSON GKM document.
pub fn parse_gkm(text: &str) -> Result<GkmGraph> {
    GkmGraph::from_document(&GkmDocument::from_json(text)?)
}

impl GkmGraph {
    /// Validates a document. Edge weights are reduced to primitive form.
    pub fn from_document(doc: &GkmDocument) -> Result<Self> {
        if let Some(issue) = validate_document(doc)
            .into_iter()
            .flat_map(|c| c.issues)
            .next()
        {
            return Err(issue.into());
        }
        let index: HashMap<&str, usize> = doc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let vertices: Vec<Vertex> = doc
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                position: v.position.clone(),
            })
            .collect();
        let edges: Vec<Edge> = doc
            .edges
            .iter()
            .map(|e| Edge {
                v: index[e.v.as_str()],
                w: index[e.w.as_str()],
                weight: primitive(&e.weight),
            })
            .collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            incident[e.v].push(k);
            incident[e.w].push(k);
        }
        Ok(Self {
            rank: doc.rank,
            half_dim: doc.dimension / 2,
            vertices,
            edges,
            incident,
        })
    }

    pub fn to_document(&self) -> GkmDocument {
        GkmDocument {
            rank: self.rank,
            dimension: 2 * self.half_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.clone(),
                    position: v.position.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    v: self.vertices[e.v].id.clone(),
                    w: self.vertices[e.w].id.clone(),
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    /// Torus rank `r`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Half the real dimension, `n`.
    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn dimension(&self) -> usize {
        2 * self.half_dim
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Neighbours of vertex `i` with the outward weight toward each.
    pub fn outward(&self, i: usize) -> impl Iterator<Item = (usize, Vec<i64>)> + '_ {
        self.incident[i].iter().map(move |&k| {
            let e = &self.edges[k];
            if e.v == i {
                (e.w, e.weight.clone())
            } else {
                (e.v, e.weight.iter().map(|x| -x).collect())
            }
        })
    }

    /// Applies `p -> a p + t` to every position (`a > 0`).
    pub fn affine_image(&self, a: &Rational, t: &[Rational]) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Malformed("affine scale must be positive".into()));
        }
        if t.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: t.len(),
            });
        }
        let mut g = self.clone();
        for v in &mut g.vertices {
            for (x, s) in v.position.iter_mut().zip(t) {
                *x = &*x * a + s;
            }
        }
        Ok(g)
    }

    pub fn scaled(&self, a: &Rational) -> Result<Self> {
        self.affine_image(a, &vec![Rational::zero(); self.rank])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEGMENT: &str = r#"{
  "rank": 1,
  "dimension": 2,
  "vertices": [
    { "id": "S", "position": ["0"] },
    { "id": "N", "position": ["1"] }
  ],
  "edges": [ { "v": "S", "w": "N", "weight": [1] } ]
}"#;

    #[test]
    fn parses_segment() {
        let g = parse_gkm(SEGMENT).unwrap();
        assert_eq!(g.half_dim(), 1);
        assert_eq!(g.rank(), 1);
        let out: Vec<_> = g.outward(1).collect();
        assert_eq!(out, vec![(0, vec![-1])]);
    }

    #[test]
    fn rejects_malformed_json_with_location() {
        let err = parse_gkm("{\"rank\": 1,").unwrap_err();
        match err {
            Error::Malformed(msg) => assert!(msg.contains("line"), "{msg}"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn rejects_irrational_position() {
        let bad = SEGMENT.replace("[\"1\"]", "[\"sqrt(2)\"]");
        assert!(matches!(parse_gkm(&bad), Err(Error::Malformed(_))));
    }

    #[test]
    fn flipped_weight_is_a_direction_error() {
        let bad = SEGMENT.replace("[1] }", "[-1] }");
        match parse_gkm(&bad) {
            Err(Error::Invalid(i)) => assert_eq!(i.invariant, Invariant::EdgeDirection),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_primitive_weight_is_reduced() {
        let doc = SEGMENT.replace("[1] }", "[3] }");
        let g = parse_gkm(&doc).unwrap();
        assert_eq!(g.edges()[0].weight, vec![1]);
    }

    #[test]
    fn duplicate_ids_and_valence() {
        let doc = SEGMENT.replace("\"id\": \"N\"", "\"id\": \"S\"");
        let checks = validate_document(&GkmDocument::from_json(&doc).unwrap());
        let failed: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.invariant)
            .collect();
        assert!(failed.contains(&Invariant::UniqueIds));
        assert!(failed.contains(&Invariant::EdgeEndpoints));
    }

    #[test]
    fn odd_dimension_rejected() {
        let doc = SEGMENT.replace("\"dimension\": 2", "\"dimension\": 3");
        match parse_gkm(&doc) {
            Err(Error::Invalid(i)) => assert_eq!(i.invariant, Invariant::Dimension),
            other => panic!("{other:?}"),
        }
    }
}
