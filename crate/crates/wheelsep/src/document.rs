//! JSON document formats for graphs, weightings, and pipeline results, plus
//! Graphviz DOT export. Rationals travel as `"p/q"` strings in lowest terms so
//! nothing is lost to floating point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};
use crate::minor::InducedMinorWitness;
use crate::pipeline::PipelineResult;
use crate::weights::{format_rational, parse_rational, Rational, Route, SeparatorCertificate, Weighting};
use crate::{Error, Result};

/// A graph with optional vertex weights. Map keys are vertex ids as strings
/// (JSON object keys are always strings).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, String>>,
}

fn parse_vertex_key(key: &str) -> Result<Vertex> {
    key.parse()
        .map_err(|_| Error::Precondition(format!("vertex key {key:?} is not an id")))
}

impl GraphDocument {
    pub fn from_graph(g: &Graph, w: Option<&Weighting>) -> Self {
        GraphDocument {
            vertices: g.vertices().collect(),
            edges: g.edges(),
            weights: w.map(|w| {
                w.iter()
                    .map(|(v, r)| (v.to_string(), format_rational(r)))
                    .collect()
            }),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut seen = VertexSet::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::Precondition(format!("duplicate vertex id {v}")));
            }
        }
        Graph::new(self.vertices.iter().copied(), self.edges.iter().copied())
    }

    /// The weighting carried by the document; an absent field means unit
    /// weights, and vertices without an entry weigh zero.
    pub fn weighting(&self, g: &Graph) -> Result<Weighting> {
        let Some(map) = &self.weights else {
            return Ok(Weighting::unit(g));
        };
        let mut weights: BTreeMap<Vertex, Rational> = g
            .vertices()
            .map(|v| (v, Rational::from_integer(0.into())))
            .collect();
        for (&v, s) in map {
            if !g.contains_vertex(v) {
                return Err(Error::VertexNotInGraph(v));
            }
            weights.insert(v, parse_rational(s)?);
        }
        Weighting::new(g, weights)
    }
}

/// Output of `separate`: a certificate or a witness, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultDocument {
    Certificate {
        ell: u32,
        route: Route,
        separator: Vec<Vertex>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dominators: Option<Vec<Vertex>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size_bound: Option<usize>,
    },
    Witness {
        ell: u32,
        pattern: GraphDocument,
        branch_sets: BTreeMap<Vertex, Vec<Vertex>>,
    },
}

impl ResultDocument {
    pub fn from_result(result: &PipelineResult, ell: u32) -> Self {
        match result {
            PipelineResult::Certificate(cert) => ResultDocument::Certificate {
                ell,
                route: cert.route,
                separator: cert.separator.iter().copied().collect(),
                dominators: cert
                    .dominators
                    .as_ref()
                    .map(|d| d.iter().copied().collect()),
                size_bound: cert.size_bound,
            },
            PipelineResult::Witness(wit) => ResultDocument::Witness {
                ell,
                pattern: GraphDocument::from_graph(&wit.pattern, None),
                branch_sets: wit
                    .branch_sets
                    .iter()
                    .map(|(&p, set)| (p, set.iter().copied().collect()))
                    .collect(),
            },
        }
    }

    pub fn to_result(&self) -> Result<(PipelineResult, u32)> {
        match self {
            ResultDocument::Certificate {
                ell,
                route,
                separator,
                dominators,
                size_bound,
            } => Ok((
                PipelineResult::Certificate(SeparatorCertificate {
                    separator: separator.iter().copied().collect(),
                    route: *route,
                    dominators: dominators.as_ref().map(|d| d.iter().copied().collect()),
                    size_bound: *size_bound,
                }),
                *ell,
            )),
            ResultDocument::Witness {
                ell,
                pattern,
                branch_sets,
            } => Ok((
                PipelineResult::Witness(InducedMinorWitness {
                    pattern: pattern.to_graph()?,
                    branch_sets: branch_sets
                        .iter()
                        .map(|(&p, set)| (p, set.iter().copied().collect()))
                        .collect(),
                }),
                *ell,
            )),
        }
    }
}

/// Graphviz text: separator vertices double-circled, dominators filled.
pub fn render_dot(doc: &GraphDocument, highlight: Option<&SeparatorCertificate>) -> String {
    let empty = VertexSet::new();
    let separator = highlight.map_or(&empty, |c| &c.separator);
    let dominators = highlight
        .and_then(|c| c.dominators.as_ref())
        .unwrap_or(&empty);
    let mut out = String::from("graph wheelsep {\n  node [shape=circle];\n");
    for &v in &doc.vertices {
        let mut attrs = Vec::new();
        if separator.contains(&v) {
            attrs.push("shape=doublecircle".to_string());
        }
        if dominators.contains(&v) {
            attrs.push("style=filled".to_string());
        }
        if let Some(label) = doc.weights.as_ref().and_then(|ws| ws.get(&v)) {
            attrs.push(format!("label=\"{v}\\n{label}\""));
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {v};\n"));
        } else {
            out.push_str(&format!("  {v} [{}];\n", attrs.join(", ")));
        }
    }
    for &(u, v) in &doc.edges {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
