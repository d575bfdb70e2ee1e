//! Versioned JSON certificates and their independent re-verification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractional::FractionalColouring;
use crate::generators::{closure_graph, weak_closure_graph};
use crate::graph::{induced_subgraph, longest_path_length, monochromatic_components, verify_colouring, Bound, Colouring, Graph, MinorModel};

pub const SCHEMA: u32 = 1;

/// Graph as `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::from_edges(j.n, j.edges)
    }
}

/// A standard example named as `"W(h,k)"` or `"C(h,k)"`, or an explicit graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternJson {
    Named(String),
    Graph(GraphJson),
}

impl PatternJson {
    pub fn weak_closure(h: usize, k: usize) -> Self {
        PatternJson::Named(format!("W({h},{k})"))
    }

    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            PatternJson::Graph(g) => Graph::try_from(g.clone()),
            PatternJson::Named(name) => {
                let bad = || Error::Invalid(format!("unknown pattern {name:?}"));
                let (kind, rest) = name.split_at(1);
                let args = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (h, k) = args.split_once(',').ok_or_else(bad)?;
                let h: usize = h.trim().parse().map_err(|_| bad())?;
                let k: usize = k.trim().parse().map_err(|_| bad())?;
                match kind {
                    "W" => weak_closure_graph(h, k),
                    "C" => closure_graph(h, k),
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorJson {
    pub pattern: PatternJson,
    pub branch_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateBody {
    /// Every monochromatic component meets `bound`.
    Colouring {
        colouring: Colouring,
        bound: Bound,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_colours: Option<usize>,
    },
    /// Every monochromatic path has at most `max_path` vertices.
    PathColouring { colouring: Colouring, max_path: usize },
    Minor { minor: MinorJson },
    Fractional(FractionalColouring),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    #[serde(flatten)]
    pub body: CertificateBody,
}

impl Certificate {
    pub fn new(body: CertificateBody) -> Self {
        Certificate { schema: SCHEMA, body }
    }

    pub fn minor(model: &MinorModel) -> Self {
        Certificate::minor_named(model, PatternJson::Graph(GraphJson::from(&model.pattern)))
    }

    /// Minor certificate whose pattern is given by `pattern` (which must
    /// describe `model.pattern`).
    pub fn minor_named(model: &MinorModel, pattern: PatternJson) -> Self {
        Certificate::new(CertificateBody::Minor { minor: MinorJson { pattern, branch_sets: model.branch_sets.clone() } })
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            CertificateBody::Colouring { .. } => "colouring",
            CertificateBody::PathColouring { .. } => "path-colouring",
            CertificateBody::Minor { .. } => "minor",
            CertificateBody::Fractional(_) => "fractional",
        }
    }

    /// Re-checks the certificate against `g`; the error names the violation.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.schema != SCHEMA {
            return Err(format!("unsupported schema {}", self.schema));
        }
        match &self.body {
            CertificateBody::Colouring { colouring, bound, max_colours } => {
                if let Some(m) = max_colours {
                    if colouring.colour_count() > *m {
                        return Err(format!("{} colours used, at most {m} allowed", colouring.colour_count()));
                    }
                }
                let report = verify_colouring(g, colouring, *bound).map_err(|e| e.to_string())?;
                match report.witness {
                    None => Ok(()),
                    Some(w) => Err(format!("monochromatic component {w:?} violates the bound")),
                }
            }
            CertificateBody::PathColouring { colouring, max_path } => {
                colouring.check_graph(g).map_err(|e| e.to_string())?;
                for (_, comp) in monochromatic_components(g, colouring) {
                    if comp.len() <= *max_path {
                        continue;
                    }
                    let sub = induced_subgraph(g, &comp).map_err(|e| e.to_string())?.graph;
                    let len = longest_path_length(&sub).map_err(|e| e.to_string())?;
                    if len > *max_path {
                        return Err(format!("monochromatic path on {len} vertices in component {comp:?}"));
                    }
                }
                Ok(())
            }
            CertificateBody::Minor { minor: MinorJson { pattern, branch_sets } } => {
                let pattern = pattern.to_graph().map_err(|e| e.to_string())?;
                if let Some(&v) = branch_sets.iter().flatten().find(|&&v| v >= g.n()) {
                    return Err(format!("branch set names vertex {v} outside the graph"));
                }
                MinorModel { host: g.clone(), pattern, branch_sets: branch_sets.clone() }.verify()
            }
            CertificateBody::Fractional(f) => f.verify(g),
        }
    }
}
