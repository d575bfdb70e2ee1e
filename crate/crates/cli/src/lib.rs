//! The `cck` command line: every subcommand prints one JSON document (or an
//! edge list for `generate`) and reports its outcome through the exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Read;

use cck_core::cert::{Certificate, CertificateBody, GraphJson, PatternJson};
use cck_core::cluster::{cluster_colour_graph, ClusterParams, GraphOutcome, DEFAULT_EMBED_BUDGET, DEFAULT_PROFILE_CAP};
use cck_core::elimination::{dfs_elimination_tree, normalize_tree_traced, treedepth_exact, EliminationTree};
use cck_core::fractional::{certify_lower_bound, combine_fragility, defect_lp_lower, FragilityCover, Rational};
use cck_core::generators::{closure_graph, weak_closure_graph};
use cck_core::graph::parse_edge_list;
use cck_core::oracles::{exists_colouring, minor_contains, DEFAULT_SEARCH_BUDGET};
use cck_core::pathwidth::{exact_pathwidth, product_colouring, two_colour, PathDecomposition};
use cck_core::{Bound, Colouring, Error, Graph};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MINOR: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

/// Environment variable overriding every search budget.
pub const BUDGET_ENV: &str = "CCK_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "cck", version, about = "Clustered colourings, minors and certificates for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Closure,
    Weak,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    EdgeList,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit C<h,k> (closure) or W<h,k> (weak closure).
    Generate {
        family: Family,
        h: usize,
        k: usize,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: Format,
    },
    /// Treedepth with a witness tree, or the depth of a DFS tree.
    #[command(group(ArgGroup::new("method").args(["exact", "dfs"])))]
    Treedepth {
        graph: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        dfs: bool,
    },
    /// Normalize an elimination tree given as a parent array.
    Normalize {
        graph: String,
        #[arg(long)]
        tree: String,
    },
    /// Clustered (h-1)-colouring or a W<h,k> minor.
    ClusterColour {
        graph: String,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_PROFILE_CAP)]
        cap: usize,
    },
    /// Two-colouring with short monochromatic paths from a path decomposition.
    #[command(name = "pw-2colour")]
    #[command(group(ArgGroup::new("decomposition").args(["pd", "exact_pd"]).required(true)))]
    Pw2Colour {
        graph: String,
        pd: Option<String>,
        #[arg(long)]
        exact_pd: bool,
    },
    /// Product of two colourings of the same vertex set.
    Product { a: String, b: String },
    /// Exact fractional cover number by sets of induced maximum degree at most d.
    LpLower {
        graph: String,
        #[arg(long)]
        d: usize,
    },
    /// Compare the LP value on C<h,k> with h - (h-1)d/k.
    Certify {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Fractional clustered colouring from a fragility cover.
    Combine {
        graph: String,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_PROFILE_CAP)]
        cap: usize,
    },
    /// Exhaustive search for a colouring with a clustering or defect bound.
    #[command(group(ArgGroup::new("bound").args(["clustering", "defect"]).required(true)))]
    Exists {
        graph: String,
        #[arg(long)]
        colours: usize,
        #[arg(long)]
        clustering: Option<usize>,
        #[arg(long)]
        defect: Option<usize>,
    },
    /// Exhaustive search for PATTERN (a file, or "W(h,k)" / "C(h,k)") as a minor of HOST.
    Minor { host: String, pattern: String },
    /// Re-check a certificate against a graph.
    Verify { certificate: String, graph: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn json(code: i32, value: Value) -> Self {
        Output { code, stdout: format!("{value}\n"), stderr: String::new() }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Output { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_ERROR, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e @ (Error::CapLimited(_) | Error::BudgetExceeded { .. })) => Output::json(
            EXIT_INDETERMINATE,
            json!({ "schema": 1, "status": status_of(&e), "reason": e.to_string() }),
        ),
        Err(e @ Error::MinorFound(_)) => {
            Output::json(EXIT_MINOR, json!({ "schema": 1, "status": "minor", "reason": e.to_string() }))
        }
        Err(e) => Output::error(e),
    }
}

fn status_of(e: &Error) -> &'static str {
    match e {
        Error::CapLimited(_) => "cap-limited",
        _ => "indeterminate",
    }
}

fn budget() -> Result<Option<u64>, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Invalid(format!("{BUDGET_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn read_text(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, Error> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

/// Reads an edge list, or a `{"n": .., "edges": ..}` document.
fn read_graph(path: &str) -> Result<Graph, Error> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        let j: GraphJson = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        Graph::try_from(j)
    } else {
        parse_edge_list(&text)
    }
}

/// A bare array, or an object carrying it under `key`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Wrapped<T> {
    Bare(T),
    Object(serde_json::Map<String, Value>),
}

fn read_wrapped<T: for<'de> Deserialize<'de>>(path: &str, key: &str) -> Result<T, Error> {
    match parse_json::<Wrapped<T>>(path)? {
        Wrapped::Bare(t) => Ok(t),
        Wrapped::Object(mut map) => {
            let v = map.remove(key).ok_or_else(|| Error::Invalid(format!("{path}: no \"{key}\" field")))?;
            serde_json::from_value(v).map_err(|e| Error::Invalid(format!("{path}: {e}")))
        }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn with_fields(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn execute(command: Command) -> Result<Output, Error> {
    match command {
        Command::Generate { family, h, k, format } => {
            let g = match family {
                Family::Closure => closure_graph(h, k)?,
                Family::Weak => weak_closure_graph(h, k)?,
            };
            Ok(match format {
                Format::EdgeList => Output { code: EXIT_OK, stdout: g.to_edge_list(), stderr: String::new() },
                Format::Json => Output::json(EXIT_OK, with_fields(json!({ "schema": 1 }), to_value(&GraphJson::from(&g)))),
            })
        }
        Command::Treedepth { graph, exact: _, dfs } => {
            let g = read_graph(&graph)?;
            if dfs {
                let e = dfs_elimination_tree(&g, 0)?;
                Ok(Output::json(EXIT_OK, json!({ "schema": 1, "depth": e.depth(), "parents": e.tree().parents() })))
            } else {
                let td = treedepth_exact(&g)?;
                Ok(Output::json(
                    EXIT_OK,
                    json!({
                        "schema": 1,
                        "treedepth": td.treedepth,
                        "connected_treedepth": td.connected_treedepth,
                        "depth": td.witness.depth(),
                        "parents": td.witness.tree().parents(),
                    }),
                ))
            }
        }
        Command::Normalize { graph, tree } => {
            let g = read_graph(&graph)?;
            let parents: Vec<usize> = read_wrapped(&tree, "parents")?;
            let e = EliminationTree::from_parents(g, parents)?;
            let (out, sums) = normalize_tree_traced(&e)?;
            Ok(Output::json(
                EXIT_OK,
                json!({ "schema": 1, "depth": out.depth(), "parents": out.tree().parents(), "root_distance_sums": sums }),
            ))
        }
        Command::ClusterColour { graph, h, k, cap } => {
            let g = read_graph(&graph)?;
            let mut params = ClusterParams::new(h, k).with_cap(cap);
            params.embed_budget = budget()?.unwrap_or(DEFAULT_EMBED_BUDGET);
            match cluster_colour_graph(&g, params)? {
                GraphOutcome::Colouring(c) => {
                    let cert = Certificate::new(CertificateBody::Colouring {
                        colouring: c.colouring.clone(),
                        bound: Bound::Clustering(c.max_cluster),
                        max_colours: Some(h.saturating_sub(1)),
                    });
                    let extra = json!({
                        "colours": c.colouring.colour_count(),
                        "max_cluster": c.max_cluster,
                        "groups": c.groups,
                    });
                    Ok(Output::json(EXIT_OK, with_fields(to_value(&cert), extra)))
                }
                GraphOutcome::Minor(m) => {
                    let named = weak_closure_graph(h, k)?;
                    let pattern = if m.model.pattern == named {
                        PatternJson::weak_closure(h, k)
                    } else {
                        PatternJson::Graph(GraphJson::from(&m.model.pattern))
                    };
                    let cert = Certificate::minor_named(&m.model, pattern);
                    Ok(Output::json(EXIT_MINOR, to_value(&cert)))
                }
            }
        }
        Command::Pw2Colour { graph, pd, exact_pd: _ } => {
            let g = read_graph(&graph)?;
            let pd = match pd {
                Some(path) => PathDecomposition::new(parse_json(&path)?),
                None => exact_pathwidth(&g)?.1,
            };
            let col = two_colour(&g, &pd)?;
            let cert = Certificate::new(CertificateBody::PathColouring {
                colouring: col.colouring.clone(),
                max_path: col.path_bound() as usize,
            });
            let levels: Vec<Value> =
                col.levels.iter().map(|l| json!({ "width": l.width, "selected": l.selected })).collect();
            let extra = json!({ "width": col.width, "colours": col.colouring.colour_count(), "levels": levels });
            Ok(Output::json(EXIT_OK, with_fields(to_value(&cert), extra)))
        }
        Command::Product { a, b } => {
            let a: Colouring = read_wrapped(&a, "colouring")?;
            let b: Colouring = read_wrapped(&b, "colouring")?;
            let p = product_colouring(&a, &b)?;
            Ok(Output::json(EXIT_OK, json!({ "schema": 1, "colouring": p, "colours": p.colour_count() })))
        }
        Command::LpLower { graph, d } => {
            let g = read_graph(&graph)?;
            let sol = defect_lp_lower(&g, d)?;
            let cert = Certificate::new(CertificateBody::Fractional(sol.to_fractional(Bound::Defect(d))));
            let dual: Vec<Rational> = sol.vertex_weights.iter().cloned().map(Rational).collect();
            let extra = json!({ "lp": Rational(sol.value), "dual": dual });
            Ok(Output::json(EXIT_OK, with_fields(to_value(&cert), extra)))
        }
        Command::Certify { h, k, d } => {
            let c = certify_lower_bound(h, k, d)?;
            Ok(Output::json(
                EXIT_OK,
                json!({ "schema": 1, "lp": c.lp, "bound": c.bound, "ok": c.ok, "h": h, "k": k, "d": d }),
            ))
        }
        Command::Combine { graph, cover, h, k, cap } => {
            let g = read_graph(&graph)?;
            let cover: FragilityCover = parse_json(&cover)?;
            let out = combine_fragility(&g, &cover, h, k, cap)?;
            let cert = Certificate::new(CertificateBody::Fractional(out.fractional));
            let extra = json!({ "delta": cover.delta, "epsilon": out.epsilon, "clustering": out.clustering });
            Ok(Output::json(EXIT_OK, with_fields(to_value(&cert), extra)))
        }
        Command::Exists { graph, colours, clustering, defect } => {
            let g = read_graph(&graph)?;
            let bound = match (clustering, defect) {
                (Some(c), _) => Bound::Clustering(c),
                (None, Some(d)) => Bound::Defect(d),
                (None, None) => unreachable!("clap requires one bound"),
            };
            let budget = budget()?.unwrap_or(DEFAULT_SEARCH_BUDGET);
            Ok(match exists_colouring(&g, colours, bound, budget)? {
                None => Output::json(EXIT_OK, json!({ "schema": 1, "exists": false })),
                Some(col) => {
                    let cert = Certificate::new(CertificateBody::Colouring {
                        colouring: col,
                        bound,
                        max_colours: Some(colours),
                    });
                    Output::json(EXIT_OK, with_fields(json!({ "schema": 1, "exists": true }), to_value(&cert)))
                }
            })
        }
        Command::Minor { host, pattern } => {
            let host = read_graph(&host)?;
            let named = PatternJson::Named(pattern.clone());
            let pattern_graph = match named.to_graph() {
                Ok(g) => g,
                Err(_) => read_graph(&pattern)?,
            };
            let budget = budget()?.unwrap_or(DEFAULT_SEARCH_BUDGET);
            Ok(match minor_contains(&host, &pattern_graph, budget)? {
                None => Output::json(EXIT_OK, json!({ "schema": 1, "found": false })),
                Some(model) => {
                    let cert = if named.to_graph().is_ok() {
                        Certificate::minor_named(&model, named)
                    } else {
                        Certificate::minor(&model)
                    };
                    Output::json(EXIT_OK, with_fields(json!({ "schema": 1, "found": true }), to_value(&cert)))
                }
            })
        }
        Command::Verify { certificate, graph } => {
            let cert: Certificate = parse_json(&certificate)?;
            let g = read_graph(&graph)?;
            Ok(match cert.verify(&g) {
                Ok(()) => Output::json(EXIT_OK, json!({ "schema": 1, "ok": true, "kind": cert.kind() })),
                Err(v) => Output::json(
                    EXIT_ERROR,
                    json!({ "schema": 1, "ok": false, "kind": cert.kind(), "violation": v }),
                ),
            })
        }
    }
}
