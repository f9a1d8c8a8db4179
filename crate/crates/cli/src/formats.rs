//! Parsing and serialization of the text instance files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use bpalign_core::eval::GroundTruth;
use bpalign_core::{build_candidates, compute_squares, Graph, Mapping, Problem};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: {message}")]
    Invalid {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl FormatError {
    fn parse(path: &Path, line: usize, message: impl Into<String>) -> Self {
        FormatError::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    fn invalid(path: &Path, line: usize, message: impl Into<String>) -> Self {
        FormatError::Invalid {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }
}

/// Content lines of a file with their 1-based line numbers; comments and
/// blank lines are skipped.
fn content_lines(path: &Path) -> Result<Vec<(usize, String)>, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(n, line)| (n, line.to_string()))
        .collect())
}

fn fields<'a, const N: usize>(
    path: &Path,
    line_no: usize,
    line: &'a str,
    what: &str,
) -> Result<[&'a str; N], FormatError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    parts.try_into().map_err(|_| {
        FormatError::parse(
            path,
            line_no,
            format!("expected {what}, found {line:?}"),
        )
    })
}

fn parse_id(path: &Path, line_no: usize, token: &str) -> Result<u32, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::parse(path, line_no, format!("invalid node id {token:?}")))
}

fn parse_weight(path: &Path, line_no: usize, token: &str) -> Result<f64, FormatError> {
    let value: f64 = token
        .parse()
        .map_err(|_| FormatError::parse(path, line_no, format!("invalid weight {token:?}")))?;
    if !value.is_finite() {
        return Err(FormatError::parse(
            path,
            line_no,
            format!("weight {token:?} is not finite"),
        ));
    }
    Ok(value)
}

/// Reads a graph file: a `n <node_count>` header, then one `u v` per line.
pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let lines = content_lines(path)?;
    let Some(((header_no, header), rest)) = lines.split_first().map(|(h, r)| (h.clone(), r))
    else {
        return Err(FormatError::parse(path, 1, "missing `n <node_count>` header"));
    };
    let [tag, count] = fields(path, header_no, &header, "header `n <node_count>`")?;
    if tag != "n" {
        return Err(FormatError::parse(
            path,
            header_no,
            format!("expected header tag `n`, found {tag:?}"),
        ));
    }
    let node_count = parse_id(path, header_no, count)?;

    let mut edges = Vec::with_capacity(rest.len());
    let mut line_of = Vec::with_capacity(rest.len());
    for (line_no, line) in rest {
        let [u, v] = fields(path, *line_no, line, "edge `u v`")?;
        edges.push((parse_id(path, *line_no, u)?, parse_id(path, *line_no, v)?));
        line_of.push(*line_no);
    }
    Graph::new(node_count, &edges).map_err(|err| {
        let position = match &err {
            bpalign_core::GraphError::NodeOutOfRange { position, .. }
            | bpalign_core::GraphError::SelfLoop { position, .. }
            | bpalign_core::GraphError::DuplicateEdge { position, .. } => *position,
        };
        FormatError::invalid(path, line_of[position], err.to_string())
    })
}

pub fn write_graph(path: &Path, graph: &Graph) -> Result<(), FormatError> {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", graph.node_count());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    fs::write(path, out).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads raw candidate triples `i i' sigma_v` with their line numbers.
pub fn read_candidate_triples(
    path: &Path,
) -> Result<(Vec<(u32, u32, f64)>, Vec<usize>), FormatError> {
    let mut triples = Vec::new();
    let mut line_of = Vec::new();
    for (line_no, line) in content_lines(path)? {
        let [a, b, sigma] = fields(path, line_no, &line, "candidate `i i' sigma_v`")?;
        triples.push((
            parse_id(path, line_no, a)?,
            parse_id(path, line_no, b)?,
            parse_weight(path, line_no, sigma)?,
        ));
        line_of.push(line_no);
    }
    Ok((triples, line_of))
}

pub fn write_candidates(path: &Path, triples: &[(u32, u32, f64)]) -> Result<(), FormatError> {
    let mut out = String::new();
    for &(a, b, sigma) in triples {
        let _ = writeln!(out, "{a} {b} {sigma}");
    }
    fs::write(path, out).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a square-weight file: `i i' j j' w` per line, keyed by the two
/// candidate pairs the square joins.
pub fn read_square_weights(
    path: &Path,
) -> Result<BTreeMap<(u32, u32, u32, u32), f64>, FormatError> {
    let mut weights = BTreeMap::new();
    for (line_no, line) in content_lines(path)? {
        let [i, ip, j, jp, w] = fields(path, line_no, &line, "square weight `i i' j j' w`")?;
        let key = (
            parse_id(path, line_no, i)?,
            parse_id(path, line_no, ip)?,
            parse_id(path, line_no, j)?,
            parse_id(path, line_no, jp)?,
        );
        let w = parse_weight(path, line_no, w)?;
        if w < 0.0 {
            return Err(FormatError::invalid(
                path,
                line_no,
                format!("square weight must be non-negative, found {w}"),
            ));
        }
        if weights.insert(key, w).is_some() {
            return Err(FormatError::invalid(
                path,
                line_no,
                format!("duplicate square weight for ({} {} {} {})", key.0, key.1, key.2, key.3),
            ));
        }
    }
    Ok(weights)
}

/// Reads a mapping or ground-truth file: `i i'` per line with an optional
/// trailing score.
pub fn read_mapping_pairs(path: &Path) -> Result<Vec<(u32, u32, f64)>, FormatError> {
    let mut pairs = Vec::new();
    for (line_no, line) in content_lines(path)? {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (a, b, score) = match parts.as_slice() {
            [a, b] => (a, b, 0.0),
            [a, b, score] => (a, b, parse_weight(path, line_no, score)?),
            _ => {
                return Err(FormatError::parse(
                    path,
                    line_no,
                    format!("expected mapping `i i' [score]`, found {line:?}"),
                ))
            }
        };
        pairs.push((
            parse_id(path, line_no, a)?,
            parse_id(path, line_no, b)?,
            score,
        ));
    }
    Ok(pairs)
}

/// Validating wrapper producing a one-to-one [`Mapping`].
pub fn read_mapping(path: &Path) -> Result<Mapping, FormatError> {
    let pairs = read_mapping_pairs(path)?;
    Mapping::from_triples(&pairs)
        .map_err(|err| FormatError::invalid(path, 0, err.to_string()))
}

/// Validating wrapper producing a [`GroundTruth`].
pub fn read_ground_truth(path: &Path) -> Result<GroundTruth, FormatError> {
    let pairs = read_mapping_pairs(path)?;
    let pairs: Vec<(u32, u32)> = pairs.iter().map(|&(a, b, _)| (a, b)).collect();
    GroundTruth::new(&pairs).map_err(|err| FormatError::invalid(path, 0, err.to_string()))
}

pub fn write_mapping(path: &Path, mapping: &Mapping) -> Result<(), FormatError> {
    let mut out = String::new();
    for pair in mapping.pairs() {
        let _ = writeln!(out, "{} {} {}", pair.a, pair.b, pair.score);
    }
    fs::write(path, out).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_ground_truth(path: &Path, truth: &GroundTruth) -> Result<(), FormatError> {
    let mut out = String::new();
    for (a, b) in truth.pairs() {
        let _ = writeln!(out, "{a} {b}");
    }
    fs::write(path, out).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a full problem instance from its component files.
pub fn load_problem(
    graph_a_path: &Path,
    graph_b_path: &Path,
    candidates_path: &Path,
    square_weights_path: Option<&Path>,
    zeta: f64,
) -> Result<Problem, FormatError> {
    let graph_a = read_graph(graph_a_path)?;
    let graph_b = read_graph(graph_b_path)?;
    let (triples, line_of) = read_candidate_triples(candidates_path)?;
    let candidates = build_candidates(&graph_a, &graph_b, &triples, zeta).map_err(|err| {
        let position = match &err {
            bpalign_core::CandidateError::NodeOutOfRange { position, .. }
            | bpalign_core::CandidateError::DuplicatePair { position, .. }
            | bpalign_core::CandidateError::NegativeSimilarity { position, .. } => *position,
        };
        FormatError::invalid(candidates_path, line_of[position], err.to_string())
    })?;

    let squares = match square_weights_path {
        Some(path) => {
            let weights = read_square_weights(path)?;
            // Listed squares use the file weight; everything else overlaps
            // with weight 1.
            compute_squares(&graph_a, &graph_b, &candidates, |ea, eb| {
                weights
                    .get(&(ea.0, eb.0, ea.1, eb.1))
                    .copied()
                    .unwrap_or(1.0)
            })
        }
        None => compute_squares(&graph_a, &graph_b, &candidates, |_, _| 1.0),
    };
    Ok(Problem::new(graph_a, graph_b, candidates, squares))
}
