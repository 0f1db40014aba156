//! Parsed, but not yet resolved, command parameters.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slimsell_core::generator::GenSpec;
use slimsell_core::{EdgeDirective, Graph};

use crate::error::CliError;

const GENERATOR_FAMILIES: [&str; 5] = ["er", "kron", "path", "clique", "star"];

/// A graph file (edge list, or Matrix Market when the name ends in `.mtx`)
/// or a generator spec such as `kron:scale=14,ef=16,seed=3`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generated(GenSpec),
}

impl FromStr for GraphSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some((family, _)) if GENERATOR_FAMILIES.contains(&family) => s
                .parse()
                .map(GraphSource::Generated)
                .map_err(|e| e.to_string()),
            _ => Ok(GraphSource::File(PathBuf::from(s))),
        }
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(path) => write!(f, "{}", path.display()),
            GraphSource::Generated(spec) => write!(f, "{spec}"),
        }
    }
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, CliError> {
        match self {
            GraphSource::Generated(spec) => Ok(spec.generate()?),
            GraphSource::File(path) => {
                let text = fs::read_to_string(path).map_err(CliError::io(path))?;
                let graph = if path.extension().is_some_and(|e| e == "mtx") {
                    Graph::from_matrix_market(&text)
                } else {
                    Graph::from_edge_list(&text, EdgeDirective::Symmetrize)
                };
                graph.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
            }
        }
    }

    /// The label written to the `graph_id` CSV column.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

/// Sorting scope, either absolute or relative to the graph and chunk height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaSpec {
    Abs(usize),
    /// `n` rounded up to a multiple of `C`.
    N,
    /// Smallest multiple of `C` that is at least `sqrt(n)`.
    SqrtN,
    C,
}

impl SigmaSpec {
    pub fn resolve(self, n: usize, c: usize) -> usize {
        match self {
            SigmaSpec::Abs(s) => s,
            SigmaSpec::N => n.div_ceil(c).max(1) * c,
            SigmaSpec::SqrtN => {
                let mut r = (n as f64).sqrt() as usize;
                while r * r < n {
                    r += 1;
                }
                r.div_ceil(c).max(1) * c
            }
            SigmaSpec::C => c,
        }
    }
}

impl FromStr for SigmaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n" => Ok(SigmaSpec::N),
            "sqrt_n" => Ok(SigmaSpec::SqrtN),
            "C" => Ok(SigmaSpec::C),
            _ => match s.parse::<usize>() {
                Ok(v) if v > 0 => Ok(SigmaSpec::Abs(v)),
                _ => Err(format!(
                    "sigma `{s}` must be a positive integer, n, sqrt_n or C"
                )),
            },
        }
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaSpec::Abs(s) => write!(f, "{s}"),
            SigmaSpec::N => f.write_str("n"),
            SigmaSpec::SqrtN => f.write_str("sqrt_n"),
            SigmaSpec::C => f.write_str("C"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSpec {
    Id(usize),
    /// `k` distinct roots drawn from the non-isolated vertices.
    Random(usize),
}

impl FromStr for RootSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parsed = match s.strip_prefix("random:") {
            Some(k) => k.parse().map(RootSpec::Random),
            None => s.parse().map(RootSpec::Id),
        };
        parsed.map_err(|_| format!("root `{s}` must be a vertex id or random:<k>"))
    }
}

impl RootSpec {
    /// Random roots come from a ChaCha8 stream seeded with `seed`. Graphs
    /// without edges fall back to sampling among all vertices.
    pub fn resolve(self, g: &Graph, seed: u64) -> Result<Vec<usize>, CliError> {
        match self {
            RootSpec::Id(v) if v < g.n() => Ok(vec![v]),
            RootSpec::Id(v) => Err(CliError::Config(format!(
                "root {v} out of range for n = {}",
                g.n()
            ))),
            RootSpec::Random(_) if g.n() == 0 => {
                Err(CliError::Config("graph has no vertices".into()))
            }
            RootSpec::Random(k) => {
                let mut pool: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
                if pool.is_empty() {
                    pool = (0..g.n()).collect();
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let picks = rand::seq::index::sample(&mut rng, pool.len(), k.min(pool.len()));
                Ok(picks.into_iter().map(|i| pool[i]).collect())
            }
        }
    }
}

/// `on` / `off` flag values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toggle(pub bool);

impl FromStr for Toggle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "on" => Ok(Toggle(true)),
            "off" => Ok(Toggle(false)),
            _ => Err(format!("expected on|off, got `{s}`")),
        }
    }
}

/// `off` or a maximum subchunk length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlimChunkSpec(pub Option<usize>);

impl FromStr for SlimChunkSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "off" {
            return Ok(SlimChunkSpec(None));
        }
        match s.parse::<usize>() {
            Ok(l) if l > 0 => Ok(SlimChunkSpec(Some(l))),
            _ => Err(format!("slimchunk `{s}` must be off or a positive length")),
        }
    }
}
