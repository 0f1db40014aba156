//! Deterministic synthetic graphs.
//!
//! Random graphs draw from a ChaCha8 stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`; a given `(kind, parameters, seed)`
//! always yields the same graph. Generation is single-threaded.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graph500 initiator probabilities `(a, b, c, d)`.
pub const GRAPH500_INITIATOR: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    Kronecker {
        scale: u32,
        edgefactor: usize,
        initiator: [f64; 4],
    },
    Path {
        n: usize,
    },
    Clique {
        n: usize,
    },
    Star {
        n: usize,
    },
}

/// A graph family plus the seed that picks one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GraphKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.kind {
            GraphKind::ErdosRenyi { n, p } => gen_erdos_renyi(n, p, self.seed),
            GraphKind::Kronecker {
                scale,
                edgefactor,
                initiator,
            } => gen_kronecker(scale, edgefactor, self.seed, initiator),
            GraphKind::Path { n } => gen_fixture(Fixture::Path, n),
            GraphKind::Clique { n } => gen_fixture(Fixture::Clique, n),
            GraphKind::Star { n } => gen_fixture(Fixture::Star, n),
        }
    }
}

/// Parses `er:n=4096,p=0.004`, `kron:scale=14,ef=16[,a=..,b=..,c=..,d=..]`,
/// `path:n=64`, `clique:n=8`, `star:n=6`; each optionally with `,seed=<u64>`.
impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parameter(format!("graph spec `{s}`: {msg}"));
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `<family>:<key>=<value>,...`".into()))?;
        let mut n = None;
        let mut p = None;
        let mut scale = None;
        let mut ef = None;
        let mut seed = 0u64;
        let mut initiator = GRAPH500_INITIATOR;
        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| bad(format!("`{pair}` is not key=value")))?;
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| bad(format!("`{v}` is not an integer")))
            };
            let real = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| bad(format!("`{v}` is not a number")))
            };
            match key {
                "n" => n = Some(int(value)? as usize),
                "p" => p = Some(real(value)?),
                "scale" => scale = Some(int(value)? as u32),
                "ef" => ef = Some(int(value)? as usize),
                "seed" => seed = int(value)?,
                "a" => initiator[0] = real(value)?,
                "b" => initiator[1] = real(value)?,
                "c" => initiator[2] = real(value)?,
                "d" => initiator[3] = real(value)?,
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let need_n = || n.ok_or_else(|| bad("missing n".into()));
        let kind = match family {
            "er" => GraphKind::ErdosRenyi {
                n: need_n()?,
                p: p.ok_or_else(|| bad("missing p".into()))?,
            },
            "kron" => GraphKind::Kronecker {
                scale: scale.ok_or_else(|| bad("missing scale".into()))?,
                edgefactor: ef.unwrap_or(16),
                initiator,
            },
            "path" => GraphKind::Path { n: need_n()? },
            "clique" => GraphKind::Clique { n: need_n()? },
            "star" => GraphKind::Star { n: need_n()? },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        Ok(Self { kind, seed })
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GraphKind::ErdosRenyi { n, p } => write!(f, "er:n={n},p={p}")?,
            GraphKind::Kronecker {
                scale,
                edgefactor,
                initiator,
            } => {
                write!(f, "kron:scale={scale},ef={edgefactor}")?;
                if *initiator != GRAPH500_INITIATOR {
                    let [a, b, c, d] = initiator;
                    write!(f, ",a={a},b={b},c={c},d={d}")?;
                }
            }
            GraphKind::Path { n } => write!(f, "path:n={n}")?,
            GraphKind::Clique { n } => write!(f, "clique:n={n}")?,
            GraphKind::Star { n } => write!(f, "star:n={n}")?,
        }
        write!(f, ",seed={}", self.seed)
    }
}

/// G(n, p): every unordered pair is an edge independently with probability `p`.
///
/// Pairs are visited in the order (1,0), (2,0), (2,1), (3,0), ... and the gap
/// to the next sampled pair is drawn from a geometric distribution, so the
/// expected running time is O(n + m).
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    if n < 2 || p == 0.0 {
        return Graph::from_edges(n, []);
    }
    if p == 1.0 {
        return Graph::from_edges(n, (0..n as u64).flat_map(|u| (0..u).map(move |v| (u, v))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (u64, i64) = (1, -1);
    let n = n as u64;
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as u64));
        }
    }
    Graph::from_edges(n as usize, edges)
}

/// Kronecker (R-MAT style) graph on `2^scale` vertices.
///
/// Draws `edgefactor * 2^scale` directed candidates by choosing one quadrant
/// per bit with probabilities `initiator = (a, b, c, d)`, then drops
/// self-loops, merges duplicates and symmetrizes.
pub fn gen_kronecker(
    scale: u32,
    edgefactor: usize,
    seed: u64,
    initiator: [f64; 4],
) -> Result<Graph> {
    if !(1..=30).contains(&scale) {
        return Err(Error::Parameter(format!("scale {scale} outside [1, 30]")));
    }
    if edgefactor == 0 {
        return Err(Error::Parameter("edgefactor must be at least 1".into()));
    }
    if initiator.iter().any(|q| !(0.0..=1.0).contains(q))
        || (initiator.iter().sum::<f64>() - 1.0).abs() > 1e-9
    {
        return Err(Error::Parameter(format!(
            "initiator {initiator:?} must be probabilities summing to 1"
        )));
    }
    let [a, b, c, _] = initiator;
    let (ab, abc) = (a + b, a + b + c);
    let n = 1usize << scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(u64, u64)> = (0..edgefactor * n)
        .map(|_| {
            let (mut u, mut v) = (0u64, 0u64);
            for _ in 0..scale {
                let r: f64 = rng.gen();
                let (bu, bv) = if r < a {
                    (0, 0)
                } else if r < ab {
                    (0, 1)
                } else if r < abc {
                    (1, 0)
                } else {
                    (1, 1)
                };
                u = (u << 1) | bu;
                v = (v << 1) | bv;
            }
            (u, v)
        })
        .collect();
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Path,
    Clique,
    /// Vertex 0 joined to every other vertex.
    Star,
}

pub fn gen_fixture(kind: Fixture, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("fixture needs at least one vertex".into()));
    }
    let n64 = n as u64;
    match kind {
        Fixture::Path => Graph::from_edges(n, (1..n64).map(|v| (v - 1, v))),
        Fixture::Clique => {
            Graph::from_edges(n, (0..n64).flat_map(|u| (u + 1..n64).map(move |v| (u, v))))
        }
        Fixture::Star => Graph::from_edges(n, (1..n64).map(|v| (0, v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        assert_eq!(gen_erdos_renyi(50, 0.0, 3).unwrap().m(), 0);
        assert_eq!(gen_erdos_renyi(5, 1.0, 3).unwrap().m(), 10);
        assert_eq!(gen_erdos_renyi(1, 0.5, 3).unwrap().m(), 0);
        assert!(gen_erdos_renyi(5, 1.5, 3).is_err());
    }

    #[test]
    fn er_is_deterministic() {
        let a = gen_erdos_renyi(300, 0.05, 11).unwrap();
        let b = gen_erdos_renyi(300, 0.05, 11).unwrap();
        let c = gen_erdos_renyi(300, 0.05, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn er_pairs_are_uniform_enough() {
        // every pair should show up in a dense sample
        let g = gen_erdos_renyi(20, 0.9, 5).unwrap();
        let expected = 0.9 * 190.0;
        let sd = (190.0f64 * 0.9 * 0.1).sqrt();
        assert!((g.m() as f64 - expected).abs() < 4.0 * sd);
    }

    #[test]
    fn er_concentration() {
        let n = 1 << 12;
        let p = 16.0 / n as f64;
        let g = gen_erdos_renyi(n, p, 2024).unwrap();
        let pairs = (n * (n - 1) / 2) as f64;
        let mean = p * pairs;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        assert!((g.m() as f64 - mean).abs() <= 4.0 * sd, "m = {}", g.m());
        let max_deg = g.degree_stats().unwrap().max_degree as f64;
        assert!(max_deg <= 8.0 * (n as f64 * p).max((n as f64).ln()));
    }

    #[test]
    fn kronecker_small_bounds() {
        let g = gen_kronecker(2, 1, 9, GRAPH500_INITIATOR).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.m() <= 4);
    }

    #[test]
    fn kronecker_is_skewed_and_deterministic() {
        let g = gen_kronecker(10, 16, 1, GRAPH500_INITIATOR).unwrap();
        let stats = g.degree_stats().unwrap();
        assert!(stats.max_degree as f64 / stats.avg_degree() >= 4.0);
        assert!(g.m() <= 16 * 1024);
        assert_eq!(g, gen_kronecker(10, 16, 1, GRAPH500_INITIATOR).unwrap());
    }

    #[test]
    fn kronecker_rejects_bad_parameters() {
        assert!(gen_kronecker(0, 16, 1, GRAPH500_INITIATOR).is_err());
        assert!(gen_kronecker(4, 0, 1, GRAPH500_INITIATOR).is_err());
        assert!(gen_kronecker(4, 4, 1, [0.5, 0.5, 0.5, 0.0]).is_err());
    }

    #[test]
    fn fixtures() {
        assert_eq!(gen_fixture(Fixture::Path, 4).unwrap().m(), 3);
        assert_eq!(gen_fixture(Fixture::Clique, 4).unwrap().m(), 6);
        assert_eq!(
            gen_fixture(Fixture::Star, 6)
                .unwrap()
                .degree_stats()
                .unwrap()
                .max_degree,
            5
        );
        assert_eq!(gen_fixture(Fixture::Path, 1).unwrap().m(), 0);
        assert!(gen_fixture(Fixture::Star, 0).is_err());
    }

    #[test]
    fn spec_strings() {
        let spec: GenSpec = "er:n=4096,p=0.004,seed=7".parse().unwrap();
        assert_eq!(spec.kind, GraphKind::ErdosRenyi { n: 4096, p: 0.004 });
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.to_string(), "er:n=4096,p=0.004,seed=7");

        let spec: GenSpec = "kron:scale=14,ef=16".parse().unwrap();
        assert_eq!(spec.to_string(), "kron:scale=14,ef=16,seed=0");
        let spec: GenSpec = "kron:scale=3,ef=2,a=0.25,b=0.25,c=0.25,d=0.25,seed=1"
            .parse()
            .unwrap();
        assert_eq!(spec.to_string().parse::<GenSpec>().unwrap(), spec);

        let spec: GenSpec = "path:n=64".parse().unwrap();
        assert_eq!(spec.generate().unwrap().m(), 63);

        for bad in [
            "path",
            "path:n",
            "path:n=x",
            "er:n=4",
            "blob:n=3",
            "path:n=3,q=1",
        ] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad}");
        }
    }
}
