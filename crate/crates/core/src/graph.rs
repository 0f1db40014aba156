//! Canonical undirected graph, text ingestion, and CSR / adjacency-list views.
//!
//! A [`Graph`] is always normalized: no self-loops, no duplicate edges, and
//! every edge is stored in both directions. Vertex IDs are 0-based `u32`s and
//! are bounded by `i32::MAX` so that column indices fit the signed layout used
//! by the chunked representations.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Vertex identifier.
pub type VertexId = u32;

/// Largest number of vertices a graph may hold.
pub const MAX_VERTICES: usize = i32::MAX as usize;

/// How directed (one-way) records in the input are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeDirective {
    /// Every record `u v` also adds `v u`.
    #[default]
    Symmetrize,
    /// Every record `u v` must be matched by a record `v u`.
    RejectAsymmetric,
}

/// Compressed sparse row view of the symmetric adjacency matrix.
///
/// The value array is omitted: all structural nonzeros are implicitly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsrView {
    pub row: Vec<usize>,
    pub col: Vec<VertexId>,
}

impl CsrView {
    pub fn n(&self) -> usize {
        self.row.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[VertexId] {
        &self.col[self.row[v]..self.row[v + 1]]
    }

    /// Cells of the unweighted layout: `col` plus `row`, i.e. `2m + n + 1`.
    pub fn cells(&self) -> usize {
        self.col.len() + self.row.len()
    }
}

/// Adjacency-list view: one offset per vertex plus the concatenated neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlView {
    pub offsets: Vec<usize>,
    pub neighbors: Vec<VertexId>,
}

impl AlView {
    /// Always `2m + n`.
    pub fn cells(&self) -> usize {
        self.offsets.len() + self.neighbors.len()
    }
}

/// Degree statistics. The average degree is kept as the exact ratio `2m / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degree_sum: usize,
    pub n: usize,
    pub max_degree: usize,
    /// `histogram[d]` is the number of vertices with degree `d`.
    pub histogram: Vec<usize>,
}

impl DegreeStats {
    pub fn avg_degree(&self) -> f64 {
        self.degree_sum as f64 / self.n as f64
    }
}

/// Anything that can enumerate the neighbors of a vertex in original numbering.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize));
}

/// Undirected, unweighted, normalized graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    csr: CsrView,
}

impl Graph {
    /// Builds a normalized graph from arbitrary (possibly directed, duplicated,
    /// self-looping) edge records. All records are symmetrized.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::Parameter(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        let mut degree = vec![0usize; n];
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n as u64 || v >= n as u64 {
                return Err(Error::EdgeRange { u, v, n });
            }
            if u == v {
                continue;
            }
            let (u, v) = (u as VertexId, v as VertexId);
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();
        for &(u, _) in &pairs {
            degree[u as usize] += 1;
        }
        let mut row = Vec::with_capacity(n + 1);
        row.push(0);
        let mut acc = 0;
        for d in degree {
            acc += d;
            row.push(acc);
        }
        let col = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self {
            csr: CsrView { row, col },
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            csr: CsrView {
                row: vec![0; n + 1],
                col: Vec::new(),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.csr.n()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.csr.col.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.csr.row[v + 1] - self.csr.row[v]
    }

    /// Sorted, duplicate-free neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[VertexId] {
        self.csr.neighbors(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbors(u).binary_search(&(v as VertexId)).is_ok()
    }

    /// Undirected edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (u as VertexId) < v)
                .map(move |&v| (u as VertexId, v))
        })
    }

    pub fn to_csr(&self) -> &CsrView {
        &self.csr
    }

    pub fn to_al(&self) -> AlView {
        AlView {
            offsets: self.csr.row[..self.n()].to_vec(),
            neighbors: self.csr.col.clone(),
        }
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        let n = self.n();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let max_degree = (0..n).map(|v| self.degree(v)).max().unwrap_or(0);
        let mut histogram = vec![0; max_degree + 1];
        for v in 0..n {
            histogram[self.degree(v)] += 1;
        }
        Ok(DegreeStats {
            degree_sum: self.csr.col.len(),
            n,
            max_degree,
            histogram,
        })
    }

    /// Parses a whitespace-separated edge list.
    ///
    /// Lines starting with `#` or `%` are comments. An optional first record
    /// `H <n> <m>` fixes the vertex count and the number of edge records that
    /// follow; otherwise `n` is one more than the largest ID seen.
    pub fn from_edge_list(text: &str, directive: EdgeDirective) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut records: Vec<(u64, u64)> = Vec::new();
        let mut max_id: Option<u64> = None;
        let mut seen_record = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("H ") {
                if seen_record || header.is_some() {
                    return Err(parse_err(line_no, "header must be the first record"));
                }
                let fields = parse_fields(rest, line_no)?;
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "header needs exactly `H <n> <m>`"));
                }
                let n = fields[0];
                if n > MAX_VERTICES as u64 {
                    return Err(Error::VertexRange {
                        line: line_no,
                        id: n,
                        limit: MAX_VERTICES as u64,
                    });
                }
                header = Some((n as usize, fields[1] as usize));
                continue;
            }
            seen_record = true;
            let fields = parse_fields(line, line_no)?;
            if fields.len() != 2 {
                return Err(parse_err(
                    line_no,
                    &format!("expected 2 integers, found {}", fields.len()),
                ));
            }
            let limit = match header {
                Some((n, _)) => n as u64,
                None => MAX_VERTICES as u64,
            };
            for &id in &fields {
                if id >= limit {
                    return Err(Error::VertexRange {
                        line: line_no,
                        id,
                        limit,
                    });
                }
            }
            max_id = Some(max_id.map_or(fields[0].max(fields[1]), |m| {
                m.max(fields[0]).max(fields[1])
            }));
            records.push((fields[0], fields[1]));
        }

        let n = match header {
            Some((n, declared)) => {
                if declared != records.len() {
                    return Err(Error::EntryCount {
                        declared,
                        found: records.len(),
                    });
                }
                n
            }
            None => max_id.map_or(0, |m| m as usize + 1),
        };

        if directive == EdgeDirective::RejectAsymmetric {
            check_symmetric(&records)?;
        }
        Self::from_edges(n, records)
    }

    /// Parses a MatrixMarket coordinate file (pattern, real or integer field;
    /// general or symmetric). Values are ignored; 1-based indices become 0-based.
    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, banner) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing MatrixMarket banner"))?;
        let tokens: Vec<String> = banner
            .split_whitespace()
            .map(|t| t.to_ascii_lowercase())
            .collect();
        if tokens.len() < 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
            return Err(parse_err(1, "malformed MatrixMarket banner"));
        }
        if tokens[2] != "coordinate" {
            return Err(Error::UnsupportedFormat(format!("{} storage", tokens[2])));
        }
        let has_value = match tokens[3].as_str() {
            "pattern" => false,
            "real" | "integer" => true,
            other => return Err(Error::UnsupportedFormat(format!("{other} field"))),
        };
        match tokens[4].as_str() {
            "general" | "symmetric" => {}
            other => return Err(Error::UnsupportedFormat(format!("{other} symmetry"))),
        }

        let mut size: Option<(usize, usize)> = None;
        let mut records = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let Some((n, _)) = size else {
                let fields = parse_fields(line, line_no)?;
                if fields.len() != 3 {
                    return Err(parse_err(line_no, "size line needs `rows cols entries`"));
                }
                let n = fields[0].max(fields[1]);
                if n > MAX_VERTICES as u64 {
                    return Err(Error::VertexRange {
                        line: line_no,
                        id: n,
                        limit: MAX_VERTICES as u64,
                    });
                }
                size = Some((n as usize, fields[2] as usize));
                continue;
            };
            let mut parts = line.split_whitespace();
            let mut index = |what: &str| -> Result<u64> {
                let tok = parts
                    .next()
                    .ok_or_else(|| parse_err(line_no, &format!("missing {what} index")))?;
                let i: u64 = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, &format!("bad {what} index `{tok}`")))?;
                if i == 0 || i > n as u64 {
                    return Err(Error::VertexRange {
                        line: line_no,
                        id: i,
                        limit: n as u64,
                    });
                }
                Ok(i - 1)
            };
            let i = index("row")?;
            let j = index("column")?;
            if has_value && parts.next().is_none() {
                return Err(parse_err(line_no, "missing value"));
            }
            records.push((i, j));
        }
        let (n, declared) = size.ok_or_else(|| parse_err(1, "missing size line"))?;
        if declared != records.len() {
            return Err(Error::EntryCount {
                declared,
                found: records.len(),
            });
        }
        Self::from_edges(n, records)
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &u in self.neighbors(v) {
            f(u as usize);
        }
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_fields(line: &str, line_no: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, &format!("not an unsigned integer: `{tok}`")))
        })
        .collect()
}

fn check_symmetric(records: &[(u64, u64)]) -> Result<()> {
    let set: BTreeSet<(u64, u64)> = records.iter().copied().filter(|(u, v)| u != v).collect();
    for &(u, v) in &set {
        if !set.contains(&(v, u)) {
            return Err(Error::Asymmetric {
                u: u as u32,
                v: v as u32,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Graph {
        Graph::from_edge_list("0 1\n1 2\n2 3", EdgeDirective::Symmetrize).unwrap()
    }

    #[test]
    fn edge_list_path() {
        let g = path4();
        assert_eq!((g.n(), g.m()), (4, 3));
    }

    #[test]
    fn edge_list_normalizes_duplicates_and_loops() {
        let g = Graph::from_edge_list("0 1\n1 0\n0 0", EdgeDirective::Symmetrize).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn edge_list_clique() {
        let text = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
        let g = Graph::from_edge_list(text, EdgeDirective::Symmetrize).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert!((0..4).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn edge_list_comments_and_header() {
        let text = "# comment\nH 6 2\n% other\n0 1\n1 2\n";
        let g = Graph::from_edge_list(text, EdgeDirective::Symmetrize).unwrap();
        assert_eq!((g.n(), g.m()), (6, 2));
        assert_eq!(g.degree(5), 0);
    }

    #[test]
    fn edge_list_errors() {
        match Graph::from_edge_list("0 1\n1 x\n", EdgeDirective::Symmetrize) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Graph::from_edge_list("0 1 2\n", EdgeDirective::Symmetrize),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 4294967296\n", EdgeDirective::Symmetrize),
            Err(Error::VertexRange { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("H 3 1\n0 3\n", EdgeDirective::Symmetrize),
            Err(Error::VertexRange { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("H 3 2\n0 1\n", EdgeDirective::Symmetrize),
            Err(Error::EntryCount {
                declared: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn reject_asymmetric() {
        assert!(matches!(
            Graph::from_edge_list("0 1\n1 2\n2 1\n", EdgeDirective::RejectAsymmetric),
            Err(Error::Asymmetric { u: 0, v: 1 })
        ));
        let g = Graph::from_edge_list("0 1\n1 0\n", EdgeDirective::RejectAsymmetric).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn matrix_market_symmetric_pattern() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n3 2\n";
        let g = Graph::from_matrix_market(text).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn matrix_market_general_is_symmetrized() {
        let text =
            "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 2 0.5\n2 3 1.0\n1 1 2.0\n";
        let g = Graph::from_matrix_market(text).unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(2, 1));
    }

    #[test]
    fn matrix_market_errors() {
        let bad_count = "%%MatrixMarket matrix coordinate pattern general\n3 3 3\n1 2\n";
        assert!(matches!(
            Graph::from_matrix_market(bad_count),
            Err(Error::EntryCount {
                declared: 3,
                found: 1
            })
        ));
        let array = "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n";
        assert!(matches!(
            Graph::from_matrix_market(array),
            Err(Error::UnsupportedFormat(_))
        ));
        let oob = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 3\n";
        assert!(matches!(
            Graph::from_matrix_market(oob),
            Err(Error::VertexRange { line: 3, .. })
        ));
    }

    #[test]
    fn csr_of_path() {
        let csr = path4().to_csr().clone();
        assert_eq!(csr.row, vec![0, 1, 3, 5, 6]);
        assert_eq!(csr.col, vec![1, 0, 2, 1, 3, 2]);
        assert_eq!(csr.cells(), 2 * 3 + 4 + 1);
    }

    #[test]
    fn csr_of_empty_graph() {
        let g = Graph::from_edges(3, []).unwrap();
        assert_eq!(g.to_csr().row, vec![0, 0, 0, 0]);
        assert!(g.to_csr().col.is_empty());
    }

    #[test]
    fn al_cells() {
        let g = path4();
        assert_eq!(g.to_al().cells(), 2 * g.m() + g.n());
    }

    #[test]
    fn degree_stats_examples() {
        let s = path4().degree_stats().unwrap();
        assert_eq!(s.avg_degree(), 1.5);
        assert_eq!(s.max_degree, 2);
        assert_eq!(s.histogram, vec![0, 2, 2]);

        let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let s = star.degree_stats().unwrap();
        assert_eq!(s.max_degree, 5);
        assert_eq!((s.degree_sum, s.n), (10, 6));

        let clique =
            Graph::from_edges(4, (0..4u64).flat_map(|u| (u + 1..4).map(move |v| (u, v)))).unwrap();
        let s = clique.degree_stats().unwrap();
        assert_eq!((s.max_degree, s.avg_degree()), (3, 3.0));

        assert_eq!(Graph::empty(0).degree_stats(), Err(Error::EmptyGraph));
    }
}
