//! Storage accounting for CSR, adjacency lists, Sell-C-σ and SlimSell, and
//! asymptotic work estimates for BFS on chunked layouts.
//!
//! A cell is one machine word. `cs` and `cl` hold one entry per chunk each,
//! with `n_c = ceil(n / C)`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::repr::{SellCSigma, SlimSellRepr};
use crate::semiring::Boolean;

/// Measured and predicted cell counts for one `(graph, C, sigma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StorageReport {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    /// Effective sorting scope.
    pub sigma: usize,
    pub n_chunks: usize,
    /// Padding cells `P`.
    pub padding: usize,
    /// `col + row` of the unweighted CSR.
    pub csr_cells: usize,
    pub csr_predicted: usize,
    /// CSR including a value array, `4m + n`.
    pub csr_weighted_predicted: usize,
    pub al_cells: usize,
    pub al_predicted: usize,
    pub sell_cells: usize,
    pub sell_predicted: usize,
    pub slimsell_cells: usize,
    pub slimsell_predicted: usize,
}

impl StorageReport {
    pub fn slimsell_over_sell(&self) -> f64 {
        self.slimsell_cells as f64 / self.sell_cells as f64
    }

    pub fn slimsell_over_al(&self) -> f64 {
        self.slimsell_cells as f64 / self.al_cells as f64
    }

    /// `2m + 2 n_c + P < 2m + n`, i.e. `P < n - 2 n_c`.
    pub fn slimsell_beats_al(&self) -> bool {
        self.padding + 2 * self.n_chunks < self.n
    }

    /// True when every measured count equals its closed-form prediction.
    pub fn is_exact(&self) -> bool {
        self.csr_cells == self.csr_predicted
            && self.al_cells == self.al_predicted
            && self.sell_cells == self.sell_predicted
            && self.slimsell_cells == self.slimsell_predicted
    }
}

pub fn storage_report(g: &Graph, c: usize, sigma: usize) -> Result<StorageReport> {
    let slim = SlimSellRepr::build(g, c, sigma)?;
    let sell = SellCSigma::build(g, c, sigma, &Boolean)?;
    Ok(report_from(g, &slim, sell.storage_cells()))
}

/// Same as [`storage_report`] for an already built SlimSell; the Sell-C-σ
/// count is derived from the shared layout since both formats store the
/// same `col` geometry.
pub fn storage_report_for(g: &Graph, slim: &SlimSellRepr) -> StorageReport {
    let l = slim.layout();
    report_from(g, slim, 2 * l.len + 2 * l.n_chunks())
}

fn report_from(g: &Graph, slim: &SlimSellRepr, sell_cells: usize) -> StorageReport {
    let l = slim.layout();
    let (n, m, p, nc) = (g.n(), g.m(), l.padding(), l.n_chunks());
    StorageReport {
        n,
        m,
        c: l.c,
        sigma: l.plan.sigma,
        n_chunks: nc,
        padding: p,
        csr_cells: g.to_csr().cells(),
        csr_predicted: 2 * m + n + 1,
        csr_weighted_predicted: 4 * m + n,
        al_cells: g.to_al().cells(),
        al_predicted: 2 * m + n,
        sell_cells,
        sell_predicted: 4 * m + 2 * p + 2 * nc,
        slimsell_cells: slim.storage_cells(),
        slimsell_predicted: 2 * m + p + 2 * nc,
    }
}

/// Aligned text table, one line per report.
pub fn render_table(reports: &[StorageReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>10} {:>10} {:>4} {:>10} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12} {:>9} {:>9} {:>6}",
        "n",
        "m",
        "C",
        "sigma",
        "P",
        "csr",
        "csr+val",
        "al",
        "sell",
        "slimsell",
        "slim/sell",
        "slim/al",
        "<al"
    )
    .unwrap();
    for r in reports {
        writeln!(
            out,
            "{:>10} {:>10} {:>4} {:>10} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12} {:>9.4} {:>9.4} {:>6}",
            r.n,
            r.m,
            r.c,
            r.sigma,
            r.padding,
            r.csr_cells,
            r.csr_weighted_predicted,
            r.al_cells,
            r.sell_cells,
            r.slimsell_cells,
            r.slimsell_over_sell(),
            r.slimsell_over_al(),
            r.slimsell_beats_al()
        )
        .unwrap();
    }
    out
}

/// Result of checking the full-sort padding bound `col cells <= 2m + C * max_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaddingBound {
    pub measured_cells: usize,
    pub bound: usize,
    pub holds: bool,
}

pub fn check_padding_bound(g: &Graph, c: usize) -> Result<PaddingBound> {
    let r = SlimSellRepr::build(g, c, g.n().max(1))?;
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    let measured_cells = r.col().len();
    let bound = 2 * g.m() + c * max_degree;
    Ok(PaddingBound {
        measured_cells,
        bound,
        holds: measured_cells <= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkModel {
    /// Any graph with known maximum degree.
    General,
    /// Max degree replaced by `ln n`.
    ErdosRenyi,
    /// Max degree replaced by `(alpha n ln n)^(1 / (beta - 1))`.
    PowerLaw,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkParams {
    /// Number of iterations (diameter).
    pub d: f64,
    pub n: f64,
    pub m: f64,
    pub c: f64,
    pub max_degree: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Dominant-term work estimate `D n + D m + D C T` with constants dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkBound {
    pub model: WorkModel,
    pub params: WorkParams,
    pub value: f64,
}

pub fn work_bound(model: WorkModel, params: WorkParams) -> Result<WorkBound> {
    let WorkParams {
        d,
        n,
        m,
        c,
        max_degree,
        alpha,
        beta,
    } = params;
    if [d, n, m, c, max_degree]
        .iter()
        .any(|v| !v.is_finite() || *v < 0.0)
    {
        return Err(Error::Parameter(format!(
            "work parameters must be non-negative: {params:?}"
        )));
    }
    let chunk_term = match model {
        WorkModel::General => max_degree,
        WorkModel::ErdosRenyi => n.ln().max(0.0),
        WorkModel::PowerLaw => {
            if beta <= 1.0 {
                return Err(Error::Parameter(format!(
                    "power-law exponent beta = {beta} must exceed 1"
                )));
            }
            if alpha <= 0.0 {
                return Err(Error::Parameter(format!(
                    "power-law alpha = {alpha} must be positive"
                )));
            }
            (alpha * n * n.ln().max(0.0)).powf(1.0 / (beta - 1.0))
        }
    };
    Ok(WorkBound {
        model,
        params,
        value: d * n + d * m + d * c * chunk_term,
    })
}
