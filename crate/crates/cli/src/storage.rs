//! The `storage` and `dump` commands.

use std::fs;
use std::path::{Path, PathBuf};

use slimsell_core::analysis::{render_table, storage_report, StorageReport};
use slimsell_core::repr::{dump_sell, dump_slimsell};
use slimsell_core::semiring::{Boolean, Real, SelMax, Tropical};
use slimsell_core::{Graph, SellCSigma, SlimSellRepr, Variant};

use crate::config::{GraphSource, SigmaSpec};
use crate::error::CliError;

pub const STORAGE_HEADER: [&str; 16] = [
    "graph_id",
    "n",
    "m",
    "C",
    "sigma",
    "n_chunks",
    "padding",
    "csr_cells",
    "csr_weighted_cells",
    "al_cells",
    "sell_cells",
    "slimsell_cells",
    "slimsell_over_sell",
    "slimsell_over_al",
    "slimsell_beats_al",
    "exact",
];

/// One report per `(C, sigma)` pair, sigma presets resolved against the graph.
pub fn storage_reports(
    g: &Graph,
    chunk_heights: &[usize],
    sigmas: &[SigmaSpec],
) -> Result<Vec<StorageReport>, CliError> {
    let mut out = Vec::new();
    for &c in chunk_heights {
        for spec in sigmas {
            out.push(storage_report(g, c, spec.resolve(g.n(), c))?);
        }
    }
    Ok(out)
}

/// Returns the text table; also writes `storage.csv` under `out` if given.
pub fn cmd_storage(
    graph: &GraphSource,
    chunk_heights: &[usize],
    sigmas: &[SigmaSpec],
    out: Option<&Path>,
) -> Result<String, CliError> {
    if chunk_heights.contains(&0) {
        return Err(CliError::Config(
            "--chunk-height values must be positive".into(),
        ));
    }
    let g = graph.load()?;
    let reports = storage_reports(&g, chunk_heights, sigmas)?;
    if let Some(dir) = out {
        write_storage_csv(dir, &graph.id(), &reports)?;
    }
    Ok(render_table(&reports))
}

pub fn write_storage_csv(
    dir: &Path,
    graph_id: &str,
    reports: &[StorageReport],
) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let path = dir.join("storage.csv");
    let mut w = csv::Writer::from_path(&path).map_err(CliError::csv(&path))?;
    w.write_record(STORAGE_HEADER)
        .map_err(CliError::csv(&path))?;
    for r in reports {
        w.write_record([
            graph_id.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.c.to_string(),
            r.sigma.to_string(),
            r.n_chunks.to_string(),
            r.padding.to_string(),
            r.csr_cells.to_string(),
            r.csr_weighted_predicted.to_string(),
            r.al_cells.to_string(),
            r.sell_cells.to_string(),
            r.slimsell_cells.to_string(),
            format!("{:.6}", r.slimsell_over_sell()),
            format!("{:.6}", r.slimsell_over_al()),
            r.slimsell_beats_al().to_string(),
            r.is_exact().to_string(),
        ])
        .map_err(CliError::csv(&path))?;
    }
    w.flush().map_err(CliError::io(&path))?;
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpFormat {
    SlimSell,
    /// Sell-C-σ with the value grid of the given semiring.
    Sell(Variant),
}

pub fn cmd_dump(
    graph: &GraphSource,
    c: usize,
    sigma: SigmaSpec,
    format: DumpFormat,
) -> Result<String, CliError> {
    if c == 0 {
        return Err(CliError::Config("--chunk-height must be positive".into()));
    }
    let g = graph.load()?;
    let sigma = sigma.resolve(g.n(), c);
    Ok(match format {
        DumpFormat::SlimSell => dump_slimsell(&SlimSellRepr::build(&g, c, sigma)?),
        DumpFormat::Sell(Variant::Tropical) => {
            dump_sell(&SellCSigma::build(&g, c, sigma, &Tropical)?, &Tropical)
        }
        DumpFormat::Sell(Variant::Real) => {
            dump_sell(&SellCSigma::build(&g, c, sigma, &Real)?, &Real)
        }
        DumpFormat::Sell(Variant::Boolean) => {
            dump_sell(&SellCSigma::build(&g, c, sigma, &Boolean)?, &Boolean)
        }
        DumpFormat::Sell(Variant::SelMax) => {
            dump_sell(&SellCSigma::build(&g, c, sigma, &SelMax)?, &SelMax)
        }
    })
}
