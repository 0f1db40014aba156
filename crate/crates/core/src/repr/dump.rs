//! Text rendering of chunk layouts: one block per chunk, one line per lane,
//! one column per stored entry.

use std::fmt::Write;

use super::{ChunkLayout, SellCSigma, SlimSellRepr};
use crate::semiring::Semiring;

fn header(out: &mut String, kind: &str, l: &ChunkLayout, cells: usize) {
    let join = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let perm: Vec<usize> = l.plan.perm.iter().map(|&p| p as usize).collect();
    writeln!(
        out,
        "{kind} C={} sigma={} n={} n_padded={} m={} chunks={} P={} cells={}",
        l.c,
        l.plan.sigma,
        l.n,
        l.n_padded,
        l.m,
        l.n_chunks(),
        l.padding(),
        cells
    )
    .unwrap();
    writeln!(out, "perm: {}", join(&perm)).unwrap();
    writeln!(out, "cs: {}", join(&l.cs)).unwrap();
    writeln!(out, "cl: {}", join(&l.cl)).unwrap();
}

fn grid(
    out: &mut String,
    title: &str,
    l: &ChunkLayout,
    chunk: usize,
    cell: impl Fn(usize) -> String,
) {
    writeln!(out, "{title}:").unwrap();
    if l.cl[chunk] == 0 {
        writeln!(out, "  (empty)").unwrap();
        return;
    }
    let cells: Vec<Vec<String>> = (0..l.c)
        .map(|lane| {
            (0..l.cl[chunk])
                .map(|k| cell(l.index(chunk, lane, k)))
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        writeln!(out, "  {}", line.join(" ")).unwrap();
    }
}

fn chunk_title(out: &mut String, l: &ChunkLayout, chunk: usize) {
    let rows = l.chunk_rows(chunk);
    writeln!(out, "chunk {chunk} rows {}..{}", rows.start, rows.end).unwrap();
}

pub fn dump_slimsell(r: &SlimSellRepr) -> String {
    let l = r.layout();
    let mut out = String::new();
    header(&mut out, "slimsell", l, r.storage_cells());
    for chunk in 0..l.n_chunks() {
        chunk_title(&mut out, l, chunk);
        grid(&mut out, "col", l, chunk, |i| r.col()[i].to_string());
    }
    out
}

pub fn dump_sell<S: Semiring>(r: &SellCSigma<S>, s: &S) -> String {
    let l = r.layout();
    let mut out = String::new();
    header(&mut out, "sell-c-sigma", l, r.storage_cells());
    for chunk in 0..l.n_chunks() {
        chunk_title(&mut out, l, chunk);
        grid(&mut out, "col", l, chunk, |i| r.col()[i].to_string());
        grid(&mut out, "val", l, chunk, |i| s.format_scalar(r.val()[i]));
    }
    out
}
