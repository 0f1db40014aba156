use std::ops::Range;

use super::{ChunkLayout, SellCSigma, SlimSellRepr, PAD_MARKER};
use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// A chunked matrix that can accumulate semiring products chunk by chunk.
pub trait ChunkedMatrix<S: Semiring>: Sync {
    fn layout(&self) -> &ChunkLayout;

    /// For each lane `j` of `chunk`:
    /// `acc[j] = plus(acc[j], times(x[col], value))` over the entry columns in
    /// `columns`. `acc` has length `C`.
    fn accumulate(
        &self,
        s: &S,
        x: &[S::Scalar],
        chunk: usize,
        columns: Range<usize>,
        acc: &mut [S::Scalar],
    );

    /// Full product for one chunk, seeded with the chunk's rows of `x`.
    fn chunk_product(&self, s: &S, x: &[S::Scalar], chunk: usize, out: &mut [S::Scalar]) {
        let layout = self.layout();
        out.copy_from_slice(&x[layout.chunk_rows(chunk)]);
        self.accumulate(s, x, chunk, 0..layout.cl[chunk], out);
    }
}

impl<S: Semiring> ChunkedMatrix<S> for SlimSellRepr {
    fn layout(&self) -> &ChunkLayout {
        &self.layout
    }

    #[inline]
    fn accumulate(
        &self,
        s: &S,
        x: &[S::Scalar],
        chunk: usize,
        columns: Range<usize>,
        acc: &mut [S::Scalar],
    ) {
        let c = self.layout.c;
        let edge = s.edge_value();
        let pad = s.pad_value();
        let base = self.layout.cs[chunk];
        for k in columns {
            let start = base + k * c;
            let cols = &self.col[start..start + c];
            for (a, &col) in acc.iter_mut().zip(cols) {
                // padding gathers x[0] and multiplies it by the pad value
                let is_pad = col == PAD_MARKER;
                let gather = if is_pad { 0 } else { col as usize };
                let value = if is_pad { pad } else { edge };
                *a = s.plus(*a, s.times(x[gather], value));
            }
        }
    }
}

impl<S: Semiring> ChunkedMatrix<S> for SellCSigma<S> {
    fn layout(&self) -> &ChunkLayout {
        &self.layout
    }

    #[inline]
    fn accumulate(
        &self,
        s: &S,
        x: &[S::Scalar],
        chunk: usize,
        columns: Range<usize>,
        acc: &mut [S::Scalar],
    ) {
        let c = self.layout.c;
        let base = self.layout.cs[chunk];
        for k in columns {
            let start = base + k * c;
            let cols = &self.col[start..start + c];
            let vals = &self.val[start..start + c];
            for ((a, &col), &value) in acc.iter_mut().zip(cols).zip(vals) {
                *a = s.plus(*a, s.times(x[col as usize], value));
            }
        }
    }
}

/// One semiring product over the chunks in `chunks`.
///
/// `x_prev` is indexed by permuted row and has length `n_padded`. The result
/// holds `C` entries per processed chunk; each accumulator starts from the
/// row's own entry of `x_prev`.
pub fn spmv_step<S, M>(
    matrix: &M,
    s: &S,
    x_prev: &[S::Scalar],
    chunks: Range<usize>,
) -> Result<Vec<S::Scalar>>
where
    S: Semiring,
    M: ChunkedMatrix<S> + ?Sized,
{
    let layout = matrix.layout();
    if x_prev.len() != layout.n_padded {
        return Err(Error::LengthMismatch {
            expected: layout.n_padded,
            found: x_prev.len(),
        });
    }
    if chunks.end > layout.n_chunks() {
        return Err(Error::Parameter(format!(
            "chunk range {chunks:?} exceeds {} chunks",
            layout.n_chunks()
        )));
    }
    let c = layout.c;
    let mut out = vec![s.zero(); chunks.len() * c];
    for (i, chunk) in chunks.enumerate() {
        matrix.chunk_product(s, x_prev, chunk, &mut out[i * c..(i + 1) * c]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::semiring::{Boolean, Tropical, INF};

    fn path4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn tropical_one_step_from_root() {
        let r = SlimSellRepr::build(&path4(), 2, 1).unwrap();
        let out = spmv_step(&r, &Tropical, &[0, INF, INF, INF], 0..2).unwrap();
        assert_eq!(out, vec![0, 1, INF, INF]);
    }

    #[test]
    fn boolean_zero_vector_is_fixed() {
        let r = SlimSellRepr::build(&path4(), 2, 1).unwrap();
        assert_eq!(spmv_step(&r, &Boolean, &[0; 4], 0..2).unwrap(), vec![0; 4]);
    }

    #[test]
    fn tropical_distances_are_a_fixed_point() {
        let r = SlimSellRepr::build(&path4(), 2, 1).unwrap();
        assert_eq!(
            spmv_step(&r, &Tropical, &[0, 1, 2, 3], 0..2).unwrap(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn partial_chunk_range() {
        let r = SlimSellRepr::build(&path4(), 2, 1).unwrap();
        let out = spmv_step(&r, &Tropical, &[0, 1, INF, INF], 1..2).unwrap();
        assert_eq!(out, vec![2, INF]);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let r = SlimSellRepr::build(&path4(), 2, 1).unwrap();
        assert_eq!(
            spmv_step(&r, &Tropical, &[0, INF, INF], 0..2),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(spmv_step(&r, &Tropical, &[0; 4], 0..3).is_err());
    }

    #[test]
    fn sell_matches_slimsell_on_path() {
        let g = path4();
        let slim = SlimSellRepr::build(&g, 2, 4).unwrap();
        let sell = SellCSigma::build(&g, 2, 4, &Tropical).unwrap();
        let x = [1, 2, 0, INF];
        assert_eq!(
            spmv_step(&slim, &Tropical, &x, 0..2).unwrap(),
            spmv_step(&sell, &Tropical, &x, 0..2).unwrap()
        );
    }
}
