//! Bit-packed incidence matrices.
//!
//! Rows are blocks and columns are points: entry `(i, j)` is set iff point
//! `j` lies in block `i`. Each row is stored as a run of `u64` words so that
//! block unions and intersections are word-wise `OR`/`AND`.

use std::fmt;

use crate::error::{precondition, Result};

pub(crate) const WORD_BITS: usize = u64::BITS as usize;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    num_blocks: usize,
    num_points: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl IncidenceMatrix {
    /// All-zero matrix with `num_blocks` rows and `num_points` columns.
    pub fn zeros(num_blocks: usize, num_points: usize) -> Self {
        let words_per_row = words_for(num_points);
        Self {
            num_blocks,
            num_points,
            words_per_row,
            bits: vec![0; num_blocks * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit blocks given as point lists.
    pub fn from_blocks<B: AsRef<[usize]>>(num_points: usize, blocks: &[B]) -> Result<Self> {
        let mut m = Self::zeros(blocks.len(), num_points);
        for (i, block) in blocks.iter().enumerate() {
            for &p in block.as_ref() {
                if p >= num_points {
                    return precondition(format!(
                        "block {i} references point {p}, but only {num_points} points exist"
                    ));
                }
                m.set(i, p, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row vectors of booleans; all rows must share one length.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let num_points = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), num_points);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != num_points {
                return precondition(format!(
                    "row {i} has {} entries, expected {num_points}",
                    row.len()
                ));
            }
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.num_points
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    #[inline]
    pub fn get(&self, block: usize, point: usize) -> bool {
        assert!(block < self.num_blocks && point < self.num_points);
        let w = self.bits[block * self.words_per_row + point / WORD_BITS];
        (w >> (point % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, block: usize, point: usize, value: bool) {
        assert!(block < self.num_blocks && point < self.num_points);
        let w = &mut self.bits[block * self.words_per_row + point / WORD_BITS];
        let mask = 1u64 << (point % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of one block. Bits past `num_points` are always zero.
    #[inline]
    pub fn row(&self, block: usize) -> &[u64] {
        let start = block * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn block_size(&self, block: usize) -> usize {
        self.row(block)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Points of a block in increasing order.
    pub fn block_points(&self, block: usize) -> Vec<usize> {
        (0..self.num_points)
            .filter(|&p| self.get(block, p))
            .collect()
    }

    /// `Some(k)` when every block has exactly `k` points.
    pub fn uniform_block_size(&self) -> Option<usize> {
        let mut sizes = (0..self.num_blocks).map(|i| self.block_size(i));
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// Number of blocks containing each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_points];
        for i in 0..self.num_blocks {
            for p in self.block_points(i) {
                deg[p] += 1;
            }
        }
        deg
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.num_points, self.num_blocks);
        for i in 0..self.num_blocks {
            for j in 0..self.num_points {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Duplicates every column `copies` times; column `j` becomes columns
    /// `j*copies .. (j+1)*copies`.
    ///
    /// A `(w,r;d)`-CFF becomes a `(w,r;(d+1)*copies - 1)`-CFF on
    /// `copies * N` points, since every residual point is counted `copies` times.
    pub fn replicate_points(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return precondition("copies must be at least 1");
        }
        let mut out = Self::zeros(self.num_blocks, self.num_points * copies);
        for i in 0..self.num_blocks {
            for j in self.block_points(i) {
                for c in 0..copies {
                    out.set(i, j * copies + c, true);
                }
            }
        }
        Ok(out)
    }

    /// Rows rendered as `0`/`1` strings.
    pub fn row_strings(&self) -> impl Iterator<Item = String> + '_ {
        (0..self.num_blocks).map(move |i| {
            (0..self.num_points)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect()
        })
    }
}

impl fmt::Debug for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "IncidenceMatrix {}x{} [",
            self.num_blocks, self.num_points
        )?;
        for row in self.row_strings() {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_is_symmetric() {
        let m = IncidenceMatrix::identity(3);
        assert_eq!(m.transpose(), m);
    }

    #[test]
    fn transpose_two_by_three() {
        let m = IncidenceMatrix::from_rows(&[vec![true, true, false], vec![false, true, true]])
            .unwrap();
        let t = m.transpose();
        let rows: Vec<String> = t.row_strings().collect();
        assert_eq!(rows, ["10", "11", "01"]);
    }

    #[test]
    fn replicate_identity() {
        let m = IncidenceMatrix::identity(3);
        assert_eq!(m.replicate_points(1).unwrap(), m);
        let r = m.replicate_points(2).unwrap();
        assert_eq!(r.num_points(), 6);
        assert_eq!(r.uniform_block_size(), Some(2));
        assert_eq!(r.block_points(1), vec![2, 3]);
        assert!(m.replicate_points(0).is_err());
    }

    #[test]
    fn wide_rows_span_words() {
        let mut m = IncidenceMatrix::zeros(2, 130);
        m.set(1, 129, true);
        m.set(1, 64, true);
        assert_eq!(m.words_per_row(), 3);
        assert_eq!(m.block_points(1), vec![64, 129]);
        assert_eq!(m.block_size(0), 0);
        assert!(m.transpose().get(129, 1));
    }

    #[test]
    fn from_blocks_rejects_out_of_range() {
        assert!(IncidenceMatrix::from_blocks(3, &[vec![0, 3]]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = IncidenceMatrix> {
        (1usize..12, 1usize..140).prop_flat_map(|(t, n)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), t)
                .prop_map(|rows| IncidenceMatrix::from_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn transpose_round_trips(m in arb_matrix()) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn replication_scales_block_sizes(m in arb_matrix(), copies in 1usize..4) {
            let r = m.replicate_points(copies).unwrap();
            for i in 0..m.num_blocks() {
                prop_assert_eq!(r.block_size(i), copies * m.block_size(i));
            }
        }
    }
}
