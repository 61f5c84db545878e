use std::fmt;

use crate::error::{precondition, Error, Result};
use crate::matrix::IncidenceMatrix;

/// A claimed `(w,r;d)`-CFF`(N,T)`, optionally `k`-uniform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CffParams {
    pub w: usize,
    pub r: usize,
    pub d: usize,
    /// N, the number of points.
    pub points: usize,
    /// T, the number of blocks.
    pub blocks: usize,
    /// Uniform block size, when claimed.
    pub block_size: Option<usize>,
}

impl CffParams {
    pub fn new(w: usize, r: usize, d: usize, points: usize, blocks: usize) -> Self {
        Self {
            w,
            r,
            d,
            points,
            blocks,
            block_size: None,
        }
    }

    /// Claim parameters for `m` with its own shape.
    pub fn for_matrix(m: &IncidenceMatrix, w: usize, r: usize, d: usize) -> Self {
        Self::new(w, r, d, m.num_points(), m.num_blocks())
    }

    pub fn with_block_size(mut self, k: usize) -> Self {
        self.block_size = Some(k);
        self
    }

    /// Checks the claim is well-formed and describes `m`.
    ///
    /// `T >= w + r` is required: with fewer blocks the defining condition is vacuous.
    pub fn check_against(&self, m: &IncidenceMatrix) -> Result<()> {
        if self.points != m.num_points() || self.blocks != m.num_blocks() {
            return Err(Error::ShapeMismatch {
                claimed_blocks: self.blocks,
                claimed_points: self.points,
                blocks: m.num_blocks(),
                points: m.num_points(),
            });
        }
        if self.w == 0 || self.r == 0 {
            return precondition("w and r must be positive");
        }
        if self.blocks < self.w + self.r {
            return precondition(format!(
                "T = {} is smaller than w + r = {}",
                self.blocks,
                self.w + self.r
            ));
        }
        if let Some(k) = self.block_size {
            if let Some(i) = (0..m.num_blocks()).find(|&i| m.block_size(i) != k) {
                return precondition(format!(
                    "claimed {k}-uniform but block {i} has {} points",
                    m.block_size(i)
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CffParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{};{})-CFF({},{})",
            self.w, self.r, self.d, self.points, self.blocks
        )?;
        if let Some(k) = self.block_size {
            write!(f, " {k}-uniform")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_blocks() {
        let m = IncidenceMatrix::identity(3);
        let p = CffParams::for_matrix(&m, 2, 2, 0);
        assert!(matches!(p.check_against(&m), Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_shape_mismatch() {
        let m = IncidenceMatrix::identity(3);
        let p = CffParams::new(1, 1, 0, 4, 3);
        assert!(matches!(
            p.check_against(&m),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn checks_uniformity_claim() {
        let m = IncidenceMatrix::identity(3);
        assert!(CffParams::for_matrix(&m, 1, 1, 0)
            .with_block_size(1)
            .check_against(&m)
            .is_ok());
        assert!(CffParams::for_matrix(&m, 1, 1, 0)
            .with_block_size(2)
            .check_against(&m)
            .is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            CffParams::new(1, 3, 0, 12, 9).to_string(),
            "(1,3;0)-CFF(12,9)"
        );
    }
}
