//! Generators for cover-free families. Each returns the matrix together with
//! the parameters it claims; the claims are checked by [`crate::verify`] in
//! tests and by the CLI before anything is written.

mod oa;
mod random;
mod recursive;
mod rs;
mod shf;
mod trivial;

pub use oa::{oa_construct, oa_to_packing, packing_to_cff, OrthogonalArray, PackingDesign};
pub use random::{
    random_cff, random_uniform_cff, uniform_parameters, RandomCff, RandomCffConfig,
    RandomUniformConfig, UniformParameters,
};
pub use recursive::{
    recursive_cff, recursive_parameters, smallest_coprime_order, RecursiveParameters,
};
pub use rs::{reed_solomon_code, rs_cff, RsConfig};
pub use shf::{shf_compose, shf_modular, ShfTable};
pub use trivial::{sperner_cff, trivial_ds, DisjunctSystem};

use crate::matrix::IncidenceMatrix;
use crate::params::CffParams;

/// A generated matrix and the parameters it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub matrix: IncidenceMatrix,
    pub params: CffParams,
}

impl Construction {
    pub fn new(matrix: IncidenceMatrix, w: usize, r: usize, d: usize) -> Self {
        let params = CffParams::for_matrix(&matrix, w, r, d);
        Self { matrix, params }
    }

    /// Attaches the uniform block size when every block has the same size.
    pub(crate) fn with_detected_uniformity(mut self) -> Self {
        if let Some(k) = self.matrix.uniform_block_size() {
            self.params.block_size = Some(k);
        }
        self
    }

    /// Point replication: `copies` copies of every point turn a
    /// `(w,r;d)` claim into `(w,r;(d+1)*copies-1)`.
    pub fn replicate_points(&self, copies: usize) -> crate::Result<Self> {
        let matrix = self.matrix.replicate_points(copies)?;
        let d = (self.params.d + 1) * copies - 1;
        Ok(Self::new(matrix, self.params.w, self.params.r, d).with_detected_uniformity())
    }
}
