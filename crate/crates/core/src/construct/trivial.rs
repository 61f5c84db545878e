use itertools::Itertools;

use super::Construction;
use crate::error::{precondition, Result};
use crate::matrix::IncidenceMatrix;
use crate::verify::binom_u128;

/// An `(i,j)`-disjunct system stored with blocks as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctSystem {
    pub matrix: IncidenceMatrix,
    pub i: usize,
    pub j: usize,
}

impl DisjunctSystem {
    /// The dual `(i,j)`-CFF: points become blocks and blocks become points.
    pub fn into_cff(self) -> Construction {
        Construction::new(self.matrix.transpose(), self.i, self.j, 0).with_detected_uniformity()
    }
}

fn all_subsets(n: usize, k: usize) -> IncidenceMatrix {
    let blocks: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    IncidenceMatrix::from_blocks(n, &blocks).expect("subsets stay in range")
}

/// The smaller of {all i-subsets} and {all (n-j)-subsets} of an n-set; both
/// are `(i,j)`-disjunct. Ties pick the i-subsets.
pub fn trivial_ds(n: usize, i: usize, j: usize) -> Result<DisjunctSystem> {
    if i == 0 || j == 0 {
        return precondition("i and j must be positive");
    }
    if n < i + j {
        return precondition(format!("n = {n} is smaller than i + j = {}", i + j));
    }
    let size = if binom_u128(n, i) <= binom_u128(n, j) {
        i
    } else {
        n - j
    };
    Ok(DisjunctSystem {
        matrix: all_subsets(n, size),
        i,
        j,
    })
}

/// All `floor(N/2)`-subsets of an N-set: a 1-CFF meeting Sperner's bound.
pub fn sperner_cff(n: usize) -> Result<Construction> {
    if n < 2 {
        return precondition("Sperner families need N >= 2");
    }
    let m = all_subsets(n, n / 2);
    Ok(Construction::new(m, 1, 1, 0).with_detected_uniformity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_cff, is_disjunct, max_r};

    #[test]
    fn singletons_of_three() {
        let ds = trivial_ds(3, 1, 1).unwrap();
        assert_eq!(ds.matrix, IncidenceMatrix::identity(3));
        assert!(is_disjunct(&ds.matrix, 1, 1).unwrap());
    }

    #[test]
    fn pairs_of_five() {
        let ds = trivial_ds(5, 2, 2).unwrap();
        assert_eq!(ds.matrix.num_blocks(), 10);
        assert!(is_disjunct(&ds.matrix, 2, 2).unwrap());
        let cff = ds.into_cff();
        assert_eq!((cff.params.points, cff.params.blocks), (10, 5));
        assert_eq!(cff.params.block_size, Some(4));
        assert!(is_cff(&cff.matrix, &cff.params).unwrap().passed());
    }

    #[test]
    fn both_candidates_work_for_one_three() {
        let ds = trivial_ds(4, 1, 3).unwrap();
        assert_eq!(ds.matrix.num_blocks(), 4);
        assert!(is_disjunct(&ds.matrix, 1, 3).unwrap());
        // the (n - j)-subsets alternative
        assert!(is_disjunct(&all_subsets(4, 1), 1, 3).unwrap());
    }

    #[test]
    fn picks_complements_when_smaller() {
        // C(6,1) = 6 < C(6,2) = 15: i-subsets; C(6,3) = 20 > C(6,1) = 6: (n-j)-subsets
        assert_eq!(trivial_ds(6, 1, 2).unwrap().matrix.num_blocks(), 6);
        let ds = trivial_ds(6, 3, 1).unwrap();
        assert_eq!(ds.matrix.num_blocks(), 6);
        assert_eq!(ds.matrix.uniform_block_size(), Some(5));
        assert!(is_disjunct(&ds.matrix, 3, 1).unwrap());
    }

    #[test]
    fn trivial_ds_preconditions() {
        assert!(trivial_ds(3, 2, 2).is_err());
        assert!(trivial_ds(3, 0, 2).is_err());
    }

    #[test]
    fn sperner_small() {
        let c = sperner_cff(2).unwrap();
        assert_eq!(c.matrix, IncidenceMatrix::identity(2));
        assert_eq!(sperner_cff(4).unwrap().params.blocks, 6);
        let five = sperner_cff(5).unwrap();
        assert_eq!(five.params.blocks, 10);
        assert!(max_r(&five.matrix, 1, 0).unwrap() >= 1);
        assert!(sperner_cff(1).is_err());
    }
}
