use itertools::Itertools;

use super::Construction;
use crate::error::{precondition, Result};
use crate::matrix::IncidenceMatrix;

/// SHF(N; n, m, {w, r}) as an `N x n` table: row `f` lists `f(y)` for every
/// column `y`, with symbols in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShfTable {
    pub rows: Vec<Vec<u32>>,
    pub symbols: usize,
    pub w: usize,
    pub r: usize,
}

impl ShfTable {
    pub fn num_functions(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Number of `(C1, C2)` pairs [`ShfTable::is_separating`] examines.
    pub fn scan_size(&self) -> u128 {
        crate::verify::tuple_count(self.num_columns(), self.w, self.r)
    }

    /// Exhaustive separation check: for all disjoint column sets `C1`
    /// (`|C1| = w`) and `C2` (`|C2| = r`), some row maps them to disjoint
    /// symbol sets.
    pub fn is_separating(&self) -> bool {
        let n = self.num_columns();
        if n < self.w + self.r {
            return true;
        }
        (0..n).combinations(self.w).all(|c1| {
            let rest: Vec<usize> = (0..n).filter(|y| !c1.contains(y)).collect();
            rest.into_iter().combinations(self.r).all(|c2| {
                self.rows
                    .iter()
                    .any(|f| c1.iter().all(|&a| c2.iter().all(|&b| f[a] != f[b])))
            })
        })
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

/// `gcd(n, k!) = 1` exactly when every prime factor of `n` exceeds `k`.
pub(crate) fn coprime_to_factorial(n: usize, k: usize) -> bool {
    n == 1 || smallest_prime_factor(n) > k
}

/// The modular-line family `f_c(x, y) = x + c*y mod n`, `c = 0..=w*r`, on
/// columns `(x, y)` of `Z_n^2` (column index `x*n + y`): an
/// SHF(wr+1; n^2, n, {w, r}).
///
/// Two columns collide under at most one `c` because every prime factor of
/// `n` exceeds `w*r`; the `w*r` cross pairs therefore spoil at most `w*r` of
/// the `w*r + 1` functions.
pub fn shf_modular(n: usize, w: usize, r: usize) -> Result<ShfTable> {
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    if n < w + r {
        return precondition(format!("n = {n} is smaller than w + r = {}", w + r));
    }
    if !coprime_to_factorial(n, w * r) {
        return precondition(format!("gcd({n}, ({})!) != 1", w * r));
    }
    let rows = (0..=w * r)
        .map(|c| {
            (0..n * n)
                .map(|col| ((col / n + c * (col % n)) % n) as u32)
                .collect()
        })
        .collect();
    Ok(ShfTable {
        rows,
        symbols: n,
        w,
        r,
    })
}

/// Substitutes base block `b_i` for symbol `i` in the SHF table.
///
/// Column `y` of the table becomes block `y` of the result, the union over
/// functions `f` of `{f} x b_{f(y)}`; point `(f, p)` sits at `f * v + p`.
/// The result is a `(w,r;d)`-CFF(v * N, n) with the base's `d`.
pub fn shf_compose(base: &Construction, shf: &ShfTable) -> Result<Construction> {
    let bm = &base.matrix;
    if shf.symbols != bm.num_blocks() {
        return precondition(format!(
            "SHF has {} symbols but the base family has {} blocks",
            shf.symbols,
            bm.num_blocks()
        ));
    }
    if (shf.w, shf.r) != (base.params.w, base.params.r) {
        return precondition(format!(
            "SHF separates {{{}, {}}} but the base is a ({}, {})-CFF",
            shf.w, shf.r, base.params.w, base.params.r
        ));
    }
    let v = bm.num_points();
    let n = shf.num_columns();
    let base_blocks: Vec<Vec<usize>> = (0..bm.num_blocks()).map(|i| bm.block_points(i)).collect();
    let mut m = IncidenceMatrix::zeros(n, v * shf.num_functions());
    for (f, row) in shf.rows.iter().enumerate() {
        for (y, &sym) in row.iter().enumerate() {
            for &p in &base_blocks[sym as usize] {
                m.set(y, f * v + p, true);
            }
        }
    }
    Ok(
        Construction::new(m, base.params.w, base.params.r, base.params.d)
            .with_detected_uniformity(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::trivial_ds;
    use crate::verify::is_cff;

    #[test]
    fn modular_tables_separate() {
        for (n, w, r, rows) in [
            (5, 1, 1, 2),
            (5, 2, 2, 5),
            (7, 1, 2, 3),
            (3, 1, 1, 2),
            (9, 1, 2, 3),
            (25, 1, 1, 2),
        ] {
            let shf = shf_modular(n, w, r).unwrap();
            assert_eq!((shf.num_functions(), shf.num_columns()), (rows, n * n));
            assert!(shf.is_separating(), "n={n} w={w} r={r}");
        }
    }

    #[test]
    fn non_separating_table_detected() {
        // c = 0 only: x + 0*y ignores y, so (x,0) and (x,1) always collide
        let mut shf = shf_modular(5, 1, 1).unwrap();
        shf.rows.truncate(1);
        assert!(!shf.is_separating());
    }

    #[test]
    fn gcd_precondition() {
        assert!(shf_modular(4, 1, 2).is_err());
        assert!(shf_modular(9, 1, 3).is_err());
        assert!(shf_modular(6, 2, 2).is_err());
        assert!(shf_modular(3, 2, 2).is_err());
        assert!(shf_modular(25, 2, 2).is_ok());
    }

    #[test]
    fn compose_identity() {
        let base = Construction::new(IncidenceMatrix::identity(3), 1, 1, 0);
        let shf = shf_modular(3, 1, 1).unwrap();
        let c = shf_compose(&base, &shf).unwrap();
        assert_eq!((c.params.points, c.params.blocks), (6, 9));
        assert!(is_cff(&c.matrix, &c.params).unwrap().passed());
    }

    #[test]
    fn compose_pairs_of_five() {
        let base = trivial_ds(5, 2, 2).unwrap().into_cff();
        let shf = shf_modular(5, 2, 2).unwrap();
        let c = shf_compose(&base, &shf).unwrap();
        assert_eq!((c.params.points, c.params.blocks), (50, 25));
        assert_eq!(c.params.block_size, Some(20));
        assert!(is_cff(&c.matrix, &c.params).unwrap().passed());
    }

    #[test]
    fn compose_preserves_d() {
        let base = Construction::new(IncidenceMatrix::identity(3), 1, 1, 0)
            .replicate_points(2)
            .unwrap();
        assert_eq!(base.params.d, 1);
        let c = shf_compose(&base, &shf_modular(3, 1, 1).unwrap()).unwrap();
        assert_eq!((c.params.d, c.params.points, c.params.blocks), (1, 12, 9));
        assert!(is_cff(&c.matrix, &c.params).unwrap().passed());
    }

    #[test]
    fn compose_mismatch() {
        let base = Construction::new(IncidenceMatrix::identity(3), 1, 1, 0);
        assert!(shf_compose(&base, &shf_modular(5, 1, 1).unwrap()).is_err());
        let base5 = Construction::new(IncidenceMatrix::identity(5), 1, 1, 0);
        assert!(shf_compose(&base5, &shf_modular(5, 1, 2).unwrap()).is_err());
    }
}
