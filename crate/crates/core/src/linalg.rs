//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Thin SVD with singular values sorted in decreasing order.
pub(crate) struct SortedSvd {
    pub sigma: Vec<f64>,
    /// Left singular vectors as columns (`rows x k`).
    pub u: DMatrix<f64>,
    /// Right singular vectors as columns (`cols x cols`, padded to full).
    pub v: DMatrix<f64>,
}

impl SortedSvd {
    pub fn new(a: &DMatrix<f64>) -> SortedSvd {
        let (rows, cols) = a.shape();
        // Pad wide matrices with zero rows so that V is square.
        let padded;
        let a = if rows < cols {
            let mut p = DMatrix::zeros(cols, cols);
            p.view_mut((0, 0), (rows, cols)).copy_from(a);
            padded = p;
            &padded
        } else {
            a
        };
        let svd = a.clone().svd(true, true);
        let u = svd.u.expect("requested U");
        let v_t = svd.v_t.expect("requested V^T");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
        let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let u = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
        let v = DMatrix::from_fn(v_t.ncols(), order.len(), |r, c| v_t[(order[c], r)]);
        SortedSvd { sigma, u, v }
    }

    /// Number of singular values above `rel * sigma_max`.
    pub fn rank(&self, rel: f64) -> usize {
        let cutoff = rel * self.sigma.first().copied().unwrap_or(0.0);
        self.sigma.iter().filter(|s| **s > cutoff).count()
    }

    /// Minimum-norm least-squares solution keeping the first `rank` values.
    pub fn solve(&self, b: &DVector<f64>, rank: usize) -> DVector<f64> {
        let mut x = DVector::zeros(self.v.nrows());
        for k in 0..rank {
            let coef = self.u.column(k).dot(b) / self.sigma[k];
            x.axpy(coef, &self.v.column(k), 1.0);
        }
        x
    }

    /// Columns of V beyond `rank`, spanning the numerical nullspace.
    pub fn null_space(&self, rank: usize) -> DMatrix<f64> {
        let n = self.v.nrows();
        DMatrix::from_fn(n, n - rank, |r, c| self.v[(r, rank + c)])
    }
}

/// Outcome of a rank decision with a safety gap.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum RankDecision {
    Clear(usize),
    Ambiguous(Vec<f64>),
}

/// Rank with cutoff `rel * sigma_max`, ambiguous when some singular value lies
/// in `(cutoff, gap * cutoff]`.
pub(crate) fn decide_rank(sigma: &[f64], rel: f64, gap: f64) -> RankDecision {
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return RankDecision::Clear(0);
    }
    let cutoff = rel * smax;
    let rank = sigma.iter().filter(|s| **s > cutoff).count();
    let band = sigma.iter().any(|s| *s > cutoff && *s <= gap * cutoff);
    if band {
        RankDecision::Ambiguous(sigma.to_vec())
    } else {
        RankDecision::Clear(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_sorted_and_nullspace() {
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0]);
        let svd = SortedSvd::new(&a);
        assert!(svd.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(svd.rank(1e-12), 2);
        let n = svd.null_space(2);
        assert!((&a * &n).norm() < 1e-12);
    }

    #[test]
    fn wide_matrix_nullspace_is_complete() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let svd = SortedSvd::new(&a);
        let rank = svd.rank(1e-12);
        assert_eq!(rank, 1);
        let n = svd.null_space(rank);
        assert_eq!(n.ncols(), 2);
        assert!((&a * &n).norm() < 1e-12);
    }

    #[test]
    fn least_squares_min_norm() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![2.0, 2.0]);
        let svd = SortedSvd::new(&a);
        let x = svd.solve(&b, svd.rank(1e-12));
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_gap_detection() {
        assert_eq!(
            decide_rank(&[1.0, 0.5, 1e-14], 1e-9, 100.0),
            RankDecision::Clear(2)
        );
        assert!(matches!(
            decide_rank(&[1.0, 1e-8, 1e-14], 1e-9, 100.0),
            RankDecision::Ambiguous(_)
        ));
        assert_eq!(
            decide_rank(&[0.0, 0.0], 1e-9, 100.0),
            RankDecision::Clear(0)
        );
    }
}
