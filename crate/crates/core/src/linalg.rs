//! Small dense linear algebra helpers: just the operations the solver
//! needs, over plain `Vec<f64>` storage.

use crate::Error;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("matrix rows have unequal lengths".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            data.extend_from_slice(row);
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `selfᵀ * v`.
    pub fn t_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.rows, v.len());
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == 0.0 {
                continue;
            }
            let row = self.row(i);
            for (o, &m) in out.iter_mut().zip(row) {
                *o += vi * m;
            }
        }
        out
    }

    /// Gram matrix `self * selfᵀ`.
    pub fn gram(&self) -> Mat {
        let n = self.rows;
        let mut q = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = dot(self.row(i), self.row(j));
                q.set(i, j, v);
                q.set(j, i, v);
            }
        }
        q
    }

    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self.get(i, j).abs());
                }
            }
        }
        m
    }

    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.rows.min(self.cols)).fold(0.0f64, |m, i| m.max(self.get(i, i).abs()))
    }
}

/// Rank-revealing factorization `Q ≈ L Lᵀ` of a positive semidefinite
/// matrix, with diagonal pivoting. `L` is stored column-wise and has
/// `rank` columns.
#[derive(Clone, Debug)]
pub struct PsdFactor {
    pub l_cols: Vec<Vec<f64>>,
    pub rank: usize,
    /// Cholesky factor of `LᵀL` (lower triangular, row-major, rank×rank),
    /// kept for minimum-norm solves.
    ltl_chol: Vec<f64>,
}

/// Pivoted Cholesky of a symmetric matrix. Negative pivots beyond
/// `pivot_tol_factor * max_diagonal` are rejected as non-PSD; pivots in
/// the tolerance band terminate the factorization (rank deficiency is
/// allowed).
pub fn pivoted_cholesky(q: &Mat, pivot_tol_factor: f64) -> Result<PsdFactor, Error> {
    let n = q.rows();
    if q.cols() != n {
        return Err(Error::InvalidInput("pivoted cholesky expects a square matrix".into()));
    }
    let mut d: Vec<f64> = (0..n).map(|i| q.get(i, i)).collect();
    let max_diag = d.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let tol = pivot_tol_factor * max_diag.max(1.0);
    let mut used = vec![false; n];
    let mut l_cols: Vec<Vec<f64>> = Vec::new();

    loop {
        let mut p = usize::MAX;
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            if !used[i] && d[i] > best {
                best = d[i];
                p = i;
            }
        }
        if p == usize::MAX || best <= tol {
            // Remaining diagonal must not be significantly negative.
            for i in 0..n {
                if !used[i] && d[i] < -tol {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not positive semidefinite (pivot {} at index {})",
                        d[i], i
                    )));
                }
            }
            break;
        }
        let sqrt_p = best.sqrt();
        let mut col = vec![0.0; n];
        for i in 0..n {
            let mut v = q.get(i, p);
            for lc in &l_cols {
                v -= lc[i] * lc[p];
            }
            col[i] = v / sqrt_p;
        }
        for i in 0..n {
            if !used[i] {
                d[i] -= col[i] * col[i];
            }
        }
        used[p] = true;
        l_cols.push(col);
    }

    let rank = l_cols.len();
    let ltl_chol = cholesky_of_gram(&l_cols, n, rank)?;
    Ok(PsdFactor { l_cols, rank, ltl_chol })
}

/// Plain Cholesky of the rank×rank matrix `LᵀL`, which is positive
/// definite because the pivoted factor has full column rank.
fn cholesky_of_gram(l_cols: &[Vec<f64>], n: usize, rank: usize) -> Result<Vec<f64>, Error> {
    let mut g = vec![0.0; rank * rank];
    for a in 0..rank {
        for b in a..rank {
            let mut s = 0.0;
            for i in 0..n {
                s += l_cols[a][i] * l_cols[b][i];
            }
            g[a * rank + b] = s;
            g[b * rank + a] = s;
        }
    }
    // in-place lower Cholesky
    for j in 0..rank {
        for k in 0..j {
            let v = g[j * rank + k];
            for i in j..rank {
                g[i * rank + j] -= g[i * rank + k] * v;
            }
        }
        let piv = g[j * rank + j];
        if piv <= 0.0 {
            return Err(Error::InvalidInput("gram matrix of factor lost rank".into()));
        }
        let s = piv.sqrt();
        for i in j..rank {
            g[i * rank + j] /= s;
        }
    }
    Ok(g)
}

impl PsdFactor {
    /// Least-squares solve `L w ≈ r`, returning `(‖w‖², residual_∞)`.
    ///
    /// When the residual is negligible, `‖w‖²` equals `rᵀ Q⁺ r`, the
    /// squared ellipsoidal gauge of `r`.
    pub fn min_norm_sq(&self, r: &[f64]) -> (f64, f64) {
        let rank = self.rank;
        if rank == 0 {
            let resid = r.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            return (0.0, resid);
        }
        // rhs = Lᵀ r
        let mut rhs: Vec<f64> = self.l_cols.iter().map(|c| dot(c, r)).collect();
        // forward/backward solve with the Cholesky factor of LᵀL
        let ch = &self.ltl_chol;
        for i in 0..rank {
            let mut v = rhs[i];
            for k in 0..i {
                v -= ch[i * rank + k] * rhs[k];
            }
            rhs[i] = v / ch[i * rank + i];
        }
        for i in (0..rank).rev() {
            let mut v = rhs[i];
            for k in i + 1..rank {
                v -= ch[k * rank + i] * rhs[k];
            }
            rhs[i] = v / ch[i * rank + i];
        }
        let w = rhs;
        let norm_sq = dot(&w, &w);
        let n = r.len();
        let mut resid = 0.0f64;
        for i in 0..n {
            let mut v = r[i];
            for (a, col) in self.l_cols.iter().enumerate() {
                v -= col[i] * w[a];
            }
            resid = resid.max(v.abs());
        }
        (norm_sq, resid)
    }
}
