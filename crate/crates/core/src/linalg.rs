//! Dense and sparse exact linear algebra over `Q`.

use crate::rational::Q;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Q::from_int(*v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = &out[(i, j)] + &(a * b);
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s = &s + &(&self[(i, j)] * &v[j]);
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(r, j)] = &m[(r, j)] * &inv;
                    }
                }
            }
            let piv_row: Vec<(usize, Q)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, v) in &piv_row {
                    m[(i, *j)] = &m[(i, *j)] - &(&f * v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let rows: Vec<Vec<(usize, Q)>> = (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| !self[(i, j)].is_zero()).map(|j| (j, self[(i, j)].clone())).collect())
            .collect();
        sparse_rank(rows)
    }

    /// Basis of the right kernel {x : A x = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(k, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Basis (as columns) of the column space, taken from the original columns.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return Q::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(t I - A), coefficients from degree 0 up.
    pub fn charpoly(&self) -> Vec<Q> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Evaluate at t = 0..=n and interpolate; the matrices are tiny.
        let xs: Vec<Q> = (0..=n as i64).map(Q::from_int).collect();
        let ys: Vec<Q> = xs
            .iter()
            .map(|t| Matrix::identity(n).scale(t).sub(self).det())
            .collect();
        interpolate(&xs, &ys)
    }
}

/// Lagrange interpolation; returns coefficients from degree 0 up.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut coeffs = vec![Q::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + b;
                next[k] = &next[k] - &(b * &xs[j]);
            }
            basis = next;
            denom = &denom * &(&xs[i] - &xs[j]);
        }
        let f = &ys[i] / &denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] = &coeffs[k] + &(b * &f);
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// Rank of a sparse system given as rows of (column, value) pairs.
pub fn sparse_rank(rows: Vec<Vec<(usize, Q)>>) -> usize {
    let mut basis: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
    for row in rows {
        if let Some(r) = reduce_sparse(row, &basis) {
            let lead = r[0].0;
            basis.insert(lead, r);
        }
    }
    basis.len()
}

/// Reduce a sparse row against pivot rows keyed by their leading column.
/// Returns the normalized remainder (leading coefficient 1) if nonzero.
fn reduce_sparse(mut row: Vec<(usize, Q)>, basis: &HashMap<usize, Vec<(usize, Q)>>) -> Option<Vec<(usize, Q)>> {
    row.retain(|(_, v)| !v.is_zero());
    row.sort_by_key(|(c, _)| *c);
    loop {
        let Some(pos) = row.iter().position(|(c, _)| basis.contains_key(c)) else { break };
        let (c, f) = row[pos].clone();
        let piv = &basis[&c];
        row = axpy_sparse(&row, &f, piv);
        if row.is_empty() {
            return None;
        }
    }
    if row.is_empty() {
        return None;
    }
    let inv = row[0].1.inv();
    if !inv.is_one() {
        for e in row.iter_mut() {
            e.1 = &e.1 * &inv;
        }
    }
    Some(row)
}

/// row - f * piv, both sorted by column.
fn axpy_sparse(row: &[(usize, Q)], f: &Q, piv: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        if j == piv.len() || (i < row.len() && row[i].0 < piv[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || piv[j].0 < row[i].0 {
            out.push((piv[j].0, -(f * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(f * &piv[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of the kernel of a sparse system in `ncols` unknowns.
pub fn sparse_nullspace(rows: Vec<Vec<(usize, Q)>>, ncols: usize) -> Vec<Vec<Q>> {
    let mut basis: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
    for row in rows {
        if let Some(r) = reduce_sparse(row, &basis) {
            basis.insert(r[0].0, r);
        }
    }
    // back substitution into fully reduced form
    let mut leads: Vec<usize> = basis.keys().copied().collect();
    leads.sort_unstable_by(|a, b| b.cmp(a));
    let mut reduced: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
    for &l in &leads {
        let mut row = basis[&l].clone();
        loop {
            let Some(pos) = row.iter().skip(1).position(|(c, _)| reduced.contains_key(c)) else { break };
            let (c, f) = row[pos + 1].clone();
            row = axpy_sparse(&row, &f, &reduced[&c]);
        }
        reduced.insert(l, row);
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (&l, row) in &reduced {
            if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                v[l] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// Subspace helpers: a subspace of K^n is stored as a matrix whose columns
/// form a basis.
pub mod subspace {
    use super::*;

    pub fn span(n: usize, vecs: &[Vec<Q>]) -> Matrix {
        if vecs.is_empty() {
            return Matrix::zeros(n, 0);
        }
        Matrix::from_cols(n, vecs).column_basis()
    }

    pub fn dim(s: &Matrix) -> usize {
        s.cols
    }

    pub fn sum(a: &Matrix, b: &Matrix) -> Matrix {
        a.hstack(b).column_basis()
    }

    pub fn intersect(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.rows;
        if a.cols == 0 || b.cols == 0 {
            return Matrix::zeros(n, 0);
        }
        // solve a x = b y
        let m = a.hstack(&b.scale(&Q::from_int(-1)));
        let ker = m.nullspace();
        let vecs: Vec<Vec<Q>> = ker.iter().map(|k| a.mul_vec(&k[..a.cols])).collect();
        span(n, &vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(map: &Matrix, s: &Matrix) -> Matrix {
        if s.cols == 0 {
            return Matrix::zeros(map.rows, 0);
        }
        map.mul(s).column_basis()
    }

    /// Preimage {x : map x in s}.
    pub fn preimage(map: &Matrix, s: &Matrix) -> Matrix {
        let n = map.cols;
        // map x = s y
        let m = map.hstack(&s.scale(&Q::from_int(-1)));
        let ker = m.nullspace();
        let vecs: Vec<Vec<Q>> = ker.iter().map(|k| k[..n].to_vec()).collect();
        span(n, &vecs)
    }

    pub fn contains(s: &Matrix, v: &[Q]) -> bool {
        let ext = s.hstack(&Matrix::from_cols(s.rows, &[v.to_vec()]));
        ext.rank() == s.cols
    }

    /// Extend a basis of `s` to a basis of `total`, returning only the added vectors.
    pub fn complement_in(s: &Matrix, total: &Matrix) -> Matrix {
        let all = s.hstack(total);
        let (_, pivots) = all.rref();
        let extra: Vec<usize> = pivots.into_iter().filter(|&p| p >= s.cols).collect();
        all.select_cols(&extra)
    }

    /// Coordinates of `v` in the basis `s` (assumes membership).
    pub fn coords(s: &Matrix, v: &[Q]) -> Option<Vec<Q>> {
        let aug = s.hstack(&Matrix::from_cols(s.rows, &[v.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&s.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); s.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[(k, s.cols)].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.nullspace();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        let rows: Vec<Vec<(usize, Q)>> = (0..3)
            .map(|i| (0..3).map(|j| (j, m[(i, j)].clone())).collect())
            .collect();
        let sk = sparse_nullspace(rows, 3);
        assert_eq!(sk.len(), 1);
        assert!(m.mul_vec(&sk[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.det(), Q::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_rows(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_companion() {
        // t^2 - 3t + 2
        let m = Matrix::from_rows(&[vec![0, -2], vec![1, 3]]);
        assert_eq!(m.charpoly(), vec![Q::from_int(2), Q::from_int(-3), Q::one()]);
    }

    #[test]
    fn subspaces() {
        let a = subspace::span(3, &[vec![Q::one(), Q::zero(), Q::zero()], vec![Q::zero(), Q::one(), Q::zero()]]);
        let b = subspace::span(3, &[vec![Q::zero(), Q::one(), Q::zero()], vec![Q::zero(), Q::zero(), Q::one()]]);
        assert_eq!(subspace::intersect(&a, &b).cols, 1);
        assert_eq!(subspace::sum(&a, &b).cols, 3);
    }
}
