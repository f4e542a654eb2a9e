//! Linear algebra over F_p for cheap pre-tests.  Rational inputs are
//! reduced mod p; a vanishing denominator makes the reduction fail.

use crate::quiver::GentleAlgebra;
use crate::rational::Q;
use crate::rep::Representation;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

pub const P: u64 = 2_147_483_647;

pub fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

pub fn reduce(q: &Q) -> Option<u64> {
    let pb = num_bigint::BigInt::from(P);
    let num = ((q.numer() % &pb) + &pb) % &pb;
    let den = ((q.denom() % &pb) + &pb) % &pb;
    if den.is_zero() {
        return None;
    }
    Some(num.to_u64()? * inv(den.to_u64()?) % P)
}

/// Dense matrix mod P, row major.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn from_q(m: &crate::linalg::Matrix) -> Option<Mat> {
        let mut out = Mat::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.a[i * m.cols + j] = reduce(&m[(i, j)])?;
            }
        }
        Some(out)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let y = &mut out.a[i * o.cols + j];
                    *y = (*y + x * o.get(k, j)) % P;
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            for k in 0..self.cols {
                self.a.swap(r * self.cols + k, piv * self.cols + k);
            }
            let iv = inv(self.get(r, c));
            for k in 0..self.cols {
                self.a[r * self.cols + k] = self.a[r * self.cols + k] * iv % P;
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i != r && f != 0 {
                    for k in c..self.cols {
                        let t = f * self.get(r, k) % P;
                        self.a[i * self.cols + k] = (self.a[i * self.cols + k] + P - t) % P;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (P - m.get(r, f)) % P;
                }
                v
            })
            .collect()
    }
}

pub fn rep_mod(m: &Representation) -> Option<Vec<Mat>> {
    m.mats.iter().map(Mat::from_q).collect()
}

/// Basis of Hom(M, N) mod P, each element a matrix per vertex.
pub fn hom_basis(alg: &GentleAlgebra, dm: &[usize], m: &[Mat], dn: &[usize], n: &[Mat]) -> Vec<Vec<Mat>> {
    let nv = alg.n();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + dn[v] * dm[v];
    }
    let total = off[nv];
    let var = |v: usize, i: usize, j: usize| off[v - 1] + i * dm[v - 1] + j;
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for a in 0..alg.num_arrows() {
        let (s, t) = (alg.s(a), alg.t(a));
        // f_t M_a = N_a f_s
        for i in 0..dn[t - 1] {
            for j in 0..dm[s - 1] {
                let mut row = vec![0u64; total];
                for k in 0..dm[t - 1] {
                    let x = m[a].get(k, j);
                    row[var(t, i, k)] = (row[var(t, i, k)] + x) % P;
                }
                for k in 0..dn[s - 1] {
                    let x = n[a].get(i, k);
                    row[var(s, k, j)] = (row[var(s, k, j)] + P - x) % P;
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let sys = Mat { rows: eqs.len(), cols: total, a: eqs.concat() };
    sys.nullspace()
        .into_iter()
        .map(|x| {
            (0..nv)
                .map(|v| Mat { rows: dn[v], cols: dm[v], a: x[off[v]..off[v + 1]].to_vec() })
                .collect()
        })
        .collect()
}

fn combination<R: Rng>(basis: &[Vec<Mat>], rng: &mut R) -> Vec<Mat> {
    let mut out: Vec<Mat> = basis[0].iter().map(|m| Mat::zeros(m.rows, m.cols)).collect();
    for b in basis {
        let c = rng.gen_range(0..P);
        for (o, x) in out.iter_mut().zip(b) {
            for (y, z) in o.a.iter_mut().zip(&x.a) {
                *y = (*y + c * z) % P;
            }
        }
    }
    out
}

/// Does some pair f: X -> M, g: M -> X have g f invertible mod P?  A
/// positive answer lifts to Q; a negative one fails only with probability
/// about dim / P.
pub fn summand_candidate<R: Rng>(alg: &GentleAlgebra, x: &Representation, xm: &[Mat], m: &Representation, mm: &[Mat], rng: &mut R) -> bool {
    let fs = hom_basis(alg, &x.dims, xm, &m.dims, mm);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(alg, &m.dims, mm, &x.dims, xm);
    if gs.is_empty() {
        return false;
    }
    let f = combination(&fs, rng);
    let g = combination(&gs, rng);
    (0..alg.n()).all(|v| g[v].mul(&f[v]).rank() == x.dims[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn small_nullspace() {
        let m = Mat::from_q(&Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]])).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = (v[0] + 2 * v[1] + 3 * v[2]) % P;
            assert_eq!(s, 0);
        }
        assert_eq!(reduce(&Q::new(1, 2)).unwrap() * 2 % P, 1);
    }
}
