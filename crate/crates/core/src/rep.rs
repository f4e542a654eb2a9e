//! Explicit representations: one matrix per arrow.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::GentleAlgebra;
use crate::rational::Q;
use crate::words::{BandWord, StringWord};
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    /// dims[v-1] is the dimension at vertex v.
    pub dims: Vec<usize>,
    /// mats[a] has shape dims[t(a)] x dims[s(a)].
    pub mats: Vec<Matrix>,
}

impl Representation {
    pub fn zero(alg: &GentleAlgebra, dims: Vec<usize>) -> Representation {
        let mats = (0..alg.num_arrows())
            .map(|a| Matrix::zeros(dims[alg.t(a) - 1], dims[alg.s(a) - 1]))
            .collect();
        Representation { dims, mats }
    }

    pub fn new(alg: &GentleAlgebra, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Representation> {
        let r = Representation { dims, mats };
        r.check(alg)?;
        Ok(r)
    }

    pub fn check(&self, alg: &GentleAlgebra) -> Result<()> {
        if self.dims.len() != alg.n() || self.mats.len() != alg.num_arrows() {
            return Err(Error::InvalidRepresentation("wrong number of vertices or arrows".into()));
        }
        for a in 0..alg.num_arrows() {
            let m = &self.mats[a];
            if m.rows != self.dims[alg.t(a) - 1] || m.cols != self.dims[alg.s(a) - 1] {
                return Err(Error::InvalidRepresentation(format!("matrix of {} has the wrong shape", alg.arrow_id(a))));
            }
        }
        for &(a, b) in &alg.relations {
            if !self.mats[a].mul(&self.mats[b]).is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {} is not satisfied",
                    alg.rel_name((a, b))
                )));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn rank_function(&self) -> Vec<usize> {
        self.mats.iter().map(|m| m.rank()).collect()
    }

    /// Dimension vectors of the top and the socle.
    pub fn top_socle(&self, alg: &GentleAlgebra) -> (Vec<usize>, Vec<usize>) {
        let n = self.dims.len();
        let mut top = Vec::with_capacity(n);
        let mut soc = Vec::with_capacity(n);
        for v in 1..=n {
            let d = self.dims[v - 1];
            let mut inc = Matrix::zeros(d, 0);
            let mut out = Matrix::zeros(0, d);
            for a in 0..alg.num_arrows() {
                if alg.t(a) == v {
                    inc = inc.hstack(&self.mats[a]);
                }
                if alg.s(a) == v {
                    out = out.vstack(&self.mats[a]);
                }
            }
            top.push(d - inc.rank());
            soc.push(d - out.rank());
        }
        (top, soc)
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    pub fn sum_all(alg: &GentleAlgebra, parts: &[Representation]) -> Representation {
        let mut acc = Representation::zero(alg, vec![0; alg.n()]);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    /// g . M with g = (g_v) invertible: M_a -> g_t M_a g_s^{-1}.
    pub fn conjugate(&self, alg: &GentleAlgebra, g: &[Matrix]) -> Representation {
        let inv: Vec<Matrix> = g.iter().map(|m| m.inverse().expect("conjugating matrix must be invertible")).collect();
        let mats = (0..alg.num_arrows())
            .map(|a| g[alg.t(a) - 1].mul(&self.mats[a]).mul(&inv[alg.s(a) - 1]))
            .collect();
        Representation { dims: self.dims.clone(), mats }
    }

    pub fn random_conjugate<R: Rng>(&self, alg: &GentleAlgebra, rng: &mut R) -> Representation {
        let g: Vec<Matrix> = self.dims.iter().map(|&d| random_invertible(d, rng)).collect();
        self.conjugate(alg, &g)
    }

    /// Offset of vertex v's block in a concatenated basis.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0; self.dims.len() + 1];
        for i in 0..self.dims.len() {
            off[i + 1] = off[i] + self.dims[i];
        }
        off
    }
}

pub const SAMPLE_BOUND: i64 = 97;

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = Q::from_int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND));
        }
    }
    m
}

pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Module spanned by basis vectors sitting at the given vertices; returns
/// the representation and the local index of each basis vector.
fn from_basis(alg: &GentleAlgebra, verts: &[usize]) -> (Representation, Vec<usize>) {
    let mut dims = vec![0; alg.n()];
    let mut local = Vec::with_capacity(verts.len());
    for &v in verts {
        local.push(dims[v - 1]);
        dims[v - 1] += 1;
    }
    (Representation::zero(alg, dims), local)
}

/// Standard string module M(C).
pub fn string_module(alg: &GentleAlgebra, c: &StringWord) -> Representation {
    let verts = c.basis_vertices(alg);
    let (mut rep, local) = from_basis(alg, &verts);
    for (j, l) in c.letters.iter().enumerate() {
        let a = l.arrow;
        // letter c_{j+1} links b_{j+1} and b_{j+2} (1-based)
        let (src, dst) = if l.inverse { (j, j + 1) } else { (j + 1, j) };
        rep.mats[a][(local[dst], local[src])] = Q::one();
    }
    rep
}

/// Band module M(B, lambda, 1).
pub fn band_module(alg: &GentleAlgebra, b: &BandWord, lambda: &Q, q: u32) -> Result<Representation> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if q != 1 {
        return Err(Error::UnsupportedQuasiLength(q));
    }
    let verts = b.basis_vertices(alg);
    let m = verts.len();
    let (mut rep, local) = from_basis(alg, &verts);
    for (j, l) in b.letters.iter().enumerate() {
        let a = l.arrow;
        let next = (j + 1) % m;
        let (src, dst) = if l.inverse { (j, next) } else { (next, j) };
        let val = if j == m - 1 { lambda.clone() } else { Q::one() };
        rep.mats[a][(local[dst], local[src])] = val;
    }
    Ok(rep)
}

/// Band module with an invertible matrix in place of lambda; over the
/// algebraic closure it is a sum of band modules at the eigenvalues.
pub fn band_module_matrix(alg: &GentleAlgebra, b: &BandWord, t: &Matrix) -> Result<Representation> {
    let k = t.rows;
    if t.cols != k || t.det().is_zero() {
        return Err(Error::ZeroLambda);
    }
    let verts = b.basis_vertices(alg);
    let m = verts.len();
    let (base, local) = from_basis(alg, &verts);
    let dims: Vec<usize> = base.dims.iter().map(|d| d * k).collect();
    let mut rep = Representation::zero(alg, dims);
    let id = Matrix::identity(k);
    for (j, l) in b.letters.iter().enumerate() {
        let a = l.arrow;
        let next = (j + 1) % m;
        let (src, dst) = if l.inverse { (j, next) } else { (next, j) };
        let blk = if j == m - 1 { t } else { &id };
        for r in 0..k {
            for c in 0..k {
                rep.mats[a][(local[dst] * k + r, local[src] * k + c)] = blk[(r, c)].clone();
            }
        }
    }
    Ok(rep)
}

pub fn simple(alg: &GentleAlgebra, v: usize) -> Representation {
    let mut dims = vec![0; alg.n()];
    dims[v - 1] = 1;
    Representation::zero(alg, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::words::{enumerate_bands, enumerate_strings, parse_band};
    use proptest::prelude::*;

    #[test]
    fn string_and_band_dims() {
        let alg = catalog::torus();
        let b = parse_band(&alg, "c-,b3-,a1-,b1,a1-,b1,a3").unwrap();
        let m = band_module(&alg, &b, &Q::one(), 1).unwrap();
        assert_eq!(m.dims, vec![3, 2, 1, 1]);
        m.check(&alg).unwrap();
        let r = m.rank_function();
        assert_eq!(m.total_dim() - r.iter().sum::<usize>(), 0);
        assert_eq!(band_module(&alg, &b, &Q::zero(), 1), Err(Error::ZeroLambda));
        assert_eq!(band_module(&alg, &b, &Q::one(), 2), Err(Error::UnsupportedQuasiLength(2)));
    }

    #[test]
    fn single_arrow() {
        let alg = catalog::linear(2);
        let m = string_module(&alg, &crate::words::parse_string(&alg, "a1").unwrap());
        assert_eq!(m.dims, vec![1, 1]);
        assert_eq!(m.mats[0], Matrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn rank_counts_letters() {
        for alg in [catalog::torus(), catalog::loops_and_two_cycle()] {
            for c in enumerate_strings(&alg, 6) {
                let m = string_module(&alg, &c);
                m.check(&alg).unwrap();
                let r = m.rank_function();
                for a in 0..alg.num_arrows() {
                    assert_eq!(r[a], c.letters.iter().filter(|l| l.arrow == a).count());
                }
                assert_eq!(m.total_dim() - r.iter().sum::<usize>(), 1);
            }
            for b in enumerate_bands(&alg, 6) {
                let m = band_module(&alg, &b, &Q::new(3, 2), 1).unwrap();
                m.check(&alg).unwrap();
                assert_eq!(m.total_dim(), m.rank_function().iter().sum::<usize>());
            }
        }
    }

    proptest! {
        #[test]
        fn conjugation_keeps_relations(seed in 0u64..1000) {
            use rand::SeedableRng;
            let alg = catalog::torus();
            let strings = enumerate_strings(&alg, 4);
            let c = &strings[(seed as usize) % strings.len()];
            let m = string_module(&alg, c);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = m.random_conjugate(&alg, &mut rng);
            prop_assert!(g.check(&alg).is_ok());
            prop_assert_eq!(g.rank_function(), m.rank_function());
        }
    }
}
