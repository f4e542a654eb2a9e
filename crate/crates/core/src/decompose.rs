//! Krull-Schmidt decomposition of explicit representations.
//!
//! Summands are split off one at a time against a dictionary of strings and
//! bands: X is a summand of M iff some f: X -> M, g: M -> X have g f
//! invertible, and then M = f(X) + ker g.  Band parameters are read off
//! from the automorphism that a band walk induces on M.

use crate::error::{Error, Result};
use crate::homological::{hom_basis, restrict, WordModule};
use crate::linalg::{subspace, Matrix};
use crate::quiver::GentleAlgebra;
use crate::rational::Q;
use crate::rep::Representation;
use crate::words::{enumerate_bands, enumerate_strings, BandWord, StringWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIES: usize = 8;

fn random_combination<R: Rng>(basis: &[Vec<Matrix>], n: usize, rng: &mut R) -> Option<Vec<Matrix>> {
    if basis.is_empty() {
        return None;
    }
    let mut out: Vec<Matrix> = basis[0].iter().map(|m| Matrix::zeros(m.rows, m.cols)).collect();
    for b in basis {
        let c = Q::from_int(rng.gen_range(-97..=97));
        for v in 0..n {
            out[v] = out[v].add(&b[v].scale(&c));
        }
    }
    Some(out)
}

/// Try to split X off M; returns the complement.
fn split_off<R: Rng>(alg: &GentleAlgebra, x: &Representation, m: &Representation, rng: &mut R) -> Option<Representation> {
    if x.dims.iter().zip(&m.dims).any(|(a, b)| a > b) {
        return None;
    }
    let rx = x.rank_function();
    let rm = m.rank_function();
    if rx.iter().zip(&rm).any(|(a, b)| a > b) {
        return None;
    }
    let fs = hom_basis(alg, x, m);
    if fs.is_empty() {
        return None;
    }
    let gs = hom_basis(alg, m, x);
    if gs.is_empty() {
        return None;
    }
    let n = alg.n();
    for _ in 0..2 {
        let f = random_combination(&fs, n, rng)?;
        let g = random_combination(&gs, n, rng)?;
        let iso = (0..n).all(|v| g[v].mul(&f[v]).rank() == x.dims[v]);
        if iso {
            let kernel: Vec<Matrix> = (0..n).map(|v| Matrix::from_cols(m.dims[v], &g[v].nullspace())).collect();
            return Some(restrict(alg, m, &kernel));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Linear relations along a band walk

/// A linear relation from K^p to K^q, stored as a column basis of K^{p+q}.
#[derive(Clone, Debug)]
struct Relation {
    p: usize,
    q: usize,
    span: Matrix,
}

impl Relation {
    fn graph(map: &Matrix) -> Relation {
        // pairs (x, map x)
        let span = Matrix::identity(map.cols).vstack(map);
        Relation { p: map.cols, q: map.rows, span }
    }

    fn inverse(&self) -> Relation {
        let top = self.span.block(0, 0, self.p, self.span.cols);
        let bot = self.span.block(self.p, 0, self.q, self.span.cols);
        Relation { p: self.q, q: self.p, span: bot.vstack(&top) }
    }

    fn top(&self) -> Matrix {
        self.span.block(0, 0, self.p, self.span.cols)
    }

    fn bottom(&self) -> Matrix {
        self.span.block(self.p, 0, self.q, self.span.cols)
    }

    /// self then other.
    fn then(&self, other: &Relation) -> Relation {
        let (y1, y2) = (self.bottom(), other.top());
        let k = self.span.cols;
        let m = y1.hstack(&y2.scale(&Q::from_int(-1)));
        let vecs: Vec<Vec<Q>> = m
            .nullspace()
            .into_iter()
            .map(|z| {
                let mut v = self.top().mul_vec(&z[..k]);
                v.extend(other.bottom().mul_vec(&z[k..]));
                v
            })
            .collect();
        Relation { p: self.p, q: other.q, span: subspace::span(self.p + other.q, &vecs) }
    }

    /// R(S) = { y : (x, y) in R for some x in S }.
    fn apply(&self, s: &Matrix) -> Matrix {
        let u = subspace::preimage(&self.top(), s);
        subspace::image(&self.bottom(), &u)
    }
}

fn stable<F: Fn(&Matrix) -> Matrix>(start: Matrix, step: F) -> Matrix {
    let mut cur = start;
    loop {
        let next = step(&cur);
        if next.cols == cur.cols {
            return cur;
        }
        cur = next;
    }
}

/// Automorphism induced by an endo-relation on V#/Vb.
fn relation_automorphism(r: &Relation) -> Matrix {
    let n = r.p;
    let inv = r.inverse();
    let all = Matrix::identity(n);
    let zero = Matrix::zeros(n, 0);
    let im = stable(all.clone(), |s| r.apply(s));
    let ind = stable(zero.clone(), |s| subspace::sum(s, &r.apply(s)));
    let dom = stable(all, |s| inv.apply(s));
    let ker = stable(zero, |s| subspace::sum(s, &inv.apply(s)));
    let sharp = subspace::intersect(&im, &dom);
    let flat = subspace::sum(&subspace::intersect(&ind, &dom), &subspace::intersect(&im, &ker));
    let c = subspace::complement_in(&flat, &sharp);
    let basis = c.hstack(&flat);
    let k = c.cols;
    let restricted = subspace::intersect(&r.span, &sharp.direct_sum(&sharp));
    let (top, bottom) = (restricted.block(0, 0, n, restricted.cols), restricted.block(n, 0, n, restricted.cols));
    let mut t = Matrix::zeros(k, k);
    for j in 0..k {
        let u = subspace::coords(&top, &c.col(j)).expect("V# lies in the domain");
        let coords = subspace::coords(&basis, &bottom.mul_vec(&u)).expect("image in V#");
        for i in 0..k {
            t[(i, j)] = coords[i].clone();
        }
    }
    t
}

/// Relation from the space at b_1 around the band back to b_1.
fn band_walk(b: &BandWord, m: &Representation) -> Relation {
    let mut rel: Option<Relation> = None;
    for l in &b.letters {
        let mat = &m.mats[l.arrow];
        // letter l links b_j (at t(l)) with b_{j+1} (at s(l))
        let step = if l.inverse { Relation::graph(mat) } else { Relation::graph(mat).inverse() };
        rel = Some(match rel {
            None => step,
            Some(r) => r.then(&step),
        });
    }
    rel.expect("bands are nonempty")
}

/// Candidate parameters of the band B inside M.
fn band_parameters(b: &BandWord, m: &Representation) -> Vec<Q> {
    let walk = band_walk(b, m);
    let t = relation_automorphism(&walk);
    let mut out = Vec::new();
    for r in crate::poly::rational_roots(&t.charpoly()) {
        if r.is_zero() {
            continue;
        }
        for c in [r.clone(), r.inv()] {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------

/// A summand found by [`decompose`].  Band blocks carry a matrix with no
/// rational eigenvalues; over the algebraic closure they split into
/// `size` band modules of quasi-length 1.
#[derive(Clone, Debug)]
pub enum Summand {
    Word(WordModule),
    BandBlock(BandWord, Matrix),
}

impl Summand {
    pub fn module(&self, alg: &GentleAlgebra) -> Representation {
        match self {
            Summand::Word(w) => w.module(alg),
            Summand::BandBlock(b, t) => crate::rep::band_module_matrix(alg, b, t).expect("invertible block"),
        }
    }

    /// Number of indecomposable summands over the algebraic closure.
    pub fn size(&self) -> usize {
        match self {
            Summand::Word(_) => 1,
            Summand::BandBlock(_, t) => t.rows,
        }
    }
}

/// Multiset of summands of M, strings first.
pub fn decompose(alg: &GentleAlgebra, m: &Representation, dictionary_bound: usize, seed: u64) -> Result<Vec<Summand>> {
    m.check(alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let le = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x <= y);
    let fits = |dims: &[usize], rest: &Representation| dims.iter().zip(&rest.dims).all(|(a, b)| a <= b);
    let strings: Vec<(StringWord, Representation, (Vec<usize>, Vec<usize>))> = enumerate_strings(alg, dictionary_bound)
        .into_iter()
        .map(|c| {
            let r = crate::rep::string_module(alg, &c);
            let ts = r.top_socle(alg);
            (c, r, ts)
        })
        .filter(|(_, r, _)| fits(&r.dims, m))
        .collect();
    let bands: Vec<BandWord> = enumerate_bands(alg, dictionary_bound)
        .into_iter()
        .filter(|b| {
            let mut d = vec![0; alg.n()];
            for v in b.basis_vertices(alg) {
                d[v - 1] += 1;
            }
            fits(&d, m)
        })
        .collect();

    let mut rest = m.clone();
    let mut out = Vec::new();
    // strings: dim M - sum of ranks counts them
    let mut string_count = rest.total_dim() - rest.rank_function().iter().sum::<usize>();
    // the top and socle of a summand sit inside those of M
    let mut ts = rest.top_socle(alg);
    let mut rest_mod = crate::modp::rep_mod(&rest);
    for (c, x, (xt, xs)) in &strings {
        if string_count == 0 {
            break;
        }
        let mut attempts = 0;
        let xm = crate::modp::rep_mod(x);
        while attempts < TRIES && string_count > 0 && fits(&x.dims, &rest) && le(xt, &ts.0) && le(xs, &ts.1) {
            // cheap test mod p first; exact Hom spaces only for likely summands
            if let (Some(xm), Some(rm)) = (&xm, &rest_mod) {
                if !(0..2).any(|_| crate::modp::summand_candidate(alg, x, xm, &rest, rm, &mut rng)) {
                    break;
                }
            }
            match split_off(alg, x, &rest, &mut rng) {
                Some(r) => {
                    rest = r;
                    ts = rest.top_socle(alg);
                    rest_mod = crate::modp::rep_mod(&rest);
                    out.push(Summand::Word(WordModule::Str(c.clone())));
                    string_count -= 1;
                    attempts = 0;
                }
                None => {
                    attempts += 1;
                    if attempts >= 2 {
                        break;
                    }
                }
            }
        }
    }
    if string_count > 0 {
        return Err(Error::DictionaryExhausted(dictionary_bound));
    }
    for b in &bands {
        if rest.is_zero() {
            break;
        }
        let d: Vec<usize> = {
            let mut d = vec![0; alg.n()];
            for v in b.basis_vertices(alg) {
                d[v - 1] += 1;
            }
            d
        };
        if !fits(&d, &rest) {
            continue;
        }
        {
            let probe = crate::rep::band_module(alg, b, &Q::one(), 1)?;
            let (bt, bs) = probe.top_socle(alg);
            let (rt, rs) = rest.top_socle(alg);
            if !le(&bt, &rt) || !le(&bs, &rs) || !le(&probe.rank_function(), &rest.rank_function()) {
                continue;
            }
        }
        'params: loop {
            for lambda in band_parameters(b, &rest) {
                let x = crate::rep::band_module(alg, b, &lambda, 1)?;
                if let Some(r) = split_off(alg, &x, &rest, &mut rng) {
                    rest = r;
                    out.push(Summand::Word(WordModule::Band(b.clone(), lambda)));
                    if fits(&d, &rest) && !rest.is_zero() {
                        continue 'params;
                    }
                    break 'params;
                }
            }
            break;
        }
        // what is left of this band has no rational parameter
        if fits(&d, &rest) && !rest.is_zero() {
            let t = relation_automorphism(&band_walk(b, &rest));
            let cp = t.charpoly();
            if t.rows > 0 && crate::poly::is_square_free(&cp) && crate::poly::rational_roots(&cp).is_empty() {
                for t in [Some(t.clone()), t.inverse()].into_iter().flatten() {
                    let x = crate::rep::band_module_matrix(alg, b, &t)?;
                    if let Some(r) = split_off(alg, &x, &rest, &mut rng) {
                        rest = r;
                        out.push(Summand::BandBlock(b.clone(), t));
                        break;
                    }
                }
            }
        }
    }
    if !rest.is_zero() {
        return Err(Error::DictionaryExhausted(dictionary_bound));
    }
    let parts: Vec<Representation> = out.iter().map(|w| w.module(alg)).collect();
    let total = Representation::sum_all(alg, &parts);
    if total.dims != m.dims || total.rank_function() != m.rank_function() {
        return Err(Error::ConsistencyFailure("decomposition does not reproduce the module".into()));
    }
    Ok(out)
}
