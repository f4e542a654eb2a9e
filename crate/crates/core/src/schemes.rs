//! Irreducible components of module schemes over gentle algebras.
//!
//! The scheme mod(A, d) is a product over rho-blocks of schemes of
//! complexes, so components, dimensions and critical summands are all
//! computed blockwise on the models C_m and C~_m.

use crate::blocks::{model_algebra, rho_blocks, BlockKind, RhoBlock};
use crate::decompose::{decompose, Summand};
use crate::error::{Error, Result};
use crate::homological::{ext1_dim, hom_dim, projective, tau_dtr, WordModule};
use crate::linalg::{sparse_rank, Matrix};
use crate::quiver::{is_jacobian, GentleAlgebra};
use crate::rational::Q;
use crate::rep::{random_invertible, simple, Representation};
use crate::words::{canonical_band, canonical_string, BandWord, StringWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// r[a] for each arrow a.
pub type RankFunction = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub d: Vec<usize>,
    pub r: RankFunction,
}

fn check_dims(alg: &GentleAlgebra, d: &[usize]) -> Result<()> {
    if d.len() != alg.n() {
        return Err(Error::LengthMismatch { expected: alg.n(), got: d.len() });
    }
    Ok(())
}

fn is_rank_function(alg: &GentleAlgebra, d: &[usize], r: &[usize]) -> bool {
    (0..alg.num_arrows()).all(|a| r[a] <= d[alg.s(a) - 1].min(d[alg.t(a) - 1]))
        && alg.relations.iter().all(|&(a, b)| r[a] + r[b] <= d[alg.s(a) - 1])
}

/// Rank functions of one block, in model arrow order.
fn block_rank_functions(block: &RhoBlock, d: &[usize]) -> Vec<Vec<usize>> {
    let kind = block.kind;
    let k = kind.num_arrows();
    let dm: Vec<usize> = block.vertices.iter().map(|&v| d[v - 1]).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(kind: BlockKind, dm: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = kind.num_arrows();
        let i = cur.len();
        if i == k {
            if let BlockKind::Cyclic(_) = kind {
                // relation a_1 a_k at model vertex 0
                if cur[k - 1] + cur[0] > dm[0] {
                    return;
                }
            }
            out.push(cur.clone());
            return;
        }
        let (s, t) = (kind.model_s(i), kind.model_t(i));
        let mut hi = dm[s].min(dm[t]);
        if kind == BlockKind::Cyclic(1) {
            hi = dm[0] / 2;
        }
        for x in 0..=hi {
            if i > 0 && cur[i - 1] + x > dm[s] {
                break;
            }
            cur.push(x);
            rec(kind, dm, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    rec(kind, &dm, &mut cur, &mut out);
    out
}

fn maximal(list: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let le = |a: &Vec<usize>, b: &Vec<usize>| a.iter().zip(b).all(|(x, y)| x <= y);
    list.iter()
        .filter(|r| !list.iter().any(|s| s != *r && le(r, s)))
        .cloned()
        .collect()
}

/// All rank functions for (A, d), or only the maximal ones.
pub fn rank_functions(alg: &GentleAlgebra, d: &[usize], maximal_only: bool) -> Result<Vec<RankFunction>> {
    check_dims(alg, d)?;
    let blocks = rho_blocks(alg)?;
    let mut acc: Vec<RankFunction> = vec![vec![0; alg.num_arrows()]];
    for b in &blocks {
        let mut local = block_rank_functions(b, d);
        if maximal_only {
            local = maximal(local);
        }
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for r in &acc {
            for l in &local {
                let mut r = r.clone();
                for (k, &a) in b.arrows.iter().enumerate() {
                    r[a] = l[k];
                }
                next.push(r);
            }
        }
        acc = next;
    }
    acc.sort();
    Ok(acc)
}

pub fn components(alg: &GentleAlgebra, d: &[usize]) -> Result<Vec<Component>> {
    Ok(rank_functions(alg, d, true)?
        .into_iter()
        .map(|r| Component { d: d.to_vec(), r })
        .collect())
}

// ---------------------------------------------------------------------------
// Block generic modules

/// M_{d,r} over a model: P_{s(a_k)} with multiplicity proj[k] and S_i with
/// multiplicity simples[i].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockGenericModule {
    pub kind: BlockKind,
    pub proj: Vec<usize>,
    pub simples: Vec<usize>,
}

impl BlockGenericModule {
    pub fn new(kind: BlockKind, d: &[usize], r: &[usize]) -> BlockGenericModule {
        let m = kind.num_vertices();
        let mut used = vec![0usize; m];
        for (k, &x) in r.iter().enumerate() {
            used[kind.model_s(k)] += x;
            used[kind.model_t(k)] += x;
        }
        let simples = (0..m).map(|i| d[i] - used[i]).collect();
        BlockGenericModule { kind, proj: r.to_vec(), simples }
    }

    /// Model arrow leaving model vertex i, if any.
    fn out_arrow(&self, i: usize) -> Option<usize> {
        (i < self.kind.num_arrows()).then_some(i)
    }

    /// Multiplicity of P_i, where P_i = S_i at the sink of C_m.
    fn proj_at(&self, i: usize) -> usize {
        match self.out_arrow(i) {
            Some(k) => self.proj[k],
            None => self.simples[i],
        }
    }

    /// dim End from the Hom table of the models.
    pub fn end_dim(&self) -> usize {
        let kind = self.kind;
        let c1 = kind == BlockKind::Cyclic(1);
        let mut total = 0;
        for &s in &self.simples {
            total += s * s;
        }
        for k in 0..kind.num_arrows() {
            let p = self.proj[k];
            let s = kind.model_s(k);
            let t = kind.model_t(k);
            total += p * p * if c1 { 2 } else { 1 };
            total += p * self.simples[s];
            total += self.simples[t] * p;
            if !c1 {
                if let Some(k2) = self.out_arrow(t) {
                    total += self.proj[k2] * p;
                }
            }
        }
        total
    }

    pub fn module(&self) -> (GentleAlgebra, Representation) {
        let alg = model_algebra(self.kind);
        let mut parts = Vec::new();
        for (k, &p) in self.proj.iter().enumerate() {
            for _ in 0..p {
                parts.push(projective(&alg, self.kind.model_s(k) + 1));
            }
        }
        for (i, &s) in self.simples.iter().enumerate() {
            for _ in 0..s {
                parts.push(simple(&alg, i + 1));
            }
        }
        let m = Representation::sum_all(&alg, &parts);
        (alg, m)
    }
}

fn block_data(alg: &GentleAlgebra, z: &Component) -> Result<Vec<(RhoBlock, Vec<usize>, BlockGenericModule)>> {
    let blocks = rho_blocks(alg)?;
    Ok(blocks
        .into_iter()
        .map(|b| {
            let dm: Vec<usize> = b.vertices.iter().map(|&v| z.d[v - 1]).collect();
            let rm: Vec<usize> = b.arrows.iter().map(|&a| z.r[a]).collect();
            let g = BlockGenericModule::new(b.kind, &dm, &rm);
            (b, dm, g)
        })
        .collect())
}

pub fn dim_gl(d: &[usize]) -> usize {
    d.iter().map(|x| x * x).sum()
}

/// dim Z as the sum over blocks of orbit dimensions of M_{d', r'}.
pub fn component_dim(alg: &GentleAlgebra, z: &Component) -> Result<usize> {
    Ok(block_data(alg, z)?
        .iter()
        .map(|(_, dm, g)| dim_gl(dm) - g.end_dim())
        .sum())
}

// ---------------------------------------------------------------------------
// Smoothness

/// Singularity criterion on (d, r).
pub fn is_smooth_rank(alg: &GentleAlgebra, d: &[usize], r: &[usize]) -> bool {
    let dv = |v: usize| d[v - 1];
    for &(a, b) in &alg.relations {
        let c1 = r[a] < dv(alg.t(a)) && r[b] < dv(alg.s(b)) && r[a] + r[b] < dv(alg.s(a));
        if !c1 {
            continue;
        }
        let c2 = (0..alg.num_arrows())
            .filter(|&a2| alg.is_rel(a2, a))
            .all(|a2| r[a2] + r[a] < dv(alg.t(a)));
        let c3 = (0..alg.num_arrows())
            .filter(|&b2| alg.is_rel(b, b2))
            .all(|b2| r[b] + r[b2] < dv(alg.s(b)));
        if c2 && c3 {
            return false;
        }
    }
    true
}

pub fn is_smooth_point(alg: &GentleAlgebra, m: &Representation) -> bool {
    is_smooth_rank(alg, &m.dims, &m.rank_function())
}

/// Zariski tangent space dimension of mod(A, d) at M.
pub fn tangent_dim(alg: &GentleAlgebra, m: &Representation) -> usize {
    let mut off = vec![0; alg.num_arrows() + 1];
    for a in 0..alg.num_arrows() {
        off[a + 1] = off[a] + m.mats[a].rows * m.mats[a].cols;
    }
    let var = |a: usize, i: usize, j: usize| off[a] + i * m.mats[a].cols + j;
    let mut rows = Vec::new();
    for &(a, b) in &alg.relations {
        let (ma, mb) = (&m.mats[a], &m.mats[b]);
        // d(M_a M_b) = dM_a M_b + M_a dM_b
        for i in 0..ma.rows {
            for j in 0..mb.cols {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for k in 0..ma.cols {
                    if !mb[(k, j)].is_zero() {
                        row.push((var(a, i, k), mb[(k, j)].clone()));
                    }
                    if !ma[(i, k)].is_zero() {
                        row.push((var(b, k, j), ma[(i, k)].clone()));
                    }
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, Q)> = Vec::new();
                for (c, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == c => last.1 = &last.1 + &v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|e| !e.1.is_zero());
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    off[alg.num_arrows()] - sparse_rank(rows)
}

/// Largest dimension of a component containing a module with rank function r.
pub fn local_dim(alg: &GentleAlgebra, d: &[usize], r: &[usize]) -> Result<usize> {
    let mut best = 0;
    for z in components(alg, d)? {
        if r.iter().zip(&z.r).all(|(x, y)| x <= y) {
            best = best.max(component_dim(alg, &z)?);
        }
    }
    Ok(best)
}

pub fn containing_components(alg: &GentleAlgebra, d: &[usize], r: &[usize]) -> Result<usize> {
    Ok(components(alg, d)?
        .iter()
        .filter(|z| r.iter().zip(&z.r).all(|(x, y)| x <= y))
        .count())
}

/// True iff every loop has even dimension at its vertex.
pub fn is_generically_reduced(alg: &GentleAlgebra, z: &Component) -> bool {
    alg.loops().iter().all(|&a| z.d[alg.s(a) - 1] % 2 == 0)
}

// ---------------------------------------------------------------------------
// Critical summands and tau-reducedness

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub block: usize,
    pub kind: String,
    /// arrows a with S_{s(a)} + S_{t(a)} a summand
    pub type_i: Vec<String>,
    /// arrows a with P_{t(a)} + S_{s(a)} a summand
    pub type_ii: Vec<String>,
}

pub fn block_critical_summands(alg: &GentleAlgebra, z: &Component) -> Result<Vec<CriticalReport>> {
    let mut out = Vec::new();
    for (b, _, g) in block_data(alg, z)? {
        let kind = b.kind;
        let mut type_i = Vec::new();
        let mut type_ii = Vec::new();
        for k in 0..kind.num_arrows() {
            let (s, t) = (kind.model_s(k), kind.model_t(k));
            let name = alg.arrow_id(b.arrows[k]).to_string();
            let hit_i = if kind == BlockKind::Cyclic(1) {
                g.simples[0] > 0
            } else {
                g.simples[s] > 0 && g.simples[t] > 0
            };
            if hit_i {
                type_i.push(name.clone());
            }
            if g.proj_at(t) > 0 && g.simples[s] > 0 {
                type_ii.push(name);
            }
        }
        if !type_i.is_empty() || !type_ii.is_empty() {
            out.push(CriticalReport { block: b.id, kind: kind.to_string(), type_i, type_ii });
        }
    }
    Ok(out)
}

pub fn is_tau_reduced(alg: &GentleAlgebra, z: &Component) -> Result<bool> {
    if !is_jacobian(alg) {
        return Err(Error::NotJacobian);
    }
    Ok(block_critical_summands(alg, z)?.is_empty())
}

/// A decorated component: Z together with a decoration vector v.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoratedComponent {
    pub component: Component,
    pub v: Vec<usize>,
}

pub fn is_tau_reduced_decorated(alg: &GentleAlgebra, z: &DecoratedComponent) -> Result<bool> {
    let clash = z.component.d.iter().zip(&z.v).any(|(d, v)| d * v != 0);
    Ok(!clash && is_tau_reduced(alg, &z.component)?)
}

// ---------------------------------------------------------------------------
// Generic points

const RETRIES: u64 = 8;

/// A random point of Z with rank function exactly r.
pub fn generic_point(alg: &GentleAlgebra, z: &Component, seed: u64) -> Result<Representation> {
    check_dims(alg, &z.d)?;
    if !is_rank_function(alg, &z.d, &z.r) {
        return Err(Error::InvalidRepresentation("not a rank function".into()));
    }
    let data = block_data(alg, z)?;
    for attempt in 0..RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let mut m = Representation::zero(alg, z.d.clone());
        for (b, dm, g) in &data {
            let (model, rep) = g.module();
            let gs: Vec<Matrix> = dm.iter().map(|&n| random_invertible(n, &mut rng)).collect();
            let rep = rep.conjugate(&model, &gs);
            for (k, &a) in b.arrows.iter().enumerate() {
                m.mats[a] = rep.mats[k].clone();
            }
        }
        if m.check(alg).is_ok() && m.rank_function() == z.r {
            return Ok(m);
        }
    }
    Err(Error::SamplingFailure("rank function not attained".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ceh {
    pub c: usize,
    pub e: usize,
    pub h: usize,
}

/// (c, e, h) at generic points, each minimized over three samples.
pub fn ceh_values(alg: &GentleAlgebra, z: &Component, seed: u64) -> Result<Ceh> {
    let dim_z = component_dim(alg, z)?;
    let gl = dim_gl(&z.d);
    let mut best: Option<Ceh> = None;
    for s in 0..3 {
        let m = generic_point(alg, z, seed.wrapping_add(s))?;
        let end = hom_dim(alg, &m, &m);
        let c = dim_z + end - gl;
        let e = ext1_dim(alg, &m, &m);
        let h = hom_dim(alg, &m, &tau_dtr(alg, &m));
        best = Some(match best {
            None => Ceh { c, e, h },
            Some(b) => Ceh { c: b.c.min(c), e: b.e.min(e), h: b.h.min(h) },
        });
    }
    Ok(best.unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ComponentLabel {
    Str(String),
    Band(String),
}

#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    pub labels: Vec<ComponentLabel>,
    pub strings: Vec<StringWord>,
    pub bands: Vec<BandWord>,
}

pub fn canonical_decomposition(alg: &GentleAlgebra, z: &Component, bound: usize, seed: u64) -> Result<CanonicalDecomposition> {
    let m = generic_point(alg, z, seed)?;
    let parts = decompose(alg, &m, bound, seed)?;
    let mut strings = Vec::new();
    let mut bands = Vec::new();
    for p in parts {
        match p {
            Summand::Word(WordModule::Str(c)) => strings.push(canonical_string(&c)),
            Summand::Word(WordModule::Band(b, _)) => bands.push(canonical_band(&b)),
            Summand::BandBlock(b, t) => bands.extend(std::iter::repeat(canonical_band(&b)).take(t.rows)),
        }
    }
    let expect_strings = z.d.iter().sum::<usize>() - z.r.iter().sum::<usize>();
    if strings.len() != expect_strings {
        return Err(Error::ConsistencyFailure(format!(
            "{} string summands, expected {}",
            strings.len(),
            expect_strings
        )));
    }
    let ceh = ceh_values(alg, z, seed)?;
    if bands.len() != ceh.c {
        return Err(Error::ConsistencyFailure(format!("{} band summands but c = {}", bands.len(), ceh.c)));
    }
    let mut labels: Vec<ComponentLabel> = strings
        .iter()
        .map(|c| ComponentLabel::Str(c.display(alg)))
        .chain(bands.iter().map(|b| ComponentLabel::Band(b.display(alg))))
        .collect();
    labels.sort();
    strings.sort();
    bands.sort();
    Ok(CanonicalDecomposition { labels, strings, bands })
}

/// All dimension vectors with entries at most `bound`.
pub fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for x in 0..=bound {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// For every d in the box, the tau-reduced components; errors if some d has two.
pub fn tau_reduced_components_census(alg: &GentleAlgebra, d_bound: usize) -> Result<Vec<(Vec<usize>, Component)>> {
    if !is_jacobian(alg) {
        return Err(Error::NotJacobian);
    }
    let mut out = Vec::new();
    for d in dim_vectors(alg.n(), d_bound) {
        let mut found: Vec<Component> = Vec::new();
        for z in components(alg, &d)? {
            if is_tau_reduced(alg, &z)? {
                found.push(z);
            }
        }
        if found.len() > 1 {
            return Err(Error::UniquenessViolation(d));
        }
        if let Some(z) = found.pop() {
            out.push((d, z));
        }
    }
    Ok(out)
}
