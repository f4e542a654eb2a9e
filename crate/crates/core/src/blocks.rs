//! Rho-block decomposition.  Every block of a gentle algebra is isomorphic
//! to one of the models C_m (linear, all length-two paths zero) or
//! C~_m (oriented cycle, all length-two paths zero).

use crate::error::{Error, Result};
use crate::quiver::{validate_gentle_idx, GentleAlgebra, Quiver};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    /// C_m: m vertices, m-1 arrows.
    Linear(usize),
    /// C~_m: m vertices, m arrows.
    Cyclic(usize),
}

impl BlockKind {
    pub fn num_vertices(&self) -> usize {
        match *self {
            BlockKind::Linear(m) | BlockKind::Cyclic(m) => m,
        }
    }

    pub fn num_arrows(&self) -> usize {
        match *self {
            BlockKind::Linear(m) => m - 1,
            BlockKind::Cyclic(m) => m,
        }
    }

    /// Model arrow k (0-based) goes from model vertex k to k+1 (mod m).
    pub fn model_s(&self, k: usize) -> usize {
        k
    }

    pub fn model_t(&self, k: usize) -> usize {
        (k + 1) % self.num_vertices()
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::Linear(m) => write!(f, "C_{m}"),
            BlockKind::Cyclic(m) => write!(f, "C~_{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoBlock {
    pub id: usize,
    pub kind: BlockKind,
    /// Parent arrow of model arrow k.
    pub arrows: Vec<usize>,
    /// Parent vertex (1-based) of model vertex k.
    pub vertices: Vec<usize>,
}

impl RhoBlock {
    pub fn parent_arrow(&self, k: usize) -> usize {
        self.arrows[k]
    }

    pub fn parent_vertex(&self, k: usize) -> usize {
        self.vertices[k]
    }
}

/// Arrow `b` with `ba` in I.
fn rel_next(alg: &GentleAlgebra, a: usize) -> Option<usize> {
    (0..alg.num_arrows()).find(|&b| alg.is_rel(b, a))
}

fn rel_prev(alg: &GentleAlgebra, a: usize) -> Option<usize> {
    (0..alg.num_arrows()).find(|&c| alg.is_rel(a, c))
}

pub fn rho_blocks(alg: &GentleAlgebra) -> Result<Vec<RhoBlock>> {
    let m = alg.num_arrows();
    let mut used = vec![false; m];
    let mut out = Vec::new();
    // chains start at arrows without a relation predecessor
    for start in 0..m {
        if rel_prev(alg, start).is_some() {
            continue;
        }
        let mut chain = vec![start];
        used[start] = true;
        let mut a = start;
        while let Some(b) = rel_next(alg, a) {
            if used[b] {
                return Err(Error::UnclassifiableBlock(format!("arrow {} reached twice", alg.arrow_id(b))));
            }
            used[b] = true;
            chain.push(b);
            a = b;
        }
        let mut vertices: Vec<usize> = chain.iter().map(|&a| alg.s(a)).collect();
        vertices.push(alg.t(*chain.last().unwrap()));
        out.push(RhoBlock { id: 0, kind: BlockKind::Linear(chain.len() + 1), arrows: chain, vertices });
    }
    for start in 0..m {
        if used[start] {
            continue;
        }
        let mut cycle = vec![start];
        used[start] = true;
        let mut a = start;
        loop {
            let b = rel_next(alg, a).ok_or_else(|| {
                Error::UnclassifiableBlock(format!("open relation chain through {}", alg.arrow_id(a)))
            })?;
            if b == start {
                break;
            }
            if used[b] {
                return Err(Error::UnclassifiableBlock(format!("arrow {} reached twice", alg.arrow_id(b))));
            }
            used[b] = true;
            cycle.push(b);
            a = b;
        }
        let vertices = cycle.iter().map(|&a| alg.s(a)).collect();
        out.push(RhoBlock { id: 0, kind: BlockKind::Cyclic(cycle.len()), arrows: cycle, vertices });
    }
    for v in 1..=alg.n() {
        if alg.quiver.starting_at(v).is_empty() && alg.quiver.ending_at(v).is_empty() {
            out.push(RhoBlock { id: 0, kind: BlockKind::Linear(1), arrows: vec![], vertices: vec![v] });
        }
    }
    for (i, b) in out.iter_mut().enumerate() {
        b.id = i;
    }
    Ok(out)
}

pub fn transport_dimvec(block: &RhoBlock, d: &[usize], n: usize) -> Result<Vec<usize>> {
    if d.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: d.len() });
    }
    Ok(block.vertices.iter().map(|&v| d[v - 1]).collect())
}

/// Pull an arrow-indexed function (e.g. a rank function) back to the model.
pub fn transport_arrows<T: Clone>(block: &RhoBlock, r: &[T]) -> Vec<T> {
    block.arrows.iter().map(|&a| r[a].clone()).collect()
}

/// The model algebra C_m or C~_m with arrows named a1, a2, ...
pub fn model_algebra(kind: BlockKind) -> GentleAlgebra {
    let m = kind.num_vertices();
    let k = kind.num_arrows();
    let arrows = (0..k)
        .map(|i| (format!("a{}", i + 1), kind.model_s(i) + 1, kind.model_t(i) + 1))
        .collect::<Vec<_>>();
    let q = Quiver::new(m, arrows.iter().map(|(id, s, t)| (id.as_str(), *s, *t)).collect());
    let mut rels = Vec::new();
    for i in 0..k {
        let j = i + 1;
        if j < k {
            rels.push((j, i));
        } else if matches!(kind, BlockKind::Cyclic(_)) {
            rels.push((0, i));
        }
    }
    validate_gentle_idx(q, rels).expect("model algebras are gentle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn linear_path() {
        let a = catalog::linear(4);
        let b = rho_blocks(&a).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.kind == BlockKind::Linear(2)));
    }

    #[test]
    fn torus_blocks() {
        let b = rho_blocks(&catalog::torus()).unwrap();
        let mut sizes: Vec<usize> = b.iter().map(|x| x.kind.num_vertices()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![3, 3, 2]);
    }

    #[test]
    fn wheel_is_c8() {
        let a = catalog::wheel();
        let b = rho_blocks(&a).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BlockKind::Linear(8));
        let d = [11, 12, 13, 14, 15];
        assert_eq!(transport_dimvec(&b[0], &d, 5).unwrap(), vec![11, 12, 13, 14, 15, 13, 11, 15]);
    }

    #[test]
    fn two_cycle_one_relation() {
        let b = rho_blocks(&catalog::two_cycle()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BlockKind::Linear(3));
        assert_eq!(b[0].vertices, vec![1, 2, 1]);
    }

    #[test]
    fn models() {
        let c1 = model_algebra(BlockKind::Cyclic(1));
        assert_eq!(c1.relations.len(), 1);
        let c4 = model_algebra(BlockKind::Linear(4));
        assert_eq!(c4.relations.len(), 2);
        let b = rho_blocks(&c4).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BlockKind::Linear(4));
    }
}
