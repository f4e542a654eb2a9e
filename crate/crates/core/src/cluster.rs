//! Signed adjacency matrices, bangle functions of curves and laminations,
//! dual Caldero-Chapoton functions, and the comparison of the two.

use crate::decompose::{decompose, Summand};
use crate::error::{Error, Result};
use crate::homological::{g_vector, DecoratedModule, WordModule};
use crate::laurent::LaurentPoly;
use crate::quiver::GentleAlgebra;
use crate::rational::Q;
use crate::schemes::generic_point;
use crate::surface::{CoefficientArrow, CoefficientQuiver, Curve, Lamination, Surface};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// b_ij = #(i -> j) - #(j -> i), so that Q_T = Q(-B).
pub fn signed_adjacency(alg: &GentleAlgebra) -> Vec<Vec<i64>> {
    let n = alg.n();
    let mut b = vec![vec![0i64; n]; n];
    for a in 0..alg.num_arrows() {
        let (i, j) = (alg.s(a) - 1, alg.t(a) - 1);
        b[i][j] += 1;
        b[j][i] -= 1;
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| b[i][j] == -b[j][i])));
    b
}

/// y_j times the x-monomial read from column j of B.
pub fn yhat(b: &[Vec<i64>], j: usize) -> LaurentPoly {
    let n = b.len();
    let x = (0..n).map(|i| b[i][j - 1]).collect();
    let mut y = vec![0; n];
    y[j - 1] = 1;
    LaurentPoly::monomial(x, y, BigInt::one())
}

/// Subsets closed under predecessors, as membership vectors, in a fixed
/// order (lexicographic on the branching "out before in").
pub fn order_coideals(q: &CoefficientQuiver) -> Vec<Vec<bool>> {
    let m = q.labels.len();
    let mut out = Vec::new();
    let mut cur: Vec<Option<bool>> = vec![None; m];
    fn consistent(q: &CoefficientQuiver, cur: &[Option<bool>]) -> bool {
        // u -> v with v in and u out is forbidden
        q.arrows.iter().all(|a| !(cur[a.to] == Some(true) && cur[a.from] == Some(false)))
    }
    fn rec(q: &CoefficientQuiver, k: usize, cur: &mut Vec<Option<bool>>, out: &mut Vec<Vec<bool>>) {
        if k == cur.len() {
            out.push(cur.iter().map(|x| x.unwrap()).collect());
            return;
        }
        for v in [false, true] {
            cur[k] = Some(v);
            if consistent(q, cur) {
                rec(q, k + 1, cur, out);
            }
        }
        cur[k] = None;
    }
    rec(q, 0, &mut cur, &mut out);
    out
}

/// Sum over order coideals I of the product of yhat over the labels in I.
pub fn coideal_sum(q: &CoefficientQuiver, b: &[Vec<i64>]) -> LaurentPoly {
    let n = b.len();
    let yh: Vec<LaurentPoly> = (1..=n).map(|j| yhat(b, j)).collect();
    let mut acc = LaurentPoly::zero(n);
    for ideal in order_coideals(q) {
        let mut t = LaurentPoly::one(n);
        for (k, &inside) in ideal.iter().enumerate() {
            if inside {
                t = t.mul(&yh[q.labels[k] - 1]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn x_monomial(g: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(g.to_vec(), vec![0; g.len()], BigInt::one())
}

/// X^T of a single curve or loop.
pub fn bangle(s: &Surface, c: &Curve) -> Result<LaurentPoly> {
    let n = s.n();
    if let Curve::Arc(j) = c {
        return Ok(LaurentPoly::x(n, *j));
    }
    let b = signed_adjacency(&s.alg);
    let q = s.coefficient_quiver(c)?;
    Ok(x_monomial(&s.shear(c)).mul(&coideal_sum(&q, &b)))
}

pub fn bangle_lamination(s: &Surface, l: &Lamination) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(s.n());
    for (c, m) in &l.entries {
        acc = acc.mul(&bangle(s, c)?.pow(*m));
    }
    Ok(acc)
}

/// Coefficient quiver of a string or band module, read from its word.
pub fn word_coefficient_quiver(alg: &GentleAlgebra, w: &WordModule) -> CoefficientQuiver {
    let (labels, letters, cyclic) = match w {
        WordModule::Str(c) => (c.basis_vertices(alg), c.letters.clone(), false),
        WordModule::Band(bw, _) => (bw.basis_vertices(alg), bw.letters.clone(), true),
    };
    let m = labels.len();
    let arrows = letters
        .iter()
        .enumerate()
        .map(|(j, l)| {
            let next = (j + 1) % m;
            // direct letters act b_{j+1} -> b_j, inverse ones b_j -> b_{j+1}
            let (from, to) = if l.inverse { (j, next) } else { (next, j) };
            CoefficientArrow { from, to, arrow: alg.arrow_id(l.arrow).to_string() }
        })
        .collect();
    CoefficientQuiver { labels, arrows, cyclic }
}

/// CC' from known summands and the g-vector of the decorated module.
pub fn cc_prime_from_summands(alg: &GentleAlgebra, summands: &[WordModule], g: &[i64]) -> LaurentPoly {
    let b = signed_adjacency(alg);
    summands.iter().fold(x_monomial(g), |acc, w| acc.mul(&coideal_sum(&word_coefficient_quiver(alg, w), &b)))
}

/// Band blocks count as several copies of their band; the Euler
/// characteristics do not depend on the parameter.
fn expand(parts: Vec<Summand>) -> Vec<WordModule> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Summand::Word(w) => out.push(w),
            Summand::BandBlock(b, t) => {
                for _ in 0..t.rows {
                    out.push(WordModule::Band(b.clone(), Q::one()));
                }
            }
        }
    }
    out
}

/// Dual Caldero-Chapoton function of a decorated module: its summands are
/// found by decomposition and their Grassmannians counted by coideals.
pub fn cc_prime(alg: &GentleAlgebra, dec: &DecoratedModule, dictionary_bound: usize, seed: u64) -> Result<LaurentPoly> {
    let summands = expand(
        decompose(alg, &dec.module, dictionary_bound, seed)
            .map_err(|e| Error::UnsupportedModule(format!("cannot decompose: {e}")))?,
    );
    Ok(cc_prime_from_summands(alg, &summands, &g_vector(alg, dec)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub equal: bool,
    pub difference: Option<String>,
    pub bangle: String,
    pub generic: String,
}

/// Compare X^T_L with CC' at a generic point of eta(L).
pub fn verify_bangle_equals_generic(s: &Surface, l: &Lamination, seed: u64) -> Result<Verdict> {
    let lhs = bangle_lamination(s, l)?;
    let z = s.eta(l)?;
    let m = generic_point(&s.alg, &z.component, seed)?;
    let bound = l.entries.iter().map(|(c, _)| s.crossing_count(c)).max().unwrap_or(0).max(1);
    let rhs = cc_prime(&s.alg, &DecoratedModule { module: m, decoration: z.v.clone() }, bound, seed)?;
    let difference = lhs.first_difference(&rhs);
    Ok(Verdict { equal: difference.is_none(), difference, bangle: lhs.to_string(), generic: rhs.to_string() })
}
