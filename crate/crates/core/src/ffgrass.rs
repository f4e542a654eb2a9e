//! Point counts of quiver Grassmannians of factor modules over prime
//! fields, and Euler characteristics recovered by interpolation at q = 1.
//! Slow; meant as a check on coideal counting for small modules.

use crate::error::{Error, Result};
use crate::quiver::GentleAlgebra;
use crate::rational::Q;
use crate::rep::Representation;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn reduce(q: &Q, p: u64) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p);
    let num = q.numer() % &pb;
    let den = q.denom() % &pb;
    if den.is_zero() {
        return Err(Error::ConsistencyFailure(format!("denominator vanishes mod {p}")));
    }
    let num = ((num + &pb) % &pb).to_u64().unwrap();
    let den = ((den + &pb) % &pb).to_u64().unwrap();
    Ok(num * inv(den, p) % p)
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row echelon rank of a list of vectors mod p.
fn rank(vecs: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vecs.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    rows[i][k] = (rows[i][k] + p - f * rows[r][k] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// All k-dimensional subspaces of F_p^d, as lists of basis vectors.
fn subspaces(d: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    // choose pivot columns, then fill the free entries of the reduced echelon form
    for pivots in itertools::Itertools::combinations(0..d, k) {
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..d {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let total = (p as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = (c % p as usize) as u64;
                c /= p as usize;
            }
            out.push(rows);
        }
    }
    out
}

/// Number of submodules of M over F_p, by dimension vector.
pub fn count_submodules(alg: &GentleAlgebra, m: &Representation, p: u64) -> Result<BTreeMap<Vec<usize>, u64>> {
    let n = alg.n();
    let mats: Vec<Vec<Vec<u64>>> = (0..alg.num_arrows())
        .map(|a| {
            let mat = &m.mats[a];
            (0..mat.rows).map(|i| (0..mat.cols).map(|j| reduce(&mat[(i, j)], p)).collect::<Result<Vec<_>>>()).collect()
        })
        .collect::<Result<_>>()?;
    let choices: Vec<Vec<Vec<Vec<u64>>>> =
        (0..n).map(|v| (0..=m.dims[v]).flat_map(|k| subspaces(m.dims[v], k, p)).collect()).collect();
    let mut counts = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn apply(mat: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
        mat.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b % p).sum::<u64>() % p).collect()
    }
    fn rec(
        alg: &GentleAlgebra,
        mats: &[Vec<Vec<u64>>],
        choices: &[Vec<Vec<Vec<u64>>>],
        chosen: &mut Vec<usize>,
        p: u64,
        counts: &mut BTreeMap<Vec<usize>, u64>,
    ) {
        let v = chosen.len();
        if v == choices.len() {
            let dims = chosen.iter().enumerate().map(|(i, &c)| choices[i][c].len()).collect();
            *counts.entry(dims).or_insert(0) += 1;
            return;
        }
        for c in 0..choices[v].len() {
            chosen.push(c);
            // arrows whose ends are both chosen and one of them is v + 1
            let ok = (0..alg.num_arrows()).all(|a| {
                let (s, t) = (alg.s(a) - 1, alg.t(a) - 1);
                if s.max(t) != v {
                    return true;
                }
                let us = &choices[s][chosen[s]];
                let ut = &choices[t][chosen[t]];
                us.iter().all(|u| {
                    let img = apply(&mats[a], u, p);
                    let mut vecs = ut.clone();
                    vecs.push(img);
                    rank(&vecs, p) == ut.len()
                })
            });
            if ok {
                rec(alg, mats, choices, chosen, p, counts);
            }
            chosen.pop();
        }
    }
    rec(alg, &mats, &choices, &mut chosen, p, &mut counts);
    Ok(counts)
}

/// Euler characteristics of the Grassmannians of factor modules, keyed by
/// the dimension vector of the factor.
pub fn factor_euler_characteristics(alg: &GentleAlgebra, m: &Representation) -> Result<BTreeMap<Vec<usize>, i64>> {
    let d = &m.dims;
    // degree of the counting polynomial is at most the dimension of the
    // ambient product of Grassmannians
    let max_deg = d.iter().map(|&x| (x / 2) * (x - x / 2)).sum::<usize>();
    let npts = max_deg + 2;
    if npts > PRIMES.len() {
        return Err(Error::UnsupportedModule("module too large for the finite field oracle".into()));
    }
    let tables: Vec<BTreeMap<Vec<usize>, u64>> =
        PRIMES[..npts].iter().map(|&p| count_submodules(alg, m, p)).collect::<Result<_>>()?;
    let mut keys: Vec<Vec<usize>> = tables.iter().flat_map(|t| t.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for sub in keys {
        let e: Vec<usize> = d.iter().zip(&sub).map(|(a, b)| a - b).collect();
        let deg: usize = d.iter().zip(&sub).map(|(&a, &b)| b * (a - b)).sum();
        let pts: Vec<(Q, Q)> = PRIMES[..npts]
            .iter()
            .zip(&tables)
            .map(|(&p, t)| (Q::from_int(p as i64), Q::from_int(*t.get(&sub).unwrap_or(&0) as i64)))
            .collect();
        // interpolate through deg + 1 points, check the rest
        let fit = &pts[..deg + 1];
        let eval = |x: &Q| lagrange(fit, x);
        for (x, y) in &pts[deg + 1..] {
            if eval(x) != *y {
                return Err(Error::ConsistencyFailure(format!("point count for {e:?} is not polynomial of degree {deg}")));
            }
        }
        let chi = eval(&Q::one());
        let chi = chi.as_i64().ok_or_else(|| Error::ConsistencyFailure("non-integral Euler characteristic".into()))?;
        if chi != 0 {
            out.insert(e, chi);
        }
    }
    Ok(out)
}

fn lagrange(pts: &[(Q, Q)], x: &Q) -> Q {
    let mut acc = Q::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                term = &term * &(&(x - xj) / &(xi - xj));
            }
        }
        acc = &acc + &term;
    }
    acc
}
