//! Exact rational roots of univariate polynomials: square-free part,
//! roots modulo a small prime, Hensel lifting and rational reconstruction.

use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = &r[k + i] - &c * bi;
            }
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Scale to coprime integer coefficients.
fn primitive(p: &Poly) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(p: &[u64], x: u64, m: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (acc * x + c) % m)
}

fn gcd_mod(a: &[u64], b: &[u64], m: u64) -> usize {
    let norm = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    };
    let (mut a, mut b) = (norm(a.to_vec()), norm(b.to_vec()));
    while !b.is_empty() {
        let inv = pow(*b.last().unwrap(), m - 2);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % m;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + m - c * bi % m) % m;
            }
            a = norm(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn eval_big(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > *bound {
        return None;
    }
    if s1.is_negative() {
        Some((-r1, -s1))
    } else {
        Some((r1, s1))
    }
}

const PRIMES: [u64; 8] = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079];

/// No repeated factors.
pub fn is_square_free(p: &[Q]) -> bool {
    let p: Poly = trim(p.iter().map(|c| c.to_big()).collect());
    gcd(&p, &derivative(&p)).len() <= 1
}

/// All distinct rational roots, in increasing order.
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let p: Poly = trim(p.iter().map(|c| c.to_big()).collect());
    if p.len() <= 1 {
        return vec![];
    }
    let mut roots = Vec::new();
    let d = derivative(&p);
    let g = gcd(&p, &d);
    let (mut sf, _) = divmod(&p, &g);
    if sf[0].is_zero() {
        roots.push(Q::zero());
        sf.remove(0);
    }
    let s = primitive(&sf);
    let deg = s.len() - 1;
    if deg == 0 {
        return roots;
    }
    let bound = s[0].abs().max(s[deg].abs());
    let target = &bound * &bound * BigInt::from(2);
    for &pr in &PRIMES {
        let pb = BigInt::from(pr);
        if (&s[deg] % &pb).is_zero() {
            continue;
        }
        let sm: Vec<u64> = s.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        let dm: Vec<u64> = (1..=deg).map(|i| (sm[i] * i as u64) % pr).collect();
        if gcd_mod(&sm, &dm, pr) != 0 {
            continue;
        }
        let ds: Vec<BigInt> = (1..=deg).map(|i| &s[i] * BigInt::from(i)).collect();
        for r in 0..pr {
            if eval_mod(&sm, r, pr) != 0 {
                continue;
            }
            let mut x = BigInt::from(r);
            let mut m = pb.clone();
            while m <= target {
                m = &m * &m;
                let fx = eval_big(&s, &x, &m);
                let dx = eval_big(&ds, &x, &m);
                let inv = dx.extended_gcd(&m).x.mod_floor(&m);
                x = (&x - fx * inv).mod_floor(&m);
            }
            if let Some((a, b)) = reconstruct(&x, &m, &bound) {
                let cand = BigRational::new(a, b);
                let val = s.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                if val.is_zero() {
                    let q = Q::from(cand);
                    if !roots.contains(&q) {
                        roots.push(q);
                    }
                }
            }
        }
        roots.sort();
        return roots;
    }
    panic!("no usable prime for root finding")
}
