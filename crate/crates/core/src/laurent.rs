//! Laurent polynomials in x_1..x_n with polynomial coefficients in y_1..y_n.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Term key: y-exponents first, so terms sort by (y, x).
pub type Key = (Vec<u32>, Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub n: usize,
    terms: BTreeMap<Key, BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub x: Vec<i64>,
    pub y: Vec<u32>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; n], vec![0; n], BigInt::one())
    }

    pub fn monomial(x: Vec<i64>, y: Vec<u32>, c: BigInt) -> LaurentPoly {
        let n = x.len();
        assert_eq!(y.len(), n);
        let mut p = LaurentPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert((y, x), c);
        }
        p
    }

    pub fn x(n: usize, j: usize) -> LaurentPoly {
        let mut x = vec![0; n];
        x[j - 1] = 1;
        LaurentPoly::monomial(x, vec![0; n], BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &[i64], y: &[u32]) -> BigInt {
        self.terms.get(&(y.to_vec(), x.to_vec())).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, key: Key, c: BigInt) {
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n);
        let mut acc: BTreeMap<Key, BigInt> = BTreeMap::new();
        for ((y1, x1), c1) in &self.terms {
            for ((y2, x2), c2) in &other.terms {
                let y = y1.iter().zip(y2).map(|(a, b)| a + b).collect();
                let x = x1.iter().zip(x2).map(|(a, b)| a + b).collect();
                *acc.entry((y, x)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        LaurentPoly { n: self.n, terms: acc }
    }

    pub fn pow(&self, k: usize) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(self.n), |acc, _| acc.mul(self))
    }

    /// Substitute integers for some of the y-variables.
    pub fn specialize_y(&self, values: &[Option<i64>]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for ((y, x), c) in &self.terms {
            let mut c = c.clone();
            let mut y2 = y.clone();
            for (j, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    c *= BigInt::from(*v).pow(y[j]);
                    y2[j] = 0;
                }
            }
            out.add_term((y2, x.clone()), c);
        }
        out
    }

    /// All y-variables set to 1.
    pub fn at_y_one(&self) -> LaurentPoly {
        self.specialize_y(&vec![Some(1); self.n])
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|((y, x), c)| TermJson { coeff: c.to_string(), x: x.clone(), y: y.clone() }).collect()
    }

    /// First term on which two polynomials disagree.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<String> {
        let keys: std::collections::BTreeSet<&Key> = self.terms.keys().chain(other.terms.keys()).collect();
        for k in keys {
            let a = self.terms.get(k).cloned().unwrap_or_else(BigInt::zero);
            let b = other.terms.get(k).cloned().unwrap_or_else(BigInt::zero);
            if a != b {
                let m = LaurentPoly::monomial(k.1.clone(), k.0.clone(), BigInt::one());
                return Some(format!("coefficient of {m}: {a} vs {b}"));
            }
        }
        None
    }
}

fn write_vars(f: &mut fmt::Formatter<'_>, name: &str, exps: impl Iterator<Item = i64>, first: &mut bool) -> fmt::Result {
    for (i, e) in exps.enumerate() {
        if e == 0 {
            continue;
        }
        if !*first {
            write!(f, " ")?;
        }
        *first = false;
        if e == 1 {
            write!(f, "{name}{}", i + 1)?;
        } else {
            write!(f, "{name}{}^{e}", i + 1)?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((y, x), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let constant = x.iter().all(|&e| e == 0) && y.iter().all(|&e| e == 0);
            if constant {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "{c} * ")?;
            let mut first = true;
            write_vars(f, "x", x.iter().cloned(), &mut first)?;
            write_vars(f, "y", y.iter().map(|&e| e as i64), &mut first)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x1 = LaurentPoly::x(2, 1);
        let x2 = LaurentPoly::x(2, 2);
        let inv = LaurentPoly::monomial(vec![-1, -1], vec![0, 0], BigInt::one());
        let p = x1.pow(2).add(&x2.pow(2)).add(&LaurentPoly::one(2)).mul(&inv);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.to_string(), "1 * x1^-1 x2^-1 + 1 * x1^-1 x2 + 1 * x1 x2^-1");
        let q = p.mul(&p);
        assert_eq!(q.coefficient(&[0, 0], &[0, 0]), BigInt::from(2));
        let d = p.add(&LaurentPoly::monomial(vec![1, -1], vec![0, 0], BigInt::from(-1)));
        assert_eq!(d.num_terms(), 2);
        assert!(p.first_difference(&d).is_some());
    }

    #[test]
    fn specialization() {
        let p = LaurentPoly::monomial(vec![1, 0], vec![2, 1], BigInt::from(3));
        let s = p.specialize_y(&[Some(2), None]);
        assert_eq!(s.coefficient(&[1, 0], &[0, 1]), BigInt::from(12));
    }
}
