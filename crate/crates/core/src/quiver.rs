//! Quivers with length-two monomial relations and gentleness checks.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    #[serde(rename = "from")]
    pub source: usize,
    #[serde(rename = "to")]
    pub target: usize,
}

/// Vertices are `1..=n`; arrows are referred to by their index in `arrows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(&str, usize, usize)>) -> Quiver {
        Quiver {
            n,
            arrows: arrows
                .into_iter()
                .map(|(id, s, t)| Arrow { id: id.to_string(), source: s, target: t })
                .collect(),
        }
    }

    pub fn s(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn t(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn starting_at(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.s(a) == v).collect()
    }

    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.t(a) == v).collect()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    fn check_basic(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::NotGentle(format!("duplicate arrow id {}", a.id)));
            }
            for v in [a.source, a.target] {
                if v == 0 || v > self.n {
                    return Err(Error::NotGentle(format!("arrow {} has vertex {} outside 1..{}", a.id, v, self.n)));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        while let Some(v) = queue.pop_front() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen[1..].iter().all(|&b| b)
    }
}

/// A gentle algebra KQ/I.  A relation `(a, b)` means the path `ab` (first
/// `b`, then `a`) lies in I, so `s(a) = t(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentleAlgebra {
    pub quiver: Quiver,
    pub relations: BTreeSet<(usize, usize)>,
    pub sigma: Vec<i8>,
    pub epsilon: Vec<i8>,
}

impl GentleAlgebra {
    pub fn n(&self) -> usize {
        self.quiver.n
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn s(&self, a: usize) -> usize {
        self.quiver.s(a)
    }

    pub fn t(&self, a: usize) -> usize {
        self.quiver.t(a)
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.quiver.arrows[a].id
    }

    pub fn arrow(&self, id: &str) -> usize {
        self.quiver.arrow_index(id).unwrap_or_else(|| panic!("no arrow named {id}"))
    }

    /// Is `ab` (b first) a relation?
    pub fn is_rel(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    /// The arrow `b` with `s(b) = t(a)` and `ba` not in I, if any.
    pub fn free_successor(&self, a: usize) -> Option<usize> {
        self.quiver.starting_at(self.t(a)).into_iter().find(|&b| !self.is_rel(b, a))
    }

    /// The arrow `c` with `t(c) = s(a)` and `ac` not in I, if any.
    pub fn free_predecessor(&self, a: usize) -> Option<usize> {
        self.quiver.ending_at(self.s(a)).into_iter().find(|&c| !self.is_rel(a, c))
    }

    /// Names of arrows in a relation pair, for messages.
    pub fn rel_name(&self, r: (usize, usize)) -> String {
        format!("{}{}", self.arrow_id(r.0), self.arrow_id(r.1))
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.num_arrows()).filter(|&a| self.s(a) == self.t(a)).collect()
    }
}

/// Check the gentle axioms and attach sign maps.
pub fn validate_gentle(quiver: Quiver, relations: &[(&str, &str)]) -> Result<GentleAlgebra> {
    let idx: HashMap<&str, usize> =
        quiver.arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    let mut rels = Vec::new();
    for (a, b) in relations {
        let ia = *idx.get(a).ok_or_else(|| Error::UnknownArrow(a.to_string()))?;
        let ib = *idx.get(b).ok_or_else(|| Error::UnknownArrow(b.to_string()))?;
        rels.push((ia, ib));
    }
    validate_gentle_idx(quiver, rels)
}

pub fn validate_gentle_idx(quiver: Quiver, rels: Vec<(usize, usize)>) -> Result<GentleAlgebra> {
    quiver.check_basic()?;
    let relations: BTreeSet<(usize, usize)> = rels.into_iter().collect();
    for &(a, b) in &relations {
        if quiver.s(a) != quiver.t(b) {
            return Err(Error::NonComposableRelation(quiver.arrows[a].id.clone(), quiver.arrows[b].id.clone()));
        }
    }
    for v in 1..=quiver.n {
        let out = quiver.starting_at(v);
        let inc = quiver.ending_at(v);
        if out.len() > 2 {
            return Err(Error::NotGentle(format!("axiom (i): {} arrows start at vertex {}", out.len(), v)));
        }
        if inc.len() > 2 {
            return Err(Error::NotGentle(format!("axiom (i): {} arrows end at vertex {}", inc.len(), v)));
        }
        // (iii): two arrows a != b ending at v, c starting at v
        if inc.len() == 2 {
            for &c in &out {
                let n = inc.iter().filter(|&&a| relations.contains(&(c, a))).count();
                if n != 1 {
                    return Err(Error::NotGentle(format!(
                        "axiom (iii) at vertex {}: arrow {} composes into I with {} of the incoming arrows",
                        v, quiver.arrows[c].id, n
                    )));
                }
            }
        }
        // (iv): two arrows a != b starting at v, c ending at v
        if out.len() == 2 {
            for &c in &inc {
                let n = out.iter().filter(|&&a| relations.contains(&(a, c))).count();
                if n != 1 {
                    return Err(Error::NotGentle(format!(
                        "axiom (iv) at vertex {}: arrow {} composes into I with {} of the outgoing arrows",
                        v, quiver.arrows[c].id, n
                    )));
                }
            }
        }
    }
    let mut alg = GentleAlgebra { quiver, relations, sigma: vec![], epsilon: vec![] };
    check_finite_dimensional(&alg)?;
    let (sigma, epsilon) = compute_sign_maps(&alg)?;
    alg.sigma = sigma;
    alg.epsilon = epsilon;
    Ok(alg)
}

/// A gentle algebra is finite dimensional iff no cycle of arrows avoids I.
fn check_finite_dimensional(alg: &GentleAlgebra) -> Result<()> {
    for start in 0..alg.num_arrows() {
        let mut a = start;
        for _ in 0..=alg.num_arrows() {
            match alg.free_successor(a) {
                None => break,
                Some(b) if b == start => {
                    return Err(Error::InfiniteDimensional(format!(
                        "the cycle through arrow {} has no relation",
                        alg.arrow_id(start)
                    )))
                }
                Some(b) => a = b,
            }
        }
    }
    Ok(())
}

/// Sign maps by propagation over the constraint graph, free choices +1.
///
/// Variables: sigma(a) is node 2a, epsilon(a) is node 2a+1.  Every
/// constraint says two nodes carry opposite signs.
pub fn compute_sign_maps(alg: &GentleAlgebra) -> Result<(Vec<i8>, Vec<i8>)> {
    let m = alg.num_arrows();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * m];
    let mut link = |x: usize, y: usize| {
        adj[x].push(y);
        adj[y].push(x);
    };
    for a in 0..m {
        for b in a + 1..m {
            if alg.s(a) == alg.s(b) {
                link(2 * a, 2 * b);
            }
            if alg.t(a) == alg.t(b) {
                link(2 * a + 1, 2 * b + 1);
            }
        }
        for b in 0..m {
            if alg.s(a) == alg.t(b) && !alg.is_rel(a, b) {
                link(2 * a, 2 * b + 1);
            }
        }
    }
    let mut val = vec![0i8; 2 * m];
    for root in 0..2 * m {
        if val[root] != 0 {
            continue;
        }
        val[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if val[y] == 0 {
                    val[y] = -val[x];
                    queue.push_back(y);
                } else if val[y] == val[x] {
                    return Err(Error::InconsistentSigns(alg.arrow_id(y / 2).to_string()));
                }
            }
        }
    }
    let sigma = (0..m).map(|a| val[2 * a]).collect();
    let epsilon = (0..m).map(|a| val[2 * a + 1]).collect();
    Ok((sigma, epsilon))
}

/// Independent check of the three sign rules.
pub fn signs_valid(alg: &GentleAlgebra, sigma: &[i8], epsilon: &[i8]) -> bool {
    let m = alg.num_arrows();
    for a in 0..m {
        for b in 0..m {
            if a != b && alg.s(a) == alg.s(b) && sigma[a] != -sigma[b] {
                return false;
            }
            if a != b && alg.t(a) == alg.t(b) && epsilon[a] != -epsilon[b] {
                return false;
            }
            if alg.s(a) == alg.t(b) && !alg.is_rel(a, b) && sigma[a] != -epsilon[b] {
                return false;
            }
        }
    }
    true
}

/// Jacobian test: connected, loop-free, and every relation closes a
/// 3-cycle of relations.
pub fn is_jacobian(alg: &GentleAlgebra) -> bool {
    jacobian_failure(alg).is_none()
}

/// The first reason the algebra fails to be Jacobian, if any.
pub fn jacobian_failure(alg: &GentleAlgebra) -> Option<String> {
    if !alg.quiver.is_connected() {
        return Some("quiver is not connected".into());
    }
    if let Some(&a) = alg.loops().first() {
        return Some(format!("loop at {}", alg.s(a)));
    }
    for &(a, b) in &alg.relations {
        let closes = (0..alg.num_arrows()).any(|c| {
            alg.s(c) == alg.t(a) && alg.t(c) == alg.s(b) && alg.is_rel(b, c) && alg.is_rel(c, a)
        });
        if !closes {
            return Some(format!("relation {} does not close a 3-cycle", alg.rel_name((a, b))));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn torus() -> GentleAlgebra {
        let q = Quiver::new(
            4,
            vec![
                ("a1", 1, 2),
                ("b1", 1, 2),
                ("a2", 2, 3),
                ("b2", 2, 4),
                ("a3", 3, 1),
                ("b3", 4, 1),
                ("c", 3, 4),
            ],
        );
        validate_gentle(q, &[("a1", "a3"), ("a2", "a1"), ("a3", "a2"), ("b1", "b3"), ("b2", "b1"), ("b3", "b2")])
            .unwrap()
    }

    #[test]
    fn loop_and_a3() {
        let l = validate_gentle(Quiver::new(1, vec![("a", 1, 1)]), &[("a", "a")]).unwrap();
        assert!(!is_jacobian(&l));
        assert_eq!(jacobian_failure(&l).unwrap(), "loop at 1");
        let a3 = validate_gentle(Quiver::new(3, vec![("a", 2, 1), ("b", 3, 2)]), &[("a", "b")]).unwrap();
        assert!(!is_jacobian(&a3));
        assert!(signs_valid(&a3, &a3.sigma, &a3.epsilon));
    }

    #[test]
    fn three_out_is_rejected() {
        let q = Quiver::new(4, vec![("a", 1, 2), ("b", 1, 3), ("c", 1, 4)]);
        match validate_gentle(q, &[]) {
            Err(Error::NotGentle(msg)) => assert!(msg.contains("axiom (i)")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torus_is_jacobian() {
        let t = torus();
        assert!(is_jacobian(&t));
        assert!(signs_valid(&t, &t.sigma, &t.epsilon));
    }

    #[test]
    fn single_arrow_signs() {
        let a = validate_gentle(Quiver::new(2, vec![("a", 1, 2)]), &[]).unwrap();
        assert_eq!((a.sigma[0], a.epsilon[0]), (1, 1));
    }

    #[test]
    fn unrelated_loop_is_infinite() {
        let q = Quiver::new(1, vec![("a", 1, 1)]);
        assert!(matches!(validate_gentle(q, &[]), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn bad_relation() {
        let q = Quiver::new(3, vec![("a", 1, 2), ("b", 2, 3)]);
        assert!(matches!(validate_gentle(q, &[("a", "b")]), Err(Error::NonComposableRelation(..))));
    }
}
