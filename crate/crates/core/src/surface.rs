//! Triangulated unpunctured marked surfaces, the algebra A_T, curves and
//! loops as crossing sequences, shear coordinates and laminations.
//!
//! A curve is stored as a path in the dual graph of the triangulation:
//! the triangles it passes through, the arcs it crosses in between, and
//! the corners where it starts and ends.  Reduced paths are exactly the
//! curves in minimal position with respect to T.

use crate::error::{Error, Result};
use crate::homological::{g_vector, hom_dim, tau_dtr, DecoratedModule};
use crate::quiver::{validate_gentle_idx, GentleAlgebra, Quiver};
use crate::rational::Q;
use crate::rep::{band_module, string_module, Representation};
use crate::schemes::{components, generic_point, is_tau_reduced, Component, DecoratedComponent};
use crate::words::{canonical_band, canonical_string, BandWord, Letter, StringWord};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    /// internal arc, numbered 1..n like the vertices of Q_T
    Arc(usize),
    /// boundary segment, 0-based
    Boundary(usize),
}

/// A corner: vertex v_i of triangle t, between sides s_{i-1} and s_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Corner {
    pub tri: usize,
    pub vertex: usize,
}

/// Raw triangulation file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSpec {
    pub internal_arcs: Vec<String>,
    pub boundary_segments: Vec<String>,
    pub triangles: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrow_names: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub arc_names: Vec<String>,
    pub boundary_names: Vec<String>,
    /// sides of each triangle in counterclockwise order; side s_i runs
    /// from vertex v_i to v_{i+1}
    pub triangles: Vec<[Side; 3]>,
    /// marked point of each corner
    pub point: Vec<[usize; 3]>,
    pub num_points: usize,
    pub genus: usize,
    pub boundary_components: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidTriangulation(msg.into())
}

impl Triangulation {
    pub fn from_spec(spec: &TriangulationSpec) -> Result<Triangulation> {
        let mut lookup = BTreeMap::new();
        for (i, a) in spec.internal_arcs.iter().enumerate() {
            if lookup.insert(a.clone(), Side::Arc(i + 1)).is_some() {
                return Err(bad(format!("duplicate edge {a}")));
            }
        }
        for (i, b) in spec.boundary_segments.iter().enumerate() {
            if lookup.insert(b.clone(), Side::Boundary(i)).is_some() {
                return Err(bad(format!("duplicate edge {b}")));
            }
        }
        let triangles = spec
            .triangles
            .iter()
            .map(|t| {
                let mut out = [Side::Boundary(0); 3];
                for k in 0..3 {
                    out[k] = *lookup.get(&t[k]).ok_or_else(|| bad(format!("unknown edge {}", t[k])))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(spec.internal_arcs.clone(), spec.boundary_segments.clone(), triangles)
    }

    pub fn new(arc_names: Vec<String>, boundary_names: Vec<String>, triangles: Vec<[Side; 3]>) -> Result<Triangulation> {
        let n = arc_names.len();
        let nb = boundary_names.len();
        let mut arc_uses = vec![Vec::new(); n + 1];
        let mut bd_uses = vec![Vec::new(); nb];
        for (t, sides) in triangles.iter().enumerate() {
            for k in 0..3 {
                if sides[(k + 1) % 3] == sides[k] || sides[(k + 2) % 3] == sides[k] {
                    return Err(bad(format!("triangle {t} repeats a side")));
                }
                match sides[k] {
                    Side::Arc(j) if (1..=n).contains(&j) => arc_uses[j].push((t, k)),
                    Side::Boundary(b) if b < nb => bd_uses[b].push((t, k)),
                    _ => return Err(bad(format!("triangle {t} uses an unknown edge"))),
                }
            }
        }
        for j in 1..=n {
            if arc_uses[j].len() != 2 {
                return Err(bad(format!("arc {} lies in {} triangles", arc_names[j - 1], arc_uses[j].len())));
            }
        }
        for b in 0..nb {
            if bd_uses[b].len() != 1 {
                return Err(bad(format!("boundary segment {} lies in {} triangles", boundary_names[b], bd_uses[b].len())));
            }
        }
        // glue corners: side s_i runs v_i -> v_{i+1}; the two copies of an
        // arc run in opposite directions
        let f = triangles.len();
        let mut uf = UnionFind((0..3 * f).collect());
        let slot = |t: usize, i: usize| 3 * t + i % 3;
        for j in 1..=n {
            let (t1, i) = arc_uses[j][0];
            let (t2, k) = arc_uses[j][1];
            uf.union(slot(t1, i), slot(t2, k + 1));
            uf.union(slot(t1, i + 1), slot(t2, k));
        }
        let mut ids = BTreeMap::new();
        let mut point = vec![[0usize; 3]; f];
        for t in 0..f {
            for i in 0..3 {
                let r = uf.find(slot(t, i));
                let next = ids.len();
                point[t][i] = *ids.entry(r).or_insert(next);
            }
        }
        let num_points = ids.len();
        // boundary components: follow segments head to tail
        let mut start_of = vec![usize::MAX; num_points];
        let mut end_of = vec![0; nb];
        for b in 0..nb {
            let (t, i) = bd_uses[b][0];
            let p = point[t][i];
            if start_of[p] != usize::MAX {
                return Err(bad("a marked point starts two boundary segments"));
            }
            start_of[p] = b;
            end_of[b] = point[t][(i + 1) % 3];
        }
        if start_of.iter().any(|&b| b == usize::MAX) {
            return Err(bad("a marked point lies in the interior"));
        }
        let mut seen = vec![false; nb];
        let mut comps = 0;
        for b in 0..nb {
            if seen[b] {
                continue;
            }
            comps += 1;
            let mut c = b;
            while !seen[c] {
                seen[c] = true;
                c = start_of[end_of[c]];
            }
        }
        if 3 * f != 2 * n + nb {
            return Err(bad("edge and triangle counts do not match"));
        }
        // connectivity of the dual graph
        let mut tuf = UnionFind((0..f).collect());
        for j in 1..=n {
            tuf.union(arc_uses[j][0].0, arc_uses[j][1].0);
        }
        let root = tuf.find(0);
        if (0..f).any(|t| tuf.find(t) != root) {
            return Err(bad("surface is not connected"));
        }
        // chi = V - E + F = 2 - 2g - b
        let chi = num_points as i64 - (n + nb) as i64 + f as i64;
        let two_g = 2 - comps as i64 - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(bad("Euler characteristic is inconsistent"));
        }
        let genus = (two_g / 2) as usize;
        if n as i64 != 6 * genus as i64 + 3 * comps as i64 + num_points as i64 - 6 {
            return Err(bad("arc count does not match 6g + 3b + |M| - 6"));
        }
        Ok(Triangulation { arc_names, boundary_names, triangles, point, num_points, genus, boundary_components: comps })
    }

    pub fn n(&self) -> usize {
        self.arc_names.len()
    }

    pub fn to_spec(&self, arrow_names: Option<Vec<String>>) -> TriangulationSpec {
        let name = |s: Side| match s {
            Side::Arc(j) => self.arc_names[j - 1].clone(),
            Side::Boundary(b) => self.boundary_names[b].clone(),
        };
        TriangulationSpec {
            internal_arcs: self.arc_names.clone(),
            boundary_segments: self.boundary_names.clone(),
            triangles: self.triangles.iter().map(|t| [name(t[0]), name(t[1]), name(t[2])]).collect(),
            arrow_names,
        }
    }

    pub fn arc_index(&self, name: &str) -> Option<usize> {
        self.arc_names.iter().position(|a| a == name).map(|i| i + 1)
    }

    /// Position of a side in a triangle.
    pub fn pos(&self, t: usize, s: Side) -> Option<usize> {
        self.triangles[t].iter().position(|&x| x == s)
    }

    /// The two (triangle, position) slots of an arc.
    pub fn slots(&self, j: usize) -> [(usize, usize); 2] {
        let mut out = Vec::with_capacity(2);
        for (t, sides) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if sides[k] == Side::Arc(j) {
                    out.push((t, k));
                }
            }
        }
        [out[0], out[1]]
    }

    /// Triangle on the other side of arc j.
    pub fn across(&self, j: usize, t: usize) -> usize {
        let [a, b] = self.slots(j);
        if a.0 == t {
            b.0
        } else {
            a.0
        }
    }

    /// Does the orientation rule give an arrow x -> y inside triangle t?
    pub fn points_to(&self, t: usize, x: Side, y: Side) -> bool {
        match (self.pos(t, x), self.pos(t, y)) {
            (Some(px), Some(py)) => px == (py + 1) % 3,
            _ => false,
        }
    }

    /// Corners around a marked point, counterclockwise from the boundary
    /// segment that leaves it, with the arcs separating them.
    pub fn fan(&self, p: usize) -> (Vec<Corner>, Vec<usize>) {
        let mut start = None;
        for (t, sides) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                if matches!(sides[i], Side::Boundary(_)) && self.point[t][i] == p {
                    start = Some(Corner { tri: t, vertex: i });
                }
            }
        }
        let mut c = start.expect("every marked point is on the boundary");
        let mut corners = vec![c];
        let mut arcs = Vec::new();
        loop {
            let side = self.triangles[c.tri][(c.vertex + 2) % 3];
            match side {
                Side::Boundary(_) => break,
                Side::Arc(j) => {
                    let t2 = self.across(j, c.tri);
                    let k = self.pos(t2, side).unwrap();
                    c = Corner { tri: t2, vertex: k };
                    arcs.push(j);
                    corners.push(c);
                }
            }
        }
        (corners, arcs)
    }

    /// The same marked point seen from the triangle across arc j.
    fn corner_across(&self, c: Corner, j: usize) -> Corner {
        let k = self.pos(c.tri, Side::Arc(j)).unwrap();
        let t2 = self.across(j, c.tri);
        let k2 = self.pos(t2, Side::Arc(j)).unwrap();
        if c.vertex == k {
            Corner { tri: t2, vertex: (k2 + 1) % 3 }
        } else {
            debug_assert_eq!(c.vertex, (k + 1) % 3);
            Corner { tri: t2, vertex: k2 }
        }
    }

    fn incident(&self, c: Corner, j: usize) -> bool {
        let k = self.pos(c.tri, Side::Arc(j)).unwrap();
        c.vertex == k || c.vertex == (k + 1) % 3
    }

    fn opposite_corner(&self, t: usize, j: usize) -> Corner {
        let k = self.pos(t, Side::Arc(j)).unwrap();
        Corner { tri: t, vertex: (k + 2) % 3 }
    }
}

// ---------------------------------------------------------------------------
// Q_T

/// A_T together with the arrow carried by each pair of sides.
#[derive(Clone, Debug)]
pub struct Surface {
    pub tri: Triangulation,
    pub alg: GentleAlgebra,
    /// arrow_at[t][k]: the arrow s_{k+1} -> s_k of triangle t
    pub arrow_at: Vec<[Option<usize>; 3]>,
}

pub fn build_qt(spec: &TriangulationSpec) -> Result<Surface> {
    let tri = Triangulation::from_spec(spec)?;
    build_qt_from(tri, spec.arrow_names.clone())
}

pub fn build_qt_from(tri: Triangulation, arrow_names: Option<Vec<String>>) -> Result<Surface> {
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut arrow_at = vec![[None; 3]; tri.triangles.len()];
    let mut rels = Vec::new();
    for (t, sides) in tri.triangles.iter().enumerate() {
        for k in 0..3 {
            if let (Side::Arc(x), Side::Arc(y)) = (sides[(k + 1) % 3], sides[k]) {
                arrow_at[t][k] = Some(arrows.len());
                arrows.push((x, y));
            }
        }
        if let [Some(a0), Some(a1), Some(a2)] = arrow_at[t] {
            // a_k follows a_{k+1}
            rels.push((a0, a1));
            rels.push((a1, a2));
            rels.push((a2, a0));
        }
    }
    let names: Vec<String> = match arrow_names {
        Some(v) if v.len() == arrows.len() => v,
        Some(v) => return Err(bad(format!("{} arrow names for {} arrows", v.len(), arrows.len()))),
        None => (1..=arrows.len()).map(|i| format!("a{i}")).collect(),
    };
    let q = Quiver::new(tri.n(), names.iter().zip(&arrows).map(|(s, &(x, y))| (s.as_str(), x, y)).collect());
    let alg = validate_gentle_idx(q, rels).map_err(|e| bad(format!("Q_T is not gentle: {e}")))?;
    Ok(Surface { tri, alg, arrow_at })
}

// ---------------------------------------------------------------------------
// Curves

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OpenCurve {
    pub start: Corner,
    pub crossings: Vec<usize>,
    /// tris[0] contains the start, tris[k] lies between crossings k and k+1
    pub tris: Vec<usize>,
    pub end: Corner,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Curve {
    /// an arc of T
    Arc(usize),
    Open(OpenCurve),
    /// crossings j_1..j_m; tris[k] lies between crossing k+1 and k+2 (cyclically)
    Loop { crossings: Vec<usize>, tris: Vec<usize> },
}

/// Curve file syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSpec {
    Arc(String),
    Open {
        crossings: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start_triangle: Option<usize>,
    },
    Loop {
        crossings: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start_triangle: Option<usize>,
    },
}

fn seq_err(msg: impl Into<String>) -> Error {
    Error::InconsistentSequence(msg.into())
}

impl Surface {
    pub fn n(&self) -> usize {
        self.tri.n()
    }

    fn arc_ids(&self, names: &[String]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|s| self.tri.arc_index(s).ok_or_else(|| seq_err(format!("unknown arc {s}"))))
            .collect()
    }

    pub fn curve_from_spec(&self, spec: &CurveSpec) -> Result<Curve> {
        match spec {
            CurveSpec::Arc(s) => Ok(Curve::Arc(self.tri.arc_index(s).ok_or_else(|| seq_err(format!("unknown arc {s}")))?)),
            CurveSpec::Open { crossings, start_triangle } => self.open_curve(&self.arc_ids(crossings)?, *start_triangle),
            CurveSpec::Loop { crossings, start_triangle } => self.loop_curve(&self.arc_ids(crossings)?, *start_triangle),
        }
    }

    pub fn curve_to_spec(&self, c: &Curve) -> CurveSpec {
        let names = |v: &[usize]| v.iter().map(|&j| self.tri.arc_names[j - 1].clone()).collect();
        match c {
            Curve::Arc(j) => CurveSpec::Arc(self.tri.arc_names[j - 1].clone()),
            Curve::Open(o) => CurveSpec::Open { crossings: names(&o.crossings), start_triangle: Some(o.tris[0]) },
            Curve::Loop { crossings, tris } => {
                CurveSpec::Loop { crossings: names(crossings), start_triangle: Some(tris[tris.len() - 1]) }
            }
        }
    }

    fn walk(&self, seq: &[usize], first: usize) -> Option<Vec<usize>> {
        let mut tris = vec![first];
        for (k, &j) in seq.iter().enumerate() {
            let t = *tris.last().unwrap();
            self.tri.pos(t, Side::Arc(j))?;
            let next = self.tri.across(j, t);
            if let Some(&j2) = seq.get(k + 1) {
                self.tri.pos(next, Side::Arc(j2))?;
            }
            tris.push(next);
        }
        Some(tris)
    }

    fn check_repeats(seq: &[usize], cyclic: bool) -> Result<()> {
        let m = seq.len();
        for k in 0..m {
            let next = if k + 1 < m {
                seq[k + 1]
            } else if cyclic && m > 1 {
                seq[0]
            } else {
                continue;
            };
            if seq[k] == next {
                return Err(Error::NotLocallyMinimal(format!("arc {} is crossed twice in a row", seq[k])));
            }
        }
        Ok(())
    }

    /// Open curve with the given crossings; the starting triangle is
    /// inferred unless both sides of the first arc fit.
    pub fn open_curve(&self, seq: &[usize], start_triangle: Option<usize>) -> Result<Curve> {
        if seq.is_empty() {
            return Err(seq_err("an open curve must cross T"));
        }
        Self::check_repeats(seq, false)?;
        let cands: Vec<Vec<usize>> = self
            .tri
            .slots(seq[0])
            .iter()
            .filter(|(t, _)| start_triangle.map_or(true, |s| s == *t))
            .filter_map(|&(t, _)| self.walk(seq, t))
            .collect();
        let tris = match cands.len() {
            0 => return Err(seq_err("consecutive arcs do not share a triangle")),
            1 => cands.into_iter().next().unwrap(),
            _ => return Err(seq_err("ambiguous sequence; give start_triangle")),
        };
        let m = seq.len();
        let start = self.tri.opposite_corner(tris[0], seq[0]);
        let end = self.tri.opposite_corner(tris[m], seq[m - 1]);
        Ok(Curve::Open(OpenCurve { start, crossings: seq.to_vec(), tris, end }))
    }

    /// Closed loop; start_triangle is the triangle before the first crossing.
    pub fn loop_curve(&self, seq: &[usize], start_triangle: Option<usize>) -> Result<Curve> {
        if seq.is_empty() {
            return Err(seq_err("a loop must cross T"));
        }
        Self::check_repeats(seq, true)?;
        let m = seq.len();
        let mut found = Vec::new();
        for (t0, _) in self.tri.slots(seq[0]) {
            if start_triangle.map_or(false, |s| s != t0) {
                continue;
            }
            let mut ext = seq.to_vec();
            ext.push(seq[0]);
            if let Some(w) = self.walk(&ext, t0) {
                // w[m] must be the triangle we started from
                if w[m] == t0 {
                    found.push(w[1..=m].to_vec());
                }
            }
        }
        // both readings may describe the same unoriented loop
        if found.len() == 2 {
            let a = self.canonical(&Curve::Loop { crossings: seq.to_vec(), tris: found[0].clone() });
            let b = self.canonical(&Curve::Loop { crossings: seq.to_vec(), tris: found[1].clone() });
            if a == b {
                found.pop();
            }
        }
        match found.len() {
            0 => Err(seq_err("sequence does not close up")),
            1 => {
                let tris = found.pop().unwrap();
                let c = Curve::Loop { crossings: seq.to_vec(), tris };
                if !self.is_primitive(&c) {
                    return Err(seq_err("loop is not primitive"));
                }
                Ok(c)
            }
            _ => Err(seq_err("ambiguous sequence; give start_triangle")),
        }
    }

    fn is_primitive(&self, c: &Curve) -> bool {
        match c {
            Curve::Loop { crossings, tris } => {
                let m = crossings.len();
                (1..m).filter(|d| m % d == 0).all(|d| {
                    !(0..m).all(|k| crossings[k] == crossings[(k + d) % m] && tris[k] == tris[(k + d) % m])
                })
            }
            _ => true,
        }
    }

    pub fn crossing_count(&self, c: &Curve) -> usize {
        match c {
            Curve::Arc(_) => 0,
            Curve::Open(o) => o.crossings.len(),
            Curve::Loop { crossings, .. } => crossings.len(),
        }
    }

    /// Representative up to reversal (and rotation for loops).
    pub fn canonical(&self, c: &Curve) -> Curve {
        match c {
            Curve::Arc(_) => c.clone(),
            Curve::Open(o) => {
                let r = reverse_open(o);
                Curve::Open(if r < *o { r } else { o.clone() })
            }
            Curve::Loop { crossings, tris } => {
                let m = crossings.len();
                let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
                // reversed loop: crossings reversed, tris shifted accordingly
                let rc: Vec<usize> = crossings.iter().rev().cloned().collect();
                let rt: Vec<usize> = (0..m).map(|k| tris[(2 * m - 2 - k) % m]).collect();
                for (cs, ts) in [(crossings.clone(), tris.clone()), (rc, rt)] {
                    for s in 0..m {
                        let c2: Vec<usize> = (0..m).map(|k| cs[(k + s) % m]).collect();
                        let t2: Vec<usize> = (0..m).map(|k| ts[(k + s) % m]).collect();
                        let cand = (c2, t2);
                        if best.as_ref().map_or(true, |b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                }
                let (crossings, tris) = best.unwrap();
                Curve::Loop { crossings, tris }
            }
        }
    }

    // -----------------------------------------------------------------------
    // Curves to modules

    fn letter(&self, t: usize, from: usize, to: usize) -> Letter {
        // arrow between crossings `from` (earlier) and `to` inside triangle t
        let pf = self.tri.pos(t, Side::Arc(from)).unwrap();
        let pt = self.tri.pos(t, Side::Arc(to)).unwrap();
        if pt == (pf + 1) % 3 {
            // to -> from
            Letter::direct(self.arrow_at[t][pf].expect("arrow between internal sides"))
        } else {
            Letter::inv(self.arrow_at[t][pt].expect("arrow between internal sides"))
        }
    }

    pub fn curve_to_module(&self, c: &Curve) -> Result<CurveModule> {
        match c {
            Curve::Arc(j) => Ok(CurveModule::NegativeSimple(*j)),
            Curve::Open(o) => {
                let m = o.crossings.len();
                if m == 1 {
                    return Ok(CurveModule::Str(canonical_string(&StringWord::trivial(o.crossings[0], 1))));
                }
                let letters =
                    (0..m - 1).map(|k| self.letter(o.tris[k + 1], o.crossings[k], o.crossings[k + 1])).collect();
                Ok(CurveModule::Str(StringWord::new(&self.alg, letters)?))
            }
            Curve::Loop { crossings, tris } => {
                let m = crossings.len();
                let letters = (0..m).map(|k| self.letter(tris[k], crossings[k], crossings[(k + 1) % m])).collect();
                Ok(CurveModule::Band(BandWord::new(&self.alg, letters)?))
            }
        }
    }

    pub fn coefficient_quiver(&self, c: &Curve) -> Result<CoefficientQuiver> {
        let (crossings, pairs, cyclic): (Vec<usize>, Vec<(usize, usize, usize)>, bool) = match c {
            Curve::Arc(_) => return Err(Error::NotOpenCurve),
            Curve::Open(o) => {
                let m = o.crossings.len();
                (o.crossings.clone(), (0..m.saturating_sub(1)).map(|k| (k, k + 1, o.tris[k + 1])).collect(), false)
            }
            Curve::Loop { crossings, tris } => {
                let m = crossings.len();
                (crossings.clone(), (0..m).map(|k| (k, (k + 1) % m, tris[k])).collect(), true)
            }
        };
        let arrows = pairs
            .into_iter()
            .map(|(i, j, t)| {
                let l = self.letter(t, crossings[i], crossings[j]);
                let (from, to) = if l.inverse { (i, j) } else { (j, i) };
                CoefficientArrow { from, to, arrow: self.alg.arrow_id(l.arrow).to_string() }
            })
            .collect();
        Ok(CoefficientQuiver { labels: crossings, arrows, cyclic })
    }

    pub fn curve_module_rep(&self, c: &Curve, lambda: &Q) -> Result<Representation> {
        match self.curve_to_module(c)? {
            CurveModule::NegativeSimple(_) => Ok(Representation::zero(&self.alg, vec![0; self.n()])),
            CurveModule::Str(s) => Ok(string_module(&self.alg, &s)),
            CurveModule::Band(b) => band_module(&self.alg, &b, lambda, 1),
        }
    }

    pub fn curve_decorated(&self, c: &Curve, lambda: &Q) -> Result<DecoratedModule> {
        match c {
            Curve::Arc(j) => Ok(DecoratedModule::negative_simple(&self.alg, *j)),
            _ => Ok(DecoratedModule::plain(self.curve_module_rep(c, lambda)?)),
        }
    }

    // -----------------------------------------------------------------------
    // Rotation

    fn rotate_start(&self, o: &OpenCurve, forward: bool) -> OpenCurve {
        let p = self.tri.point[o.start.tri][o.start.vertex];
        let (corners, arcs) = self.tri.fan(p);
        let idx = corners.iter().position(|&c| c == o.start).expect("start corner lies in its fan");
        let (mut tris, mut crossings, start) = if forward {
            // slide to the next marked point along the boundary segment leaving p
            let c0 = corners[0];
            let tris: Vec<usize> = corners[..=idx].iter().map(|c| c.tri).collect();
            let start = Corner { tri: c0.tri, vertex: (c0.vertex + 1) % 3 };
            (tris, arcs[..idx].to_vec(), start)
        } else {
            let r = corners.len() - 1;
            let cr = corners[r];
            let tris: Vec<usize> = corners[idx..].iter().rev().map(|c| c.tri).collect();
            let crossings: Vec<usize> = arcs[idx..].iter().rev().cloned().collect();
            // the boundary segment entering p is s_{v-1} of the last corner
            let start = Corner { tri: cr.tri, vertex: (cr.vertex + 2) % 3 };
            (tris, crossings, start)
        };
        tris.extend_from_slice(&o.tris[1..]);
        crossings.extend_from_slice(&o.crossings);
        let mut c = OpenCurve { start, crossings, tris, end: o.end };
        // drop crossings of arcs incident with the new starting point
        while let Some(&j) = c.crossings.first() {
            if !self.tri.incident(c.start, j) {
                break;
            }
            c.start = self.tri.corner_across(c.start, j);
            c.crossings.remove(0);
            c.tris.remove(0);
        }
        c
    }

    fn finish_open(&self, o: OpenCurve) -> Result<Curve> {
        if !o.crossings.is_empty() {
            return Ok(Curve::Open(o));
        }
        let (a, b) = (o.start.vertex, o.end.vertex);
        if o.start.tri != o.end.tri || a == b {
            return Err(seq_err("rotation produced a contractible curve"));
        }
        // side joining v_a and v_b
        let k = if (a + 1) % 3 == b { a } else { b };
        match self.tri.triangles[o.start.tri][k] {
            Side::Arc(j) => Ok(Curve::Arc(j)),
            Side::Boundary(_) => Err(seq_err("rotation produced a boundary segment")),
        }
    }

    /// Move both endpoints to the next marked point along the boundary
    /// (forward) or back (backward).
    pub fn rotate_tau(&self, c: &Curve, forward: bool) -> Result<Curve> {
        let Curve::Open(o) = c else { return Err(Error::NotOpenCurve) };
        let o = self.rotate_start(o, forward);
        let o = self.rotate_start(&reverse_open(&o), forward);
        self.finish_open(reverse_open(&o))
    }

    // -----------------------------------------------------------------------
    // Shear coordinates

    fn delta(&self, t_left: usize, left: Side, mid: usize, t_right: usize, right: Side) -> i64 {
        let m = Side::Arc(mid);
        let in_left = self.tri.points_to(t_left, left, m);
        let in_right = self.tri.points_to(t_right, right, m);
        let out_left = self.tri.points_to(t_left, m, left);
        let out_right = self.tri.points_to(t_right, m, right);
        if in_left && in_right {
            1
        } else if out_left && out_right {
            -1
        } else {
            0
        }
    }

    /// Half rotation of the start: the new start lies on a boundary
    /// segment; returns (that segment, prefix arcs, prefix triangles).
    fn half_turn(&self, start: Corner) -> (Side, Vec<usize>, Vec<usize>) {
        let p = self.tri.point[start.tri][start.vertex];
        let (corners, arcs) = self.tri.fan(p);
        let idx = corners.iter().position(|&c| c == start).unwrap();
        let c0 = corners[0];
        let seg = self.tri.triangles[c0.tri][c0.vertex];
        let tris = corners[..idx].iter().map(|c| c.tri).collect();
        (seg, arcs[..idx].to_vec(), tris)
    }

    pub fn shear(&self, c: &Curve) -> Vec<i64> {
        let n = self.n();
        let mut s = vec![0i64; n];
        match c {
            Curve::Arc(j) => s[j - 1] = 1,
            Curve::Loop { crossings, tris } => {
                let m = crossings.len();
                for k in 0..m {
                    let prev = crossings[(k + m - 1) % m];
                    let next = crossings[(k + 1) % m];
                    let tl = tris[(k + m - 1) % m];
                    let tr = tris[k];
                    s[crossings[k] - 1] += self.delta(tl, Side::Arc(prev), crossings[k], tr, Side::Arc(next));
                }
            }
            Curve::Open(o) => {
                let (seg_a, pre_a, tri_a) = self.half_turn(o.start);
                let (seg_b, pre_b, tri_b) = self.half_turn(o.end);
                // full sequence of sides and the triangles between them
                let mut sides = vec![seg_a];
                let mut between = Vec::new();
                for (k, &j) in pre_a.iter().enumerate() {
                    between.push(tri_a[k]);
                    sides.push(Side::Arc(j));
                }
                for (k, &j) in o.crossings.iter().enumerate() {
                    between.push(o.tris[k]);
                    sides.push(Side::Arc(j));
                }
                between.push(*o.tris.last().unwrap());
                for (k, &j) in pre_b.iter().enumerate().rev() {
                    sides.push(Side::Arc(j));
                    between.push(tri_b[k]);
                }
                sides.push(seg_b);
                // every crossing of the extended curve counts, fans included
                for k in 1..sides.len() - 1 {
                    let Side::Arc(j) = sides[k] else { unreachable!() };
                    s[j - 1] += self.delta(between[k - 1], sides[k - 1], j, between[k], sides[k + 1]);
                }
            }
        }
        s
    }

    // -----------------------------------------------------------------------
    // Intersections and laminations

    /// Int(c1, c2) = 0, decided through Hom into the AR translates.
    pub fn int_zero(&self, c1: &Curve, c2: &Curve) -> Result<bool> {
        let dims = |c: &Curve| -> Result<Vec<usize>> { Ok(self.curve_module_rep(c, &Q::from_int(2))?.dims) };
        match (c1, c2) {
            (Curve::Arc(_), Curve::Arc(_)) => Ok(true),
            (Curve::Arc(j), c) | (c, Curve::Arc(j)) => Ok(dims(c)?[j - 1] == 0),
            _ => {
                let m = self.curve_module_rep(c1, &Q::from_int(2))?;
                let n = self.curve_module_rep(c2, &Q::from_int(3))?;
                Ok(hom_dim(&self.alg, &m, &tau_dtr(&self.alg, &n)) == 0
                    && hom_dim(&self.alg, &n, &tau_dtr(&self.alg, &m)) == 0)
            }
        }
    }

    pub fn lamination(&self, entries: Vec<(Curve, usize)>) -> Result<Lamination> {
        let mut merged: BTreeMap<Curve, usize> = BTreeMap::new();
        for (c, m) in entries {
            if m == 0 {
                return Err(Error::InvalidLamination("multiplicity must be positive".into()));
            }
            *merged.entry(self.canonical(&c)).or_insert(0) += m;
        }
        let entries: Vec<(Curve, usize)> = merged.into_iter().collect();
        for i in 0..entries.len() {
            for j in i..entries.len() {
                if !self.int_zero(&entries[i].0, &entries[j].0)? {
                    let (a, b) = (self.describe(&entries[i].0), self.describe(&entries[j].0));
                    return Err(Error::InvalidLamination(if i == j {
                        format!("{a} crosses itself")
                    } else {
                        format!("{a} and {b} intersect")
                    }));
                }
            }
        }
        Ok(Lamination { entries })
    }

    /// Short human-readable name of a curve.
    pub fn describe(&self, c: &Curve) -> String {
        match self.curve_to_spec(c) {
            CurveSpec::Arc(a) => format!("arc {a}"),
            CurveSpec::Open { crossings, .. } => format!("open curve ({})", crossings.join(",")),
            CurveSpec::Loop { crossings, .. } => format!("loop ({})", crossings.join(",")),
        }
    }

    pub fn shear_lamination(&self, l: &Lamination) -> Vec<i64> {
        let mut s = vec![0i64; self.n()];
        for (c, m) in &l.entries {
            for (x, y) in s.iter_mut().zip(self.shear(c)) {
                *x += *m as i64 * y;
            }
        }
        s
    }

    /// The generically tau-reduced decorated component of a lamination.
    pub fn eta(&self, l: &Lamination) -> Result<DecoratedComponent> {
        let n = self.n();
        let mut d = vec![0; n];
        let mut r = vec![0; self.alg.num_arrows()];
        let mut v = vec![0; n];
        for (c, m) in &l.entries {
            match c {
                Curve::Arc(j) => v[j - 1] += m,
                _ => {
                    let rep = self.curve_module_rep(c, &Q::from_int(2))?;
                    for (x, y) in d.iter_mut().zip(&rep.dims) {
                        *x += m * y;
                    }
                    for (x, y) in r.iter_mut().zip(rep.rank_function()) {
                        *x += m * y;
                    }
                }
            }
        }
        let z = Component { d: d.clone(), r };
        if !components(&self.alg, &d)?.contains(&z) {
            return Err(Error::InvalidLamination("rank function is not maximal".into()));
        }
        if !is_tau_reduced(&self.alg, &z)? {
            return Err(Error::InvalidLamination("component is not generically tau-reduced".into()));
        }
        Ok(DecoratedComponent { component: z, v })
    }

    /// g-vector of a decorated component, read off at a generic point.
    pub fn g_of_component(&self, z: &DecoratedComponent, seed: u64) -> Result<Vec<i64>> {
        let m = generic_point(&self.alg, &z.component, seed)?;
        Ok(g_vector(&self.alg, &DecoratedModule { module: m, decoration: z.v.clone() }))
    }
}

fn reverse_open(o: &OpenCurve) -> OpenCurve {
    OpenCurve {
        start: o.end,
        crossings: o.crossings.iter().rev().cloned().collect(),
        tris: o.tris.iter().rev().cloned().collect(),
        end: o.start,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModule {
    NegativeSimple(usize),
    Str(StringWord),
    Band(BandWord),
}

impl CurveModule {
    pub fn canonical(&self) -> CurveModule {
        match self {
            CurveModule::Str(s) => CurveModule::Str(canonical_string(s)),
            CurveModule::Band(b) => CurveModule::Band(canonical_band(b)),
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientArrow {
    /// indices into labels
    pub from: usize,
    pub to: usize,
    pub arrow: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientQuiver {
    pub labels: Vec<usize>,
    pub arrows: Vec<CoefficientArrow>,
    pub cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lamination {
    pub entries: Vec<(Curve, usize)>,
}

/// All reduced open curves with at most `max_len` crossings, up to reversal.
pub fn enumerate_open_curves(s: &Surface, max_len: usize) -> Vec<Curve> {
    let mut out = std::collections::BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for j in 1..=s.n() {
        for (t, _) in s.tri.slots(j) {
            stack.push((vec![j], vec![t, s.tri.across(j, t)]));
        }
    }
    while let Some((seq, tris)) = stack.pop() {
        let m = seq.len();
        let start = s.tri.opposite_corner(tris[0], seq[0]);
        let end = s.tri.opposite_corner(tris[m], seq[m - 1]);
        out.insert(s.canonical(&Curve::Open(OpenCurve { start, crossings: seq.clone(), tris: tris.clone(), end })));
        if m == max_len {
            continue;
        }
        let t = tris[m];
        for side in s.tri.triangles[t] {
            if let Side::Arc(j) = side {
                if j != seq[m - 1] {
                    let mut s2 = seq.clone();
                    s2.push(j);
                    let mut t2 = tris.clone();
                    t2.push(s.tri.across(j, t));
                    stack.push((s2, t2));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All primitive reduced loops with at most `max_len` crossings, up to
/// rotation and reversal.
pub fn enumerate_loops(s: &Surface, max_len: usize) -> Vec<Curve> {
    let mut out = std::collections::BTreeSet::new();
    // paths starting in triangle t0 that return to t0
    for t0 in 0..s.tri.triangles.len() {
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![], vec![t0])];
        while let Some((seq, tris)) = stack.pop() {
            let m = seq.len();
            let t = tris[m];
            if m > 0 && t == t0 && seq[0] != seq[m - 1] {
                let c = Curve::Loop { crossings: seq.clone(), tris: tris[1..].to_vec() };
                if s.is_primitive(&c) {
                    out.insert(s.canonical(&c));
                }
            }
            if m == max_len {
                continue;
            }
            for side in s.tri.triangles[t] {
                if let Side::Arc(j) = side {
                    if seq.last() != Some(&j) {
                        let mut s2 = seq.clone();
                        s2.push(j);
                        let mut t2 = tris.clone();
                        t2.push(s.tri.across(j, t));
                        stack.push((s2, t2));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Random laminations built greedily from a pool of simple curves.
pub struct LaminationSampler<'a> {
    pub surface: &'a Surface,
    pub pool: Vec<Curve>,
    compatible: BTreeMap<(usize, usize), bool>,
}

impl<'a> LaminationSampler<'a> {
    pub fn new(surface: &'a Surface, max_len: usize) -> Result<LaminationSampler<'a>> {
        let mut pool: Vec<Curve> = (1..=surface.n()).map(Curve::Arc).collect();
        for c in enumerate_open_curves(surface, max_len).into_iter().chain(enumerate_loops(surface, max_len)) {
            if surface.int_zero(&c, &c)? {
                pool.push(c);
            }
        }
        Ok(LaminationSampler { surface, pool, compatible: BTreeMap::new() })
    }

    fn compatible(&mut self, i: usize, j: usize) -> Result<bool> {
        let key = (i.min(j), i.max(j));
        if let Some(&b) = self.compatible.get(&key) {
            return Ok(b);
        }
        let b = self.surface.int_zero(&self.pool[i], &self.pool[j])?;
        self.compatible.insert(key, b);
        Ok(b)
    }

    /// Up to `max_curves` pairwise compatible curves with multiplicities in 1..=max_mult.
    pub fn sample<R: rand::Rng>(&mut self, rng: &mut R, max_curves: usize, max_mult: usize) -> Result<Lamination> {
        let target = rng.gen_range(1..=max_curves);
        let mut chosen: Vec<usize> = Vec::new();
        let mut tries = 0;
        while chosen.len() < target && tries < 40 {
            tries += 1;
            let i = rng.gen_range(0..self.pool.len());
            if chosen.contains(&i) {
                continue;
            }
            let mut ok = true;
            for &j in &chosen {
                if !self.compatible(i, j)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen.push(i);
            }
        }
        let entries = chosen.iter().map(|&i| (self.pool[i].clone(), rng.gen_range(1..=max_mult))).collect();
        self.surface.lamination(entries)
    }
}

pub mod catalog {
    //! Triangulations used in tests and the example corpus.
    use super::TriangulationSpec;

    fn spec(arcs: &[&str], bd: &[&str], tris: &[[&str; 3]], names: Option<&[&str]>) -> TriangulationSpec {
        TriangulationSpec {
            internal_arcs: arcs.iter().map(|s| s.to_string()).collect(),
            boundary_segments: bd.iter().map(|s| s.to_string()).collect(),
            triangles: tris.iter().map(|t| [t[0].to_string(), t[1].to_string(), t[2].to_string()]).collect(),
            arrow_names: names.map(|v| v.iter().map(|s| s.to_string()).collect()),
        }
    }

    /// Pair of pants with one marked point on each boundary component.
    pub fn three_holed_sphere() -> TriangulationSpec {
        spec(
            &["1", "2", "3", "4", "5", "6"],
            &["b1", "b2", "b3"],
            &[["6", "2", "1"], ["6", "4", "3"], ["3", "2", "b1"], ["5", "4", "b2"], ["5", "1", "b3"]],
            Some(&["β", "α", "γ", "ξ", "ε", "η", "δ", "θ", "ι"]),
        )
    }

    /// Hexagon triangulated by the fan at one vertex.
    pub fn hexagon_fan() -> TriangulationSpec {
        spec(
            &["1", "2", "3"],
            &["b0", "b1", "b2", "b3", "b4", "b5"],
            &[["b0", "b1", "1"], ["1", "b2", "2"], ["2", "b3", "3"], ["3", "b4", "b5"]],
            None,
        )
    }

    /// Annulus with one marked point on each boundary component.
    pub fn annulus() -> TriangulationSpec {
        spec(&["1", "2"], &["outer", "inner"], &[["outer", "1", "2"], ["2", "inner", "1"]], Some(&["a", "b"]))
    }

    /// Torus with one boundary component and one marked point.
    pub fn torus_one_boundary() -> TriangulationSpec {
        spec(
            &["1", "2", "3", "4"],
            &["b"],
            &[["2", "1", "3"], ["2", "1", "4"], ["4", "3", "b"]],
            Some(&["a1", "a2", "a3", "b1", "b2", "b3", "c"]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::tau_string;
    use crate::quiver::is_jacobian;
    use crate::words::enumerate_strings;

    fn sphere() -> Surface {
        build_qt(&catalog::three_holed_sphere()).unwrap()
    }

    #[test]
    fn topology() {
        let s = sphere();
        assert_eq!((s.tri.genus, s.tri.boundary_components, s.tri.num_points), (0, 3, 3));
        let t = build_qt(&catalog::torus_one_boundary()).unwrap();
        assert_eq!((t.tri.genus, t.tri.boundary_components, t.tri.num_points), (1, 1, 1));
        let a = build_qt(&catalog::annulus()).unwrap();
        assert_eq!((a.tri.genus, a.tri.boundary_components, a.tri.num_points), (0, 2, 2));
        let h = build_qt(&catalog::hexagon_fan()).unwrap();
        assert_eq!((h.tri.genus, h.tri.boundary_components, h.tri.num_points), (0, 1, 6));
        assert!(h.alg.relations.is_empty());
        for x in [&s, &t, &h] {
            assert!(is_jacobian(&x.alg));
        }
    }

    #[test]
    fn sphere_quiver() {
        let s = sphere();
        let arrows: Vec<(String, usize, usize)> =
            (0..9).map(|a| (s.alg.arrow_id(a).to_string(), s.alg.s(a), s.alg.t(a))).collect();
        for (name, from, to) in [("α", 1, 2), ("β", 2, 6), ("γ", 6, 1), ("δ", 2, 3), ("η", 6, 3), ("ε", 3, 4), ("ξ", 4, 6), ("θ", 4, 5), ("ι", 1, 5)] {
            assert!(arrows.contains(&(name.to_string(), from, to)), "{name}");
        }
        let rels: Vec<String> = s.alg.relations.iter().map(|&r| s.alg.rel_name(r)).collect();
        let mut rels = rels;
        rels.sort();
        let mut want = vec!["βα", "γβ", "αγ", "ξε", "ηξ", "εη"];
        want.sort();
        assert_eq!(rels, want);
    }

    #[test]
    fn sigma() {
        let s = sphere();
        let sigma = s.loop_curve(&[3, 6, 1, 5, 4, 6, 2], None).unwrap();
        assert_eq!(s.shear(&sigma), vec![0, -1, 1, -1, 1, 0]);
        let m = s.curve_module_rep(&sigma, &Q::one()).unwrap();
        assert_eq!(m.dims, vec![1, 1, 1, 1, 1, 2]);
        let cq = s.coefficient_quiver(&sigma).unwrap();
        let mut got: Vec<(String, usize, usize)> =
            cq.arrows.iter().map(|a| (a.arrow.clone(), cq.labels[a.from], cq.labels[a.to])).collect();
        got.sort();
        let mut want: Vec<(String, usize, usize)> = [("η", 6, 3), ("γ", 6, 1), ("ι", 1, 5), ("θ", 4, 5), ("ξ", 4, 6), ("β", 2, 6), ("δ", 2, 3)]
            .iter()
            .map(|&(a, x, y)| (a.to_string(), x, y))
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(g_vector(&s.alg, &DecoratedModule::plain(m)), vec![0, -1, 1, -1, 1, 0]);
        // sigma is a figure eight: 6_1 is a source and 6_2 a sink of its band
        assert!(!s.int_zero(&sigma, &sigma).unwrap());
        assert!(s.lamination(vec![(sigma, 1)]).is_err());
    }

    #[test]
    fn open_curves_give_all_strings() {
        let s = sphere();
        let curves = enumerate_open_curves(&s, 5);
        let mut mods: Vec<StringWord> = curves
            .iter()
            .map(|c| match s.curve_to_module(c).unwrap().canonical() {
                CurveModule::Str(w) => w,
                other => panic!("{other:?}"),
            })
            .collect();
        mods.sort();
        mods.dedup();
        let strings: Vec<StringWord> = enumerate_strings(&s.alg, 4).into_iter().map(|c| canonical_string(&c)).collect();
        for c in &strings {
            assert!(mods.contains(c), "{}", c.display(&s.alg));
        }
    }

    #[test]
    fn shear_matches_g_on_single_curves() {
        let s = sphere();
        for c in enumerate_open_curves(&s, 4) {
            if !s.int_zero(&c, &c).unwrap() {
                continue;
            }
            let m = s.curve_decorated(&c, &Q::one()).unwrap();
            assert_eq!(s.shear(&c), g_vector(&s.alg, &m), "{:?}", s.curve_to_spec(&c));
        }
        for j in 1..=6 {
            let c = Curve::Arc(j);
            assert_eq!(s.shear(&c), g_vector(&s.alg, &s.curve_decorated(&c, &Q::one()).unwrap()));
        }
    }

    #[test]
    fn laminations_shear_is_g() {
        use rand::SeedableRng;
        let s = sphere();
        let mut sampler = LaminationSampler::new(&s, 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let l = sampler.sample(&mut rng, 3, 2).unwrap();
            let z = s.eta(&l).unwrap();
            assert_eq!(s.g_of_component(&z, 0).unwrap(), s.shear_lamination(&l));
        }
    }

    #[test]
    fn rotation_is_tau() {
        for s in [sphere(), build_qt(&catalog::hexagon_fan()).unwrap()] {
            for c in enumerate_open_curves(&s, 5) {
                let CurveModule::Str(w) = s.curve_to_module(&c).unwrap() else { unreachable!() };
                let rotated = s.rotate_tau(&c, true).unwrap();
                match tau_string(&s.alg, &w) {
                    None => assert!(matches!(rotated, Curve::Arc(_)), "{:?}", s.curve_to_spec(&c)),
                    Some(t) => {
                        let got = s.curve_to_module(&rotated).unwrap().canonical();
                        assert_eq!(got, CurveModule::Str(canonical_string(&t)), "{:?}", s.curve_to_spec(&c));
                        let back = s.rotate_tau(&rotated, false).unwrap();
                        assert_eq!(s.canonical(&back), s.canonical(&c));
                    }
                }
            }
        }
    }
}
