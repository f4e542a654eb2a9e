//! File formats: algebras, modules, triangulations and laminations as JSON,
//! and JSON renderings of results.

use crate::error::{Error, Result};
use crate::homological::WordModule;
use crate::linalg::Matrix;
use crate::quiver::{validate_gentle, Arrow, GentleAlgebra, Quiver};
use crate::rational::Q;
use crate::rep::Representation;
use crate::schemes::Component;
use crate::surface::{CurveSpec, Lamination, Surface, TriangulationSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: line {} column {}: {e}", e.line(), e.column())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile> {
        parse_json(text, "algebra file")
    }

    pub fn build(&self) -> Result<GentleAlgebra> {
        for (k, a) in self.arrows.iter().enumerate() {
            if a.source == 0 || a.source > self.vertices || a.target == 0 || a.target > self.vertices {
                return Err(Error::Parse(format!("arrows[{k}] ({}): vertex out of range 1..={}", a.id, self.vertices)));
            }
        }
        let q = Quiver { n: self.vertices, arrows: self.arrows.clone() };
        let rels: Vec<(&str, &str)> = self.relations.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        validate_gentle(q, &rels)
    }

    pub fn from_algebra(alg: &GentleAlgebra) -> AlgebraFile {
        AlgebraFile {
            vertices: alg.n(),
            arrows: alg.quiver.arrows.clone(),
            relations: alg
                .relations
                .iter()
                .map(|&(a, b)| [alg.arrow_id(a).to_string(), alg.arrow_id(b).to_string()])
                .collect(),
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<GentleAlgebra> {
    AlgebraFile::parse(text)?.build()
}

/// Rationals are written as integers or as strings "p/q".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => Ok(Q::from(s.parse::<num_bigint::BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == num_bigint::BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::from(num_rational::BigRational::new(p, q)))
        }
    }
}

impl Entry {
    fn value(&self) -> Result<Q> {
        match self {
            Entry::Int(n) => Ok(Q::from_int(*n)),
            Entry::Text(s) => parse_q(s),
        }
    }

    fn of(q: &Q) -> Entry {
        match q.as_i64() {
            Some(n) => Entry::Int(n),
            None => Entry::Text(q.to_string()),
        }
    }
}

/// A summand given by its word; bands carry a parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummandSpec {
    String(String),
    Band { word: String, lambda: Entry },
}

/// Either explicit matrices (rows of the map at each arrow) or a list of
/// string and band summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleFile {
    Matrices { dims: Vec<usize>, maps: BTreeMap<String, Vec<Vec<Entry>>> },
    Summands { summands: Vec<SummandSpec> },
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile> {
        parse_json(text, "module file")
    }

    pub fn build(&self, alg: &GentleAlgebra) -> Result<Representation> {
        match self {
            ModuleFile::Matrices { dims, maps } => {
                if dims.len() != alg.n() {
                    return Err(Error::LengthMismatch { expected: alg.n(), got: dims.len() });
                }
                for k in maps.keys() {
                    if alg.quiver.arrow_index(k).is_none() {
                        return Err(Error::UnknownArrow(k.clone()));
                    }
                }
                let mut mats = Vec::new();
                for a in 0..alg.num_arrows() {
                    let (s, t) = (alg.s(a), alg.t(a));
                    let (rows, cols) = (dims[t - 1], dims[s - 1]);
                    let mut m = Matrix::zeros(rows, cols);
                    if let Some(given) = maps.get(alg.arrow_id(a)) {
                        if given.len() != rows || given.iter().any(|r| r.len() != cols) {
                            return Err(Error::Parse(format!("maps.{}: expected a {rows}x{cols} matrix", alg.arrow_id(a))));
                        }
                        for (i, row) in given.iter().enumerate() {
                            for (j, e) in row.iter().enumerate() {
                                m[(i, j)] = e.value()?;
                            }
                        }
                    } else if rows * cols > 0 {
                        return Err(Error::Parse(format!("maps.{}: missing", alg.arrow_id(a))));
                    }
                    mats.push(m);
                }
                Representation::new(alg, dims.clone(), mats)
            }
            ModuleFile::Summands { summands } => {
                let parts = summands
                    .iter()
                    .map(|s| {
                        Ok(match s {
                            SummandSpec::String(w) => WordModule::Str(crate::words::parse_string(alg, w)?),
                            SummandSpec::Band { word, lambda } => {
                                let l = lambda.value()?;
                                if l.is_zero() {
                                    return Err(Error::ZeroLambda);
                                }
                                WordModule::Band(crate::words::parse_band(alg, word)?, l)
                            }
                        }
                        .module(alg))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Representation::sum_all(alg, &parts))
            }
        }
    }

    pub fn from_representation(alg: &GentleAlgebra, m: &Representation) -> ModuleFile {
        let maps = (0..alg.num_arrows())
            .map(|a| {
                let mat = &m.mats[a];
                let rows = (0..mat.rows).map(|i| (0..mat.cols).map(|j| Entry::of(&mat[(i, j)])).collect()).collect();
                (alg.arrow_id(a).to_string(), rows)
            })
            .collect();
        ModuleFile::Matrices { dims: m.dims.clone(), maps }
    }
}

pub fn parse_triangulation(text: &str) -> Result<TriangulationSpec> {
    parse_json(text, "triangulation file")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminationEntry {
    pub curve: CurveSpec,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

pub fn parse_lamination_file(text: &str) -> Result<Vec<LaminationEntry>> {
    parse_json(text, "lamination file")
}

pub fn build_lamination(s: &Surface, entries: &[LaminationEntry]) -> Result<Lamination> {
    s.lamination(build_multicurve(s, entries)?.entries)
}

/// Curves with multiplicities, not checked for pairwise compatibility.
pub fn build_multicurve(s: &Surface, entries: &[LaminationEntry]) -> Result<Lamination> {
    let mut out = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        if e.mult == 0 {
            return Err(Error::Parse(format!("entry {k}: multiplicity must be positive")));
        }
        let c = s.curve_from_spec(&e.curve).map_err(|err| Error::Parse(format!("entry {k}: {err}")))?;
        out.push((c, e.mult));
    }
    Ok(Lamination { entries: out })
}

pub fn lamination_to_file(s: &Surface, l: &Lamination) -> Vec<LaminationEntry> {
    l.entries.iter().map(|(c, m)| LaminationEntry { curve: s.curve_to_spec(c), mult: *m }).collect()
}

/// Comma separated dimension vector.
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension vector {text:?}"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub d: Vec<usize>,
    pub ranks: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoration: Option<Vec<usize>>,
}

impl ComponentJson {
    pub fn new(alg: &GentleAlgebra, z: &Component, decoration: Option<Vec<usize>>) -> ComponentJson {
        ComponentJson {
            d: z.d.clone(),
            ranks: (0..alg.num_arrows()).map(|a| (alg.arrow_id(a).to_string(), z.r[a])).collect(),
            decoration,
        }
    }

    pub fn component(&self, alg: &GentleAlgebra) -> Result<Component> {
        let r = (0..alg.num_arrows())
            .map(|a| {
                self.ranks.get(alg.arrow_id(a)).copied().ok_or_else(|| Error::Parse(format!("ranks: missing arrow {}", alg.arrow_id(a))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Component { d: self.d.clone(), r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_qt, catalog};

    #[test]
    fn algebra_round_trip() {
        let text = r#"{"vertices": 3, "arrows": [{"id": "a", "from": 2, "to": 1}, {"id": "b", "from": 3, "to": 2}], "relations": [["a", "b"]]}"#;
        let alg = parse_algebra(text).unwrap();
        let f = AlgebraFile::from_algebra(&alg);
        let again: AlgebraFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again.build().unwrap(), alg);
    }

    #[test]
    fn parse_errors_have_positions() {
        let Err(Error::Parse(msg)) = parse_algebra("{\"vertices\": 1,\n \"arrows\": [}") else { panic!() };
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn module_round_trip() {
        let alg = crate::catalog::torus();
        let text = r#"{"summands": [{"string": "a1"}, {"band": {"word": "c-,b3-,a1-,b1,a1-,b1,a3", "lambda": "3/2"}}]}"#;
        let m = ModuleFile::parse(text).unwrap().build(&alg).unwrap();
        let f = ModuleFile::from_representation(&alg, &m);
        let back = ModuleFile::parse(&serde_json::to_string(&f).unwrap()).unwrap().build(&alg).unwrap();
        assert_eq!(back.dims, m.dims);
        assert!(back.mats.iter().zip(&m.mats).all(|(a, b)| a == b));
    }

    #[test]
    fn lamination_round_trip() {
        let s = build_qt(&catalog::three_holed_sphere()).unwrap();
        let text = r#"[{"curve": {"arc": "2"}, "mult": 2}, {"curve": {"open": {"crossings": ["6", "4", "5"]}}}]"#;
        let l = build_lamination(&s, &parse_lamination_file(text).unwrap()).unwrap();
        let f = lamination_to_file(&s, &l);
        let again = build_lamination(&s, &parse_lamination_file(&serde_json::to_string(&f).unwrap()).unwrap()).unwrap();
        assert_eq!(s.shear_lamination(&l), s.shear_lamination(&again));
    }
}
