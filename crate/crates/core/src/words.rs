//! Strings and bands over a gentle algebra.

use crate::error::{Error, Result};
use crate::quiver::GentleAlgebra;
use std::collections::BTreeSet;
use std::fmt;

/// An arrow or its formal inverse.  Ordered by arrow index, direct first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Letter {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Letter {
        Letter { arrow, inverse: true }
    }

    pub fn flip(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn s(self, alg: &GentleAlgebra) -> usize {
        if self.inverse {
            alg.t(self.arrow)
        } else {
            alg.s(self.arrow)
        }
    }

    pub fn t(self, alg: &GentleAlgebra) -> usize {
        if self.inverse {
            alg.s(self.arrow)
        } else {
            alg.t(self.arrow)
        }
    }

    pub fn sigma(self, alg: &GentleAlgebra) -> i8 {
        if self.inverse {
            alg.epsilon[self.arrow]
        } else {
            alg.sigma[self.arrow]
        }
    }

    pub fn epsilon(self, alg: &GentleAlgebra) -> i8 {
        if self.inverse {
            alg.sigma[self.arrow]
        } else {
            alg.epsilon[self.arrow]
        }
    }

    pub fn name(self, alg: &GentleAlgebra) -> String {
        if self.inverse {
            format!("{}-", alg.arrow_id(self.arrow))
        } else {
            alg.arrow_id(self.arrow).to_string()
        }
    }
}

/// May `x` be immediately followed by `y` (reading left to right)?
pub fn can_follow(alg: &GentleAlgebra, x: Letter, y: Letter) -> bool {
    if x.s(alg) != y.t(alg) || x == y.flip() {
        return false;
    }
    match (x.inverse, y.inverse) {
        (false, false) => !alg.is_rel(x.arrow, y.arrow),
        (true, true) => !alg.is_rel(y.arrow, x.arrow),
        _ => true,
    }
}

/// A string.  Trivial strings carry a vertex and a sign; for nonempty
/// strings both fields are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringWord {
    pub letters: Vec<Letter>,
    pub vertex: usize,
    pub sign: i8,
}

impl StringWord {
    pub fn trivial(vertex: usize, sign: i8) -> StringWord {
        StringWord { letters: vec![], vertex, sign }
    }

    /// Build without validation.  Callers must hold a valid letter list.
    pub fn raw(letters: Vec<Letter>) -> StringWord {
        assert!(!letters.is_empty());
        StringWord { letters, vertex: 0, sign: 0 }
    }

    pub fn new(alg: &GentleAlgebra, letters: Vec<Letter>) -> Result<StringWord> {
        if letters.is_empty() {
            return Err(Error::InvalidString("use StringWord::trivial for the empty string".into()));
        }
        check_letters(alg, &letters)?;
        Ok(StringWord::raw(letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn s(&self, alg: &GentleAlgebra) -> usize {
        match self.letters.last() {
            Some(c) => c.s(alg),
            None => self.vertex,
        }
    }

    pub fn t(&self, alg: &GentleAlgebra) -> usize {
        match self.letters.first() {
            Some(c) => c.t(alg),
            None => self.vertex,
        }
    }

    pub fn sigma(&self, alg: &GentleAlgebra) -> i8 {
        match self.letters.last() {
            Some(c) => c.sigma(alg),
            None => -self.sign,
        }
    }

    pub fn epsilon(&self, alg: &GentleAlgebra) -> i8 {
        match self.letters.first() {
            Some(c) => c.epsilon(alg),
            None => self.sign,
        }
    }

    pub fn inverse(&self) -> StringWord {
        if self.is_trivial() {
            return StringWord::trivial(self.vertex, -self.sign);
        }
        StringWord::raw(self.letters.iter().rev().map(|c| c.flip()).collect())
    }

    /// Vertex of basis vector b_{j+1} (0-based j) of the string module.
    pub fn basis_vertices(&self, alg: &GentleAlgebra) -> Vec<usize> {
        if self.is_trivial() {
            return vec![self.vertex];
        }
        let mut v: Vec<usize> = self.letters.iter().map(|c| c.t(alg)).collect();
        v.push(self.letters.last().unwrap().s(alg));
        v
    }

    /// May `x` be appended on the right?
    pub fn can_append(&self, alg: &GentleAlgebra, x: Letter) -> bool {
        match self.letters.last() {
            Some(&c) => can_follow(alg, c, x),
            None => x.t(alg) == self.vertex && x.epsilon(alg) == -self.sigma(alg),
        }
    }

    pub fn append(&self, x: Letter) -> StringWord {
        let mut l = self.letters.clone();
        l.push(x);
        StringWord::raw(l)
    }

    /// Letters c_{p+1..q} (0-based half-open window [p, q)); trivial
    /// windows get the vertex and sign that make them compose with the rest.
    pub fn window(&self, alg: &GentleAlgebra, p: usize, q: usize) -> StringWord {
        if p < q {
            return StringWord::raw(self.letters[p..q].to_vec());
        }
        if self.is_trivial() {
            return self.clone();
        }
        if p == 0 {
            let c = self.letters[0];
            StringWord::trivial(c.t(alg), c.epsilon(alg))
        } else {
            // the trivial string between c_p and c_{p+1}; it must compose with c_p on its left
            let c = self.letters[p - 1];
            StringWord::trivial(c.s(alg), -c.sigma(alg))
        }
    }

    pub fn display(&self, alg: &GentleAlgebra) -> String {
        if self.is_trivial() {
            return format!("1@{}", self.vertex);
        }
        self.letters.iter().map(|c| c.name(alg)).collect::<Vec<_>>().join(",")
    }
}

fn check_letters(alg: &GentleAlgebra, letters: &[Letter]) -> Result<()> {
    for c in letters {
        if c.arrow >= alg.num_arrows() {
            return Err(Error::InvalidString(format!("unknown arrow index {}", c.arrow)));
        }
    }
    for w in letters.windows(2) {
        if !can_follow(alg, w[0], w[1]) {
            return Err(Error::InvalidString(format!(
                "{} cannot be followed by {}",
                w[0].name(alg),
                w[1].name(alg)
            )));
        }
    }
    Ok(())
}

/// Representative of {C, C^-}: the lexicographically smaller letter list.
/// Trivial strings are normalized to sign +1.
pub fn canonical_string(c: &StringWord) -> StringWord {
    if c.is_trivial() {
        return StringWord::trivial(c.vertex, 1);
    }
    let inv = c.inverse();
    if inv.letters < c.letters {
        inv
    } else {
        c.clone()
    }
}

/// A band: a cyclic word, stored as one representative rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandWord {
    pub letters: Vec<Letter>,
}

impl BandWord {
    pub fn new(alg: &GentleAlgebra, letters: Vec<Letter>) -> Result<BandWord> {
        if letters.len() < 2 {
            return Err(Error::InvalidBand("a band has length at least 2".into()));
        }
        check_letters(alg, &letters).map_err(|e| Error::InvalidBand(e.to_string()))?;
        if !can_follow(alg, *letters.last().unwrap(), letters[0]) {
            return Err(Error::InvalidBand("the word does not close up".into()));
        }
        if !is_primitive(&letters) {
            return Err(Error::NotPrimitive);
        }
        Ok(BandWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Letter at a cyclic position.
    pub fn at(&self, i: isize) -> Letter {
        let m = self.letters.len() as isize;
        self.letters[i.rem_euclid(m) as usize]
    }

    pub fn inverse(&self) -> BandWord {
        BandWord { letters: self.letters.iter().rev().map(|c| c.flip()).collect() }
    }

    pub fn basis_vertices(&self, alg: &GentleAlgebra) -> Vec<usize> {
        self.letters.iter().map(|c| c.t(alg)).collect()
    }

    pub fn display(&self, alg: &GentleAlgebra) -> String {
        self.letters.iter().map(|c| c.name(alg)).collect::<Vec<_>>().join(",")
    }
}

fn is_primitive(letters: &[Letter]) -> bool {
    let m = letters.len();
    (1..m).filter(|d| m % d == 0).all(|d| (0..m).any(|i| letters[i] != letters[(i + d) % m]))
}

/// Lexicographically least rotation of B or B^-.
pub fn canonical_band(b: &BandWord) -> BandWord {
    let mut best = b.letters.clone();
    for w in [b.letters.clone(), b.inverse().letters] {
        let m = w.len();
        for r in 0..m {
            let rot: Vec<Letter> = w[r..].iter().chain(&w[..r]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    BandWord { letters: best }
}

/// All nonempty strings of length <= max_len, not reduced modulo inversion.
fn all_strings(alg: &GentleAlgebra, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let letters: Vec<Letter> =
        (0..alg.num_arrows()).flat_map(|a| [Letter::direct(a), Letter::inv(a)]).collect();
    let mut stack: Vec<Vec<Letter>> = if max_len == 0 { vec![] } else { letters.iter().map(|&x| vec![x]).collect() };
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            let last = *w.last().unwrap();
            for &y in &letters {
                if can_follow(alg, last, y) {
                    let mut v = w.clone();
                    v.push(y);
                    stack.push(v);
                }
            }
        }
        out.push(w);
    }
    out
}

/// Canonical strings of length <= max_len: the trivial ones first (by
/// vertex), then by length and letters.
pub fn enumerate_strings(alg: &GentleAlgebra, max_len: usize) -> Vec<StringWord> {
    let mut set = BTreeSet::new();
    for w in all_strings(alg, max_len) {
        set.insert(canonical_string(&StringWord::raw(w)));
    }
    let mut out: Vec<StringWord> = (1..=alg.n()).map(|v| StringWord::trivial(v, 1)).collect();
    let mut rest: Vec<StringWord> = set.into_iter().collect();
    rest.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters.cmp(&b.letters)));
    out.extend(rest);
    out
}

pub fn enumerate_bands(alg: &GentleAlgebra, max_len: usize) -> Vec<BandWord> {
    let mut set = BTreeSet::new();
    for w in all_strings(alg, max_len) {
        if w.len() < 2 || !can_follow(alg, *w.last().unwrap(), w[0]) || !is_primitive(&w) {
            continue;
        }
        set.insert(canonical_band(&BandWord { letters: w }));
    }
    let mut out: Vec<BandWord> = set.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters.cmp(&b.letters)));
    out
}

/// Parse "a1-,b1,a3" into letters.
pub fn parse_letters(alg: &GentleAlgebra, text: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (name, inverse) = match tok.strip_suffix('-') {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let arrow = alg.quiver.arrow_index(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
        out.push(Letter { arrow, inverse });
    }
    Ok(out)
}

/// Parse a string in the text syntax; "1@i" is the trivial string at i.
pub fn parse_string(alg: &GentleAlgebra, text: &str) -> Result<StringWord> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix("1@") {
        let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad vertex in {text}")))?;
        if v == 0 || v > alg.n() {
            return Err(Error::InvalidString(format!("vertex {v} out of range")));
        }
        return Ok(StringWord::trivial(v, 1));
    }
    StringWord::new(alg, parse_letters(alg, text)?)
}

pub fn parse_band(alg: &GentleAlgebra, text: &str) -> Result<BandWord> {
    BandWord::new(alg, parse_letters(alg, text)?)
}

/// Either kind of word, for APIs taking both.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Str(StringWord),
    Band(BandWord),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.arrow, if self.inverse { "-" } else { "" })
    }
}
