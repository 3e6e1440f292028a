//! Two-generator presentations of rotation groups.
//!
//! A relation `A = B` is stored as the freely reduced relator `A B^-1`.
//! Parameterized presentations of the form
//!
//! ```text
//! < s1, s2 | s1^p, s2^q, (s1 s2)^2, s2^-1 s1 = s1^i1 s2^j1, s2 s1^-1 = s1^i2 s2^j2 >
//! ```
//!
//! are kept together with their parameters so they can be printed, dualized
//! and compared by parameter tuple.

mod text;
mod word;

pub use text::{format_presentation, parse_presentation};
pub use word::{Letter, Word};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{balanced, gcd, residue};

/// Parameters `(p, q | i1, j1, i2, j2)` plus optional extra relators.
///
/// `i1`, `i2` are stored in `[0, p)` and `j1`, `j2` in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpParams {
    pub p: u64,
    pub q: u64,
    pub i1: u64,
    pub j1: u64,
    pub i2: u64,
    pub j2: u64,
    pub extra_relators: Vec<Word>,
}

impl GpParams {
    pub fn new(p: u64, q: u64, i1: i64, j1: i64, i2: i64, j2: i64) -> Result<GpParams> {
        if p == 0 || q == 0 {
            return Err(Error::BadParameters(format!(
                "exponents must be positive, got p = {p}, q = {q}"
            )));
        }
        Ok(GpParams {
            p,
            q,
            i1: residue(i1, p),
            j1: residue(j1, q),
            i2: residue(i2, p),
            j2: residue(j2, q),
            extra_relators: Vec::new(),
        })
    }

    pub fn with_extra(mut self, relator: Word) -> GpParams {
        let r = canonical_relator(&relator);
        if !r.is_empty() {
            self.extra_relators.push(r);
        }
        self
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.i1, self.j1, self.i2, self.j2)
    }

    /// `(q, p | j2, i2, j1, i1)`.
    pub fn dual(&self) -> GpParams {
        GpParams {
            p: self.q,
            q: self.p,
            i1: self.j2,
            j1: self.i2,
            i2: self.j1,
            j2: self.i1,
            extra_relators: self.extra_relators.iter().map(|w| canonical_relator(&w.dual())).collect(),
        }
    }

    /// `(p, q | -i2, -j2, -i1, -j1)`.
    pub fn enantiomorph(&self) -> GpParams {
        GpParams {
            p: self.p,
            q: self.q,
            i1: residue(-(self.i2 as i64), self.p),
            j1: residue(-(self.j2 as i64), self.q),
            i2: residue(-(self.i1 as i64), self.p),
            j2: residue(-(self.j1 as i64), self.q),
            extra_relators: self
                .extra_relators
                .iter()
                .map(|w| canonical_relator(&w.enantiomorph()))
                .collect(),
        }
    }

    /// The five defining relators followed by the extras.
    pub fn relators(&self) -> Vec<Word> {
        let (p, q) = (self.p, self.q);
        let mut out = standard_relators(p, q);
        // s2^-1 s1 (s1^i1 s2^j1)^-1 = s2^-1 s1 s2^-j1 s1^-i1
        let r1 = Word::product(&[
            Word::power(2, -1),
            Word::power(1, 1),
            Word::power(2, balanced(-(self.j1 as i64), q)),
            Word::power(1, balanced(-(self.i1 as i64), p)),
        ]);
        // s2 s1^-1 s2^-j2 s1^-i2
        let r2 = Word::product(&[
            Word::power(2, 1),
            Word::power(1, -1),
            Word::power(2, balanced(-(self.j2 as i64), q)),
            Word::power(1, balanced(-(self.i2 as i64), p)),
        ]);
        out.push(r1.free_reduce());
        out.push(r2.free_reduce());
        out.extend(self.extra_relators.iter().cloned());
        out
    }
}

impl std::fmt::Display for GpParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{{{}, {} | {}, {}, {}, {}}}",
            self.p, self.q, self.i1, self.j1, self.i2, self.j2
        )?;
        if !self.extra_relators.is_empty() {
            write!(f, " + {} extra", self.extra_relators.len())?;
        }
        Ok(())
    }
}

fn standard_relators(p: u64, q: u64) -> Vec<Word> {
    vec![Word::power(1, p as i64), Word::power(2, q as i64), rotation_relator()]
}

fn rotation_relator() -> Word {
    Word::product(&[Word::s1(), Word::s2()]).pow(2)
}

/// Freely reduces a relator and picks a fixed spelling for relators that have
/// several common ones: pure powers get a positive exponent, and the four
/// spellings `(s1 s2)^2`, `(s2 s1)^2`, `(s1^-1 s2^-1)^2`, `(s2^-1 s1^-1)^2`
/// all become `(s1 s2)^2`.
pub fn canonical_relator(w: &Word) -> Word {
    let r = w.free_reduce();
    if let Some((gen, e)) = r.as_generator_power() {
        return Word::power(gen, e.abs());
    }
    let rot = rotation_relator();
    if r.len() == 4 {
        let variants = [
            rot.clone(),
            Word::product(&[Word::s2(), Word::s1()]).pow(2),
            Word::product(&[Word::power(1, -1), Word::power(2, -1)]).pow(2),
            Word::product(&[Word::power(2, -1), Word::power(1, -1)]).pow(2),
        ];
        if variants.contains(&r) {
            return rot;
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Family(GpParams),
    Plain,
}

/// A presentation on `s1`, `s2` with declared exponents `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    kind: Kind,
    relators: Vec<Word>,
    declared_p: u64,
    declared_q: u64,
}

impl Presentation {
    /// Builds the parameterized presentation; rejects `p = 0` or `q = 0`.
    pub fn family(params: GpParams) -> Result<Presentation> {
        if params.p == 0 || params.q == 0 {
            return Err(Error::BadParameters("exponents must be positive".into()));
        }
        Ok(Presentation {
            relators: params.relators(),
            declared_p: params.p,
            declared_q: params.q,
            kind: Kind::Family(params),
        })
    }

    /// Builds a presentation from explicit relators.
    ///
    /// Declared exponents are the gcds of the exponents of pure `s1` and `s2`
    /// power relators; both must be present. `(s1 s2)^2` is appended when missing.
    pub fn from_relators(relators: Vec<Word>) -> Result<Presentation> {
        let mut rels: Vec<Word> = Vec::new();
        for r in relators {
            let r = canonical_relator(&r);
            if !r.is_empty() && !rels.contains(&r) {
                rels.push(r);
            }
        }
        let mut p = 0usize;
        let mut q = 0usize;
        for r in &rels {
            if let Some((gen, e)) = r.as_generator_power() {
                let e = e.unsigned_abs() as usize;
                if gen == 1 {
                    p = gcd(p, e);
                } else {
                    q = gcd(q, e);
                }
            }
        }
        if p == 0 || q == 0 {
            return Err(Error::InvalidInput(
                "presentation must contain pure power relators s1^p and s2^q".into(),
            ));
        }
        let rot = rotation_relator();
        if !rels.contains(&rot) {
            rels.push(rot);
        }
        Ok(Presentation {
            kind: Kind::Plain,
            relators: rels,
            declared_p: p as u64,
            declared_q: q as u64,
        })
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn declared_p(&self) -> u64 {
        self.declared_p
    }

    pub fn declared_q(&self) -> u64 {
        self.declared_q
    }

    /// Parameters when this is a member of the parameterized family.
    pub fn params(&self) -> Option<&GpParams> {
        match &self.kind {
            Kind::Family(p) => Some(p),
            Kind::Plain => None,
        }
    }

    /// Adds a relator, keeping the family parameters when present.
    pub fn with_relator(&self, relator: Word) -> Presentation {
        match &self.kind {
            Kind::Family(params) => {
                Presentation::family(params.clone().with_extra(relator)).expect("valid params")
            }
            Kind::Plain => {
                let mut rels = self.relators.clone();
                rels.push(relator);
                let mut out = Presentation::from_relators(rels).expect("power relators kept");
                out.declared_p = self.declared_p;
                out.declared_q = self.declared_q;
                out
            }
        }
    }

    /// Presentation of the dual: `s_i -> s_{3-i}^-1`, exponents swapped.
    pub fn dual(&self) -> Presentation {
        match &self.kind {
            Kind::Family(params) => Presentation::family(params.dual()).expect("valid params"),
            Kind::Plain => {
                let rels = self.relators.iter().map(|w| w.dual()).collect();
                let mut out = Presentation::from_relators(rels).expect("power relators kept");
                out.declared_p = self.declared_q;
                out.declared_q = self.declared_p;
                out
            }
        }
    }

    /// Presentation of the enantiomorphic form: `s_i -> s_i^-1`.
    pub fn enantiomorph(&self) -> Presentation {
        match &self.kind {
            Kind::Family(params) => {
                Presentation::family(params.enantiomorph()).expect("valid params")
            }
            Kind::Plain => {
                let rels = self.relators.iter().map(|w| w.enantiomorph()).collect();
                let mut out = Presentation::from_relators(rels).expect("power relators kept");
                out.declared_p = self.declared_p;
                out.declared_q = self.declared_q;
                out
            }
        }
    }

    /// Default coset limit for realizing this presentation: `4pq + 64`.
    pub fn default_max_cosets(&self) -> usize {
        (4 * self.declared_p * self.declared_q + 64) as usize
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_presentation(self))
    }
}

/// The parameterized presentation for `params`.
pub fn gp_presentation(params: GpParams) -> Result<Presentation> {
    Presentation::family(params)
}

/// Free reduction of a word.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// Serializable form of a presentation: its text.
impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_presentation(self))
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_presentation(&text).map_err(serde::de::Error::custom)
    }
}
