//! Which Schläfli types admit a tight chiral polyhedron, a witness group for
//! each admissible type, the exhaustive parameter search that checks the
//! predicate, and the census of small types.

mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::analysis::classify_group;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Sign};
use crate::group::mix;
use crate::realization::Realization;
use crate::util::{is_prime, valuation};

pub use search::{exhaustive_search, Bucket, Dedup, SearchResult};

/// Default bound on `p q` for [`exhaustive_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 600;

/// The condition under which a type is admissible; `*Mirror` variants are
/// the same condition with `p` and `q` swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `q` odd, `p` an even divisor of `2q`, `m | p` and `m^2 | q`.
    OddDivisor { m: u64 },
    OddDivisorMirror { m: u64 },
    /// `p`, `q` even, `m | p` and `m^2 | q`.
    OddEven { m: u64 },
    OddEvenMirror { m: u64 },
    /// `8 | p` and `32 | q`.
    Even,
    EvenMirror,
}

/// Least odd prime `m` with `m | p` and `m^2 | q`.
fn odd_prime_factor(p: u64, q: u64) -> Option<u64> {
    (3..=p).step_by(2).find(|&m| p % m == 0 && is_prime(m) && q % (m * m) == 0)
}

fn unmirrored(p: u64, q: u64) -> [Option<Condition>; 3] {
    let m = odd_prime_factor(p, q);
    [
        m.filter(|_| q % 2 == 1 && p % 2 == 0 && (2 * q) % p == 0).map(|m| Condition::OddDivisor { m }),
        m.filter(|_| p % 2 == 0 && q % 2 == 0).map(|m| Condition::OddEven { m }),
        (p % 8 == 0 && q % 32 == 0).then_some(Condition::Even),
    ]
}

fn mirror(c: Condition) -> Condition {
    match c {
        Condition::OddDivisor { m } => Condition::OddDivisorMirror { m },
        Condition::OddEven { m } => Condition::OddEvenMirror { m },
        Condition::Even => Condition::EvenMirror,
        other => other,
    }
}

/// First condition that holds, in the order condition, mirror, next condition.
pub fn admissible_condition(p: u64, q: u64) -> Option<Condition> {
    if p < 2 || q < 2 {
        return None;
    }
    let direct = unmirrored(p, q);
    let swapped = unmirrored(q, p);
    (0..3).find_map(|i| direct[i].or(swapped[i].map(mirror)))
}

/// Whether a tight chiral polyhedron of type `{p, q}` exists.
pub fn admissible(p: u64, q: u64) -> bool {
    admissible_condition(p, q).is_some()
}

/// One group of a witness, possibly dualized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub family: FamilySpec,
    pub dual: bool,
}

impl Component {
    fn new(family: FamilySpec) -> Component {
        Component { family, dual: false }
    }

    pub fn realize(&self) -> Result<Realization> {
        let built = self.family.build()?;
        if self.dual { built.dual() } else { built }.realize()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "dual({})", self.family)
        } else {
            write!(f, "{}", self.family)
        }
    }
}

/// A construction of a tight chiral group: the mix of its components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub components: Vec<Component>,
}

impl Witness {
    pub fn dual(&self) -> Witness {
        let components =
            self.components.iter().map(|c| Component { dual: !c.dual, ..*c }).collect();
        Witness { components }
    }

    pub fn realize(&self) -> Result<Realization> {
        let mut parts = self.components.iter().map(Component::realize);
        let first = parts.next().expect("a witness has a component")?;
        parts.try_fold(first, |acc, g| Ok(mix(&acc, &g?)))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" <> ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The group of type `{2m^(a+1), m^(b+2)}` used for the odd-prime types.
fn odd_central(m: u64, a: u32, b: u32) -> FamilySpec {
    if b + 2 > a + 1 {
        if a == 0 {
            // The central relator is implied when s1 has order 2m.
            FamilySpec::OddAtomic { m, beta: b + 2, k: 1 }
        } else {
            FamilySpec::OddCentralLt { m, alpha: a + 1, beta: b + 2, k: 1 }
        }
    } else {
        FamilySpec::OddCentralEq { m, beta: a + 1, k: 1 }
    }
}

/// Witness for `{2rm, s m^2}` with `s` even, or `s` odd and `r | sm`.
fn odd_witness(m: u64, r: u64, s: u64) -> Witness {
    let (a, b) = (valuation(r, m), valuation(s, m));
    let r1 = r / m.pow(a);
    let s1 = s / m.pow(b);
    if s % 2 == 0 {
        if b + 2 <= a {
            // Build the dual type {2tm, u m^2} and dualize.
            let t = m.pow(b + 1) * s1 / 2;
            let u = 2 * m.pow(a - 1) * r1;
            return odd_witness(m, t, u).dual();
        }
        let g2 = FamilySpec::RegularEven { p: 2 * r1, q: s1 };
        Witness { components: vec![Component::new(odd_central(m, a, b)), Component::new(g2)] }
    } else {
        let mut components = vec![Component::new(odd_central(m, a, b))];
        if r1 != 1 || s1 != 1 {
            components.push(Component::new(FamilySpec::Regular2q { p: 2 * r1, q: s1 }));
        }
        Witness { components }
    }
}

/// Witness for `{8r, 32s}`.
fn even_witness(r: u64, s: u64) -> Witness {
    let (a, b) = (valuation(r, 2), valuation(s, 2));
    let r1 = r >> a;
    let s1 = s >> b;
    let g1 = if a + 3 < b + 5 {
        Component::new(FamilySpec::EvenCentral { alpha: a + 3, beta: b + 5, sign: Sign::Plus })
    } else if a + 3 > b + 5 {
        Component {
            family: FamilySpec::EvenCentral { alpha: b + 5, beta: a + 3, sign: Sign::Plus },
            dual: true,
        }
    } else {
        Component::new(FamilySpec::EvenCentralMix { alpha: a + 3 })
    };
    let mut components = vec![g1];
    if r1 != 1 || s1 != 1 {
        components.push(Component::new(FamilySpec::RegularEven { p: 2 * r1, q: 2 * s1 }));
    }
    Witness { components }
}

/// A construction of a tight chiral group of type `{p, q}`.
pub fn witness_for(p: u64, q: u64) -> Result<Witness> {
    let cond = admissible_condition(p, q).ok_or(Error::NotAdmissible { p, q })?;
    Ok(match cond {
        Condition::OddDivisor { m } | Condition::OddEven { m } => odd_witness(m, p / (2 * m), q / (m * m)),
        Condition::OddDivisorMirror { m } | Condition::OddEvenMirror { m } => {
            odd_witness(m, q / (2 * m), p / (m * m)).dual()
        }
        Condition::Even => even_witness(p / 8, q / 32),
        Condition::EvenMirror => even_witness(q / 8, p / 32).dual(),
    })
}

/// Whether `g` is tight and chiral with generator orders exactly `(p, q)`.
pub fn verify_type(g: &Realization, p: u64, q: u64) -> bool {
    let r = classify_group(g);
    r.is_tight_chiral() && r.schlafli == [p as usize, q as usize]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// Types from the predicate only.
    Predicate,
    /// Each witness is also realized and classified.
    Verified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub schlafli: [u64; 2],
    pub witness: Witness,
    /// True when the witness realized to a tight chiral group of this type.
    pub verified: bool,
    /// Why verification failed, if it did.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Admissible types with `2pq <= max_flags`, sorted by `(p, q)`.
pub fn census(max_flags: u64, mode: CensusMode) -> Result<Vec<CensusEntry>> {
    if max_flags < 4 {
        return Err(Error::BadParameters(format!("max_flags = {max_flags} must be at least 4")));
    }
    let max_pq = max_flags / 2;
    let mut out = Vec::new();
    for p in 2..=max_pq / 2 {
        for q in 2..=max_pq / p {
            if !admissible(p, q) {
                continue;
            }
            let witness = witness_for(p, q)?;
            let (verified, error) = match mode {
                CensusMode::Predicate => (false, None),
                CensusMode::Verified => match witness.realize() {
                    Ok(g) if verify_type(&g, p, q) => (true, None),
                    Ok(g) => {
                        let r = classify_group(&g);
                        (false, Some(format!("realized as {} of type {:?}", r.verdict, r.schlafli)))
                    }
                    Err(e) => (false, Some(format!("{}: {e}", e.tag()))),
                },
            };
            out.push(CensusEntry { schlafli: [p, q], witness, verified, error });
        }
    }
    Ok(out)
}

/// Census types grouped by `p` in the style `{6, 9n} for 1 <= n <= 18`.
pub fn census_table(entries: &[CensusEntry]) -> String {
    let mut by_p: Vec<(u64, Vec<u64>)> = Vec::new();
    for e in entries {
        let [p, q] = e.schlafli;
        match by_p.last_mut() {
            Some((lp, qs)) if *lp == p => qs.push(q),
            _ => by_p.push((p, vec![q])),
        }
    }
    let mut out = String::new();
    for (p, qs) in by_p {
        out.push_str(&progressions(p, &qs));
    }
    out
}

/// Splits sorted `qs` into runs `d n` for consecutive `n` and formats them.
fn progressions(p: u64, qs: &[u64]) -> String {
    let d = qs[0];
    let mut out = String::new();
    let mut rest: Vec<u64> = Vec::new();
    let mut run = Vec::new();
    for &q in qs {
        if q % d == 0 && q / d == run.len() as u64 + 1 {
            run.push(q);
        } else {
            rest.push(q);
        }
    }
    if run.len() == 1 {
        out.push_str(&format!("{{{p}, {d}}}\n"));
    } else {
        out.push_str(&format!("{{{p}, {d}n}} for 1 <= n <= {}\n", run.len()));
    }
    if !rest.is_empty() {
        out.push_str(&progressions(p, &rest));
    }
    out
}

/// Set differences between the census and a reference list of types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasComparison {
    pub matched: usize,
    /// In the census but not in the reference.
    pub missing_from_atlas: Vec<[u64; 2]>,
    /// In the reference but not in the census.
    pub missing_from_census: Vec<[u64; 2]>,
}

impl AtlasComparison {
    pub fn agrees(&self) -> bool {
        self.missing_from_atlas.is_empty() && self.missing_from_census.is_empty()
    }
}

impl fmt::Display for AtlasComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matched {}", self.matched)?;
        for (label, v) in
            [("census only", &self.missing_from_atlas), ("atlas only", &self.missing_from_census)]
        {
            write!(f, "{label} {}", v.len())?;
            for [p, q] in v {
                write!(f, " {{{p}, {q}}}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reads types from CSV with header `p,q`.
pub fn read_atlas<R: Read>(reader: R) -> Result<Vec<[u64; 2]>> {
    #[derive(Deserialize)]
    struct Row {
        p: u64,
        q: u64,
    }
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.len() != 2 || &headers[0] != "p" || &headers[1] != "q" {
        return Err(Error::InvalidInput(format!("atlas header must be `p,q`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    rdr.deserialize::<Row>().map(|r| r.map(|r| [r.p, r.q]).map_err(csv_error)).collect()
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(pos) => Error::InvalidInput(format!("atlas line {}: {e}", pos.line())),
        None => Error::InvalidInput(format!("atlas: {e}")),
    }
}

pub fn compare_with_atlas(entries: &[CensusEntry], atlas: &[[u64; 2]]) -> AtlasComparison {
    let ours: BTreeSet<[u64; 2]> = entries.iter().map(|e| e.schlafli).collect();
    let theirs: BTreeSet<[u64; 2]> = atlas.iter().copied().collect();
    AtlasComparison {
        matched: ours.intersection(&theirs).count(),
        missing_from_atlas: ours.difference(&theirs).copied().collect(),
        missing_from_census: theirs.difference(&ours).copied().collect(),
    }
}
