//! Exhaustive search over `(i1, j1, i2, j2)` for tight chiral groups of a
//! given type.
//!
//! A tuple is accepted when its presentation defines a group of order
//! exactly `pq` in which `s1`, `s2` have orders `p`, `q` and which is not
//! reflexible. Each tuple goes through increasingly expensive checks, each
//! of which is exact or a necessary condition:
//!
//! 1. `tight_prefilter`: the actions on the cosets of `<s1>` and of `<s2>`
//!    are forced at a few points; they must be consistent permutations.
//! 2. Enumeration of the cosets of `<s1>` with the `q` cosets `<s1> s2^b`
//!    seeded and required to stay distinct; there must be exactly `q`.
//! 3. The same for `<s2>` (via the dual tuple).
//! 4. Full enumeration with the `pq` elements `s1^a s2^b` seeded.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coset::{Enumerator, Outcome};
use crate::error::{Error, Result};
use crate::presentation::GpParams;
use crate::util::balanced;

/// Columns of `s1^k` or `s2^k` appended to `out`.
fn push_power(out: &mut Vec<u8>, gen: u8, k: i64) {
    let col = (gen - 1) * 2 + (k < 0) as u8;
    for _ in 0..k.unsigned_abs() {
        out.push(col);
    }
}

/// The five relators as table columns, shortest first.
pub(crate) fn tuple_relators(p: u64, q: u64, t: (u64, u64, u64, u64)) -> Vec<Vec<u8>> {
    let (i1, j1, i2, j2) = t;
    let mut rels = Vec::with_capacity(5);
    let mut w = Vec::new();
    push_power(&mut w, 1, p as i64);
    rels.push(w);
    let mut w = Vec::new();
    push_power(&mut w, 2, q as i64);
    rels.push(w);
    rels.push(vec![0, 2, 0, 2]);
    let mut w = Vec::new();
    push_power(&mut w, 2, -1);
    push_power(&mut w, 1, 1);
    push_power(&mut w, 2, balanced(-(j1 as i64), q));
    push_power(&mut w, 1, balanced(-(i1 as i64), p));
    rels.push(reduce(w));
    let mut w = Vec::new();
    push_power(&mut w, 2, 1);
    push_power(&mut w, 1, -1);
    push_power(&mut w, 2, balanced(-(j2 as i64), q));
    push_power(&mut w, 1, balanced(-(i2 as i64), p));
    rels.push(reduce(w));
    rels.retain(|r| !r.is_empty());
    rels.sort_by_key(|r| r.len());
    rels
}

fn reduce(w: Vec<u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    for c in w {
        if out.last() == Some(&(c ^ 1)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

/// Partial permutation with injectivity tracking.
struct Partial {
    fwd: Vec<u32>,
    bwd: Vec<u32>,
}

impl Partial {
    fn new(n: usize) -> Partial {
        Partial { fwd: vec![u32::MAX; n], bwd: vec![u32::MAX; n] }
    }

    /// Records `x -> y`; false on a conflict.
    fn set(&mut self, x: u64, y: u64) -> bool {
        let (x, y) = (x as usize, y as usize);
        let (f, b) = (self.fwd[x], self.bwd[y]);
        if f == u32::MAX && b == u32::MAX {
            self.fwd[x] = y as u32;
            self.bwd[y] = x as u32;
            true
        } else {
            f == y as u32 && b == x as u32
        }
    }

    fn clear(&mut self, xs: &[u64], ys: &[u64]) {
        for &x in xs {
            self.fwd[x as usize] = u32::MAX;
        }
        for &y in ys {
            self.bwd[y as usize] = u32::MAX;
        }
    }
}

/// Values the action `g` of `s1` on the cosets `<s1> s2^b` must take, as
/// pairs `(b, g(b))`, for a tight group with exact orders.
fn forced_values(q: u64, j1: u64, j2: u64) -> [(u64, u64); 6] {
    let m = |x: i64| x.rem_euclid(q as i64) as u64;
    let (j1i, j2i) = (j1 as i64, j2 as i64);
    [
        (0, 0),
        (m(1), m(-1)),
        (m(-1), j1),
        (j2, m(1)),
        (m(j1i + 1), m(-2)),
        (m(2), m(j2i - 1)),
    ]
}

/// Cheap necessary condition for tightness with exact orders.
pub(crate) struct Prefilter {
    g: Partial,
    h: Partial,
}

impl Prefilter {
    pub(crate) fn new(p: u64, q: u64) -> Prefilter {
        Prefilter { g: Partial::new(q as usize), h: Partial::new(p as usize) }
    }

    pub(crate) fn passes(&mut self, p: u64, q: u64, t: (u64, u64, u64, u64)) -> bool {
        let (i1, j1, i2, j2) = t;
        let ok_g = check(&mut self.g, &forced_values(q, j1, j2));
        // The action of s2 on the cosets s1^a <s2> is the same computation
        // for the dual tuple (q, p | j2, i2, j1, i1).
        ok_g && check(&mut self.h, &forced_values(p, i2, i1))
    }
}

fn check(part: &mut Partial, pairs: &[(u64, u64); 6]) -> bool {
    let mut ok = true;
    for &(x, y) in pairs {
        if !part.set(x, y) {
            ok = false;
            break;
        }
    }
    let xs: Vec<u64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<u64> = pairs.iter().map(|p| p.1).collect();
    part.clear(&xs, &ys);
    ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Decision {
    Reject,
    Accept,
    Undecided,
}

/// Enumerates the cosets of `<s1>` with the `q` cosets `<s1> s2^b` seeded.
pub(crate) fn s1_cosets_exact(p: u64, q: u64, t: (u64, u64, u64, u64), slack: usize) -> Decision {
    let rels = tuple_relators(p, q, t);
    let q = q as usize;
    let mut e = Enumerator::new(rels, q + slack);
    e.add_cosets(q - 1);
    for b in 0..q {
        e.set(b as u32, 2, ((b + 1) % q) as u32);
    }
    e.protect(q);
    if e.fill_word(0, vec![0]) != Outcome::Complete {
        return Decision::Reject;
    }
    match e.run() {
        Outcome::Collapsed => Decision::Reject,
        Outcome::Overflow => Decision::Undecided,
        Outcome::Complete if e.live() == q => Decision::Accept,
        Outcome::Complete => Decision::Reject,
    }
}

/// Full enumeration with the `pq` elements `s1^a s2^b` seeded as coset
/// `a q + b`. On success returns the regular action of `s1` and `s2`.
pub(crate) fn regular_exact(
    p: u64,
    q: u64,
    t: (u64, u64, u64, u64),
    slack: usize,
) -> std::result::Result<Vec<[u32; 4]>, Decision> {
    let rels = tuple_relators(p, q, t);
    let (p, q) = (p as usize, q as usize);
    let n = p * q;
    let mut e = Enumerator::new(rels, n + slack);
    e.add_cosets(n - 1);
    for a in 0..p {
        for b in 0..q {
            e.set((a * q + b) as u32, 2, (a * q + (b + 1) % q) as u32);
        }
        e.set((a * q) as u32, 0, (((a + 1) % p) * q) as u32);
    }
    e.protect(n);
    match e.run() {
        Outcome::Collapsed => Err(Decision::Reject),
        Outcome::Overflow => Err(Decision::Undecided),
        Outcome::Complete if e.live() == n => Ok(e.into_rows()),
        Outcome::Complete => Err(Decision::Reject),
    }
}


/// Whether the word given by table columns is trivial in the regular action.
fn is_trivial(rows: &[[u32; 4]], word: &[u8]) -> bool {
    word.iter().fold(0u32, |c, &x| rows[c as usize][x as usize]) == 0
}

/// Not reflexible, given the regular action of a tight group.
fn is_chiral_rows(p: u64, q: u64, t: Tuple, rows: &[[u32; 4]]) -> bool {
    // Swapping each column with its inverse inverts both generators.
    !tuple_relators(p, q, t).iter().all(|r| {
        let inv: Vec<u8> = r.iter().map(|c| c ^ 1).collect();
        is_trivial(rows, &inv)
    })
}

pub(crate) type Tuple = (u64, u64, u64, u64);

/// Exact decision for one tuple: `Some(rows)` when tight chiral with
/// generator orders `(p, q)`.
fn decide(p: u64, q: u64, t: Tuple, pre: &mut Prefilter) -> Result<Option<Vec<[u32; 4]>>> {
    if !pre.passes(p, q, t) {
        return Ok(None);
    }
    let slack = 4 * (p * q) as usize + 64;
    // The side with fewer cosets is cheaper, so it goes first.
    let dual = (t.3, t.2, t.1, t.0);
    let sides = if p <= q { [(q, p, dual), (p, q, t)] } else { [(p, q, t), (q, p, dual)] };
    for (a, b, u) in sides {
        if s1_cosets_exact(a, b, u, slack) == Decision::Reject {
            return Ok(None);
        }
    }
    let rows = match regular_exact(p, q, t, slack) {
        Ok(rows) => rows,
        Err(Decision::Undecided) => match decide_slow(p, q, t)? {
            Some(rows) => rows,
            None => return Ok(None),
        },
        Err(_) => return Ok(None),
    };
    Ok(is_chiral_rows(p, q, t, &rows).then_some(rows))
}

/// Unseeded enumeration with a generous limit, for tuples the seeded checks
/// could not settle.
fn decide_slow(p: u64, q: u64, t: Tuple) -> Result<Option<Vec<[u32; 4]>>> {
    let limit = 64 * (p * q) as usize + 4096;
    let mut e = Enumerator::new(tuple_relators(p, q, t), limit);
    match e.run() {
        Outcome::Complete => {}
        Outcome::Overflow => return Err(Error::Overflow { limit }),
        Outcome::Collapsed => unreachable!("nothing is protected"),
    }
    if e.live() != (p * q) as usize {
        return Ok(None);
    }
    let rows = e.into_rows();
    let order = |col: usize| {
        let mut c = rows[0][col];
        let mut n = 1;
        while c != 0 {
            c = rows[c as usize][col];
            n += 1;
        }
        n
    };
    Ok((order(0) == p && order(2) == q).then_some(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    None,
    Enantiomorph,
    EnantiomorphAndDual,
}

impl fmt::Display for Dedup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dedup::None => "none",
            Dedup::Enantiomorph => "enantiomorph",
            Dedup::EnantiomorphAndDual => "enantiomorph-and-dual",
        })
    }
}

impl FromStr for Dedup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dedup> {
        match s {
            "none" => Ok(Dedup::None),
            "enantiomorph" => Ok(Dedup::Enantiomorph),
            "enantiomorph-and-dual" => Ok(Dedup::EnantiomorphAndDual),
            _ => Err(Error::InvalidInput(format!(
                "dedup must be none, enantiomorph or enantiomorph-and-dual, got `{s}`"
            ))),
        }
    }
}

/// Tuples defining one group (as mutual covers).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    /// Sorted; the first is the representative.
    pub tuples: Vec<[u64; 4]>,
    pub order: usize,
    /// Representative of the enantiomorphic bucket.
    pub enantiomorph: [u64; 4],
}

impl Bucket {
    pub fn representative(&self) -> [u64; 4] {
        self.tuples[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub p: u64,
    pub q: u64,
    pub dedup: Dedup,
    /// Sorted by representative.
    pub buckets: Vec<Bucket>,
}

impl SearchResult {
    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// The representative of each bucket as parameters.
    pub fn params(&self) -> Vec<GpParams> {
        self.buckets.iter().map(|b| to_params(self.p, self.q, b.representative())).collect()
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {{{}, {}}}  dedup {}  buckets {}", self.p, self.q, self.dedup, self.buckets.len())?;
        for b in &self.buckets {
            let [i1, j1, i2, j2] = b.representative();
            let [e1, f1, e2, f2] = b.enantiomorph;
            write!(f, "{i1} {j1} {i2} {j2}  order {}  enantiomorph {e1} {f1} {e2} {f2}", b.order)?;
            if b.tuples.len() > 1 {
                write!(f, "  tuples {}", b.tuples.len())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn to_params(p: u64, q: u64, t: [u64; 4]) -> GpParams {
    GpParams::new(p, q, t[0] as i64, t[1] as i64, t[2] as i64, t[3] as i64).expect("p, q positive")
}

fn enantiomorph_tuple(p: u64, q: u64, t: Tuple) -> Tuple {
    let n = |x: u64, m: u64| (m - x) % m;
    (n(t.2, p), n(t.3, q), n(t.0, p), n(t.1, q))
}

fn dual_tuple(t: Tuple) -> Tuple {
    (t.3, t.2, t.1, t.0)
}

fn arr(t: Tuple) -> [u64; 4] {
    [t.0, t.1, t.2, t.3]
}

/// All tight chiral tuples of type `{p, q}` with `p <= q`, closed under
/// the enantiomorph transform, sorted, with their regular actions.
fn sweep(p: u64, q: u64, jobs: usize) -> Result<Vec<(Tuple, Vec<[u32; 4]>)>> {
    debug_assert!(p <= q);
    let work: Vec<(u64, u64)> = (0..p).flat_map(|i1| (0..q).map(move |j1| (i1, j1))).collect();
    let run_item = |pre: &mut Prefilter, &(i1, j1): &(u64, u64)| -> Result<Vec<(Tuple, Vec<[u32; 4]>)>> {
        let mut out = Vec::new();
        for i2 in 0..p {
            for j2 in 0..q {
                // Only one tuple of each enantiomorphic pair is swept.
                if j1 > (q - j2) % q {
                    continue;
                }
                let t = (i1, j1, i2, j2);
                if let Some(rows) = decide(p, q, t, pre)? {
                    out.push((t, rows));
                }
            }
        }
        Ok(out)
    };
    let chunks: Vec<Result<Vec<_>>> = if jobs <= 1 {
        let mut pre = Prefilter::new(p, q);
        work.iter().map(|w| run_item(&mut pre, w)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| {
            work.par_iter().map_init(|| Prefilter::new(p, q), run_item).collect()
        })
    };
    let mut found = Vec::new();
    for c in chunks {
        found.extend(c?);
    }
    let mut closed: Vec<(Tuple, Vec<[u32; 4]>)> = Vec::with_capacity(2 * found.len());
    for (t, rows) in found {
        let e = enantiomorph_tuple(p, q, t);
        if e != t {
            let rows_e = relabel_inverted(&rows);
            closed.push((e, rows_e));
        }
        closed.push((t, rows));
    }
    closed.sort_by_key(|a| a.0);
    closed.dedup_by(|a, b| a.0 == b.0);
    Ok(closed)
}

/// Regular action of the same group with both generators inverted: the
/// inverse columns swap roles.
fn relabel_inverted(rows: &[[u32; 4]]) -> Vec<[u32; 4]> {
    rows.iter().map(|r| [r[1], r[0], r[3], r[2]]).collect()
}

/// All tuples `(i1, j1, i2, j2)` whose presentation defines a tight chiral
/// group with generator orders exactly `p` and `q`, grouped and
/// deduplicated. Types with `p > q` are searched as the dual type.
pub fn exhaustive_search(p: u64, q: u64, dedup: Dedup, budget: u64, jobs: usize) -> Result<SearchResult> {
    if p < 2 || q < 2 {
        return Err(Error::BadParameters(format!("p = {p} and q = {q} must be at least 2")));
    }
    let requested = p.saturating_mul(q);
    if requested > budget {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    let found: Vec<(Tuple, Vec<[u32; 4]>)> = if p <= q {
        sweep(p, q, jobs)?
    } else {
        // Dualizing swaps the generators: rows of the dual group have their
        // s1 and s2 columns exchanged and inverted.
        let mut v: Vec<_> = sweep(q, p, jobs)?
            .into_iter()
            .map(|(t, rows)| (dual_tuple(t), rows.iter().map(|r| [r[3], r[2], r[1], r[0]]).collect()))
            .collect();
        v.sort_by_key(|a| a.0);
        v
    };
    Ok(SearchResult { p, q, dedup, buckets: bucketize(p, q, dedup, &found) })
}

fn bucketize(p: u64, q: u64, dedup: Dedup, found: &[(Tuple, Vec<[u32; 4]>)]) -> Vec<Bucket> {
    let rels: Vec<Vec<Vec<u8>>> = found.iter().map(|(t, _)| tuple_relators(p, q, *t)).collect();
    let covers = |a: usize, b: usize| rels[a].iter().all(|r| is_trivial(&found[b].1, r));
    // Union of mutually covering tuples; `found` is sorted, so each
    // bucket's first member is its least tuple.
    let mut bucket_of: Vec<usize> = (0..found.len()).collect();
    for b in 0..found.len() {
        for a in 0..b {
            if bucket_of[a] == a && covers(a, b) && covers(b, a) {
                bucket_of[b] = a;
                break;
            }
        }
    }
    let index: HashMap<Tuple, usize> = found.iter().enumerate().map(|(i, (t, _))| (*t, i)).collect();
    let rep_of = |t: Tuple| arr(found[bucket_of[index[&t]]].0);
    let mut buckets: Vec<Bucket> = Vec::new();
    for (i, (t, rows)) in found.iter().enumerate() {
        if bucket_of[i] != i {
            continue;
        }
        let tuples = (i..found.len()).filter(|&k| bucket_of[k] == i).map(|k| arr(found[k].0)).collect();
        let e = enantiomorph_tuple(p, q, *t);
        buckets.push(Bucket { tuples, order: rows.len(), enantiomorph: rep_of(e) });
    }
    let keep = |b: &Bucket| -> bool {
        let rep = b.representative();
        match dedup {
            Dedup::None => true,
            Dedup::Enantiomorph => rep <= b.enantiomorph,
            Dedup::EnantiomorphAndDual => {
                let t = (rep[0], rep[1], rep[2], rep[3]);
                let mut orbit = vec![arr(enantiomorph_tuple(p, q, t))];
                if p == q {
                    let d = dual_tuple(t);
                    orbit.push(arr(d));
                    orbit.push(arr(enantiomorph_tuple(p, q, d)));
                }
                orbit.iter().all(|&o| rep <= rep_of((o[0], o[1], o[2], o[3])))
            }
        }
    };
    buckets.retain(keep);
    buckets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::realize_default;
    use crate::presentation::Presentation;
    use crate::analysis::classify_group;

    /// Classifies every tuple by full unseeded realization.
    fn oracle(p: u64, q: u64) -> Vec<[u64; 4]> {
        let mut out = Vec::new();
        for i1 in 0..p {
            for j1 in 0..q {
                for i2 in 0..p {
                    for j2 in 0..q {
                        let params = to_params(p, q, [i1, j1, i2, j2]);
                        let pres = Presentation::family(params).unwrap();
                        let g = realize_default(&pres).unwrap();
                        let r = classify_group(&g);
                        if r.is_tight_chiral() && r.schlafli == [p as usize, q as usize] {
                            out.push([i1, j1, i2, j2]);
                        }
                    }
                }
            }
        }
        out
    }

    fn all_tuples(r: &SearchResult) -> Vec<[u64; 4]> {
        let mut v: Vec<[u64; 4]> = r.buckets.iter().flat_map(|b| b.tuples.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn agrees_with_unseeded_oracle_on_small_types() {
        for (p, q) in [(6, 9), (9, 6), (4, 4), (6, 3), (4, 6), (6, 6)] {
            let r = exhaustive_search(p, q, Dedup::None, 600, 1).unwrap();
            assert_eq!(all_tuples(&r), oracle(p, q), "type {{{p}, {q}}}");
        }
    }

    #[test]
    fn six_nine_is_one_enantiomorphic_pair() {
        let r = exhaustive_search(6, 9, Dedup::None, 600, 1).unwrap();
        let reps: Vec<[u64; 4]> = r.buckets.iter().map(|b| b.representative()).collect();
        assert_eq!(reps, vec![[3, 4, 3, 2], [3, 7, 3, 5]]);
        assert_eq!(r.buckets[0].enantiomorph, [3, 7, 3, 5]);
        assert_eq!(r.buckets[1].enantiomorph, [3, 4, 3, 2]);
        assert!(r.buckets.iter().all(|b| b.order == 54 && b.tuples.len() == 1));
        let d = exhaustive_search(6, 9, Dedup::Enantiomorph, 600, 1).unwrap();
        assert_eq!(d.buckets.len(), 1);
        assert_eq!(d.buckets[0].representative(), [3, 4, 3, 2]);
    }

    #[test]
    fn dual_type_is_the_dual_of_the_search() {
        let a = exhaustive_search(6, 18, Dedup::None, 600, 1).unwrap();
        let b = exhaustive_search(18, 6, Dedup::None, 600, 1).unwrap();
        let mut dualized: Vec<[u64; 4]> = all_tuples(&a).iter().map(|t| [t[3], t[2], t[1], t[0]]).collect();
        dualized.sort();
        assert_eq!(dualized, all_tuples(&b));
        assert!(!a.is_empty());
    }

    #[test]
    fn jobs_do_not_change_the_result() {
        let a = exhaustive_search(8, 32, Dedup::None, 600, 1).unwrap();
        let b = exhaustive_search(8, 32, Dedup::None, 600, 3).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn budget_and_range() {
        assert!(matches!(
            exhaustive_search(30, 30, Dedup::None, 600, 1),
            Err(Error::BudgetExceeded { requested: 900, budget: 600 })
        ));
        assert!(matches!(exhaustive_search(1, 9, Dedup::None, 600, 1), Err(Error::BadParameters(_))));
    }

    #[test]
    fn known_tuple_passes_prefilter() {
        let g = GpParams::new(8, 32, 3, 25, -3, 23).unwrap();
        let mut pre = Prefilter::new(8, 32);
        assert!(pre.passes(8, 32, g.tuple()));
        assert!(decide(8, 32, g.tuple(), &mut pre).unwrap().is_some());
    }
}
