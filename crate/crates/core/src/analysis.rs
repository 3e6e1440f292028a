//! Polytopality, tightness, chirality and atomicity of rotation groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coset::realize_default;
use crate::error::Result;
use crate::group::{cyclic_core, is_cyclic_normal, is_reflexible_by_mix, quotient_by_cyclic, CoreInfo};
use crate::presentation::Presentation;
use crate::realization::Realization;
use crate::util::divisors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotPolytopal,
    OrientablyRegular,
    Chiral,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotPolytopal => "NOT_POLYTOPAL",
            Verdict::OrientablyRegular => "ORIENTABLY_REGULAR",
            Verdict::Chiral => "CHIRAL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cores {
    pub s1: CoreInfo,
    pub s2: CoreInfo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schlafli: [usize; 2],
    pub order: usize,
    pub polytopal: bool,
    pub tight: bool,
    pub verdict: Verdict,
    pub cores: Cores,
    /// Present only for tight chiral groups.
    pub atomic: Option<bool>,
}

impl ClassificationReport {
    pub fn is_tight_chiral(&self) -> bool {
        self.tight && self.verdict == Verdict::Chiral
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.schlafli;
        writeln!(f, "type       {{{p}, {q}}}")?;
        writeln!(f, "order      {}", self.order)?;
        writeln!(f, "flags      {}", 2 * self.order)?;
        writeln!(f, "polytopal  {}", self.polytopal)?;
        writeln!(f, "tight      {}", self.tight)?;
        writeln!(f, "verdict    {}", self.verdict)?;
        for (name, c) in [("s1", self.cores.s1), ("s2", self.cores.s2)] {
            writeln!(f, "core {name}    exponent {} multiplier {}", c.exponent, c.multiplier)?;
        }
        match self.atomic {
            Some(a) => write!(f, "atomic     {a}"),
            None => write!(f, "atomic     -"),
        }
    }
}

/// `<s1> ∩ <s2>` is trivial and neither generator is trivial.
pub fn is_polytopal(g: &Realization) -> bool {
    let (p, q) = g.gen_orders();
    if p <= 1 || q <= 1 {
        return false;
    }
    trivial_intersection(g)
}

fn trivial_intersection(g: &Realization) -> bool {
    let g = g.to_regular();
    let [s1, s2] = g.gens();
    let mut in_s1 = vec![false; g.order()];
    let mut x = s1.apply(0);
    while x != 0 {
        in_s1[x as usize] = true;
        x = s1.apply(x);
    }
    let mut y = s2.apply(0);
    while y != 0 {
        if in_s1[y as usize] {
            return false;
        }
        y = s2.apply(y);
    }
    true
}

/// Order equals the product of the generator orders.
pub fn is_tight(g: &Realization) -> bool {
    let (p, q) = g.gen_orders();
    g.order() == p * q
}

/// Tightness as `G = <s1><s2>`, by building the product set.
pub fn is_tight_by_product_set(g: &Realization) -> bool {
    let g = g.to_regular();
    let [s1, s2] = g.gens();
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    let mut a = 0u32;
    loop {
        let mut x = a;
        loop {
            if !seen[x as usize] {
                seen[x as usize] = true;
                count += 1;
            }
            x = s2.apply(x);
            if x == a {
                break;
            }
        }
        a = s1.apply(a);
        if a == 0 {
            break;
        }
    }
    count == g.order()
}

/// Whether `s_i -> s_i^-1` extends to an automorphism. Uses the relator
/// inversion test when the presentation is known, otherwise the mix test.
pub fn is_reflexible(g: &Realization) -> bool {
    match g.presentation() {
        Some(pres) => pres.relators().iter().all(|r| g.is_identity(&r.enantiomorph())),
        None => is_reflexible_by_mix(g),
    }
}

/// Realizes `pres` with the default limit and classifies the result.
pub fn classify(pres: &Presentation) -> Result<ClassificationReport> {
    Ok(classify_group(&realize_default(pres)?))
}

pub fn classify_group(g: &Realization) -> ClassificationReport {
    let report = base_report(g);
    if report.is_tight_chiral() {
        ClassificationReport { atomic: Some(atomic_unchecked(g)), ..report }
    } else {
        report
    }
}

fn base_report(g: &Realization) -> ClassificationReport {
    let (p, q) = g.gen_orders();
    let polytopal = is_polytopal(g);
    let verdict = if !polytopal {
        Verdict::NotPolytopal
    } else if is_reflexible(g) {
        Verdict::OrientablyRegular
    } else {
        Verdict::Chiral
    };
    ClassificationReport {
        schlafli: [p, q],
        order: g.order(),
        polytopal,
        tight: is_tight(g),
        verdict,
        cores: Cores { s1: cyclic_core(g, 1), s2: cyclic_core(g, 2) },
        atomic: None,
    }
}

/// `None` unless `g` is tight and chiral; otherwise whether no quotient by a
/// normal `<s1^p'>` or `<s2^q'>` (proper divisors) is tight and chiral.
pub fn is_atomic(g: &Realization) -> Option<bool> {
    base_report(g).is_tight_chiral().then(|| atomic_unchecked(g))
}

fn atomic_unchecked(g: &Realization) -> bool {
    tight_chiral_quotients(g).next().is_none()
}

/// Quotients of `g` by normal `<s_gen^e>`, `e` a proper divisor of the
/// generator order, that are tight and chiral. Yields `(gen, e, quotient)`.
pub fn tight_chiral_quotients(g: &Realization) -> impl Iterator<Item = (u8, usize, Realization)> + '_ {
    let (p, q) = g.gen_orders();
    let candidates = divisors(p)
        .into_iter()
        .filter(move |&e| e < p)
        .map(|e| (1u8, e))
        .chain(divisors(q).into_iter().filter(move |&e| e < q).map(|e| (2u8, e)));
    candidates.filter_map(move |(gen, e)| {
        if !is_cyclic_normal(g, gen, e) {
            return None;
        }
        let quo = quotient_by_cyclic(g, gen, e).ok()?;
        base_report(&quo).is_tight_chiral().then_some((gen, e, quo))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::realize_default;
    use crate::presentation::{gp_presentation, parse_presentation, GpParams};

    fn gp(p: u64, q: u64, t: (i64, i64, i64, i64)) -> Presentation {
        gp_presentation(GpParams::new(p, q, t.0, t.1, t.2, t.3).unwrap()).unwrap()
    }

    #[test]
    fn odd_atomic_is_tight_chiral_atomic() {
        let r = classify(&gp(6, 9, (3, 4, -3, 2))).unwrap();
        assert_eq!(r.schlafli, [6, 9]);
        assert_eq!(r.order, 54);
        assert!(r.polytopal && r.tight);
        assert_eq!(r.verdict, Verdict::Chiral);
        assert_eq!(r.atomic, Some(true));
    }

    #[test]
    fn regular_examples() {
        let r = classify(&gp(6, 3, (3, 1, -3, -1))).unwrap();
        assert_eq!((r.verdict, r.tight, r.atomic), (Verdict::OrientablyRegular, true, None));
        let r = classify(&gp(4, 4, (-1, 1, 1, -1))).unwrap();
        assert_eq!((r.verdict, r.tight, r.order), (Verdict::OrientablyRegular, true, 16));
    }

    #[test]
    fn degenerate_type_is_not_polytopal() {
        let r = classify(&gp(2, 1, (1, 1, 1, 1))).unwrap();
        assert_eq!((r.order, r.verdict, r.polytopal), (2, Verdict::NotPolytopal, false));
    }

    #[test]
    fn cube_is_not_tight() {
        let pres = parse_presentation("rel s1^4; rel s2^3; rel (s1 s2)^2").unwrap();
        let g = realize_default(&pres).unwrap();
        assert!(!is_tight(&g));
        assert!(!is_tight_by_product_set(&g));
        assert!(is_polytopal(&g));
    }

    #[test]
    fn even_central_is_not_atomic() {
        let r = classify(&gp(16, 32, (3, 9, -3, 7))).unwrap();
        assert!(r.is_tight_chiral());
        assert_eq!(r.atomic, Some(false));
    }

    #[test]
    fn even8_is_atomic() {
        let r = classify(&gp(8, 32, (3, 25, -3, 23))).unwrap();
        assert!(r.is_tight_chiral());
        assert_eq!(r.atomic, Some(true));
    }

    #[test]
    fn mix_test_agrees_with_relator_test() {
        for (p, q, t) in [(6, 9, (3, 4, -3, 2)), (6, 3, (3, 1, -3, -1)), (8, 32, (3, 25, -3, 23))] {
            let g = realize_default(&gp(p, q, t)).unwrap();
            assert_eq!(is_reflexible(&g), is_reflexible_by_mix(&g));
        }
    }

    #[test]
    fn json_field_names() {
        let r = classify(&gp(6, 9, (3, 4, -3, 2))).unwrap();
        let v = serde_json::to_value(r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["schlafli", "order", "polytopal", "tight", "verdict", "cores", "atomic"] {
            assert!(keys.contains(&k));
        }
        assert_eq!(v["verdict"], "CHIRAL");
        assert_eq!(v["cores"]["s2"]["exponent"], 3);
    }
}
