//! Structural properties every tight chiral group must have. Each check
//! takes a realization that is tight and chiral and returns whether the
//! property holds, so the properties can be tested over search results.

use serde::Serialize;

use crate::analysis::{classify_group, tight_chiral_quotients, Verdict};
use crate::group::{cyclic_core, is_cyclic_normal, quotient_by_cyclic};
use crate::perm::Perm;
use crate::realization::Realization;
use crate::util::{divisors, is_prime, is_prime_power, valuation};

/// `(p, q, s1, s2)`, with the two generators' roles exchanged when `dual`.
fn oriented(g: &Realization, dual: bool) -> (usize, usize, &Perm, &Perm) {
    let (p, q) = g.gen_orders();
    let [s1, s2] = g.gens();
    if dual { (q, p, s2, s1) } else { (p, q, s1, s2) }
}

fn gen_of(dual: bool, second: bool) -> u8 {
    if dual != second { 2 } else { 1 }
}

/// A normal `<s2^e>` with `e | q` and `2 <= e < p` when `q >= p`, or the
/// dual statement when `q < p`. Returns `(generator, e)`.
pub fn small_normal_subgroup(g: &Realization) -> Option<(u8, usize)> {
    let (p, q) = g.gen_orders();
    let dual = q < p;
    let (p, q, _, _) = oriented(g, dual);
    let gen = gen_of(dual, true);
    divisors(q).into_iter().find(|&e| e >= 2 && e < p && is_cyclic_normal(g, gen, e)).map(|e| (gen, e))
}

pub fn normal_props(g: &Realization) -> bool {
    small_normal_subgroup(g).is_some()
}

/// For every normal `<s2^e>`: `s1 s2^e s1^-1 = s2^(a e)` with
/// `a^2 = 1 mod q/e`, `s1^2` commutes with `s2^e`, and `s2^e` is central
/// when `p` is odd. Checked for both generators.
pub fn central_elt(g: &Realization) -> bool {
    [false, true].into_iter().all(|dual| {
        let (p, q, s1, s2) = oriented(g, dual);
        let gen = gen_of(dual, true);
        divisors(q).into_iter().filter(|&e| is_cyclic_normal(g, gen, e)).all(|e| {
            let se = s2.pow(e as i64);
            let conj = s1.then(&se).then(&s1.inverse());
            let n = q / e;
            let Some(a) = (0..n).find(|&a| s2.pow((a * e) as i64) == conj) else {
                return false;
            };
            let s1sq = s1.pow(2);
            let commutes = |x: &Perm| x.then(&se) == se.then(x);
            (a * a) % n == 1 % n && commutes(&s1sq) && (p % 2 == 0 || commutes(s1))
        })
    })
}

/// `q` odd implies `p` is an even divisor of `2q`, and `p = 2q` when `<s2>`
/// is core-free. Checked for both orientations.
pub fn p_div_2q(g: &Realization) -> bool {
    [false, true].into_iter().all(|dual| {
        let (p, q, _, _) = oriented(g, dual);
        if q % 2 == 0 {
            return true;
        }
        let core_free = cyclic_core(g, gen_of(dual, true)).exponent == q;
        p % 2 == 0 && (2 * q) % p == 0 && (!core_free || p == 2 * q)
    })
}

/// Types passed through by repeatedly dividing out the subgroup from
/// [`small_normal_subgroup`], ending at an orientably regular group. `None`
/// if some step fails to give a tight quotient of the expected type.
pub fn regular_quotient_chain(g: &Realization) -> Option<Vec<[usize; 2]>> {
    let mut g = g.clone();
    let mut chain = Vec::new();
    loop {
        let r = classify_group(&g);
        chain.push(r.schlafli);
        if !r.tight {
            return None;
        }
        match r.verdict {
            Verdict::OrientablyRegular => return Some(chain),
            Verdict::NotPolytopal => return None,
            Verdict::Chiral => {}
        }
        let (gen, e) = small_normal_subgroup(&g)?;
        let quo = quotient_by_cyclic(&g, gen, e).ok()?;
        let [p, q] = r.schlafli;
        let expected = if gen == 1 { (e, q) } else { (p, e) };
        if quo.gen_orders() != expected {
            return None;
        }
        g = quo;
    }
}

/// Descends through tight chiral quotients until none remains.
pub fn atomic_cover(g: &Realization) -> Realization {
    let mut g = g.clone();
    loop {
        let next = tight_chiral_quotients(&g).next();
        match next {
            Some((_, _, quo)) => g = quo,
            None => return g,
        }
    }
}

/// `{2m, m^a}` (m an odd prime, a >= 2), `{8, 2^b}` (b >= 5),
/// `{2^a, 2^(a+1)}` (a >= 4), or the dual of one of these.
pub fn is_listed_atomic_type(p: usize, q: usize) -> bool {
    let one_way = |p: usize, q: usize| {
        let (p, q) = (p as u64, q as u64);
        let odd = p % 2 == 0 && {
            let m = p / 2;
            m % 2 == 1 && is_prime(m) && valuation(q, m) >= 2 && m.pow(valuation(q, m)) == q
        };
        let pow2 = |x: u64| x.is_power_of_two();
        let even8 = p == 8 && pow2(q) && q >= 32;
        let even2 = pow2(p) && p >= 16 && q == 2 * p;
        odd || even8 || even2
    };
    one_way(p, q) || one_way(q, p)
}

/// For an atomic group with `q > p`, `q / q'` is a prime power where
/// `<s2^q'>` is the core of `<s2>`; dually when `p > q`.
pub fn q_over_qp(g: &Realization) -> bool {
    let (p, q) = g.gen_orders();
    if p == q {
        return true;
    }
    let dual = q < p;
    let (_, q, _, _) = oriented(g, dual);
    let core = cyclic_core(g, gen_of(dual, true)).exponent;
    is_prime_power((q / core) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub normal_props: bool,
    pub central_elt: bool,
    pub p_div_2q: bool,
    pub regular_quotient: bool,
    /// Type of the atomic group reached by descending through quotients.
    pub atomic_type: [usize; 2],
    pub atomic_type_listed: bool,
    pub q_over_qp: bool,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.normal_props
            && self.central_elt
            && self.p_div_2q
            && self.regular_quotient
            && self.atomic_type_listed
            && self.q_over_qp
    }
}

/// Runs every check on a tight chiral group.
pub fn structure_report(g: &Realization) -> StructureReport {
    let atom = atomic_cover(g);
    let (ap, aq) = atom.gen_orders();
    StructureReport {
        normal_props: normal_props(g),
        central_elt: central_elt(g),
        p_div_2q: p_div_2q(g),
        regular_quotient: regular_quotient_chain(g).is_some(),
        atomic_type: [ap, aq],
        atomic_type_listed: is_listed_atomic_type(ap, aq),
        q_over_qp: q_over_qp(&atom),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::realize_default;
    use crate::presentation::{GpParams, Presentation};

    fn gp(p: u64, q: u64, t: (i64, i64, i64, i64)) -> Realization {
        let params = GpParams::new(p, q, t.0, t.1, t.2, t.3).unwrap();
        realize_default(&Presentation::family(params).unwrap()).unwrap()
    }

    #[test]
    fn odd_atomic_structure() {
        let g = gp(6, 9, (3, 4, -3, 2));
        assert_eq!(small_normal_subgroup(&g), Some((2, 3)));
        let r = structure_report(&g);
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.atomic_type, [6, 9]);
        assert_eq!(regular_quotient_chain(&g), Some(vec![[6, 9], [6, 3]]));
    }

    #[test]
    fn even_central_descends_to_even8() {
        let g = gp(16, 32, (3, 9, -3, 7));
        let r = structure_report(&g);
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.atomic_type, [8, 32]);
    }

    #[test]
    fn listed_types() {
        for (p, q) in [(6, 9), (9, 6), (10, 125), (8, 32), (64, 8), (16, 32), (64, 32)] {
            assert!(is_listed_atomic_type(p, q), "{{{p}, {q}}}");
        }
        for (p, q) in [(6, 18), (8, 16), (8, 8), (18, 9), (6, 3), (30, 225)] {
            assert!(!is_listed_atomic_type(p, q), "{{{p}, {q}}}");
        }
    }
}
