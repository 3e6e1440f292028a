//! Group-level operations on realizations: cores, quotients, covers, mix and comix.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coset::realize;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::{Presentation, Word};
use crate::realization::Realization;
use crate::util::{divisors, gcd};

/// Core of `<s>` in `G`: it is `<s^exponent>`, and the other generator `t`
/// satisfies `t s^exponent t^-1 = s^(multiplier * exponent)`.
/// `multiplier` is reduced mod `ord(s) / exponent` (0 when that is 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreInfo {
    pub exponent: usize,
    pub multiplier: usize,
}

pub fn element_order(g: &Perm) -> usize {
    g.order()
}

fn gen_index(gen: u8) -> usize {
    assert!(gen == 1 || gen == 2, "generator index must be 1 or 2");
    (gen - 1) as usize
}

/// Elements of `<s^e>` as points of the regular realization, keyed by point
/// with value `k` for `s^(k e)`.
fn cyclic_points(g: &Realization, gen: u8, e: usize) -> HashMap<u32, usize> {
    let s = &g.gens()[gen_index(gen)];
    let n = s.orbit_len(0);
    let mut out = HashMap::new();
    let mut x = 0u32;
    for i in 0..n {
        if i % e == 0 {
            out.insert(x, i / e);
        }
        x = s.apply(x);
    }
    out
}

/// Point of `a^-1 s^e a` for `a` the other generator, and of `a s^e a^-1`.
fn conjugate_points(g: &Realization, gen: u8, e: usize) -> (u32, u32) {
    let idx = gen_index(gen);
    let s = &g.gens()[idx];
    let a = &g.gens()[1 - idx];
    let a_inv = a.inverse();
    let se = |x: u32| -> u32 {
        let mut y = x;
        for _ in 0..e {
            y = s.apply(y);
        }
        y
    };
    let down = a.apply(se(a_inv.apply(0)));
    let up = a_inv.apply(se(a.apply(0)));
    (down, up)
}

/// Whether `<s_gen^e>` is normal. Only conjugation by the other generator
/// needs checking.
pub fn is_cyclic_normal(g: &Realization, gen: u8, e: usize) -> bool {
    let g = g.to_regular();
    let pts = cyclic_points(&g, gen, e);
    let (down, up) = conjugate_points(&g, gen, e);
    pts.contains_key(&down) && pts.contains_key(&up)
}

pub fn cyclic_core(g: &Realization, gen: u8) -> CoreInfo {
    let g = g.to_regular();
    let n = if gen == 1 { g.gen_orders().0 } else { g.gen_orders().1 };
    for e in divisors(n) {
        let pts = cyclic_points(&g, gen, e);
        let (down, up) = conjugate_points(&g, gen, e);
        if let (Some(_), Some(&k)) = (pts.get(&down), pts.get(&up)) {
            let modulus = n / e;
            return CoreInfo { exponent: e, multiplier: if modulus == 1 { 0 } else { k % modulus } };
        }
    }
    unreachable!("the trivial subgroup is normal")
}

/// `G / <s_gen^e>`, regular. Re-enumerates with the extra relator when `G`
/// carries its presentation, otherwise collapses the cosets directly.
pub fn quotient_by_cyclic(g: &Realization, gen: u8, e: usize) -> Result<Realization> {
    if e == 0 || !is_cyclic_normal(g, gen, e) {
        return Err(Error::NotNormal { gen, exponent: e });
    }
    match g.presentation() {
        Some(pres) => {
            let q = pres.with_relator(Word::power(gen, e as i64));
            realize(&q, g.order() + 64)
        }
        None => Ok(quotient_direct(g, gen, e)),
    }
}

/// Quotient computed on the regular action: points are grouped into cosets
/// of `<s_gen^e>` and the generators act on the cosets.
pub fn quotient_direct(g: &Realization, gen: u8, e: usize) -> Realization {
    let g = g.to_regular();
    let n = g.order();
    let s = &g.gens()[gen_index(gen)];
    let se = s.pow(e as i64);
    // Coset of x is {x * s^(ke)}, which is N x since N is normal.
    let mut block = vec![u32::MAX; n];
    let mut count = 0u32;
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if block[x as usize] != u32::MAX {
            continue;
        }
        let mut y = x;
        loop {
            block[y as usize] = count;
            y = se.apply(y);
            if y == x {
                break;
            }
        }
        reps.push(x);
        count += 1;
    }
    let act = |p: &Perm| {
        Perm::from_images_unchecked(reps.iter().map(|&x| block[p.apply(x) as usize]).collect())
    };
    let gens = [act(&g.gens()[0]), act(&g.gens()[1])];
    Realization::regular_from_perms(gens)
}

/// Whether `g` covers `lambda`: the generator map extends to a homomorphism.
/// Uses `g`'s relators when known, otherwise compares `|mix(g, lambda)|` with `|g|`.
pub fn covers(g: &Realization, lambda: &Realization) -> bool {
    match g.presentation() {
        Some(pres) => presentation_covers(pres, lambda),
        None => mix(g, lambda).order() == g.order(),
    }
}

/// Whether every relator of `pres` holds in `lambda`.
pub fn presentation_covers(pres: &Presentation, lambda: &Realization) -> bool {
    pres.relators().iter().all(|r| lambda.is_identity(r))
}

/// Generator-respecting isomorphism, tested as mutual covering.
pub fn same_group(a: &Realization, b: &Realization) -> bool {
    a.order() == b.order() && covers(a, b) && covers(b, a)
}

/// Subgroup of `G1 x G2` generated by the paired generators, acting regularly.
pub fn mix(g1: &Realization, g2: &Realization) -> Realization {
    let a = g1.to_regular();
    let b = g2.to_regular();
    let nb = b.order() as u64;
    let key = |x: u32, y: u32| x as u64 * nb + y as u64;
    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut pairs: Vec<(u32, u32)> = vec![(0, 0)];
    index.insert(key(0, 0), 0);
    let mut images: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut i = 0;
    while i < pairs.len() {
        let (x, y) = pairs[i];
        for k in 0..2 {
            let next = (a.gens()[k].apply(x), b.gens()[k].apply(y));
            let idx = *index.entry(key(next.0, next.1)).or_insert_with(|| {
                pairs.push(next);
                (pairs.len() - 1) as u32
            });
            images[k].push(idx);
        }
        i += 1;
    }
    let [i0, i1] = images;
    Realization::regular_from_perms([Perm::from_images_unchecked(i0), Perm::from_images_unchecked(i1)])
}

/// Presentation with the relators of both inputs; declared exponents are gcds.
pub fn comix(p1: &Presentation, p2: &Presentation) -> Presentation {
    let p = gcd(p1.declared_p() as usize, p2.declared_p() as usize) as i64;
    let q = gcd(p1.declared_q() as usize, p2.declared_q() as usize) as i64;
    let mut rels = vec![Word::power(1, p), Word::power(2, q)];
    rels.extend(p1.relators().iter().cloned());
    rels.extend(p2.relators().iter().cloned());
    Presentation::from_relators(rels).expect("pure powers present")
}

/// Whether inverting both generators extends to an automorphism, tested as
/// `|mix(G, G inverted)| = |G|`.
pub fn is_reflexible_by_mix(g: &Realization) -> bool {
    mix(g, &g.inverted()).order() == g.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::realize_default;
    use crate::presentation::{gp_presentation, parse_presentation, GpParams};

    fn gp(p: u64, q: u64, t: (i64, i64, i64, i64)) -> Presentation {
        gp_presentation(GpParams::new(p, q, t.0, t.1, t.2, t.3).unwrap()).unwrap()
    }

    fn odd() -> Realization {
        realize_default(&gp(6, 9, (3, 4, -3, 2))).unwrap()
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&Perm::identity(4)), 1);
        let shift = Perm::from_images((0..9).map(|b| (b + 1) % 9).collect()).unwrap();
        assert_eq!(element_order(&shift), 9);
    }

    #[test]
    fn cores_of_odd_atomic() {
        let g = odd();
        assert_eq!(cyclic_core(&g, 2), CoreInfo { exponent: 3, multiplier: 2 });
        assert_eq!(cyclic_core(&g, 1).exponent, 6);
    }

    #[test]
    fn abelian_cores() {
        let pres = parse_presentation("rel s1^2; rel s2^2; rel (s1 s2)^2").unwrap();
        let g = realize_default(&pres).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(cyclic_core(&g, 1).exponent, 1);
        assert_eq!(cyclic_core(&g, 2).exponent, 1);
    }

    #[test]
    fn quotient_of_odd_atomic() {
        let g = odd();
        let q = quotient_by_cyclic(&g, 2, 3).unwrap();
        assert_eq!(q.order(), 18);
        let target = realize_default(&gp(6, 3, (3, 1, -3, -1))).unwrap();
        assert!(same_group(&q, &target));
        let direct = quotient_direct(&g, 2, 3);
        assert!(same_group(&direct, &target));
    }

    #[test]
    fn trivial_and_full_quotients() {
        let g = odd();
        assert_eq!(quotient_by_cyclic(&g, 2, 9).unwrap().order(), 54);
        assert!(matches!(quotient_by_cyclic(&g, 2, 1), Err(Error::NotNormal { gen: 2, exponent: 1 })));
        let pres = parse_presentation("rel s1^2; rel s2^2; rel (s1 s2)^2").unwrap();
        let v4 = realize_default(&pres).unwrap();
        assert_eq!(quotient_by_cyclic(&v4, 1, 1).unwrap().order(), 2);
    }

    #[test]
    fn covering_examples() {
        let big = odd();
        let small = realize_default(&gp(6, 3, (3, 1, -3, -1))).unwrap();
        assert!(covers(&big, &small));
        assert!(!covers(&small, &big));
        let trivial = Realization::regular_from_perms([Perm::identity(1), Perm::identity(1)]);
        assert!(covers(&big, &trivial));
    }

    #[test]
    fn mix_with_self_is_diagonal() {
        let g = odd();
        assert_eq!(mix(&g, &g).order(), 54);
    }

    #[test]
    fn comix_with_self() {
        let p = gp(6, 9, (3, 4, -3, 2));
        let c = comix(&p, &p);
        assert_eq!(realize_default(&c).unwrap().order(), 54);
    }

    #[test]
    fn reflexibility_by_mix() {
        assert!(!is_reflexible_by_mix(&odd()));
        let reg = realize_default(&gp(6, 3, (3, 1, -3, -1))).unwrap();
        assert!(is_reflexible_by_mix(&reg));
    }
}
