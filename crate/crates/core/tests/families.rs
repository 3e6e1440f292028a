use tight_chiral::{classify_group, Built, FamilySpec, Realization, Sign, Verdict};

fn realize(spec: FamilySpec) -> Realization {
    spec.build().and_then(|b| b.realize()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

#[test]
fn families_have_claimed_type_and_verdict() {
    let specs = [
        FamilySpec::Regular2q { p: 6, q: 9 },
        FamilySpec::Regular2q { p: 10, q: 5 },
        FamilySpec::RegularPow2A { alpha: 4 },
        FamilySpec::RegularPow2A { alpha: 5 },
        FamilySpec::RegularPow2B { alpha: 4 },
        FamilySpec::RegularPow2B { alpha: 5 },
        FamilySpec::RegularEven { p: 4, q: 6 },
        FamilySpec::OddAtomic { m: 3, beta: 2, k: 1 },
        FamilySpec::OddAtomic { m: 7, beta: 2, k: 3 },
        FamilySpec::Even8Atomic { beta: 5, sign: Sign::Minus },
        FamilySpec::Even2PowAtomic { beta: 5, sign: Sign::Plus },
        FamilySpec::OddCentralEq { m: 3, beta: 2, k: 1 },
        FamilySpec::OddCentralLt { m: 3, alpha: 2, beta: 3, k: 1 },
        FamilySpec::EvenCentral { alpha: 4, beta: 5, sign: Sign::Plus },
        FamilySpec::EvenCentral { alpha: 3, beta: 6, sign: Sign::Minus },
        FamilySpec::EvenCentralMix { alpha: 5 },
    ];
    for spec in specs {
        let r = classify_group(&realize(spec));
        let (p, q) = spec.schlafli().unwrap();
        assert_eq!(r.schlafli, [p as usize, q as usize], "{spec}");
        assert!(r.tight, "{spec}: {r:?}");
        let expected = if spec.is_chiral() { Verdict::Chiral } else { Verdict::OrientablyRegular };
        assert_eq!(r.verdict, expected, "{spec}");
    }
}

#[test]
fn regular_pow2_at_alpha_three() {
    // The constructors start at 4; the alpha = 3 group is checked directly.
    let pres = tight_chiral::parse_presentation("gp 8 4 : 3 1 -3 -1").unwrap();
    let r = tight_chiral::classify(&pres).unwrap();
    assert_eq!((r.order, r.schlafli), (32, [8, 4]));
    assert!(r.tight);
    assert_eq!(r.verdict, Verdict::OrientablyRegular);
}

#[test]
fn known_orders() {
    // Tight groups have order pq.
    assert_eq!(realize(FamilySpec::OddAtomic { m: 3, beta: 2, k: 1 }).order(), 54);
    assert_eq!(realize(FamilySpec::Even8Atomic { beta: 5, sign: Sign::Plus }).order(), 256);
    assert_eq!(realize(FamilySpec::Even2PowAtomic { beta: 6, sign: Sign::Minus }).order(), 2048);
    assert_eq!(realize(FamilySpec::EvenCentralMix { alpha: 5 }).order(), 1024);
}

#[test]
fn signs_are_enantiomorphs() {
    for (plus, minus) in [
        (FamilySpec::Even8Atomic { beta: 6, sign: Sign::Plus }, FamilySpec::Even8Atomic { beta: 6, sign: Sign::Minus }),
        (FamilySpec::Even2PowAtomic { beta: 5, sign: Sign::Plus }, FamilySpec::Even2PowAtomic { beta: 5, sign: Sign::Minus }),
    ] {
        let (Built::Presentation(a), Built::Presentation(b)) = (plus.build().unwrap(), minus.build().unwrap()) else {
            panic!("expected presentations");
        };
        assert_eq!(a.enantiomorph(), b);
    }
}

#[test]
fn bad_family_parameters() {
    for spec in [
        FamilySpec::OddAtomic { m: 9, beta: 2, k: 1 },
        FamilySpec::OddAtomic { m: 3, beta: 1, k: 1 },
        FamilySpec::Even8Atomic { beta: 4, sign: Sign::Plus },
        FamilySpec::RegularEven { p: 3, q: 4 },
    ] {
        assert!(spec.build().is_err(), "{spec}");
    }
}
