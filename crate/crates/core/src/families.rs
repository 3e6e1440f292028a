//! Named constructions of tight regular and chiral rotation groups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coset::realize_default;
use crate::error::{Error, Result};
use crate::group::mix;
use crate::presentation::{GpParams, Presentation, Word};
use crate::realization::Realization;
use crate::util::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `Minus` replaces the parameters by their enantiomorph.
    pub fn apply(self, params: GpParams) -> GpParams {
        match self {
            Sign::Plus => params,
            Sign::Minus => params.enantiomorph(),
        }
    }

    fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One named family member. Ranges are checked by [`FamilySpec::build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `{p, q | 3, 1, -3, -1}`, `q` odd and `p` an even divisor of `2q`.
    Regular2q { p: u64, q: u64 },
    /// `{2^a, 4 | -1 + 2^(a-1), 1, 1 - 2^(a-1), -1}`.
    RegularPow2A { alpha: u32 },
    /// `{2^a, 2^(a-1) | 3, 1, -3, -1}`.
    RegularPow2B { alpha: u32 },
    /// `{p, q | -1, 1, 1, -1}` with `p`, `q` even.
    RegularEven { p: u64, q: u64 },
    /// `{2m, m^b | 3, 1 + k m^(b-1), -3, -1 + k m^(b-1)}`.
    OddAtomic { m: u64, beta: u32, k: u64 },
    /// `{8, 2^b | 3, 1 - 2^(b-2), -3, -1 - 2^(b-2)}`; `Minus` is the enantiomorph.
    Even8Atomic { beta: u32, sign: Sign },
    /// `{2^(b-1), 2^b | -1 + 2^(b-2), -3 + 2^(b-2), 1 - 2^(b-2), 3 + 2^(b-2)}`;
    /// `Minus` is the enantiomorph.
    Even2PowAtomic { beta: u32, sign: Sign },
    /// Type `{2m^b, m^b}` with the extra relator `[s1^(2m), s2]`.
    OddCentralEq { m: u64, beta: u32, k: u64 },
    /// Type `{2m^a, m^b}`, `b > a`, with the extra relator `[s1^(2m), s2]`.
    OddCentralLt { m: u64, alpha: u32, beta: u32, k: u64 },
    /// `{2^a, 2^b | 3, 1 + e 2^(b-2), -3, -1 + e 2^(b-2)}` with `e = +-1`.
    EvenCentral { alpha: u32, beta: u32, sign: Sign },
    /// Mix of `{2^(a-1), 2^a | ...}` and `{2^a, 8 | ...}`, type `{2^a, 2^a}`.
    EvenCentralMix { alpha: u32 },
}

/// Two presentations whose realizations are to be mixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixRecipe {
    pub left: Presentation,
    pub right: Presentation,
}

impl MixRecipe {
    pub fn realize(&self) -> Result<Realization> {
        Ok(mix(&realize_default(&self.left)?, &realize_default(&self.right)?))
    }

    pub fn dual(&self) -> MixRecipe {
        MixRecipe { left: self.left.dual(), right: self.right.dual() }
    }
}

/// A family member: a presentation, or a mix of two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Built {
    Presentation(Presentation),
    Mix(MixRecipe),
}

impl Built {
    pub fn realize(&self) -> Result<Realization> {
        match self {
            Built::Presentation(p) => realize_default(p),
            Built::Mix(m) => m.realize(),
        }
    }

    pub fn dual(&self) -> Built {
        match self {
            Built::Presentation(p) => Built::Presentation(p.dual()),
            Built::Mix(m) => Built::Mix(m.dual()),
        }
    }
}

impl fmt::Display for Built {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Built::Presentation(p) => write!(f, "{p}"),
            Built::Mix(m) => write!(f, "mix of\n{}\nand\n{}", m.left, m.right),
        }
    }
}

fn bad<T>(msg: String) -> Result<T> {
    Err(Error::BadParameters(msg))
}

fn need_odd_prime(m: u64) -> Result<()> {
    if m % 2 == 1 && is_prime(m) {
        Ok(())
    } else {
        bad(format!("m = {m} must be an odd prime"))
    }
}

fn need_k(k: u64, m: u64) -> Result<()> {
    if (1..m).contains(&k) {
        Ok(())
    } else {
        bad(format!("k = {k} must lie in 1..={}", m - 1))
    }
}

fn need_at_least(name: &str, v: u32, min: u32) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        bad(format!("{name} = {v} must be at least {min}"))
    }
}

/// `m^e` as `u64`, rejecting values past 2^40.
fn power(m: u64, e: u32) -> Result<u64> {
    match m.checked_pow(e) {
        Some(v) if v <= 1 << 40 => Ok(v),
        _ => bad(format!("{m}^{e} is too large")),
    }
}

fn gp(p: u64, q: u64, i1: i64, j1: i64, i2: i64, j2: i64) -> Result<GpParams> {
    GpParams::new(p, q, i1, j1, i2, j2)
}

/// `s1^(2m) s2 s1^(-2m) s2^-1`.
fn central_relator(m: u64) -> Word {
    let e = 2 * m as i64;
    Word::product(&[Word::power(1, e), Word::s2(), Word::power(1, -e), Word::power(2, -1)])
}

impl FamilySpec {
    /// Checks the ranges and returns the presentation or mix recipe.
    pub fn build(&self) -> Result<Built> {
        let params = match *self {
            FamilySpec::Regular2q { p, q } => {
                if q % 2 == 0 || p % 2 == 1 || p == 0 || (2 * q) % p != 0 {
                    return bad(format!("need q odd and p an even divisor of 2q, got p = {p}, q = {q}"));
                }
                gp(p, q, 3, 1, -3, -1)?
            }
            FamilySpec::RegularPow2A { alpha } => {
                need_at_least("alpha", alpha, 4)?;
                let t = power(2, alpha - 1)? as i64;
                gp(2 * t as u64, 4, -1 + t, 1, 1 - t, -1)?
            }
            FamilySpec::RegularPow2B { alpha } => {
                need_at_least("alpha", alpha, 4)?;
                let t = power(2, alpha - 1)?;
                gp(2 * t, t, 3, 1, -3, -1)?
            }
            FamilySpec::RegularEven { p, q } => {
                if p % 2 == 1 || q % 2 == 1 || p == 0 || q == 0 {
                    return bad(format!("p = {p} and q = {q} must be positive and even"));
                }
                gp(p, q, -1, 1, 1, -1)?
            }
            FamilySpec::OddAtomic { m, beta, k } => {
                need_odd_prime(m)?;
                need_at_least("beta", beta, 2)?;
                need_k(k, m)?;
                let q = power(m, beta)?;
                let t = (k * q / m) as i64;
                gp(2 * m, q, 3, 1 + t, -3, -1 + t)?
            }
            FamilySpec::Even8Atomic { beta, sign } => {
                need_at_least("beta", beta, 5)?;
                let q = power(2, beta)?;
                let t = (q / 4) as i64;
                sign.apply(gp(8, q, 3, 1 - t, -3, -1 - t)?)
            }
            FamilySpec::Even2PowAtomic { beta, sign } => {
                need_at_least("beta", beta, 5)?;
                let q = power(2, beta)?;
                let t = (q / 4) as i64;
                sign.apply(gp(q / 2, q, -1 + t, -3 + t, 1 - t, 3 + t)?)
            }
            FamilySpec::OddCentralEq { m, beta, k } => {
                need_odd_prime(m)?;
                need_at_least("beta", beta, 2)?;
                need_k(k, m)?;
                let q = power(m, beta)?;
                let t = (k * q / m) as i64;
                let s = (m as i64 + 1) * t;
                gp(2 * q, q, 3 + s, 1 + t, -3 + s, -1 + t)?.with_extra(central_relator(m))
            }
            FamilySpec::OddCentralLt { m, alpha, beta, k } => {
                need_odd_prime(m)?;
                need_at_least("alpha", alpha, 1)?;
                need_at_least("beta", beta, 2)?;
                if beta <= alpha {
                    return bad(format!("beta = {beta} must exceed alpha = {alpha}"));
                }
                need_k(k, m)?;
                let p = 2 * power(m, alpha)?;
                let q = power(m, beta)?;
                let t = (k * q / m) as i64;
                gp(p, q, 3, 1 + t, -3, -1 + t)?.with_extra(central_relator(m))
            }
            FamilySpec::EvenCentral { alpha, beta, sign } => {
                need_at_least("alpha", alpha, 3)?;
                need_at_least("beta", beta, 5)?;
                if beta < alpha + 1 {
                    return bad(format!("beta = {beta} must be at least alpha + 1 = {}", alpha + 1));
                }
                let q = power(2, beta)?;
                let t = sign.as_i64() * (q / 4) as i64;
                gp(power(2, alpha)?, q, 3, 1 + t, -3, -1 + t)?
            }
            FamilySpec::EvenCentralMix { alpha } => {
                need_at_least("alpha", alpha, 5)?;
                let p = power(2, alpha)?;
                let t = (p / 4) as i64;
                let left = gp(p / 2, p, -1 + t, -3 + t, 1 + t, 3 + t)?;
                let right = gp(p, 8, -1 + t, -3, 1 + t, 3)?;
                return Ok(Built::Mix(MixRecipe {
                    left: Presentation::family(left)?,
                    right: Presentation::family(right)?,
                }));
            }
        };
        Ok(Built::Presentation(Presentation::family(params)?))
    }

    /// The Schläfli type the construction has.
    pub fn schlafli(&self) -> Result<(u64, u64)> {
        Ok(match *self {
            FamilySpec::Regular2q { p, q } | FamilySpec::RegularEven { p, q } => (p, q),
            FamilySpec::RegularPow2A { alpha } => (power(2, alpha)?, 4),
            FamilySpec::RegularPow2B { alpha } => (power(2, alpha)?, power(2, alpha - 1)?),
            FamilySpec::OddAtomic { m, beta, .. } => (2 * m, power(m, beta)?),
            FamilySpec::Even8Atomic { beta, .. } => (8, power(2, beta)?),
            FamilySpec::Even2PowAtomic { beta, .. } => (power(2, beta - 1)?, power(2, beta)?),
            FamilySpec::OddCentralEq { m, beta, .. } => (2 * power(m, beta)?, power(m, beta)?),
            FamilySpec::OddCentralLt { m, alpha, beta, .. } => {
                (2 * power(m, alpha)?, power(m, beta)?)
            }
            FamilySpec::EvenCentral { alpha, beta, .. } => (power(2, alpha)?, power(2, beta)?),
            FamilySpec::EvenCentralMix { alpha } => (power(2, alpha)?, power(2, alpha)?),
        })
    }

    /// True for the chiral constructions.
    pub fn is_chiral(&self) -> bool {
        !matches!(
            self,
            FamilySpec::Regular2q { .. }
                | FamilySpec::RegularPow2A { .. }
                | FamilySpec::RegularPow2B { .. }
                | FamilySpec::RegularEven { .. }
        )
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Regular2q { .. } => "regular-2q",
            FamilySpec::RegularPow2A { .. } => "regular-pow2-a",
            FamilySpec::RegularPow2B { .. } => "regular-pow2-b",
            FamilySpec::RegularEven { .. } => "regular-even",
            FamilySpec::OddAtomic { .. } => "odd-atomic",
            FamilySpec::Even8Atomic { .. } => "even8-atomic",
            FamilySpec::Even2PowAtomic { .. } => "even2pow-atomic",
            FamilySpec::OddCentralEq { .. } => "odd-central-eq",
            FamilySpec::OddCentralLt { .. } => "odd-central-lt",
            FamilySpec::EvenCentral { .. } => "even-central",
            FamilySpec::EvenCentralMix { .. } => "even-central-mix",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        match *self {
            FamilySpec::Regular2q { p, q } | FamilySpec::RegularEven { p, q } => {
                write!(f, " p={p} q={q}")
            }
            FamilySpec::RegularPow2A { alpha }
            | FamilySpec::RegularPow2B { alpha }
            | FamilySpec::EvenCentralMix { alpha } => write!(f, " alpha={alpha}"),
            FamilySpec::OddAtomic { m, beta, k } | FamilySpec::OddCentralEq { m, beta, k } => {
                write!(f, " m={m} beta={beta} k={k}")
            }
            FamilySpec::Even8Atomic { beta, sign } | FamilySpec::Even2PowAtomic { beta, sign } => {
                write!(f, " beta={beta} sign={}", sign.symbol())
            }
            FamilySpec::OddCentralLt { m, alpha, beta, k } => {
                write!(f, " m={m} alpha={alpha} beta={beta} k={k}")
            }
            FamilySpec::EvenCentral { alpha, beta, sign } => {
                write!(f, " alpha={alpha} beta={beta} sign={}", sign.symbol())
            }
        }
    }
}

/// Parses `odd-atomic m=3 beta=2 k=1` (tag, then `key=value` pairs).
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let mut words = s.split_whitespace();
        let tag = words
            .next()
            .ok_or_else(|| Error::InvalidInput("empty family specification".into()))?;
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got `{w}`")))?;
            if kv.insert(k, v).is_some() {
                return Err(Error::InvalidInput(format!("{tag}: parameter `{k}` given twice")));
            }
        }
        let keys: &[&str] = match tag {
            "regular-2q" | "regular-even" => &["p", "q"],
            "regular-pow2-a" | "regular-pow2-b" | "even-central-mix" => &["alpha"],
            "odd-atomic" | "odd-central-eq" => &["m", "beta", "k"],
            "odd-central-lt" => &["m", "alpha", "beta", "k"],
            "even8-atomic" | "even2pow-atomic" => &["beta", "sign"],
            "even-central" => &["alpha", "beta", "sign"],
            _ => return Err(Error::InvalidInput(format!("unknown family `{tag}`"))),
        };
        if let Some(k) = kv.keys().find(|k| !keys.contains(k)) {
            return Err(Error::InvalidInput(format!("{tag}: unexpected parameter `{k}`")));
        }
        let get = |key: &str| -> Result<&str> {
            kv.get(key)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("{tag}: missing parameter `{key}`")))
        };
        let u = |key: &str| -> Result<u64> {
            let v = get(key)?;
            v.parse::<u64>().map_err(|_| {
                Error::InvalidInput(format!("{key} = `{v}` is not a non-negative integer"))
            })
        };
        let e = |key: &str| -> Result<u32> { small(u(key)?) };
        let sign = || -> Result<Sign> { parse_sign(get("sign")?) };
        Ok(match tag {
            "regular-2q" => FamilySpec::Regular2q { p: u("p")?, q: u("q")? },
            "regular-even" => FamilySpec::RegularEven { p: u("p")?, q: u("q")? },
            "regular-pow2-a" => FamilySpec::RegularPow2A { alpha: e("alpha")? },
            "regular-pow2-b" => FamilySpec::RegularPow2B { alpha: e("alpha")? },
            "even-central-mix" => FamilySpec::EvenCentralMix { alpha: e("alpha")? },
            "odd-atomic" => FamilySpec::OddAtomic { m: u("m")?, beta: e("beta")?, k: u("k")? },
            "odd-central-eq" => FamilySpec::OddCentralEq { m: u("m")?, beta: e("beta")?, k: u("k")? },
            "odd-central-lt" => FamilySpec::OddCentralLt {
                m: u("m")?,
                alpha: e("alpha")?,
                beta: e("beta")?,
                k: u("k")?,
            },
            "even8-atomic" => FamilySpec::Even8Atomic { beta: e("beta")?, sign: sign()? },
            "even2pow-atomic" => FamilySpec::Even2PowAtomic { beta: e("beta")?, sign: sign()? },
            _ => FamilySpec::EvenCentral { alpha: e("alpha")?, beta: e("beta")?, sign: sign()? },
        })
    }
}

fn small(v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::BadParameters(format!("{v} is too large")))
}

fn parse_sign(v: &str) -> Result<Sign> {
    match v {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(Error::InvalidInput(format!("sign must be + or -, got `{v}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(spec: FamilySpec) -> GpParams {
        match spec.build().unwrap() {
            Built::Presentation(p) => p.params().unwrap().clone(),
            Built::Mix(_) => panic!("expected a presentation"),
        }
    }

    #[test]
    fn odd_atomic_parameters() {
        let g = params(FamilySpec::OddAtomic { m: 3, beta: 2, k: 1 });
        assert_eq!(g, GpParams::new(6, 9, 3, 4, -3, 2).unwrap());
    }

    #[test]
    fn odd_central_eq_parameters() {
        let g = params(FamilySpec::OddCentralEq { m: 3, beta: 2, k: 1 });
        assert_eq!((g.p, g.q, g.tuple()), (18, 9, (15, 4, 9, 2)));
        assert_eq!(g.extra_relators, vec![central_relator(3)]);
    }

    #[test]
    fn even8_plus_is_the_listed_group() {
        let g = params(FamilySpec::Even8Atomic { beta: 5, sign: Sign::Plus });
        assert_eq!((g.p, g.q, g.tuple()), (8, 32, (3, 25, 5, 23)));
    }

    #[test]
    fn even_central_mix_recipe() {
        let Built::Mix(r) = FamilySpec::EvenCentralMix { alpha: 5 }.build().unwrap() else {
            panic!("expected a mix");
        };
        assert_eq!(r.left.params().unwrap().tuple(), (7, 5, 9, 11));
        assert_eq!(r.right.params().unwrap().tuple(), (7, 5, 9, 3));
    }

    #[test]
    fn ranges() {
        let cases = [
            FamilySpec::OddAtomic { m: 9, beta: 2, k: 1 },
            FamilySpec::OddAtomic { m: 3, beta: 1, k: 1 },
            FamilySpec::OddAtomic { m: 3, beta: 2, k: 0 },
            FamilySpec::Even8Atomic { beta: 4, sign: Sign::Plus },
            FamilySpec::Even2PowAtomic { beta: 4, sign: Sign::Plus },
            FamilySpec::EvenCentral { alpha: 3, beta: 3, sign: Sign::Plus },
            FamilySpec::EvenCentral { alpha: 2, beta: 5, sign: Sign::Plus },
            FamilySpec::EvenCentralMix { alpha: 4 },
            FamilySpec::OddCentralLt { m: 3, alpha: 2, beta: 2, k: 1 },
            FamilySpec::RegularPow2A { alpha: 3 },
            FamilySpec::Regular2q { p: 4, q: 9 },
            FamilySpec::RegularEven { p: 3, q: 4 },
        ];
        for c in cases {
            assert!(matches!(c.build(), Err(Error::BadParameters(_))), "{c}");
        }
    }

    #[test]
    fn text_round_trip() {
        let specs = [
            FamilySpec::OddAtomic { m: 3, beta: 2, k: 1 },
            FamilySpec::EvenCentral { alpha: 4, beta: 5, sign: Sign::Minus },
            FamilySpec::OddCentralLt { m: 5, alpha: 1, beta: 2, k: 3 },
            FamilySpec::Regular2q { p: 6, q: 9 },
            FamilySpec::EvenCentralMix { alpha: 5 },
        ];
        for s in specs {
            assert_eq!(s.to_string().parse::<FamilySpec>().unwrap(), s);
        }
    }

    #[test]
    fn unknown_parameters_rejected() {
        assert!("odd-atomic m=3 beta=2 k=1 z=4".parse::<FamilySpec>().is_err());
        assert!("odd-atomic m=3 beta=2".parse::<FamilySpec>().is_err());
        assert!("no-such-family".parse::<FamilySpec>().is_err());
    }
}
