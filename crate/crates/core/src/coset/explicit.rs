//! Permutation representations on `Z_{m^beta}` and `Z_{2^beta}` given by
//! closed formulas, used to cross-check coset enumeration.

use crate::error::{Error, Result};
use crate::families::Sign;
use crate::perm::Perm;
use crate::presentation::{GpParams, Presentation};
use crate::realization::Realization;
use crate::util::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplicitFamily {
    /// `b -> -b + b(1-b) k m^(beta-1)` on `Z_{m^beta}`.
    Odd { m: u64, beta: u32, k: u64 },
    /// `b -> -b + b(1-b) 2^(beta-3)` on `Z_{2^beta}`; `Minus` inverts it.
    Even8 { beta: u32, sign: Sign },
    /// Piecewise on the parity of `b`, on `Z_{2^beta}`; `Minus` inverts it.
    Even2Pow { beta: u32, sign: Sign },
}

impl ExplicitFamily {
    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParameters(msg));
        match *self {
            ExplicitFamily::Odd { m, beta, k } => {
                if m % 2 == 0 || !is_prime(m) {
                    return bad(format!("m = {m} must be an odd prime"));
                }
                if beta < 2 {
                    return bad(format!("beta = {beta} must be at least 2"));
                }
                if k < 1 || k >= m {
                    return bad(format!("k = {k} must lie in 1..={}", m - 1));
                }
                if m.checked_pow(beta).is_none_or(|n| n > 1 << 20) {
                    return bad(format!("m^beta = {m}^{beta} is too large"));
                }
            }
            ExplicitFamily::Even8 { beta, .. } | ExplicitFamily::Even2Pow { beta, .. } => {
                if beta < 5 {
                    return bad(format!("beta = {beta} must be at least 5"));
                }
                if beta > 20 {
                    return bad(format!("beta = {beta} is too large"));
                }
            }
        }
        Ok(())
    }

    /// The presentation whose relators the permutations satisfy.
    pub fn represented_params(&self) -> GpParams {
        match *self {
            ExplicitFamily::Odd { m, beta, k } => {
                let q = m.pow(beta);
                let t = 2 * k as i64 * m.pow(beta - 1) as i64;
                GpParams::new(2 * m, q, 3, 1 - t, -3, -1 - t).expect("positive")
            }
            ExplicitFamily::Even8 { beta, sign } => {
                let t = 1i64 << (beta - 2);
                let g = GpParams::new(8, 1 << beta, 3, 1 - t, -3, -1 - t).expect("positive");
                sign.apply(g)
            }
            ExplicitFamily::Even2Pow { beta, sign } => {
                let t = 1i64 << (beta - 2);
                let g = GpParams::new(1 << (beta - 1), 1 << beta, -1 + t, -3 + t, 1 - t, 3 + t)
                    .expect("positive");
                sign.apply(g)
            }
        }
    }

    fn modulus(&self) -> u64 {
        match *self {
            ExplicitFamily::Odd { m, beta, .. } => m.pow(beta),
            ExplicitFamily::Even8 { beta, .. } | ExplicitFamily::Even2Pow { beta, .. } => 1 << beta,
        }
    }

    /// `b pi_1` before any sign inversion; arithmetic in `i128` reduced mod `n`.
    fn pi1(&self, b: u64) -> u64 {
        let n = self.modulus() as i128;
        let b = b as i128;
        let v = match *self {
            ExplicitFamily::Odd { m, beta, k } => {
                -b + b * (1 - b) % n * (k as i128) % n * (m.pow(beta - 1) as i128)
            }
            ExplicitFamily::Even8 { beta, .. } => -b + b * (1 - b) % n * (1i128 << (beta - 3)),
            ExplicitFamily::Even2Pow { beta, .. } => {
                let c = (1i128 << (beta - 3)) * (b * (b - 1) % n);
                if b % 2 == 0 {
                    b + c
                } else {
                    b - 2 + c
                }
            }
        };
        v.rem_euclid(n) as u64
    }
}

/// Builds `pi_1`, `pi_2` for `family` and checks every relator of
/// `family.represented_params()` on them.
pub fn explicit_representation(family: ExplicitFamily) -> Result<Realization> {
    family.check()?;
    let n = family.modulus();
    let images: Vec<u32> = (0..n).map(|b| family.pi1(b) as u32).collect();
    let pi1 = Perm::from_images(images)
        .ok_or_else(|| Error::RelatorFailure(format!("{family:?}: pi_1 is not a bijection")))?;
    let pi2 = Perm::from_images((0..n).map(|b| ((b + 1) % n) as u32).collect()).expect("shift");
    let sign = match family {
        ExplicitFamily::Odd { .. } => Sign::Plus,
        ExplicitFamily::Even8 { sign, .. } | ExplicitFamily::Even2Pow { sign, .. } => sign,
    };
    let gens = match sign {
        Sign::Plus => [pi1, pi2],
        Sign::Minus => [pi1.inverse(), pi2.inverse()],
    };
    let pres = Presentation::family(family.represented_params())?;
    for r in pres.relators() {
        if !r.eval(&gens).is_identity() {
            return Err(Error::RelatorFailure(format!("{family:?}: relator {r} does not hold")));
        }
    }
    Realization::from_generators(gens)
}
