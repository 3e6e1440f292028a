use std::fmt;

use crate::perm::Perm;

/// One signed generator letter. Encoded as a coset-table column:
/// `0 = s1`, `1 = s1^-1`, `2 = s2`, `3 = s2^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const S1: Letter = Letter(0);
    pub const S1_INV: Letter = Letter(1);
    pub const S2: Letter = Letter(2);
    pub const S2_INV: Letter = Letter(3);

    /// `gen` is 1 or 2; `inverse` selects the inverse generator.
    pub fn new(gen: u8, inverse: bool) -> Letter {
        assert!(gen == 1 || gen == 2, "generator index must be 1 or 2");
        Letter((gen - 1) * 2 + inverse as u8)
    }

    pub fn from_column(column: usize) -> Letter {
        assert!(column < 4);
        Letter(column as u8)
    }

    #[inline]
    pub fn column(self) -> usize {
        self.0 as usize
    }

    /// Generator index, 1 or 2.
    #[inline]
    pub fn gen(self) -> u8 {
        self.0 / 2 + 1
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 or -1.
    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// `s_i -> s_{3-i}^-1`.
    pub fn dual(self) -> Letter {
        Letter((self.0 ^ 2) ^ 1)
    }
}

/// A word in `s1`, `s2` and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    /// `s_gen^exponent`, written with `|exponent|` letters.
    pub fn power(gen: u8, exponent: i64) -> Word {
        let letter = Letter::new(gen, exponent < 0);
        Word {
            letters: vec![letter; exponent.unsigned_abs() as usize],
        }
    }

    pub fn s1() -> Word {
        Word::power(1, 1)
    }

    pub fn s2() -> Word {
        Word::power(2, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Product of several words, in order.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut letters = Vec::new();
        for w in words {
            letters.extend_from_slice(&w.letters);
        }
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `w^k`; negative `k` uses the inverse word.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word {
            letters: self.letters.iter().map(|&l| f(l)).collect(),
        }
    }

    /// Every `s_i` becomes `s_{3-i}^-1`.
    pub fn dual(&self) -> Word {
        self.map_letters(Letter::dual)
    }

    /// Every `s_i` becomes `s_i^-1`.
    pub fn enantiomorph(&self) -> Word {
        self.map_letters(Letter::inverse)
    }

    /// If the word is a power of a single generator, returns `(gen, exponent)`.
    /// The empty word returns `None`.
    pub fn as_generator_power(&self) -> Option<(u8, i64)> {
        let first = *self.letters.first()?;
        if self.letters.iter().all(|&l| l == first) {
            Some((first.gen(), first.sign() as i64 * self.letters.len() as i64))
        } else {
            None
        }
    }

    /// Runs of equal letters as `(gen, signed exponent)`.
    pub fn syllables(&self) -> Vec<(u8, i64)> {
        let mut out: Vec<(u8, i64)> = Vec::new();
        let mut prev: Option<Letter> = None;
        for &l in &self.letters {
            if prev == Some(l) {
                out.last_mut().unwrap().1 += l.sign() as i64;
            } else {
                out.push((l.gen(), l.sign() as i64));
            }
            prev = Some(l);
        }
        out
    }

    /// Evaluates the word on two generator permutations (left to right, right action).
    pub fn eval(&self, gens: &[Perm; 2]) -> Perm {
        let degree = gens[0].degree();
        let inverses = [gens[0].inverse(), gens[1].inverse()];
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for &l in &self.letters {
            let g = if l.is_inverse() {
                &inverses[(l.gen() - 1) as usize]
            } else {
                &gens[(l.gen() - 1) as usize]
            };
            for x in images.iter_mut() {
                *x = g.apply(*x);
            }
        }
        Perm::from_images_unchecked(images)
    }

    /// Image of a single point under the word.
    pub fn trace(&self, gens: &[Perm; 2], inverses: &[Perm; 2], mut point: u32) -> u32 {
        for &l in &self.letters {
            let idx = (l.gen() - 1) as usize;
            point = if l.is_inverse() {
                inverses[idx].apply(point)
            } else {
                gens[idx].apply(point)
            };
        }
        point
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "()^1");
        }
        let mut first = true;
        for (gen, exp) in self.syllables() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "s{gen}")?;
            } else {
                write!(f, "s{gen}^{exp}")?;
            }
        }
        Ok(())
    }
}
