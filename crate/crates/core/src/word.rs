//! Words over an indexed generator alphabet.
//!
//! A [`Letter`] is a generator index together with a sign; a [`Word`] is a
//! sequence of letters. Words are the universal currency of the engine:
//! relators, meridians, curve words, and substitution images are all words.
//!
//! Generator identity is positional: letter `i` refers to generator number
//! `i` of whatever presentation the word lives in. Name resolution happens
//! at the [`crate::presentation`] and [`crate::grammar`] level.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One signed generator occurrence. Internally `+(i+1)` is generator `i`
/// and `-(i+1)` is its inverse, so a letter is never zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        let v = (gen as i32) + 1;
        Letter(if inverse { -v } else { v })
    }

    /// Positive (non-inverted) occurrence of generator `gen`.
    pub fn gen(gen: usize) -> Self {
        Self::new(gen, false)
    }

    /// Inverted occurrence of generator `gen`.
    pub fn inv(gen: usize) -> Self {
        Self::new(gen, true)
    }

    pub fn gen_index(self) -> usize {
        (self.0.unsigned_abs() as usize) - 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Sign as `+1` / `-1`, the exponent this occurrence contributes.
    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.gen_index())
        } else {
            write!(f, "g{}", self.gen_index())
        }
    }
}

/// A word in the free group on the ambient alphabet.
///
/// Construction does not reduce; [`Word::reduce`] returns the unique freely
/// reduced form, and the group operations below always return reduced words
/// when given reduced input.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

/// Error from [`Word::map`]: the substitution does not cover a generator
/// occurring in the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UndefinedGenerator(pub usize);

impl fmt::Display for UndefinedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no image defined for generator #{}", self.0)
    }
}

impl core::error::Error for UndefinedGenerator {}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Single positive letter.
    pub fn gen(gen: usize) -> Self {
        Word(vec![Letter::gen(gen)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen_index()).max()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// The unique freely reduced form. Idempotent; never increases length.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Reversed word with all signs flipped. Reduced input stays reduced.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `reduce(self · rhs)`.
    pub fn multiply(&self, rhs: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + rhs.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&rhs.0);
        Word(letters).reduce()
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`, reduced.
    pub fn commutator(&self, rhs: &Word) -> Word {
        self.multiply(rhs)
            .multiply(&self.inverse())
            .multiply(&rhs.inverse())
    }

    /// `w^k`, with `w^0` normalizing to the empty word.
    pub fn pow(&self, k: i64) -> Word {
        if k == 0 {
            return Word::empty();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `u · self · u⁻¹`, reduced.
    pub fn conjugated_by(&self, u: &Word) -> Word {
        u.multiply(self).multiply(&u.inverse())
    }

    /// Applies the substitution `gen i ↦ images[i]` and reduces. A
    /// homomorphism on reduced words: `map(u·v) = reduce(map(u)·map(v))`.
    pub fn map(&self, images: &[Word]) -> Result<Word, UndefinedGenerator> {
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.0 {
            let img = images
                .get(l.gen_index())
                .ok_or(UndefinedGenerator(l.gen_index()))?;
            if l.is_inverse() {
                for im in img.0.iter().rev() {
                    push_reduced(&mut out, im.inverse());
                }
            } else {
                for &im in &img.0 {
                    push_reduced(&mut out, im);
                }
            }
        }
        Ok(Word(out))
    }

    /// Cyclically reduced core `c` and conjugator `u` with `self = u·c·u⁻¹`
    /// as free words (after free reduction).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut w = self.reduce().0;
        let mut prefix = Vec::new();
        while w.len() >= 2 && w.first() == w.last().map(|l| l.inverse()).as_ref() {
            prefix.push(w[0]);
            w.remove(0);
            w.pop();
        }
        (Word(w), Word(prefix))
    }

    /// Canonical representative of the relator class of `self`: the
    /// lexicographically least cyclic rotation over the cyclically reduced
    /// core and its inverse. Two words generate the same cyclic relator
    /// (up to rotation and inversion) iff their canonical forms are equal.
    pub fn relator_canonical(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        if core.is_empty() {
            return core;
        }
        let mut best: Option<Vec<Letter>> = None;
        for cand in [core.clone(), core.inverse()] {
            let n = cand.0.len();
            for s in 0..n {
                let mut rot = Vec::with_capacity(n);
                rot.extend_from_slice(&cand.0[s..]);
                rot.extend_from_slice(&cand.0[..s]);
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap())
    }

    /// Exponent sum of each generator, indexed 0..ngens.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; ngens];
        for &l in &self.0 {
            sums[l.gen_index()] += l.sign();
        }
        sums
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{:?}", l)?;
        }
        Ok(())
    }
}
