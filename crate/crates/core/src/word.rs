//! Letters and words over signed generators.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent sign of a letter, which doubles as the side of a cut-open
/// generator curve (`X+` / `X-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signed generator `x_i^{±1}`.
///
/// Ordering is by generator index, then `+` before `-`; canonical forms of
/// cyclic words rely on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Self {
        Letter { generator, sign }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, Sign::Plus)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, Sign::Minus)
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.generator, self.sign.flip())
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }

    /// Side of the generator curve the relator curve leaves from after
    /// crossing this letter.
    pub fn exit_side(self) -> Sign {
        self.sign
    }

    /// Side of the generator curve the relator curve arrives on before
    /// crossing this letter.
    pub fn entry_side(self) -> Sign {
        self.sign.flip()
    }

    pub fn exit_vertex(self) -> SignedGenerator {
        SignedGenerator::new(self.generator, self.exit_side())
    }

    pub fn entry_vertex(self) -> SignedGenerator {
        SignedGenerator::new(self.generator, self.entry_side())
    }
}

/// One boundary circle `X_i^+` or `X_i^-` of the cut-open surface; also a
/// vertex of the Whitehead graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedGenerator {
    pub generator: usize,
    pub side: Sign,
}

impl SignedGenerator {
    pub fn new(generator: usize, side: Sign) -> Self {
        SignedGenerator { generator, side }
    }

    /// Dense index `2i` for `X_i^+`, `2i + 1` for `X_i^-`.
    pub fn index(self) -> usize {
        2 * self.generator + usize::from(self.side == Sign::Minus)
    }

    pub fn from_index(index: usize) -> Self {
        let side = if index.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        SignedGenerator::new(index / 2, side)
    }

    pub fn opposite(self) -> Self {
        SignedGenerator::new(self.generator, self.side.flip())
    }
}

/// A finite, possibly unreduced, word of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cyclic rotation starting at `start`.
    pub fn rotated(&self, start: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let start = start % self.0.len();
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&self.0[start..]);
        out.extend_from_slice(&self.0[..start]);
        Word(out)
    }

    /// Iterator over the cyclically adjacent pairs `(w[p], w[p+1 mod len])`;
    /// a word of length `L` has exactly `L` of them.
    pub fn cyclic_pairs(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let len = self.0.len();
        (0..len).map(move |p| (self.0[p], self.0[(p + 1) % len]))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) if self.0.len() > 1 => !a.is_inverse_of(b),
                _ => true,
            }
    }

    /// Freely reduces the word, returning it with the number of cancelled
    /// inverse pairs.
    pub fn free_reduce(&self) -> (Word, usize) {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match stack.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        let cancelled = (self.0.len() - stack.len()) / 2;
        (Word(stack), cancelled)
    }

    /// Free reduction followed by stripping mutually inverse end letters.
    pub fn cyclic_reduce(&self) -> Word {
        self.cyclic_reduce_counted().0
    }

    /// As [`Word::cyclic_reduce`], also returning the total number of
    /// cancelled pairs (free and cyclic).
    pub fn cyclic_reduce_counted(&self) -> (Word, usize) {
        let (free, mut cancelled) = self.free_reduce();
        let letters = free.0;
        let (mut lo, mut hi) = (0usize, letters.len());
        while hi - lo >= 2 && letters[lo].is_inverse_of(letters[hi - 1]) {
            lo += 1;
            hi -= 1;
            cancelled += 1;
        }
        (Word(letters[lo..hi].to_vec()), cancelled)
    }

    /// Lexicographically least word among all cyclic rotations of the word
    /// and of its inverse. No reduction is applied.
    pub fn cyclic_canonical(&self) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let inv = self.inverse();
        let a = least_rotation(&self.0);
        let b = least_rotation(&inv.0);
        let ra = self.rotated(a);
        let rb = inv.rotated(b);
        if rb < ra {
            rb
        } else {
            ra
        }
    }

    /// Exponent sum of each generator, for `generator_count` generators.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generator_count];
        for l in &self.0 {
            sums[l.generator] += l.sign.as_i64();
        }
        sums
    }

    /// Inserts `letter letter^{-1}` before position `at` (`0..=len`).
    pub fn with_trivial_pair(&self, at: usize, letter: Letter) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + 2);
        out.extend_from_slice(&self.0[..at]);
        out.push(letter);
        out.push(letter.inverse());
        out.extend_from_slice(&self.0[at..]);
        Word(out)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Start index of the lexicographically least rotation (quadratic; relators
/// are short).
fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    let mut best = 0;
    for start in 1..n {
        let ord = (0..n)
            .map(|k| letters[(start + k) % n].cmp(&letters[(best + k) % n]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if ord == Ordering::Less {
            best = start;
        }
    }
    best
}

/// Formats a word with the given generator names, collapsing runs of the
/// same letter into exponents (`x^3`, `y^-2`).
pub struct WordDisplay<'a> {
    pub word: &'a Word,
    pub names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = &self.names[letters[i].generator];
            let run = (j - i) as i64 * letters[i].sign.as_i64();
            if run == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}
