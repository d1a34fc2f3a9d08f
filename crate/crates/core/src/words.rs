//! Graded free semigroup with involution.
//!
//! Letters are the generators `g1, g2, ...` and their starred images
//! `g1*, g2*, ...`. Every word is nonempty and has degree equal to its length.
//! All words are compared in one fixed order: first by degree, then
//! lexicographically with `g1 < g1* < g2 < g2* < ...`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator or its star. Stored as a single code `2 * (index - 1) + starred`
/// so that the derived order is exactly `g1 < g1* < g2 < g2* < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    /// Panics if `index == 0`; use [`Letter::try_new`] for unchecked input.
    pub fn new(index: u32, starred: bool) -> Letter {
        Letter::try_new(index, starred).expect("letter index must be at least 1")
    }

    pub fn try_new(index: u32, starred: bool) -> Result<Letter> {
        if index == 0 {
            return Err(Error::ZeroLetterIndex);
        }
        let code = 2 * (index - 1) + starred as u32;
        let code = u16::try_from(code)
            .map_err(|_| Error::InvalidParameter(format!("letter index {index} too large")))?;
        Ok(Letter(code))
    }

    pub fn plain(index: u32) -> Letter {
        Letter::new(index, false)
    }

    pub fn index(self) -> u32 {
        (self.0 as u32) / 2 + 1
    }

    pub fn is_starred(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn star(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Same letter with the index replaced.
    pub fn with_index(self, index: u32) -> Letter {
        Letter::new(index, self.is_starred())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.index())?;
        if self.is_starred() {
            f.write_str("*")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let bad = || Error::ParseWord(s.to_string());
        let body = s.strip_prefix('g').ok_or_else(bad)?;
        let (digits, starred) = match body.strip_suffix('*') {
            Some(d) => (d, true),
            None => (body, false),
        };
        let index: u32 = digits.parse().map_err(|_| bad())?;
        Letter::try_new(index, starred)
    }
}

/// A nonempty product of letters. The empty word is not representable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if letters.is_empty() {
            Err(Error::EmptyWord)
        } else {
            Ok(Word(letters))
        }
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Star-free word from 1-based generator indices. Panics on empty input or a zero index.
    pub fn from_indices(indices: &[u32]) -> Word {
        Word::new(indices.iter().map(|&i| Letter::plain(i)).collect()).expect("nonempty word")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The involution: reverse and toggle every star.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.star()).collect())
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.0.clone();
        letters.rotate_left(k % self.0.len());
        Word(letters)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len()).map(move |k| self.rotate(k))
    }

    pub fn cyclic_normal_form(&self) -> CyclicClass {
        let representative = self.rotations().min().expect("nonempty word");
        CyclicClass { representative }
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn star_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_starred()).count()
    }

    pub fn is_star_free(&self) -> bool {
        self.star_count() == 0
    }

    /// Sorted generator indices, one entry per letter (stars ignored).
    pub fn index_content(&self) -> Vec<u32> {
        let mut content: Vec<u32> = self.0.iter().map(|l| l.index()).collect();
        content.sort_unstable();
        content
    }

    /// Distinct indices used, ascending.
    pub fn distinct_indices(&self) -> Vec<u32> {
        let mut idx = self.index_content();
        idx.dedup();
        idx
    }

    /// Apply `f` to every letter index, keeping stars.
    pub fn map_indices(&self, f: impl Fn(u32) -> u32) -> Word {
        Word(self.0.iter().map(|l| l.with_index(f(l.index()))).collect())
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().format(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let letters = s
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters).map_err(|_| Error::ParseWord(s.to_string()))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rotation class of a word, represented by its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    representative: Word,
}

impl CyclicClass {
    pub fn representative(&self) -> &Word {
        &self.representative
    }

    /// Class of the starred word; traces agree on a class and its star.
    pub fn star(&self) -> CyclicClass {
        self.representative.star().cyclic_normal_form()
    }

    /// The lesser of this class and its star class.
    pub fn up_to_star(&self) -> CyclicClass {
        let s = self.star();
        if s < *self {
            s
        } else {
            self.clone()
        }
    }
}

/// Letters `g1..gN` (optionally with their stars), possibly restricted to
/// indices `<= max_letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet {
    pub size: u32,
    pub with_stars: bool,
    pub max_letter: Option<u32>,
}

impl Alphabet {
    pub fn plain(size: u32) -> Alphabet {
        Alphabet { size, with_stars: false, max_letter: None }
    }

    pub fn starred(size: u32) -> Alphabet {
        Alphabet { size, with_stars: true, max_letter: None }
    }

    pub fn restricted(self, max_letter: u32) -> Alphabet {
        Alphabet { max_letter: Some(max_letter), ..self }
    }

    pub fn effective_size(&self) -> u32 {
        self.max_letter.map_or(self.size, |r| r.min(self.size))
    }

    /// Letters in the global order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for i in 1..=self.effective_size() {
            out.push(Letter::new(i, false));
            if self.with_stars {
                out.push(Letter::new(i, true));
            }
        }
        out
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.letters()
            .iter()
            .all(|l| l.index() <= self.effective_size() && (self.with_stars || !l.is_starred()))
    }
}

/// All words of exactly degree `d` over `alphabet`, ascending.
pub fn words_of_degree(alphabet: &Alphabet, d: usize) -> Vec<Word> {
    if d == 0 {
        return Vec::new();
    }
    let letters = alphabet.letters();
    if letters.is_empty() {
        return Vec::new();
    }
    std::iter::repeat_n(letters, d)
        .multi_cartesian_product()
        .map(Word)
        .collect()
}

/// All words of degree `1..=max_degree`, ascending and without duplicates.
pub fn enumerate_words(
    alphabet_size: u32,
    max_degree: usize,
    with_stars: bool,
    max_letter: Option<u32>,
) -> Vec<Word> {
    let alphabet = Alphabet { size: alphabet_size, with_stars, max_letter };
    (1..=max_degree)
        .flat_map(|d| words_of_degree(&alphabet, d))
        .collect()
}
