//! Reduced words in the free group on `N` generators.
//!
//! A [`Word`] is always stored in reduced form, so structural equality is
//! group equality. Letters are ordered `g1 < g1⁻¹ < g2 < g2⁻¹ < …`, and words
//! are ordered shortlex (length first, then letter by letter); both orders are
//! used for every listing and serialization in the crate.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of words a single enumeration may produce.
pub const DEFAULT_GUARD_LIMIT: u64 = 10_000_000;

/// Number of generators of the free group. Always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Rank(u32);

impl Rank {
    pub fn new(n: u32) -> Result<Rank> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Rank(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Size of the sphere of radius `n`: 1 for `n = 0`, else `2N(2N-1)^(n-1)`.
    pub fn sphere_size(self, n: usize) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        let two_n = BigInt::from(2 * self.0);
        let base = BigInt::from(2 * self.0 - 1);
        two_n * num::pow(base, n - 1)
    }

    /// [`Rank::sphere_size`] as a saturating integer, for guard checks.
    pub fn sphere_size_u128(self, n: usize) -> u128 {
        if n == 0 {
            return 1;
        }
        let mut size = 2 * self.0 as u128;
        for _ in 1..n {
            size = size.saturating_mul(2 * self.0 as u128 - 1);
        }
        size
    }
}

impl TryFrom<u32> for Rank {
    type Error = Error;

    fn try_from(n: u32) -> Result<Rank> {
        Rank::new(n)
    }
}

impl From<Rank> for u32 {
    fn from(r: Rank) -> u32 {
        r.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator `g_i` or its inverse, stored as a nonzero signed index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// `generator` is 1-based. Panics on 0.
    pub fn new(generator: u32, inverse: bool) -> Letter {
        assert!(generator > 0, "generator index is 1-based");
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn from_signed(i: i64) -> Option<Letter> {
        if i == 0 || i.unsigned_abs() > i32::MAX as u64 {
            return None;
        }
        Some(Letter(i as i32))
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    /// Position in the canonical order g1, g1⁻¹, g2, g2⁻¹, ...
    pub fn key(self) -> u32 {
        2 * (self.generator() - 1) + self.is_inverse() as u32
    }

    pub fn from_key(key: u32) -> Letter {
        Letter::new(key / 2 + 1, key % 2 == 1)
    }

    pub fn cancels(self, next: Letter) -> bool {
        self.0 == -next.0
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Caps enumeration sizes so a desk-scale run fails instead of hanging.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub limit: u64,
    pub override_guard: bool,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { limit: DEFAULT_GUARD_LIMIT, override_guard: false }
    }
}

impl Guard {
    pub fn with_limit(limit: u64) -> Guard {
        Guard { limit, override_guard: false }
    }

    pub fn unlimited() -> Guard {
        Guard { limit: u64::MAX, override_guard: true }
    }

    pub fn allows(&self, rank: Rank, n: usize) -> bool {
        self.override_guard || rank.sphere_size_u128(n) <= self.limit as u128
    }

    pub fn check(&self, rank: Rank, n: usize) -> Result<()> {
        if self.allows(rank, n) {
            Ok(())
        } else {
            Err(Error::GuardExceeded { size: rank.sphere_size_u128(n), limit: self.limit })
        }
    }
}

/// A reduced word; the empty word is the identity `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: Rank,
    letters: Vec<Letter>,
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl Word {
    pub fn identity(rank: Rank) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Freely reduces `letters`, rejecting generators outside `1..=N`.
    pub fn reduce<I>(rank: Rank, letters: I) -> Result<Word>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator() > rank.get() {
                return Err(Error::InvalidLetter { letter: l.signed() as i64, rank: rank.get() });
            }
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Ok(Word { rank, letters: out })
    }

    /// Reduces a raw signed-index sequence (`i > 0` is `g_i`, `i < 0` is `g_|i|⁻¹`).
    pub fn from_signed(rank: Rank, raw: &[i64]) -> Result<Word> {
        let letters = raw
            .iter()
            .map(|&i| Letter::from_signed(i).ok_or(Error::InvalidLetter { letter: i, rank: rank.get() }))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(rank, letters)
    }

    /// Parses the comma-separated textual form; the empty string is `e`.
    pub fn parse(rank: Rank, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::identity(rank));
        }
        let raw = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad letter {:?} in word {:?}", t, s))))
            .collect::<Result<Vec<_>>>()?;
        Word::from_signed(rank, &raw)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn same_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank.get(), right: other.rank.get() });
        }
        Ok(())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.same_rank(other)?;
        let c = cancellation_count(&self.letters, &other.letters);
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * c);
        letters.extend_from_slice(&self.letters[..self.len() - c]);
        letters.extend_from_slice(&other.letters[c..]);
        Ok(Word { rank: self.rank, letters })
    }

    /// The concatenation if no letter cancels at the junction, `None` otherwise.
    pub fn concat_no_cancel(&self, other: &Word) -> Result<Option<Word>> {
        self.same_rank(other)?;
        match (self.last(), other.first()) {
            (Some(a), Some(b)) if a.cancels(b) => Ok(None),
            _ => {
                let mut letters = self.letters.clone();
                letters.extend_from_slice(&other.letters);
                Ok(Some(Word { rank: self.rank, letters }))
            }
        }
    }

    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `self` raised to a nonnegative power.
    pub fn pow(&self, m: usize) -> Word {
        let mut out = Word::identity(self.rank);
        for _ in 0..m {
            out = out.concat(self).expect("same rank");
        }
        out
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[..len].to_vec() }
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[self.len() - len..].to_vec() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.signed())?;
        }
        Ok(())
    }
}

/// Number of letter pairs that cancel when the reduced words `a` and `b`
/// are multiplied: the length of the longest suffix of `a` that is the
/// inverse of a prefix of `b`.
pub fn cancellation_count(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().rev().zip(b.iter()).take_while(|(x, y)| x.cancels(**y)).count()
}

/// All reduced words of length exactly `n`, in lexicographic letter order.
///
/// Words are grown one letter at a time from the length `n - 1` list, so only
/// the `2N(2N-1)^(n-1)` reduced words are ever materialized. No size guard is
/// applied here; see [`guarded_words`].
pub fn enumerate_words(rank: Rank, n: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..2 * rank.get()).map(Letter::from_key).collect();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * (alphabet.len() - 1));
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_some_and(|last| last.cancels(l)) {
                    continue;
                }
                let mut ext = Vec::with_capacity(w.len() + 1);
                ext.extend_from_slice(w);
                ext.push(l);
                next.push(ext);
            }
        }
        layer = next;
    }
    layer.into_iter().map(|letters| Word { rank, letters }).collect()
}

/// [`enumerate_words`] behind the size guard.
pub fn guarded_words(rank: Rank, n: usize, guard: &Guard) -> Result<Vec<Word>> {
    guard.check(rank, n)?;
    Ok(enumerate_words(rank, n))
}

/// How the middle word `v` of a triple product `x v y` is consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CancellationProfile {
    /// Letters of `v` cancelled against `x` when reducing `x v`.
    pub left: usize,
    /// Letters of `v` cancelled against `y` when reducing `v y`.
    pub right: usize,
    /// The two one-sided counts do not describe the reduction of `x v y`:
    /// they overlap inside `v`, or `v` is used up and the remainders of `x`
    /// and `y` cancel against each other.
    pub collapsed: bool,
}

impl CancellationProfile {
    /// `|x v y|` when the profile is not collapsed.
    pub fn reduced_length(&self, x_len: usize, v_len: usize, y_len: usize) -> Option<usize> {
        if self.collapsed {
            None
        } else {
            Some(x_len + v_len + y_len - 2 * (self.left + self.right))
        }
    }
}

pub fn cancellation_profile(x: &Word, v: &Word, y: &Word) -> Result<CancellationProfile> {
    x.same_rank(v)?;
    v.same_rank(y)?;
    let left = cancellation_count(&x.letters, &v.letters);
    let right = cancellation_count(&v.letters, &y.letters);
    let collapsed = if left + right > v.len() {
        true
    } else if left + right == v.len() {
        let x_rest = &x.letters[..x.len() - left];
        let y_rest = &y.letters[right..];
        cancellation_count(x_rest, y_rest) > 0
    } else {
        false
    };
    Ok(CancellationProfile { left, right, collapsed })
}
