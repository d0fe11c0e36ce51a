//! Explicit block codes: storage, Hamming distance, minimum distance, weight
//! distribution and the systematic property.
//!
//! Binary words are packed one symbol per bit into `u64` limbs, coordinate
//! `i` (0-based) living in bit `i % 64` of limb `i / 64`. Larger alphabets use
//! one byte per symbol.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet a [`Code`] can hold.
pub const MAX_Q: u32 = 256;

/// Pair counts at or above this are split across threads by
/// [`Code::minimum_distance`].
#[cfg(feature = "parallel")]
const PARALLEL_PAIR_THRESHOLD: usize = 1 << 18;

/// Number of coordinates in which `u` and `v` differ.
pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<u32> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count() as u32)
}

/// Distance between two packed binary words of the same limb count.
#[inline]
pub fn packed_distance(u: &[u64], v: &[u64]) -> u32 {
    u.iter().zip(v).map(|(a, b)| (a ^ b).count_ones()).sum()
}

/// Packs a binary word into `u64` limbs.
pub fn pack_binary(word: &[u8]) -> Vec<u64> {
    let mut limbs = vec![0u64; word.len().div_ceil(64)];
    for (i, &s) in word.iter().enumerate() {
        if s != 0 {
            limbs[i / 64] |= 1 << (i % 64);
        }
    }
    limbs
}

fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..q)
            .take_while(|p| p * p <= q)
            .all(|p| !q.is_multiple_of(p))
}

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    /// Row-major, `limbs` limbs per word.
    Packed { limbs: usize, data: Vec<u64> },
    /// Row-major, `n` bytes per word.
    Symbols(Vec<u8>),
}

/// A finite set of length-`n` words over `{0, .., q-1}`.
///
/// Words keep the order they were given in; equality is order sensitive (use
/// [`Code::same_words`] for set equality).
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    q: u32,
    n: usize,
    len: usize,
    storage: Storage,
}

/// Length, size, dimension (when `M` is a power of `q`) and distance of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: u32,
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub k: Option<u32>,
    pub d: Option<u32>,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        write!(f, "({}, {}, {})_{}", self.n, self.m, d, self.q)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

/// Outcome of [`Code::check_systematic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SystematicCheck {
    Systematic,
    /// Two words share the same `k`-prefix.
    Duplicate {
        message: Vec<u8>,
        first: usize,
        second: usize,
    },
    /// No word carries this `k`-prefix.
    Missing {
        message: Vec<u8>,
    },
    /// `k` exceeds the code length.
    TooShort {
        n: usize,
        k: u32,
    },
}

impl SystematicCheck {
    pub fn is_systematic(&self) -> bool {
        matches!(self, SystematicCheck::Systematic)
    }
}

impl fmt::Display for SystematicCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |m: &[u8]| m.iter().map(|s| s.to_string()).collect::<String>();
        match self {
            SystematicCheck::Systematic => write!(f, "systematic"),
            SystematicCheck::Duplicate {
                message,
                first,
                second,
            } => write!(
                f,
                "message {} appears in words {} and {}",
                digits(message),
                first + 1,
                second + 1
            ),
            SystematicCheck::Missing { message } => {
                write!(f, "message {} is not encoded", digits(message))
            }
            SystematicCheck::TooShort { n, k } => write!(f, "k={k} exceeds length {n}"),
        }
    }
}

impl Code {
    /// Builds a code, rejecting empty word lists, wrong lengths, symbols
    /// outside the alphabet and duplicate words.
    pub fn new(q: u32, n: usize, words: Vec<Vec<u8>>) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} outside 2..={MAX_Q}"
            )));
        }
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: w.len(),
                });
            }
            if let Some(&s) = w.iter().find(|&&s| s as u32 >= q) {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    q,
                });
            }
            if !seen.insert(w.as_slice()) {
                return Err(Error::DuplicateWord(digits(w)));
            }
        }
        let len = words.len();
        let storage = if q == 2 {
            let limbs = n.div_ceil(64);
            let mut data = Vec::with_capacity(limbs * len);
            for w in &words {
                data.extend(pack_binary(w));
            }
            Storage::Packed { limbs, data }
        } else {
            Storage::Symbols(words.concat())
        };
        Ok(Self { q, n, len, storage })
    }

    /// Builds a binary code from strings of `0`/`1` characters.
    pub fn from_binary_strings<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let n = words.first().map_or(0, |w| w.as_ref().len());
        let parsed = words
            .iter()
            .map(|w| parse_digits(w.as_ref(), 2))
            .collect::<Result<Vec<_>>>()?;
        Self::new(2, n, parsed)
    }

    /// Builds a binary code from words given as packed limbs.
    pub fn from_packed(n: usize, words: &[Vec<u64>]) -> Result<Self> {
        let unpacked = words
            .iter()
            .map(|limbs| {
                (0..n)
                    .map(|i| (limbs.get(i / 64).copied().unwrap_or(0) >> (i % 64) & 1) as u8)
                    .collect()
            })
            .collect();
        Self::new(2, n, unpacked)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of words `M`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    /// Symbol at coordinate `i` (0-based) of word `j`.
    pub fn symbol(&self, j: usize, i: usize) -> u8 {
        match &self.storage {
            Storage::Packed { limbs, data } => (data[j * limbs + i / 64] >> (i % 64) & 1) as u8,
            Storage::Symbols(data) => data[j * self.n + i],
        }
    }

    /// Word `j` as a symbol vector.
    pub fn word(&self, j: usize) -> Vec<u8> {
        match &self.storage {
            Storage::Packed { .. } => (0..self.n).map(|i| self.symbol(j, i)).collect(),
            Storage::Symbols(data) => data[j * self.n..(j + 1) * self.n].to_vec(),
        }
    }

    /// Packed limbs of word `j`, for binary codes.
    pub fn packed_word(&self, j: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Packed { limbs, data } => Some(&data[j * limbs..(j + 1) * limbs]),
            Storage::Symbols(_) => None,
        }
    }

    pub fn words(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.len).map(|j| self.word(j))
    }

    /// Word `j` as a string of digits.
    pub fn word_string(&self, j: usize) -> String {
        digits(&self.word(j))
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        if word.len() != self.n {
            return None;
        }
        match &self.storage {
            Storage::Packed { limbs, data } => {
                if word.iter().any(|&s| s > 1) {
                    return None;
                }
                let packed = pack_binary(word);
                (0..self.len).find(|&j| data[j * limbs..(j + 1) * limbs] == packed[..])
            }
            Storage::Symbols(data) => {
                (0..self.len).find(|&j| &data[j * self.n..(j + 1) * self.n] == word)
            }
        }
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.index_of(word).is_some()
    }

    /// Set equality, ignoring word order.
    pub fn same_words(&self, other: &Code) -> bool {
        if self.q != other.q || self.n != other.n || self.len != other.len {
            return false;
        }
        let mine: HashSet<Vec<u8>> = self.words().collect();
        other.words().all(|w| mine.contains(&w))
    }

    /// Distance between words `a` and `b` of this code.
    pub fn distance(&self, a: usize, b: usize) -> u32 {
        match &self.storage {
            Storage::Packed { limbs, data } => packed_distance(
                &data[a * limbs..(a + 1) * limbs],
                &data[b * limbs..(b + 1) * limbs],
            ),
            Storage::Symbols(data) => {
                let (u, v) = (
                    &data[a * self.n..(a + 1) * self.n],
                    &data[b * self.n..(b + 1) * self.n],
                );
                u.iter().zip(v).filter(|(x, y)| x != y).count() as u32
            }
        }
    }

    /// Number of nonzero symbols in word `j`.
    pub fn weight(&self, j: usize) -> u32 {
        match &self.storage {
            Storage::Packed { limbs, data } => data[j * limbs..(j + 1) * limbs]
                .iter()
                .map(|l| l.count_ones())
                .sum(),
            Storage::Symbols(data) => data[j * self.n..(j + 1) * self.n]
                .iter()
                .filter(|&&s| s != 0)
                .count() as u32,
        }
    }

    fn min_distance_from(&self, a: usize) -> u32 {
        ((a + 1)..self.len)
            .map(|b| self.distance(a, b))
            .min()
            .unwrap_or(u32::MAX)
    }

    /// Exact minimum distance over all unordered pairs of words.
    pub fn minimum_distance(&self) -> Result<u32> {
        if self.len < 2 {
            return Err(Error::DistanceUndefined(self.len));
        }
        #[cfg(feature = "parallel")]
        if self.len * (self.len - 1) / 2 >= PARALLEL_PAIR_THRESHOLD {
            let d = (0..self.len)
                .into_par_iter()
                .map(|a| self.min_distance_from(a))
                .min();
            return Ok(d.expect("at least two words"));
        }
        let d = (0..self.len).map(|a| self.min_distance_from(a)).min();
        Ok(d.expect("at least two words"))
    }

    /// Histogram of word weights.
    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for j in 0..self.len {
            *hist.entry(self.weight(j)).or_insert(0) += 1;
        }
        hist
    }

    /// `k` with `M = q^k`, if any.
    pub fn dimension(&self) -> Option<u32> {
        let mut size = 1usize;
        let mut k = 0;
        while size < self.len {
            size = size.checked_mul(self.q as usize)?;
            k += 1;
        }
        (size == self.len).then_some(k)
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            q: self.q,
            n: self.n,
            m: self.len,
            k: self.dimension(),
            d: self.minimum_distance().ok(),
        }
    }

    /// Tests whether the projection onto the first `k` coordinates hits every
    /// message in `{0..q-1}^k` exactly once.
    pub fn check_systematic(&self, k: u32) -> SystematicCheck {
        self.check_information_set(&(0..k as usize).collect::<Vec<_>>())
    }

    /// Like [`Code::check_systematic`] for an arbitrary ordered set of
    /// coordinates (0-based).
    pub fn check_information_set(&self, coordinates: &[usize]) -> SystematicCheck {
        let k = coordinates.len();
        if coordinates.iter().any(|&c| c >= self.n) {
            return SystematicCheck::TooShort {
                n: self.n,
                k: k as u32,
            };
        }
        let mut first_seen: HashMap<Vec<u8>, usize> = HashMap::with_capacity(self.len);
        for j in 0..self.len {
            let prefix: Vec<u8> = coordinates.iter().map(|&i| self.symbol(j, i)).collect();
            if let Some(&first) = first_seen.get(&prefix) {
                return SystematicCheck::Duplicate {
                    message: prefix,
                    first,
                    second: j,
                };
            }
            first_seen.insert(prefix, j);
        }
        // All prefixes are distinct; find the lexicographically first gap.
        let mut prefixes: Vec<Vec<u8>> = first_seen.into_keys().collect();
        prefixes.sort_unstable();
        let mut expected = vec![0u8; k];
        for p in &prefixes {
            if *p != expected {
                return SystematicCheck::Missing { message: expected };
            }
            if !increment(&mut expected, self.q) {
                // Every message is present.
                return SystematicCheck::Systematic;
            }
        }
        SystematicCheck::Missing { message: expected }
    }

    /// Finds the lexicographically first `k`-subset of coordinates that is an
    /// information set, trying the fixed prefix `0..k` first.
    pub fn find_information_set(&self, k: u32) -> Option<Vec<usize>> {
        let k = k as usize;
        if k > self.n || self.dimension() != Some(k as u32) {
            return None;
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            if self.check_information_set(&subset).is_systematic() {
                return Some(subset);
            }
            // next k-combination of 0..n
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if subset[i] < self.n - k + i {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    /// The code `{u - w : u in C}` (component-wise mod `q`), which contains the
    /// zero word. Requires `q` prime and `w` a word of the code.
    pub fn translate_to_zero(&self, w: &[u8]) -> Result<Code> {
        if !is_prime(self.q) {
            return Err(Error::NotPrime(self.q));
        }
        if !self.contains(w) {
            return Err(Error::WordNotInCode(digits(w)));
        }
        let q = self.q as u16;
        let words = self
            .words()
            .map(|u| {
                u.iter()
                    .zip(w)
                    .map(|(&a, &b)| ((a as u16 + q - b as u16) % q) as u8)
                    .collect()
            })
            .collect();
        Code::new(self.q, self.n, words)
    }

    /// Applies a coordinate permutation: coordinate `i` of the result is
    /// coordinate `perm[i]` of the input.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Code> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.n).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        let words = self
            .words()
            .map(|w| perm.iter().map(|&i| w[i]).collect())
            .collect();
        Code::new(self.q, self.n, words)
    }

    /// Closed under component-wise addition mod `q`.
    pub fn is_additively_closed(&self) -> bool {
        let set: HashSet<Vec<u8>> = self.words().collect();
        let q = self.q as u16;
        let words: Vec<Vec<u8>> = self.words().collect();
        words.iter().all(|a| {
            words.iter().all(|b| {
                let sum: Vec<u8> = a
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| ((x as u16 + y as u16) % q) as u8)
                    .collect();
                set.contains(&sum)
            })
        })
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for j in 0..self.len.min(32) {
            list.entry(&format_args!("{}", self.word_string(j)));
        }
        if self.len > 32 {
            list.entry(&format_args!("... {} more", self.len - 32));
        }
        list.finish()?;
        write!(f, " q={} n={}", self.q, self.n)
    }
}

/// Base-`q` increment of a message, most significant symbol first. Returns
/// false on wrap-around.
fn increment(message: &mut [u8], q: u32) -> bool {
    for s in message.iter_mut().rev() {
        if (*s as u32) + 1 < q {
            *s += 1;
            return true;
        }
        *s = 0;
    }
    false
}

pub(crate) fn digits(word: &[u8]) -> String {
    word.iter()
        .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}

pub(crate) fn parse_digits(s: &str, q: u32) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(v) if v < q => Ok(v as u8),
            Some(v) => Err(Error::SymbolOutOfRange { symbol: v, q }),
            None => Err(Error::InvalidParameter(format!("'{c}' is not a digit"))),
        })
        .collect()
}

/// All `q^k` messages in lexicographic order.
pub fn all_messages(q: u32, k: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut m = vec![0u8; k as usize];
    loop {
        out.push(m.clone());
        if !increment(&mut m, q) {
            return out;
        }
    }
}

/// A code whose first `k` coordinates carry every message exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicCode {
    code: Code,
    k: u32,
}

impl SystematicCode {
    pub fn new(code: Code, k: u32) -> Result<Self> {
        match code.check_systematic(k) {
            SystematicCheck::Systematic => Ok(Self { code, k }),
            other => Err(Error::NotSystematic {
                k,
                reason: other.to_string(),
            }),
        }
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn into_code(self) -> Code {
        self.code
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn q(&self) -> u32 {
        self.code.q()
    }

    /// The codeword `F(message)`.
    pub fn encode(&self, message: &[u8]) -> Option<Vec<u8>> {
        if message.len() != self.k as usize {
            return None;
        }
        (0..self.code.len())
            .find(|&j| (0..message.len()).all(|i| self.code.symbol(j, i) == message[i]))
            .map(|j| self.code.word(j))
    }

    /// Non-systematic coordinate `i` (0-based, `k <= i < n`) as a function of
    /// the message: `f_i(message)`.
    pub fn redundancy_symbol(&self, message: &[u8], i: usize) -> Option<u8> {
        self.encode(message).and_then(|w| w.get(i).copied())
    }
}
