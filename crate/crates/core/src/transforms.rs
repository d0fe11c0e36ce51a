//! Code surgeries: puncturing, shortening, distance reduction, parity
//! extension, repetition and pairwise concatenation.
//!
//! Coordinates are 1-based in this module's public API, matching the way
//! codes are usually written down; every transform returns a new code.

use std::fmt;

use crate::code::{Code, SystematicCode};
use crate::error::{Error, Result};

/// A punctured code, plus how many words collapsed onto others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Punctured {
    pub code: Code,
    pub merged: usize,
}

fn check_coordinate(i: usize, len: usize) -> Result<usize> {
    if i == 0 || i > len {
        return Err(Error::CoordinateOutOfRange { coordinate: i, len });
    }
    Ok(i - 1)
}

/// Deletes coordinate `i`. Words that become equal are merged, keeping the
/// first occurrence.
pub fn puncture(c: &Code, i: usize) -> Result<Punctured> {
    let idx = check_coordinate(i, c.n())?;
    let mut seen = std::collections::HashSet::new();
    let mut words = Vec::with_capacity(c.len());
    for mut w in c.words() {
        w.remove(idx);
        if seen.insert(w.clone()) {
            words.push(w);
        }
    }
    let merged = c.len() - words.len();
    Ok(Punctured {
        code: Code::new(c.q(), c.n() - 1, words)?,
        merged,
    })
}

/// Keeps the words with symbol 0 at systematic coordinate `i` and deletes
/// that coordinate: an `(n-1, q^{k-1}, d' >= d)` systematic code.
pub fn shorten_systematic(c: &SystematicCode, i: usize) -> Result<SystematicCode> {
    let idx = check_coordinate(i, c.k() as usize).map_err(|_| {
        Error::InvalidParameter(format!(
            "coordinate {i} is not systematic (systematic coordinates are 1..={})",
            c.k()
        ))
    })?;
    let words = c
        .code()
        .words()
        .filter(|w| w[idx] == 0)
        .map(|mut w| {
            w.remove(idx);
            w
        })
        .collect();
    let code = Code::new(c.q(), c.n() - 1, words)?;
    SystematicCode::new(code, c.k() - 1)
}

/// Punctures non-systematic coordinates, rightmost first, until the
/// distance is exactly `target`.
pub fn reduce_distance(c: &SystematicCode, target: u32) -> Result<SystematicCode> {
    let mut d = c.code().minimum_distance()?;
    if target == 0 || target > d {
        return Err(Error::TargetAboveDistance {
            target,
            distance: d,
        });
    }
    let mut current = c.clone();
    while d > target {
        let n = current.n();
        if n <= current.k() as usize {
            return Err(Error::InvalidParameter(format!(
                "no non-systematic coordinate left to puncture (n = k = {n})"
            )));
        }
        let punctured = puncture(current.code(), n)?;
        // systematic prefixes are untouched, so no words merge
        debug_assert_eq!(punctured.merged, 0);
        let next_d = punctured.code.minimum_distance()?;
        if next_d + 1 < d {
            return Err(Error::DistanceSkipped {
                from: d,
                to: next_d,
            });
        }
        current = SystematicCode::new(punctured.code, current.k())?;
        d = next_d;
    }
    Ok(current)
}

/// Appends an overall parity bit to every word of a binary code.
pub fn extend_parity(c: &Code) -> Result<Code> {
    if !c.is_binary() {
        return Err(Error::NotBinary(c.q()));
    }
    let words = c
        .words()
        .map(|mut w| {
            let parity = w.iter().fold(0u8, |acc, &s| acc ^ s);
            w.push(parity);
            w
        })
        .collect();
    Code::new(2, c.n() + 1, words)
}

/// Concatenates every word with itself `t` times: `(tn, M, td)`.
pub fn repeat(c: &Code, t: usize) -> Result<Code> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "repetition count must be >= 1".into(),
        ));
    }
    let words = c.words().map(|w| w.repeat(t)).collect();
    Code::new(c.q(), c.n() * t, words)
}

/// How the words of two equal-size codes are matched up for concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Pairing {
    /// Word `j` of the first code with word `j` of the second.
    Listed,
    /// The `r`-th smallest word of each code with each other.
    #[default]
    Sorted,
    /// Word `j` of the first code with word `map[j]` of the second.
    Explicit(Vec<usize>),
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pairing::Listed => write!(f, "listed"),
            Pairing::Sorted => write!(f, "sorted"),
            Pairing::Explicit(map) => write!(f, "explicit {map:?}"),
        }
    }
}

impl Pairing {
    /// The index map `j -> partner of word j`.
    fn resolve(&self, a: &Code, b: &Code) -> Result<Vec<usize>> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        let m = a.len();
        match self {
            Pairing::Listed => Ok((0..m).collect()),
            Pairing::Sorted => {
                let order = |c: &Code| {
                    let mut idx: Vec<usize> = (0..c.len()).collect();
                    idx.sort_by_key(|&j| c.word(j));
                    idx
                };
                let (oa, ob) = (order(a), order(b));
                let mut map = vec![0; m];
                for (ja, jb) in oa.into_iter().zip(ob) {
                    map[ja] = jb;
                }
                Ok(map)
            }
            Pairing::Explicit(map) => {
                if map.len() != m {
                    return Err(Error::BadPairing(format!(
                        "{} entries for {m} words",
                        map.len()
                    )));
                }
                let mut hit = vec![false; m];
                for &j in map {
                    if j >= m || std::mem::replace(&mut hit[j], true) {
                        return Err(Error::BadPairing(format!(
                            "index {j} repeated or out of range"
                        )));
                    }
                }
                Ok(map.clone())
            }
        }
    }
}

/// The code `{u || partner(u)}`. Its distance is at least `d(a) + d(b)`.
pub fn concat_paired(a: &Code, b: &Code, pairing: &Pairing) -> Result<Code> {
    if a.q() != b.q() {
        return Err(Error::InvalidParameter(format!(
            "alphabet sizes differ ({} vs {})",
            a.q(),
            b.q()
        )));
    }
    let map = pairing.resolve(a, b)?;
    let words = map
        .iter()
        .enumerate()
        .map(|(ja, &jb)| {
            let mut w = a.word(ja);
            w.extend(b.word(jb));
            w
        })
        .collect();
    Code::new(a.q(), a.n() + b.n(), words)
}

/// [`concat_paired`] for a systematic first code; the result is systematic
/// with the same dimension.
pub fn concat_paired_systematic(
    a: &SystematicCode,
    b: &Code,
    pairing: &Pairing,
) -> Result<SystematicCode> {
    SystematicCode::new(concat_paired(a.code(), b, pairing)?, a.k())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(words: &[&str]) -> Code {
        Code::from_binary_strings(words).unwrap()
    }

    #[test]
    fn puncturing() {
        let p = puncture(&bin(&["00", "11"]), 1).unwrap();
        assert_eq!(p.code, bin(&["0", "1"]));
        assert_eq!(p.merged, 0);

        let p = puncture(&bin(&["0", "1"]), 1).unwrap();
        assert_eq!(p.code.len(), 1);
        assert_eq!(p.code.n(), 0);
        assert_eq!(p.merged, 1);

        assert!(matches!(
            puncture(&bin(&["00"]), 3),
            Err(Error::CoordinateOutOfRange {
                coordinate: 3,
                len: 2
            })
        ));
        assert!(puncture(&bin(&["00"]), 0).is_err());
    }

    #[test]
    fn shortening() {
        let full = SystematicCode::new(bin(&["00", "01", "10", "11"]), 2).unwrap();
        let s = shorten_systematic(&full, 1).unwrap();
        assert_eq!(s.code(), &bin(&["0", "1"]));
        assert_eq!(s.k(), 1);
        assert_eq!(s.code().minimum_distance().unwrap(), 1);
        let s2 = shorten_systematic(&full, 2).unwrap();
        assert_eq!(s2.code(), &bin(&["0", "1"]));
        assert!(shorten_systematic(&full, 3).is_err());
    }

    #[test]
    fn reducing_distance() {
        let c = SystematicCode::new(bin(&["000", "011", "101", "110"]), 2).unwrap();
        assert_eq!(reduce_distance(&c, 2).unwrap(), c);
        let r = reduce_distance(&c, 1).unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.code().len(), 4);
        assert_eq!(r.code().minimum_distance().unwrap(), 1);
        assert!(matches!(
            reduce_distance(&c, 3),
            Err(Error::TargetAboveDistance {
                target: 3,
                distance: 2
            })
        ));
    }

    #[test]
    fn parity_extension() {
        let e = extend_parity(&bin(&["0", "1"])).unwrap();
        assert_eq!(e, bin(&["00", "11"]));
        assert_eq!(e.minimum_distance().unwrap(), 2);
        let ternary = Code::new(3, 1, vec![vec![0], vec![2]]).unwrap();
        assert_eq!(extend_parity(&ternary), Err(Error::NotBinary(3)));
    }

    #[test]
    fn repetition() {
        let c = bin(&["00", "11"]);
        assert_eq!(repeat(&c, 1).unwrap(), c);
        let r = repeat(&c, 3).unwrap();
        assert_eq!((r.n(), r.len(), r.minimum_distance().unwrap()), (6, 2, 6));
        assert!(repeat(&c, 0).is_err());
    }

    #[test]
    fn concatenation() {
        let a = bin(&["0", "1"]);
        let b = bin(&["11", "00"]);
        assert_eq!(
            concat_paired(&a, &b, &Pairing::Listed).unwrap(),
            bin(&["011", "100"])
        );
        assert_eq!(
            concat_paired(&a, &b, &Pairing::Sorted).unwrap(),
            bin(&["000", "111"])
        );
        assert_eq!(
            concat_paired(&a, &b, &Pairing::Explicit(vec![1, 0])).unwrap(),
            bin(&["000", "111"])
        );
        let single = concat_paired(&bin(&["01"]), &bin(&["110"]), &Pairing::Listed).unwrap();
        assert_eq!(single, bin(&["01110"]));

        assert!(matches!(
            concat_paired(&a, &bin(&["1"]), &Pairing::Listed),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            concat_paired(&a, &b, &Pairing::Explicit(vec![0, 0])),
            Err(Error::BadPairing(_))
        ));
        assert!(matches!(
            concat_paired(&a, &b, &Pairing::Explicit(vec![0])),
            Err(Error::BadPairing(_))
        ));
    }
}
