//! Explicit codes: binary cyclic codes from a defining set, systematic form
//! of linear codes, the `(19, 16, 10)_2` rotation code and the
//! `(34, 2^4, 18)_2` systematic code built from it.
//!
//! Both explicit codes are also embedded verbatim as golden listings; the
//! constructors rebuild them from their recipes and check the result against
//! the listing.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{griesmer, sufficient_dimension_cap};
use crate::code::{all_messages, Code, SystematicCode};
use crate::error::{Error, Result};
use crate::gf2x::{generator_from_defining_set, GF2Poly};
use crate::transforms::{concat_paired_systematic, Pairing};

/// Base word of the rotation code; the other 14 nonzero words are its left
/// rotations.
pub const ROTATION_BASE: &str = "1100111101010000110";

/// The 16 words of the `(19, 16, 10)_2` code, in listing order.
pub const LISTING_19_16_10: [&str; 16] = [
    "0000000000000000000",
    "1100111101010000110",
    "1001111010100001101",
    "0011110101000011011",
    "0111101010000110110",
    "1111010100001101100",
    "1110101000011011001",
    "1101010000110110011",
    "1010100001101100111",
    "0101000011011001111",
    "1010000110110011110",
    "0100001101100111101",
    "1000011011001111010",
    "0000110110011110101",
    "0001101100111101010",
    "0011011001111010100",
];

/// The 16 words of the `(34, 2^4, 18)_2` systematic code, in listing order.
pub const LISTING_34_16_18: [&str; 16] = [
    "0000000000000000000000000000000000",
    "1000111010010111100111101010000110",
    "1100001100111101001111010100001101",
    "0100110110101010011110101000011011",
    "0110011001100110111101010000110110",
    "1110100011110001111010100001101100",
    "1010010101011011110101000011011001",
    "0010101111001101101010000110110011",
    "0011110000111101010100001101100111",
    "1011001010101010101000011011001111",
    "1111111100000001010000110110011110",
    "0111000110010110100001101100111101",
    "0101101001011011000011011001111010",
    "1101010011001100000110110011110101",
    "1001100101100110001101100111101010",
    "0001011111110000011011001111010100",
];

/// Rows of the systematic generator matrix of the `[15, 4, 8]_2` simplex code.
pub const SIMPLEX_15_ROWS: [&str; 4] = [
    "100011101001011",
    "010011011010101",
    "001010111100110",
    "000101111111000",
];

/// Complete defining set of the cyclic `[15, 4, 8]_2` code.
pub const SIMPLEX_15_DEFINING_SET: [u32; 11] = [0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12];

/// A binary generator matrix with linearly independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    n: usize,
    rows: Vec<Vec<u8>>,
}

/// Row-reduces `rows` in place, choosing the leftmost available pivot in each
/// column. Returns the pivot columns; rows past `pivots.len()` end up zero.
fn row_reduce(rows: &mut [Vec<u8>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(found) = (next..rows.len()).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row[col] == 1 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

impl GeneratorMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                });
            }
            if let Some(&s) = r.iter().find(|&&s| s > 1) {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    q: 2,
                });
            }
        }
        let rank = row_reduce(&mut rows.clone(), n).len();
        if rank < rows.len() {
            return Err(Error::RankDeficient {
                rank,
                rows: rows.len(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| crate::code::parse_digits(r, 2))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// The systematic generator matrix of the `[15, 4, 8]_2` simplex code.
    pub fn simplex_15() -> Self {
        Self::from_strings(&SIMPLEX_15_ROWS).expect("embedded matrix is valid")
    }

    pub fn k(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// `message * G` over GF(2).
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        let mut word = vec![0u8; self.n];
        for (row, &m) in self.rows.iter().zip(message) {
            if m & 1 == 1 {
                for (w, r) in word.iter_mut().zip(row) {
                    *w ^= r;
                }
            }
        }
        word
    }

    /// All `2^k` codewords, messages in lexicographic order.
    pub fn code(&self) -> Code {
        let words = all_messages(2, self.k())
            .iter()
            .map(|m| self.encode(m))
            .collect();
        Code::new(2, self.n, words).expect("independent rows give distinct codewords")
    }

    /// Reduced row echelon form with leftmost pivots, and the coordinate
    /// permutation that moves the pivot columns to the front.
    pub fn systematic_form(&self) -> (GeneratorMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = row_reduce(&mut rows, self.n);
        let mut perm = pivots.clone();
        perm.extend((0..self.n).filter(|c| !pivots.contains(c)));
        let rows = rows
            .into_iter()
            .map(|r| perm.iter().map(|&c| r[c]).collect())
            .collect();
        (GeneratorMatrix { n: self.n, rows }, perm)
    }
}

/// A linear code in systematic form and the column permutation used:
/// coordinate `i` of `code` is coordinate `permutation[i]` of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicForm {
    pub code: SystematicCode,
    pub matrix: GeneratorMatrix,
    pub permutation: Vec<usize>,
}

/// Extracts a basis of a binary linear code given by its word list.
pub fn basis(code: &Code) -> Result<GeneratorMatrix> {
    if !code.is_binary() {
        return Err(Error::NotBinary(code.q()));
    }
    let mut rows: Vec<Vec<u8>> = code.words().collect();
    let rank = row_reduce(&mut rows, code.n()).len();
    rows.truncate(rank);
    if code.len() != 1usize << rank {
        return Err(Error::NotLinear(format!(
            "{} words span a space of 2^{rank} words",
            code.len()
        )));
    }
    GeneratorMatrix::new(rows)
}

/// Systematic form of a binary linear code (given by its words).
pub fn systematic_form(code: &Code) -> Result<SystematicForm> {
    systematic_form_of_matrix(&basis(code)?)
}

/// Systematic form of the code generated by `g`.
pub fn systematic_form_of_matrix(g: &GeneratorMatrix) -> Result<SystematicForm> {
    let (matrix, permutation) = g.systematic_form();
    let code = SystematicCode::new(matrix.code(), matrix.k())?;
    Ok(SystematicForm {
        code,
        matrix,
        permutation,
    })
}

/// The binary cyclic code of odd length `n` with the given complete defining
/// set: all multiples `m(x) g(x)` with `deg m < n - deg g`, word coordinate
/// `i` being the coefficient of `x^i`. Messages are taken in lexicographic
/// order of their coefficient vectors.
pub fn cyclic_code(n: u32, defset: &BTreeSet<u32>) -> Result<Code> {
    let g = generator_from_defining_set(n, defset)?;
    let k = n - g.degree().expect("generator is nonzero") as u32;
    let words = all_messages(2, k)
        .into_iter()
        .map(|m| {
            let msg = GF2Poly::from_coefficients(m.iter().map(|&s| s == 1));
            let c = msg.mul(&g);
            (0..n as usize).map(|i| c.coefficient(i) as u8).collect()
        })
        .collect();
    Code::new(2, n as usize, words)
}

/// Left rotation of a word by `by` positions.
fn rotate_left(word: &[u8], by: usize) -> Vec<u8> {
    let mut w = word.to_vec();
    w.rotate_left(by % word.len().max(1));
    w
}

/// The `(19, 16, 10)_2` nonlinear, non-systematic code: the zero word and
/// the 15 left rotations (by 0..=14) of [`ROTATION_BASE`].
pub fn levenshtein_19_16_10() -> Code {
    let base = crate::code::parse_digits(ROTATION_BASE, 2).expect("binary digits");
    let mut words = vec![vec![0u8; base.len()]];
    words.extend((0..15).map(|j| rotate_left(&base, j)));
    let code = Code::new(2, base.len(), words).expect("rotations are distinct");
    assert_eq!(
        code,
        Code::from_binary_strings(&LISTING_19_16_10).expect("listing parses"),
        "rotation recipe disagrees with the embedded listing"
    );
    code
}

/// The simplex code's messages in reflected Gray-code order, reading the
/// first message symbol as the least significant bit. This is the order in
/// which the `[15, 4, 8]` halves appear in the 34-bit listing.
pub fn gray_order_messages(k: u32) -> Vec<Vec<u8>> {
    (0u64..1 << k)
        .map(|i| {
            let g = i ^ (i >> 1);
            (0..k).map(|b| (g >> b & 1) as u8).collect()
        })
        .collect()
}

/// The `[15, 4, 8]_2` systematic simplex code with words in Gray-code order.
pub fn simplex_15_gray() -> SystematicCode {
    let g = GeneratorMatrix::simplex_15();
    let words = gray_order_messages(4).iter().map(|m| g.encode(m)).collect();
    SystematicCode::new(Code::new(2, 15, words).expect("distinct"), 4).expect("identity prefix")
}

/// The `(34, 2^4, 18)_2` systematic code: word `j` of the Gray-ordered
/// simplex code followed by word `j` of [`levenshtein_19_16_10`].
pub fn systematic_counterexample_34() -> SystematicCode {
    let code = concat_paired_systematic(
        &simplex_15_gray(),
        &levenshtein_19_16_10(),
        &Pairing::Listed,
    )
    .expect("equal sizes, systematic first half");
    assert_eq!(
        code.code(),
        &Code::from_binary_strings(&LISTING_34_16_18).expect("listing parses"),
        "concatenation recipe disagrees with the embedded listing"
    );
    code
}

/// Search targets for a binary systematic code of distance `2^r + 2` that
/// beats the Griesmer bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureTarget {
    pub q: u32,
    pub r: u32,
    pub d: u64,
    /// Dimensions `1..=k_max`, i.e. `k < 1 + log_2 d`, suffice.
    pub k_max: u32,
    /// `(k, g_2(k, d))`: length to beat for each dimension.
    pub griesmer: Vec<(u32, u64)>,
}

pub fn conjecture_targets(r: u32) -> Result<ConjectureTarget> {
    if !(3..=62).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside 3..=62")));
    }
    let d = (1u64 << r) + 2;
    let k_max = sufficient_dimension_cap(2, d);
    let griesmer = (1..=k_max)
        .map(|k| Ok((k, griesmer(2, k, d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureTarget {
        q: 2,
        r,
        d,
        k_max,
        griesmer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn rank_checks() {
        assert!(matches!(
            GeneratorMatrix::from_strings(&["110", "011", "101"]),
            Err(Error::RankDeficient { rank: 2, rows: 3 })
        ));
        let id = GeneratorMatrix::from_strings(&["100", "010", "001"]).unwrap();
        let (m, perm) = id.systematic_form();
        assert_eq!(m, id);
        assert_eq!(perm, vec![0, 1, 2]);
    }

    #[test]
    fn paper_matrix_is_already_systematic() {
        let g = GeneratorMatrix::simplex_15();
        let (m, perm) = g.systematic_form();
        assert_eq!(perm, (0..15).collect::<Vec<_>>());
        assert_eq!(m, g);
        let code = g.code();
        assert_eq!(code.minimum_distance().unwrap(), 8);
        assert_eq!(
            code.weight_distribution(),
            BTreeMap::from([(0, 1), (8, 15)])
        );
    }

    #[test]
    fn systematic_form_moves_pivots_forward() {
        let code = Code::from_binary_strings(&["000", "110", "001", "111"]).unwrap();
        let form = systematic_form(&code).unwrap();
        assert_eq!(form.permutation, vec![0, 2, 1]);
        assert!(form
            .code
            .code()
            .same_words(&code.permute_coordinates(&form.permutation).unwrap()));
        assert!(matches!(
            systematic_form(&Code::from_binary_strings(&["00", "01", "10"]).unwrap()),
            Err(Error::NotLinear(_))
        ));
    }

    #[test]
    fn cyclic_codes() {
        let c = cyclic_code(15, &set(&SIMPLEX_15_DEFINING_SET)).unwrap();
        assert_eq!((c.n(), c.len(), c.minimum_distance().unwrap()), (15, 16, 8));

        let full = cyclic_code(7, &set(&[])).unwrap();
        assert_eq!(
            (full.n(), full.len(), full.minimum_distance().unwrap()),
            (7, 128, 1)
        );

        let hamming = cyclic_code(7, &set(&[1, 2, 4])).unwrap();
        assert_eq!(
            (
                hamming.n(),
                hamming.len(),
                hamming.minimum_distance().unwrap()
            ),
            (7, 16, 3)
        );
    }

    #[test]
    fn cyclic_codes_are_cyclic_and_linear() {
        for (n, s) in [
            (15u32, set(&SIMPLEX_15_DEFINING_SET)),
            (7, set(&[1, 2, 4])),
            (9, set(&[3, 6])),
            (15, set(&[1, 2, 4, 8, 5, 10])),
        ] {
            let c = cyclic_code(n, &s).unwrap();
            assert!(c.is_additively_closed());
            for w in c.words() {
                assert!(c.contains(&rotate_left(&w, 1)));
            }
            let form = systematic_form(&c).unwrap();
            assert_eq!(form.code.code().len(), c.len());
            assert_eq!(
                form.code.code().minimum_distance().unwrap(),
                c.minimum_distance().unwrap()
            );
            assert!(form.code.code().is_additively_closed());
        }
    }

    #[test]
    fn rotation_code() {
        let c = levenshtein_19_16_10();
        assert_eq!(c.len(), 16);
        assert_eq!(c.minimum_distance().unwrap(), 10);
        assert_eq!(c.weight_distribution(), BTreeMap::from([(0, 1), (10, 15)]));
        assert!(!c.check_systematic(4).is_systematic());
    }

    #[test]
    fn counterexample_code() {
        let c = systematic_counterexample_34();
        assert_eq!(c.k(), 4);
        assert_eq!(c.code().minimum_distance().unwrap(), 18);
        // row 2 is row 1 of the matrix next to the base rotation word
        assert_eq!(
            c.code().word_string(1),
            format!("{}{}", SIMPLEX_15_ROWS[0], LISTING_19_16_10[1])
        );
    }

    #[test]
    fn conjecture() {
        let t = conjecture_targets(4).unwrap();
        assert_eq!((t.d, t.k_max), (18, 5));
        let t = conjecture_targets(3).unwrap();
        assert_eq!((t.d, t.k_max), (10, 4));
        assert_eq!(t.griesmer.last(), Some(&(4, 20)));
        assert!(conjecture_targets(2).is_err());
    }
}
