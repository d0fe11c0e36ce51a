//! Length lower bounds for `(n, M, d)_q` codes.
//!
//! Everything here is exact: logarithms are computed by repeated
//! multiplication and the Plotkin-type bounds use integer or rational
//! arithmetic, never floating point.
//!
//! Besides the closed-form bounds, [`classify_family`] decides whether the
//! Griesmer bound `g_q(k, d)` is known to hold for a parameter triple in the
//! systematic or the general nonlinear setting, and [`best_lower_bound`]
//! gathers every bound into a sorted list of [`BoundReport`]s.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family of codes a bound speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    /// `(n, q^k, d)` codes whose first `k` coordinates are systematic.
    Systematic,
    /// Arbitrary codes with `M` words.
    Nonlinear,
    /// `[n, k, d]` linear codes.
    Linear,
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Systematic => "systematic",
            Setting::Nonlinear => "nonlinear",
            Setting::Linear => "linear",
        })
    }
}

impl std::str::FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "systematic" => Ok(Setting::Systematic),
            "nonlinear" => Ok(Setting::Nonlinear),
            "linear" => Ok(Setting::Linear),
            other => Err(Error::InvalidParameter(format!(
                "unknown setting `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    Griesmer,
    BoundA,
    BoundB,
    BoundC,
    WeakGriesmer,
    Plotkin,
    SingletonImprovedSystematic,
    Singleton,
}

impl BoundSource {
    pub const ALL: [BoundSource; 8] = [
        BoundSource::Griesmer,
        BoundSource::BoundA,
        BoundSource::BoundB,
        BoundSource::BoundC,
        BoundSource::WeakGriesmer,
        BoundSource::Plotkin,
        BoundSource::SingletonImprovedSystematic,
        BoundSource::Singleton,
    ];

    /// One-letter tag used in tables.
    pub fn letter(self) -> char {
        match self {
            BoundSource::Griesmer => 'G',
            BoundSource::BoundA => 'A',
            BoundSource::BoundB => 'B',
            BoundSource::BoundC => 'C',
            BoundSource::WeakGriesmer => 'W',
            BoundSource::Plotkin => 'P',
            BoundSource::SingletonImprovedSystematic => 'I',
            BoundSource::Singleton => 'S',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.letter() == c)
    }

    pub fn description(self) -> &'static str {
        match self {
            BoundSource::Griesmer => "Griesmer bound g_q(k,d)",
            BoundSource::BoundA => "Bound A: d + sum_{i=1}^{k-1} ceil(q^l r / q^i)",
            BoundSource::BoundB => "Bound B: sum_{i=0}^{min(k-1,l)} ceil(d / q^i), q^l || d",
            BoundSource::BoundC => "Bound C: ceil(d (1 - q^-k) / (1 - q^-1))",
            BoundSource::WeakGriesmer => "weak Griesmer: ceil(sum_{i<k} d / q^i)",
            BoundSource::Plotkin => "Plotkin: ceil(d (1 - 1/M) / (1 - 1/q))",
            BoundSource::SingletonImprovedSystematic => "improved Singleton: k + ceil(3d/2) - 2",
            BoundSource::Singleton => "Singleton: d + k - 1",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Griesmer => "Griesmer",
            BoundSource::BoundA => "BoundA",
            BoundSource::BoundB => "BoundB",
            BoundSource::BoundC => "BoundC",
            BoundSource::WeakGriesmer => "WeakGriesmer",
            BoundSource::Plotkin => "Plotkin",
            BoundSource::SingletonImprovedSystematic => "SingletonImprovedSystematic",
            BoundSource::Singleton => "Singleton",
        })
    }
}

/// A length lower bound and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: u64,
    pub source: BoundSource,
    pub applicable: bool,
    pub condition: String,
    /// The exact rational before rounding up, for the Plotkin-type bounds.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Holds {
    Proven,
    Unknown,
    DisprovenByExample,
}

impl fmt::Display for Holds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holds::Proven => "proven",
            Holds::Unknown => "unknown",
            Holds::DisprovenByExample => "disproven-by-example",
        })
    }
}

/// Parameter families on which the Griesmer bound is a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Linear codes: the Griesmer bound itself.
    Linear,
    /// Systematic, `d <= 2q`.
    SmallDistance,
    /// Systematic, `d = q^l r` with `1 <= r < q`, `l >= 1`. For `q = 2` this
    /// is the power-of-two family `d = 2^l`.
    PowerTimesSmall { l: u32, r: u64 },
    /// Systematic binary, `d = 2^r - 2^s` with `r > s >= 1`.
    DifferenceOfPowers { r: u32, s: u32 },
    /// Systematic binary, `d = 2^r - 1` (`s` absent) or `d = 2^r - 2^s - 1`,
    /// reduced to [`Family::PowerTimesSmall`] or
    /// [`Family::DifferenceOfPowers`] by a parity extension.
    OddDistance { r: u32, s: Option<u32> },
    /// Any `q^k`-word code with `q^{k-1} | d`, through the Plotkin bound.
    PlotkinDivisible,
    /// Any `q^k`-word code with `q^{k-1} <= d` and `d = q^l r`, `1 <= r < q`.
    PlotkinSmallR { l: u32, r: u64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Linear => write!(f, "Griesmer bound for linear codes"),
            Family::SmallDistance => write!(f, "d <= 2q"),
            Family::PowerTimesSmall { l, r } if *r == 1 => write!(f, "d = q^l with l={l}"),
            Family::PowerTimesSmall { l, r } => write!(f, "d = q^l * r with l={l}, r={r}"),
            Family::DifferenceOfPowers { r, s } => write!(f, "d = 2^r - 2^s with r={r}, s={s}"),
            Family::OddDistance { r, s: None } => write!(f, "odd d = 2^r - 1 with r={r}"),
            Family::OddDistance { r, s: Some(s) } => {
                write!(f, "odd d = 2^r - 2^s - 1 with r={r}, s={s}")
            }
            Family::PlotkinDivisible => write!(f, "q^(k-1) divides d (Plotkin argument)"),
            Family::PlotkinSmallR { l, r } => {
                write!(
                    f,
                    "q^(k-1) <= d = q^l * r with l={l}, r={r} (Plotkin argument)"
                )
            }
        }
    }
}

/// Whether the Griesmer bound is known to hold for `(q, k, d)` in a setting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub setting: Setting,
    pub holds: Holds,
    /// The family used, i.e. the first match in precedence order.
    pub theorem: Option<Family>,
    /// Every family whose hypothesis `(q, k, d)` satisfies.
    pub matches: Vec<Family>,
    pub q: u64,
    pub k: u32,
    pub d: u64,
    pub condition: String,
}

impl FamilyVerdict {
    pub fn is_proven(&self) -> bool {
        self.holds == Holds::Proven
    }
}

/// Dimension `k` (with `M = q^k`) or an explicit word count `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeSize {
    Dimension(u32),
    Words(u64),
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "alphabet size q={q} must be >= 2"
        )));
    }
    Ok(())
}

fn check_qkd(q: u64, k: u32, d: u64) -> Result<()> {
    check_q(q)?;
    if k == 0 {
        return Err(Error::InvalidParameter("dimension k must be >= 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("distance d must be >= 1".into()));
    }
    Ok(())
}

/// `q^e`, or `None` on overflow.
pub fn checked_pow(q: u64, e: u32) -> Option<u64> {
    q.checked_pow(e)
}

/// `floor(log_q x)` for `x >= 1`, by repeated multiplication.
pub fn floor_log(q: u64, x: u64) -> u32 {
    assert!(q >= 2 && x >= 1);
    let mut l = 0;
    let mut p = q;
    while p <= x {
        l += 1;
        match p.checked_mul(q) {
            Some(next) => p = next,
            None => break,
        }
    }
    l
}

/// Largest `l` with `q^l | d`, for `d >= 1`.
pub fn valuation(q: u64, mut d: u64) -> u32 {
    assert!(q >= 2 && d >= 1);
    let mut l = 0;
    while d.is_multiple_of(q) {
        d /= q;
        l += 1;
    }
    l
}

/// `sum_{i=from}^{to-1} ceil(x / q^i)`.
fn ceil_sum(x: u64, q: u64, from: u32, to: u32) -> u64 {
    let mut total = 0u64;
    let mut p = checked_pow(q, from);
    for i in from..to {
        match p {
            Some(pi) if pi < x => {
                total += x.div_ceil(pi);
                p = pi.checked_mul(q);
            }
            // q^i >= x: every remaining term is 1 (or 0 when x = 0)
            _ => {
                total += u64::from(x > 0) * (to - i) as u64;
                break;
            }
        }
    }
    total
}

/// The Griesmer function `g_q(k, d) = sum_{i=0}^{k-1} ceil(d / q^i)`.
pub fn griesmer(q: u64, k: u32, d: u64) -> Result<u64> {
    check_qkd(q, k, d)?;
    Ok(ceil_sum(d, q, 0, k))
}

/// Singleton bound `d + k - 1`.
pub fn singleton(k: u32, d: u64) -> Result<u64> {
    check_qkd(2, k, d)?;
    Ok(d + k as u64 - 1)
}

/// `k + ceil(3d/2) - 2`, a lower bound on `S_2(k, d)` for `k >= 2`. For
/// `k = 1` the plain bound `d` is returned.
pub fn singleton_improved_systematic(k: u32, d: u64) -> Result<u64> {
    check_qkd(2, k, d)?;
    if k == 1 {
        return Ok(d);
    }
    Ok(k as u64 + (3 * d).div_ceil(2) - 2)
}

/// Plotkin: for `n < qd/(q-1)`, `M <= floor(d / (d - (1 - 1/q) n))`.
pub fn plotkin_max_m(q: u64, n: u64, d: u64) -> Result<u64> {
    check_qkd(q, 1, d)?;
    let (q, n, d) = (q as u128, n as u128, d as u128);
    // d - (1-1/q)n = (qd - (q-1)n) / q
    let slack = (q * d)
        .checked_sub((q - 1) * n)
        .filter(|&s| s > 0)
        .ok_or_else(|| {
            Error::HypothesisViolated(format!(
                "Plotkin bound needs n < qd/(q-1); n={n}, q={q}, d={d}"
            ))
        })?;
    u64::try_from(q * d / slack).map_err(|_| Error::Overflow("Plotkin bound"))
}

/// `d (1 - 1/M) / (1 - 1/q)` as an exact rational.
pub fn plotkin_min_n_exact(q: u64, m: u64, d: u64) -> Result<BigRational> {
    check_qkd(q, 1, d)?;
    if m < 1 {
        return Err(Error::InvalidParameter("M must be >= 1".into()));
    }
    let big = |v: u64| BigInt::from(v);
    Ok(BigRational::new(
        big(d) * big(m - 1) * big(q),
        big(m) * big(q - 1),
    ))
}

/// Plotkin in length form: `n >= ceil(d (1 - 1/M) / (1 - 1/q))`.
pub fn plotkin_min_n(q: u64, m: u64, d: u64) -> Result<u64> {
    ceil_to_u64(&plotkin_min_n_exact(q, m, d)?)
}

fn ceil_to_u64(x: &BigRational) -> Result<u64> {
    u64::try_from(x.ceil().to_integer()).map_err(|_| Error::Overflow("rational bound"))
}

/// `l = floor(log_q d)` and `r = floor(d / q^l)`, so that
/// `q^l r <= d < q^l (r + 1)` and `1 <= r < q`.
pub fn leading_digit_split(q: u64, d: u64) -> (u32, u64) {
    let l = floor_log(q, d);
    let r = d / q.pow(l);
    (l, r)
}

/// Bound A on `S_q(k, d)`: `d + sum_{i=1}^{k-1} ceil(q^l r / q^i)`.
pub fn bound_a(q: u64, k: u32, d: u64) -> Result<u64> {
    check_qkd(q, k, d)?;
    let (l, r) = leading_digit_split(q, d);
    Ok(d + ceil_sum(q.pow(l) * r, q, 1, k))
}

fn words_dimension(q: u64, m: u64) -> Result<u32> {
    check_q(q)?;
    if m < q {
        return Err(Error::InvalidParameter(format!(
            "M={m} must be at least q={q}"
        )));
    }
    Ok(floor_log(q, m))
}

/// Bound B on `N_q(M, d)`: `sum_{i=0}^{h} ceil(d / q^i)` with
/// `k = floor(log_q M)`, `q^l || d` and `h = min(k-1, l)`.
pub fn bound_b(q: u64, m: u64, d: u64) -> Result<u64> {
    let k = words_dimension(q, m)?;
    check_qkd(q, k, d)?;
    let h = (k - 1).min(valuation(q, d));
    Ok(ceil_sum(d, q, 0, h + 1))
}

/// Bound C on `N_q(M, d)`: `ceil(d (1 - q^-k) / (1 - q^-1))` with
/// `k = floor(log_q M)`, evaluated as `ceil(d (q^k - 1) / (q^{k-1} (q - 1)))`.
pub fn bound_c(q: u64, m: u64, d: u64) -> Result<u64> {
    let k = words_dimension(q, m)?;
    check_qkd(q, k, d)?;
    let qk = q.pow(k) as u128; // q^k <= M
    let num = d as u128 * (qk - 1);
    let den = (qk / q as u128) * (q as u128 - 1);
    u64::try_from(num.div_ceil(den)).map_err(|_| Error::Overflow("Bound C"))
}

/// `sum_{i=0}^{k-1} d / q^i` as an exact rational.
pub fn weak_griesmer_exact(q: u64, k: u32, d: u64) -> Result<BigRational> {
    check_qkd(q, k, d)?;
    let mut sum = BigRational::zero();
    let mut denom = BigInt::one();
    for _ in 0..k {
        sum += BigRational::new(BigInt::from(d), denom.clone());
        denom *= q;
    }
    Ok(sum)
}

/// `ceil(sum_{i=0}^{k-1} d / q^i)`, a lower bound on `N_q(q^k, d)`.
pub fn weak_griesmer(q: u64, k: u32, d: u64) -> Result<u64> {
    ceil_to_u64(&weak_griesmer_exact(q, k, d)?)
}

/// `g_2(k, d+1) - g_2(k, d) = min(k, l + 1)` where `2^l || d`.
pub fn g2_increment(k: u32, d: u64) -> Result<u64> {
    check_qkd(2, k, d)?;
    Ok(k.min(valuation(2, d) + 1) as u64)
}

/// `Some(e)` when `x = 2^e`.
fn exact_log2(x: u64) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

/// `(r, s)` with `r > s >= 1` and `d = 2^r - 2^s`.
fn difference_of_powers(d: u64) -> Option<(u32, u32)> {
    if d == 0 || d % 2 == 1 {
        return None;
    }
    let s = d.trailing_zeros();
    // d / 2^s = 2^(r-s) - 1 must be all ones
    let ones = (d >> s).checked_add(1)?;
    exact_log2(ones).map(|t| (s + t, s))
}

/// The smallest `K` with `q^K >= d`: the Griesmer bound holds for every `k`
/// once it holds for `1 <= k <= K`, i.e. for `k < 1 + log_q d`.
pub fn sufficient_dimension_cap(q: u64, d: u64) -> u32 {
    assert!(q >= 2 && d >= 1);
    let mut k = 0;
    let mut p = 1u64;
    while p < d {
        k += 1;
        p = p.saturating_mul(q);
    }
    k
}

/// Every family whose hypothesis holds, in precedence order.
pub fn matching_families(q: u64, k: u32, d: u64, setting: Setting) -> Vec<Family> {
    let mut out = Vec::new();
    if setting == Setting::Linear {
        out.push(Family::Linear);
    }
    if matches!(setting, Setting::Systematic | Setting::Linear) {
        if d <= 2 * q {
            out.push(Family::SmallDistance);
        }
        let (l, r) = leading_digit_split(q, d);
        if l >= 1 && q.pow(l) * r == d {
            out.push(Family::PowerTimesSmall { l, r });
        }
        if q == 2 {
            if let Some((r, s)) = difference_of_powers(d) {
                out.push(Family::DifferenceOfPowers { r, s });
            }
            if d % 2 == 1 {
                if let Some(r) = exact_log2(d + 1).filter(|&r| r >= 2) {
                    out.push(Family::OddDistance { r, s: None });
                }
                if let Some((r, s)) = difference_of_powers(d + 1) {
                    out.push(Family::OddDistance { r, s: Some(s) });
                }
            }
        }
    }
    let qk1 = checked_pow(q, k - 1);
    if qk1.is_some_and(|p| d.is_multiple_of(p)) {
        out.push(Family::PlotkinDivisible);
    }
    let (l, r) = leading_digit_split(q, d);
    if qk1.is_some_and(|p| p <= d) && q.pow(l) * r == d {
        out.push(Family::PlotkinSmallR { l, r });
    }
    out
}

/// `(q, k, d)` triples refuted by the two explicit counterexample codes: the
/// `(19, 16, 10)_2` code (any 16-word code) and the `(34, 2^4, 18)_2`
/// systematic code.
pub fn disproven_by_example(q: u64, k: u32, d: u64, setting: Setting) -> Option<&'static str> {
    match (q, k, d, setting) {
        (2, 4, 10, Setting::Nonlinear) => Some("the (19,16,10)_2 code has n=19 < g_2(4,10)=20"),
        (2, 4, 18, Setting::Systematic | Setting::Nonlinear) => {
            Some("the (34,2^4,18)_2 systematic code has n=34 < g_2(4,18)=35")
        }
        _ => None,
    }
}

/// Decides whether the Griesmer bound is known to hold for `(q, k, d)`.
///
/// In the nonlinear setting `k` stands for `M = q^k` words. The first
/// matching family in precedence order is reported; all matches are listed
/// in the condition text.
pub fn classify_family(q: u64, k: u32, d: u64, setting: Setting) -> Result<FamilyVerdict> {
    check_qkd(q, k, d)?;
    let matches = matching_families(q, k, d, setting);
    let cap = sufficient_dimension_cap(q, d);
    let mut condition = String::new();

    let (holds, theorem) = if let Some(witness) = disproven_by_example(q, k, d, setting) {
        condition.push_str(&format!("refuted: {witness}"));
        (Holds::DisprovenByExample, None)
    } else if let Some(&first) = matches.first() {
        condition.push_str(&format!("proven via {first}"));
        (Holds::Proven, Some(first))
    } else {
        condition.push_str("no known family covers these parameters");
        (Holds::Unknown, None)
    };

    if matches.len() > 1 {
        let all: Vec<String> = matches.iter().map(|f| f.to_string()).collect();
        condition.push_str(&format!("; all matching families: {}", all.join("; ")));
    }
    if setting == Setting::Systematic {
        condition.push_str(&format!(
            "; for q={q}, d={d} the bound holds for every k once it holds for k <= {cap}"
        ));
        if q == 2 && holds == Holds::Unknown {
            if let Some(r) = d.checked_sub(2).and_then(exact_log2).filter(|&r| r >= 3) {
                condition.push_str(&format!(
                    "; d = 2^{r} + 2 is in the conjectured counterexample family"
                ));
            }
        }
    }

    Ok(FamilyVerdict {
        setting,
        holds,
        theorem,
        matches,
        q,
        k,
        d,
        condition,
    })
}

/// Every bound for the given parameters. Applicable bounds come first,
/// sorted by value (descending) and then by [`BoundSource`] order; the
/// non-applicable ones follow in source order.
pub fn best_lower_bound(
    q: u64,
    size: CodeSize,
    d: u64,
    setting: Setting,
) -> Result<Vec<BoundReport>> {
    check_q(q)?;
    let (m, k, exact_power) = match size {
        CodeSize::Dimension(k) => {
            let m = checked_pow(q, k).ok_or(Error::Overflow("q^k"))?;
            (m, k, true)
        }
        CodeSize::Words(m) => {
            let k = words_dimension(q, m)?;
            (m, k, q.pow(k) == m)
        }
    };
    check_qkd(q, k, d)?;
    if setting == Setting::Systematic && !exact_power {
        return Err(Error::InvalidParameter(format!(
            "a systematic code has q^k words; M={m} is not a power of q={q}"
        )));
    }

    let mut reports = Vec::new();
    let verdict = if exact_power {
        classify_family(q, k, d, setting)?
    } else {
        // M > q^k words: the Plotkin families for q^k words still apply.
        let mut v = classify_family(q, k, d, setting)?;
        if v.holds == Holds::DisprovenByExample {
            v.holds = if v.matches.is_empty() {
                Holds::Unknown
            } else {
                Holds::Proven
            };
            v.theorem = v.matches.first().copied();
        }
        v
    };
    let griesmer_condition = match verdict.holds {
        Holds::Proven => verdict.condition.clone(),
        Holds::Unknown => format!("does NOT apply (not proven): {}", verdict.condition),
        Holds::DisprovenByExample => {
            format!(
                "does NOT apply (disproven by example): {}",
                verdict.condition
            )
        }
    };
    reports.push(BoundReport {
        value: griesmer(q, k, d)?,
        source: BoundSource::Griesmer,
        applicable: verdict.is_proven(),
        condition: griesmer_condition,
        exact: None,
    });

    let systematic_like = matches!(setting, Setting::Systematic | Setting::Linear);
    reports.push(BoundReport {
        value: bound_a(q, k, d)?,
        source: BoundSource::BoundA,
        applicable: systematic_like,
        condition: if systematic_like {
            let (l, r) = leading_digit_split(q, d);
            format!("systematic codes; l={l}, r={r}")
        } else {
            "does NOT apply: systematic codes only".into()
        },
        exact: None,
    });
    let h = (k - 1).min(valuation(q, d));
    reports.push(BoundReport {
        value: bound_b(q, m, d)?,
        source: BoundSource::BoundB,
        applicable: true,
        condition: format!(
            "any code with M >= q^k; k={k}, l={}, h={h}",
            valuation(q, d)
        ),
        exact: None,
    });
    let c_exact = weak_griesmer_exact(q, k, d)?;
    reports.push(BoundReport {
        value: bound_c(q, m, d)?,
        source: BoundSource::BoundC,
        applicable: true,
        condition: format!("any code with M >= q^k; k={k}"),
        exact: Some(c_exact.to_string()),
    });
    if exact_power {
        reports.push(BoundReport {
            value: ceil_to_u64(&c_exact)?,
            source: BoundSource::WeakGriesmer,
            applicable: true,
            condition: format!("any code with q^{k} words"),
            exact: Some(c_exact.to_string()),
        });
    }
    let plotkin_exact = plotkin_min_n_exact(q, m, d)?;
    reports.push(BoundReport {
        value: ceil_to_u64(&plotkin_exact)?,
        source: BoundSource::Plotkin,
        applicable: true,
        condition: format!("any code with M={m}"),
        exact: Some(plotkin_exact.to_string()),
    });
    let improved_applicable = q == 2 && systematic_like;
    reports.push(BoundReport {
        value: singleton_improved_systematic(k, d)?,
        source: BoundSource::SingletonImprovedSystematic,
        applicable: improved_applicable,
        condition: match (improved_applicable, k) {
            (false, _) => "does NOT apply: binary systematic codes only".into(),
            (true, 1) => "k=1: plain bound d".into(),
            (true, _) => "binary systematic codes, k >= 2".into(),
        },
        exact: None,
    });
    reports.push(BoundReport {
        value: singleton(k, d)?,
        source: BoundSource::Singleton,
        applicable: true,
        condition: format!("any code with M >= q^k; k={k}"),
        exact: None,
    });

    reports.sort_by(|a, b| {
        b.applicable
            .cmp(&a.applicable)
            .then_with(|| {
                if a.applicable {
                    b.value.cmp(&a.value)
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .then_with(|| a.source.cmp(&b.source))
    });
    Ok(reports)
}

/// Where a code's length sits relative to `g_q(k, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GriesmerComparison {
    Violates,
    Meets,
    Exceeds,
}

impl fmt::Display for GriesmerComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GriesmerComparison::Violates => "VIOLATES",
            GriesmerComparison::Meets => "meets",
            GriesmerComparison::Exceeds => "exceeds",
        })
    }
}

/// Compares a length `n` with `g_q(k, d)`, returning the bound too.
pub fn compare_with_griesmer(n: u64, q: u64, k: u32, d: u64) -> Result<(GriesmerComparison, u64)> {
    let g = griesmer(q, k, d)?;
    let cmp = match n.cmp(&g) {
        std::cmp::Ordering::Less => GriesmerComparison::Violates,
        std::cmp::Ordering::Equal => GriesmerComparison::Meets,
        std::cmp::Ordering::Greater => GriesmerComparison::Exceeds,
    };
    Ok((cmp, g))
}

/// The strongest applicable bound.
pub fn best_bound(q: u64, size: CodeSize, d: u64, setting: Setting) -> Result<BoundReport> {
    Ok(best_lower_bound(q, size, d, setting)?
        .into_iter()
        .next()
        .expect("Singleton always applies"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn griesmer_values() {
        assert_eq!(griesmer(2, 4, 10).unwrap(), 20);
        assert_eq!(griesmer(2, 4, 18).unwrap(), 35);
        assert_eq!(griesmer(2, 4, 8).unwrap(), 15);
        assert_eq!(
            compare_with_griesmer(34, 2, 4, 18).unwrap(),
            (GriesmerComparison::Violates, 35)
        );
        assert_eq!(
            compare_with_griesmer(15, 2, 4, 8).unwrap().0,
            GriesmerComparison::Meets
        );
        assert_eq!(
            compare_with_griesmer(16, 2, 4, 8).unwrap().0,
            GriesmerComparison::Exceeds
        );
        for q in 2..6 {
            for d in 1..40 {
                assert_eq!(griesmer(q, 1, d).unwrap(), d);
            }
        }
        assert_eq!(griesmer(3, 6, 5).unwrap(), 5 + 2 + 1 + 1 + 1 + 1);
        assert_eq!(griesmer(2, 64, 1).unwrap(), 64);
        assert!(griesmer(1, 2, 3).is_err());
        assert!(griesmer(2, 0, 3).is_err());
        assert!(griesmer(2, 2, 0).is_err());
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton(1, 7).unwrap(), 7);
        assert_eq!(singleton(2, 7).unwrap(), 8);
        assert_eq!(singleton(4, 18).unwrap(), 21);
        assert_eq!(singleton_improved_systematic(4, 18).unwrap(), 29);
        assert_eq!(singleton_improved_systematic(2, 2).unwrap(), 3);
        assert_eq!(singleton_improved_systematic(1, 9).unwrap(), 9);
        assert!(singleton_improved_systematic(4, 18).unwrap() <= griesmer(2, 4, 18).unwrap());
    }

    #[test]
    fn plotkin_values() {
        assert_eq!(plotkin_max_m(2, 19, 10).unwrap(), 20);
        assert!(matches!(
            plotkin_max_m(2, 20, 10),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(plotkin_max_m(2, 25, 10).is_err());
        for d in 1..30 {
            assert_eq!(plotkin_min_n(2, 2, d).unwrap(), d);
            assert_eq!(plotkin_min_n(3, 2, d).unwrap(), (3 * d).div_ceil(4));
        }
        assert_eq!(plotkin_min_n_exact(2, 16, 18).unwrap().to_string(), "135/4");
    }

    #[test]
    fn bound_a_values() {
        assert_eq!(leading_digit_split(2, 10), (3, 1));
        assert_eq!(leading_digit_split(3, 20), (2, 2));
        assert_eq!(bound_a(2, 4, 10).unwrap(), 17);
        assert_eq!(bound_a(2, 1, 13).unwrap(), 13);
        assert_eq!(bound_a(2, 4, 8).unwrap(), 15);
        assert_eq!(bound_a(2, 4, 18).unwrap(), 32);
    }

    #[test]
    fn bound_b_values() {
        assert_eq!(bound_b(2, 16, 10).unwrap(), 15);
        assert_eq!(bound_b(2, 16, 8).unwrap(), 15);
        assert_eq!(bound_b(2, 2, 7).unwrap(), 7);
        assert_eq!(bound_b(2, 17, 8).unwrap(), 15);
        assert!(bound_b(3, 2, 7).is_err());
    }

    #[test]
    fn bound_c_values() {
        assert_eq!(bound_c(2, 16, 10).unwrap(), 19);
        assert_eq!(weak_griesmer_exact(2, 4, 10).unwrap().to_string(), "75/4");
        assert_eq!(bound_c(2, 2, 11).unwrap(), 11);
        assert_eq!(bound_c(2, 16, 8).unwrap(), 15);
        assert_eq!(bound_c(2, 31, 8).unwrap(), 15);
    }

    #[test]
    fn increments() {
        assert_eq!(g2_increment(3, 4).unwrap(), 3);
        assert_eq!(griesmer(2, 3, 5).unwrap(), 10);
        assert_eq!(griesmer(2, 3, 4).unwrap(), 7);
        assert_eq!(g2_increment(5, 7).unwrap(), 1);
        assert_eq!(g2_increment(1, 64).unwrap(), 1);
    }

    #[test]
    fn logs_and_valuations() {
        assert_eq!(floor_log(2, 1), 0);
        assert_eq!(floor_log(2, 8), 3);
        assert_eq!(floor_log(3, 26), 2);
        assert_eq!(floor_log(3, 27), 3);
        assert_eq!(floor_log(2, u64::MAX), 63);
        assert_eq!(valuation(2, 12), 2);
        assert_eq!(valuation(3, 12), 1);
        assert_eq!(valuation(5, 12), 0);
        assert_eq!(sufficient_dimension_cap(2, 1), 0);
        assert_eq!(sufficient_dimension_cap(2, 8), 3);
        assert_eq!(sufficient_dimension_cap(2, 18), 5);
        assert_eq!(sufficient_dimension_cap(2, 10), 4);
    }

    #[test]
    fn difference_of_powers_detection() {
        assert_eq!(difference_of_powers(12), Some((4, 2)));
        assert_eq!(difference_of_powers(8), Some((4, 3)));
        assert_eq!(difference_of_powers(6), Some((3, 1)));
        assert_eq!(difference_of_powers(10), None);
        assert_eq!(difference_of_powers(7), None);
    }

    #[test]
    fn classifier_examples() {
        let v = classify_family(2, 7, 12, Setting::Systematic).unwrap();
        assert_eq!(v.holds, Holds::Proven);
        assert_eq!(v.theorem, Some(Family::DifferenceOfPowers { r: 4, s: 2 }));

        let v = classify_family(3, 5, 5, Setting::Systematic).unwrap();
        assert_eq!(v.theorem, Some(Family::SmallDistance));

        let v = classify_family(2, 4, 18, Setting::Systematic).unwrap();
        assert_eq!(v.holds, Holds::DisprovenByExample);
        let v = classify_family(2, 4, 10, Setting::Nonlinear).unwrap();
        assert_eq!(v.holds, Holds::DisprovenByExample);

        // d = 8 matches the power-of-two and difference-of-powers families
        let v = classify_family(2, 4, 8, Setting::Systematic).unwrap();
        assert_eq!(v.theorem, Some(Family::PowerTimesSmall { l: 3, r: 1 }));
        assert!(v
            .matches
            .contains(&Family::DifferenceOfPowers { r: 4, s: 3 }));
        assert!(v.condition.contains("all matching families"));

        let v = classify_family(2, 4, 8, Setting::Nonlinear).unwrap();
        assert_eq!(v.theorem, Some(Family::PlotkinDivisible));

        let v = classify_family(2, 3, 13, Setting::Systematic).unwrap();
        assert_eq!(v.theorem, Some(Family::OddDistance { r: 4, s: Some(1) }));
        let v = classify_family(2, 3, 15, Setting::Systematic).unwrap();
        assert_eq!(v.theorem, Some(Family::OddDistance { r: 4, s: None }));

        // 10 is in none of the systematic families
        let v = classify_family(2, 4, 10, Setting::Systematic).unwrap();
        assert_eq!(v.holds, Holds::Unknown);
        assert!(v.condition.contains("conjectured"));
        let v = classify_family(2, 2, 10, Setting::Systematic).unwrap();
        assert_eq!(v.theorem, Some(Family::PlotkinDivisible));

        let v = classify_family(2, 5, 9, Setting::Systematic).unwrap();
        assert_eq!(v.holds, Holds::Unknown);
        assert!(!v.condition.contains("conjectured"));

        let v = classify_family(3, 2, 7, Setting::Nonlinear).unwrap();
        assert_eq!(v.holds, Holds::Unknown);
        let v = classify_family(5, 3, 7, Setting::Linear).unwrap();
        assert_eq!(v.theorem, Some(Family::Linear));
    }

    #[test]
    fn best_bound_examples() {
        let reports = best_lower_bound(2, CodeSize::Dimension(4), 18, Setting::Systematic).unwrap();
        let best = &reports[0];
        assert_eq!(best.value, 34);
        assert_eq!(best.source, BoundSource::BoundC);
        let improved = reports
            .iter()
            .find(|r| r.source == BoundSource::SingletonImprovedSystematic)
            .unwrap();
        assert_eq!(improved.value, 29);
        let g = reports
            .iter()
            .find(|r| r.source == BoundSource::Griesmer)
            .unwrap();
        assert_eq!(g.value, 35);
        assert!(!g.applicable);
        assert!(g.condition.contains("disproven"));

        let best = best_bound(2, CodeSize::Words(16), 8, Setting::Nonlinear).unwrap();
        assert_eq!(best.value, 15);
        assert_eq!(best.source, BoundSource::Griesmer);
        assert!(best.condition.contains("Plotkin argument"));

        for setting in [Setting::Systematic, Setting::Nonlinear, Setting::Linear] {
            assert_eq!(
                best_bound(2, CodeSize::Dimension(1), 5, setting)
                    .unwrap()
                    .value,
                5
            );
        }
        assert!(best_lower_bound(2, CodeSize::Words(17), 8, Setting::Systematic).is_err());
        // 17 words: Plotkin gives ceil(8 * 16/17 * 2) = 16
        let best = best_bound(2, CodeSize::Words(17), 8, Setting::Nonlinear).unwrap();
        assert_eq!((best.value, best.source), (16, BoundSource::Plotkin));
    }

    #[test]
    fn reports_are_sorted() {
        for d in 1..30 {
            for k in 1..6 {
                let r =
                    best_lower_bound(2, CodeSize::Dimension(k), d, Setting::Systematic).unwrap();
                let applicable: Vec<_> = r.iter().take_while(|b| b.applicable).collect();
                assert!(applicable.windows(2).all(|w| w[0].value >= w[1].value));
                assert!(r.iter().skip(applicable.len()).all(|b| !b.applicable));
            }
        }
    }
}
