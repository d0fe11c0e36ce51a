//! Exhaustive search for the minimum length of systematic codes, `S_q(k, d)`,
//! and of unrestricted codes with very few words, `N_q(M, d)`.
//!
//! The systematic search assigns the redundancy part of each message in turn
//! (messages in lexicographic order, candidate suffixes in lexicographic
//! order) and backtracks as soon as a pair of words is closer than `d`. The
//! zero message is mapped to the zero word, which loses nothing because
//! translating a code by one of its words keeps it systematic and keeps all
//! distances. For `q = 2` the redundancy columns are also required to be
//! lexicographically non-decreasing (as sequences over the messages); sorting
//! the columns of any code gives such a code with the same parameters.
//!
//! A result is "exact" only when the search found a witness of length `n`
//! and exhausted length `n - 1`. Existence is monotone in `n` (append a zero
//! column), so a length scan needs just those two facts.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{
    best_lower_bound, checked_pow, classify_family, griesmer, sufficient_dimension_cap, CodeSize,
    Holds, Setting,
};
use crate::code::{all_messages, Code};
use crate::error::{Error, Result};
use crate::io::CodeJson;

/// Largest redundancy handled by the systematic search.
pub const MAX_REDUNDANCY: usize = 40;
/// Largest length handled by the unrestricted search.
pub const MAX_UNRESTRICTED_N: usize = 30;

const CLOCK_INTERVAL: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Wall-time budget for the whole call.
    pub budget: Duration,
    /// Split the search over the choices for the second message (threads
    /// only with the `parallel` feature; the result is the same either way).
    pub parallel: bool,
    /// Column-order symmetry reduction (binary only).
    pub symmetry: bool,
    /// Give up (without a timeout) past this length.
    pub max_n: Option<usize>,
}

impl SearchOptions {
    pub fn with_budget(budget: Duration) -> Self {
        Self {
            budget,
            parallel: false,
            symmetry: true,
            max_n: None,
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self::with_budget(Duration::from_secs(60))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Existence {
    Found(Code),
    NotFound,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceRun {
    pub existence: Existence,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Exact,
    LowerBoundOnly,
    Timeout,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Exact => "exact",
            SearchStatus::LowerBoundOnly => "lower-bound-only",
            SearchStatus::Timeout => "timeout",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub q: u32,
    /// Dimension, for the systematic search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "M")]
    pub m: u64,
    pub d: u32,
}

fn serialize_witness<S: Serializer>(
    w: &Option<Code>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    w.as_ref().map(CodeJson::from_code).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub params: SearchParams,
    pub status: SearchStatus,
    /// The exact value, or the best proven lower bound otherwise.
    pub value: u64,
    /// `[lower, upper]`; `upper` is the shortest witness length, if any.
    pub interval: (u64, Option<u64>),
    /// Length at which the scan started (the best applicable bound).
    pub start: u64,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Code>,
    pub nodes_explored: u64,
    pub budget_used_ms: u64,
}

/// Enumerates the suffixes of one message at a time.
struct Systematic<'a> {
    q: u32,
    r: usize,
    d: u32,
    /// Distance between the systematic parts of messages `i` and `j`.
    prefix: Vec<Vec<u32>>,
    candidates: u64,
    symmetry: bool,
    deadline: Instant,
    nodes: u64,
    /// (own index, shared best index) when running as a parallel worker.
    cutoff: Option<(usize, &'a AtomicUsize)>,
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

impl Systematic<'_> {
    fn suffix_distance(&self, a: u64, b: u64) -> u32 {
        if self.q == 2 {
            return (a ^ b).count_ones();
        }
        let (mut a, mut b, q) = (a, b, self.q as u64);
        let mut dist = 0;
        for _ in 0..self.r {
            dist += u32::from(a % q != b % q);
            a /= q;
            b /= q;
        }
        dist
    }

    /// Ties after row 0: every adjacent column pair is still equal.
    fn all_tied(&self) -> u64 {
        if self.r < 2 {
            0
        } else {
            ((1u64 << self.r) - 1) & !1
        }
    }

    /// `None` when `s` would break column order, else the new tie mask.
    /// Column `c` lives in bit `r - 1 - c`, so bit `p` of the tie mask
    /// means the columns at bits `p` and `p - 1` agree so far.
    fn ties_after(&self, ties: u64, s: u64) -> Option<u64> {
        if !self.symmetry || self.q != 2 {
            return Some(ties);
        }
        if ties & s & !(s << 1) != 0 {
            return None;
        }
        Some(ties & !(s ^ (s << 1)))
    }

    fn fits(&self, rows: &[u64], j: usize, s: u64) -> bool {
        rows.iter()
            .enumerate()
            .all(|(i, &t)| self.prefix[i][j] + self.suffix_distance(t, s) >= self.d)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some((own, best)) = self.cutoff {
            if best.load(Ordering::Relaxed) < own {
                return false;
            }
        }
        !(self.nodes.is_multiple_of(CLOCK_INTERVAL) && Instant::now() >= self.deadline)
    }

    fn dfs(&mut self, rows: &mut Vec<u64>, ties: u64) -> Step {
        let j = rows.len();
        if j == self.prefix.len() {
            return Step::Found;
        }
        for s in 0..self.candidates {
            if !self.tick() {
                return Step::Stopped;
            }
            let Some(next) = self.ties_after(ties, s) else {
                continue;
            };
            if !self.fits(rows, j, s) {
                continue;
            }
            rows.push(s);
            match self.dfs(rows, next) {
                Step::Exhausted => {
                    rows.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn check_q(q: u32) -> Result<()> {
    if !(2..=crate::code::MAX_Q).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "alphabet size {q} outside 2..=256"
        )));
    }
    Ok(())
}

/// Does an `(n, q^k, d)_q` code systematic in its first `k` coordinates
/// exist? On success the witness is the lexicographically least one under
/// the normalizations described in the module docs.
pub fn exists_systematic(
    q: u32,
    k: u32,
    d: u32,
    n: usize,
    budget: Duration,
) -> Result<ExistenceRun> {
    exists_systematic_with(q, k, d, n, &SearchOptions::with_budget(budget))
}

pub fn exists_systematic_with(
    q: u32,
    k: u32,
    d: u32,
    n: usize,
    opts: &SearchOptions,
) -> Result<ExistenceRun> {
    exists_systematic_until(q, k, d, n, opts, Instant::now() + opts.budget)
}

fn validate_systematic(q: u32, k: u32, d: u32, opts: &SearchOptions) -> Result<u64> {
    check_q(q)?;
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter("k and d must be positive".into()));
    }
    if q > 2 && k >= 3 {
        return Err(Error::InvalidParameter(format!(
            "search supports k <= 2 for q = {q}"
        )));
    }
    if opts.budget.is_zero() {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let m = checked_pow(q as u64, k).ok_or(Error::Overflow("q^k"))?;
    if m > 1 << 16 {
        return Err(Error::InvalidParameter(format!(
            "{m} messages is too many to search"
        )));
    }
    Ok(m)
}

fn exists_systematic_until(
    q: u32,
    k: u32,
    d: u32,
    n: usize,
    opts: &SearchOptions,
    deadline: Instant,
) -> Result<ExistenceRun> {
    validate_systematic(q, k, d, opts)?;
    let k_us = k as usize;
    if n < k_us {
        return Err(Error::InvalidParameter(format!(
            "length {n} is below dimension {k}"
        )));
    }
    let r = n - k_us;
    if r > MAX_REDUNDANCY {
        return Err(Error::InvalidParameter(format!(
            "redundancy {r} exceeds the search limit {MAX_REDUNDANCY}"
        )));
    }
    let messages = all_messages(q, k);
    if r == 0 {
        let existence = if d <= 1 {
            Existence::Found(Code::new(q, n, messages)?)
        } else {
            Existence::NotFound
        };
        return Ok(ExistenceRun {
            existence,
            nodes: 0,
        });
    }
    let candidates = checked_pow(q as u64, r as u32).ok_or(Error::Overflow("q^(n-k)"))?;
    let prefix = messages
        .iter()
        .map(|a| {
            messages
                .iter()
                .map(|b| a.iter().zip(b).filter(|(x, y)| x != y).count() as u32)
                .collect()
        })
        .collect();
    let mut base = Systematic {
        q,
        r,
        d,
        prefix,
        candidates,
        symmetry: opts.symmetry,
        deadline,
        nodes: 0,
        cutoff: None,
    };
    let ties = base.all_tied();

    let (step, rows, nodes) = if opts.parallel && messages.len() > 2 {
        // each valid suffix of message 1 is an independent subtree; the
        // lowest-index success wins, as in the sequential order
        let firsts: Vec<(u64, u64)> = (0..candidates)
            .filter_map(|s| {
                let t = base.ties_after(ties, s)?;
                base.fits(&[0], 1, s).then_some((s, t))
            })
            .collect();
        let best = AtomicUsize::new(usize::MAX);
        #[cfg(feature = "parallel")]
        let subtrees = firsts.par_iter();
        #[cfg(not(feature = "parallel"))]
        let subtrees = firsts.iter();
        let results: Vec<(Step, Vec<u64>, u64)> = subtrees
            .enumerate()
            .map(|(idx, &(s, t))| {
                let mut worker = Systematic {
                    q,
                    r,
                    d,
                    prefix: base.prefix.clone(),
                    candidates,
                    symmetry: opts.symmetry,
                    deadline,
                    nodes: 0,
                    cutoff: Some((idx, &best)),
                };
                let mut rows = vec![0, s];
                let step = worker.dfs(&mut rows, t);
                if matches!(step, Step::Found) {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                (step, rows, worker.nodes)
            })
            .collect();
        let nodes = firsts.len() as u64 + results.iter().map(|r| r.2).sum::<u64>();
        let mut outcome = (Step::Exhausted, Vec::new(), nodes);
        for (step, rows, _) in results {
            match step {
                Step::Exhausted => continue,
                Step::Found => outcome = (Step::Found, rows, nodes),
                Step::Stopped => outcome = (Step::Stopped, Vec::new(), nodes),
            }
            break;
        }
        outcome
    } else {
        let mut rows = vec![0];
        let step = base.dfs(&mut rows, ties);
        (step, rows, base.nodes)
    };

    let existence = match step {
        Step::Exhausted => Existence::NotFound,
        Step::Stopped => Existence::Timeout,
        Step::Found => {
            let q64 = q as u64;
            let words = messages
                .into_iter()
                .zip(rows)
                .map(|(mut w, s)| {
                    w.extend((0..r).rev().map(|p| (s / q64.pow(p as u32) % q64) as u8));
                    w
                })
                .collect();
            Existence::Found(Code::new(q, n, words)?)
        }
    };
    Ok(ExistenceRun { existence, nodes })
}

/// Does a binary `(n, m, d)` code exist? Words are chosen in increasing
/// order as integers, the first being zero.
pub fn exists_code(q: u32, m: u64, d: u32, n: usize, budget: Duration) -> Result<ExistenceRun> {
    exists_code_until(q, m, d, n, Instant::now() + budget)
}

fn exists_code_until(q: u32, m: u64, d: u32, n: usize, deadline: Instant) -> Result<ExistenceRun> {
    if q != 2 {
        return Err(Error::NotBinary(q));
    }
    if m < 2 || d == 0 {
        return Err(Error::InvalidParameter("need M >= 2 and d >= 1".into()));
    }
    if n > MAX_UNRESTRICTED_N {
        return Err(Error::InvalidParameter(format!(
            "length {n} exceeds the search limit {MAX_UNRESTRICTED_N}"
        )));
    }
    if m > 1u64 << n {
        return Ok(ExistenceRun {
            existence: Existence::NotFound,
            nodes: 0,
        });
    }

    struct Words {
        m: usize,
        d: u32,
        total: u64,
        deadline: Instant,
        nodes: u64,
    }
    impl Words {
        fn dfs(&mut self, words: &mut Vec<u64>) -> Step {
            if words.len() == self.m {
                return Step::Found;
            }
            let last = *words.last().expect("starts with zero");
            for w in last + 1..self.total {
                if self.total - w < (self.m - words.len()) as u64 {
                    break;
                }
                self.nodes += 1;
                if self.nodes.is_multiple_of(CLOCK_INTERVAL) && Instant::now() >= self.deadline {
                    return Step::Stopped;
                }
                if words.iter().any(|&u| (u ^ w).count_ones() < self.d) {
                    continue;
                }
                words.push(w);
                match self.dfs(words) {
                    Step::Exhausted => {
                        words.pop();
                    }
                    other => return other,
                }
            }
            Step::Exhausted
        }
    }

    let mut s = Words {
        m: m as usize,
        d,
        total: 1u64 << n,
        deadline,
        nodes: 0,
    };
    let mut words = vec![0];
    let existence = match s.dfs(&mut words) {
        Step::Exhausted => Existence::NotFound,
        Step::Stopped => Existence::Timeout,
        Step::Found => {
            let words = words
                .into_iter()
                .map(|w| (0..n).rev().map(|b| (w >> b & 1) as u8).collect())
                .collect();
            Existence::Found(Code::new(2, n, words)?)
        }
    };
    Ok(ExistenceRun {
        existence,
        nodes: s.nodes,
    })
}

/// Scans lengths upward from `start`, then checks `value - 1` if the first
/// length already succeeded.
fn scan(
    params: SearchParams,
    start: u64,
    floor: u64,
    max_n: Option<usize>,
    began: Instant,
    mut exists: impl FnMut(usize) -> Result<ExistenceRun>,
) -> Result<SearchOutcome> {
    let mut nodes = 0;
    let finish = |status, value, interval, witness, nodes| SearchOutcome {
        params,
        status,
        value,
        interval,
        start,
        witness,
        nodes_explored: nodes,
        budget_used_ms: began.elapsed().as_millis() as u64,
    };

    let mut n = start;
    let witness = loop {
        if max_n.is_some_and(|max| n > max as u64) {
            return Ok(finish(
                SearchStatus::LowerBoundOnly,
                n,
                (n, None),
                None,
                nodes,
            ));
        }
        let run = exists(n as usize)?;
        nodes += run.nodes;
        match run.existence {
            Existence::Found(code) => break code,
            Existence::NotFound => n += 1,
            Existence::Timeout => {
                return Ok(finish(SearchStatus::Timeout, n, (n, None), None, nodes))
            }
        }
    };

    let mut witness = witness;
    if n == start {
        // the scan never saw n - 1; settle it by search, not by the bound
        loop {
            if n <= floor {
                break;
            }
            let run = exists(n as usize - 1)?;
            nodes += run.nodes;
            match run.existence {
                Existence::Found(code) => {
                    witness = code;
                    n -= 1;
                }
                Existence::NotFound => break,
                Existence::Timeout => {
                    let lower = start.min(n);
                    return Ok(finish(
                        SearchStatus::Timeout,
                        lower,
                        (lower, Some(n)),
                        Some(witness),
                        nodes,
                    ));
                }
            }
        }
    }
    Ok(finish(
        SearchStatus::Exact,
        n,
        (n, Some(n)),
        Some(witness),
        nodes,
    ))
}

fn applicable_bound(q: u32, size: CodeSize, d: u32, setting: Setting) -> Result<u64> {
    Ok(best_lower_bound(q as u64, size, d as u64, setting)?
        .iter()
        .filter(|b| b.applicable)
        .map(|b| b.value)
        .max()
        .unwrap_or(0))
}

/// `S_q(k, d)`, the minimum length of a systematic code of dimension `k` and
/// distance `d`, starting the scan at the best applicable lower bound.
pub fn compute_s(q: u32, k: u32, d: u32, budget: Duration) -> Result<SearchOutcome> {
    compute_s_with(q, k, d, &SearchOptions::with_budget(budget))
}

pub fn compute_s_with(q: u32, k: u32, d: u32, opts: &SearchOptions) -> Result<SearchOutcome> {
    let m = validate_systematic(q, k, d, opts)?;
    let began = Instant::now();
    let deadline = began + opts.budget;
    let start = applicable_bound(q, CodeSize::Dimension(k), d, Setting::Systematic)?.max(k as u64);
    let params = SearchParams {
        q,
        k: Some(k),
        m,
        d,
    };
    scan(params, start, k as u64, opts.max_n, began, |n| {
        exists_systematic_until(q, k, d, n, opts, deadline)
    })
}

/// `N_2(M, d)` for tiny `M` and `n`.
pub fn compute_n(q: u32, m: u64, d: u32, budget: Duration) -> Result<SearchOutcome> {
    let began = Instant::now();
    let deadline = began + budget;
    if q != 2 {
        return Err(Error::NotBinary(q));
    }
    let start = applicable_bound(q, CodeSize::Words(m), d, Setting::Nonlinear)?.max(d as u64);
    let params = SearchParams { q, k: None, m, d };
    scan(
        params,
        start,
        d as u64,
        Some(MAX_UNRESTRICTED_N),
        began,
        |n| exists_code_until(q, m, d, n, deadline),
    )
}

/// One row of [`verify_family_theorem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub k: u32,
    pub griesmer: u64,
    pub holds: Holds,
    pub outcome: SearchOutcome,
    /// `Some(S >= g)` when the search was exact.
    pub confirms: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub q: u32,
    pub d: u32,
    /// Dimensions up to this one suffice for the Griesmer bound at this `d`.
    pub k_cap: u32,
    pub checks: Vec<FamilyCheck>,
}

impl FamilyReport {
    /// Every dimension searched exactly and `S >= g` each time.
    pub fn all_confirmed(&self) -> bool {
        self.checks.iter().all(|c| c.confirms == Some(true))
    }
}

/// Computes `S_q(k, d)` for `k = 1..=min(k_max, K)` where `K` is the
/// sufficient dimension cap for `d`, and compares each with `g_q(k, d)`.
/// Each dimension gets its own `budget`.
pub fn verify_family_theorem(q: u32, d: u32, k_max: u32, budget: Duration) -> Result<FamilyReport> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be >= 1".into()));
    }
    let k_cap = sufficient_dimension_cap(q as u64, d as u64).max(1);
    let checks = (1..=k_max.min(k_cap))
        .map(|k| {
            let g = griesmer(q as u64, k, d as u64)?;
            let outcome = compute_s(q, k, d, budget)?;
            let confirms = (outcome.status == SearchStatus::Exact).then_some(outcome.value >= g);
            Ok(FamilyCheck {
                k,
                griesmer: g,
                holds: classify_family(q as u64, k, d as u64, Setting::Systematic)?.holds,
                outcome,
                confirms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport {
        q,
        d,
        k_cap,
        checks,
    })
}
