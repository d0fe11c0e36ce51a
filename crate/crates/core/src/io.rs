//! Text and JSON serialization of codes.
//!
//! Text format: the first non-comment line is `q n`; every following
//! non-comment line is one word written as `n` contiguous digits. Lines whose
//! first non-blank character is `#` are comments, blank lines are ignored.
//! Since symbols are single digits the text and JSON forms cover `q <= 10`.
//!
//! ```text
//! # repetition code
//! 2 5
//! 00000
//! 11111
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::code::{parse_digits, Code};
use crate::error::{Error, Result};

/// Largest alphabet expressible with one decimal digit per symbol.
pub const MAX_TEXT_Q: u32 = 10;

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u32,
    pub n: usize,
    pub words: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `q n` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [q, n] = fields[..] else {
        return Err(parse_err(
            header_line,
            format!("expected `q n`, found `{header}`"),
        ));
    };
    let q: u32 = q
        .parse()
        .map_err(|_| parse_err(header_line, format!("bad alphabet size `{q}`")))?;
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(header_line, format!("bad length `{n}`")))?;
    if !(2..=MAX_TEXT_Q).contains(&q) {
        return Err(parse_err(
            header_line,
            format!("alphabet size {q} outside 2..={MAX_TEXT_Q}"),
        ));
    }

    let mut words = Vec::new();
    let mut first_line: HashMap<Vec<u8>, usize> = HashMap::new();
    for (line, content) in lines {
        if content.chars().count() != n {
            return Err(parse_err(
                line,
                format!("word has length {}, expected {n}", content.chars().count()),
            ));
        }
        let word = parse_digits(content, q).map_err(|e| parse_err(line, e.to_string()))?;
        if let Some(prev) = first_line.insert(word.clone(), line) {
            return Err(parse_err(
                line,
                format!("duplicate word (first seen on line {prev})"),
            ));
        }
        words.push(word);
    }
    if words.is_empty() && n == 0 {
        // the empty word renders as a blank line
        words.push(Vec::new());
    }
    if words.is_empty() {
        return Err(parse_err(header_line, "code has no words"));
    }
    Code::new(q, n, words).map_err(|e| parse_err(header_line, e.to_string()))
}

/// Renders the text format, one word per line, in code order.
pub fn render_code(code: &Code) -> String {
    let mut out = format!("{} {}\n", code.q(), code.n());
    for j in 0..code.len() {
        out.push_str(&code.word_string(j));
        out.push('\n');
    }
    out
}

impl CodeJson {
    pub fn from_code(code: &Code) -> Self {
        Self {
            q: code.q(),
            n: code.n(),
            words: (0..code.len()).map(|j| code.word_string(j)).collect(),
        }
    }

    /// Validates exactly as [`parse_code`] does.
    pub fn to_code(&self) -> Result<Code> {
        if !(2..=MAX_TEXT_Q).contains(&self.q) {
            return Err(Error::Json(format!(
                "alphabet size {} outside 2..={MAX_TEXT_Q}",
                self.q
            )));
        }
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                if w.chars().count() != self.n {
                    return Err(Error::Json(format!(
                        "word {} has length {}, expected {}",
                        i + 1,
                        w.chars().count(),
                        self.n
                    )));
                }
                parse_digits(w, self.q).map_err(|e| Error::Json(format!("word {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Code::new(self.q, self.n, words).map_err(|e| Error::Json(e.to_string()))
    }
}

pub fn code_to_json(code: &Code) -> String {
    serde_json::to_string_pretty(&CodeJson::from_code(code)).expect("plain data serializes")
}

pub fn code_from_json(text: &str) -> Result<Code> {
    let parsed: CodeJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    parsed.to_code()
}

/// Reads either form, choosing JSON when the first non-blank character is `{`.
pub fn read_code(text: &str) -> Result<Code> {
    if text.trim_start().starts_with('{') {
        code_from_json(text)
    } else {
        parse_code(text)
    }
}
