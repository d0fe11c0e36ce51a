use std::collections::BTreeMap;
use std::fmt::Write as _;

use griesmer_core::bounds::{best_bound, CodeSize, Setting};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const MAX_K: u64 = 16;
pub const MAX_D: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    K,
    M,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub value: u64,
    pub source: char,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub d: u64,
    pub cells: Vec<Cell>,
}

/// Best lower bound per `(d, k)` (or `(d, M)`), rows by ascending `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub q: u64,
    pub setting: Setting,
    pub axis: Axis,
    pub columns: Vec<u64>,
    pub rows: Vec<Row>,
    pub legend: BTreeMap<char, String>,
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("bad number `{t}` in range `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    Ok((lo, hi))
}

impl Table {
    pub fn build(
        q: u64,
        axis: Axis,
        cols: (u64, u64),
        ds: (u64, u64),
        setting: Setting,
    ) -> Result<Self, CliError> {
        let (c0, c1) = cols;
        let (d0, d1) = ds;
        if c0 > c1 || d0 > d1 {
            return Err(CliError::Usage("empty range".into()));
        }
        if c0 == 0 || d0 == 0 {
            return Err(CliError::Usage("ranges start at 1".into()));
        }
        if axis == Axis::K && c1 > MAX_K {
            return Err(CliError::Usage(format!(
                "k range is limited to k <= {MAX_K}"
            )));
        }
        if d1 > MAX_D {
            return Err(CliError::Usage(format!(
                "d range is limited to d <= {MAX_D}"
            )));
        }
        if axis == Axis::M && c1 - c0 >= 4096 {
            return Err(CliError::Usage("M range is limited to 4096 columns".into()));
        }
        let columns: Vec<u64> = (c0..=c1).collect();
        let mut legend = BTreeMap::new();
        let mut rows = Vec::new();
        for d in d0..=d1 {
            let mut cells = Vec::new();
            for &c in &columns {
                let size = match axis {
                    Axis::K => CodeSize::Dimension(c as u32),
                    Axis::M => CodeSize::Words(c),
                };
                let best = best_bound(q, size, d, setting)?;
                legend.insert(best.source.letter(), best.source.description().to_string());
                cells.push(Cell {
                    value: best.value,
                    source: best.source.letter(),
                });
            }
            rows.push(Row { d, cells });
        }
        Ok(Self {
            q,
            setting,
            axis,
            columns,
            rows,
            legend,
        })
    }

    fn axis_name(&self) -> &'static str {
        match self.axis {
            Axis::K => "k",
            Axis::M => "M",
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d");
        for c in &self.columns {
            let _ = write!(out, ",{}={c}", self.axis_name());
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}", row.d);
            for cell in &row.cells {
                let _ = write!(out, ",{}{}", cell.value, cell.source);
            }
            out.push('\n');
        }
        out.push('\n');
        for (letter, text) in &self.legend {
            let _ = writeln!(out, "# {letter}: {text}");
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "Best lower bound on n, q={}, {} setting\n\n| d \\ {} |",
            self.q,
            self.setting,
            self.axis_name()
        );
        for c in &self.columns {
            let _ = write!(out, " {c} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(self.columns.len()));
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "| {} |", row.d);
            for cell in &row.cells {
                let _ = write!(out, " {}{} |", cell.value, cell.source);
            }
            out.push('\n');
        }
        out.push('\n');
        for (letter, text) in &self.legend {
            let _ = writeln!(out, "- `{letter}`: {text}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}
