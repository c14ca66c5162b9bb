//! Family sweeps over thickened uniform matroids.

use std::io::Write;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, BigRational};
use crate::thickening::{mw_report, MwReport, ThickenedUniform};

/// Inclusive integer range with a positive step. `min > max` is an empty range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub min: u32,
    pub max: u32,
    pub step: u32,
}

impl IntRange {
    pub fn single(v: u32) -> Self {
        Self {
            min: v,
            max: v,
            step: 1,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        (self.min..=self.max).step_by(self.step as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }
}

/// `7`, `1..33` or `3..99:3`.
impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bad range {s:?}: {what}"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| bad(&e.to_string()));
        let (body, step) = match s.split_once(':') {
            Some((body, step)) => (body, num(step)?),
            None => (s, 1),
        };
        if step == 0 {
            return Err(bad("step must be at least 1"));
        }
        let (min, max) = match body.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
            None => {
                let v = num(body)?;
                (v, v)
            }
        };
        Ok(Self { min, max, step })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankSelector {
    /// Every `0 < r < n`.
    All,
    /// `r = alpha n`, only when that is an integer strictly between 0 and n.
    Fraction(BigRational),
    Explicit(Vec<u32>),
}

impl RankSelector {
    fn ranks(&self, n: u32) -> Vec<u32> {
        match self {
            RankSelector::All => (1..n).collect(),
            RankSelector::Fraction(alpha) => {
                let r = alpha * BigRational::from_integer(n.into());
                if !r.is_integer() {
                    return Vec::new();
                }
                match r.to_integer().try_into() {
                    Ok(r) if r > 0 && r < n => vec![r],
                    _ => Vec::new(),
                }
            }
            RankSelector::Explicit(rs) => rs.iter().copied().filter(|&r| r <= n).collect(),
        }
    }
}

/// `all`, or a comma-separated list of ranks.
impl FromStr for RankSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(RankSelector::All);
        }
        let mut rs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad rank {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rs.sort_unstable();
        rs.dedup();
        Ok(RankSelector::Explicit(rs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Mult,
    Add,
    Max,
}

impl Inequality {
    pub fn holds(&self, report: &MwReport) -> bool {
        match self {
            Inequality::Mult => report.status_mult,
            Inequality::Add => report.status_add,
            Inequality::Max => report.status_max,
        }
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| Error::Parse(format!("unknown inequality {s:?} (mult, add, max)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| Error::Parse(format!("unknown format {s:?} (csv, json)")))
    }
}

/// A sweep over `U^(k)_{n,r}`, visited by element count `k n`, then `n`, then `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: IntRange,
    pub r: RankSelector,
    pub k: IntRange,
    pub x: BigRational,
    pub inequality: Inequality,
    pub stop_at_first: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n: IntRange {
                min: 2,
                max: 33,
                step: 1,
            },
            r: RankSelector::All,
            k: IntRange::single(2),
            x: BigRational::from_integer(2.into()),
            inequality: Inequality::Mult,
            stop_at_first: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.x.is_negative() {
            return Err(Error::InvalidParameters(format!("x must be >= 0, got {}", self.x)));
        }
        if self.n.step == 0 || self.k.step == 0 {
            return Err(Error::InvalidParameters("range steps must be at least 1".into()));
        }
        if !self.k.is_empty() && self.k.min == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        if let RankSelector::Fraction(alpha) = &self.r {
            if !alpha.is_positive() || *alpha >= BigRational::from_integer(1.into()) {
                return Err(Error::InvalidParameters(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )));
            }
        }
        Ok(())
    }

    /// Family members in canonical visiting order; members with loops or
    /// coloops are skipped.
    pub fn candidates(&self) -> Vec<ThickenedUniform> {
        let mut out = Vec::new();
        for n in self.n.iter() {
            for r in self.r.ranks(n) {
                for k in self.k.iter() {
                    if let Ok(t) = ThickenedUniform::from_params(n, r, k) {
                        if !t.has_loops_or_coloops() {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|t| (t.element_count(), t.base().n(), t.base().r()));
        out
    }
}

/// One output line of a sweep. Values are exact decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: u32,
    pub r: u32,
    pub k: u32,
    pub x: String,
    pub t_x0: String,
    pub t_0x: String,
    pub t_11: String,
    pub ratio: f64,
    pub mult: bool,
    pub add: bool,
    pub max: bool,
}

impl ResultRow {
    pub fn new(t: ThickenedUniform, report: &MwReport) -> Self {
        Self {
            n: t.base().n(),
            r: t.base().r(),
            k: t.k(),
            x: report.x.to_string(),
            t_x0: report.t_x0.to_string(),
            t_0x: report.t_0x.to_string(),
            t_11: report.t_11.to_string(),
            ratio: report.ratio_mult_real,
            mult: report.status_mult,
            add: report.status_add,
            max: report.status_max,
        }
    }

    /// Rebuilds the report from the stored exact strings.
    pub fn recompute(&self) -> Result<MwReport> {
        Ok(MwReport::from_values(
            parse_rational(&self.x)?,
            parse_rational(&self.t_x0)?,
            parse_rational(&self.t_0x)?,
            parse_rational(&self.t_11)?,
        ))
    }

    /// Whether the stored flags match the ones recomputed from the values.
    pub fn is_consistent(&self) -> bool {
        self.recompute()
            .map(|r| (r.status_mult, r.status_add, r.status_max) == (self.mult, self.add, self.max))
            .unwrap_or(false)
    }

    pub fn holds(&self, inequality: Inequality) -> bool {
        match inequality {
            Inequality::Mult => self.mult,
            Inequality::Add => self.add,
            Inequality::Max => self.max,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub rows: Vec<ResultRow>,
    /// Index into `rows` of the first row violating the configured inequality.
    pub first_violation: Option<usize>,
    pub violations: usize,
}

/// Runs the sweep on the current rayon pool.
///
/// Members are evaluated in parallel batches and merged back in canonical
/// order, so `stop_at_first` always stops at the canonically first violation.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let candidates = cfg.candidates();
    let batch = (rayon::current_num_threads() * 4).max(1);
    let mut rows = Vec::new();
    let mut first_violation = None;
    let mut violations = 0;
    'batches: for chunk in candidates.chunks(batch) {
        let reports = chunk
            .par_iter()
            .map(|&t| mw_report(t, &cfg.x).map(|rep| (t, rep)))
            .collect::<Result<Vec<_>>>()?;
        for (t, report) in reports {
            let row = ResultRow::new(t, &report);
            let violated = !cfg.inequality.holds(&report);
            rows.push(row);
            if violated {
                violations += 1;
                first_violation.get_or_insert(rows.len() - 1);
                if cfg.stop_at_first {
                    break 'batches;
                }
            }
        }
    }
    Ok(SearchOutcome {
        rows,
        first_violation,
        violations,
    })
}

pub fn write_rows(rows: &[ResultRow], format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidParameters(format!("write failed: {e}"));
    match format {
        OutputFormat::Json => {
            for row in rows {
                let line = serde_json::to_string(row).map_err(|e| Error::Parse(e.to_string()))?;
                writeln!(out, "{line}").map_err(io)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record([
                "n", "r", "k", "x", "t_x0", "t_0x", "t_11", "ratio", "mult", "add", "max",
            ])
            .map_err(|e| Error::Parse(e.to_string()))?;
            for row in rows {
                w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

pub fn read_json_rows(text: &str) -> Result<Vec<ResultRow>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

pub fn read_csv_rows(text: &str) -> Result<Vec<ResultRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}
