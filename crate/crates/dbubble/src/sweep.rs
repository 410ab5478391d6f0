//! Gap classification over a range of volume pairs, as CSV and as an SVG
//! heatmap.

use std::fmt::Write as _;
use std::path::Path;

use dbubble_core::constructors::construct;
use dbubble_core::continuous::{ceil_rho_cont, rho_cont};
use dbubble_core::oracle::{exact_min, upper_bound, ExactError, OracleResult};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const HEADER: [&str; 8] = ["n", "m", "rho_cont", "ceil", "constructed", "oracle_value", "exact", "gap"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub m: u64,
    pub rho_cont: f64,
    pub ceil: u64,
    pub constructed: u64,
    pub oracle_value: Option<u64>,
    pub exact: bool,
    pub gap: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Run the exhaustive search when `n + m` is at most this.
    pub exact_limit: u64,
    pub node_budget: u64,
    /// Leave pairs outside the exact range without an oracle value instead of
    /// using the family search.
    pub exact_only: bool,
}

/// Oracle value for one pair: the cached result if exact, else the exhaustive
/// search in range, else the upper bound (unless `exact_only`).
pub fn oracle_for(n: u64, m: u64, opts: &SweepOptions, cached: Option<&OracleResult>) -> Result<Option<OracleResult>> {
    if let Some(c) = cached.filter(|c| c.exact) {
        return Ok(Some(c.clone()));
    }
    if n + m <= opts.exact_limit {
        match exact_min(n, m, opts.node_budget) {
            Ok(r) => return Ok(Some(r)),
            Err(ExactError::BudgetExceeded(r)) if !opts.exact_only => return Ok(Some(*r)),
            Err(ExactError::BudgetExceeded(_)) => return Ok(None),
            Err(ExactError::Invalid(e)) => return Err(e.into()),
        }
    }
    if opts.exact_only {
        return Ok(cached.cloned());
    }
    Ok(Some(upper_bound(n, m)?))
}

/// Builds the row and checks it against the proven bounds.
pub fn make_row(n: u64, m: u64, oracle: Option<&OracleResult>) -> Result<SweepRow> {
    let ceil = ceil_rho_cont(n, m)?;
    let c = construct(n, m)?;
    if c.rho_db < ceil || (c.guaranteed && !c.within_bound()) {
        return Err(CliError::Invariant(format!("construction for ({n}, {m}) has perimeter {} against bound {}", c.rho_db, c.bound)));
    }
    if let Some(o) = oracle {
        if o.value < ceil {
            return Err(CliError::Invariant(format!("({n}, {m}): value {} below the continuous bound {ceil}", o.value)));
        }
    }
    Ok(SweepRow {
        n,
        m,
        rho_cont: rho_cont(n as f64, m as f64)?,
        ceil,
        constructed: c.rho_db,
        oracle_value: oracle.map(|o| o.value),
        exact: oracle.is_some_and(|o| o.exact),
        gap: oracle.map(|o| o.value - ceil),
    })
}

/// Every pair `1 <= m <= min(n, m_max)`, `n <= n_max`, in `(n, m)` order.
pub fn pairs(n_max: u64, m_max: u64) -> Vec<(u64, u64)> {
    (1..=n_max).flat_map(|n| (1..=n.min(m_max)).map(move |m| (n, m))).collect()
}

/// Evaluates all pairs in parallel. `lookup` supplies cached results; the
/// freshly computed oracle results are returned alongside the rows, both in
/// `(n, m)` order.
pub fn run_sweep(
    n_max: u64,
    m_max: u64,
    opts: &SweepOptions,
    lookup: &(dyn Fn(u64, u64) -> Option<OracleResult> + Sync),
) -> Result<Vec<(SweepRow, Option<OracleResult>)>> {
    pairs(n_max, m_max)
        .into_par_iter()
        .map(|(n, m)| {
            let cached = lookup(n, m);
            let oracle = oracle_for(n, m, opts, cached.as_ref())?;
            let row = make_row(n, m, oracle.as_ref())?;
            let fresh = oracle.filter(|o| cached.as_ref() != Some(o));
            Ok((row, fresh))
        })
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADER).expect("in-memory write");
    for r in rows {
        writer
            .write_record([
                r.n.to_string(),
                r.m.to_string(),
                format!("{:.6}", r.rho_cont),
                r.ceil.to_string(),
                r.constructed.to_string(),
                opt(r.oracle_value),
                r.exact.to_string(),
                opt(r.gap),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<SweepRow>> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    if reader.headers().map_err(csv_err)?.iter().ne(HEADER) {
        return Err(CliError::Format { line: 1, message: format!("expected header `{}`", HEADER.join(",")) });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |i: usize| CliError::Format { line, message: format!("bad field `{}`", &record[i]) };
        let int = |i: usize| record[i].parse::<u64>().map_err(|_| bad(i));
        let maybe = |i: usize| if record[i].is_empty() { Ok(None) } else { int(i).map(Some) };
        rows.push(SweepRow {
            n: int(0)?,
            m: int(1)?,
            rho_cont: record[2].parse().map_err(|_| bad(2))?,
            ceil: int(3)?,
            constructed: int(4)?,
            oracle_value: maybe(5)?,
            exact: record[6].parse().map_err(|_| bad(6))?,
            gap: maybe(7)?,
        });
    }
    Ok(rows)
}

pub const PURPLE: &str = "#6a3d9a";
pub const TEAL: &str = "#1b9e77";
pub const YELLOW: &str = "#f1c40f";
pub const GRAY: &str = "#9e9e9e";

pub fn gap_color(gap: Option<u64>) -> &'static str {
    match gap {
        Some(0) => PURPLE,
        Some(1) => TEAL,
        Some(2) => YELLOW,
        _ => GRAY,
    }
}

const CELL: u64 = 16;
const MARGIN: u64 = 40;

/// One square per row at column `n`, row `m` (counted upwards).
pub fn heatmap_svg(rows: &[SweepRow]) -> String {
    let n_max = rows.iter().map(|r| r.n).max().unwrap_or(0);
    let m_max = rows.iter().map(|r| r.m).max().unwrap_or(0);
    let width = 2 * MARGIN + n_max * CELL;
    let height = 2 * MARGIN + m_max * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for r in rows {
        let x = MARGIN + (r.n - 1) * CELL;
        let y = MARGIN + (m_max - r.m) * CELL;
        let gap = r.gap.map_or_else(|| "unknown".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" data-n="{}" data-m="{}" data-gap="{gap}" data-exact="{}"/>"#,
            gap_color(r.gap),
            r.n,
            r.m,
            r.exact
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">n</text>"#,
        MARGIN + n_max * CELL / 2,
        height - MARGIN / 3
    );
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">m</text>"#, MARGIN / 3, MARGIN + m_max * CELL / 2);
    out.push_str("</svg>\n");
    out
}
