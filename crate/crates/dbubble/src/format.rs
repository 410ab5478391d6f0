//! Plain-text configuration files.
//!
//! ```text
//! n m
//! A x y
//! ...
//! B x y
//! ```
//!
//! Cells are sorted by label, then numerically by `x`, then `y`. A
//! construction file prefixes this with one header line:
//!
//! ```text
//! # construction provenance=side-tab rho_db=18 bound=20 slack=2 guaranteed=true
//! ```

use std::fmt::Write as _;

use dbubble_core::constructors::{Construction, Provenance};
use dbubble_core::polyomino::{measure, Bubble, Cell, CellSet, LatticeConfig};

use crate::error::{CliError, Result};

pub fn write_config(config: &LatticeConfig) -> String {
    let (n, m) = config.volumes();
    let mut out = format!("{n} {m}\n");
    for (bubble, cells) in [(Bubble::A, config.a()), (Bubble::B, config.b())] {
        let mut sorted: Vec<&Cell> = cells.iter().collect();
        sorted.sort_by_key(|c| (c.x, c.y));
        for c in sorted {
            let _ = writeln!(out, "{} {} {}", bubble.label(), c.x, c.y);
        }
    }
    out
}

fn format_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Format { line, message: message.into() }
}

fn parse_int<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| format_err(line, format!("expected an integer, found `{s}`")))
}

/// Parses the cell list; lines starting with `#` and blank lines are skipped.
pub fn parse_config(text: &str) -> Result<LatticeConfig> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or_else(|| format_err(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(format_err(line, "header must be `n m`"));
    };
    let (n, m): (usize, usize) = (parse_int(n, line)?, parse_int(m, line)?);

    let mut a = CellSet::new();
    let mut b = CellSet::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [label, x, y] = fields[..] else {
            return Err(format_err(line, "cell lines must be `A x y` or `B x y`"));
        };
        let cell = Cell::new(parse_int(x, line)?, parse_int(y, line)?);
        let fresh = match label {
            "A" => !b.contains(&cell) && a.insert(cell),
            "B" => !a.contains(&cell) && b.insert(cell),
            other => return Err(format_err(line, format!("unknown bubble label `{other}`"))),
        };
        if !fresh {
            return Err(format_err(line, format!("cell ({}, {}) listed twice", cell.x, cell.y)));
        }
    }
    if (a.len(), b.len()) != (n, m) {
        return Err(format_err(line, format!("header says {n} {m}, found {} {} cells", a.len(), b.len())));
    }
    Ok(LatticeConfig::from_sets(a, b))
}

pub fn write_construction(c: &Construction) -> String {
    format!(
        "# construction provenance={} rho_db={} bound={} slack={} guaranteed={}\n{}",
        c.provenance.name(),
        c.rho_db,
        c.bound,
        c.slack,
        c.guaranteed,
        write_config(&c.config)
    )
}

/// Parses a construction file. The stored perimeter must match the cells.
pub fn parse_construction(text: &str) -> Result<Construction> {
    let header = text.lines().next().unwrap_or_default();
    let rest = header
        .strip_prefix("# construction ")
        .ok_or_else(|| format_err(1, "missing `# construction` header"))?;
    let mut provenance = None;
    let (mut rho_db, mut bound, mut slack, mut guaranteed) = (None, None, None, None);
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| format_err(1, format!("malformed field `{field}`")))?;
        match key {
            "provenance" => {
                provenance = Some(
                    Provenance::from_name(value).ok_or_else(|| format_err(1, format!("unknown provenance `{value}`")))?,
                )
            }
            "rho_db" => rho_db = Some(parse_int(value, 1)?),
            "bound" => bound = Some(parse_int(value, 1)?),
            "slack" => slack = Some(parse_int(value, 1)?),
            "guaranteed" => {
                guaranteed = Some(value.parse().map_err(|_| format_err(1, format!("expected a boolean, found `{value}`")))?)
            }
            other => return Err(format_err(1, format!("unknown field `{other}`"))),
        }
    }
    let missing = |name: &str| format_err(1, format!("missing field `{name}`"));
    let config = parse_config(text)?;
    let c = Construction {
        rho_db: rho_db.ok_or_else(|| missing("rho_db"))?,
        bound: bound.ok_or_else(|| missing("bound"))?,
        slack: slack.ok_or_else(|| missing("slack"))?,
        provenance: provenance.ok_or_else(|| missing("provenance"))?,
        guaranteed: guaranteed.ok_or_else(|| missing("guaranteed"))?,
        config,
    };
    let measured = measure(&c.config).rho_db;
    if measured != c.rho_db {
        return Err(format_err(1, format!("header says rho_db={}, cells measure {measured}", c.rho_db)));
    }
    Ok(c)
}
