//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use dbubble_core::certificate::{lattice_witness, parallelogram_certificate, region_monotone, shifted_curves};
use dbubble_core::constructors::{construct, construct_equal, Construction};
use dbubble_core::continuous::{ceil_rho_cont, continuous_shape};
use dbubble_core::oracle::{exact_min, upper_bound, ExactError, OracleResult, DEFAULT_NODE_BUDGET};
use dbubble_core::polyomino::{db_perimeter, render, LatticeConfig, RenderFormat};

use crate::cache::{default_cache_path, Cache};
use crate::error::{CliError, Result};
use crate::format::{write_config, write_construction};
use crate::sweep::{heatmap_svg, run_sweep, write_csv, SweepOptions};

/// Smallest volume at which the equal-volume certificate is established.
const CERTIFIED_BASE: f64 = 6000.0;

#[derive(Debug, Parser)]
#[command(name = "dbubble", version, about = "Discrete double bubbles on the square lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for output files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit the witness configuration.
    #[arg(long, global = true, value_enum)]
    pub render: Option<RenderArg>,
    /// Search node limit for the exhaustive oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderArg {
    Ascii,
    Svg,
}

impl From<RenderArg> for RenderFormat {
    fn from(r: RenderArg) -> Self {
        match r {
            RenderArg::Ascii => RenderFormat::Ascii,
            RenderArg::Svg => RenderFormat::Svg,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report on one volume pair.
    Show {
        n: u64,
        m: u64,
        /// Run the exhaustive search when n + m is at most this.
        #[arg(long, default_value_t = 14)]
        exact_limit: u64,
    },
    /// Classify every pair m <= n <= N_MAX, m <= M_MAX; writes sweep.csv and heatmap.svg.
    Sweep {
        n_max: u64,
        m_max: u64,
        #[arg(long, default_value_t = 12)]
        exact_limit: u64,
        /// Leave pairs outside the exact range unclassified.
        #[arg(long)]
        exact_only: bool,
    },
    /// Check the equal-volume lattice-point certificate.
    Certify { n: f64 },
    /// Sample the region boundary curves as CSV.
    Curves { n: f64, samples: usize },
    /// Run the exhaustive search regardless of size.
    Oracle { n: u64, m: u64 },
}

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    cache: Option<Cache>,
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> Result<()> {
    out.write_all(text.as_ref().as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn check_pair(n: u64, m: u64) -> Result<()> {
    if m >= 1 && m <= n {
        Ok(())
    } else {
        Err(CliError::Usage(format!("volumes must satisfy 1 <= m <= n, got n = {n}, m = {m}")))
    }
}

impl Context<'_> {
    fn cached(&self, n: u64, m: u64) -> Result<Option<OracleResult>> {
        match &self.cache {
            Some(c) => c.get(n, m),
            None => Ok(None),
        }
    }

    fn store(&mut self, r: &OracleResult) -> Result<()> {
        match &mut self.cache {
            Some(c) => c.put(r),
            None => Ok(()),
        }
    }

    fn show_config(&mut self, label: &str, config: &LatticeConfig) -> Result<()> {
        let Some(fmt) = self.cli.render else { return Ok(()) };
        let text = render(config, fmt.into());
        match (&self.cli.out, fmt) {
            (Some(dir), _) => {
                let ext = if fmt == RenderArg::Svg { "svg" } else { "txt" };
                let path = write_file(dir, &format!("{label}.{ext}"), &format!("{text}\n"))?;
                emit(self.out, format!("rendered: {}\n", path.display()))
            }
            (None, _) => emit(self.out, format!("{text}\n")),
        }
    }

    fn show(&mut self, n: u64, m: u64, exact_limit: u64) -> Result<()> {
        check_pair(n, m)?;
        let shape = continuous_shape(n as f64, m as f64)?;
        let ceil = ceil_rho_cont(n, m)?;
        let c: Construction = construct(n, m)?;
        if c.guaranteed && !c.within_bound() {
            return Err(CliError::Invariant(format!("construction has perimeter {} above bound {}", c.rho_db, c.bound)));
        }
        let mut report = format!(
            "n = {n}, m = {m}, alpha = {:.6}\nregime: {}\nrho_cont: {:.6}\nceil: {ceil}\nconstruction: {} ({}, bound {}, guaranteed {})\n",
            m as f64 / n as f64,
            shape.regime.name(),
            shape.value,
            c.rho_db,
            c.provenance.name(),
            c.bound,
            if c.guaranteed { "yes" } else { "no" },
        );

        let mut oracle = self.cached(n, m)?.filter(|r| r.exact);
        if oracle.is_none() && n + m <= exact_limit {
            match exact_min(n, m, self.cli.node_budget) {
                Ok(r) => {
                    self.store(&r)?;
                    oracle = Some(r);
                }
                Err(ExactError::BudgetExceeded(r)) => {
                    report += &format!("oracle: node budget exhausted after {} nodes\n", r.nodes_explored);
                }
                Err(ExactError::Invalid(e)) => return Err(e.into()),
            }
        }
        let best = match oracle {
            Some(r) => {
                report += &format!("oracle: {} (exact)\n", r.value);
                r
            }
            None => {
                let r = upper_bound(n, m)?;
                report += &format!("oracle: not computed; upper bound {} from the layout family\n", r.value);
                r
            }
        };
        if best.value < ceil {
            return Err(CliError::Invariant(format!("value {} below the continuous bound {ceil}", best.value)));
        }
        let gap = best.value - ceil;
        let certified = best.exact || gap == 0;
        report += &format!("gap: {gap}{}\n", if certified { "" } else { " (upper bound)" });
        emit(self.out, report)?;

        if let Some(dir) = &self.cli.out {
            let path = write_file(dir, &format!("construction_{n}_{m}.txt"), &write_construction(&c))?;
            emit(self.out, format!("wrote: {}\n", path.display()))?;
            let path = write_file(dir, &format!("witness_{n}_{m}.txt"), &write_config(&best.config))?;
            emit(self.out, format!("wrote: {}\n", path.display()))?;
        }
        self.show_config(&format!("render_{n}_{m}"), &best.config)
    }

    fn sweep(&mut self, n_max: u64, m_max: u64, exact_limit: u64, exact_only: bool) -> Result<()> {
        if n_max < 1 || m_max < 1 {
            return Err(CliError::Usage("sweep bounds must be at least 1".into()));
        }
        let opts = SweepOptions { exact_limit, node_budget: self.cli.node_budget, exact_only };
        let cache = &self.cache;
        let lookup = |n: u64, m: u64| cache.as_ref().and_then(|c| c.get(n, m).ok().flatten());
        let results = run_sweep(n_max, m_max, &opts, &lookup)?;
        let mut rows = Vec::with_capacity(results.len());
        for (row, fresh) in results {
            if let Some(r) = fresh.filter(|r| r.exact) {
                self.store(&r)?;
            }
            rows.push(row);
        }
        let dir = self.cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
        let csv_path = write_file(&dir, "sweep.csv", &write_csv(&rows))?;
        let svg_path = write_file(&dir, "heatmap.svg", &heatmap_svg(&rows))?;
        let mut counts = [0usize; 4];
        for r in &rows {
            counts[r.gap.map_or(3, |g| (g as usize).min(3))] += 1;
        }
        let exact = rows.iter().filter(|r| r.exact).count();
        emit(
            self.out,
            format!(
                "pairs: {} (exact: {exact})\ngap 0: {}\ngap 1: {}\ngap 2: {}\nunknown: {}\nwrote: {}\nwrote: {}\n",
                rows.len(),
                counts[0],
                counts[1],
                counts[2],
                counts[3],
                csv_path.display(),
                svg_path.display()
            ),
        )
    }

    fn certify(&mut self, n: f64) -> Result<()> {
        if !(n >= 1.0) || !n.is_finite() {
            return Err(CliError::Usage(format!("n must be at least 1, got {n}")));
        }
        let region = shifted_curves(n)?;
        let cert = parallelogram_certificate(n);
        let mut report = format!(
            "n: {n}\nregion: x_left {:.6} x_right {:.6}\ncontained: {}\nmargin: {:.6}\ncenter: ({:.6}, {:.6})\nhits_all_shifts: {}\nshift_clearance: {:.6}\n",
            region.x_left, region.x_right, cert.contained, cert.margin, cert.center.x, cert.center.y, cert.hits_all_shifts, cert.shift_clearance
        );
        if n > CERTIFIED_BASE {
            let grows = region_monotone(CERTIFIED_BASE, n, 1000);
            let base = parallelogram_certificate(CERTIFIED_BASE).contained;
            report += &format!("region grows from {CERTIFIED_BASE}: {grows}\ncontained via growth: {}\n", grows && base);
        }
        if let Some(w) = lattice_witness(n.ceil() as u64, &cert) {
            report += &format!(
                "lattice point: ({}, {}, {}) objective {} feasible {}\n",
                w.x,
                w.y,
                w.z,
                w.objective(),
                w.feasible
            );
        }
        match construct_equal(n, 1)? {
            Some(p) => {
                let t = p.triple;
                report += &format!("triple: ({}, {}, {}) objective {} budget {}\n", t.x, t.y, t.z, t.objective(), p.budget);
            }
            None => {
                let t = dbubble_core::constructors::min_triple(n);
                report += &format!("triple: ({}, {}, {}) objective {} exceeds budget\n", t.x, t.y, t.z, t.objective());
            }
        }
        emit(self.out, report)
    }

    fn curves(&mut self, n: f64, samples: usize) -> Result<()> {
        if samples < 2 {
            return Err(CliError::Usage("need at least 2 samples".into()));
        }
        let rc = shifted_curves(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut csv = String::from("x,y1,y2\n");
        let step = (rc.x_right - rc.x_left) / (samples - 1) as f64;
        for i in 0..samples {
            let x = if i + 1 == samples { rc.x_right } else { rc.x_left + step * i as f64 };
            csv += &format!("{x:.9},{:.9},{:.9}\n", rc.y1(x)?, rc.y2(x)?);
        }
        match &self.cli.out {
            Some(dir) => {
                let path = write_file(dir, &format!("curves_{n}.csv"), &csv)?;
                emit(self.out, format!("wrote: {}\n", path.display()))
            }
            None => emit(self.out, csv),
        }
    }

    fn oracle(&mut self, n: u64, m: u64) -> Result<()> {
        if n == 0 || m == 0 {
            return Err(CliError::Usage("volumes must be positive".into()));
        }
        if n + m > 64 {
            return Err(CliError::Usage("the exhaustive search needs n + m <= 64".into()));
        }
        let r = match exact_min(n, m, self.cli.node_budget) {
            Ok(r) => r,
            Err(ExactError::BudgetExceeded(r)) => *r,
            Err(ExactError::Invalid(e)) => return Err(e.into()),
        };
        let measured = db_perimeter(&r.config)?.rho_db;
        if measured != r.value {
            return Err(CliError::Invariant(format!("witness measures {measured}, reported {}", r.value)));
        }
        if r.exact {
            self.store(&r)?;
        }
        emit(
            self.out,
            format!(
                "n = {n}, m = {m}\nvalue: {}\nexact: {}\nnodes: {}\n",
                r.value,
                r.exact,
                r.nodes_explored
            ),
        )?;
        self.show_config(&format!("oracle_{n}_{m}"), &r.config)
    }
}

/// Runs a parsed command, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cache = if cli.no_cache { None } else { Some(Cache::open(default_cache_path())?) };
    let mut ctx = Context { cli, out, cache };
    match cli.command {
        Command::Show { n, m, exact_limit } => ctx.show(n, m, exact_limit),
        Command::Sweep { n_max, m_max, exact_limit, exact_only } => ctx.sweep(n_max, m_max, exact_limit, exact_only),
        Command::Certify { n } => ctx.certify(n),
        Command::Curves { n, samples } => ctx.curves(n, samples),
        Command::Oracle { n, m } => ctx.oracle(n, m),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
