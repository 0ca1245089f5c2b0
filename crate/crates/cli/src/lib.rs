//! Command-line front end for `fzeta-core`: value computation, verification
//! checks and the full suite, with text or JSON reports.

pub mod checks;
pub mod config;
pub mod golden;
pub mod polyparse;
pub mod report;
pub mod suite;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::special::{
    at_polynomials, cmpl_series, cmpl_value, convergence_check, index_subclosure, mzv_direct_budgeted, CmplSpec,
    Index, DEFAULT_BUDGET,
};

use config::{Format, RunConfig, UsageError};
use report::{Check, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "fzeta", version, about = "Multiple zeta values, Carlitz periods and t-motive checks in positive characteristic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Level(s) l, comma separated; q = p^l.
    #[arg(long = "l", alias = "levels", value_delimiter = ',', default_value = "1")]
    pub levels: Vec<u32>,
    /// z-adic precision (each command has its own default).
    #[arg(long)]
    pub prec: Option<i64>,
    /// Truncation degree in t.
    #[arg(long)]
    pub tdeg: Option<usize>,
    /// Index or index set: "2,1" or "1,2;3".
    #[arg(long)]
    pub index: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest number of monic polynomials enumerated for one power sum.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Record per-check runtimes (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiple zeta values by direct summation.
    Mzv(Common),
    /// Anderson–Thakur polynomials H_0..H_smax.
    Atpoly {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        smax: usize,
    },
    /// The series Omega and its functional equation.
    Omega(Common),
    /// The Carlitz period by its product formula, against Omega(theta).
    Pitilde(Common),
    /// A Carlitz multiple polylogarithm: value at theta and t-series.
    Cmpl {
        #[command(flatten)]
        common: Common,
        /// Arguments separated by ';' as polynomials in t and theta; default: Anderson–Thakur.
        #[arg(long)]
        u: Option<String>,
    },
    /// Li(H) = Gamma zeta for each index.
    VerifyPeriod {
        #[command(flatten)]
        common: Common,
        /// Also run the perturbed-argument negative control.
        #[arg(long)]
        control: bool,
    },
    /// Psi = Phi^(l) Psi^(l) with mutation testing.
    VerifyRat(Common),
    /// The same Psi for derived motives.
    VerifyDerived {
        #[command(flatten)]
        common: Common,
        /// Derivation orders.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        s: Vec<u32>,
    },
    /// Closure of the block group shells under products and inverses.
    GroupClosure {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Sample over F_(p^N).
        #[arg(long, default_value_t = 4)]
        field_degree: u32,
    },
    /// Commutators in the block group shells.
    GroupCommutator {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        field_degree: u32,
        /// Index whose coordinate subgroup is used; default: last of the closure.
        #[arg(long)]
        target: Option<String>,
    },
    /// The full verification matrix.
    Suite {
        #[command(flatten)]
        common: Common,
        /// Read golden files from this directory instead of the bundled copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Write freshly computed golden files into --fixtures and exit.
        #[arg(long, requires = "fixtures")]
        bless: bool,
    },
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            p: self.p,
            levels: self.levels.clone(),
            precision: self.prec,
            tdeg: self.tdeg,
            index: self.index.clone(),
            seed: self.seed,
            format: self.format,
            budget: self.budget,
        }
    }
}

/// Outcome of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        Err(e) => usage(e),
    }
}

fn timed(timings: bool, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    if timings {
        c.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    c
}

fn finish(report: Report, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    Outcome { code: report.exit_code(), stdout, stderr: String::new() }
}

fn context(p: u64, l: u32, prec: i64, tdeg: usize) -> Result<CarlitzContext, UsageError> {
    CarlitzContext::new(p, l, prec, tdeg).map_err(|e| UsageError(format!("--p/--l: {e}")))
}

fn execute(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Mzv(c) => cmd_mzv(&c),
        Command::Atpoly { common, smax } => cmd_atpoly(&common, smax),
        Command::Omega(c) => cmd_omega(&c),
        Command::Pitilde(c) => cmd_pitilde(&c),
        Command::Cmpl { common, u } => cmd_cmpl(&common, u.as_deref()),
        Command::VerifyPeriod { common, control } => cmd_verify_period(&common, control),
        Command::VerifyRat(c) => cmd_verify_rat(&c),
        Command::VerifyDerived { common, s } => cmd_verify_derived(&common, &s),
        Command::GroupClosure { common, samples, field_degree } => cmd_group_closure(&common, samples, field_degree),
        Command::GroupCommutator { common, samples, field_degree, target } => {
            cmd_group_commutator(&common, samples, field_degree, target.as_deref())
        }
        Command::Suite { common, fixtures, bless } => cmd_suite(&common, fixtures, bless),
    }
}

fn start(name: &str, c: &Common) -> Result<(RunConfig, Report), UsageError> {
    let config = c.config();
    config.validate()?;
    let report = Report::new(name, &config);
    Ok((config, report))
}

fn cmd_mzv(c: &Common) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("mzv", c)?;
    let indices = config.indices()?;
    let prec = config.prec_or(40);
    for &l in &config.levels {
        let ctx = context(config.p, l, prec, 1)?;
        for s in &indices {
            let name = format!("mzv/{}/s{}", checks::tag(config.p, l), s.to_text());
            match mzv_direct_budgeted(&ctx, s, prec, config.budget) {
                Ok(v) => {
                    report.results.push(json!({
                        "level": l,
                        "index": s.to_text(),
                        "value": v.value.to_text(),
                        "terms_used": v.power_sums,
                        "polynomials_enumerated": v.polynomials.to_string(),
                        "max_degree": v.max_degree,
                        "precision_achieved": v.value.precision(),
                    }));
                    let got = v.value.precision().unwrap_or(i64::MAX);
                    report.checks.push(Check::from_bool(
                        name,
                        got >= prec,
                        format!("summed to O(z^{}) with {} power sums", got.min(prec), v.power_sums),
                    ));
                }
                Err(e) => report.checks.push(Check::error(name, e)),
            }
        }
    }
    Ok(finish(report, config.format))
}

fn cmd_atpoly(c: &Common, smax: usize) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("atpoly", c)?;
    for &l in &config.levels {
        let ctx = context(config.p, l, 1, 1)?;
        match at_polynomials(&ctx, smax) {
            Ok(h) => {
                for (s, hs) in h.iter().enumerate() {
                    report.results.push(json!({ "level": l, "s": s, "H": hs.format() }));
                }
                report.checks.push(checks::at_polynomial_checks(config.p, l, smax));
            }
            Err(e) => report.checks.push(Check::error(format!("atpoly/{}", checks::tag(config.p, l)), e)),
        }
    }
    Ok(finish(report, config.format))
}

fn cmd_omega(c: &Common) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("omega", c)?;
    let (prec, tdeg) = (config.prec_or(60), config.tdeg_or(20));
    for &l in &config.levels {
        let ctx = context(config.p, l, prec, tdeg)?;
        let om = ctx.omega_series(None, tdeg, prec);
        report.results.push(json!({
            "level": l,
            "factors": ctx.omega_factors(tdeg, prec),
            "omega": om.to_text(),
        }));
        let (p, t) = (config.p, c.timings);
        report.checks.push(timed(t, || checks::omega_functional(p, l, tdeg, prec, prec)));
        report.checks.push(timed(t, || checks::omega_control(p, l, tdeg, prec)));
    }
    Ok(finish(report, config.format))
}

fn cmd_pitilde(c: &Common) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("pitilde", c)?;
    let prec = config.prec_or(50);
    for &l in &config.levels {
        let ctx = context(config.p, l, prec, 1)?;
        let pi = ctx.pi_tilde(prec);
        report.results.push(json!({
            "level": l,
            "value": pi.to_text(),
            "norm_exponent": pi.norm().map(|r| r.to_string()),
        }));
        report.checks.push(timed(c.timings, || checks::pi_tilde_two_path(config.p, l, prec, prec)));
    }
    Ok(finish(report, config.format))
}

fn cmd_cmpl(c: &Common, u: Option<&str>) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("cmpl", c)?;
    let indices = config.indices()?;
    let (prec, tdeg) = (config.prec_or(30), config.tdeg_or(30));
    for &l in &config.levels {
        let ctx = context(config.p, l, prec, tdeg)?;
        for s in &indices {
            let tag = format!("{}/s{}", checks::tag(config.p, l), s.to_text());
            let spec = match u {
                None => CmplSpec::anderson_thakur(&ctx, s).map_err(|e| UsageError(e.to_string()))?,
                Some(text) => {
                    let args = text
                        .split(';')
                        .map(|x| polyparse::parse_bipoly(ctx.field(), x))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| UsageError(format!("--u: {e}")))?;
                    CmplSpec::new(args, s.clone()).map_err(|e| UsageError(format!("--u: {e}")))?
                }
            };
            let conv = convergence_check(&ctx, &spec);
            let margins: Vec<_> = conv
                .entries
                .iter()
                .map(|e| json!({
                    "position": e.position,
                    "norm": e.norm.map(|r| r.to_string()),
                    "bound": e.bound.to_string(),
                    "passed": e.passed,
                }))
                .collect();
            report.checks.push(Check::from_bool(
                format!("convergence/{tag}"),
                conv.passed(),
                format!("||u_i|| < |theta|^(s_i q/(q-1)) for {} of {} arguments", conv.entries.iter().filter(|e| e.passed).count(), conv.entries.len()),
            ));
            if !conv.passed() {
                report.results.push(json!({ "level": l, "index": s.to_text(), "convergence": margins }));
                continue;
            }
            let value = cmpl_value(&ctx, &spec, prec);
            let series = cmpl_series(&ctx, &spec, tdeg, prec);
            match (value, series) {
                (Ok(v), Ok(ser)) => {
                    report.results.push(json!({
                        "level": l,
                        "index": s.to_text(),
                        "u": spec.u.iter().map(|x| x.format()).collect::<Vec<_>>(),
                        "convergence": margins,
                        "value": v.to_text(),
                        "series": ser.to_text(),
                    }));
                    let name = format!("cmpl-two-path/{tag}");
                    match ser.eval_theta() {
                        Ok(ev) => {
                            let cmp = ev.eq_to_prec(&v);
                            let floor = ev.precision().map_or(prec, |x| x.min(prec));
                            report.checks.push(Check::from_comparison(name, &cmp, floor));
                        }
                        Err(e) => report.checks.push(Check::error(name, e)),
                    }
                }
                (Err(e), _) | (_, Err(e)) => report.checks.push(Check::error(format!("cmpl/{tag}"), e)),
            }
        }
    }
    Ok(finish(report, config.format))
}

fn cmd_verify_period(c: &Common, control: bool) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("verify-period", c)?;
    let indices = config.indices()?;
    let prec = config.prec_or(30);
    for &l in &config.levels {
        context(config.p, l, prec, 1)?;
        for s in &indices {
            report.checks.push(timed(c.timings, || checks::period_identity(config.p, l, s, prec, prec)));
            if control {
                report.checks.push(timed(c.timings, || checks::period_control(config.p, l, s, prec, prec)));
            }
        }
    }
    Ok(finish(report, config.format))
}

fn cmd_verify_rat(c: &Common) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("verify-rat", c)?;
    let indices = config.indices()?;
    let (prec, tdeg) = (config.prec_or(40), config.tdeg_or(10));
    for &l in &config.levels {
        let ctx = context(config.p, l, prec, tdeg)?;
        for s in &indices {
            if let Ok((phi, _)) = checks::at_motive(&ctx, s, tdeg, 1) {
                report.results.push(json!({ "level": l, "index": s.to_text(), "phi": phi.record() }));
            }
            let p = config.p;
            report.checks.push(timed(c.timings, || checks::trivialization(p, l, s, tdeg, prec, prec)));
            report.checks.push(timed(c.timings, || checks::mutation(p, l, s, tdeg, prec, prec)));
        }
    }
    Ok(finish(report, config.format))
}

fn cmd_verify_derived(c: &Common, orders: &[u32]) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("verify-derived", c)?;
    if orders.contains(&0) {
        return Err(UsageError("--s: derivation orders must be positive".into()));
    }
    let indices: Vec<Option<Index>> = match &config.index {
        Some(_) => config.indices()?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let (prec, tdeg) = (config.prec_or(40), config.tdeg_or(10));
    for &l in &config.levels {
        context(config.p, l, prec, tdeg)?;
        for s in &indices {
            for &k in orders {
                let p = config.p;
                report.checks.push(timed(c.timings, || checks::derived(p, l, s.as_ref(), k, tdeg, prec, prec)));
            }
        }
    }
    Ok(finish(report, config.format))
}

fn block_setup(name: &str, c: &Common, field_degree: u32) -> Result<(RunConfig, Report, fzeta_core::special::IndexSet, fzeta_core::ffield::FieldSpec), UsageError> {
    let (config, mut report) = start(name, c)?;
    let set = index_subclosure(&config.index_set()?);
    let field = checks::sample_field(config.p, field_degree).map_err(|e| UsageError(format!("--field-degree: {e}")))?;
    report.results.push(json!({ "closure": set.to_text(), "field": format!("F_{}^{}", field.p(), field.m()) }));
    Ok((config, report, set, field))
}

fn cmd_group_closure(c: &Common, samples: usize, field_degree: u32) -> Result<Outcome, UsageError> {
    let (config, mut report, set, field) = block_setup("group-closure", c, field_degree)?;
    report.checks.push(timed(c.timings, || checks::group_closure(&set, samples, config.seed, &field)));
    Ok(finish(report, config.format))
}

fn cmd_group_commutator(c: &Common, samples: usize, field_degree: u32, target: Option<&str>) -> Result<Outcome, UsageError> {
    let (config, mut report, set, field) = block_setup("group-commutator", c, field_degree)?;
    let target = match target {
        Some(t) => Index::parse(t).map_err(|e| UsageError(format!("--target: {e}")))?,
        None => set.indices().last().expect("nonempty closure").clone(),
    };
    report.checks.push(timed(c.timings, || checks::group_commutator(&set, &target, samples, config.seed, &field)));
    Ok(finish(report, config.format))
}

fn cmd_suite(c: &Common, fixtures: Option<PathBuf>, bless: bool) -> Result<Outcome, UsageError> {
    let (config, mut report) = start("suite", c)?;
    if bless {
        let dir = fixtures.expect("clap enforces --fixtures");
        let written = golden::bless(&dir).map_err(|e| UsageError(format!("--fixtures: {e}")))?;
        let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
        return Ok(Outcome { code: 0, stdout: names.join("\n") + "\n", stderr: String::new() });
    }
    let source = match fixtures {
        Some(d) => golden::Source::Dir(d),
        None => golden::Source::Bundled,
    };
    let jobs = suite::jobs(&config, &source);
    report.checks = suite::run_jobs(jobs, suite::worker_count(), c.timings);
    Ok(finish(report, config.format))
}

/// The status of the named check in `report`, if present.
pub fn status_of(report: &Report, name: &str) -> Option<Status> {
    report.checks.iter().find(|c| c.name == name).map(|c| c.status)
}
