//! Command-line front end: spec files in, JSON reports out.
//!
//! Exit status: 0 when every verdict is true and every suite is clean, 2 when a
//! verdict is false, validation fails or a suite records failures, 1 on errors.

pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperring_core::construct::{LocalizationMode, DEFAULT_PRODUCT_CAP};
use hyperring_core::harness::{
    merge, replay_failure, run_instance_suites, Family, HarnessConfig, ProductConvention, Suite, TheoremReport,
};
use hyperring_core::{IdealLattice, Predicate, PredicateQuery, DEFAULT_LATTICE_CAP, DEFAULT_SCAN_CAP};
use rayon::prelude::*;
use serde::Serialize;

use report::*;
use spec::{FamilyDecl, LoadedSpec};

/// Environment variable whose whitespace-separated words are prepended to the arguments.
pub const FLAGS_VAR: &str = "HYPERRING_FLAGS";

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FINDINGS: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    SetEquality,
    Intersect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Generated,
    RawUnion,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Largest number of tuples a single predicate scan may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
    /// Largest carrier a construction may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_PRODUCT_CAP)]
    pub size_cap: usize,
    /// How fractions are identified when localizing.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::SetEquality)]
    pub localization_mode: ModeArg,
    /// Convention for the ideal product in the product-suite rerun.
    #[arg(long, global = true, value_enum, default_value_t = ProductArg::Generated)]
    pub ideal_product: ProductArg,
    /// Worker threads for theorem suites; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Checks T4 against a corrupted ideal product; exercises failure reporting.
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

impl Flags {
    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
    }

    pub fn harness_config(&self) -> HarnessConfig {
        let mut cfg = HarnessConfig { scan_cap: self.scan_cap, product_cap: self.size_cap, ..HarnessConfig::default() };
        cfg.localization.mode = match self.localization_mode {
            ModeArg::SetEquality => LocalizationMode::SetEquality,
            ModeArg::Intersect => LocalizationMode::Intersect,
        };
        cfg.ideal_product = match self.ideal_product {
            ProductArg::Generated => ProductConvention::Generated,
            ProductArg::RawUnion => ProductConvention::RawUnion,
        };
        cfg.corrupt_product = self.inject_fault;
        cfg
    }

    fn echo(&self) -> FlagsEcho {
        let cfg = self.harness_config();
        FlagsEcho {
            scan_cap: self.scan_cap,
            size_cap: self.size_cap,
            localization_mode: cfg.localization.mode.name(),
            ideal_product: cfg.ideal_product.name(),
            jobs: self.jobs(),
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Checks the hyperring axioms of the construction.
    Validate { spec: PathBuf },
    /// Lists every hyperideal with its primality and radical.
    Ideals { spec: PathBuf },
    /// Evaluates the spec's queries.
    Classify { spec: PathBuf },
    /// Evaluates every predicate on every proper ideal.
    Spectrum { spec: PathBuf },
    /// Runs theorem suites over ring families.
    Theorems {
        spec: Option<PathBuf>,
        /// Suites to run, comma separated, or `all`; overrides the spec's `[suites]`.
        #[arg(long)]
        suite: Option<String>,
        /// Family for `--suite`, e.g. `default` or `"product-sweep arity=3 max-carrier=36"`.
        #[arg(long)]
        family: Option<String>,
        /// Re-executes the given failure of the (single) requested suite with a step trace.
        #[arg(long)]
        replay: Option<usize>,
        /// Failures listed per suite; the count is always complete.
        #[arg(long, default_value_t = 100)]
        list_failures: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Ideals { .. } => "ideals",
            Command::Classify { .. } => "classify",
            Command::Spectrum { .. } => "spectrum",
            Command::Theorems { .. } => "theorems",
        }
    }

    fn spec(&self) -> Option<&Path> {
        match self {
            Command::Validate { spec } | Command::Ideals { spec } | Command::Classify { spec } | Command::Spectrum { spec } => {
                Some(spec)
            }
            Command::Theorems { spec, .. } => spec.as_deref(),
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "hyperring", version, about = "Finite multiplicative hyperrings: ideals, predicates and theorem suites")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

/// A report body with the exit status it implies.
pub struct Outcome {
    pub exit: i32,
    pub body: serde_json::Value,
}

fn outcome<B: Serialize>(exit: i32, body: &B) -> Result<Outcome, String> {
    Ok(Outcome { exit, body: serde_json::to_value(body).map_err(|e| e.to_string())? })
}

fn load(path: &Path, flags: &Flags) -> Result<LoadedSpec, String> {
    spec::parse_spec(path, flags.size_cap).map_err(|e| format!("{}: {e}", path.display()))
}

fn lattice_of(spec: &LoadedSpec, path: &Path) -> Result<IdealLattice, String> {
    let ring = spec.ring.as_ref().ok_or_else(|| {
        format!("{}: the construction does not satisfy the hyperring axioms; run `validate` for details", path.display())
    })?;
    IdealLattice::enumerate(ring, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())
}

fn validate(path: &Path, flags: &Flags) -> Result<Outcome, String> {
    let spec = load(path, flags)?;
    let size = match (&spec.ring, &spec.file.construction) {
        (Some(r), _) => r.size(),
        (None, Some(decl)) => match &decl.body {
            spec::Construction::Tables(t) => t.add.len(),
            _ => 0,
        },
        (None, None) => return Err(format!("{}: no [construction] section", path.display())),
    };
    let body = ValidateBody::new(size, &spec.validation);
    outcome(if body.ok { EXIT_CLEAN } else { EXIT_FINDINGS }, &body)
}

fn ideals(path: &Path, flags: &Flags) -> Result<Outcome, String> {
    let spec = load(path, flags)?;
    let lattice = lattice_of(&spec, path)?;
    let all = lattice.ideals();
    let mut entries = Vec::with_capacity(all.len());
    for (index, ideal) in all.iter().enumerate() {
        let maximal = ideal.is_proper()
            && !all.iter().any(|j| j.is_proper() && j.set() != ideal.set() && ideal.is_subset(j));
        let radical = if ideal.is_proper() {
            let r = lattice.radical(ideal).map_err(|e| e.to_string())?;
            lattice.index_of(r.set()).expect("radicals are ideals")
        } else {
            index
        };
        entries.push(IdealEntry {
            index,
            elements: ideal.set().to_vec(),
            names: spec.ideals.iter().filter(|(_, i)| i.set() == ideal.set()).map(|(n, _)| n.clone()).collect(),
            prime: lattice.is_prime(ideal),
            maximal,
            radical,
        });
    }
    let body = IdealsBody {
        size: lattice.ring().size(),
        hyperfield: lattice.is_hyperfield(),
        ideals: entries,
        primes: lattice.prime_indices().to_vec(),
    };
    outcome(EXIT_CLEAN, &body)
}

fn classify(path: &Path, flags: &Flags) -> Result<Outcome, String> {
    let spec = load(path, flags)?;
    let lattice = lattice_of(&spec, path)?;
    if spec.queries.is_empty() {
        return Err(format!("{}: no [queries] to classify", path.display()));
    }
    let mut entries = Vec::new();
    for (decl, query) in &spec.queries {
        let at = decl.at;
        let report = query.evaluate(&lattice, flags.scan_cap).map_err(|e| format!("{}: {at}: {e}", path.display()))?;
        let supplied = decl
            .witness
            .as_ref()
            .map(|w| query.violated_at(&lattice, w))
            .transpose()
            .map_err(|e| format!("{}: {at}: {e}", path.display()))?;
        entries.push(QueryEntry {
            line: at.line,
            predicate: query.predicate.name(),
            p: query.p.set().to_vec(),
            i: query.i.as_ref().map(|i| i.set().to_vec()),
            n: query.n,
            verdict: Verdict::from(&report),
            supplied_witness_violates: supplied,
        });
    }
    let exit = if entries.iter().all(|e| e.verdict.verdict) { EXIT_CLEAN } else { EXIT_FINDINGS };
    outcome(exit, &ClassifyBody { queries: entries })
}

/// `n` used for the n-dependent predicates in the spectrum grid.
const SPECTRUM_N: usize = 2;

fn spectrum(path: &Path, flags: &Flags) -> Result<Outcome, String> {
    let spec = load(path, flags)?;
    let lattice = lattice_of(&spec, path)?;
    let all = lattice.ideals();
    let mut grid = Vec::new();
    for (p_idx, p) in all.iter().enumerate().filter(|(_, p)| p.is_proper()) {
        for predicate in Predicate::ALL {
            let n = predicate.needs_n().then_some(SPECTRUM_N);
            let is: Vec<Option<usize>> =
                if predicate.needs_i() { (0..all.len()).map(Some).collect() } else { vec![None] };
            for i in is {
                let query = PredicateQuery::new(predicate, p.clone(), i.map(|k| all[k].clone()), n)
                    .map_err(|e| e.to_string())?;
                let (verdict, witness, error) = match query.evaluate(&lattice, flags.scan_cap) {
                    Ok(r) => (Some(r.verdict), r.witness, None),
                    Err(e) => (None, None, Some(e.to_string())),
                };
                grid.push(SpectrumEntry { p: p_idx, predicate: predicate.name(), i, n, verdict, witness, error });
            }
        }
    }
    let body = SpectrumBody {
        size: lattice.ring().size(),
        ideals: all.iter().map(|i| i.set().to_vec()).collect(),
        grid,
    };
    outcome(EXIT_CLEAN, &body)
}

/// Resolves a family declaration against the loaded spec.
fn resolve_family(decl: &FamilyDecl, spec: Option<&LoadedSpec>) -> Result<Family, String> {
    match decl {
        FamilyDecl::Named(f) => Ok(f.clone()),
        FamilyDecl::This => {
            let spec = spec.ok_or("family 'this' needs a spec file")?;
            let recipe = spec
                .recipe
                .clone()
                .ok_or("family 'this' needs an RA, product or quotient construction")?;
            Ok(Family::List(vec![recipe]))
        }
    }
}

/// Runs the requested suites; instances run in parallel, reports merge in family order.
pub fn run_requests(
    requests: &[(Suite, Family)],
    config: &HarnessConfig,
    jobs: usize,
) -> Result<Vec<TheoremReport>, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| e.to_string())?;
    let mut families: Vec<(Family, Vec<Suite>)> = Vec::new();
    for (suite, family) in requests {
        match families.iter_mut().find(|(f, _)| f == family) {
            Some((_, suites)) => {
                if !suites.contains(suite) {
                    suites.push(*suite)
                }
            }
            None => families.push((family.clone(), vec![*suite])),
        }
    }
    let mut reports = Vec::new();
    for (family, suites) in &families {
        let instances = family.instances();
        let per_instance: Vec<Vec<_>> = pool.install(|| {
            instances
                .par_iter()
                .map(|inst| run_instance_suites(suites, inst, config).map_err(|e| format!("{}: {e}", inst.key)))
                .collect::<Result<_, _>>()
        })?;
        for (k, &suite) in suites.iter().enumerate() {
            let tallies = per_instance.iter().map(|t| t[k].clone());
            reports.push(merge(suite, family, config, tallies));
        }
    }
    Ok(requests
        .iter()
        .map(|(suite, family)| {
            let name = family.name();
            reports.iter().find(|r| r.suite == *suite && r.family == name).cloned().expect("every request ran")
        })
        .collect())
}

fn theorems(
    path: Option<&Path>,
    suite: Option<&str>,
    family: Option<&str>,
    replay: Option<usize>,
    listed: usize,
    flags: &Flags,
) -> Result<Outcome, String> {
    let spec = path.map(|p| load(p, flags)).transpose()?;
    let mut requests = Vec::new();
    if let Some(names) = suite {
        let suites = spec::parse_suites(names)?;
        let decl = spec::parse_family(family.unwrap_or("default"))?;
        let family = resolve_family(&decl, spec.as_ref())?;
        requests.extend(suites.into_iter().map(|s| (s, family.clone())));
    } else {
        if family.is_some() {
            return Err("--family needs --suite".into());
        }
        let spec = spec.as_ref().ok_or("theorems needs --suite or a spec with a [suites] section")?;
        for decl in &spec.file.suites {
            let family = resolve_family(&decl.family, Some(spec))?;
            requests.extend(decl.suites.iter().map(|&s| (s, family.clone())));
        }
        if requests.is_empty() {
            return Err("the spec has no [suites] entries".into());
        }
    }
    if replay.is_some() && requests.len() != 1 {
        return Err(format!("--replay needs exactly one suite, {} requested", requests.len()));
    }
    let config = flags.harness_config();
    let reports = run_requests(&requests, &config, flags.jobs())?;
    let replay = match replay {
        Some(index) => {
            let report = &reports[0];
            let r = replay_failure(report, index).map_err(|e| format!("replay {index}: {e}"))?;
            Some(ReplayEntry::new(report, index, &r))
        }
        None => None,
    };
    let clean = reports.iter().all(|r| r.passed());
    let body = TheoremsBody { reports: reports.iter().map(|r| SuiteEntry::new(r, listed)).collect(), replay };
    outcome(if clean { EXIT_CLEAN } else { EXIT_FINDINGS }, &body)
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, String> {
    let flags = &cli.flags;
    match &cli.command {
        Command::Validate { spec } => validate(spec, flags),
        Command::Ideals { spec } => ideals(spec, flags),
        Command::Classify { spec } => classify(spec, flags),
        Command::Spectrum { spec } => spectrum(spec, flags),
        Command::Theorems { spec, suite, family, replay, list_failures } => {
            theorems(spec.as_deref(), suite.as_deref(), family.as_deref(), *replay, *list_failures, flags)
        }
    }
}

fn with_env_flags(args: impl IntoIterator<Item = OsString>) -> Vec<OsString> {
    let mut args = args.into_iter();
    let mut out: Vec<OsString> = args.next().into_iter().collect();
    if let Ok(extra) = std::env::var(FLAGS_VAR) {
        out.extend(extra.split_whitespace().map(OsString::from));
    }
    out.extend(args);
    out
}

/// Runs the tool, writing the report to `out` and diagnostics to `err`; returns the exit status.
pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(with_env_flags(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_CLEAN };
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(Outcome { exit, body }) => {
            let header = Header {
                tool: "hyperring",
                version: env!("CARGO_PKG_VERSION"),
                command: cli.command.name(),
                spec: cli.command.spec().map(|p| p.display().to_string()),
                flags: cli.flags.echo(),
                elapsed_ms,
            };
            let doc = Document { header, body };
            match serde_json::to_writer_pretty(&mut *out, &doc) {
                Ok(()) => {
                    let _ = writeln!(out);
                    exit
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

/// Entry point for the binary.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
