use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mlat::format::{parse_instance, Instance, InstanceError};
use mlat::gen::{
    gen_zn_ideal_lattice, gen_zn_self_module, gen_zn_square_module_with_cap, DEFAULT_SQUARE_CAP,
};
use mlat::harness::{
    self, list_checks, resolve_checks, run_suite, NamedInstance, Status, SuiteConfig, SuiteReport,
};
use mlat::{
    Classification, Classifier, Flag, Flags, LElementFlags, LatticeModule, MElem,
    MultiplicativeLattice, Witness,
};

const CLASSIFY_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "mlat", version)]
#[command(
    about = "Generate, validate and classify finite lattice modules, and check theorems on them"
)]
struct Cli {
    /// Largest n accepted by the zn-square generator
    #[arg(long, global = true, env = "MLAT_CAP", default_value_t = DEFAULT_SQUARE_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance in MLAT format
    Gen {
        family: Family,
        n: u64,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Check an MLAT file against the lattice and module axioms
    Validate { path: PathBuf },

    /// Classify module elements (or lattice elements, for a lattice-only file)
    #[command(group(ArgGroup::new("select").required(true).args(["id", "label", "all"])))]
    Classify {
        path: PathBuf,
        /// Element id
        #[arg(long)]
        id: Option<usize>,
        /// Element label
        #[arg(long)]
        label: Option<String>,
        /// Every proper element
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run theorem checks over files and generated families
    Verify {
        paths: Vec<PathBuf>,
        /// Generated family to include; defaults to zn-self 2..30 plus zn-square 2, 3, 4, 8 when no input is given
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value_t = 2)]
        min_n: u64,
        /// Defaults to 30, or 8 for zn-square
        #[arg(long)]
        max_n: Option<u64>,
        /// Comma-separated check ids, `fig1-implications`, or `all`
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for sampled chain quantification
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled maximal chains per instance
        #[arg(long, default_value_t = 100)]
        chain_samples: usize,
        /// Print the check registry and exit
        #[arg(long)]
        list: bool,
        /// Report file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include per-check wall-clock times (makes reports non-reproducible)
        #[arg(long)]
        timings: bool,
    },
}

// Variant names double as the `zn-*` command-line values.
#[allow(clippy::enum_variant_names)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Ideal lattice of Z_n (lattice only)
    ZnIdeals,
    /// Ideal lattice of Z_n acting on itself
    ZnSelf,
    /// Subgroups of Z_n ⊕ Z_n over the ideals of Z_n
    ZnSquare,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::ZnIdeals => "zn-ideals",
            Family::ZnSelf => "zn-self",
            Family::ZnSquare => "zn-square",
        }
    }

    fn generate(self, n: u64, cap: u64) -> Result<Instance> {
        let instance = match self {
            Family::ZnIdeals => Instance::from_lattice(gen_zn_ideal_lattice(n)?),
            Family::ZnSelf => Instance::from_module(gen_zn_self_module(n)?),
            Family::ZnSquare => Instance::from_module(gen_zn_square_module_with_cap(n, cap)?),
        };
        Ok(instance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failures reported with exit status 1: invalid instances and failed checks.
#[derive(Debug)]
struct Rejected(String);

impl fmt::Display for Rejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Rejected {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<Rejected>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, n, output } => {
            let text = family.generate(n, cli.cap)?.to_text();
            emit(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { path } => {
            let instance = load(&path)?;
            let module = instance.module.as_ref().map_or(0, LatticeModule::len);
            println!(
                "{}: valid ({} lattice elements, {} module elements, fingerprint {})",
                path.display(),
                instance.lattice.len(),
                module,
                instance.fingerprint()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            path,
            id,
            label,
            all,
            format,
        } => {
            let instance = load(&path)?;
            let selector = match (id, label) {
                _ if all => Selector::All,
                (Some(id), _) => Selector::Id(id),
                (None, Some(label)) => Selector::Label(label),
                (None, None) => unreachable!("clap requires a selector"),
            };
            let text = match &instance.module {
                Some(m) => classify_module(m, &instance, &selector, format)?,
                None => classify_lattice(&instance.lattice, &instance, &selector, format)?,
            };
            emit(None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            paths,
            family,
            min_n,
            max_n,
            checks,
            format,
            seed,
            chain_samples,
            list,
            output,
            timings,
        } => {
            if list {
                emit(output.as_deref(), &render_list(format)?)?;
                return Ok(ExitCode::SUCCESS);
            }
            let checks = resolve_checks(&checks)?;
            let mut instances = Vec::new();
            for path in &paths {
                instances.push(NamedInstance::new(path.display().to_string(), load(path)?));
            }
            match family {
                Some(family) => {
                    let max = max_n.unwrap_or(if family == Family::ZnSquare { 8 } else { 30 });
                    for n in min_n..=max {
                        instances.push(generated(family, n, cli.cap)?);
                    }
                }
                None if paths.is_empty() => {
                    for n in 2..=30 {
                        instances.push(generated(Family::ZnSelf, n, cli.cap)?);
                    }
                    for n in [2, 3, 4, 8] {
                        instances.push(generated(Family::ZnSquare, n, cli.cap)?);
                    }
                }
                None => {}
            }
            let config = SuiteConfig {
                seed,
                chain_samples,
                timings,
                ..SuiteConfig::default()
            };
            let report = run_suite(&instances, &checks, &config);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => render_report(&report),
            };
            emit(output.as_deref(), &text)?;
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Rejected(format!("{} check(s) failed", report.summary.fail)).into())
            }
        }
    }
}

fn generated(family: Family, n: u64, cap: u64) -> Result<NamedInstance> {
    Ok(NamedInstance::new(
        format!("{}-{n}", family.name()),
        family.generate(n, cap)?,
    ))
}

const SHOWN_VIOLATIONS: usize = 10;

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match parse_instance(&text) {
        Ok(instance) => Ok(instance),
        Err(InstanceError::Parse(e)) => bail!("{}: {e}", path.display()),
        Err(e) => {
            let mut msg = format!("{}: {e}", path.display());
            let violations = e.violations();
            for v in violations.iter().take(SHOWN_VIOLATIONS) {
                msg.push_str(&format!("\n  {v}"));
            }
            if violations.len() > SHOWN_VIOLATIONS {
                msg.push_str(&format!(
                    "\n  ... and {} more",
                    violations.len() - SHOWN_VIOLATIONS
                ));
            }
            Err(Rejected(msg).into())
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

enum Selector {
    Id(usize),
    Label(String),
    All,
}

#[derive(Serialize)]
struct WitnessReport {
    #[serde(flatten)]
    witness: Witness,
    text: String,
}

#[derive(Serialize)]
struct ElementReport {
    id: usize,
    label: String,
    colon_top: String,
    rad: String,
    flags: Flags,
    p_prime: Option<String>,
    p_primary: Option<String>,
    p_pseudo_primary: Option<String>,
    minimal_prime_over: Vec<String>,
    witnesses: BTreeMap<Flag, WitnessReport>,
}

impl ElementReport {
    fn new(m: &LatticeModule, c: &Classification) -> Self {
        let l = m.lattice();
        ElementReport {
            id: c.element.index(),
            label: c.label.clone(),
            colon_top: l.label(c.colon_top),
            rad: m.label(c.rad),
            flags: c.flags,
            p_prime: c.attachments.p_prime.map(|p| l.label(p)),
            p_primary: c.attachments.p_primary.map(|p| l.label(p)),
            p_pseudo_primary: c.attachments.p_pseudo_primary.map(|p| l.label(p)),
            minimal_prime_over: c.minimal_prime_over.iter().map(|&x| m.label(x)).collect(),
            witnesses: c
                .witnesses
                .iter()
                .map(|(&f, &w)| {
                    (
                        f,
                        WitnessReport {
                            witness: w,
                            text: w.describe(m),
                        },
                    )
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport<T> {
    schema_version: u32,
    tool_version: &'static str,
    fingerprint: String,
    elements: Vec<T>,
}

fn classify_module(
    m: &LatticeModule,
    instance: &Instance,
    selector: &Selector,
    format: Format,
) -> Result<String> {
    let classifier = Classifier::new();
    let classes: Vec<Classification> = match selector {
        Selector::All => classifier.classify_all(m).into_iter().flatten().collect(),
        Selector::Id(id) => {
            if *id >= m.len() {
                bail!(
                    "no module element with id {id} (carrier has {} elements)",
                    m.len()
                );
            }
            vec![classify_proper(&classifier, m, MElem(*id))?]
        }
        Selector::Label(label) => {
            let n = m
                .find_label(label)
                .ok_or_else(|| anyhow!("no module element labelled `{label}`"))?;
            vec![classify_proper(&classifier, m, n)?]
        }
    };
    let reports: Vec<ElementReport> = classes.iter().map(|c| ElementReport::new(m, c)).collect();
    Ok(match format {
        Format::Json => {
            let doc = ClassifyReport {
                schema_version: CLASSIFY_SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION"),
                fingerprint: instance.fingerprint(),
                elements: reports,
            };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text if matches!(selector, Selector::All) => render_table(&reports),
        Format::Text => render_element(&reports[0]),
    })
}

fn classify_proper(classifier: &Classifier, m: &LatticeModule, n: MElem) -> Result<Classification> {
    if !m.is_proper(n) {
        bail!(
            "`{}` is the top element I_M, which is not proper",
            m.label(n)
        );
    }
    Ok(classifier.classify(m, n)?)
}

fn render_element(r: &ElementReport) -> String {
    let mut out = format!(
        "N = {} (id {})\n(N:I_M) = {}\nrad(N) = {}\n",
        r.label, r.id, r.colon_top, r.rad
    );
    let width = Flag::ALL.iter().map(|f| f.name().len()).max().unwrap_or(0);
    for flag in Flag::ALL {
        out.push_str(&format!("{:width$}  {}", flag.name(), r.flags.get(flag)));
        if let Some(w) = r.witnesses.get(&flag) {
            out.push_str(&format!("  [{}]", w.text));
        }
        out.push('\n');
    }
    let show = |p: &Option<String>| p.clone().unwrap_or_else(|| "-".into());
    out.push_str(&format!(
        "p-prime {}, p-primary {}, p-pseudo-primary {}\n",
        show(&r.p_prime),
        show(&r.p_primary),
        show(&r.p_pseudo_primary)
    ));
    if !r.minimal_prime_over.is_empty() {
        out.push_str(&format!(
            "minimal prime over: {}\n",
            r.minimal_prime_over.join(", ")
        ));
    }
    out
}

fn render_table(reports: &[ElementReport]) -> String {
    let mut header = vec![
        "id".to_string(),
        "element".into(),
        "(N:I_M)".into(),
        "rad(N)".into(),
    ];
    header.extend(Flag::ALL.iter().map(|f| f.name().to_string()));
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = vec![
                r.id.to_string(),
                r.label.clone(),
                r.colon_top.clone(),
                r.rad.clone(),
            ];
            row.extend(
                Flag::ALL
                    .iter()
                    .map(|&f| if r.flags.get(f) { "yes" } else { "-" }.to_string()),
            );
            row
        })
        .collect();
    table(&header, &rows)
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[derive(Serialize)]
struct LatticeElementReport {
    id: usize,
    label: String,
    #[serde(flatten)]
    flags: LElementFlags,
    sqrt_label: String,
}

fn classify_lattice(
    l: &MultiplicativeLattice,
    instance: &Instance,
    selector: &Selector,
    format: Format,
) -> Result<String> {
    let ids: Vec<usize> = match selector {
        Selector::All => (0..l.len()).collect(),
        Selector::Id(id) if *id < l.len() => vec![*id],
        Selector::Id(id) => bail!(
            "no lattice element with id {id} (carrier has {} elements)",
            l.len()
        ),
        Selector::Label(label) => {
            vec![l
                .find_label(label)
                .ok_or_else(|| anyhow!("no lattice element labelled `{label}`"))?
                .index()]
        }
    };
    let reports: Vec<LatticeElementReport> = ids
        .into_iter()
        .map(|i| {
            let a = mlat::LElem(i);
            let flags = l.flags(a);
            LatticeElementReport {
                id: i,
                label: l.label(a),
                flags,
                sqrt_label: l.label(flags.sqrt),
            }
        })
        .collect();
    Ok(match format {
        Format::Json => {
            let doc = ClassifyReport {
                schema_version: CLASSIFY_SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION"),
                fingerprint: instance.fingerprint(),
                elements: reports,
            };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text => {
            let header: Vec<String> = [
                "id",
                "element",
                "proper",
                "prime",
                "primary",
                "maximal",
                "principal",
                "sqrt",
            ]
            .map(String::from)
            .into();
            let yes = |b: bool| if b { "yes" } else { "-" }.to_string();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        r.label.clone(),
                        yes(r.flags.proper),
                        yes(r.flags.prime),
                        yes(r.flags.primary),
                        yes(r.flags.maximal),
                        yes(r.flags.principal),
                        r.sqrt_label.clone(),
                    ]
                })
                .collect();
            table(&header, &rows)
        }
    })
}

fn render_list(format: Format) -> Result<String> {
    let checks = list_checks();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&checks)? + "\n",
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let hyps: Vec<&str> = c.hypotheses.iter().map(|h| h.name()).collect();
                let hyps = if hyps.is_empty() {
                    "none".to_string()
                } else {
                    hyps.join(", ")
                };
                let dashed = if c.dashed { " (dashed)" } else { "" };
                out.push_str(&format!(
                    "{}{dashed}\n  {}\n  hypotheses: {hyps}\n",
                    c.id, c.description
                ));
            }
            out.push_str(&format!(
                "{} checks; group `{}` selects the implication diagram\n",
                checks.len(),
                harness::FIG1_GROUP
            ));
            out
        }
    })
}

fn render_report(report: &SuiteReport) -> String {
    let mut out = String::new();
    for r in &report.results {
        let dashed = if r.dashed { " (dashed)" } else { "" };
        let tag = r.status.name().to_uppercase();
        out.push_str(&format!("{tag:8} {} {}{dashed}", r.instance, r.check));
        match &r.status {
            Status::Pass => out.push_str(&format!(" [{} asserted of {}]", r.asserted, r.tuples)),
            Status::Skipped { unmet } => {
                let names: Vec<&str> = unmet.iter().map(|h| h.name()).collect();
                out.push_str(&format!(" [hypotheses unmet: {}]", names.join(", ")));
            }
            Status::Vacuous => out.push_str(" [no tuple satisfied the antecedent]"),
            Status::Fail => {}
        }
        if let Some(w) = &r.witness {
            out.push_str(&format!(" at ({}): {}", w.labels.join(", "), w.detail));
        }
        if let Some(ms) = r.elapsed_ms {
            out.push_str(&format!(" {ms:.2}ms"));
        }
        out.push('\n');
    }
    let s = report.summary;
    out.push_str(&format!(
        "{} instances: {} pass, {} fail, {} skipped, {} vacuous\n",
        report.instances.len(),
        s.pass,
        s.fail,
        s.skipped,
        s.vacuous
    ));
    out
}
