use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use lietriad_core::catalog::{self, find_class, involution_classes, Algebra};
use lietriad_core::classify::{
    classify_algebra, classify_pair, lookup_triad, parse_triad, ClassificationReport, TriadClass,
};
use lietriad_core::render;
use lietriad_core::verify::{self, SuiteResult};
use lietriad_core::{DoubleSatakeDiagram, Execution, SatakeDiagram};

#[derive(Parser)]
#[command(name = "lietriad", version, about = "Classify compact symmetric triads through double Satake diagrams")]
struct Cli {
    /// Allow algebras of rank up to this bound beyond the default parameter
    /// range (su(n) n<=8, so(n) n<=12, sp(n) n<=6).
    #[arg(long, global = true)]
    max_rank: Option<usize>,
    /// Catalog snapshot to check against the built-in catalog. Overridden by
    /// LIETRIAD_SNAPSHOT.
    #[arg(long, global = true)]
    snapshot: Option<PathBuf>,
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Involution classes of an algebra with their Satake diagrams.
    List {
        g: String,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Classes of triads of an algebra with rank and order.
    Classify {
        g: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Markdown table of the rows with inequivalent involutions.
        #[arg(long)]
        table: bool,
        /// Restrict to one pair of involution classes, e.g. `u6,u6`.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_enum)]
        twist: Option<Twist>,
    },
    /// Run verification suites; exits 1 on any failure.
    Verify {
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        /// Largest Weyl group enumerated by the rank oracle.
        #[arg(long, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
        weyl_cap: u64,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
    /// Draw a Satake or double Satake diagram. SPEC is a class (`so8:BDI(3,5)`,
    /// `so12:u6`), a triad (`so8:so1+so7,kappa(so3+so5)`), inline JSON, or
    /// `@file.json`.
    Render {
        spec: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Text)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Twist {
    Id,
    Kappa,
    Kappa2,
    Tau,
}

impl Twist {
    fn name(self) -> &'static str {
        match self {
            Twist::Id => "id",
            Twist::Kappa => "kappa",
            Twist::Kappa2 => "kappa2",
            Twist::Tau => "tau",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    All,
    Table2,
    Cardinality,
    WorkedExample,
    Oracle,
    Roundtrip,
    SpecialIso,
    SelfDual,
    Cores,
    Invariants,
    StrictTable,
    RootSystems,
    Twists,
    Snapshot,
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn runtime(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Runtime(e.into())
}

/// Output text and exit code.
type Out = Result<(String, ExitCode), Failure>;

impl Cli {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    /// Parse an algebra and check it against the configured bounds.
    fn algebra(&self, g: &str) -> Result<Algebra, Failure> {
        let alg: Algebra = g.parse().map_err(usage)?;
        let allowed = Algebra::defaults().contains(&alg) || self.max_rank.is_some_and(|r| alg.rank() <= r);
        if !allowed {
            return Err(usage(anyhow!(
                "{alg} is outside the configured bounds; pass --max-rank {} to allow it",
                alg.rank()
            )));
        }
        Ok(alg)
    }

    fn algebras(&self) -> Vec<Algebra> {
        match self.max_rank {
            Some(r) => Algebra::of_rank_at_most(r),
            None => Algebra::defaults(),
        }
    }

    fn snapshot_text(&self) -> Result<Option<String>, Failure> {
        let path = std::env::var_os("LIETRIAD_SNAPSHOT").map(PathBuf::from).or_else(|| self.snapshot.clone());
        match path {
            None => Ok(None),
            Some(p) => std::fs::read_to_string(&p)
                .with_context(|| format!("reading snapshot {}", p.display()))
                .map(Some)
                .map_err(usage),
        }
    }
}

fn cmd_list(cli: &Cli, g: &str, format: ListFormat) -> Out {
    let alg = cli.algebra(g)?;
    let classes = involution_classes(alg).map_err(usage)?;
    let mut out = String::new();
    match format {
        ListFormat::Json => out = serde_json::to_string_pretty(&classes).map_err(runtime)? + "\n",
        ListFormat::Text => {
            let _ = writeln!(out, "{alg}: involution classes: {}", classes.len());
            for c in &classes {
                let _ = writeln!(out, "\n{}  k = {}  rank {}", c.class_label, c.k_label, c.rank);
                for line in render::satake_text(&c.diagram).lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
    }
    Ok((out, ExitCode::SUCCESS))
}

fn check_snapshot(cli: &Cli) -> Result<(), Failure> {
    if let Some(text) = cli.snapshot_text()? {
        let s = verify::suite_snapshot(&text);
        if !s.passed() {
            return Err(runtime(anyhow!("catalog snapshot does not match the built-in catalog")));
        }
    }
    Ok(())
}

fn cmd_classify(
    cli: &Cli,
    g: &str,
    format: ReportFormat,
    table: bool,
    pair: Option<&str>,
    twist: Option<Twist>,
) -> Out {
    let alg = cli.algebra(g)?;
    check_snapshot(cli)?;
    let mut report = match pair {
        None => classify_algebra(alg, cli.exec()).map_err(runtime)?,
        Some(p) => {
            let (k1, k2) = p.split_once(',').ok_or_else(|| usage(anyhow!("--pair expects k1,k2")))?;
            let c1 = find_class(alg, k1).map_err(usage)?;
            let c2 = find_class(alg, k2).map_err(usage)?;
            let classes = match twist {
                Some(t) => vec![lookup_triad(alg, &c1, &c2, t.name()).map_err(usage)?],
                None => classify_pair(&c1, &c2).map_err(runtime)?,
            };
            ClassificationReport {
                algebra: alg,
                catalog_sha256: catalog::sha256_hex(catalog::SNAPSHOT.as_bytes()),
                classes,
            }
        }
    };
    if let (Some(t), None) = (twist, pair) {
        report.classes.retain(|c| c.twist == t.name());
    }
    let out = if table {
        report.to_markdown(true)
    } else {
        match format {
            ReportFormat::Text => report.to_text(),
            ReportFormat::Markdown => report.to_markdown(false),
            ReportFormat::Json => serde_json::to_string_pretty(&report.classes).map_err(runtime)? + "\n",
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_verify(cli: &Cli, scope: Scope, weyl_cap: u64, format: VerifyFormat) -> Out {
    let algs = cli.algebras();
    let exec = cli.exec();
    let wants = |s: Scope| scope == Scope::All || scope == s;
    let needs_reports = [
        Scope::Table2,
        Scope::Oracle,
        Scope::SelfDual,
        Scope::Cores,
        Scope::Invariants,
        Scope::StrictTable,
        Scope::Twists,
    ]
    .into_iter()
    .any(wants);
    let reports = if needs_reports { verify::reports(&algs, exec).map_err(runtime)? } else { Vec::new() };

    let mut suites: Vec<SuiteResult> = Vec::new();
    if wants(Scope::Table2) {
        suites.push(verify::suite_table2(&reports));
    }
    if wants(Scope::Cardinality) {
        suites.push(verify::suite_cardinalities(&algs));
    }
    if wants(Scope::WorkedExample) {
        suites.push(verify::suite_worked_example());
    }
    if wants(Scope::Oracle) {
        suites.push(verify::suite_oracle(&reports, weyl_cap, exec));
    }
    if wants(Scope::Roundtrip) {
        suites.push(verify::suite_roundtrip(&algs, exec));
    }
    if wants(Scope::SpecialIso) {
        suites.push(verify::suite_special_iso(10, 2024));
    }
    if wants(Scope::SelfDual) {
        suites.push(verify::suite_self_duality(&reports));
    }
    if wants(Scope::Cores) {
        suites.push(verify::suite_cores(&reports, exec));
    }
    if wants(Scope::Invariants) {
        suites.push(verify::suite_invariants(&reports));
    }
    if wants(Scope::StrictTable) {
        suites.push(verify::suite_strict_table(&reports));
    }
    if wants(Scope::RootSystems) {
        suites.push(verify::suite_root_systems(&algs, weyl_cap));
    }
    if wants(Scope::Twists) {
        suites.push(verify::suite_twists(&reports, 50, 2024, 4));
    }
    if wants(Scope::Snapshot) {
        let text = cli.snapshot_text()?.unwrap_or_else(|| catalog::SNAPSHOT.to_string());
        suites.push(verify::suite_snapshot(&text));
    }

    let ok = suites.iter().all(SuiteResult::passed);
    let mut out = String::new();
    match format {
        VerifyFormat::Json => out = serde_json::to_string_pretty(&suites).map_err(runtime)? + "\n",
        VerifyFormat::Text => {
            for s in &suites {
                let failed = s.failures().count();
                let _ = writeln!(
                    out,
                    "{} {:<14} {:>4}/{:<4} {:>6} ms",
                    if s.passed() { "PASS" } else { "FAIL" },
                    s.suite,
                    s.checks.len() - failed,
                    s.checks.len(),
                    s.millis
                );
                for c in &s.checks {
                    if !c.passed || cli.verbose > 0 {
                        let _ =
                            writeln!(out, "    {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                    }
                }
            }
            let _ = writeln!(out, "{}", if ok { "all checks passed" } else { "verification failed" });
        }
    }
    Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }))
}

enum Drawing {
    Single(SatakeDiagram),
    Double(DoubleSatakeDiagram),
}

fn parse_drawing(cli: &Cli, spec: &str) -> Result<Drawing, Failure> {
    let spec = spec.trim();
    let json = if let Some(path) = spec.strip_prefix('@') {
        Some(std::fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(usage)?)
    } else if spec.starts_with('{') {
        Some(spec.to_string())
    } else {
        None
    };
    if let Some(text) = json {
        let v: serde_json::Value = serde_json::from_str(&text).context("malformed JSON").map_err(usage)?;
        return if v.get("s1").is_some() {
            serde_json::from_value(v).map(Drawing::Double).context("malformed double diagram").map_err(usage)
        } else {
            serde_json::from_value(v).map(Drawing::Single).context("malformed diagram").map_err(usage)
        };
    }
    let is_triad = spec.starts_with('(') || spec.split_once(':').is_some_and(|(_, rest)| top_level_comma(rest));
    if is_triad {
        let (alg, c1, c2, twist) = parse_triad(spec).map_err(usage)?;
        cli.algebra(&alg.key())?;
        let t: TriadClass = lookup_triad(alg, &c1, &c2, &twist).map_err(usage)?;
        return Ok(Drawing::Double(t.representative));
    }
    let (g, k) = spec.split_once(':').ok_or_else(|| usage(anyhow!("malformed diagram spec {spec:?}")))?;
    let alg = cli.algebra(g)?;
    Ok(Drawing::Single(find_class(alg, k).map_err(usage)?.diagram))
}

fn top_level_comma(s: &str) -> bool {
    let mut depth = 0i32;
    s.chars().any(|c| {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        c == ',' && depth == 0
    })
}

fn cmd_render(cli: &Cli, spec: &str, format: RenderFormat) -> Out {
    let out = match (parse_drawing(cli, spec)?, format) {
        (Drawing::Single(s), RenderFormat::Text) => render::satake_text(&s),
        (Drawing::Single(s), RenderFormat::Dot) => render::satake_dot(&s),
        (Drawing::Single(s), RenderFormat::Json) => serde_json::to_string_pretty(&s).map_err(runtime)? + "\n",
        (Drawing::Double(d), RenderFormat::Text) => render::double_text(&d),
        (Drawing::Double(d), RenderFormat::Dot) => render::double_dot(&d),
        (Drawing::Double(d), RenderFormat::Json) => serde_json::to_string_pretty(&d).map_err(runtime)? + "\n",
    };
    Ok((out, ExitCode::SUCCESS))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let res = match &cli.cmd {
        Cmd::List { g, format } => cmd_list(&cli, g, *format),
        Cmd::Classify { g, format, table, pair, twist } => {
            cmd_classify(&cli, g, *format, *table, pair.as_deref(), *twist)
        }
        Cmd::Verify { scope, weyl_cap, format } => cmd_verify(&cli, *scope, *weyl_cap, *format),
        Cmd::Render { spec, format } => cmd_render(&cli, spec, *format),
    };
    match res {
        Ok((out, code)) => {
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            code
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
