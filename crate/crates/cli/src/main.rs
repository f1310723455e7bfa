//! `silting`: command-line front end for bound quiver algebras, their
//! module categories and two-term silting complexes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use silting_core::ar::{enumerate_indecomposables, CatalogOptions};
use silting_core::dsl::{lines, parse_algebra};
use silting_core::fixtures;
use silting_core::linalg::Field;
use silting_core::module::{parse_module, Alg, ModuleError};
use silting_core::repdim::rep_dim;
use silting_core::report::{complex_report, scan, ComplexReport};
use silting_core::silting::{tilting_scan, AnalysisOptions, SiltingAnalysis};
use silting_core::twoterm::{parse_complex, TwoTermComplex};

#[derive(Parser, Debug)]
#[command(name = "silting", version, about = "Two-term silting complexes, torsion pairs and representation dimension")]
struct Cli {
    /// Prime field characteristic; overrides the `field` line of algebra files.
    #[arg(long, global = true)]
    field: Option<u32>,
    /// Per-vertex dimension bound for indecomposable catalogs.
    #[arg(long, global = true, default_value_t = 6)]
    bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory searched for NAME.alg, NAME.cpx and NAME.mod before the built-in fixtures.
    #[arg(long, global = true)]
    fixtures_dir: Option<PathBuf>,
    /// Largest number of generator-cogenerators evaluated by the rep.dim search.
    #[arg(long, global = true, default_value_t = 4096)]
    max_candidates: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an algebra, module or complex and summarize it.
    Parse { input: String },
    /// List the indecomposables of an algebra with AR data.
    Indec { input: String },
    /// Silting verdicts, torsion pair and B = End(P) for a complex.
    Silting {
        input: String,
        /// Algebra that B is expected to be isomorphic to; B-modules are named over it.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Representation dimension of an algebra.
    Repdim { input: String },
    /// Run every check on fixture complexes or on a scan of an algebra.
    Verify {
        /// Fixture complex name (P-41, P-42, P-43).
        #[arg(long, conflicts_with_all = ["all", "scan"])]
        example: Option<String>,
        /// All fixture complexes.
        #[arg(long, conflicts_with = "scan")]
        all: bool,
        /// Enumerate every two-term silting complex over this algebra.
        #[arg(long)]
        scan: Option<String>,
    },
    /// Classical tilting modules with their torsion classes and flags.
    TiltingScan {
        input: String,
        /// Complex whose torsion class is compared against every tilting module.
        #[arg(long)]
        against: Option<String>,
    },
}

/// Reference presentations for the endomorphism algebras of fixture complexes.
const REFERENCES: &[(&str, &str)] = &[("P-41", "ALG-GEN4"), ("P-42", "ALG-A3-TILDE")];

#[derive(Debug)]
enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

enum Kind {
    Algebra,
    Module,
    Complex,
}

struct Loader {
    dir: Option<PathBuf>,
    field: Option<Field>,
}

impl Loader {
    fn builtin(name: &str) -> Option<&'static str> {
        fixtures::ALGEBRAS
            .iter()
            .map(|(n, t)| (*n, *t))
            .chain(fixtures::COMPLEXES.iter().map(|(n, _, t)| (*n, *t)))
            .chain(fixtures::MODULES.iter().map(|(n, _, t)| (*n, *t)))
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t)
    }

    /// (display name, text) for a path or fixture name.
    fn text(&self, input: &str) -> Result<(String, String), CliError> {
        let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())));
        let path = Path::new(input);
        if path.is_file() {
            return Ok((input.to_string(), read(path)?));
        }
        if let Some(dir) = &self.dir {
            for ext in ["alg", "cpx", "mod"] {
                let p = dir.join(format!("{input}.{ext}"));
                if p.is_file() {
                    return Ok((input.to_string(), read(&p)?));
                }
            }
        }
        Loader::builtin(input)
            .map(|t| (input.to_string(), t.to_string()))
            .ok_or_else(|| CliError::Usage(format!("no file or fixture named {input}")))
    }

    fn kind(text: &str) -> Kind {
        match lines(text).first().map(|l| l.keyword) {
            Some("complex") => Kind::Complex,
            Some("module") => Kind::Module,
            _ => Kind::Algebra,
        }
    }

    fn parse_algebra_text(&self, origin: &str, text: &str) -> Result<Alg, CliError> {
        parse_algebra(text, self.field)
            .map(Arc::new)
            .map_err(|e| CliError::Usage(format!("{origin}:{}:{}: {}", e.line, e.column, e.message)))
    }

    fn algebra(&self, input: &str) -> Result<Alg, CliError> {
        let (origin, text) = self.text(input)?;
        match Loader::kind(&text) {
            Kind::Algebra => self.parse_algebra_text(&origin, &text),
            _ => Err(CliError::Usage(format!("{origin} is not an algebra"))),
        }
    }

    /// Name of the algebra after `over` in a module or complex header.
    fn over(text: &str) -> Result<String, CliError> {
        let head = lines(text).into_iter().next().ok_or_else(|| CliError::Usage("empty input".into()))?;
        let words: Vec<&str> = head.rest.split_whitespace().collect();
        match words.as_slice() {
            [_, "over", alg] => Ok(alg.to_string()),
            _ => Err(CliError::Usage(format!("line {}: expected `{} NAME over ALGEBRA`", head.number, head.keyword))),
        }
    }

    fn complex(&self, input: &str) -> Result<TwoTermComplex, CliError> {
        let (origin, text) = self.text(input)?;
        if !matches!(Loader::kind(&text), Kind::Complex) {
            return Err(CliError::Usage(format!("{origin} is not a complex")));
        }
        let alg = self.algebra(&Loader::over(&text)?)?;
        parse_complex(&text, &alg).map_err(|e| CliError::Usage(format!("{origin}: {e}")))
    }
}

/// Write the result; a closed stdout (say, piped into `head`) is not an error.
fn emit(format: Format, text: String, value: serde_json::Value) {
    let out = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn cmd_parse(cli: &Cli, loader: &Loader, input: &str) -> Result<bool, CliError> {
    let (origin, text) = loader.text(input)?;
    match Loader::kind(&text) {
        Kind::Algebra => {
            let a = loader.parse_algebra_text(&origin, &text)?;
            let basis: Vec<String> = a.basis().iter().map(|p| a.quiver().path_to_string(p)).collect();
            let radical: Vec<String> = a.radical_basis().iter().map(|&k| basis[k].clone()).collect();
            let mut s = format!("algebra {} over F_{}\n  dimension: {}\n", a.name(), a.field().p(), a.dim());
            s += &format!("  vertices: {}\n  arrows: {}\n", a.num_vertices(), a.quiver().num_arrows());
            let rels: Vec<String> = a.relations().iter().map(|r| a.relation_to_string(r)).collect();
            s += &format!("  relations: {}\n", if rels.is_empty() { "none".to_string() } else { rels.join(", ") });
            s += &format!("  basis: {}\n  radical: {}\n", basis.join(" "), radical.join(" "));
            let value = json!({
                "kind": "algebra", "name": a.name(), "field": a.field().p(), "dim": a.dim(),
                "vertices": a.num_vertices(), "arrows": a.quiver().num_arrows(),
                "relations": rels,
                "basis": basis, "radical": radical,
            });
            emit(cli.format, s, value);
        }
        Kind::Module => {
            let alg = loader.algebra(&Loader::over(&text)?)?;
            let (name, m) = parse_module(&text, &alg).map_err(|e| CliError::Usage(format!("{origin}: {e}")))?;
            let s = format!("module {name} over {}\n  dims: {}\n  loewy: {}\n", alg.name(), m.dims_string(), m.loewy_name());
            emit(cli.format, s, json!({"kind": "module", "name": name, "module": m.to_json()}));
        }
        Kind::Complex => {
            let p = loader.complex(input)?;
            let s = format!("{}  shape: {}\n", p.to_text(), p.shape());
            emit(cli.format, s, json!({"kind": "complex", "complex": p.to_json()}));
        }
    }
    Ok(true)
}

fn cmd_indec(cli: &Cli, loader: &Loader, input: &str) -> Result<bool, CliError> {
    let a = loader.algebra(input)?;
    let c = enumerate_indecomposables(&a, CatalogOptions::with_bound(cli.bound))?;
    let mut s = format!(
        "{}: {} indecomposables (bound {}, complete: {}, exhaustive: {})\n",
        a.name(),
        c.len(),
        c.bound,
        c.complete,
        c.exhaustive
    );
    for e in &c.entries {
        let mut tags = Vec::new();
        if e.is_projective {
            tags.push("projective".to_string());
        }
        if e.is_injective {
            tags.push("injective".to_string());
        }
        if let Some(t) = e.tau {
            tags.push(format!("tau = {}", c.entries[t].name));
        }
        if let Some(mid) = &e.ar_middle {
            let names: Vec<&str> = mid.iter().map(|&i| c.entries[i].name.as_str()).collect();
            tags.push(format!("middle = {}", if names.is_empty() { "0".to_string() } else { names.join(" + ") }));
        }
        s += &format!("  {:10} dims {:12} {}\n", e.name, e.module.dims_string(), tags.join("; "));
    }
    let orbits: Vec<Vec<String>> =
        c.tau_orbits().iter().map(|o| o.iter().map(|&i| c.entries[i].name.clone()).collect()).collect();
    let nontrivial: Vec<&Vec<String>> = orbits.iter().filter(|o| o.len() > 1).collect();
    s += &format!("  tau-orbits with more than one module: {}\n", nontrivial.len());
    for o in &nontrivial {
        s += &format!("    {{{}}}\n", o.join(", "));
    }
    let mut value = c.to_json();
    value["tau_orbits"] = json!(orbits);
    emit(cli.format, s, value);
    Ok(true)
}

fn analysis_options(cli: &Cli) -> AnalysisOptions {
    AnalysisOptions { bound_a: cli.bound, bound_b: cli.bound }
}

fn reference_for(loader: &Loader, name: &str, explicit: Option<&str>) -> Result<Option<Alg>, CliError> {
    let r = explicit.or_else(|| REFERENCES.iter().find(|(c, _)| *c == name).map(|(_, r)| *r));
    r.map(|r| loader.algebra(r)).transpose()
}

fn cmd_silting(cli: &Cli, loader: &Loader, input: &str, reference: Option<&str>) -> Result<bool, CliError> {
    let p = loader.complex(input)?;
    let r = reference_for(loader, &p.name, reference)?;
    let rep = complex_report(&p, r.as_ref(), analysis_options(cli))?;
    let ok = !rep.failed();
    emit(cli.format, rep.to_text(), serde_json::to_value(&rep).expect("report serializes"));
    Ok(ok)
}

fn cmd_repdim(cli: &Cli, loader: &Loader, input: &str) -> Result<bool, CliError> {
    let a = loader.algebra(input)?;
    let r = rep_dim(&a, cli.bound, cli.max_candidates)?;
    let mut s = format!("{}: {}\n  rep.dim = {}\n", r.algebra, r.finiteness, r.rep_dim);
    if let (Some(g), Some(d)) = (&r.generator, r.gldim_end) {
        s += &format!("  generator-cogenerator: {}\n  gl.dim End(M) = {d}\n", g.join(" + "));
    }
    s += &format!("  candidates evaluated: {}\n", r.candidates.len());
    emit(cli.format, s, serde_json::to_value(&r).expect("report serializes"));
    Ok(true)
}

/// Tilting modules inducing T(P); only attempted when A is rep-finite, since
/// otherwise there are infinitely many candidates.
fn tilting_line(an: &SiltingAnalysis, opts: AnalysisOptions) -> Result<(String, serde_json::Value), CliError> {
    if !an.catalog.complete {
        let text = format!("  tilting modules over {}: not scanned, the algebra is not rep-finite\n", an.algebra().name());
        return Ok((text, serde_json::Value::Null));
    }
    let ts = tilting_scan(&an.catalog, Some(&an.torsion.torsion), opts)?;
    let text = format!(
        "  tilting modules over {}: {} ({}), inducing T(P): {}\n",
        ts.algebra,
        ts.modules.len(),
        "all",
        ts.matches.len()
    );
    Ok((text, serde_json::to_value(&ts).expect("scan serializes")))
}

fn verify_complex(cli: &Cli, loader: &Loader, name: &str) -> Result<(ComplexReport, String, serde_json::Value), CliError> {
    let p = loader.complex(name)?;
    let r = reference_for(loader, &p.name, None)?;
    let opts = analysis_options(cli);
    let rep = complex_report(&p, r.as_ref(), opts)?;
    let an = SiltingAnalysis::new(&p, opts)?;
    let (line, ts) = tilting_line(&an, opts)?;
    let text = rep.to_text() + &line;
    let mut value = serde_json::to_value(&rep).expect("report serializes");
    value["tilting_scan"] = ts;
    Ok((rep, text, value))
}

fn cmd_verify(cli: &Cli, loader: &Loader, example: Option<&str>, all: bool, scan_alg: Option<&str>) -> Result<bool, CliError> {
    if let Some(alg) = scan_alg {
        let a = loader.algebra(alg)?;
        let c = enumerate_indecomposables(&a, CatalogOptions::with_bound(cli.bound))?;
        let s = scan(&c, analysis_options(cli))?;
        let ok = !s.failed();
        emit(cli.format, s.to_text(), serde_json::to_value(&s).expect("scan serializes"));
        return Ok(ok);
    }
    let names: Vec<&str> = match (example, all) {
        (Some(e), _) => vec![e],
        (None, true) => fixtures::COMPLEXES.iter().map(|(n, _, _)| *n).collect(),
        (None, false) => return Err(CliError::Usage("verify needs --example, --all or --scan".into())),
    };
    let mut ok = true;
    let mut text = String::new();
    let mut values = Vec::new();
    for n in names {
        let (rep, t, v) = verify_complex(cli, loader, n)?;
        ok &= !rep.failed();
        text += &t;
        values.push(v);
    }
    let value = if values.len() == 1 { values.pop().expect("one report") } else { json!(values) };
    emit(cli.format, text, value);
    Ok(ok)
}

fn cmd_tilting_scan(cli: &Cli, loader: &Loader, input: &str, against: Option<&str>) -> Result<bool, CliError> {
    let a = loader.algebra(input)?;
    let opts = analysis_options(cli);
    let c = enumerate_indecomposables(&a, CatalogOptions::with_bound(cli.bound))?;
    let target = match against {
        Some(name) => {
            let p = loader.complex(name)?;
            Some(SiltingAnalysis::new(&p, opts)?.torsion.torsion)
        }
        None => None,
    };
    let ts = tilting_scan(&c, target.as_deref(), opts)?;
    let flag = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let mut s = format!(
        "{}: {} tilting modules ({})\n",
        ts.algebra,
        ts.modules.len(),
        if ts.exhaustive { "all of them" } else { "among modules within the bound" }
    );
    for m in &ts.modules {
        s += &format!(
            "  {}  separating={} splitting={}  T = {{{}}}\n",
            m.summands.join(" + "),
            flag(m.separating),
            flag(m.splitting),
            m.torsion.join(", ")
        );
    }
    if let (Some(name), Some(t)) = (against, &target) {
        s += &format!("  T({name}) = {{{}}} is induced by {} of them\n", t.join(", "), ts.matches.len());
    }
    emit(cli.format, s, serde_json::to_value(&ts).expect("scan serializes"));
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let field = cli.field.map(|p| Field::new(p).map_err(|e| CliError::Usage(e.to_string()))).transpose()?;
    if cli.bound == 0 {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    let loader = Loader { dir: cli.fixtures_dir.clone(), field };
    match &cli.command {
        Command::Parse { input } => cmd_parse(cli, &loader, input),
        Command::Indec { input } => cmd_indec(cli, &loader, input),
        Command::Silting { input, reference } => cmd_silting(cli, &loader, input, reference.as_deref()),
        Command::Repdim { input } => cmd_repdim(cli, &loader, input),
        Command::Verify { example, all, scan } => cmd_verify(cli, &loader, example.as_deref(), *all, scan.as_deref()),
        Command::TiltingScan { input, against } => cmd_tilting_scan(cli, &loader, input, against.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
