use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcycle::analysis::{analyze, fixed_point_tests, primitive_level, structure_checks, AnalysisReport};
use qcycle::congruence::{all_congruences, is_isomorphic, quotient};
use qcycle::enumerate::{count_structures, enumerate, EnumerationQuery, Kind, Property};
use qcycle::extension::{extension_indecomposability_criterion, family_extension, ExtensionFamily};
use qcycle::io::{self as qio, Document, Format};
use qcycle::model::Fixture;
use qcycle::{fixture, from_solution, to_solution, Error, QCycleSet};

#[derive(Parser)]
#[command(
    name = "qcycle",
    version,
    about = "Finite regular q-cycle sets and Yang-Baxter solutions"
)]
struct Cli {
    /// Output mode for reports and diagnostics.
    #[arg(long, value_enum, global = true, default_value_t = Mode::Text)]
    format: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Text,
    #[value(alias = "json")]
    Structured,
}

impl Mode {
    fn document_format(self) -> Format {
        match self {
            Mode::Text => Format::Text,
            Mode::Structured => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms, regularity and non-degeneracy of a document.
    Verify(Input),
    /// Report every invariant of a regular q-cycle set (or of the q-cycle set of a solution).
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Print only the primitive level.
        #[arg(long)]
        level_only: bool,
        /// Print the structural implication and fixed-point checks instead.
        #[arg(long)]
        checks: bool,
    },
    /// Turn a q-cycle set into its solution or a solution into its q-cycle set.
    Convert(Input),
    /// Build the dynamical extension of a base by a pair file, or a named family.
    Extend {
        /// Base q-cycle set file (ignored with --family).
        base: Option<PathBuf>,
        /// Dynamical pair file.
        pair: Option<PathBuf>,
        /// Named family: D1, D2(k), D3(p) or SF(m).
        #[arg(long)]
        family: Option<String>,
    },
    /// List the nontrivial congruences and their images.
    Quotients(Input),
    /// Decide whether two q-cycle sets are isomorphic.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Enumerate regular structures of one order up to isomorphism.
    Enumerate {
        /// Number of elements.
        #[arg(long)]
        order: usize,
        /// `qcs` for q-cycle sets or `cs` for cycle sets.
        #[arg(long, default_value = "qcs")]
        kind: String,
        /// Property to require (repeatable).
        #[arg(long = "require")]
        require: Vec<String>,
        /// Property to forbid (repeatable).
        #[arg(long = "forbid")]
        forbid: Vec<String>,
        /// Write the documents here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the count table by invariant profile.
        #[arg(long)]
        count_only: bool,
        /// Permit orders above the default bound.
        #[arg(long)]
        allow_large: bool,
        /// Emit every labeled structure instead of one per class.
        #[arg(long)]
        labeled: bool,
    },
    /// Print a named example.
    Fixture {
        /// simple4, simple9, nonsimple6, primitive4, base3, J4, D1, D2(k), D3(p), SF(m), trivial(n), cyclic(n).
        name: String,
    },
}

#[derive(Args)]
struct Input {
    /// Input file; standard input when absent or `-`.
    path: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_qcycle_set(path: Option<&PathBuf>) -> Result<QCycleSet, Error> {
    match qio::parse_document(&read_input(path)?)? {
        Document::QCycleSet(x) => Ok(x),
        Document::Solution(s) => from_solution(&s),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegreeMismatch { .. } | Error::NotAPermutation(_) | Error::Malformed(_) | Error::Invalid(_) => 1,
        Error::Precondition(_) => 2,
        Error::Parse(_) | Error::UnknownFixture(_) => 3,
        Error::BoundExceeded(_) => 4,
        Error::Internal(_) => 5,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DegreeMismatch { .. } => "degree_mismatch",
        Error::NotAPermutation(_) => "not_a_permutation",
        Error::Malformed(_) => "malformed",
        Error::Invalid(_) => "invalid",
        Error::Precondition(_) => "precondition",
        Error::Parse(_) => "parse",
        Error::UnknownFixture(_) => "unknown_fixture",
        Error::BoundExceeded(_) => "bound_exceeded",
        Error::Internal(_) => "internal",
    }
}

/// Text or JSON output plus the exit status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn verify(input: &Input, mode: Mode) -> Result<Outcome, Error> {
    let doc = qio::parse_document(&read_input(input.path.as_ref())?)?;
    let (report, valid) = match &doc {
        Document::QCycleSet(x) => {
            let axioms = x.check_q_axioms();
            let valid = axioms.is_valid();
            let first = axioms
                .first()
                .map(|v| json!({"axiom": v.axiom, "x": v.x + 1, "y": v.y + 1, "z": v.z + 1}));
            (
                json!({
                    "kind": "q-cycle set",
                    "n": x.n(),
                    "axioms_hold": valid,
                    "violations": axioms.violations.len(),
                    "first_violation": first,
                    "regular": x.is_regular(),
                    "nondegenerate": x.is_nondegenerate(),
                    "cycle_set": x.is_cycle_set(),
                }),
                valid,
            )
        }
        Document::Solution(s) => {
            let failure = s.first_braid_failure();
            let valid = failure.is_none() && s.is_nondegenerate();
            (
                json!({
                    "kind": "solution",
                    "n": s.n(),
                    "braid_relation_holds": failure.is_none(),
                    "first_failure": failure.map(|(x, y, z)| [x + 1, y + 1, z + 1]),
                    "nondegenerate": s.is_nondegenerate(),
                    "bijective": s.is_bijective(),
                    "involutive": s.is_involutive(),
                }),
                valid,
            )
        }
    };
    let text = match mode {
        Mode::Structured => pretty(&report),
        Mode::Text => flat_text(&report),
    };
    Ok(Outcome {
        text,
        code: if valid { 0 } else { 1 },
    })
}

/// `key: value` lines for a flat JSON object.
fn flat_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, value) in map {
            let shown = match value {
                Value::String(s) => s.clone(),
                Value::Null => "none".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

fn report_text(r: &AnalysisReport) -> String {
    let value = serde_json::to_value(r).expect("report serializes");
    flat_text(&value)
}

fn analyze_cmd(input: &Input, level_only: bool, checks: bool, mode: Mode) -> Result<Outcome, Error> {
    let x = read_qcycle_set(input.path.as_ref())?;
    if level_only {
        let level = primitive_level(&x)?;
        let value = json!({ "primitive_level": level.map_or(json!("infinite"), |k| json!(k)) });
        return Ok(Outcome::ok(match mode {
            Mode::Structured => pretty(&value),
            Mode::Text => flat_text(&value),
        }));
    }
    if checks {
        let structure = structure_checks(&x)?;
        let fixed = if x.is_cycle_set() {
            Some(fixed_point_tests(&x)?)
        } else {
            None
        };
        let consistent = structure.all_hold() && fixed.as_ref().is_none_or(|f| f.is_consistent());
        let value = json!({ "structure_checks": structure, "fixed_points": fixed });
        let text = match mode {
            Mode::Structured => pretty(&value),
            Mode::Text => {
                let mut out = String::new();
                for item in &structure.items {
                    let status = if !item.hypothesis {
                        "vacuous"
                    } else if item.holds() {
                        "holds"
                    } else {
                        "FAILS"
                    };
                    out.push_str(&format!("({}) {}: {status}\n", item.item, item.statement));
                }
                if let Some(f) = &fixed {
                    out.push_str(&format!(
                        "fixed point: {}\nfixed-point corollaries consistent: {}\n",
                        f.witness.map_or("none".to_string(), |(a, b)| format!("{a}.{b} = {b}")),
                        f.is_consistent()
                    ));
                }
                out
            }
        };
        return Ok(Outcome {
            text,
            code: if consistent { 0 } else { 5 },
        });
    }
    let report = analyze(&x)?;
    Ok(Outcome::ok(match mode {
        Mode::Structured => pretty(&serde_json::to_value(&report).expect("report serializes")),
        Mode::Text => report_text(&report),
    }))
}

fn convert(input: &Input, mode: Mode) -> Result<Outcome, Error> {
    let doc = qio::parse_document(&read_input(input.path.as_ref())?)?;
    let out = match doc {
        Document::QCycleSet(x) => qio::write_solution(&to_solution(&x)?, mode.document_format()),
        Document::Solution(s) => qio::write_qcycle_set(&from_solution(&s)?, mode.document_format()),
    };
    Ok(Outcome::ok(out))
}

fn extend(base: Option<&PathBuf>, pair: Option<&PathBuf>, family: Option<&str>, mode: Mode) -> Result<Outcome, Error> {
    let (base, pair) = match family {
        Some(name) => family_extension(ExtensionFamily::parse(name)?)?,
        None => {
            let (Some(b), Some(p)) = (base, pair) else {
                return Err(Error::Parse(
                    "extend needs a base file and a pair file, or --family".into(),
                ));
            };
            (read_qcycle_set(Some(b))?, qio::parse_pair(&read_input(Some(p))?)?)
        }
    };
    let ext = pair.build(&base)?;
    let transitive = qcycle::analysis::is_indecomposable(&ext)?;
    let criterion = if qcycle::analysis::is_indecomposable(&base)? {
        Some(extension_indecomposability_criterion(&base, &pair)?)
    } else {
        None
    };
    Ok(Outcome::ok(match mode {
        Mode::Structured => pretty(&json!({
            "order": ext.n(),
            "cocycle_identities_hold": true,
            "indecomposable": transitive,
            "stabilizer_criterion": criterion,
            "extension": qio::qcycle_set_to_json(&ext),
        })),
        Mode::Text => format!(
            "# order {}, indecomposable {}, stabilizer criterion {}\n{}",
            ext.n(),
            transitive,
            criterion.map_or("n/a".to_string(), |c| c.to_string()),
            qio::write_qcycle_set(&ext, Format::Text)
        ),
    }))
}

fn quotients(input: &Input, mode: Mode) -> Result<Outcome, Error> {
    let x = read_qcycle_set(input.path.as_ref())?;
    let mut entries = Vec::new();
    for theta in all_congruences(&x) {
        if theta.is_trivial() {
            continue;
        }
        let (image, _) = quotient(&x, &theta)?;
        entries.push((theta, image));
    }
    Ok(Outcome::ok(match mode {
        Mode::Structured => pretty(&json!({
            "n": x.n(),
            "simple": x.n() > 1 && entries.is_empty(),
            "congruences": entries.iter().map(|(theta, image)| json!({
                "classes": theta.to_one_based(),
                "image": qio::qcycle_set_to_json(image),
            })).collect::<Vec<_>>(),
        })),
        Mode::Text => {
            let mut out = format!("{} nontrivial congruence(s)\n", entries.len());
            for (theta, image) in &entries {
                out.push_str(&format!("{theta} -> order {}\n", image.n()));
            }
            out
        }
    }))
}

fn isomorphic(a: &PathBuf, b: &PathBuf, mode: Mode) -> Result<Outcome, Error> {
    let x = read_qcycle_set(Some(a))?;
    let y = read_qcycle_set(Some(b))?;
    let witness = is_isomorphic(&x, &y).map(|f| f.iter().map(|v| v + 1).collect::<Vec<_>>());
    Ok(Outcome::ok(match mode {
        Mode::Structured => pretty(&json!({ "isomorphic": witness.is_some(), "witness": witness })),
        Mode::Text => match witness {
            Some(w) => format!(
                "isomorphic: {}\n",
                w.iter()
                    .enumerate()
                    .map(|(i, v)| format!("{}->{v}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            None => "not isomorphic\n".to_string(),
        },
    }))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_cmd(
    order: usize,
    kind: &str,
    require: &[String],
    forbid: &[String],
    out: Option<&PathBuf>,
    count_only: bool,
    allow_large: bool,
    labeled: bool,
    mode: Mode,
) -> Result<Outcome, Error> {
    let kind: Kind = kind.parse()?;
    let mut q = EnumerationQuery::new(order, kind);
    for r in require {
        q = q.require(r.parse::<Property>()?);
    }
    for f in forbid {
        q = q.forbid(f.parse::<Property>()?);
    }
    q.allow_beyond_bounds = allow_large;
    q.canonical = !labeled;
    let all = enumerate(&q)?;
    let text = if count_only {
        let report = count_structures(order, kind, &all)?;
        pretty(&serde_json::to_value(&report).expect("count report serializes"))
    } else {
        qio::write_stream(&all, mode.document_format())
    };
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(format!(
                "{} structure(s) written to {}\n",
                all.len(),
                path.display()
            )))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn fixture_cmd(name: &str, mode: Mode) -> Result<Outcome, Error> {
    let format = mode.document_format();
    Ok(Outcome::ok(match fixture(name)? {
        Fixture::QCycleSet(x) => qio::write_qcycle_set(&x, format),
        Fixture::Solution(s) => qio::write_solution(&s, format),
    }))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let mode = cli.format;
    match &cli.command {
        Command::Verify(input) => verify(input, mode),
        Command::Analyze {
            input,
            level_only,
            checks,
        } => analyze_cmd(input, *level_only, *checks, mode),
        Command::Convert(input) => convert(input, mode),
        Command::Extend { base, pair, family } => extend(base.as_ref(), pair.as_ref(), family.as_deref(), mode),
        Command::Quotients(input) => quotients(input, mode),
        Command::Isomorphic { first, second } => isomorphic(first, second, mode),
        Command::Enumerate {
            order,
            kind,
            require,
            forbid,
            out,
            count_only,
            allow_large,
            labeled,
        } => enumerate_cmd(
            *order,
            kind,
            require,
            forbid,
            out.as_ref(),
            *count_only,
            *allow_large,
            *labeled,
            mode,
        ),
        Command::Fixture { name } => fixture_cmd(name, mode),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let _ = io::stdout().write_all(outcome.text.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            match cli.format {
                Mode::Structured => {
                    let diag = json!({ "error": error_kind(&e), "message": e.to_string(), "exit_code": exit_code(&e) });
                    let _ = writeln!(io::stderr(), "{diag}");
                }
                Mode::Text => {
                    let _ = writeln!(io::stderr(), "error: {e}");
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
