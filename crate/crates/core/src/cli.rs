//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when an axiom fails, 2 on any
//! input error (unreadable or malformed bundle, unknown axiom, cap exceeded).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::braiding::{StarMode, TripleContext};
use crate::bundle::{Bundle, Structure};
use crate::error::{Error, Result};
use crate::exact_linalg::{reflexive_ginverse, FieldSpec, Matrix};
use crate::hopf::{verify_module_action, verify_regular_antipode, verify_unit_counit_antipode};
use crate::report::{Check, Report};
use crate::search::{search_regular_ybe, CatalogTarget};
use crate::ybop::{twist_comultiplication, twist_multiplication, verify_yb_operator};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "regbraid", version, about = "Verify and search regular braided structures over Q and GF(p)")]
pub struct Cli {
    /// Field the inputs must be over (`Q`, `GF(p)`); also the field of inline matrices.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,

    /// Require braiding stars to be reflexive (`B*∘B∘B* = B*` as well).
    #[arg(long, global = true)]
    pub strict_stars: bool,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report_format: ReportFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every axiom applicable to a bundle.
    Verify {
        bundle: PathBuf,
        /// Comma-separated subset of axioms to report.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<String>>,
    },
    /// Print the obstructors of a regular cocycle.
    Obstructor { bundle: PathBuf },
    /// Print the reflexive generalized inverse with its certificates.
    Ginverse {
        bundle: Option<PathBuf>,
        /// Inline matrix such as "1 0; 0 0".
        #[arg(long, conflicts_with = "bundle")]
        matrix: Option<String>,
    },
    /// Enumerate regular Yang-Baxter operators described by a search spec.
    Search {
        bundle: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        allow_over_cap: bool,
    },
    /// Twist the multiplication and/or comultiplication of an operator bundle.
    Twist {
        bundle: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify every entry of a solution catalog.
    CatalogCheck { bundle: PathBuf },
}

/// Axioms `verify` can report for each bundle kind.
pub fn axioms_for(kind: &str) -> &'static [&'static str] {
    const ALGEBRA: &[&str] = &["idempotent", "me", "associativity"];
    const COALGEBRA: &[&str] = &["idempotent", "comult_consistency", "coassociativity"];
    const BIALGEBRA: &[&str] = &[
        "idempotent",
        "me",
        "associativity",
        "comult_consistency",
        "coassociativity",
        "compatibility",
    ];
    match kind {
        "cocycle" => &["regularity", "idempotent", "intertwine_source", "intertwine_target"],
        "braiding" => &["regularity", "naturality", "star_inner", "star_reflexive", "component_ybe"],
        "algebra" => ALGEBRA,
        "coalgebra" => COALGEBRA,
        "yb_operator" => &[
            "idempotent",
            "me",
            "associativity",
            "comult_consistency",
            "coassociativity",
            "re",
            "ybr",
            "rrr1",
            "rrr2",
        ],
        "bialgebra" => BIALGEBRA,
        "antipode" => &[
            "idempotent",
            "me",
            "associativity",
            "comult_consistency",
            "coassociativity",
            "compatibility",
            "se2_obstructor",
            "se2_antipode",
            "star_obstructor",
            "star_antipode",
            "star_partner",
            "antipode_left",
            "antipode_right",
        ],
        "module_action" => &[
            "idempotent",
            "me",
            "associativity",
            "comult_consistency",
            "coassociativity",
            "compatibility",
            "module_idempotent",
            "module_compat",
        ],
        "search_spec" => &["idempotent"],
        "matrix" => &["ginverse_inner", "ginverse_reflexive"],
        "catalog" => &["idempotent", "canonical_order", "re", "ybr", "rrr1", "rrr2", "se2_obstructor", "se2_antipode"],
        _ => &[],
    }
}

fn idempotents(report: &mut Report, es: &[Matrix]) -> Result<()> {
    for (n, e) in es.iter().enumerate() {
        report.compare("idempotent", Some(n), &e.mul(e)?, e)?;
    }
    Ok(())
}

/// All checks applicable to a structure. `strict_stars` selects reflexive
/// star checks for braidings.
pub fn verify_structure(s: &Structure, strict_stars: bool) -> Result<Report> {
    let mut report = Report::new();
    match s {
        Structure::Cocycle(c) => {
            report.extend(c.verify_regularity());
            if c.is_regular() {
                report.extend(c.obstructors()?.verify_against(c)?);
            }
        }
        Structure::Braiding(b) => {
            report.extend(b.left().verify_regularity());
            report.extend(b.right().verify_regularity());
            report.extend(b.verify_naturality()?);
            if b.star_components().is_some() {
                let mode = if strict_stars { StarMode::Reflexive } else { StarMode::Inner };
                report.extend(b.verify_star_regularity(mode)?);
            }
            if b.left() == b.right() && b.left().is_regular() {
                let ctx = TripleContext::uniform(b.left().clone(), b.components().to_vec())?;
                report.extend(ctx.verify_component_ybe()?);
            }
        }
        Structure::Algebra(a) => report.extend(a.verify()?),
        Structure::Coalgebra(c) => report.extend(c.verify()?),
        Structure::YbOperator {
            obstructors,
            algebra,
            coalgebra,
            operator,
        } => {
            match algebra {
                Some(a) => report.extend(verify_yb_operator(a, operator)?),
                None => {
                    idempotents(&mut report, obstructors)?;
                    report.extend(operator.verify(obstructors)?);
                }
            }
            if let Some(c) = coalgebra {
                let mut r = c.verify()?;
                r.checks.retain(|c| c.axiom != "idempotent");
                report.extend(r);
            }
        }
        Structure::Bialgebra(h) => report.extend(h.verify()?),
        Structure::Antipode { bialgebra, antipode } => {
            report.extend(bialgebra.verify()?);
            report.extend(verify_regular_antipode(bialgebra, antipode)?);
            if bialgebra.units.is_some() && bialgebra.counits.is_some() {
                report.extend(verify_unit_counit_antipode(bialgebra, antipode)?);
            }
        }
        Structure::ModuleAction { bialgebra, module } => {
            report.extend(bialgebra.verify()?);
            report.extend(verify_module_action(module, bialgebra)?);
        }
        Structure::SearchSpec(spec) => idempotents(&mut report, std::slice::from_ref(&spec.obstructor))?,
        Structure::Matrix(m) => {
            let x = reflexive_ginverse(m);
            report.compare("ginverse_inner", None, &Matrix::compose(&[m, &x, m])?, m)?;
            report.compare("ginverse_reflexive", None, &Matrix::compose(&[&x, m, &x])?, &x)?;
        }
        Structure::Catalog { catalog, bialgebra } => {
            if catalog.target == CatalogTarget::YbOperator {
                idempotents(&mut report, &catalog.obstructors)?;
            }
            let ordered = catalog.entries.windows(2).all(|w| {
                (w[0].level, &w[0].matrix) != (w[1].level, &w[1].matrix)
                    && (w[0].level < w[1].level
                        || (w[0].level == w[1].level && w[0].matrix.lex_cmp(&w[1].matrix).is_lt()))
            });
            report.record("canonical_order", None, ordered, None);
            report.extend(catalog.recheck(bialgebra.as_ref())?);
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct StructuredReport<'a> {
    command: &'a str,
    kind: &'a str,
    passed: bool,
    checks: &'a [Check],
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    warnings: &'a [String],
}

struct Ctx<'a> {
    format: ReportFormat,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn report(&mut self, command: &str, kind: &str, report: &Report) -> std::io::Result<()> {
        match self.format {
            ReportFormat::Text => write!(self.out, "{report}"),
            ReportFormat::Structured => {
                let doc = StructuredReport {
                    command,
                    kind,
                    passed: report.passed(),
                    checks: &report.checks,
                    warnings: &report.warnings,
                };
                let text = serde_json::to_string_pretty(&doc).expect("report serializes");
                writeln!(self.out, "{text}")
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.report_format,
        out,
        err,
    };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::Verification(_) | Error::NotRegular { .. } => EXIT_FAIL,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Bundle> {
    let bundle = Bundle::load(path)?;
    if let Some(f) = cli.field {
        if f != bundle.field {
            return Err(Error::FieldMismatch(f, bundle.field));
        }
    }
    Ok(bundle)
}

fn write_bundle(ctx: &mut Ctx<'_>, bundle: &Bundle, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => bundle.save(path),
        None => write!(ctx.out, "{}", bundle.to_json()).map_err(|e| Error::Parse(e.to_string())),
    }
}

fn exit_for(report: &Report) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("output: {e}"))
}

fn dispatch(cli: &Cli, ctx: &mut Ctx<'_>) -> Result<i32> {
    match &cli.command {
        Command::Verify { bundle, axioms } => {
            let b = load(cli, bundle)?;
            let known = axioms_for(b.kind());
            if let Some(list) = axioms {
                if let Some(bad) = list.iter().find(|a| !known.contains(&a.as_str())) {
                    return Err(Error::Parse(format!(
                        "unknown axiom {bad:?} for {} bundles (known: {})",
                        b.kind(),
                        known.join(", ")
                    )));
                }
            }
            let mut report = verify_structure(&b.structure, cli.strict_stars)?;
            if let Some(list) = axioms {
                report.retain_axioms(list);
            }
            ctx.report("verify", b.kind(), &report).map_err(io)?;
            Ok(exit_for(&report))
        }
        Command::Obstructor { bundle } => {
            let b = load(cli, bundle)?;
            let Structure::Cocycle(c) = &b.structure else {
                return Err(Error::Parse(format!("expected a cocycle bundle, got {}", b.kind())));
            };
            let regularity = c.verify_regularity();
            if !regularity.passed() {
                ctx.report("obstructor", b.kind(), &regularity).map_err(io)?;
            }
            let set = c.obstructors()?;
            let check = set.verify_against(c)?;
            match ctx.format {
                ReportFormat::Text => {
                    for (n, e) in set.as_slice().iter().enumerate() {
                        let idem = check
                            .checks
                            .iter()
                            .any(|k| k.axiom == "idempotent" && k.level == Some(n + 1) && k.passed);
                        writeln!(ctx.out, "e{} (idempotent: {})", n + 1, if idem { "yes" } else { "no" })
                            .map_err(io)?;
                        writeln!(ctx.out, "{e}").map_err(io)?;
                    }
                }
                ReportFormat::Structured => {
                    let doc = serde_json::json!({
                        "command": "obstructor",
                        "obstructors": set.as_slice().iter().map(Matrix::to_string_rows).collect::<Vec<_>>(),
                        "passed": check.passed(),
                        "checks": check.checks,
                    });
                    writeln!(ctx.out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
                }
            }
            Ok(exit_for(&check))
        }
        Command::Ginverse { bundle, matrix } => {
            let m = match (bundle, matrix) {
                (Some(path), None) => match load(cli, path)?.structure {
                    Structure::Matrix(m) => m,
                    other => {
                        return Err(Error::Parse(format!("expected a matrix bundle, got {}", other.kind())))
                    }
                },
                (None, Some(text)) => Matrix::parse_inline(cli.field.unwrap_or(FieldSpec::Rationals), text)?,
                _ => return Err(Error::Parse("give a matrix bundle or --matrix".into())),
            };
            let x = reflexive_ginverse(&m);
            let mxm = Matrix::compose(&[&m, &x, &m])?;
            let xmx = Matrix::compose(&[&x, &m, &x])?;
            let mut report = Report::new();
            report.compare("ginverse_inner", None, &mxm, &m)?;
            report.compare("ginverse_reflexive", None, &xmx, &x)?;
            match ctx.format {
                ReportFormat::Text => {
                    writeln!(ctx.out, "X\n{x}\nM·X·M\n{mxm}\nX·M·X\n{xmx}").map_err(io)?;
                    write!(ctx.out, "{report}").map_err(io)?;
                }
                ReportFormat::Structured => {
                    let doc = serde_json::json!({
                        "command": "ginverse",
                        "field": m.field().to_string(),
                        "ginverse": x.to_string_rows(),
                        "mxm": mxm.to_string_rows(),
                        "xmx": xmx.to_string_rows(),
                        "passed": report.passed(),
                        "checks": report.checks,
                    });
                    writeln!(ctx.out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
                }
            }
            Ok(exit_for(&report))
        }
        Command::Search {
            bundle,
            output,
            workers,
            allow_over_cap,
        } => {
            let b = load(cli, bundle)?;
            let Structure::SearchSpec(mut spec) = b.structure else {
                return Err(Error::Parse(format!("expected a search_spec bundle, got {}", b.kind())));
            };
            if let Some(w) = workers {
                spec.workers = *w;
            }
            spec.allow_over_cap |= allow_over_cap;
            let started = Instant::now();
            let catalog = search_regular_ybe(&spec)?;
            let elapsed = started.elapsed();
            let doc = Bundle::new(
                Structure::Catalog {
                    catalog: catalog.clone(),
                    bialgebra: None,
                },
                spec.field,
            );
            write_bundle(ctx, &doc, output.as_ref())?;
            let summary = format!(
                "field={} dim={} examined={} solutions={} workers={} elapsed={:.3}s",
                spec.field,
                spec.dim,
                catalog.examined,
                catalog.len(),
                spec.workers,
                elapsed.as_secs_f64()
            );
            if output.is_some() {
                writeln!(ctx.out, "{summary}").map_err(io)?;
            } else {
                writeln!(ctx.err, "{summary}").map_err(io)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Twist { bundle, output } => {
            let b = load(cli, bundle)?;
            let Structure::YbOperator {
                obstructors,
                algebra,
                coalgebra,
                operator,
            } = &b.structure
            else {
                return Err(Error::Parse(format!("expected a yb_operator bundle, got {}", b.kind())));
            };
            let inputs = verify_structure(&b.structure, cli.strict_stars)?;
            if !inputs.passed() {
                ctx.report("twist", b.kind(), &inputs).map_err(io)?;
                return Ok(EXIT_FAIL);
            }
            let structure = match (algebra, coalgebra) {
                (Some(a), None) => Structure::Algebra(twist_multiplication(a, operator)?),
                (None, Some(c)) => Structure::Coalgebra(twist_comultiplication(c, operator)?),
                (Some(a), Some(c)) => Structure::YbOperator {
                    obstructors: obstructors.clone(),
                    algebra: Some(twist_multiplication(a, operator)?),
                    coalgebra: Some(twist_comultiplication(c, operator)?),
                    operator: operator.clone(),
                },
                (None, None) => return Err(Error::Missing("bundle has neither m nor Delta to twist".into())),
            };
            let mut out = Bundle::new(structure, b.field);
            out.metadata = b.metadata.clone();
            write_bundle(ctx, &out, output.as_ref())?;
            Ok(EXIT_PASS)
        }
        Command::CatalogCheck { bundle } => {
            let b = load(cli, bundle)?;
            if !matches!(b.structure, Structure::Catalog { .. }) {
                return Err(Error::Parse(format!("expected a catalog bundle, got {}", b.kind())));
            }
            let report = verify_structure(&b.structure, cli.strict_stars)?;
            ctx.report("catalog-check", b.kind(), &report).map_err(io)?;
            Ok(exit_for(&report))
        }
    }
}
