//! The `fole` command line.
//!
//! Exit codes: 0 when every checked law holds, 1 when a law or a
//! precondition of the requested operation is violated (the report goes to
//! standard output), 2 for usage errors and unreadable or malformed input
//! files (the message goes to standard error).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fole_core::fibration::{self, Fiber};
use fole_core::interpretation::{key_embedded_table, tabular_interpretation, traditional_interpretation};
use fole_core::linearization::{linearize, olog_schema, unify};
use fole_core::structure::{check_integrity, check_overlap_coherence, key_embed};
use fole_core::{Error, Structure, StructureMorphism};
use serde::Serialize;

use crate::export;
use crate::model::{emit_model, load_model, load_morphism, ModelDocument};
use crate::report::{error_report, fiber_report, integrity_report, morphism_report, structure_report, Report};

#[derive(Debug, Parser)]
#[command(name = "fole", version, about = "Check and export entity-relationship-attribute structures")]
struct Cli {
    /// Print verdict reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check carriers, signature and tuple maps, and the list designation.
    Validate { model: PathBuf },
    /// Check the four laws of a structure morphism.
    CheckMorphism {
        morphism: PathBuf,
        /// Also require the morphism to lie over a fixed schema or universe.
        #[arg(long, value_enum)]
        fiber: Option<FiberArg>,
    },
    /// Pull the target model back along the `r`, `f` maps of a morphism
    /// document; the source model supplies the new schema.
    Reduct { morphism: PathBuf },
    /// Pull the source model back along the `k`, `g` maps of a morphism
    /// document; the target model supplies the new universe.
    Image { morphism: PathBuf },
    /// Print the key-embedded model.
    EmbedKeys { model: PathBuf },
    /// Print the table of an entity type as CSV.
    Interpret {
        model: PathBuf,
        #[arg(long = "type")]
        entity_type: String,
        /// Key-embedded table: the key comes first, in the self column.
        #[arg(long, conflicts_with = "relation")]
        embed: bool,
        /// Distinct tuples instead of keyed rows.
        #[arg(long)]
        relation: bool,
    },
    /// Print the extent of a type, one name per line.
    Extent {
        model: PathBuf,
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value_t = Side::Ent)]
        side: Side,
    },
    /// Entity, domain and referential integrity, and overlap coherence.
    Integrity { model: PathBuf },
    /// Factor a morphism through its reduct and its image.
    Factorize { morphism: PathBuf },
    /// Print the linearization of a model.
    Linearize {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = LinFormat::Eav)]
        format: LinFormat,
    },
    /// Print the olog graph of a unified model.
    Olog {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Print the unified version of a mixed model.
    Unify { model: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FiberArg {
    Schema,
    Universe,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Ent,
    Attr,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LinFormat {
    Eav,
    Ntriples,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
}

enum Failure {
    /// Exit 1, report on standard output.
    Violated(Report),
    /// Exit 2, message on standard error.
    Usage(String),
}

impl From<crate::model::ModelError> for Failure {
    fn from(e: crate::model::ModelError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn violated(e: Error) -> Failure {
    Failure::Violated(error_report(&e))
}

enum Success {
    Text(String),
    Report(Report),
}

type Outcome = Result<Success, Failure>;

/// Loads a model and insists that it is a valid structure.
fn valid_model(path: &Path) -> Result<Structure, Failure> {
    let m = load_model(path)?;
    let verdict = m.check().map_err(violated)?;
    if verdict.is_ok() {
        Ok(m)
    } else {
        Err(Failure::Violated(structure_report(&verdict)))
    }
}

fn unknown_type(e: Error) -> Failure {
    match e {
        Error::UnknownType(t) => Failure::Usage(format!("unknown type `{t}`")),
        other => violated(other),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FactorizationOutput {
    midpoints_agree: bool,
    recomposes: bool,
    schema_mid: ModelDocument,
    universe_mid: ModelDocument,
}

fn morphism_or_report(path: &Path) -> Result<StructureMorphism, Failure> {
    let phi = load_morphism(path)?.into_morphism();
    let report = phi.check().map_err(violated)?;
    if report.is_ok() {
        Ok(phi)
    } else {
        Err(Failure::Violated(morphism_report(&report)))
    }
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Validate { model } => {
            let m = load_model(&model)?;
            let verdict = m.check().map_err(violated)?;
            Ok(Success::Report(structure_report(&verdict)))
        }
        Command::CheckMorphism { morphism, fiber } => {
            let phi = load_morphism(&morphism)?.into_morphism();
            let report = match fiber {
                None => morphism_report(&phi.check().map_err(violated)?),
                Some(f) => {
                    let fiber = match f {
                        FiberArg::Schema => Fiber::Schema,
                        FiberArg::Universe => Fiber::Universe,
                    };
                    fiber_report(&fibration::check_fixed_fiber_morphism(&phi, fiber))
                }
            };
            Ok(Success::Report(report))
        }
        Command::Reduct { morphism } => {
            let doc = load_morphism(&morphism)?;
            let m = fole_core::SchemaMorphism::new(doc.source.schema().clone(), doc.target.schema().clone(), doc.r, doc.f);
            let reduct = fibration::reduct_along_schema(&doc.target, &m).map_err(violated)?;
            Ok(Success::Text(emit_model(&reduct)))
        }
        Command::Image { morphism } => {
            let doc = load_morphism(&morphism)?;
            let u = fole_core::UniverseMorphism::new(doc.source.universe().clone(), doc.target.universe().clone(), doc.k, doc.g);
            let image = fibration::image_along_universe(&doc.source, &u).map_err(violated)?;
            Ok(Success::Text(emit_model(&image)))
        }
        Command::EmbedKeys { model } => {
            let m = valid_model(&model)?;
            Ok(Success::Text(emit_model(&key_embed(&m).map_err(violated)?)))
        }
        Command::Interpret {
            model,
            entity_type,
            embed,
            relation,
        } => {
            let m = valid_model(&model)?;
            let text = if relation {
                export::relation_csv(&traditional_interpretation(&m, &entity_type).map_err(unknown_type)?)
            } else if embed {
                export::table_csv(&key_embedded_table(&m, &entity_type).map_err(unknown_type)?)
            } else {
                export::table_csv(&tabular_interpretation(&m, &entity_type).map_err(unknown_type)?)
            };
            Ok(Success::Text(text))
        }
        Command::Extent { model, ty, side } => {
            let m = load_model(&model)?;
            let c = match side {
                Side::Ent => m.ent(),
                Side::Attr => m.attr(),
            };
            let ext = c.extent(&ty).map_err(unknown_type)?;
            Ok(Success::Text(ext.iter().map(|n| format!("{n}\n")).collect()))
        }
        Command::Integrity { model } => {
            let m = load_model(&model)?;
            Ok(Success::Report(integrity_report(&check_integrity(&m), &check_overlap_coherence(&m))))
        }
        Command::Factorize { morphism } => {
            let phi = morphism_or_report(&morphism)?;
            let w = fibration::factorize_structure_morphism(&phi).map_err(violated)?;
            let out = FactorizationOutput {
                midpoints_agree: w.midpoints_agree(),
                recomposes: w.verify().map_err(violated)?,
                schema_mid: ModelDocument::from_structure(&w.schema_mid),
                universe_mid: ModelDocument::from_structure(&w.universe_mid),
            };
            let mut text = serde_json::to_string_pretty(&out).expect("plain strings serialize");
            text.push('\n');
            Ok(Success::Text(text))
        }
        Command::Linearize { model, format } => {
            let m = valid_model(&model)?;
            let quads = linearize(&m).map_err(violated)?;
            Ok(Success::Text(match format {
                LinFormat::Eav => export::eav(&quads),
                LinFormat::Ntriples => export::ntriples(&quads, m.keys()),
            }))
        }
        Command::Olog { model, format } => {
            let m = valid_model(&model)?;
            let graph = olog_schema(&m).map_err(violated)?;
            fole_core::linearization::olog_instance(&m).map_err(violated)?;
            Ok(Success::Text(match format {
                GraphFormat::Dot => export::dot(&graph),
            }))
        }
        Command::Unify { model } => {
            let m = valid_model(&model)?;
            Ok(Success::Text(emit_model(&unify(&m).map_err(violated)?)))
        }
    }
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let json = cli.json;
    let render = |r: &Report| if json { r.to_json() } else { r.to_text() };
    let (code, text, to_err) = match execute(cli.command) {
        Ok(Success::Text(t)) => (0, t, false),
        Ok(Success::Report(r)) => (if r.is_ok() { 0 } else { 1 }, render(&r), false),
        Err(Failure::Violated(r)) => (1, render(&r), false),
        Err(Failure::Usage(msg)) => (2, format!("fole: {msg}\n"), true),
    };
    let sink: &mut dyn Write = if to_err { err } else { out };
    if sink.write_all(text.as_bytes()).and_then(|_| sink.flush()).is_err() {
        return 2;
    }
    code
}
