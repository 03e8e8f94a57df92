use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polyvenn::arrangement::{Arrangement, ArrangementError, PolygonFamily};
use polyvenn::bounds;
use polyvenn::format::{FamilyDocument, SearchConfigDocument};
use polyvenn::geometry::parse_rat;
use polyvenn::render::{render_svg, RenderOptions};
use polyvenn::report::verify_family;
use polyvenn::search::{anneal, ProgressEvent};
use polyvenn::transform::split_to_simple;

const EXIT_NOT_VENN: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "polyvenn",
    version,
    about = "Exact tools for Venn diagrams of convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a family and print a JSON report. Exit 0 for a Venn diagram,
    /// 1 otherwise, 2 for unreadable input, 3 for degenerate geometry.
    Verify {
        file: PathBuf,
        /// Include the per-pair corner audit.
        #[arg(long)]
        audit: bool,
    },
    /// Print lower and upper bounds on the corners needed per polygon.
    Bounds {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 14)]
        n_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Translate curves until every vertex has degree four.
    Split {
        file: PathBuf,
        #[arg(long, default_value = "0.001")]
        epsilon: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the resulting family here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON split report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Anneal a rotationally symmetric family towards a Venn diagram.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Suppress progress lines on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Draw a family as SVG.
    Render {
        file: PathBuf,
        /// Shade faces by how many curves contain them.
        #[arg(long)]
        shade: bool,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the HTTP service used by the editor.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<ArrangementError> for Failure {
    fn from(err: ArrangementError) -> Self {
        let code = match err {
            ArrangementError::Degenerate(_) => EXIT_DEGENERATE,
            ArrangementError::Inconsistent(_) => EXIT_NOT_VENN,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<PolygonFamily, Failure> {
    let text = read(path)?;
    FamilyDocument::parse(&text)
        .and_then(|doc| doc.to_family())
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Verify { file, audit } => {
            let family = load_family(&file)?;
            let (report, _) = verify_family(&family, audit)?;
            print!("{}", report.to_json());
            Ok(report.exit_code() as u8)
        }
        Command::Bounds { n_min, n_max, json } => {
            let rows = bounds::bounds_table(n_min, n_max).map_err(Failure::input)?;
            if json {
                let values: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "n": r.n,
                            "lemma2_min_k": r.lemma2_min_k.to_string(),
                            "theorem_min_k": r.theorem_min_k.to_string(),
                            "upper_k": r.upper_k.to_string(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&values).expect("rows serialize")
                );
            } else {
                print!("{}", bounds::format_table(&rows));
            }
            Ok(0)
        }
        Command::Split {
            file,
            epsilon,
            seed,
            out,
            report,
        } => {
            let family = load_family(&file)?;
            let epsilon =
                parse_rat(&epsilon).map_err(|e| Failure::input(format!("--epsilon: {e}")))?;
            let (result, split) =
                split_to_simple(&family, &epsilon, seed).map_err(|e| match e {
                    polyvenn::transform::TransformError::Arrangement(a) => Failure::from(a),
                    other => Failure {
                        code: EXIT_NOT_VENN,
                        message: other.to_string(),
                    },
                })?;
            eprintln!(
                "split {} vertices into {}; faces {} -> {}; {} steps",
                split.vertices_before,
                split.vertices_after,
                split.faces_before,
                split.faces_after,
                split.steps.len()
            );
            if let Some(path) = report {
                let text =
                    serde_json::to_string_pretty(&split).expect("split report serializes") + "\n";
                emit(Some(&path), &text)?;
            }
            emit(
                out.as_deref(),
                &FamilyDocument::from_family(&result).to_json(),
            )?;
            Ok(0)
        }
        Command::Search { config, out, quiet } => {
            let text = read(&config)?;
            let config = SearchConfigDocument::parse(&text)
                .and_then(|doc| doc.to_config())
                .map_err(|e| Failure::input(format!("{}: {e}", config.display())))?;
            let observer = |event: &ProgressEvent| {
                if !quiet {
                    eprintln!(
                        "walker {} iteration {} deficiency {} best {} temperature {:.4}",
                        event.walker,
                        event.iteration,
                        event.deficiency,
                        event.best_deficiency,
                        event.temperature
                    );
                }
            };
            let outcome = anneal(&config, &observer, None).map_err(Failure::input)?;
            let best = outcome.best();
            eprintln!(
                "best deficiency {} at iteration {} (walker {})",
                best.deficiency, best.iteration, outcome.walker
            );
            let doc = FamilyDocument::symmetric(&best.generator, config.n, config.digits);
            emit(out.as_deref(), &doc.to_json())?;
            Ok(if best.deficiency == 0 {
                0
            } else {
                EXIT_NOT_VENN
            })
        }
        Command::Render {
            file,
            shade,
            width,
            out,
        } => {
            let family = load_family(&file)?;
            let arrangement = if shade {
                Some(Arrangement::build(&family)?)
            } else {
                None
            };
            let options = RenderOptions {
                width,
                shade_faces: shade,
            };
            emit(
                out.as_deref(),
                &render_svg(&family, arrangement.as_ref(), options),
            )?;
            Ok(0)
        }
        Command::Serve { port } => {
            let runtime = tokio::runtime::Runtime::new().map_err(Failure::input)?;
            eprintln!("listening on port {port}");
            runtime
                .block_on(polyvenn::server::serve(port))
                .map_err(Failure::input)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
