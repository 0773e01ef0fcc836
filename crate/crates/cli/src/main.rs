//! `lefschetz`: analyse GKM fixed-point data for hard Lefschetz.
//!
//! Exit codes: 0 on a clean analysis, 2 when the constant-level criterion
//! does not apply (the report is still written), 1 on input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz_core::catalog;
use lefschetz_core::exact::parse_rational;
use lefschetz_core::gkm::{validate_document, GkmDocument, GkmGraph};
use lefschetz_core::render::{render_svg, Projection};
use lefschetz_core::report::{analyze, AnalysisOptions};

#[derive(Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "Hard Lefschetz checks from GKM fixed-point data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis and write a report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Shift the moment map so its minimum is zero.
        #[arg(long)]
        shift_min: bool,
        /// Include per-stage timings (makes the report run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the moment image as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        /// Projection to the plane for rank > 2, e.g. "1,0,1;0,1,1".
        #[arg(long, allow_hyphen_values = true)]
        project: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every invariant of a document and list the failures.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a built-in example as a JSON document.
    Emit {
        #[arg(long)]
        example: String,
        #[arg(long, allow_hyphen_values = true)]
        scale: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// JSON GKM document.
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    path: Option<PathBuf>,
    /// Built-in example: su3, so5, cpN, sphere_productN, hirzebruchK.
    #[arg(long)]
    example: Option<String>,
    /// Circle direction, e.g. "-1,1". Defaults to the example's own choice.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Rescale all moment positions by p/q.
    #[arg(long, allow_hyphen_values = true)]
    scale: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

struct Loaded {
    document: GkmDocument,
    default_xi: Option<Vec<i64>>,
}

impl Input {
    fn load(&self) -> Result<Loaded> {
        let (document, default_xi) = match (&self.path, &self.example) {
            (_, Some(name)) => {
                let (doc, xi) =
                    catalog::lookup(name).ok_or_else(|| anyhow!("unknown example {name:?}"))?;
                (doc, Some(xi))
            }
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let doc = GkmDocument::from_json(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                (doc, None)
            }
            (None, None) => bail!("give a document path or --example"),
        };
        Ok(Loaded {
            document,
            default_xi,
        })
    }

    fn graph(&self) -> Result<(GkmGraph, Option<Vec<i64>>)> {
        let loaded = self.load()?;
        let mut g = GkmGraph::from_document(&loaded.document)?;
        if let Some(s) = &self.scale {
            g = g.scaled(&parse_rational(s)?)?;
        }
        let xi = match &self.xi {
            Some(text) => Some(parse_xi(text)?),
            None => loaded.default_xi,
        };
        Ok((g, xi))
    }
}

fn parse_xi(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .with_context(|| format!("bad --xi entry {x:?}"))
        })
        .collect()
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            input,
            format,
            shift_min,
            timings,
            out,
        } => {
            let (g, xi) = input.graph()?;
            let xi = xi.ok_or_else(|| anyhow!("--xi is required for documents"))?;
            let report = analyze(&g, &xi, &AnalysisOptions { shift_min, timings })?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            write_output(out.as_ref(), &text)?;
            Ok(if report.hypothesis.constant_on_levels {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Render {
            input,
            project,
            out,
        } => {
            let (g, xi) = input.graph()?;
            let projection = project.as_deref().map(Projection::parse).transpose()?;
            let svg = render_svg(&g, xi.as_deref(), projection.as_ref())?;
            write_output(out.as_ref(), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { input, format } => {
            let loaded = input.load()?;
            let results = validate_document(&loaded.document);
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&results)?;
                    s.push('\n');
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for r in &results {
                        s.push_str(&format!(
                            "{} {}\n",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.invariant
                        ));
                        for issue in &r.issues {
                            s.push_str(&format!("     {}: {}\n", issue.subject, issue.detail));
                        }
                    }
                    s
                }
            };
            write_output(None, &text)?;
            Ok(if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Emit {
            example,
            scale,
            out,
        } => {
            let (doc, _) =
                catalog::lookup(&example).ok_or_else(|| anyhow!("unknown example {example:?}"))?;
            let text = match scale {
                Some(s) => GkmGraph::from_document(&doc)?
                    .scaled(&parse_rational(&s)?)?
                    .to_json(),
                None => doc.to_json(),
            };
            write_output(out.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
