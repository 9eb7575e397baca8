use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scrawl::error::Error;
use scrawl::imaging::{self, Connectivity};
use scrawl::pipeline::{self, PipelineConfig, RenderSpec};
use scrawl::templates;

#[derive(Parser)]
#[command(name = "scrawl", version, about = "Handwritten-page-to-text by template correlation matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recognize a scanned page image and write the transcribed text.
    Recognize {
        /// Input page image (PNG or BMP).
        #[arg(long)]
        input: PathBuf,
        /// Template manifest (TSV: label<TAB>relative/path.png).
        #[arg(long)]
        templates: PathBuf,
        /// Output text file.
        #[arg(long)]
        output: PathBuf,
        /// Components smaller than this many pixels are removed as noise.
        #[arg(long = "min-component", default_value_t = 15)]
        min_component: usize,
        /// Gaps at or above this fraction of a line's maximum gap become spaces.
        #[arg(long = "space-ratio", default_value_t = 0.75)]
        space_ratio: f64,
        /// Pixel adjacency for noise components: 4 or 8.
        #[arg(long, default_value_t = 8)]
        connectivity: u8,
        /// Write per-glyph PNG crops and a TSV sidecar into this directory.
        #[arg(long = "debug-dump")]
        debug_dump: Option<PathBuf>,
        /// Write per-glyph JSON-lines diagnostics (label, score, runners-up).
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Render text as a page image using the template store as the font.
    Render {
        /// Text to render; 62-class alphabet plus spaces and newlines.
        #[arg(long)]
        text: String,
        /// Template manifest (TSV: label<TAB>relative/path.png).
        #[arg(long)]
        templates: PathBuf,
        /// Output page image (PNG or BMP).
        #[arg(long)]
        output: PathBuf,
        /// Blank columns between letters of a word.
        #[arg(long = "glyph-gap", default_value_t = 3)]
        glyph_gap: usize,
        /// Blank columns for a space character.
        #[arg(long = "word-gap", default_value_t = 12)]
        word_gap: usize,
        /// Blank rows between lines.
        #[arg(long = "line-gap", default_value_t = 10)]
        line_gap: usize,
        /// Blank border around the page.
        #[arg(long, default_value_t = 5)]
        margin: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> scrawl::Result<()> {
    match cli.command {
        Command::Recognize {
            input,
            templates,
            output,
            min_component,
            space_ratio,
            connectivity,
            debug_dump,
            diagnostics,
        } => {
            let connectivity = match connectivity {
                4 => Connectivity::Four,
                8 => Connectivity::Eight,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "connectivity must be 4 or 8, got {other}"
                    )))
                }
            };
            let cfg = PipelineConfig {
                input_path: input,
                templates_manifest: templates,
                output_path: output,
                min_component_size: min_component,
                space_ratio,
                connectivity,
                debug_dump,
                diagnostics,
            };
            pipeline::run_pipeline(&cfg)?;
            Ok(())
        }
        Command::Render {
            text,
            templates: manifest,
            output,
            glyph_gap,
            word_gap,
            line_gap,
            margin,
        } => {
            let spec = RenderSpec {
                text,
                glyph_gap,
                word_gap,
                line_gap,
                margin,
            };
            spec.validate(scrawl::recognition::DEFAULT_SPACE_RATIO)?;
            let store = templates::load_templates(&manifest)?;
            let page = pipeline::render_page(&spec, &store)?;
            imaging::save_binary_image(&page, &output)
        }
    }
}

/// 0 success, 1 i/o, 2 invalid config or manifest, 3 degenerate image.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } | Error::UndecodableImage { .. } => 1,
        Error::InvalidManifest(_)
        | Error::InvalidConfig(_)
        | Error::MissingLabel(_)
        | Error::DuplicateLabel(_)
        | Error::BlankTemplate(_)
        | Error::IdenticalTemplates(_, _)
        | Error::UnrenderableCharacter(_) => 2,
        Error::EmptyImage
        | Error::ConstantImage
        | Error::NothingToClip
        | Error::EmptyGlyph
        | Error::DimensionMismatch(..) => 3,
    }
}
