//! End-to-end orchestration: decode, preprocess, segment, classify, assemble,
//! write. Also the render harness that turns text back into a page image.

use std::io::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::imaging::{self, BinaryImage, Connectivity};
use crate::recognition::{self, LineTranscript};
use crate::segmentation::{self, Glyph};
use crate::templates::{self, TemplateStore, TEMPLATE_ROWS};

pub const DEFAULT_MIN_COMPONENT_SIZE: usize = 15;

/// Everything one `recognize` run needs.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub templates_manifest: PathBuf,
    pub output_path: PathBuf,
    pub min_component_size: usize,
    pub space_ratio: f64,
    pub connectivity: Connectivity,
    pub debug_dump: Option<PathBuf>,
    pub diagnostics: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(
        input_path: impl Into<PathBuf>,
        templates_manifest: impl Into<PathBuf>,
        output_path: impl Into<PathBuf>,
    ) -> Self {
        PipelineConfig {
            input_path: input_path.into(),
            templates_manifest: templates_manifest.into(),
            output_path: output_path.into(),
            min_component_size: DEFAULT_MIN_COMPONENT_SIZE,
            space_ratio: recognition::DEFAULT_SPACE_RATIO,
            connectivity: Connectivity::Eight,
            debug_dump: None,
            diagnostics: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.space_ratio > 0.0 && self.space_ratio <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "space ratio must be in (0, 1], got {}",
                self.space_ratio
            )));
        }
        Ok(())
    }
}

/// Layout parameters for rendering text from a template store.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub text: String,
    pub glyph_gap: usize,
    pub word_gap: usize,
    pub line_gap: usize,
    pub margin: usize,
}

impl RenderSpec {
    pub fn new(text: impl Into<String>) -> Self {
        RenderSpec {
            text: text.into(),
            glyph_gap: 3,
            word_gap: 12,
            line_gap: 10,
            margin: 5,
        }
    }

    /// Rendered word gaps must clear the word-break threshold that `recognize`
    /// will apply at `space_ratio`.
    pub fn validate(&self, space_ratio: f64) -> Result<()> {
        if self.line_gap < 1 {
            return Err(Error::InvalidConfig("line gap must be at least 1".into()));
        }
        if (self.word_gap as f64) < self.glyph_gap as f64 / space_ratio {
            return Err(Error::InvalidConfig(format!(
                "word gap {} is too small for glyph gap {} at space ratio {}",
                self.word_gap, self.glyph_gap, space_ratio
            )));
        }
        Ok(())
    }
}

/// Segment and classify a denoised binary page into line transcripts.
pub fn transcribe_page(
    page: &BinaryImage,
    store: &TemplateStore,
    space_ratio: f64,
) -> Result<Vec<LineTranscript>> {
    let mut transcripts = Vec::new();
    for line in segmentation::split_lines(page) {
        let mut results = Vec::new();
        for glyph in segmentation::split_glyphs(&line) {
            let classification = recognition::classify(&glyph.image, store)?;
            results.push((classification, glyph.space_before));
        }
        transcripts.push(recognition::assemble_line(results, space_ratio));
    }
    Ok(transcripts)
}

/// Run the whole pipeline and write the output file. Returns the text that
/// was written. A page with no separable ink yields an empty file.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<String> {
    cfg.validate()?;
    let store = templates::load_templates(&cfg.templates_manifest)?;
    let gray = imaging::load_gray_image(&cfg.input_path)?;

    let transcripts = match imaging::otsu_threshold(&gray) {
        Ok(threshold) => {
            let binary = imaging::binarize(&gray, threshold);
            let denoised =
                imaging::remove_small_components(&binary, cfg.min_component_size, cfg.connectivity);
            if let Some(dir) = &cfg.debug_dump {
                dump_debug_glyphs(&denoised, dir)?;
            }
            transcribe_page(&denoised, &store, cfg.space_ratio)?
        }
        // Constant page: no threshold separates ink, treat as blank.
        Err(Error::ConstantImage) => Vec::new(),
        Err(e) => return Err(e),
    };

    if let Some(path) = &cfg.diagnostics {
        write_diagnostics(&transcripts, path, &store)?;
    }

    let text = recognition::assemble_page(&transcripts);
    std::fs::write(&cfg.output_path, &text).map_err(|e| Error::io(&cfg.output_path, e))?;
    Ok(text)
}

/// Paste templates left-to-right per line: `glyph_gap` blank columns between
/// letters, `word_gap` for each space character, lines stacked `line_gap`
/// rows apart inside a `margin` border.
pub fn render_page(spec: &RenderSpec, store: &TemplateStore) -> Result<BinaryImage> {
    struct PlacedLine {
        glyphs: Vec<(usize, BinaryImage)>, // (x offset, template)
        width: usize,
    }

    let mut lines = Vec::new();
    for text_line in spec.text.split('\n') {
        let mut glyphs: Vec<(usize, BinaryImage)> = Vec::new();
        let mut cursor = 0usize;
        let mut pending_gap = 0usize;
        for ch in text_line.chars() {
            if ch == ' ' {
                pending_gap = if glyphs.is_empty() { 0 } else { spec.word_gap };
                continue;
            }
            let template = store
                .get(ch)
                .ok_or(Error::UnrenderableCharacter(ch))?
                .clone();
            if !glyphs.is_empty() {
                cursor += pending_gap;
            }
            let width = template.width();
            glyphs.push((cursor, template));
            cursor += width;
            pending_gap = spec.glyph_gap;
        }
        lines.push(PlacedLine {
            glyphs,
            width: cursor,
        });
    }

    let content_width = lines.iter().map(|l| l.width).max().unwrap_or(0);
    let line_count = lines.iter().filter(|l| !l.glyphs.is_empty()).count();
    let content_height = if line_count == 0 {
        0
    } else {
        line_count * TEMPLATE_ROWS + (line_count - 1) * spec.line_gap
    };
    let width = (content_width + 2 * spec.margin).max(1);
    let height = (content_height + 2 * spec.margin).max(1);

    let mut page = BinaryImage::zeros(width, height);
    let mut y = spec.margin;
    for line in &lines {
        if line.glyphs.is_empty() {
            continue;
        }
        for (x, template) in &line.glyphs {
            page.paste(template, y, spec.margin + x);
        }
        y += TEMPLATE_ROWS + spec.line_gap;
    }
    Ok(page)
}

fn dump_debug_glyphs(page: &BinaryImage, dir: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut sidecar = String::new();
    for (li, line) in segmentation::split_lines(page).iter().enumerate() {
        for (gi, glyph) in segmentation::split_glyphs(line).iter().enumerate() {
            let Glyph {
                image,
                space_before,
                col_offset,
                ..
            } = glyph;
            imaging::save_binary_image(image, &dir.join(format!("line{li:03}_glyph{gi:03}.png")))?;
            sidecar.push_str(&format!("{li}\t{gi}\t{col_offset}\t{space_before}\n"));
        }
    }
    let sidecar_path = dir.join("glyphs.tsv");
    std::fs::write(&sidecar_path, sidecar).map_err(|e| Error::io(&sidecar_path, e))
}

#[derive(Serialize)]
struct GlyphDiagnostics {
    line: usize,
    glyph: usize,
    label: char,
    score: f64,
    runners_up: Vec<RunnerUp>,
}

#[derive(Serialize)]
struct RunnerUp {
    label: char,
    score: f64,
}

fn write_diagnostics(
    transcripts: &[LineTranscript],
    path: &std::path::Path,
    store: &TemplateStore,
) -> Result<()> {
    let labels: Vec<char> = store.iter().map(|(l, _)| l).collect();
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    for (li, transcript) in transcripts.iter().enumerate() {
        for (gi, (classification, _)) in transcript.glyph_results.iter().enumerate() {
            let mut ranked: Vec<(char, f64)> = labels
                .iter()
                .copied()
                .zip(classification.scores.iter().copied())
                .collect();
            ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
            let runners_up = ranked
                .iter()
                .skip(1)
                .take(3)
                .map(|&(label, score)| RunnerUp { label, score })
                .collect();
            let record = GlyphDiagnostics {
                line: li,
                glyph: gi,
                label: classification.label,
                score: classification.score,
                runners_up,
            };
            let json = serde_json::to_string(&record).expect("diagnostics serialize");
            writeln!(file, "{json}").map_err(|e| Error::io(path, e))?;
        }
    }
    Ok(())
}
