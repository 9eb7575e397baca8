//! The 62-class template database: manifest loading, validation, and
//! normalization of glyphs to the fixed template shape.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imaging::{self, BinaryImage};
use crate::segmentation;

/// Template height in pixels (42 rows).
pub const TEMPLATE_ROWS: usize = 42;
/// Template width in pixels (24 columns).
pub const TEMPLATE_COLS: usize = 24;
/// Number of classes: A-Z, a-z, 0-9.
pub const CLASS_COUNT: usize = 62;

/// Canonical label order: A-Z, then a-z, then 0-9. This order also breaks
/// classification ties.
pub fn class_labels() -> impl Iterator<Item = char> {
    ('A'..='Z').chain('a'..='z').chain('0'..='9')
}

/// Immutable label -> template map in canonical order. Every template is
/// exactly 42x24 with at least one ink pixel.
#[derive(Debug, Clone)]
pub struct TemplateStore {
    entries: Vec<(char, BinaryImage)>,
}

impl TemplateStore {
    /// Build a store from one template per class. Validates completeness,
    /// shape, and non-blankness; entries are reordered canonically.
    pub fn from_entries(entries: impl IntoIterator<Item = (char, BinaryImage)>) -> Result<Self> {
        let mut by_label: HashMap<char, BinaryImage> = HashMap::new();
        for (label, img) in entries {
            if by_label.insert(label, img).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
        }
        let mut ordered = Vec::with_capacity(CLASS_COUNT);
        for label in class_labels() {
            let img = by_label.remove(&label).ok_or(Error::MissingLabel(label))?;
            validate_template(label, &img)?;
            ordered.push((label, img));
        }
        Ok(TemplateStore { entries: ordered })
    }

    /// Build a store without the one-per-class checks. Labels may repeat and
    /// the count is unconstrained; shapes are still validated. Intended for
    /// benchmarking against enlarged stores.
    pub fn from_entries_unchecked(entries: Vec<(char, BinaryImage)>) -> Result<Self> {
        for (label, img) in &entries {
            validate_template(*label, img)?;
        }
        Ok(TemplateStore { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: char) -> Option<&BinaryImage> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, img)| img)
    }

    /// Iterate entries in store order.
    pub fn iter(&self) -> impl Iterator<Item = (char, &BinaryImage)> {
        self.entries.iter().map(|(l, img)| (*l, img))
    }

    /// Error if any two templates are bit-identical; identical templates make
    /// the argmax ambiguous.
    pub fn check_pairwise_distinct(&self) -> Result<()> {
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                if self.entries[i].1 == self.entries[j].1 {
                    return Err(Error::IdenticalTemplates(self.entries[i].0, self.entries[j].0));
                }
            }
        }
        Ok(())
    }
}

fn validate_template(label: char, img: &BinaryImage) -> Result<()> {
    if img.width() != TEMPLATE_COLS || img.height() != TEMPLATE_ROWS {
        return Err(Error::DimensionMismatch(
            img.width(),
            img.height(),
            TEMPLATE_COLS,
            TEMPLATE_ROWS,
        ));
    }
    if img.foreground_count() == 0 {
        return Err(Error::BlankTemplate(label));
    }
    Ok(())
}

/// Clip the glyph and stretch it to 42x24 by nearest-neighbor sampling.
/// Aspect ratio is not preserved.
pub fn normalize_glyph(img: &BinaryImage) -> Result<BinaryImage> {
    let (clipped, _) = segmentation::clip(img).map_err(|_| Error::EmptyGlyph)?;
    if clipped.width() == TEMPLATE_COLS && clipped.height() == TEMPLATE_ROWS {
        return Ok(clipped);
    }
    let mut data = Vec::with_capacity(TEMPLATE_ROWS * TEMPLATE_COLS);
    for r in 0..TEMPLATE_ROWS {
        let src_r = r * clipped.height() / TEMPLATE_ROWS;
        for c in 0..TEMPLATE_COLS {
            let src_c = c * clipped.width() / TEMPLATE_COLS;
            data.push(clipped.get(src_r, src_c));
        }
    }
    Ok(BinaryImage::new(TEMPLATE_COLS, TEMPLATE_ROWS, data))
}

/// Load a template store from a TSV manifest: `label<TAB>relative/path.png`,
/// UTF-8, no header, `#` comment lines allowed. Paths are resolved against
/// the manifest's directory. Each image is grayscaled, Otsu-binarized with
/// the ink-dark convention, clipped, and normalized to 42x24.
pub fn load_templates(manifest_path: &Path) -> Result<TemplateStore> {
    let content = std::fs::read_to_string(manifest_path)
        .map_err(|e| Error::io(manifest_path, e))?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));

    let mut entries = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label_field, rel_path) = line.split_once('\t').ok_or_else(|| {
            Error::InvalidManifest(format!("line {}: expected label<TAB>path", lineno + 1))
        })?;
        let mut chars = label_field.chars();
        let label = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(Error::InvalidManifest(format!(
                    "line {}: label must be a single character, got {label_field:?}",
                    lineno + 1
                )))
            }
        };
        if !class_labels().any(|l| l == label) {
            return Err(Error::InvalidManifest(format!(
                "line {}: {label:?} is not one of the 62 class labels",
                lineno + 1
            )));
        }
        entries.push((label, load_template_image(label, &base.join(rel_path))?));
    }

    let store = TemplateStore::from_entries(entries)?;
    store.check_pairwise_distinct()?;
    Ok(store)
}

fn load_template_image(label: char, path: &Path) -> Result<BinaryImage> {
    let gray = imaging::load_gray_image(path)?;
    let threshold = match imaging::otsu_threshold(&gray) {
        Ok(t) => t,
        // A constant template has no separable ink.
        Err(Error::ConstantImage) => return Err(Error::BlankTemplate(label)),
        Err(e) => return Err(e),
    };
    let binary = imaging::binarize(&gray, threshold);
    if binary.foreground_count() == 0 {
        return Err(Error::BlankTemplate(label));
    }
    normalize_glyph(&binary)
}
