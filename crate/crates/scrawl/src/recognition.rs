//! Correlation matching against the template store and assembly of
//! recognized labels into words and lines.

use crate::error::{Error, Result};
use crate::imaging::BinaryImage;
use crate::templates::{normalize_glyph, TemplateStore};

/// Default word-break ratio: gaps at or above this fraction of the line's
/// maximum gap become spaces.
pub const DEFAULT_SPACE_RATIO: f64 = 0.75;

/// Result of matching one glyph against the whole store.
#[derive(Debug, Clone)]
pub struct Classification {
    pub label: char,
    /// Correlation of the winning template; equals the max of `scores`.
    pub score: f64,
    /// Per-template correlations in store order.
    pub scores: Vec<f64>,
}

/// One recognized line: the per-glyph results and the assembled text.
#[derive(Debug, Clone)]
pub struct LineTranscript {
    pub glyph_results: Vec<(Classification, usize)>,
    pub text: String,
}

/// Pearson correlation over two equal-length sample slices.
///
/// If either slice has zero variance the coefficient is undefined; this
/// returns 1 when both slices are constant and elementwise equal, else 0.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let dx = x - mean_a;
        let dy = y - mean_b;
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    if var_a == 0.0 || var_b == 0.0 {
        let both_constant_equal = var_a == 0.0 && var_b == 0.0 && a.first() == b.first();
        return if both_constant_equal { 1.0 } else { 0.0 };
    }
    cov / (var_a * var_b).sqrt()
}

/// 2-D correlation coefficient between two same-shape binary images.
pub fn corr2(a: &BinaryImage, b: &BinaryImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    let fa: Vec<f64> = a.data().iter().map(|&v| f64::from(v)).collect();
    let fb: Vec<f64> = b.data().iter().map(|&v| f64::from(v)).collect();
    Ok(pearson(&fa, &fb))
}

/// Normalize the glyph to template shape and pick the argmax correlation over
/// the store. Ties go to the earlier label in store order.
pub fn classify(glyph: &BinaryImage, store: &TemplateStore) -> Result<Classification> {
    let normalized = normalize_glyph(glyph)?;
    let mut scores = Vec::with_capacity(store.len());
    let mut best: Option<(char, f64)> = None;
    for (label, template) in store.iter() {
        let score = corr2(&normalized, template).expect("store templates share glyph shape");
        scores.push(score);
        match best {
            Some((_, s)) if score <= s => {}
            _ => best = Some((label, score)),
        }
    }
    let (label, score) = best.expect("store is never empty");
    Ok(Classification { label, score, scores })
}

/// Word-break threshold at the default 75% ratio.
pub fn word_break_threshold(spaces: &[usize]) -> f64 {
    word_break_threshold_with_ratio(spaces, DEFAULT_SPACE_RATIO)
}

/// `ratio` times the maximum gap; +inf (no breaks) when the list is empty or
/// all zero.
pub fn word_break_threshold_with_ratio(spaces: &[usize], ratio: f64) -> f64 {
    match spaces.iter().max() {
        Some(&max) if max > 0 => ratio * max as f64,
        _ => f64::INFINITY,
    }
}

/// Assemble one line's glyph results into text, inserting a space before any
/// glyph whose preceding gap reaches the word-break threshold.
pub fn assemble_line(results: Vec<(Classification, usize)>, ratio: f64) -> LineTranscript {
    let gaps: Vec<usize> = results.iter().skip(1).map(|&(_, sp)| sp).collect();
    let threshold = word_break_threshold_with_ratio(&gaps, ratio);
    let mut text = String::new();
    for (i, (classification, space_before)) in results.iter().enumerate() {
        if i > 0 && *space_before as f64 >= threshold {
            text.push(' ');
        }
        text.push(classification.label);
    }
    LineTranscript {
        glyph_results: results,
        text,
    }
}

/// Join line texts with newlines; non-empty output ends in a newline.
pub fn assemble_page(lines: &[LineTranscript]) -> String {
    if lines.is_empty() {
        return String::new();
    }
    let mut text = lines.iter().map(|l| l.text.as_str()).collect::<Vec<_>>().join("\n");
    text.push('\n');
    text
}
