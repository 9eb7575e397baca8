//! Deterministic synthetic template stores for round-trip testing.
//!
//! Each label gets a pseudorandom 42x24 ink pattern with all four corners
//! inked, so clipping and normalization leave the template untouched and a
//! page rendered from the store segments back into the exact same bitmaps.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::{self, BinaryImage};
use crate::templates::{class_labels, TemplateStore, TEMPLATE_COLS, TEMPLATE_ROWS};

/// Build a 62-class store of deterministic pseudorandom patterns.
pub fn synthetic_store(seed: u64) -> TemplateStore {
    let entries: Vec<(char, BinaryImage)> = class_labels()
        .map(|label| (label, synthetic_template(seed, label)))
        .collect();
    let store = TemplateStore::from_entries(entries).expect("generator covers all classes");
    store
        .check_pairwise_distinct()
        .expect("1008-bit random patterns never collide");
    store
}

/// One connected stroke pattern: spokes from the center to all four corners
/// (so clipping is the identity) plus a label-seeded random walk. A single
/// component well over the despeckle limit, so denoising never nibbles at
/// rendered glyphs.
fn synthetic_template(seed: u64, label: char) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(label as u64));
    let mut img = BinaryImage::zeros(TEMPLATE_COLS, TEMPLATE_ROWS);
    let center = (TEMPLATE_ROWS as f64 / 2.0, TEMPLATE_COLS as f64 / 2.0);
    for corner in [
        (0.0, 0.0),
        (0.0, (TEMPLATE_COLS - 1) as f64),
        ((TEMPLATE_ROWS - 1) as f64, 0.0),
        ((TEMPLATE_ROWS - 1) as f64, (TEMPLATE_COLS - 1) as f64),
    ] {
        let steps = 64;
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let r = (center.0 + t * (corner.0 - center.0)).round() as usize;
            let c = (center.1 + t * (corner.1 - center.1)).round() as usize;
            img.set(r.min(TEMPLATE_ROWS - 1), c.min(TEMPLATE_COLS - 1), 1);
        }
    }
    let mut r = TEMPLATE_ROWS as isize / 2;
    let mut c = TEMPLATE_COLS as isize / 2;
    for _ in 0..400 {
        img.set(r as usize, c as usize, 1);
        r = (r + rng.gen_range(-1..=1)).clamp(0, TEMPLATE_ROWS as isize - 1);
        c = (c + rng.gen_range(-1..=1)).clamp(0, TEMPLATE_COLS as isize - 1);
    }
    img
}

/// Write the store as PNG files plus a TSV manifest under `dir`, returning
/// the manifest path. File names spell the label out (`upper_A.png`,
/// `lower_a.png`, `digit_7.png`) so the set survives case-insensitive
/// filesystems.
pub fn write_store_manifest(store: &TemplateStore, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut manifest = String::from("# label\tfile\n");
    for (label, template) in store.iter() {
        let file = template_file_name(label);
        imaging::save_binary_image(template, &dir.join(&file))?;
        manifest.push_str(&format!("{label}\t{file}\n"));
    }
    let manifest_path = dir.join("templates.tsv");
    std::fs::write(&manifest_path, manifest).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest_path)
}

fn template_file_name(label: char) -> String {
    match label {
        'A'..='Z' => format!("upper_{label}.png"),
        'a'..='z' => format!("lower_{label}.png"),
        _ => format!("digit_{label}.png"),
    }
}
