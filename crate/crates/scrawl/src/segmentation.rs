//! Projection-profile segmentation: clip empty margins, cut the page into
//! lines at blank rows, cut lines into glyphs at blank columns, and measure
//! the blank gap preceding each glyph.

use crate::error::{Error, Result};
use crate::imaging::BinaryImage;

/// Inclusive bounding box in source-image coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BBox {
    pub row_min: usize,
    pub row_max: usize,
    pub col_min: usize,
    pub col_max: usize,
}

/// One text line cut from a page, clipped tight to its ink.
#[derive(Debug, Clone)]
pub struct LineSegment {
    pub image: BinaryImage,
    /// First row of the line's blank-row-delimited band, in page coordinates.
    pub row_offset: usize,
    /// Column of the line's leftmost ink, in page coordinates.
    pub col_offset: usize,
}

/// One glyph cut from a line, clipped tight on all four sides.
#[derive(Debug, Clone)]
pub struct Glyph {
    pub image: BinaryImage,
    /// Blank columns between the previous glyph's last inked column and this
    /// glyph's first; 0 for the first glyph of a line.
    pub space_before: usize,
    /// Column of the glyph's leftmost ink, in line coordinates.
    pub col_offset: usize,
    /// Row of the glyph's topmost ink, in line coordinates.
    pub row_offset: usize,
}

/// Crop to the minimal bounding box of the foreground.
pub fn clip(img: &BinaryImage) -> Result<(BinaryImage, BBox)> {
    let mut bbox: Option<BBox> = None;
    for r in 0..img.height() {
        for c in 0..img.width() {
            if img.get(r, c) == 1 {
                bbox = Some(match bbox {
                    None => BBox {
                        row_min: r,
                        row_max: r,
                        col_min: c,
                        col_max: c,
                    },
                    Some(b) => BBox {
                        row_min: b.row_min.min(r),
                        row_max: b.row_max.max(r),
                        col_min: b.col_min.min(c),
                        col_max: b.col_max.max(c),
                    },
                });
            }
        }
    }
    let b = bbox.ok_or(Error::NothingToClip)?;
    Ok((img.crop(b.row_min, b.row_max, b.col_min, b.col_max), b))
}

/// Maximal runs of inked rows become lines, top to bottom; each line is then
/// clipped. A blank page yields an empty list.
pub fn split_lines(page: &BinaryImage) -> Vec<LineSegment> {
    let mut lines = Vec::new();
    for (start, end) in inked_runs((0..page.height()).map(|r| page.row_sum(r) > 0)) {
        let band = page.crop(start, end, 0, page.width() - 1);
        let (image, bbox) = clip(&band).expect("run rows contain ink");
        lines.push(LineSegment {
            image,
            row_offset: start,
            col_offset: bbox.col_min,
        });
    }
    lines
}

/// Maximal runs of inked columns become glyphs, left to right; each glyph is
/// clipped on all four sides and carries the blank-column gap before it.
pub fn split_glyphs(line: &LineSegment) -> Vec<Glyph> {
    let img = &line.image;
    let mut glyphs: Vec<Glyph> = Vec::new();
    let mut prev_end: Option<usize> = None;
    for (start, end) in inked_runs((0..img.width()).map(|c| img.column_sum(c) > 0)) {
        let strip = img.crop(0, img.height() - 1, start, end);
        let (image, bbox) = clip(&strip).expect("run columns contain ink");
        glyphs.push(Glyph {
            image,
            space_before: prev_end.map_or(0, |e| start - e - 1),
            col_offset: start,
            row_offset: bbox.row_min,
        });
        prev_end = Some(end);
    }
    glyphs
}

/// Maximal runs of consecutive `true` positions, as inclusive (start, end).
fn inked_runs(flags: impl Iterator<Item = bool>) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    for (i, inked) in flags.enumerate() {
        match (inked, current) {
            (true, None) => current = Some((i, i)),
            (true, Some((s, _))) => current = Some((s, i)),
            (false, Some(run)) => {
                runs.push(run);
                current = None;
            }
            (false, None) => {}
        }
    }
    if let Some(run) = current {
        runs.push(run);
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img_from_rows(rows: &[&[u8]]) -> BinaryImage {
        let width = rows[0].len();
        let data: Vec<u8> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        BinaryImage::new(width, rows.len(), data)
    }

    #[test]
    fn clip_single_pixel() {
        let mut img = BinaryImage::zeros(10, 10);
        img.set(4, 7, 1);
        let (clipped, bbox) = clip(&img).unwrap();
        assert_eq!((clipped.width(), clipped.height()), (1, 1));
        assert_eq!(
            bbox,
            BBox {
                row_min: 4,
                row_max: 4,
                col_min: 7,
                col_max: 7
            }
        );
    }

    #[test]
    fn clip_is_identity_on_tight_image() {
        let img = img_from_rows(&[&[1, 0], &[0, 1]]);
        let (clipped, bbox) = clip(&img).unwrap();
        assert_eq!(clipped, img);
        assert_eq!(
            bbox,
            BBox {
                row_min: 0,
                row_max: 1,
                col_min: 0,
                col_max: 1
            }
        );
    }

    #[test]
    fn clip_rejects_blank_image() {
        assert!(matches!(clip(&BinaryImage::zeros(3, 3)), Err(Error::NothingToClip)));
    }

    #[test]
    fn clip_idempotent() {
        let img = img_from_rows(&[&[0, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
        let (once, _) = clip(&img).unwrap();
        let (twice, bbox) = clip(&once).unwrap();
        assert_eq!(once, twice);
        assert_eq!(bbox.row_max, once.height() - 1);
        assert_eq!(bbox.col_max, once.width() - 1);
    }

    #[test]
    fn split_lines_two_bands() {
        // Ink in rows 0-1 and 4-5, rows 2-3 blank.
        let img = img_from_rows(&[
            &[0, 1, 1],
            &[0, 1, 0],
            &[0, 0, 0],
            &[0, 0, 0],
            &[1, 1, 0],
            &[1, 0, 0],
        ]);
        let lines = split_lines(&img);
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].row_offset, 0);
        assert_eq!(lines[1].row_offset, 4);
        assert_eq!(lines[0].col_offset, 1);
        assert_eq!(lines[1].col_offset, 0);
        assert_eq!((lines[0].image.width(), lines[0].image.height()), (2, 2));
    }

    #[test]
    fn split_lines_degenerate_cases() {
        let solid = img_from_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(split_lines(&solid).len(), 1);
        assert!(split_lines(&BinaryImage::zeros(4, 4)).is_empty());
    }

    #[test]
    fn split_glyphs_measures_gap() {
        // Columns: ink 0-2, blank 3-5, ink 6-7.
        let img = img_from_rows(&[&[1, 1, 1, 0, 0, 0, 1, 1], &[1, 0, 1, 0, 0, 0, 0, 1]]);
        let line = LineSegment {
            image: img,
            row_offset: 0,
            col_offset: 0,
        };
        let glyphs = split_glyphs(&line);
        assert_eq!(glyphs.len(), 2);
        assert_eq!(glyphs[0].space_before, 0);
        assert_eq!(glyphs[1].space_before, 3);
        assert_eq!(glyphs[0].col_offset, 0);
        assert_eq!(glyphs[1].col_offset, 6);
    }

    #[test]
    fn split_glyphs_single_block() {
        let line = LineSegment {
            image: img_from_rows(&[&[1, 1], &[1, 1]]),
            row_offset: 0,
            col_offset: 0,
        };
        let glyphs = split_glyphs(&line);
        assert_eq!(glyphs.len(), 1);
        assert_eq!(glyphs[0].space_before, 0);
    }

    #[test]
    fn split_glyphs_reclips_heights_individually() {
        // Second glyph only occupies the bottom row.
        let img = img_from_rows(&[&[1, 0, 0], &[1, 0, 1]]);
        let line = LineSegment {
            image: img,
            row_offset: 0,
            col_offset: 0,
        };
        let glyphs = split_glyphs(&line);
        assert_eq!(glyphs[0].image.height(), 2);
        assert_eq!(glyphs[1].image.height(), 1);
        assert_eq!(glyphs[1].row_offset, 1);
        for g in &glyphs {
            let (reclipped, _) = clip(&g.image).unwrap();
            assert_eq!(reclipped, g.image);
        }
    }
}
