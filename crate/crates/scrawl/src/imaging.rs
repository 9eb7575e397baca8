//! Preprocessing: grayscale conversion, automatic thresholding, binarization
//! and small-object removal.
//!
//! Binary images use the inverted convention throughout the crate: 1 marks
//! ink (foreground), 0 marks paper (background).

use std::collections::VecDeque;
use std::path::Path;

use crate::error::{Error, Result};

/// Rectangular grid of 8-bit intensity samples, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        assert_eq!(data.len(), width * height, "data length must be width * height");
        Ok(GrayImage { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.width + col]
    }
}

/// Rectangular grid of {0,1} values, row-major. 1 = ink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), width * height, "data length must be width * height");
        assert!(data.iter().all(|&v| v <= 1), "binary samples must be 0 or 1");
        BinaryImage { width, height, data }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            data: vec![0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(value <= 1);
        self.data[row * self.width + col] = value;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    /// Number of ink pixels in the whole image.
    pub fn foreground_count(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    /// Number of ink pixels in one column.
    pub fn column_sum(&self, col: usize) -> usize {
        (0..self.height).filter(|&r| self.get(r, col) == 1).count()
    }

    /// Number of ink pixels in one row.
    pub fn row_sum(&self, row: usize) -> usize {
        self.row(row).iter().filter(|&&v| v == 1).count()
    }

    /// Copy the inclusive rectangle [r0..=r1] x [c0..=c1] into a new image.
    pub fn crop(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BinaryImage {
        assert!(r0 <= r1 && r1 < self.height && c0 <= c1 && c1 < self.width);
        let (w, h) = (c1 - c0 + 1, r1 - r0 + 1);
        let mut data = Vec::with_capacity(w * h);
        for r in r0..=r1 {
            data.extend_from_slice(&self.row(r)[c0..=c1]);
        }
        BinaryImage {
            width: w,
            height: h,
            data,
        }
    }

    /// Paste `src` with its top-left corner at (row, col). Ink is ORed in.
    pub fn paste(&mut self, src: &BinaryImage, row: usize, col: usize) {
        assert!(row + src.height <= self.height && col + src.width <= self.width);
        for r in 0..src.height {
            for c in 0..src.width {
                if src.get(r, c) == 1 {
                    self.set(row + r, col + c, 1);
                }
            }
        }
    }
}

/// Neighbor adjacency used when labelling components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Connectivity::Eight => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }
}

/// Per-pixel component labels. 0 = background; components are numbered from 1
/// in raster-scan order of their first pixel.
#[derive(Debug, Clone)]
pub struct ComponentLabeling {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<u32>,
    /// component_sizes[l - 1] is the pixel count of component l.
    pub component_sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }
}

/// ITU-R BT.601 luma, rounded.
pub fn to_grayscale(rgb: &image::RgbImage) -> Result<GrayImage> {
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    if w == 0 || h == 0 {
        return Err(Error::EmptyImage);
    }
    let mut data = Vec::with_capacity(w * h);
    for px in rgb.pixels() {
        let [r, g, b] = px.0;
        let luma = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
        data.push(luma.round().clamp(0.0, 255.0) as u8);
    }
    GrayImage::new(w, h, data)
}

/// Otsu's threshold: the split {<= t} vs {> t} maximizing between-class
/// variance, smallest t on ties.
pub fn otsu_threshold(img: &GrayImage) -> Result<u8> {
    let mut histogram = [0u64; 256];
    for &v in img.data() {
        histogram[v as usize] += 1;
    }
    let total = img.data().len() as f64;
    let global_sum: f64 = histogram
        .iter()
        .enumerate()
        .map(|(v, &n)| v as f64 * n as f64)
        .sum();

    if histogram.iter().filter(|&&n| n > 0).count() < 2 {
        return Err(Error::ConstantImage);
    }

    let mut best_t = 0u8;
    let mut best_var = -1.0f64;
    let mut count_low = 0f64;
    let mut sum_low = 0f64;
    for t in 0..256usize {
        count_low += histogram[t] as f64;
        sum_low += t as f64 * histogram[t] as f64;
        let count_high = total - count_low;
        if count_low == 0.0 || count_high == 0.0 {
            continue;
        }
        let mean_low = sum_low / count_low;
        let mean_high = (global_sum - sum_low) / count_high;
        let between = count_low * count_high * (mean_low - mean_high).powi(2);
        if between > best_var {
            best_var = between;
            best_t = t as u8;
        }
    }
    Ok(best_t)
}

/// Dark pixels (intensity <= t) become ink.
pub fn binarize(img: &GrayImage, t: u8) -> BinaryImage {
    let data = img.data().iter().map(|&v| u8::from(v <= t)).collect();
    BinaryImage::new(img.width(), img.height(), data)
}

/// Flood-fill labelling; components numbered in raster order of first pixel.
pub fn connected_components(img: &BinaryImage, connectivity: Connectivity) -> ComponentLabeling {
    let (w, h) = (img.width(), img.height());
    let mut labels = vec![0u32; w * h];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..w * h {
        if img.data()[start] == 0 || labels[start] != 0 {
            continue;
        }
        let label = sizes.len() as u32 + 1;
        let mut size = 0usize;
        labels[start] = label;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let (r, c) = (idx / w, idx % w);
            for &(dr, dc) in connectivity.offsets() {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < 0 || nc < 0 || nr as usize >= h || nc as usize >= w {
                    continue;
                }
                let nidx = nr as usize * w + nc as usize;
                if img.data()[nidx] == 1 && labels[nidx] == 0 {
                    labels[nidx] = label;
                    queue.push_back(nidx);
                }
            }
        }
        sizes.push(size);
    }

    ComponentLabeling {
        width: w,
        height: h,
        labels,
        component_sizes: sizes,
    }
}

/// Drop every component with fewer than `min_size` pixels.
pub fn remove_small_components(
    img: &BinaryImage,
    min_size: usize,
    connectivity: Connectivity,
) -> BinaryImage {
    let labeling = connected_components(img, connectivity);
    let data = img
        .data()
        .iter()
        .zip(&labeling.labels)
        .map(|(&v, &l)| {
            if v == 1 && labeling.component_sizes[l as usize - 1] >= min_size {
                1
            } else {
                0
            }
        })
        .collect();
    BinaryImage::new(img.width(), img.height(), data)
}

/// Decode a PNG or BMP file into a grayscale image. RGB(A) inputs go through
/// the BT.601 luma; 8-bit grayscale files pass through untouched.
pub fn load_gray_image(path: &Path) -> Result<GrayImage> {
    let dynamic = image::open(path).map_err(|e| Error::UndecodableImage {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    match dynamic {
        image::DynamicImage::ImageLuma8(luma) => {
            let (w, h) = (luma.width() as usize, luma.height() as usize);
            GrayImage::new(w, h, luma.into_raw())
        }
        other => to_grayscale(&other.to_rgb8()),
    }
}

/// Encode ink-on-paper: foreground 1 writes black (0), background white (255).
pub fn save_binary_image(img: &BinaryImage, path: &Path) -> Result<()> {
    let pixels: Vec<u8> = img.data().iter().map(|&v| if v == 1 { 0 } else { 255 }).collect();
    let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, pixels)
        .expect("buffer sized from image dimensions");
    buf.save(path).map_err(|e| match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(other.to_string())),
    })
}
