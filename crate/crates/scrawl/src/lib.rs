//! Offline handwriting recognition for non-connected scripts.
//!
//! A scanned page is binarized with an automatically chosen threshold,
//! despeckled, cut into lines at blank rows and into glyphs at blank
//! columns, and each glyph is matched against a 62-class template store
//! (A-Z, a-z, 0-9) by 2-D correlation coefficient. Inter-glyph gaps at or
//! above 75% of a line's maximum gap become word breaks.
//!
//! The [`pipeline`] module ties the stages into a batch run and also offers
//! [`pipeline::render_page`], the inverse operation used for round-trip
//! testing; [`synth`] generates deterministic template stores for that
//! purpose.

pub mod error;
pub mod imaging;
pub mod pipeline;
pub mod recognition;
pub mod segmentation;
pub mod synth;
pub mod templates;

pub use error::{Error, Result};
