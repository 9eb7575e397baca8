use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the recognition pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("image has a zero dimension")]
    EmptyImage,

    #[error("image is constant; no threshold separates ink from background")]
    ConstantImage,

    #[error("image contains no foreground pixels to clip")]
    NothingToClip,

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("glyph contains no foreground pixels")]
    EmptyGlyph,

    #[error("template manifest does not cover label {0:?}")]
    MissingLabel(char),

    #[error("template manifest lists label {0:?} more than once")]
    DuplicateLabel(char),

    #[error("cannot decode template image {path}: {reason}")]
    UndecodableImage { path: PathBuf, reason: String },

    #[error("template for label {0:?} has no ink after binarization")]
    BlankTemplate(char),

    #[error("templates for labels {0:?} and {1:?} are identical after normalization")]
    IdenticalTemplates(char, char),

    #[error("invalid template manifest: {0}")]
    InvalidManifest(String),

    #[error("character {0:?} has no template and cannot be rendered")]
    UnrenderableCharacter(char),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
