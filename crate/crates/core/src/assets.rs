//! Bundled data files, with an optional on-disk override directory.

use std::fs;
use std::path::{Path, PathBuf};

pub const TORUS: &str = include_str!("../assets/torus.graph");
pub const TORUS_HAT: &str = include_str!("../assets/torus_hat.graph");
pub const POINTS: &str = include_str!("../assets/points.graph");
pub const TABLE: &str = include_str!("../assets/table.subst");
pub const PROJECTIVE_WORD: &str = include_str!("../assets/projective.word");
pub const P_SECTIONS: &str = include_str!("../assets/p_sections.fiber");

/// Synthetic corpus: `(name, presentation text, group order)`.
pub const CORPUS: &[(&str, &str, usize)] = &[
    ("s3", include_str!("../assets/corpus/s3.pres"), 6),
    ("klein", include_str!("../assets/corpus/klein.pres"), 4),
    ("d4", include_str!("../assets/corpus/d4.pres"), 8),
    ("q8", include_str!("../assets/corpus/q8.pres"), 8),
    ("a4", include_str!("../assets/corpus/a4.pres"), 12),
    ("d6", include_str!("../assets/corpus/d6.pres"), 12),
    ("dic3", include_str!("../assets/corpus/dic3.pres"), 12),
    ("z15", include_str!("../assets/corpus/z15.pres"), 15),
    ("d10", include_str!("../assets/corpus/d10.pres"), 20),
    ("s4", include_str!("../assets/corpus/s4.pres"), 24),
    ("s4_wide", include_str!("../assets/corpus/s4_wide.pres"), 24),
    ("b3", include_str!("../assets/corpus/b3.pres"), 48),
    ("a5", include_str!("../assets/corpus/a5.pres"), 60),
    ("s5", include_str!("../assets/corpus/s5.pres"), 120),
    ("s3_redundant", include_str!("../assets/corpus/s3_redundant.pres"), 6),
];

/// Source of asset texts: the compiled-in copies or files under a directory.
#[derive(Clone, Debug, Default)]
pub struct Assets {
    dir: Option<PathBuf>,
}

impl Assets {
    pub fn bundled() -> Self {
        Self { dir: None }
    }

    pub fn from_dir(dir: impl AsRef<Path>) -> Self {
        Self { dir: Some(dir.as_ref().to_path_buf()) }
    }

    /// Text of the named asset file, e.g. `torus.graph`.
    pub fn read(&self, name: &str) -> std::io::Result<String> {
        if let Some(d) = &self.dir {
            return fs::read_to_string(d.join(name));
        }
        let text = match name {
            "torus.graph" => TORUS,
            "torus_hat.graph" => TORUS_HAT,
            "points.graph" => POINTS,
            "table.subst" => TABLE,
            "projective.word" => PROJECTIVE_WORD,
            "p_sections.fiber" => P_SECTIONS,
            _ => return Err(std::io::Error::new(std::io::ErrorKind::NotFound, format!("no asset `{name}`"))),
        };
        Ok(text.to_string())
    }
}
