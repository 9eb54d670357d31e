//! JSON category files.
//!
//! ```json
//! {
//!   "labels": ["1", "tau"], "unit": 0, "dual": [0, 1],
//!   "fusion": [[0,0,0,1], ...],
//!   "F": [{"labels": [a,b,c,d,x,y], "mult": [α,β,γ,δ], "value": [re, im]}, ...],
//!   "R": [{"labels": [a,b,c], "mult": [μ,ν], "value": [re, im]}, ...],
//!   "twist": [[re, im], ...]
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CategoryData, DataError, FEntry, FusionRing, REntry};
use crate::scalar::Scalar;

/// One F entry of the file format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FFileEntry {
    /// `[a, b, c, d, x, y]`.
    pub labels: [usize; 6],
    /// `[α, β, γ, δ]`.
    pub mult: [usize; 4],
    /// `[re, im]`.
    pub value: [f64; 2],
}

/// One R entry of the file format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RFileEntry {
    /// `[a, b, c]`.
    pub labels: [usize; 3],
    /// `[μ, ν]`.
    pub mult: [usize; 2],
    /// `[re, im]`.
    pub value: [f64; 2],
}

/// The category file schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    /// Display names.
    pub labels: Vec<String>,
    /// Index of the unit.
    pub unit: usize,
    /// Dual of each label.
    pub dual: Vec<usize>,
    /// Nonzero `[a, b, c, N]` entries.
    pub fusion: Vec<[u32; 4]>,
    /// F-symbols.
    #[serde(rename = "F")]
    pub f: Vec<FFileEntry>,
    /// R-symbols.
    #[serde(rename = "R")]
    pub r: Vec<RFileEntry>,
    /// Twists as `[re, im]`.
    pub twist: Vec<[f64; 2]>,
}

impl CategoryFile {
    /// Build validated category data in scalar type `S`.
    pub fn into_data<S: Scalar>(self) -> Result<CategoryData<S>, DataError> {
        let conv = |v: [f64; 2]| {
            S::from_parts(v[0], v[1]).ok_or_else(|| DataError::NotRepresentable(format!("{v:?}")))
        };
        let rank = self.labels.len();
        let ring = FusionRing::new(rank, self.unit, self.dual, &self.fusion)?;
        let f = self
            .f
            .into_iter()
            .map(|e| Ok(FEntry { labels: e.labels, mult: e.mult, value: conv(e.value)? }))
            .collect::<Result<Vec<_>, DataError>>()?;
        let r = self
            .r
            .into_iter()
            .map(|e| Ok(REntry { labels: e.labels, mult: e.mult, value: conv(e.value)? }))
            .collect::<Result<Vec<_>, DataError>>()?;
        let twist = self.twist.into_iter().map(conv).collect::<Result<Vec<_>, DataError>>()?;
        CategoryData::new(self.labels, ring, f, r, twist)
    }

    /// File representation of category data (values via double precision).
    pub fn from_data<S: Scalar>(data: &CategoryData<S>) -> Self {
        let pair = |s: &S| {
            let z = s.to_c64();
            [z.re, z.im]
        };
        Self {
            labels: data.names().to_vec(),
            unit: data.unit(),
            dual: (0..data.rank()).map(|a| data.dual(a)).collect(),
            fusion: data.ring().entries(),
            f: data
                .f_entries()
                .iter()
                .map(|e| FFileEntry { labels: e.labels, mult: e.mult, value: pair(&e.value) })
                .collect(),
            r: data
                .r_entries()
                .iter()
                .map(|e| RFileEntry { labels: e.labels, mult: e.mult, value: pair(&e.value) })
                .collect(),
            twist: data.twists().iter().map(pair).collect(),
        }
    }
}

/// Parse category JSON text.
pub fn parse_category<S: Scalar>(text: &str) -> Result<CategoryData<S>, DataError> {
    let file: CategoryFile =
        serde_json::from_str(text).map_err(|e| DataError::Parse(e.to_string()))?;
    file.into_data()
}

/// Load a category file from disk.
pub fn load_category<S: Scalar>(path: impl AsRef<Path>) -> Result<CategoryData<S>, DataError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| DataError::Parse(format!("{}: {e}", path.as_ref().display())))?;
    parse_category(&text)
}

/// Serialize category data to JSON text.
pub fn emit_category<S: Scalar>(data: &CategoryData<S>) -> String {
    let mut s = serde_json::to_string_pretty(&CategoryFile::from_data(data)).expect("serializable");
    s.push('\n');
    s
}
