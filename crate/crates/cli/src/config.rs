//! Run configurations: a JSON (or TOML, by extension) file plus flag overrides.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use gkm_core::{Component, FieldSpec, RootDatum, WeylElement, Word};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub root_datum: Option<DatumSpec>,
    #[serde(default)]
    pub word: Vec<usize>,
    /// A word for `x`; empty means the identity.
    #[serde(default)]
    pub x: Vec<usize>,
    pub characteristics: Option<Vec<u64>>,
    pub verify_depth: Option<usize>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub basis: BasisKind,
    pub scan: Option<ScanRange>,
    #[serde(default)]
    pub inject_fault: bool,
    pub seed: Option<u64>,
}

/// `"A1xC2"` or `[{"type": "A", "rank": 1}, {"type": "C", "rank": 2}]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Name(String),
    Components(Vec<Component>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// `b_γ` on the fiber.
    #[default]
    B,
    /// `c_γ^x` on the complement of the fiber.
    C,
    /// `B_ρ` for the tree `ρ_r(x)`, on all galleries.
    Rho,
    /// `B_ρ` for the tree `ξ_r(x)`, on all galleries.
    Xi,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRange {
    /// Explicit words; overrides `max_len`.
    pub words: Option<Vec<Vec<usize>>>,
    /// Every word up to this length.
    pub max_len: Option<usize>,
    /// Explicit endpoints as words; default is every endpoint of each word.
    pub x: Option<Vec<Vec<usize>>>,
}

/// Flag values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub characteristics: Option<Vec<u64>>,
    pub verify_depth: Option<usize>,
    pub out: Option<PathBuf>,
    pub datum: Option<String>,
    pub word: Option<Vec<usize>>,
    pub x: Option<Vec<usize>>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.extension().and_then(|e| e.to_str()) == Some("toml"))
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str, toml_syntax: bool) -> Result<Self, String> {
        if toml_syntax {
            toml::from_str(text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(text).map_err(|e| e.to_string())
        }
    }

    pub fn apply(&mut self, o: Overrides) {
        if o.characteristics.is_some() {
            self.characteristics = o.characteristics;
        }
        if o.verify_depth.is_some() {
            self.verify_depth = o.verify_depth;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        if let Some(d) = o.datum {
            self.root_datum = Some(DatumSpec::Name(d));
        }
        if let Some(w) = o.word {
            self.word = w;
        }
        if let Some(x) = o.x {
            self.x = x;
        }
    }

    pub fn datum(&self) -> Result<Arc<RootDatum>, Failure> {
        let d = match &self.root_datum {
            None => return Err(Failure::Config("no root_datum given".into())),
            Some(DatumSpec::Name(s)) => s.parse(),
            Some(DatumSpec::Components(c)) => RootDatum::new(c),
        };
        d.map(Arc::new).map_err(|e| Failure::Config(e.to_string()))
    }

    pub fn word(&self, datum: &Arc<RootDatum>) -> Result<Word, Failure> {
        make_word(datum, &self.word)
    }

    pub fn x(&self, datum: &RootDatum) -> Result<WeylElement, Failure> {
        datum.word_to_element(&self.x).map_err(|e| Failure::Config(format!("x: {e}")))
    }

    /// Characteristics validated against the datum; `[0]` when unset.
    pub fn fields(&self, datum: &RootDatum) -> Result<Vec<FieldSpec>, Failure> {
        let chars = self.characteristics.clone().unwrap_or_else(|| vec![0]);
        if chars.is_empty() {
            return Err(Failure::Config("empty characteristic list".into()));
        }
        chars
            .into_iter()
            .map(|c| FieldSpec::for_datum(c, datum).map_err(|e| Failure::Config(e.to_string())))
            .collect()
    }
}

pub fn make_word(datum: &Arc<RootDatum>, letters: &[usize]) -> Result<Word, Failure> {
    Word::new(datum.clone(), letters.to_vec()).map_err(|e| Failure::Config(format!("word: {e}")))
}

/// Reads `1,2,1`; an empty string or `e` is the empty word.
pub fn parse_letters(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"))).collect()
}
