use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::matrices::{eval_word, q_n_direct, RepresentationTuple, Scalar};
use crate::words::Word;

/// One coordinate function on the character variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// Trace of the word's image.
    Trace { word: Word },
    /// `Q_n` of the words' images; `n/2` words, sorted.
    Q { words: Vec<Word> },
    /// `det(A_index)^{-1}`.
    DetInverse { index: u32 },
}

impl Generator {
    pub fn trace(word: Word) -> Self {
        Generator::Trace { word }
    }

    /// Value at a representation.
    pub fn evaluate(&self, rep: &RepresentationTuple) -> Result<Scalar> {
        match self {
            Generator::Trace { word } => Ok(eval_word(rep, word)?.trace()),
            Generator::Q { words } => {
                let images = words.iter().map(|w| eval_word(rep, w)).collect::<Result<Vec<_>>>()?;
                q_n_direct(&images)
            }
            Generator::DetInverse { index } => {
                let available = rep.matrices().len();
                let m = rep
                    .matrices()
                    .get((*index as usize).wrapping_sub(1))
                    .ok_or(Error::LetterOutOfRange { index: *index, available })?;
                m.det().inv()
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Trace { word } => write!(f, "tr({word})"),
            Generator::Q { words } => {
                f.write_str("Q(")?;
                for (i, w) in words.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
            Generator::DetInverse { index } => write!(f, "det(g{index})^-1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub group: Group,
    pub n: usize,
    pub rank: u32,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn trace_words(&self) -> impl Iterator<Item = &Word> {
        self.generators.iter().filter_map(|g| match g {
            Generator::Trace { word } => Some(word),
            _ => None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("generator sets serialize")
    }

    /// One generator per line in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Optional identity-based pruning on top of the raw word sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prune {
    #[default]
    #[serde(rename = "none")]
    None,
    /// `tr(B^2) = tr(B)^2 - 2` and `tr(AB^2) = tr(B) tr(AB) - tr(A)`;
    /// valid for `SL(2)` only.
    #[serde(rename = "sl2-identities")]
    Sl2Identities,
}

impl FromStr for Prune {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Prune::None),
            "sl2-identities" => Ok(Prune::Sl2Identities),
            other => Err(Error::InvalidParameter(format!("unknown prune option {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenOptions {
    pub prune: Prune,
    /// Emit every ordered `Q_n` tuple instead of sorted multisets.
    pub ordered_q: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn json_schema() {
        let set = GeneratorSet {
            group: Group::SoEven,
            n: 4,
            rank: 2,
            generators: vec![
                Generator::trace(w("g1 g2")),
                Generator::Q { words: vec![w("g1"), w("g1 g2*")] },
                Generator::DetInverse { index: 1 },
            ],
        };
        assert_eq!(
            set.to_json(),
            r#"{"group":"so_even","n":4,"rank":2,"generators":[{"kind":"trace","word":"g1 g2"},{"kind":"q","words":["g1","g1 g2*"]},{"kind":"det_inverse","index":1}]}"#
        );
        let back: GeneratorSet = serde_json::from_str(&set.to_json()).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn text_lines() {
        let set = GeneratorSet {
            group: Group::Gl,
            n: 2,
            rank: 1,
            generators: vec![Generator::trace(w("g1")), Generator::DetInverse { index: 1 }],
        };
        assert_eq!(set.to_text(), "tr(g1)\ndet(g1)^-1\n");
    }

    #[test]
    fn canonical_order_puts_traces_first() {
        let mut g = [Generator::DetInverse { index: 1 },
            Generator::Q { words: vec![w("g1")] },
            Generator::trace(w("g1 g2")),
            Generator::trace(w("g2"))];
        g.sort();
        assert_eq!(g[0], Generator::trace(w("g2")));
        assert_eq!(g[3], Generator::DetInverse { index: 1 });
    }
}
