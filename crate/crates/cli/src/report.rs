//! Text and JSON rendering of verdicts.

use qca_core::decider::{NormFailure, OrthogonalityFailure};
use qca_core::{Alphabet, Configuration, Lqca, StateId, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Norm {
        config: String,
        sq_norm: String,
        /// de Bruijn edge labels of the q-cycle, space-separated words.
        cycle: Vec<String>,
    },
    Orthogonality {
        config: String,
        config2: String,
        inner_product: String,
        /// Label pairs of the pair-graph q-cycle.
        cycle: Vec<[String; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub well_formed: bool,
    /// `|Σ|^(r+1)` of the input.
    pub n: u64,
    pub r: usize,
    pub span: usize,
    pub expansion_factor: String,
    pub norm_check: String,
    pub orthogonality_check: String,
    pub witness: Vec<Witness>,
    pub elapsed_ms: f64,
}

fn word(alphabet: &Alphabet, w: &[StateId]) -> String {
    w.iter()
        .map(|&s| alphabet.name(s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn norm_witness(alphabet: &Alphabet, f: &NormFailure) -> Witness {
    Witness::Norm {
        config: f.config.render(alphabet),
        sq_norm: f.sq_norm.to_string(),
        cycle: f
            .cycle
            .iter()
            .flat_map(|c| c.labels.iter().map(|l| word(alphabet, l)))
            .collect(),
    }
}

fn orthogonality_witness(alphabet: &Alphabet, f: &OrthogonalityFailure) -> Witness {
    Witness::Orthogonality {
        config: f.first.render(alphabet),
        config2: f.second.render(alphabet),
        inner_product: f.inner_product.to_string(),
        cycle: f
            .walk
            .iter()
            .map(|(a, b)| [word(alphabet, a), word(alphabet, b)])
            .collect(),
    }
}

impl Report {
    pub fn new(a: &Lqca, v: &Verdict, emit_witness: bool, elapsed_ms: f64) -> Self {
        let alphabet = a.alphabet();
        let mut witness = Vec::new();
        if emit_witness {
            witness.extend(v.norm_failure.iter().map(|f| norm_witness(alphabet, f)));
            witness.extend(
                v.orthogonality_failure
                    .iter()
                    .map(|f| orthogonality_witness(alphabet, f)),
            );
        }
        Report {
            well_formed: v.well_formed,
            n: a.size(),
            r: a.r(),
            span: a.neighborhood().span(),
            expansion_factor: a.neighborhood().expansion_factor().to_string(),
            norm_check: v.norm_status().as_str().to_string(),
            orthogonality_check: v.orthogonality_status().as_str().to_string(),
            witness,
            elapsed_ms,
        }
    }

    pub fn render_text(&self, name: &str) -> String {
        let mut out = format!(
            "{name}: {}\n",
            if self.well_formed {
                "well-formed"
            } else {
                "not well-formed"
            }
        );
        out.push_str(&format!(
            "  n {}, r {}, span {}, expansion factor {}\n",
            self.n, self.r, self.span, self.expansion_factor
        ));
        out.push_str(&format!("  unit norms: {}\n", self.norm_check));
        out.push_str(&format!("  orthogonality: {}\n", self.orthogonality_check));
        for w in &self.witness {
            match w {
                Witness::Norm { config, sq_norm, .. } => {
                    out.push_str(&format!("  witness: column of {config:?} has squared norm {sq_norm}\n"))
                }
                Witness::Orthogonality { config, config2, inner_product, .. } => out.push_str(&format!(
                    "  witness: columns of {config:?} and {config2:?} have inner product {inner_product}\n"
                )),
            }
        }
        out.push_str(&format!("  elapsed {:.3} ms\n", self.elapsed_ms));
        out
    }
}

/// `|c⟩` in config-spec syntax.
pub fn ket(c: &Configuration, alphabet: &Alphabet) -> String {
    format!("|{}>", c.render(alphabet))
}
