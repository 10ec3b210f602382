//! Partitioned automata: every cell carries one component per neighbor, the
//! classical part gathers component `j` from neighbor `j`, and a single
//! local matrix `Q` then acts on the gathered state.

use crate::automaton::{Alphabet, LocalSuperposition, Lqca, Neighborhood, StateId};
use crate::decider::{decide_with, DecideOptions};
use crate::error::{CoreError, Result};
use crate::num::ExactComplex;

/// Component alphabets `Σ₁ … Σ_r`. The first name of each factor is that
/// factor's quiescent component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorAlphabets {
    factors: Vec<Vec<String>>,
}

impl FactorAlphabets {
    pub fn new(factors: Vec<Vec<String>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(CoreError::InvalidAlphabet(
                "at least one factor is required".into(),
            ));
        }
        for f in &factors {
            if f.is_empty() {
                return Err(CoreError::InvalidAlphabet(
                    "factor alphabets must be non-empty".into(),
                ));
            }
            if let Some(bad) = f.iter().find(|n| n.contains('.')) {
                return Err(CoreError::InvalidAlphabet(format!(
                    "factor state `{bad}` contains `.`"
                )));
            }
            // duplicate and character checks are shared with the composed alphabet
            Alphabet::new(f.iter().cloned(), &f[0])?;
        }
        let fa = FactorAlphabets { factors };
        fa.composed_size()?;
        Ok(fa)
    }

    pub fn factors(&self) -> &[Vec<String>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn composed_size(&self) -> Result<usize> {
        self.factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| CoreError::InvalidAlphabet("composed alphabet too large".into()))
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }

    /// Component indices of a composed state, first factor most significant.
    pub fn split(&self, s: StateId) -> Vec<usize> {
        let mut rest = s.0;
        let mut parts = vec![0; self.factors.len()];
        for (j, f) in self.factors.iter().enumerate().rev() {
            parts[j] = rest % f.len();
            rest /= f.len();
        }
        parts
    }

    pub fn join(&self, parts: &[usize]) -> StateId {
        StateId(
            self.factors
                .iter()
                .zip(parts)
                .fold(0, |acc, (f, &p)| acc * f.len() + p),
        )
    }

    /// Composed alphabet; names join components with `.`, quiescent state is
    /// the tuple of first components.
    pub fn alphabet(&self) -> Alphabet {
        let names = (0..self.size())
            .map(|s| {
                let parts = self.split(StateId(s));
                self.factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f[p].as_str())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        Alphabet::with_quiescent_index(names, StateId(0)).expect("factor names are valid")
    }
}

/// Square matrix with `Q(y, x) = [δ_Q(x)](y)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    dim: usize,
    entries: Vec<ExactComplex>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix {
            dim,
            entries: vec![ExactComplex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, ExactComplex::one());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> ExactComplex) -> Self {
        QMatrix {
            dim,
            entries: (0..dim * dim).map(|n| f(n / dim, n % dim)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Q(target, source)`.
    pub fn get(&self, target: usize, source: usize) -> &ExactComplex {
        &self.entries[target * self.dim + source]
    }

    pub fn set(&mut self, target: usize, source: usize, z: ExactComplex) {
        self.entries[target * self.dim + source] = z;
    }

    /// `δ_Q(source)`.
    pub fn column(&self, source: usize) -> LocalSuperposition {
        LocalSuperposition::new((0..self.dim).map(|y| self.get(y, source).clone()).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        QMatrix::from_fn(self.dim, |y, x| {
            (0..self.dim)
                .map(|k| self.get(y, k) * other.get(k, x))
                .sum()
        })
    }
}

/// Exact test that the columns of `q` are orthonormal.
pub fn is_unitary(q: &QMatrix) -> bool {
    let cols: Vec<LocalSuperposition> = (0..q.dim).map(|x| q.column(x)).collect();
    cols.iter().enumerate().all(|(i, u)| {
        cols[i..].iter().enumerate().all(|(d, v)| {
            let ip = u.inner_product(v).expect("same dimension");
            if d == 0 {
                ip.is_one()
            } else {
                ip.is_zero()
            }
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plqca {
    factors: FactorAlphabets,
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    q: QMatrix,
}

impl Plqca {
    pub fn new(factors: FactorAlphabets, neighborhood: Neighborhood, q: QMatrix) -> Result<Self> {
        if neighborhood.size() != factors.len() {
            return Err(CoreError::InvalidNeighborhood(format!(
                "{} offsets for {} factors",
                neighborhood.size(),
                factors.len()
            )));
        }
        let alphabet = factors.alphabet();
        if q.dim() != alphabet.len() {
            return Err(CoreError::Dimension {
                expected: alphabet.len(),
                found: q.dim(),
            });
        }
        let quiescent = alphabet.quiescent();
        if !q.column(quiescent.0).is_basis(quiescent) {
            return Err(CoreError::QuiescentRule {
                word: alphabet.name(quiescent).to_string(),
            });
        }
        if let Some(x) = (0..q.dim()).find(|&x| q.column(x).squared_norm().is_zero()) {
            return Err(CoreError::ZeroNorm {
                word: alphabet.name(StateId(x)).to_string(),
            });
        }
        Ok(Plqca {
            factors,
            alphabet,
            neighborhood,
            q,
        })
    }

    pub fn factors(&self) -> &FactorAlphabets {
        &self.factors
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn qmatrix(&self) -> &QMatrix {
        &self.q
    }

    /// Classical part: component `j` of the result comes from `word[j]`.
    pub fn delta_p(&self, word: &[StateId]) -> StateId {
        let parts: Vec<usize> = word
            .iter()
            .enumerate()
            .map(|(j, &s)| self.factors.split(s)[j])
            .collect();
        self.factors.join(&parts)
    }

    /// The composed automaton `δ = δ_Q ∘ δ_p`.
    pub fn compose(&self) -> Result<Lqca> {
        Lqca::from_fn(self.alphabet.clone(), self.neighborhood.clone(), |w| {
            self.q.column(self.delta_p(w).0)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub unitary: bool,
    pub well_formed: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.unitary == self.well_formed
    }
}

/// Compares unitarity of `Q` with the decider's verdict on the composed
/// automaton; disagreement is an internal-consistency error.
pub fn check_theorem_equivalence(p: &Plqca, opts: &DecideOptions) -> Result<EquivalenceReport> {
    let composed = p.compose()?;
    let report = EquivalenceReport {
        unitary: is_unitary(&p.q),
        well_formed: decide_with(&composed, opts)?.well_formed,
    };
    if !report.agree() {
        return Err(CoreError::Inconsistent(format!(
            "unitary = {}, well_formed = {} for Q = {:?} over {:?}",
            report.unitary,
            report.well_formed,
            p.q,
            p.alphabet.names()
        )));
    }
    Ok(report)
}
