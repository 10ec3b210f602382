//! The automaton model: states, neighborhoods, local superpositions and the
//! total local transition table.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::num::{ExactComplex, Rational};

/// Index of a state in its owning [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Ordered, named state set with a distinguished quiescent state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    quiescent: StateId,
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        quiescent: &str,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let q = names.iter().position(|n| n == quiescent).ok_or_else(|| {
            CoreError::InvalidAlphabet(format!("quiescent state `{quiescent}` is not listed"))
        })?;
        Self::with_quiescent_index(names, StateId(q))
    }

    pub fn with_quiescent_index(names: Vec<String>, quiescent: StateId) -> Result<Self> {
        if names.is_empty() {
            return Err(CoreError::InvalidAlphabet("no states".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty()
                || name
                    .chars()
                    .any(|c| c.is_whitespace() || ",@:#".contains(c))
            {
                return Err(CoreError::InvalidAlphabet(format!(
                    "illegal state name `{name}`"
                )));
            }
            if names[..i].contains(name) {
                return Err(CoreError::InvalidAlphabet(format!(
                    "duplicate state `{name}`"
                )));
            }
        }
        if quiescent.0 >= names.len() {
            return Err(CoreError::InvalidAlphabet(
                "quiescent index out of range".into(),
            ));
        }
        Ok(Alphabet { names, quiescent })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn quiescent(&self) -> StateId {
        self.quiescent
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s.0]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(StateId)
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.names.len()).map(StateId)
    }
}

/// Strictly increasing neighbor offsets `a_1 < … < a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    offsets: Vec<i64>,
}

impl Neighborhood {
    pub fn new(offsets: Vec<i64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(CoreError::InvalidNeighborhood(
                "at least one offset is required".into(),
            ));
        }
        if let Some(w) = offsets.windows(2).find(|w| w[0] >= w[1]) {
            return Err(CoreError::InvalidNeighborhood(format!(
                "offsets must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Neighborhood { offsets })
    }

    /// The contiguous neighborhood `lo, lo+1, …, hi`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// `r = |N|`.
    pub fn size(&self) -> usize {
        self.offsets.len()
    }

    pub fn first(&self) -> i64 {
        self.offsets[0]
    }

    pub fn last(&self) -> i64 {
        self.offsets[self.offsets.len() - 1]
    }

    /// `s = a_r - a_1 + 1`.
    pub fn span(&self) -> usize {
        (self.last() - self.first() + 1) as usize
    }

    pub fn is_simple(&self) -> bool {
        self.span() == self.size()
    }

    /// `e = (s + 1) / (r + 1)`.
    pub fn expansion_factor(&self) -> Rational {
        Rational::new(self.span() as i64 + 1, self.size() as i64 + 1).expect("positive denominator")
    }
}

/// A vector in `ℂ^Σ`, the image of one neighborhood word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalSuperposition {
    amps: Vec<ExactComplex>,
}

impl LocalSuperposition {
    pub fn new(amps: Vec<ExactComplex>) -> Self {
        LocalSuperposition { amps }
    }

    pub fn zero(dim: usize) -> Self {
        LocalSuperposition {
            amps: vec![ExactComplex::zero(); dim],
        }
    }

    /// `|s⟩` in a space of dimension `dim`.
    pub fn basis(dim: usize, s: StateId) -> Self {
        let mut v = Self::zero(dim);
        v.amps[s.0] = ExactComplex::one();
        v
    }

    pub fn from_pairs(
        dim: usize,
        pairs: impl IntoIterator<Item = (StateId, ExactComplex)>,
    ) -> Self {
        let mut v = Self::zero(dim);
        for (s, a) in pairs {
            v.amps[s.0] = &v.amps[s.0] + &a;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amp(&self, s: StateId) -> &ExactComplex {
        &self.amps[s.0]
    }

    pub fn amps(&self) -> &[ExactComplex] {
        &self.amps
    }

    /// `⟨u, v⟩ = Σ_e u(e)·conj(v(e))`.
    pub fn inner_product(&self, other: &LocalSuperposition) -> Result<ExactComplex> {
        if self.len() != other.len() {
            return Err(CoreError::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.mul_conj(b))
            .sum())
    }

    pub fn squared_norm(&self) -> Rational {
        self.amps.iter().map(ExactComplex::norm_sqr).sum()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LocalSuperposition {
            amps: self.amps.iter().map(|a| a.scale(k)).collect(),
        }
    }

    pub fn is_basis(&self, s: StateId) -> bool {
        self.amps
            .iter()
            .enumerate()
            .all(|(i, a)| if i == s.0 { a.is_one() } else { a.is_zero() })
    }
}

impl fmt::Debug for LocalSuperposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

/// `⟨u, v⟩`; see [`LocalSuperposition::inner_product`].
pub fn inner_product(u: &LocalSuperposition, v: &LocalSuperposition) -> Result<ExactComplex> {
    u.inner_product(v)
}

pub fn squared_norm(u: &LocalSuperposition) -> Rational {
    u.squared_norm()
}

/// A linear quantum cellular automaton `(Σ, q, N, δ)`.
///
/// The table is indexed by words of `Σ^r` read as base-`|Σ|` numbers with the
/// first letter most significant. Construction enforces totality, positive
/// norms and the quiescent condition, so every `Lqca` value is legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lqca {
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<LocalSuperposition>,
}

impl Lqca {
    pub fn new(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        table: Vec<LocalSuperposition>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let expected = table_len(k, neighborhood.size())?;
        if table.len() != expected {
            return Err(CoreError::TableSize {
                expected,
                found: table.len(),
            });
        }
        let a = Lqca {
            alphabet,
            neighborhood,
            table,
        };
        for (idx, rule) in a.table.iter().enumerate() {
            if rule.len() != k {
                return Err(CoreError::Dimension {
                    expected: k,
                    found: rule.len(),
                });
            }
            if !rule.squared_norm().is_positive() {
                return Err(CoreError::ZeroNorm {
                    word: a.word_name(idx),
                });
            }
        }
        let q = a.alphabet.quiescent();
        let qidx = a.quiescent_word_index();
        if !a.table[qidx].is_basis(q) {
            return Err(CoreError::QuiescentRule {
                word: a.word_name(qidx),
            });
        }
        Ok(a)
    }

    /// Builds the table by evaluating `rule` on every word in index order.
    pub fn from_fn(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        mut rule: impl FnMut(&[StateId]) -> LocalSuperposition,
    ) -> Result<Self> {
        let k = alphabet.len();
        let r = neighborhood.size();
        let len = table_len(k, r)?;
        let table = (0..len).map(|idx| rule(&decode_word(idx, k, r))).collect();
        Self::new(alphabet, neighborhood, table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn num_states(&self) -> usize {
        self.alphabet.len()
    }

    pub fn quiescent(&self) -> StateId {
        self.alphabet.quiescent()
    }

    /// `r = |N|`.
    pub fn r(&self) -> usize {
        self.neighborhood.size()
    }

    /// `n = |Σ|^(r+1)`.
    pub fn size(&self) -> u64 {
        (self.num_states() as u64).saturating_pow(self.r() as u32 + 1)
    }

    pub fn is_simple(&self) -> bool {
        self.neighborhood.is_simple()
    }

    pub fn is_trivial(&self) -> bool {
        self.r() == 1
    }

    pub fn table(&self) -> &[LocalSuperposition] {
        &self.table
    }

    pub fn rule(&self, word: &[StateId]) -> &LocalSuperposition {
        &self.table[self.word_index(word)]
    }

    pub fn rule_at(&self, index: usize) -> &LocalSuperposition {
        &self.table[index]
    }

    pub fn word_index(&self, word: &[StateId]) -> usize {
        debug_assert_eq!(word.len(), self.r());
        encode_word(word, self.num_states())
    }

    pub fn word_at(&self, index: usize) -> Vec<StateId> {
        decode_word(index, self.num_states(), self.r())
    }

    pub fn quiescent_word_index(&self) -> usize {
        encode_word(&vec![self.quiescent(); self.r()], self.num_states())
    }

    /// Space-separated state names of the word at `index`.
    pub fn word_name(&self, index: usize) -> String {
        self.word_at(index)
            .iter()
            .map(|&s| self.alphabet.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Replaces the table, re-validating every invariant.
    pub fn with_table(&self, table: Vec<LocalSuperposition>) -> Result<Self> {
        Self::new(self.alphabet.clone(), self.neighborhood.clone(), table)
    }
}

impl fmt::Debug for Lqca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for idx in 0..self.table.len() {
            m.entry(&self.word_name(idx), &self.table[idx]);
        }
        m.finish()
    }
}

fn table_len(k: usize, r: usize) -> Result<usize> {
    k.checked_pow(r as u32)
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| {
            CoreError::InvalidNeighborhood(format!("table of {k}^{r} words is too large"))
        })
}

pub(crate) fn encode_word(word: &[StateId], k: usize) -> usize {
    word.iter().fold(0, |acc, s| acc * k + s.0)
}

pub(crate) fn decode_word(mut index: usize, k: usize, len: usize) -> Vec<StateId> {
    let mut word = vec![StateId(0); len];
    for slot in word.iter_mut().rev() {
        *slot = StateId(index % k);
        index /= k;
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn qp() -> Alphabet {
        Alphabet::new(["q", "p"], "q").unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let q = LocalSuperposition::basis(2, StateId(0));
        let p = LocalSuperposition::basis(2, StateId(1));
        assert_eq!(inner_product(&q, &p).unwrap(), ExactComplex::zero());

        let b = catalog::automaton_b();
        let half_q = b.rule(&[StateId(0), StateId(1)]);
        assert_eq!(
            inner_product(half_q, &q).unwrap(),
            ExactComplex::ratio(1, 2)
        );

        let mixed =
            LocalSuperposition::new(vec![ExactComplex::ratio(3, 5), ExactComplex::ratio(4, 5)]);
        assert_eq!(
            inner_product(&mixed, &q).unwrap(),
            ExactComplex::ratio(3, 5)
        );
    }

    #[test]
    fn inner_product_dimension_error() {
        let u = LocalSuperposition::zero(2);
        let v = LocalSuperposition::zero(3);
        assert_eq!(
            u.inner_product(&v),
            Err(CoreError::Dimension {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn squared_norm_examples() {
        let b = catalog::automaton_b();
        let (q, p) = (StateId(0), StateId(1));
        assert_eq!(
            squared_norm(&LocalSuperposition::basis(2, q)),
            Rational::one()
        );
        assert_eq!(squared_norm(b.rule(&[q, p])), Rational::new(1, 4).unwrap());
        assert_eq!(squared_norm(b.rule(&[p, q])), Rational::from(4));
    }

    #[test]
    fn neighborhood_validation_and_derived_sizes() {
        assert!(Neighborhood::new(vec![]).is_err());
        assert!(Neighborhood::new(vec![0, 0]).is_err());
        assert!(Neighborhood::new(vec![1, 0]).is_err());
        let n = Neighborhood::new(vec![-1, 1]).unwrap();
        assert_eq!(n.span(), 3);
        assert!(!n.is_simple());
        assert_eq!(n.expansion_factor(), Rational::new(4, 3).unwrap());
        assert!(Neighborhood::new(vec![0, 1]).unwrap().is_simple());
    }

    #[test]
    fn constructor_rejects_zero_norm_and_bad_quiescent_rule() {
        let nb = Neighborhood::new(vec![0, 1]).unwrap();
        let err = Lqca::from_fn(qp(), nb.clone(), |w| {
            if w == [StateId(1), StateId(1)] {
                LocalSuperposition::zero(2)
            } else {
                LocalSuperposition::basis(2, w[0])
            }
        })
        .unwrap_err();
        assert_eq!(err, CoreError::ZeroNorm { word: "p p".into() });

        let err =
            Lqca::from_fn(qp(), nb, |_| LocalSuperposition::basis(2, StateId(1))).unwrap_err();
        assert_eq!(err, CoreError::QuiescentRule { word: "q q".into() });
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["q", "q"], "q").is_err());
        assert!(Alphabet::new(["q", "p"], "x").is_err());
        assert!(Alphabet::new(["q", "a b"], "q").is_err());
        assert!(Alphabet::new(Vec::<String>::new(), "q").is_err());
    }

    #[test]
    fn size_is_states_to_r_plus_one() {
        assert_eq!(catalog::automaton_b().size(), 8);
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = LocalSuperposition> {
        proptest::collection::vec((-6i64..6, 1i64..5, -6i64..6, 1i64..5), dim).prop_map(|parts| {
            LocalSuperposition::new(
                parts
                    .into_iter()
                    .map(|(a, b, c, d)| {
                        ExactComplex::new(
                            Rational::new(a, b).unwrap(),
                            Rational::new(c, d).unwrap(),
                        )
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn self_inner_product_is_squared_norm(u in arb_vec(3)) {
            let ip = u.inner_product(&u).unwrap();
            prop_assert!(ip.im.is_zero());
            prop_assert_eq!(ip.re, u.squared_norm());
        }

        #[test]
        fn inner_product_is_conjugate_symmetric(u in arb_vec(3), v in arb_vec(3)) {
            prop_assert_eq!(u.inner_product(&v).unwrap(), v.inner_product(&u).unwrap().conj());
        }

        #[test]
        fn word_index_round_trip(k in 1usize..5, r in 1usize..4, seed in 0usize..10_000) {
            let idx = seed % k.pow(r as u32);
            prop_assert_eq!(encode_word(&decode_word(idx, k, r), k), idx);
        }
    }
}
