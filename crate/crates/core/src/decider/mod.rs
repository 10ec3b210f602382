//! The well-formedness decision procedure.
//!
//! Simple automata with `r ≥ 2` are checked in two stages: unit column norms
//! via extreme-weight q-cycles of the de Bruijn graph, then column
//! orthogonality via the source component of the pair graph. Every witness
//! is mapped back to concrete configurations and re-verified by the oracle
//! before it is returned.

mod normalize;
mod simplify;

pub use normalize::{normalize, NormalizedLqca, ScaledComplex};
pub use simplify::{simplify, SimplificationReport, DEFAULT_SPAN_LIMIT};

use crate::automaton::{LocalSuperposition, Lqca, Neighborhood, StateId};
use crate::config::Configuration;
use crate::error::{CoreError, Result};
use crate::graph::{
    build_debruijn, build_pair_graph_with, closed_walk_through, detect_large_cycle,
    detect_small_cycle, scc_of_source, walk_inner_product, CycleWitness, PairEdge,
};
use crate::num::{ExactComplex, Rational};
use crate::oracle::{column_inner_product, column_sq_norm, normalize_pair};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Run the orthogonality check even after a norm failure.
    pub full_report: bool,
    pub span_limit: usize,
    pub execution: Execution,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            full_report: false,
            span_limit: DEFAULT_SPAN_LIMIT,
            execution: Execution::default(),
        }
    }
}

/// A column whose squared norm is not 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormFailure {
    /// The offending q-cycle; absent for trivial automata.
    pub cycle: Option<CycleWitness>,
    pub config: Configuration,
    pub sq_norm: Rational,
}

/// Two distinct columns with a nonzero inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityFailure {
    /// Label pairs along the off-diagonal q-cycle; empty for trivial automata.
    pub walk: Vec<(Vec<StateId>, Vec<StateId>)>,
    pub first: Configuration,
    pub second: Configuration,
    pub inner_product: ExactComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub well_formed: bool,
    pub norm_failure: Option<NormFailure>,
    pub orthogonality_failure: Option<OrthogonalityFailure>,
    pub orthogonality_checked: bool,
    /// Present when the input had to be simplified first.
    pub simplification: Option<SimplificationReport>,
}

impl Verdict {
    fn from_checks(norm: Option<NormFailure>, ortho: Option<Option<OrthogonalityFailure>>) -> Self {
        let orthogonality_checked = ortho.is_some();
        let orthogonality_failure = ortho.flatten();
        Verdict {
            well_formed: norm.is_none() && orthogonality_checked && orthogonality_failure.is_none(),
            norm_failure: norm,
            orthogonality_failure,
            orthogonality_checked,
            simplification: None,
        }
    }

    pub fn norm_status(&self) -> CheckStatus {
        if self.norm_failure.is_some() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        }
    }

    pub fn orthogonality_status(&self) -> CheckStatus {
        match (self.orthogonality_checked, &self.orthogonality_failure) {
            (false, _) => CheckStatus::Skipped,
            (true, Some(_)) => CheckStatus::Fail,
            (true, None) => CheckStatus::Pass,
        }
    }
}

/// Inverse of the q-cycle mapping: the appended letters of the walk, with
/// quiescent padding trimmed and the first non-quiescent cell at 0.
pub fn cycle_to_config(w: &CycleWitness) -> Configuration {
    letters_to_config(
        w.quiescent,
        w.labels
            .iter()
            .map(|l| *l.last().expect("labels are non-empty")),
    )
}

fn letters_to_config(q: StateId, letters: impl Iterator<Item = StateId>) -> Configuration {
    let word: Vec<StateId> = letters.collect();
    Configuration::from_word(q, 0, &word).normalized()
}

fn verify_norm(
    reference: &Lqca,
    cycle: Option<CycleWitness>,
    config: Configuration,
) -> Result<NormFailure> {
    let sq_norm = column_sq_norm(reference, &config);
    if let Some(w) = &cycle {
        if w.sq_product != sq_norm {
            return Err(CoreError::Inconsistent(format!(
                "cycle weight {} differs from column squared norm {} of {:?}",
                w.sq_product, sq_norm, config
            )));
        }
    }
    if sq_norm.is_one() {
        return Err(CoreError::Inconsistent(format!(
            "norm witness {config:?} has unit column"
        )));
    }
    Ok(NormFailure {
        cycle,
        config,
        sq_norm,
    })
}

fn verify_orthogonality(
    reference: &Lqca,
    walk: Vec<(Vec<StateId>, Vec<StateId>)>,
    claimed: ExactComplex,
    first: Configuration,
    second: Configuration,
) -> Result<OrthogonalityFailure> {
    let inner_product = column_inner_product(reference, &first, &second);
    if first == second || inner_product.is_zero() || inner_product != claimed {
        return Err(CoreError::Inconsistent(format!(
            "orthogonality witness {first:?}, {second:?}: claimed {claimed}, oracle {inner_product}"
        )));
    }
    Ok(OrthogonalityFailure {
        walk,
        first,
        second,
        inner_product,
    })
}

fn unit_norms_against(a: &Lqca, reference: &Lqca) -> Result<Option<NormFailure>> {
    let g = build_debruijn(a)?;
    match detect_small_cycle(&g).or_else(|| detect_large_cycle(&g)) {
        None => Ok(None),
        Some(w) => {
            let config = cycle_to_config(&w);
            verify_norm(reference, Some(w), config).map(Some)
        }
    }
}

fn orthogonality_against(
    a: &Lqca,
    reference: &Lqca,
    exec: Execution,
) -> Result<Option<OrthogonalityFailure>> {
    let h = build_pair_graph_with(a, exec)?;
    let Some(&v) = scc_of_source(&h).iter().find(|&&p| !h.is_diagonal(p)) else {
        return Ok(None);
    };
    let walk = closed_walk_through(&h, v)?;
    let claimed = walk_inner_product(a, &walk);
    let q = a.quiescent();
    let letters = |pick: fn(&PairEdge) -> usize| -> Vec<StateId> {
        walk.iter()
            .map(|e| *h.label_word(pick(e)).last().expect("labels are non-empty"))
            .collect()
    };
    // both components live in one coordinate frame, so they are shifted together
    let (first, second) = normalize_pair(
        &Configuration::from_word(q, 0, &letters(|e| e.label1)),
        &Configuration::from_word(q, 0, &letters(|e| e.label2)),
    );
    let labels = walk
        .iter()
        .map(|e| (h.label_word(e.label1), h.label_word(e.label2)))
        .collect();
    verify_orthogonality(reference, labels, claimed, first, second).map(Some)
}

/// Unit-norm check for a simple automaton.
pub fn check_unit_norms(a: &Lqca) -> Result<Option<NormFailure>> {
    unit_norms_against(a, a)
}

/// Orthogonality check for a simple automaton with `r ≥ 2`.
pub fn check_orthogonality(a: &Lqca) -> Result<Option<OrthogonalityFailure>> {
    orthogonality_against(a, a, Execution::default())
}

/// Single-cell criterion: the rules are orthonormal.
pub fn check_trivial(a: &Lqca) -> Result<Verdict> {
    check_trivial_with(a, &DecideOptions::default())
}

fn single_cell(a: &Lqca, x: StateId) -> Configuration {
    Configuration::from_cells(a.quiescent(), [(0, x)])
}

fn check_trivial_with(a: &Lqca, opts: &DecideOptions) -> Result<Verdict> {
    if !a.is_trivial() {
        return Err(CoreError::Contract(
            "check_trivial needs a single-cell neighborhood".into(),
        ));
    }
    let states: Vec<StateId> = a.alphabet().states().collect();
    let norm = match states
        .iter()
        .find(|&&x| !a.rule(&[x]).squared_norm().is_one())
    {
        Some(&x) => Some(verify_norm(a, None, single_cell(a, x))?),
        None => None,
    };
    let ortho = if norm.is_none() || opts.full_report {
        let pair = states.iter().enumerate().find_map(|(i, &x)| {
            states[i + 1..].iter().find_map(|&y| {
                let ip = a
                    .rule(&[x])
                    .inner_product(a.rule(&[y]))
                    .expect("same alphabet");
                (!ip.is_zero()).then_some((x, y, ip))
            })
        });
        Some(match pair {
            Some((x, y, ip)) => Some(verify_orthogonality(
                a,
                Vec::new(),
                ip,
                single_cell(a, x),
                single_cell(a, y),
            )?),
            None => None,
        })
    } else {
        None
    };
    Ok(Verdict::from_checks(norm, ortho))
}

fn decide_simple(a: &Lqca, reference: &Lqca, opts: &DecideOptions) -> Result<Verdict> {
    if a.is_trivial() {
        return check_trivial_with(a, opts);
    }
    let norm = unit_norms_against(a, reference)?;
    let ortho = if norm.is_none() || opts.full_report {
        Some(orthogonality_against(a, reference, opts.execution)?)
    } else {
        None
    };
    Ok(Verdict::from_checks(norm, ortho))
}

/// Decides whether `a` is well-formed. Non-simple inputs are simplified
/// first; witnesses are always verified against `a` itself.
pub fn decide(a: &Lqca) -> Result<Verdict> {
    decide_with(a, &DecideOptions::default())
}

pub fn decide_with(a: &Lqca, opts: &DecideOptions) -> Result<Verdict> {
    if a.is_simple() {
        return decide_simple(a, a, opts);
    }
    let (simple, report) = simplify(a, opts.span_limit)?;
    let mut verdict = decide_simple(&simple, a, opts)?;
    verdict.simplification = Some(report);
    Ok(verdict)
}

/// Decides many automata; results keep input order.
pub fn decide_batch(automata: &[Lqca], opts: &DecideOptions) -> Vec<Result<Verdict>> {
    let inner = DecideOptions {
        execution: Execution::Sequential,
        ..*opts
    };
    par::map_slice(opts.execution, automata, |a| decide_with(a, &inner))
}

/// Conjugate-transpose rule `δ⁻¹(y)(x) = conj(δ(x)(y))` of a well-formed
/// single-cell automaton, on the mirrored offset.
pub fn trivial_inverse(a: &Lqca) -> Result<Lqca> {
    if !a.is_trivial() {
        return Err(CoreError::Contract(
            "trivial_inverse needs a single-cell neighborhood".into(),
        ));
    }
    if !check_trivial(a)?.well_formed {
        return Err(CoreError::Contract(
            "trivial_inverse needs a well-formed automaton".into(),
        ));
    }
    let k = a.num_states();
    let nb = Neighborhood::new(vec![-a.neighborhood().first()])?;
    Lqca::from_fn(a.alphabet().clone(), nb, |w| {
        let y = w[0];
        LocalSuperposition::new(
            (0..k)
                .map(|x| a.rule(&[StateId(x)]).amp(y).conj())
                .collect(),
        )
    })
}

#[cfg(test)]
mod tests;
