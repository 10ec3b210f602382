//! Filling a sparse neighborhood to an interval.

use num_bigint::BigUint;

use crate::automaton::{Lqca, Neighborhood};
use crate::error::{CoreError, Result};
use crate::num::Rational;

pub const DEFAULT_SPAN_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplificationReport {
    /// `a_r − a_1 + 1` of the input neighborhood.
    pub span: usize,
    /// Neighborhood size of the input.
    pub r: usize,
    /// `(span + 1) / (r + 1)`.
    pub expansion_factor: Rational,
    /// `|Σ|^(r+1)`.
    pub original_size: BigUint,
    /// `|Σ|^(span+1) = original_size^expansion_factor`.
    pub new_size: BigUint,
}

impl SimplificationReport {
    fn of(a: &Lqca) -> Self {
        let nb = a.neighborhood();
        let k = BigUint::from(a.num_states());
        SimplificationReport {
            span: nb.span(),
            r: nb.size(),
            expansion_factor: nb.expansion_factor(),
            original_size: num_traits::pow(k.clone(), nb.size() + 1),
            new_size: num_traits::pow(k, nb.span() + 1),
        }
    }
}

/// Equivalent simple automaton on `N' = (a_1, a_1+1, …, a_r)` whose rule
/// reads only the original offsets. Simple inputs come back unchanged.
pub fn simplify(a: &Lqca, span_limit: usize) -> Result<(Lqca, SimplificationReport)> {
    let report = SimplificationReport::of(a);
    if a.is_simple() {
        return Ok((a.clone(), report));
    }
    if report.span > span_limit {
        return Err(CoreError::SpanLimit {
            span: report.span,
            limit: span_limit,
            new_size: report.new_size,
        });
    }
    let nb = a.neighborhood();
    let first = nb.first();
    let positions: Vec<usize> = nb.offsets().iter().map(|&o| (o - first) as usize).collect();
    let filled = Neighborhood::interval(first, nb.last())?;
    let simple = Lqca::from_fn(a.alphabet().clone(), filled, |w| {
        let picked: Vec<_> = positions.iter().map(|&p| w[p]).collect();
        a.rule(&picked).clone()
    })?;
    Ok((simple, report))
}
