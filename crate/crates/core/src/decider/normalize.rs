//! Exact renormalization `δ'(w) = δ(w) / ‖δ(w)‖`.
//!
//! `‖δ(w)‖` is irrational in general, so a rule is divided outright only when
//! its squared norm is a rational square. Otherwise the original rule is
//! kept together with its squared scale `s(w)`, meaning `δ'(w) = δ(w)/√s(w)`.

use std::fmt;

use crate::automaton::{Lqca, StateId};
use crate::config::{ext, Configuration};
use crate::error::Result;
use crate::num::{ExactComplex, Rational};

/// The number `value / √sq_scale` with `sq_scale > 0`.
#[derive(Clone, Debug)]
pub struct ScaledComplex {
    pub value: ExactComplex,
    pub sq_scale: Rational,
}

impl ScaledComplex {
    pub fn exact(value: ExactComplex) -> Self {
        ScaledComplex {
            value,
            sq_scale: Rational::one(),
        }
    }

    pub fn one() -> Self {
        Self::exact(ExactComplex::one())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `|value|² / sq_scale`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.value.norm_sqr() / &self.sq_scale
    }

    /// The value as an exact complex number, when the scale has a rational root.
    pub fn to_exact(&self) -> Option<ExactComplex> {
        if self.value.is_zero() {
            return Some(ExactComplex::zero());
        }
        let root = self.sq_scale.sqrt_exact()?;
        Some(self.value.scale(&root.recip().expect("positive scale")))
    }

    pub fn mul(&self, other: &ScaledComplex) -> ScaledComplex {
        ScaledComplex {
            value: &self.value * &other.value,
            sq_scale: &self.sq_scale * &other.sq_scale,
        }
    }
}

impl PartialEq for ScaledComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.value.is_zero() || other.value.is_zero() {
            return self.value.is_zero() && other.value.is_zero();
        }
        // a/√s = b/√t  ⇔  a = b·√(s/t), which needs √(s/t) rational
        match (&self.sq_scale / &other.sq_scale).sqrt_exact() {
            Some(root) => self.value == other.value.scale(&root),
            None => false,
        }
    }
}

impl Eq for ScaledComplex {}

impl fmt::Display for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_exact() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "({})/sqrt({})", self.value, self.sq_scale),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalizedLqca {
    base: Lqca,
    sq_scales: Vec<Rational>,
}

impl NormalizedLqca {
    /// The stored rules; entry `w` still has to be divided by `√sq_scale(w)`.
    pub fn base(&self) -> &Lqca {
        &self.base
    }

    pub fn sq_scales(&self) -> &[Rational] {
        &self.sq_scales
    }

    pub fn sq_scale(&self, index: usize) -> &Rational {
        &self.sq_scales[index]
    }

    /// True when every rule could be divided exactly.
    pub fn is_exact(&self) -> bool {
        self.sq_scales.iter().all(Rational::is_one)
    }

    /// The renormalized automaton itself, when no irrational scale remains.
    pub fn to_exact(&self) -> Option<Lqca> {
        self.is_exact().then(|| self.base.clone())
    }

    pub fn amp(&self, index: usize, s: StateId) -> ScaledComplex {
        ScaledComplex {
            value: self.base.rule_at(index).amp(s).clone(),
            sq_scale: self.sq_scales[index].clone(),
        }
    }

    /// `‖δ'(w)‖²`; 1 for every word by construction.
    pub fn rule_sq_norm(&self, index: usize) -> Rational {
        &self.base.rule_at(index).squared_norm() / &self.sq_scales[index]
    }

    pub fn rule_inner_product(&self, i: usize, j: usize) -> ScaledComplex {
        ScaledComplex {
            value: self
                .base
                .rule_at(i)
                .inner_product(self.base.rule_at(j))
                .expect("same alphabet"),
            sq_scale: &self.sq_scales[i] * &self.sq_scales[j],
        }
    }

    /// `U_{A'}(d, c)` of the renormalized automaton.
    pub fn transition_amplitude(&self, d: &Configuration, c: &Configuration) -> ScaledComplex {
        let a = &self.base;
        let reach = ext(c.idom(), a.neighborhood());
        if !reach.contains_interval(&d.idom()) {
            return ScaledComplex::exact(ExactComplex::zero());
        }
        let k = a.num_states();
        reach.iter().fold(ScaledComplex::one(), |acc, i| {
            let w = a
                .neighborhood()
                .offsets()
                .iter()
                .fold(0, |x, &off| x * k + c.state(i + off).0);
            acc.mul(&self.amp(w, d.state(i)))
        })
    }
}

pub fn normalize(a: &Lqca) -> Result<NormalizedLqca> {
    let mut table = Vec::with_capacity(a.table().len());
    let mut sq_scales = Vec::with_capacity(a.table().len());
    for rule in a.table() {
        let sq = rule.squared_norm();
        match sq.sqrt_exact() {
            Some(norm) => {
                table.push(rule.scale(&norm.recip().expect("positive norm")));
                sq_scales.push(Rational::one());
            }
            None => {
                table.push(rule.clone());
                sq_scales.push(sq);
            }
        }
    }
    Ok(NormalizedLqca {
        base: a.with_table(table)?,
        sq_scales,
    })
}
