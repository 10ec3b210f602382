//! Ground-truth evaluation of the evolution operator `U_A` at desk scale.
//!
//! Everything here is exponential on purpose: it exists to check the
//! polynomial graph engine, not to scale. Enumeration sizes are compared
//! against an explicit [`OracleConfig::bound`] before any work starts.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::automaton::{Lqca, StateId};
use crate::config::{ext, window_config, Configuration, Interval};
use crate::error::{CoreError, Result};
use crate::num::{ExactComplex, Rational};
use crate::par::{self, Execution};

pub const DEFAULT_RESOURCE_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of terms, configurations or pairs one call may enumerate.
    pub bound: u64,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            bound: DEFAULT_RESOURCE_BOUND,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn with_bound(bound: u64) -> Self {
        OracleConfig {
            bound,
            ..Self::default()
        }
    }

    fn admit(&self, needed: &BigUint) -> Result<usize> {
        if needed > &BigUint::from(self.bound) {
            return Err(CoreError::ResourceBound {
                needed: needed.clone(),
                bound: self.bound,
            });
        }
        Ok(usize::try_from(needed).expect("bounded by u64"))
    }
}

fn count_words(states: usize, len: usize) -> BigUint {
    num_traits::pow(BigUint::from(states), len)
}

/// Table index of the rule applied at cell `i` of `c`.
fn rule_index_at(a: &Lqca, c: &Configuration, i: i64) -> usize {
    let k = a.num_states();
    a.neighborhood()
        .offsets()
        .iter()
        .fold(0, |acc, &off| acc * k + c.state(i + off).0)
}

/// `U_A(d, c) = ∏_i [δ(c_{i+N})](d_i)`.
pub fn transition_amplitude(a: &Lqca, d: &Configuration, c: &Configuration) -> ExactComplex {
    let reach = ext(c.idom(), a.neighborhood());
    if !reach.contains_interval(&d.idom()) {
        return ExactComplex::zero();
    }
    let mut acc = ExactComplex::one();
    for i in reach.iter() {
        let amp = a.rule_at(rule_index_at(a, c, i)).amp(d.state(i));
        if amp.is_zero() {
            return ExactComplex::zero();
        }
        acc = &acc * amp;
    }
    acc
}

fn joint_extension(a: &Lqca, c: &Configuration, c2: &Configuration) -> Interval {
    ext(c.idom(), a.neighborhood()).hull(&ext(c2.idom(), a.neighborhood()))
}

/// `⟨U_A(·,c), U_A(·,c2)⟩` by the per-cell product formula.
pub fn column_inner_product(a: &Lqca, c: &Configuration, c2: &Configuration) -> ExactComplex {
    let mut acc = ExactComplex::one();
    for i in joint_extension(a, c, c2).iter() {
        let f = a
            .rule_at(rule_index_at(a, c, i))
            .inner_product(a.rule_at(rule_index_at(a, c2, i)))
            .expect("same alphabet");
        if f.is_zero() {
            return ExactComplex::zero();
        }
        acc = &acc * &f;
    }
    acc
}

/// `⟨U_A(·,c), U_A(·,c2)⟩` by summing over every `d' ∈ Σ^I`.
pub fn column_inner_product_direct(
    a: &Lqca,
    c: &Configuration,
    c2: &Configuration,
    interval: Interval,
    cfg: &OracleConfig,
) -> Result<ExactComplex> {
    let required = joint_extension(a, c, c2);
    if !interval.contains_interval(&required) {
        return Err(CoreError::Contract(format!(
            "interval {interval} does not contain {required}"
        )));
    }
    let total = cfg.admit(&count_words(a.num_states(), interval.len()))?;
    let k = a.num_states();
    let rules1: Vec<_> = interval
        .iter()
        .map(|i| a.rule_at(rule_index_at(a, c, i)))
        .collect();
    let rules2: Vec<_> = interval
        .iter()
        .map(|i| a.rule_at(rule_index_at(a, c2, i)))
        .collect();
    Ok(par::sum_complex(cfg.execution, 0..total, |mut n| {
        let mut t1 = ExactComplex::one();
        let mut t2 = ExactComplex::one();
        for (u, v) in rules1.iter().zip(&rules2) {
            let s = StateId(n % k);
            n /= k;
            t1 = &t1 * u.amp(s);
            t2 = &t2 * v.amp(s);
            if t1.is_zero() || t2.is_zero() {
                return ExactComplex::zero();
            }
        }
        t1.mul_conj(&t2)
    }))
}

/// `‖U_A(·,c)‖² = ∏_i ‖δ(c_{i+N})‖²`.
pub fn column_sq_norm(a: &Lqca, c: &Configuration) -> Rational {
    ext(c.idom(), a.neighborhood())
        .iter()
        .map(|i| a.rule_at(rule_index_at(a, c, i)).squared_norm())
        .product()
}

/// Finite superposition of configurations whose supports lie in `window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSuperposition {
    window: Interval,
    amps: BTreeMap<Configuration, ExactComplex>,
}

impl WindowSuperposition {
    /// Zero amplitudes are dropped; supports outside `window` are an error.
    pub fn new(
        window: Interval,
        amps: impl IntoIterator<Item = (Configuration, ExactComplex)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (c, z) in amps {
            if !window.contains_interval(&c.idom()) {
                return Err(CoreError::Contract(format!(
                    "configuration {c:?} leaves window {window}"
                )));
            }
            let entry = map.entry(c).or_insert_with(ExactComplex::zero);
            *entry = &*entry + &z;
        }
        map.retain(|_, z: &mut ExactComplex| !z.is_zero());
        Ok(WindowSuperposition { window, amps: map })
    }

    pub fn basis(window: Interval, c: Configuration) -> Result<Self> {
        Self::new(window, [(c, ExactComplex::one())])
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn amps(&self) -> &BTreeMap<Configuration, ExactComplex> {
        &self.amps
    }

    pub fn amp(&self, c: &Configuration) -> ExactComplex {
        self.amps.get(c).cloned().unwrap_or_else(ExactComplex::zero)
    }

    pub fn squared_norm(&self) -> Rational {
        self.amps.values().map(ExactComplex::norm_sqr).sum()
    }

    pub fn inner_product(&self, other: &WindowSuperposition) -> ExactComplex {
        self.amps
            .iter()
            .map(|(c, z)| z.mul_conj(&other.amp(c)))
            .sum()
    }

    /// Same superposition viewed in a larger window.
    pub fn widen(&self, window: Interval) -> Result<Self> {
        Self::new(window, self.amps.clone())
    }
}

/// One application of `U_A`; the result lives on `ext(window)`.
pub fn step(a: &Lqca, s: &WindowSuperposition, cfg: &OracleConfig) -> Result<WindowSuperposition> {
    let out = ext(s.window, a.neighborhood());
    let total = cfg.admit(&count_words(a.num_states(), out.len()))?;
    let inputs: Vec<_> = s.amps.iter().collect();
    let images = par::map_range(cfg.execution, 0..total, |n| {
        let d = window_config(n, out, a.alphabet());
        let z: ExactComplex = inputs
            .iter()
            .map(|(c, w)| &transition_amplitude(a, &d, c) * w)
            .sum();
        (d, z)
    });
    WindowSuperposition::new(out, images)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowViolation {
    Norm {
        config: Configuration,
        sq_norm: Rational,
    },
    Orthogonality {
        first: Configuration,
        second: Configuration,
        inner_product: ExactComplex,
    },
}

/// Jointly translate so the leftmost non-quiescent cell of either sits at 0.
pub(crate) fn normalize_pair(
    c: &Configuration,
    c2: &Configuration,
) -> (Configuration, Configuration) {
    match c.idom().hull(&c2.idom()).bounds() {
        Some((lo, _)) => (c.shifted(-lo), c2.shifted(-lo)),
        None => (c.clone(), c2.clone()),
    }
}

/// Checks every column with support in `[-radius, radius]` for unit norm and
/// every pair of distinct such columns for orthogonality.
///
/// Configurations are visited in [`crate::config::enumerate_window`] order;
/// for each one its norm is checked, then its pairs with every later one.
/// The first violation is reported translated so its support starts at 0
/// (`U_A` commutes with translation).
pub fn window_check(a: &Lqca, radius: u32, cfg: &OracleConfig) -> Result<Option<WindowViolation>> {
    let window = Interval::centered(radius as i64);
    let m = count_words(a.num_states(), window.len());
    let pairs = &m * (&m + 1u32) / 2u32;
    cfg.admit(&pairs)?;
    let m = usize::try_from(&m).expect("bounded");

    let cover = ext(window, a.neighborhood());
    let configs: Vec<Configuration> = (0..m)
        .map(|n| window_config(n, window, a.alphabet()))
        .collect();
    let rule_rows: Vec<Vec<usize>> = configs
        .iter()
        .map(|c| cover.iter().map(|i| rule_index_at(a, c, i)).collect())
        .collect();

    let t = a.table().len();
    let sq_norms: Vec<Rational> = a.table().iter().map(|r| r.squared_norm()).collect();
    let overlaps: Vec<bool> = (0..t * t)
        .map(|n| {
            !a.rule_at(n / t)
                .inner_product(a.rule_at(n % t))
                .expect("same alphabet")
                .is_zero()
        })
        .collect();

    let found = par::find_map_first(cfg.execution, 0..m, |i| {
        let row = &rule_rows[i];
        let sq_norm: Rational = row.iter().map(|&l| &sq_norms[l]).product();
        if !sq_norm.is_one() {
            return Some(WindowViolation::Norm {
                config: configs[i].normalized(),
                sq_norm,
            });
        }
        (i + 1..m).find_map(|j| {
            // the product vanishes iff some factor does
            let overlapping = row
                .iter()
                .zip(&rule_rows[j])
                .all(|(&l1, &l2)| overlaps[l1 * t + l2]);
            overlapping.then(|| {
                let (first, second) = normalize_pair(&configs[i], &configs[j]);
                let inner_product = column_inner_product(a, &first, &second);
                WindowViolation::Orthogonality {
                    first,
                    second,
                    inner_product,
                }
            })
        })
    });
    Ok(found)
}

/// Enumerates every configuration with support in `window`.
pub fn window_configurations(
    a: &Lqca,
    window: Interval,
    cfg: &OracleConfig,
) -> Result<Vec<Configuration>> {
    let total = cfg.admit(&count_words(a.num_states(), window.len()))?;
    Ok((0..total)
        .map(|n| window_config(n, window, a.alphabet()))
        .collect())
}
