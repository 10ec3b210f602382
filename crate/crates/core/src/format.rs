//! Line-oriented text documents for automata.
//!
//! `.lqca`:
//!
//! ```text
//! # comment
//! states q p
//! quiescent q
//! neighborhood 0 1
//! q q -> q:1
//! q p -> q:1/2
//! p q -> p:2
//! p p -> p:1
//! ```
//!
//! `.plqca`:
//!
//! ```text
//! plqca v1
//! factor 0 1
//! factor 0 1
//! neighborhood 0 1
//! Q 0.1 <- 0.1 : 1
//! ```
//!
//! Unlisted targets have amplitude 0.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::automaton::{Alphabet, LocalSuperposition, Lqca, Neighborhood, StateId};
use crate::error::CoreError;
use crate::num::{ExactComplex, Rational};
use crate::plqca::{FactorAlphabets, Plqca, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("expected `{expected}`, found `{found}`")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("missing `{0}` line")]
    MissingHeader(&'static str),
    #[error("duplicate rule for word `{0}`")]
    DuplicateRule(String),
    #[error("missing rule for word `{0}`")]
    MissingRule(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("neighborhood offsets must be strictly increasing")]
    NonIncreasingNeighborhood,
    #[error("rule for word `{0}` has zero norm")]
    ZeroNorm(String),
    #[error("quiescent rule `{0}` must map to the quiescent state with amplitude 1")]
    QuiescentRule(String),
    #[error("target `{0}` listed twice")]
    DuplicateTarget(String),
    #[error("bad amplitude `{0}`")]
    BadAmplitude(String),
    #[error("rule word has {found} states, neighborhood has {expected}")]
    WordLength { expected: usize, found: usize },
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Invalid(CoreError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FormatError {
    /// 1-based line number, when the problem is tied to a line.
    pub line: Option<usize>,
    pub kind: FormatErrorKind,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError {
        line: Some(line),
        kind,
    }
}

fn err_at(line: Option<usize>, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

/// Non-blank lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

struct Lines<'a, I: Iterator<Item = (usize, &'a str)>> {
    inner: std::iter::Peekable<I>,
    last: usize,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Lines<'a, I> {
    fn header(&mut self, keyword: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let Some((n, l)) = self.inner.next() else {
            return Err(err_at(None, FormatErrorKind::MissingHeader(keyword)));
        };
        self.last = n;
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some(k) if k == keyword => Ok((n, toks.collect())),
            _ => Err(err(
                n,
                FormatErrorKind::Expected {
                    expected: keyword,
                    found: l.to_string(),
                },
            )),
        }
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner
            .peek()
            .and_then(|(_, l)| l.split_whitespace().next())
    }
}

fn parse_offsets(n: usize, toks: &[&str]) -> Result<Neighborhood, FormatError> {
    let offsets = toks
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| err(n, FormatErrorKind::Syntax(format!("bad offset `{t}`"))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if offsets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(n, FormatErrorKind::NonIncreasingNeighborhood));
    }
    Neighborhood::new(offsets).map_err(|e| err(n, FormatErrorKind::Invalid(e)))
}

fn parse_amplitude(n: usize, text: &str) -> Result<ExactComplex, FormatError> {
    text.parse()
        .map_err(|_| err(n, FormatErrorKind::BadAmplitude(text.to_string())))
}

fn lookup(n: usize, alphabet: &Alphabet, name: &str) -> Result<StateId, FormatError> {
    alphabet
        .state(name)
        .ok_or_else(|| err(n, FormatErrorKind::UnknownState(name.to_string())))
}

pub fn parse_lqca(text: &str) -> Result<Lqca, FormatError> {
    let mut lines = Lines {
        inner: content_lines(text).peekable(),
        last: 0,
    };
    let (n, names) = lines.header("states")?;
    let (qn, q) = lines.header("quiescent")?;
    let [q] = q.as_slice() else {
        return Err(err(
            qn,
            FormatErrorKind::Syntax("`quiescent` takes one state".into()),
        ));
    };
    let alphabet = Alphabet::new(names.iter().copied(), q).map_err(|e| match e {
        CoreError::InvalidAlphabet(m) if m.contains("not listed") => {
            err(qn, FormatErrorKind::UnknownState(q.to_string()))
        }
        e => err(n, FormatErrorKind::Invalid(e)),
    })?;
    let (nn, offsets) = lines.header("neighborhood")?;
    let nb = parse_offsets(nn, &offsets)?;

    let k = alphabet.len();
    let r = nb.size();
    let total = k
        .checked_pow(r as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| err(nn, FormatErrorKind::Syntax("rule table too large".into())))?;
    let mut table: Vec<Option<LocalSuperposition>> = vec![None; total];
    let q_word = (0..r).fold(0, |acc, _| acc * k + alphabet.quiescent().0);

    for (n, l) in lines.inner {
        let Some((lhs, rhs)) = l.split_once("->") else {
            return Err(err(
                n,
                FormatErrorKind::Syntax(format!("expected `WORD -> TARGETS`, found `{l}`")),
            ));
        };
        let word = lhs
            .split_whitespace()
            .map(|s| lookup(n, &alphabet, s))
            .collect::<Result<Vec<_>, _>>()?;
        if word.len() != r {
            return Err(err(
                n,
                FormatErrorKind::WordLength {
                    expected: r,
                    found: word.len(),
                },
            ));
        }
        let word_name = lhs.split_whitespace().collect::<Vec<_>>().join(" ");
        let idx = word.iter().fold(0, |acc, s| acc * k + s.0);
        if table[idx].is_some() {
            return Err(err(n, FormatErrorKind::DuplicateRule(word_name)));
        }
        let mut amps = vec![None; k];
        for tok in rhs.split_whitespace() {
            let Some((target, amp)) = tok.split_once(':') else {
                return Err(err(
                    n,
                    FormatErrorKind::Syntax(format!("expected `STATE:AMPLITUDE`, found `{tok}`")),
                ));
            };
            let s = lookup(n, &alphabet, target)?;
            if amps[s.0].is_some() {
                return Err(err(n, FormatErrorKind::DuplicateTarget(target.to_string())));
            }
            amps[s.0] = Some(parse_amplitude(n, amp)?);
        }
        let rule = LocalSuperposition::new(
            amps.into_iter()
                .map(|a| a.unwrap_or_else(ExactComplex::zero))
                .collect(),
        );
        if rule.squared_norm().is_zero() {
            return Err(err(n, FormatErrorKind::ZeroNorm(word_name)));
        }
        if idx == q_word && !rule.is_basis(alphabet.quiescent()) {
            return Err(err(n, FormatErrorKind::QuiescentRule(word_name)));
        }
        table[idx] = Some(rule);
    }

    let mut rules = Vec::with_capacity(total);
    for (idx, rule) in table.into_iter().enumerate() {
        match rule {
            Some(rule) => rules.push(rule),
            None => {
                let word = crate::automaton::decode_word(idx, k, r);
                let name = word
                    .iter()
                    .map(|&s| alphabet.name(s))
                    .collect::<Vec<_>>()
                    .join(" ");
                return Err(err_at(None, FormatErrorKind::MissingRule(name)));
            }
        }
    }
    Lqca::new(alphabet, nb, rules).map_err(|e| err_at(None, FormatErrorKind::Invalid(e)))
}

fn render_targets(alphabet: &Alphabet, rule: &LocalSuperposition) -> String {
    rule.amps()
        .iter()
        .enumerate()
        .filter(|(_, z)| !z.is_zero())
        .map(|(s, z)| format!("{}:{}", alphabet.name(StateId(s)), z))
        .collect::<Vec<_>>()
        .join(" ")
}

fn offsets_line(nb: &Neighborhood) -> String {
    nb.offsets()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_lqca(a: &Lqca) -> String {
    let ab = a.alphabet();
    let mut out = String::new();
    out.push_str(&format!("states {}\n", ab.names().join(" ")));
    out.push_str(&format!("quiescent {}\n", ab.name(ab.quiescent())));
    out.push_str(&format!(
        "neighborhood {}\n",
        offsets_line(a.neighborhood())
    ));
    for (idx, rule) in a.table().iter().enumerate() {
        out.push_str(&format!(
            "{} -> {}\n",
            a.word_name(idx),
            render_targets(ab, rule)
        ));
    }
    out
}

/// `.scales` sidecar of a renormalized document: `WORD : squared scale`,
/// one line per rule whose scale is not 1.
pub fn render_scales(a: &Lqca, sq_scales: &[Rational]) -> String {
    let mut out = String::from("# each listed rule is divided by the square root of its scale\n");
    for (idx, s) in sq_scales.iter().enumerate() {
        if !s.is_one() {
            out.push_str(&format!("{} : {}\n", a.word_name(idx), s));
        }
    }
    out
}

pub fn parse_plqca(text: &str) -> Result<Plqca, FormatError> {
    let mut lines = Lines {
        inner: content_lines(text).peekable(),
        last: 0,
    };
    let (hn, version) = lines.header("plqca")?;
    if version != ["v1"] {
        return Err(err(
            hn,
            FormatErrorKind::Syntax(format!("unsupported version `{}`", version.join(" "))),
        ));
    }
    let mut factor_names = Vec::new();
    let mut first_factor = None;
    while lines.peek_keyword() == Some("factor") {
        let (n, names) = lines.header("factor")?;
        first_factor.get_or_insert(n);
        factor_names.push(names.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }
    if factor_names.is_empty() {
        let (n, l) = lines.inner.peek().copied().unwrap_or((lines.last, ""));
        return Err(err(
            n,
            FormatErrorKind::Expected {
                expected: "factor",
                found: l.to_string(),
            },
        ));
    }
    let factors = FactorAlphabets::new(factor_names)
        .map_err(|e| err_at(first_factor, FormatErrorKind::Invalid(e)))?;
    let (nn, offsets) = lines.header("neighborhood")?;
    let nb = parse_offsets(nn, &offsets)?;
    let alphabet = factors.alphabet();

    let mut entries: BTreeMap<(usize, usize), ExactComplex> = BTreeMap::new();
    for (n, l) in lines.inner {
        let malformed = || {
            err(
                n,
                FormatErrorKind::Syntax(format!(
                    "expected `Q TARGET <- SOURCE : AMPLITUDE`, found `{l}`"
                )),
            )
        };
        let rest = l
            .strip_prefix('Q')
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(malformed)?;
        let (states, amp) = rest.split_once(':').ok_or_else(malformed)?;
        let (target, source) = states.split_once("<-").ok_or_else(malformed)?;
        let y = lookup(n, &alphabet, target.trim())?;
        let x = lookup(n, &alphabet, source.trim())?;
        if entries.contains_key(&(y.0, x.0)) {
            return Err(err(
                n,
                FormatErrorKind::DuplicateTarget(format!("{} <- {}", target.trim(), source.trim())),
            ));
        }
        entries.insert((y.0, x.0), parse_amplitude(n, amp.trim())?);
    }
    let mut q = QMatrix::zero(alphabet.len());
    for ((y, x), z) in entries {
        q.set(y, x, z);
    }
    Plqca::new(factors, nb, q).map_err(|e| {
        let kind = match e {
            CoreError::QuiescentRule { word } => FormatErrorKind::QuiescentRule(word),
            CoreError::ZeroNorm { word } => FormatErrorKind::ZeroNorm(word),
            e => FormatErrorKind::Invalid(e),
        };
        err_at(None, kind)
    })
}

pub fn render_plqca(p: &Plqca) -> String {
    let mut out = String::from("plqca v1\n");
    for f in p.factors().factors() {
        out.push_str(&format!("factor {}\n", f.join(" ")));
    }
    out.push_str(&format!(
        "neighborhood {}\n",
        offsets_line(p.neighborhood())
    ));
    let ab = p.alphabet();
    let q = p.qmatrix();
    for y in 0..q.dim() {
        for x in 0..q.dim() {
            let z = q.get(y, x);
            if !z.is_zero() {
                out.push_str(&format!(
                    "Q {} <- {} : {}\n",
                    ab.name(StateId(y)),
                    ab.name(StateId(x)),
                    z
                ));
            }
        }
    }
    out
}
