//! Term evaluation and equation checking.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{Algebra, Element, FiniteView};
use crate::error::{Error, Result};
use crate::term::{Equation, Term};

/// Elements per variable under the default bounded strategy.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every tuple over the full (finite) carrier.
    Exhaustive,
    /// Every tuple over the first `n` sampled elements.
    Bounded(usize),
}

impl Strategy {
    /// Exhaustive for finite algebras, bounded otherwise.
    pub fn for_algebra(alg: &Algebra, bound: usize) -> Strategy {
        if alg.is_finite() {
            Strategy::Exhaustive
        } else {
            Strategy::Bounded(bound)
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::Bounded(n) => write!(f, "bounded({n})"),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One variable of a refuting assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip)]
    pub element: Element,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CheckStatus {
    Valid,
    BoundedValid { bound: usize, checked: u64 },
    Refuted { witness: Vec<Witness>, note: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub strategy: Strategy,
    #[serde(flatten)]
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    /// A passing report: `Valid` when exhaustive, `BoundedValid` otherwise.
    pub fn passing(subject: impl Into<String>, strategy: Strategy, checked: u64) -> Self {
        let status = match strategy {
            Strategy::Exhaustive => CheckStatus::Valid,
            Strategy::Bounded(bound) => CheckStatus::BoundedValid { bound, checked },
        };
        CheckReport {
            subject: subject.into(),
            strategy,
            status,
            children: Vec::new(),
        }
    }

    pub fn refuted(
        subject: impl Into<String>,
        strategy: Strategy,
        witness: Vec<Witness>,
        note: impl Into<String>,
    ) -> Self {
        CheckReport {
            subject: subject.into(),
            strategy,
            status: CheckStatus::Refuted {
                witness,
                note: note.into(),
            },
            children: Vec::new(),
        }
    }

    /// Conjunction of `children`. The first refuted child decides the
    /// witness; otherwise the result is bounded if any child is.
    pub fn all(subject: impl Into<String>, strategy: Strategy, children: Vec<CheckReport>) -> Self {
        let mut status = CheckStatus::Valid;
        let mut checked = 0u64;
        let mut bound = None;
        for c in &children {
            match &c.status {
                CheckStatus::Refuted { witness, note } => {
                    status = CheckStatus::Refuted {
                        witness: witness.clone(),
                        note: format!("{}: {note}", c.subject),
                    };
                    break;
                }
                CheckStatus::BoundedValid { bound: b, checked: k } => {
                    bound = Some(bound.map_or(*b, |x: usize| x.max(*b)));
                    checked += k;
                }
                CheckStatus::Valid => {}
            }
        }
        if let (CheckStatus::Valid, Some(bound)) = (&status, bound) {
            status = CheckStatus::BoundedValid { bound, checked };
        }
        CheckReport {
            subject: subject.into(),
            strategy,
            status,
            children,
        }
    }

    pub fn passed(&self) -> bool {
        !self.is_refuted()
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.status, CheckStatus::Refuted { .. })
    }

    pub fn witness(&self) -> &[Witness] {
        match &self.status {
            CheckStatus::Refuted { witness, .. } => witness,
            _ => &[],
        }
    }

    /// `label=name` pairs of the witness, in order.
    pub fn witness_names(&self) -> Vec<(String, String)> {
        self.witness()
            .iter()
            .map(|w| (w.label.clone(), w.name.clone()))
            .collect()
    }

    /// Depth-first search for a descendant (or self) by subject.
    pub fn find(&self, subject: &str) -> Option<&CheckReport> {
        if self.subject == subject {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(subject))
    }
}

/// Walks all `k`-tuples over `0..n` in lexicographic order (first position
/// varies slowest) and returns the first tuple rejected by `ok`.
pub fn for_each_tuple(n: usize, k: usize, mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if k > 0 && n == 0 {
        return None;
    }
    let mut t = vec![0; k];
    loop {
        if !ok(&t) {
            return Some(t);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < n {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn tuple_count(n: usize, k: usize) -> u64 {
    (n as u64).saturating_pow(k as u32)
}

fn check_signature(alg: &Algebra, t: &Term) -> Result<()> {
    if t.uses_zero() && alg.zero().is_none() {
        Err(Error::SymbolAbsent("zero"))
    } else {
        Ok(())
    }
}

pub(crate) fn eval_unchecked(alg: &Algebra, t: &Term, env: &[Element]) -> Element {
    match t {
        Term::Var(i) => env[*i].clone(),
        Term::One => alg.one(),
        Term::Zero => alg.zero().expect("signature checked"),
        Term::Bin(op, l, r) => {
            let x = eval_unchecked(alg, l, env);
            let y = eval_unchecked(alg, r, env);
            alg.op(*op, &x, &y)
        }
    }
}

pub(crate) fn eval_index(view: &FiniteView, t: &Term, env: &[usize]) -> usize {
    match t {
        Term::Var(i) => env[*i],
        Term::One => view.one(),
        Term::Zero => view.zero().expect("signature checked"),
        Term::Bin(op, l, r) => view.op(*op, eval_index(view, l, env), eval_index(view, r, env)),
    }
}

/// Evaluates `t` with `x{i+1}` bound to `env[i]`.
pub fn eval(alg: &Algebra, t: &Term, env: &[Element]) -> Result<Element> {
    check_signature(alg, t)?;
    if env.len() < t.arity() {
        return Err(Error::ShortEnvironment {
            given: env.len(),
            needed: t.arity(),
        });
    }
    for e in env {
        alg.check_member(e)?;
    }
    if let Some(view) = alg.finite() {
        let idx: Vec<usize> = env.iter().map(|e| view.index_of(e).expect("member")).collect();
        return Ok(view.element(eval_index(view, t, &idx)).clone());
    }
    Ok(eval_unchecked(alg, t, env))
}

/// `a <= b`, read as `a -> b = 1`.
pub fn leq(alg: &Algebra, a: &Element, b: &Element) -> Result<bool> {
    Ok(alg.imp(a, b)? == alg.one())
}

pub(crate) fn witness(alg: &Algebra, labels: &[&str], values: &[Element]) -> Vec<Witness> {
    labels
        .iter()
        .zip(values)
        .map(|(l, e)| Witness {
            label: l.to_string(),
            element: e.clone(),
            name: alg.render(e),
        })
        .collect()
}

/// Checks `eq` over every tuple of the strategy's domain.
pub fn check_equation(alg: &Algebra, eq: &Equation, strategy: Strategy) -> Result<CheckReport> {
    check_signature(alg, &eq.lhs)?;
    check_signature(alg, &eq.rhs)?;
    let domain = alg.domain(strategy)?;
    let k = eq.variables;
    let labels: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let subject = eq.to_string();

    let failure = if let Some(view) = alg.finite() {
        let idx: Vec<usize> = domain.iter().map(|e| view.index_of(e).expect("member")).collect();
        let mut env = vec![0; k];
        for_each_tuple(idx.len(), k, |t| {
            for (slot, i) in env.iter_mut().zip(t) {
                *slot = idx[*i];
            }
            eval_index(view, &eq.lhs, &env) == eval_index(view, &eq.rhs, &env)
        })
    } else {
        let mut env = vec![alg.one(); k];
        for_each_tuple(domain.len(), k, |t| {
            for (slot, i) in env.iter_mut().zip(t) {
                *slot = domain[*i].clone();
            }
            eval_unchecked(alg, &eq.lhs, &env) == eval_unchecked(alg, &eq.rhs, &env)
        })
    };

    Ok(match failure {
        None => CheckReport::passing(subject, strategy, tuple_count(domain.len(), k)),
        Some(t) => {
            let values: Vec<Element> = t.iter().map(|i| domain[*i].clone()).collect();
            let l = eval_unchecked(alg, &eq.lhs, &values);
            let r = eval_unchecked(alg, &eq.rhs, &values);
            let note = format!("lhs = {}, rhs = {}", alg.render(&l), alg.render(&r));
            CheckReport::refuted(subject, strategy, witness(alg, &labels, &values), note)
        }
    })
}

/// Checks a property of `labels.len()`-tuples that is not an equation.
/// `test` returns `Some(note)` on failure.
pub(crate) fn check_property(
    alg: &Algebra,
    subject: &str,
    strategy: Strategy,
    labels: &[&str],
    test: impl Fn(&[Element]) -> Option<String>,
) -> Result<CheckReport> {
    let domain = alg.domain(strategy)?;
    check_property_on(alg, subject, strategy, &domain, labels, test)
}

/// As [`check_property`] over an explicit domain.
pub(crate) fn check_property_on(
    alg: &Algebra,
    subject: &str,
    strategy: Strategy,
    domain: &[Element],
    labels: &[&str],
    test: impl Fn(&[Element]) -> Option<String>,
) -> Result<CheckReport> {
    let k = labels.len();
    let mut values = vec![alg.one(); k];
    let mut note = None;
    let failure = for_each_tuple(domain.len(), k, |t| {
        for (slot, i) in values.iter_mut().zip(t) {
            *slot = domain[*i].clone();
        }
        note = test(&values);
        note.is_none()
    });
    Ok(match failure {
        None => CheckReport::passing(subject, strategy, tuple_count(domain.len(), k)),
        Some(_) => CheckReport::refuted(
            subject,
            strategy,
            witness(alg, labels, &values),
            note.unwrap_or_default(),
        ),
    })
}
