use std::fmt;

use serde::Serialize;

use super::filter::{is_filter_mask, Filter};
use crate::algebra::{Algebra, Element, TableAlgebra};
use crate::error::{Error, Result};
use crate::term::BinOp;

/// A partition of a finite carrier compatible with every operation.
#[derive(Clone)]
pub struct Congruence {
    algebra: Algebra,
    /// Block number of each carrier index; blocks are numbered by their
    /// smallest member.
    block: Vec<usize>,
    count: usize,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.block_names())
    }
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.block == other.block
    }
}

/// Renumbers so that blocks are numbered in order of first appearance.
fn normalise(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = std::collections::HashMap::new();
    let out = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (out, map.len())
}

fn compatible(alg: &Algebra, block: &[usize]) -> std::result::Result<(), String> {
    let v = alg.finite().expect("finite");
    let n = v.len();
    for op in BinOp::ALL {
        for a in 0..n {
            for b in 0..n {
                if block[a] != block[b] {
                    continue;
                }
                for c in 0..n {
                    let (x, y) = (v.op(op, a, c), v.op(op, b, c));
                    let (x2, y2) = (v.op(op, c, a), v.op(op, c, b));
                    if block[x] != block[y] || block[x2] != block[y2] {
                        return Err(format!(
                            "{} ~ {} but {} breaks with {}",
                            v.name(a),
                            v.name(b),
                            op.symbol().name(),
                            v.name(c)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

impl Congruence {
    fn from_labels(alg: &Algebra, labels: &[usize]) -> Congruence {
        let (block, count) = normalise(labels);
        Congruence {
            algebra: alg.clone(),
            block,
            count,
        }
    }

    /// Validates that `blocks` partition the carrier and respect the operations.
    pub fn from_blocks(alg: &Algebra, blocks: &[Vec<Element>]) -> Result<Congruence> {
        let v = alg.require_finite()?;
        let mut labels = vec![usize::MAX; v.len()];
        for (k, b) in blocks.iter().enumerate() {
            for e in b {
                alg.check_member(e)?;
                let i = v.index_of(e).expect("member");
                if labels[i] != usize::MAX {
                    return Err(Error::NotACongruence(format!(
                        "{} lies in two blocks",
                        v.name(i)
                    )));
                }
                labels[i] = k;
            }
        }
        if let Some(i) = labels.iter().position(|l| *l == usize::MAX) {
            return Err(Error::NotACongruence(format!("{} lies in no block", v.name(i))));
        }
        let c = Self::from_labels(alg, &labels);
        compatible(alg, &c.block).map_err(Error::NotACongruence)?;
        Ok(c)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn related(&self, x: &Element, y: &Element) -> bool {
        let v = self.algebra.finite().expect("finite");
        match (v.index_of(x), v.index_of(y)) {
            (Some(i), Some(j)) => self.block[i] == self.block[j],
            _ => false,
        }
    }

    /// Blocks in order of their first member.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let v = self.algebra.finite().expect("finite");
        let mut out = vec![Vec::new(); self.count];
        for (i, b) in self.block.iter().enumerate() {
            out[*b].push(v.element(i).clone());
        }
        out
    }

    pub fn block_names(&self) -> Vec<Vec<String>> {
        self.blocks()
            .iter()
            .map(|b| b.iter().map(|e| self.algebra.render(e)).collect())
            .collect()
    }

    pub fn to_json(&self) -> CongruenceJson {
        CongruenceJson {
            algebra: self.algebra.name().to_string(),
            blocks: self.block_names(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceJson {
    pub algebra: String,
    pub blocks: Vec<Vec<String>>,
}

/// `a ~ b` iff `a -> b` and `b -> a` both lie in `f`.
pub fn congruence_from_filter(f: &Filter) -> Result<Congruence> {
    let alg = f.algebra();
    let v = alg.require_finite()?;
    let mask = f.mask();
    is_filter_mask(alg, &mask).map_err(Error::NotAFilter)?;
    let n = v.len();
    let mut labels: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..a {
            if mask[v.op(BinOp::Imp, a, b)] && mask[v.op(BinOp::Imp, b, a)] {
                labels[a] = labels[b];
                break;
            }
        }
    }
    Ok(Congruence::from_labels(alg, &labels))
}

/// The block of `1`.
pub fn filter_from_congruence(c: &Congruence) -> Result<Filter> {
    let alg = c.algebra();
    compatible(alg, &c.block).map_err(Error::NotACongruence)?;
    let v = alg.require_finite()?;
    let top = c.block[v.one()];
    let mask: Vec<bool> = c.block.iter().map(|b| *b == top).collect();
    is_filter_mask(alg, &mask).map_err(Error::NotAFilter)?;
    Ok(Filter::from_mask(alg, &mask))
}

/// Every congruence, by enumerating set partitions. Limited to ten elements.
pub fn all_congruences(alg: &Algebra) -> Result<Vec<Congruence>> {
    let v = alg.require_finite()?;
    let n = v.len();
    if n > 10 {
        return Err(Error::Invalid(format!(
            "partition enumeration over {n} elements is too large"
        )));
    }
    // Restricted growth strings: labels[i] <= 1 + max(labels[..i]).
    fn rec(alg: &Algebra, labels: &mut Vec<usize>, n: usize, out: &mut Vec<Congruence>) {
        if labels.len() == n {
            if compatible(alg, labels).is_ok() {
                out.push(Congruence::from_labels(alg, labels));
            }
            return;
        }
        let top = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=top {
            labels.push(l);
            rec(alg, labels, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(alg, &mut Vec::with_capacity(n), n, &mut out);
    Ok(out)
}

/// `alg / f`, on the blocks of the congruence induced by `f`. Blocks are
/// named by their members, e.g. `{a,1}`.
pub fn quotient(alg: &Algebra, f: &Filter) -> Result<Algebra> {
    let c = congruence_from_filter(f)?;
    let v = alg.require_finite()?;
    let blocks = c.block_names();
    let names: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", b.join(","))).collect();
    let rep: Vec<usize> = {
        let mut r = vec![usize::MAX; c.count];
        for (i, b) in c.block.iter().enumerate().rev() {
            r[*b] = i;
        }
        r
    };
    let table = TableAlgebra::from_fn(
        names,
        c.block[v.one()],
        v.zero().map(|z| c.block[z]),
        |op, i, j| c.block[v.op(op, rep[i], rep[j])],
    )?;
    if let Err(e) = table.validate() {
        return Err(Error::Internal(format!("quotient by a filter failed validation: {e}")));
    }
    let certs: Vec<_> = alg.certificates().iter().copied().collect();
    Ok(table.into_algebra(format!("{} / {}", alg.name(), f.label()), certs))
}
