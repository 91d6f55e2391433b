//! Isomorphism search for finite algebras and a sampled check for maps
//! between symbolic ones.

use super::check::{witness, CheckReport, Strategy};
use super::{Algebra, Element, FiniteView};
use crate::error::{Error, Result};
use crate::term::BinOp;

/// Invariants preserved by any isomorphism.
fn profile(v: &FiniteView, i: usize) -> (usize, usize, bool, bool, bool) {
    let below = (0..v.len()).filter(|j| v.leq(*j, i)).count();
    let above = (0..v.len()).filter(|j| v.leq(i, *j)).count();
    (
        below,
        above,
        v.op(BinOp::Mul, i, i) == i,
        i == v.one(),
        Some(i) == v.zero(),
    )
}

fn consistent(a: &FiniteView, b: &FiniteView, map: &[Option<usize>], i: usize) -> bool {
    let fi = map[i].expect("just assigned");
    for (j, fj) in map.iter().enumerate() {
        let Some(fj) = *fj else { continue };
        for op in BinOp::ALL {
            for (x, y, fx, fy) in [(i, j, fi, fj), (j, i, fj, fi)] {
                if let Some(fz) = map[a.op(op, x, y)] {
                    if fz != b.op(op, fx, fy) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn search(
    a: &FiniteView,
    b: &FiniteView,
    candidates: &[Vec<usize>],
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    i: usize,
) -> bool {
    if i == a.len() {
        return true;
    }
    for &c in &candidates[i] {
        if used[c] {
            continue;
        }
        map[i] = Some(c);
        used[c] = true;
        if consistent(a, b, map, i) && search(a, b, candidates, map, used, i + 1) {
            return true;
        }
        map[i] = None;
        used[c] = false;
    }
    false
}

/// A bijection commuting with every operation and constant, as
/// `(element of a, element of b)` pairs in `a`'s order; `None` if the two
/// finite algebras are not isomorphic.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Result<Option<Vec<(Element, Element)>>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(
            a.name().to_string(),
            b.name().to_string(),
        ));
    }
    let va = a.require_finite()?;
    let vb = b.require_finite()?;
    if va.len() != vb.len() {
        return Ok(None);
    }
    let pb: Vec<_> = (0..vb.len()).map(|j| profile(vb, j)).collect();
    let candidates: Vec<Vec<usize>> = (0..va.len())
        .map(|i| {
            let p = profile(va, i);
            (0..vb.len()).filter(|j| pb[*j] == p).collect()
        })
        .collect();
    let mut map = vec![None; va.len()];
    let mut used = vec![false; vb.len()];
    if !search(va, vb, &candidates, &mut map, &mut used, 0) {
        return Ok(None);
    }
    Ok(Some(
        map.iter()
            .enumerate()
            .map(|(i, j)| (va.element(i).clone(), vb.element(j.expect("complete")).clone()))
            .collect(),
    ))
}

/// Checks on `a`'s first `bound` sampled elements that `map` is injective,
/// preserves the constants and commutes with every operation.
pub fn bounded_iso_check(
    a: &Algebra,
    b: &Algebra,
    map: &dyn Fn(&Element) -> Element,
    bound: usize,
) -> Result<CheckReport> {
    let strategy = Strategy::Bounded(bound);
    let sample = a.sample(bound);
    let mut images = Vec::with_capacity(sample.len());
    for x in &sample {
        let y = map(x);
        b.check_member(&y)?;
        images.push(y);
    }
    let mut children = Vec::new();

    let mut clash = None;
    'outer: for i in 0..sample.len() {
        for j in 0..i {
            if images[i] == images[j] {
                clash = Some((j, i));
                break 'outer;
            }
        }
    }
    children.push(match clash {
        None => CheckReport::passing("injective", strategy, sample.len() as u64),
        Some((i, j)) => CheckReport::refuted(
            "injective",
            strategy,
            witness(a, &["x", "y"], &[sample[i].clone(), sample[j].clone()]),
            format!("both map to {}", b.render(&images[i])),
        ),
    });

    let mut constants = vec![("one", a.one(), b.one())];
    if let (Some(za), Some(zb)) = (a.zero(), b.zero()) {
        constants.push(("zero", za, zb));
    }
    let mut bad = None;
    for (name, ca, cb) in &constants {
        let img = map(ca);
        if img != *cb {
            bad = Some((name, ca.clone(), img));
            break;
        }
    }
    children.push(match bad {
        None => CheckReport::passing("constants", strategy, constants.len() as u64),
        Some((name, c, img)) => CheckReport::refuted(
            "constants",
            strategy,
            witness(a, &[name], &[c]),
            format!("{name} maps to {}", b.render(&img)),
        ),
    });

    for op in BinOp::ALL {
        let subject = format!("commutes with {}", op.symbol().name());
        let mut failure = None;
        'pairs: for (i, x) in sample.iter().enumerate() {
            for (j, y) in sample.iter().enumerate() {
                let lhs = map(&a.op(op, x, y));
                let rhs = b.op(op, &images[i], &images[j]);
                if lhs != rhs {
                    failure = Some((x.clone(), y.clone(), lhs, rhs));
                    break 'pairs;
                }
            }
        }
        children.push(match failure {
            None => CheckReport::passing(subject, strategy, (sample.len() * sample.len()) as u64),
            Some((x, y, l, r)) => CheckReport::refuted(
                subject,
                strategy,
                witness(a, &["x", "y"], &[x, y]),
                format!("f(x op y) = {}, f(x) op f(y) = {}", b.render(&l), b.render(&r)),
            ),
        });
    }
    Ok(CheckReport::all(
        format!("{} embeds in {}", a.name(), b.name()),
        strategy,
        children,
    ))
}
