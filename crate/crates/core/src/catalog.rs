//! Standard algebras and the builder language that names them.
//!
//! Every algebra built here is named by its builder expression, so
//! `build_str(&a.name())` rebuilds `a`.

use num::integer::gcd;

use crate::algebra::{
    direct_product, zero_free_reduct, Algebra, Certificate, Label, NatVecHoop, PosRatHoop,
    Strategy, TableAlgebra, DEFAULT_BOUND,
};
use crate::constructions::{
    external_join_from_maximal_filter, lift, mv_closure, product_closure, triple_product,
    ExternalJoin,
};
use crate::error::{Error, Result};
use crate::structure::maximal_filters;
use crate::term::{parse_builder, BinOp, BuilderExpr};

/// Largest number of atoms accepted by [`bool_algebra`].
pub const MAX_ATOMS: usize = 8;
/// Largest chain length accepted by [`godel_chain`] and [`mv_chain`].
pub const MAX_CHAIN: usize = 256;

fn table(name: String, t: TableAlgebra, label: Label) -> Result<Algebra> {
    t.validate()?;
    Ok(t.into_algebra(name, [Certificate::Class(label)]))
}

/// Boolean algebra of subsets of `k` atoms, in bitmask order. Atoms are
/// `a, b, c, ...`; other elements are named by their atoms, e.g. `ab`.
pub fn bool_algebra(k: usize) -> Result<Algebra> {
    if k > MAX_ATOMS {
        return Err(Error::Invalid(format!("bool({k}): at most {MAX_ATOMS} atoms")));
    }
    let n = 1usize << k;
    let full = n - 1;
    let names = (0..n)
        .map(|m| {
            if m == full {
                "1".to_string()
            } else if m == 0 {
                "0".to_string()
            } else {
                (0..k)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| (b'a' + i as u8) as char)
                    .collect()
            }
        })
        .collect();
    let t = TableAlgebra::from_fn(names, full, Some(0), |op, x, y| match op {
        BinOp::Mul | BinOp::Meet => x & y,
        BinOp::Join => x | y,
        BinOp::Imp => (!x | y) & full,
    })?;
    table(format!("bool({k})"), t, Label::Boolean)
}

fn chain_letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// The `n`-element Godel chain `0 < a < b < ... < 1`.
pub fn godel_chain(n: usize) -> Result<Algebra> {
    if n == 0 || n > MAX_CHAIN {
        return Err(Error::Invalid(format!("godel_chain({n}): need 1..={MAX_CHAIN} elements")));
    }
    let top = n - 1;
    let names = (0..n)
        .map(|i| match i {
            _ if i == top => "1".to_string(),
            0 => "0".to_string(),
            _ => chain_letter(i - 1),
        })
        .collect();
    let t = TableAlgebra::from_fn(names, top, Some(0), |op, x, y| match op {
        BinOp::Mul | BinOp::Meet => x.min(y),
        BinOp::Join => x.max(y),
        BinOp::Imp => {
            if x <= y {
                top
            } else {
                y
            }
        }
    })?;
    table(format!("godel_chain({n})"), t, Label::Godel)
}

/// The Lukasiewicz chain `{0, 1/n, ..., 1}`.
pub fn mv_chain(n: usize) -> Result<Algebra> {
    if n == 0 || n > MAX_CHAIN {
        return Err(Error::Invalid(format!("mv_chain({n}): need 1..={MAX_CHAIN}")));
    }
    let names = (0..=n)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == n => "1".to_string(),
            _ => {
                let g = gcd(i, n);
                format!("{}/{}", i / g, n / g)
            }
        })
        .collect();
    let t = TableAlgebra::from_fn(names, n, Some(0), |op, x, y| match op {
        BinOp::Mul => (x + y).saturating_sub(n),
        BinOp::Imp => n.min(n - x + y),
        BinOp::Meet => x.min(y),
        BinOp::Join => x.max(y),
    })?;
    table(format!("mv_chain({n})"), t, Label::MV)
}

/// `N^k` as a cancellative hoop. The hoop order reverses the numeric one:
/// the unit is the zero vector and larger vectors sit lower.
pub fn nk(k: usize) -> Algebra {
    Algebra::new(
        format!("nk({k})"),
        NatVecHoop { dim: k },
        [Certificate::Class(Label::CancellativeHoop)],
    )
}

/// Rationals in `(0, 1]` with the numeric product.
pub fn rat01() -> Algebra {
    Algebra::new(
        "rat01()",
        PosRatHoop,
        [Certificate::Class(Label::CancellativeHoop)],
    )
}

/// The 0-free reduct of the two-element Boolean algebra.
pub fn two0() -> Algebra {
    let b1 = bool_algebra(1).expect("bool(1) is valid");
    zero_free_reduct(&b1).renamed("two0()", &[])
}

/// The external join of `B` and `C` given by the `index`-th maximal filter
/// of `B`.
pub fn maximal_join(b: &Algebra, index: usize, c: &Algebra) -> Result<ExternalJoin> {
    let maximal = maximal_filters(b)?;
    let m = maximal.get(index).ok_or_else(|| {
        Error::Invalid(format!(
            "{} has {} maximal filters, index {index} is out of range",
            b.name(),
            maximal.len()
        ))
    })?;
    external_join_from_maximal_filter(b, m, c)
}

/// `B (x) C` joined by the `index`-th maximal filter of `B`.
pub fn triple(b: &Algebra, index: usize, c: &Algebra) -> Result<Algebra> {
    let ej = maximal_join(b, index, c)?;
    let strategy = Strategy::for_algebra(c, DEFAULT_BOUND);
    Ok(triple_product(&ej, strategy)?.renamed(
        format!("triple({}, {index}, {})", b.name(), c.name()),
        &[],
    ))
}

fn nat(e: &BuilderExpr) -> Result<usize> {
    let n = e
        .as_nat()
        .ok_or_else(|| Error::Invalid(format!("expected a natural number, found {e}")))?;
    usize::try_from(n).map_err(|_| Error::Invalid(format!("{n} is too large")))
}

/// Builds the algebra an expression names.
pub fn build(e: &BuilderExpr) -> Result<Algebra> {
    e.validate()?;
    let BuilderExpr::Call { name, args } = e else {
        return Err(Error::Invalid(format!("{e} is a number, not an algebra")));
    };
    let arg = |i: usize| build(&args[i]);
    match name.as_str() {
        "bool" => bool_algebra(nat(&args[0])?),
        "godel_chain" => godel_chain(nat(&args[0])?),
        "mv_chain" => mv_chain(nat(&args[0])?),
        "nk" => Ok(nk(nat(&args[0])?)),
        "rat01" => Ok(rat01()),
        "two0" => Ok(two0()),
        "lift" => lift(&arg(0)?),
        "reduct0" => Ok(zero_free_reduct(&arg(0)?)),
        "mv_closure" => mv_closure(&arg(0)?),
        "product_closure" => Ok(product_closure(&arg(0)?)?.algebra),
        "direct_product" => direct_product(&arg(0)?, &arg(1)?),
        "triple" => triple(&arg(0)?, nat(&args[1])?, &arg(2)?),
        other => Err(Error::UnknownConstructor(other.to_string())),
    }
}

pub fn build_str(src: &str) -> Result<Algebra> {
    build(&parse_builder(src)?)
}
