//! Membership in the standard varieties, decided at a strategy.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::check::{check_equation, check_property, CheckReport, Strategy};
use super::Algebra;
use crate::error::{Error, Result};
use crate::term::{laws, parse_equation, BinOp, Equation, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    #[serde(rename = "bcirl")]
    BCIRL,
    #[serde(rename = "bl")]
    BL,
    #[serde(rename = "mv")]
    MV,
    Godel,
    Product,
    Hoop,
    WajsbergHoop,
    CancellativeHoop,
    GeneralizedBoolean,
    Boolean,
}

impl Label {
    pub const ALL: [Label; 10] = [
        Label::BCIRL,
        Label::BL,
        Label::MV,
        Label::Godel,
        Label::Product,
        Label::Hoop,
        Label::WajsbergHoop,
        Label::CancellativeHoop,
        Label::GeneralizedBoolean,
        Label::Boolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Label::BCIRL => "bcirl",
            Label::BL => "bl",
            Label::MV => "mv",
            Label::Godel => "godel",
            Label::Product => "product",
            Label::Hoop => "hoop",
            Label::WajsbergHoop => "wajsberg-hoop",
            Label::CancellativeHoop => "cancellative-hoop",
            Label::GeneralizedBoolean => "generalized-boolean",
            Label::Boolean => "boolean",
        }
    }

    /// Strictly larger classes containing this one.
    pub fn implied(self) -> &'static [Label] {
        use Label::*;
        match self {
            Boolean => &[MV, Godel, Product, BL, BCIRL],
            MV | Godel | Product => &[BL, BCIRL],
            BL => &[BCIRL],
            GeneralizedBoolean | CancellativeHoop => &[WajsbergHoop, Hoop],
            WajsbergHoop => &[Hoop],
            BCIRL | Hoop => &[],
        }
    }

    /// Whether the class lives in the signature with `zero`.
    pub fn bounded(self) -> bool {
        matches!(
            self,
            Label::BCIRL | Label::BL | Label::MV | Label::Godel | Label::Product | Label::Boolean
        )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .to_lowercase()
            .replace('ö', "o")
            .chars()
            .filter(char::is_ascii_alphanumeric)
            .collect();
        Label::ALL
            .into_iter()
            .find(|l| l.name().replace('-', "") == key)
            .ok_or_else(|| Error::Invalid(format!("unknown class label {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub labels: BTreeSet<Label>,
    pub reports: Vec<CheckReport>,
}

impl Classification {
    pub fn has(&self, l: Label) -> bool {
        self.labels.contains(&l)
    }

    pub fn report(&self, subject: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.subject == subject)
    }
}

fn eq(src: &str) -> Equation {
    parse_equation(src, Signature::FULL).expect("built-in axiom parses")
}

fn named(subject: &str, mut r: CheckReport) -> CheckReport {
    r.subject = format!("{subject}: {}", r.subject);
    r
}

/// Runs every axiom at `strategy` and returns the labels whose axioms all
/// pass. Algebras with `zero` only receive bounded labels (BCIRL, BL, MV,
/// Godel, Product, Boolean); 0-free algebras only receive hoop labels.
pub fn classify(alg: &Algebra, strategy: Strategy) -> Result<Classification> {
    let bounded = alg.zero().is_some();
    let mut reports = Vec::new();
    let mut run = |subject: &str, e: Equation| -> Result<bool> {
        let r = named(subject, check_equation(alg, &e, strategy)?);
        let ok = r.passed();
        reports.push(r);
        Ok(ok)
    };

    let mut base = true;
    for (subject, src) in [
        ("mul-associativity", "(x1 * x2) * x3 = x1 * (x2 * x3)"),
        ("mul-commutativity", "x1 * x2 = x2 * x1"),
        ("mul-unit", "x1 * 1 = x1"),
        ("meet-associativity", "(x1 /\\ x2) /\\ x3 = x1 /\\ (x2 /\\ x3)"),
        ("meet-commutativity", "x1 /\\ x2 = x2 /\\ x1"),
        ("join-associativity", "(x1 \\/ x2) \\/ x3 = x1 \\/ (x2 \\/ x3)"),
        ("join-commutativity", "x1 \\/ x2 = x2 \\/ x1"),
        ("meet-absorption", "x1 /\\ (x1 \\/ x2) = x1"),
        ("join-absorption", "x1 \\/ (x1 /\\ x2) = x1"),
        ("integrality", "x1 /\\ 1 = x1"),
    ] {
        base &= run(subject, eq(src))?;
    }
    if bounded {
        base &= run("bottom", eq("x1 /\\ 0 = 0"))?;
    }
    let div = run("divisibility", laws::divisibility())?;
    let prel = run("prelinearity", laws::prelinearity())?;
    let idem = run("idempotency", laws::idempotency())?;
    let tanaka = run("wajsberg", laws::wajsberg())?;
    let (invol, prod, lem) = if bounded {
        (
            run("involutivity", laws::involutivity())?,
            run("product-identity", laws::product_identity())?,
            run("excluded-middle", laws::excluded_middle())?,
        )
    } else {
        (false, false, false)
    };

    let one = alg.one();
    let mut direct = |r: CheckReport| {
        let ok = r.passed();
        reports.push(r);
        ok
    };
    base &= direct(check_property(alg, "closure", strategy, &["x", "y"], |v| {
        BinOp::ALL.iter().find_map(|op| {
            let z = alg.op(*op, &v[0], &v[1]);
            (!alg.contains(&z)).then(|| format!("{} escapes the carrier", op.symbol().name()))
        })
    })?);
    base &= direct(check_property(alg, "order", strategy, &["x", "y"], |v| {
        let by_imp = alg.op(BinOp::Imp, &v[0], &v[1]) == one;
        let by_meet = alg.op(BinOp::Meet, &v[0], &v[1]) == v[0];
        (by_imp != by_meet).then(|| format!("x -> y = 1 is {by_imp}, x /\\ y = x is {by_meet}"))
    })?);
    base &= direct(check_property(alg, "residuation", strategy, &["x", "y", "z"], |v| {
        let xy = alg.op(BinOp::Mul, &v[0], &v[1]);
        let left = alg.leq_unchecked(&xy, &v[2]);
        let right = alg.leq_unchecked(&v[1], &alg.op(BinOp::Imp, &v[0], &v[2]));
        (left != right).then(|| format!("x*y <= z is {left}, y <= x -> z is {right}"))
    })?);
    let cancel = if bounded {
        false
    } else {
        direct(check_property(alg, "cancellation", strategy, &["x", "y", "z"], |v| {
            let xz = alg.op(BinOp::Mul, &v[0], &v[2]);
            let yz = alg.op(BinOp::Mul, &v[1], &v[2]);
            (xz == yz && v[0] != v[1]).then(|| "x*z = y*z with x != y".to_string())
        })?)
    };

    let mut labels = BTreeSet::new();
    if base {
        if bounded {
            labels.insert(Label::BCIRL);
            if div && prel {
                labels.insert(Label::BL);
                for (holds, l) in [
                    (invol, Label::MV),
                    (idem, Label::Godel),
                    (prod, Label::Product),
                    (lem, Label::Boolean),
                ] {
                    if holds {
                        labels.insert(l);
                    }
                }
            }
        } else if div {
            labels.insert(Label::Hoop);
            if prel && tanaka {
                labels.insert(Label::WajsbergHoop);
                if idem {
                    labels.insert(Label::GeneralizedBoolean);
                }
                if cancel {
                    labels.insert(Label::CancellativeHoop);
                }
            }
        }
    }
    let implied: Vec<Label> = labels.iter().flat_map(|l| l.implied()).copied().collect();
    labels.extend(implied);
    Ok(Classification { labels, reports })
}
