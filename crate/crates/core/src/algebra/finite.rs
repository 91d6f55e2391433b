use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::{Algebra, Carrier, Certificate, Element};
use crate::error::{Error, Result};
use crate::term::BinOp;

fn slot(op: BinOp) -> usize {
    match op {
        BinOp::Mul => 0,
        BinOp::Imp => 1,
        BinOp::Meet => 2,
        BinOp::Join => 3,
    }
}

/// Index-based tables for a finite carrier, in the carrier's element order.
#[derive(Debug)]
pub struct FiniteView {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    tables: [Vec<usize>; 4],
    one: usize,
    zero: Option<usize>,
}

impl FiniteView {
    pub(crate) fn build(carrier: &dyn Carrier, elements: Vec<Element>) -> Self {
        let n = elements.len();
        let index: HashMap<Element, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let lookup = |e: &Element| -> usize {
            *index
                .get(e)
                .unwrap_or_else(|| panic!("finite carrier is not closed: {e} escapes"))
        };
        let tables = BinOp::ALL.map(|op| {
            let mut t = Vec::with_capacity(n * n);
            for x in &elements {
                for y in &elements {
                    t.push(lookup(&carrier.op(op, x, y)));
                }
            }
            t
        });
        let one = lookup(&carrier.one());
        let zero = if carrier.has_zero() {
            carrier.zero().map(|z| lookup(&z))
        } else {
            None
        };
        let mut names: Vec<String> = elements.iter().map(|e| carrier.render(e)).collect();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for name in &names {
            *seen.entry(name.clone()).or_default() += 1;
        }
        for (i, name) in names.iter_mut().enumerate() {
            if seen[name.as_str()] > 1 {
                *name = format!("{name}#{i}");
            }
        }
        let by_name = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        FiniteView {
            elements,
            index,
            names,
            by_name,
            tables,
            one,
            zero,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    #[inline]
    pub fn op(&self, op: BinOp, i: usize, j: usize) -> usize {
        self.tables[slot(op)][i * self.elements.len() + j]
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    /// `i <= j`, read off as `i -> j = 1`.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.op(BinOp::Imp, i, j) == self.one
    }
}

/// A finite algebra given by explicit operation tables over `Fin(0..n)`.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    /// Fingerprint of the tables; elements carry it so that equal indices
    /// from different tables never compare equal.
    tag: u64,
    names: Vec<String>,
    tables: [Vec<usize>; 4],
    one: usize,
    zero: Option<usize>,
}

impl TableAlgebra {
    /// Tables are row-major `n * n`. Validates shapes and closure only; see
    /// [`TableAlgebra::validate`] for the order-theoretic checks.
    pub fn new(
        names: Vec<String>,
        mul: Vec<usize>,
        imp: Vec<usize>,
        meet: Vec<usize>,
        join: Vec<usize>,
        one: usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        let tables = [mul, imp, meet, join];
        for (t, op) in tables.iter().zip(BinOp::ALL) {
            if t.len() != n * n {
                return Err(Error::InvalidTable(format!(
                    "{} table has {} entries, expected {}",
                    op.symbol().name(),
                    t.len(),
                    n * n
                )));
            }
            if let Some(pos) = t.iter().position(|&v| v >= n) {
                return Err(Error::InvalidTable(format!(
                    "{} table is not closed at ({}, {})",
                    op.symbol().name(),
                    names[pos / n],
                    names[pos % n]
                )));
            }
        }
        if one >= n || zero.is_some_and(|z| z >= n) {
            return Err(Error::InvalidTable("constant outside the carrier".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTable("carrier names are not distinct".into()));
        }
        let mut h = DefaultHasher::new();
        (&names, &tables, one, zero).hash(&mut h);
        Ok(TableAlgebra {
            tag: h.finish(),
            names,
            tables,
            one,
            zero,
        })
    }

    /// Builds tables by evaluating the given operations on `0..n`.
    pub fn from_fn(
        names: Vec<String>,
        one: usize,
        zero: Option<usize>,
        f: impl Fn(BinOp, usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        let table = |op| {
            (0..n * n)
                .map(|k| f(op, k / n, k % n))
                .collect::<Vec<_>>()
        };
        Self::new(
            names,
            table(BinOp::Mul),
            table(BinOp::Imp),
            table(BinOp::Meet),
            table(BinOp::Join),
            one,
            zero,
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn at(&self, op: BinOp, i: usize, j: usize) -> usize {
        self.tables[slot(op)][i * self.names.len() + j]
    }

    /// Residuation, bounds, and agreement of the implication order with the
    /// lattice order. Reports the first violating tuple by name.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let leq = |a: usize, b: usize| self.at(BinOp::Imp, a, b) == self.one;
        let name = |i: usize| self.names[i].as_str();
        for x in 0..n {
            if !leq(x, self.one) {
                return Err(Error::InvalidTable(format!("{} is not below one", name(x))));
            }
            if let Some(z) = self.zero {
                if !leq(z, x) {
                    return Err(Error::InvalidTable(format!(
                        "zero is not below {}",
                        name(x)
                    )));
                }
            }
            for y in 0..n {
                if leq(x, y) != (self.at(BinOp::Meet, x, y) == x) {
                    return Err(Error::InvalidTable(format!(
                        "implication order and meet disagree at ({}, {})",
                        name(x),
                        name(y)
                    )));
                }
                for z in 0..n {
                    let lhs = leq(self.at(BinOp::Mul, x, y), z);
                    let rhs = leq(y, self.at(BinOp::Imp, x, z));
                    if lhs != rhs {
                        return Err(Error::InvalidTable(format!(
                            "residuation violated at x={}, y={}, z={}",
                            name(x),
                            name(y),
                            name(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn into_algebra(
        self,
        name: impl Into<String>,
        certs: impl IntoIterator<Item = Certificate>,
    ) -> Algebra {
        Algebra::new(name, self, certs)
    }
}

impl Carrier for TableAlgebra {
    fn has_zero(&self) -> bool {
        self.zero.is_some()
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Fin(t, i) if *t == self.tag && *i < self.names.len())
    }

    fn one(&self) -> Element {
        Element::Fin(self.tag, self.one)
    }

    fn zero(&self) -> Option<Element> {
        self.zero.map(|z| Element::Fin(self.tag, z))
    }

    fn op(&self, op: BinOp, x: &Element, y: &Element) -> Element {
        match (x, y) {
            (Element::Fin(_, i), Element::Fin(_, j)) => Element::Fin(self.tag, self.at(op, *i, *j)),
            _ => unreachable!("table algebra applied to {x} and {y}"),
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        Some((0..self.names.len()).map(|i| Element::Fin(self.tag, i)).collect())
    }

    fn render(&self, x: &Element) -> String {
        match x {
            Element::Fin(_, i) => self.names[*i].clone(),
            other => other.to_string(),
        }
    }
}

/// On-disk format for finite algebras. Tables are row-major and reference
/// carrier names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub carrier: Vec<String>,
    pub signature: String,
    pub mul: Vec<Vec<String>>,
    pub imp: Vec<Vec<String>>,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    pub one: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zero: Option<String>,
}

impl AlgebraJson {
    pub fn from_algebra(alg: &Algebra) -> Result<Self> {
        let v = alg.require_finite()?;
        let n = v.len();
        let table = |op| {
            (0..n)
                .map(|i| (0..n).map(|j| v.name(v.op(op, i, j)).to_string()).collect())
                .collect()
        };
        Ok(AlgebraJson {
            carrier: v.names().to_vec(),
            signature: alg.signature().to_string(),
            mul: table(BinOp::Mul),
            imp: table(BinOp::Imp),
            meet: table(BinOp::Meet),
            join: table(BinOp::Join),
            one: v.name(v.one()).to_string(),
            zero: v.zero().map(|z| v.name(z).to_string()),
        })
    }

    /// Decodes and validates (closure, bounds, residuation).
    pub fn to_table(&self) -> Result<TableAlgebra> {
        let index: HashMap<&str, usize> = self
            .carrier
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = self.carrier.len();
        let look = |s: &str, what: &str| -> Result<usize> {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidTable(format!("{what}: `{s}` is not in the carrier")))
        };
        let flat = |rows: &Vec<Vec<String>>, what: &str| -> Result<Vec<usize>> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidTable(format!("{what} table is not {n}x{n}")));
            }
            rows.iter()
                .flatten()
                .map(|s| look(s, what))
                .collect()
        };
        let has_zero = match self.signature.as_str() {
            "full" => true,
            "zero-free" => false,
            other => {
                return Err(Error::InvalidTable(format!("unknown signature `{other}`")))
            }
        };
        let zero = match (&self.zero, has_zero) {
            (Some(z), true) => Some(look(z, "zero")?),
            (None, false) => None,
            (None, true) => {
                return Err(Error::InvalidTable("full signature needs a zero".into()))
            }
            (Some(_), false) => {
                return Err(Error::InvalidTable(
                    "zero given for a zero-free signature".into(),
                ))
            }
        };
        let table = TableAlgebra::new(
            self.carrier.clone(),
            flat(&self.mul, "mul")?,
            flat(&self.imp, "imp")?,
            flat(&self.meet, "meet")?,
            flat(&self.join, "join")?,
            look(&self.one, "one")?,
            zero,
        )?;
        table.validate()?;
        Ok(table)
    }
}
