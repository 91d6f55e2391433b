//! Independent models and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use reslat::algebra::{Algebra, Element};

/// A finite bounded model given by closures over `0..n`.
pub struct Model {
    pub n: usize,
    pub top: usize,
    pub mul: Box<dyn Fn(usize, usize) -> usize>,
    pub imp: Box<dyn Fn(usize, usize) -> usize>,
}

impl Model {
    pub fn neg(&self, x: usize) -> usize {
        (self.imp)(x, 0)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        (self.imp)(x, y) == self.top
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        // Every model here is a chain or a powerset, so the join of the
        // order is the lattice join.
        (0..self.n)
            .filter(|z| self.leq(x, *z) && self.leq(y, *z))
            .find(|z| (0..self.n).all(|w| !(self.leq(x, w) && self.leq(y, w)) || self.leq(*z, w)))
            .expect("join exists")
    }

    pub fn involutive(&self) -> bool {
        (0..self.n).all(|x| self.neg(self.neg(x)) == x)
    }

    pub fn idempotent(&self) -> bool {
        (0..self.n).all(|x| (self.mul)(x, x) == x)
    }

    /// `~x \/ ((x -> x*y) -> y) = 1`.
    pub fn product_identity(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let inner = (self.imp)((self.imp)(x, (self.mul)(x, y)), y);
                self.join(self.neg(x), inner) == self.top
            })
        })
    }
}

/// Lukasiewicz chain on `0..=n`.
pub fn lukasiewicz(n: usize) -> Model {
    Model {
        n: n + 1,
        top: n,
        mul: Box::new(move |x, y| (x + y).saturating_sub(n)),
        imp: Box::new(move |x, y| n.min(n + y - x)),
    }
}

/// Godel chain on `0..n`.
pub fn goedel(n: usize) -> Model {
    let top = n - 1;
    Model {
        n,
        top,
        mul: Box::new(|x, y| x.min(y)),
        imp: Box::new(move |x, y| if x <= y { top } else { y }),
    }
}

/// Subsets of `k` atoms as bitmasks.
pub fn powerset(k: usize) -> Model {
    let full = (1usize << k) - 1;
    Model {
        n: full + 1,
        top: full,
        mul: Box::new(|x, y| x & y),
        imp: Box::new(move |x, y| (!x | y) & full),
    }
}

/// Expected bounded labels of a BL model from its identities alone.
pub fn expected_labels(m: &Model) -> BTreeSet<&'static str> {
    let mut out: BTreeSet<&str> = ["bcirl", "bl"].into();
    let (mv, g, p) = (m.involutive(), m.idempotent(), m.product_identity());
    if mv {
        out.insert("mv");
    }
    if g {
        out.insert("godel");
    }
    if p {
        out.insert("product");
    }
    if mv && g {
        out.insert("boolean");
    }
    out
}

pub fn label_names(labels: &BTreeSet<reslat::algebra::Label>) -> BTreeSet<&'static str> {
    labels.iter().map(|l| l.name()).collect()
}

/// Every filter of a finite algebra, found by testing each subset against
/// the definition: contains 1, upward closed, closed under `*`.
pub fn brute_filters(alg: &Algebra) -> Vec<BTreeSet<usize>> {
    let els = alg.elements().expect("finite").to_vec();
    let n = els.len();
    assert!(n <= 16, "brute force only for small algebras");
    let one = els.iter().position(|e| *e == alg.one()).unwrap();
    let leq = |i: usize, j: usize| alg.imp(&els[i], &els[j]).unwrap() == alg.one();
    let mul = |i: usize, j: usize| {
        let p = alg.mul(&els[i], &els[j]).unwrap();
        els.iter().position(|e| *e == p).unwrap()
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |i: usize| mask & (1 << i) != 0;
        if !has(one) {
            continue;
        }
        let upward = (0..n).all(|i| !has(i) || (0..n).all(|j| !leq(i, j) || has(j)));
        let closed = (0..n).all(|i| (0..n).all(|j| !(has(i) && has(j)) || has(mul(i, j))));
        if upward && closed {
            out.push((0..n).filter(|i| has(*i)).collect());
        }
    }
    out
}

/// Indices of named elements.
pub fn indices(alg: &Algebra, names: &[String]) -> BTreeSet<usize> {
    let els = alg.elements().expect("finite");
    names
        .iter()
        .map(|n| els.iter().position(|e| alg.render(e) == *n).unwrap())
        .collect()
}

pub fn element(alg: &Algebra, name: &str) -> Element {
    alg.element_by_name(name, 256)
        .unwrap_or_else(|| panic!("{name} not found in {}", alg.name()))
}

/// Nodes and edges of a DOT file written by `reslat hasse`.
pub struct Dot {
    pub comments: Vec<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

fn unquote(s: &str) -> String {
    s.trim()
        .trim_end_matches(';')
        .trim()
        .trim_matches('"')
        .to_string()
}

pub fn parse_dot(src: &str) -> Dot {
    let mut dot = Dot {
        comments: Vec::new(),
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    for line in src.lines().map(str::trim) {
        if let Some(c) = line.strip_prefix("//") {
            dot.comments.push(c.trim().to_string());
        } else if let Some((a, b)) = line.split_once("->") {
            dot.edges.push((unquote(a), unquote(b)));
        } else if line.starts_with('"') {
            dot.nodes.push(unquote(line));
        }
    }
    dot
}

impl Dot {
    pub fn lower_covers(&self, node: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(_, b)| b == node)
            .map(|(a, _)| a.as_str())
            .collect()
    }

    pub fn upper_covers(&self, node: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(a, _)| a == node)
            .map(|(_, b)| b.as_str())
            .collect()
    }

    /// Reflexive-transitive closure of the cover edges.
    pub fn below(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut up: BTreeMap<&str, BTreeSet<&str>> = self
            .nodes
            .iter()
            .map(|n| (n.as_str(), BTreeSet::from([n.as_str()])))
            .collect();
        loop {
            let mut changed = false;
            for (a, b) in &self.edges {
                let above_b = up[b.as_str()].clone();
                let entry = up.get_mut(a.as_str()).unwrap();
                for x in above_b {
                    changed |= entry.insert(x);
                }
            }
            if !changed {
                return up;
            }
        }
    }
}
