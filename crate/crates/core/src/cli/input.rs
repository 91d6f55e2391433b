use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, AlgebraJson, Strategy, DEFAULT_BOUND};
use crate::catalog;
use crate::constructions::{triple_product, ExternalJoin};
use crate::error::{Error, Result};

/// A resolved positional input.
pub struct Input {
    pub source: String,
    pub fingerprint: String,
    pub algebra: Algebra,
    /// Present for `B:maxfilterN:C` inputs.
    pub join: Option<ExternalJoin>,
}

#[derive(Serialize)]
pub struct InputSummary {
    pub source: String,
    pub sha256: String,
    pub algebra: String,
    pub signature: String,
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub certificates: Vec<String>,
}

impl Input {
    pub fn summary(&self) -> InputSummary {
        let a = &self.algebra;
        InputSummary {
            source: self.source.clone(),
            sha256: self.fingerprint.clone(),
            algebra: a.name().to_string(),
            signature: a.signature().to_string(),
            finite: a.is_finite(),
            size: a.finite().map(|v| v.len()),
            certificates: a.certificates().iter().map(|c| c.to_string()).collect(),
        }
    }
}

fn sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `B:maxfilterN:C`.
fn parse_join(src: &str) -> Option<(&str, usize, &str)> {
    let (b, rest) = src.split_once(":maxfilter")?;
    let (n, c) = rest.split_once(':')?;
    Some((b.trim(), n.trim().parse().ok()?, c.trim()))
}

fn join_input(b: &str, index: usize, c: &str) -> Result<(Algebra, ExternalJoin)> {
    let b = catalog::build_str(b)?;
    let c = catalog::build_str(c)?;
    let ej = catalog::maximal_join(&b, index, &c)?;
    let strategy = Strategy::for_algebra(&c, DEFAULT_BOUND);
    let name = format!("triple({}, {index}, {})", b.name(), c.name());
    let algebra = triple_product(&ej, strategy)?.renamed(name, &[]);
    Ok((algebra, ej))
}

/// Resolves a `.json` path, a `B:maxfilterN:C` triple, a
/// `construct:kind(expr)` shorthand, or a builder expression.
pub fn resolve(src: &str) -> Result<Input> {
    if src.ends_with(".json") {
        let bytes = std::fs::read(src)
            .map_err(|e| Error::Invalid(format!("cannot read {src}: {e}")))?;
        let json: AlgebraJson = serde_json::from_slice(&bytes)
            .map_err(|e| Error::Invalid(format!("{src} is not an algebra file: {e}")))?;
        let table = json.to_table()?;
        let name = Path::new(src)
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| src.to_string());
        return Ok(Input {
            source: src.to_string(),
            fingerprint: sha256(&bytes),
            algebra: table.into_algebra(name, []),
            join: None,
        });
    }
    let fingerprint = sha256(src.as_bytes());
    if let Some((b, index, c)) = parse_join(src) {
        let (algebra, ej) = join_input(b, index, c)?;
        return Ok(Input {
            source: src.to_string(),
            fingerprint,
            algebra,
            join: Some(ej),
        });
    }
    let expr = match src.strip_prefix("construct:") {
        Some(rest) => {
            let (head, tail) = rest
                .split_once('(')
                .ok_or_else(|| Error::Invalid(format!("malformed construct input {src:?}")))?;
            format!("{}({tail}", head.trim().replace('-', "_"))
        }
        None => src.to_string(),
    };
    Ok(Input {
        source: src.to_string(),
        fingerprint,
        algebra: catalog::build_str(&expr)?,
        join: None,
    })
}
