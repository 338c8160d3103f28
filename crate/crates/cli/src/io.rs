//! Input parsing (rational strings, coefficient map files) and the output
//! envelope: every run echoes its configuration and the tool version, with
//! timing kept in a separate runtime object so reports stay byte-comparable.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use pmlab_core::{Composition, Error, Result};

/// Parses `p/q` or a plain integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse().map_err(|_| Error::Parse {
            token: t.to_string(),
            reason: "not an integer".into(),
        })
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == BigInt::from(0) {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(parse_int(p)?, denom))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_composition_key(key: &str) -> Result<Composition> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            token: key.to_string(),
            reason: "expected \"i,j,k\"".into(),
        });
    }
    let mut vals = [0u32; 3];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p.parse().map_err(|_| Error::Parse {
            token: (*p).to_string(),
            reason: "not a nonnegative integer".into(),
        })?;
    }
    Ok(Composition::new(vals[0], vals[1], vals[2]))
}

/// Reads a JSON object mapping `"i,j,k"` keys to rational strings `"p/q"`.
pub fn read_coefficient_map(path: &Path) -> Result<BTreeMap<Composition, BigRational>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        token: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            token: path.display().to_string(),
            reason: format!("invalid JSON map: {e}"),
        })?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        out.insert(parse_composition_key(&k)?, parse_rational(&v)?);
    }
    Ok(out)
}

/// The envelope around every JSON report.
pub fn envelope<C: Serialize, R: Serialize>(
    config: &C,
    report: &R,
    elapsed_ms: u64,
    workers: usize,
) -> Value {
    json!({
        "tool": "pmlab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "report": report,
        "runtime": { "elapsed_ms": elapsed_ms, "workers": workers },
    })
}

/// Writes to the chosen sink; a trailing newline is always present.
pub fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    let text = if body.ends_with('\n') {
        body.to_string()
    } else {
        format!("{body}\n")
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse {
            token: path.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
