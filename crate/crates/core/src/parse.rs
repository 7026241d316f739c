//! Space-spec strings.
//!
//! ```text
//! l1:2   l2:3   linf:2   lp:3:p=1.5   r:1
//! poly:@ball.json            {"vertices": [[1,0],[-1,0],...]}
//! poly:[[1,0],[-1,0],[0,1],[0,-1]]
//! poly:hexagon
//! sum1(<spec>,<spec>)   suminf(<spec>,<spec>)
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{BpbError, Result};
use crate::space::NormedSpace;
use crate::vector::Vector;

#[derive(Deserialize)]
struct VertexFile {
    vertices: Vec<Vec<f64>>,
}

pub fn parse_space(spec: &str) -> Result<NormedSpace> {
    let spec = spec.trim();
    if let Some(inner) = strip_call(spec, "sum1") {
        let (a, b) = split_pair(inner)?;
        return Ok(NormedSpace::sum1(parse_space(a)?, parse_space(b)?));
    }
    if let Some(inner) = strip_call(spec, "suminf") {
        let (a, b) = split_pair(inner)?;
        return Ok(NormedSpace::suminf(parse_space(a)?, parse_space(b)?));
    }
    if let Some(rest) = spec.strip_prefix("poly:") {
        return parse_polytope(rest);
    }
    let mut parts = spec.split(':');
    let head = parts.next().unwrap_or_default();
    let dim = parts
        .next()
        .ok_or_else(|| BpbError::Parse(format!("missing dimension in `{spec}`")))?;
    let dim: usize = dim
        .parse()
        .map_err(|_| BpbError::Parse(format!("bad dimension `{dim}` in `{spec}`")))?;
    let extra = parts.next();
    if parts.next().is_some() {
        return Err(BpbError::Parse(format!("trailing fields in `{spec}`")));
    }
    let p = match (head, extra) {
        ("r", None) if dim == 1 => 2.0,
        ("r", None) => return Err(BpbError::Parse("`r` is the real line, use r:1".into())),
        ("l1", None) => 1.0,
        ("l2", None) => 2.0,
        ("linf", None) => f64::INFINITY,
        ("lp", Some(p)) => {
            let p = p
                .strip_prefix("p=")
                .ok_or_else(|| BpbError::Parse(format!("expected p=<exponent> in `{spec}`")))?;
            if p == "inf" {
                f64::INFINITY
            } else {
                p.parse().map_err(|_| BpbError::Parse(format!("bad exponent `{p}`")))?
            }
        }
        _ => return Err(BpbError::Parse(format!("unknown space `{spec}`"))),
    };
    NormedSpace::lp(p, dim).map_err(|e| BpbError::Parse(e.to_string()))
}

fn strip_call<'a>(spec: &'a str, name: &str) -> Option<&'a str> {
    spec.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

/// Splits at the single top-level comma.
fn split_pair(inner: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return Err(BpbError::Parse(format!("too many arguments in `{inner}`")));
                }
                split = Some(i);
            }
            _ => {}
        }
        if depth < 0 {
            return Err(BpbError::Parse(format!("unbalanced brackets in `{inner}`")));
        }
    }
    match split {
        Some(i) if depth == 0 => Ok((&inner[..i], &inner[i + 1..])),
        _ => Err(BpbError::Parse(format!("expected two components in `{inner}`"))),
    }
}

fn parse_polytope(rest: &str) -> Result<NormedSpace> {
    if rest == "hexagon" {
        return Ok(NormedSpace::hexagon());
    }
    let vertices: Vec<Vec<f64>> = if let Some(path) = rest.strip_prefix('@') {
        let text = std::fs::read_to_string(Path::new(path))
            .map_err(|e| BpbError::Parse(format!("cannot read `{path}`: {e}")))?;
        serde_json::from_str::<VertexFile>(&text)
            .map_err(|e| BpbError::Parse(format!("bad vertex file `{path}`: {e}")))?
            .vertices
    } else {
        serde_json::from_str(rest).map_err(|e| BpbError::Parse(format!("bad inline vertex list: {e}")))?
    };
    let vertices = vertices.into_iter().map(Vector::new).collect::<Result<Vec<_>>>()?;
    NormedSpace::polytope(vertices)
}
