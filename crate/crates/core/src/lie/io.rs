//! JSON form of an algebra: `{"dim", "basis", "brackets": [{"i", "j", "result"}]}`,
//! 1-based, coefficients as numbers or decimal strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lie::algebra::ZLieAlgebra;

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    result: BTreeMap<String, Value>,
}

fn coefficient(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::input(format!("coefficient {n} is not a 64-bit integer"))),
        Value::String(s) => s
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::input(format!("coefficient {s:?} is not a decimal integer"))),
        other => Err(Error::input(format!("coefficient {other} must be a number or string"))),
    }
}

pub fn algebra_from_json(text: &str) -> Result<ZLieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let d = file.dim;
    let names = match file.basis {
        Some(names) if names.len() != d => {
            return Err(Error::input(format!(
                "basis lists {} names for dimension {d}",
                names.len()
            )))
        }
        Some(names) => names,
        None => ZLieAlgebra::default_names(d),
    };
    let check = |x: usize, what: &str| {
        if x == 0 || x > d {
            Err(Error::input(format!("{what} index {x} is outside [1, {d}]")))
        } else {
            Ok(x - 1)
        }
    };
    let mut brackets = Vec::new();
    for entry in &file.brackets {
        let (i, j) = (check(entry.i, "bracket")?, check(entry.j, "bracket")?);
        let mut result = Vec::new();
        for (k, c) in &entry.result {
            let k: usize = k
                .parse()
                .map_err(|_| Error::input(format!("result key {k:?} is not an index")))?;
            let c = coefficient(c)?;
            if c != 0 {
                result.push((check(k, "result")?, c));
            }
        }
        brackets.push((i, j, result));
    }
    ZLieAlgebra::new(names, brackets)
}

pub fn load_algebra(path: &Path) -> Result<ZLieAlgebra> {
    algebra_from_json(&std::fs::read_to_string(path)?)
}

/// Brackets with `i < j` only, result keys in increasing order.
pub fn algebra_to_json(g: &ZLieAlgebra) -> String {
    let brackets = g
        .nonzero_brackets()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, r)| BracketEntry {
            i: i + 1,
            j: j + 1,
            result: r
                .iter()
                .map(|&(k, c)| ((k + 1).to_string(), Value::from(c)))
                .collect(),
        })
        .collect();
    let file = AlgebraFile {
        dim: g.dim(),
        basis: Some(g.names().to_vec()),
        brackets,
    };
    serde_json::to_string_pretty(&file).expect("algebra serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::examples;

    #[test]
    fn parses_numbers_and_strings() {
        let g = algebra_from_json(
            r#"{"dim": 3, "basis": ["x", "y", "z"],
                "brackets": [{"i": 1, "j": 2, "result": {"3": "2"}}]}"#,
        )
        .unwrap();
        assert_eq!(g.bracket_basis(0, 1), &vec![(2, 2)]);
        assert_eq!(g.bracket_basis(1, 0), &vec![(2, -2)]);
        assert_eq!(g.names()[2], "z");
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(algebra_from_json(r#"{"dim": 2, "brackets": [{"i": 1, "j": 3, "result": {}}]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"0": 1}}]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 2, "basis": ["a"]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "result": {"3": 1.5}}]}"#).is_err());
    }

    #[test]
    fn roundtrip() {
        let g = examples::lee();
        let back = algebra_from_json(&algebra_to_json(&g)).unwrap();
        assert_eq!(back.dim(), g.dim());
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                assert_eq!(back.bracket_basis(i, j), g.bracket_basis(i, j));
            }
        }
    }
}
