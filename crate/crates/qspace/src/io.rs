//! File formats: the JSON code format, skeleton word lists, rank-code files
//! and the JSON listing of projections systems.
//!
//! Subspace rows are strings of base-q digits (q <= 9), RREF rows top-down;
//! code files carry the field descriptor, the ambient dimension and the
//! metric tag, with subspaces in canonical order. Reading a file whose rows
//! are not in reduced echelon form canonicalizes them and reports a warning
//! flag.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::projections::EquationSystem;
use crate::rank::{FerrersDiagram, RankCode};
use crate::space::{Metric, Subspace, SubspaceCode};

fn digit_value(ch: char, q: u64) -> Result<u32> {
    let d = ch.to_digit(10).ok_or_else(|| Error::ParseError {
        context: ch.to_string(),
        message: "expected a decimal digit".into(),
    })?;
    if d as u64 >= q {
        return Err(Error::ParseError {
            context: ch.to_string(),
            message: format!("digit out of range for field of order {}", q),
        });
    }
    Ok(d)
}

fn check_text_field(q: u64) -> Result<()> {
    if q > 9 {
        return Err(Error::BadParams(
            "text row format supports q <= 9 only".into(),
        ));
    }
    Ok(())
}

/// One row as a digit string, e.g. "10110".
pub fn row_to_string(row: &[u32]) -> String {
    row.iter().map(|d| d.to_string()).collect()
}

pub fn parse_row(s: &str, n: usize, q: u64) -> Result<Vec<u32>> {
    if s.chars().count() != n {
        return Err(Error::ParseError {
            context: s.to_string(),
            message: format!("expected {} digits", n),
        });
    }
    s.chars().map(|c| digit_value(c, q)).collect()
}

/// Subspace text form: k lines of n digits, RREF rows top-down.
pub fn subspace_to_text(s: &Subspace) -> String {
    s.rows()
        .iter()
        .map(|r| row_to_string(r))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Serialize, Deserialize)]
struct CodeFile {
    field: String,
    n: usize,
    metric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    claimed_min_distance: Option<usize>,
    subspaces: Vec<Vec<String>>,
}

/// Serializes a code in canonical order.
pub fn write_code(code: &SubspaceCode) -> Result<String> {
    check_text_field(code.field().q())?;
    let file = CodeFile {
        field: code.field().descriptor(),
        n: code.ambient(),
        metric: code.metric().tag().to_string(),
        claimed_min_distance: code.claimed_min_distance(),
        subspaces: code
            .words()
            .iter()
            .map(|w| w.rows().iter().map(|r| row_to_string(r)).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::ParseError {
        context: "code serialization".into(),
        message: e.to_string(),
    })
}

/// Reads a code file; non-RREF input rows are canonicalized, reported via
/// the returned warning flag.
pub fn read_code(json: &str) -> Result<(SubspaceCode, bool)> {
    let file: CodeFile = serde_json::from_str(json).map_err(|e| Error::ParseError {
        context: "code file".into(),
        message: e.to_string(),
    })?;
    let field = Field::parse_descriptor(&file.field)?;
    let metric = Metric::parse(&file.metric)?;
    let q = field.q();
    let mut warned = false;
    let mut words = Vec::with_capacity(file.subspaces.len());
    for rows in &file.subspaces {
        let parsed: Result<Vec<Vec<u32>>> = rows
            .iter()
            .map(|r| parse_row(r, file.n, q))
            .collect();
        let parsed = parsed?;
        let candidate = Subspace::span(&field, file.n, &parsed)?;
        if candidate.rows() != parsed {
            warned = true;
        }
        words.push(candidate);
    }
    let code = SubspaceCode::new(field, file.n, metric, words, file.claimed_min_distance)?;
    Ok((code, warned))
}

/// Skeleton file: one binary word per line, most significant (first) char =
/// column 0; blank lines and '#' comments ignored.
pub fn read_skeleton_words(text: &str) -> Result<(usize, Vec<u64>)> {
    let mut n = 0usize;
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n == 0 {
            n = line.chars().count();
        }
        if line.chars().count() != n {
            return Err(Error::ParseError {
                context: line.to_string(),
                message: "skeleton words must share one length".into(),
            });
        }
        let mut mask = 0u64;
        for (i, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << i,
                _ => {
                    return Err(Error::ParseError {
                        context: line.to_string(),
                        message: "skeleton words are binary".into(),
                    })
                }
            }
        }
        words.push(mask);
    }
    if words.is_empty() {
        return Err(Error::ParseError {
            context: "skeleton file".into(),
            message: "no words found".into(),
        });
    }
    Ok((n, words))
}

pub fn skeleton_words_to_text(n: usize, words: &[u64]) -> String {
    words
        .iter()
        .map(|&w| {
            (0..n)
                .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Serialize, Deserialize)]
struct RankCodeFile {
    field: String,
    rows: usize,
    cols: usize,
    delta: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<String>,
    /// basis matrices, each a list of digit-string rows
    basis: Vec<Vec<String>>,
}

/// Rank/FDRM code file: matrix-list JSON with an optional "diagram" field.
pub fn write_rank_code(code: &RankCode, diagram: Option<&FerrersDiagram>) -> Result<String> {
    check_text_field(code.field().q())?;
    let file = RankCodeFile {
        field: code.field().descriptor(),
        rows: code.rows(),
        cols: code.cols(),
        delta: code.delta(),
        diagram: diagram.map(|d| d.text()),
        basis: code
            .basis()
            .iter()
            .map(|m| (0..m.rows()).map(|r| row_to_string(m.row(r))).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::ParseError {
        context: "rank code serialization".into(),
        message: e.to_string(),
    })
}

pub fn read_rank_code(json: &str) -> Result<(RankCode, Option<FerrersDiagram>)> {
    let file: RankCodeFile = serde_json::from_str(json).map_err(|e| Error::ParseError {
        context: "rank code file".into(),
        message: e.to_string(),
    })?;
    let field = Field::parse_descriptor(&file.field)?;
    let q = field.q();
    let mut basis = Vec::with_capacity(file.basis.len());
    for rows in &file.basis {
        if rows.len() != file.rows {
            return Err(Error::ParseError {
                context: "rank code file".into(),
                message: format!("expected {} rows per matrix", file.rows),
            });
        }
        let parsed: Result<Vec<Vec<u32>>> = rows
            .iter()
            .map(|r| parse_row(r, file.cols, q))
            .collect();
        basis.push(Mat::from_rows(field.clone(), parsed?)?);
    }
    let diagram = file
        .diagram
        .as_deref()
        .map(FerrersDiagram::parse)
        .transpose()?;
    let code = RankCode::new(field, file.rows, file.cols, basis, file.delta)?;
    Ok((code, diagram))
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemFileVariable {
    label: String,
    dim: usize,
    structurally_zero: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemFileEquation {
    label: String,
    constant: String,
    /// pairs [variable index, coefficient]
    coeffs: Vec<(usize, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemFile {
    n: u32,
    k: u32,
    t: u32,
    q: u64,
    rho: u32,
    variables: Vec<SystemFileVariable>,
    equations: Vec<SystemFileEquation>,
}

/// Emits the projections system as a JSON listing: labeled variables and
/// integer coefficient rows.
pub fn write_system(sys: &EquationSystem) -> String {
    let file = SystemFile {
        n: sys.n,
        k: sys.k,
        t: sys.t,
        q: sys.q,
        rho: sys.rho,
        variables: sys
            .variables
            .iter()
            .map(|v| SystemFileVariable {
                label: v.label.clone(),
                dim: v.dim,
                structurally_zero: v.structurally_zero,
            })
            .collect(),
        equations: sys
            .equations
            .iter()
            .map(|e| SystemFileEquation {
                label: e.label.clone(),
                constant: e.constant.to_string(),
                coeffs: e
                    .coeffs
                    .iter()
                    .map(|(i, c)| (*i, c.to_string()))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("system serializes")
}

pub fn read_system(json: &str) -> Result<EquationSystem> {
    let file: SystemFile = serde_json::from_str(json).map_err(|e| Error::ParseError {
        context: "projections system file".into(),
        message: e.to_string(),
    })?;
    let parse_int = |s: &str| -> Result<BigUint> {
        s.parse().map_err(|_| Error::ParseError {
            context: s.to_string(),
            message: "expected a nonnegative integer".into(),
        })
    };
    let variables = file
        .variables
        .into_iter()
        .map(|v| crate::projections::Variable {
            label: v.label,
            dim: v.dim,
            structurally_zero: v.structurally_zero,
        })
        .collect::<Vec<_>>();
    let mut equations = Vec::new();
    for e in file.equations {
        let mut coeffs = Vec::new();
        for (i, c) in e.coeffs {
            if i >= variables.len() {
                return Err(Error::ParseError {
                    context: e.label.clone(),
                    message: format!("coefficient references unknown variable {}", i),
                });
            }
            coeffs.push((i, parse_int(&c)?));
        }
        let x_dim = variables
            .iter()
            .find(|v| v.label == e.label)
            .map(|v| v.dim)
            .unwrap_or(0);
        equations.push(crate::projections::Equation {
            label: e.label,
            x_dim,
            constant: parse_int(&e.constant)?,
            coeffs,
        });
    }
    Ok(EquationSystem {
        n: file.n,
        k: file.k,
        t: file.t,
        q: file.q,
        rho: file.rho,
        variables,
        equations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::spread;
    use crate::projections::{build_system, solve, SolveOutcome};

    #[test]
    fn code_round_trip() {
        let code = spread(6, 3, 2).unwrap();
        let json = write_code(&code).unwrap();
        let (read, warned) = read_code(&json).unwrap();
        assert!(!warned, "canonical files read back without warnings");
        assert_eq!(read, code);
    }

    #[test]
    fn non_rref_rows_canonicalized_with_warning() {
        let json = r#"{
            "field": "GF(2)",
            "n": 3,
            "metric": "subspace",
            "subspaces": [["110", "011"], ["110", "101"]]
        }"#;
        let (code, warned) = read_code(json).unwrap();
        assert!(warned);
        assert_eq!(code.len(), 1, "the two row sets span the same subspace");
    }

    #[test]
    fn malformed_digit_rejected() {
        let json = r#"{
            "field": "GF(2)",
            "n": 3,
            "metric": "subspace",
            "subspaces": [["120"]]
        }"#;
        assert!(matches!(read_code(json), Err(Error::ParseError { .. })));
    }

    #[test]
    fn skeleton_file_round_trip() {
        let text = "# two disjoint blocks\n111000\n000111\n";
        let (n, words) = read_skeleton_words(text).unwrap();
        assert_eq!(n, 6);
        assert_eq!(words, vec![0b000111, 0b111000]);
        let back = skeleton_words_to_text(n, &words);
        assert_eq!(back, "111000\n000111");
    }

    #[test]
    fn rank_code_round_trip() {
        let code = crate::rank::gabidulin(3, 3, 2, 2).unwrap();
        let json = write_rank_code(&code, None).unwrap();
        let (read, diagram) = read_rank_code(&json).unwrap();
        assert!(diagram.is_none());
        assert_eq!(read.dim(), code.dim());
        assert_eq!(read.basis(), code.basis());
    }

    #[test]
    fn system_round_trip_solves_identically() {
        let sys = build_system(7, 3, 2, 2, 2).unwrap();
        let json = write_system(&sys);
        let read = read_system(&json).unwrap();
        assert_eq!(read.num_variables(), sys.num_variables());
        assert_eq!(read.num_equations(), sys.num_equations());
        let a = solve(&sys, &[], 100_000).unwrap();
        let b = solve(&read, &[], 100_000).unwrap();
        assert_eq!(a, b);
        assert!(matches!(a, SolveOutcome::Unique(_)));
    }
}
