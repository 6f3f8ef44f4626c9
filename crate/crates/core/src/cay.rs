//! The `.cay` Cayley-table file format.
//!
//! Line 1 is the element count `n`; the next `n` lines hold `n` whitespace
//! separated 0-based integers (row `a` lists the products `a*0 .. a*(n-1)`).
//! Optional trailing `# <label>` lines map element 0, 1, ... to display
//! strings, one per element. Emission is canonical so that files round-trip
//! byte for byte.

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CayError {
    #[error("empty file")]
    Empty,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("expected {expected} table rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("expected 0 or {expected} label lines, found {found}")]
    BadLabelCount { expected: usize, found: usize },
}

/// Parses `.cay` text into a raw grid plus optional labels.
pub fn parse(text: &str) -> Result<(Vec<Vec<usize>>, Option<Vec<String>>), CayError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or(CayError::Empty)?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| CayError::Malformed {
            line: 1,
            msg: format!("expected element count, found {first:?}"),
        })?;
    let mut grid = Vec::with_capacity(n);
    let mut labels = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            labels.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
            continue;
        }
        if grid.len() == n {
            return Err(CayError::Malformed {
                line: lineno,
                msg: "unexpected extra table row".into(),
            });
        }
        let row: Result<Vec<usize>, _> = trimmed.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| CayError::Malformed {
            line: lineno,
            msg: format!("bad table entry: {e}"),
        })?;
        grid.push(row);
    }
    if grid.len() != n {
        return Err(CayError::MissingRows {
            expected: n,
            found: grid.len(),
        });
    }
    let labels = if labels.is_empty() {
        None
    } else if labels.len() == n {
        Some(labels)
    } else {
        return Err(CayError::BadLabelCount {
            expected: n,
            found: labels.len(),
        });
    };
    Ok((grid, labels))
}

/// Emits the canonical `.cay` text for a semigroup.
pub fn emit(sg: &FiniteSemigroup) -> String {
    let n = sg.n();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| sg.product(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = sg.labels() {
        for l in labels {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup;

    #[test]
    fn round_trip_bit_exact() {
        let grid = vec![vec![0, 0], vec![1, 1]];
        let sg = FiniteSemigroup::validate(&grid, Some(vec!["a".into(), "b".into()])).unwrap();
        let text = emit(&sg);
        assert_eq!(text, "2\n0 0\n1 1\n# a\n# b\n");
        let (grid2, labels2) = parse(&text).unwrap();
        let sg2 = FiniteSemigroup::validate(&grid2, labels2).unwrap();
        assert_eq!(emit(&sg2), text);
        assert_eq!(sg, sg2);
    }

    #[test]
    fn parse_without_labels() {
        let (grid, labels) = parse("1\n0\n").unwrap();
        assert_eq!(grid, vec![vec![0]]);
        assert!(labels.is_none());
        assert!(semigroup::validate(&grid, labels).unwrap().is_band());
    }

    #[test]
    fn rejects_wrong_label_count() {
        let err = parse("2\n0 0\n1 1\n# a\n").unwrap_err();
        assert_eq!(
            err,
            CayError::BadLabelCount {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn rejects_missing_rows() {
        let err = parse("3\n0 0 0\n").unwrap_err();
        assert!(matches!(err, CayError::MissingRows { expected: 3, found: 1 }));
    }
}
