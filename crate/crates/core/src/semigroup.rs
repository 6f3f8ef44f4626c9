//! Finite semigroups and bands given by a total multiplication table.

use thiserror::Error;

/// Default cap on the exhaustive (cubic) associativity check.
pub const DEFAULT_ASSOC_CAP: usize = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("table entry out of range at ({row},{col}): {value} not in 0..{n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element count {n} exceeds the associativity-check cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("not a band: {witness}*{witness} != {witness}")]
    NotABand { witness: usize },
    #[error("label count {got} does not match element count {n}")]
    LabelCountMismatch { got: usize, n: usize },
    #[error("empty table")]
    Empty,
}

/// A finite semigroup on elements `0..n` with a validated multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates a raw grid: squareness, entry range, and exhaustive associativity.
    pub fn validate(
        grid: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, SemigroupError> {
        Self::validate_with_cap(grid, labels, DEFAULT_ASSOC_CAP)
    }

    pub fn validate_with_cap(
        grid: &[Vec<usize>],
        labels: Option<Vec<String>>,
        assoc_cap: usize,
    ) -> Result<Self, SemigroupError> {
        let n = grid.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        if n > assoc_cap {
            return Err(SemigroupError::CapExceeded { n, cap: assoc_cap });
        }
        for (row, r) in grid.iter().enumerate() {
            if r.len() != n {
                return Err(SemigroupError::NotSquare {
                    row,
                    got: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::OutOfRange { row, col, value, n });
                }
            }
        }
        if let Some(ref ls) = labels {
            if ls.len() != n {
                return Err(SemigroupError::LabelCountMismatch { got: ls.len(), n });
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for r in grid {
            table.extend_from_slice(r);
        }
        let sg = FiniteSemigroup { n, table, labels };
        // Naive n^3 loop; Light's test would be an optimization, not needed at desk scale.
        for a in 0..n {
            for b in 0..n {
                let ab = sg.product(a, b);
                for c in 0..n {
                    if sg.product(ab, c) != sg.product(a, sg.product(b, c)) {
                        return Err(SemigroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(sg)
    }

    /// Builds from an already-trusted closed table (used by internal constructions);
    /// still asserts associativity in debug builds.
    pub(crate) fn from_table_unchecked(
        n: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let sg = FiniteSemigroup { n, table, labels };
        #[cfg(debug_assertions)]
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    debug_assert_eq!(
                        sg.product(sg.product(a, b), c),
                        sg.product(a, sg.product(b, c))
                    );
                }
            }
        }
        sg
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// Product of a nonempty word of elements.
    pub fn product_word(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.product(acc, x)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) -> Result<(), SemigroupError> {
        if let Some(ref ls) = labels {
            if ls.len() != self.n {
                return Err(SemigroupError::LabelCountMismatch {
                    got: ls.len(),
                    n: self.n,
                });
            }
        }
        self.labels = labels;
        Ok(())
    }

    /// Display label of an element; falls back to the 0-based index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves an element by label, or by 0-based index if the string is numeric.
    pub fn resolve(&self, sel: &str) -> Option<usize> {
        if let Some(ls) = &self.labels {
            if let Some(pos) = ls.iter().position(|l| l == sel) {
                return Some(pos);
            }
        }
        sel.parse::<usize>().ok().filter(|&x| x < self.n)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.product(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// First element with a*a != a, if any.
    pub fn band_witness(&self) -> Option<usize> {
        (0..self.n).find(|&x| !self.is_idempotent(x))
    }

    pub fn is_band(&self) -> bool {
        self.band_witness().is_none()
    }

    /// The opposite semigroup (transposed table).
    pub fn opposite(&self) -> Self {
        let mut table = vec![0; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                table[a * self.n + b] = self.product(b, a);
            }
        }
        FiniteSemigroup {
            n: self.n,
            table,
            labels: self.labels.clone(),
        }
    }
}

/// A finite band: a semigroup in which every element is idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBand {
    sg: FiniteSemigroup,
}

impl FiniteBand {
    pub fn new(sg: FiniteSemigroup) -> Result<Self, SemigroupError> {
        match sg.band_witness() {
            Some(witness) => Err(SemigroupError::NotABand { witness }),
            None => Ok(FiniteBand { sg }),
        }
    }

    pub fn validate(
        grid: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, SemigroupError> {
        Self::new(FiniteSemigroup::validate(grid, labels)?)
    }

    pub fn as_semigroup(&self) -> &FiniteSemigroup {
        &self.sg
    }

    pub fn into_semigroup(self) -> FiniteSemigroup {
        self.sg
    }

    pub fn opposite(&self) -> Self {
        FiniteBand {
            sg: self.sg.opposite(),
        }
    }
}

impl std::ops::Deref for FiniteBand {
    type Target = FiniteSemigroup;
    fn deref(&self) -> &FiniteSemigroup {
        &self.sg
    }
}

/// Outcome of validating a raw table: a band when idempotency holds, otherwise
/// a plain semigroup.
#[derive(Debug, Clone)]
pub enum Validated {
    Semigroup(FiniteSemigroup),
    Band(FiniteBand),
}

impl Validated {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        match self {
            Validated::Semigroup(s) => s,
            Validated::Band(b) => b.as_semigroup(),
        }
    }

    pub fn is_band(&self) -> bool {
        matches!(self, Validated::Band(_))
    }
}

/// Validates a grid and classifies it as band or plain semigroup.
pub fn validate(grid: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Validated, SemigroupError> {
    let sg = FiniteSemigroup::validate(grid, labels)?;
    if sg.is_band() {
        Ok(Validated::Band(FiniteBand { sg }))
    } else {
        Ok(Validated::Semigroup(sg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_band() {
        let v = validate(&[vec![0]], None).unwrap();
        assert!(v.is_band());
        assert_eq!(v.semigroup().n(), 1);
    }

    #[test]
    fn left_zero_is_band() {
        // a*b = a
        let v = validate(&[vec![0, 0], vec![1, 1]], None).unwrap();
        assert!(v.is_band());
    }

    #[test]
    fn z2_is_not_band() {
        let v = validate(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert!(!v.is_band());
        assert_eq!(v.semigroup().band_witness(), Some(1));
    }

    #[test]
    fn rejects_non_associative() {
        // (1*1)*1 = 0 but 1*(1*1) = 1
        let err = validate(&[vec![0, 0], vec![1, 0]], None);
        match err {
            Err(SemigroupError::NotAssociative { .. }) => {}
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let err = FiniteSemigroup::validate(&[vec![0, 2], vec![1, 0]], None);
        assert_eq!(
            err.unwrap_err(),
            SemigroupError::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                n: 2
            }
        );
    }

    #[test]
    fn rejects_non_square() {
        let err = FiniteSemigroup::validate(&[vec![0, 0], vec![1]], None);
        assert!(matches!(err, Err(SemigroupError::NotSquare { row: 1, .. })));
    }

    #[test]
    fn opposite_transposes() {
        let sg = FiniteSemigroup::validate(&[vec![0, 0], vec![1, 1]], None).unwrap();
        let op = sg.opposite();
        // left zero becomes right zero
        assert_eq!(op.product(0, 1), 1);
        assert_eq!(op.product(1, 0), 0);
    }
}
