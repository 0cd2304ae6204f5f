//! Ordered lists of pairwise nearly orthogonal cyclic columns.

use crate::column::{nearly_orthogonal_entries, CyclicColumn, Order};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An ordered list of `mu` columns generating pairwise nearly orthogonal
/// cyclic Latin squares. Forgetting the order yields the corresponding set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MnolsList {
    columns: Vec<CyclicColumn>,
}

impl MnolsList {
    pub fn new(columns: Vec<CyclicColumn>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyList);
        }
        let n = columns[0].order().n();
        for c in &columns[1..] {
            if c.order().n() != n {
                return Err(Error::OrderMismatch(n, c.order().n()));
            }
        }
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                if !nearly_orthogonal_entries(columns[i].entries(), columns[j].entries()) {
                    return Err(Error::NotNearlyOrthogonal(i + 1, j + 1));
                }
            }
        }
        Ok(MnolsList { columns })
    }

    /// Caller guarantees the pairwise conditions hold.
    pub(crate) fn from_columns_unchecked(columns: Vec<CyclicColumn>) -> Self {
        debug_assert!(!columns.is_empty());
        MnolsList { columns }
    }

    pub fn order(&self) -> Order {
        self.columns[0].order()
    }

    pub fn mu(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[CyclicColumn] {
        &self.columns
    }

    /// Column of the square at 1-based position `i`.
    pub fn column(&self, i: usize) -> Result<&CyclicColumn> {
        if i == 0 || i > self.columns.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                mu: self.columns.len(),
            });
        }
        Ok(&self.columns[i - 1])
    }
}

impl fmt::Debug for MnolsList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MnolsList({self})")
    }
}

impl fmt::Display for MnolsList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.columns {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for MnolsList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let columns = s
            .split(';')
            .map(|t| t.trim().parse::<CyclicColumn>())
            .collect::<Result<Vec<_>>>()?;
        MnolsList::new(columns)
    }
}

/// Whether every unordered pair of columns is nearly orthogonal. Columns of
/// differing orders are never nearly orthogonal.
pub fn is_mnols_list(cols: &[CyclicColumn]) -> bool {
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if cols[i].order() != cols[j].order() {
                return false;
            }
            if !nearly_orthogonal_entries(cols[i].entries(), cols[j].entries()) {
                return false;
            }
        }
    }
    true
}

/// Lexicographic comparison over columns.
pub fn compare_lists(a: &MnolsList, b: &MnolsList) -> Ordering {
    a.cmp(b)
}
