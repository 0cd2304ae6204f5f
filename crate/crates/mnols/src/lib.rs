//! Enumeration and classification of lists and sets of cyclic mutually
//! nearly orthogonal Latin squares (MNOLS) of even order.
//!
//! Two Latin squares of even order `n` are nearly orthogonal when their
//! superimposition contains every ordered symbol pair exactly once, except
//! that `(l, l)` never occurs and `(l, l + n/2)` occurs twice. A cyclic
//! square is determined by its first column, so collections are represented
//! as lists of columns. This crate enumerates such collections under four
//! equivalences (list-reduced, set-reduced, list-isotopy, set-isotopy) with
//! three independent, cross-validating algorithms, and derives exact class
//! counts from stabilizer sizes via the orbit-stabilizer theorem.

pub mod actions;
pub mod canonical;
pub mod column;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod list;
pub mod oracle;
pub mod parallel;
pub mod report;

pub use column::{
    compare_columns, difference_multiset, nearly_orthogonal, CyclicColumn, DifferenceMultiset,
    Order, MAX_ORDER,
};
pub use error::{Error, Result};
pub use list::{compare_lists, is_mnols_list, MnolsList};
