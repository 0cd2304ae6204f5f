//! Orbit-stabilizer aggregation: turn per-class stabilizer sizes into the six
//! class counts, exactly.
//!
//! For a class with canonical representative `L` the orbit-stabilizer theorem
//! gives, inside its set-isotopy class: `mu! * |Is_l| / |Is_s|` list-isotopy
//! classes, `phi(n) * n * |Red_s| / |Is_s|` set-reduced classes,
//! `phi(n) * n * mu! / |Is_s|` list-reduced classes,
//! `phi(n) * n * n! / |Is_s|` sets, and `phi(n) * n * mu! * n! / |Is_s|`
//! lists. Every division must be exact; a remainder means the stabilizer data
//! is wrong. All arithmetic is integer arithmetic, arbitrary precision where
//! values can exceed 64 bits.

use crate::canonical::StabilizerCounts;
use crate::column::Order;
use crate::enumerate::{ClassStore, QuadCount};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeMap;

pub(crate) fn factorial_big(k: usize) -> BigUint {
    let mut f = BigUint::from(1u32);
    for i in 2..=k {
        f *= BigUint::from(i);
    }
    f
}

fn factorial_u64(k: usize) -> u64 {
    (2..=k as u64).product::<u64>().max(1)
}

fn exact_div_u64(num: u64, den: u64, what: &str) -> Result<u64> {
    if den == 0 || num % den != 0 {
        return Err(Error::CorruptStabilizer(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(num / den)
}

fn exact_div_big(num: BigUint, den: u64, what: &str) -> Result<BigUint> {
    let den = BigUint::from(den);
    if den.is_zero() || (&num % &den) != BigUint::zero() {
        return Err(Error::CorruptStabilizer(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(num / den)
}

/// Per-class counts `(listIso, setRed, listRed, sets, lists)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WithinClassCounts {
    pub list_isotopy: u64,
    pub set_reduced: u64,
    pub list_reduced: u64,
    pub sets: BigUint,
    pub lists: BigUint,
}

pub fn within_class_counts(
    sc: &StabilizerCounts,
    order: Order,
    mu: usize,
) -> Result<WithinClassCounts> {
    let n = order.n();
    let phi = order.phi() as u64;
    let mu_fact = factorial_u64(mu);
    let n_fact = factorial_big(n);
    let base = phi * n as u64;
    let list_isotopy = exact_div_u64(mu_fact * sc.is_l, sc.is_s, "list-isotopy classes")?;
    let set_reduced = exact_div_u64(base * sc.red_s, sc.is_s, "set-reduced classes")?;
    let list_reduced = exact_div_u64(base * mu_fact, sc.is_s, "list-reduced classes")?;
    let sets = exact_div_big(BigUint::from(base) * &n_fact, sc.is_s, "sets")?;
    let lists = exact_div_big(
        BigUint::from(base * mu_fact) * &n_fact,
        sc.is_s,
        "lists",
    )?;
    Ok(WithinClassCounts {
        list_isotopy,
        set_reduced,
        list_reduced,
        sets,
        lists,
    })
}

/// The six class counts for one `(n, mu)`, plus the distribution of classes
/// over `(is_s, is_l, red_s, type)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    pub n: usize,
    pub mu: usize,
    pub set_isotopy: u64,
    pub set_reduced: u64,
    pub list_isotopy: u64,
    pub list_reduced: u64,
    pub set_classes: BigUint,
    pub list_classes: BigUint,
    pub distribution: BTreeMap<(u64, u64, u64, u8), u64>,
}

impl CountTable {
    pub fn empty(n: usize, mu: usize) -> Self {
        CountTable {
            n,
            mu,
            set_isotopy: 0,
            set_reduced: 0,
            list_isotopy: 0,
            list_reduced: 0,
            set_classes: BigUint::zero(),
            list_classes: BigUint::zero(),
            distribution: BTreeMap::new(),
        }
    }
}

/// Sum the per-class counts over a complete store.
pub fn aggregate(store: &ClassStore, order: Order, mu: usize) -> Result<CountTable> {
    let mut t = CountTable::empty(order.n(), mu);
    t.set_isotopy = store.len() as u64;
    for r in store.records() {
        let w = within_class_counts(&r.stab, order, mu)?;
        t.list_isotopy += w.list_isotopy;
        t.set_reduced += w.set_reduced;
        t.list_reduced += w.list_reduced;
        t.set_classes += w.sets;
        t.list_classes += w.lists;
        *t.distribution
            .entry((r.stab.is_s, r.stab.is_l, r.stab.red_s, r.mnols_type.as_u8()))
            .or_insert(0) += 1;
    }
    Ok(t)
}

/// A table derived from Algorithm A's counts alone: canonical elements name
/// classes one-to-one, and the set/list totals follow from `LR * n!/mu!` and
/// `LR * n!`. The distribution is left empty.
pub fn table_from_quad(quad: &QuadCount, order: Order, mu: usize) -> Result<CountTable> {
    let mut t = CountTable::empty(order.n(), mu);
    t.set_isotopy = quad.set_canonical;
    t.set_reduced = quad.set_reduced;
    t.list_isotopy = quad.list_canonical;
    t.list_reduced = quad.list_reduced;
    let n_fact = factorial_big(order.n());
    t.set_classes = exact_div_big(
        BigUint::from(quad.list_reduced) * &n_fact,
        factorial_u64(mu),
        "set classes",
    )?;
    t.list_classes = BigUint::from(quad.list_reduced) * &n_fact;
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub entries: Vec<CheckEntry>,
}

impl ConsistencyReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.entries.push(CheckEntry {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

/// Compare a stabilizer-derived table against an exhaustive quadruple for the
/// same `(n, mu)`, and verify the two derived identities.
pub fn consistency_check(t: &CountTable, quad: &QuadCount) -> ConsistencyReport {
    let mut report = ConsistencyReport::default();
    report.check(
        "list-reduced",
        quad.list_reduced == t.list_reduced,
        format!("{} vs {}", quad.list_reduced, t.list_reduced),
    );
    report.check(
        "set-reduced",
        quad.set_reduced == t.set_reduced,
        format!("{} vs {}", quad.set_reduced, t.set_reduced),
    );
    report.check(
        "list-isotopy",
        quad.list_canonical == t.list_isotopy,
        format!("{} vs {}", quad.list_canonical, t.list_isotopy),
    );
    report.check(
        "set-isotopy",
        quad.set_canonical == t.set_isotopy,
        format!("{} vs {}", quad.set_canonical, t.set_isotopy),
    );
    let n_fact = factorial_big(t.n);
    let mu_fact = factorial_u64(t.mu);
    let expected_sets = BigUint::from(t.list_reduced) * &n_fact / BigUint::from(mu_fact);
    report.check(
        "set-classes identity",
        t.set_classes == expected_sets,
        format!("{} vs LR*n!/mu! = {}", t.set_classes, expected_sets),
    );
    let expected_lists = BigUint::from(t.list_reduced) * &n_fact;
    report.check(
        "list-classes identity",
        t.list_classes == expected_lists,
        format!("{} vs LR*n! = {}", t.list_classes, expected_lists),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{algorithm_a, algorithm_b};

    #[test]
    fn within_class_counts_examples() {
        let order = Order::new(4).unwrap();
        let w = within_class_counts(
            &StabilizerCounts {
                is_s: 4,
                is_l: 2,
                red_s: 1,
            },
            order,
            2,
        )
        .unwrap();
        assert_eq!(w.list_isotopy, 1);
        assert_eq!(w.set_reduced, 2);
        assert_eq!(w.list_reduced, 4);
        // phi(4)*4*4!/4 = 48 = LR*n!/mu! and phi(4)*4*2!*4!/4 = 96 = LR*n!.
        assert_eq!(w.sets, BigUint::from(48u32));
        assert_eq!(w.lists, BigUint::from(96u32));

        let order6 = Order::new(6).unwrap();
        let w = within_class_counts(
            &StabilizerCounts {
                is_s: 2,
                is_l: 1,
                red_s: 1,
            },
            order6,
            2,
        )
        .unwrap();
        assert_eq!(
            (w.list_isotopy, w.set_reduced, w.list_reduced),
            (1, 6, 12)
        );
        assert_eq!(w.sets, BigUint::from(4320u32));
        assert_eq!(w.lists, BigUint::from(8640u32));
    }

    #[test]
    fn trivial_stabilizer_gives_full_orbit() {
        let order = Order::new(6).unwrap();
        let sc = StabilizerCounts {
            is_s: 1,
            is_l: 1,
            red_s: 1,
        };
        let w = within_class_counts(&sc, order, 3).unwrap();
        assert_eq!(w.list_isotopy, 6);
        assert_eq!(w.set_reduced, 12);
        assert_eq!(w.list_reduced, 72);
    }

    #[test]
    fn non_exact_division_is_fatal() {
        let order = Order::new(6).unwrap();
        let sc = StabilizerCounts {
            is_s: 5,
            is_l: 1,
            red_s: 1,
        };
        assert!(matches!(
            within_class_counts(&sc, order, 2),
            Err(Error::CorruptStabilizer(_))
        ));
    }

    #[test]
    fn aggregate_matches_exhaustive_counts_small() {
        for (n, mu) in [(4usize, 2usize), (6, 2), (6, 3)] {
            let order = Order::new(n).unwrap();
            let stores = algorithm_b(n, mu).unwrap();
            let quads = algorithm_a(n, mu).unwrap();
            let t = aggregate(&stores[mu - 2], order, mu).unwrap();
            let report = consistency_check(&t, &quads[mu - 2]);
            assert!(report.pass(), "{:?}", report.entries);
        }
    }

    #[test]
    fn empty_store_aggregates_to_zeros() {
        let order = Order::new(4).unwrap();
        let t = aggregate(&ClassStore::new(), order, 3).unwrap();
        assert_eq!(t.set_isotopy, 0);
        assert_eq!(t.list_reduced, 0);
        assert!(t.set_classes.is_zero());
        assert!(t.distribution.is_empty());
    }

    #[test]
    fn big_totals_exceed_sixty_four_bits() {
        // 125026304 * 16! needs more than 64 bits, so the list total must be
        // carried at arbitrary precision. 16! itself still fits in u64.
        let sixteen_fact: u64 = 20_922_789_888_000;
        assert_eq!(factorial_big(16), BigUint::from(sixteen_fact));
        let lr: u64 = 125_026_304;
        let lists = BigUint::from(lr) * factorial_big(16);
        assert!(lists > BigUint::from(u64::MAX));
        assert_eq!(lists, BigUint::from(lr) * BigUint::from(sixteen_fact));
    }
}
