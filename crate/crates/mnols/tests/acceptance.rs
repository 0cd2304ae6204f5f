//! Acceptance suite: exact reproduction of the reference count tables at desk
//! scale, cross-validation of the three algorithms, oracle equivalences, the
//! structural property suites, exact counting identities, and determinism of
//! partitioned runs. Each test prints one pass line for its criterion.

use mnols::actions::{
    apply, cyclicity_closure_check, group_order_info, reduce_to_first_with, shift_columns_symbols,
    CyclicIsotopism,
};
use mnols::canonical::{
    canonical_form, classify_type, find_row_intercalates, is_list_canonical, is_list_reduced,
    is_set_canonical, is_set_reduced, stabilizer_counts, MnolsType,
};
use mnols::counting::aggregate;
use mnols::counting::consistency_check;
use mnols::enumerate::{algorithm_a, algorithm_b, algorithm_c_depths, candidate_columns, ClassStore};
use mnols::oracle;
use mnols::parallel::{run_partitioned, Algorithm, RunConfig};
use mnols::report::{to_json, Document};
use mnols::{is_mnols_list, CyclicColumn, MnolsList, Order};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Reference counts per (n, mu): (set-isotopy, set-reduced, list-isotopy,
/// list-reduced).
const EXPECTED: &[(usize, usize, [u64; 4])] = &[
    (4, 2, [1, 2, 1, 4]),
    (6, 2, [2, 12, 3, 24]),
    (8, 2, [9, 136, 12, 256]),
    (10, 2, [68, 2340, 128, 4640]),
    (12, 2, [1140, 52608, 2224, 105216]),
    (14, 2, [19040, 1589056, 38000, 3178112]),
    (4, 3, [0, 0, 0, 0]),
    (6, 3, [1, 6, 2, 12]),
    (8, 3, [1, 16, 6, 96]),
    (10, 3, [73, 2920, 438, 17520]),
    (12, 3, [4398, 211104, 26388, 1266624]),
    (14, 3, [429111, 36031716, 2574306, 216190296]),
    (4, 4, [0, 0, 0, 0]),
    (6, 4, [0, 0, 0, 0]),
    (8, 4, [0, 0, 0, 0]),
    (10, 4, [1, 20, 12, 480]),
    (12, 4, [2, 96, 48, 2304]),
    (14, 4, [117, 8638, 2484, 207312]),
    (4, 5, [0, 0, 0, 0]),
    (6, 5, [0, 0, 0, 0]),
    (8, 5, [0, 0, 0, 0]),
    (10, 5, [0, 0, 0, 0]),
    (12, 5, [0, 0, 0, 0]),
    (14, 5, [0, 0, 0, 0]),
];

fn expected_rows(n: usize, mu: usize) -> [u64; 4] {
    EXPECTED
        .iter()
        .find(|(en, emu, _)| *en == n && *emu == mu)
        .map(|(_, _, rows)| *rows)
        .unwrap_or_else(|| panic!("no expected data for n={n} mu={mu}"))
}

/// Shared per-order runs: stores of Algorithms B and C at every depth 2..=5.
fn stores_b(n: usize) -> &'static Vec<ClassStore> {
    static CACHE: OnceLock<BTreeMap<usize, Vec<ClassStore>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        [4usize, 6, 8, 10, 12]
            .iter()
            .map(|&n| (n, algorithm_b(n, 5).unwrap()))
            .collect()
    })[&n]
}

fn stores_c(n: usize) -> &'static Vec<ClassStore> {
    static CACHE: OnceLock<BTreeMap<usize, Vec<ClassStore>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        [4usize, 6, 8, 10, 12]
            .iter()
            .map(|&n| (n, algorithm_c_depths(n, 5).unwrap()))
            .collect()
    })[&n]
}

fn check_tables_for_mu(mu: usize, orders: &[usize]) {
    for &n in orders {
        let order = Order::new(n).unwrap();
        let store = &stores_b(n)[mu - 2];
        let t = aggregate(store, order, mu).unwrap();
        let got = [t.set_isotopy, t.set_reduced, t.list_isotopy, t.list_reduced];
        assert_eq!(
            got,
            expected_rows(n, mu),
            "table mismatch at n={n} mu={mu} (set-isotopy, set-reduced, list-isotopy, list-reduced)"
        );
        // The independent clique-search path must agree record for record.
        assert_eq!(
            store, &stores_c(n)[mu - 2],
            "store mismatch between depth-first and clique search at n={n} mu={mu}"
        );
    }
}

#[test]
fn acceptance_01_two_mnols_tables_exact() {
    check_tables_for_mu(2, &[4, 6, 8, 10, 12]);
    println!("criterion 1: PASS - two-MNOLS counts exact for n in 4..=12");
}

#[test]
fn acceptance_02_three_mnols_tables_exact() {
    check_tables_for_mu(3, &[4, 6, 8, 10, 12]);
    println!("criterion 2: PASS - three-MNOLS counts exact for n in 4..=12");
}

#[test]
fn acceptance_03_four_mnols_tables_exact() {
    check_tables_for_mu(4, &[4, 6, 8, 10, 12]);
    println!("criterion 3: PASS - four-MNOLS counts exact for n in 4..=12");
}

#[test]
fn acceptance_04_five_mnols_all_zero() {
    check_tables_for_mu(5, &[4, 6, 8, 10, 12]);
    for &n in &[4usize, 6, 8, 10, 12] {
        assert!(stores_b(n)[3].is_empty());
    }
    println!("criterion 4: PASS - no five MNOLS exist up to n = 12");
}

/// Release validation at n = 14 (several CPU-minutes even in parallel).
#[test]
#[ignore = "release validation: n = 14 full run takes CPU-hours; run with --ignored"]
fn acceptance_05_order_fourteen_full_run() {
    let workers = std::thread::available_parallelism().map_or(4, |p| p.get());
    let run = run_partitioned(
        &RunConfig::new(14, 5, Algorithm::C).with_workers(workers),
    )
    .unwrap();
    let stores = run.stores().unwrap();
    let order = Order::new(14).unwrap();
    for (idx, mu) in (2..=5).enumerate() {
        let t = aggregate(&stores[idx], order, mu).unwrap();
        let got = [t.set_isotopy, t.set_reduced, t.list_isotopy, t.list_reduced];
        assert_eq!(got, expected_rows(14, mu), "n=14 mu={mu}");
    }

    // Autotopy/type distributions. red_s = 1 throughout at n = 14.
    type DistRow = ((u64, u64, u64, u8), u64);
    let dist = |idx: usize| {
        let t = aggregate(&stores[idx], order, idx + 2).unwrap();
        t.distribution
    };
    let d2 = dist(0);
    let expect2: &[DistRow] = &[
        ((1, 1, 1, 0), 3618),
        ((1, 1, 1, 1), 15186),
        ((2, 1, 1, 1), 80),
        ((2, 2, 1, 0), 46),
        ((2, 2, 1, 1), 88),
        ((3, 3, 1, 0), 2),
        ((3, 3, 1, 1), 14),
        ((6, 6, 1, 0), 1),
        ((6, 6, 1, 1), 5),
    ];
    assert_eq!(d2, expect2.iter().cloned().collect());
    let type0: u64 = d2.iter().filter(|((.., t), _)| *t == 0).map(|(_, c)| c).sum();
    let type1: u64 = d2.iter().filter(|((.., t), _)| *t == 1).map(|(_, c)| c).sum();
    assert_eq!((type0, type1), (3667, 15373));

    let d3 = dist(1);
    let expect3: &[DistRow] = &[
        ((1, 1, 1, 0), 202382),
        ((1, 1, 1, 1), 226436),
        ((2, 2, 1, 0), 146),
        ((2, 2, 1, 1), 57),
        ((3, 1, 1, 0), 24),
        ((3, 1, 1, 1), 63),
        ((6, 2, 1, 0), 1),
        ((6, 2, 1, 1), 2),
    ];
    assert_eq!(d3, expect3.iter().cloned().collect());

    let d4 = dist(2);
    let expect4: &[DistRow] = &[
        ((1, 1, 1, 0), 67),
        ((1, 1, 1, 1), 26),
        ((2, 1, 1, 0), 3),
        ((2, 1, 1, 1), 8),
        ((2, 2, 1, 0), 1),
        ((3, 1, 1, 0), 4),
        ((3, 1, 1, 1), 7),
        ((6, 2, 1, 0), 1),
    ];
    assert_eq!(d4, expect4.iter().cloned().collect());

    println!("criterion 5: PASS - n = 14 counts and type distributions exact");
}

#[test]
fn acceptance_06_cross_algorithm_agreement() {
    for &n in &[4usize, 6, 8, 10] {
        let quads = algorithm_a(n, 5).unwrap();
        for (idx, mu) in (2..=5).enumerate() {
            let b = &stores_b(n)[idx];
            let c = &stores_c(n)[idx];
            assert_eq!(
                quads[idx].set_canonical,
                b.len() as u64,
                "A vs B class count at n={n} mu={mu}"
            );
            assert_eq!(b.len(), c.len(), "B vs C class count at n={n} mu={mu}");
            assert_eq!(
                b.stabilizer_triples(),
                c.stabilizer_triples(),
                "stabilizer multisets at n={n} mu={mu}"
            );
            assert_eq!(b, c, "full stores at n={n} mu={mu}");

            // A's full quadruple must match the stabilizer-derived table.
            let t = aggregate(b, Order::new(n).unwrap(), mu).unwrap();
            let report = consistency_check(&t, &quads[idx]);
            assert!(report.pass(), "n={n} mu={mu}: {:?}", report.entries);

            // Every record is a set-canonical MNOLS list.
            for r in b.records() {
                assert!(is_mnols_list(r.columns.columns()));
                assert!(is_set_canonical(&r.columns));
            }
        }
    }
    // n = 12: B and C agree (A is out of its stated scale there).
    for idx in 0..4 {
        assert_eq!(&stores_b(12)[idx], &stores_c(12)[idx], "n=12 depth {idx}");
    }
    println!("criterion 6: PASS - algorithms agree (A=B=C for n<=10, B=C for n=12)");
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }

    fn perm(&mut self, n: usize) -> Vec<u8> {
        let mut p: Vec<u8> = (0..n as u8).collect();
        for i in (1..n).rev() {
            p.swap(i, self.below(i + 1));
        }
        p
    }
}

#[test]
fn acceptance_07_oracle_equivalence() {
    // All pairs at n in {4, 6}; the same sweep checks symmetry of the fast
    // predicate and that column order equals row-major square order.
    for n in [4usize, 6] {
        let perms = oracle::all_permutations(n);
        for a in &perms {
            for b in &perms {
                let ca = CyclicColumn::new(a.clone()).unwrap();
                let cb = CyclicColumn::new(b.clone()).unwrap();
                let fast = mnols::nearly_orthogonal(&ca, &cb).unwrap();
                assert_eq!(oracle::oracle_nearly_orthogonal(&ca, &cb).unwrap(), fast);
                assert_eq!(mnols::nearly_orthogonal(&cb, &ca).unwrap(), fast);
                assert_eq!(mnols::compare_columns(&ca, &cb), ca.expand().cmp(&cb.expand()));
            }
        }
    }
    // 1e5 random pairs at each n in {8, 10, 12, 14}.
    let mut rng = SplitMix(0x5eed);
    for n in [8usize, 10, 12, 14] {
        for _ in 0..100_000 {
            let ca = CyclicColumn::new(rng.perm(n)).unwrap();
            let cb = CyclicColumn::new(rng.perm(n)).unwrap();
            assert_eq!(
                oracle::oracle_nearly_orthogonal(&ca, &cb).unwrap(),
                mnols::nearly_orthogonal(&ca, &cb).unwrap(),
                "n={n} a={ca} b={cb}"
            );
        }
    }

    // Orbit checks at n in {4, 6}: canonical_form is the orbit minimum,
    // orbit size times is_s is the group order phi(n) * n * mu!, orbits are
    // closed under taking canonical forms, and the orbit count matches the
    // reference class count.
    for n in [4usize, 6] {
        let order = Order::new(n).unwrap();
        for mu in 2..=3 {
            let all = oracle::oracle_enumerate(order, mu).unwrap();
            let mut seen: Vec<MnolsList> = Vec::new();
            let mut orbits = 0u64;
            for l in &all {
                if seen.contains(l) {
                    continue;
                }
                let orbit = oracle::oracle_orbit(l).unwrap();
                let min = orbit.iter().min().unwrap().clone();
                assert_eq!(canonical_form(l), min, "orbit minimum at n={n} mu={mu}");
                assert_eq!(
                    oracle::oracle_orbit(&min).unwrap(),
                    orbit,
                    "orbit of the representative differs at n={n} mu={mu}"
                );
                let sc = stabilizer_counts(&min);
                let expected = (order.phi() * n * (1..=mu).product::<usize>()) as u64;
                assert_eq!(
                    orbit.len() as u64 * sc.is_s,
                    expected,
                    "orbit-stabilizer at n={n} mu={mu} rep={min}"
                );
                orbits += 1;
                seen.extend(orbit);
            }
            assert_eq!(orbits, expected_rows(n, mu)[0], "orbit count at n={n} mu={mu}");
        }
    }
    println!("criterion 7: PASS - fast checks equal oracles; orbit-stabilizer verified");
}

/// All list-reduced lists at the given order and depth.
fn all_reduced_lists(n: usize, mu: usize) -> Vec<MnolsList> {
    let order = Order::new(n).unwrap();
    let identity = CyclicColumn::identity(order);
    let mut out = Vec::new();
    let mut cols = vec![identity];
    fn dfs(cols: &mut Vec<CyclicColumn>, mu: usize, out: &mut Vec<MnolsList>) {
        if cols.len() == mu {
            out.push(MnolsList::new(cols.clone()).unwrap());
            return;
        }
        let next: Vec<CyclicColumn> = candidate_columns(cols).collect();
        for p in next {
            cols.push(p);
            dfs(cols, mu, out);
            cols.pop();
        }
    }
    dfs(&mut cols, mu, &mut out);
    out
}

#[test]
fn acceptance_08_structural_property_suites() {
    let mut rng = SplitMix(0xabcdef);

    // Half-period symbol permutations preserve near-orthogonality at square
    // level, exhaustively over symbol permutations for n in {4, 6, 8}.
    for n in [4usize, 6, 8] {
        let order = Order::new(n).unwrap();
        let pairs = all_reduced_lists(n, 2);
        let symbol_perms = oracle::half_period_symbol_perms(order);
        let ident: Vec<u8> = (0..n as u8).collect();
        for l in &pairs {
            let sa = l.columns()[0].expand();
            let sb = l.columns()[1].expand();
            for se in &symbol_perms {
                let (sr, sc) = if n <= 6 {
                    (rng.perm(n), rng.perm(n))
                } else {
                    (ident.clone(), ident.clone())
                };
                let ta = oracle::apply_isotopism_to_square(&sa, &sr, &sc, se);
                let tb = oracle::apply_isotopism_to_square(&sb, &sr, &sc, se);
                assert!(
                    oracle::squares_nearly_orthogonal(&ta, &tb),
                    "half-period transform broke near-orthogonality at n={n}"
                );
            }
        }
    }

    // Simultaneous column/symbol shift fixes every list, all shifts, n <= 8.
    for n in [4usize, 6, 8] {
        for mu in 2..=3 {
            for l in all_reduced_lists(n, mu) {
                for i in 0..n {
                    assert_eq!(shift_columns_symbols(&l, i), l);
                }
            }
        }
    }

    // Closure and group laws of the column-form action: every (x, j, pi) with
    // sampled row permutations maps MNOLS lists to MNOLS lists, composition
    // matches sequential application, and the column action agrees with the
    // square-level action.
    for n in [4usize, 6, 8] {
        let order = Order::new(n).unwrap();
        for mu in 2..=3 {
            let lists = all_reduced_lists(n, mu);
            for l in &lists {
                for &x in &order.units() {
                    for j in 0..n {
                        for pi in oracle::all_permutations(mu) {
                            let sr = rng.perm(n);
                            let iso =
                                CyclicIsotopism::new(order, x, j, sr.clone(), pi.clone()).unwrap();
                            let moved = apply(&iso, l).unwrap();
                            assert!(is_mnols_list(moved.columns()), "closure failed");
                            // Square-level agreement: position k of the image
                            // is square pi[k] of l acted on by
                            // (sigma_R, m_x, m_x shifted by j).
                            let sc: Vec<u8> = (0..n).map(|v| ((x * v) % n) as u8).collect();
                            let se: Vec<u8> =
                                (0..n).map(|v| ((x * v + j) % n) as u8).collect();
                            for (k, col) in moved.columns().iter().enumerate() {
                                let src = l.columns()[pi[k] as usize].expand();
                                let sq = oracle::apply_isotopism_to_square(&src, &sr, &sc, &se);
                                assert_eq!(col.expand(), sq, "square/column mismatch");
                            }
                        }
                    }
                }
                // Group law on random pairs.
                for _ in 0..3 {
                    let g = CyclicIsotopism::new(
                        order,
                        order.units()[rng.below(order.phi())],
                        rng.below(n),
                        rng.perm(n),
                        rng.perm(mu),
                    )
                    .unwrap();
                    let h = CyclicIsotopism::new(
                        order,
                        order.units()[rng.below(order.phi())],
                        rng.below(n),
                        rng.perm(n),
                        rng.perm(mu),
                    )
                    .unwrap();
                    assert_eq!(
                        apply(&g.compose(&h).unwrap(), l).unwrap(),
                        apply(&g, &apply(&h, l).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    // Random-sample closure at n in {10, 12}.
    for n in [10usize, 12] {
        let order = Order::new(n).unwrap();
        let identity = CyclicColumn::identity(order);
        let c2s: Vec<CyclicColumn> = candidate_columns(std::slice::from_ref(&identity)).collect();
        for _ in 0..200 {
            let c2 = c2s[rng.below(c2s.len())].clone();
            let l = MnolsList::new(vec![identity.clone(), c2]).unwrap();
            let iso = CyclicIsotopism::new(
                order,
                order.units()[rng.below(order.phi())],
                rng.below(n),
                rng.perm(n),
                rng.perm(2),
            )
            .unwrap();
            let moved = apply(&iso, &l).unwrap();
            assert!(is_mnols_list(moved.columns()));
            assert_eq!(canonical_form(&moved), canonical_form(&l));
        }
    }

    // Prefix closure: dropping the last square of a canonical list leaves a
    // canonical list. Exhaustive at n in {4, 6, 8} over every reduced list.
    for n in [4usize, 6, 8] {
        for mu in 2..=4 {
            for l in all_reduced_lists(n, mu) {
                let prefix = MnolsList::new(l.columns()[..mu - 1].to_vec()).unwrap();
                if is_set_canonical(&l) {
                    assert!(is_set_canonical(&prefix), "set prefix closure at {l}");
                }
                if is_list_canonical(&l) {
                    assert!(is_list_canonical(&prefix), "list prefix closure at {l}");
                }
            }
        }
    }

    // Canonical lists have second column starting with 1, n <= 10.
    for n in [4usize, 6, 8, 10] {
        for (idx, _mu) in (2..=3).enumerate() {
            for r in stores_b(n)[idx].records() {
                assert_eq!(r.columns.columns()[1].get(0), 1);
            }
        }
        for l in all_reduced_lists(n, 2) {
            if is_list_canonical(&l) {
                assert_eq!(l.columns()[1].get(0), 1);
            }
        }
    }

    // Type is constant on set-isotopy classes: exhaustive over reduced pairs
    // at n in {4, 6}, randomly at larger orders via the closure loop above.
    for n in [4usize, 6] {
        for l in all_reduced_lists(n, 2) {
            assert_eq!(classify_type(&l), classify_type(&canonical_form(&l)));
        }
    }
    for n in [8usize, 10, 12] {
        let order = Order::new(n).unwrap();
        let identity = CyclicColumn::identity(order);
        let c2s: Vec<CyclicColumn> = candidate_columns(std::slice::from_ref(&identity)).collect();
        for _ in 0..100 {
            let l = MnolsList::new(vec![
                identity.clone(),
                c2s[rng.below(c2s.len())].clone(),
            ])
            .unwrap();
            let iso = CyclicIsotopism::new(
                order,
                order.units()[rng.below(order.phi())],
                rng.below(n),
                rng.perm(n),
                rng.perm(2),
            )
            .unwrap();
            let moved = reduce_to_first_with(&apply(&iso, &l).unwrap(), 1, 1, 0, false).unwrap();
            assert_eq!(classify_type(&moved), classify_type(&l));
        }
    }

    // Cyclicity-preserving column/symbol isotopisms have the affine form.
    for n in [2usize, 4, 6] {
        assert!(cyclicity_closure_check(n).unwrap(), "affine form at n={n}");
    }

    println!("criterion 8: PASS - structural property suites hold");
}

#[test]
fn acceptance_09_counting_identities_exact() {
    for &(n, mu, _) in EXPECTED.iter().filter(|(n, ..)| *n <= 12) {
        let order = Order::new(n).unwrap();
        let store = &stores_b(n)[mu - 2];
        // aggregate fails on any non-exact division.
        let t = aggregate(store, order, mu).unwrap();
        let n_fact = factorial(n);
        let mu_fact = factorial(mu);
        assert_eq!(
            t.set_classes,
            BigUint::from(t.list_reduced) * &n_fact / &mu_fact,
            "set-classes identity at n={n} mu={mu}"
        );
        assert_eq!(
            t.list_classes,
            BigUint::from(t.list_reduced) * &n_fact,
            "list-classes identity at n={n} mu={mu}"
        );
    }
    // The reference n=16 mu=2 list-reduced count scales to a total beyond
    // 64 bits; recompute it at arbitrary precision.
    let lr16: u64 = 125_026_304;
    let lists = BigUint::from(lr16) * factorial(16);
    assert!(lists > BigUint::from(u64::MAX));
    assert_eq!(&lists % factorial(16), BigUint::from(0u32));
    assert_eq!(&lists / factorial(16), BigUint::from(lr16));
    println!("criterion 9: PASS - counting identities exact, including n=16 scale");
}

fn factorial(k: usize) -> BigUint {
    let mut f = BigUint::from(1u32);
    for i in 2..=k {
        f *= BigUint::from(i);
    }
    f
}

#[test]
fn acceptance_10_deterministic_output() {
    let render = |config: &RunConfig| -> String {
        let run = run_partitioned(config).unwrap();
        let stores = run.stores().unwrap();
        let order = Order::new(config.n).unwrap();
        let docs: Vec<Document> = stores
            .iter()
            .enumerate()
            .map(|(idx, s)| {
                let t = aggregate(s, order, idx + 2).unwrap();
                Document::new(&t, Some(s), "b")
            })
            .collect();
        to_json(&docs).unwrap()
    };

    let one = render(&RunConfig::new(10, 3, Algorithm::B).with_workers(1));
    let eight = render(&RunConfig::new(10, 3, Algorithm::B).with_workers(8));
    assert_eq!(one, eight, "worker count changed output bytes");

    // Kill/resume: truncate a checkpoint to its first half and resume.
    let dir = std::env::temp_dir().join(format!("mnols-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b_n10_mu3.jsonl");
    let full = render(
        &RunConfig::new(10, 3, Algorithm::B)
            .with_workers(4)
            .with_checkpoint(Some(path.clone()), false),
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let keep = lines.len() / 2;
    std::fs::write(&path, format!("{}\n", lines[..keep].join("\n"))).unwrap();
    let resumed = render(
        &RunConfig::new(10, 3, Algorithm::B)
            .with_workers(4)
            .with_checkpoint(Some(path.clone()), true),
    );
    assert_eq!(full, resumed, "resume changed output bytes");
    assert_eq!(full, eight, "checkpointed run changed output bytes");
    std::fs::remove_dir_all(&dir).ok();
    println!("criterion 10: PASS - byte-identical output across workers and resume");
}

/// Not a numbered criterion: the existence bound on mu, checked against every
/// computed order.
#[test]
fn sanity_bound_on_collection_size() {
    for &n in &[4usize, 6, 8, 10, 12] {
        let bound = if n % 4 == 2 { n / 2 + 1 } else { n / 2 };
        let max_mu = (2..=5)
            .filter(|&mu| !stores_b(n)[mu - 2].is_empty())
            .max()
            .unwrap_or(1);
        assert!(
            max_mu <= bound,
            "found {max_mu} MNOLS at n={n}, exceeding the bound {bound}"
        );
    }
}

/// Not a numbered criterion: the nested classification chain one might assume.
/// Set-canonical implies the three others by subgroup containment; whether
/// list-canonical implies set-reduced is checked empirically and reported.
#[test]
fn canonical_implication_chain_reported() {
    let mut chain_violations = 0usize;
    for n in [4usize, 6, 8, 10] {
        for mu in 2..=3 {
            for l in all_reduced_lists(n, mu) {
                assert!(is_list_reduced(&l));
                if is_set_canonical(&l) {
                    assert!(is_list_canonical(&l), "set-canonical not list-canonical: {l}");
                    assert!(is_set_reduced(&l), "set-canonical not set-reduced: {l}");
                }
                if is_list_canonical(&l) && !is_set_reduced(&l) {
                    chain_violations += 1;
                }
            }
        }
    }
    println!(
        "list-canonical but not set-reduced lists at n<=10, mu<=3: {chain_violations} \
         (the four predicates are evaluated independently)"
    );
}

/// Not a numbered criterion: resolves which intercalate condition matches the
/// type definition. An intercalate witnesses type 0 exactly when its symbol
/// difference is a unit; the row difference variant is reported for
/// comparison.
#[test]
fn type_against_intercalate_conditions() {
    let mut row_diff_matches = true;
    let mut checked = 0usize;
    for n in [4usize, 6, 8, 10] {
        for (idx, _mu) in (2..=3).enumerate() {
            for r in stores_b(n)[idx].records() {
                let ty = r.mnols_type;
                let ics = find_row_intercalates(&r.columns);
                let unit_symbol = ics.iter().any(|ic| gcd_usize(ic.symbol_delta, n) == 1);
                let unit_row = ics.iter().any(|ic| gcd_usize(ic.difference, n) == 1);
                assert_eq!(
                    ty == MnolsType::Type0,
                    unit_symbol,
                    "unit symbol-difference intercalate criterion failed at {}",
                    r.columns
                );
                if (ty == MnolsType::Type0) != unit_row {
                    row_diff_matches = false;
                }
                checked += 1;
            }
        }
    }
    println!(
        "type vs intercalates on {checked} classes: unit symbol-difference matches; \
         unit row-difference matches: {row_diff_matches}"
    );
}

fn gcd_usize(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Oracle-count agreement named by the enumeration invariants.
#[test]
fn exhaustive_oracle_counts_match_algorithm_a() {
    for n in [4usize, 6] {
        let order = Order::new(n).unwrap();
        for mu in 2..=3 {
            let quads = algorithm_a(n, mu).unwrap();
            let oracle_count = oracle::oracle_enumerate(order, mu).unwrap().len() as u64;
            assert_eq!(quads[mu - 2].list_reduced, oracle_count);
        }
    }
    let info = group_order_info(Order::new(6).unwrap(), 2);
    assert_eq!(info.group_order, BigUint::from(2u32 * 6 * 720 * 2));
}

/// No compatibility graph contains a triangle up to n = 12, so collections of
/// five squares cannot exist there.
#[test]
fn compatibility_graphs_are_triangle_free() {
    use mnols::enumerate::{build_lists_c, CompatibilityGraph};
    for n in [4usize, 6, 8, 10, 12] {
        let order = Order::new(n).unwrap();
        let lists = build_lists_c(order);
        for a in &lists.list1 {
            let list3: Vec<CyclicColumn> = lists
                .list2
                .iter()
                .filter(|b| mnols::nearly_orthogonal(a, b).unwrap())
                .cloned()
                .collect();
            let graph = CompatibilityGraph::new(list3);
            assert!(
                graph.max_clique_size() <= 2,
                "triangle in the compatibility graph at n={n}, second column {a}"
            );
        }
    }
}

/// The shipped expected-value data must agree with the constants frozen in
/// this suite wherever they overlap.
#[test]
fn shipped_expected_data_matches_frozen_constants() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("data/expected_tables.json");
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let tables = value["tables"].as_array().unwrap();
    for &(n, mu, rows) in EXPECTED {
        let entry = tables
            .iter()
            .find(|t| t["n"] == n as u64 && t["mu"] == mu as u64)
            .unwrap_or_else(|| panic!("data file lacks n={n} mu={mu}"));
        assert_eq!(entry["setIsotopy"], rows[0], "n={n} mu={mu}");
        assert_eq!(entry["setReduced"], rows[1], "n={n} mu={mu}");
        assert_eq!(entry["listIsotopy"], rows[2], "n={n} mu={mu}");
        assert_eq!(entry["listReduced"], rows[3], "n={n} mu={mu}");
    }
    // Distribution rows must sum to the class count of their table entry.
    for dist in value["distributions"].as_array().unwrap() {
        let (n, mu) = (dist["n"].as_u64().unwrap(), dist["mu"].as_u64().unwrap());
        let total: u64 = dist["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["count"].as_u64().unwrap())
            .sum();
        let entry = tables
            .iter()
            .find(|t| t["n"] == n && t["mu"] == mu)
            .unwrap();
        assert_eq!(total, entry["setIsotopy"].as_u64().unwrap(), "n={n} mu={mu}");
    }
}
