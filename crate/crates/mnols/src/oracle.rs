//! Slow, definition-literal reference implementations. These expand full
//! squares, superimpose cell by cell, and materialize whole orbits. They are
//! deliberately unoptimized and exist to validate the fast column-based code
//! at small orders.

use crate::column::{CyclicColumn, Order};
use crate::error::{Error, Result};
use crate::list::MnolsList;

/// All `n!` permutations of `{0,..,n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for s in 0..n {
            if !used[s] {
                used[s] = true;
                current.push(s as u8);
                rec(n, current, used, out);
                current.pop();
                used[s] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// All permutations `sigma` of `{0,..,n-1}` with `sigma(y + n/2) = sigma(y) + n/2`.
pub fn half_period_symbol_perms(order: Order) -> Vec<Vec<u8>> {
    let n = order.n();
    let half = order.half();
    let mut out = Vec::new();
    let mut image = vec![u8::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        y: usize,
        n: usize,
        half: usize,
        image: &mut [u8],
        used: &mut [bool],
        out: &mut Vec<Vec<u8>>,
    ) {
        if y == half {
            out.push(image.to_vec());
            return;
        }
        for v in 0..n {
            let w = (v + half) % n;
            if !used[v] && !used[w] {
                used[v] = true;
                used[w] = true;
                image[y] = v as u8;
                image[y + half] = w as u8;
                rec(y + 1, n, half, image, used, out);
                used[v] = false;
                used[w] = false;
            }
        }
    }
    rec(0, n, half, &mut image, &mut used, &mut out);
    out
}

/// Square-level action: cell `(r, c, e)` maps to `(sr[r], sc[c], se[e])`.
pub fn apply_isotopism_to_square(
    sq: &[Vec<u8>],
    sr: &[u8],
    sc: &[u8],
    se: &[u8],
) -> Vec<Vec<u8>> {
    let n = sq.len();
    let mut out = vec![vec![0u8; n]; n];
    for r in 0..n {
        for c in 0..n {
            out[sr[r] as usize][sc[c] as usize] = se[sq[r][c] as usize];
        }
    }
    out
}

/// `(r, c, e) in L` iff `(r, c+1, e+1) in L`.
pub fn is_cyclic_square(sq: &[Vec<u8>]) -> bool {
    let n = sq.len();
    for row in sq {
        for c in 0..n {
            if row[(c + 1) % n] as usize != (row[c] as usize + 1) % n {
                return false;
            }
        }
    }
    true
}

/// Superimpose two full squares and tally ordered symbol pairs: `(l, l)` must
/// never occur, `(l, l + n/2)` exactly twice, and every other pair once.
pub fn squares_nearly_orthogonal(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let n = a.len();
    let half = n / 2;
    let mut tally = vec![0u32; n * n];
    for r in 0..n {
        for c in 0..n {
            tally[a[r][c] as usize * n + b[r][c] as usize] += 1;
        }
    }
    for l in 0..n {
        for m in 0..n {
            let expected = if l == m {
                0
            } else if m == (l + half) % n {
                2
            } else {
                1
            };
            if tally[l * n + m] != expected {
                return false;
            }
        }
    }
    true
}

/// Definition-literal near-orthogonality of the squares generated by two
/// columns.
pub fn oracle_nearly_orthogonal(a: &CyclicColumn, b: &CyclicColumn) -> Result<bool> {
    let n = a.order().n();
    if n != b.order().n() {
        return Err(Error::OrderMismatch(n, b.order().n()));
    }
    Ok(squares_nearly_orthogonal(&a.expand(), &b.expand()))
}

fn check_enumeration_scale(n: usize, mu: usize) -> Result<()> {
    let ok = matches!(n, 2 | 4 | 6) || (n == 8 && mu <= 2);
    if ok {
        Ok(())
    } else {
        Err(Error::ScaleRefused {
            n,
            supported: "n in {2, 4, 6} (any mu) or n = 8 with mu <= 2",
        })
    }
}

/// Every list-reduced list `(I, C_2, .., C_mu)`, by brute force over all
/// permutation columns per slot.
pub fn oracle_enumerate(order: Order, mu: usize) -> Result<Vec<MnolsList>> {
    let n = order.n();
    check_enumeration_scale(n, mu)?;
    let perms = all_permutations(n);
    let identity = CyclicColumn::identity(order);
    let mut out = Vec::new();
    let mut stack: Vec<CyclicColumn> = vec![identity];
    fn rec(
        perms: &[Vec<u8>],
        mu: usize,
        stack: &mut Vec<CyclicColumn>,
        out: &mut Vec<MnolsList>,
    ) {
        if stack.len() == mu {
            out.push(MnolsList::from_columns_unchecked(stack.clone()));
            return;
        }
        for p in perms {
            let cand = CyclicColumn::new(p.clone()).expect("permutations are valid columns");
            let ok = stack
                .iter()
                .all(|c| oracle_nearly_orthogonal(c, &cand).unwrap());
            if ok {
                stack.push(cand);
                rec(perms, mu, stack, out);
                stack.pop();
            }
        }
    }
    rec(&perms, mu, &mut stack, &mut out);
    Ok(out)
}

/// The list-reduced members of the full group orbit of `l`, materialized by
/// applying every `(x, j, sigma_R, pi)` at square level and keeping the
/// results whose first square is the identity square.
pub fn oracle_orbit(l: &MnolsList) -> Result<Vec<MnolsList>> {
    let order = l.order();
    let n = order.n();
    if n > 6 {
        return Err(Error::ScaleRefused {
            n,
            supported: "n in {2, 4, 6}",
        });
    }
    let mu = l.mu();
    let row_perms = all_permutations(n);
    let pis = all_permutations(mu);
    let squares: Vec<Vec<Vec<u8>>> = l.columns().iter().map(|c| c.expand()).collect();
    let mut seen = std::collections::BTreeSet::new();

    for x in order.units() {
        for j in 0..n {
            // sigma_C = m_x, sigma_E = m_x followed by a shift of j.
            let sc: Vec<u8> = (0..n).map(|v| ((x * v) % n) as u8).collect();
            let se: Vec<u8> = (0..n).map(|v| ((x * v + j) % n) as u8).collect();
            for sr in &row_perms {
                let moved: Vec<Vec<Vec<u8>>> = squares
                    .iter()
                    .map(|sq| apply_isotopism_to_square(sq, sr, &sc, &se))
                    .collect();
                for pi in &pis {
                    let arranged: Vec<&Vec<Vec<u8>>> =
                        pi.iter().map(|&k| &moved[k as usize]).collect();
                    let first_is_identity = (0..n).all(|r| arranged[0][r][0] as usize == r);
                    if !first_is_identity {
                        continue;
                    }
                    let cols: Vec<CyclicColumn> = arranged
                        .iter()
                        .map(|sq| {
                            let entries = sq.iter().map(|row| row[0]).collect();
                            CyclicColumn::new(entries).expect("orbit member column")
                        })
                        .collect();
                    seen.insert(MnolsList::from_columns_unchecked(cols));
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}
