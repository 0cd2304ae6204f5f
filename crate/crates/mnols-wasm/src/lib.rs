//! Browser bindings for the interactive demo page. Each exported function
//! takes plain text, returns a JSON string, and never throws: failures come
//! back as `{"error": "..."}` for the page to display.

use mnols::canonical::{
    canonical_form, classify_type, find_row_intercalates, is_list_reduced, is_set_canonical,
    stabilizer_counts,
};
use mnols::counting::aggregate;
use mnols::enumerate::algorithm_b;
use mnols::oracle::squares_nearly_orthogonal;
use mnols::report::Document;
use mnols::{nearly_orthogonal, CyclicColumn, MnolsList, Order};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Orders above this take too long in a single browser frame.
const MAX_DEMO_ORDER: usize = 12;

fn err_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

fn ok_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| err_json(&e.to_string()))
}

#[derive(Serialize)]
struct PairView {
    n: usize,
    #[serde(rename = "nearlyOrthogonal")]
    nearly_orthogonal: bool,
    #[serde(rename = "squareA")]
    square_a: Vec<Vec<u8>>,
    #[serde(rename = "squareB")]
    square_b: Vec<Vec<u8>>,
    /// pairCounts[l][m]: how often the ordered symbol pair (l, m) occurs in
    /// the superimposition.
    #[serde(rename = "pairCounts")]
    pair_counts: Vec<Vec<u32>>,
    /// Multiplicity of each row-wise difference d = b - a.
    differences: Vec<u32>,
}

/// Superimpose the cyclic squares generated by two columns.
#[wasm_bindgen]
pub fn pair_view(col_a: &str, col_b: &str) -> String {
    let a: CyclicColumn = match col_a.parse() {
        Ok(c) => c,
        Err(e) => return err_json(&format!("first column: {e}")),
    };
    let b: CyclicColumn = match col_b.parse() {
        Ok(c) => c,
        Err(e) => return err_json(&format!("second column: {e}")),
    };
    let n = a.order().n();
    if b.order().n() != n {
        return err_json(&format!("orders differ: {} vs {}", n, b.order().n()));
    }
    let sq_a = a.expand();
    let sq_b = b.expand();
    let mut pair_counts = vec![vec![0u32; n]; n];
    for r in 0..n {
        for c in 0..n {
            pair_counts[sq_a[r][c] as usize][sq_b[r][c] as usize] += 1;
        }
    }
    let differences = mnols::difference_multiset(&a, &b)
        .expect("orders equal")
        .counts()
        .to_vec();
    debug_assert_eq!(
        squares_nearly_orthogonal(&sq_a, &sq_b),
        nearly_orthogonal(&a, &b).expect("orders equal")
    );
    ok_json(&PairView {
        n,
        nearly_orthogonal: nearly_orthogonal(&a, &b).expect("orders equal"),
        square_a: sq_a,
        square_b: sq_b,
        pair_counts,
        differences,
    })
}

#[derive(Serialize)]
struct IntercalateView {
    #[serde(rename = "squareA")]
    square_a: usize,
    #[serde(rename = "squareB")]
    square_b: usize,
    row: usize,
    #[serde(rename = "rowPrime")]
    row_prime: usize,
    difference: usize,
    #[serde(rename = "symbolDelta")]
    symbol_delta: usize,
}

#[derive(Serialize)]
struct ClassifyView {
    n: usize,
    mu: usize,
    valid: bool,
    /// Pairs (1-based) that break near-orthogonality, empty when valid.
    violations: Vec<(usize, usize)>,
    squares: Vec<Vec<Vec<u8>>>,
    #[serde(rename = "listReduced")]
    list_reduced: Option<bool>,
    #[serde(rename = "setCanonical")]
    set_canonical: Option<bool>,
    #[serde(rename = "canonicalForm")]
    canonical_form: Option<String>,
    #[serde(rename = "canonicalSquares")]
    canonical_squares: Vec<Vec<Vec<u8>>>,
    #[serde(rename = "isS")]
    is_s: Option<u64>,
    #[serde(rename = "isL")]
    is_l: Option<u64>,
    #[serde(rename = "redS")]
    red_s: Option<u64>,
    #[serde(rename = "type")]
    ty: Option<u8>,
    intercalates: Vec<IntercalateView>,
}

/// Validate a ';'-separated list of columns and classify it.
#[wasm_bindgen]
pub fn classify_list(text: &str) -> String {
    let columns: Vec<CyclicColumn> = match text
        .split(';')
        .map(|t| t.trim().parse::<CyclicColumn>())
        .collect::<Result<_, _>>()
    {
        Ok(c) => c,
        Err(e) => return err_json(&e.to_string()),
    };
    if columns.is_empty() {
        return err_json("empty list");
    }
    let n = columns[0].order().n();
    if columns.iter().any(|c| c.order().n() != n) {
        return err_json("columns have differing orders");
    }
    let squares: Vec<Vec<Vec<u8>>> = columns.iter().map(|c| c.expand()).collect();
    let mut violations = Vec::new();
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            if !nearly_orthogonal(&columns[i], &columns[j]).expect("orders equal") {
                violations.push((i + 1, j + 1));
            }
        }
    }
    if !violations.is_empty() {
        return ok_json(&ClassifyView {
            n,
            mu: columns.len(),
            valid: false,
            violations,
            squares,
            list_reduced: None,
            set_canonical: None,
            canonical_form: None,
            canonical_squares: Vec::new(),
            is_s: None,
            is_l: None,
            red_s: None,
            ty: None,
            intercalates: Vec::new(),
        });
    }
    let list = MnolsList::new(columns).expect("violations just checked");
    let canon = canonical_form(&list);
    let sc = stabilizer_counts(&canon);
    let reduced = is_list_reduced(&list);
    let intercalates = find_row_intercalates(&list)
        .into_iter()
        .map(|ic| IntercalateView {
            square_a: ic.square_a,
            square_b: ic.square_b,
            row: ic.row,
            row_prime: ic.row_prime,
            difference: ic.difference,
            symbol_delta: ic.symbol_delta,
        })
        .collect();
    ok_json(&ClassifyView {
        n,
        mu: list.mu(),
        valid: true,
        violations: Vec::new(),
        squares,
        list_reduced: Some(reduced),
        set_canonical: Some(reduced && is_set_canonical(&list)),
        canonical_form: Some(canon.to_string()),
        canonical_squares: canon.columns().iter().map(|c| c.expand()).collect(),
        is_s: Some(sc.is_s),
        is_l: Some(sc.is_l),
        red_s: Some(sc.red_s),
        ty: Some(classify_type(&canon).as_u8()),
        intercalates,
    })
}

/// Enumerate set-isotopy classes for all depths 2..=mu and return the result
/// documents. Limited to small orders so the page stays responsive.
#[wasm_bindgen]
pub fn enumerate_counts(n: usize, mu: usize) -> String {
    if n > MAX_DEMO_ORDER {
        return err_json(&format!("demo enumeration is limited to n <= {MAX_DEMO_ORDER}"));
    }
    if !(2..=5).contains(&mu) {
        return err_json("mu must lie in 2..=5");
    }
    let order = match Order::new(n) {
        Ok(o) => o,
        Err(e) => return err_json(&e.to_string()),
    };
    let stores = match algorithm_b(n, mu) {
        Ok(s) => s,
        Err(e) => return err_json(&e.to_string()),
    };
    let docs: Vec<Document> = match stores
        .iter()
        .enumerate()
        .map(|(idx, s)| aggregate(s, order, idx + 2).map(|t| Document::new(&t, Some(s), "b")))
        .collect()
    {
        Ok(d) => d,
        Err(e) => return err_json(&e.to_string()),
    };
    ok_json(&docs)
}
