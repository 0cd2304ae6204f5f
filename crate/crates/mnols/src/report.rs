//! Result documents: one JSON object per `(n, mu)` with the six totals, the
//! class distribution over `(is_s, is_l, red_s, type)`, and the class catalog
//! sorted by columns. Large totals are serialized as decimal strings.

use crate::column::Order;
use crate::counting::CountTable;
use crate::enumerate::ClassStore;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TablesJson {
    pub set_isotopy: u64,
    pub set_reduced: u64,
    pub list_isotopy: u64,
    pub list_reduced: u64,
    /// Decimal string; exceeds 64 bits from n = 16 on.
    pub set_classes: String,
    pub list_classes: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DistributionRow {
    pub is_s: u64,
    pub is_l: u64,
    pub red_s: u64,
    #[serde(rename = "type")]
    pub ty: u8,
    pub count: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassRow {
    pub columns: Vec<Vec<u8>>,
    pub is_s: u64,
    pub is_l: u64,
    pub red_s: u64,
    #[serde(rename = "type")]
    pub ty: u8,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Document {
    pub n: usize,
    pub mu: usize,
    pub algorithm: String,
    pub tables: TablesJson,
    pub distribution: Vec<DistributionRow>,
    pub classes: Vec<ClassRow>,
}

impl Document {
    /// Assemble from an aggregated table and, when available, its store.
    pub fn new(table: &CountTable, store: Option<&ClassStore>, algorithm: &str) -> Self {
        let distribution = table
            .distribution
            .iter()
            .map(|(&(is_s, is_l, red_s, ty), &count)| DistributionRow {
                is_s,
                is_l,
                red_s,
                ty,
                count,
            })
            .collect();
        let classes = store
            .map(|s| {
                s.records()
                    .iter()
                    .map(|r| ClassRow {
                        columns: r
                            .columns
                            .columns()
                            .iter()
                            .map(|c| c.entries().to_vec())
                            .collect(),
                        is_s: r.stab.is_s,
                        is_l: r.stab.is_l,
                        red_s: r.stab.red_s,
                        ty: r.mnols_type.as_u8(),
                    })
                    .collect()
            })
            .unwrap_or_default();
        Document {
            n: table.n,
            mu: table.mu,
            algorithm: algorithm.to_string(),
            tables: TablesJson {
                set_isotopy: table.set_isotopy,
                set_reduced: table.set_reduced,
                list_isotopy: table.list_isotopy,
                list_reduced: table.list_reduced,
                set_classes: table.set_classes.to_string(),
                list_classes: table.list_classes.to_string(),
            },
            distribution,
            classes,
        }
    }

    pub fn set_classes_big(&self) -> Result<BigUint> {
        self.tables
            .set_classes
            .parse()
            .map_err(|e| Error::Parse(format!("setClasses: {e}")))
    }

    pub fn list_classes_big(&self) -> Result<BigUint> {
        self.tables
            .list_classes
            .parse()
            .map_err(|e| Error::Parse(format!("listClasses: {e}")))
    }
}

/// Serialize a run (one document per depth) as a JSON array.
pub fn to_json(docs: &[Document]) -> Result<String> {
    Ok(serde_json::to_string_pretty(docs)?)
}

/// Accepts either a single document object or an array of documents.
pub fn from_json(text: &str) -> Result<Vec<Document>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

/// One block per depth, one row per equivalence, one value column per order,
/// so a result reads like the reference tables.
pub fn to_csv(docs: &[Document]) -> String {
    let mut out = String::new();
    let mut mus: Vec<usize> = docs.iter().map(|d| d.mu).collect();
    mus.sort_unstable();
    mus.dedup();
    for (block, mu) in mus.iter().enumerate() {
        if block > 0 {
            out.push('\n');
        }
        let group: Vec<&Document> = docs.iter().filter(|d| d.mu == *mu).collect();
        out.push_str(&format!("mu={mu}\n"));
        out.push_str("equivalence");
        for d in &group {
            out.push_str(&format!(",n={}", d.n));
        }
        out.push('\n');
        type Cell = fn(&Document) -> String;
        let rows: [(&str, Cell); 6] = [
            ("set-isotopy", |d| d.tables.set_isotopy.to_string()),
            ("set-reduced", |d| d.tables.set_reduced.to_string()),
            ("list-isotopy", |d| d.tables.list_isotopy.to_string()),
            ("list-reduced", |d| d.tables.list_reduced.to_string()),
            ("set-classes", |d| d.tables.set_classes.clone()),
            ("list-classes", |d| d.tables.list_classes.clone()),
        ];
        for (name, get) in rows {
            out.push_str(name);
            for d in &group {
                out.push(',');
                out.push_str(&get(d));
            }
            out.push('\n');
        }
    }
    out
}

/// Recompute the two derived totals of a document from its list-reduced count
/// and check them against the serialized strings.
pub fn check_document_identities(doc: &Document) -> Result<()> {
    Order::new(doc.n)?;
    let n_fact = crate::counting::factorial_big(doc.n);
    let mu_fact = crate::counting::factorial_big(doc.mu);
    let lr = BigUint::from(doc.tables.list_reduced);
    let sets = &lr * &n_fact / &mu_fact;
    let lists = &lr * &n_fact;
    if doc.set_classes_big()? != sets || doc.list_classes_big()? != lists {
        return Err(Error::Parse(format!(
            "derived totals of n={} mu={} do not match listReduced",
            doc.n, doc.mu
        )));
    }
    Ok(())
}
