//! The three enumeration algorithms over generating columns.
//!
//! Algorithm A walks every list-reduced list depth first and tallies the four
//! canonicity predicates independently. Algorithms B and C extend only
//! set-canonical prefixes, which is exhaustive because removing the last
//! square of a canonical list leaves a canonical list; B is a plain depth
//! first search while C precomputes the usable columns once and searches
//! cliques of a compatibility graph.

use crate::canonical::{
    classify_type, is_list_canonical, is_set_canonical, is_set_reduced, stabilizer_counts,
    MnolsType, StabilizerCounts,
};
use crate::column::{nearly_orthogonal_entries, CyclicColumn, Order};
use crate::error::{Error, Result};
use crate::list::MnolsList;
use serde::{Deserialize, Serialize};

/// Counts of generated lists at one depth, one per equivalence predicate.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadCount {
    pub list_reduced: u64,
    pub set_reduced: u64,
    pub list_canonical: u64,
    pub set_canonical: u64,
}

impl QuadCount {
    pub fn add(&mut self, other: &QuadCount) {
        self.list_reduced += other.list_reduced;
        self.set_reduced += other.set_reduced;
        self.list_canonical += other.list_canonical;
        self.set_canonical += other.set_canonical;
    }
}

/// One set-isotopy class: its canonical representative, stabilizer sizes, and
/// type.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ClassRecordWire", into = "ClassRecordWire")]
pub struct ClassRecord {
    pub columns: MnolsList,
    pub stab: StabilizerCounts,
    pub mnols_type: MnolsType,
}

#[derive(Serialize, Deserialize)]
struct ClassRecordWire {
    columns: Vec<Vec<u8>>,
    is_s: u64,
    is_l: u64,
    red_s: u64,
    #[serde(rename = "type")]
    ty: u8,
}

impl From<ClassRecord> for ClassRecordWire {
    fn from(r: ClassRecord) -> Self {
        ClassRecordWire {
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
        }
    }
}

impl TryFrom<ClassRecordWire> for ClassRecord {
    type Error = Error;

    fn try_from(w: ClassRecordWire) -> Result<Self> {
        let cols = w
            .columns
            .into_iter()
            .map(CyclicColumn::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassRecord {
            columns: MnolsList::new(cols)?,
            stab: StabilizerCounts {
                is_s: w.is_s,
                is_l: w.is_l,
                red_s: w.red_s,
            },
            mnols_type: MnolsType::from_u8(w.ty)?,
        })
    }
}

/// One record per set-isotopy class, kept sorted by canonical columns.
/// Serializes as the bare array of class records.
#[derive(Clone, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassStore {
    records: Vec<ClassRecord>,
}

impl ClassStore {
    pub fn new() -> Self {
        ClassStore::default()
    }

    pub fn push(&mut self, record: ClassRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[ClassRecord] {
        &self.records
    }

    pub fn merge(&mut self, other: ClassStore) {
        self.records.extend(other.records);
    }

    /// Sort by canonical columns and verify each class appears once.
    pub fn finalize(&mut self) -> Result<()> {
        self.records.sort_unstable_by(|a, b| a.columns.cmp(&b.columns));
        for w in self.records.windows(2) {
            if w[0].columns == w[1].columns {
                return Err(Error::CorruptStabilizer(format!(
                    "class {} recorded twice",
                    w[0].columns
                )));
            }
        }
        Ok(())
    }

    /// Multiset of stabilizer triples, sorted.
    pub fn stabilizer_triples(&self) -> Vec<(u64, u64, u64)> {
        let mut v: Vec<_> = self
            .records
            .iter()
            .map(|r| (r.stab.is_s, r.stab.is_l, r.stab.red_s))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Columns usable by Algorithm C: `list1` holds every column forming a
/// set-canonical pair with the identity, `list2` every column forming a
/// list-reduced pair whose first entry is not 1.
#[derive(Clone, Debug)]
pub struct CandidateLists {
    pub list1: Vec<CyclicColumn>,
    pub list2: Vec<CyclicColumn>,
}

/// The graph Algorithm C searches: vertices are columns compatible with a
/// fixed canonical second column, edges join columns generating a nearly
/// orthogonal pair.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    vertices: Vec<CyclicColumn>,
    adjacency: Vec<Vec<bool>>,
}

impl CompatibilityGraph {
    /// Build on the given vertices; the vertex order is preserved.
    pub fn new(vertices: Vec<CyclicColumn>) -> Self {
        let m = vertices.len();
        let mut adjacency = vec![vec![false; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                if nearly_orthogonal_entries(vertices[i].entries(), vertices[j].entries()) {
                    adjacency[i][j] = true;
                    adjacency[j][i] = true;
                }
            }
        }
        CompatibilityGraph {
            vertices,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[CyclicColumn] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        let mut e = 0;
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.adjacency[i][j] {
                    e += 1;
                }
            }
        }
        e
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    /// Largest clique size, by ordered extension. The graphs arising here are
    /// tiny and in practice triangle-free.
    pub fn max_clique_size(&self) -> usize {
        fn extend(g: &CompatibilityGraph, clique: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(clique.len());
            for v in from..g.vertex_count() {
                if clique.iter().all(|&u| g.adjacent(u, v)) {
                    clique.push(v);
                    extend(g, clique, v + 1, best);
                    clique.pop();
                }
            }
        }
        let mut best = 0;
        extend(self, &mut Vec::new(), 0, &mut best);
        best
    }
}

/// Streams, in ascending lexicographic order, every permutation column that is
/// nearly orthogonal to every prefix column. Entry-by-entry backtracking keeps
/// one difference tally per prefix column; a column survives to full length
/// iff its profile caps (`d = 0` never, `d = n/2` at most twice, others at
/// most once) are respected, which then forces the exact profile.
pub struct CandidateColumns {
    n: usize,
    half: usize,
    prefix: Vec<Vec<u8>>,
    /// Strict lower bound on emitted columns, if any.
    bound: Option<Vec<u8>>,
    used: Vec<bool>,
    /// counts[p * n + d]: multiplicity of difference d against prefix column p.
    counts: Vec<u8>,
    col: Vec<u8>,
    /// col[..depth] is committed; cursor[depth] is the next symbol to try.
    depth: usize,
    cursor: Vec<usize>,
    /// tight[r]: col[..r] equals bound[..r].
    tight: Vec<bool>,
    done: bool,
}

impl CandidateColumns {
    fn new(prefix: &[CyclicColumn], bound: Option<&CyclicColumn>) -> Self {
        assert!(!prefix.is_empty(), "prefix must contain at least one column");
        let n = prefix[0].order().n();
        let mut tight = vec![false; n + 1];
        tight[0] = bound.is_some();
        CandidateColumns {
            n,
            half: n / 2,
            prefix: prefix.iter().map(|c| c.entries().to_vec()).collect(),
            bound: bound.map(|c| c.entries().to_vec()),
            used: vec![false; n],
            counts: vec![0u8; prefix.len() * n],
            col: vec![0u8; n],
            depth: 0,
            cursor: vec![0; n + 1],
            tight,
            done: false,
        }
    }

    #[inline]
    fn feasible(&self, row: usize, s: usize) -> bool {
        if self.used[s] {
            return false;
        }
        for (p, pre) in self.prefix.iter().enumerate() {
            let d = (s + self.n - pre[row] as usize) % self.n;
            if d == 0 {
                return false;
            }
            let cap = if d == self.half { 2 } else { 1 };
            if self.counts[p * self.n + d] == cap {
                return false;
            }
        }
        true
    }

    fn place(&mut self, row: usize, s: usize) {
        self.used[s] = true;
        self.col[row] = s as u8;
        for p in 0..self.prefix.len() {
            let d = (s + self.n - self.prefix[p][row] as usize) % self.n;
            self.counts[p * self.n + d] += 1;
        }
    }

    fn unplace(&mut self, row: usize) {
        let s = self.col[row] as usize;
        self.used[s] = false;
        for p in 0..self.prefix.len() {
            let d = (s + self.n - self.prefix[p][row] as usize) % self.n;
            self.counts[p * self.n + d] -= 1;
        }
    }
}

impl Iterator for CandidateColumns {
    type Item = CyclicColumn;

    fn next(&mut self) -> Option<CyclicColumn> {
        if self.done {
            return None;
        }
        loop {
            if self.depth == self.n {
                // Completed a column; emit unless it equals the bound.
                let emit = !self.tight[self.depth];
                self.depth -= 1;
                self.unplace(self.depth);
                if emit {
                    return Some(CyclicColumn::from_vec_unchecked(self.col.clone()));
                }
                continue;
            }
            let row = self.depth;
            let lo = if self.tight[row] {
                self.bound.as_ref().expect("tight implies bound")[row] as usize
            } else {
                0
            };
            let mut s = self.cursor[row].max(lo);
            while s < self.n && !self.feasible(row, s) {
                s += 1;
            }
            if s >= self.n {
                // Exhausted this row; backtrack.
                self.cursor[row] = 0;
                if row == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                self.unplace(self.depth);
                continue;
            }
            self.place(row, s);
            self.cursor[row] = s + 1;
            self.tight[row + 1] = self.tight[row]
                && s == self.bound.as_ref().map_or(usize::MAX, |b| b[row] as usize);
            self.depth += 1;
            self.cursor[self.depth] = 0;
        }
    }
}

/// All columns extending `prefix`, ascending.
pub fn candidate_columns(prefix: &[CyclicColumn]) -> CandidateColumns {
    CandidateColumns::new(prefix, None)
}

/// All columns extending `prefix` that are strictly greater than `bound`.
pub fn candidate_columns_above(
    prefix: &[CyclicColumn],
    bound: &CyclicColumn,
) -> CandidateColumns {
    CandidateColumns::new(prefix, Some(bound))
}

pub(crate) fn class_record(cols: &[CyclicColumn]) -> ClassRecord {
    let list = MnolsList::from_columns_unchecked(cols.to_vec());
    let stab = stabilizer_counts(&list);
    let ty = classify_type(&list);
    ClassRecord {
        columns: list,
        stab,
        mnols_type: ty,
    }
}

/// Depth-first tally over every list-reduced extension of `(I, c2)`. Results
/// are indexed by depth: entry `d` covers lists of `d + 2` squares.
pub(crate) fn branch_a(order: Order, mu: usize, c2: &CyclicColumn) -> Vec<QuadCount> {
    let mut quads = vec![QuadCount::default(); mu - 1];
    let mut cols = vec![CyclicColumn::identity(order), c2.clone()];
    fn dfs(cols: &mut Vec<CyclicColumn>, mu: usize, quads: &mut [QuadCount]) {
        let list = MnolsList::from_columns_unchecked(cols.clone());
        let q = &mut quads[cols.len() - 2];
        q.list_reduced += 1;
        if is_set_reduced(&list) {
            q.set_reduced += 1;
        }
        if is_list_canonical(&list) {
            q.list_canonical += 1;
        }
        if is_set_canonical(&list) {
            q.set_canonical += 1;
        }
        if cols.len() < mu {
            let next: Vec<CyclicColumn> = candidate_columns(cols).collect();
            for p in next {
                cols.push(p);
                dfs(cols, mu, quads);
                cols.pop();
            }
        }
    }
    dfs(&mut cols, mu, &mut quads);
    quads
}

/// Depth-first search below `(I, c2)` extending only set-canonical prefixes.
pub(crate) fn branch_b(order: Order, mu: usize, c2: &CyclicColumn) -> Vec<ClassStore> {
    let mut stores: Vec<ClassStore> = vec![ClassStore::new(); mu - 1];
    let mut cols = vec![CyclicColumn::identity(order), c2.clone()];
    fn dfs(cols: &mut Vec<CyclicColumn>, mu: usize, stores: &mut [ClassStore]) {
        let list = MnolsList::from_columns_unchecked(cols.clone());
        if !is_set_canonical(&list) {
            return;
        }
        stores[cols.len() - 2].push(class_record(cols));
        if cols.len() < mu {
            let last = cols.last().expect("nonempty").clone();
            let next: Vec<CyclicColumn> = candidate_columns_above(cols, &last).collect();
            for p in next {
                cols.push(p);
                dfs(cols, mu, stores);
                cols.pop();
            }
        }
    }
    dfs(&mut cols, mu, &mut stores);
    stores
}

/// The inputs of Algorithm C, from one sweep over all columns extending `(I)`.
pub fn build_lists_c(order: Order) -> CandidateLists {
    let identity = CyclicColumn::identity(order);
    let mut list1 = Vec::new();
    let mut list2 = Vec::new();
    for c in candidate_columns(std::slice::from_ref(&identity)) {
        let pair = MnolsList::from_columns_unchecked(vec![identity.clone(), c.clone()]);
        if is_set_canonical(&pair) {
            list1.push(c);
        } else if c.get(0) != 1 {
            list2.push(c);
        }
        // Columns with first entry 1 that are not canonical are discarded:
        // in a canonical list only the second column starts with 1.
    }
    CandidateLists { list1, list2 }
}

/// Clique search below one canonical second column `a`.
pub(crate) fn branch_c(
    order: Order,
    mu: usize,
    a: &CyclicColumn,
    list2: &[CyclicColumn],
) -> Vec<ClassStore> {
    let mut stores: Vec<ClassStore> = vec![ClassStore::new(); mu - 1];
    let identity = CyclicColumn::identity(order);
    let base = vec![identity, a.clone()];
    stores[0].push(class_record(&base));
    if mu == 2 {
        return stores;
    }

    let list3: Vec<CyclicColumn> = list2
        .iter()
        .filter(|b| nearly_orthogonal_entries(a.entries(), b.entries()))
        .cloned()
        .collect();
    let graph = CompatibilityGraph::new(list3);

    fn extend(
        graph: &CompatibilityGraph,
        cols: &mut Vec<CyclicColumn>,
        from: usize,
        clique: &mut Vec<usize>,
        mu: usize,
        stores: &mut [ClassStore],
    ) {
        for v in from..graph.vertex_count() {
            if !clique.iter().all(|&u| graph.adjacent(u, v)) {
                continue;
            }
            cols.push(graph.vertices()[v].clone());
            let list = MnolsList::from_columns_unchecked(cols.clone());
            if is_set_canonical(&list) {
                stores[cols.len() - 2].push(class_record(cols));
                if cols.len() < mu {
                    clique.push(v);
                    extend(graph, cols, v + 1, clique, mu, stores);
                    clique.pop();
                }
            }
            cols.pop();
        }
    }
    let mut cols = base;
    extend(&graph, &mut cols, 0, &mut Vec::new(), mu, &mut stores);
    stores
}

fn validated(n: usize, mu: usize) -> Result<Order> {
    if mu < 2 {
        return Err(Error::Parse(format!("mu must be at least 2, got {mu}")));
    }
    Order::new(n)
}

/// Exact counts of list-reduced, set-reduced, list-canonical, and
/// set-canonical lists at every depth `2..=mu`, by exhaustive generation.
pub fn algorithm_a(n: usize, mu: usize) -> Result<Vec<QuadCount>> {
    let order = validated(n, mu)?;
    let identity = CyclicColumn::identity(order);
    let mut quads = vec![QuadCount::default(); mu - 1];
    for c2 in candidate_columns(std::slice::from_ref(&identity)) {
        for (acc, q) in quads.iter_mut().zip(branch_a(order, mu, &c2)) {
            acc.add(&q);
        }
    }
    Ok(quads)
}

/// One record per set-isotopy class at every depth `2..=mu`.
pub fn algorithm_b(n: usize, mu: usize) -> Result<Vec<ClassStore>> {
    let order = validated(n, mu)?;
    let identity = CyclicColumn::identity(order);
    let mut stores: Vec<ClassStore> = vec![ClassStore::new(); mu - 1];
    for c2 in candidate_columns(std::slice::from_ref(&identity)) {
        for (acc, s) in stores.iter_mut().zip(branch_b(order, mu, &c2)) {
            acc.merge(s);
        }
    }
    for s in &mut stores {
        s.finalize()?;
    }
    Ok(stores)
}

/// Same stores as Algorithm B, via the precomputed-lists clique search.
pub fn algorithm_c_depths(n: usize, mu: usize) -> Result<Vec<ClassStore>> {
    let order = validated(n, mu)?;
    let lists = build_lists_c(order);
    let mut stores: Vec<ClassStore> = vec![ClassStore::new(); mu - 1];
    for a in &lists.list1 {
        for (acc, s) in stores.iter_mut().zip(branch_c(order, mu, a, &lists.list2)) {
            acc.merge(s);
        }
    }
    for s in &mut stores {
        s.finalize()?;
    }
    Ok(stores)
}

/// The classes at depth exactly `mu`.
pub fn algorithm_c(n: usize, mu: usize) -> Result<ClassStore> {
    Ok(algorithm_c_depths(n, mu)?.pop().expect("mu >= 2"))
}
