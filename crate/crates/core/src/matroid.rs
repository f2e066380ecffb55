use std::sync::OnceLock;

use itertools::Itertools;

use crate::cuts::{SignedVector, VectorKind};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Directed multigraph. Vertices are 0-based; edges keep their input
/// order, which fixes the column order of every derived matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        for &(t, h) in &edges {
            if t >= vertex_count || h >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    t + 1,
                    h + 1,
                    vertex_count
                )));
            }
        }
        Ok(Graph { vertex_count, edges })
    }

    /// Rejects self-loops and parallel edges (either direction).
    pub fn simple(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(t, h) in &edges {
            if t == h {
                return Err(Error::InvalidArgument(format!(
                    "self-loop at vertex {}",
                    t + 1
                )));
            }
            if !seen.insert((t.min(h), t.max(h))) {
                return Err(Error::InvalidArgument(format!(
                    "parallel edge ({}, {})",
                    t + 1,
                    h + 1
                )));
            }
        }
        Graph::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex-edge incidence matrix: +1 at the head of an edge, -1 at
    /// the tail, zero column for a self-loop.
    pub fn incidence_matrix(&self) -> Result<IntMatrix> {
        if self.edges.is_empty() {
            return Err(Error::ZeroRank);
        }
        let mut entries = vec![0i64; self.vertex_count * self.edges.len()];
        let cols = self.edges.len();
        for (j, &(tail, head)) in self.edges.iter().enumerate() {
            if tail != head {
                entries[head * cols + j] = 1;
                entries[tail * cols + j] = -1;
            }
        }
        IntMatrix::new(self.vertex_count, cols, entries)
    }

    /// Edge indices of the BFS spanning forest: components are rooted at
    /// their smallest vertex, and each vertex scans its incident edges
    /// in input order, so the forest is canonical for a given edge list.
    pub fn spanning_forest(&self) -> Vec<usize> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (j, &(t, h)) in self.edges.iter().enumerate() {
            incident[t].push(j);
            if h != t {
                incident[h].push(j);
            }
        }
        let mut visited = vec![false; self.vertex_count];
        let mut tree = Vec::new();
        for root in 0..self.vertex_count {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &j in &incident[v] {
                    let (t, h) = self.edges[j];
                    let w = if t == v { h } else { t };
                    if !visited[w] {
                        visited[w] = true;
                        tree.push(j);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }

    pub fn is_connected(&self) -> bool {
        self.spanning_forest().len() == self.vertex_count - 1
    }
}

/// Full-row-rank weakly unimodular representation of a regular matroid.
/// Ground elements are the columns; `ground_labels` names them (1..n by
/// default, original edge numbers for graph-derived reps).
#[derive(Debug)]
pub struct RegularRep {
    matrix: IntMatrix,
    ground_labels: Vec<i64>,
    bases: OnceLock<Vec<Vec<usize>>>,
    circuits: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for RegularRep {
    fn clone(&self) -> Self {
        RegularRep {
            matrix: self.matrix.clone(),
            ground_labels: self.ground_labels.clone(),
            bases: self.bases.clone(),
            circuits: self.circuits.clone(),
        }
    }
}

impl PartialEq for RegularRep {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.ground_labels == other.ground_labels
    }
}
impl Eq for RegularRep {}

impl RegularRep {
    /// Validates full row rank and weak unimodularity; the error for a
    /// failed unimodularity check carries a witness submatrix.
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        let rank = matrix.rank()?;
        if rank < matrix.rows() {
            return Err(Error::RankDeficient { rank, expected: matrix.rows() });
        }
        if let Some((rows, cols, det)) = matrix.wu_witness()? {
            return Err(Error::NotUnimodular {
                rows: rows.iter().map(|&i| i + 1).collect(),
                cols: cols.iter().map(|&j| j + 1).collect(),
                det,
            });
        }
        let labels = (1..=matrix.cols() as i64).collect();
        Ok(RegularRep {
            matrix,
            ground_labels: labels,
            bases: OnceLock::new(),
            circuits: OnceLock::new(),
        })
    }

    pub fn with_labels(matrix: IntMatrix, ground_labels: Vec<i64>) -> Result<Self> {
        if ground_labels.len() != matrix.cols() {
            return Err(Error::InvalidArgument("label count must match columns".into()));
        }
        let mut rep = RegularRep::from_matrix(matrix)?;
        rep.ground_labels = ground_labels;
        Ok(rep)
    }

    /// Tree-path representation of the graphic matroid: each spanning
    /// forest edge becomes a standard basis vector, every other edge the
    /// signed tree path from its tail to its head. Columns are the forest
    /// edges in discovery order, then the remaining edges in input order;
    /// `ground_labels` keeps the original 1-based edge numbers.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let tree = g.spanning_forest();
        let r = tree.len();
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        let n = g.edges().len();

        // parent[v] = (parent vertex, tree column, +1 if the tree edge is
        // oriented child -> parent)
        let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; g.vertex_count()];
        let mut depth = vec![0usize; g.vertex_count()];
        let mut tree_col = vec![usize::MAX; n];
        for (i, &j) in tree.iter().enumerate() {
            tree_col[j] = i;
        }
        // The forest lists edges in BFS discovery order, so a parent is
        // always assigned before its children are reached.
        for &j in &tree {
            let (t, h) = g.edges()[j];
            let i = tree_col[j];
            let (new, old, up_sign) = if parent[t].is_none() && parent[h].is_some() {
                (t, h, 1)
            } else if parent[h].is_none() && parent[t].is_some() {
                (h, t, -1)
            } else if parent[t].is_none() && parent[h].is_none() {
                // First edge of a component; the root is the BFS root,
                // which is the endpoint reached first. Roots have no
                // parent entry, so pick the endpoint that stays rootless:
                // BFS discovered this edge from the root.
                let root = t.min(h);
                let (new, old) = if root == t { (h, t) } else { (t, h) };
                let up = if new == t { 1 } else { -1 };
                (new, old, up)
            } else {
                unreachable!("forest edge with both endpoints already placed");
            };
            parent[new] = Some((old, i, up_sign));
            depth[new] = depth[old] + 1;
        }

        let mut columns: Vec<Vec<i64>> = Vec::with_capacity(n);
        let mut labels: Vec<i64> = Vec::with_capacity(n);
        for (i, &j) in tree.iter().enumerate() {
            let mut col = vec![0i64; r];
            col[i] = 1;
            columns.push(col);
            labels.push(j as i64 + 1);
        }
        for (j, &(tail, head)) in g.edges().iter().enumerate() {
            if tree_col[j] != usize::MAX {
                continue;
            }
            let mut col = vec![0i64; r];
            if tail != head {
                // Signed tree path tail -> head: walk both endpoints up
                // to their common ancestor.
                let (mut a, mut b) = (tail, head);
                while depth[a] > depth[b] {
                    let (p, i, up) = parent[a].unwrap();
                    col[i] += up;
                    a = p;
                }
                while depth[b] > depth[a] {
                    let (p, i, up) = parent[b].unwrap();
                    col[i] -= up;
                    b = p;
                }
                while a != b {
                    let (pa, ia, ua) = parent[a].unwrap();
                    let (pb, ib, ub) = parent[b].unwrap();
                    col[ia] += ua;
                    col[ib] -= ub;
                    a = pa;
                    b = pb;
                }
            }
            columns.push(col);
            labels.push(j as i64 + 1);
        }

        let matrix = IntMatrix::from_rows(
            &(0..r)
                .map(|i| columns.iter().map(|c| c[i]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )?;
        RegularRep::with_labels(matrix, labels)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn size(&self) -> usize {
        self.matrix.cols()
    }

    pub fn ground_labels(&self) -> &[i64] {
        &self.ground_labels
    }

    /// All column subsets of size r with nonzero determinant, sorted.
    pub fn bases(&self) -> Result<&[Vec<usize>]> {
        if self.bases.get().is_none() {
            let r = self.rank();
            let mut out = Vec::new();
            for cols in (0..self.size()).combinations(r) {
                if self.matrix.columns(&cols).det()? != 0 {
                    out.push(cols);
                }
            }
            let _ = self.bases.set(out);
        }
        Ok(self.bases.get().unwrap())
    }

    /// Minimal dependent column sets, sorted. Enumeration goes by
    /// increasing cardinality, skipping supersets of found circuits, so
    /// a dependent survivor is automatically minimal.
    pub fn circuits(&self) -> Result<&[Vec<usize>]> {
        if self.circuits.get().is_none() {
            let n = self.size();
            let mut found: Vec<(u64, Vec<usize>)> = Vec::new();
            for k in 1..=(self.rank() + 1).min(n) {
                for cols in (0..n).combinations(k) {
                    let mask: u64 = cols.iter().fold(0, |m, &c| m | 1 << c);
                    if found.iter().any(|(fm, _)| fm & mask == *fm) {
                        continue;
                    }
                    if self.matrix.columns(&cols).rank()? < k {
                        found.push((mask, cols));
                    }
                }
            }
            let mut out: Vec<Vec<usize>> = found.into_iter().map(|(_, c)| c).collect();
            out.sort();
            let _ = self.circuits.set(out);
        }
        Ok(self.circuits.get().unwrap())
    }

    /// No zero columns and no pair of equal-up-to-sign columns.
    pub fn is_simple(&self) -> bool {
        let cols: Vec<Vec<i64>> = (0..self.size()).map(|j| self.matrix.col(j)).collect();
        for (j, c) in cols.iter().enumerate() {
            if c.iter().all(|&x| x == 0) {
                return false;
            }
            let neg: Vec<i64> = c.iter().map(|&x| -x).collect();
            if cols[..j].iter().any(|d| *d == *c || *d == neg) {
                return false;
            }
        }
        true
    }

    /// Drop zero columns and later duplicates-up-to-sign, keeping the
    /// earliest column of each parallel class (labels follow).
    pub fn simplify(&self) -> Result<RegularRep> {
        let mut kept: Vec<usize> = Vec::new();
        let mut kept_cols: Vec<Vec<i64>> = Vec::new();
        for j in 0..self.size() {
            let c = self.matrix.col(j);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let neg: Vec<i64> = c.iter().map(|&x| -x).collect();
            if kept_cols.iter().any(|d| *d == c || *d == neg) {
                continue;
            }
            kept.push(j);
            kept_cols.push(c);
        }
        let matrix = self.matrix.columns(&kept);
        let labels = kept.iter().map(|&j| self.ground_labels[j]).collect();
        RegularRep::with_labels(matrix, labels)
    }

    /// For [I_r | D], the dual representation [-D^T | I_{n-r}]. Cuts and
    /// flows trade places; ground labels carry over positionally.
    pub fn dual(&self) -> Result<RegularRep> {
        let (r, n) = (self.rank(), self.size());
        if r == n {
            return Err(Error::ZeroRank);
        }
        for i in 0..r {
            for j in 0..r {
                let want = if i == j { 1 } else { 0 };
                if self.matrix.get(i, j) != want {
                    return Err(Error::NotStandardForm);
                }
            }
        }
        let d_cols: Vec<usize> = (r..n).collect();
        let neg_dt = self.matrix.columns(&d_cols).transpose().neg();
        let dual_matrix = neg_dt.hcat(&IntMatrix::identity(n - r))?;
        RegularRep::with_labels(dual_matrix, self.ground_labels.clone())
    }

    /// Unique kernel vector supported in `basis + e` with +1 at `e`.
    pub fn fundamental_signed_circuit(&self, e: usize, basis: &[usize]) -> Result<SignedVector> {
        if basis.contains(&e) {
            return Err(Error::InvalidArgument(format!(
                "element {} lies in the basis",
                e + 1
            )));
        }
        if e >= self.size() {
            return Err(Error::InvalidArgument(format!("element {} out of range", e + 1)));
        }
        let n_block = self.matrix.columns(basis);
        let d = n_block.det()?;
        if d == 0 || basis.len() != self.rank() {
            return Err(Error::NotABasis {
                cols: basis.iter().map(|&c| c + 1).collect(),
            });
        }
        let rhs: Vec<i64> = self.matrix.col(e).iter().map(|&x| -x).collect();
        let coeffs = n_block.solve_square(&rhs)?;
        let mut entries = vec![0i64; self.size()];
        entries[e] = 1;
        for (i, &b) in basis.iter().enumerate() {
            entries[b] = coeffs[i];
        }
        if entries.iter().any(|&x| x.abs() > 1) {
            return Err(Error::TheoremViolation(format!(
                "fundamental circuit of element {} has an entry outside {{0, ±1}}",
                e + 1
            )));
        }
        Ok(SignedVector::new(entries, VectorKind::SignedCircuit))
    }

    /// Every circuit has even cardinality.
    pub fn is_bipartite(&self) -> Result<bool> {
        Ok(self.circuits()?.iter().all(|c| c.len() % 2 == 0))
    }
}
