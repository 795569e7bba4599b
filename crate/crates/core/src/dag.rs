//! Directed acyclic graphs on nodes `1..=d`.
//!
//! Nodes are labelled from 1 in every public signature. Reachability,
//! parents, children and a topological order are computed once at
//! construction; a `Dag` is immutable afterwards.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::weight::Weight;

/// A set of 1-based node labels. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(BTreeSet<usize>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(BTreeSet::new())
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.contains(&node)
    }

    pub fn insert(&mut self, node: usize) -> bool {
        self.0.insert(node)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Errors when a member lies outside `1..=d`.
    pub fn check_range(&self, d: usize) -> Result<()> {
        match self.iter().find(|&n| n == 0 || n > d) {
            Some(node) => Err(Error::NodeOutOfRange { node, d }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(nodes: [usize; N]) -> Self {
        nodes.into_iter().collect()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses comma lists with inclusive ranges, e.g. `1,2,5-7`. The empty
/// string is the empty set.
impl FromStr for NodeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = NodeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid node label {t:?}")))
            };
            match part.split_once('-') {
                Some((lo, hi)) => {
                    let (lo, hi) = (parse(lo)?, parse(hi)?);
                    if lo > hi {
                        return Err(Error::Parse(format!("empty range {part:?}")));
                    }
                    set.0.extend(lo..=hi);
                }
                None => {
                    set.insert(parse(part)?);
                }
            }
        }
        Ok(set)
    }
}

#[derive(Clone, Debug)]
pub struct Dag {
    d: usize,
    // 0-based, sorted
    edges: Vec<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    // reach[j * d + i]: j == i or a path j -> ... -> i exists
    reach: Vec<bool>,
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.edges == other.edges
    }
}

impl Eq for Dag {}

impl Dag {
    /// Builds a DAG from 1-based `(from, to)` pairs.
    pub fn new(d: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for (k, i) in edges {
            for node in [k, i] {
                if node == 0 || node > d {
                    return Err(Error::NodeOutOfRange { node, d });
                }
            }
            if k == i {
                return Err(Error::SelfLoop(k));
            }
            list.push((k - 1, i - 1));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0 + 1, w[0].1 + 1));
        }
        Self::from_sorted_edges(d, list)
    }

    /// Edgeless graph on `d` nodes.
    pub fn empty(d: usize) -> Result<Self> {
        Self::new(d, [])
    }

    fn from_sorted_edges(d: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut parents = vec![Vec::new(); d];
        let mut children = vec![Vec::new(); d];
        for &(k, i) in &edges {
            parents[i].push(k);
            children[k].push(i);
        }
        for p in &mut parents {
            p.sort_unstable();
        }
        let order = topo_sort(d, &parents, &children)?;
        let mut reach = vec![false; d * d];
        for &j in order.iter().rev() {
            reach[j * d + j] = true;
            for &c in &children[j] {
                for i in 0..d {
                    if reach[c * d + i] {
                        reach[j * d + i] = true;
                    }
                }
            }
        }
        Ok(Dag { d, edges, parents, children, order, reach })
    }

    pub fn node_count(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// 1-based edges sorted by `(from, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(k, i)| (k + 1, i + 1))
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from >= 1
            && to >= 1
            && from <= self.d
            && to <= self.d
            && self.edges.binary_search(&(from - 1, to - 1)).is_ok()
    }

    fn check(&self, node: usize) -> Result<usize> {
        if node == 0 || node > self.d {
            Err(Error::NodeOutOfRange { node, d: self.d })
        } else {
            Ok(node - 1)
        }
    }

    /// True when `i` is reachable from `j` (including `j == i`).
    pub fn reaches(&self, j: usize, i: usize) -> Result<bool> {
        let (j, i) = (self.check(j)?, self.check(i)?);
        Ok(self.reach[j * self.d + i])
    }

    pub(crate) fn reaches0(&self, j: usize, i: usize) -> bool {
        self.reach[j * self.d + i]
    }

    pub(crate) fn parents0(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub(crate) fn children0(&self, k: usize) -> &[usize] {
        &self.children[k]
    }

    pub(crate) fn order0(&self) -> &[usize] {
        &self.order
    }

    pub(crate) fn edges0(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Nodes in an order where every parent precedes its children. Among
    /// available nodes the smallest label goes first.
    pub fn topological_order(&self) -> Vec<usize> {
        self.order.iter().map(|n| n + 1).collect()
    }

    pub fn parents(&self, i: usize) -> Result<NodeSet> {
        let i = self.check(i)?;
        Ok(self.parents[i].iter().map(|k| k + 1).collect())
    }

    pub fn children(&self, i: usize) -> Result<NodeSet> {
        let i = self.check(i)?;
        Ok(self.children[i].iter().map(|k| k + 1).collect())
    }

    /// Strict ancestors `an(i)`.
    pub fn ancestors(&self, i: usize) -> Result<NodeSet> {
        let i = self.check(i)?;
        Ok((0..self.d).filter(|&j| j != i && self.reach[j * self.d + i]).map(|j| j + 1).collect())
    }

    /// `An(i) = an(i) ∪ {i}`.
    pub fn ancestors_inclusive(&self, i: usize) -> Result<NodeSet> {
        let mut set = self.ancestors(i)?;
        set.insert(i);
        Ok(set)
    }

    /// Strict descendants `de(i)`.
    pub fn descendants(&self, i: usize) -> Result<NodeSet> {
        let i = self.check(i)?;
        Ok((0..self.d).filter(|&l| l != i && self.reach[i * self.d + l]).map(|l| l + 1).collect())
    }

    /// `De(i) = de(i) ∪ {i}`.
    pub fn descendants_inclusive(&self, i: usize) -> Result<NodeSet> {
        let mut set = self.descendants(i)?;
        set.insert(i);
        Ok(set)
    }

    /// 0/1 matrix with `r[j][i] = 1` iff `j == i` or `i` is reachable from `j`.
    pub fn reachability_matrix<T: Weight>(&self) -> Matrix<T> {
        let d = self.d;
        Matrix::from_fn(d, d, |j, i| if self.reach[j * d + i] { T::one() } else { T::zero() })
            .expect("0/1 entries are admissible")
    }

    /// Drops every edge `k -> i` for which another child of `k` reaches `i`.
    pub fn transitive_reduction(&self) -> Dag {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(k, i)| !self.children[k].iter().any(|&c| c != i && self.reaches0(c, i)))
            .collect();
        Self::from_sorted_edges(self.d, edges).expect("subgraph of a DAG is acyclic")
    }

    /// Edge `j -> i` for every pair with a path from `j` to `i`.
    pub fn transitive_closure(&self) -> Dag {
        let d = self.d;
        let edges = (0..d)
            .flat_map(|j| (0..d).map(move |i| (j, i)))
            .filter(|&(j, i)| j != i && self.reach[j * d + i])
            .collect();
        Self::from_sorted_edges(d, edges).expect("closure of a DAG is acyclic")
    }

    /// True iff the undirected skeleton has no cycle.
    pub fn is_polytree(&self) -> bool {
        // union-find over the skeleton; a DAG has no antiparallel pairs
        let mut parent: Vec<usize> = (0..self.d).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(k, i) in &self.edges {
            let (a, b) = (find(&mut parent, k), find(&mut parent, i));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// True iff every edge of `self` is an edge of `other` (same node count).
    pub fn is_subgraph_of(&self, other: &Dag) -> bool {
        self.d == other.d && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    pub fn same_reachability(&self, other: &Dag) -> bool {
        self.d == other.d && self.reach == other.reach
    }

    /// Graphviz rendering with one `k -> i` line per edge in `(k, i)` order.
    /// `label` may attach a weight label to each edge.
    pub fn to_dot(&self, label: impl Fn(usize, usize) -> Option<String>) -> String {
        let mut out = String::from("digraph {\n");
        for n in 1..=self.d {
            out.push_str(&format!("  {n};\n"));
        }
        for (k, i) in self.edges() {
            match label(k, i) {
                Some(w) => out.push_str(&format!("  {k} -> {i} [label=\"{w}\"];\n")),
                None => out.push_str(&format!("  {k} -> {i};\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

fn topo_sort(d: usize, parents: &[Vec<usize>], children: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..d).filter(|&n| indegree[n] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(d);
    while let Some(Reverse(n)) = ready.pop() {
        order.push(n);
        for &c in &children[n] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(Reverse(c));
            }
        }
    }
    if order.len() == d {
        return Ok(order);
    }
    // Every unsorted node keeps an unsorted parent; walk parents until a
    // node repeats.
    let start = (0..d).find(|&n| indegree[n] > 0).expect("some node is unsorted");
    let mut seen = vec![usize::MAX; d];
    let mut walk = Vec::new();
    let mut cur = start;
    while seen[cur] == usize::MAX {
        seen[cur] = walk.len();
        walk.push(cur);
        cur = *parents[cur]
            .iter()
            .find(|&&p| indegree[p] > 0)
            .expect("unsorted node has an unsorted parent");
    }
    let mut cycle: Vec<usize> = walk[seen[cur]..].iter().rev().map(|n| n + 1).collect();
    cycle.push(cycle[0]);
    Err(Error::Cycle(cycle))
}

/// Checks that a square 0/1 pattern is the reachability matrix of some DAG:
/// unit diagonal, transitive, and antisymmetric off the diagonal. Non-zero
/// entries count as ones.
pub fn is_reachability_matrix<T: Weight>(s: &Matrix<T>) -> Result<bool> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    let d = s.rows();
    let on = |j: usize, i: usize| !s.get(j, i).is_zero();
    for j in 0..d {
        if !on(j, j) {
            return Ok(false);
        }
        for i in 0..d {
            if i != j && on(j, i) && on(i, j) {
                return Ok(false);
            }
        }
    }
    for k in 0..d {
        for j in 0..d {
            if !on(j, k) {
                continue;
            }
            for i in 0..d {
                if on(k, i) && !on(j, i) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// DAG whose edges are the off-diagonal support of a reachability pattern.
pub(crate) fn dag_from_support<T: Weight>(s: &Matrix<T>) -> Result<Dag> {
    let d = s.rows();
    let edges = (0..d)
        .flat_map(|j| (0..d).map(move |i| (j, i)))
        .filter(|&(j, i)| j != i && !s.get(j, i).is_zero())
        .map(|(j, i)| (j + 1, i + 1));
    Dag::new(d, edges)
}
