//! Facet-level graphs: the facet graph, the per-vertex graphs with a formal root, rooted
//! orientations of trees, and relation trees of quasi-trees.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::structure;

/// A node of a facet-level graph: either a facet (0-based index) or the formal root
/// attached to a vertex. Roots sort before facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Root(usize),
    Facet(usize),
}

impl Node {
    pub fn facet(self) -> Option<usize> {
        match self {
            Node::Facet(j) => Some(j),
            Node::Root(_) => None,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Root(i) => write!(f, "V{i}"),
            Node::Facet(j) => write!(f, "F{}", j + 1),
        }
    }
}

fn ordered(a: Node, b: Node) -> (Node, Node) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An undirected simple graph on facets, plus at most one formal root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetLevelGraph {
    nodes: BTreeSet<Node>,
    edges: BTreeSet<(Node, Node)>,
}

impl FacetLevelGraph {
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = Node>,
        E: IntoIterator<Item = (Node, Node)>,
    {
        let nodes: BTreeSet<Node> = nodes.into_iter().collect();
        if nodes.iter().filter(|n| matches!(n, Node::Root(_))).count() > 1 {
            return Err(Error::InvalidGraph("more than one root node".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if !nodes.contains(&a) || !nodes.contains(&b) {
                return Err(Error::InvalidGraph(format!("edge {a}-{b} leaves the node set")));
            }
            set.insert(ordered(a, b));
        }
        Ok(FacetLevelGraph { nodes, edges: set })
    }

    /// A graph on facets `0..m` with the given facet-facet edges.
    pub fn on_facets(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(
            (0..m).map(Node::Facet),
            edges.into_iter().map(|(a, b)| (Node::Facet(a), Node::Facet(b))),
        )
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.nodes.iter().copied()
    }

    /// Edges as ordered pairs `(smaller, larger)`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_node(&self, node: Node) -> bool {
        self.nodes.contains(&node)
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn root(&self) -> Option<Node> {
        self.nodes.iter().copied().find(|n| matches!(n, Node::Root(_)))
    }

    pub fn neighbors(&self, node: Node) -> Vec<Node> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == node {
                    Some(b)
                } else if b == node {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, node: Node) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == node || b == node).count()
    }

    /// Facet-facet edges as index pairs `(j, k)` with `j < k`.
    pub fn facet_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a, b) {
                (Node::Facet(j), Node::Facet(k)) => Some((j, k)),
                _ => None,
            })
            .collect()
    }

    /// The subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<Node>) -> Self {
        FacetLevelGraph {
            nodes: self.nodes.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .copied()
                .collect(),
        }
    }

    fn adjacency(&self) -> BTreeMap<Node, Vec<Node>> {
        let mut adj: BTreeMap<Node, Vec<Node>> = self.nodes.iter().map(|&n| (n, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).expect("validated").push(b);
            adj.get_mut(&b).expect("validated").push(a);
        }
        for list in adj.values_mut() {
            list.sort();
        }
        adj
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &adj[&u] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    pub fn is_tree(&self) -> bool {
        !self.nodes.is_empty() && self.edges.len() + 1 == self.nodes.len() && self.is_connected()
    }
}

impl fmt::Display for FacetLevelGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn is_tree(g: &FacetLevelGraph) -> bool {
    g.is_tree()
}

/// `G(Δ)`: facets adjacent when they share `d − 1` vertices.
pub fn facet_graph(delta: &SimplicialComplex) -> Result<FacetLevelGraph> {
    if !delta.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = delta.facets();
    let ridge = delta.dim().max(0) as usize;
    let mut edges = Vec::new();
    for j in 0..facets.len() {
        for k in j + 1..facets.len() {
            if facets[j].intersection(facets[k]).len() == ridge {
                edges.push((j, k));
            }
        }
    }
    FacetLevelGraph::on_facets(facets.len(), edges)
}

/// `G^i(Δ)`: the facets omitting `v_i` with their facet-graph edges, plus the root `V_i`
/// joined to every such facet that meets some facet containing `v_i` in `d − 1` vertices.
///
/// When every facet contains `v_i` the graph is the lone root.
pub fn vertex_graph(delta: &SimplicialComplex, vertex: usize) -> Result<FacetLevelGraph> {
    if vertex == 0 || vertex > delta.n() {
        return Err(Error::VertexOutOfRange { vertex, n: delta.n() });
    }
    let g = facet_graph(delta)?;
    let facets = delta.facets();
    let root = Node::Root(vertex);
    let mut nodes = vec![root];
    let mut edges = Vec::new();
    for (j, k) in g.facet_edges() {
        let (in_j, in_k) = (facets[j].contains(vertex), facets[k].contains(vertex));
        match (in_j, in_k) {
            (false, false) => edges.push((Node::Facet(j), Node::Facet(k))),
            (true, false) => edges.push((root, Node::Facet(k))),
            (false, true) => edges.push((root, Node::Facet(j))),
            (true, true) => {}
        }
    }
    nodes.extend((0..facets.len()).filter(|&j| !facets[j].contains(vertex)).map(Node::Facet));
    FacetLevelGraph::new(nodes, edges)
}

/// A tree with every edge directed away from a chosen root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedOrientation {
    base: FacetLevelGraph,
    root: Node,
    parent: BTreeMap<Node, Node>,
    directed: Vec<(Node, Node)>,
}

impl RootedOrientation {
    pub fn base(&self) -> &FacetLevelGraph {
        &self.base
    }

    pub fn root(&self) -> Node {
        self.root
    }

    /// `(parent, child)` pairs in breadth-first order, children by label.
    pub fn directed_edges(&self) -> &[(Node, Node)] {
        &self.directed
    }

    pub fn parent(&self, node: Node) -> Option<Node> {
        self.parent.get(&node).copied()
    }

    pub fn children(&self, node: Node) -> Vec<Node> {
        self.directed.iter().filter(|(p, _)| *p == node).map(|&(_, c)| c).collect()
    }

    /// `node` together with everything below it.
    pub fn subtree(&self, node: Node) -> BTreeSet<Node> {
        let mut out = BTreeSet::from([node]);
        let mut stack = vec![node];
        while let Some(u) = stack.pop() {
            for c in self.children(u) {
                out.insert(c);
                stack.push(c);
            }
        }
        out
    }
}

/// Orients a tree away from `root`.
pub fn root_orientation(g: &FacetLevelGraph, root: Node) -> Result<RootedOrientation> {
    if !g.contains_node(root) {
        return Err(Error::RootNotFound(root.to_string()));
    }
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let adj = g.adjacency();
    let mut parent = BTreeMap::new();
    let mut directed = Vec::with_capacity(g.num_edges());
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if w != root && !parent.contains_key(&w) {
                parent.insert(w, u);
                directed.push((u, w));
                queue.push_back(w);
            }
        }
    }
    Ok(RootedOrientation { base: g.clone(), root, parent, directed })
}

/// Every relation tree of a quasi-tree, deduplicated by edge set and sorted.
///
/// A relation tree records, for some leaf order, the edge from each removed leaf to a
/// chosen branch. All leaf orders and branch choices are explored; subsets of facets are
/// memoized so the search is over at most `2^m` states.
pub fn relation_trees(delta: &SimplicialComplex) -> Result<Vec<FacetLevelGraph>> {
    if !structure::is_quasi_tree(delta) {
        return Err(Error::NotQuasiTree);
    }
    let m = delta.num_facets();
    if m > 63 {
        return Err(Error::TooLarge(format!("{m} facets")));
    }
    let mut memo = HashMap::new();
    let full = (1u64 << m) - 1;
    let trees = relation_edge_sets(delta, full, &mut memo);
    trees
        .iter()
        .map(|edges| FacetLevelGraph::on_facets(m, edges.iter().copied()))
        .collect()
}

type EdgeSet = Vec<(usize, usize)>;

fn relation_edge_sets(
    delta: &SimplicialComplex,
    members: u64,
    memo: &mut HashMap<u64, Vec<EdgeSet>>,
) -> Vec<EdgeSet> {
    if members.count_ones() == 1 {
        return vec![Vec::new()];
    }
    if let Some(done) = memo.get(&members) {
        return done.clone();
    }
    let mut found: BTreeSet<EdgeSet> = BTreeSet::new();
    for leaf in bit_indices(members) {
        let branches = structure::branches_within(delta.facets(), members, leaf);
        if branches.is_empty() {
            continue;
        }
        let rest = relation_edge_sets(delta, members & !(1 << leaf), memo);
        for &branch in &branches {
            let edge = (leaf.min(branch), leaf.max(branch));
            for tree in &rest {
                let mut t = tree.clone();
                let pos = t.binary_search(&edge).unwrap_or_else(|p| p);
                t.insert(pos, edge);
                found.insert(t);
            }
        }
    }
    let result: Vec<EdgeSet> = found.into_iter().collect();
    memo.insert(members, result.clone());
    result
}

pub(crate) fn bit_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut bits = mask;
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        Some(j)
    })
}

/// `T^i(Δ)`: the nodes of `G^i(Δ)`, the tree edges between facets omitting `v_i`, and a
/// root edge `{V_i, F}` whenever `F` is tree-adjacent to a facet containing `v_i`.
pub fn restrict_relation_tree(
    delta: &SimplicialComplex,
    tree: &FacetLevelGraph,
    vertex: usize,
) -> Result<FacetLevelGraph> {
    if vertex == 0 || vertex > delta.n() {
        return Err(Error::VertexOutOfRange { vertex, n: delta.n() });
    }
    let edges = tree.facet_edges();
    let is_relation_tree = tree.root().is_none()
        && tree.num_nodes() == delta.num_facets()
        && relation_trees(delta)?.iter().any(|t| t.facet_edges() == edges);
    if !is_relation_tree {
        return Err(Error::NotRelationTree);
    }
    let restricted = restrict_edges(delta, &edges, vertex);
    if !restricted.is_tree() {
        return Err(Error::RestrictionNotTree(vertex));
    }
    Ok(restricted)
}

/// The restriction rule without validating the tree.
pub(crate) fn restrict_edges(
    delta: &SimplicialComplex,
    tree_edges: &[(usize, usize)],
    vertex: usize,
) -> FacetLevelGraph {
    let facets = delta.facets();
    let root = Node::Root(vertex);
    let mut nodes = vec![root];
    nodes.extend((0..facets.len()).filter(|&j| !facets[j].contains(vertex)).map(Node::Facet));
    let edges = tree_edges.iter().filter_map(|&(j, k)| {
        match (facets[j].contains(vertex), facets[k].contains(vertex)) {
            (false, false) => Some((Node::Facet(j), Node::Facet(k))),
            (true, false) => Some((root, Node::Facet(k))),
            (false, true) => Some((root, Node::Facet(j))),
            (true, true) => None,
        }
    });
    FacetLevelGraph::new(nodes, edges.collect::<Vec<_>>()).expect("nodes cover every edge")
}
