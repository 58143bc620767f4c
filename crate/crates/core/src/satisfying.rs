//! Combinatorial conditions on the multiplicities `α` that decide (or imply)
//! Cohen-Macaulayness of `I_Δ(α)`: monotonicity along rooted vertex graphs for complexes
//! whose facet graph is a tree, the same along restricted relation trees for quasi-trees,
//! and the shelling-based condition for general shellable complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::complex::{domain, AlphaVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graphs::{self, FacetLevelGraph, Node, RootedOrientation};
use crate::homology;
use crate::structure::{self, Shelling, ShellingConstraint};

/// Outcome of the monotonicity check for one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexDiagnostic {
    Ok,
    /// `α_i(parent) < α_i(child)` on the directed edge `(parent, child)`.
    Violated { parent: usize, child: usize, parent_value: u32, child_value: u32 },
}

impl fmt::Display for VertexDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexDiagnostic::Ok => write!(f, "ok"),
            VertexDiagnostic::Violated { parent, child, parent_value, child_value } => write!(
                f,
                "edge (F{},F{}) has {} < {}",
                parent + 1,
                child + 1,
                parent_value,
                child_value
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfyingVerdict {
    pub satisfied: bool,
    /// `(vertex, diagnostic)` for every vertex, ascending.
    pub diagnostics: Vec<(usize, VertexDiagnostic)>,
    /// The relation tree that works for every vertex (quasi-tree case only).
    pub relation_tree: Option<FacetLevelGraph>,
}

/// The first facet-facet edge of the orientation along which `α_i` increases.
fn monotone_along(
    orientation: &RootedOrientation,
    alpha: &AlphaVector,
    vertex: usize,
) -> VertexDiagnostic {
    for &(p, c) in orientation.directed_edges() {
        let (Some(h), Some(k)) = (p.facet(), c.facet()) else { continue };
        let parent_value = alpha.get(h, vertex).expect("facet omits the vertex");
        let child_value = alpha.get(k, vertex).expect("facet omits the vertex");
        if parent_value < child_value {
            return VertexDiagnostic::Violated { parent: h, child: k, parent_value, child_value };
        }
    }
    VertexDiagnostic::Ok
}

/// Rooted vertex graphs of a Cohen-Macaulay complex whose facet graph is a tree.
#[derive(Clone, Debug)]
pub struct TreeCase<'a> {
    delta: &'a SimplicialComplex,
    orientations: Vec<RootedOrientation>,
}

impl<'a> TreeCase<'a> {
    /// Checks the hypotheses (Cohen-Macaulay over the rationals) and orients every
    /// vertex graph at its root.
    pub fn new(delta: &'a SimplicialComplex) -> Result<Self> {
        Self::with_field(delta, FieldSpec::RATIONALS)
    }

    pub fn with_field(delta: &'a SimplicialComplex, field: FieldSpec) -> Result<Self> {
        let g = graphs::facet_graph(delta).map_err(|_| Error::NotTreeFacetGraph)?;
        if !g.is_tree() {
            return Err(Error::NotTreeFacetGraph);
        }
        if !homology::is_cm_complex(delta, field) {
            return Err(Error::NotCohenMacaulay);
        }
        let orientations = (1..=delta.n())
            .map(|i| graphs::root_orientation(&graphs::vertex_graph(delta, i)?, Node::Root(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TreeCase { delta, orientations })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.delta
    }

    /// The rooted vertex graph of `vertex`.
    pub fn orientation(&self, vertex: usize) -> &RootedOrientation {
        &self.orientations[vertex - 1]
    }

    pub fn check(&self, alpha: &AlphaVector) -> Result<SatisfyingVerdict> {
        alpha.check_domain(self.delta)?;
        let diagnostics: Vec<(usize, VertexDiagnostic)> = (1..=self.delta.n())
            .map(|i| (i, monotone_along(self.orientation(i), alpha, i)))
            .collect();
        let satisfied = diagnostics.iter().all(|(_, d)| *d == VertexDiagnostic::Ok);
        Ok(SatisfyingVerdict { satisfied, diagnostics, relation_tree: None })
    }
}

pub fn is_tree_satisfying(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<SatisfyingVerdict> {
    TreeCase::new(delta)?.check(alpha)
}

/// Cohen-Macaulayness of `I_Δ(α)` when the facet graph of `Δ` is a tree.
pub fn check_cm_tree_case(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<bool> {
    Ok(is_tree_satisfying(delta, alpha)?.satisfied)
}

/// Relation trees of a strongly connected quasi-tree with their per-vertex restrictions,
/// each oriented at its root.
#[derive(Clone, Debug)]
pub struct QuasiTreeCase<'a> {
    delta: &'a SimplicialComplex,
    /// `(tree, orientation per vertex)`; trees whose restriction is not a tree for some
    /// vertex are kept with `None` and never satisfy anything.
    trees: Vec<(FacetLevelGraph, Option<Vec<RootedOrientation>>)>,
}

impl<'a> QuasiTreeCase<'a> {
    pub fn new(delta: &'a SimplicialComplex) -> Result<Self> {
        if !structure::is_quasi_tree(delta) || !delta.is_strongly_connected().unwrap_or(false) {
            return Err(Error::NotQuasiTree);
        }
        let trees = graphs::relation_trees(delta)?
            .into_iter()
            .map(|t| {
                let edges = t.facet_edges();
                let orientations = (1..=delta.n())
                    .map(|i| {
                        let restricted = graphs::restrict_edges(delta, &edges, i);
                        graphs::root_orientation(&restricted, Node::Root(i)).ok()
                    })
                    .collect::<Option<Vec<_>>>();
                (t, orientations)
            })
            .collect();
        Ok(QuasiTreeCase { delta, trees })
    }

    pub fn relation_trees(&self) -> impl Iterator<Item = &FacetLevelGraph> {
        self.trees.iter().map(|(t, _)| t)
    }

    /// Looks for a single relation tree along whose restrictions every `α_i` is
    /// non-increasing; the smallest such tree is the witness.
    pub fn check(&self, alpha: &AlphaVector) -> Result<SatisfyingVerdict> {
        alpha.check_domain(self.delta)?;
        let n = self.delta.n();
        let hit = self.trees.par_iter().find_first(|(_, orientations)| {
            orientations.as_ref().is_some_and(|os| {
                (1..=n).all(|i| monotone_along(&os[i - 1], alpha, i) == VertexDiagnostic::Ok)
            })
        });
        Ok(match hit {
            Some((tree, _)) => SatisfyingVerdict {
                satisfied: true,
                diagnostics: (1..=n).map(|i| (i, VertexDiagnostic::Ok)).collect(),
                relation_tree: Some(tree.clone()),
            },
            None => SatisfyingVerdict { satisfied: false, diagnostics: Vec::new(), relation_tree: None },
        })
    }
}

pub fn is_quasitree_satisfying(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
) -> Result<SatisfyingVerdict> {
    QuasiTreeCase::new(delta)?.check(alpha)
}

/// Three-valued answer for a sufficient-only condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CohenMacaulay,
    NotCohenMacaulay,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CohenMacaulay => "cohen-macaulay",
            Verdict::NotCohenMacaulay => "not cohen-macaulay",
            Verdict::Unknown => "unknown",
        })
    }
}

/// `CohenMacaulay` when the quasi-tree condition holds, otherwise `Unknown`.
pub fn check_cm_quasitree_sufficient(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<Verdict> {
    Ok(if is_quasitree_satisfying(delta, alpha)?.satisfied {
        Verdict::CohenMacaulay
    } else {
        Verdict::Unknown
    })
}

/// For each vertex, a shelling that lists the facets containing it first and the others
/// by non-increasing `α_i`; `None` when some vertex has no such shelling.
pub fn general_satisfying_shellings(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
) -> Result<Option<Vec<(usize, Shelling)>>> {
    alpha.check_domain(delta)?;
    if structure::find_shelling(delta, None)?.is_none() {
        return Err(Error::NotShellable);
    }
    let mut out = Vec::with_capacity(delta.n());
    for i in 1..=delta.n() {
        let constraint = ShellingConstraint::from_alpha(alpha, i);
        match structure::find_shelling(delta, Some(&constraint))? {
            Some(s) => out.push((i, s)),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn is_general_satisfying(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<bool> {
    Ok(general_satisfying_shellings(delta, alpha)?.is_some())
}

/// The multiplicities with `α_i(j) = exponents[t]` for `i = vertices[t]`, `j ∈ facets`
/// and `v_i ∉ F_j`, and 1 elsewhere.
pub fn raised_block_alpha(
    delta: &SimplicialComplex,
    vertices: &[usize],
    facets: &[usize],
    exponents: &[u32],
) -> Result<AlphaVector> {
    if vertices.len() != exponents.len() {
        return Err(Error::LengthMismatch { expected: vertices.len(), got: exponents.len() });
    }
    for &j in facets {
        delta.facet(j)?;
    }
    for &i in vertices {
        if i == 0 || i > delta.n() {
            return Err(Error::VertexOutOfRange { vertex: i, n: delta.n() });
        }
    }
    let raise: BTreeMap<usize, u32> = vertices.iter().copied().zip(exponents.iter().copied()).collect();
    let block: BTreeSet<usize> = facets.iter().copied().collect();
    AlphaVector::from_fn(delta, |j, i| match raise.get(&i) {
        Some(&x) if block.contains(&j) => x,
        _ => 1,
    })
}

/// Whether raising `α_i` to `exponents` on a block of facets keeps `I_Δ(α)`
/// Cohen-Macaulay, read off from the vertex graphs: for each chosen vertex the root
/// together with the raised facets must induce a tree.
pub fn raised_block_check(
    delta: &SimplicialComplex,
    vertices: &[usize],
    facets: &[usize],
    exponents: &[u32],
) -> Result<bool> {
    let case = TreeCase::new(delta)?;
    if let Some(&x) = exponents.iter().find(|&&x| x < 2) {
        return Err(Error::HypothesesViolated(format!("raised exponent {x} is below 2")));
    }
    raised_block_alpha(delta, vertices, facets, exponents)?;
    let block: BTreeSet<usize> = facets.iter().copied().collect();
    Ok(vertices.iter().all(|&i| {
        let g = case.orientation(i).base();
        let keep: BTreeSet<Node> = g
            .nodes()
            .filter(|node| match node {
                Node::Root(_) => true,
                Node::Facet(j) => block.contains(j),
            })
            .collect();
        g.induced(&keep).is_tree()
    }))
}

/// Non-negative integers on the domain of `α`, used as offsets `α − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaOffset {
    values: BTreeMap<(usize, usize), u32>,
}

impl AlphaOffset {
    pub fn zero(delta: &SimplicialComplex) -> Self {
        AlphaOffset { values: domain(delta).map(|k| (k, 0)).collect() }
    }

    /// `α − 1`.
    pub fn from_alpha(alpha: &AlphaVector) -> Self {
        AlphaOffset { values: alpha.entries().map(|(k, v)| (k, v - 1)).collect() }
    }

    pub fn get(&self, facet: usize, vertex: usize) -> Option<u32> {
        self.values.get(&(facet, vertex)).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// Entrywise sum; both offsets must live on the same domain.
    pub fn add(&self, other: &AlphaOffset) -> AlphaOffset {
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            *values.entry(*k).or_insert(0) += v;
        }
        AlphaOffset { values }
    }

    pub fn scaled(&self, factor: u32) -> AlphaOffset {
        AlphaOffset { values: self.values.iter().map(|(&k, &v)| (k, v * factor)).collect() }
    }

    /// `offset + 1` as a multiplicity vector.
    pub fn to_alpha(&self, delta: &SimplicialComplex) -> Result<AlphaVector> {
        AlphaVector::from_entries(delta, self.values.iter().map(|(&k, &v)| (k, v + 1)))
    }
}

/// A generator of the semigroup of Cohen-Macaulay offsets: for one vertex, the indicator
/// of the facets outside a descendant-closed set of its rooted vertex graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    /// Descendant-closed set of facets (the root excluded).
    pub downset: BTreeSet<usize>,
    pub offset: AlphaOffset,
}

const MAX_GENERATORS: usize = 1_000_000;

fn downsets_below(orientation: &RootedOrientation, node: Node) -> Vec<BTreeSet<usize>> {
    // either everything under `node`, or `node` stays out and each child subtree
    // contributes one of its own downsets
    let mut combos: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for child in orientation.children(node) {
        let below = downsets_below(orientation, child);
        combos = combos
            .iter()
            .flat_map(|acc| {
                below.iter().map(move |d| acc.union(d).copied().collect::<BTreeSet<usize>>())
            })
            .collect();
    }
    if node.facet().is_some() {
        combos.push(orientation.subtree(node).into_iter().filter_map(Node::facet).collect());
    }
    combos
}

fn downset_count(orientation: &RootedOrientation, node: Node) -> u128 {
    let product = orientation
        .children(node)
        .into_iter()
        .map(|c| downset_count(orientation, c))
        .fold(1u128, |acc, x| acc.saturating_mul(x));
    product + u128::from(node.facet().is_some())
}

fn generator(delta: &SimplicialComplex, vertex: usize, downset: BTreeSet<usize>) -> Generator {
    let mut offset = AlphaOffset::zero(delta);
    for (&(j, i), v) in offset.values.iter_mut() {
        if i == vertex && !downset.contains(&j) {
            *v = 1;
        }
    }
    Generator { vertex, downset, offset }
}

/// Every generator, vertex by vertex, downsets in a fixed order.
pub fn semigroup_generators(delta: &SimplicialComplex) -> Result<Vec<Generator>> {
    let case = TreeCase::new(delta)?;
    let mut total = 0u128;
    for i in 1..=delta.n() {
        total += downset_count(case.orientation(i), Node::Root(i));
    }
    if total > MAX_GENERATORS as u128 {
        return Err(Error::TooLarge(format!("{total} generators")));
    }
    let mut out = Vec::new();
    for i in 1..=delta.n() {
        let mut sets = downsets_below(case.orientation(i), Node::Root(i));
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.extend(sets.into_iter().map(|h| generator(delta, i, h)));
    }
    Ok(out)
}

/// Writes `α − 1` as a sum of generators, one per non-empty level set `{j : α_i(j) − 1 ≥ t}`.
/// `None` exactly when some level set is not closed under taking parents, i.e. when `α`
/// fails the tree condition.
pub fn decompose_into_generators(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
) -> Result<Option<Vec<Generator>>> {
    let case = TreeCase::new(delta)?;
    alpha.check_domain(delta)?;
    let mut parts = Vec::new();
    for i in 1..=delta.n() {
        let orientation = case.orientation(i);
        let values: BTreeMap<usize, u32> = alpha.vertex_values(i).collect();
        let top = values.values().copied().max().unwrap_or(1);
        for t in 1..top {
            let level: BTreeSet<usize> =
                values.iter().filter(|(_, &v)| v > t).map(|(&j, _)| j).collect();
            let closed = level.iter().all(|&j| match orientation.parent(Node::Facet(j)) {
                Some(Node::Facet(p)) => level.contains(&p),
                _ => true,
            });
            if !closed {
                return Ok(None);
            }
            let downset = values.keys().copied().filter(|j| !level.contains(j)).collect();
            parts.push(generator(delta, i, downset));
        }
    }
    Ok(Some(parts))
}
