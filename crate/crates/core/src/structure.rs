//! Shellings, leaves and quasi-forests, and the combined structural classification of a
//! complex.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::complex::{AlphaVector, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graphs::{self, bit_indices, Node};
use crate::homology;

/// A facet order (0-based indices) that is a shelling of its complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shelling {
    order: Vec<usize>,
}

impl Shelling {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn last(&self) -> usize {
        *self.order.last().expect("shellings are non-empty")
    }
}

impl fmt::Display for Shelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|j| format!("F{}", j + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A leaf order: `order[t]` is a leaf of the complex generated by `order[..=t]`, with
/// `branches[t]` as a witnessing branch (`None` for the first facet).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafOrder {
    pub order: Vec<usize>,
    pub branches: Vec<Option<usize>>,
}

/// Facets `G` in `members` (other than `leaf`) with `H ∩ F ⊆ G ∩ F` for every other
/// member `H`, where `F` is the leaf candidate.
pub(crate) fn branches_within(facets: &[Face], members: u64, leaf: usize) -> Vec<usize> {
    let f = facets[leaf];
    let others = members & !(1 << leaf);
    bit_indices(others)
        .filter(|&g| {
            let reach = facets[g].intersection(f);
            bit_indices(others).all(|h| facets[h].intersection(f).is_subset(reach))
        })
        .collect()
}

/// Whether facet `index` is a leaf, with the smallest branch as witness.
/// A lone facet is a leaf without a branch.
pub fn is_leaf(delta: &SimplicialComplex, index: usize) -> Result<(bool, Option<usize>)> {
    delta.facet(index)?;
    let m = delta.num_facets();
    if m == 1 {
        return Ok((true, None));
    }
    check_facet_count(m)?;
    let branch = branches_within(delta.facets(), full(m), index).into_iter().next();
    Ok((branch.is_some(), branch))
}

/// Greedy leaf elimination: repeatedly strip the lowest-index leaf.
pub fn find_leaf_order(delta: &SimplicialComplex) -> Option<LeafOrder> {
    let m = delta.num_facets();
    if m == 0 || m > 64 {
        return None;
    }
    let facets = delta.facets();
    let mut members = full(m);
    let mut removed = Vec::with_capacity(m);
    while members.count_ones() > 1 {
        let (leaf, branch) = bit_indices(members).find_map(|j| {
            branches_within(facets, members, j).first().map(|&g| (j, g))
        })?;
        removed.push((leaf, Some(branch)));
        members &= !(1 << leaf);
    }
    removed.push((members.trailing_zeros() as usize, None));
    removed.reverse();
    Some(LeafOrder {
        order: removed.iter().map(|&(j, _)| j).collect(),
        branches: removed.iter().map(|&(_, b)| b).collect(),
    })
}

/// Exhaustive backtracking over every removal sequence, memoizing dead facet subsets.
pub fn find_leaf_order_exhaustive(delta: &SimplicialComplex) -> Option<LeafOrder> {
    fn search(
        facets: &[Face],
        members: u64,
        dead: &mut HashSet<u64>,
        removed: &mut Vec<(usize, Option<usize>)>,
    ) -> bool {
        if members.count_ones() == 1 {
            removed.push((members.trailing_zeros() as usize, None));
            return true;
        }
        if dead.contains(&members) {
            return false;
        }
        for j in bit_indices(members) {
            if let Some(&g) = branches_within(facets, members, j).first() {
                removed.push((j, Some(g)));
                if search(facets, members & !(1 << j), dead, removed) {
                    return true;
                }
                removed.pop();
            }
        }
        dead.insert(members);
        false
    }

    let m = delta.num_facets();
    if m == 0 || m > 64 {
        return None;
    }
    let mut removed = Vec::new();
    if !search(delta.facets(), full(m), &mut HashSet::new(), &mut removed) {
        return None;
    }
    removed.reverse();
    Some(LeafOrder {
        order: removed.iter().map(|&(j, _)| j).collect(),
        branches: removed.iter().map(|&(_, b)| b).collect(),
    })
}

pub fn is_quasi_forest(delta: &SimplicialComplex) -> bool {
    find_leaf_order(delta).is_some()
}

/// A connected quasi-forest.
pub fn is_quasi_tree(delta: &SimplicialComplex) -> bool {
    is_quasi_forest(delta) && delta.is_connected()
}

fn full(m: usize) -> u64 {
    crate::complex::full_mask(m)
}

fn check_facet_count(m: usize) -> Result<()> {
    if m > 64 {
        return Err(Error::TooLarge(format!("{m} facets")));
    }
    Ok(())
}

/// Whether `<F_next> ∩ <F_j : j ∈ placed>` is generated by a non-empty set of maximal
/// proper faces of `F_next`.
fn attaches(facets: &[Face], placed: u64, next: usize) -> bool {
    let f = facets[next];
    let ridge = f.len().saturating_sub(1);
    let meets: Vec<Face> = bit_indices(placed).map(|j| facets[j].intersection(f)).collect();
    let ridges: Vec<Face> = meets.iter().copied().filter(|x| x.len() == ridge).collect();
    !ridges.is_empty() && meets.iter().all(|x| ridges.iter().any(|r| x.is_subset(*r)))
}

/// Checks the shelling condition at every step of `order` (0-based facet indices).
pub fn is_shelling(delta: &SimplicialComplex, order: &[usize]) -> Result<bool> {
    if !delta.is_pure() {
        return Err(Error::NotPure);
    }
    let m = delta.num_facets();
    check_facet_count(m)?;
    let mut seen = vec![false; m];
    if order.len() != m || order.iter().any(|&j| j >= m || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::NotPermutation);
    }
    let facets = delta.facets();
    let mut placed = 0u64;
    for (t, &j) in order.iter().enumerate() {
        if t > 0 && !attaches(facets, placed, j) {
            return Ok(false);
        }
        placed |= 1 << j;
    }
    Ok(true)
}

/// Restricts shellings for one vertex: facets containing it come first, and the facets
/// omitting it appear with non-increasing weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingConstraint {
    pub vertex: usize,
    pub weights: BTreeMap<usize, u32>,
}

impl ShellingConstraint {
    pub fn from_alpha(alpha: &AlphaVector, vertex: usize) -> Self {
        ShellingConstraint { vertex, weights: alpha.vertex_values(vertex).collect() }
    }
}

/// Backtracking search for a shelling, optionally under a [`ShellingConstraint`].
///
/// Facets are tried in ascending index; facet subsets already known to be dead ends are
/// skipped. Whether a prefix can be completed depends only on its set of facets.
pub fn find_shelling(
    delta: &SimplicialComplex,
    constraint: Option<&ShellingConstraint>,
) -> Result<Option<Shelling>> {
    if !delta.is_pure() {
        return Err(Error::NotPure);
    }
    let m = delta.num_facets();
    check_facet_count(m)?;
    if m == 0 {
        return Ok(None);
    }
    let facets = delta.facets();

    let allowed = |placed: u64, j: usize| -> bool {
        let Some(c) = constraint else { return true };
        let remaining = full(m) & !placed;
        let containing_left = bit_indices(remaining).any(|k| facets[k].contains(c.vertex));
        if containing_left {
            return facets[j].contains(c.vertex);
        }
        let weight = |k: usize| c.weights.get(&k).copied().unwrap_or(0);
        let top = bit_indices(remaining).map(weight).max().unwrap_or(0);
        weight(j) == top
    };

    fn search(
        m: usize,
        facets: &[Face],
        placed: u64,
        order: &mut Vec<usize>,
        dead: &mut HashSet<u64>,
        allowed: &dyn Fn(u64, usize) -> bool,
    ) -> bool {
        if order.len() == m {
            return true;
        }
        if dead.contains(&placed) {
            return false;
        }
        for j in 0..m {
            if placed >> j & 1 == 1 || !allowed(placed, j) {
                continue;
            }
            if placed != 0 && !attaches(facets, placed, j) {
                continue;
            }
            order.push(j);
            if search(m, facets, placed | 1 << j, order, dead, allowed) {
                return true;
            }
            order.pop();
        }
        dead.insert(placed);
        false
    }

    let mut order = Vec::with_capacity(m);
    let found = search(m, facets, 0, &mut order, &mut HashSet::new(), &allowed);
    Ok(found.then_some(Shelling { order }))
}

/// Whether the last facet of `order` has degree one in a tree-shaped facet graph.
pub fn free_vertex_of_last(delta: &SimplicialComplex, order: &[usize]) -> Result<bool> {
    let g = graphs::facet_graph(delta)?;
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if delta.num_facets() == 1 {
        return Ok(true);
    }
    let last = *order.last().ok_or(Error::NotPermutation)?;
    delta.facet(last)?;
    Ok(g.degree(Node::Facet(last)) == 1)
}

/// The four conditions that coincide for complexes of minimal multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalMultiplicityConditions {
    pub strongly_connected_minimal: bool,
    pub cohen_macaulay_minimal: bool,
    pub shellable_minimal: bool,
    pub strongly_connected_quasi_tree: bool,
}

impl MinimalMultiplicityConditions {
    pub fn agree(&self) -> bool {
        let v = [
            self.strongly_connected_minimal,
            self.cohen_macaulay_minimal,
            self.shellable_minimal,
            self.strongly_connected_quasi_tree,
        ];
        v.iter().all(|&x| x == v[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub field: FieldSpec,
    pub pure: bool,
    pub strongly_connected: bool,
    pub shellable: bool,
    pub cohen_macaulay: bool,
    pub minimal_multiplicity: bool,
    pub quasi_tree: bool,
    pub facet_graph_is_tree: bool,
    /// Cohen-Macaulay with a tree-shaped facet graph.
    pub cm_without_codim1_cycles: bool,
    pub strongly_connected_quasi_tree: bool,
    pub conditions: MinimalMultiplicityConditions,
}

impl ClassificationReport {
    /// Whether the four minimal-multiplicity conditions coincide, as they must.
    pub fn conditions_agree(&self) -> bool {
        self.conditions.agree()
    }
}

pub fn classify(delta: &SimplicialComplex, field: FieldSpec) -> Result<ClassificationReport> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    let pure = delta.is_pure();
    let facet_graph = if pure { Some(graphs::facet_graph(delta)?) } else { None };
    let strongly_connected = facet_graph.as_ref().is_some_and(|g| g.is_connected());
    let facet_graph_is_tree = facet_graph.as_ref().is_some_and(|g| g.is_tree());
    let shellable = pure && find_shelling(delta, None)?.is_some();
    let cohen_macaulay = homology::is_cm_complex(delta, field);
    let minimal_multiplicity = delta.has_minimal_multiplicity();
    let quasi_tree = is_quasi_tree(delta);
    let strongly_connected_quasi_tree = strongly_connected && quasi_tree;
    Ok(ClassificationReport {
        field,
        pure,
        strongly_connected,
        shellable,
        cohen_macaulay,
        minimal_multiplicity,
        quasi_tree,
        facet_graph_is_tree,
        cm_without_codim1_cycles: cohen_macaulay && facet_graph_is_tree,
        strongly_connected_quasi_tree,
        conditions: MinimalMultiplicityConditions {
            strongly_connected_minimal: strongly_connected && minimal_multiplicity,
            cohen_macaulay_minimal: cohen_macaulay && minimal_multiplicity,
            shellable_minimal: shellable && minimal_multiplicity,
            strongly_connected_quasi_tree,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree_complex() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            8,
            [[1, 2, 4], [2, 4, 5], [2, 3, 5], [4, 5, 7], [4, 6, 7], [5, 7, 8]],
        )
        .unwrap()
    }

    fn star() -> SimplicialComplex {
        SimplicialComplex::from_facets(6, [[1, 6], [2, 6], [3, 6], [4, 6], [5, 6]]).unwrap()
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [[1, 2], [1, 3], [2, 4], [3, 4]]).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, [[1, 2], [2, 3], [1, 3]]).unwrap()
    }

    fn split() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [[1, 2], [3, 4]]).unwrap()
    }

    #[test]
    fn shelling_checks() {
        assert!(is_shelling(&tree_complex(), &[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(is_shelling(&square(), &[0, 1, 2, 3]).unwrap());
        assert!(!is_shelling(&split(), &[0, 1]).unwrap());
        assert!(!is_shelling(&split(), &[1, 0]).unwrap());
        // F3 before F2: {2,3,5} meets {1,2,4} only in {2}.
        assert!(!is_shelling(&tree_complex(), &[0, 2, 1, 3, 4, 5]).unwrap());
    }

    #[test]
    fn shelling_argument_errors() {
        assert_eq!(is_shelling(&square(), &[0, 1, 2]), Err(Error::NotPermutation));
        assert_eq!(is_shelling(&square(), &[0, 1, 2, 2]), Err(Error::NotPermutation));
        let mixed = SimplicialComplex::from_facets(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(is_shelling(&mixed, &[0, 1]), Err(Error::NotPure));
        assert_eq!(find_shelling(&mixed, None), Err(Error::NotPure));
    }

    #[test]
    fn zero_dimensional_complexes_are_shellable() {
        let points = SimplicialComplex::from_facets(3, [[1], [2], [3]]).unwrap();
        assert!(is_shelling(&points, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn shelling_search() {
        let s = find_shelling(&tree_complex(), None).unwrap().unwrap();
        assert_eq!(s.order(), &[0, 1, 2, 3, 4, 5]);
        assert!(find_shelling(&split(), None).unwrap().is_none());
    }

    #[test]
    fn constrained_shelling_on_square() {
        let delta = square();
        let alpha = AlphaVector::ones(&delta);
        let c = ShellingConstraint::from_alpha(&alpha, 1);
        let s = find_shelling(&delta, Some(&c)).unwrap().unwrap();
        assert!(is_shelling(&delta, s.order()).unwrap());
        // facets containing vertex 1 come first
        assert!(s.order()[..2].iter().all(|&j| delta.facets()[j].contains(1)));
    }

    #[test]
    fn constrained_shelling_respects_weights() {
        let delta = square();
        // omitting vertex 2: F2 = {1,3} and F4 = {3,4}; force F4 ahead of F2.
        let alpha = AlphaVector::with_overrides(&delta, [((3, 2), 3), ((1, 2), 1)]).unwrap();
        let c = ShellingConstraint::from_alpha(&alpha, 2);
        let s = find_shelling(&delta, Some(&c)).unwrap().unwrap();
        let pos = |j: usize| s.order().iter().position(|&x| x == j).unwrap();
        assert!(pos(3) < pos(1));
    }

    #[test]
    fn leaves() {
        for j in 0..5 {
            let (leaf, branch) = is_leaf(&star(), j).unwrap();
            assert!(leaf);
            assert!(branch.is_some_and(|b| b != j));
        }
        assert_eq!(is_leaf(&tree_complex(), 0).unwrap(), (true, Some(1)));
        for j in 0..3 {
            assert_eq!(is_leaf(&triangle(), j).unwrap(), (false, None));
        }
        let single = SimplicialComplex::from_facets(2, [[1, 2]]).unwrap();
        assert_eq!(is_leaf(&single, 0).unwrap(), (true, None));
        assert!(matches!(is_leaf(&single, 3), Err(Error::FacetIndexOutOfRange { .. })));
    }

    fn check_leaf_order(delta: &SimplicialComplex, lo: &LeafOrder) {
        for t in 1..lo.order.len() {
            let prefix = delta.restrict_to_facets(&lo.order[..=t]);
            let (leaf, _) = is_leaf(&prefix, t).unwrap();
            assert!(leaf);
            let branch = lo.branches[t].unwrap();
            let mask = lo.order[..=t].iter().fold(0u64, |acc, &j| acc | 1 << j);
            assert!(branches_within(delta.facets(), mask, lo.order[t]).contains(&branch));
        }
    }

    #[test]
    fn leaf_orders() {
        let lo = find_leaf_order(&star()).unwrap();
        check_leaf_order(&star(), &lo);
        let lo = find_leaf_order(&tree_complex()).unwrap();
        check_leaf_order(&tree_complex(), &lo);
        assert!(find_leaf_order(&triangle()).is_none());
        assert!(find_leaf_order_exhaustive(&triangle()).is_none());
        assert!(find_leaf_order_exhaustive(&tree_complex()).is_some());
    }

    #[test]
    fn quasi_tree_recognition() {
        assert!(is_quasi_tree(&star()));
        assert!(is_quasi_tree(&tree_complex()));
        assert!(!is_quasi_tree(&triangle()));
        assert!(is_quasi_forest(&split()));
        assert!(!is_quasi_tree(&split()));
    }

    #[test]
    fn classification() {
        let r = classify(&tree_complex(), FieldSpec::RATIONALS).unwrap();
        assert!(r.cm_without_codim1_cycles);
        assert!(r.conditions_agree());

        let r = classify(&star(), FieldSpec::RATIONALS).unwrap();
        assert!(r.strongly_connected_quasi_tree);
        assert!(!r.facet_graph_is_tree);
        assert!(r.conditions_agree());

        let r = classify(&triangle(), FieldSpec::RATIONALS).unwrap();
        assert!(!r.quasi_tree);
        assert!(r.cohen_macaulay);
        assert!(r.conditions_agree());
    }

    #[test]
    fn last_facet_of_a_shelling_is_free() {
        assert!(free_vertex_of_last(&tree_complex(), &[0, 1, 2, 3, 4, 5]).unwrap());
        let single = SimplicialComplex::from_facets(2, [[1, 2]]).unwrap();
        assert!(free_vertex_of_last(&single, &[0]).unwrap());
        assert_eq!(free_vertex_of_last(&star(), &[0, 1, 2, 3, 4]), Err(Error::NotATree));
    }

    #[test]
    fn no_shelling_ends_in_the_hub() {
        // F2 has degree 3 in the facet graph; brute force over all 5! orders ending in it.
        let delta = tree_complex();
        let rest = [0usize, 2, 3, 4, 5];
        let mut count = 0;
        permute(&mut rest.to_vec(), 0, &mut |p| {
            let mut order = p.to_vec();
            order.push(1);
            assert!(!is_shelling(&delta, &order).unwrap());
            count += 1;
        });
        assert_eq!(count, 120);
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}
