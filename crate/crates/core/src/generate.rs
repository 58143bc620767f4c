//! Seeded random complexes and multiplicity vectors for cross-validation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{AlphaVector, Face, SimplicialComplex};
use crate::graphs::Node;
use crate::satisfying::TreeCase;

/// Relabels the used vertices as `1..=k` in increasing order.
fn compress(facets: &[Face]) -> SimplicialComplex {
    let used: Vec<usize> = facets
        .iter()
        .fold(Face::EMPTY, |acc, f| acc.union(*f))
        .vertices();
    let relabel = |v: usize| used.iter().position(|&u| u == v).expect("used vertex") + 1;
    let relabeled: Vec<Vec<usize>> =
        facets.iter().map(|f| f.iter().map(relabel).collect()).collect();
    SimplicialComplex::from_facets(used.len(), relabeled).expect("relabeled facets are valid")
}

/// A pure, strongly connected complex of dimension at least 1 on at most `max_vertices`
/// vertices with at most `max_facets` facets: each new facet swaps one vertex of an
/// existing facet.
pub fn pure_strongly_connected<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_facets: usize,
) -> SimplicialComplex {
    assert!(max_vertices >= 3 && max_facets >= 1);
    let size = rng.gen_range(2..max_vertices);
    let target = rng.gen_range(1..=max_facets);
    let mut facets = vec![Face::from_vertices(1..=size)];
    for _ in 0..4 * target {
        if facets.len() == target {
            break;
        }
        let base = *facets.choose(rng).expect("non-empty");
        let out = *base.vertices().choose(rng).expect("facets are non-empty");
        let fresh: Vec<usize> = (1..=max_vertices).filter(|&v| !base.contains(v)).collect();
        let Some(&inn) = fresh.choose(rng) else { continue };
        let next = base.without(out).with(inn);
        if !facets.contains(&next) {
            facets.push(next);
        }
    }
    compress(&facets)
}

/// A strongly connected quasi-tree of dimension at least 1: each new facet swaps one
/// vertex of an existing facet for a vertex not used before, so it is a leaf with the old
/// facet as branch.
pub fn strongly_connected_quasi_tree<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    assert!(max_vertices >= 3);
    let size = rng.gen_range(2..max_vertices);
    let mut facets = vec![Face::from_vertices(1..=size)];
    for fresh in size + 1..=max_vertices {
        let base = *facets.choose(rng).expect("non-empty");
        let out = *base.vertices().choose(rng).expect("facets are non-empty");
        facets.push(base.without(out).with(fresh));
    }
    compress(&facets)
}

/// Any complex: `facets` random non-empty subsets, absorbed into a facet list.
pub fn arbitrary_complex<R: Rng>(rng: &mut R, max_vertices: usize, max_facets: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=max_facets);
    let faces: Vec<Face> = (0..count)
        .map(|_| Face::from_bits(rng.gen_range(1u64..1 << max_vertices)))
        .collect();
    let absorbed = SimplicialComplex::generated_by(max_vertices, faces).expect("in range");
    compress(absorbed.facets())
}

/// Entries drawn uniformly from `1..=max_value`.
pub fn uniform_alpha<R: Rng>(rng: &mut R, delta: &SimplicialComplex, max_value: u32) -> AlphaVector {
    AlphaVector::from_fn(delta, |_, _| rng.gen_range(1..=max_value)).expect("positive values")
}

/// Multiplicities that never increase away from the root of any vertex graph.
pub fn monotone_alpha<R: Rng>(rng: &mut R, case: &TreeCase, max_value: u32) -> AlphaVector {
    let delta = case.complex();
    let mut chosen = std::collections::BTreeMap::new();
    for i in 1..=delta.n() {
        let orientation = case.orientation(i);
        // breadth-first order: parents are assigned before their children
        for &(p, c) in orientation.directed_edges() {
            let cap = match p {
                Node::Root(_) => max_value,
                Node::Facet(h) => chosen[&(h, i)],
            };
            if let Node::Facet(k) = c {
                chosen.insert((k, i), rng.gen_range(1..=cap));
            }
        }
    }
    AlphaVector::from_entries(delta, chosen).expect("every omitting facet is below the root")
}

/// Sorted facet lists, handy for deduplicating generated corpora.
pub fn signature(delta: &SimplicialComplex) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = delta.facets().iter().map(|f| f.vertices()).collect();
    set.into_iter().collect()
}
