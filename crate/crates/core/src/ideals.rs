//! Monomial ideals as minimal generating sets of exponent vectors, enough to build
//! `I_Δ(α) = ∩ Q_j` and compare ideals.

use std::cmp::Ordering;
use std::fmt;

use crate::complex::{AlphaVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graphs::{self, Node};
use crate::homology;
use crate::field::FieldSpec;
use crate::satisfying;
use crate::structure;

/// A monomial `x_1^{e_1} ⋯ x_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "monomials need at least one variable");
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    /// `x_i^e` in `n` variables (1-based `i`).
    pub fn power(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = e;
        Monomial::new(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Product of the variables that occur.
    pub fn support(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| u32::from(e > 0)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A monomial ideal in `k[x_1, …, x_n]`, stored by its minimal generators in decreasing
/// lexicographic order of exponent vectors. No generators means the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let generators: Vec<Monomial> = generators.into_iter().collect();
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::AmbientMismatch(n, g.n()));
        }
        Ok(MonomialIdeal { n, generators: minimalize(generators) })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, generators: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, generators: vec![Monomial::one(n)] }
    }

    /// `(x_i^{e_i} : i)` for the listed `(i, e_i)` pairs.
    pub fn from_powers(n: usize, powers: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let gens = powers.into_iter().map(|(i, e)| Monomial::power(n, i, e)).collect();
        MonomialIdeal { n, generators: minimalize(gens) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.degree() == 0)
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ok(MonomialIdeal { n: self.n, generators: minimalize(gens) })
    }

    /// Generated by pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(MonomialIdeal { n: self.n, generators: minimalize(gens) })
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self.generators.iter().map(Monomial::support).collect();
        MonomialIdeal { n: self.n, generators: minimalize(gens) }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Q_j = (x_i^{α_i(j)} : v_i ∉ F_j)`.
pub fn irreducible_component(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
    facet: usize,
) -> Result<MonomialIdeal> {
    let f = delta.facet(facet)?;
    alpha.check_domain(delta)?;
    let n = delta.n();
    Ok(MonomialIdeal::from_powers(
        n,
        f.complement(n).iter().map(|i| (i, alpha.get(facet, i).expect("domain checked"))),
    ))
}

/// Every `Q_j` in facet order.
pub fn components(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<Vec<MonomialIdeal>> {
    (0..delta.num_facets()).map(|j| irreducible_component(delta, alpha, j)).collect()
}

fn intersect_all(n: usize, ideals: &[MonomialIdeal]) -> MonomialIdeal {
    ideals
        .iter()
        .fold(MonomialIdeal::unit(n), |acc, q| acc.intersect(q).expect("same ring"))
}

/// `I_Δ(α)` by intersecting the components one at a time.
pub fn expand_ideal(delta: &SimplicialComplex, alpha: &AlphaVector) -> Result<MonomialIdeal> {
    if delta.is_void() {
        return Ok(MonomialIdeal::unit(delta.n()));
    }
    Ok(intersect_all(delta.n(), &components(delta, alpha)?))
}

/// The Stanley-Reisner ideal, `I_Δ(1)`.
pub fn stanley_reisner_ideal(delta: &SimplicialComplex) -> Result<MonomialIdeal> {
    expand_ideal(delta, &AlphaVector::ones(delta))
}

/// The splitting `(∩_{j<m} Q_j) + Q_m = (x_i^s) + Q_m` for the last facet of a shelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingWitness {
    pub vertex: usize,
    pub exponent: u32,
    /// 0-based index of the last facet of the shelling.
    pub last: usize,
    /// 0-based index of its only neighbor in the facet graph.
    pub neighbor: usize,
    pub lhs: MonomialIdeal,
    pub rhs: MonomialIdeal,
}

impl SplittingWitness {
    /// The right-hand side written with the component symbol, e.g. `(x8^3)+Q_6`.
    pub fn render(&self) -> String {
        let n = self.rhs.n();
        let power = MonomialIdeal::from_powers(n, [(self.vertex, self.exponent)]);
        format!("{}+Q_{}", power, self.last + 1)
    }
}

/// Finds `(i, s)` for the last facet of `shelling` and checks the identity with ideal
/// arithmetic. `None` when `α` fails the tree condition or the identity does not hold.
pub fn splitting_witness(
    delta: &SimplicialComplex,
    shelling: &[usize],
    alpha: &AlphaVector,
) -> Result<Option<SplittingWitness>> {
    let violated = |why: &str| Err(Error::HypothesesViolated(why.to_string()));
    let m = delta.num_facets();
    if m < 2 {
        return violated("need at least two facets");
    }
    let tree = match graphs::facet_graph(delta) {
        Ok(g) if g.is_tree() => g,
        _ => return violated("facet graph is not a tree"),
    };
    if !homology::is_cm_complex(delta, FieldSpec::RATIONALS) {
        return violated("complex is not Cohen-Macaulay");
    }
    match structure::is_shelling(delta, shelling) {
        Ok(true) => {}
        _ => return violated("order is not a shelling"),
    }
    alpha.check_domain(delta)?;
    if !satisfying::check_cm_tree_case(delta, alpha)? {
        return Ok(None);
    }

    let last = *shelling.last().expect("m >= 2");
    let neighbors = tree.neighbors(Node::Facet(last));
    let [Node::Facet(neighbor)] = neighbors[..] else {
        return violated("last facet of the shelling is not a leaf of the facet graph");
    };
    let gained = delta.facets()[last].difference(delta.facets()[neighbor]);
    let vertex = gained.iter().next().expect("adjacent facets differ in one vertex");
    let exponent = alpha.get(neighbor, vertex).expect("neighbor omits the vertex");

    let qs = components(delta, alpha)?;
    let n = delta.n();
    let earlier: Vec<MonomialIdeal> = shelling[..m - 1].iter().map(|&j| qs[j].clone()).collect();
    let lhs = intersect_all(n, &earlier).sum(&qs[last])?;
    let rhs = MonomialIdeal::from_powers(n, [(vertex, exponent)]).sum(&qs[last])?;
    if lhs != rhs {
        return Ok(None);
    }
    Ok(Some(SplittingWitness { vertex, exponent, last, neighbor, lhs, rhs }))
}

impl PartialOrd for MonomialIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.n != other.n {
            return None;
        }
        match (self.is_subset(other).ok()?, other.is_subset(self).ok()?) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}
