//! Finite simplicial complexes given by their facets.
//!
//! Vertices are the integers `1..=n` with `n <= 64`, and every face is stored as a bitmask
//! ([`Face`]). A [`SimplicialComplex`] keeps its facets in the order they were supplied
//! (after dropping duplicates and non-maximal faces) because multiplicity data is indexed
//! by facet position; equality ignores that order.
//!
//! The void complex (no faces at all) and the complex `{∅}` are both representable:
//! truncated subcomplexes and links produce them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graphs;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertices in `1..=64`.
///
/// Ordered lexicographically as sorted vertex lists, so `{1,2} < {1,2,3} < {1,3}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex labels. Panics on a vertex outside `1..=64`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Face {
        let mut bits = 0u64;
        for v in vertices {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} outside 1..=64");
            bits |= 1 << (v - 1);
        }
        Face(bits)
    }

    pub const fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub const fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub const fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub const fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::from_vertices([v]))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::from_vertices([v]))
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn vertices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, including the empty face and the face itself.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == 0 { None } else { Some((current - 1) & mask) };
            Some(Face(current))
        })
    }

    /// The complement inside `{1..n}`.
    pub fn complement(self, n: usize) -> Face {
        Face(full_mask(n) & !self.0)
    }

    /// Orders by size first, then lexicographically. This is the face order used for
    /// boundary matrices.
    pub fn graded_cmp(&self, other: &Face) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A simplicial complex on the vertex set `{1..n}`, stored by its facets.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_facets() == other.canonical_facets()
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from facet candidates.
    ///
    /// Non-maximal and repeated inputs are absorbed; the surviving facets keep the order of
    /// their first appearance. Every vertex `1..=n` must lie in some facet.
    pub fn from_facets<I, F>(n: usize, raw_facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        check_vertex_count(n)?;
        let mut faces = Vec::new();
        for (index, raw) in raw_facets.into_iter().enumerate() {
            let raw = raw.as_ref();
            if raw.is_empty() {
                return Err(Error::EmptyFacet { index: index + 1 });
            }
            faces.push(checked_face(n, raw)?);
        }
        let complex = SimplicialComplex { n, facets: maximalize(faces) };
        let missing = Face(full_mask(n)).difference(complex.support());
        if let Some(v) = missing.iter().next() {
            return Err(Error::UncoveredVertex(v));
        }
        Ok(complex)
    }

    /// The complex generated by arbitrary faces on the ambient set `{1..n}`.
    ///
    /// Unlike [`from_facets`](Self::from_facets) this accepts the empty face and does not
    /// require every vertex to be used, so it can express subcomplexes, `{∅}` and the void
    /// complex (no generators).
    pub fn generated_by<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Result<Self> {
        check_vertex_count(n)?;
        let full = full_mask(n);
        let mut collected = Vec::new();
        for face in faces {
            if face.bits() & !full != 0 {
                let v = face.difference(Face(full)).iter().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            collected.push(face);
        }
        Ok(SimplicialComplex { n, facets: maximalize(collected) })
    }

    /// The complex with no faces at all.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The complex `{∅}`, of dimension −1.
    pub fn empty_face_only(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![Face::EMPTY] }
    }

    /// Ambient vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet(&self, index: usize) -> Result<Face> {
        self.facets
            .get(index)
            .copied()
            .ok_or(Error::FacetIndexOutOfRange { index, count: self.facets.len() })
    }

    pub fn facet_index(&self, face: Face) -> Option<usize> {
        self.facets.iter().position(|&f| f == face)
    }

    /// Facets sorted lexicographically as vertex lists.
    pub fn canonical_facets(&self) -> Vec<Face> {
        let mut sorted = self.facets.clone();
        sorted.sort();
        sorted
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Vertices that lie in at least one facet.
    pub fn support(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face.is_subset(f))
    }

    /// Supports of the prime components `(x_i : v_i ∉ F)` of the Stanley-Reisner ideal,
    /// one per facet, in facet order.
    pub fn stanley_reisner_primes(&self) -> Vec<Face> {
        self.facets.iter().map(|f| f.complement(self.n)).collect()
    }

    /// Every face, including `∅`, ordered by size and then lexicographically.
    /// Empty for the void complex.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: HashSet<Face> = HashSet::new();
        for facet in &self.facets {
            all.extend(facet.subsets());
        }
        let mut faces: Vec<Face> = all.into_iter().collect();
        faces.sort_by(Face::graded_cmp);
        faces
    }

    /// Faces of dimension `q` (size `q + 1`) in lexicographic order.
    pub fn faces_of_dim(&self, q: i32) -> Vec<Face> {
        if q < -1 {
            return Vec::new();
        }
        let size = (q + 1) as usize;
        let mut found: HashSet<Face> = HashSet::new();
        for facet in &self.facets {
            if facet.len() >= size {
                found.extend(facet.subsets().filter(|s| s.len() == size));
            }
        }
        let mut faces: Vec<Face> = found.into_iter().collect();
        faces.sort();
        faces
    }

    /// Largest facet size minus one; `-1` for `{∅}` and, by convention, for the void complex.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(first) => self.facets.iter().all(|f| f.len() == first.len()),
        }
    }

    /// `lk(F) = {G : F ∪ G ∈ Δ, F ∩ G = ∅}` on the same ambient vertex set.
    pub fn link(&self, face: Face) -> Result<Self> {
        if !self.contains_face(face) {
            return Err(Error::FaceNotInComplex(face.to_string()));
        }
        let facets = self
            .facets
            .iter()
            .filter(|&&g| face.is_subset(g))
            .map(|&g| g.difference(face))
            .collect();
        Ok(SimplicialComplex { n: self.n, facets })
    }

    /// The subcomplex generated by the facets with the given indices.
    pub fn restrict_to_facets(&self, indices: &[usize]) -> Self {
        let facets = indices.iter().map(|&j| self.facets[j]).collect();
        SimplicialComplex { n: self.n, facets }
    }

    /// Subcomplex generated by the facets whose bit is set in `mask` (bit `j` ↦ facet `j`).
    pub(crate) fn restrict_to_mask(&self, mask: u64) -> Self {
        let facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, &f)| f)
            .collect();
        SimplicialComplex { n: self.n, facets }
    }

    /// `(f_0, …, f_{d−1})`: the number of faces of each dimension.
    pub fn f_vector(&self) -> Vec<u64> {
        let d = (self.dim() + 1) as usize;
        let mut f = vec![0u64; d];
        for face in self.faces() {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    /// `(h_0, …, h_d)` where `h_k = Σ_{i=0}^{k} (−1)^{k−i} C(d−i, k−i) f_{i−1}` and
    /// `f_{−1} = 1`. Empty for the void complex.
    pub fn h_vector(&self) -> Vec<i64> {
        if self.is_void() {
            return Vec::new();
        }
        let d = (self.dim() + 1) as usize;
        let mut f_ext = vec![1i64];
        f_ext.extend(self.f_vector().into_iter().map(|x| x as i64));
        (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, k - i) * f_ext[i]
                    })
                    .sum()
            })
            .collect()
    }

    /// Number of top-dimensional faces, `f_{d−1}` (equal to the sum of the h-vector).
    pub fn multiplicity(&self) -> u64 {
        if self.is_void() {
            return 0;
        }
        let size = (self.dim() + 1) as usize;
        self.facets.iter().filter(|f| f.len() == size).count() as u64
    }

    /// `e = 1 + n − d`, with `n` the number of vertices actually used.
    pub fn has_minimal_multiplicity(&self) -> bool {
        if self.is_void() {
            return false;
        }
        let d = self.dim() as i64 + 1;
        let n = self.support().len() as i64;
        self.multiplicity() as i64 == 1 + n - d
    }

    /// Pure complexes only: whether the facet graph is connected.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        Ok(graphs::facet_graph(self)?.is_connected())
    }

    /// Connectivity of the complex as a topological space (facets linked through shared
    /// vertices). The void complex and `{∅}` count as connected.
    pub fn is_connected(&self) -> bool {
        let m = self.facets.len();
        if m <= 1 {
            return true;
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(j) = stack.pop() {
            for (k, &other) in self.facets.iter().enumerate() {
                if !seen[k] && !self.facets[j].intersection(other).is_empty() {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::InvalidVertexCount { got: n, max: MAX_VERTICES });
    }
    Ok(())
}

fn checked_face(n: usize, vertices: &[usize]) -> Result<Face> {
    for &v in vertices {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(Face::from_vertices(vertices.iter().copied()))
}

/// Drops repeated faces and faces contained in another, keeping first-appearance order.
fn maximalize(faces: Vec<Face>) -> Vec<Face> {
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for (i, &f) in faces.iter().enumerate() {
        let dominated = faces
            .iter()
            .enumerate()
            .any(|(k, &g)| k != i && f.is_subset(g) && (f != g || k < i));
        if !dominated {
            kept.push(f);
        }
    }
    kept
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i64 / (t + 1) as i64;
    }
    acc
}

/// The multiplicities `α_i(j)`, defined exactly for facet `j` and vertex `i` with
/// `v_i ∉ F_j`.
///
/// Facet indices are 0-based, vertices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaVector {
    n: usize,
    values: BTreeMap<(usize, usize), u32>,
}

impl AlphaVector {
    /// Constant multiplicity `value` (which must be at least 1).
    pub fn constant(delta: &SimplicialComplex, value: u32) -> Result<Self> {
        Self::from_fn(delta, |_, _| value)
    }

    pub fn ones(delta: &SimplicialComplex) -> Self {
        Self::from_fn(delta, |_, _| 1).expect("1 is a valid multiplicity")
    }

    /// Evaluates `value(facet, vertex)` on every pair of the domain.
    pub fn from_fn(
        delta: &SimplicialComplex,
        mut value: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (j, i) in domain(delta) {
            let x = value(j, i);
            if x == 0 {
                return Err(Error::AlphaDomainMismatch(format!(
                    "alpha_{i}(F{}) must be positive",
                    j + 1
                )));
            }
            values.insert((j, i), x);
        }
        Ok(AlphaVector { n: delta.n(), values })
    }

    /// Exactly the given entries; the key set must equal the domain of `delta`.
    pub fn from_entries<I>(delta: &SimplicialComplex, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), u32)>,
    {
        let alpha = AlphaVector { n: delta.n(), values: entries.into_iter().collect() };
        alpha.check_domain(delta)?;
        Ok(alpha)
    }

    /// All ones except the listed `((facet, vertex), value)` entries.
    pub fn with_overrides<I>(delta: &SimplicialComplex, overrides: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), u32)>,
    {
        let mut alpha = Self::ones(delta);
        for ((j, i), x) in overrides {
            match alpha.values.get_mut(&(j, i)) {
                Some(slot) if x > 0 => *slot = x,
                Some(_) => {
                    return Err(Error::AlphaDomainMismatch(format!(
                        "alpha_{i}(F{}) must be positive",
                        j + 1
                    )))
                }
                None => {
                    return Err(Error::AlphaDomainMismatch(format!(
                        "no multiplicity for vertex {i} on facet F{}",
                        j + 1
                    )))
                }
            }
        }
        Ok(alpha)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, facet: usize, vertex: usize) -> Option<u32> {
        self.values.get(&(facet, vertex)).copied()
    }

    /// `((facet, vertex), value)` in key order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// `(facet, value)` for the facets omitting `vertex`.
    pub fn vertex_values(&self, vertex: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.values.iter().filter(move |((_, i), _)| *i == vertex).map(|(&(j, _), &v)| (j, v))
    }

    pub fn max_value(&self) -> u32 {
        self.values.values().copied().max().unwrap_or(1)
    }

    /// Checks that the keys are exactly `{(j, i) : v_i ∉ F_j}` and every value is positive.
    pub fn check_domain(&self, delta: &SimplicialComplex) -> Result<()> {
        if self.n != delta.n() {
            return Err(Error::AlphaDomainMismatch(format!(
                "built for {} vertices, complex has {}",
                self.n,
                delta.n()
            )));
        }
        let expected: Vec<(usize, usize)> = domain(delta).collect();
        if let Some(&(j, i)) = expected.iter().find(|k| !self.values.contains_key(k)) {
            return Err(Error::AlphaDomainMismatch(format!(
                "missing alpha_{i}(F{})",
                j + 1
            )));
        }
        if self.values.len() != expected.len() {
            let extra = self
                .values
                .keys()
                .find(|&&(j, i)| j >= delta.num_facets() || delta.facets()[j].contains(i) || i > delta.n())
                .copied()
                .unwrap_or((0, 0));
            return Err(Error::AlphaDomainMismatch(format!(
                "unexpected entry for vertex {} on facet F{}",
                extra.1,
                extra.0 + 1
            )));
        }
        if let Some(((j, i), _)) = self.values.iter().find(|(_, &v)| v == 0) {
            return Err(Error::AlphaDomainMismatch(format!(
                "alpha_{i}(F{}) must be positive",
                j + 1
            )));
        }
        Ok(())
    }
}

/// The index pairs `(facet j, vertex i)` with `v_i ∉ F_j`, ordered by facet then vertex.
pub fn domain(delta: &SimplicialComplex) -> impl Iterator<Item = (usize, usize)> + '_ {
    delta.facets().iter().enumerate().flat_map(move |(j, f)| {
        f.complement(delta.n()).iter().map(move |i| (j, i))
    })
}

/// Indices of the facets `F_j` with `a_i < α_i(j)` for every `v_i ∉ F_j`.
pub fn alpha_a_facets(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
    a: &[u32],
) -> Result<Vec<usize>> {
    alpha.check_domain(delta)?;
    if a.len() != delta.n() {
        return Err(Error::LengthMismatch { expected: delta.n(), got: a.len() });
    }
    Ok((0..delta.num_facets())
        .filter(|&j| {
            delta.facets()[j]
                .complement(delta.n())
                .iter()
                .all(|i| a[i - 1] < alpha.get(j, i).expect("domain checked"))
        })
        .collect())
}

/// The subcomplex `Δ(α)_a`; void when no facet qualifies.
pub fn subcomplex_alpha_a(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
    a: &[u32],
) -> Result<SimplicialComplex> {
    let kept = alpha_a_facets(delta, alpha, a)?;
    Ok(delta.restrict_to_facets(&kept))
}
