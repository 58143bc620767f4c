//! Reduced simplicial homology over a field, Reisner's criterion, and the brute-force
//! Cohen-Macaulay test for `I_Δ(α)` through the subcomplexes `Δ(α)_a`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::complex::{AlphaVector, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, Field, FieldSpec, PrimeField, Rationals};

/// Boundary map `∂_q` from `q`-faces to `(q-1)`-faces, faces in lexicographic order.
///
/// `∂_0` is the augmentation onto the empty face and `∂_{-1}` is the `0 × 1` map out of it.
pub fn boundary_matrix<K: Field + Clone>(
    delta: &SimplicialComplex,
    q: i32,
    field: K,
) -> Result<ExactMatrix<K>> {
    let dim = delta.dim();
    if delta.is_void() || q < -1 || q > dim {
        return Err(Error::DimensionOutOfRange { q, dim });
    }
    let cols = delta.faces_of_dim(q);
    let rows = if q == -1 { Vec::new() } else { delta.faces_of_dim(q - 1) };
    let row_of: HashMap<Face, usize> = rows.iter().enumerate().map(|(r, &f)| (f, r)).collect();
    let mut m = ExactMatrix::zeros(field.clone(), rows.len(), cols.len());
    for (c, sigma) in cols.iter().enumerate() {
        for (k, v) in sigma.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            m.set(row_of[&sigma.without(v)], c, field.embed_i64(sign));
        }
    }
    Ok(m)
}

fn ranks_over<K: Field + Clone>(delta: &SimplicialComplex, field: K) -> Vec<usize> {
    let dim = delta.dim();
    // boundary_rank[t] = rank ∂_{t-1}, for t = 0..=dim+1
    let boundary_rank: Vec<usize> = (-1..=dim)
        .map(|q| {
            if q == -1 {
                0
            } else {
                boundary_matrix(delta, q, field.clone()).expect("q in range").rank()
            }
        })
        .collect();
    (-1..=dim)
        .map(|q| {
            let t = (q + 1) as usize;
            let faces = delta.faces_of_dim(q).len();
            let next = boundary_rank.get(t + 1).copied().unwrap_or(0);
            faces - boundary_rank[t] - next
        })
        .collect()
}

/// Ranks of `H̃_{-1}, …, H̃_{dim}` over the given field.
pub fn reduced_homology_ranks(delta: &SimplicialComplex, field: FieldSpec) -> Result<Vec<usize>> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(match field.characteristic() {
        0 => ranks_over(delta, Rationals),
        p => ranks_over(delta, PrimeField::new(p)?),
    })
}

/// Reisner: every link `lk F` (including `lk ∅ = Δ`) has `H̃_q = 0` below its dimension.
/// The void complex and `{∅}` count as Cohen-Macaulay.
pub fn is_cm_complex(delta: &SimplicialComplex, field: FieldSpec) -> bool {
    if delta.is_void() {
        return true;
    }
    // Impure complexes always fail the criterion at some link; skip the homology.
    if !delta.is_pure() {
        return false;
    }
    delta.faces().into_iter().all(|face| {
        let link = delta.link(face).expect("face of the complex");
        let ranks = reduced_homology_ranks(&link, field).expect("links are non-void");
        // ranks[t] is H̃_{t-1}; everything below the top index must vanish
        ranks[..ranks.len() - 1].iter().all(|&r| r == 0)
    })
}

/// Outcome of the brute-force test, with the lexicographically smallest failing `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub cohen_macaulay: bool,
    pub witness: Option<Vec<u32>>,
    /// Number of distinct subcomplexes `Δ(α)_a` that were examined.
    pub subcomplexes: usize,
}

/// Brute-force Cohen-Macaulay test for `I_Δ(α)` on a fixed complex.
///
/// Verdicts for each facet subset are cached, so one oracle can be reused across many
/// multiplicity vectors.
pub struct IdealOracle<'a> {
    delta: &'a SimplicialComplex,
    field: FieldSpec,
    cache: Mutex<HashMap<u64, bool>>,
}

/// Cap on the number of `a`-points visited by the full-box enumeration.
const MAX_BOX_POINTS: u128 = 50_000_000;

impl<'a> IdealOracle<'a> {
    pub fn new(delta: &'a SimplicialComplex, field: FieldSpec) -> Result<Self> {
        if delta.num_facets() > 64 {
            return Err(Error::TooLarge(format!("{} facets", delta.num_facets())));
        }
        Ok(IdealOracle { delta, field, cache: Mutex::new(HashMap::new()) })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Enumerates `a` over the per-vertex thresholds `{0} ∪ {α_i(j)}`.
    pub fn check(&self, alpha: &AlphaVector) -> Result<OracleVerdict> {
        alpha.check_domain(self.delta)?;
        let n = self.delta.n();
        // facet subset -> lexicographically smallest prefix reaching it
        let mut states: HashMap<u64, Vec<u32>> = HashMap::new();
        states.insert(crate::complex::full_mask(self.delta.num_facets()), Vec::new());
        for i in 1..=n {
            let grid = candidate_grid(alpha, i);
            let mut next: HashMap<u64, Vec<u32>> = HashMap::new();
            for (mask, prefix) in &states {
                for &x in &grid {
                    let reached = mask & self.vertex_mask(alpha, i, x);
                    let mut candidate = prefix.clone();
                    candidate.push(x);
                    match next.get_mut(&reached) {
                        Some(best) if *best <= candidate => {}
                        Some(best) => *best = candidate,
                        None => {
                            next.insert(reached, candidate);
                        }
                    }
                }
            }
            states = next;
        }
        Ok(self.judge(states))
    }

    /// Enumerates every `a ∈ {0, …, max α}^n`; an independent check on [`Self::check`].
    pub fn check_full_box(&self, alpha: &AlphaVector) -> Result<OracleVerdict> {
        alpha.check_domain(self.delta)?;
        let n = self.delta.n();
        let top = alpha.max_value().max(1);
        let points = (top as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
        if points > MAX_BOX_POINTS {
            return Err(Error::TooLarge(format!("{points} grid points")));
        }
        let masks: Vec<Vec<u64>> = (1..=n)
            .map(|i| (0..=top).map(|x| self.vertex_mask(alpha, i, x)).collect())
            .collect();
        let full = crate::complex::full_mask(self.delta.num_facets());
        let mut states: HashMap<u64, Vec<u32>> = HashMap::new();
        let mut a = vec![0u32; n];
        loop {
            let mask = (0..n).fold(full, |acc, t| acc & masks[t][a[t] as usize]);
            // odometer order is lexicographic, so the first hit is the smallest
            states.entry(mask).or_insert_with(|| a.clone());
            let Some(t) = (0..n).rev().find(|&t| a[t] < top) else { break };
            a[t] += 1;
            a[t + 1..].iter_mut().for_each(|x| *x = 0);
        }
        Ok(self.judge(states))
    }

    /// Bit `j` set when facet `j` survives the constraint from vertex `i` at `a_i = x`.
    fn vertex_mask(&self, alpha: &AlphaVector, vertex: usize, x: u32) -> u64 {
        self.delta
            .facets()
            .iter()
            .enumerate()
            .filter(|(j, f)| f.contains(vertex) || x < alpha.get(*j, vertex).unwrap_or(0))
            .fold(0u64, |acc, (j, _)| acc | 1 << j)
    }

    fn judge(&self, states: HashMap<u64, Vec<u32>>) -> OracleVerdict {
        let mut masks: Vec<(u64, Vec<u32>)> = states.into_iter().collect();
        masks.sort_by(|x, y| x.1.cmp(&y.1));
        let verdicts: Vec<bool> = masks.par_iter().map(|(mask, _)| self.mask_is_cm(*mask)).collect();
        let witness = masks
            .iter()
            .zip(&verdicts)
            .find(|(_, &ok)| !ok)
            .map(|((_, a), _)| a.clone());
        OracleVerdict { cohen_macaulay: witness.is_none(), witness, subcomplexes: masks.len() }
    }

    fn mask_is_cm(&self, mask: u64) -> bool {
        if let Some(&known) = self.cache.lock().expect("cache lock").get(&mask) {
            return known;
        }
        let verdict = is_cm_complex(&self.delta.restrict_to_mask(mask), self.field);
        self.cache.lock().expect("cache lock").insert(mask, verdict);
        verdict
    }
}

/// Candidate values `{0} ∪ {α_i(j) : v_i ∉ F_j}` for coordinate `i`, ascending.
pub fn candidate_grid(alpha: &AlphaVector, vertex: usize) -> Vec<u32> {
    let values: BTreeSet<u32> =
        std::iter::once(0).chain(alpha.vertex_values(vertex).map(|(_, v)| v)).collect();
    values.into_iter().collect()
}

/// Whether `I_Δ(α)` is Cohen-Macaulay, by checking every distinct `Δ(α)_a`.
pub fn is_cm_ideal_oracle(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
    field: FieldSpec,
) -> Result<OracleVerdict> {
    IdealOracle::new(delta, field)?.check(alpha)
}

/// Same verdict as [`is_cm_ideal_oracle`], enumerating the whole box `{0, …, max α}^n`.
pub fn is_cm_ideal_full_box(
    delta: &SimplicialComplex,
    alpha: &AlphaVector,
    field: FieldSpec,
) -> Result<OracleVerdict> {
    IdealOracle::new(delta, field)?.check_full_box(alpha)
}

/// `Σ (-1)^q f_q` over `q = -1..=dim`, the reduced Euler characteristic from face counts.
pub fn reduced_euler_characteristic(delta: &SimplicialComplex) -> i64 {
    (-1..=delta.dim())
        .map(|q| {
            let f = delta.faces_of_dim(q).len() as i64;
            if q.rem_euclid(2) == 0 { f } else { -f }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, [[1, 2], [2, 3], [1, 3]]).unwrap()
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [[1, 2], [1, 3], [2, 4], [3, 4]]).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            6,
            [
                [1, 2, 3],
                [1, 3, 4],
                [1, 4, 5],
                [1, 5, 6],
                [1, 2, 6],
                [2, 3, 5],
                [3, 4, 6],
                [2, 4, 5],
                [3, 5, 6],
                [2, 4, 6],
            ],
        )
        .unwrap()
    }

    fn char(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn augmentation_and_sign_checks() {
        let d0 = boundary_matrix(&triangle(), 0, Rationals).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (1, 3));
        let d1 = boundary_matrix(&triangle(), 1, Rationals).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert!(d1.column_sums().iter().all(num_traits::Zero::is_zero));
        assert!(d0.mul(&d1).unwrap().is_zero());
        let dm1 = boundary_matrix(&triangle(), -1, Rationals).unwrap();
        assert_eq!((dm1.rows(), dm1.cols()), (0, 1));
        assert!(matches!(
            boundary_matrix(&triangle(), 2, Rationals),
            Err(Error::DimensionOutOfRange { q: 2, dim: 1 })
        ));
    }

    #[test]
    fn circle_homology() {
        assert_eq!(reduced_homology_ranks(&triangle(), char(0)).unwrap(), vec![0, 0, 1]);
        assert_eq!(reduced_homology_ranks(&triangle(), char(2)).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn degenerate_complexes() {
        let point = SimplicialComplex::empty_face_only(2);
        assert_eq!(reduced_homology_ranks(&point, char(0)).unwrap(), vec![1]);
        assert_eq!(reduced_homology_ranks(&SimplicialComplex::void(2), char(0)), Err(Error::VoidComplex));
        assert!(is_cm_complex(&point, char(0)));
        assert!(is_cm_complex(&SimplicialComplex::void(2), char(0)));
        let simplex = SimplicialComplex::from_facets(3, [[1, 2, 3]]).unwrap();
        assert_eq!(reduced_homology_ranks(&simplex, char(0)).unwrap(), vec![0; 4]);
    }

    #[test]
    fn projective_plane_is_field_sensitive() {
        let delta = rp2();
        assert_eq!(reduced_euler_characteristic(&delta), 0);
        assert_eq!(reduced_homology_ranks(&delta, char(0)).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(reduced_homology_ranks(&delta, char(2)).unwrap(), vec![0, 0, 1, 1]);
        assert!(is_cm_complex(&delta, char(0)));
        assert!(!is_cm_complex(&delta, char(2)));
    }

    #[test]
    fn disconnected_is_not_cm() {
        let delta = SimplicialComplex::from_facets(4, [[1, 2], [3, 4]]).unwrap();
        assert!(!is_cm_complex(&delta, char(0)));
        let mixed = SimplicialComplex::from_facets(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert!(!is_cm_complex(&mixed, char(0)));
    }

    #[test]
    fn square_oracle_witness() {
        let delta = square();
        let alpha =
            AlphaVector::with_overrides(&delta, [((3, 2), 2), ((2, 3), 3), ((1, 2), 3), ((0, 3), 2)])
                .unwrap();
        let v = is_cm_ideal_oracle(&delta, &alpha, char(0)).unwrap();
        assert!(!v.cohen_macaulay);
        assert_eq!(v.witness, Some(vec![0, 2, 2, 0]));
        let boxed = is_cm_ideal_full_box(&delta, &alpha, char(0)).unwrap();
        assert_eq!(boxed.witness, v.witness);
        assert!(is_cm_ideal_oracle(&delta, &AlphaVector::ones(&delta), char(0)).unwrap().cohen_macaulay);
    }

    #[test]
    fn grids() {
        let delta = square();
        let alpha = AlphaVector::with_overrides(&delta, [((2, 3), 3), ((1, 2), 3)]).unwrap();
        assert_eq!(candidate_grid(&alpha, 2), vec![0, 1, 3]);
        assert_eq!(candidate_grid(&alpha, 1), vec![0, 1]);
    }
}
