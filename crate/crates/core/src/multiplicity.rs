//! Multiplicities of the weighted characteristic cycle.
//!
//! For a face τ of the (A, L)-umbrella the multiplicity μ of its conormal
//! component is assembled facet by facet: every facet τ' ⊇ τ contributes
//!
//! ```text
//!   [Z^d : Zτ'] · [(Zτ' ∩ Qτ) : Zτ] · vol(P ∖ Q)
//! ```
//!
//! where the volume is the normalized lattice volume, taken in the quotient
//! of Zτ' by the saturation of Zτ, of P = conv(π(τ' ∪ {0})) minus
//! Q = conv(π(τ' ∖ τ)). On facets this collapses to the lattice index
//! ν = [Z^d : Zτ'] itself. All valid inputs produce exact positive integers;
//! a fractional intermediate volume indicates a broken invariant and is
//! reported as an inconsistency rather than rounded.

use crate::exactmath::{
    lattice_index, quotient_coordinates, saturation, ExactError, Int, LatticeBasis, Rat,
};
use crate::polyhedral::normalized_volume;
use crate::umbrella::{
    compute_umbrella, is_face, umbrella_facet_sets, FaceDim, ToricMatrix, UmbrellaError,
};
use num_traits::{One, Signed};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultiplicityError {
    #[error("the selected columns do not span the full space (not a facet)")]
    NotAFacet,
    #[error("the selected columns are not a face of the umbrella")]
    NotAFace,
    #[error("non-integer normalized volume {0} in a multiplicity term")]
    NonIntegerVolume(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Umbrella(#[from] UmbrellaError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Facet multiplicity ν = [Z^d : Z·columns(τ)]. The member set must span
/// Q^d (as every facet does); the lattice must be full.
pub fn nu(a: &ToricMatrix, members: &[usize]) -> Result<Int, MultiplicityError> {
    a.require_full_lattice()?;
    let columns: Vec<Vec<Int>> = members.iter().map(|&j| a.column(j)).collect();
    let sub = LatticeBasis::from_columns(a.dim(), &columns);
    if sub.rank() != a.dim() {
        return Err(MultiplicityError::NotAFacet);
    }
    let index = lattice_index(&sub, &LatticeBasis::full(a.dim()))?;
    Ok(index.expect_finite().clone())
}

/// One facet term of the multiplicity formula (see module docs).
fn facet_term(a: &ToricMatrix, tau: &[usize], facet: &[usize]) -> Result<Int, MultiplicityError> {
    let d = a.dim();
    let facet_columns: Vec<Vec<Int>> = facet.iter().map(|&j| a.column(j)).collect();
    let sup = LatticeBasis::from_columns(d, &facet_columns);
    debug_assert_eq!(sup.rank(), d, "facets span the full space");
    let nu_index = lattice_index(&sup, &LatticeBasis::full(d))?
        .expect_finite()
        .clone();
    let tau_columns: Vec<Vec<Int>> = tau.iter().map(|&j| a.column(j)).collect();
    let sub = LatticeBasis::from_columns(d, &tau_columns);
    let sat = saturation(&sub, &sup)?;
    let sat_index = lattice_index(&sub, &sat)?.expect_finite().clone();
    let pi = quotient_coordinates(&sup, &sat)?;
    let image = |j: usize| -> Vec<Rat> {
        pi.apply(&a.column(j))
            .expect("facet columns lie in their own lattice")
            .into_iter()
            .map(Rat::from)
            .collect()
    };
    // P = conv(π(τ' ∪ {0})), Q = conv(π(τ' ∖ τ)); Q's generators are a
    // subset of P's, so the containment Q ⊆ P is structural.
    let mut p_points: Vec<Vec<Rat>> = facet.iter().map(|&j| image(j)).collect();
    p_points.push(vec![Rat::from(Int::from(0)); pi.rank()]);
    let q_points: Vec<Vec<Rat>> = facet
        .iter()
        .filter(|j| !tau.contains(j))
        .map(|&j| image(j))
        .collect();
    let vol = normalized_volume(&p_points) - normalized_volume(&q_points);
    if !vol.is_integer() {
        return Err(MultiplicityError::NonIntegerVolume(vol.to_string()));
    }
    Ok(nu_index * sat_index * vol.to_integer())
}

/// Multiplicity μ of the face τ in the (A, L)-characteristic cycle.
pub fn mu(a: &ToricMatrix, weights: &[Rat], members: &[usize]) -> Result<Int, MultiplicityError> {
    a.require_full_lattice()?;
    if !is_face(a, weights, members)? {
        return Err(MultiplicityError::NotAFace);
    }
    let facets = umbrella_facet_sets(a, weights)?;
    let mut total = Int::from(0);
    for facet in facets.keys() {
        if members.iter().all(|m| facet.contains(m)) {
            total += facet_term(a, members, facet)?;
        }
    }
    Ok(total)
}

/// One entry of a characteristic cycle: a face and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEntry {
    pub members: Vec<usize>,
    pub dim: FaceDim,
    pub mu: Int,
}

/// The full characteristic cycle at a weight vector: every umbrella face
/// with its positive multiplicity, in canonical face order.
#[derive(Debug, Clone)]
pub struct CharCycle {
    pub weights: Vec<Rat>,
    pub dim: usize,
    pub entries: Vec<CycleEntry>,
}

impl CharCycle {
    /// Σ ν over the facets: the degree of the associated graded ideal.
    pub fn degree(&self) -> Int {
        let top = FaceDim::Dim(self.dim - 1);
        self.entries
            .iter()
            .filter(|e| e.dim == top)
            .map(|e| e.mu.clone())
            .sum()
    }

    pub fn get(&self, members: &[usize]) -> Option<&Int> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.entries.iter().find(|e| e.members == key).map(|e| &e.mu)
    }

    /// The entries as a map from member sets to multiplicities.
    pub fn as_map(&self) -> BTreeMap<Vec<usize>, Int> {
        self.entries
            .iter()
            .map(|e| (e.members.clone(), e.mu.clone()))
            .collect()
    }
}

/// Computes μ for every face of the (A, L)-umbrella.
pub fn char_cycle(a: &ToricMatrix, weights: &[Rat]) -> Result<CharCycle, MultiplicityError> {
    a.require_full_lattice()?;
    let umbrella = compute_umbrella(a, weights)?;
    let facets = umbrella_facet_sets(a, weights)?;
    let mut entries = Vec::with_capacity(umbrella.faces().len());
    for face in umbrella.faces() {
        let mut total = Int::from(0);
        for facet in facets.keys() {
            if face.members.iter().all(|m| facet.contains(m)) {
                total += facet_term(a, &face.members, facet)?;
            }
        }
        if !total.is_positive() {
            return Err(MultiplicityError::Inconsistency(format!(
                "face {:?} received non-positive multiplicity {total}",
                face.members
            )));
        }
        entries.push(CycleEntry {
            members: face.members.clone(),
            dim: face.dim,
            mu: total,
        });
    }
    Ok(CharCycle {
        weights: weights.to_vec(),
        dim: a.dim(),
        entries,
    })
}

/// The holonomic rank for generic parameters: μ at the empty face of the
/// unit weight vector, which equals the normalized volume of
/// conv{0, a_1, …, a_n}. Both routes are evaluated and must agree.
pub fn rank_volume(a: &ToricMatrix) -> Result<Int, MultiplicityError> {
    let ones = vec![Rat::one(); a.num_columns()];
    let via_mu = mu(a, &ones, &[])?;
    let mut points: Vec<Vec<Rat>> = (0..a.num_columns()).map(|j| a.column_rat(j)).collect();
    points.push(vec![Rat::from(Int::from(0)); a.dim()]);
    let direct = normalized_volume(&points);
    if direct != Rat::from(via_mu.clone()) {
        return Err(MultiplicityError::Inconsistency(format!(
            "multiplicity at the empty face ({via_mu}) differs from the hull volume ({direct})"
        )));
    }
    Ok(via_mu)
}

/// One entry of the projectivized cycle: a pair (τ, 𝔗) with 𝔗 disjoint
/// from τ, carrying 2^|𝔗| times the affine multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarCycleEntry {
    pub tau: Vec<usize>,
    pub t: Vec<usize>,
    pub mu: Int,
}

#[derive(Debug, Clone)]
pub struct BarCharCycle {
    pub weights: Vec<Rat>,
    pub entries: Vec<BarCycleEntry>,
}

impl BarCharCycle {
    pub fn get(&self, tau: &[usize], t: &[usize]) -> Option<&Int> {
        self.entries
            .iter()
            .find(|e| e.tau == tau && e.t == t)
            .map(|e| &e.mu)
    }
}

/// The projectivized characteristic cycle: for every umbrella face τ and
/// every subset 𝔗 of its complement, the multiplicity 2^|𝔗|·μ(τ).
pub fn bar_char_cycle(a: &ToricMatrix, weights: &[Rat]) -> Result<BarCharCycle, MultiplicityError> {
    let affine = char_cycle(a, weights)?;
    let n = a.num_columns();
    let mut entries = Vec::new();
    for entry in &affine.entries {
        let complement: Vec<usize> = (0..n).filter(|j| !entry.members.contains(j)).collect();
        let c = complement.len();
        for mask in 0u64..(1u64 << c) {
            let t: Vec<usize> = (0..c)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| complement[b])
                .collect();
            let factor = Int::one() << t.len();
            entries.push(BarCycleEntry {
                tau: entry.members.clone(),
                t,
                mu: factor * &entry.mu,
            });
        }
    }
    entries.sort_by(|x, y| (&x.tau, &x.t).cmp(&(&y.tau, &y.t)));
    Ok(BarCharCycle {
        weights: weights.to_vec(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat_int};

    fn running_matrix() -> ToricMatrix {
        ToricMatrix::from_rows(&[vec![0, 1, 1, 4], vec![3, 0, 2, 1]]).unwrap()
    }

    fn w(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&v| rat_int(v)).collect()
    }

    fn cycle_map(a: &ToricMatrix, weights: &[Rat]) -> BTreeMap<Vec<usize>, Int> {
        char_cycle(a, weights).unwrap().as_map()
    }

    #[test]
    fn facet_indices() {
        let a = running_matrix();
        // 1-based {1,4}, {3,4}, {2,4}, {1,3}, {2,3}.
        assert_eq!(nu(&a, &[0, 3]).unwrap(), int(12));
        assert_eq!(nu(&a, &[2, 3]).unwrap(), int(7));
        assert_eq!(nu(&a, &[1, 3]).unwrap(), int(1));
        assert_eq!(nu(&a, &[0, 2]).unwrap(), int(3));
        assert_eq!(nu(&a, &[1, 2]).unwrap(), int(2));
        // A lattice basis has index 1.
        let e = ToricMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(nu(&e, &[0, 1]).unwrap(), int(1));
        // Rank-deficient selections are rejected.
        assert_eq!(nu(&a, &[0]).unwrap_err(), MultiplicityError::NotAFacet);
    }

    #[test]
    fn mu_at_singletons_weight_two() {
        let a = running_matrix();
        let weights = w(&[1, 1, 1, 2]);
        // 0-based {2} is column a_3: facets {1,3} and {3,4} contribute 3+7.
        assert_eq!(mu(&a, &weights, &[2]).unwrap(), int(10));
        // 0-based {3} is column a_4: facets {2,4} and {3,4} contribute 1+7.
        assert_eq!(mu(&a, &weights, &[3]).unwrap(), int(8));
    }

    #[test]
    fn mu_rejects_non_faces() {
        let a = running_matrix();
        assert_eq!(
            mu(&a, &w(&[1, 1, 1, 1]), &[2]).unwrap_err(),
            MultiplicityError::NotAFace
        );
    }

    #[test]
    fn mu_requires_full_lattice() {
        let c = ToricMatrix::from_rows(&[vec![3, 1, 0], vec![0, 1, 3]]).unwrap();
        assert!(matches!(
            mu(&c, &w(&[1, 1, 1]), &[]),
            Err(MultiplicityError::Umbrella(UmbrellaError::LatticeNotFull))
        ));
    }

    #[test]
    fn cycle_table_unit_weights() {
        let a = running_matrix();
        let got = cycle_map(&a, &w(&[1, 1, 1, 1]));
        let want: BTreeMap<Vec<usize>, Int> = [
            (vec![], 13),
            (vec![0], 12),
            (vec![1], 1),
            (vec![3], 13),
            (vec![0, 3], 12),
            (vec![1, 3], 1),
        ]
        .into_iter()
        .map(|(k, v)| (k, int(v)))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cycle_table_weight_two() {
        let a = running_matrix();
        let got = cycle_map(&a, &w(&[1, 1, 1, 2]));
        let want: BTreeMap<Vec<usize>, Int> = [
            (vec![], 11),
            (vec![0], 3),
            (vec![1], 1),
            (vec![2], 10),
            (vec![3], 8),
            (vec![0, 2], 3),
            (vec![1, 3], 1),
            (vec![2, 3], 7),
        ]
        .into_iter()
        .map(|(k, v)| (k, int(v)))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cycle_table_weight_five() {
        let a = running_matrix();
        let got = cycle_map(&a, &w(&[1, 1, 1, 5]));
        let want: BTreeMap<Vec<usize>, Int> = [
            (vec![], 5),
            (vec![0], 3),
            (vec![1], 2),
            (vec![2], 5),
            (vec![0, 2], 3),
            (vec![1, 2], 2),
        ]
        .into_iter()
        .map(|(k, v)| (k, int(v)))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn degrees_of_the_three_tables() {
        let a = running_matrix();
        let degrees: Vec<Int> = [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5])]
            .iter()
            .map(|weights| char_cycle(&a, weights).unwrap().degree())
            .collect();
        assert_eq!(degrees, vec![int(13), int(11), int(5)]);
    }

    #[test]
    fn facet_mu_equals_nu() {
        let a = running_matrix();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5])] {
            let u = compute_umbrella(&a, &weights).unwrap();
            for facet in u.facets() {
                assert_eq!(
                    mu(&a, &weights, &facet.members).unwrap(),
                    nu(&a, &facet.members).unwrap(),
                    "facet {:?}",
                    facet.members
                );
            }
        }
    }

    #[test]
    fn rank_volume_running_is_13() {
        let a = running_matrix();
        assert_eq!(rank_volume(&a).unwrap(), int(13));
        let e = ToricMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(rank_volume(&e).unwrap(), int(1));
    }

    #[test]
    fn empty_face_bounded_by_rank_volume() {
        let a = running_matrix();
        let bound = rank_volume(&a).unwrap();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5])] {
            let empty = mu(&a, &weights, &[]).unwrap();
            assert!(empty <= bound);
        }
    }

    #[test]
    fn unimodular_row_action_invariance() {
        // g = [[1,1],[0,1]] acts on rows; the cycle is unchanged as a map.
        let a = running_matrix();
        let ga = ToricMatrix::from_rows(&[vec![3, 1, 3, 5], vec![3, 0, 2, 1]]).unwrap();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5])] {
            assert_eq!(cycle_map(&a, &weights), cycle_map(&ga, &weights));
        }
    }

    #[test]
    fn bar_cycle_counts_and_values() {
        let a = running_matrix();
        let weights = w(&[1, 1, 1, 1]);
        let bar = bar_char_cycle(&a, &weights).unwrap();
        // Σ 2^(n−|τ|) over the six faces: 16+8+8+8+4+4.
        assert_eq!(bar.entries.len(), 48);
        // (τ={2,4}, 𝔗={3}) in 1-based indexing.
        assert_eq!(bar.get(&[1, 3], &[2]).unwrap(), &int(2));
        // (τ=∅, 𝔗={1,2}) in 1-based indexing: 4·13.
        assert_eq!(bar.get(&[], &[0, 1]).unwrap(), &int(52));
        // 𝔗 = ∅ reproduces the affine cycle.
        let affine = char_cycle(&a, &weights).unwrap();
        for entry in &affine.entries {
            assert_eq!(bar.get(&entry.members, &[]).unwrap(), &entry.mu);
        }
        // Scaling law against the affine values.
        for e in &bar.entries {
            let base = affine.get(&e.tau).unwrap();
            assert_eq!(e.mu, (Int::one() << e.t.len()) * base);
        }
    }
}
