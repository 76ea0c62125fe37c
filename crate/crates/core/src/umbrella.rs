//! Weighted umbrellas of pointed integer matrices.
//!
//! For a valid matrix A (columns a_1 … a_n spanning Z^d, pointed, no zero
//! column) and a rational weight vector L, the umbrella Φ is the collection
//! of column subsets τ admitting a hyperplane h with
//!
//! ```text
//!   h · a_j = L_j  for j ∈ τ,    h · a_i < L_i  for i ∉ τ.
//! ```
//!
//! Weight 0 on a column places it "at infinity" (the constraint degenerates
//! to a ray direction), which the linear-programming test handles uniformly.
//! The dimension of a face is dim_Q(span τ) − 1, so facets have dimension
//! d − 1 and every face is a subset of a facet.

use crate::exactmath::{rat_rank, rat_solve, snf, Int, IntMatrix, Rat};
use crate::polyhedral::{k_subsets, lp_feasible_with_witness, LpProblem, Rel};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UmbrellaError {
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("matrix does not have full row rank")]
    NotFullRowRank,
    #[error("columns are not contained in an open half-space (matrix not pointed)")]
    NotPointed,
    #[error("columns do not generate the full integer lattice")]
    LatticeNotFull,
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("column index {0} out of range")]
    ColumnOutOfRange(usize),
}

/// A d×n integer matrix validated for umbrella computations: no zero column,
/// full row rank, pointed (all columns in an open half-space). Whether the
/// columns generate the full lattice Z^d is recorded as a flag rather than
/// enforced here: umbrellas, slopes, and Gröbner bases are meaningful for any
/// finite-index column lattice, while the multiplicity formulas require
/// fullness and check the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricMatrix {
    matrix: IntMatrix,
    pointedness_witness: Vec<Rat>,
    lattice_full: bool,
}

impl ToricMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self, UmbrellaError> {
        let d = matrix.rows();
        let n = matrix.cols();
        for j in 0..n {
            if matrix.is_zero_column(j) {
                return Err(UmbrellaError::ZeroColumn(j));
            }
        }
        if matrix.rank() != d {
            return Err(UmbrellaError::NotFullRowRank);
        }
        // Pointedness: some h has h·a_j > 0 for every column.
        let mut lp = LpProblem::new(d);
        for j in 0..n {
            let coeffs: Vec<Rat> = matrix.column(j).iter().map(|v| Rat::from(-v.clone())).collect();
            lp.push(coeffs, Rel::Lt, Rat::zero());
        }
        let Some(pointedness_witness) = lp_feasible_with_witness(&lp) else {
            return Err(UmbrellaError::NotPointed);
        };
        let lattice_full = snf(&matrix).iter().all(|s| s.is_one());
        Ok(ToricMatrix {
            matrix,
            pointedness_witness,
            lattice_full,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, UmbrellaError> {
        ToricMatrix::new(IntMatrix::from_rows(rows))
    }

    /// Row count d (the lattice rank).
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Column count n.
    pub fn num_columns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// A functional strictly positive on every column.
    pub fn pointedness_witness(&self) -> &[Rat] {
        &self.pointedness_witness
    }

    /// Whether the columns generate all of Z^d.
    pub fn is_lattice_full(&self) -> bool {
        self.lattice_full
    }

    /// Errors unless the columns generate Z^d (needed by the index/volume
    /// multiplicity formulas).
    pub fn require_full_lattice(&self) -> Result<(), UmbrellaError> {
        if self.lattice_full {
            Ok(())
        } else {
            Err(UmbrellaError::LatticeNotFull)
        }
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.matrix.column(j)
    }

    pub fn column_rat(&self, j: usize) -> Vec<Rat> {
        self.matrix.column(j).into_iter().map(Rat::from).collect()
    }

    /// Q-rank of the selected columns.
    pub fn column_rank(&self, members: &[usize]) -> usize {
        let rows: Vec<Vec<Rat>> = members.iter().map(|&j| self.column_rat(j)).collect();
        rat_rank(&rows)
    }
}

/// Dimension of a face: the empty face has dimension "empty" (below 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceDim {
    Empty,
    Dim(usize),
}

impl FaceDim {
    pub fn from_rank(rank: usize) -> Self {
        if rank == 0 {
            FaceDim::Empty
        } else {
            FaceDim::Dim(rank - 1)
        }
    }
}

impl std::fmt::Display for FaceDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FaceDim::Empty => write!(f, "empty"),
            FaceDim::Dim(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for FaceDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FaceDim::Empty => s.serialize_str("empty"),
            FaceDim::Dim(k) => s.serialize_u64(*k as u64),
        }
    }
}

/// A face of an umbrella: sorted 0-based column indices, its dimension, and
/// a rational hyperplane witness realizing the defining (in)equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub members: Vec<usize>,
    pub dim: FaceDim,
    pub witness: Vec<Rat>,
}

/// The umbrella of (A, L): all faces, sorted by (dimension, members).
#[derive(Debug, Clone)]
pub struct Umbrella {
    matrix: ToricMatrix,
    weights: Vec<Rat>,
    faces: Vec<Face>,
}

impl Umbrella {
    pub fn matrix(&self) -> &ToricMatrix {
        &self.matrix
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Faces of top dimension d − 1.
    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        let top = FaceDim::Dim(self.matrix.dim() - 1);
        self.faces.iter().filter(move |f| f.dim == top)
    }

    pub fn contains(&self, members: &[usize]) -> bool {
        let mut key = members.to_vec();
        key.sort_unstable();
        key.dedup();
        self.faces.iter().any(|f| f.members == key)
    }

    /// The face record for the given member set, if present.
    pub fn face(&self, members: &[usize]) -> Option<&Face> {
        let mut key = members.to_vec();
        key.sort_unstable();
        key.dedup();
        self.faces.iter().find(|f| f.members == key)
    }

    /// Sorted facet member sets (cheap set-level view, used for comparisons).
    pub fn facet_sets(&self) -> BTreeSet<Vec<usize>> {
        self.facets().map(|f| f.members.clone()).collect()
    }
}

fn check_weights(a: &ToricMatrix, weights: &[Rat]) -> Result<(), UmbrellaError> {
    if weights.len() != a.num_columns() {
        return Err(UmbrellaError::WeightCount {
            expected: a.num_columns(),
            got: weights.len(),
        });
    }
    Ok(())
}

/// Builds the face-test program: equality on `members`, strict inequality on
/// the complement.
fn face_lp(a: &ToricMatrix, weights: &[Rat], members: &[usize]) -> LpProblem {
    let d = a.dim();
    let mut lp = LpProblem::new(d);
    let member_set: BTreeSet<usize> = members.iter().copied().collect();
    for j in 0..a.num_columns() {
        let rel = if member_set.contains(&j) { Rel::Eq } else { Rel::Lt };
        lp.push(a.column_rat(j), rel, weights[j].clone());
    }
    lp
}

/// Exact test whether `members` is a face of the (A, L)-umbrella, returning
/// the hyperplane witness on success.
pub fn face_witness(
    a: &ToricMatrix,
    weights: &[Rat],
    members: &[usize],
) -> Result<Option<Vec<Rat>>, UmbrellaError> {
    check_weights(a, weights)?;
    if let Some(&j) = members.iter().find(|&&j| j >= a.num_columns()) {
        return Err(UmbrellaError::ColumnOutOfRange(j));
    }
    Ok(lp_feasible_with_witness(&face_lp(a, weights, members)))
}

/// Convenience wrapper around [`face_witness`] discarding the witness.
pub fn is_face(a: &ToricMatrix, weights: &[Rat], members: &[usize]) -> Result<bool, UmbrellaError> {
    Ok(face_witness(a, weights, members)?.is_some())
}

/// Enumerates the facets (dimension d−1 faces) only: for every rank-d column
/// subset of size d, the pinned hyperplane is solved and kept when it
/// dominates all columns; the facet is its full equality set. Significantly
/// cheaper than the full umbrella; used for scanning weight families.
pub fn umbrella_facet_sets(
    a: &ToricMatrix,
    weights: &[Rat],
) -> Result<BTreeMap<Vec<usize>, Vec<Rat>>, UmbrellaError> {
    check_weights(a, weights)?;
    let d = a.dim();
    let n = a.num_columns();
    let mut facets: BTreeMap<Vec<usize>, Vec<Rat>> = BTreeMap::new();
    'subset: for subset in k_subsets(n, d) {
        // Solve h·a_j = L_j for j in the subset; unique iff the columns are
        // linearly independent.
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&j| a.column_rat(j)).collect();
        if rat_rank(&rows) != d {
            continue;
        }
        let rhs: Vec<Rat> = subset.iter().map(|&j| weights[j].clone()).collect();
        let h = rat_solve(&rows, &rhs).expect("full-rank pinned system is solvable");
        let mut equality = Vec::new();
        for i in 0..n {
            let val: Rat = a
                .column_rat(i)
                .iter()
                .zip(&h)
                .map(|(c, x)| c * x)
                .sum();
            match val.cmp(&weights[i]) {
                std::cmp::Ordering::Equal => equality.push(i),
                std::cmp::Ordering::Greater => continue 'subset,
                std::cmp::Ordering::Less => {}
            }
        }
        facets.entry(equality).or_insert(h);
    }
    Ok(facets)
}

/// Computes the full (A, L)-umbrella: facets by the pinned-hyperplane scan,
/// then all faces as the subsets of facets passing the exact face test.
/// Faces are sorted by (dimension, members); witnesses are deterministic.
pub fn compute_umbrella(a: &ToricMatrix, weights: &[Rat]) -> Result<Umbrella, UmbrellaError> {
    check_weights(a, weights)?;
    let facets = umbrella_facet_sets(a, weights)?;
    let mut tested: BTreeMap<Vec<usize>, Option<Vec<Rat>>> = BTreeMap::new();
    for (facet, witness) in &facets {
        tested.insert(facet.clone(), Some(witness.clone()));
    }
    for facet in facets.keys() {
        let f = facet.len();
        for mask in 0u64..(1u64 << f) {
            let subset: Vec<usize> = (0..f).filter(|&b| mask >> b & 1 == 1).map(|b| facet[b]).collect();
            if tested.contains_key(&subset) {
                continue;
            }
            let witness = lp_feasible_with_witness(&face_lp(a, weights, &subset));
            tested.insert(subset, witness);
        }
    }
    let mut faces: Vec<Face> = tested
        .into_iter()
        .filter_map(|(members, witness)| {
            witness.map(|w| {
                let dim = FaceDim::from_rank(a.column_rank(&members));
                Face { members, dim, witness: w }
            })
        })
        .collect();
    faces.sort_by(|x, y| x.dim.cmp(&y.dim).then_with(|| x.members.cmp(&y.members)));
    Ok(Umbrella {
        matrix: a.clone(),
        weights: weights.to_vec(),
        faces,
    })
}

/// The umbrella at weight zero (all columns at infinity).
pub fn zero_umbrella(a: &ToricMatrix) -> Result<Umbrella, UmbrellaError> {
    let weights = vec![Rat::zero(); a.num_columns()];
    compute_umbrella(a, &weights)
}

/// A face is a pyramid with apex j ∈ τ when removing j drops the dimension,
/// i.e. a_j lies outside the span of the remaining members.
pub fn is_pyramid_at(a: &ToricMatrix, members: &[usize], apex: usize) -> bool {
    if !members.contains(&apex) {
        return false;
    }
    let rest: Vec<usize> = members.iter().copied().filter(|&j| j != apex).collect();
    a.column_rank(&rest) < a.column_rank(members)
}

/// Whether the weight vector is induced by a single linear functional, i.e.
/// some c ∈ Q^d has c·a_j = L_j for every column.
pub fn is_weight_homogeneous(a: &ToricMatrix, weights: &[Rat]) -> Result<bool, UmbrellaError> {
    check_weights(a, weights)?;
    let rows: Vec<Vec<Rat>> = (0..a.num_columns()).map(|j| a.column_rat(j)).collect();
    Ok(rat_solve(&rows, weights).is_some())
}

/// Checks that a hyperplane candidate realizes the face pattern exactly
/// (equality on members, strict inequality off them).
pub fn witness_is_valid(a: &ToricMatrix, weights: &[Rat], members: &[usize], h: &[Rat]) -> bool {
    let member_set: BTreeSet<usize> = members.iter().copied().collect();
    (0..a.num_columns()).all(|j| {
        let val: Rat = a.column_rat(j).iter().zip(h).map(|(c, x)| c * x).sum();
        if member_set.contains(&j) {
            val == weights[j]
        } else {
            val < weights[j]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    /// Columns a_1=(0,3), a_2=(1,0), a_3=(1,2), a_4=(4,1).
    fn running_matrix() -> ToricMatrix {
        ToricMatrix::from_rows(&[vec![0, 1, 1, 4], vec![3, 0, 2, 1]]).unwrap()
    }

    fn w(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&v| rat_int(v)).collect()
    }

    fn members_of(u: &Umbrella) -> Vec<Vec<usize>> {
        u.faces().iter().map(|f| f.members.clone()).collect()
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert_eq!(
            ToricMatrix::from_rows(&[vec![1, 0], vec![2, 0]]).unwrap_err(),
            UmbrellaError::ZeroColumn(1)
        );
        assert_eq!(
            ToricMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap_err(),
            UmbrellaError::NotFullRowRank
        );
        assert_eq!(
            ToricMatrix::from_rows(&[vec![1, -1]]).unwrap_err(),
            UmbrellaError::NotPointed
        );
        assert!(ToricMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).is_ok());
    }

    #[test]
    fn lattice_fullness_is_flagged_not_fatal() {
        let a = ToricMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(!a.is_lattice_full());
        assert_eq!(a.require_full_lattice().unwrap_err(), UmbrellaError::LatticeNotFull);
        let b = ToricMatrix::from_rows(&[vec![1, 1], vec![0, 2]]).unwrap();
        assert!(!b.is_lattice_full());
        // Index-3 column lattice: umbrellas still work.
        let c = ToricMatrix::from_rows(&[vec![3, 1, 0], vec![0, 1, 3]]).unwrap();
        assert!(!c.is_lattice_full());
        assert!(c.require_full_lattice().is_err());
        let u = compute_umbrella(&c, &w(&[1, 1, 1])).unwrap();
        assert!(!u.faces().is_empty());
        let full = running_matrix();
        assert!(full.is_lattice_full());
        assert!(full.require_full_lattice().is_ok());
    }

    #[test]
    fn pointedness_witness_is_strictly_positive() {
        let a = running_matrix();
        let h = a.pointedness_witness();
        for j in 0..a.num_columns() {
            let v: Rat = a.column_rat(j).iter().zip(h).map(|(c, x)| c * x).sum();
            assert!(v > rat_int(0), "column {j}");
        }
    }

    #[test]
    fn running_umbrella_unit_weights() {
        // L = (1,1,1,1): facets {a_1,a_4} and {a_2,a_4}; six faces total.
        let a = running_matrix();
        let u = compute_umbrella(&a, &w(&[1, 1, 1, 1])).unwrap();
        assert_eq!(
            members_of(&u),
            vec![vec![], vec![0], vec![1], vec![3], vec![0, 3], vec![1, 3]]
        );
        assert_eq!(
            u.facet_sets(),
            BTreeSet::from([vec![0, 3], vec![1, 3]])
        );
    }

    #[test]
    fn running_umbrella_weight_two_on_last() {
        // L = (1,1,1,2): facets {a_1,a_3}, {a_2,a_4}, {a_3,a_4}; eight faces.
        let a = running_matrix();
        let u = compute_umbrella(&a, &w(&[1, 1, 1, 2])).unwrap();
        assert_eq!(
            u.facet_sets(),
            BTreeSet::from([vec![0, 2], vec![1, 3], vec![2, 3]])
        );
        assert_eq!(u.faces().len(), 8);
        assert_eq!(
            members_of(&u),
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![3],
                vec![0, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn running_umbrella_weight_five_on_last() {
        // L = (1,1,1,5): a_4 drops inside; facets {a_1,a_3} and {a_2,a_3}.
        let a = running_matrix();
        let u = compute_umbrella(&a, &w(&[1, 1, 1, 5])).unwrap();
        assert_eq!(
            u.facet_sets(),
            BTreeSet::from([vec![0, 2], vec![1, 2]])
        );
        assert_eq!(u.faces().len(), 6);
    }

    #[test]
    fn running_umbrella_weight_zero_on_last() {
        // L = (1,1,1,0): a_4 goes to infinity; facets {a_1,a_4}, {a_2,a_4}.
        let a = running_matrix();
        let u = compute_umbrella(&a, &w(&[1, 1, 1, 0])).unwrap();
        assert_eq!(
            u.facet_sets(),
            BTreeSet::from([vec![0, 3], vec![1, 3]])
        );
        assert_eq!(
            members_of(&u),
            vec![vec![], vec![0], vec![1], vec![3], vec![0, 3], vec![1, 3]]
        );
        // Pinned witness for the facet {a_1, a_4}.
        let f = u.face(&[0, 3]).unwrap();
        assert_eq!(f.witness, vec![rat(-1, 12), rat(1, 3)]);
    }

    #[test]
    fn running_zero_umbrella() {
        let a = running_matrix();
        let u = zero_umbrella(&a).unwrap();
        assert_eq!(
            members_of(&u),
            vec![vec![], vec![0], vec![1], vec![0, 1, 2, 3]]
        );
        assert_eq!(u.facet_sets(), BTreeSet::from([vec![0, 1, 2, 3]]));
        let full = u.face(&[0, 1, 2, 3]).unwrap();
        assert_eq!(full.dim, FaceDim::Dim(1));
    }

    #[test]
    fn face_dims_and_empty_face() {
        let a = running_matrix();
        let u = compute_umbrella(&a, &w(&[1, 1, 1, 1])).unwrap();
        assert_eq!(u.face(&[]).unwrap().dim, FaceDim::Empty);
        assert_eq!(u.face(&[0]).unwrap().dim, FaceDim::Dim(0));
        assert_eq!(u.face(&[0, 3]).unwrap().dim, FaceDim::Dim(1));
        assert_eq!(FaceDim::Empty.to_string(), "empty");
        assert_eq!(FaceDim::Dim(1).to_string(), "1");
        assert!(FaceDim::Empty < FaceDim::Dim(0));
    }

    #[test]
    fn umbrella_membership_matches_exhaustive_face_test() {
        // Over every subset of the four columns, the computed list agrees
        // with the direct LP test, for several weightings.
        let a = running_matrix();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5]), w(&[1, 1, 1, 0]), w(&[0, 0, 0, 0])] {
            let u = compute_umbrella(&a, &weights).unwrap();
            for mask in 0u32..16 {
                let subset: Vec<usize> = (0..4).filter(|&b| mask >> b & 1 == 1).collect();
                assert_eq!(
                    u.contains(&subset),
                    is_face(&a, &weights, &subset).unwrap(),
                    "subset {subset:?} weights {weights:?}"
                );
            }
        }
    }

    #[test]
    fn witnesses_are_exact() {
        let a = running_matrix();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 0]), w(&[0, 0, 0, 0])] {
            let u = compute_umbrella(&a, &weights).unwrap();
            for face in u.faces() {
                assert!(
                    witness_is_valid(&a, &weights, &face.members, &face.witness),
                    "face {:?} weights {weights:?}",
                    face.members
                );
            }
        }
    }

    #[test]
    fn every_face_lies_in_a_facet() {
        let a = running_matrix();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5]), w(&[0, 0, 0, 0])] {
            let u = compute_umbrella(&a, &weights).unwrap();
            let facets = u.facet_sets();
            for face in u.faces() {
                assert!(
                    facets
                        .iter()
                        .any(|f| face.members.iter().all(|m| f.contains(m))),
                    "face {:?} not below any facet",
                    face.members
                );
            }
        }
    }

    #[test]
    fn facet_scan_matches_full_umbrella() {
        let a = running_matrix();
        for weights in [w(&[1, 1, 1, 1]), w(&[1, 1, 1, 2]), w(&[1, 1, 1, 5]), w(&[1, 1, 1, 0])] {
            let scan: BTreeSet<Vec<usize>> = umbrella_facet_sets(&a, &weights)
                .unwrap()
                .into_keys()
                .collect();
            let u = compute_umbrella(&a, &weights).unwrap();
            assert_eq!(scan, u.facet_sets());
        }
    }

    #[test]
    fn unimodular_equivariance() {
        // g = [[1,1],[0,1]]: the umbrella of g·A has the same face sets.
        let a = running_matrix();
        let g_rows = vec![vec![3, 1, 3, 5], vec![3, 0, 2, 1]];
        let ga = ToricMatrix::from_rows(&g_rows).unwrap();
        let weights = w(&[1, 1, 1, 2]);
        let u1 = compute_umbrella(&a, &weights).unwrap();
        let u2 = compute_umbrella(&ga, &weights).unwrap();
        assert_eq!(members_of(&u1), members_of(&u2));
    }

    #[test]
    fn positive_weight_scaling_is_invariant() {
        let a = running_matrix();
        let u1 = compute_umbrella(&a, &w(&[1, 1, 1, 2])).unwrap();
        let u2 = compute_umbrella(&a, &w(&[3, 3, 3, 6])).unwrap();
        assert_eq!(members_of(&u1), members_of(&u2));
    }

    #[test]
    fn pyramid_detection() {
        let a = running_matrix();
        assert!(is_pyramid_at(&a, &[0, 3], 0));
        assert!(is_pyramid_at(&a, &[0, 3], 3));
        assert!(!is_pyramid_at(&a, &[0, 1, 2, 3], 0));
        assert!(!is_pyramid_at(&a, &[0, 3], 1));
        assert!(is_pyramid_at(&a, &[0], 0));
    }

    #[test]
    fn weight_homogeneity() {
        let a = running_matrix();
        assert!(!is_weight_homogeneous(&a, &w(&[1, 1, 1, 1])).unwrap());
        // L_j = (first row) · a_j is induced by c = (1, 0).
        assert!(is_weight_homogeneous(&a, &w(&[0, 1, 1, 4])).unwrap());
        let b = ToricMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(is_weight_homogeneous(&b, &w(&[1, 1])).unwrap());
    }

    #[test]
    fn weight_count_checked() {
        let a = running_matrix();
        assert_eq!(
            compute_umbrella(&a, &w(&[1, 1])).unwrap_err(),
            UmbrellaError::WeightCount { expected: 4, got: 2 }
        );
        assert_eq!(
            face_witness(&a, &w(&[1, 1, 1, 1]), &[7]).unwrap_err(),
            UmbrellaError::ColumnOutOfRange(7)
        );
    }

    #[test]
    fn one_dimensional_configurations() {
        // d = 1: single column [1] with weight 1 → faces ∅ and {1}.
        let a = ToricMatrix::from_rows(&[vec![1]]).unwrap();
        let u = compute_umbrella(&a, &[rat_int(1)]).unwrap();
        assert_eq!(members_of(&u), vec![vec![], vec![0]]);
        // Two columns [1, 2], weights (1,1): 2/1 < ... the smaller ratio
        // a_2/L_2 = 2 reaches further, so {a_2} is the facet.
        let a = ToricMatrix::from_rows(&[vec![1, 2]]).unwrap();
        let u = compute_umbrella(&a, &w(&[1, 1])).unwrap();
        assert_eq!(u.facet_sets(), BTreeSet::from([vec![1]]));
        assert_eq!(members_of(&u), vec![vec![], vec![1]]);
    }
}
