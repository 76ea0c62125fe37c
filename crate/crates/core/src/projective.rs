//! Projectivized bookkeeping over charts of (P^1)^n: weight vectors on the
//! charts that see the subvariety Y, enumeration of the pairs (τ, 𝔗) making
//! up the projectivized umbrella with their adjacency order, and the slope
//! report along Y when variables sit at infinity.
//!
//! When 𝔙_∞ ≠ ∅ the slope description rests on an open conjecture; reports
//! carry a structural flag for this, and the pyramid-filtered sweep (the
//! conjecture's literal prediction) is returned alongside the unfiltered one.

use crate::exactmath::Rat;
use crate::slopes::{filter_pyramids, slopes_along, SlopeError, SlopeFamily, SlopeReport};
use crate::umbrella::{compute_umbrella, Face, ToricMatrix, UmbrellaError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("chart misses Y: it must invert every variable at infinity and no vanishing one")]
    ChartMissesY,
    #[error("column index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Umbrella(#[from] UmbrellaError),
}

/// An affine patch of (P^1)^n, given by the set of inverted coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    pub inverted: BTreeSet<usize>,
}

impl ChartSpec {
    pub fn new<I: IntoIterator<Item = usize>>(inverted: I) -> Self {
        ChartSpec {
            inverted: inverted.into_iter().collect(),
        }
    }
}

/// The weight vector of the slope family as seen on a chart through Y:
/// 1 + s on vanishing variables, 1 − s on variables at infinity, 1
/// elsewhere. The chart must invert every variable at infinity and none of
/// the vanishing ones; the resulting weights do not depend on which such
/// chart was chosen.
pub fn chart_weights(
    family: &SlopeFamily,
    chart: &ChartSpec,
    s: &Rat,
) -> Result<Vec<Rat>, ProjectiveError> {
    let n = family.matrix().num_columns();
    if let Some(&j) = chart.inverted.iter().find(|&&j| j >= n) {
        return Err(ProjectiveError::IndexOutOfRange(j));
    }
    if !family.vinf().is_subset(&chart.inverted)
        || family.v0().intersection(&chart.inverted).next().is_some()
    {
        return Err(ProjectiveError::ChartMissesY);
    }
    Ok(family.weights_at(s))
}

/// One stratum label of the projectivized umbrella: an umbrella face τ
/// together with a set 𝔗 of coordinates at infinity, disjoint from τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarFace {
    pub tau: Face,
    pub t: Vec<usize>,
}

impl BarFace {
    /// The closure partial order: self ≤ other.
    pub fn leq(&self, other: &BarFace) -> bool {
        bar_face_leq(&self.tau.members, &self.t, &other.tau.members, &other.t)
    }
}

/// Whether (τ', 𝔗') ≤ (τ, 𝔗): τ' ⊆ τ, τ∖τ' ⊆ 𝔗', and 𝔗 ⊆ 𝔗'.
pub fn bar_face_leq(tau_p: &[usize], t_p: &[usize], tau: &[usize], t: &[usize]) -> bool {
    tau_p.iter().all(|j| tau.contains(j))
        && tau
            .iter()
            .filter(|j| !tau_p.contains(j))
            .all(|j| t_p.contains(j))
        && t.iter().all(|j| t_p.contains(j))
}

/// All pairs (τ, 𝔗) with τ an umbrella face and 𝔗 a subset of its
/// complement, in canonical order.
pub fn bar_umbrella(a: &ToricMatrix, weights: &[Rat]) -> Result<Vec<BarFace>, UmbrellaError> {
    let umbrella = compute_umbrella(a, weights)?;
    let n = a.num_columns();
    let mut out = Vec::new();
    for face in umbrella.faces() {
        let complement: Vec<usize> = (0..n).filter(|j| !face.members.contains(j)).collect();
        let c = complement.len();
        for mask in 0u64..(1u64 << c) {
            let t: Vec<usize> = (0..c)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| complement[b])
                .collect();
            out.push(BarFace {
                tau: face.clone(),
                t,
            });
        }
    }
    out.sort_by(|x, y| (&x.tau.members, &x.t).cmp(&(&y.tau.members, &y.t)));
    Ok(out)
}

/// Slope report along Y = Var(x_{𝔙_0}, x'_{𝔙_∞}). The headline `report`
/// sweeps the full weighted umbrella; `filtered` repeats the sweep on the
/// pyramid-filtered complexes. Both are flagged conjectural when any
/// variable sits at infinity.
#[derive(Debug, Clone)]
pub struct InfinityReport {
    pub report: SlopeReport,
    pub filtered: SlopeReport,
}

impl InfinityReport {
    pub fn slopes(&self) -> &[Rat] {
        &self.report.slopes
    }

    pub fn conjectural(&self) -> bool {
        self.report.conjectural
    }
}

/// Computes the slope report for a coordinate subvariety with variables at
/// infinity allowed. With 𝔙_∞ = ∅ this is exactly the affine sweep.
pub fn slopes_at_infinity(
    a: &ToricMatrix,
    v0: &[usize],
    vinf: &[usize],
) -> Result<InfinityReport, ProjectiveError> {
    let family = SlopeFamily::new(a.clone(), v0, vinf)?;
    let report = slopes_along(&family)?;
    let filtered = filter_pyramids(&report, &family)?;
    Ok(InfinityReport { report, filtered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};
    use crate::multiplicity::bar_char_cycle;

    fn running_matrix() -> ToricMatrix {
        ToricMatrix::from_rows(&[vec![0, 1, 1, 4], vec![3, 0, 2, 1]]).unwrap()
    }

    fn infinity_matrix() -> ToricMatrix {
        ToricMatrix::from_rows(&[vec![3, 1, 0], vec![0, 1, 3]]).unwrap()
    }

    fn ones(n: usize) -> Vec<Rat> {
        vec![rat_int(1); n]
    }

    #[test]
    fn chart_weights_follow_the_family() {
        let family = SlopeFamily::new(infinity_matrix(), &[], &[0, 1]).unwrap();
        let chart = ChartSpec::new([0, 1]);
        assert_eq!(
            chart_weights(&family, &chart, &rat(1, 2)).unwrap(),
            vec![rat(1, 2), rat(1, 2), rat_int(1)]
        );
        // s = 0 collapses to the all-ones weight.
        assert_eq!(
            chart_weights(&family, &chart, &rat_int(0)).unwrap(),
            ones(3)
        );
        // A vanishing variable gives 1 + s.
        let family = SlopeFamily::new(running_matrix(), &[3], &[]).unwrap();
        let chart = ChartSpec::new([]);
        assert_eq!(
            chart_weights(&family, &chart, &rat_int(1)).unwrap(),
            vec![rat_int(1), rat_int(1), rat_int(1), rat_int(2)]
        );
    }

    #[test]
    fn charts_that_miss_y_are_rejected() {
        let family = SlopeFamily::new(infinity_matrix(), &[2], &[0, 1]).unwrap();
        // Missing a variable at infinity.
        assert_eq!(
            chart_weights(&family, &ChartSpec::new([0]), &rat(1, 2)).unwrap_err(),
            ProjectiveError::ChartMissesY
        );
        // Inverting a vanishing variable.
        assert_eq!(
            chart_weights(&family, &ChartSpec::new([0, 1, 2]), &rat(1, 2)).unwrap_err(),
            ProjectiveError::ChartMissesY
        );
        // Out-of-range chart index.
        assert_eq!(
            chart_weights(&family, &ChartSpec::new([0, 1, 7]), &rat(1, 2)).unwrap_err(),
            ProjectiveError::IndexOutOfRange(7)
        );
        // The canonical chart (exactly the variables at infinity) is valid.
        assert!(chart_weights(&family, &ChartSpec::new([0, 1]), &rat(1, 2)).is_ok());
    }

    #[test]
    fn bar_umbrella_count_and_disjointness() {
        let a = running_matrix();
        let pairs = bar_umbrella(&a, &ones(4)).unwrap();
        // Σ 2^(n−|τ|) over the six unit-weight faces: 16 + 3·8 + 2·4.
        assert_eq!(pairs.len(), 48);
        for p in &pairs {
            assert!(p.t.iter().all(|j| !p.tau.members.contains(j)));
        }
        // Overlapping pairs such as ({2,4},{4}) (1-based) never appear.
        assert!(!pairs
            .iter()
            .any(|p| p.tau.members == vec![1, 3] && p.t == vec![3]));
    }

    #[test]
    fn bar_umbrella_matches_the_bar_cycle_support() {
        let a = running_matrix();
        let pairs = bar_umbrella(&a, &ones(4)).unwrap();
        let cycle = bar_char_cycle(&a, &ones(4)).unwrap();
        let from_pairs: Vec<(Vec<usize>, Vec<usize>)> = pairs
            .iter()
            .map(|p| (p.tau.members.clone(), p.t.clone()))
            .collect();
        let from_cycle: Vec<(Vec<usize>, Vec<usize>)> = cycle
            .entries
            .iter()
            .map(|e| (e.tau.clone(), e.t.clone()))
            .collect();
        assert_eq!(from_pairs, from_cycle);
    }

    #[test]
    fn adjacency_examples() {
        // ({2},{4}) ≤ ({2,4},∅) in 1-based indexing.
        assert!(bar_face_leq(&[1], &[3], &[1, 3], &[]));
        // Fails without the connecting index in 𝔗'.
        assert!(!bar_face_leq(&[1], &[], &[1, 3], &[]));
        // 𝔗 must shrink upwards.
        assert!(!bar_face_leq(&[1], &[3], &[1, 3], &[2]));
    }

    #[test]
    fn adjacency_is_a_partial_order_on_the_enumeration() {
        let a = running_matrix();
        let pairs = bar_umbrella(&a, &ones(4)).unwrap();
        for x in &pairs {
            assert!(x.leq(x));
        }
        for x in &pairs {
            for y in &pairs {
                if x.leq(y) && y.leq(x) {
                    assert_eq!((&x.tau.members, &x.t), (&y.tau.members, &y.t));
                }
            }
        }
        for x in &pairs {
            for y in pairs.iter().filter(|y| x.leq(y)) {
                for z in pairs.iter().filter(|z| y.leq(z)) {
                    assert!(x.leq(z));
                }
            }
        }
    }

    #[test]
    fn infinity_example_reports_slope_two() {
        let report = slopes_at_infinity(&infinity_matrix(), &[], &[0, 1]).unwrap();
        assert_eq!(report.slopes(), &[rat_int(2)]);
        assert!(report.conjectural());
        assert!(report.filtered.filtered);
        // The pyramid-filtered complexes see no jump here.
        assert!(report.filtered.slopes.is_empty());
    }

    #[test]
    fn empty_vinf_reduces_to_the_affine_sweep() {
        let a = running_matrix();
        let family = SlopeFamily::new(a.clone(), &[3], &[]).unwrap();
        let affine = slopes_along(&family).unwrap();
        let report = slopes_at_infinity(&a, &[3], &[]).unwrap();
        assert_eq!(report.report.slopes, affine.slopes);
        assert_eq!(report.report.critical_values, affine.critical_values);
        assert_eq!(report.report.candidates, affine.candidates);
        assert!(!report.conjectural());
        // With nothing at infinity the filter is the identity.
        assert_eq!(report.filtered.slopes, affine.slopes);
        assert!(!report.filtered.filtered);
    }

    #[test]
    fn homogeneous_configurations_have_no_slopes() {
        let a = ToricMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        for (v0, vinf) in [
            (vec![], vec![0usize]),
            (vec![2usize], vec![0usize]),
            (vec![1], vec![2]),
        ] {
            let report = slopes_at_infinity(&a, &v0, &vinf).unwrap();
            assert!(report.slopes().is_empty(), "v0={v0:?} vinf={vinf:?}");
            assert!(report.filtered.slopes.is_empty());
        }
    }

    #[test]
    fn overlapping_supports_are_rejected() {
        let err = slopes_at_infinity(&running_matrix(), &[1], &[1, 2]).unwrap_err();
        assert_eq!(
            err,
            ProjectiveError::Slope(SlopeError::OverlappingSupports(1))
        );
    }
}
