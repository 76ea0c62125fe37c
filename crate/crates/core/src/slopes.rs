//! Parametric weight sweeps: slope detection along coordinate subspaces.
//!
//! A [`SlopeFamily`] fixes base weight 1 on every column and lets a subset
//! vary with a parameter s ≥ 0: weight 1 + s on the vanishing set 𝔙₀ and
//! 1 − s on the at-infinity set 𝔙∞. The umbrella is piecewise constant in
//! s; the parameters s* where it changes are the reciprocals of the slopes
//! of the associated hypergeometric system along the coordinate subspace.
//!
//! The sweep is exact: a finite candidate superset of break parameters is
//! enumerated as roots of affine-in-s incidence equations, and the umbrella
//! is compared on midpoint samples of consecutive candidate intervals.

use crate::exactmath::{rat_rank, rat_solve, Rat};
use crate::polyhedral::k_subsets;
use crate::umbrella::{
    compute_umbrella, is_pyramid_at, umbrella_facet_sets, ToricMatrix, UmbrellaError,
};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SlopeError {
    #[error("column index {0} lies in both varying sets")]
    OverlappingSupports(usize),
    #[error("column index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("umbrella not constant between candidates near s = {sample}")]
    IntervalNotConstant { sample: String },
    #[error(transparent)]
    Umbrella(#[from] UmbrellaError),
}

/// A one-parameter weight family w_j(s) = 1 + s·v_j with v_j = +1 on 𝔙₀,
/// −1 on 𝔙∞, and 0 elsewhere. The two varying sets must be disjoint.
#[derive(Debug, Clone)]
pub struct SlopeFamily {
    matrix: ToricMatrix,
    v0: BTreeSet<usize>,
    vinf: BTreeSet<usize>,
}

impl SlopeFamily {
    pub fn new(matrix: ToricMatrix, v0: &[usize], vinf: &[usize]) -> Result<Self, SlopeError> {
        let n = matrix.num_columns();
        let v0: BTreeSet<usize> = v0.iter().copied().collect();
        let vinf: BTreeSet<usize> = vinf.iter().copied().collect();
        if let Some(&j) = v0.union(&vinf).find(|&&j| j >= n) {
            return Err(SlopeError::IndexOutOfRange(j));
        }
        if let Some(&j) = v0.intersection(&vinf).next() {
            return Err(SlopeError::OverlappingSupports(j));
        }
        Ok(SlopeFamily { matrix, v0, vinf })
    }

    pub fn matrix(&self) -> &ToricMatrix {
        &self.matrix
    }

    pub fn v0(&self) -> &BTreeSet<usize> {
        &self.v0
    }

    pub fn vinf(&self) -> &BTreeSet<usize> {
        &self.vinf
    }

    /// The increment v_j ∈ {+1, −1, 0}.
    pub fn increment(&self, j: usize) -> i64 {
        if self.v0.contains(&j) {
            1
        } else if self.vinf.contains(&j) {
            -1
        } else {
            0
        }
    }

    /// The weight vector at parameter s.
    pub fn weights_at(&self, s: &Rat) -> Vec<Rat> {
        (0..self.matrix.num_columns())
            .map(|j| match self.increment(j) {
                1 => Rat::one() + s,
                -1 => Rat::one() - s,
                _ => Rat::one(),
            })
            .collect()
    }

    /// Whether any weight actually varies with s.
    pub fn is_varying(&self) -> bool {
        !self.v0.is_empty() || !self.vinf.is_empty()
    }
}

/// How interval umbrellas are compared when locating jumps. Facet sets
/// determine the full umbrella, so both modes report the same critical
/// values; the facet mode is cheaper, the full mode also records face lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpDetection {
    FacetSets,
    FullUmbrella,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub detection: JumpDetection,
    /// Samples per interval (≥ 1). With more than one, the sweep verifies
    /// that the umbrella is constant across the whole interval and errors
    /// otherwise (an internal-consistency failure of the candidate set).
    pub interior_samples: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            detection: JumpDetection::FullUmbrella,
            interior_samples: 1,
        }
    }
}

/// One open interval between consecutive candidates, with the umbrella
/// evaluated at an interior sample. `upper` is `None` for the final
/// unbounded interval. `faces` is populated in full-umbrella mode (and holds
/// the pyramid-filtered face sets in filtered reports).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSnapshot {
    pub lower: Rat,
    pub upper: Option<Rat>,
    pub sample: Rat,
    pub facets: BTreeSet<Vec<usize>>,
    pub faces: Option<BTreeSet<Vec<usize>>>,
}

impl IntervalSnapshot {
    /// The comparison key used for jump detection.
    fn key(&self) -> &BTreeSet<Vec<usize>> {
        self.faces.as_ref().unwrap_or(&self.facets)
    }
}

/// A candidate parameter with the umbrella facets evaluated exactly at it
/// and the verdict whether the adjacent intervals differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRecord {
    pub s: Rat,
    /// The slope value 1/s associated with this parameter.
    pub slope: Rat,
    pub jump: bool,
    pub facets_at: BTreeSet<Vec<usize>>,
}

/// Result of a parametric sweep.
#[derive(Debug, Clone)]
pub struct SlopeReport {
    pub candidates: Vec<CandidateRecord>,
    pub intervals: Vec<IntervalSnapshot>,
    /// Parameters s* where the umbrella jumps, ascending.
    pub critical_values: Vec<Rat>,
    /// Slope values 1/s*, ascending.
    pub slopes: Vec<Rat>,
    /// Set when the family involves variables at infinity; the slope list
    /// then rests on a conjectural description.
    pub conjectural: bool,
    /// Set when jumps were recomputed on the pyramid-filtered complexes.
    pub filtered: bool,
}

/// Finite superset of all parameters where the umbrella can change: for
/// every linearly independent d-subset σ of columns, the pinned hyperplane
/// h(s) (solving h·a_j = w_j(s) on σ) meets the weighted point of another
/// column where h(s)·a_i = w_i(s); both sides are affine in s, so each pair
/// (σ, i) contributes at most one rational root. Positive roots, deduped,
/// sorted.
pub fn candidate_critical_values(family: &SlopeFamily) -> Vec<Rat> {
    if !family.is_varying() {
        return Vec::new();
    }
    let a = family.matrix();
    let d = a.dim();
    let n = a.num_columns();
    let w0 = family.weights_at(&Rat::zero());
    let w1 = family.weights_at(&Rat::one());
    let mut roots: BTreeSet<Rat> = BTreeSet::new();
    for subset in k_subsets(n, d) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&j| a.column_rat(j)).collect();
        if rat_rank(&rows) != d {
            continue;
        }
        let rhs0: Vec<Rat> = subset.iter().map(|&j| w0[j].clone()).collect();
        let rhs1: Vec<Rat> = subset.iter().map(|&j| w1[j].clone()).collect();
        let h0 = rat_solve(&rows, &rhs0).expect("pinned system solvable");
        let h1 = rat_solve(&rows, &rhs1).expect("pinned system solvable");
        for i in 0..n {
            if subset.contains(&i) {
                continue;
            }
            let col = a.column_rat(i);
            let p0: Rat = col.iter().zip(&h0).map(|(c, x)| c * x).sum();
            let p1: Rat = col.iter().zip(&h1).map(|(c, x)| c * x).sum();
            // p0 + s(p1−p0) = w_i(0) + s(w_i(1)−w_i(0))
            let denom = &p1 - &p0 - (&w1[i] - &w0[i]);
            if denom.is_zero() {
                continue;
            }
            let s = (&w0[i] - &p0) / denom;
            if s.is_positive() {
                roots.insert(s);
            }
        }
    }
    roots.into_iter().collect()
}

/// Facet member sets plus (with full detection) all face member sets.
type SampleKey = (BTreeSet<Vec<usize>>, Option<BTreeSet<Vec<usize>>>);

/// Evaluates one sample: facet member sets plus (optionally) all face
/// member sets, with an optional pyramid filter applied to the face sets.
fn snapshot_key(
    family: &SlopeFamily,
    s: &Rat,
    detection: JumpDetection,
    filter_vinf: bool,
) -> Result<SampleKey, SlopeError> {
    let weights = family.weights_at(s);
    let facets: BTreeSet<Vec<usize>> = umbrella_facet_sets(family.matrix(), &weights)?
        .into_keys()
        .collect();
    let faces = match detection {
        JumpDetection::FacetSets => None,
        JumpDetection::FullUmbrella => {
            let u = compute_umbrella(family.matrix(), &weights)?;
            let kept: BTreeSet<Vec<usize>> = u
                .faces()
                .iter()
                .map(|f| f.members.clone())
                .filter(|members| {
                    !filter_vinf
                        || !members
                            .iter()
                            .any(|&i| family.vinf().contains(&i)
                                && is_pyramid_at(family.matrix(), members, i))
                })
                .collect();
            Some(kept)
        }
    };
    Ok((facets, faces))
}

fn sweep(family: &SlopeFamily, options: &SweepOptions, filter_vinf: bool) -> Result<SlopeReport, SlopeError> {
    let candidates = candidate_critical_values(family);
    let samples_per_interval = options.interior_samples.max(1);
    // Interval bounds: (0, c_1), (c_1, c_2), …, (c_k, ∞).
    let mut intervals: Vec<IntervalSnapshot> = Vec::new();
    for i in 0..=candidates.len() {
        let lower = if i == 0 { Rat::zero() } else { candidates[i - 1].clone() };
        let upper = candidates.get(i).cloned();
        let sample_at = |k: usize| -> Rat {
            // k-th of m evenly spaced interior points, or lower + k beyond
            // the last candidate.
            let k = Rat::from_integer((k as i64).into());
            match &upper {
                Some(hi) => {
                    let m = Rat::from_integer((samples_per_interval as i64 + 1).into());
                    &lower + (hi - &lower) * k / m
                }
                None => &lower + k,
            }
        };
        let first = sample_at(1);
        let (facets, faces) = snapshot_key(family, &first, options.detection, filter_vinf)?;
        let snap = IntervalSnapshot {
            lower: lower.clone(),
            upper: upper.clone(),
            sample: first,
            facets,
            faces,
        };
        for k in 2..=samples_per_interval {
            let s = sample_at(k);
            let (facets_k, faces_k) = snapshot_key(family, &s, options.detection, filter_vinf)?;
            if facets_k != snap.facets || faces_k != snap.faces {
                return Err(SlopeError::IntervalNotConstant {
                    sample: s.to_string(),
                });
            }
        }
        intervals.push(snap);
    }
    let mut records: Vec<CandidateRecord> = Vec::new();
    let mut critical_values: Vec<Rat> = Vec::new();
    let mut slopes: Vec<Rat> = Vec::new();
    for (i, s) in candidates.iter().enumerate() {
        let weights = family.weights_at(s);
        let facets_at: BTreeSet<Vec<usize>> = umbrella_facet_sets(family.matrix(), &weights)?
            .into_keys()
            .collect();
        let jump = intervals[i].key() != intervals[i + 1].key();
        let slope = Rat::one() / s;
        if jump {
            critical_values.push(s.clone());
            slopes.push(slope.clone());
        }
        records.push(CandidateRecord {
            s: s.clone(),
            slope,
            jump,
            facets_at,
        });
    }
    slopes.sort();
    Ok(SlopeReport {
        candidates: records,
        intervals,
        critical_values,
        slopes,
        conjectural: !family.vinf().is_empty(),
        filtered: filter_vinf,
    })
}

/// Full sweep with explicit options.
pub fn slopes_along_opts(
    family: &SlopeFamily,
    options: &SweepOptions,
) -> Result<SlopeReport, SlopeError> {
    sweep(family, options, false)
}

/// Sweeps the family and reports every parameter where the umbrella jumps,
/// together with the slope values 1/s*. Full-umbrella comparison.
pub fn slopes_along(family: &SlopeFamily) -> Result<SlopeReport, SlopeError> {
    slopes_along_opts(family, &SweepOptions::default())
}

/// Recomputes the jump detection on the pyramid-filtered complexes: faces
/// that are pyramids with a vertex in 𝔙∞ are removed before comparing
/// intervals. This implements a conjectural refinement (components carried
/// only by such pyramids cannot meet the subspace at infinity); the output
/// is always flagged conjectural. With empty 𝔙∞ the report is returned
/// unchanged.
pub fn filter_pyramids(
    report: &SlopeReport,
    family: &SlopeFamily,
) -> Result<SlopeReport, SlopeError> {
    if family.vinf().is_empty() {
        return Ok(report.clone());
    }
    let options = SweepOptions {
        detection: JumpDetection::FullUmbrella,
        interior_samples: 1,
    };
    let mut filtered = sweep(family, &options, true)?;
    filtered.conjectural = true;
    Ok(filtered)
}

/// Memoized check that a sweep with facet-set detection finds the same
/// critical values as the full-umbrella sweep (they must, since facet sets
/// determine the umbrella). Exposed for cross-validation in test suites.
pub fn detections_agree(family: &SlopeFamily) -> Result<bool, SlopeError> {
    let facet_report = slopes_along_opts(
        family,
        &SweepOptions {
            detection: JumpDetection::FacetSets,
            interior_samples: 1,
        },
    )?;
    let full_report = slopes_along(family)?;
    Ok(facet_report.critical_values == full_report.critical_values)
}

/// Caches facet sweeps keyed by the varying sets; useful when scanning many
/// families over one matrix.
pub struct SweepCache<'m> {
    matrix: &'m ToricMatrix,
    results: HashMap<(Vec<usize>, Vec<usize>), Vec<Rat>>,
}

impl<'m> SweepCache<'m> {
    pub fn new(matrix: &'m ToricMatrix) -> Self {
        SweepCache {
            matrix,
            results: HashMap::new(),
        }
    }

    /// Critical values (facet detection) for the family (v0, vinf).
    pub fn critical_values(&mut self, v0: &[usize], vinf: &[usize]) -> Result<Vec<Rat>, SlopeError> {
        let key = (v0.to_vec(), vinf.to_vec());
        if let Some(hit) = self.results.get(&key) {
            return Ok(hit.clone());
        }
        let family = SlopeFamily::new(self.matrix.clone(), v0, vinf)?;
        let report = slopes_along_opts(
            &family,
            &SweepOptions {
                detection: JumpDetection::FacetSets,
                interior_samples: 1,
            },
        )?;
        self.results.insert(key, report.critical_values.clone());
        Ok(report.critical_values)
    }
}
