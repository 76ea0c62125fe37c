//! Exact polyhedral primitives: rational linear programming with witnesses,
//! affine dimension, and normalized lattice volumes.
//!
//! The LP solver is a dense two-phase simplex over arbitrary-precision
//! rationals with Bland's anti-cycling rule, so feasibility answers are exact
//! and deterministic. Strict inequalities are handled by maximizing a shared
//! gap variable (capped at 1 to keep the program bounded) and demanding a
//! positive optimum.

use crate::exactmath::{rat_rank, rat_solve, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyhedralError {
    #[error("polytope has no points")]
    EmptyPolytope,
    #[error("point dimension mismatch")]
    DimensionMismatch,
    #[error("subtrahend is not contained in the minuend")]
    NotContained,
}

/// Relation of a single linear constraint `coeffs · x REL rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    /// coeffs · x ≤ rhs
    Le,
    /// coeffs · x = rhs
    Eq,
    /// coeffs · x < rhs (strict; realized by gap maximization)
    Lt,
}

/// A feasibility problem over free rational variables.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub num_vars: usize,
    pub constraints: Vec<(Vec<Rat>, Rel, Rat)>,
    /// Reserved for future use; feasibility queries leave this empty.
    pub objective: Option<Vec<Rat>>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rel: Rel, rhs: Rat) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity mismatch");
        self.constraints.push((coeffs, rel, rhs));
    }
}

enum SimplexResult {
    Infeasible,
    Optimal { x: Vec<Rat>, value: Rat },
}

/// Two-phase simplex for `max c·y  s.t.  A·y (≤|=) b`, all `y ≥ 0`.
/// The gap cap (see below) keeps every program we build bounded, so an
/// unbounded phase-2 ray cannot occur; it is asserted against.
fn simplex(
    num_vars: usize,
    rows: &[(Vec<Rat>, Rel, Rat)],
    objective: &[Rat],
) -> SimplexResult {
    assert!(rows.iter().all(|(c, r, _)| c.len() == num_vars && *r != Rel::Lt));
    // Standard form: append one slack per ≤ row, then one artificial per row.
    let num_slacks = rows.iter().filter(|(_, r, _)| *r == Rel::Le).count();
    let m = rows.len();
    let total = num_vars + num_slacks + m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut slack_idx = num_vars;
    for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); total + 1];
        row[..num_vars].clone_from_slice(coeffs);
        let mut rhs = rhs.clone();
        if *rel == Rel::Le {
            row[slack_idx] = Rat::one();
            slack_idx += 1;
        }
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        let art = num_vars + num_slacks + i;
        row[art] = Rat::one();
        row[total] = rhs;
        tab.push(row);
        basis.push(art);
    }

    let pivot = |tab: &mut Vec<Vec<Rat>>, obj: &mut Vec<Rat>, basis: &mut Vec<usize>, r: usize, c: usize| {
        let p = tab[r][c].clone();
        for v in tab[r].iter_mut() {
            *v = &*v / &p;
        }
        for i in 0..tab.len() {
            if i != r && !tab[i][c].is_zero() {
                let f = tab[i][c].clone();
                for j in 0..tab[i].len() {
                    let v = &tab[i][j] - &f * &tab[r][j];
                    tab[i][j] = v;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for j in 0..obj.len() {
                let v = &obj[j] - &f * &tab[r][j];
                obj[j] = v;
            }
        }
        basis[r] = c;
    };

    // The maintained objective row holds c_B·B⁻¹·A − c; a column with a
    // negative entry improves the maximization. Bland: lowest such index
    // enters; among minimal ratios the lowest basis index leaves.
    let run = |tab: &mut Vec<Vec<Rat>>,
               obj: &mut Vec<Rat>,
               basis: &mut Vec<usize>,
               allowed: usize| {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..tab.len() {
                if tab[i][enter].is_positive() {
                    let ratio = &tab[i][tab[i].len() - 1] / &tab[i][enter];
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br || (ratio == br && basis[i] < basis[bi]) {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let (r, _) = leave.expect("unbounded program; gap cap should prevent this");
            pivot(tab, obj, basis, r, enter);
        }
    };

    // Phase 1: maximize −Σ artificials.
    let mut obj1 = vec![Rat::zero(); total + 1];
    for a in num_vars + num_slacks..total {
        obj1[a] = Rat::one();
    }
    // Express the objective row in terms of the current (artificial) basis.
    for i in 0..m {
        for j in 0..=total {
            let v = &obj1[j] - &tab[i][j];
            obj1[j] = v;
        }
    }
    run(&mut tab, &mut obj1, &mut basis, total);
    if !obj1[total].is_zero() {
        return SimplexResult::Infeasible;
    }
    // Drive residual artificials out of the basis; drop redundant rows.
    let art_start = num_vars + num_slacks;
    let mut r = 0;
    while r < tab.len() {
        if basis[r] >= art_start {
            match (0..art_start).find(|&j| !tab[r][j].is_zero()) {
                Some(c) => pivot(&mut tab, &mut obj1, &mut basis, r, c),
                None => {
                    tab.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    // Phase 2 on the real objective, artificial columns frozen out.
    let mut obj2 = vec![Rat::zero(); total + 1];
    obj2[..num_vars.min(objective.len())].clone_from_slice(&objective[..num_vars.min(objective.len())]);
    for v in obj2.iter_mut() {
        *v = -v.clone();
    }
    for i in 0..tab.len() {
        let b = basis[i];
        if !obj2[b].is_zero() {
            let f = obj2[b].clone();
            for j in 0..=total {
                let v = &obj2[j] - &f * &tab[i][j];
                obj2[j] = v;
            }
        }
    }
    run(&mut tab, &mut obj2, &mut basis, art_start);
    let mut x = vec![Rat::zero(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            x[b] = tab[i][total].clone();
        }
    }
    let mut value = Rat::zero();
    for (xi, ci) in x.iter().zip(objective) {
        value += xi * ci;
    }
    SimplexResult::Optimal { x, value }
}

/// Exact feasibility with witness for a system of ≤ / = / < constraints over
/// free rational variables.
///
/// Strict rows share one gap variable g with 0 ≤ g ≤ 1; the solver maximizes
/// g and reports feasibility iff the optimum is positive. The returned point
/// satisfies every constraint (strict ones strictly). Deterministic: Bland's
/// rule with a fixed construction order. An empty system yields the origin.
pub fn lp_feasible_with_witness(problem: &LpProblem) -> Option<Vec<Rat>> {
    debug_assert!(problem.objective.is_none(), "feasibility queries carry no objective");
    let n = problem.num_vars;
    let has_strict = problem.constraints.iter().any(|(_, r, _)| *r == Rel::Lt);
    // Free variables are split as x = p − m with p, m ≥ 0; the gap (if any)
    // occupies the next standard-form slot.
    let gap = 2 * n;
    let std_vars = 2 * n + usize::from(has_strict);
    let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
    for (coeffs, rel, rhs) in &problem.constraints {
        let mut row = vec![Rat::zero(); std_vars];
        for (j, c) in coeffs.iter().enumerate() {
            row[2 * j] = c.clone();
            row[2 * j + 1] = -c.clone();
        }
        let rel = match rel {
            Rel::Lt => {
                row[gap] = Rat::one();
                Rel::Le
            }
            other => *other,
        };
        rows.push((row, rel, rhs.clone()));
    }
    let mut objective = vec![Rat::zero(); std_vars];
    if has_strict {
        let mut cap = vec![Rat::zero(); std_vars];
        cap[gap] = Rat::one();
        rows.push((cap, Rel::Le, Rat::one()));
        objective[gap] = Rat::one();
    }
    match simplex(std_vars, &rows, &objective) {
        SimplexResult::Infeasible => None,
        SimplexResult::Optimal { x, value } => {
            if has_strict && !value.is_positive() {
                return None;
            }
            let witness: Vec<Rat> = (0..n).map(|j| &x[2 * j] - &x[2 * j + 1]).collect();
            debug_assert!(satisfies(problem, &witness));
            Some(witness)
        }
    }
}

/// Checks a candidate point against every constraint of the problem.
pub fn satisfies(problem: &LpProblem, x: &[Rat]) -> bool {
    problem.constraints.iter().all(|(coeffs, rel, rhs)| {
        let lhs: Rat = coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        match rel {
            Rel::Le => lhs <= *rhs,
            Rel::Eq => lhs == *rhs,
            Rel::Lt => lhs < *rhs,
        }
    })
}

/// Dimension of the affine hull of a point set over Q.
/// Empty input yields −1; a single point yields 0.
pub fn affine_dim(points: &[Vec<Rat>]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rat_rank(&rows) as i64
}

/// Dimension of the linear span of a vector set over Q.
pub fn linear_span_dim(vectors: &[Vec<Rat>]) -> usize {
    rat_rank(vectors)
}

/// A convex polytope given by a finite generating point set in Q^k, measured
/// against the standard lattice Z^k. The point list must be nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    points: Vec<Vec<Rat>>,
    ambient: usize,
}

impl Polytope {
    pub fn new(points: Vec<Vec<Rat>>) -> Result<Self, PolyhedralError> {
        let Some(first) = points.first() else {
            return Err(PolyhedralError::EmptyPolytope);
        };
        let ambient = first.len();
        if points.iter().any(|p| p.len() != ambient) {
            return Err(PolyhedralError::DimensionMismatch);
        }
        Ok(Polytope { points, ambient })
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Normalized lattice volume: the unit simplex of Z^k has volume 1
    /// (equivalently k!·Euclidean volume). Exact; 0 when the hull is
    /// lower-dimensional; 1 for the (nonempty) 0-dimensional ambient.
    pub fn normalized_volume(&self) -> Rat {
        normalized_volume(&self.points)
    }
}

/// See [`Polytope::normalized_volume`]. Operates directly on a point list.
pub fn normalized_volume(points: &[Vec<Rat>]) -> Rat {
    if points.is_empty() {
        return Rat::zero();
    }
    let k = points[0].len();
    if k == 0 {
        return Rat::one();
    }
    // Deduplicate while preserving first-seen order (keeps everything
    // downstream deterministic).
    let mut uniq: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        assert_eq!(p.len(), k, "mixed ambient dimensions");
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    if affine_dim(&uniq) < k as i64 {
        return Rat::zero();
    }
    let simplices = triangulate(&uniq);
    let mut total = Rat::zero();
    for simplex in simplices {
        let base = &uniq[simplex[0]];
        let edges: Vec<Vec<Rat>> = simplex[1..]
            .iter()
            .map(|&i| uniq[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += rat_det(&edges).abs();
    }
    total
}

/// Exact determinant of a square rational matrix (Gaussian elimination).
fn rat_det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if !m[i][k].is_zero() {
                let f = &m[i][k] / &pivot;
                for j in k..n {
                    let v = &m[i][j] - &f * &m[k][j];
                    m[i][j] = v;
                }
            }
        }
    }
    det
}

/// Triangulates the convex hull of a full-dimensional point set by coning
/// from the first point over a triangulation of each facet that misses it.
/// Returns simplices as index tuples into the (deduplicated) input list.
/// Deterministic: facets are found by a lexicographic subset scan and stored
/// sorted.
fn triangulate(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let m = points[0].len();
    let idx: Vec<usize> = (0..points.len()).collect();
    triangulate_rec(points, &idx, m)
}

/// `active` indexes the points spanning the current (sub)polytope; `dim` is
/// its affine dimension, with coordinates still in the original ambient
/// space.
fn triangulate_rec(points: &[Vec<Rat>], active: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![vec![active[0]]];
    }
    if active.len() == dim + 1 {
        return vec![active.to_vec()];
    }
    let apex = active[0];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for facet in facets_of(points, active, dim) {
        if facet.contains(&apex) {
            continue;
        }
        // The facet has affine dimension dim−1 inside the hyperplane.
        for mut simplex in triangulate_rec(points, &facet, dim - 1) {
            simplex.insert(0, apex);
            if seen.insert(simplex.clone()) {
                out.push(simplex);
            }
        }
    }
    out
}

/// Enumerates the facets of conv(points[active]) (affine dimension `dim`):
/// every supporting hyperplane's full equality set, each sorted ascending.
fn facets_of(points: &[Vec<Rat>], active: &[usize], dim: usize) -> Vec<Vec<usize>> {
    // Work in affine coordinates w.r.t. a maximal independent subset so side
    // tests are honest even when the active set sits inside a subspace of
    // the ambient space.
    let base = &points[active[0]];
    let mut frame: Vec<Vec<Rat>> = Vec::new();
    let mut frame_rows: Vec<Vec<Rat>> = Vec::new();
    for &i in &active[1..] {
        let v: Vec<Rat> = points[i].iter().zip(base).map(|(a, b)| a - b).collect();
        frame_rows.push(v.clone());
        if rat_rank(&frame_rows) > frame.len() {
            frame.push(v);
        } else {
            frame_rows.pop();
        }
        if frame.len() == dim {
            break;
        }
    }
    assert_eq!(frame.len(), dim, "active set does not span the stated dimension");
    // coords(p): solution of frameᵀ·c = p − base.
    let frame_t: Vec<Vec<Rat>> = (0..points[0].len())
        .map(|r| frame.iter().map(|v| v[r].clone()).collect())
        .collect();
    let coords: Vec<Vec<Rat>> = active
        .iter()
        .map(|&i| {
            let rhs: Vec<Rat> = points[i].iter().zip(base).map(|(a, b)| a - b).collect();
            rat_solve(&frame_t, &rhs).expect("active point outside its own affine hull")
        })
        .collect();
    let mut facets: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let subsets = k_subsets(active.len(), dim);
    'subset: for s in subsets {
        // Normal of the hyperplane through the chosen dim points (in local
        // coordinates): kernel of the (dim−1)×dim edge matrix.
        let base_c = &coords[s[0]];
        let edges: Vec<Vec<Rat>> = s[1..]
            .iter()
            .map(|&i| coords[i].iter().zip(base_c).map(|(a, b)| a - b).collect())
            .collect();
        if rat_rank(&edges) + 1 != dim {
            continue;
        }
        let normal = match kernel_vector(&edges, dim) {
            Some(v) => v,
            None => continue,
        };
        let offset: Rat = normal.iter().zip(base_c).map(|(a, b)| a * b).sum();
        let mut sign = 0i8;
        let mut eq_set: Vec<usize> = Vec::new();
        for (local, c) in coords.iter().enumerate() {
            let val: Rat = normal.iter().zip(c).map(|(a, b)| a * b).sum();
            match val.cmp(&offset) {
                std::cmp::Ordering::Equal => eq_set.push(active[local]),
                std::cmp::Ordering::Less => {
                    if sign > 0 {
                        continue 'subset;
                    }
                    sign = -1;
                }
                std::cmp::Ordering::Greater => {
                    if sign < 0 {
                        continue 'subset;
                    }
                    sign = 1;
                }
            }
        }
        if sign != 0 {
            facets.insert(eq_set);
        }
    }
    facets.into_iter().collect()
}

/// One nonzero kernel vector of a (dim−1)×dim rational matrix of rank dim−1.
fn kernel_vector(rows: &[Vec<Rat>], dim: usize) -> Option<Vec<Rat>> {
    // Solve rows·v = 0 by trying each unit assignment for the free column.
    for free in 0..dim {
        let reduced: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != free)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = rows.iter().map(|r| -r[free].clone()).collect();
        if rat_rank(&reduced) == dim - 1 {
            if let Some(sol) = rat_solve(&reduced, &rhs) {
                let mut v = Vec::with_capacity(dim);
                let mut it = sol.into_iter();
                for j in 0..dim {
                    if j == free {
                        v.push(Rat::one());
                    } else {
                        v.push(it.next().unwrap());
                    }
                }
                return Some(v);
            }
        }
    }
    None
}

/// All k-subsets of {0..n−1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Exact membership of a point in the convex hull of the given generators.
pub fn in_convex_hull(point: &[Rat], generators: &[Vec<Rat>]) -> bool {
    let n = generators.len();
    if n == 0 {
        return false;
    }
    let k = point.len();
    let mut lp = LpProblem::new(n);
    for row in 0..k {
        let coeffs: Vec<Rat> = generators.iter().map(|g| g[row].clone()).collect();
        lp.push(coeffs, Rel::Eq, point[row].clone());
    }
    lp.push(vec![Rat::one(); n], Rel::Eq, Rat::one());
    for i in 0..n {
        let mut coeffs = vec![Rat::zero(); n];
        coeffs[i] = -Rat::one();
        lp.push(coeffs, Rel::Le, Rat::zero());
    }
    lp_feasible_with_witness(&lp).is_some()
}

/// Normalized volume of the set difference P ∖ Q for Q ⊆ P, computed as
/// vol(P) − vol(Q). The containment precondition is verified by exact LP
/// membership of each generator of Q in conv(P).
pub fn volume_difference(p: &Polytope, q: &Polytope) -> Result<Rat, PolyhedralError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(PolyhedralError::DimensionMismatch);
    }
    for point in q.points() {
        if !in_convex_hull(point, p.points()) {
            return Err(PolyhedralError::NotContained);
        }
    }
    Ok(p.normalized_volume() - q.normalized_volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn lp_equality_pinned_witness() {
        // h·(0,3) = 1, h·(4,1) = 0, h·(1,0) ≤ 1, h·(1,2) ≤ 1 → h = (−1/12, 1/3).
        let mut lp = LpProblem::new(2);
        lp.push(pt(&[0, 3]), Rel::Eq, rat_int(1));
        lp.push(pt(&[4, 1]), Rel::Eq, rat_int(0));
        lp.push(pt(&[1, 0]), Rel::Le, rat_int(1));
        lp.push(pt(&[1, 2]), Rel::Le, rat_int(1));
        let w = lp_feasible_with_witness(&lp).unwrap();
        assert_eq!(w, vec![rat(-1, 12), rat(1, 3)]);
    }

    #[test]
    fn lp_infeasible_band() {
        // x ≤ 0 together with x ≥ 1.
        let mut lp = LpProblem::new(1);
        lp.push(pt(&[1]), Rel::Le, rat_int(0));
        lp.push(pt(&[-1]), Rel::Le, rat_int(-1));
        assert!(lp_feasible_with_witness(&lp).is_none());
    }

    #[test]
    fn lp_empty_system_yields_origin() {
        let lp = LpProblem::new(3);
        assert_eq!(lp_feasible_with_witness(&lp).unwrap(), pt(&[0, 0, 0]));
    }

    #[test]
    fn lp_strict_constraints() {
        // 0 < x < 1 is feasible; x < 0 ∧ −x < 0 is not.
        let mut lp = LpProblem::new(1);
        lp.push(pt(&[1]), Rel::Lt, rat_int(1));
        lp.push(pt(&[-1]), Rel::Lt, rat_int(0));
        let w = lp_feasible_with_witness(&lp).unwrap();
        assert!(w[0] > rat_int(0) && w[0] < rat_int(1));

        let mut lp = LpProblem::new(1);
        lp.push(pt(&[1]), Rel::Lt, rat_int(0));
        lp.push(pt(&[-1]), Rel::Lt, rat_int(0));
        assert!(lp_feasible_with_witness(&lp).is_none());
    }

    #[test]
    fn lp_strict_unbounded_gap_is_fine() {
        // x < 0 alone: the gap would be unbounded without the cap.
        let mut lp = LpProblem::new(1);
        lp.push(pt(&[1]), Rel::Lt, rat_int(0));
        let w = lp_feasible_with_witness(&lp).unwrap();
        assert!(w[0].is_negative());
    }

    #[test]
    fn lp_witness_satisfies_all_relations() {
        let mut lp = LpProblem::new(2);
        lp.push(pt(&[1, 1]), Rel::Eq, rat_int(2));
        lp.push(pt(&[1, -1]), Rel::Lt, rat_int(1));
        lp.push(pt(&[0, 1]), Rel::Le, rat_int(5));
        let w = lp_feasible_with_witness(&lp).unwrap();
        assert!(satisfies(&lp, &w));
    }

    #[test]
    fn affine_and_linear_dims() {
        assert_eq!(affine_dim(&[pt(&[0, 3]), pt(&[4, 1])]), 1);
        assert_eq!(affine_dim(&[pt(&[7, 7])]), 0);
        assert_eq!(affine_dim(&[]), -1);
        assert_eq!(affine_dim(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]), 2);
        assert_eq!(
            linear_span_dim(&[pt(&[0, 3]), pt(&[1, 0]), pt(&[1, 2]), pt(&[4, 1])]),
            2
        );
        assert_eq!(linear_span_dim(&[pt(&[1, 2]), pt(&[2, 4])]), 1);
    }

    #[test]
    fn volume_of_unit_simplices() {
        assert_eq!(normalized_volume(&[pt(&[0]), pt(&[1])]), rat_int(1));
        assert_eq!(
            normalized_volume(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]),
            rat_int(1)
        );
        assert_eq!(
            normalized_volume(&[pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]),
            rat_int(1)
        );
    }

    #[test]
    fn volume_of_running_polytope_is_13() {
        // conv{0, (0,3), (1,0), (1,2), (4,1)}: normalized volume 13
        // (shoelace on the hull (0,0),(1,0),(4,1),(0,3) gives area 13/2).
        let v = normalized_volume(&[pt(&[0, 0]), pt(&[0, 3]), pt(&[1, 0]), pt(&[1, 2]), pt(&[4, 1])]);
        assert_eq!(v, rat_int(13));
    }

    #[test]
    fn volume_degenerate_and_zero_dim() {
        // Lower-dimensional hulls have volume 0.
        assert_eq!(normalized_volume(&[pt(&[0, 0]), pt(&[2, 4])]), rat_int(0));
        assert_eq!(normalized_volume(&[pt(&[1, 1])]), rat_int(0));
        // Nonempty polytope in Z⁰ is the unit simplex of the zero lattice.
        assert_eq!(normalized_volume(&[vec![]]), rat_int(1));
        assert_eq!(normalized_volume(&[]), rat_int(0));
    }

    #[test]
    fn volume_unit_square() {
        let v = normalized_volume(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]);
        assert_eq!(v, rat_int(2));
    }

    #[test]
    fn volume_translation_invariance() {
        let a = normalized_volume(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[4, 1]), pt(&[0, 3])]);
        let b = normalized_volume(&[pt(&[5, -2]), pt(&[6, -2]), pt(&[9, -1]), pt(&[5, 1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn volume_unimodular_invariance() {
        // g = [[1,1],[0,1]] ∈ GL(2,Z) applied to the running polytope.
        let orig = [pt(&[0, 0]), pt(&[1, 0]), pt(&[4, 1]), pt(&[0, 3])];
        let img: Vec<Vec<Rat>> = orig
            .iter()
            .map(|p| vec![&p[0] + &p[1], p[1].clone()])
            .collect();
        assert_eq!(normalized_volume(&orig), normalized_volume(&img));
    }

    #[test]
    fn volume_difference_examples() {
        // Segment minus endpoint: 1 − 0 = 1.
        let p = Polytope::new(vec![pt(&[0]), pt(&[1])]).unwrap();
        let q = Polytope::new(vec![pt(&[1])]).unwrap();
        assert_eq!(volume_difference(&p, &q).unwrap(), rat_int(1));
        // Equal polytopes: 0.
        assert_eq!(volume_difference(&p, &p).unwrap(), rat_int(0));
        // Not contained.
        let outside = Polytope::new(vec![pt(&[2])]).unwrap();
        assert_eq!(
            volume_difference(&p, &outside).unwrap_err(),
            PolyhedralError::NotContained
        );
    }

    #[test]
    fn hull_membership() {
        let gens = [pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2])];
        assert!(in_convex_hull(&[rat(1, 2), rat(1, 2)], &gens));
        assert!(in_convex_hull(&pt(&[2, 0]), &gens));
        assert!(!in_convex_hull(&pt(&[2, 1]), &gens));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(k_subsets(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
