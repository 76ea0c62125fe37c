//! Binomial ideal engine: the toric ideal of a column configuration, weighted
//! Gröbner bases with arbitrary-sign weights (via a homogenizing variable),
//! initial ideals, radical membership tests for monomials, and verification
//! of the component structure predicted by the umbrella.
//!
//! Everything here works with pure-difference binomials ∂^{u_+} − ∂^{u_−} and
//! monomials; coefficients never leave {0, ±1}, so the arithmetic is purely
//! combinatorial. All term orders used for computation are genuine well-orders
//! (weight rows are positive, or a total-degree row comes first), which makes
//! every reduction terminate unconditionally.

use crate::exactmath::{integer_kernel, Int, Rat};
use crate::umbrella::{umbrella_facet_sets, ToricMatrix, Umbrella, UmbrellaError};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("column index {0} out of range")]
    ColumnOutOfRange(usize),
    #[error("radical membership undecided within the power budget {budget}")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Umbrella(#[from] UmbrellaError),
}

// ---------------------------------------------------------------------------
// Monomials and binomials
// ---------------------------------------------------------------------------

/// A monomial ∂^u with nonnegative integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial { exponents }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exponents: vec![0; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().sum()
    }

    /// Integer weight Σ w_j u_j.
    pub fn weight(&self, w: &[Int]) -> Int {
        self.exponents
            .iter()
            .zip(w)
            .map(|(&e, c)| c * Int::from(e))
            .sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// self · other.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// self / other; requires divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn pow(&self, k: u64) -> Monomial {
        Monomial::new(self.exponents.iter().map(|&e| e * k).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_vars())
            .filter(|&j| self.exponents[j] > 0)
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (j, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "∂_{}", j + 1)?,
                _ => write!(f, "∂_{}^{}", j + 1, e)?,
            }
        }
        Ok(())
    }
}

/// A pure-difference binomial ∂^{u_+} − ∂^{u_−} with coprime sides
/// (componentwise min(u_+, u_−) = 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    /// The binomial □_u of an integer vector; `None` for u = 0.
    pub fn from_vector(u: &[Int]) -> Option<Binomial> {
        if u.iter().all(|c| c.is_zero()) {
            return None;
        }
        let plus: Vec<u64> = u.iter().map(|c| int_to_exp(c.max(&Int::zero()))).collect();
        let minus: Vec<u64> = u
            .iter()
            .map(|c| int_to_exp(&(-c).max(Int::zero())))
            .collect();
        Some(Binomial {
            plus: Monomial::new(plus),
            minus: Monomial::new(minus),
        })
    }

    /// The exponent vector u_+ − u_−.
    pub fn vector(&self) -> Vec<Int> {
        self.plus
            .exponents
            .iter()
            .zip(&self.minus.exponents)
            .map(|(a, b)| Int::from(*a) - Int::from(*b))
            .collect()
    }

    pub fn num_vars(&self) -> usize {
        self.plus.num_vars()
    }

    /// A·u_+ (= A·u_− for toric members), as a column vector.
    pub fn a_degree(&self, columns: &[Vec<Int>]) -> Vec<Int> {
        let d = columns.first().map_or(0, |c| c.len());
        let mut deg = vec![Int::zero(); d];
        for (j, col) in columns.iter().enumerate() {
            for (i, entry) in col.iter().enumerate() {
                deg[i] += entry * Int::from(self.plus.exponents[j]);
            }
        }
        deg
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

fn int_to_exp(c: &Int) -> u64 {
    u64::try_from(c).expect("exponent fits in u64 at desk scale")
}

// ---------------------------------------------------------------------------
// Term orders
// ---------------------------------------------------------------------------

/// A matrix-style term order: integer weight rows compared first, then
/// (optionally) total degree, then reverse lexicographic comparison reading
/// the variables in `revlex_perm` order with the last entry cheapest.
#[derive(Debug, Clone)]
pub struct TermOrder {
    weight_rows: Vec<Vec<Int>>,
    graded: bool,
    revlex_perm: Vec<usize>,
}

impl TermOrder {
    /// Degree then reverse lexicographic: the reference tie-break order.
    pub fn canonical(num_vars: usize) -> TermOrder {
        TermOrder {
            weight_rows: Vec::new(),
            graded: true,
            revlex_perm: (0..num_vars).collect(),
        }
    }

    /// Weight first, then canonical. A genuine well-order only for
    /// componentwise nonnegative weights.
    pub fn weighted(weights: Vec<Int>) -> TermOrder {
        let n = weights.len();
        TermOrder {
            weight_rows: vec![weights],
            graded: true,
            revlex_perm: (0..n).collect(),
        }
    }

    /// Grading first, then reverse lexicographic with variable `cheap`
    /// cheapest: the order used to saturate at ∂_cheap.
    fn saturating(grading: Vec<Int>, cheap: usize) -> TermOrder {
        let n = grading.len();
        let mut perm: Vec<usize> = (0..n).filter(|&j| j != cheap).collect();
        perm.push(cheap);
        TermOrder {
            weight_rows: vec![grading],
            graded: false,
            revlex_perm: perm,
        }
    }

    /// The order on the homogenized ring (variable 0 is the homogenizing
    /// one): total degree, then the weight (0, L), then reverse
    /// lexicographic with variable 0 cheapest. Restricted to a fixed total
    /// degree this induces (L, degree, revlex) on the dehomogenization.
    fn homogenized(weights: &[Int]) -> TermOrder {
        let n = weights.len();
        let mut row = vec![Int::zero()];
        row.extend(weights.iter().cloned());
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.push(0);
        TermOrder {
            weight_rows: vec![vec![Int::one(); n + 1], row],
            graded: false,
            revlex_perm: perm,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for row in &self.weight_rows {
            match a.weight(row).cmp(&b.weight(row)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        if self.graded {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        for &j in self.revlex_perm.iter().rev() {
            match a.exponents[j].cmp(&b.exponents[j]) {
                Ordering::Equal => {}
                // Smaller exponent late in the reading order wins.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

// ---------------------------------------------------------------------------
// Reduction engine
// ---------------------------------------------------------------------------

/// Result of a full reduction: coefficients stay in {0, ±1}, so every
/// normal form is zero, a monomial, or a difference of two monomials
/// (stored larger-first; the global sign is irrelevant to membership).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum NormalForm {
    Zero,
    Monomial(Monomial),
    Binomial(Monomial, Monomial),
}

/// A reducer: lead monomial plus an optional rewrite target. `None` means
/// the generator is a monomial, so reduction deletes the term.
#[derive(Debug, Clone)]
pub(crate) struct Reducer {
    pub lead: Monomial,
    pub tail: Option<Monomial>,
}

/// Strategy for picking among several applicable reducers (normal forms
/// modulo a Gröbner basis do not depend on the choice; tested).
#[derive(Debug, Clone, Copy)]
pub(crate) enum ReducerChoice {
    First,
    // Constructed only by the order-independence tests.
    #[allow(dead_code)]
    Seeded(u64),
}

fn pick_reducer(
    term: &Monomial,
    reducers: &[Reducer],
    choice: ReducerChoice,
    state: &mut u64,
) -> Option<usize> {
    let applicable: Vec<usize> = (0..reducers.len())
        .filter(|&i| reducers[i].lead.divides(term))
        .collect();
    if applicable.is_empty() {
        return None;
    }
    match choice {
        ReducerChoice::First => Some(applicable[0]),
        ReducerChoice::Seeded(_) => {
            // Small deterministic linear-congruential stream; anything
            // reproducible works here.
            *state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            Some(applicable[(*state >> 33) as usize % applicable.len()])
        }
    }
}

/// Fully reduces a one- or two-term polynomial modulo `reducers`.
pub(crate) fn normal_form(
    poly: NormalForm,
    reducers: &[Reducer],
    order: &TermOrder,
    choice: ReducerChoice,
) -> NormalForm {
    let mut state = match choice {
        ReducerChoice::Seeded(s) => s,
        ReducerChoice::First => 0,
    };
    // Terms currently in the polynomial (at most two, with opposite signs).
    let mut terms: Vec<Monomial> = match poly {
        NormalForm::Zero => Vec::new(),
        NormalForm::Monomial(m) => vec![m],
        NormalForm::Binomial(a, b) => vec![a, b],
    };
    'outer: loop {
        if terms.len() == 2 && terms[0] == terms[1] {
            return NormalForm::Zero;
        }
        for t in 0..terms.len() {
            if let Some(i) = pick_reducer(&terms[t], reducers, choice, &mut state) {
                match &reducers[i].tail {
                    None => {
                        terms.remove(t);
                    }
                    Some(tail) => {
                        terms[t] = terms[t].div(&reducers[i].lead).mul(tail);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    match terms.len() {
        0 => NormalForm::Zero,
        1 => NormalForm::Monomial(terms.pop().unwrap()),
        _ => {
            let b = terms.pop().unwrap();
            let a = terms.pop().unwrap();
            match order.compare(&a, &b) {
                Ordering::Less => NormalForm::Binomial(b, a),
                _ => NormalForm::Binomial(a, b),
            }
        }
    }
}

/// An oriented binomial: lead − tail with lead ≻ tail in the active order.
type Oriented = (Monomial, Monomial);

fn reducers_of(basis: &[Oriented]) -> Vec<Reducer> {
    basis
        .iter()
        .map(|(lead, tail)| Reducer {
            lead: lead.clone(),
            tail: Some(tail.clone()),
        })
        .collect()
}

/// Buchberger's algorithm for pure-difference binomials, followed by
/// minimalization and full tail reduction: returns the reduced Gröbner
/// basis, canonically sorted. The order must be a well-order on every
/// monomial actually encountered (all orders constructed in this module
/// are).
pub(crate) fn buchberger(gens: &[Oriented], order: &TermOrder) -> Vec<Oriented> {
    let mut basis: Vec<Oriented> = Vec::new();
    for (p, q) in gens {
        match order.compare(p, q) {
            Ordering::Equal => {}
            Ordering::Greater => basis.push((p.clone(), q.clone())),
            Ordering::Less => basis.push((q.clone(), p.clone())),
        }
    }
    basis.sort_by(|x, y| order.compare(&x.0, &y.0).then_with(|| order.compare(&x.1, &y.1)));
    basis.dedup();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..basis.len() {
        for j in 0..i {
            queue.push_back((j, i));
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        let (fl, ft) = &basis[i];
        let (gl, gt) = &basis[j];
        let gamma = fl.lcm(gl);
        // Product criterion: disjoint leads yield S-pairs that reduce to 0.
        if gamma == fl.mul(gl) {
            continue;
        }
        // S(f, g) = (γ/gl)·gt − (γ/fl)·ft.
        let a = gamma.div(gl).mul(gt);
        let b = gamma.div(fl).mul(ft);
        let reduced = normal_form(
            NormalForm::Binomial(a, b),
            &reducers_of(&basis),
            order,
            ReducerChoice::First,
        );
        match reduced {
            NormalForm::Zero => {}
            NormalForm::Monomial(_) => {
                unreachable!("pure-difference binomials never reduce to a monomial")
            }
            NormalForm::Binomial(lead, tail) => {
                let k = basis.len();
                basis.push((lead, tail));
                for i in 0..k {
                    queue.push_back((i, k));
                }
            }
        }
    }
    inter_reduce(basis, order)
}

/// Minimalizes leads and reduces tails to normal form; sorts canonically.
fn inter_reduce(mut basis: Vec<Oriented>, order: &TermOrder) -> Vec<Oriented> {
    // Keep only elements whose lead is not divisible by another kept lead.
    basis.sort_by(|x, y| order.compare(&x.0, &y.0).then_with(|| order.compare(&x.1, &y.1)));
    let mut kept: Vec<Oriented> = Vec::new();
    for (lead, tail) in basis {
        if !kept.iter().any(|(l, _)| l.divides(&lead)) {
            kept.push((lead, tail));
        }
    }
    // Tail-reduce until stable (tails are single monomials, so each pass is
    // a monomial walk; a generator's own lead can never divide its tail).
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let reducers = reducers_of(&kept);
            let nf = normal_form(
                NormalForm::Monomial(kept[i].1.clone()),
                &reducers,
                order,
                ReducerChoice::First,
            );
            match nf {
                NormalForm::Monomial(t) => {
                    if t != kept[i].1 {
                        kept[i].1 = t;
                        changed = true;
                    }
                }
                _ => unreachable!("binomial reducers keep monomials monomial"),
            }
        }
        if !changed {
            break;
        }
    }
    kept.sort_by(|x, y| order.compare(&x.0, &y.0).then_with(|| order.compare(&x.1, &y.1)));
    kept
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

/// Computes ⟨gens⟩ : ∂_j^∞ for an ideal homogeneous w.r.t. the positive
/// `grading`: Gröbner basis under grading-then-revlex with ∂_j cheapest,
/// then divide every generator by its common ∂_j power. Returns the new
/// generators and whether anything was divided.
fn saturate_variable(gens: &[Oriented], j: usize, grading: &[Int]) -> (Vec<Oriented>, bool) {
    let order = TermOrder::saturating(grading.to_vec(), j);
    let gb = buchberger(gens, &order);
    let mut changed = false;
    let divided: Vec<Oriented> = gb
        .into_iter()
        .map(|(lead, tail)| {
            let c = lead.exponents[j].min(tail.exponents[j]);
            if c == 0 {
                (lead, tail)
            } else {
                changed = true;
                let mut l = lead.exponents;
                let mut t = tail.exponents;
                l[j] -= c;
                t[j] -= c;
                (Monomial::new(l), Monomial::new(t))
            }
        })
        .collect();
    (divided, changed)
}

/// Saturates at every variable, sweeping until a full sweep divides
/// nothing; each division strictly enlarges the ideal, so this terminates.
fn saturate_all(gens: Vec<Oriented>, grading: &[Int]) -> Vec<Oriented> {
    let n = grading.len();
    let mut current = gens;
    loop {
        let mut any = false;
        for j in 0..n {
            let (next, changed) = saturate_variable(&current, j, grading);
            current = next;
            any |= changed;
        }
        if !any {
            break;
        }
    }
    current
}

/// A positive integer grading for which every configuration binomial is
/// homogeneous, from the pointedness witness.
fn grading_of(a: &ToricMatrix) -> Vec<Int> {
    let h = scale_to_int(a.pointedness_witness());
    (0..a.num_columns())
        .map(|j| {
            let col = a.column(j);
            let m: Int = h.iter().zip(&col).map(|(x, y)| x * y).sum();
            debug_assert!(m.is_positive(), "pointedness witness gives a positive grading");
            m
        })
        .collect()
}

/// Clears denominators: w ↦ (lcm of denominators)·w as integers.
fn scale_to_int(weights: &[Rat]) -> Vec<Int> {
    let mut scale = Int::one();
    for w in weights {
        scale = scale.lcm(w.denom());
    }
    weights
        .iter()
        .map(|w| (w * Rat::from(scale.clone())).to_integer())
        .collect()
}

/// Canonical Gröbner basis of the lattice ideal of ker_Z(columns), for a
/// subconfiguration of a pointed matrix with the given positive grading.
fn lattice_ideal_of_columns(dim: usize, columns: &[Vec<Int>], grading: &[Int]) -> Vec<Oriented> {
    if columns.is_empty() {
        return Vec::new();
    }
    let kernel = integer_kernel(&crate::exactmath::IntMatrix::from_columns(dim, columns));
    let gens: Vec<Oriented> = kernel
        .basis_vectors()
        .iter()
        .filter_map(|v| Binomial::from_vector(v))
        .map(|b| (b.plus, b.minus))
        .collect();
    if gens.is_empty() {
        return Vec::new();
    }
    let saturated = saturate_all(gens, grading);
    buchberger(&saturated, &TermOrder::canonical(columns.len()))
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Generators of the toric ideal I_A: the lattice ideal of ker_Z(A),
/// obtained by saturating a kernel-basis ideal at every variable. The
/// result is the reduced Gröbner basis for the degree-then-revlex order,
/// oriented with the leading side first.
pub fn toric_ideal(a: &ToricMatrix) -> Vec<Binomial> {
    let n = a.num_columns();
    let columns: Vec<Vec<Int>> = (0..n).map(|j| a.column(j)).collect();
    let grading = grading_of(a);
    let gb = lattice_ideal_of_columns(a.dim(), &columns, &grading);
    gb.into_iter()
        .map(|(plus, minus)| {
            let b = Binomial { plus, minus };
            debug_assert!(
                b.plus
                    .exponents
                    .iter()
                    .zip(&b.minus.exponents)
                    .all(|(x, y)| *x.min(y) == 0),
                "saturated generators have coprime sides"
            );
            debug_assert_eq!(
                b.a_degree(&columns),
                Binomial {
                    plus: b.minus.clone(),
                    minus: b.plus.clone()
                }
                .a_degree(&columns),
                "toric generators are A-homogeneous"
            );
            b
        })
        .collect()
}

/// One generator of a marked Gröbner basis: lead ≻ tail under the weight
/// (ties broken degree-then-revlex), with a flag recording whether both
/// terms have equal weight (in which case the initial form keeps both).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedBinomial {
    pub lead: Monomial,
    pub tail: Monomial,
    pub l_homogeneous: bool,
}

impl fmt::Display for MarkedBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.tail)
    }
}

/// A reduced Gröbner basis of I_A marked with respect to a weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGroebnerBasis {
    pub weight: Vec<Rat>,
    pub generators: Vec<MarkedBinomial>,
    pub reduced: bool,
}

/// The weight-initial form of a marked generator: the lead monomial for
/// weight-inhomogeneous binomials, the whole binomial otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialForm {
    Monomial(Monomial),
    Binomial { lead: Monomial, tail: Monomial },
}

impl fmt::Display for InitialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialForm::Monomial(m) => write!(f, "{m}"),
            InitialForm::Binomial { lead, tail } => write!(f, "{lead} - {tail}"),
        }
    }
}

impl InitialForm {
    fn vanishes_on_indicator(&self, members: &BTreeSet<usize>) -> bool {
        let inside = |m: &Monomial| m.support().iter().all(|j| members.contains(j));
        match self {
            InitialForm::Monomial(m) => !inside(m),
            InitialForm::Binomial { lead, tail } => inside(lead) == inside(tail),
        }
    }
}

impl MarkedGroebnerBasis {
    /// Generators of the initial ideal I^L_A.
    pub fn initial_forms(&self) -> Vec<InitialForm> {
        self.generators
            .iter()
            .map(|g| {
                if g.l_homogeneous {
                    InitialForm::Binomial {
                        lead: g.lead.clone(),
                        tail: g.tail.clone(),
                    }
                } else {
                    InitialForm::Monomial(g.lead.clone())
                }
            })
            .collect()
    }

    fn initial_reducers(&self) -> Vec<Reducer> {
        self.generators
            .iter()
            .map(|g| Reducer {
                lead: g.lead.clone(),
                tail: if g.l_homogeneous {
                    Some(g.tail.clone())
                } else {
                    None
                },
            })
            .collect()
    }
}

/// Reduced Gröbner basis of ⟨gens⟩ with respect to a weight vector of
/// arbitrary sign, marked with the weight-leading terms. Positive weights
/// are handled directly; otherwise the computation runs in a homogenized
/// ring with an auxiliary cheapest variable and dehomogenizes afterwards.
pub fn initial_ideal(
    gens: &[Binomial],
    weights: &[Rat],
) -> Result<MarkedGroebnerBasis, ToricError> {
    initial_ideal_with(gens, weights, false)
}

pub(crate) fn initial_ideal_with(
    gens: &[Binomial],
    weights: &[Rat],
    force_homogenization: bool,
) -> Result<MarkedGroebnerBasis, ToricError> {
    for g in gens {
        if g.num_vars() != weights.len() {
            return Err(ToricError::WeightCount {
                expected: g.num_vars(),
                got: weights.len(),
            });
        }
    }
    let n = weights.len();
    if gens.is_empty() {
        return Ok(MarkedGroebnerBasis {
            weight: weights.to_vec(),
            generators: Vec::new(),
            reduced: true,
        });
    }
    let scaled = scale_to_int(weights);
    let all_positive = scaled.iter().all(|w| w.is_positive());
    let oriented: Vec<Oriented> = gens
        .iter()
        .map(|b| (b.plus.clone(), b.minus.clone()))
        .collect();
    let basis: Vec<Oriented> = if all_positive && !force_homogenization {
        buchberger(&oriented, &TermOrder::weighted(scaled.clone()))
    } else {
        // Homogenize by total degree with a fresh variable at index 0, take
        // the homogeneous ideal (saturation at the new variable), compute
        // the Gröbner basis for degree-then-weight, and dehomogenize.
        let homogenized: Vec<Oriented> = oriented
            .iter()
            .map(|(p, q)| {
                let (dp, dq) = (p.degree(), q.degree());
                let top = dp.max(dq);
                let mut pe = vec![top - dp];
                pe.extend(&p.exponents);
                let mut qe = vec![top - dq];
                qe.extend(&q.exponents);
                (Monomial::new(pe), Monomial::new(qe))
            })
            .collect();
        let ones = vec![Int::one(); n + 1];
        let (saturated, _) = saturate_variable(&homogenized, 0, &ones);
        let gb = buchberger(&saturated, &TermOrder::homogenized(&scaled));
        let dehomogenized: Vec<Oriented> = gb
            .into_iter()
            .map(|(lead, tail)| {
                (
                    Monomial::new(lead.exponents[1..].to_vec()),
                    Monomial::new(tail.exponents[1..].to_vec()),
                )
            })
            .collect();
        let order = TermOrder::weighted(scaled.clone());
        let minimal = {
            let mut sorted = dehomogenized;
            sorted.sort_by(|x, y| order.compare(&x.0, &y.0).then_with(|| order.compare(&x.1, &y.1)));
            let mut kept: Vec<Oriented> = Vec::new();
            for (lead, tail) in sorted {
                if !kept.iter().any(|(l, _)| l.divides(&lead)) {
                    kept.push((lead, tail));
                }
            }
            kept
        };
        if all_positive {
            inter_reduce(minimal, &order)
        } else {
            minimal
        }
    };
    let generators = basis
        .into_iter()
        .map(|(lead, tail)| {
            let l_homogeneous = lead.weight(&scaled) == tail.weight(&scaled);
            MarkedBinomial {
                lead,
                tail,
                l_homogeneous,
            }
        })
        .collect();
    Ok(MarkedGroebnerBasis {
        weight: weights.to_vec(),
        generators,
        reduced: true,
    })
}

/// Decides whether (∏_{k∈S} ∂_k)^N ∈ I^L_A for some N within the budget
/// (default 20·n). A sound negative comes first: if the initial forms all
/// vanish at the 0/1 indicator point of some facet containing S, the
/// product does not lie in the radical. Otherwise powers are reduced until
/// one vanishes; running out of budget is reported, never asserted.
pub fn radical_monomial_witness(
    gb: &MarkedGroebnerBasis,
    a: &ToricMatrix,
    weights: &[Rat],
    subset: &[usize],
    budget: Option<usize>,
) -> Result<bool, ToricError> {
    let n = a.num_columns();
    if weights.len() != n {
        return Err(ToricError::WeightCount {
            expected: n,
            got: weights.len(),
        });
    }
    for &k in subset {
        if k >= n {
            return Err(ToricError::ColumnOutOfRange(k));
        }
    }
    let forms = gb.initial_forms();
    // Certificate for a sound "no": a facet τ ⊇ S whose indicator point
    // kills every initial form exhibits a zero of I^L_A where ∏∂_S ≠ 0.
    let facets = umbrella_facet_sets(a, weights)?;
    for facet in facets.keys() {
        if subset.iter().all(|k| facet.contains(k)) {
            let members: BTreeSet<usize> = facet.iter().copied().collect();
            if forms.iter().all(|f| f.vanishes_on_indicator(&members)) {
                return Ok(false);
            }
        }
    }
    // Iterated power test for a sound "yes".
    let mut exps = vec![0u64; n];
    for &k in subset {
        exps[k] = 1;
    }
    let product = Monomial::new(exps);
    let reducers = gb.initial_reducers();
    let order = TermOrder::canonical(n);
    let budget = budget.unwrap_or(20 * n);
    for power in 1..=budget as u64 {
        let nf = normal_form(
            NormalForm::Monomial(product.pow(power)),
            &reducers,
            &order,
            ReducerChoice::First,
        );
        if nf == NormalForm::Zero {
            return Ok(true);
        }
    }
    Err(ToricError::BudgetExceeded { budget })
}

/// Result of one facet-containment check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCheck {
    pub facet: Vec<usize>,
    pub pass: bool,
}

/// Result of one radical-witness comparison against the facet-covering
/// predicate. `witness` is `None` when the power budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub subset: Vec<usize>,
    pub expected: bool,
    pub witness: Option<bool>,
    pub pass: bool,
}

/// Verification report for the component structure of Spec(R/I^L_A).
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub facet_checks: Vec<FacetCheck>,
    pub witness_checks: Vec<WitnessCheck>,
    pub pass: bool,
}

/// Checks the two consequences of the component decomposition: (i) every
/// initial form, restricted modulo the variables off a facet, lies in the
/// facet's toric ideal; (ii) the radical monomial witness agrees with the
/// facet-covering predicate for all index sets of size ≤ 3.
pub fn verify_components(gb: &MarkedGroebnerBasis, umbrella: &Umbrella) -> ComponentReport {
    verify_components_with_budget(gb, umbrella, None)
}

/// [`verify_components`] with an explicit power budget for the radical
/// witness (default 20·n when `None`).
pub fn verify_components_with_budget(
    gb: &MarkedGroebnerBasis,
    umbrella: &Umbrella,
    budget: Option<usize>,
) -> ComponentReport {
    verify_components_against(gb, umbrella.matrix(), &umbrella.facet_sets(), budget)
}

/// Same as [`verify_components`], taking the facet sets explicitly (which
/// allows negative controls with corrupted face data).
pub fn verify_components_against(
    gb: &MarkedGroebnerBasis,
    a: &ToricMatrix,
    facet_sets: &BTreeSet<Vec<usize>>,
    budget: Option<usize>,
) -> ComponentReport {
    let n = a.num_columns();
    let forms = gb.initial_forms();
    let grading = grading_of(a);
    let mut facet_checks = Vec::new();
    for facet in facet_sets {
        let members: BTreeSet<usize> = facet.iter().copied().collect();
        let columns: Vec<Vec<Int>> = facet.iter().map(|&j| a.column(j)).collect();
        let local_grading: Vec<Int> = facet.iter().map(|&j| grading[j].clone()).collect();
        let local_gb = lattice_ideal_of_columns(a.dim(), &columns, &local_grading);
        let local_reducers = reducers_of(&local_gb);
        let local_order = TermOrder::canonical(facet.len());
        let restrict = |m: &Monomial| -> Option<Monomial> {
            if m.support().iter().all(|j| members.contains(j)) {
                Some(Monomial::new(
                    facet.iter().map(|&j| m.exponents[j]).collect(),
                ))
            } else {
                None
            }
        };
        let mut pass = true;
        for form in &forms {
            let restricted = match form {
                InitialForm::Monomial(m) => match restrict(m) {
                    // A surviving monomial never lies in a toric ideal.
                    Some(_) => {
                        pass = false;
                        continue;
                    }
                    None => NormalForm::Zero,
                },
                InitialForm::Binomial { lead, tail } => match (restrict(lead), restrict(tail)) {
                    (None, None) => NormalForm::Zero,
                    (Some(_), None) | (None, Some(_)) => {
                        pass = false;
                        continue;
                    }
                    (Some(l), Some(t)) => {
                        if l == t {
                            NormalForm::Zero
                        } else {
                            NormalForm::Binomial(l, t)
                        }
                    }
                },
            };
            let nf = normal_form(restricted, &local_reducers, &local_order, ReducerChoice::First);
            if nf != NormalForm::Zero {
                pass = false;
            }
        }
        facet_checks.push(FacetCheck {
            facet: facet.clone(),
            pass,
        });
    }
    let mut witness_checks = Vec::new();
    for subset in small_subsets(n, 3) {
        let expected = !facet_sets
            .iter()
            .any(|facet| subset.iter().all(|k| facet.contains(k)));
        let witness = radical_monomial_witness(gb, a, &gb.weight, &subset, budget).ok();
        let pass = witness == Some(expected);
        witness_checks.push(WitnessCheck {
            subset,
            expected,
            witness,
            pass,
        });
    }
    let pass =
        facet_checks.iter().all(|c| c.pass) && witness_checks.iter().all(|c| c.pass);
    ComponentReport {
        facet_checks,
        witness_checks,
        pass,
    }
}

/// All nonempty subsets of {0..n-1} of size at most `max_size`, sorted.
fn small_subsets(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=max_size.min(n) {
        out.extend(crate::polyhedral::k_subsets(n, k));
    }
    out.sort();
    out
}
