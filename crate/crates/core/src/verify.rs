//! The checks: Hilbert function, graded Betti numbers, smoothness at the
//! g7-fixed points, invariance under the group, intersection numbers and
//! calibration of uncertain coefficients.
//!
//! Every mod-p rank is an upper bound for the characteristic-0 rank. Each
//! check demands that a rank equal a predicted value exactly, and in every
//! case the prediction is also a lower bound (the quotient cannot be smaller
//! than the formula, the syzygy images are contained in the spaces they are
//! compared with), so equality mod p certifies equality over Q(t).

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{Field, ModularEmbedding, NumberFieldElement};
use crate::corpus::{known_ambiguities, EquationCorpus, Provenance, CORPUS_SIZE};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, RowBasis, SparseMatrixModP};
use crate::par::{self, Parallelism};
use crate::poly::{binomial, GroupElement, Monomial, MonomialIndex, NfPolynomial, G7_WEIGHTS, NVARS};

/// Betti numbers of the resolution, steps 1 to 4.
pub const EXPECTED_BETTI: [u64; 4] = [84, 378, 756, 840];

/// Coordinate points fixed by g7 that lie on the surface: e9, e8, e7.
pub const FIXED_POINTS: [usize; 3] = [9, 8, 7];

/// The coordinate point used as a negative control for the on-surface test.
pub const CONTROL_POINT: usize = 0;

/// Jacobian rank that makes the surface smooth at a point of P^9.
pub const SMOOTH_JACOBIAN_RANK: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Fail beats inconclusive beats pass.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Fail => "FAIL",
        }
    }
}

/// Dimension of the space of forms of degree `d` in ten variables.
pub fn ambient_dimension(d: u32) -> u64 {
    binomial(d as u64 + 9, 9)
}

/// `(6d-1)(6d-2)/2`.
pub fn hilbert_expected(d: u32) -> u64 {
    let d = d as u64;
    18 * d * d - 9 * d + 1
}

/// A homogeneous element of a free module `R^n`, as `(generator, monomial,
/// residue)` terms with monomials all of one degree.
pub type ModuleElement = Vec<(u32, Monomial, u32)>;

/// Matrix of `R_shift (x) span(gens) -> R^rank_out`: one row per generator and
/// monomial `m` of degree `shift` (generator-major, monomials in ascending
/// order), holding the coefficients of `m * gen` with column
/// `g * dim R_out + index(monomial)`.
fn multiply_out(
    gens: &[ModuleElement],
    rank_out: usize,
    gen_degree: u32,
    shift: u32,
    p: u32,
    mode: Parallelism,
) -> SparseMatrixModP {
    let shifts = MonomialIndex::new(shift);
    let target = MonomialIndex::new(gen_degree + shift);
    let width = target.len() as u32;
    let blocks = par::map(gens, mode, |gen| {
        shifts
            .monomials()
            .iter()
            .map(|m| {
                gen.iter()
                    .map(|(g, mono, v)| {
                        let at = target.position(&mono.mul(m)).expect("degree matches");
                        (g * width + at as u32, *v as u64)
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    SparseMatrixModP::from_rows(rank_out * target.len(), p, blocks.into_iter().flatten().collect())
}

/// Turns left-kernel vectors of a [`multiply_out`] matrix with `shift = 1`
/// back into module elements of degree 1 over its generators.
fn kernel_to_elements(kernel: &[Vec<u32>]) -> Vec<ModuleElement> {
    let vars = MonomialIndex::new(1);
    kernel
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| ((i / NVARS) as u32, vars.monomials()[i % NVARS], x))
                .collect()
        })
        .collect()
}

fn corpus_elements(c: &EquationCorpus, e: &ModularEmbedding) -> Result<Vec<ModuleElement>> {
    c.polynomials()
        .map(|f| {
            let reduced = f.reduce_mod(e)?;
            Ok(reduced.terms().map(|(m, v)| (0, *m, v.value())).collect())
        })
        .collect()
}

/// Rows `(equation i, monomial m of degree d-3)` holding `m * eq_i` mod p,
/// columns the monomials of degree `d`.
pub fn multiplication_matrix(c: &EquationCorpus, d: u32, e: &ModularEmbedding) -> Result<SparseMatrixModP> {
    multiplication_matrix_with(c, d, e, Parallelism::default())
}

pub fn multiplication_matrix_with(
    c: &EquationCorpus,
    d: u32,
    e: &ModularEmbedding,
    mode: Parallelism,
) -> Result<SparseMatrixModP> {
    if d < 3 {
        return Err(Error::DegreeOutOfRange { degree: d });
    }
    let gens = corpus_elements(c, e)?;
    Ok(multiply_out(&gens, 1, 3, d - 3, e.modulus(), mode))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HilbertResult {
    pub degree: u32,
    pub ambient: u64,
    pub ideal_dimension: u64,
    pub quotient: u64,
    pub expected: u64,
    pub status: Status,
}

pub fn hilbert_function(c: &EquationCorpus, d: u32, e: &ModularEmbedding) -> Result<HilbertResult> {
    hilbert_function_with(c, d, e, Parallelism::default())
}

pub fn hilbert_function_with(
    c: &EquationCorpus,
    d: u32,
    e: &ModularEmbedding,
    mode: Parallelism,
) -> Result<HilbertResult> {
    let ambient = ambient_dimension(d);
    let ideal_dimension = if d < 3 { 0 } else { multiplication_matrix_with(c, d, e, mode)?.rank_with(mode) as u64 };
    let quotient = ambient - ideal_dimension;
    let expected = hilbert_expected(d);
    Ok(HilbertResult { degree: d, ambient, ideal_dimension, quotient, expected, status: Status::from_bool(quotient == expected) })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BettiResult {
    pub step: usize,
    pub degree: u32,
    pub betti: u64,
    pub expected: u64,
    /// Rank of the map from the new generators into the previous syzygies.
    pub image_rank: u64,
    /// Dimension of the previous kernel in this degree, computed independently.
    pub previous_kernel: u64,
    /// `sum (-1)^l beta_l dim R_{j - deg_l}` over the steps so far.
    pub alternating_sum: i64,
    /// `h(j)` from the multiplication matrix of degree `j`.
    pub hilbert: u64,
    pub status: Status,
}

/// Computes the resolution one step at a time; each step reuses the syzygies
/// found by the one before.
pub struct ResolutionBuilder {
    embedding: ModularEmbedding,
    mode: Parallelism,
    equations: Vec<ModuleElement>,
    /// Degree-4 first syzygies over the 84 equations.
    first_syzygies: Option<Vec<ModuleElement>>,
    /// Degree-5 second syzygies over the first syzygies.
    second_syzygies: Option<Vec<ModuleElement>>,
    results: Vec<BettiResult>,
}

impl ResolutionBuilder {
    pub fn new(c: &EquationCorpus, e: &ModularEmbedding) -> Result<Self> {
        Self::with_parallelism(c, e, Parallelism::default())
    }

    pub fn with_parallelism(c: &EquationCorpus, e: &ModularEmbedding, mode: Parallelism) -> Result<Self> {
        Ok(Self {
            embedding: *e,
            mode,
            equations: corpus_elements(c, e)?,
            first_syzygies: None,
            second_syzygies: None,
            results: Vec::new(),
        })
    }

    pub fn results(&self) -> &[BettiResult] {
        &self.results
    }

    fn p(&self) -> u32 {
        self.embedding.modulus()
    }

    fn equations_in_degree(&self, d: u32) -> SparseMatrixModP {
        multiply_out(&self.equations, 1, 3, d - 3, self.p(), self.mode)
    }

    fn finish(&mut self, step: usize, betti: u64, image_rank: u64, previous_kernel: u64, hilbert: u64) -> BettiResult {
        let degree = step as u32 + 2;
        let mut betti_so_far: Vec<u64> = self.results.iter().map(|r| r.betti).collect();
        betti_so_far.push(betti);
        let mut alternating_sum = ambient_dimension(degree) as i64;
        for (l, b) in betti_so_far.iter().enumerate() {
            let sign = if l % 2 == 0 { -1 } else { 1 };
            alternating_sum += sign * (*b as i64) * ambient_dimension(degree - (l as u32 + 3)) as i64;
        }
        let expected = EXPECTED_BETTI[step - 1];
        let ok = betti == expected && image_rank == previous_kernel && alternating_sum == hilbert as i64;
        let result = BettiResult {
            step,
            degree,
            betti,
            expected,
            image_rank,
            previous_kernel,
            alternating_sum,
            hilbert,
            status: Status::from_bool(ok),
        };
        self.results.push(result.clone());
        result
    }

    /// Runs step `step`; steps must be run in order starting at 1.
    pub fn step(&mut self, step: usize) -> Result<BettiResult> {
        if !(1..=4).contains(&step) {
            return Err(Error::UnsupportedStep { step });
        }
        if self.results.len() + 1 < step {
            return Err(Error::PrerequisiteMissing { step, missing: self.results.len() + 1 });
        }
        if let Some(done) = self.results.get(step - 1) {
            return Ok(done.clone());
        }
        let mode = self.mode;
        let p = self.p();
        let n = self.equations.len();
        match step {
            1 => {
                let rank = self.equations_in_degree(3).rank_with(mode) as u64;
                let hilbert = ambient_dimension(3) - rank;
                // Generators of the ideal span its cubic part by definition.
                Ok(self.finish(1, rank, rank, rank, hilbert))
            }
            2 => {
                let m4 = self.equations_in_degree(4);
                let rank = m4.rank_with(mode) as u64;
                let kernel = m4.left_kernel_basis_with(mode);
                let betti = kernel.len() as u64;
                self.first_syzygies = Some(kernel_to_elements(&kernel));
                // No syzygies below degree 4, so all of them are new generators.
                Ok(self.finish(2, betti, betti, m4.rows() as u64 - rank, ambient_dimension(4) - rank))
            }
            3 => {
                let m5_rank = self.equations_in_degree(5).rank_with(mode) as u64;
                let syz = self.first_syzygies.as_ref().expect("step 2 ran");
                let map = multiply_out(syz, n, 1, 1, p, mode);
                let image_rank = map.rank_with(mode) as u64;
                let kernel = map.left_kernel_basis_with(mode);
                let betti = kernel.len() as u64;
                self.second_syzygies = Some(kernel_to_elements(&kernel));
                let first_syzygies_deg5 = (n as u64) * ambient_dimension(2) - m5_rank;
                Ok(self.finish(3, betti, image_rank, first_syzygies_deg5, ambient_dimension(5) - m5_rank))
            }
            _ => {
                let m6_rank = self.equations_in_degree(6).rank_with(mode) as u64;
                let first = self.first_syzygies.as_ref().expect("step 2 ran");
                let first_rank = first.len();
                let first_map = multiply_out(first, n, 1, 2, p, mode).rank_with(mode) as u64;
                let first_kernel = first_rank as u64 * ambient_dimension(2) - first_map;
                let second = self.second_syzygies.as_ref().expect("step 3 ran");
                let map = multiply_out(second, first_rank, 1, 1, p, mode);
                let image_rank = map.rank_with(mode) as u64;
                let betti = map.rows() as u64 - image_rank;
                // The first syzygies must still generate in degree 6.
                let first_generate = first_map == n as u64 * ambient_dimension(3) - m6_rank;
                let mut result = self.finish(4, betti, image_rank, first_kernel, ambient_dimension(6) - m6_rank);
                if !first_generate {
                    result.status = Status::Fail;
                    self.results[3].status = Status::Fail;
                }
                Ok(result)
            }
        }
    }
}

/// Runs steps `1..=max_step`.
pub fn betti_numbers(c: &EquationCorpus, e: &ModularEmbedding, max_step: usize, mode: Parallelism) -> Result<Vec<BettiResult>> {
    let mut builder = ResolutionBuilder::with_parallelism(c, e, mode)?;
    for step in 1..=max_step {
        builder.step(step)?;
    }
    Ok(builder.results().to_vec())
}

/// Single step, running the earlier ones first.
pub fn betti_step(c: &EquationCorpus, step: usize, e: &ModularEmbedding) -> Result<BettiResult> {
    if !(1..=4).contains(&step) {
        return Err(Error::UnsupportedStep { step });
    }
    Ok(betti_numbers(c, e, step, Parallelism::default())?.pop().expect("at least one step"))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FixedPointOutcome {
    /// Index of the coordinate that is 1.
    pub coordinate: usize,
    pub on_surface: bool,
    /// First equation (1-based) not vanishing at the point.
    pub first_nonvanishing: Option<usize>,
    pub jacobian_rank: Option<usize>,
    /// Lexicographically first equations (1-based) with independent differentials.
    pub witnesses: Vec<usize>,
    pub status: Status,
}

impl FixedPointOutcome {
    pub fn point_label(&self) -> String {
        let mut coords = ["0"; NVARS];
        coords[self.coordinate] = "1";
        format!("({})", coords.join(","))
    }
}

fn coordinate_point(coordinate: usize) -> [NumberFieldElement; NVARS] {
    std::array::from_fn(|i| if i == coordinate { NumberFieldElement::one() } else { NumberFieldElement::zero() })
}

/// On-surface test and exact Jacobian rank at one coordinate point.
pub fn check_point(c: &EquationCorpus, coordinate: usize) -> FixedPointOutcome {
    let point = coordinate_point(coordinate);
    let first_nonvanishing = c.entries().iter().find(|e| !e.poly.evaluate(&point).is_zero()).map(|e| e.index);
    if first_nonvanishing.is_some() {
        return FixedPointOutcome {
            coordinate,
            on_surface: false,
            first_nonvanishing,
            jacobian_rank: None,
            witnesses: Vec::new(),
            status: Status::Fail,
        };
    }
    let rows: Vec<Vec<NumberFieldElement>> =
        c.polynomials().map(|f| (0..NVARS).map(|v| f.partial(v).evaluate(&point)).collect()).collect();
    let jacobian = DenseMatrix::new(NVARS, rows).expect("rows have NVARS entries");
    let picked = jacobian.independent_rows();
    let rank = picked.len();
    FixedPointOutcome {
        coordinate,
        on_surface: true,
        first_nonvanishing: None,
        jacobian_rank: Some(rank),
        witnesses: picked.iter().map(|&i| c.entries()[i].index).collect(),
        status: Status::from_bool(rank == SMOOTH_JACOBIAN_RANK),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SmoothnessOutcome {
    pub points: Vec<FixedPointOutcome>,
    /// Must fail the on-surface test.
    pub control: FixedPointOutcome,
    pub status: Status,
}

pub fn fixed_point_check(c: &EquationCorpus) -> SmoothnessOutcome {
    let points: Vec<_> = FIXED_POINTS.iter().map(|&k| check_point(c, k)).collect();
    let control = check_point(c, CONTROL_POINT);
    let ok = points.iter().all(|o| o.status == Status::Pass) && !control.on_surface;
    SmoothnessOutcome { points, control, status: Status::from_bool(ok) }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvarianceOutcome {
    pub weight_homogeneous: bool,
    /// g7-weight of every equation, in corpus order (`None` if mixed).
    pub weights: Vec<Option<u8>>,
    pub g3_closed: bool,
    pub degree3_rank: usize,
    pub g7_order: usize,
    pub g3_order: usize,
    /// `k` with `g3 g7 g3^-1 = g7^k`, agreeing between the two computations.
    pub conjugation_exponent: Option<usize>,
    pub first_violation: Option<String>,
    pub status: Status,
}

fn order(g: &GroupElement) -> usize {
    (1..=64).find(|&k| g.pow(k) == GroupElement::identity()).unwrap_or(0)
}

fn first_weight_violation(index: usize, f: &NfPolynomial) -> Option<String> {
    let mut monos = f.monomials();
    let first = monos.next()?;
    let w = first.g7_weight();
    monos
        .find(|m| m.g7_weight() != w)
        .map(|m| format!("eq {index}: {first} has weight {w} but {m} has weight {}", m.g7_weight()))
}

/// Exact certificate that the cubic span is stable under the group.
pub fn invariance_certificate(c: &EquationCorpus) -> InvarianceOutcome {
    let mut violations = Vec::new();
    let weights: Vec<Option<u8>> = c.entries().iter().map(|e| e.poly.weight_homogeneous()).collect();
    for e in c.entries() {
        if let Some(v) = first_weight_violation(e.index, &e.poly) {
            violations.push(v);
        }
    }
    let weight_homogeneous = violations.is_empty();

    let cubics = MonomialIndex::new(3);
    let to_row = |f: &NfPolynomial| -> Option<Vec<NumberFieldElement>> {
        let mut row = vec![NumberFieldElement::zero(); cubics.len()];
        for (m, v) in f.terms() {
            row[cubics.position(m)?] = v.clone();
        }
        Some(row)
    };
    let mut basis = RowBasis::new(cubics.len());
    let mut g3_closed = true;
    for e in c.entries() {
        match to_row(&e.poly) {
            Some(row) => {
                basis.insert(row).expect("row has one entry per cubic");
            }
            None => {
                g3_closed = false;
                violations.push(format!("eq {} is not a cubic form", e.index));
            }
        }
    }
    if g3_closed {
        for e in c.entries() {
            let image = e.poly.apply_g3();
            let inside = to_row(&image).map(|row| basis.contains(&row).expect("row length"));
            if inside != Some(true) {
                g3_closed = false;
                violations.push(format!("g3(eq {}) is not in the span of the equations", e.index));
                break;
            }
        }
    }

    let g7_order = order(&GroupElement::g7());
    let g3_order = order(&GroupElement::g3());
    let by_group = GroupElement::conjugation_exponent();
    let by_weights = crate::poly::conjugation_exponent_by_weights().map(usize::from);
    let conjugation_exponent = if by_group == by_weights { by_group } else { None };
    let relations = g7_order == 7 && g3_order == 3 && conjugation_exponent.is_some();
    if !relations {
        violations.push(format!(
            "group relations: order(g7) = {g7_order}, order(g3) = {g3_order}, conjugation exponent {by_group:?} vs {by_weights:?}"
        ));
    }
    debug_assert_eq!(G7_WEIGHTS.len(), NVARS);
    InvarianceOutcome {
        weight_homogeneous,
        weights,
        g3_closed,
        degree3_rank: basis.rank(),
        g7_order,
        g3_order,
        conjugation_exponent,
        first_violation: violations.into_iter().next(),
        status: Status::from_bool(weight_homogeneous && g3_closed && relations),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IntersectionNumbers {
    pub d_squared: i64,
    pub d_dot_k: i64,
    pub chi: i64,
    pub k_squared: i64,
    pub euler_number: i64,
    pub b2: i64,
}

impl IntersectionNumbers {
    /// `12 chi = K^2 + e`.
    pub fn noether_holds(&self) -> bool {
        12 * self.chi == self.k_squared + self.euler_number
    }
}

fn to_integer(x: &BigRational, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::FitFailure(format!("{what} = {x} is not an integer")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::FitFailure(format!("{what} = {x} is out of range")))
}

/// Fits `h(d) = a2 d^2 + a1 d + a0` through the points and reads off
/// `D^2 = 2 a2`, `D.K = -2 a1`, `chi = a0`; the rest assumes `D = 2K` and
/// `b1 = 0`.
pub fn intersection_numbers(points: &[(u32, u64)]) -> Result<IntersectionNumbers> {
    let distinct: BTreeSet<u32> = points.iter().map(|&(d, _)| d).collect();
    if distinct.len() < 3 {
        return Err(Error::FitFailure(format!("need three distinct degrees, got {}", distinct.len())));
    }
    let mut basis: Vec<(BigRational, BigRational)> = Vec::new();
    for &(d, h) in points {
        if basis.iter().any(|(x, _)| *x == BigRational::from_integer(d.into())) {
            continue;
        }
        basis.push((BigRational::from_integer(d.into()), BigRational::from_integer(h.into())));
        if basis.len() == 3 {
            break;
        }
    }
    // Lagrange interpolation, collected into monomial coefficients.
    let mut coeffs = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (i, (xi, yi)) in basis.iter().enumerate() {
        let others: Vec<&BigRational> = basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (x, _))| x).collect();
        let denom = (xi - others[0]) * (xi - others[1]);
        let scale = yi / denom;
        coeffs[2] += &scale;
        coeffs[1] -= &scale * (others[0] + others[1]);
        coeffs[0] += &scale * others[0] * others[1];
    }
    for &(d, h) in points {
        let x = BigRational::from_integer(d.into());
        let value = &coeffs[0] + &coeffs[1] * &x + &coeffs[2] * &x * &x;
        if value != BigRational::from_integer(h.into()) {
            return Err(Error::FitFailure(format!("h({d}) = {h} is off the quadratic through the first three points")));
        }
    }
    let two = BigRational::from_integer(2.into());
    let d_squared = to_integer(&(&two * &coeffs[2]), "D^2")?;
    let d_dot_k = to_integer(&(-&two * &coeffs[1]), "D.K")?;
    let chi = to_integer(&coeffs[0], "chi")?;
    if d_squared % 4 != 0 {
        return Err(Error::Inconsistent(format!("D^2 = {d_squared} is not 4 K^2 for an integral K^2")));
    }
    let k_squared = d_squared / 4;
    if d_dot_k != 2 * k_squared {
        return Err(Error::Inconsistent(format!("D.K = {d_dot_k} but 2 K^2 = {}", 2 * k_squared)));
    }
    let euler_number = 12 * chi - k_squared;
    Ok(IntersectionNumbers { d_squared, d_dot_k, chi, k_squared, euler_number, b2: euler_number - 2 })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CandidateOutcome {
    pub value: String,
    pub hilbert: Vec<(u32, u64)>,
    pub passes: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CalibrationResult {
    pub entry: usize,
    pub term: String,
    pub current: String,
    pub max_degree: u32,
    pub candidates: Vec<CandidateOutcome>,
    pub passing: Vec<String>,
    pub resolved: bool,
    /// Resolved to the value the corpus already carries.
    pub current_passes: bool,
    pub status: Status,
}

/// Substitutes each candidate for the coefficient of `term` in `entry` and
/// keeps those for which `h(d)` matches for every `d` in `3..=max_degree`.
pub fn calibrate_ambiguous(
    c: &EquationCorpus,
    entry: usize,
    term: &Monomial,
    candidates: &[NumberFieldElement],
    e: &ModularEmbedding,
    max_degree: u32,
) -> Result<CalibrationResult> {
    calibrate_ambiguous_with(c, entry, term, candidates, e, max_degree, Parallelism::default())
}

pub fn calibrate_ambiguous_with(
    c: &EquationCorpus,
    entry: usize,
    term: &Monomial,
    candidates: &[NumberFieldElement],
    e: &ModularEmbedding,
    max_degree: u32,
    mode: Parallelism,
) -> Result<CalibrationResult> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    if max_degree < 3 {
        return Err(Error::DegreeOutOfRange { degree: max_degree });
    }
    let current = c
        .entry(entry)
        .ok_or(Error::UnknownEntry { index: entry })?
        .poly
        .coefficient(term)
        .cloned()
        .ok_or_else(|| Error::TermNotPresent { index: entry, term: term.to_string() })?;
    let mut distinct: Vec<NumberFieldElement> = Vec::new();
    for cand in candidates {
        if !distinct.contains(cand) {
            distinct.push(cand.clone());
        }
    }
    let mut outcomes = Vec::new();
    for cand in &distinct {
        let variant = c.with_coefficient(entry, term, cand)?;
        let mut hilbert = Vec::new();
        let mut passes = true;
        for d in 3..=max_degree {
            let h = hilbert_function_with(&variant, d, e, mode)?;
            hilbert.push((d, h.quotient));
            if h.status != Status::Pass {
                passes = false;
                break;
            }
        }
        outcomes.push(CandidateOutcome { value: cand.to_string(), hilbert, passes });
    }
    let passing: Vec<String> = outcomes.iter().filter(|o| o.passes).map(|o| o.value.clone()).collect();
    let resolved = passing.len() == 1;
    let current_passes = distinct.iter().zip(&outcomes).any(|(v, o)| *v == current && o.passes);
    let status = match (resolved, current_passes) {
        (true, true) => Status::Pass,
        (true, false) => Status::Fail,
        (false, _) => Status::Inconclusive,
    };
    Ok(CalibrationResult {
        entry,
        term: term.to_string(),
        current: current.to_string(),
        max_degree,
        candidates: outcomes,
        passing,
        resolved,
        current_passes,
        status,
    })
}

/// Calibrates every flagged term of an explicit entry, using the documented
/// candidate sets (or just the current value when none is documented).
pub fn calibrate_entry(c: &EquationCorpus, entry: usize, e: &ModularEmbedding, max_degree: u32) -> Result<Vec<CalibrationResult>> {
    let found = c.entry(entry).ok_or(Error::UnknownEntry { index: entry })?;
    if let Provenance::G3Image { source, .. } = found.provenance {
        return Err(Error::DerivedEntry { index: entry, seed: source });
    }
    if found.flags.is_empty() {
        return Err(Error::NoFlags { index: entry });
    }
    let known = known_ambiguities();
    found
        .flags
        .iter()
        .map(|term| {
            let candidates = known
                .iter()
                .find(|k| k.entry == entry && k.term == *term)
                .map(|k| k.candidates.clone())
                .unwrap_or_else(|| found.poly.coefficient(term).into_iter().cloned().collect());
            calibrate_ambiguous(c, entry, term, &candidates, e, max_degree)
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RunConfig {
    pub max_degree: u32,
    pub max_betti: usize,
    /// Highest degree used to discriminate calibration candidates.
    pub calibration_degree: u32,
    pub calibrate: bool,
    pub parallelism: Parallelism,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { max_degree: 5, max_betti: 3, calibration_degree: 4, calibrate: true, parallelism: Parallelism::default() }
    }
}

impl RunConfig {
    pub fn deep() -> Self {
        Self { max_degree: 6, max_betti: 4, ..Self::default() }
    }
}

pub use crate::report::{CheckRecord, VerificationReport};

/// Runs every enabled check; failures are recorded in the report.
pub fn run_all(c: &EquationCorpus, e: &ModularEmbedding, config: &RunConfig) -> Result<VerificationReport> {
    let mode = config.parallelism;
    let hilbert = (0..=config.max_degree).map(|d| hilbert_function_with(c, d, e, mode)).collect::<Result<Vec<_>>>()?;
    let betti = if c.len() == CORPUS_SIZE {
        betti_numbers(c, e, config.max_betti.min(4), mode)?
    } else {
        Vec::new()
    };
    let invariance = invariance_certificate(c);
    let smoothness = fixed_point_check(c);
    let points: Vec<(u32, u64)> = hilbert.iter().map(|h| (h.degree, h.quotient)).collect();
    let intersection = if hilbert.iter().all(|h| h.status == Status::Pass) {
        intersection_numbers(&points).map_err(|err| err.to_string())
    } else {
        Err("skipped: a Hilbert value failed".to_string())
    };
    let mut calibration = Vec::new();
    if config.calibrate {
        let entries: BTreeSet<usize> = c.flagged_terms().into_iter().map(|(i, _)| i).collect();
        for entry in entries {
            calibration.extend(calibrate_entry(c, entry, e, config.calibration_degree.max(3))?);
        }
    }
    Ok(VerificationReport::assemble(c, e, config, hilbert, betti, invariance, smoothness, intersection, calibration))
}
