//! Homogeneous polynomials in `U0..U9` and the action of the order-21 group on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::{Field, ModularEmbedding, NumberFieldElement, PrimeFieldElement};
use crate::error::Result;

pub const NVARS: usize = 10;

/// g7 acts on `U_i` by `xi^{WEIGHTS[i]}`.
pub const G7_WEIGHTS: [u8; NVARS] = [0, 6, 5, 3, 1, 2, 4, 1, 2, 4];

/// g3 substitutes `U_i <- U_{G3_SOURCE[i]}`.
pub const G3_SOURCE: [usize; NVARS] = [0, 2, 3, 1, 5, 6, 4, 8, 9, 7];

/// Exponent vector in ten variables, ordered graded reverse lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exponents: [u8; NVARS],
    degree: u8,
}

impl Monomial {
    pub fn new(exponents: [u8; NVARS]) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u8; NVARS] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.exponents[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exponents;
        for (x, y) in e.iter_mut().zip(other.exponents) {
            *x += y;
        }
        Monomial { exponents: e, degree: self.degree + other.degree }
    }

    /// Residue `w` mod 7 with `g7(m) = xi^w m`.
    pub fn g7_weight(&self) -> u8 {
        let w: u32 = self
            .exponents
            .iter()
            .zip(G7_WEIGHTS)
            .map(|(&e, w)| e as u32 * w as u32)
            .sum();
        (w % 7) as u8
    }

    /// Image under the g3 substitution.
    pub fn apply_g3(&self) -> Monomial {
        let mut e = [0; NVARS];
        for (i, &x) in self.exponents.iter().enumerate() {
            e[G3_SOURCE[i]] += x;
        }
        Monomial { exponents: e, degree: self.degree }
    }

    /// Parses the canonical `U0^a*U3` form; `1` is the unit monomial.
    pub fn parse(s: &str) -> Option<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Some(Monomial::one());
        }
        let mut e = [0u8; NVARS];
        for factor in s.split('*') {
            let factor = factor.trim().strip_prefix('U')?;
            let (var, pow) = match factor.split_once('^') {
                Some((v, p)) => (v, p.trim().parse::<u8>().ok()?),
                None => (factor, 1),
            };
            let var: usize = var.trim().parse().ok()?;
            if var >= NVARS {
                return None;
            }
            e[var] = e[var].checked_add(pow)?;
        }
        Some(Monomial::new(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            // Reverse lex: the smaller exponent in the last differing variable wins.
            for i in (0..NVARS).rev() {
                match self.exponents[i].cmp(&other.exponents[i]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "U{i}")?,
                _ => write!(f, "U{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d`, in ascending monomial order.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    fn rec(var: usize, left: u8, cur: &mut [u8; NVARS], out: &mut Vec<Monomial>) {
        if var == NVARS - 1 {
            cur[var] = left;
            out.push(Monomial::new(*cur));
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    rec(0, d as u8, &mut [0; NVARS], &mut out);
    out.sort();
    out
}

/// Column indexing for the monomials of one degree.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    positions: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(degree: u32) -> Self {
        let monomials = monomials_of_degree(degree);
        let positions = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self { monomials, positions }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

/// Binomial coefficient, small arguments only.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<K> {
    terms: BTreeMap<Monomial, K>,
}

pub type NfPolynomial = Polynomial<NumberFieldElement>;
pub type FpPolynomial = Polynomial<PrimeFieldElement>;

impl<K> Default for Polynomial<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial, c: K) -> Self {
        Self::from_terms([(m, c)])
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&K> {
        self.terms.get(m)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Degree of a homogeneous polynomial; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.keys().next()?.degree();
        self.is_homogeneous().then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.mul(k))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// `f(U_{s(0)}, ..., U_{s(9)})` for the g3 source map `s`.
    pub fn apply_g3(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.apply_g3(), c.clone())).collect() }
    }

    pub fn apply_g3_times(&self, times: usize) -> Self {
        (0..times % 3).fold(self.clone(), |f, _| f.apply_g3())
    }

    /// Common g7-weight of all monomials, if there is one.
    pub fn weight_homogeneous(&self) -> Option<u8> {
        let mut weights = self.terms.keys().map(Monomial::g7_weight);
        let w = weights.next()?;
        weights.all(|x| x == w).then_some(w)
    }

    pub fn partial(&self, var: usize) -> Self {
        assert!(var < NVARS, "variable index {var} out of range");
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = *m.exponents();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.mul(&c.from_int_like(e as i64)));
        }
        out
    }

    /// Value at `point`; the zero polynomial evaluates to the zero of the point's field.
    pub fn evaluate(&self, point: &[K; NVARS]) -> K {
        let zero = point[0].zero_like();
        self.terms.iter().fold(zero, |acc, (m, c)| {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc.add(&term)
        })
    }

    pub fn map_coefficients<L: Field>(&self, f: impl Fn(&K) -> Result<L>) -> Result<Polynomial<L>> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }
}

impl NfPolynomial {
    /// Coefficientwise reduction; terms whose coefficient vanishes mod p drop out.
    pub fn reduce_mod(&self, embedding: &ModularEmbedding) -> Result<FpPolynomial> {
        self.map_coefficients(|c| c.reduce(embedding))
    }
}

/// Canonical text: terms in descending monomial order joined by ` + `.
impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, m, c, false)?;
        }
        Ok(())
    }
}

/// Writes `<coeff>[?]*<monomial>`, parenthesizing coefficients that contain `t`
/// or spaces.
pub(crate) fn write_term<K: fmt::Display>(
    f: &mut impl fmt::Write,
    m: &Monomial,
    c: &K,
    flagged: bool,
) -> fmt::Result {
    let coeff = c.to_string();
    if coeff.contains(' ') || coeff.contains('t') {
        write!(f, "({coeff})")?;
    } else {
        write!(f, "{coeff}")?;
    }
    if flagged {
        write!(f, "?")?;
    }
    if m.degree() > 0 {
        write!(f, "*{m}")?;
    }
    Ok(())
}

/// A monomial transformation `U_i -> xi^{phase[i]} U_{perm[i]}`, used to check
/// the group relations without any roots of unity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupElement {
    perm: [usize; NVARS],
    phase: [u8; NVARS],
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { perm: std::array::from_fn(|i| i), phase: [0; NVARS] }
    }

    pub fn g7() -> Self {
        Self { perm: std::array::from_fn(|i| i), phase: G7_WEIGHTS }
    }

    pub fn g3() -> Self {
        Self { perm: G3_SOURCE, phase: [0; NVARS] }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut perm = [0; NVARS];
        let mut phase = [0; NVARS];
        for i in 0..NVARS {
            perm[i] = other.perm[self.perm[i]];
            phase[i] = (self.phase[i] + other.phase[self.perm[i]]) % 7;
        }
        Self { perm, phase }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn inverse(&self) -> Self {
        // The group is finite, so some power is the identity.
        let mut k = 1;
        while self.pow(k) != Self::identity() {
            k += 1;
        }
        self.pow(k - 1)
    }

    /// The `k` in {2, 4} with `g3 g7 g3^-1 = g7^k`, if the relation holds.
    pub fn conjugation_exponent() -> Option<usize> {
        let conj = Self::g3().compose(&Self::g7()).compose(&Self::g3().inverse());
        [2, 4].into_iter().find(|&k| conj == Self::g7().pow(k))
    }
}

/// Per-variable form of the conjugation relation: `w[s(i)] = k w[i] mod 7`.
pub fn conjugation_exponent_by_weights() -> Option<u8> {
    [2u8, 4].into_iter().find(|&k| {
        (0..NVARS).all(|i| G7_WEIGHTS[G3_SOURCE[i]] as u32 % 7 == (k as u32 * G7_WEIGHTS[i] as u32) % 7)
    })
}
