//! Construction of the periodic orbits of `m_k` realizing a given q-cycle,
//! the fixed-point-distribution and deployment-vector parametrizations, and
//! the closed-form realization counts.
//!
//! A cycle σ with descent d >= 2 has a realization under the minimal map
//! `m_d` iff its signature ends in 1, and that orbit is unique: its interval
//! lengths are the stationary vector of the transition matrix, and its first
//! point is `x_1 = (1/(d-1)) Σ_{j ∈ [1,σ(1))} ℓ_j`. For any degree `k`, the
//! realizations of σ under `m_k` are parametrized by the σ-admissible
//! fixed-point distributions `n` (each counted with multiplicity `n_q`, the
//! shift picking how many fixed points of `m_k` land in `(0, x_1)`), or
//! dually by the admissible deployment vectors `w`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cycles::Cycle;
use crate::error::{AdmissibilityClause, Error, Result};
use crate::spectral::{rational_to_string, stationary_vector, Rational, RationalVector};
use crate::transition::{pair_matrix, Signature, WindingVector};

/// A period-q orbit of `m_k`: q exact rationals `0 < x_1 < ... < x_q < 1`
/// closed under multiplication by k mod 1, every point of exact period q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    k: u32,
    points: Vec<Rational>,
}

impl Orbit {
    /// Validates and builds an orbit. The induced map on the sorted points
    /// must be a single q-cycle, which is exactly the statement that every
    /// point has exact period q.
    pub fn new(k: u32, points: Vec<Rational>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidOrbit(format!("degree k = {k} must be >= 2")));
        }
        if points.is_empty() {
            return Err(Error::InvalidOrbit("empty point set".into()));
        }
        for pair in points.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidOrbit("points must be strictly increasing".into()));
            }
        }
        if !points[0].is_positive() || points[points.len() - 1] >= Rational::one() {
            return Err(Error::InvalidOrbit("points must lie strictly inside (0, 1)".into()));
        }
        let orbit = Orbit { k, points };
        orbit.induced_table()?;
        Ok(orbit)
    }

    /// Crate-internal fast path for the brute-force enumerator, which has
    /// already established closure and exact period on raw numerators.
    pub(crate) fn from_enumerator(k: u32, points: Vec<Rational>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Orbit { k, points }
    }

    fn induced_table(&self) -> Result<Vec<usize>> {
        let q = self.points.len();
        let mut table = Vec::with_capacity(q);
        for x in &self.points {
            let image = frac(x * BigInt::from(self.k));
            let j = self
                .points
                .binary_search(&image)
                .map_err(|_| Error::InvalidOrbit(format!(
                    "not closed under m_{}: image of {} is missing",
                    self.k,
                    rational_to_string(x)
                )))?;
            table.push(j + 1);
        }
        // A q-cycle here means one orbit of size exactly q, not a union of
        // shorter ones.
        Cycle::from_one_line(&table)
            .map_err(|_| Error::InvalidOrbit("points do not have exact period q".into()))?;
        Ok(table)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> usize {
        self.points.len()
    }

    /// The points `x_1 < ... < x_q` in reduced form.
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// The cycle realized by the orbit: `m_k(x_i) = x_{σ(i)}`.
    pub fn classify(&self) -> Cycle {
        let table = self.induced_table().expect("validated at construction");
        Cycle::from_one_line(&table).expect("validated at construction")
    }

    /// Common denominator `k^q - 1` and the corresponding numerators. Every
    /// point of a period-q orbit is a multiple of `1/(k^q - 1)`.
    pub fn numerators(&self) -> (Vec<BigUint>, BigUint) {
        let denom = BigUint::from(self.k).pow(self.q() as u32) - BigUint::one();
        let nums = self
            .points
            .iter()
            .map(|x| {
                let scaled = x * BigInt::from(denom.clone());
                debug_assert!(scaled.is_integer(), "orbit point denominator must divide k^q - 1");
                scaled.to_integer().magnitude().clone()
            })
            .collect();
        (nums, denom)
    }

    /// Points as `num/den` strings in lowest terms.
    pub fn reduced_points(&self) -> Vec<String> {
        self.points.iter().map(rational_to_string).collect()
    }

    /// The interval lengths `ℓ_i = x_{i+1} - x_i` (cyclically;
    /// `ℓ_q = x_1 + 1 - x_q`).
    pub fn interval_lengths(&self) -> RationalVector {
        let q = self.q();
        let mut lengths = Vec::with_capacity(q);
        for t in 0..q - 1 {
            lengths.push(&self.points[t + 1] - &self.points[t]);
        }
        lengths.push(&self.points[0] + Rational::one() - &self.points[q - 1]);
        RationalVector::new(lengths)
    }

    /// The fixed point distribution: `n_i` counts fixed points of `m_k` in
    /// the interior of `I_i = [x_i, x_{i+1}]`, and the shift counts those in
    /// `(0, x_1)`. Requires q >= 2 (a period-1 orbit is itself a fixed
    /// point).
    pub fn fix(&self) -> FixVector {
        let q = self.q();
        assert!(q >= 2, "fixed point distribution requires q >= 2");
        let km1 = BigInt::from(self.k - 1);
        let fixed = |j: u32| Rational::new(BigInt::from(j), km1.clone());
        let mut counts = vec![0u64; q];
        let mut shift = 0u64;
        for j in 1..self.k - 1 {
            let f = fixed(j);
            debug_assert!(!self.points.contains(&f), "orbit point cannot be fixed");
            if f < self.points[0] {
                shift += 1;
                counts[q - 1] += 1;
            } else if f > self.points[q - 1] {
                counts[q - 1] += 1;
            } else {
                let t = self.points.partition_point(|x| x < &f);
                counts[t - 1] += 1;
            }
        }
        // The fixed point 0 always lies in the interior of I_q.
        counts[q - 1] += 1;
        debug_assert_eq!(counts.iter().sum::<u64>(), (self.k - 1) as u64);
        FixVector::new(counts, shift).expect("counts derived from a valid orbit")
    }

    /// The cumulative deployment vector: `w_i = #(O ∩ (0, i/(k-1)))`.
    pub fn dep(&self) -> DepVector {
        let km1 = BigInt::from(self.k - 1);
        let w = (1..self.k)
            .map(|i| {
                let bound = Rational::new(BigInt::from(i), km1.clone());
                self.points.partition_point(|x| x < &bound) as u64
            })
            .collect();
        DepVector::new(w).expect("counts of a sorted set are monotone")
    }

    /// The orbit translated by `delta` mod 1 (also a period-q orbit of
    /// `m_k` whenever `(k-1)·delta` is an integer).
    pub fn rotate(&self, delta: &Rational) -> Result<Orbit> {
        let mut points: Vec<Rational> = self.points.iter().map(|x| frac(x + delta)).collect();
        points.sort();
        Orbit::new(self.k, points)
    }

    /// Serializable record carrying both the common-denominator and reduced
    /// forms together with the fix/dep parametrization.
    pub fn to_record(&self) -> OrbitRecord {
        let (nums, denom) = self.numerators();
        let fix = if self.q() >= 2 { Some(self.fix()) } else { None };
        OrbitRecord {
            k: self.k,
            q: self.q(),
            denominator: denom.to_string(),
            numerators: nums.iter().map(|n| n.to_string()).collect(),
            reduced: self.reduced_points(),
            fix: fix.as_ref().map(|f| f.counts().to_vec()),
            shift: fix.as_ref().map(|f| f.shift()),
            dep: Some(self.dep().components().to_vec()),
        }
    }
}

fn frac(x: Rational) -> Rational {
    &x - x.floor()
}

/// JSON wire form of an orbit. Big integers travel as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitRecord {
    pub k: u32,
    pub q: usize,
    pub denominator: String,
    pub numerators: Vec<String>,
    pub reduced: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fix: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dep: Option<Vec<u64>>,
}

/// A fixed point distribution `(n_1, ..., n_q)` together with the shift
/// `n_0`: the number of fixed points in `(0, x_1)`, with `0 <= n_0 < n_q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FixVector {
    counts: Vec<u64>,
    shift: u64,
}

impl FixVector {
    pub fn new(counts: Vec<u64>, shift: u64) -> Result<Self> {
        let last = *counts
            .last()
            .ok_or_else(|| Error::MalformedVector("empty fix vector".into()))?;
        if last == 0 {
            return Err(Error::NotAdmissible(AdmissibilityClause::FixLastZero));
        }
        if shift >= last {
            return Err(Error::ShiftOutOfRange { shift, n_q: last });
        }
        Ok(FixVector { counts, shift })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `n_i` for 1-based `i`.
    pub fn count(&self, i: usize) -> u64 {
        self.counts[i - 1]
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn q(&self) -> usize {
        self.counts.len()
    }
}

impl fmt::Display for FixVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, c) in self.counts.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A cumulative deployment vector `(w_1, ..., w_{k-1})`, non-decreasing with
/// `w_{k-1} = q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DepVector {
    w: Vec<u64>,
}

impl DepVector {
    pub fn new(w: Vec<u64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::MalformedVector("empty dep vector".into()));
        }
        for (t, pair) in w.windows(2).enumerate() {
            if pair[0] > pair[1] {
                return Err(Error::NotAdmissible(AdmissibilityClause::DepNotMonotone {
                    index: t + 2,
                }));
            }
        }
        Ok(DepVector { w })
    }

    pub fn components(&self) -> &[u64] {
        &self.w
    }

    /// The degree this vector parametrizes: `k = len + 1`.
    pub fn degree(&self) -> u32 {
        self.w.len() as u32 + 1
    }
}

impl fmt::Display for DepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, c) in self.w.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Checks σ-admissibility of `n` in degree `k`: `Σ n_i = k - 1`, `n_q >= 1`
/// (structural in [`FixVector`]), and `n >= sig(σ)` componentwise.
pub fn check_admissible(sigma: &Cycle, k: u32, n: &FixVector) -> Result<()> {
    let q = sigma.q();
    if n.q() != q {
        return Err(Error::MalformedVector(format!(
            "fix vector has {} components, expected q = {q}",
            n.q()
        )));
    }
    let sum = n.sum();
    if sum != (k - 1) as u64 {
        return Err(Error::NotAdmissible(AdmissibilityClause::FixSum {
            expected: (k - 1) as u64,
            found: sum,
        }));
    }
    let sig = Signature::of_cycle(sigma);
    for i in 1..=q {
        if sig.bit(i) && n.count(i) == 0 {
            return Err(Error::NotAdmissible(AdmissibilityClause::FixBelowSignature {
                index: i,
            }));
        }
    }
    Ok(())
}

/// Shared construction: given the stationary lengths, lays the points out by
/// `x_1 = (shift + Σ_{j ∈ [1,σ(1))} ℓ_j) / (k-1)` and prefix sums, then
/// verifies the result realizes σ exactly.
fn construct_orbit(sigma: &Cycle, k: u32, ell: &RationalVector, shift: u64) -> Result<Orbit> {
    let q = sigma.q();
    let head: Rational = ell.entries()[..sigma.apply(1) - 1].iter().sum();
    let x1 = (Rational::from_integer(BigInt::from(shift)) + head)
        / Rational::from_integer(BigInt::from(k - 1));
    let mut points = Vec::with_capacity(q);
    points.push(x1);
    for t in 1..q {
        let next = &points[t - 1] + ell.entry(t - 1);
        points.push(next);
    }
    let orbit = Orbit::new(k, points)?;
    if orbit.classify() != *sigma {
        return Err(Error::InternalInvariant(format!(
            "constructed orbit realizes {} instead of {sigma}",
            orbit.classify()
        )));
    }
    Ok(orbit)
}

/// The unique realization of σ under the minimal map `m_d`, `d = des(σ)`.
/// Exists iff the signature ends in 1; rotation cycles (d = 1) have no
/// minimal realization since `m_1` is the identity.
pub fn realize_minimal(sigma: &Cycle) -> Result<Orbit> {
    let d = sigma.descent();
    if d < 2 {
        return Err(Error::RotationCycle);
    }
    let sig = Signature::of_cycle(sigma);
    if !sig.last() {
        return Err(Error::NotRealizable);
    }
    let ell = stationary_vector(&crate::transition::TransitionMatrix::of_cycle(sigma))?;
    construct_orbit(sigma, d as u32, &ell, 0)
}

/// The unique realization of σ under `m_k` with fixed point distribution `n`
/// and the given shift. Requires `k >= max(des(σ), 2)` and `n` σ-admissible
/// in degree `k`; the minimal case `k = d` admits only `n = sig(σ)`.
pub fn realize_general(sigma: &Cycle, k: u32, n: &FixVector) -> Result<Orbit> {
    let d = sigma.descent();
    let min = (d as u32).max(2);
    if k < min {
        return Err(Error::DegreeTooSmall { k, min });
    }
    check_admissible(sigma, k, n)?;
    let sig = Signature::of_cycle(sigma);
    let p: Vec<u64> = (1..=sigma.q())
        .map(|i| n.count(i) - sig.bit(i) as u64)
        .collect();
    let b = pair_matrix(sigma, &WindingVector::from_counts(p));
    let ell = stationary_vector(&b)?;
    construct_orbit(sigma, k, &ell, n.shift())
}

/// The unique realization of σ under `m_k` with deployment vector `w`.
pub fn realize_from_dep(sigma: &Cycle, k: u32, w: &DepVector) -> Result<Orbit> {
    let d = sigma.descent();
    let min = (d as u32).max(2);
    if k < min {
        return Err(Error::DegreeTooSmall { k, min });
    }
    if w.components().len() != (k - 1) as usize {
        return Err(Error::MalformedVector(format!(
            "dep vector has {} components, expected k - 1 = {}",
            w.components().len(),
            k - 1
        )));
    }
    let q = sigma.q();
    check_dep_admissible(sigma, w)?;
    let n = dep_to_fix(w, q)?;
    realize_general(sigma, k, &n)
}

/// Checks the two dep-admissibility conditions against σ: components bounded
/// by and ending at q, and every marked interval index present.
pub fn check_dep_admissible(sigma: &Cycle, w: &DepVector) -> Result<()> {
    check_dep_shape(w, sigma.q())?;
    let sig = Signature::of_cycle(sigma);
    for i in sig.marked_indices() {
        if !w.components().contains(&(i as u64)) {
            return Err(Error::NotAdmissible(AdmissibilityClause::DepMissingMarked {
                index: i,
            }));
        }
    }
    Ok(())
}

fn check_dep_shape(w: &DepVector, q: usize) -> Result<()> {
    let q = q as u64;
    for (t, &v) in w.components().iter().enumerate() {
        if v > q {
            return Err(Error::NotAdmissible(AdmissibilityClause::DepOutOfRange {
                index: t + 1,
            }));
        }
    }
    let last = *w.components().last().expect("non-empty");
    if last != q {
        return Err(Error::NotAdmissible(AdmissibilityClause::DepLastNotQ {
            found: last,
            q,
        }));
    }
    Ok(())
}

/// Converts a fixed point distribution (with shift) to the deployment
/// vector: each index j with `n_j > 0` is listed `n_j` times in increasing
/// order, except that the final block of q's loses `shift` copies, which
/// reappear as leading zeros. This makes `w_i = #(O ∩ (0, i/(k-1)))` hold
/// literally: shifting the orbit by `1/(k-1)` pushes one more fixed point
/// below `x_1` and prepends one more zero component.
pub fn fix_to_dep(n: &FixVector, k: u32, q: usize) -> Result<DepVector> {
    if n.q() != q {
        return Err(Error::MalformedVector(format!(
            "fix vector has {} components, expected q = {q}",
            n.q()
        )));
    }
    if n.sum() != (k - 1) as u64 {
        return Err(Error::NotAdmissible(AdmissibilityClause::FixSum {
            expected: (k - 1) as u64,
            found: n.sum(),
        }));
    }
    let mut w = Vec::with_capacity((k - 1) as usize);
    w.extend(std::iter::repeat_n(0u64, n.shift() as usize));
    for j in 1..=q {
        let copies = if j == q { n.count(j) - n.shift() } else { n.count(j) };
        w.extend(std::iter::repeat_n(j as u64, copies as usize));
    }
    debug_assert_eq!(w.len(), (k - 1) as usize);
    DepVector::new(w)
}

/// Inverse of [`fix_to_dep`]: leading zeros give the shift (a zero component
/// `w_i = 0` forces at least `i` fixed points below `x_1`), multiplicities
/// give the counts, and the shift re-enters `n_q`.
pub fn dep_to_fix(w: &DepVector, q: usize) -> Result<FixVector> {
    check_dep_shape(w, q)?;
    let mut counts = vec![0u64; q];
    let mut shift = 0u64;
    for &v in w.components() {
        if v == 0 {
            shift += 1;
        } else {
            counts[(v - 1) as usize] += 1;
        }
    }
    counts[q - 1] += shift;
    FixVector::new(counts, shift)
}

/// All σ-admissible pairs `(n, shift)` in degree `k`, in lexicographic order
/// of `n` then shift. The list length is the closed-form count; `k = d` yields
/// just the minimal vector `n = sig(σ)` (or nothing when `a_q = 0`).
pub fn enumerate_admissible(sigma: &Cycle, k: u32) -> Result<Vec<FixVector>> {
    let q = sigma.q();
    let d = sigma.descent();
    let min = (d as u32).max(2);
    if k < min {
        return Err(Error::DegreeTooSmall { k, min });
    }
    let sig = Signature::of_cycle(sigma);
    let mut base: Vec<u64> = (1..=q).map(|i| sig.bit(i) as u64).collect();
    let mut free = (k as u64) - (d as u64);
    if !sig.last() {
        if free == 0 {
            return Ok(Vec::new());
        }
        base[q - 1] += 1;
        free -= 1;
    }
    let mut out = Vec::new();
    let mut composition = vec![0u64; q];
    distribute(&mut composition, 0, free, &base, &mut out);
    Ok(out)
}

fn distribute(
    composition: &mut Vec<u64>,
    slot: usize,
    remaining: u64,
    base: &[u64],
    out: &mut Vec<FixVector>,
) {
    let q = base.len();
    if slot == q - 1 {
        composition[slot] = remaining;
        let counts: Vec<u64> = base.iter().zip(composition.iter()).map(|(b, c)| b + c).collect();
        let n_q = counts[q - 1];
        for shift in 0..n_q {
            out.push(FixVector::new(counts.clone(), shift).expect("n_q >= 1 by construction"));
        }
        return;
    }
    for c in 0..=remaining {
        composition[slot] = c;
        distribute(composition, slot + 1, remaining - c, base, out);
    }
    composition[slot] = 0;
}

/// The number of realizations of σ under `m_k`: the binomial
/// `C(q + k - d + a_q - 1, q)`, which vanishes for `k < d` and reduces to
/// `a_q` in the minimal case `k = d`.
pub fn count_cycle_realizations(sigma: &Cycle, k: u32) -> BigUint {
    let q = sigma.q() as i64;
    let d = sigma.descent() as i64;
    let a_q = Signature::of_cycle(sigma).last() as i64;
    let top = q + (k as i64) - d + a_q - 1;
    if top < q {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(top as u64), BigUint::from(q as u64))
}

/// The number of realizations of the combinatorial type `[σ]` under `m_k`:
/// `((k-1)/s) · C(q + k - d - 1, q - 1)` with `s = sym(σ)`, valid for all
/// `k >= max(d, 2)` (at `k = d` it reduces to `(d-1)/s`).
pub fn count_type_realizations(sigma: &Cycle, k: u32) -> Result<BigUint> {
    let q = sigma.q() as u64;
    let d = sigma.descent() as u64;
    let min = (d as u32).max(2);
    if k < min {
        return Err(Error::DegreeTooSmall { k, min });
    }
    let s = sigma.symmetry_order() as u64;
    let product = BigUint::from(k as u64 - 1)
        * num_integer::binomial(BigUint::from(q + k as u64 - d - 1), BigUint::from(q - 1));
    let (quotient, remainder) = num_integer::div_rem(product, BigUint::from(s));
    if !remainder.is_zero() {
        return Err(Error::InternalInvariant(
            "type count is not divisible by the symmetry order".into(),
        ));
    }
    Ok(quotient)
}

/// All realizations of the combinatorial type `[σ]` under the minimal map
/// `m_d`: the `(d-1)/s` rotated copies `O - j/(d-1)` of the orbit of a
/// representative whose signature ends in 1. Each copy is invariant under
/// `x ↦ x - 1/s`.
pub fn rotated_type_realizations(sigma: &Cycle) -> Result<Vec<Orbit>> {
    let d = sigma.descent();
    if d < 2 {
        return Err(Error::RotationCycle);
    }
    let sig = Signature::of_cycle(sigma);
    let j0 = if sig.last() {
        0
    } else {
        sig.marked_indices()[0]
    };
    let rep = sigma.conjugate_by_rotation(j0 as i64);
    let base = realize_minimal(&rep)?;
    let s = sigma.symmetry_order();
    let copies = (d - 1) / s;
    (0..copies)
        .map(|j| {
            let delta = Rational::new(BigInt::from(-(j as i64)), BigInt::from(d as i64 - 1));
            base.rotate(&delta)
        })
        .collect()
}
