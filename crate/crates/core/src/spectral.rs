//! Exact stationary vectors of transition matrices: the unique probability
//! vector `ℓ` with `Aℓ = dℓ` (or `Bℓ = kℓ`), computed over the rationals,
//! plus an independent power-iteration cross-check.
//!
//! No floating point: the singular system `(M - cI)ℓ = 0` is solved by
//! replacing its last row with the normalization `Σ ℓ_i = 1` and running
//! Gaussian elimination over arbitrary-precision rationals. Exact arithmetic
//! has no stability concern, so pivoting simply takes the first nonzero
//! entry, which keeps the elimination deterministic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::transition::TransitionMatrix;

/// Exact arbitrary-precision rational scalar; always kept in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

/// Formats a rational as `num/den` in lowest terms, the wire form.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `num/den` wire form (also accepts a bare integer).
pub fn rational_from_string(s: &str) -> Result<Rational> {
    let parse_int = |part: &str| {
        part.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::InvalidCycle(format!("bad rational component {part:?}: {e}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidCycle("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// A length-q vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// Entries as `num/den` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(rational_to_string).collect()
    }

    /// Clears denominators: the least `D > 0` with `D * ℓ` integral, and the
    /// resulting integer entries.
    pub fn common_denominator(&self) -> (BigUint, Vec<BigUint>) {
        let mut denom = BigUint::one();
        for e in &self.entries {
            let d = e.denom().magnitude();
            denom = num_integer::lcm(denom, d.clone());
        }
        let scaled = self
            .entries
            .iter()
            .map(|e| {
                let scaled = e * BigInt::from(denom.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer().magnitude().clone()
            })
            .collect();
        (denom, scaled)
    }
}

/// Solves a dense q x (q+1) augmented rational system in place. Pivots on the
/// first nonzero entry of each column.
fn solve_augmented(mut aug: Vec<Vec<Rational>>) -> Result<Vec<Rational>> {
    let n = aug.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::InternalInvariant("singular stationary system".into()))?;
        aug.swap(col, pivot_row);
        let pivot = aug[col][col].clone();
        for entry in &mut aug[col][col..] {
            *entry /= &pivot;
        }
        let pivot_row: Vec<Rational> = aug[col][col..].to_vec();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row[col..].iter_mut().zip(&pivot_row) {
                *entry -= &factor * p;
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// The unique probability vector `ℓ` with `Mℓ = c·ℓ`, where `c` is the
/// common column sum of `M`. Requires `c >= 2`; the matrix of a rotation
/// cycle (c = 1) is rejected, since realizations of rotation cycles go
/// through pair matrices whose column sums are at least 2.
pub fn stationary_vector(m: &TransitionMatrix) -> Result<RationalVector> {
    let q = m.q();
    let c = m.column_sum();
    if *c <= BigUint::one() {
        return Err(Error::ColumnSumOne);
    }
    let c_int = BigInt::from(c.clone());
    // (M - cI) ℓ = 0 with the last row replaced by Σ ℓ_i = 1. Any row works
    // (the rows of M - cI sum to zero), the last keeps it deterministic.
    let mut aug = Vec::with_capacity(q);
    for i in 0..q - 1 {
        let mut row: Vec<Rational> = (0..q)
            .map(|j| Rational::from_integer(BigInt::from(m.entry(i, j).clone())))
            .collect();
        row[i] -= Rational::from_integer(c_int.clone());
        row.push(Rational::zero());
        aug.push(row);
    }
    let mut norm = vec![Rational::one(); q + 1];
    norm[q] = Rational::one();
    aug.push(norm);

    let ell = RationalVector::new(solve_augmented(aug)?);
    if !verify_eigen(m, &ell) {
        return Err(Error::InternalInvariant(
            "stationary solution failed verification".into(),
        ));
    }
    Ok(ell)
}

/// The entrywise nearest-integer rounding of `(c^q - 1) · c^{-n} · M^n`,
/// computed exactly. Once `n` is large enough the columns become identical
/// and equal to `(c^q - 1) ℓ`, which gives an independent route to the
/// stationary vector. Returned row-major.
pub fn stationary_by_iteration(m: &TransitionMatrix, n: u64) -> Result<Vec<BigUint>> {
    let q = m.q();
    let c = m.column_sum();
    if *c <= BigUint::one() {
        return Err(Error::ColumnSumOne);
    }
    let power = m.power(n);
    let scale = Rational::new(
        BigInt::from(c.pow(q as u32) - BigUint::one()),
        BigInt::from(c.pow(n as u32)),
    );
    let mut out = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            let exact = &scale * BigInt::from(power.entry(i, j).clone());
            out.push(exact.round().to_integer().magnitude().clone());
        }
    }
    Ok(out)
}

/// Extracts column `j` from a row-major q x q snapshot.
pub fn snapshot_column(snapshot: &[BigUint], q: usize, j: usize) -> Vec<BigUint> {
    (0..q).map(|i| snapshot[i * q + j].clone()).collect()
}

/// Whether all columns of a row-major q x q snapshot are identical; if so,
/// returns the common column.
pub fn snapshot_stabilized(snapshot: &[BigUint], q: usize) -> Option<Vec<BigUint>> {
    let first = snapshot_column(snapshot, q, 0);
    for j in 1..q {
        if snapshot_column(snapshot, q, j) != first {
            return None;
        }
    }
    Some(first)
}

/// Exact check that `ℓ` is the stationary probability vector of `M`:
/// `Mℓ = c·ℓ`, `Σ ℓ_i = 1`, and every `ℓ_i > 0`.
pub fn verify_eigen(m: &TransitionMatrix, ell: &RationalVector) -> bool {
    let q = m.q();
    if ell.len() != q || !ell.is_positive() || !ell.sum().is_one() {
        return false;
    }
    let c = BigInt::from(m.column_sum().clone());
    for i in 0..q {
        let lhs: Rational = (0..q)
            .map(|j| ell.entry(j) * BigInt::from(m.entry(i, j).clone()))
            .sum();
        if lhs != ell.entry(i) * &c {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::Cycle;
    use crate::transition::{pair_matrix, TransitionMatrix, WindingVector};

    fn cyc(symbols: &[usize]) -> Cycle {
        Cycle::from_cycle_notation(symbols).unwrap()
    }

    fn ratio(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn expect_vector(nums: &[i64], den: i64) -> RationalVector {
        RationalVector::new(nums.iter().map(|&n| ratio(n, den)).collect())
    }

    #[test]
    fn stationary_of_example_five_cycle() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 4, 5, 3]));
        let ell = stationary_vector(&a).unwrap();
        assert_eq!(ell, expect_vector(&[32, 38, 58, 46, 68], 242));
    }

    #[test]
    fn stationary_of_example_six_cycle() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 5, 6, 3, 4]));
        let ell = stationary_vector(&a).unwrap();
        assert_eq!(ell, expect_vector(&[546, 819, 546, 819, 546, 819], 4095));
    }

    #[test]
    fn stationary_of_example_eight_cycle() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 4, 7, 5, 6, 8, 3]));
        let ell = stationary_vector(&a).unwrap();
        assert_eq!(
            ell,
            expect_vector(
                &[21284, 52584, 53836, 67608, 21284, 52584, 53836, 67608],
                390624
            )
        );
    }

    #[test]
    fn stationary_rejects_rotation_cycles() {
        let a = TransitionMatrix::of_cycle(&Cycle::rotation(5, 2).unwrap());
        assert!(matches!(stationary_vector(&a), Err(Error::ColumnSumOne)));
        assert!(matches!(
            stationary_by_iteration(&a, 10),
            Err(Error::ColumnSumOne)
        ));
    }

    #[test]
    fn iteration_stabilizes_to_scaled_stationary() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 4, 5, 3]));
        let snapshot = stationary_by_iteration(&a, 40).unwrap();
        let column = snapshot_stabilized(&snapshot, 5).expect("stabilized by n = 40");
        let expected: Vec<BigUint> = [32u32, 38, 58, 46, 68]
            .iter()
            .map(|&n| BigUint::from(n))
            .collect();
        assert_eq!(column, expected);

        // Consecutive snapshots agree once stabilized.
        let next = stationary_by_iteration(&a, 41).unwrap();
        assert_eq!(snapshot, next);
    }

    #[test]
    fn verify_eigen_detects_wrong_vectors() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 4, 5, 3]));
        let good = stationary_vector(&a).unwrap();
        assert!(verify_eigen(&a, &good));

        let mut swapped = good.entries().to_vec();
        swapped.swap(0, 1);
        assert!(!verify_eigen(&a, &RationalVector::new(swapped)));
    }

    #[test]
    fn stationary_of_pair_matrix() {
        // B for the first admissible vector of the degree-4 realizations of
        // (1 2 4 5 3): p = (1,0,0,0,0).
        let sigma = cyc(&[1, 2, 4, 5, 3]);
        let b = pair_matrix(&sigma, &WindingVector::new(&[1, 0, 0, 0, 0]).unwrap());
        let ell = stationary_vector(&b).unwrap();
        assert_eq!(ell, expect_vector(&[330, 99, 198, 165, 231], 1023));
        assert!(verify_eigen(&b, &ell));
    }

    #[test]
    fn rational_string_round_trip() {
        let r = ratio(-6, 8);
        assert_eq!(rational_to_string(&r), "-3/4");
        assert_eq!(rational_from_string("-3/4").unwrap(), r);
        assert_eq!(rational_from_string("7").unwrap(), ratio(7, 1));
        assert!(rational_from_string("1/0").is_err());
    }

    #[test]
    fn common_denominator_of_stationary_is_c_pow_q_minus_one_divisor() {
        let a = TransitionMatrix::of_cycle(&cyc(&[1, 2, 4, 5, 3]));
        let (den, nums) = stationary_vector(&a).unwrap().common_denominator();
        // 242 = 3^5 - 1 divided by gcd 2.
        assert_eq!(den, BigUint::from(121u32));
        assert_eq!(
            nums,
            [16u32, 19, 29, 23, 34]
                .iter()
                .map(|&n| BigUint::from(n))
                .collect::<Vec<_>>()
        );
    }
}
