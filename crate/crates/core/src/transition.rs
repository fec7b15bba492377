//! Transition matrices of q-cycles, signatures, winding vectors, and pair
//! matrices `B = A + P`, with exact big-integer powers.
//!
//! The transition matrix `A` of σ has `a_{ij} = 1` iff `j` lies in the cyclic
//! interval `[σ(i), σ(i+1))` of `ℤ/qℤ` (e.g. `[4,2) = {4,5,1}` when q = 5).
//! Under any minimal realization, `a_{ij} = 1` exactly when the image of the
//! partition interval `I_i` covers `I_j`, so every column sums to the descent
//! number `d` and `(1/d)A` is column stochastic.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cycles::Cycle;
use crate::error::{Error, Result};

/// Whether `j ∈ [a, b)` as cyclic intervals of `ℤ/qℤ`, representatives in
/// `{1, ..., q}`. Requires `a != b`.
fn cyclic_interval_contains(a: usize, b: usize, j: usize, q: usize) -> bool {
    let width = (b + q - a) % q;
    debug_assert!(width > 0, "degenerate cyclic interval");
    (j + q - a) % q < width
}

/// A square non-negative integer matrix whose columns all share one sum
/// (`d` for a bare transition matrix, `k` for a pair matrix, `c^n` for the
/// n-th power). Entries are arbitrary-precision from the start: powers
/// overflow machine words already for moderate q and d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    q: usize,
    /// Row-major; `entries[i * q + j]` is the (i, j) entry, 0-based.
    entries: Vec<BigUint>,
    column_sum: BigUint,
}

impl TransitionMatrix {
    /// The transition matrix `A` of a cycle.
    pub fn of_cycle(sigma: &Cycle) -> Self {
        let q = sigma.q();
        let mut entries = vec![BigUint::zero(); q * q];
        for i in 1..=q {
            let lo = sigma.apply(i);
            let hi = sigma.apply(if i == q { 1 } else { i + 1 });
            for j in 1..=q {
                if cyclic_interval_contains(lo, hi, j, q) {
                    entries[(i - 1) * q + (j - 1)] = BigUint::one();
                }
            }
        }
        TransitionMatrix {
            q,
            entries,
            column_sum: BigUint::from(sigma.descent()),
        }
    }

    /// The identity matrix (column sum 1).
    pub fn identity(q: usize) -> Self {
        let mut entries = vec![BigUint::zero(); q * q];
        for i in 0..q {
            entries[i * q + i] = BigUint::one();
        }
        TransitionMatrix {
            q,
            entries,
            column_sum: BigUint::one(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// The common column sum.
    pub fn column_sum(&self) -> &BigUint {
        &self.column_sum
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.q + col]
    }

    /// Row `i` (0-based) as a slice.
    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.entries[i * self.q..(i + 1) * self.q]
    }

    pub fn trace(&self) -> BigUint {
        (0..self.q).map(|i| self.entry(i, i)).sum()
    }

    pub fn is_entrywise_positive(&self) -> bool {
        self.entries.iter().all(|e| !e.is_zero())
    }

    /// Exact matrix product; both factors must have the same dimension.
    pub fn multiply(&self, other: &TransitionMatrix) -> TransitionMatrix {
        assert_eq!(self.q, other.q, "dimension mismatch");
        let q = self.q;
        let mut entries = vec![BigUint::zero(); q * q];
        for i in 0..q {
            for m in 0..q {
                let a = self.entry(i, m);
                if a.is_zero() {
                    continue;
                }
                for j in 0..q {
                    entries[i * q + j] += a * other.entry(m, j);
                }
            }
        }
        TransitionMatrix {
            q,
            entries,
            column_sum: &self.column_sum * &other.column_sum,
        }
    }

    /// Exact n-th power by binary exponentiation; `n = 0` gives the identity.
    pub fn power(&self, n: u64) -> TransitionMatrix {
        let mut result = TransitionMatrix::identity(self.q);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.multiply(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    /// Rows as decimal strings, the JSON wire form (entries of powers exceed
    /// the JSON number range).
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.q)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect()
    }

    #[cfg(test)]
    fn assert_column_sums(&self) {
        for j in 0..self.q {
            let sum: BigUint = (0..self.q).map(|i| self.entry(i, j)).sum();
            assert_eq!(sum, self.column_sum, "column {j} sum mismatch");
        }
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.q {
            for j in 0..self.q {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The signature `sig(σ) = (a_11, ..., a_qq)`: the main diagonal of the
/// transition matrix. Exactly `des(σ) - 1` bits are set; bit `i` marks the
/// interval `I_{i+1}` as mapping over itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    bits: Vec<bool>,
}

impl Signature {
    pub fn of_cycle(sigma: &Cycle) -> Self {
        let q = sigma.q();
        let bits = (1..=q)
            .map(|i| {
                let lo = sigma.apply(i);
                let hi = sigma.apply(if i == q { 1 } else { i + 1 });
                cyclic_interval_contains(lo, hi, i, q)
            })
            .collect();
        Signature { bits }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Signature { bits }
    }

    pub fn q(&self) -> usize {
        self.bits.len()
    }

    /// The bit `a_i` for 1-based `i`.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    /// The last bit `a_q`, which decides realizability under `m_d`.
    pub fn last(&self) -> bool {
        *self.bits.last().expect("non-empty signature")
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The 1-based indices `i_1 < ... < i_{d-1}` of the marked intervals.
    pub fn marked_indices(&self) -> Vec<usize> {
        (1..=self.q()).filter(|&i| self.bit(i)).collect()
    }

    /// Left rotation by `j`: the signature of `ρ^{-j} σ ρ^{j}`, since
    /// `sig(ρ^{-1}σρ) = (a_2, ..., a_q, a_1)`.
    pub fn rotate_left(&self, j: usize) -> Signature {
        let q = self.q();
        let j = j % q;
        let mut bits = Vec::with_capacity(q);
        bits.extend_from_slice(&self.bits[j..]);
        bits.extend_from_slice(&self.bits[..j]);
        Signature { bits }
    }

    pub fn as_u8_vec(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, b) in self.bits.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", *b as u8)?;
        }
        write!(f, ")")
    }
}

/// A winding vector `p = (p_1, ..., p_q)`: how many extra full turns a
/// degree-k realization makes over each partition interval, so
/// `Σ p_i = k - d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingVector {
    p: Vec<u64>,
}

impl WindingVector {
    /// Validates non-negativity of the components.
    pub fn new(components: &[i64]) -> Result<Self> {
        for (t, &v) in components.iter().enumerate() {
            if v < 0 {
                return Err(Error::NegativeWinding { index: t + 1, value: v });
            }
        }
        Ok(WindingVector {
            p: components.iter().map(|&v| v as u64).collect(),
        })
    }

    pub fn from_counts(p: Vec<u64>) -> Self {
        WindingVector { p }
    }

    pub fn components(&self) -> &[u64] {
        &self.p
    }

    pub fn sum(&self) -> u64 {
        self.p.iter().sum()
    }
}

/// The pair matrix `B = A + P`, where `P` has identical columns `p` (adding
/// `(p_i, ..., p_i)` to the i-th row of `A`). Columns of `B` sum to
/// `k = d + Σ p_i`. An all-zero `p` returns `A` itself.
pub fn pair_matrix(sigma: &Cycle, p: &WindingVector) -> TransitionMatrix {
    assert_eq!(sigma.q(), p.p.len(), "winding vector length must equal q");
    let a = TransitionMatrix::of_cycle(sigma);
    let q = a.q;
    let mut entries = a.entries;
    for i in 0..q {
        let add = BigUint::from(p.p[i]);
        if add.is_zero() {
            continue;
        }
        for j in 0..q {
            entries[i * q + j] += &add;
        }
    }
    TransitionMatrix {
        q,
        entries,
        column_sum: a.column_sum + BigUint::from(p.sum()),
    }
}

/// The least `n >= 1` such that `A^n` is entrywise positive, or `None` for a
/// rotation cycle (powers of a permutation matrix are never positive when
/// q > 1). For descent >= 2 the search is capped at `n = q`, where positivity
/// is guaranteed; hitting the cap without it is an internal invariant
/// violation.
pub fn regularity_index(sigma: &Cycle) -> Option<usize> {
    if sigma.descent() < 2 {
        return None;
    }
    let a = TransitionMatrix::of_cycle(sigma);
    let mut power = a.clone();
    for n in 1..=sigma.q() {
        if power.is_entrywise_positive() {
            return Some(n);
        }
        power = power.multiply(&a);
    }
    panic!(
        "internal invariant violated: A^q of {sigma} with descent {} is not positive",
        sigma.descent()
    );
}
