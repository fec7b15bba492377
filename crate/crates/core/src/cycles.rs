//! Permutation algebra for q-cycles: construction, conjugation by rotations,
//! descent number, symmetry order, and combinatorial-type enumeration.
//!
//! A q-cycle acts on `{1, ..., q}` and is stored in one-line form: `table[t]`
//! is the image of `t + 1`. Values are always taken in `{1, ..., q}` (never 0),
//! matching the linear order used to count descents. Cycle notation
//! `(1 σ(1) σ²(1) ⋯)` appears only at I/O boundaries.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Default cap on `q` for [`enumerate_types`]; `(q-1)!` cycles are visited.
pub const DEFAULT_TYPE_BOUND: usize = 9;

/// A q-cycle: a permutation of `{1, ..., q}` that acts transitively.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    /// `table[t]` = image of `t + 1`, a value in `1..=q`.
    table: Vec<usize>,
}

impl Cycle {
    /// Parses cycle notation `(1 σ(1) σ²(1) ⋯ σ^{q-1}(1))` given as the list
    /// of symbols. The list must be a permutation of `{1, ..., q}` starting
    /// with 1.
    pub fn from_cycle_notation(symbols: &[usize]) -> Result<Self> {
        let q = symbols.len();
        if q == 0 {
            return Err(Error::InvalidCycle("empty symbol list".into()));
        }
        if symbols[0] != 1 {
            return Err(Error::InvalidCycle(format!(
                "cycle notation must start with 1, got {}",
                symbols[0]
            )));
        }
        let mut seen = vec![false; q + 1];
        for (pos, &s) in symbols.iter().enumerate() {
            if s < 1 || s > q {
                return Err(Error::InvalidCycle(format!(
                    "symbol {s} at position {pos} is outside 1..={q}"
                )));
            }
            if seen[s] {
                return Err(Error::InvalidCycle(format!(
                    "duplicate symbol {s} at position {pos}"
                )));
            }
            seen[s] = true;
        }
        let mut table = vec![0usize; q];
        for t in 0..q {
            table[symbols[t] - 1] = symbols[(t + 1) % q];
        }
        Ok(Cycle { table })
    }

    /// Builds a cycle from its one-line images `table[t] = σ(t+1)`.
    /// The permutation must be a single q-cycle.
    pub fn from_one_line(table: &[usize]) -> Result<Self> {
        let q = table.len();
        if q == 0 {
            return Err(Error::InvalidCycle("empty one-line table".into()));
        }
        let mut seen = vec![false; q + 1];
        for (pos, &s) in table.iter().enumerate() {
            if s < 1 || s > q {
                return Err(Error::InvalidCycle(format!(
                    "image {s} of {} is outside 1..={q}",
                    pos + 1
                )));
            }
            if seen[s] {
                return Err(Error::InvalidCycle(format!("{s} appears twice as an image")));
            }
            seen[s] = true;
        }
        let cycle = Cycle { table: table.to_vec() };
        // Transitivity: the orbit of 1 must exhaust all q symbols.
        let mut len = 1;
        let mut y = cycle.apply(1);
        while y != 1 {
            y = cycle.apply(y);
            len += 1;
        }
        if len != q {
            return Err(Error::InvalidCycle(format!(
                "permutation is not a {q}-cycle: the orbit of 1 has size {len}"
            )));
        }
        Ok(cycle)
    }

    /// The rotation cycle `ρ^p` on `{1, ..., q}`, i.e. `i ↦ i + p (mod q)`.
    /// Requires `1 <= p < q` and `gcd(p, q) = 1`.
    pub fn rotation(q: usize, p: usize) -> Result<Self> {
        if q < 2 || p == 0 || p >= q {
            return Err(Error::InvalidCycle(format!(
                "rotation power must satisfy 1 <= p < q (got p={p}, q={q})"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { q, p });
        }
        let table = (0..q).map(|t| (t + p) % q + 1).collect();
        Ok(Cycle { table })
    }

    /// The generator `ρ = (1 2 ⋯ q)`.
    pub fn generator(q: usize) -> Result<Self> {
        Cycle::rotation(q, 1)
    }

    /// Number of symbols the cycle acts on.
    pub fn q(&self) -> usize {
        self.table.len()
    }

    /// Applies the cycle to `i ∈ {1, ..., q}`.
    pub fn apply(&self, i: usize) -> usize {
        self.table[i - 1]
    }

    /// One-line images `σ(1), ..., σ(q)`.
    pub fn one_line(&self) -> &[usize] {
        &self.table
    }

    /// Cycle notation `1, σ(1), σ²(1), ...` as a symbol list.
    pub fn cycle_notation(&self) -> Vec<usize> {
        let q = self.q();
        let mut out = Vec::with_capacity(q);
        let mut x = 1;
        for _ in 0..q {
            out.push(x);
            x = self.apply(x);
        }
        out
    }

    /// The inverse cycle.
    pub fn inverse(&self) -> Cycle {
        let q = self.q();
        let mut table = vec![0usize; q];
        for i in 1..=q {
            table[self.apply(i) - 1] = i;
        }
        Cycle { table }
    }

    /// Descent number: the count of `i ∈ ℤ/qℤ` with `σ(i) > σ(i+1)` in the
    /// linear order of `{1, ..., q}`.
    pub fn descent(&self) -> usize {
        let q = self.q();
        (1..=q)
            .filter(|&i| {
                let next = if i == q { 1 } else { i + 1 };
                self.apply(i) > self.apply(next)
            })
            .count()
    }

    /// The conjugate `ρ^{-j} σ ρ^{j}`; `j` is taken mod q.
    pub fn conjugate_by_rotation(&self, j: i64) -> Cycle {
        let q = self.q();
        let j = j.rem_euclid(q as i64) as usize;
        let shift = |x: usize, by: usize| (x - 1 + by) % q + 1;
        let table = (1..=q)
            .map(|i| shift(self.apply(shift(i, j)), q - j))
            .collect();
        Cycle { table }
    }

    /// Symmetry order: the order of the stabilizer of the cycle under
    /// conjugation by the rotation group. Always divides q.
    pub fn symmetry_order(&self) -> usize {
        let q = self.q();
        (0..q)
            .filter(|&j| self.conjugate_by_rotation(j as i64) == *self)
            .count()
    }

    /// For a rotation cycle `σ = ρ^p` returns `p`; otherwise `None`.
    pub fn rotation_power(&self) -> Option<usize> {
        let p = self.apply(1) - 1;
        let candidate = Cycle::rotation(self.q(), p).ok()?;
        (candidate == *self).then_some(p)
    }

    /// Whether the cycle is a rotation cycle (equivalently, descent number 1).
    pub fn is_rotation(&self) -> bool {
        self.rotation_power().is_some()
    }

    /// The combinatorial type `[σ]`: all distinct conjugates under rotations.
    pub fn combinatorial_type(&self) -> CombinatorialType {
        let q = self.q();
        let s = self.symmetry_order();
        let r = q / s;
        let representatives: Vec<Cycle> = (0..r)
            .map(|j| self.conjugate_by_rotation(j as i64))
            .collect();
        debug_assert_eq!(
            representatives.iter().unique().count(),
            r,
            "conjugates within one period of the stabilizer must be distinct"
        );
        let canonical = representatives.iter().min().expect("non-empty").clone();
        CombinatorialType {
            representatives,
            canonical,
            symmetry_order: s,
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cycle_notation().iter().join(" "))
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{self}")
    }
}

/// A conjugacy class of q-cycles under the rotation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    representatives: Vec<Cycle>,
    canonical: Cycle,
    symmetry_order: usize,
}

impl CombinatorialType {
    /// The `r = q / sym(σ)` distinct conjugates forming the class.
    pub fn representatives(&self) -> &[Cycle] {
        &self.representatives
    }

    /// The lexicographically least representative (by one-line table).
    pub fn canonical(&self) -> &Cycle {
        &self.canonical
    }

    /// Number of cycles in the class.
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    /// Common symmetry order of every representative.
    pub fn symmetry_order(&self) -> usize {
        self.symmetry_order
    }

    /// Common descent number of every representative.
    pub fn descent(&self) -> usize {
        self.canonical.descent()
    }

    /// Whether the given cycle belongs to this class.
    pub fn contains(&self, cycle: &Cycle) -> bool {
        self.representatives.contains(cycle)
    }
}

/// Visits every q-cycle exactly once, in lexicographic order of cycle
/// notation. `(q-1)!` cycles in total.
pub fn all_cycles(q: usize) -> impl Iterator<Item = Cycle> {
    (2..=q).permutations(q.saturating_sub(1)).map(move |rest| {
        let mut symbols = Vec::with_capacity(q);
        symbols.push(1);
        symbols.extend(rest);
        Cycle::from_cycle_notation(&symbols).expect("generated symbols form a q-cycle")
    })
}

/// Partitions all `(q-1)!` q-cycles into combinatorial types. Output is
/// ordered by the canonical representative's one-line table. Refuses q above
/// `bound` because of factorial growth.
pub fn enumerate_types(q: usize, bound: usize) -> Result<Vec<CombinatorialType>> {
    if q < 2 {
        return Err(Error::InvalidCycle(format!("q must be at least 2, got {q}")));
    }
    if q > bound {
        return Err(Error::EnumerationBound { q, bound });
    }
    let mut types: Vec<CombinatorialType> = Vec::new();
    let mut seen_canonicals = std::collections::BTreeSet::new();
    for cycle in all_cycles(q) {
        let ty = cycle.combinatorial_type();
        if seen_canonicals.insert(ty.canonical().one_line().to_vec()) {
            types.push(ty);
        }
    }
    types.sort_by(|a, b| a.canonical().one_line().cmp(b.canonical().one_line()));
    Ok(types)
}
