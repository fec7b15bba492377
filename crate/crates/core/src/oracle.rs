//! Independent brute-force ground truth: enumerate every period-q orbit of
//! `m_k` exactly, classify each by the cycle it realizes, and cross-check
//! the realization constructions and the closed-form counts.
//!
//! Period-q points of `m_k` are exactly the rationals `a/(k^q - 1)`, so the
//! enumeration walks numerators under multiplication by k mod `k^q - 1` and
//! keeps the orbits of size exactly q. The Möbius count
//! `Σ_{j|q} μ(q/j)(k^j - 1)` is then asserted as an independent total.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cycles::{all_cycles, enumerate_types, Cycle, DEFAULT_TYPE_BOUND};
use crate::error::{Error, Result};
use crate::realization::{
    count_cycle_realizations, count_type_realizations, enumerate_admissible, fix_to_dep,
    realize_general, Orbit, OrbitRecord,
};
use crate::spectral::Rational;

/// Default enumeration budget: refuse when `k^q` exceeds this.
pub const DEFAULT_ORBIT_BUDGET: u64 = 10_000_000;

/// Every period-q orbit of `m_k`, classified by realized cycle and by
/// combinatorial type.
#[derive(Debug, Clone)]
pub struct OrbitCatalog {
    q: usize,
    k: u32,
    modulus: u64,
    /// Sorted numerators over `k^q - 1` per orbit, ordered by least numerator.
    raw: Vec<Vec<u64>>,
    orbits: Vec<Orbit>,
    classifications: Vec<Cycle>,
    by_cycle: BTreeMap<Cycle, Vec<usize>>,
    by_type: BTreeMap<Cycle, Vec<usize>>,
}

/// JSON-lines wire form: one catalog orbit per line.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogRecord {
    #[serde(flatten)]
    pub orbit: OrbitRecord,
    /// The realized cycle, in cycle notation.
    pub cycle: String,
    /// Canonical representative of the realized combinatorial type.
    pub type_representative: String,
}

impl OrbitCatalog {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The common denominator `k^q - 1`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Sorted numerators of orbit `i` over the modulus.
    pub fn raw_numerators(&self, i: usize) -> &[u64] {
        &self.raw[i]
    }

    /// The cycle realized by orbit `i`.
    pub fn classification(&self, i: usize) -> &Cycle {
        &self.classifications[i]
    }

    /// Orbit indices grouped by realized cycle.
    pub fn by_cycle(&self) -> &BTreeMap<Cycle, Vec<usize>> {
        &self.by_cycle
    }

    /// Orbit indices grouped by the canonical representative of the type.
    pub fn by_type(&self) -> &BTreeMap<Cycle, Vec<usize>> {
        &self.by_type
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn record(&self, i: usize) -> CatalogRecord {
        let ty = self.classifications[i].combinatorial_type();
        CatalogRecord {
            orbit: self.orbits[i].to_record(),
            cycle: self.classifications[i].to_string(),
            type_representative: ty.canonical().to_string(),
        }
    }
}

/// The cycle realized by an orbit: `m_k(x_i) = x_{σ(i)}`.
pub fn classify(orbit: &Orbit) -> Cycle {
    orbit.classify()
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Walks the orbit of `a` under multiplication by k. Returns the members in
/// visit order; the length divides q.
fn walk(a: u64, k: u64, modulus: u64, q: usize) -> Vec<u64> {
    let mut members = Vec::with_capacity(q);
    members.push(a);
    let mut b = mulmod(k, a, modulus);
    while b != a {
        members.push(b);
        b = mulmod(k, b, modulus);
    }
    debug_assert!(q.is_multiple_of(members.len()), "orbit size must divide q");
    members
}

/// The Möbius function on small arguments, by trial factorization.
fn mobius(mut n: u64) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact number of points of period exactly q among the `a/(k^q - 1)`.
/// For q = 1 the fixed point 0 is excluded, matching the convention that
/// orbit points lie strictly inside (0, 1).
pub fn expected_point_count(q: usize, k: u32) -> u64 {
    let mut total: i128 = 0;
    for j in 1..=q {
        if q.is_multiple_of(j) {
            let points = (k as i128).pow(j as u32) - 1;
            total += mobius((q / j) as u64) as i128 * points;
        }
    }
    if q == 1 {
        total -= 1;
    }
    total as u64
}

fn check_budget(q: usize, k: u32, budget: u64) -> Result<u64> {
    if k < 2 || q < 1 {
        return Err(Error::InvalidOrbit(format!(
            "enumeration requires k >= 2 and q >= 1 (got k = {k}, q = {q})"
        )));
    }
    let needed = num_bigint::BigUint::from(k).pow(q as u32);
    if needed > num_bigint::BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    let needed: u64 = (&needed).try_into().expect("within u64 budget");
    Ok(needed - 1)
}

/// Serial enumeration: a visited bitmap over numerators avoids re-deriving
/// orbits, and scanning numerators in ascending order yields the orbits
/// sorted by least member.
fn enumerate_serial(modulus: u64, k: u64, q: usize) -> Vec<Vec<u64>> {
    let mut visited = vec![false; modulus as usize];
    let mut out = Vec::new();
    for a in 1..modulus {
        if visited[a as usize] {
            continue;
        }
        let members = walk(a, k, modulus, q);
        for &m in &members {
            visited[m as usize] = true;
        }
        if members.len() == q {
            let mut sorted = members;
            sorted.sort_unstable();
            out.push(sorted);
        }
    }
    out
}

/// Parallel enumeration over numerator ranges: each orbit is owned by its
/// least member, so workers never race and the merged result is identical to
/// the serial scan.
fn enumerate_parallel(modulus: u64, k: u64, q: usize, jobs: usize) -> Vec<Vec<u64>> {
    let chunk = modulus.div_ceil(jobs as u64).max(1);
    let mut results: Vec<Vec<Vec<u64>>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs as u64 {
            let lo = (1 + w * chunk).min(modulus);
            let hi = (1 + (w + 1) * chunk).min(modulus);
            handles.push(scope.spawn(move || {
                let mut local = Vec::new();
                'next: for a in lo..hi {
                    let mut members = Vec::with_capacity(q);
                    members.push(a);
                    let mut b = mulmod(k, a, modulus);
                    while b != a {
                        if b < a {
                            continue 'next;
                        }
                        members.push(b);
                        b = mulmod(k, b, modulus);
                    }
                    if members.len() == q {
                        members.sort_unstable();
                        local.push(members);
                    }
                }
                local
            }));
        }
        for handle in handles {
            results.push(handle.join().expect("enumeration worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

/// Enumerates every period-q orbit of `m_k` as exact rationals, classifies
/// each by the cycle it realizes, and groups by cycle and combinatorial
/// type. Orbits are ordered by least numerator regardless of `jobs`.
pub fn enumerate_orbits(q: usize, k: u32, budget: u64, jobs: usize) -> Result<OrbitCatalog> {
    let modulus = check_budget(q, k, budget)?;
    let raw = if jobs > 1 {
        enumerate_parallel(modulus, k as u64, q, jobs)
    } else {
        enumerate_serial(modulus, k as u64, q)
    };

    let expected = expected_point_count(q, k);
    let found = raw.len() as u64 * q as u64;
    if found != expected {
        return Err(Error::InternalInvariant(format!(
            "orbit enumeration found {found} period-{q} points, Möbius count expects {expected}"
        )));
    }

    let mut orbits = Vec::with_capacity(raw.len());
    let mut classifications = Vec::with_capacity(raw.len());
    let mut by_cycle: BTreeMap<Cycle, Vec<usize>> = BTreeMap::new();
    let mut by_type: BTreeMap<Cycle, Vec<usize>> = BTreeMap::new();
    for (idx, nums) in raw.iter().enumerate() {
        let points: Vec<Rational> = nums
            .iter()
            .map(|&a| Rational::new(BigInt::from(a), BigInt::from(modulus)))
            .collect();
        let orbit = Orbit::from_enumerator(k, points);
        let table: Vec<usize> = nums
            .iter()
            .map(|&a| {
                let image = mulmod(k as u64, a, modulus);
                nums.binary_search(&image).expect("closed by construction") + 1
            })
            .collect();
        let sigma = Cycle::from_one_line(&table)
            .expect("a size-q orbit induces a transitive permutation");
        by_cycle.entry(sigma.clone()).or_default().push(idx);
        by_type
            .entry(sigma.combinatorial_type().canonical().clone())
            .or_default()
            .push(idx);
        orbits.push(orbit);
        classifications.push(sigma);
    }

    Ok(OrbitCatalog {
        q,
        k,
        modulus,
        raw,
        orbits,
        classifications,
        by_cycle,
        by_type,
    })
}

/// Per-cycle verification line.
#[derive(Debug, Clone, Serialize)]
pub struct CycleCheck {
    pub cycle: String,
    pub descent: usize,
    pub signature_last: bool,
    /// Orbits the oracle found realizing this cycle.
    pub tally: u64,
    /// The closed-form count.
    pub expected: u64,
    /// Realizations constructed from admissible vectors and located verbatim
    /// in the catalog with matching fix/dep.
    pub reconstructed: u64,
    pub pass: bool,
}

/// Per-type verification line.
#[derive(Debug, Clone, Serialize)]
pub struct TypeCheck {
    pub representative: String,
    pub size: usize,
    pub symmetry_order: usize,
    pub descent: usize,
    pub tally: u64,
    pub expected: u64,
    pub pass: bool,
}

/// Raw fix/dep duality over the whole catalog.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitConsistency {
    pub orbits_checked: u64,
    pub fix_dep_failures: u64,
}

/// Machine-readable verification report; `pass` is the overall verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub q: usize,
    pub k: u32,
    pub total_orbits: u64,
    pub expected_points: u64,
    pub found_points: u64,
    /// True when the checks were restricted to one combinatorial type.
    pub filtered: bool,
    pub cycles: Vec<CycleCheck>,
    pub types: Vec<TypeCheck>,
    pub orbit_consistency: OrbitConsistency,
    pub pass: bool,
}

fn small_count(value: num_bigint::BigUint) -> Result<u64> {
    (&value)
        .try_into()
        .map_err(|_| Error::InternalInvariant("count exceeds u64 within budget".into()))
}

/// Compares, for every cycle in scope and its combinatorial type, the oracle
/// tally against the closed-form counts, and reconstructs every admissible
/// realization to find it verbatim in the catalog. `filter` restricts the
/// scope to the combinatorial type of the given cycle; without it all
/// `(q-1)!` cycles are checked, so q is capped at the enumeration bound.
pub fn verify_counts(
    q: usize,
    k: u32,
    budget: u64,
    filter: Option<&Cycle>,
    jobs: usize,
) -> Result<VerifyReport> {
    if q < 2 {
        return Err(Error::InvalidCycle(
            "verification requires q >= 2 (period-1 orbits are fixed points)".into(),
        ));
    }
    let catalog = enumerate_orbits(q, k, budget, jobs)?;

    let (scope_cycles, scope_types, filtered) = match filter {
        Some(sigma) => {
            if sigma.q() != q {
                return Err(Error::InvalidCycle(format!(
                    "filter cycle acts on {} symbols, expected q = {q}",
                    sigma.q()
                )));
            }
            let ty = sigma.combinatorial_type();
            (ty.representatives().to_vec(), vec![ty], true)
        }
        None => {
            if q > DEFAULT_TYPE_BOUND {
                return Err(Error::EnumerationBound {
                    q,
                    bound: DEFAULT_TYPE_BOUND,
                });
            }
            let types = enumerate_types(q, DEFAULT_TYPE_BOUND)?;
            (all_cycles(q).collect(), types, false)
        }
    };

    let mut membership: HashMap<&[u64], usize> = HashMap::with_capacity(catalog.raw.len());
    for (idx, nums) in catalog.raw.iter().enumerate() {
        membership.insert(nums.as_slice(), idx);
    }

    let mut cycles = Vec::with_capacity(scope_cycles.len());
    let mut all_pass = true;
    for sigma in &scope_cycles {
        let d = sigma.descent();
        let expected = small_count(count_cycle_realizations(sigma, k))?;
        let tally = catalog
            .by_cycle
            .get(sigma)
            .map_or(0, |v| v.len() as u64);
        let mut reconstructed = 0u64;
        let mut pass = tally == expected;
        if (k as usize) >= d.max(2) {
            for n in enumerate_admissible(sigma, k)? {
                let orbit = realize_general(sigma, k, &n)?;
                let nums: Vec<u64> = orbit
                    .numerators()
                    .0
                    .iter()
                    .map(|b| b.try_into().expect("within u64 budget"))
                    .collect();
                let found = membership.get(nums.as_slice()).copied();
                let consistent = found.is_some_and(|idx| {
                    catalog.classifications[idx] == *sigma
                        && catalog.orbits[idx].fix() == n
                        && fix_to_dep(&n, k, q).is_ok_and(|w| w == catalog.orbits[idx].dep())
                });
                if consistent {
                    reconstructed += 1;
                } else {
                    pass = false;
                }
            }
            pass &= reconstructed == expected;
        } else {
            pass &= tally == 0;
        }
        all_pass &= pass;
        cycles.push(CycleCheck {
            cycle: sigma.to_string(),
            descent: d,
            signature_last: crate::transition::Signature::of_cycle(sigma).last(),
            tally,
            expected,
            reconstructed,
            pass,
        });
    }

    let mut types = Vec::with_capacity(scope_types.len());
    for ty in &scope_types {
        let d = ty.descent();
        let expected = if (k as usize) >= d.max(2) {
            small_count(count_type_realizations(ty.canonical(), k)?)?
        } else {
            0
        };
        let tally = catalog
            .by_type
            .get(ty.canonical())
            .map_or(0, |v| v.len() as u64);
        let pass = tally == expected;
        all_pass &= pass;
        types.push(TypeCheck {
            representative: ty.canonical().to_string(),
            size: ty.size(),
            symmetry_order: ty.symmetry_order(),
            descent: d,
            tally,
            expected,
            pass,
        });
    }

    let mut fix_dep_failures = 0u64;
    for orbit in &catalog.orbits {
        let n = orbit.fix();
        let w = orbit.dep();
        let round_trip = fix_to_dep(&n, k, q).is_ok_and(|ww| ww == w)
            && crate::realization::dep_to_fix(&w, q).is_ok_and(|nn| nn == n);
        if !round_trip {
            fix_dep_failures += 1;
        }
    }
    all_pass &= fix_dep_failures == 0;

    let expected_points = expected_point_count(q, k);
    let found_points = catalog.len() as u64 * q as u64;
    all_pass &= expected_points == found_points;

    Ok(VerifyReport {
        q,
        k,
        total_orbits: catalog.len() as u64,
        expected_points,
        found_points,
        filtered,
        cycles,
        types,
        orbit_consistency: OrbitConsistency {
            orbits_checked: catalog.len() as u64,
            fix_dep_failures,
        },
        pass: all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(symbols: &[usize]) -> Cycle {
        Cycle::from_cycle_notation(symbols).unwrap()
    }

    #[test]
    fn enumerates_period_five_orbits_of_tripling() {
        let catalog = enumerate_orbits(5, 3, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        assert_eq!(catalog.len(), 48);
        assert_eq!(catalog.modulus(), 242);
    }

    #[test]
    fn enumerates_doubling_orbits_by_hand() {
        let catalog = enumerate_orbits(3, 2, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        assert_eq!(catalog.len(), 2);
        assert_eq!(catalog.raw_numerators(0), [1, 2, 4]);
        assert_eq!(catalog.raw_numerators(1), [3, 5, 6]);
        assert!(catalog.classifications.iter().all(Cycle::is_rotation));

        let catalog = enumerate_orbits(2, 2, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        assert_eq!(catalog.len(), 1);
        assert_eq!(catalog.raw_numerators(0), [1, 2]);
    }

    #[test]
    fn classification_golden_cases() {
        let points = |nums: &[i64], den: i64| {
            nums.iter()
                .map(|&n| Rational::new(BigInt::from(n), BigInt::from(den)))
                .collect::<Vec<_>>()
        };
        let orbit = Orbit::new(3, points(&[8, 24, 43, 72, 95], 121)).unwrap();
        assert_eq!(classify(&orbit), cyc(&[1, 2, 4, 5, 3]));

        let orbit = Orbit::new(2, points(&[1, 2, 4], 7)).unwrap();
        assert_eq!(classify(&orbit), Cycle::generator(3).unwrap());

        // From the realizations of (1 2 3) under tripling.
        let orbit = Orbit::new(3, points(&[14, 16, 22], 26)).unwrap();
        assert_eq!(classify(&orbit), cyc(&[1, 2, 3]));
    }

    #[test]
    fn raw_and_rational_classifications_agree() {
        let catalog = enumerate_orbits(4, 3, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        for i in 0..catalog.len() {
            assert_eq!(&catalog.orbits()[i].classify(), catalog.classification(i));
        }
    }

    #[test]
    fn parallel_enumeration_is_deterministic() {
        let serial = enumerate_orbits(5, 3, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        for jobs in [2, 3, 7] {
            let parallel = enumerate_orbits(5, 3, DEFAULT_ORBIT_BUDGET, jobs).unwrap();
            assert_eq!(serial.raw, parallel.raw);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_orbits(30, 3, DEFAULT_ORBIT_BUDGET, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn period_one_orbits_are_nonzero_fixed_points() {
        let catalog = enumerate_orbits(1, 5, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        assert_eq!(catalog.len(), 3);
        assert_eq!(catalog.raw_numerators(0), [1]);
        let catalog = enumerate_orbits(1, 2, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        assert!(catalog.is_empty());
    }

    #[test]
    fn verify_example_totals_for_tripling() {
        let report = verify_counts(5, 3, DEFAULT_ORBIT_BUDGET, None, 1).unwrap();
        assert!(report.pass);
        assert_eq!(report.total_orbits, 48);
        let mut sizes: Vec<u64> = report.types.iter().map(|t| t.tally).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 2, 6, 6, 6, 6, 10, 10]);
    }

    #[test]
    fn verify_example_type_in_degree_four() {
        let report = verify_counts(5, 4, DEFAULT_ORBIT_BUDGET, None, 1).unwrap();
        assert!(report.pass);
        let sigma_type = cyc(&[1, 2, 4, 5, 3]).combinatorial_type();
        let check = report
            .types
            .iter()
            .find(|t| t.representative == sigma_type.canonical().to_string())
            .unwrap();
        assert_eq!(check.tally, 15);
    }

    #[test]
    fn verify_unique_minimal_realization_in_degree_four() {
        let report = verify_counts(6, 4, DEFAULT_ORBIT_BUDGET, None, 1).unwrap();
        assert!(report.pass);
        let check = report
            .cycles
            .iter()
            .find(|c| c.cycle == "(1 2 5 6 3 4)")
            .unwrap();
        assert_eq!(check.tally, 1);
    }

    #[test]
    fn filtered_verification() {
        let sigma = cyc(&[1, 2, 4, 5, 3]);
        let report = verify_counts(5, 4, DEFAULT_ORBIT_BUDGET, Some(&sigma), 1).unwrap();
        assert!(report.pass);
        assert!(report.filtered);
        assert_eq!(report.cycles.len(), 5);
        assert_eq!(report.types.len(), 1);
        assert_eq!(report.types[0].tally, 15);
    }

    #[test]
    fn catalog_records_serialize_as_json_lines() {
        let catalog = enumerate_orbits(2, 2, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        let record = catalog.record(0);
        let json = serde_json::to_string(&record).unwrap();
        let parsed: CatalogRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, record);
        assert_eq!(record.cycle, "(1 2)");
        assert_eq!(record.orbit.numerators, ["1", "2"]);
    }

    #[test]
    fn every_produced_realization_is_in_the_catalog() {
        // Spot-check beyond verify_counts: all degree-4 realizations of a
        // descent-3 cycle appear verbatim among the period-5 orbits of m_4.
        let sigma = cyc(&[1, 2, 4, 5, 3]);
        let catalog = enumerate_orbits(5, 4, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        for n in enumerate_admissible(&sigma, 4).unwrap() {
            let orbit = realize_general(&sigma, 4, &n).unwrap();
            let nums: Vec<u64> = orbit
                .numerators()
                .0
                .iter()
                .map(|b| u64::try_from(b).unwrap())
                .collect();
            let idx = catalog
                .raw
                .iter()
                .position(|r| r == &nums)
                .expect("realization must appear in the catalog");
            assert_eq!(catalog.classification(idx), &sigma);
        }
    }

    #[test]
    fn expected_point_counts() {
        assert_eq!(expected_point_count(5, 3), 240);
        assert_eq!(expected_point_count(3, 2), 6);
        assert_eq!(expected_point_count(2, 2), 2);
        assert_eq!(expected_point_count(6, 2), 54);
        assert_eq!(expected_point_count(1, 5), 3);
    }
}
