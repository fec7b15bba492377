//! Property suites beyond the acceptance criteria: exhaustive structural
//! invariants on small q and randomized invariants via proptest.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;

use cyclic::oracle::DEFAULT_ORBIT_BUDGET;
use cyclic::spectral::snapshot_stabilized;
use cyclic::{
    all_cycles, dep_to_fix, enumerate_orbits, enumerate_types, fix_to_dep, pair_matrix,
    realize_general, stationary_by_iteration, stationary_vector, Cycle, FixVector, Rational,
    Signature, TransitionMatrix, WindingVector,
};

/// (c^q - 1) ℓ is an integer vector for every transition matrix with
/// column sum >= 2, q <= 7 exhaustively.
#[test]
fn stationary_denominators_divide_c_pow_q_minus_one() {
    for q in 2..=7usize {
        for sigma in all_cycles(q) {
            let d = sigma.descent();
            if d < 2 {
                continue;
            }
            let ell = stationary_vector(&TransitionMatrix::of_cycle(&sigma)).unwrap();
            let scale = BigInt::from(d).pow(q as u32) - BigInt::one();
            for entry in ell.entries() {
                assert!(
                    (entry * &scale).is_integer(),
                    "(d^q - 1) ℓ not integral for {sigma}"
                );
            }
        }
    }
}

fn iteration_agrees_with_solver(m: &TransitionMatrix) {
    let q = m.q();
    let ell = stationary_vector(m).unwrap();
    let scale = BigInt::from(m.column_sum().clone()).pow(q as u32) - BigInt::one();
    let target: Vec<BigUint> = ell
        .entries()
        .iter()
        .map(|e| (e * &scale).to_integer().magnitude().clone())
        .collect();
    let mut n = 1u64;
    loop {
        let snapshot = stationary_by_iteration(m, n).unwrap();
        if snapshot_stabilized(&snapshot, q).is_some_and(|col| col == target) {
            return;
        }
        n += 1;
        assert!(n <= 1000, "power iteration failed to stabilize");
    }
}

/// The rounded power iteration stabilizes to exactly (d^q - 1) ℓ for every
/// transition matrix with q <= 7.
#[test]
fn iteration_oracle_agreement_for_transition_matrices() {
    for q in 2..=7usize {
        for sigma in all_cycles(q) {
            if sigma.descent() < 2 {
                continue;
            }
            iteration_agrees_with_solver(&TransitionMatrix::of_cycle(&sigma));
        }
    }
}

/// The same agreement for pair matrices B = A + P with small winding totals,
/// q <= 5 exhaustively.
#[test]
fn iteration_oracle_agreement_for_pair_matrices() {
    fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for head in 0..=total {
            for mut tail in compositions(total - head, parts - 1) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    for q in 2..=5usize {
        for sigma in all_cycles(q) {
            let d = sigma.descent() as u64;
            for total in 0..=3u64 {
                if d + total < 2 {
                    continue; // column sum must be at least 2
                }
                for p in compositions(total, q) {
                    let b = pair_matrix(&sigma, &WindingVector::from_counts(p));
                    iteration_agrees_with_solver(&b);
                }
            }
        }
    }
}

/// Transition matrix of a conjugate is the cyclic-shift conjugation of the
/// original: entries move one step along both indices.
#[test]
fn conjugation_shifts_transition_matrix() {
    for q in 2..=6usize {
        for sigma in all_cycles(q) {
            let a = TransitionMatrix::of_cycle(&sigma);
            let a1 = TransitionMatrix::of_cycle(&sigma.conjugate_by_rotation(1));
            for i in 0..q {
                for j in 0..q {
                    assert_eq!(a1.entry(i, j), a.entry((i + 1) % q, (j + 1) % q));
                }
            }
            // Row sums of A add up to d·q.
            let row_total: BigUint = (0..q).flat_map(|i| a.row(i)).sum();
            assert_eq!(row_total, BigUint::from(sigma.descent() * q));
        }
    }
}

/// Every divisor of q occurs as a symmetry order for q in 5..=9, with the
/// known small-q exceptions: no symmetry order 1 for q = 2, 3 and no
/// symmetry order 2 for q = 4.
#[test]
fn symmetry_orders_cover_divisors() {
    let orders = |q: usize| -> Vec<usize> {
        let mut seen: Vec<usize> = enumerate_types(q, 9)
            .unwrap()
            .iter()
            .map(|t| t.symmetry_order())
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    };
    for q in 5..=9usize {
        let seen = orders(q);
        for s in 1..=q {
            if q % s == 0 {
                assert!(seen.contains(&s), "no cycle in C_{q} with symmetry order {s}");
            }
        }
    }
    assert_eq!(orders(2), [2]);
    assert_eq!(orders(3), [3]);
    assert_eq!(orders(4), [1, 4]);
}

/// Summing the per-cycle counts over the conjugates of a type gives the
/// type count.
#[test]
fn type_count_is_sum_over_conjugates() {
    for q in 2..=6usize {
        for ty in enumerate_types(q, 9).unwrap() {
            let d = ty.descent() as u32;
            for k in d.max(2)..=5 {
                let total: BigUint = ty
                    .representatives()
                    .iter()
                    .map(|c| cyclic::count_cycle_realizations(c, k))
                    .sum();
                assert_eq!(
                    total,
                    cyclic::count_type_realizations(ty.canonical(), k).unwrap()
                );
            }
        }
    }
}

/// Oracle catalogs agree with the realization path on every orbit for a few
/// (q, k) pairs beyond the acceptance sweep.
#[test]
fn catalog_orbits_reconstruct_via_their_fix_vectors() {
    for (q, k) in [(4usize, 5u32), (6, 5)] {
        let catalog = enumerate_orbits(q, k, DEFAULT_ORBIT_BUDGET, 1).unwrap();
        for (i, orbit) in catalog.orbits().iter().enumerate() {
            let sigma = catalog.classification(i);
            let rebuilt = realize_general(sigma, k, &orbit.fix()).unwrap();
            assert_eq!(&rebuilt, orbit);
        }
    }
}

fn arb_cycle() -> impl Strategy<Value = Cycle> {
    (2usize..=7).prop_flat_map(|q| {
        proptest::collection::vec(any::<u64>(), q - 1).prop_map(move |keys| {
            let mut paired: Vec<(u64, usize)> = keys.into_iter().zip(2..=q).collect();
            paired.sort_unstable();
            let mut symbols = vec![1];
            symbols.extend(paired.into_iter().map(|(_, v)| v));
            Cycle::from_cycle_notation(&symbols).expect("permutation of 2..=q")
        })
    })
}

/// A cycle together with an admissible fixed point distribution; the degree
/// is read off from the total.
fn arb_realization_input() -> impl Strategy<Value = (Cycle, u32, FixVector)> {
    arb_cycle().prop_flat_map(|sigma| {
        let q = sigma.q();
        (
            Just(sigma),
            proptest::collection::vec(0u64..3, q),
            any::<u64>(),
        )
            .prop_map(|(sigma, extras, shift_seed)| {
                let sig = Signature::of_cycle(&sigma);
                let q = sigma.q();
                let mut counts: Vec<u64> = (1..=q).map(|i| sig.bit(i) as u64).collect();
                if !sig.last() {
                    counts[q - 1] += 1;
                }
                for (c, e) in counts.iter_mut().zip(&extras) {
                    *c += e;
                }
                let k = (counts.iter().sum::<u64>() + 1) as u32;
                let shift = shift_seed % counts[q - 1];
                let n = FixVector::new(counts, shift).expect("admissible by construction");
                (sigma, k, n)
            })
    })
}

proptest! {
    /// Conjugation by rotations is an action: exponents add, and descent and
    /// symmetry order are invariants of the type.
    #[test]
    fn conjugation_is_a_group_action(sigma in arb_cycle(), i in -20i64..20, j in -20i64..20) {
        let both = sigma.conjugate_by_rotation(i).conjugate_by_rotation(j);
        prop_assert_eq!(&both, &sigma.conjugate_by_rotation(i + j));
        prop_assert_eq!(both.descent(), sigma.descent());
        prop_assert_eq!(both.symmetry_order(), sigma.symmetry_order());
    }

    /// Signature rotation matches conjugation and composes additively.
    #[test]
    fn signature_rotation_composes(sigma in arb_cycle(), i in 0usize..14, j in 0usize..14) {
        let sig = Signature::of_cycle(&sigma);
        let q = sigma.q();
        prop_assert_eq!(
            sig.rotate_left(i % q).rotate_left(j % q),
            sig.rotate_left((i + j) % q)
        );
        prop_assert_eq!(
            Signature::of_cycle(&sigma.conjugate_by_rotation(i as i64)),
            sig.rotate_left(i % q)
        );
    }

    /// A constructed realization reports exactly the requested parameters:
    /// the realized cycle, the fix vector with its shift, the dual dep
    /// vector, and interval lengths equal to the stationary vector.
    #[test]
    fn realizations_report_their_parameters((sigma, k, n) in arb_realization_input()) {
        let orbit = realize_general(&sigma, k, &n).unwrap();
        prop_assert_eq!(orbit.k(), k);
        prop_assert_eq!(orbit.classify(), sigma.clone());
        prop_assert_eq!(orbit.fix(), n.clone());
        prop_assert_eq!(orbit.dep(), fix_to_dep(&n, k, sigma.q()).unwrap());

        let sig = Signature::of_cycle(&sigma);
        let p: Vec<u64> = (1..=sigma.q())
            .map(|i| n.count(i) - sig.bit(i) as u64)
            .collect();
        let b = pair_matrix(&sigma, &WindingVector::from_counts(p));
        prop_assert_eq!(orbit.interval_lengths(), stationary_vector(&b).unwrap());
    }

    /// Realizations with different shifts are rotated copies: O_s is O_0
    /// translated by s/(k-1).
    #[test]
    fn shifts_produce_rotated_copies((sigma, k, n) in arb_realization_input()) {
        let base = FixVector::new(n.counts().to_vec(), 0).unwrap();
        let orbit0 = realize_general(&sigma, k, &base).unwrap();
        let shifted = realize_general(&sigma, k, &n).unwrap();
        let delta = Rational::new(BigInt::from(n.shift()), BigInt::from(k - 1));
        prop_assert_eq!(orbit0.rotate(&delta).unwrap(), shifted);
    }

    /// fix -> dep -> fix is the identity on admissible inputs.
    #[test]
    fn fix_dep_round_trip((sigma, k, n) in arb_realization_input()) {
        let q = sigma.q();
        let w = fix_to_dep(&n, k, q).unwrap();
        prop_assert_eq!(dep_to_fix(&w, q).unwrap(), n);
    }
}
