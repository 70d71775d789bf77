use std::sync::Arc;

use bsymbol::algebra::{gcd, CyclotomicFactorization, Elem, FieldTable};
use bsymbol::bounds::{bound_report, ExactData};
use bsymbol::characters::u_set_sizes;
use bsymbol::codes::{enumerate_codewords, CodeSpace, CyclicCode, TraceCodeParams};
use bsymbol::constructions::spread_linear;
use bsymbol::spectra::{
    distance_spectrum, orbit_count, orbit_count_burnside, period_distribution_bruteforce, period_distribution_formula,
    weight_spectrum, CensusOptions,
};
use bsymbol::vectors::{
    b_weight_direct, b_weight_from_runs, hamming_weight, phi_pack, phi_prime, pi_b, run_distribution, symplectic_weight,
    vector_period, Word,
};
use proptest::prelude::*;

/// Words biased towards long zero runs: each entry is zero with probability `zeros/8`.
fn word() -> impl Strategy<Value = (u64, Vec<Elem>)> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), 1usize..=24, 0u32..=8).prop_flat_map(|(q, n, zeros)| {
        let entry = (0u32..8, 1..q as Elem).prop_map(move |(r, v)| if r < zeros { 0 } else { v });
        (Just(q), prop::collection::vec(entry, n))
    })
}

/// A cyclic code over `F_q` of length `n <= 14` and at most `2^16` words, chosen by a
/// random factor mask.
fn cyclic_code() -> impl Strategy<Value = (u64, usize, u64)> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), 2usize..=14)
        .prop_filter("length coprime to q", |(q, n)| gcd(*q, *n as u64) == 1)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), any::<u64>()))
}

fn build(q: u64, n: usize, seed: u64) -> Option<CyclicCode> {
    let f = FieldTable::of_size(q).unwrap();
    let fact = Arc::new(CyclotomicFactorization::new(n, &f).unwrap());
    let r = fact.len();
    let mask = (seed % ((1u64 << r) - 1)) + 1;
    let in_g: Vec<bool> = (0..r).map(|i| mask >> i & 1 == 0).collect();
    if in_g.iter().all(|&x| x) {
        return None;
    }
    CyclicCode::from_factor_subset(&fact, in_g).ok().filter(|c| c.size() <= 1 << 16)
}

fn opts() -> CensusOptions {
    CensusOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn three_way_weight_agreement((q, x) in word()) {
        let f = FieldTable::of_size(q).unwrap();
        let x = Word::new(&f, x).unwrap();
        let n = x.len();
        let rd = run_distribution(&x);
        let mut prev = 0;
        for b in 1..=n {
            let direct = b_weight_direct(&x, b).unwrap();
            prop_assert_eq!(direct, b_weight_from_runs(&rd, b, n).unwrap());
            prop_assert_eq!(direct, pi_b(&x, b).unwrap().iter().filter(|w| hamming_weight(w) > 0).count());
            // the packing needs F_{q^b} as a table
            if (q as f64).powi(b as i32) <= 65536.0 {
                prop_assert_eq!(direct, hamming_weight(&phi_pack(&x, b).unwrap().entries));
            }
            prop_assert!(direct >= prev && direct <= n);
            prev = direct;
        }
        prop_assert_eq!(b_weight_direct(&x, 1).unwrap(), hamming_weight(&x.entries));
    }

    #[test]
    fn weights_survive_rotation_and_scaling((q, x) in word(), shift in 0usize..24, c in 1u32..5) {
        let f = FieldTable::of_size(q).unwrap();
        let x = Word::new(&f, x).unwrap();
        let c = 1 + (c - 1) % (q as u32 - 1);
        let y = x.rotate(shift).scale(c);
        prop_assert_eq!(run_distribution(&x), run_distribution(&y));
        prop_assert_eq!(vector_period(&x), vector_period(&y));
        for b in 1..=x.len() {
            prop_assert_eq!(b_weight_direct(&x, b).unwrap(), b_weight_direct(&y, b).unwrap());
        }
    }

    #[test]
    fn symplectic_weight_is_hamming_weight_of_the_pair_packing((q, x) in word()) {
        let f = FieldTable::of_size(q).unwrap();
        let mut doubled = x.clone();
        doubled.extend(x.iter().rev());
        let w = Word::new(&f, doubled).unwrap();
        prop_assert_eq!(symplectic_weight(&w).unwrap(), hamming_weight(&phi_prime(&w).unwrap().entries));
    }

    #[test]
    fn period_formula_matches_enumeration((q, n, seed) in cyclic_code()) {
        let Some(code) = build(q, n, seed) else { return Ok(()) };
        let formula = period_distribution_formula(&code).unwrap();
        prop_assert_eq!(&formula, &period_distribution_bruteforce(&code, &opts()).unwrap());
        prop_assert_eq!(formula.total(), (q as u128).pow(code.k as u32) - 1);
        for (&t, &count) in &formula.counts {
            prop_assert_eq!(n % t, 0);
            let orbit = bsymbol::algebra::lcm(t as u64, q - 1) as u128;
            prop_assert_eq!(count % orbit, 0, "B_{} = {} not a multiple of {}", t, count, orbit);
        }
    }

    #[test]
    fn orbits_bound_the_spectrum((q, n, seed) in cyclic_code()) {
        let Some(code) = build(q, n, seed) else { return Ok(()) };
        let orbits = orbit_count(&code, 1 << 20).unwrap();
        prop_assert_eq!(orbits, orbit_count_burnside(&code).unwrap());
        let pd = period_distribution_formula(&code).unwrap();
        prop_assert!(pd.orbit_sum(q, 0).unwrap() >= orbits);
        for b in 1..=code.k {
            prop_assert!(weight_spectrum(&code, b, &opts()).unwrap().size as u128 <= orbits);
        }
    }

    #[test]
    fn every_applicable_bound_holds((q, n, seed) in cyclic_code()) {
        let Some(code) = build(q, n, seed) else { return Ok(()) };
        for b in 1..=code.k {
            let exact = ExactData::compute(&code, b, &opts(), 1 << 30).unwrap();
            let report = bound_report(&code, b, Some(exact)).unwrap();
            prop_assert!(report.passed(), "{:?}", report);
        }
    }

    #[test]
    fn spreading_scales_the_hamming_spectrum((q, n, seed) in cyclic_code(), b in 1usize..=3) {
        let Some(code) = build(q, n, seed) else { return Ok(()) };
        if code.k > 6 {
            return Ok(());
        }
        let spread = spread_linear(code.linear(), b).unwrap();
        let w1: Vec<usize> = weight_spectrum(&code, 1, &opts()).unwrap().weights.iter().map(|w| w * b).collect();
        prop_assert_eq!(w1, weight_spectrum(&spread, b, &opts()).unwrap().weights);
    }

    #[test]
    fn distances_of_linear_codes_are_weights((q, n, seed) in cyclic_code(), b in 1usize..=4) {
        let Some(code) = build(q, n, seed) else { return Ok(()) };
        if code.size() > 1 << 9 || b > n {
            return Ok(());
        }
        let words = enumerate_codewords(&code, 1 << 9).unwrap();
        let d = distance_spectrum(&code.field, &words, b).unwrap();
        prop_assert_eq!(d, weight_spectrum(&code, b, &opts()).unwrap().weights);
    }

    #[test]
    fn u_sets_partition_the_nonzero_tuples(
        (q, m) in prop::sample::select(vec![(2u64, 4u32), (2, 6), (3, 3), (3, 4), (4, 3), (5, 2)]),
        pick in any::<u64>(),
        b in 1usize..=5,
    ) {
        let small = FieldTable::of_size(q).unwrap();
        let big = FieldTable::of_size(q.pow(m)).unwrap();
        let divisors: Vec<u64> = bsymbol::algebra::divisors(q.pow(m) - 1).into_iter().filter(|&d| (q.pow(m) - 1) / d >= 2).collect();
        let big_n = divisors[(pick % divisors.len() as u64) as usize];
        let params = TraceCodeParams::with_big(&small, &big, big_n).unwrap();
        if b >= params.m0 as usize {
            return Ok(());
        }
        let u = u_set_sizes(b, &params).unwrap();
        prop_assert_eq!(u.counts.iter().sum::<u64>() + u.zero_window_count, q.pow(b as u32) - 1);
    }
}
