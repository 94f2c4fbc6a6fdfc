use amalgam_core::{solve_claim_integers, solve_claim_with, ConstructionError};
use proptest::prelude::*;

/// Substitutes into `(d + dᵢ)χ̂ᵢ + 2dᵢχ̂ᵢ₋₁ + dᵢχ̂ᵢ = Dχ̂ᵢ` for every `i`.
fn substitution_holds(chis: &[i64], d: u64, big_d: u64, ds: &[u64]) -> bool {
    let k = chis.len();
    ds.len() == k
        && (0..k).all(|i| {
            let chi = chis[i] as i128;
            let prev = chis[(i + k - 1) % k] as i128;
            let di = ds[i] as i128;
            (d as i128 + di) * chi + 2 * di * prev + di * chi == big_d as i128 * chi
        })
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Smallest `D > d` admitting a positive integer solution, by direct search
/// over `D − d`.
fn smallest_prime_degree(chis: &[i64], d: u64) -> u64 {
    let k = chis.len();
    let mut step: i128 = 1;
    for i in 0..k {
        let chi = chis[i] as i128;
        let pair = 2 * (chis[(i + k - 1) % k] as i128 + chi);
        // (D − d)·χ̂ᵢ must be divisible by 2(χ̂ᵢ₋₁ + χ̂ᵢ)
        let need = pair.abs() / gcd(pair, chi);
        step = step / gcd(step, need) * need;
    }
    d + step as u64
}

fn arb_chis() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec((1i64..=10).prop_map(|n| -2 * n), 3..=8)
}

#[test]
fn known_values() {
    let sol = solve_claim_integers(&[-2, -2, -2], 1).unwrap();
    assert_eq!((sol.prime_degree, sol.double_prime_degree()), (9, 13));
    let sol = solve_claim_integers(&[-2, -6, -10], 1).unwrap();
    assert_eq!(sol.prime_degree, 97);
    assert_eq!(sol.branch_degrees, vec![8, 36, 30]);
    assert_eq!(sol.double_prime_degree(), 149);
}

#[test]
fn json_uses_short_names() {
    let sol = solve_claim_integers(&[-2, -2, -2], 1).unwrap();
    let value = serde_json::to_value(&sol).unwrap();
    assert_eq!(value["D"], 9);
    assert_eq!(value["d"], 1);
    assert_eq!(value["d_i"], serde_json::json!([2, 2, 2]));
}

#[test]
fn odd_or_nonnegative_chis_are_rejected() {
    assert_eq!(
        solve_claim_integers(&[-2, -2, -1], 1),
        Err(ConstructionError::InvalidChi(-1))
    );
    assert_eq!(
        solve_claim_integers(&[-2, 2, -2], 1),
        Err(ConstructionError::InvalidChi(2))
    );
}

proptest! {
    #[test]
    fn solutions_satisfy_every_equation(chis in arb_chis(), d in 1u64..=50) {
        let sol = solve_claim_integers(&chis, d).unwrap();
        prop_assert!(substitution_holds(&chis, d, sol.prime_degree, &sol.branch_degrees));
        prop_assert!(sol.branch_degrees.iter().all(|&di| di >= 1));
        prop_assert!(sol.check().passed());
        prop_assert_eq!(sol.double_prime_degree(), d + 2 * sol.branch_degrees.iter().sum::<u64>());
    }

    #[test]
    fn default_prime_degree_is_a_valid_multiple(chis in arb_chis(), d in 1u64..=50) {
        let sol = solve_claim_integers(&chis, d).unwrap();
        let minimal = smallest_prime_degree(&chis, d);
        prop_assert_eq!((sol.prime_degree - d) % (minimal - d), 0);
    }

    #[test]
    fn prescribed_prime_degrees(chis in arb_chis(), d in 1u64..=20, multiple in 1u64..=4) {
        let base = solve_claim_integers(&chis, d).unwrap();
        let big_d = d + multiple * (base.prime_degree - d);
        let sol = solve_claim_with(&chis, d, big_d).unwrap();
        prop_assert!(substitution_holds(&chis, d, big_d, &sol.branch_degrees));
        let off = solve_claim_with(&chis, d, big_d + 1);
        let off_is_error = matches!(off, Err(ConstructionError::NotDivisible { .. }));
        prop_assert!(off_is_error);
    }

    #[test]
    fn tampering_is_detected(chis in arb_chis(), i in any::<prop::sample::Index>()) {
        let mut sol = solve_claim_integers(&chis, 1).unwrap();
        let i = i.index(chis.len());
        sol.branch_degrees[i] += 1;
        let name = format!("claim_eq_{}", i + 1);
        let passed = sol.check().get(&name).unwrap().passed;
        prop_assert!(!passed);
    }
}
