//! Integer solutions of the degree-balancing system
//!
//! `(d + dᵢ)·χ̂ᵢ + 2dᵢ·χ̂ᵢ₋₁ + dᵢ·χ̂ᵢ = D·χ̂ᵢ` for `i = 1..k` (indices cyclic),
//! equivalently `2dᵢ(χ̂ᵢ₋₁ + χ̂ᵢ) = (D − d)·χ̂ᵢ`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSolution {
    /// `D`, the degree of `X′ → X̂`.
    #[serde(rename = "D")]
    pub prime_degree: u64,
    /// `d`, the degree of the shared circles `ρ, ρ′` in `X″`.
    #[serde(rename = "d")]
    pub core_degree: u64,
    /// `d₁, …, d_k`.
    #[serde(rename = "d_i")]
    pub branch_degrees: Vec<u64>,
    /// `χ̂₁, …, χ̂_k`.
    pub chis: Vec<i64>,
}

impl ClaimSolution {
    pub fn k(&self) -> usize {
        self.chis.len()
    }

    /// `d + 2·Σdᵢ`, the degree of `X″ → X̂`.
    pub fn double_prime_degree(&self) -> u64 {
        self.core_degree + 2 * self.branch_degrees.iter().sum::<u64>()
    }

    /// χ̂ᵢ₋₁ for 0-based `i`, cyclically.
    pub fn previous_chi(&self, i: usize) -> i64 {
        self.chis[(i + self.k() - 1) % self.k()]
    }

    /// Check names: `claim_positive`, `claim_divisibility`, `claim_eq_1`, …,
    /// `claim_eq_k`.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let mut nonpositive = Vec::new();
        if self.core_degree == 0 {
            nonpositive.push("d = 0".to_owned());
        }
        if self.prime_degree <= self.core_degree {
            nonpositive.push(format!(
                "D = {} is not above d = {}",
                self.prime_degree, self.core_degree
            ));
        }
        for (i, &di) in self.branch_degrees.iter().enumerate() {
            if di == 0 {
                nonpositive.push(format!("d_{} = 0", i + 1));
            }
        }
        report.record("claim_positive", nonpositive);

        let divisibility = match pair_modulus(&self.chis) {
            Some(modulus) => {
                let difference = self.prime_degree as i128 - self.core_degree as i128;
                if difference > 0 && difference % modulus == 0 {
                    Vec::new()
                } else {
                    vec![format!(
                        "D - d = {difference} is not a positive multiple of {modulus}"
                    )]
                }
            }
            None => vec!["χ̂ values do not define a modulus".to_owned()],
        };
        report.record("claim_divisibility", divisibility);

        let big_d = self.prime_degree as i128;
        let d = self.core_degree as i128;
        for i in 0..self.k() {
            let name = format!("claim_eq_{}", i + 1);
            let Some(&di) = self.branch_degrees.get(i) else {
                report.record(name, vec![format!("d_{} missing", i + 1)]);
                continue;
            };
            let di = di as i128;
            let chi = self.chis[i] as i128;
            let prev = self.previous_chi(i) as i128;
            let lhs = (d + di) * chi + 2 * di * prev + di * chi;
            let rhs = big_d * chi;
            report.expect(name, lhs == rhs, || format!("{lhs} != {rhs}"));
        }
        if self.branch_degrees.len() > self.k() {
            report.record(
                "claim_eq_extra",
                vec![format!(
                    "{} degrees for {} pieces",
                    self.branch_degrees.len(),
                    self.k()
                )],
            );
        }
        report
    }
}

/// `2·lcm{|χ̂ᵢ₋₁ + χ̂ᵢ|}`, or `None` for an empty list or a zero pair sum.
fn pair_modulus(chis: &[i64]) -> Option<i128> {
    let k = chis.len();
    let mut lcm: i128 = 1;
    for i in 0..k {
        let sum = (chis[(i + k - 1) % k] as i128 + chis[i] as i128).abs();
        if sum == 0 {
            return None;
        }
        lcm = lcm.lcm(&sum);
        if lcm > i64::MAX as i128 {
            return None;
        }
    }
    (k > 0).then_some(2 * lcm)
}

fn validate_chis(chis: &[i64]) -> Result<(), ConstructionError> {
    if chis.len() < 3 {
        return Err(ConstructionError::TooFewPieces(chis.len()));
    }
    if let Some(&bad) = chis.iter().find(|&&c| c > -2 || c % 2 != 0) {
        return Err(ConstructionError::InvalidChi(bad));
    }
    Ok(())
}

/// The minimal solution for the given `d`: `D = d + 2·lcm{|χ̂ᵢ₋₁ + χ̂ᵢ|}`.
pub fn solve_claim_integers(
    chis: &[i64],
    core_degree: u64,
) -> Result<ClaimSolution, ConstructionError> {
    validate_chis(chis)?;
    let modulus = pair_modulus(chis).ok_or(ConstructionError::Overflow)?;
    let prime_degree =
        u64::try_from(core_degree as i128 + modulus).map_err(|_| ConstructionError::Overflow)?;
    solve_claim_with(chis, core_degree, prime_degree)
}

/// Solves for `dᵢ` with both `d` and `D` prescribed.
pub fn solve_claim_with(
    chis: &[i64],
    core_degree: u64,
    prime_degree: u64,
) -> Result<ClaimSolution, ConstructionError> {
    validate_chis(chis)?;
    if core_degree == 0 {
        return Err(ConstructionError::InvalidParameter(
            "d must be positive".into(),
        ));
    }
    let modulus = pair_modulus(chis).ok_or(ConstructionError::Overflow)?;
    let difference = prime_degree as i128 - core_degree as i128;
    if difference <= 0 || difference % modulus != 0 {
        return Err(ConstructionError::NotDivisible {
            difference,
            modulus,
        });
    }
    let k = chis.len();
    let branch_degrees = (0..k)
        .map(|i| {
            let chi = chis[i] as i128;
            let pair = chis[(i + k - 1) % k] as i128 + chi;
            let numerator = difference * chi;
            let denominator = 2 * pair;
            debug_assert_eq!(numerator % denominator, 0);
            u64::try_from(numerator / denominator).map_err(|_| ConstructionError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    // d + 2Σdᵢ must stay representable
    branch_degrees
        .iter()
        .try_fold(core_degree, |acc, &di| acc.checked_add(di.checked_mul(2)?))
        .ok_or(ConstructionError::Overflow)?;
    Ok(ClaimSolution {
        prime_degree,
        core_degree,
        branch_degrees,
        chis: chis.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_tori() {
        let sol = solve_claim_integers(&[-2, -2, -2], 1).unwrap();
        assert_eq!(sol.prime_degree, 9);
        assert_eq!(sol.branch_degrees, vec![2, 2, 2]);
        assert_eq!(sol.double_prime_degree(), 13);
        assert!(sol.check().passed());
    }

    #[test]
    fn mixed_chis() {
        let sol = solve_claim_integers(&[-2, -4, -6], 1).unwrap();
        assert_eq!(sol.prime_degree, 241);
        assert_eq!(sol.branch_degrees, vec![30, 80, 72]);
        assert!(sol.check().passed());
    }

    #[test]
    fn forced_prime_degree_must_be_divisible() {
        assert_eq!(
            solve_claim_with(&[-2, -2, -2], 1, 2),
            Err(ConstructionError::NotDivisible {
                difference: 1,
                modulus: 8
            })
        );
        assert!(solve_claim_with(&[-2, -2, -2], 3, 3).is_err());
        let sol = solve_claim_with(&[-2, -2, -2], 1, 17).unwrap();
        assert_eq!(sol.branch_degrees, vec![4, 4, 4]);
        assert!(sol.check().passed());
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(
            solve_claim_integers(&[-2, -2], 1),
            Err(ConstructionError::TooFewPieces(2))
        );
        assert_eq!(
            solve_claim_integers(&[-2, -3, -2], 1),
            Err(ConstructionError::InvalidChi(-3))
        );
        assert_eq!(
            solve_claim_integers(&[-2, 0, -2], 1),
            Err(ConstructionError::InvalidChi(0))
        );
        assert!(matches!(
            solve_claim_integers(&[-2, -2, -2], 0),
            Err(ConstructionError::InvalidParameter(_))
        ));
    }

    #[test]
    fn check_flags_a_broken_equation() {
        let mut sol = solve_claim_integers(&[-2, -6, -10], 1).unwrap();
        sol.branch_degrees[1] += 1;
        let report = sol.check();
        assert!(!report.get("claim_eq_2").unwrap().passed);
        assert!(report.get("claim_eq_1").unwrap().passed);
    }
}
