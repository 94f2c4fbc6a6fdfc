//! Certificates that a simple surface amalgam's fundamental group has a
//! finite-index subgroup isomorphic to an infinite-index one.
//!
//! A certificate records two covers `X′` and `X″` of a common space (either
//! `X` itself or its double cover `X̂`) and a witness that `X′` sits inside
//! `X″` as a union of pieces with a nonempty complement of negative-χ pieces.
//! [`verify_certificate`] recomputes every check from the data alone.

use serde::{Deserialize, Serialize};

use crate::amalgam_cover::{
    realize_amalgam_cover, verify_amalgam_cover, verify_realizations, AmalgamCover,
};
use crate::claim::{solve_claim_integers, ClaimSolution};
use crate::construction::{
    build_double_cover, build_embedding_witness, build_x_double_prime, build_x_prime,
    main_example_base, main_example_witness, main_example_x1, main_example_x2,
};
use crate::error::ConstructionError;
use crate::report::Report;
use crate::surface::{AmalgamComplex, Surface};
use crate::surface_cover::DEFAULT_SAMPLE_BUDGET;
use crate::witness::{verify_embedding, EmbeddingWitness};

/// Degrees of `X′ → X` and `X″ → X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeDegrees {
    pub x_prime: u64,
    pub x_double_prime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub base: AmalgamComplex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hat: Option<AmalgamCover>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<ClaimSolution>,
    pub x_prime: AmalgamCover,
    pub x_double_prime: AmalgamCover,
    pub witness: EmbeddingWitness,
    pub composite_degrees: CompositeDegrees,
    pub report: Report,
}

impl Certificate {
    /// The space both `X′` and `X″` cover: `X̂` when present, else `X`.
    pub fn level(&self) -> AmalgamComplex {
        self.hat
            .as_ref()
            .map_or_else(|| self.base.clone(), AmalgamCover::total)
    }

    fn hat_degree(&self) -> u64 {
        self.hat.as_ref().map_or(1, |h| h.degree)
    }

    pub fn expected_composite_degrees(&self) -> CompositeDegrees {
        CompositeDegrees {
            x_prime: self.hat_degree() * self.x_prime.degree,
            x_double_prime: self.hat_degree() * self.x_double_prime.degree,
        }
    }

    pub fn complement_euler_characteristic(&self) -> i64 {
        self.witness
            .complement
            .iter()
            .filter_map(|id| self.x_double_prime.piece(id))
            .map(|p| p.surface.euler_characteristic())
            .sum()
    }

    fn covers(&self) -> impl Iterator<Item = (&'static str, &AmalgamCover)> {
        self.hat.iter().map(|h| ("hat", h)).chain([
            ("x_prime", &self.x_prime),
            ("x_double_prime", &self.x_double_prime),
        ])
    }
}

/// Recomputes the full report of a certificate from its data.
pub fn verify_certificate(cert: &Certificate) -> Report {
    let mut report = Report::new();
    report.expect("base_simple", cert.base.is_simple(), || {
        "base is not a simple surface amalgam".to_owned()
    });

    if let Some(hat) = &cert.hat {
        report.extend_prefixed("hat", verify_amalgam_cover(hat));
        if hat.realizations.is_some() {
            report.extend_prefixed("hat", verify_realizations(hat));
        }
        report.expect("hat_over_base", hat.base == cert.base, || {
            "hat does not cover the base".to_owned()
        });
        report.expect("hat_degree_two", hat.degree == 2, || {
            format!("hat has degree {}", hat.degree)
        });
    }

    if let Some(sol) = &cert.solution {
        let level_chis: Vec<i64> = cert
            .hat
            .as_ref()
            .map(|h| {
                h.pieces
                    .iter()
                    .map(|p| p.surface.euler_characteristic())
                    .collect()
            })
            .unwrap_or_default();
        report.expect(
            "claim_chis_match",
            cert.hat.is_some() && sol.chis == level_chis,
            || format!("solution χ̂ {:?} vs double cover χ {level_chis:?}", sol.chis),
        );
        for check in sol.check().checks {
            report.checks.push(check);
        }
    }

    let level = cert.level();
    for (name, cover) in [
        ("x_prime", &cert.x_prime),
        ("x_double_prime", &cert.x_double_prime),
    ] {
        report.extend_prefixed(name, verify_amalgam_cover(cover));
        if cover.realizations.is_some() {
            report.extend_prefixed(name, verify_realizations(cover));
        }
        report.expect(format!("{name}_over_level"), cover.base == level, || {
            format!("{name} does not cover the common base")
        });
    }
    if let Some(sol) = &cert.solution {
        report.expect(
            "x_prime_degree",
            cert.x_prime.degree == sol.prime_degree,
            || {
                format!(
                    "X′ has degree {}, D = {}",
                    cert.x_prime.degree, sol.prime_degree
                )
            },
        );
        let expected = sol.double_prime_degree();
        report.expect(
            "x_double_prime_degree",
            cert.x_double_prime.degree == expected,
            || {
                format!(
                    "X″ has degree {}, d + 2Σdᵢ = {expected}",
                    cert.x_double_prime.degree
                )
            },
        );
    }

    report
        .checks
        .extend(verify_embedding(&cert.x_prime, &cert.x_double_prime, &cert.witness).checks);

    let expected = cert.expected_composite_degrees();
    report.expect(
        "composite_degrees",
        cert.composite_degrees == expected,
        || {
            format!(
                "recorded {:?}, computed {expected:?}",
                cert.composite_degrees
            )
        },
    );
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// `d`, the degree of `ρ, ρ′` in `X″`.
    pub core_degree: u64,
    pub seed: u64,
    /// Realize covers at permutation level.
    pub realize: bool,
    /// Covers with a piece of larger degree are left unrealized.
    pub max_realized_degree: u64,
    pub samples: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            core_degree: 1,
            seed: 0,
            realize: false,
            max_realized_degree: 16,
            samples: DEFAULT_SAMPLE_BUDGET,
        }
    }
}

fn max_piece_degree(cover: &AmalgamCover) -> u64 {
    cover
        .pieces
        .iter()
        .filter_map(|p| cover.piece_degree(p))
        .max()
        .unwrap_or(0)
}

/// Runs `X → X̂ → (X′, X″) → witness` and verifies the result. The returned
/// certificate's report is authoritative; it passes for every valid input.
pub fn certify_not_comm_cohopfian(
    x: &AmalgamComplex,
    options: &CertifyOptions,
) -> Result<Certificate, ConstructionError> {
    let hat = build_double_cover(x)?;
    let chis: Vec<i64> = hat
        .pieces
        .iter()
        .map(|p| p.surface.euler_characteristic())
        .collect();
    let solution = solve_claim_integers(&chis, options.core_degree)?;
    let mut x_prime = build_x_prime(&hat, solution.prime_degree)?;
    let mut x_double_prime = build_x_double_prime(&hat, &solution)?;
    let witness = build_embedding_witness(&x_prime, &x_double_prime, &solution)?;
    let mut hat = hat;
    if options.realize {
        for (offset, cover) in [&mut hat, &mut x_prime, &mut x_double_prime]
            .into_iter()
            .enumerate()
        {
            if max_piece_degree(cover) <= options.max_realized_degree {
                *cover = realize_amalgam_cover(
                    cover,
                    options.seed.wrapping_add(offset as u64),
                    options.samples,
                )?;
            }
        }
    }
    Ok(finish(Certificate {
        base: x.clone(),
        composite_degrees: CompositeDegrees {
            x_prime: 2 * solution.prime_degree,
            x_double_prime: 2 * solution.double_prime_degree(),
        },
        hat: Some(hat),
        solution: Some(solution),
        x_prime,
        x_double_prime,
        witness,
        report: Report::new(),
    }))
}

/// The three-torus example: a degree-3 cover embedded in a degree-4 cover.
pub fn build_main_example() -> Certificate {
    finish(Certificate {
        base: main_example_base(),
        hat: None,
        solution: None,
        x_prime: main_example_x1(),
        x_double_prime: main_example_x2(),
        witness: main_example_witness(),
        composite_degrees: CompositeDegrees {
            x_prime: 3,
            x_double_prime: 4,
        },
        report: Report::new(),
    })
}

fn finish(mut cert: Certificate) -> Certificate {
    cert.report = verify_certificate(&cert);
    cert
}

/// Genus and boundary count of the union assigned to each `X′` piece.
pub fn witness_unions(cert: &Certificate) -> Vec<Surface> {
    cert.witness
        .assignments
        .iter()
        .map(|a| {
            let pieces: Vec<_> = a
                .ambient_pieces
                .iter()
                .filter_map(|id| cert.x_double_prime.piece(id))
                .collect();
            let chi: i64 = pieces
                .iter()
                .map(|p| p.surface.euler_characteristic())
                .sum();
            let boundary = pieces
                .iter()
                .flat_map(|p| &p.boundary_map)
                .filter(|b| !a.consumed_circles.contains(&b.lift))
                .count() as u32;
            Surface::from_euler_characteristic(chi, boundary)
                .unwrap_or(Surface::new(u64::MAX, boundary))
        })
        .collect()
}

impl Certificate {
    /// Every cover in the certificate, by report prefix.
    pub fn named_covers(&self) -> Vec<(&'static str, &AmalgamCover)> {
        self.covers().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_example_passes() {
        let cert = build_main_example();
        assert!(cert.report.passed(), "{}", cert.report);
        assert_eq!((cert.x_prime.degree, cert.x_double_prime.degree), (3, 4));
        assert_eq!(cert.base.euler_characteristic(), -3);
        assert_eq!(cert.x_prime.euler_characteristic(), -9);
        assert_eq!(cert.x_double_prime.euler_characteristic(), -12);
        assert_eq!(cert.complement_euler_characteristic(), -3);
        for union in witness_unions(&cert) {
            assert_eq!(union, Surface::new(2, 1));
        }
    }

    #[test]
    fn three_tori_certificate() {
        let cert = certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 1, 1]),
            &CertifyOptions::default(),
        )
        .unwrap();
        assert!(cert.report.passed(), "{}", cert.report);
        let sol = cert.solution.as_ref().unwrap();
        assert_eq!((sol.prime_degree, sol.double_prime_degree()), (9, 13));
        assert_eq!(
            cert.composite_degrees,
            CompositeDegrees {
                x_prime: 18,
                x_double_prime: 26
            }
        );
        assert_eq!(cert.witness.complement.len(), 6);
    }

    #[test]
    fn mixed_genera_certificate() {
        let cert = certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 2, 3]),
            &CertifyOptions::default(),
        )
        .unwrap();
        assert!(cert.report.passed(), "{}", cert.report);
        let sol = cert.solution.as_ref().unwrap();
        assert_eq!(sol.chis, vec![-2, -6, -10]);
        assert_eq!(sol.prime_degree, 97);
        assert_eq!(sol.branch_degrees, vec![8, 36, 30]);
        assert_eq!(sol.double_prime_degree(), 149);
    }

    #[test]
    fn four_pieces_complement() {
        let cert = certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 1, 1, 1]),
            &CertifyOptions::default(),
        )
        .unwrap();
        assert!(cert.report.passed());
        assert_eq!(cert.witness.complement.len(), 16);
    }

    #[test]
    fn not_simple_rejected() {
        let x = AmalgamComplex::simple("c", &[1, 1]);
        assert_eq!(
            certify_not_comm_cohopfian(&x, &CertifyOptions::default()),
            Err(ConstructionError::NotSimple)
        );
    }

    #[test]
    fn realized_certificate() {
        let options = CertifyOptions {
            realize: true,
            seed: 3,
            ..CertifyOptions::default()
        };
        let cert =
            certify_not_comm_cohopfian(&AmalgamComplex::simple("c", &[1, 1, 1]), &options).unwrap();
        assert!(cert.report.passed(), "{}", cert.report);
        assert!(cert
            .named_covers()
            .iter()
            .all(|(_, c)| c.realizations.is_some()));
        assert!(cert.report.get("x_prime.realization_spec").is_some());
    }

    #[test]
    fn json_round_trip_preserves_report() {
        let cert = certify_not_comm_cohopfian(
            &AmalgamComplex::simple("c", &[1, 2, 1]),
            &CertifyOptions::default(),
        )
        .unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(verify_certificate(&back), cert.report);
    }
}
