//! Targeted corruptions of certificates, one per report check.
//!
//! [`mutate`] returns a copy of a certificate altered so that the named check
//! fails when the certificate is re-verified. Other checks may fail as well.
//! Used to confirm that every check in a report can actually detect
//! something.

use crate::amalgam_cover::{AmalgamCover, CircleLift};
use crate::certificate::Certificate;
use crate::perm::Permutation;
use crate::surface::Surface;
use crate::surface_cover::SurfaceCoverRep;

/// A corrupted copy of `cert` targeting `check`, or `None` when the catalog
/// has no mutation for that name or the certificate lacks the needed data.
pub fn mutate(cert: &Certificate, check: &str) -> Option<Certificate> {
    let mut cert = cert.clone();
    if let Some((prefix, inner)) = check.split_once('.') {
        let cover = match prefix {
            "hat" => cert.hat.as_mut()?,
            "x_prime" => &mut cert.x_prime,
            "x_double_prime" => &mut cert.x_double_prime,
            _ => return None,
        };
        mutate_cover(cover, inner)?;
        return Some(cert);
    }
    if let Some(index) = check.strip_prefix("claim_eq_") {
        let i: usize = index.parse().ok()?;
        *cert
            .solution
            .as_mut()?
            .branch_degrees
            .get_mut(i.checked_sub(1)?)? += 1;
        return Some(cert);
    }
    match check {
        "base_simple" => {
            let circle = cert.base.circles.first()?.clone();
            cert.base.pieces.push(Surface::new(1, 2));
            cert.base.attachments.push(vec![circle.clone(), circle]);
        }
        "hat_over_base" => cert.hat.as_mut()?.base.pieces.first_mut()?.genus += 1,
        "hat_degree_two" => cert.hat.as_mut()?.degree = 3,
        "claim_chis_match" => *cert.solution.as_mut()?.chis.first_mut()? -= 2,
        "claim_positive" => *cert.solution.as_mut()?.branch_degrees.first_mut()? = 0,
        "claim_divisibility" => cert.solution.as_mut()?.prime_degree += 1,
        "x_prime_over_level" => cert.x_prime.base.pieces.first_mut()?.genus += 1,
        "x_double_prime_over_level" => cert.x_double_prime.base.pieces.first_mut()?.genus += 1,
        "x_prime_degree" => cert.x_prime.degree += 1,
        "x_double_prime_degree" => cert.x_double_prime.degree += 1,
        "composite_degrees" => cert.composite_degrees.x_prime += 1,
        "witness_partition" => {
            let first = cert.witness.complement.first()?.clone();
            cert.witness.complement.push(first);
        }
        "witness_circle_map" => {
            cert.witness.circle_map.pop_first()?;
        }
        "witness_consumed_interior" => {
            let consumed = &mut cert.witness.assignments.first_mut()?.consumed_circles;
            consumed.push(consumed.first()?.clone());
        }
        "witness_chi_sum" => {
            let assignment = cert.witness.assignments.first_mut()?;
            if assignment.ambient_pieces.len() < 2 {
                return None;
            }
            let moved = assignment.ambient_pieces.pop()?;
            cert.witness.complement.push(moved);
        }
        "witness_boundary_pattern" => {
            cert.witness
                .assignments
                .first_mut()?
                .consumed_circles
                .pop()?;
        }
        "witness_connected" => {
            let assignment = cert.witness.assignments.first_mut()?;
            if assignment.ambient_pieces.len() < 2 {
                return None;
            }
            assignment.consumed_circles.clear();
        }
        "essential_pieces" | "complement_negative_chi" => {
            let id = cert.witness.complement.first()?.clone();
            let piece = cert.x_double_prime.pieces.iter_mut().find(|p| p.id == id)?;
            piece.surface = Surface::new(0, 1);
        }
        "complement_nonempty" => cert.witness.complement.clear(),
        "complement_chi_total" => cert.x_prime.pieces.first_mut()?.surface.genus += 1,
        _ => return None,
    }
    Some(cert)
}

/// Corrupts one cover for the unprefixed cover or realization check `check`.
pub fn mutate_cover(cover: &mut AmalgamCover, check: &str) -> Option<()> {
    match check {
        "base_valid" => cover.base.circles.push("mutant".into()),
        "unique_ids" => {
            let id = cover.pieces.first()?.id.clone();
            cover.pieces.get_mut(1)?.id = id;
        }
        "positive_degrees" => cover.circle_lifts.first_mut()?.degree = 0,
        "references_resolve" => {
            cover.pieces.first_mut()?.boundary_map.first_mut()?.lift = "missing".into();
        }
        "boundary_count_match" => {
            cover.pieces.first_mut()?.boundary_map.pop()?;
        }
        "boundary_over_circle" => {
            cover.base.circles.push("mutant".into());
            cover.circle_lifts.first_mut()?.base_circle = "mutant".into();
        }
        "piece_degree_integral" => cover.pieces.first_mut()?.surface = Surface::new(0, 1),
        "boundary_degree_sum" | "piece_degree_sum" => {
            let base_piece = cover.pieces.first()?.base_piece;
            let base_chi = cover.base.pieces.get(base_piece)?.euler_characteristic();
            cover.pieces.first_mut()?.surface.genus += base_chi.unsigned_abs();
        }
        "circle_degree_sum" => cover.circle_lifts.first_mut()?.degree += 1,
        "lift_boundary_bijection" => {
            let lift = cover.circle_lifts.first()?.clone();
            let entry = cover
                .pieces
                .iter_mut()
                .flat_map(|p| p.boundary_map.iter_mut())
                .find(|b| b.lift == lift.id)?;
            entry.lift = "mutant".into();
            cover.circle_lifts.push(CircleLift {
                id: "mutant".into(),
                ..lift
            });
        }
        "euler_multiplicativity" => cover.degree += 1,
        "piece_neumann_feasible" => {
            let base_piece = cover.pieces.first()?.base_piece;
            cover.base.pieces.get_mut(base_piece)?.genus = 0;
        }
        "total_connected" => {
            let base_circle = cover.circle_lifts.first()?.base_circle.clone();
            cover.circle_lifts.push(CircleLift {
                id: "island".into(),
                base_circle,
                degree: 1,
            });
        }
        "realization_count" => {
            cover.realizations.as_mut()?.pop()?;
        }
        "realization_relator" => {
            let rep = &mut cover
                .realizations
                .as_mut()?
                .iter_mut()
                .find(|r| r.rep.degree >= 2)?
                .rep;
            let mut swap: Vec<u32> = (0..rep.degree).collect();
            swap.swap(0, 1);
            let last = rep.sigmas.last_mut()?;
            *last = last.then(&Permutation::from_images(swap).ok()?);
        }
        "realization_spec" => {
            let realization = cover
                .realizations
                .as_mut()?
                .iter_mut()
                .find(|r| r.rep.degree >= 2)?;
            realization.rep =
                SurfaceCoverRep::trivial(realization.rep.base, realization.rep.degree);
        }
        "realization_boundary_assignment" => cover
            .realizations
            .as_mut()?
            .first_mut()?
            .boundary_cycles
            .clear(),
        "realization_fiber_counts" => cover.degree += 1,
        _ => return None,
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{build_main_example, verify_certificate};

    #[test]
    fn every_main_example_check_is_detected() {
        let cert = build_main_example();
        for check in &cert.report.checks {
            let mutant = mutate(&cert, &check.name)
                .unwrap_or_else(|| panic!("no mutation for {}", check.name));
            let report = verify_certificate(&mutant);
            assert!(
                !report.get(&check.name).unwrap().passed,
                "{} survived",
                check.name
            );
        }
    }

    #[test]
    fn unknown_names_have_no_mutation() {
        assert!(mutate(&build_main_example(), "no_such_check").is_none());
        assert!(mutate(&build_main_example(), "hat.base_valid").is_none());
    }
}
