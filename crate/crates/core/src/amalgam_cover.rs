//! Covering maps between amalgam complexes.
//!
//! A cover is described at the level the construction reasons about: each
//! base circle has a list of circle lifts with winding degrees, and each base
//! piece a list of cover pieces whose boundary components are matched to base
//! boundary components and circle lifts. [`verify_amalgam_cover`] checks the
//! covering conditions on this data. A cover may additionally carry a
//! permutation representation for each piece, checked by
//! [`verify_realizations`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{ConstructionError, CoverError};
use crate::perm::CycleType;
use crate::report::Report;
use crate::surface::{AmalgamComplex, Surface};
use crate::surface_cover::{
    analyze_rep, neumann_feasible, realize_surface_cover_with_budget, CoverSpec, SurfaceCoverRep,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleLift {
    pub id: String,
    pub base_circle: String,
    pub degree: u64,
}

/// Where one boundary component of a cover piece goes: the base boundary
/// component (0-based, of the base piece) it covers, and its circle lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLift {
    pub base_boundary: usize,
    pub lift: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPiece {
    pub id: String,
    pub base_piece: usize,
    pub surface: Surface,
    pub boundary_map: Vec<BoundaryLift>,
}

/// A piece's permutation representation, plus for each of the piece's
/// boundary components the smallest point (1-based) of the boundary cycle
/// it corresponds to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRealization {
    pub rep: SurfaceCoverRep,
    pub boundary_cycles: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamCover {
    pub base: AmalgamComplex,
    pub degree: u64,
    pub circle_lifts: Vec<CircleLift>,
    pub pieces: Vec<CoverPiece>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizations: Option<Vec<PieceRealization>>,
}

impl AmalgamCover {
    /// The covering space as an amalgam complex: circle lifts become circles.
    pub fn total(&self) -> AmalgamComplex {
        AmalgamComplex {
            circles: self.circle_lifts.iter().map(|l| l.id.clone()).collect(),
            pieces: self.pieces.iter().map(|p| p.surface).collect(),
            attachments: self
                .pieces
                .iter()
                .map(|p| p.boundary_map.iter().map(|b| b.lift.clone()).collect())
                .collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces
            .iter()
            .map(|p| p.surface.euler_characteristic())
            .sum()
    }

    pub fn lift(&self, id: &str) -> Option<&CircleLift> {
        self.circle_lifts.iter().find(|l| l.id == id)
    }

    pub fn piece(&self, id: &str) -> Option<&CoverPiece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    /// `χ(piece)/χ(base piece)` when it is a positive integer.
    pub fn piece_degree(&self, piece: &CoverPiece) -> Option<u64> {
        let base_chi = self
            .base
            .pieces
            .get(piece.base_piece)?
            .euler_characteristic();
        let chi = piece.surface.euler_characteristic();
        if base_chi == 0 || chi % base_chi != 0 || chi / base_chi <= 0 {
            return None;
        }
        Some((chi / base_chi) as u64)
    }

    /// Per base boundary component of the base piece, the degrees of this
    /// piece's boundary components over it.
    pub fn boundary_degrees(&self, piece: &CoverPiece) -> Option<Vec<Vec<u64>>> {
        let base = self.base.pieces.get(piece.base_piece)?;
        let mut grouped = vec![Vec::new(); base.boundary_count as usize];
        for entry in &piece.boundary_map {
            let degree = self.lift(&entry.lift)?.degree;
            grouped.get_mut(entry.base_boundary)?.push(degree);
        }
        Some(grouped)
    }

    /// The cover spec a realization of `piece` must match.
    pub fn piece_cover_spec(&self, piece: &CoverPiece) -> Result<CoverSpec, String> {
        let degree = self
            .piece_degree(piece)
            .ok_or_else(|| format!("piece `{}` has no integral degree", piece.id))?;
        let degree = u32::try_from(degree)
            .map_err(|_| format!("piece `{}` degree {degree} is too large", piece.id))?;
        let grouped = self
            .boundary_degrees(piece)
            .ok_or_else(|| format!("piece `{}` has unresolved boundary references", piece.id))?;
        let partitions = grouped
            .into_iter()
            .map(|parts| {
                let parts = parts
                    .into_iter()
                    .map(|p| u32::try_from(p).map_err(|_| format!("boundary degree {p} too large")))
                    .collect::<Result<Vec<_>, _>>()?;
                CycleType::new(parts).map_err(|e| format!("piece `{}`: {e}", piece.id))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoverSpec::new(degree, partitions))
    }

    pub fn without_realizations(&self) -> Self {
        Self {
            realizations: None,
            ..self.clone()
        }
    }
}

/// Checks the covering conditions. Check names:
/// `base_valid`, `unique_ids`, `positive_degrees`, `references_resolve`,
/// `boundary_count_match`, `boundary_over_circle`, `piece_degree_integral`,
/// `boundary_degree_sum`, `circle_degree_sum`, `piece_degree_sum`,
/// `lift_boundary_bijection`, `euler_multiplicativity`,
/// `piece_neumann_feasible`, `total_connected`.
pub fn verify_amalgam_cover(cover: &AmalgamCover) -> Report {
    let mut report = Report::new();
    let base = &cover.base;

    let validation = base.validate();
    report.record(
        "base_valid",
        validation
            .violations
            .iter()
            .map(ToString::to_string)
            .collect(),
    );

    let mut duplicates = Vec::new();
    let mut seen = BTreeSet::new();
    for id in cover.circle_lifts.iter().map(|l| &l.id) {
        if !seen.insert(id) {
            duplicates.push(format!("circle lift `{id}` repeated"));
        }
    }
    let mut seen = BTreeSet::new();
    for id in cover.pieces.iter().map(|p| &p.id) {
        if !seen.insert(id) {
            duplicates.push(format!("piece `{id}` repeated"));
        }
    }
    report.record("unique_ids", duplicates);

    let mut nonpositive = Vec::new();
    if cover.degree == 0 {
        nonpositive.push("cover degree is 0".to_owned());
    }
    for lift in cover.circle_lifts.iter().filter(|l| l.degree == 0) {
        nonpositive.push(format!("circle lift `{}` has degree 0", lift.id));
    }
    report.record("positive_degrees", nonpositive);

    let lifts: BTreeMap<&str, &CircleLift> = cover
        .circle_lifts
        .iter()
        .rev()
        .map(|l| (l.id.as_str(), l))
        .collect();
    let circles: BTreeSet<&str> = base.circles.iter().map(String::as_str).collect();

    let mut unresolved = Vec::new();
    for lift in &cover.circle_lifts {
        if !circles.contains(lift.base_circle.as_str()) {
            unresolved.push(format!(
                "circle lift `{}` covers unknown circle `{}`",
                lift.id, lift.base_circle
            ));
        }
    }
    for piece in &cover.pieces {
        let Some(base_surface) = base.pieces.get(piece.base_piece) else {
            unresolved.push(format!(
                "piece `{}` covers unknown base piece {}",
                piece.id, piece.base_piece
            ));
            continue;
        };
        for entry in &piece.boundary_map {
            if entry.base_boundary >= base_surface.boundary_count as usize {
                unresolved.push(format!(
                    "piece `{}` covers unknown base boundary {}",
                    piece.id, entry.base_boundary
                ));
            }
            if !lifts.contains_key(entry.lift.as_str()) {
                unresolved.push(format!(
                    "piece `{}` attaches to unknown circle lift `{}`",
                    piece.id, entry.lift
                ));
            }
        }
    }
    report.record("references_resolve", unresolved);

    report.record(
        "boundary_count_match",
        cover
            .pieces
            .iter()
            .filter(|p| p.boundary_map.len() != p.surface.boundary_count as usize)
            .map(|p| {
                format!(
                    "piece `{}` has {} boundary components but {} boundary entries",
                    p.id,
                    p.surface.boundary_count,
                    p.boundary_map.len()
                )
            })
            .collect(),
    );

    let mut misplaced = Vec::new();
    for piece in &cover.pieces {
        for (t, entry) in piece.boundary_map.iter().enumerate() {
            let circle = base.circle_of(piece.base_piece, entry.base_boundary);
            let lift = lifts.get(entry.lift.as_str());
            if let (Some(circle), Some(lift)) = (circle, lift) {
                if circle != lift.base_circle {
                    misplaced.push(format!(
                        "boundary {t} of `{}` lies over circle `{circle}` but its lift `{}` covers `{}`",
                        piece.id, lift.id, lift.base_circle
                    ));
                }
            }
        }
    }
    report.record("boundary_over_circle", misplaced);

    report.record(
        "piece_degree_integral",
        cover
            .pieces
            .iter()
            .filter(|p| cover.piece_degree(p).is_none())
            .map(|p| {
                format!(
                    "χ of piece `{}` is not a positive multiple of its base χ",
                    p.id
                )
            })
            .collect(),
    );

    let mut bad_sums = Vec::new();
    for piece in &cover.pieces {
        let (Some(degree), Some(grouped)) =
            (cover.piece_degree(piece), cover.boundary_degrees(piece))
        else {
            continue;
        };
        for (j, degrees) in grouped.iter().enumerate() {
            let sum: u64 = degrees.iter().sum();
            if sum != degree {
                bad_sums.push(format!(
                    "piece `{}` over base boundary {j}: degrees sum to {sum}, piece degree {degree}",
                    piece.id
                ));
            }
        }
    }
    report.record("boundary_degree_sum", bad_sums);

    // (i) circle lifts of each base circle
    let mut circle_sums: BTreeMap<&str, u64> = circles.iter().map(|&c| (c, 0)).collect();
    for lift in &cover.circle_lifts {
        if let Some(sum) = circle_sums.get_mut(lift.base_circle.as_str()) {
            *sum += lift.degree;
        }
    }
    report.record(
        "circle_degree_sum",
        circle_sums
            .iter()
            .filter(|(_, &sum)| sum != cover.degree)
            .map(|(c, sum)| {
                format!(
                    "lifts of `{c}` have total degree {sum}, cover degree {}",
                    cover.degree
                )
            })
            .collect(),
    );

    // (ii) cover pieces of each base piece
    let mut piece_sums = vec![0u64; base.pieces.len()];
    for piece in &cover.pieces {
        if let (Some(sum), Some(degree)) = (
            piece_sums.get_mut(piece.base_piece),
            cover.piece_degree(piece),
        ) {
            *sum += degree;
        }
    }
    report.record(
        "piece_degree_sum",
        piece_sums
            .iter()
            .enumerate()
            .filter(|(_, &sum)| sum != cover.degree)
            .map(|(i, sum)| {
                format!(
                    "pieces over base piece {i} have total degree {sum}, cover degree {}",
                    cover.degree
                )
            })
            .collect(),
    );

    // (iii) each lift of γ meets each base boundary component on γ exactly once
    let mut incidence: BTreeMap<(&str, usize, usize), usize> = BTreeMap::new();
    for piece in &cover.pieces {
        for entry in &piece.boundary_map {
            *incidence
                .entry((entry.lift.as_str(), piece.base_piece, entry.base_boundary))
                .or_default() += 1;
        }
    }
    let mut bijection = Vec::new();
    for lift in &cover.circle_lifts {
        for (p, row) in base.attachments.iter().enumerate() {
            for (j, circle) in row.iter().enumerate() {
                if *circle != lift.base_circle {
                    continue;
                }
                let count = incidence
                    .get(&(lift.id.as_str(), p, j))
                    .copied()
                    .unwrap_or(0);
                if count != 1 {
                    bijection.push(format!(
                        "lift `{}` meets {count} boundary components over base piece {p} boundary {j}",
                        lift.id
                    ));
                }
            }
        }
    }
    report.record("lift_boundary_bijection", bijection);

    // (iv)
    let total_chi: i128 = cover
        .pieces
        .iter()
        .map(|p| p.surface.euler_characteristic() as i128)
        .sum();
    let expected = cover.degree as i128 * base.euler_characteristic() as i128;
    report.expect("euler_multiplicativity", total_chi == expected, || {
        format!("χ(total) = {total_chi}, degree·χ(base) = {expected}")
    });

    // (v)
    let mut infeasible = Vec::new();
    for piece in &cover.pieces {
        let Some(base_surface) = base.pieces.get(piece.base_piece) else {
            infeasible.push(format!("piece `{}` has no base piece", piece.id));
            continue;
        };
        match cover.piece_cover_spec(piece) {
            Ok(spec) => match neumann_feasible(base_surface, &spec) {
                Ok(true) => {}
                Ok(false) => infeasible.push(format!("piece `{}`: parity fails", piece.id)),
                Err(e) => infeasible.push(format!("piece `{}`: {e}", piece.id)),
            },
            Err(e) => infeasible.push(e),
        }
    }
    report.record("piece_neumann_feasible", infeasible);

    // (vi)
    report.expect("total_connected", cover.total().is_connected(), || {
        "covering complex is disconnected".to_owned()
    });

    report
}

fn piece_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Realizes every piece by a connected permutation representation and
/// matches boundary cycles to the piece's boundary components.
pub fn realize_amalgam_cover(
    cover: &AmalgamCover,
    seed: u64,
    samples: u64,
) -> Result<AmalgamCover, ConstructionError> {
    let report = verify_amalgam_cover(cover);
    if !report.passed() {
        return Err(ConstructionError::Verification(report.to_string()));
    }
    let mut realizations = Vec::with_capacity(cover.pieces.len());
    for (index, piece) in cover.pieces.iter().enumerate() {
        let fail = |source: CoverError| ConstructionError::Realization {
            piece: piece.id.clone(),
            source,
        };
        let spec = cover
            .piece_cover_spec(piece)
            .map_err(|e| fail(CoverError::SpecMismatch(e)))?;
        let base_surface = cover.base.pieces[piece.base_piece];
        let rep = realize_surface_cover_with_budget(
            &base_surface,
            &spec,
            piece_seed(seed, index),
            samples,
        )
        .map_err(fail)?;
        let boundary_cycles = assign_boundary_cycles(cover, piece, &rep);
        realizations.push(PieceRealization {
            rep,
            boundary_cycles,
        });
    }
    Ok(AmalgamCover {
        realizations: Some(realizations),
        ..cover.clone()
    })
}

/// Boundary components in index order each take the unused cycle of matching
/// length with the smallest starting point.
fn assign_boundary_cycles(
    cover: &AmalgamCover,
    piece: &CoverPiece,
    rep: &SurfaceCoverRep,
) -> Vec<u32> {
    let mut available: Vec<Vec<Vec<usize>>> = rep.sigmas.iter().map(|s| s.cycles()).collect();
    piece
        .boundary_map
        .iter()
        .map(|entry| {
            let degree = cover.lift(&entry.lift).map_or(0, |l| l.degree) as usize;
            let cycles = &mut available[entry.base_boundary];
            let position = cycles
                .iter()
                .position(|c| c.len() == degree)
                .expect("verified spec matches the realized boundary cycles");
            cycles.remove(position)[0] as u32 + 1
        })
        .collect()
}

/// Checks realizations against the abstract cover data. Check names:
/// `realization_count`, `realization_relator`, `realization_spec`,
/// `realization_boundary_assignment`, `realization_fiber_counts`.
pub fn verify_realizations(cover: &AmalgamCover) -> Report {
    let mut report = Report::new();
    let Some(realizations) = &cover.realizations else {
        report.record(
            "realization_count",
            vec!["cover carries no realizations".into()],
        );
        return report;
    };
    report.expect(
        "realization_count",
        realizations.len() == cover.pieces.len(),
        || {
            format!(
                "{} realizations for {} pieces",
                realizations.len(),
                cover.pieces.len()
            )
        },
    );
    let pairs: Vec<(&CoverPiece, &PieceRealization)> =
        cover.pieces.iter().zip(realizations).collect();

    report.record(
        "realization_relator",
        pairs
            .iter()
            .filter(|(_, r)| !r.rep.satisfies_relator())
            .map(|(p, _)| format!("piece `{}` violates the relator", p.id))
            .collect(),
    );

    let mut spec_failures = Vec::new();
    for (piece, realization) in &pairs {
        let rep = &realization.rep;
        if cover.base.pieces.get(piece.base_piece) != Some(&rep.base) {
            spec_failures.push(format!(
                "piece `{}` realized over the wrong base surface",
                piece.id
            ));
            continue;
        }
        let spec = match cover.piece_cover_spec(piece) {
            Ok(spec) => spec,
            Err(e) => {
                spec_failures.push(e);
                continue;
            }
        };
        match analyze_rep(rep) {
            Ok(analysis) => match analysis.components.as_slice() {
                [component] => {
                    if component.degree != spec.degree
                        || component.boundary_cycles != spec.boundary_partitions
                        || component.surface() != piece.surface
                    {
                        spec_failures.push(format!(
                            "piece `{}` realization does not match its cover spec",
                            piece.id
                        ));
                    }
                }
                components => spec_failures.push(format!(
                    "piece `{}` realization has {} components",
                    piece.id,
                    components.len()
                )),
            },
            Err(e) => spec_failures.push(format!("piece `{}`: {e}", piece.id)),
        }
    }
    report.record("realization_spec", spec_failures);

    let mut assignment_failures = Vec::new();
    let mut cycle_lengths: BTreeMap<(&str, usize), usize> = BTreeMap::new();
    for (piece, realization) in &pairs {
        if realization.boundary_cycles.len() != piece.boundary_map.len() {
            assignment_failures.push(format!(
                "piece `{}` has the wrong number of boundary cycles",
                piece.id
            ));
            continue;
        }
        let mut used = BTreeSet::new();
        for (t, (entry, &start)) in piece
            .boundary_map
            .iter()
            .zip(&realization.boundary_cycles)
            .enumerate()
        {
            let cycle = realization
                .rep
                .sigmas
                .get(entry.base_boundary)
                .and_then(|s| s.cycles().into_iter().find(|c| c[0] + 1 == start as usize));
            let expected = cover.lift(&entry.lift).map(|l| l.degree as usize);
            match (cycle, expected) {
                (Some(cycle), Some(degree)) if cycle.len() == degree => {
                    if !used.insert((entry.base_boundary, start)) {
                        assignment_failures
                            .push(format!("piece `{}` boundary {t} reuses a cycle", piece.id));
                    }
                    cycle_lengths.insert((piece.id.as_str(), t), cycle.len());
                }
                _ => assignment_failures.push(format!(
                    "piece `{}` boundary {t} is not matched to a cycle of its lift's degree",
                    piece.id
                )),
            }
        }
    }
    report.record("realization_boundary_assignment", assignment_failures);

    // fibers over a point of each base piece and of each base boundary
    let mut fiber_failures = Vec::new();
    let mut piece_fibers = vec![0u64; cover.base.pieces.len()];
    let mut boundary_fibers: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (piece, realization) in &pairs {
        if let Some(slot) = piece_fibers.get_mut(piece.base_piece) {
            *slot += realization.rep.degree as u64;
        }
        for (t, entry) in piece.boundary_map.iter().enumerate() {
            let length = cycle_lengths
                .get(&(piece.id.as_str(), t))
                .copied()
                .unwrap_or(0);
            *boundary_fibers
                .entry((piece.base_piece, entry.base_boundary))
                .or_default() += length as u64;
        }
    }
    for (p, &count) in piece_fibers.iter().enumerate() {
        if count != cover.degree {
            fiber_failures.push(format!("fiber over base piece {p} has {count} points"));
        }
    }
    for (p, surface) in cover.base.pieces.iter().enumerate() {
        for j in 0..surface.boundary_count as usize {
            let count = boundary_fibers.get(&(p, j)).copied().unwrap_or(0);
            if count != cover.degree {
                fiber_failures.push(format!(
                    "fiber over base piece {p} boundary {j} has {count} points"
                ));
            }
        }
    }
    report.record("realization_fiber_counts", fiber_failures);

    report
}
