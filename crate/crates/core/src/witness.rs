//! Embedding witnesses: one cover exhibited as a union of pieces of another.
//!
//! Each piece `P` of the smaller cover is assigned a set of pieces of the
//! larger cover together with the circles along which they are glued
//! ("consumed" circles). The union is a compact orientable surface; it is
//! homeomorphic to `P` when it is connected and has the same Euler
//! characteristic and boundary count. The boundary of the union must also sit
//! on the images (under `circle_map`) of the circles `P` is attached to.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::amalgam_cover::AmalgamCover;
use crate::report::Report;
use crate::surface::connected;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAssignment {
    pub sub_piece: String,
    pub ambient_pieces: Vec<String>,
    pub consumed_circles: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    /// Circle lift of the sub cover → circle lift of the ambient cover.
    pub circle_map: BTreeMap<String, String>,
    pub assignments: Vec<WitnessAssignment>,
    pub complement: Vec<String>,
}

/// Check names: `witness_partition`, `witness_circle_map`,
/// `witness_consumed_interior`, `witness_chi_sum`,
/// `witness_boundary_pattern`, `witness_connected`, `essential_pieces`,
/// `complement_nonempty`, `complement_negative_chi`, `complement_chi_total`.
pub fn verify_embedding(
    sub: &AmalgamCover,
    ambient: &AmalgamCover,
    witness: &EmbeddingWitness,
) -> Report {
    let mut report = Report::new();

    let mut partition = Vec::new();
    let sub_ids: BTreeSet<&str> = sub.pieces.iter().map(|p| p.id.as_str()).collect();
    let mut assigned_sub = BTreeSet::new();
    for a in &witness.assignments {
        if !sub_ids.contains(a.sub_piece.as_str()) {
            partition.push(format!("unknown sub piece `{}`", a.sub_piece));
        }
        if !assigned_sub.insert(a.sub_piece.as_str()) {
            partition.push(format!("sub piece `{}` assigned twice", a.sub_piece));
        }
        if a.ambient_pieces.is_empty() {
            partition.push(format!(
                "sub piece `{}` assigned no ambient pieces",
                a.sub_piece
            ));
        }
    }
    for id in sub_ids.difference(&assigned_sub) {
        partition.push(format!("sub piece `{id}` unassigned"));
    }
    let ambient_ids: BTreeSet<&str> = ambient.pieces.iter().map(|p| p.id.as_str()).collect();
    let mut used = BTreeSet::new();
    let listed = witness
        .assignments
        .iter()
        .flat_map(|a| a.ambient_pieces.iter())
        .chain(&witness.complement);
    for id in listed {
        if !ambient_ids.contains(id.as_str()) {
            partition.push(format!("unknown ambient piece `{id}`"));
        }
        if !used.insert(id.as_str()) {
            partition.push(format!("ambient piece `{id}` used twice"));
        }
    }
    for id in ambient_ids.difference(&used) {
        partition.push(format!(
            "ambient piece `{id}` neither assigned nor in the complement"
        ));
    }
    report.record("witness_partition", partition);

    let consumed: Vec<&str> = witness
        .assignments
        .iter()
        .flat_map(|a| a.consumed_circles.iter().map(String::as_str))
        .collect();
    let mut map_failures = Vec::new();
    let sub_circles: BTreeSet<&str> = sub.circle_lifts.iter().map(|l| l.id.as_str()).collect();
    let mapped: BTreeSet<&str> = witness.circle_map.keys().map(String::as_str).collect();
    if sub_circles != mapped {
        map_failures.push("circle map domain differs from the sub cover's circles".to_owned());
    }
    let mut images = BTreeSet::new();
    for (from, to) in &witness.circle_map {
        if ambient.lift(to).is_none() {
            map_failures.push(format!("`{from}` maps to unknown circle `{to}`"));
        }
        if !images.insert(to.as_str()) {
            map_failures.push(format!("circle map is not injective at `{to}`"));
        }
        if consumed.contains(&to.as_str()) {
            map_failures.push(format!("image circle `{to}` is also consumed"));
        }
    }
    report.record("witness_circle_map", map_failures);

    let mut interior = Vec::new();
    let mut consumed_once = BTreeSet::new();
    for circle in &consumed {
        if ambient.lift(circle).is_none() {
            interior.push(format!("consumed circle `{circle}` does not exist"));
        }
        if !consumed_once.insert(*circle) {
            interior.push(format!("circle `{circle}` consumed twice"));
        }
    }
    for a in &witness.assignments {
        for circle in &a.consumed_circles {
            let count = union_boundaries(ambient, a)
                .filter(|lift| lift == circle)
                .count();
            if count != 2 {
                interior.push(format!(
                    "union for `{}` meets consumed circle `{circle}` in {count} boundary components",
                    a.sub_piece
                ));
            }
        }
    }
    report.record("witness_consumed_interior", interior);

    let mut chi_failures = Vec::new();
    for a in &witness.assignments {
        let Some(target) = sub.piece(&a.sub_piece) else {
            continue;
        };
        let chi: Option<i64> = a
            .ambient_pieces
            .iter()
            .map(|id| ambient.piece(id).map(|p| p.surface.euler_characteristic()))
            .sum();
        let expected = target.surface.euler_characteristic();
        if chi != Some(expected) {
            chi_failures.push(format!(
                "union for `{}` has χ {chi:?}, expected {expected}",
                a.sub_piece
            ));
        }
    }
    report.record("witness_chi_sum", chi_failures);

    let mut pattern = Vec::new();
    for a in &witness.assignments {
        let Some(target) = sub.piece(&a.sub_piece) else {
            continue;
        };
        let mut actual: Vec<&str> = union_boundaries(ambient, a)
            .filter(|lift| !a.consumed_circles.iter().any(|c| c == lift))
            .collect();
        let mut expected: Vec<&str> = target
            .boundary_map
            .iter()
            .map(|b| witness.circle_map.get(&b.lift).map_or("?", String::as_str))
            .collect();
        actual.sort_unstable();
        expected.sort_unstable();
        if actual != expected {
            pattern.push(format!(
                "union for `{}` has free boundary on {actual:?}, expected {expected:?}",
                a.sub_piece
            ));
        }
    }
    report.record("witness_boundary_pattern", pattern);

    let mut disconnected = Vec::new();
    for a in &witness.assignments {
        let pieces: Vec<_> = a
            .ambient_pieces
            .iter()
            .filter_map(|id| ambient.piece(id))
            .collect();
        let mut adjacency = vec![Vec::new(); pieces.len()];
        for (x, px) in pieces.iter().enumerate() {
            for (y, py) in pieces.iter().enumerate().skip(x + 1) {
                let glued = a.consumed_circles.iter().any(|c| {
                    px.boundary_map.iter().any(|b| &b.lift == c)
                        && py.boundary_map.iter().any(|b| &b.lift == c)
                });
                if glued {
                    adjacency[x].push(y);
                    adjacency[y].push(x);
                }
            }
        }
        if !connected(&adjacency) {
            disconnected.push(format!("union for `{}` is disconnected", a.sub_piece));
        }
    }
    report.record("witness_connected", disconnected);

    report.record(
        "essential_pieces",
        ambient
            .pieces
            .iter()
            .filter(|p| p.surface.euler_characteristic() >= 0)
            .map(|p| {
                format!(
                    "piece `{}` has χ = {}",
                    p.id,
                    p.surface.euler_characteristic()
                )
            })
            .collect(),
    );

    report.expect(
        "complement_nonempty",
        !witness.complement.is_empty(),
        || "complement is empty".to_owned(),
    );

    let mut positive = Vec::new();
    let mut complement_chi = 0i128;
    for id in &witness.complement {
        match ambient.piece(id) {
            Some(p) => {
                let chi = p.surface.euler_characteristic();
                complement_chi += chi as i128;
                if chi >= 0 {
                    positive.push(format!("complement piece `{id}` has χ = {chi}"));
                }
            }
            None => positive.push(format!("complement piece `{id}` does not exist")),
        }
    }
    report.record("complement_negative_chi", positive);

    let ambient_chi = ambient.euler_characteristic() as i128;
    let sub_chi = sub.euler_characteristic() as i128;
    report.expect(
        "complement_chi_total",
        ambient_chi == sub_chi + complement_chi && complement_chi < 0,
        || {
            format!(
                "χ(ambient) = {ambient_chi}, χ(sub) = {sub_chi}, complement χ = {complement_chi}"
            )
        },
    );

    report
}

/// Circle lifts of all boundary components of the assignment's pieces.
fn union_boundaries<'a>(
    ambient: &'a AmalgamCover,
    a: &'a WitnessAssignment,
) -> impl Iterator<Item = &'a str> {
    a.ambient_pieces
        .iter()
        .filter_map(|id| ambient.piece(id))
        .flat_map(|p| p.boundary_map.iter().map(|b| b.lift.as_str()))
}
