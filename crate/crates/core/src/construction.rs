//! Builders for the covers used in the certificates.
//!
//! For a simple surface amalgam `X` with pieces `Σ₁..Σ_k`:
//!
//! * `X̂ → X` has degree 2. Each `Σ̂ᵢ` has `χ = 2χ(Σᵢ)` and two boundary
//!   components, one on each lift `γ`, `γ′` of the branch circle.
//! * `X′ → X̂` has degree `D`. Each `Σ′ᵢ` covers `Σ̂ᵢ` with degree `D`, with one
//!   boundary component on each of `ρ → γ` and `ρ′ → γ′`.
//! * `X″ → X̂` has degree `d + 2Σdᵢ`. `Σ′ᵢ` is cut into `Σ′ᵢ₁ ∪ Σ′ᵢ₂ ∪ Σ′ᵢ₃`
//!   along `ρᵢ₁, ρ′ᵢ₁, ρᵢ₂, ρ′ᵢ₂`, and `k − 2` extra pieces are hung on each
//!   of the pairs `(ρᵢ₁, ρ′ᵢ₁)` and `(ρᵢ₂, ρ′ᵢ₂)`.

use std::collections::BTreeMap;

use crate::amalgam_cover::{
    verify_amalgam_cover, AmalgamCover, BoundaryLift, CircleLift, CoverPiece,
};
use crate::claim::ClaimSolution;
use crate::error::ConstructionError;
use crate::surface::{AmalgamComplex, Surface};
use crate::witness::{verify_embedding, EmbeddingWitness, WitnessAssignment};

pub const GAMMA: &str = "gamma";
pub const GAMMA_PRIME: &str = "gamma_prime";
pub const RHO: &str = "rho";
pub const RHO_PRIME: &str = "rho_prime";

fn lift(id: impl Into<String>, base_circle: &str, degree: u64) -> CircleLift {
    CircleLift {
        id: id.into(),
        base_circle: base_circle.to_owned(),
        degree,
    }
}

fn boundary(base_boundary: usize, lift: impl Into<String>) -> BoundaryLift {
    BoundaryLift {
        base_boundary,
        lift: lift.into(),
    }
}

/// A cover piece whose surface is determined by `χ = degree·χ(base piece)`
/// and the boundary count.
fn piece_of_degree(
    base: &AmalgamComplex,
    id: String,
    base_piece: usize,
    degree: u64,
    boundary_map: Vec<BoundaryLift>,
) -> Result<CoverPiece, ConstructionError> {
    let base_chi = base.pieces[base_piece].euler_characteristic() as i128;
    let chi = i64::try_from(degree as i128 * base_chi).map_err(|_| ConstructionError::Overflow)?;
    let surface =
        Surface::from_euler_characteristic(chi, boundary_map.len() as u32).ok_or_else(|| {
            ConstructionError::Verification(format!(
                "no surface with χ = {chi} and {} boundary components",
                boundary_map.len()
            ))
        })?;
    Ok(CoverPiece {
        id,
        base_piece,
        surface,
        boundary_map,
    })
}

fn verified(cover: AmalgamCover) -> Result<AmalgamCover, ConstructionError> {
    let report = verify_amalgam_cover(&cover);
    if report.passed() {
        Ok(cover)
    } else {
        Err(ConstructionError::Verification(report.to_string()))
    }
}

/// The degree-2 cover `X̂ → X`.
pub fn build_double_cover(x: &AmalgamComplex) -> Result<AmalgamCover, ConstructionError> {
    if !x.is_simple() {
        return Err(ConstructionError::NotSimple);
    }
    let circle = &x.circles[0];
    let pieces = (0..x.pieces.len())
        .map(|i| {
            piece_of_degree(
                x,
                format!("hat_{}", i + 1),
                i,
                2,
                vec![boundary(0, GAMMA), boundary(0, GAMMA_PRIME)],
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    verified(AmalgamCover {
        base: x.clone(),
        degree: 2,
        circle_lifts: vec![lift(GAMMA, circle, 1), lift(GAMMA_PRIME, circle, 1)],
        pieces,
        realizations: None,
    })
}

/// Checks that `hat` has the shape [`build_double_cover`] produces and
/// returns `X̂` as a complex.
fn double_cover_level(hat: &AmalgamCover) -> Result<AmalgamComplex, ConstructionError> {
    let report = verify_amalgam_cover(hat);
    if !report.passed() {
        return Err(ConstructionError::NotDoubleCover(report.to_string()));
    }
    if hat.degree != 2 || hat.circle_lifts.len() != 2 {
        return Err(ConstructionError::NotDoubleCover(
            "expected degree 2 with two circle lifts".into(),
        ));
    }
    Ok(hat.total())
}

/// The two circles of a two-circle level complex whose pieces all have
/// boundary on the first circle and then the second.
fn level_circles(level: &AmalgamComplex) -> Result<(String, String), ConstructionError> {
    if !level.validate().passed() || level.circles.len() != 2 {
        return Err(ConstructionError::NotDoubleCover(
            "expected a valid complex with two circles".into(),
        ));
    }
    let (first, second) = (level.circles[0].clone(), level.circles[1].clone());
    for row in &level.attachments {
        if row != &[first.clone(), second.clone()] {
            return Err(ConstructionError::NotDoubleCover(format!(
                "every piece must have boundary on `{first}` then `{second}`"
            )));
        }
    }
    if level.pieces.len() < 3 {
        return Err(ConstructionError::TooFewPieces(level.pieces.len()));
    }
    Ok((first, second))
}

/// The degree-`D` cover `X′ → X̂`.
pub fn build_x_prime(
    hat: &AmalgamCover,
    prime_degree: u64,
) -> Result<AmalgamCover, ConstructionError> {
    build_x_prime_over(&double_cover_level(hat)?, prime_degree)
}

/// The degree-`D` cover of a two-circle level complex shaped like `X̂`.
pub fn build_x_prime_over(
    level: &AmalgamComplex,
    prime_degree: u64,
) -> Result<AmalgamCover, ConstructionError> {
    if prime_degree == 0 {
        return Err(ConstructionError::InvalidParameter(
            "D must be positive".into(),
        ));
    }
    let (gamma, gamma_prime) = level_circles(level)?;
    let pieces = (0..level.pieces.len())
        .map(|i| {
            piece_of_degree(
                level,
                format!("prime_{}", i + 1),
                i,
                prime_degree,
                vec![boundary(0, RHO), boundary(1, RHO_PRIME)],
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    verified(AmalgamCover {
        base: level.clone(),
        degree: prime_degree,
        circle_lifts: vec![
            lift(RHO, &gamma, prime_degree),
            lift(RHO_PRIME, &gamma_prime, prime_degree),
        ],
        pieces,
        realizations: None,
    })
}

/// Ids of the circles `ρᵢ₁, ρ′ᵢ₁, ρᵢ₂, ρ′ᵢ₂` (1-based `i`).
pub fn branch_circles(i: usize) -> [String; 4] {
    [
        format!("rho_{i}_1"),
        format!("rho_{i}_1_prime"),
        format!("rho_{i}_2"),
        format!("rho_{i}_2_prime"),
    ]
}

/// Ids of `Σ′ᵢ₁, Σ′ᵢ₂, Σ′ᵢ₃` (1-based `i`).
pub fn decomposition_pieces(i: usize) -> [String; 3] {
    [
        format!("sigma_{i}_1"),
        format!("sigma_{i}_2"),
        format!("sigma_{i}_3"),
    ]
}

/// The degree-`(d + 2Σdᵢ)` cover `X″ → X̂`.
pub fn build_x_double_prime(
    hat: &AmalgamCover,
    sol: &ClaimSolution,
) -> Result<AmalgamCover, ConstructionError> {
    build_x_double_prime_over(&double_cover_level(hat)?, sol)
}

/// [`build_x_double_prime`] over a two-circle level complex shaped like `X̂`.
pub fn build_x_double_prime_over(
    level: &AmalgamComplex,
    sol: &ClaimSolution,
) -> Result<AmalgamCover, ConstructionError> {
    let (gamma, gamma_prime) = level_circles(level)?;
    let k = level.pieces.len();
    let chis: Vec<i64> = level
        .pieces
        .iter()
        .map(Surface::euler_characteristic)
        .collect();
    if sol.chis != chis || sol.branch_degrees.len() != k {
        return Err(ConstructionError::InvalidParameter(
            "solution does not match the double cover's Euler characteristics".into(),
        ));
    }
    let report = sol.check();
    if !report.passed() {
        return Err(ConstructionError::InvalidParameter(report.to_string()));
    }
    let d = sol.core_degree;
    let mut circle_lifts = vec![lift(RHO, &gamma, d), lift(RHO_PRIME, &gamma_prime, d)];
    let mut pieces = Vec::new();
    for i in 0..k {
        let di = sol.branch_degrees[i];
        let prev = (i + k - 1) % k;
        let [r1, r1p, r2, r2p] = branch_circles(i + 1);
        let [s1, s2, s3] = decomposition_pieces(i + 1);
        circle_lifts.extend([
            lift(r1.clone(), &gamma, di),
            lift(r1p.clone(), &gamma_prime, di),
            lift(r2.clone(), &gamma, di),
            lift(r2p.clone(), &gamma_prime, di),
        ]);
        pieces.push(piece_of_degree(
            level,
            s1,
            i,
            d + di,
            vec![
                boundary(0, RHO),
                boundary(1, RHO_PRIME),
                boundary(0, &r1),
                boundary(1, &r1p),
            ],
        )?);
        pieces.push(piece_of_degree(
            level,
            s2,
            prev,
            2 * di,
            vec![
                boundary(0, &r1),
                boundary(1, &r1p),
                boundary(0, &r2),
                boundary(1, &r2p),
            ],
        )?);
        pieces.push(piece_of_degree(
            level,
            s3,
            i,
            di,
            vec![boundary(0, &r2), boundary(1, &r2p)],
        )?);
        for j in (0..k).filter(|&j| j != i && j != prev) {
            pieces.push(piece_of_degree(
                level,
                format!("attach_{}_{}_1", i + 1, j + 1),
                j,
                di,
                vec![boundary(0, &r1), boundary(1, &r1p)],
            )?);
            pieces.push(piece_of_degree(
                level,
                format!("attach_{}_{}_2", i + 1, j + 1),
                j,
                di,
                vec![boundary(0, &r2), boundary(1, &r2p)],
            )?);
        }
    }
    verified(AmalgamCover {
        base: level.clone(),
        degree: sol.double_prime_degree(),
        circle_lifts,
        pieces,
        realizations: None,
    })
}

fn checked_witness(
    sub: &AmalgamCover,
    ambient: &AmalgamCover,
    witness: EmbeddingWitness,
) -> Result<EmbeddingWitness, ConstructionError> {
    let report = verify_embedding(sub, ambient, &witness);
    let failed = report.failures().next().map(|check| check.name.clone());
    match failed {
        Some(name) => Err(ConstructionError::WitnessInvariantViolation(name)),
        None => Ok(witness),
    }
}

/// `Σ′ᵢ ↦ Σ′ᵢ₁ ∪ Σ′ᵢ₂ ∪ Σ′ᵢ₃`, with every hung piece in the complement.
pub fn build_embedding_witness(
    x_prime: &AmalgamCover,
    x_double_prime: &AmalgamCover,
    sol: &ClaimSolution,
) -> Result<EmbeddingWitness, ConstructionError> {
    let k = sol.k();
    if x_prime.pieces.len() != k {
        return Err(ConstructionError::InvalidParameter(
            "X′ does not match the solution".into(),
        ));
    }
    let assignments = x_prime
        .pieces
        .iter()
        .enumerate()
        .map(|(i, p)| WitnessAssignment {
            sub_piece: p.id.clone(),
            ambient_pieces: decomposition_pieces(i + 1).to_vec(),
            consumed_circles: branch_circles(i + 1).to_vec(),
        })
        .collect();
    let complement = x_double_prime
        .pieces
        .iter()
        .filter(|p| p.id.starts_with("attach_"))
        .map(|p| p.id.clone())
        .collect();
    let circle_map = BTreeMap::from([
        (RHO.to_owned(), RHO.to_owned()),
        (RHO_PRIME.to_owned(), RHO_PRIME.to_owned()),
    ]);
    checked_witness(
        x_prime,
        x_double_prime,
        EmbeddingWitness {
            circle_map,
            assignments,
            complement,
        },
    )
}

/// The three genus-one pieces of the main example, glued along circle `c`.
pub fn main_example_base() -> AmalgamComplex {
    AmalgamComplex::simple("c", &[1, 1, 1])
}

/// The degree-3 cover `X₁ → X`: three genus-two one-holed pieces on a single
/// degree-3 circle.
pub fn main_example_x1() -> AmalgamCover {
    let base = main_example_base();
    AmalgamCover {
        circle_lifts: vec![lift("lift", "c", 3)],
        pieces: (0..3)
            .map(|i| CoverPiece {
                id: format!("x1_{}", i + 1),
                base_piece: i,
                surface: Surface::new(2, 1),
                boundary_map: vec![boundary(0, "lift")],
            })
            .collect(),
        degree: 3,
        base,
        realizations: None,
    }
}

/// The degree-4 cover `X₂ → X`: a genus-one two-holed double cover of each
/// piece, joined along `α`, with one copy of each other piece hung on its
/// second boundary circle `βᵢ`.
pub fn main_example_x2() -> AmalgamCover {
    let base = main_example_base();
    let mut circle_lifts = vec![lift("alpha", "c", 1)];
    let mut pieces = Vec::new();
    for i in 1..=3 {
        circle_lifts.push(lift(format!("beta_{i}"), "c", 1));
        pieces.push(CoverPiece {
            id: format!("double_{i}"),
            base_piece: i - 1,
            surface: Surface::new(1, 2),
            boundary_map: vec![boundary(0, "alpha"), boundary(0, format!("beta_{i}"))],
        });
    }
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            pieces.push(CoverPiece {
                id: format!("copy_{i}_{j}"),
                base_piece: j - 1,
                surface: Surface::new(1, 1),
                boundary_map: vec![boundary(0, format!("beta_{i}"))],
            });
        }
    }
    AmalgamCover {
        base,
        degree: 4,
        circle_lifts,
        pieces,
        realizations: None,
    }
}

/// `X₁`'s i-th piece is `double_i` glued along `βᵢ` to the copy of the
/// lowest-indexed other piece; the remaining copies form the complement.
pub fn main_example_witness() -> EmbeddingWitness {
    let mut assignments = Vec::new();
    let mut complement = Vec::new();
    for i in 1..=3 {
        let mut others = (1..=3).filter(|&j| j != i);
        let joined = others.next().unwrap();
        assignments.push(WitnessAssignment {
            sub_piece: format!("x1_{i}"),
            ambient_pieces: vec![format!("double_{i}"), format!("copy_{i}_{joined}")],
            consumed_circles: vec![format!("beta_{i}")],
        });
        complement.extend(others.map(|j| format!("copy_{i}_{j}")));
    }
    EmbeddingWitness {
        circle_map: BTreeMap::from([("lift".to_owned(), "alpha".to_owned())]),
        assignments,
        complement,
    }
}
