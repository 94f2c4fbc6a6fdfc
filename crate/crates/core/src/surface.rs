//! Compact oriented surfaces and amalgam complexes.
//!
//! An [`AmalgamComplex`] is a finite collection of surfaces whose boundary
//! components are glued to branch circles. Only incidence is recorded: which
//! circle each boundary component is attached to. Euler characteristics are
//! always derived from `(genus, boundary_count)`; circles contribute zero.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A compact oriented surface, classified by genus and number of boundary
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SurfaceRepr", into = "SurfaceRepr")]
pub struct Surface {
    pub genus: u64,
    pub boundary_count: u32,
}

impl Surface {
    pub const fn new(genus: u64, boundary_count: u32) -> Self {
        Self {
            genus,
            boundary_count,
        }
    }

    /// χ = 2 − 2g − b.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count as i64
    }

    /// The orientable surface with the given Euler characteristic and
    /// boundary count, if one exists.
    pub fn from_euler_characteristic(chi: i64, boundary_count: u32) -> Option<Self> {
        let twice_genus = 2 - boundary_count as i64 - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return None;
        }
        Some(Self::new((twice_genus / 2) as u64, boundary_count))
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, b={})", self.genus, self.boundary_count)
    }
}

pub fn euler_char_surface(surface: &Surface) -> i64 {
    surface.euler_characteristic()
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    genus: u64,
    boundary: u32,
    #[serde(default = "default_orientable", skip_serializing_if = "is_true")]
    orientable: bool,
}

fn default_orientable() -> bool {
    true
}

fn is_true(value: &bool) -> bool {
    *value
}

impl TryFrom<SurfaceRepr> for Surface {
    type Error = String;

    fn try_from(repr: SurfaceRepr) -> Result<Self, Self::Error> {
        if !repr.orientable {
            return Err("non-orientable surfaces are not supported".to_owned());
        }
        Ok(Surface::new(repr.genus, repr.boundary))
    }
}

impl From<Surface> for SurfaceRepr {
    fn from(surface: Surface) -> Self {
        SurfaceRepr {
            genus: surface.genus,
            boundary: surface.boundary_count,
            orientable: true,
        }
    }
}

/// Surfaces glued along their boundary components to branch circles.
///
/// `attachments[i][j]` is the circle that boundary component `j` of piece `i`
/// is attached to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamComplex {
    pub circles: Vec<String>,
    pub pieces: Vec<Surface>,
    pub attachments: Vec<Vec<String>>,
}

/// A structural defect found by [`AmalgamComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    DuplicateCircle {
        circle: String,
    },
    AttachmentListCount {
        pieces: usize,
        attachment_lists: usize,
    },
    BoundaryCountMismatch {
        piece: usize,
        boundary_count: u32,
        attached: usize,
    },
    UnknownCircle {
        piece: usize,
        boundary: usize,
        circle: String,
    },
    UnusedCircle {
        circle: String,
    },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "complex has no pieces"),
            Violation::DuplicateCircle { circle } => write!(f, "circle `{circle}` listed twice"),
            Violation::AttachmentListCount {
                pieces,
                attachment_lists,
            } => write!(f, "{pieces} pieces but {attachment_lists} attachment lists"),
            Violation::BoundaryCountMismatch {
                piece,
                boundary_count,
                attached,
            } => write!(
                f,
                "piece {piece} has {boundary_count} boundary components but {attached} attachments"
            ),
            Violation::UnknownCircle {
                piece,
                boundary,
                circle,
            } => write!(
                f,
                "boundary {boundary} of piece {piece} attached to unknown circle `{circle}`"
            ),
            Violation::UnusedCircle { circle } => {
                write!(f, "circle `{circle}` has no attached boundary component")
            }
            Violation::Disconnected => write!(f, "complex is not connected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub simple: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl AmalgamComplex {
    /// The simple surface amalgam built from `pieces`, each with one boundary
    /// component glued to the single circle `circle`.
    pub fn simple(circle: &str, genera: &[u64]) -> Self {
        Self {
            circles: vec![circle.to_owned()],
            pieces: genera.iter().map(|&g| Surface::new(g, 1)).collect(),
            attachments: genera.iter().map(|_| vec![circle.to_owned()]).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces.iter().map(Surface::euler_characteristic).sum()
    }

    pub fn circle_of(&self, piece: usize, boundary: usize) -> Option<&str> {
        self.attachments
            .get(piece)
            .and_then(|row| row.get(boundary))
            .map(String::as_str)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        if self.pieces.is_empty() {
            violations.push(Violation::Empty);
        }

        let mut known = BTreeSet::new();
        for circle in &self.circles {
            if !known.insert(circle.as_str()) {
                violations.push(Violation::DuplicateCircle {
                    circle: circle.clone(),
                });
            }
        }

        if self.attachments.len() != self.pieces.len() {
            violations.push(Violation::AttachmentListCount {
                pieces: self.pieces.len(),
                attachment_lists: self.attachments.len(),
            });
        }

        let mut used = BTreeSet::new();
        for (piece, (surface, row)) in self.pieces.iter().zip(&self.attachments).enumerate() {
            if row.len() != surface.boundary_count as usize {
                violations.push(Violation::BoundaryCountMismatch {
                    piece,
                    boundary_count: surface.boundary_count,
                    attached: row.len(),
                });
            }
            for (boundary, circle) in row.iter().enumerate() {
                if known.contains(circle.as_str()) {
                    used.insert(circle.as_str());
                } else {
                    violations.push(Violation::UnknownCircle {
                        piece,
                        boundary,
                        circle: circle.clone(),
                    });
                }
            }
        }
        for circle in &known {
            if !used.contains(circle) {
                violations.push(Violation::UnusedCircle {
                    circle: (*circle).to_owned(),
                });
            }
        }

        if !self.pieces.is_empty() && !self.is_connected() {
            violations.push(Violation::Disconnected);
        }

        let simple = violations.is_empty() && self.satisfies_simple_shape();
        ValidationReport { violations, simple }
    }

    pub fn is_simple(&self) -> bool {
        self.validate().simple
    }

    fn satisfies_simple_shape(&self) -> bool {
        self.circles.len() == 1
            && self.pieces.len() >= 3
            && self
                .pieces
                .iter()
                .all(|s| s.boundary_count == 1 && s.euler_characteristic() < 0)
    }

    /// Connectivity of the bipartite piece/circle incidence graph.
    pub fn is_connected(&self) -> bool {
        let piece_count = self.pieces.len();
        let circle_index: BTreeMap<&str, usize> = self
            .circles
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), piece_count + i))
            .collect();
        let node_count = piece_count + self.circles.len();
        if node_count == 0 {
            return true;
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for (piece, row) in self.attachments.iter().enumerate().take(piece_count) {
            for circle in row {
                if let Some(&c) = circle_index.get(circle.as_str()) {
                    adjacency[piece].push(c);
                    adjacency[c].push(piece);
                }
            }
        }
        connected(&adjacency)
    }
}

pub fn euler_char_amalgam(complex: &AmalgamComplex) -> i64 {
    complex.euler_characteristic()
}

pub fn validate_amalgam(complex: &AmalgamComplex) -> ValidationReport {
    complex.validate()
}

pub(crate) fn connected(adjacency: &[Vec<usize>]) -> bool {
    if adjacency.is_empty() {
        return true;
    }
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(node) = queue.pop_front() {
        for &next in &adjacency[node] {
            if !seen[next] {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
