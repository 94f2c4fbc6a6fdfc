//! Finite covers of a single surface with boundary, as permutation
//! representations of its fundamental group.
//!
//! The presentation is fixed as
//! `⟨a₁,b₁,…,a_g,b_g,c₁,…,c_b | [a₁,b₁]⋯[a_g,b_g]·c₁⋯c_b⟩` with
//! `[x,y] = x·y·x⁻¹·y⁻¹` and left-to-right composition. A degree-`d` cover is a
//! tuple of permutations of `d` points satisfying the relator; the cycles of
//! the image of `c_j` are the boundary components lying over the `j`-th
//! boundary component of the base, and their lengths are the covering degrees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CoverError;
use crate::perm::{CycleType, Permutation};
use crate::surface::Surface;

pub const DEFAULT_SAMPLE_BUDGET: u64 = 200_000;
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;
/// Largest degree for which the exhaustive realization fallback may run.
pub const EXHAUSTIVE_FALLBACK_MAX_DEGREE: u32 = 6;

/// Prescribed degree and boundary cycle types for a cover of one surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSpec {
    pub degree: u32,
    pub boundary_partitions: Vec<CycleType>,
}

impl CoverSpec {
    pub fn new(degree: u32, boundary_partitions: Vec<CycleType>) -> Self {
        Self {
            degree,
            boundary_partitions,
        }
    }

    /// Parses the `"3;1,2"` grammar: boundary components separated by `;`,
    /// parts by `,`.
    pub fn parse_partitions(text: &str) -> Result<Vec<CycleType>, CoverError> {
        text.split(';')
            .map(|component| {
                let parts = component
                    .split(',')
                    .map(|p| {
                        p.trim().parse::<u32>().map_err(|_| {
                            CoverError::SpecMismatch(format!("bad part `{}` in `{text}`", p.trim()))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CycleType::new(parts)?)
            })
            .collect()
    }

    /// Total number of boundary components of the cover.
    pub fn total_boundary_components(&self) -> usize {
        self.boundary_partitions
            .iter()
            .map(CycleType::num_parts)
            .sum()
    }

    pub fn check_against(&self, base: &Surface) -> Result<(), CoverError> {
        if self.degree == 0 {
            return Err(CoverError::SpecMismatch("degree must be positive".into()));
        }
        if self.boundary_partitions.len() != base.boundary_count as usize {
            return Err(CoverError::SpecMismatch(format!(
                "{} partitions for {} boundary components",
                self.boundary_partitions.len(),
                base.boundary_count
            )));
        }
        for (j, partition) in self.boundary_partitions.iter().enumerate() {
            if partition.degree() != self.degree as u64 {
                return Err(CoverError::SpecMismatch(format!(
                    "partition {partition} over boundary {} sums to {}, not {}",
                    j + 1,
                    partition.degree(),
                    self.degree
                )));
            }
        }
        Ok(())
    }
}

/// Parity criterion: a connected degree-`d` cover with the prescribed
/// boundary data exists iff the cover's boundary count ≡ d·χ(base) (mod 2).
pub fn neumann_feasible(base: &Surface, spec: &CoverSpec) -> Result<bool, CoverError> {
    if base.genus == 0 {
        return Err(CoverError::InvalidGenus);
    }
    spec.check_against(base)?;
    let boundary_components = spec.total_boundary_components() as i64;
    let degree_times_chi = spec.degree as i64 * base.euler_characteristic();
    Ok((boundary_components - degree_times_chi).rem_euclid(2) == 0)
}

/// Generator images of a permutation representation of a surface group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepRepr", into = "RepRepr")]
pub struct SurfaceCoverRep {
    pub base: Surface,
    pub degree: u32,
    pub alphas: Vec<Permutation>,
    pub betas: Vec<Permutation>,
    pub sigmas: Vec<Permutation>,
}

impl SurfaceCoverRep {
    /// Checks shapes (generator counts and degrees) but not the relator.
    pub fn new(
        base: Surface,
        alphas: Vec<Permutation>,
        betas: Vec<Permutation>,
        sigmas: Vec<Permutation>,
    ) -> Result<Self, CoverError> {
        if alphas.len() as u64 != base.genus || betas.len() as u64 != base.genus {
            return Err(CoverError::MalformedRep(format!(
                "expected {} a/b generators, got {}/{}",
                base.genus,
                alphas.len(),
                betas.len()
            )));
        }
        if sigmas.len() != base.boundary_count as usize {
            return Err(CoverError::MalformedRep(format!(
                "expected {} c generators, got {}",
                base.boundary_count,
                sigmas.len()
            )));
        }
        let degree = alphas
            .iter()
            .chain(&betas)
            .chain(&sigmas)
            .map(Permutation::degree)
            .next()
            .unwrap_or(1);
        if degree == 0 {
            return Err(CoverError::MalformedRep("degree must be positive".into()));
        }
        if alphas
            .iter()
            .chain(&betas)
            .chain(&sigmas)
            .any(|p| p.degree() != degree)
        {
            return Err(CoverError::MalformedRep(
                "generators have different degrees".into(),
            ));
        }
        Ok(Self {
            base,
            degree: degree as u32,
            alphas,
            betas,
            sigmas,
        })
    }

    /// The representation where every generator acts trivially on `degree`
    /// points.
    pub fn trivial(base: Surface, degree: u32) -> Self {
        let id = Permutation::identity(degree as usize);
        Self {
            base,
            degree,
            alphas: vec![id.clone(); base.genus as usize],
            betas: vec![id.clone(); base.genus as usize],
            sigmas: vec![id; base.boundary_count as usize],
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Permutation> {
        self.alphas.iter().chain(&self.betas).chain(&self.sigmas)
    }

    /// `∏[αᵢ,βᵢ]·σ₁⋯σ_b`.
    pub fn relator_image(&self) -> Permutation {
        let mut product = Permutation::identity(self.degree as usize);
        for (a, b) in self.alphas.iter().zip(&self.betas) {
            product = product.then(&Permutation::commutator(a, b));
        }
        for s in &self.sigmas {
            product = product.then(s);
        }
        product
    }

    pub fn satisfies_relator(&self) -> bool {
        self.relator_image().is_identity()
    }

    pub fn boundary_product(&self) -> Permutation {
        self.sigmas
            .iter()
            .fold(Permutation::identity(self.degree as usize), |acc, s| {
                acc.then(s)
            })
    }

    pub fn is_transitive(&self) -> bool {
        orbits(self.degree as usize, self.generators()).len() == 1
    }

    fn generator(&self, generator: Generator) -> Option<&Permutation> {
        match generator {
            Generator::A(i) => i.checked_sub(1).and_then(|i| self.alphas.get(i)),
            Generator::B(i) => i.checked_sub(1).and_then(|i| self.betas.get(i)),
            Generator::C(i) => i.checked_sub(1).and_then(|i| self.sigmas.get(i)),
        }
    }

    /// Evaluates a word in the generators and their inverses.
    pub fn evaluate(&self, word: &Word) -> Result<Permutation, CoverError> {
        let mut product = Permutation::identity(self.degree as usize);
        for letter in &word.0 {
            let image = self
                .generator(letter.generator)
                .ok_or_else(|| CoverError::UnknownGenerator(letter.to_string()))?;
            product = if letter.inverse {
                product.then(&image.inverse())
            } else {
                product.then(image)
            };
        }
        Ok(product)
    }
}

#[derive(Serialize, Deserialize)]
struct RepRepr {
    base: Surface,
    degree: u32,
    generators: GeneratorsRepr,
}

#[derive(Serialize, Deserialize)]
struct GeneratorsRepr {
    a: Vec<Vec<u32>>,
    b: Vec<Vec<u32>>,
    c: Vec<Vec<u32>>,
}

impl TryFrom<RepRepr> for SurfaceCoverRep {
    type Error = CoverError;

    fn try_from(repr: RepRepr) -> Result<Self, Self::Error> {
        let convert = |list: &[Vec<u32>]| -> Result<Vec<Permutation>, CoverError> {
            list.iter()
                .map(|images| Ok(Permutation::from_one_based(images)?))
                .collect()
        };
        let rep = SurfaceCoverRep::new(
            repr.base,
            convert(&repr.generators.a)?,
            convert(&repr.generators.b)?,
            convert(&repr.generators.c)?,
        )?;
        let has_generators = rep.generators().next().is_some();
        if has_generators && rep.degree != repr.degree || repr.degree == 0 {
            return Err(CoverError::MalformedRep(format!(
                "declared degree {} does not match generator degree {}",
                repr.degree, rep.degree
            )));
        }
        Ok(SurfaceCoverRep {
            degree: repr.degree,
            ..rep
        })
    }
}

impl From<SurfaceCoverRep> for RepRepr {
    fn from(rep: SurfaceCoverRep) -> Self {
        let convert = |list: &[Permutation]| list.iter().map(Permutation::to_one_based).collect();
        RepRepr {
            base: rep.base,
            degree: rep.degree,
            generators: GeneratorsRepr {
                a: convert(&rep.alphas),
                b: convert(&rep.betas),
                c: convert(&rep.sigmas),
            },
        }
    }
}

/// A generator of the fixed presentation, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    A(usize),
    B(usize),
    C(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, index) = match self.generator {
            Generator::A(i) => ('a', i),
            Generator::B(i) => ('b', i),
            Generator::C(i) => ('c', i),
        };
        let name = if self.inverse {
            name.to_ascii_uppercase()
        } else {
            name
        };
        write!(f, "{name}{index}")
    }
}

/// A word over `a1, b1, …, c1, …`; uppercase letters are inverses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letter(generator: Generator) -> Self {
        Word(vec![Letter {
            generator,
            inverse: false,
        }])
    }
}

impl FromStr for Word {
    type Err = CoverError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() || matches!(c, ',' | '.' | '*') {
                continue;
            }
            let make: fn(usize) -> Generator = match c.to_ascii_lowercase() {
                'a' => Generator::A,
                'b' => Generator::B,
                'c' => Generator::C,
                _ => {
                    return Err(CoverError::MalformedWord(format!(
                        "unexpected `{c}` in `{text}`"
                    )))
                }
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(d);
                chars.next();
            }
            let index = digits.parse::<usize>().map_err(|_| {
                CoverError::MalformedWord(format!("`{c}` needs an index in `{text}`"))
            })?;
            letters.push(Letter {
                generator: make(index),
                inverse: c.is_ascii_uppercase(),
            });
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// One connected component of a (possibly disconnected) cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentAnalysis {
    pub degree: u32,
    /// Cycle lengths of `σⱼ` on this component, one entry per base boundary.
    pub boundary_cycles: Vec<CycleType>,
    pub genus: u64,
}

impl ComponentAnalysis {
    pub fn boundary_count(&self) -> usize {
        self.boundary_cycles.iter().map(CycleType::num_parts).sum()
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self.genus, self.boundary_count() as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverAnalysis {
    pub components: Vec<ComponentAnalysis>,
}

impl CoverAnalysis {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Orbits of the group generated by `generators`, each sorted, ordered by
/// smallest point.
fn orbits<'a>(degree: usize, generators: impl Iterator<Item = &'a Permutation>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for x in 0..degree {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..degree {
        let root = find(&mut parent, x);
        groups.entry(root).or_default().push(x);
    }
    groups.into_values().collect()
}

pub fn analyze_rep(rep: &SurfaceCoverRep) -> Result<CoverAnalysis, CoverError> {
    if !rep.satisfies_relator() {
        return Err(CoverError::RelatorViolation);
    }
    Ok(analyze_unchecked(rep))
}

fn analyze_unchecked(rep: &SurfaceCoverRep) -> CoverAnalysis {
    let degree = rep.degree as usize;
    let base_chi = rep.base.euler_characteristic();
    let sigma_cycles: Vec<Vec<Vec<usize>>> = rep.sigmas.iter().map(Permutation::cycles).collect();
    let mut component_of = vec![0usize; degree];
    let orbit_list = orbits(degree, rep.generators());
    for (index, orbit) in orbit_list.iter().enumerate() {
        for &x in orbit {
            component_of[x] = index;
        }
    }
    let components = orbit_list
        .iter()
        .enumerate()
        .map(|(index, orbit)| {
            let boundary_cycles: Vec<CycleType> = sigma_cycles
                .iter()
                .map(|cycles| {
                    let parts = cycles
                        .iter()
                        .filter(|c| component_of[c[0]] == index)
                        .map(|c| c.len() as u32)
                        .collect();
                    CycleType::new(parts).expect("every orbit meets every σ")
                })
                .collect();
            let boundary: i64 = boundary_cycles.iter().map(|t| t.num_parts() as i64).sum();
            let twice_genus = 2 - boundary - orbit.len() as i64 * base_chi;
            debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
            ComponentAnalysis {
                degree: orbit.len() as u32,
                boundary_cycles,
                genus: (twice_genus / 2) as u64,
            }
        })
        .collect();
    CoverAnalysis { components }
}

/// Cycle lengths of the evaluated word, in decreasing order: one entry per
/// preimage component of the closed curve, giving its covering degree.
pub fn lift_curve(rep: &SurfaceCoverRep, word: &Word) -> Result<Vec<u32>, CoverError> {
    Ok(rep.evaluate(word)?.cycle_type().parts().to_vec())
}

/// Seeded search for a connected realization of `spec` with the default
/// sample budget.
pub fn realize_surface_cover(
    base: &Surface,
    spec: &CoverSpec,
    seed: u64,
) -> Result<SurfaceCoverRep, CoverError> {
    realize_surface_cover_with_budget(base, spec, seed, DEFAULT_SAMPLE_BUDGET)
}

pub fn realize_surface_cover_with_budget(
    base: &Surface,
    spec: &CoverSpec,
    seed: u64,
    samples: u64,
) -> Result<SurfaceCoverRep, CoverError> {
    if base.boundary_count == 0 {
        return Err(CoverError::NoBoundary);
    }
    if !neumann_feasible(base, spec)? {
        return Err(CoverError::Infeasible {
            boundary_components: spec.total_boundary_components(),
            degree_times_chi: spec.degree as i64 * base.euler_characteristic(),
        });
    }
    if spec.degree == 1 {
        return Ok(SurfaceCoverRep::trivial(*base, 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        if let Some(rep) = sample_once(base, spec, &mut rng) {
            return Ok(rep);
        }
    }
    if spec.degree <= EXHAUSTIVE_FALLBACK_MAX_DEGREE {
        if let Some(rep) = exhaustive_search(base, spec, samples) {
            return Ok(rep);
        }
    }
    Err(CoverError::SearchExhausted { samples })
}

/// Solves `α₁` from `[α₁,β₁]·rest = id`, i.e. `β₁` conjugated by `α₁⁻¹`
/// equals `rest⁻¹·β₁`.
fn solve_first_alpha(rest: &Permutation, beta: &Permutation) -> Permutation {
    rest.inverse().then(beta)
}

fn sample_once<R: Rng>(base: &Surface, spec: &CoverSpec, rng: &mut R) -> Option<SurfaceCoverRep> {
    let degree = spec.degree as usize;
    let genus = base.genus as usize;
    let sigmas: Vec<Permutation> = spec
        .boundary_partitions
        .iter()
        .map(|t| t.random_representative(rng))
        .collect();
    let mut alphas = vec![Permutation::identity(degree)];
    let mut betas = vec![Permutation::random(degree, rng)];
    let mut rest = Permutation::identity(degree);
    for _ in 1..genus {
        let a = Permutation::random(degree, rng);
        let b = Permutation::random(degree, rng);
        rest = rest.then(&Permutation::commutator(&a, &b));
        alphas.push(a);
        betas.push(b);
    }
    for s in &sigmas {
        rest = rest.then(s);
    }
    let target = solve_first_alpha(&rest, &betas[0]);
    let pi = betas[0].random_conjugator(&target, rng)?;
    alphas[0] = pi.inverse();
    let rep = SurfaceCoverRep {
        base: *base,
        degree: spec.degree,
        alphas,
        betas,
        sigmas,
    };
    debug_assert!(rep.satisfies_relator());
    rep.is_transitive().then_some(rep)
}

/// Deterministic search with `σ₁` fixed to its canonical representative
/// (every solution is simultaneously conjugate to one of this form). Runs
/// only when the number of free tuples fits `cap`.
fn exhaustive_search(base: &Surface, spec: &CoverSpec, cap: u64) -> Option<SurfaceCoverRep> {
    let degree = spec.degree as usize;
    let genus = base.genus as usize;
    let all = Permutation::all(degree);
    let classes: Vec<Vec<Permutation>> = spec.boundary_partitions[1..]
        .iter()
        .map(|t| {
            all.iter()
                .filter(|p| &p.cycle_type() == t)
                .cloned()
                .collect()
        })
        .collect();
    // β₁, then (αᵢ, βᵢ) for i ≥ 2, then σ₂..σ_b
    let mut ranges: Vec<&[Permutation]> = vec![&all];
    for _ in 1..genus {
        ranges.push(&all);
        ranges.push(&all);
    }
    ranges.extend(classes.iter().map(Vec::as_slice));
    let size = ranges
        .iter()
        .try_fold(1u64, |acc, r| acc.checked_mul(r.len() as u64))?;
    if size > cap {
        return None;
    }
    let sigma_first = spec.boundary_partitions[0].canonical_representative();
    let mut found = None;
    for_each_tuple(&ranges, |tuple| {
        let beta = tuple[0];
        let mut alphas = vec![Permutation::identity(degree)];
        let mut betas = vec![beta.clone()];
        let mut rest = Permutation::identity(degree);
        for i in 1..genus {
            let (a, b) = (tuple[2 * i - 1], tuple[2 * i]);
            rest = rest.then(&Permutation::commutator(a, b));
            alphas.push(a.clone());
            betas.push(b.clone());
        }
        let mut sigmas = vec![sigma_first.clone()];
        sigmas.extend(tuple[2 * genus - 1..].iter().map(|&s| s.clone()));
        for s in &sigmas {
            rest = rest.then(s);
        }
        let target = solve_first_alpha(&rest, beta);
        for pi in beta.all_conjugators(&target) {
            alphas[0] = pi.inverse();
            let rep = SurfaceCoverRep {
                base: *base,
                degree: spec.degree,
                alphas: alphas.clone(),
                betas: betas.clone(),
                sigmas: sigmas.clone(),
            };
            if rep.is_transitive() {
                found = Some(rep);
                return false;
            }
        }
        true
    });
    found
}

/// Odometer over the cartesian product of `ranges`, last range fastest.
/// Stops when `visit` returns `false`.
fn for_each_tuple<'a, T>(ranges: &[&'a [T]], mut visit: impl FnMut(&[&'a T]) -> bool) {
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let mut index = vec![0usize; ranges.len()];
    let mut tuple: Vec<&T> = ranges.iter().map(|r| &r[0]).collect();
    loop {
        if !visit(&tuple) {
            return;
        }
        let mut slot = ranges.len();
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            index[slot] += 1;
            if index[slot] < ranges[slot].len() {
                tuple[slot] = &ranges[slot][index[slot]];
                break;
            }
            index[slot] = 0;
            tuple[slot] = &ranges[slot][0];
        }
    }
}

fn factorial(n: u32) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Number of free generators `a₁..b_g, c₁..c_{b−1}`.
pub fn free_rank(base: &Surface) -> u64 {
    2 * base.genus + base.boundary_count as u64 - 1
}

/// Number of tuples [`for_each_cover`] visits, or `None` on overflow.
pub fn enumeration_size(base: &Surface, degree: u32) -> Option<u64> {
    let rank = u32::try_from(free_rank(base)).ok()?;
    factorial(degree)?.checked_pow(rank)
}

/// Visits every tuple `(α₁,β₁,…,α_g,β_g,σ₁,…,σ_{b−1})` in `S_d`, with `σ_b`
/// solved from the relator, together with its analysis.
pub fn for_each_cover(
    base: &Surface,
    degree: u32,
    cap: u64,
    mut visit: impl FnMut(&SurfaceCoverRep, &CoverAnalysis),
) -> Result<u64, CoverError> {
    if base.boundary_count == 0 {
        return Err(CoverError::NoBoundary);
    }
    if degree == 0 {
        return Err(CoverError::SpecMismatch("degree must be positive".into()));
    }
    let size = enumeration_size(base, degree);
    match size {
        Some(n) if n <= cap => {}
        _ => {
            let required = size.map_or_else(
                || format!("({degree}!)^{}", free_rank(base)),
                |n| n.to_string(),
            );
            return Err(CoverError::BudgetExceeded { required, cap });
        }
    }
    let d = degree as usize;
    let genus = base.genus as usize;
    let all = Permutation::all(d);
    let ranges: Vec<&[Permutation]> = (0..free_rank(base)).map(|_| all.as_slice()).collect();
    let mut visited = 0u64;
    for_each_tuple(&ranges, |tuple| {
        let alphas: Vec<Permutation> = (0..genus).map(|i| tuple[2 * i].clone()).collect();
        let betas: Vec<Permutation> = (0..genus).map(|i| tuple[2 * i + 1].clone()).collect();
        let mut sigmas: Vec<Permutation> = tuple[2 * genus..].iter().map(|&p| p.clone()).collect();
        let mut partial = Permutation::identity(d);
        for (a, b) in alphas.iter().zip(&betas) {
            partial = partial.then(&Permutation::commutator(a, b));
        }
        for s in &sigmas {
            partial = partial.then(s);
        }
        sigmas.push(partial.inverse());
        let rep = SurfaceCoverRep {
            base: *base,
            degree,
            alphas,
            betas,
            sigmas,
        };
        let analysis = analyze_unchecked(&rep);
        visit(&rep, &analysis);
        visited += 1;
        true
    });
    Ok(visited)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedCover {
    pub rep: SurfaceCoverRep,
    pub analysis: CoverAnalysis,
    pub connected: bool,
}

/// Materialized form of [`for_each_cover`].
pub fn enumerate_covers(
    base: &Surface,
    degree: u32,
    cap: u64,
) -> Result<Vec<EnumeratedCover>, CoverError> {
    let mut out = Vec::new();
    for_each_cover(base, degree, cap, |rep, analysis| {
        out.push(EnumeratedCover {
            rep: rep.clone(),
            analysis: analysis.clone(),
            connected: analysis.is_connected(),
        });
    })?;
    Ok(out)
}

/// One well-formed cover spec, compared against the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub boundary_partitions: Vec<CycleType>,
    pub parity_feasible: bool,
    pub connected_realizations: u64,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.parity_feasible == (self.connected_realizations > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTable {
    pub base: Surface,
    pub degree: u32,
    pub tuples: u64,
    pub connected_tuples: u64,
    pub rows: Vec<OracleRow>,
}

impl OracleTable {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(OracleRow::agrees)
    }
}

/// Enumerates every cover of degree `degree` and tabulates, for each
/// well-formed spec, the parity verdict against the number of connected
/// realizations found.
pub fn oracle_table(base: &Surface, degree: u32, cap: u64) -> Result<OracleTable, CoverError> {
    if base.genus == 0 {
        return Err(CoverError::InvalidGenus);
    }
    let mut counts: BTreeMap<Vec<CycleType>, u64> = BTreeMap::new();
    let mut connected_tuples = 0;
    let tuples = for_each_cover(base, degree, cap, |_, analysis| {
        if let [component] = analysis.components.as_slice() {
            connected_tuples += 1;
            *counts.entry(component.boundary_cycles.clone()).or_default() += 1;
        }
    })?;
    let partitions = CycleType::all_of_degree(degree);
    let mut specs: Vec<Vec<CycleType>> = vec![Vec::new()];
    for _ in 0..base.boundary_count {
        specs = specs
            .into_iter()
            .flat_map(|prefix| {
                partitions.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    let known: BTreeSet<&Vec<CycleType>> = counts.keys().collect();
    debug_assert!(known.iter().all(|k| specs.contains(k)));
    let rows = specs
        .into_iter()
        .map(|boundary_partitions| {
            let spec = CoverSpec::new(degree, boundary_partitions);
            let parity_feasible = neumann_feasible(base, &spec)?;
            Ok(OracleRow {
                connected_realizations: counts.get(&spec.boundary_partitions).copied().unwrap_or(0),
                boundary_partitions: spec.boundary_partitions,
                parity_feasible,
            })
        })
        .collect::<Result<Vec<_>, CoverError>>()?;
    Ok(OracleTable {
        base: *base,
        degree,
        tuples,
        connected_tuples,
        rows,
    })
}
