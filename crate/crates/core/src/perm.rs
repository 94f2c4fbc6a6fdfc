//! Permutations of `{0, .., d-1}` with left-to-right composition.
//!
//! `p.then(&q)` applies `p` first and `q` second, so words in generators are
//! evaluated by folding `then` from left to right.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &image in &images {
            let slot = seen
                .get_mut(image as usize)
                .ok_or(PermError::NotABijection)?;
            if std::mem::replace(slot, true) {
                return Err(PermError::NotABijection);
            }
        }
        Ok(Self { images })
    }

    pub fn from_one_based(images: &[u32]) -> Result<Self, PermError> {
        let shifted = images
            .iter()
            .map(|&i| i.checked_sub(1).ok_or(PermError::NotABijection))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(shifted)
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.then(b).then(&a.inverse()).then(&b.inverse())
    }

    /// `π⁻¹·self·π`: relabels every point `x` as `π(x)`.
    pub fn conjugate_by(&self, pi: &Self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[pi.images[x] as usize] = pi.images[y as usize];
        }
        Self { images }
    }

    /// Cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point);
                point = self.apply(point);
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images.shuffle(rng);
        Self { images }
    }

    /// A uniformly random `π` with `self.conjugate_by(π) == target`, if the two
    /// permutations are conjugate.
    pub fn random_conjugator<R: Rng + ?Sized>(&self, target: &Self, rng: &mut R) -> Option<Self> {
        let mut from = self.cycles();
        let mut to = target.cycles();
        if from.len() != to.len() {
            return None;
        }
        from.sort_by_key(|c| c.len());
        to.sort_by_key(|c| c.len());
        if from.iter().zip(&to).any(|(a, b)| a.len() != b.len()) {
            return None;
        }
        // Shuffle cycles of equal length among themselves.
        let mut start = 0;
        while start < to.len() {
            let len = to[start].len();
            let end = start + to[start..].iter().take_while(|c| c.len() == len).count();
            to[start..end].shuffle(rng);
            start = end;
        }
        let mut images = vec![0u32; self.degree()];
        for (a, b) in from.iter().zip(&to) {
            let shift = rng.gen_range(0..a.len());
            for (k, &x) in a.iter().enumerate() {
                images[x] = b[(k + shift) % b.len()] as u32;
            }
        }
        Some(Self { images })
    }

    /// Every `π` with `self.conjugate_by(π) == target`, in a fixed order.
    pub fn all_conjugators(&self, target: &Self) -> Vec<Self> {
        let mut from = self.cycles();
        let to = {
            let mut t = target.cycles();
            t.sort_by_key(|c| c.len());
            t
        };
        from.sort_by_key(|c| c.len());
        if from.len() != to.len() || from.iter().zip(&to).any(|(a, b)| a.len() != b.len()) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut images = vec![0u32; self.degree()];
        let mut used = vec![false; to.len()];
        conjugators_rec(&from, &to, 0, &mut used, &mut images, &mut out);
        out
    }

    /// All `d!` permutations in lexicographic order of their image arrays.
    pub fn all(degree: usize) -> Vec<Self> {
        let mut current: Vec<u32> = (0..degree as u32).collect();
        let mut out = vec![Self {
            images: current.clone(),
        }];
        while next_lexicographic(&mut current) {
            out.push(Self {
                images: current.clone(),
            });
        }
        out
    }
}

fn conjugators_rec(
    from: &[Vec<usize>],
    to: &[Vec<usize>],
    index: usize,
    used: &mut [bool],
    images: &mut [u32],
    out: &mut Vec<Permutation>,
) {
    if index == from.len() {
        out.push(Permutation {
            images: images.to_vec(),
        });
        return;
    }
    let source = &from[index];
    for (t, target) in to.iter().enumerate() {
        if used[t] || target.len() != source.len() {
            continue;
        }
        used[t] = true;
        for shift in 0..source.len() {
            for (k, &x) in source.iter().enumerate() {
                images[x] = target[(k + shift) % target.len()] as u32;
            }
            conjugators_rec(from, to, index + 1, used, images, out);
        }
        used[t] = false;
    }
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let points: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", points.join(" "))?;
        }
        Ok(())
    }
}

/// A partition of the degree, stored with parts in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    /// Sorts the parts; zero parts are rejected by [`CycleType::new`].
    fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn new(parts: Vec<u32>) -> Result<Self, PermError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(PermError::InvalidPartition(parts));
        }
        Ok(Self::from_parts(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// (−1)^(d − number of parts).
    pub fn sign(&self) -> i8 {
        if (self.degree() - self.num_parts() as u64).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Parts laid out consecutively in decreasing order starting at point 0.
    pub fn canonical_representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.degree() as usize);
        let mut start = 0u32;
        for &part in &self.parts {
            for k in 0..part {
                images.push(start + (k + 1) % part);
            }
            start += part;
        }
        Permutation { images }
    }

    pub fn random_representative<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let pi = Permutation::random(self.degree() as usize, rng);
        self.canonical_representative().conjugate_by(&pi)
    }

    /// All partitions of `degree`, in reverse lexicographic order.
    pub fn all_of_degree(degree: u32) -> Vec<CycleType> {
        fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<CycleType>) {
            if remaining == 0 {
                out.push(CycleType {
                    parts: prefix.clone(),
                });
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(degree, degree, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for CycleType {
    type Error = PermError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<CycleType> for Vec<u32> {
    fn from(value: CycleType) -> Self {
        value.parts
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = perm(&[1, 0, 2]);
        let q = perm(&[0, 2, 1]);
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
        assert_eq!(q.then(&p).apply(0), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert_eq!(Permutation::from_one_based(&[2, 1]).unwrap(), perm(&[1, 0]));
    }

    #[test]
    fn canonical_representative_layout() {
        let t = CycleType::new(vec![1, 3, 2]).unwrap();
        assert_eq!(t.parts(), &[3, 2, 1]);
        let rep = t.canonical_representative();
        assert_eq!(rep.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(rep.cycle_type(), t);
        assert_eq!(rep.to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn partitions_of_small_degrees() {
        let counts: Vec<usize> = (1..=8).map(|d| CycleType::all_of_degree(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert!(CycleType::new(vec![]).is_err());
        assert!(CycleType::new(vec![2, 0]).is_err());
    }

    #[test]
    fn all_permutations_are_lexicographic() {
        let all = Permutation::all(3);
        let images: Vec<&[u32]> = all.iter().map(|p| p.images()).collect();
        assert_eq!(
            images,
            vec![
                &[0, 1, 2][..],
                &[0, 2, 1],
                &[1, 0, 2],
                &[1, 2, 0],
                &[2, 0, 1],
                &[2, 1, 0]
            ]
        );
        assert_eq!(Permutation::all(5).len(), 120);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    #[test]
    fn conjugators_enumerate_the_centralizer_coset() {
        let a = perm(&[1, 2, 0, 4, 3]);
        let b = a.conjugate_by(&perm(&[4, 3, 2, 1, 0]));
        let all = a.all_conjugators(&b);
        // centralizer of a (3)(2)-cycle has order 3·2
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|pi| a.conjugate_by(pi) == b));
        assert!(a.all_conjugators(&Permutation::identity(5)).is_empty());
    }

    proptest! {
        #[test]
        fn group_laws(seed in any::<u64>(), degree in 1usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Permutation::random(degree, &mut rng);
            let q = Permutation::random(degree, &mut rng);
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert_eq!(p.then(&q).inverse(), q.inverse().then(&p.inverse()));
            prop_assert_eq!(Permutation::commutator(&p, &q).sign(), 1);
            prop_assert_eq!(p.then(&q).sign(), p.sign() * q.sign());
            prop_assert_eq!(p.sign(), p.cycle_type().sign());
            prop_assert_eq!(p.cycle_type().degree(), degree as u64);
            prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
            prop_assert_eq!(p.conjugate_by(&q), q.inverse().then(&p).then(&q));
        }

        #[test]
        fn random_conjugator_solves_conjugacy(seed in any::<u64>(), degree in 1usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Permutation::random(degree, &mut rng);
            let target = p.conjugate_by(&Permutation::random(degree, &mut rng));
            let pi = p.random_conjugator(&target, &mut rng).unwrap();
            prop_assert_eq!(p.conjugate_by(&pi), target);
        }

        #[test]
        fn json_images_round_trip(seed in any::<u64>(), degree in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Permutation::random(degree, &mut rng);
            prop_assert_eq!(Permutation::from_one_based(&p.to_one_based()).unwrap(), p);
        }
    }
}
