//! Weak 3-compositions of a degree, the counter-lexicographic and blocked
//! orderings on them, and canonical index sets selecting principal submatrices.
//!
//! The blocked order sorts by zero count first (vertices, then edge interiors,
//! then interior points), then by the sign pattern, then counter-lexicographically.
//! Sorting an index set this way makes every collocation submatrix block lower
//! triangular, which the determinant and enumeration engines rely on.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;

use crate::error::{Error, Result};

/// A weak 3-composition `(i, j, k)` of some degree `d = i + j + k`.
///
/// Indexes both a Bernstein basis polynomial and a domain point of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Composition {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Composition { i, j, k }
    }

    /// Total degree `i + j + k`.
    pub fn total(&self) -> u32 {
        self.i + self.j + self.k
    }

    pub fn parts(&self) -> [u32; 3] {
        [self.i, self.j, self.k]
    }

    /// Number of zero components; in `{0, 1, 2}` for degree >= 1.
    pub fn zero_count(&self) -> u8 {
        self.parts().iter().filter(|&&p| p == 0).count() as u8
    }

    /// Componentwise sign pattern as a 0/1 triple.
    pub fn sign_pattern(&self) -> [u32; 3] {
        [
            (self.i > 0) as u32,
            (self.j > 0) as u32,
            (self.k > 0) as u32,
        ]
    }

    /// Applies a coordinate permutation `perm`, where `perm[t]` names which
    /// original coordinate lands in slot `t`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let p = self.parts();
        Composition::new(p[perm[0]], p[perm[1]], p[perm[2]])
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.j, self.k)
    }
}

/// Counter-lexicographic comparison: the first differing coordinate, scanning
/// `i` then `j` then `k`, decides; the larger entry wins.
pub fn cmp_clex(a: &Composition, b: &Composition) -> CmpOrdering {
    a.parts().cmp(&b.parts())
}

fn cmp_clex_triples(a: &[u32; 3], b: &[u32; 3]) -> CmpOrdering {
    a.cmp(b)
}

/// The blocked linear order. `a` ranks above `b` when
/// 1. `a` has more zero components, or
/// 2. same zero count and `sign(a)` is counter-lexicographically above `sign(b)`, or
/// 3. same sign pattern and `a` is counter-lexicographically above `b`.
///
/// Returns `Greater` when `a` ranks above `b`. Errors when the degrees differ.
pub fn cmp_blocked(a: &Composition, b: &Composition) -> Result<CmpOrdering> {
    if a.total() != b.total() {
        return Err(Error::InvalidArgument(format!(
            "degree mismatch: |{a}| = {} but |{b}| = {}",
            a.total(),
            b.total()
        )));
    }
    Ok(cmp_blocked_unchecked(a, b))
}

pub(crate) fn cmp_blocked_unchecked(a: &Composition, b: &Composition) -> CmpOrdering {
    a.zero_count()
        .cmp(&b.zero_count())
        .then_with(|| cmp_clex_triples(&a.sign_pattern(), &b.sign_pattern()))
        .then_with(|| cmp_clex(a, b))
}

/// All weak 3-compositions of `d`, counter-lexicographically descending.
pub fn compositions(d: u32) -> Result<Vec<Composition>> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Composition::new(i, j, d - i - j));
        }
    }
    Ok(out)
}

/// Compositions of `d` with exactly `z` zero components.
pub fn compositions_with_zeros(d: u32, z: u8) -> Result<Vec<Composition>> {
    Ok(compositions(d)?
        .into_iter()
        .filter(|c| c.zero_count() == z)
        .collect())
}

/// A domain point of the triangle: the barycentric point `c / d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainPoint {
    pub numerator: Composition,
    pub degree: u32,
}

impl DomainPoint {
    pub fn new(numerator: Composition, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if numerator.total() != degree {
            return Err(Error::InvalidArgument(format!(
                "composition {numerator} does not sum to degree {degree}"
            )));
        }
        Ok(DomainPoint { numerator, degree })
    }

    /// True when at least one barycentric coordinate vanishes.
    pub fn is_boundary(&self) -> bool {
        self.numerator.zero_count() >= 1
    }
}

/// The three edges of the reference triangle, named by their endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// Third coordinate zero.
    Uv,
    /// Second coordinate zero.
    Uw,
    /// First coordinate zero.
    Vw,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Uv, Edge::Uw, Edge::Vw];

    /// Index of the coordinate that vanishes on this edge.
    pub fn zero_axis(&self) -> usize {
        match self {
            Edge::Uv => 2,
            Edge::Uw => 1,
            Edge::Vw => 0,
        }
    }

    /// Coordinate permutation sending this edge's members onto the `Uv` form
    /// `(a, b, 0)` while preserving the counter-lexicographic order.
    pub fn to_uv_permutation(&self) -> [usize; 3] {
        match self {
            Edge::Uv => [0, 1, 2],
            Edge::Uw => [0, 2, 1],
            Edge::Vw => [1, 2, 0],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Edge::Uv => "uv",
            Edge::Uw => "uw",
            Edge::Vw => "vw",
        }
    }
}

/// An ordered, duplicate-free set of compositions of a common degree.
///
/// Construction canonicalizes: members are deduplicated and sorted blocked-descending.
/// Determinants of the selected principal submatrices do not depend on the
/// ordering, and the canonical order makes the block structure contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    degree: u32,
    members: Vec<Composition>,
}

impl GammaSet {
    /// Builds a canonical set. Inputs may repeat and arrive in any order;
    /// the degree of every member must equal `degree`.
    pub fn new(degree: u32, members: Vec<Composition>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        for m in &members {
            if m.total() != degree {
                return Err(Error::InvalidArgument(format!(
                    "member {m} does not sum to degree {degree}"
                )));
            }
        }
        let mut members = members;
        members.sort_by(|a, b| cmp_blocked_unchecked(b, a));
        members.dedup();
        Ok(GammaSet { degree, members })
    }

    /// The full index set of degree `d`, blocked-descending.
    pub fn full(d: u32) -> Result<Self> {
        GammaSet::new(d, compositions(d)?)
    }

    /// The interior points (no zero component). Empty for d < 3.
    pub fn interior(d: u32) -> Result<Self> {
        GammaSet::new(d, compositions_with_zeros(d, 0)?)
    }

    /// The boundary points (at least one zero component).
    pub fn boundary(d: u32) -> Result<Self> {
        let mut v = compositions_with_zeros(d, 2)?;
        v.extend(compositions_with_zeros(d, 1)?);
        GammaSet::new(d, v)
    }

    /// The three vertex compositions.
    pub fn vertices(d: u32) -> Result<Self> {
        GammaSet::new(d, compositions_with_zeros(d, 2)?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn members(&self) -> &[Composition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &Composition) -> bool {
        self.members.contains(c)
    }

    /// Subset selected by a bitmask over the canonical member order.
    pub fn subset(&self, mask: u64) -> Self {
        debug_assert!(self.len() <= 64);
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, c)| *c)
            .collect();
        GammaSet {
            degree: self.degree,
            members,
        }
    }

    /// Members with the named coordinate equal to `value`.
    pub fn filter_axis(&self, axis: usize, value: u32) -> Self {
        let members = self
            .members
            .iter()
            .filter(|c| c.parts()[axis] == value)
            .copied()
            .collect();
        GammaSet {
            degree: self.degree,
            members,
        }
    }

    /// Union of two sets over the same degree.
    pub fn union(&self, other: &GammaSet) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!(
                "degree mismatch in union: {} vs {}",
                self.degree, other.degree
            )));
        }
        let mut v = self.members.clone();
        v.extend_from_slice(&other.members);
        GammaSet::new(self.degree, v)
    }

    /// Semicolon-separated triple format, e.g. `3,1,0;2,2,0;1,3,0`.
    pub fn to_text(&self) -> String {
        self.members
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses the semicolon-separated triple format.
    pub fn parse(degree: u32, text: &str) -> Result<Self> {
        let mut members = Vec::new();
        for piece in text.split(';') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let nums: Vec<&str> = piece.split(',').map(str::trim).collect();
            if nums.len() != 3 {
                return Err(Error::Parse {
                    token: piece.to_string(),
                    reason: "expected three comma-separated integers".into(),
                });
            }
            let mut parts = [0u32; 3];
            for (slot, raw) in parts.iter_mut().zip(&nums) {
                *slot = raw.parse().map_err(|_| Error::Parse {
                    token: (*raw).to_string(),
                    reason: "not a nonnegative integer".into(),
                })?;
            }
            members.push(Composition::new(parts[0], parts[1], parts[2]));
        }
        GammaSet::new(degree, members)
    }

    /// JSON form: array of 3-element integer arrays.
    pub fn to_triples(&self) -> Vec<[u32; 3]> {
        self.members.iter().map(|c| c.parts()).collect()
    }
}

/// The interior compositions of an edge (both endpoint coordinates positive),
/// counter-lexicographically descending. There are `d - 1` of them.
pub fn edge_interior(d: u32, edge: Edge) -> Result<GammaSet> {
    if d < 2 {
        return Err(Error::EmptySet(format!(
            "edge {} has no interior points at degree {d}",
            edge.name()
        )));
    }
    let members: Vec<Composition> = (1..d)
        .rev()
        .map(|a| {
            let b = d - a;
            match edge {
                Edge::Uv => Composition::new(a, b, 0),
                Edge::Uw => Composition::new(a, 0, b),
                Edge::Vw => Composition::new(0, a, b),
            }
        })
        .collect();
    GammaSet::new(d, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(i: u32, j: u32, k: u32) -> Composition {
        Composition::new(i, j, k)
    }

    /// Independent generation oracle: collect every triple summing to d.
    fn brute_force_compositions(d: u32) -> Vec<Composition> {
        let mut v = Vec::new();
        for i in 0..=d {
            for j in 0..=d {
                for k in 0..=d {
                    if i + j + k == d {
                        v.push(c(i, j, k));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn compositions_degree_one() {
        assert_eq!(
            compositions(1).unwrap(),
            vec![c(1, 0, 0), c(0, 1, 0), c(0, 0, 1)]
        );
    }

    #[test]
    fn compositions_counts_match_binomial() {
        assert_eq!(compositions(4).unwrap().len(), 15);
        let all = compositions(10).unwrap();
        assert_eq!(all.len(), 66);
        assert_eq!(all.iter().filter(|&&x| x == c(2, 3, 5)).count(), 1);
        let mut brute = brute_force_compositions(10);
        let mut sorted = all.clone();
        sorted.sort();
        brute.sort();
        assert_eq!(sorted, brute);
    }

    #[test]
    fn compositions_rejects_degree_zero() {
        assert!(matches!(compositions(0), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn clex_order_matches_leading_sequence() {
        let all = compositions(5).unwrap();
        assert_eq!(all[0], c(5, 0, 0));
        assert_eq!(all[1], c(4, 1, 0));
        assert_eq!(all[2], c(4, 0, 1));
        assert_eq!(all[3], c(3, 2, 0));
        assert_eq!(*all.last().unwrap(), c(0, 0, 5));
        for w in all.windows(2) {
            assert_eq!(cmp_clex(&w[0], &w[1]), CmpOrdering::Greater);
        }
    }

    #[test]
    fn zero_counts() {
        assert_eq!(c(4, 0, 0).zero_count(), 2);
        assert_eq!(c(3, 1, 0).zero_count(), 1);
        assert_eq!(c(2, 1, 1).zero_count(), 0);
    }

    #[test]
    fn class_sizes_sum_to_total() {
        for d in 3..=10 {
            let v2 = compositions_with_zeros(d, 2).unwrap().len();
            let v1 = compositions_with_zeros(d, 1).unwrap().len();
            let v0 = compositions_with_zeros(d, 0).unwrap().len();
            assert_eq!(v2, 3);
            assert_eq!(v1 as u32, 3 * (d - 1));
            assert_eq!(v0 as u32, (d - 1) * (d - 2) / 2);
            assert_eq!((v0 + v1 + v2) as u32, (d + 1) * (d + 2) / 2);
        }
    }

    #[test]
    fn blocked_order_reproduces_table_layout_for_degree_four() {
        let expected = vec![
            c(4, 0, 0),
            c(0, 4, 0),
            c(0, 0, 4),
            c(3, 1, 0),
            c(2, 2, 0),
            c(1, 3, 0),
            c(3, 0, 1),
            c(2, 0, 2),
            c(1, 0, 3),
            c(0, 3, 1),
            c(0, 2, 2),
            c(0, 1, 3),
            c(2, 1, 1),
            c(1, 2, 1),
            c(1, 1, 2),
        ];
        assert_eq!(GammaSet::full(4).unwrap().members(), expected.as_slice());
    }

    #[test]
    fn blocked_comparisons() {
        assert_eq!(
            cmp_blocked(&c(2, 1, 1), &c(1, 2, 1)).unwrap(),
            CmpOrdering::Greater
        );
        assert_eq!(
            cmp_blocked(&c(2, 1, 1), &c(2, 1, 1)).unwrap(),
            CmpOrdering::Equal
        );
        assert!(cmp_blocked(&c(2, 1, 1), &c(1, 1, 1)).is_err());
    }

    #[test]
    fn blocked_order_groups_classes_contiguously() {
        for d in 3..=8 {
            let full = GammaSet::full(d).unwrap();
            let zero_counts: Vec<u8> = full.members().iter().map(|m| m.zero_count()).collect();
            let mut expected = zero_counts.clone();
            expected.sort_by(|a, b| b.cmp(a));
            assert_eq!(zero_counts, expected, "classes interleaved at degree {d}");
            // Edge runs are contiguous with length d-1 each.
            let edge_part: Vec<Composition> = full
                .members()
                .iter()
                .filter(|m| m.zero_count() == 1)
                .copied()
                .collect();
            for (t, chunk) in edge_part.chunks((d - 1) as usize).enumerate() {
                let sgn = chunk[0].sign_pattern();
                assert!(chunk.iter().all(|m| m.sign_pattern() == sgn), "run {t} mixed");
            }
        }
    }

    #[test]
    fn edge_interiors() {
        assert_eq!(
            edge_interior(4, Edge::Uv).unwrap().members(),
            &[c(3, 1, 0), c(2, 2, 0), c(1, 3, 0)]
        );
        assert_eq!(edge_interior(2, Edge::Vw).unwrap().members(), &[c(0, 1, 1)]);
        assert_eq!(edge_interior(5, Edge::Uw).unwrap().len(), 4);
        assert!(matches!(edge_interior(1, Edge::Uv), Err(Error::EmptySet(_))));
    }

    #[test]
    fn gamma_canonicalization_dedupes_and_sorts() {
        let g = GammaSet::new(4, vec![c(1, 3, 0), c(3, 1, 0), c(1, 3, 0), c(2, 2, 0)]).unwrap();
        assert_eq!(g.members(), &[c(3, 1, 0), c(2, 2, 0), c(1, 3, 0)]);
    }

    #[test]
    fn gamma_text_round_trip() {
        let g = GammaSet::parse(4, "3,1,0;2,2,0;1,3,0").unwrap();
        assert_eq!(g.to_text(), "3,1,0;2,2,0;1,3,0");
        assert!(GammaSet::parse(4, "3,1;2,2,0").is_err());
        assert!(GammaSet::parse(4, "3,1,x").is_err());
        assert!(GammaSet::parse(4, "3,1,1").is_err(), "degree mismatch");
    }

    #[test]
    fn domain_point_boundary_classification() {
        assert!(DomainPoint::new(c(3, 1, 0), 4).unwrap().is_boundary());
        assert!(!DomainPoint::new(c(2, 1, 1), 4).unwrap().is_boundary());
        assert!(DomainPoint::new(c(2, 1, 1), 5).is_err());
    }

    proptest! {
        #[test]
        fn blocked_order_is_total_and_antisymmetric(d in 1u32..=8) {
            let all = compositions(d).unwrap();
            for a in &all {
                for b in &all {
                    let ab = cmp_blocked(a, b).unwrap();
                    let ba = cmp_blocked(b, a).unwrap();
                    prop_assert_eq!(ab, ba.reverse());
                    prop_assert_eq!(ab == CmpOrdering::Equal, a == b);
                }
            }
        }
    }

    #[test]
    fn blocked_order_is_transitive_exhaustively() {
        // Exhaustive over I_d for small d; O(n^3) triples.
        for d in [3u32, 5, 7] {
            let all = compositions(d).unwrap();
            for a in &all {
                for b in &all {
                    for cc in &all {
                        let ab = cmp_blocked_unchecked(a, b);
                        let bc = cmp_blocked_unchecked(b, cc);
                        if ab == CmpOrdering::Greater && bc == CmpOrdering::Greater {
                            assert_eq!(cmp_blocked_unchecked(a, cc), CmpOrdering::Greater);
                        }
                    }
                }
            }
        }
    }
}
