//! Abstract simplicial complexes on at most 64 labeled vertices.
//!
//! Faces are bit masks over the vertex set, so subset tests, links and facet
//! scans are single-word operations. Construction normalizes the input to the
//! facet antichain and removes slack vertices (vertices in no facet); every
//! complex handed to downstream modules therefore covers its vertex set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A face: bit i set means vertex i is a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Face {
        let mut m = 0u64;
        for v in vs {
            m |= 1 << v;
        }
        Face(m)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.0;
        (0..64).filter(move |v| m >> v & 1 == 1)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_subset_of(&self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn cardinality(&self) -> usize {
        self.0.count_ones() as usize
    }
}

/// Verdict of the T-space test. The full simplex has a trivial face ideal, so
/// the defining separation condition does not apply to it; such inputs get
/// `NotApplicable` rather than a true/false answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TSpaceVerdict {
    TSpace,
    NotTSpace,
    NotApplicable,
}

/// What construction changed about the input: dropped redundant candidate
/// faces and removed slack vertices (recorded by their original labels).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub dropped_redundant: usize,
    pub removed_slack: Vec<String>,
}

/// A simplicial complex given by its facet antichain; no slack vertices.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
    labels: Vec<String>,
    report: ConstructionReport,
}

// Identity is the labeled facet antichain; construction history is ignored.
impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets && self.labels == other.labels
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.facets.hash(state);
        self.labels.hash(state);
    }
}

impl SimplicialComplex {
    /// Builds a complex from candidate faces over `n` labeled vertices.
    ///
    /// Candidates contained in other candidates are dropped, slack vertices
    /// are removed (re-indexing the survivors but keeping their labels), and
    /// facets are sorted canonically. An empty candidate list yields the void
    /// complex whose only face is the empty set.
    pub fn from_facets(n: usize, candidates: &[Face], labels: Option<Vec<String>>) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity(format!("{n} vertices exceeds the 64-vertex limit")));
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::Domain(format!(
                        "{} labels for {} vertices",
                        l.len(),
                        n
                    )));
                }
                l
            }
            None => (0..n).map(|i| format!("x{}", i + 1)).collect(),
        };
        let full = mask_full(n);
        for f in candidates {
            if f.0 & !full != 0 {
                return Err(Error::Domain("facet mentions a vertex outside 0..n".into()));
            }
        }

        // Antichain reduction: keep only maximal candidates.
        let distinct: BTreeSet<u64> = candidates.iter().map(|f| f.0).collect();
        let mut maximal: Vec<u64> = Vec::new();
        for &f in &distinct {
            if !distinct.iter().any(|&g| g != f && f & !g == 0) {
                maximal.push(f);
            }
        }
        let dropped_redundant = candidates.len() - maximal.len();

        // Slack removal: vertices in no facet are deleted and the rest are
        // re-indexed in order.
        let covered = maximal.iter().fold(0u64, |acc, f| acc | f);
        let mut removed_slack = Vec::new();
        let mut new_index = vec![usize::MAX; n];
        let mut kept_labels = Vec::new();
        for v in 0..n {
            if covered >> v & 1 == 1 {
                new_index[v] = kept_labels.len();
                kept_labels.push(labels[v].clone());
            } else {
                removed_slack.push(labels[v].clone());
            }
        }
        let remap = |m: u64| -> u64 {
            let mut out = 0u64;
            for v in 0..n {
                if m >> v & 1 == 1 {
                    out |= 1 << new_index[v];
                }
            }
            out
        };
        let mut facets: Vec<u64> = maximal.iter().map(|&m| remap(m)).collect();
        facets.sort_unstable();
        facets.dedup();
        if facets.is_empty() {
            // Void complex: its unique facet is the empty face.
            facets.push(0);
        }
        Ok(SimplicialComplex {
            n: kept_labels.len(),
            facets,
            labels: kept_labels,
            report: ConstructionReport {
                dropped_redundant,
                removed_slack,
            },
        })
    }

    /// The full simplex on `n` vertices (trivial face ideal).
    pub fn full_simplex(n: usize, labels: Option<Vec<String>>) -> Result<Self> {
        SimplicialComplex::from_facets(n, &[Face(mask_full(n))], labels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        self.facets.iter().map(|&m| Face(m))
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn report(&self) -> &ConstructionReport {
        &self.report
    }

    pub fn full_mask(&self) -> u64 {
        mask_full(self.n)
    }

    /// True when the face ideal is zero, i.e. the complex is the full simplex
    /// on its vertex set (the void complex included).
    pub fn is_full_simplex(&self) -> bool {
        self.facets == [mask_full(self.n)]
    }

    pub fn is_face(&self, f: Face) -> bool {
        self.facets.iter().any(|&h| f.0 & !h == 0)
    }

    /// Minimal primes of the face ideal as vertex masks: the facet
    /// complements, sorted and deduplicated. The full simplex yields the
    /// zero ideal's single minimal prime, the empty mask.
    pub fn minimal_primes_masks(&self) -> Vec<Face> {
        let full = self.full_mask();
        let mut primes: Vec<Face> = self.facets.iter().map(|&f| Face(full & !f)).collect();
        primes.sort();
        primes.dedup();
        primes
    }

    /// All faces, the empty face included.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        for &facet in &self.facets {
            // Enumerate subsets of each facet with the standard mask walk.
            let mut s = facet;
            loop {
                seen.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & facet;
            }
        }
        seen.into_iter().map(Face).collect()
    }

    /// f-vector indexed by cardinality: entry s counts faces with s vertices
    /// (entry 0 is always 1 for the empty face).
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.max_facet_cardinality() + 1];
        for face in self.faces() {
            f[face.cardinality()] += 1;
        }
        f
    }

    pub fn max_facet_cardinality(&self) -> usize {
        self.facets.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Vertex degrees when the complex is a graph (all facets of cardinality
    /// at most 2): degree of v = number of edges containing v.
    pub fn is_graph(&self) -> bool {
        self.max_facet_cardinality() <= 2
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.facets
            .iter()
            .filter(|&&m| m.count_ones() == 2 && m >> v & 1 == 1)
            .count()
    }

    /// The link of `f`: faces g disjoint from f with f ∪ g still a face,
    /// returned as a complex on the surviving outside vertices.
    pub fn link(&self, f: Face) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::Domain("link of a non-face".into()));
        }
        let outside: Vec<usize> = (0..self.n).filter(|v| !f.contains(*v)).collect();
        let position = |v: usize| outside.iter().position(|&u| u == v).unwrap();
        let candidates: Vec<Face> = self
            .facets
            .iter()
            .filter(|&&h| f.0 & !h == 0)
            .map(|&h| Face::from_vertices(Face(h & !f.0).vertices().map(position)))
            .collect();
        let labels = outside.iter().map(|&v| self.labels[v].clone()).collect();
        SimplicialComplex::from_facets(outside.len(), &candidates, Some(labels))
    }

    /// Whether some facet contains `f` but not all of `g` (separates f from
    /// g). Precondition: `f` is a face.
    pub fn separates(&self, f: Face, g: Face) -> bool {
        debug_assert!(self.is_face(f));
        self.facets
            .iter()
            .any(|&h| f.0 & !h == 0 && g.0 & !h != 0)
    }

    /// T-space test via the vertex criterion: every face can be separated
    /// from every vertex outside it.
    pub fn is_t_space(&self) -> TSpaceVerdict {
        if self.n == 0 {
            // The void complex is vacuously a T-space.
            return TSpaceVerdict::TSpace;
        }
        if self.is_full_simplex() {
            return TSpaceVerdict::NotApplicable;
        }
        for face in self.faces() {
            for v in 0..self.n {
                if face.contains(v) {
                    continue;
                }
                if !self.separates(face, Face(1 << v)) {
                    return TSpaceVerdict::NotTSpace;
                }
            }
        }
        TSpaceVerdict::TSpace
    }

    /// Independent T-space oracle: the literal definition quantifying over
    /// all pairs of faces (g not contained in f must be separable from f).
    pub fn is_t_space_bruteforce(&self) -> TSpaceVerdict {
        if self.n == 0 {
            return TSpaceVerdict::TSpace;
        }
        if self.is_full_simplex() {
            return TSpaceVerdict::NotApplicable;
        }
        let faces = self.faces();
        for &f in &faces {
            for &g in &faces {
                if g.is_subset_of(f) {
                    continue;
                }
                if !self.separates(f, g) {
                    return TSpaceVerdict::NotTSpace;
                }
            }
        }
        TSpaceVerdict::TSpace
    }
}

fn mask_full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The triangle-plus-isolated-point complex on vertices x, y, z, w: facets
/// {x,y}, {x,z}, {y,z}, {w}. The running fixture throughout the test suite.
pub fn tripp() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        4,
        &[
            Face::from_vertices([0, 1]),
            Face::from_vertices([0, 2]),
            Face::from_vertices([1, 2]),
            Face::from_vertices([3]),
        ],
        Some(vec!["x".into(), "y".into(), "z".into(), "w".into()]),
    )
    .unwrap()
}

/// Two disjoint edges {x,y} and {z,w}: the standard non-T-space example.
pub fn two_disjoint_edges() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        4,
        &[Face::from_vertices([0, 1]), Face::from_vertices([2, 3])],
        Some(vec!["x".into(), "y".into(), "z".into(), "w".into()]),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripp_construction() {
        let c = tripp();
        assert_eq!(c.n(), 4);
        assert_eq!(c.facet_count(), 4);
        assert_eq!(c.faces().len(), 8);
        assert_eq!(c.f_vector(), vec![1, 4, 3]);
        assert_eq!(c.max_facet_cardinality(), 2);
    }

    #[test]
    fn redundant_candidates_are_dropped() {
        let c = SimplicialComplex::from_facets(
            3,
            &[
                Face::from_vertices([0, 1, 2]),
                Face::from_vertices([0, 1]),
                Face::from_vertices([2]),
            ],
            None,
        )
        .unwrap();
        assert_eq!(c.facet_count(), 1);
        assert_eq!(c.report().dropped_redundant, 2);
        assert!(c.is_full_simplex());
    }

    #[test]
    fn slack_vertices_are_removed_and_recorded() {
        let c = SimplicialComplex::from_facets(
            4,
            &[Face::from_vertices([0, 2])],
            Some(vec!["a".into(), "b".into(), "c".into(), "d".into()]),
        )
        .unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.labels(), &["a".to_string(), "c".to_string()]);
        assert_eq!(c.report().removed_slack, vec!["b".to_string(), "d".to_string()]);
    }

    #[test]
    fn void_complex() {
        let c = SimplicialComplex::from_facets(0, &[], None).unwrap();
        assert_eq!(c.n(), 0);
        assert_eq!(c.faces(), vec![Face::EMPTY]);
        assert_eq!(c.is_t_space(), TSpaceVerdict::TSpace);

        // All vertices slack also collapses to the void complex.
        let c = SimplicialComplex::from_facets(3, &[], None).unwrap();
        assert_eq!(c.n(), 0);
        assert_eq!(c.report().removed_slack.len(), 3);
    }

    #[test]
    fn is_face_and_separates() {
        let c = tripp();
        assert!(c.is_face(Face::EMPTY));
        assert!(c.is_face(Face::from_vertices([0, 1])));
        assert!(!c.is_face(Face::from_vertices([0, 3])));
        assert!(!c.is_face(Face::from_vertices([0, 1, 2])));
        // {x} separates from {y} via facet {x,z}.
        assert!(c.separates(Face::from_vertices([0]), Face::from_vertices([1])));
        // No facet contains f but not f.
        let f = Face::from_vertices([0, 1]);
        assert!(!c.separates(f, f));
    }

    #[test]
    fn link_examples() {
        let c = tripp();
        // Link of {x}: vertices y, z with facets {y}, {z}.
        let l = c.link(Face::from_vertices([0])).unwrap();
        assert_eq!(l.n(), 2);
        assert_eq!(l.labels(), &["y".to_string(), "z".to_string()]);
        assert_eq!(l.facet_count(), 2);
        // Link of the facet {x,y} is the void complex (single face ∅).
        let l = c.link(Face::from_vertices([0, 1])).unwrap();
        assert_eq!(l.n(), 0);
        assert_eq!(l.faces(), vec![Face::EMPTY]);
        // Link of ∅ is the complex itself.
        let l = c.link(Face::EMPTY).unwrap();
        assert_eq!(l.facets().collect::<Vec<_>>(), c.facets().collect::<Vec<_>>());
        // Link of a non-face is a domain error.
        assert!(c.link(Face::from_vertices([0, 3])).is_err());
    }

    #[test]
    fn t_space_fixtures() {
        assert_eq!(tripp().is_t_space(), TSpaceVerdict::TSpace);
        assert_eq!(two_disjoint_edges().is_t_space(), TSpaceVerdict::NotTSpace);
        let full = SimplicialComplex::full_simplex(3, None).unwrap();
        assert_eq!(full.is_t_space(), TSpaceVerdict::NotApplicable);
    }

    #[test]
    fn t_space_matches_bruteforce_oracle() {
        for c in [tripp(), two_disjoint_edges()] {
            assert_eq!(c.is_t_space(), c.is_t_space_bruteforce());
        }
    }

    #[test]
    fn capacity_and_label_errors() {
        assert!(SimplicialComplex::from_facets(65, &[], None).is_err());
        assert!(
            SimplicialComplex::from_facets(2, &[Face::from_vertices([0])], Some(vec!["a".into()]))
                .is_err()
        );
        assert!(SimplicialComplex::from_facets(1, &[Face::from_vertices([3])], None).is_err());
    }
}
