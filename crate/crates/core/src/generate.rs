//! Test-instance generation: exhaustive enumeration of small complexes and
//! graphs, and reproducible random complexes from a seed.
//!
//! A complex on a fixed vertex set is exactly an antichain of nonempty faces;
//! enumeration walks antichains in increasing bitmask order and keeps those
//! covering their vertex set, then pools the results over all vertex counts
//! up to `n` (the no-slack normalization: a non-covering antichain is the
//! covering antichain of a smaller vertex set).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

fn covering_antichains(m: usize, visit: &mut impl FnMut(&[u64])) {
    let full: u64 = (1 << m) - 1;
    let mut stack: Vec<u64> = Vec::new();
    fn rec(from: u64, union: u64, full: u64, stack: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
        if union == full && !stack.is_empty() {
            visit(stack);
        }
        for cand in from..=full {
            if stack.iter().any(|&f| f & !cand == 0 || cand & !f == 0) {
                continue; // comparable to a chosen facet
            }
            stack.push(cand);
            rec(cand + 1, union | cand, full, stack, visit);
            stack.pop();
        }
    }
    rec(1, 0, full, &mut stack, visit);
}

/// All complexes on at most `n` vertices, each on its exact (slack-free)
/// vertex set, deduplicated by construction. `n = 0` yields the void complex
/// alone. Exhaustive enumeration is feasible for `n ≤ 6` and capped at 8.
pub fn exhaustive_complexes(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n > 8 {
        return Err(Error::Capacity(format!(
            "antichain enumeration on {} vertices is out of reach",
            n
        )));
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(SimplicialComplex::from_facets(0, &[], None)?);
        return Ok(out);
    }
    for m in 1..=n {
        covering_antichains(m, &mut |facets| {
            let faces: Vec<Face> = facets.iter().map(|&f| Face(f)).collect();
            out.push(
                SimplicialComplex::from_facets(m, &faces, None)
                    .expect("enumerated antichain is a valid facet list"),
            );
        });
    }
    Ok(out)
}

/// All graphs on exactly `n` labeled vertices, as one-dimensional complexes:
/// the edges plus a singleton facet for every isolated vertex. Returns each
/// graph with its degree sequence.
pub fn exhaustive_graphs(n: usize) -> Result<Vec<(SimplicialComplex, Vec<u32>)>> {
    if n > 7 {
        return Err(Error::Capacity(format!(
            "graph enumeration on {} vertices is out of reach",
            n
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for selection in 0u64..(1 << pairs.len()) {
        let mut degrees = vec![0u32; n];
        let mut facets: Vec<Face> = Vec::new();
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            if selection >> idx & 1 == 1 {
                degrees[i] += 1;
                degrees[j] += 1;
                facets.push(Face(1 << i | 1 << j));
            }
        }
        for (v, &deg) in degrees.iter().enumerate() {
            if deg == 0 {
                facets.push(Face(1 << v));
            }
        }
        let complex = SimplicialComplex::from_facets(n, &facets, None)?;
        out.push((complex, degrees));
    }
    Ok(out)
}

/// `count` random complexes on at most `n_max` vertices, reproducible from
/// the seed. Facet lists are drawn uniformly and then normalized, so vertex
/// counts can shrink below the draw.
pub fn random_complexes(n_max: usize, count: usize, seed: u64) -> Result<Vec<SimplicialComplex>> {
    if n_max == 0 || n_max > 16 {
        return Err(Error::Domain("vertex bound must be between 1 and 16".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=n_max);
        let full: u64 = (1 << n) - 1;
        let k = rng.gen_range(1..=2 * n);
        let facets: Vec<Face> = (0..k)
            .map(|_| Face(rng.gen_range(1..=full)))
            .collect();
        out.push(SimplicialComplex::from_facets(n, &facets, None)?);
    }
    Ok(out)
}

/// Seeded stream of T-space complexes: draws random complexes and keeps those
/// with a positive T-space verdict. The attempt budget guards against
/// degenerate parameters.
pub fn random_t_spaces(n_max: usize, count: usize, seed: u64) -> Result<Vec<SimplicialComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 10_000 * count.max(1) {
            return Err(Error::Capacity(
                "exhausted the attempt budget hunting for T-spaces".into(),
            ));
        }
        let n = rng.gen_range(1..=n_max);
        let full: u64 = (1 << n) - 1;
        let k = rng.gen_range(1..=2 * n);
        let facets: Vec<Face> = (0..k)
            .map(|_| Face(rng.gen_range(1..=full)))
            .collect();
        let complex = SimplicialComplex::from_facets(n, &facets, None)?;
        if complex.is_t_space() == crate::complex::TSpaceVerdict::TSpace {
            out.push(complex);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::TSpaceVerdict;

    #[test]
    fn two_vertex_universe_has_three_complexes() {
        let all = exhaustive_complexes(2).unwrap();
        assert_eq!(all.len(), 3, "point, two points, and an edge");
        let sizes: Vec<(usize, usize)> = all
            .iter()
            .map(|c| (c.n(), c.facets().count()))
            .collect();
        assert!(sizes.contains(&(1, 1)));
        assert!(sizes.contains(&(2, 2)));
        assert!(sizes.contains(&(2, 1)));
    }

    #[test]
    fn void_universe() {
        let all = exhaustive_complexes(0).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].n(), 0);
    }

    #[test]
    fn enumeration_counts_are_stable() {
        // Frozen counts: complexes on at most n slack-free vertices.
        assert_eq!(exhaustive_complexes(1).unwrap().len(), 1);
        assert_eq!(exhaustive_complexes(2).unwrap().len(), 3);
        assert_eq!(exhaustive_complexes(3).unwrap().len(), 12);
        assert_eq!(exhaustive_complexes(4).unwrap().len(), 126);
    }

    #[test]
    fn enumerated_complexes_are_distinct_and_slack_free() {
        let all = exhaustive_complexes(4).unwrap();
        let mut keys: Vec<(usize, Vec<u64>)> = all
            .iter()
            .map(|c| (c.n(), c.facets().map(|f| f.0).collect()))
            .collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), before, "no duplicates");
        for c in &all {
            let covered = c.facets().fold(0u64, |acc, f| acc | f.0);
            assert_eq!(covered, c.full_mask(), "no slack vertices survive");
        }
    }

    #[test]
    fn graphs_on_three_vertices() {
        let graphs = exhaustive_graphs(3).unwrap();
        assert_eq!(graphs.len(), 8);
        for (complex, degrees) in &graphs {
            assert_eq!(complex.n(), 3, "isolated vertices are kept");
            let edge_count: u32 = degrees.iter().sum::<u32>() / 2;
            let facet_edges = complex.facets().filter(|f| f.0.count_ones() == 2).count();
            assert_eq!(edge_count as usize, facet_edges);
        }
    }

    #[test]
    fn random_streams_are_reproducible() {
        let a = random_complexes(5, 20, 42).unwrap();
        let b = random_complexes(5, 20, 42).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.n(), y.n());
            assert_eq!(
                x.facets().collect::<Vec<_>>(),
                y.facets().collect::<Vec<_>>()
            );
        }
        let c = random_complexes(5, 20, 43).unwrap();
        let same = a
            .iter()
            .zip(c.iter())
            .all(|(x, y)| x.facets().collect::<Vec<_>>() == y.facets().collect::<Vec<_>>());
        assert!(!same, "different seeds diverge");
    }

    #[test]
    fn t_space_stream_delivers_t_spaces() {
        let spaces = random_t_spaces(6, 10, 7).unwrap();
        assert_eq!(spaces.len(), 10);
        for s in &spaces {
            assert_eq!(s.is_t_space(), TSpaceVerdict::TSpace);
        }
    }
}
