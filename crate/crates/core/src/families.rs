//! Named complexes and a seeded quasi-tree generator.

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, Vertex, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("Δₙ needs n ≥ 3, got {0}")]
    NTooSmall(usize),
    #[error("generator parameters out of range: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `Δₙ` on `2n` vertices: the facet `{1..n}` plus, for each `i`, the facet
/// `{1..n} \ {i} ∪ {n + i}`.
pub fn delta_n(n: usize) -> Result<SimplicialComplex, FamilyError> {
    if n < 3 {
        return Err(FamilyError::NTooSmall(n));
    }
    let mut facets: Vec<Vec<Vertex>> = vec![(1..=n).collect()];
    for i in 1..=n {
        let mut f: Vec<Vertex> = (1..=n).filter(|&j| j != i).collect();
        f.push(n + i);
        facets.push(f);
    }
    Ok(SimplicialComplex::new(facets)?)
}

/// Seven vertices, five triangles sharing vertex 2.
pub fn figure1() -> SimplicialComplex {
    SimplicialComplex::new([
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![2, 3, 6],
        vec![2, 3, 7],
    ])
    .expect("five triangles form a valid complex")
}

/// Parameters of [`random_quasi_tree`]. Equal seeds give equal complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSeed {
    pub seed: u64,
    pub num_facets: usize,
    pub max_facet_size: usize,
}

/// Grows a quasi-tree one leaf at a time.
///
/// The first facet has a uniform size in `2..=max_facet_size`. Each later
/// facet picks an existing facet `G` uniformly, keeps a uniform nonempty
/// proper subset of `G`, and adds at least one fresh vertex up to a uniform
/// target size. The new facet meets the complex inside `G`, so it is a leaf
/// with branch `G` when attached; the fresh vertex keeps the antichain.
///
/// Randomness comes from ChaCha8 seeded through `seed_from_u64`. A
/// `max_facet_size` of 1 is only accepted for a single facet; with more
/// facets sizes are drawn from `2..=max(2, max_facet_size)`.
pub fn random_quasi_tree(g: GeneratorSeed) -> Result<SimplicialComplex, FamilyError> {
    if g.num_facets == 0 || g.max_facet_size == 0 {
        return Err(FamilyError::BadParameters(
            "num_facets and max_facet_size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    if g.num_facets == 1 && g.max_facet_size == 1 {
        return Ok(SimplicialComplex::new([vec![1]])?);
    }
    let max = g.max_facet_size.max(2);
    let first = rng.random_range(2..=max);
    let mut facets: Vec<Vec<Vertex>> = vec![(1..=first).collect()];
    let mut next: Vertex = first + 1;
    for _ in 1..g.num_facets {
        let host = facets[rng.random_range(0..facets.len())].clone();
        let keep = rng.random_range(1..host.len());
        let size = rng.random_range((keep + 1)..=max.max(keep + 1));
        let mut facet: Vec<Vertex> = host.iter().copied().choose_multiple(&mut rng, keep);
        for _ in keep..size {
            if next > MAX_VERTICES {
                return Err(FamilyError::BadParameters(format!(
                    "more than {MAX_VERTICES} vertices required"
                )));
            }
            facet.push(next);
            next += 1;
        }
        facet.sort_unstable();
        facets.push(facet);
    }
    Ok(SimplicialComplex::new(facets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FacetView;
    use crate::quasi_forest::is_quasi_tree;

    #[test]
    fn delta3_facets() {
        let d = delta_n(3).unwrap();
        assert_eq!(
            d.facet_lists(),
            vec![vec![1, 2, 3], vec![1, 2, 6], vec![1, 3, 5], vec![2, 3, 4]]
        );
        assert!(is_quasi_tree(&d));
    }

    #[test]
    fn delta4_shape() {
        let d = delta_n(4).unwrap();
        assert_eq!(d.vertex_count(), 8);
        assert_eq!(d.facet_count(), 5);
        assert!(d.facets().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn delta_n_rejects_small_n() {
        assert_eq!(delta_n(2), Err(FamilyError::NTooSmall(2)));
    }

    #[test]
    fn figure_one() {
        let f = figure1();
        assert_eq!(f.vertex_count(), 7);
        assert_eq!(f.facet_count(), 5);
        assert!(is_quasi_tree(&f));
    }

    #[test]
    fn generator_basics() {
        let one = random_quasi_tree(GeneratorSeed {
            seed: 1,
            num_facets: 1,
            max_facet_size: 3,
        })
        .unwrap();
        assert_eq!(one.facet_count(), 1);

        let g = GeneratorSeed {
            seed: 7,
            num_facets: 5,
            max_facet_size: 4,
        };
        let a = random_quasi_tree(g).unwrap();
        assert_eq!(a, random_quasi_tree(g).unwrap());
        assert_eq!(a.facet_count(), 5);
        assert!(a.dimension() <= 3);
        assert!(is_quasi_tree(&a));

        assert!(random_quasi_tree(GeneratorSeed {
            seed: 0,
            num_facets: 0,
            max_facet_size: 3
        })
        .is_err());
        assert!(random_quasi_tree(GeneratorSeed {
            seed: 0,
            num_facets: 100,
            max_facet_size: 4
        })
        .is_err());
    }

    #[test]
    fn generator_always_yields_quasi_trees() {
        for seed in 0..300 {
            let c = random_quasi_tree(GeneratorSeed {
                seed,
                num_facets: 1 + (seed as usize % 7),
                max_facet_size: 1 + (seed as usize % 5),
            })
            .unwrap();
            assert!(is_quasi_tree(&c), "seed {seed}: {:?}", c.facet_lists());
        }
    }
}
