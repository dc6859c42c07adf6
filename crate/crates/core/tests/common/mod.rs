//! Independent oracles and seeded samplers shared by the integration tests.
//!
//! Everything here works on plain `Vec<BTreeSet<usize>>` facet lists and
//! re-derives the definitions directly, without calling into the code paths
//! it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qcover::complex::{FacetView, SimplicialComplex};
use qcover::families::{random_quasi_tree, GeneratorSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Sets = Vec<BTreeSet<usize>>;

pub fn sets(complex: &SimplicialComplex) -> Sets {
    complex
        .facet_lists()
        .into_iter()
        .map(|f| f.into_iter().collect())
        .collect()
}

pub fn order_of(facets: &Sets, a: &[u32]) -> u32 {
    facets
        .iter()
        .map(|f| f.iter().map(|&v| a[v - 1]).sum::<u32>())
        .min()
        .unwrap()
}

/// Every vector `b` with `0 ≤ b ≤ a`, in no particular order.
pub fn box_vectors(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &x in a {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=x).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Plain box search over all `b`.
pub fn naive_decomposable(facets: &Sets, a: &[u32], k: u32) -> bool {
    box_vectors(a).into_iter().any(|b| {
        let c: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        b.iter().any(|&x| x > 0)
            && c.iter().any(|&x| x > 0)
            && order_of(facets, &b) + order_of(facets, &c) >= k
    })
}

/// All nonzero indecomposable k-covers with entries at most `cap`, sorted.
pub fn naive_indecomposable(facets: &Sets, n: usize, k: u32, cap: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = box_vectors(&vec![cap; n])
        .into_iter()
        .filter(|a| a.iter().any(|&x| x > 0))
        .filter(|a| order_of(facets, a) >= k && !naive_decomposable(facets, a, k))
        .collect();
    out.sort();
    out
}

/// Leaf test straight from the definition.
pub fn oracle_is_leaf(facets: &[&BTreeSet<usize>], f: usize) -> bool {
    if facets.len() == 1 {
        return true;
    }
    (0..facets.len()).filter(|&g| g != f).any(|g| {
        (0..facets.len()).filter(|&h| h != f).all(|h| {
            facets[h]
                .intersection(facets[f])
                .all(|v| facets[g].contains(v))
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every leaf order of the facet list, as index permutations.
pub fn all_leaf_orders(facets: &Sets) -> Vec<Vec<usize>> {
    permutations(facets.len())
        .into_iter()
        .filter(|perm| {
            (1..perm.len()).all(|i| {
                let prefix: Vec<&BTreeSet<usize>> =
                    perm[..=i].iter().map(|&j| &facets[j]).collect();
                oracle_is_leaf(&prefix, i)
            })
        })
        .collect()
}

/// A cycle as (vertices, facet indices).
pub type RawCycle = (Vec<usize>, Vec<usize>);

pub fn oracle_is_cycle(facets: &Sets, cyc: &RawCycle) -> bool {
    let (vs, fs) = cyc;
    let s = vs.len();
    s >= 2
        && fs.len() == s
        && vs.iter().collect::<BTreeSet<_>>().len() == s
        && fs.iter().collect::<BTreeSet<_>>().len() == s
        && (0..s)
            .all(|i| facets[fs[i]].contains(&vs[i]) && facets[fs[i]].contains(&vs[(i + 1) % s]))
}

pub fn oracle_is_special(facets: &Sets, cyc: &RawCycle) -> bool {
    let verts: BTreeSet<usize> = cyc.0.iter().copied().collect();
    cyc.1
        .iter()
        .all(|&f| facets[f].intersection(&verts).count() <= 2)
}

fn sequences(pool: &[usize], len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in sequences(pool, len - 1) {
        for &x in pool {
            if !p.contains(&x) {
                let mut q = p.clone();
                q.push(x);
                out.push(q);
            }
        }
    }
    out
}

/// Full enumeration of alternating sequences: does any special odd cycle
/// exist?
pub fn naive_has_special_odd_cycle(facets: &Sets, n: usize) -> bool {
    let verts: Vec<usize> = (1..=n).collect();
    let ids: Vec<usize> = (0..facets.len()).collect();
    let max_s = n.min(facets.len());
    (3..=max_s).step_by(2).any(|s| {
        let fseqs = sequences(&ids, s);
        sequences(&verts, s).into_iter().any(|vs| {
            fseqs.iter().any(|fs| {
                let cyc = (vs.clone(), fs.clone());
                oracle_is_cycle(facets, &cyc) && oracle_is_special(facets, &cyc)
            })
        })
    })
}

/// All cycles with at most `max_s` vertices, found by walking incidences.
/// Rotations and reflections are listed separately.
pub fn all_cycles(facets: &Sets, n: usize, max_s: usize) -> Vec<RawCycle> {
    fn walk(
        facets: &Sets,
        max_s: usize,
        vs: &mut Vec<usize>,
        fs: &mut Vec<usize>,
        out: &mut Vec<RawCycle>,
    ) {
        let last = *vs.last().unwrap();
        for f in 0..facets.len() {
            if fs.contains(&f) || !facets[f].contains(&last) {
                continue;
            }
            fs.push(f);
            if vs.len() >= 2 && facets[f].contains(&vs[0]) {
                out.push((vs.clone(), fs.clone()));
            }
            if vs.len() < max_s {
                for &v in &facets[f] {
                    if !vs.contains(&v) {
                        vs.push(v);
                        walk(facets, max_s, vs, fs, out);
                        vs.pop();
                    }
                }
            }
            fs.pop();
        }
    }
    let mut out = Vec::new();
    for v in 1..=n {
        walk(facets, max_s, &mut vec![v], &mut Vec::new(), &mut out);
    }
    out
}

/// Random facet system on at most `max_n` vertices with at most
/// `max_facets` facets, reduced to an antichain and relabelled densely.
pub fn random_complex(rng: &mut ChaCha8Rng, max_n: usize, max_facets: usize) -> SimplicialComplex {
    random_complex_sized(rng, max_n, max_facets, max_n)
}

/// Like [`random_complex`] with facet sizes at most `max_size`.
pub fn random_complex_sized(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_facets: usize,
    max_size: usize,
) -> SimplicialComplex {
    random_complex_planted(rng, max_n, max_facets, max_size, &[])
}

/// Like [`random_complex_sized`] with extra facets mixed in before the
/// antichain reduction. Planted vertices may exceed `max_n`.
pub fn random_complex_planted(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_facets: usize,
    max_size: usize,
    planted: &[&[usize]],
) -> SimplicialComplex {
    loop {
        let n = rng.random_range(1..=max_n);
        let m = rng.random_range(1..=max_facets);
        let mut raw: Vec<BTreeSet<usize>> = (0..m)
            .map(|_| {
                let size = rng.random_range(1..=n.min(max_size));
                let mut s = BTreeSet::new();
                while s.len() < size {
                    s.insert(rng.random_range(1..=n));
                }
                s
            })
            .collect();
        raw.extend(
            planted
                .iter()
                .map(|f| f.iter().copied().collect::<BTreeSet<_>>()),
        );
        raw.sort();
        raw.dedup();
        let maximal: Vec<BTreeSet<usize>> = raw
            .iter()
            .filter(|f| !raw.iter().any(|g| g != *f && f.is_subset(g)))
            .cloned()
            .collect();
        let used: Vec<usize> = maximal
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let relabel = |v: &usize| used.binary_search(v).unwrap() + 1;
        let facets: Vec<Vec<usize>> = maximal
            .iter()
            .map(|f| f.iter().map(relabel).collect())
            .collect();
        if let Ok(c) = SimplicialComplex::new(facets) {
            return c;
        }
    }
}

/// Seeded quasi-trees with at most 6 facets, 9 vertices and facet size 4.
pub fn quasi_tree_corpus(count: usize) -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let g = GeneratorSeed {
            seed,
            num_facets: rng.random_range(1..=6),
            max_facet_size: rng.random_range(2..=4),
        };
        seed += 1;
        let c = random_quasi_tree(g).unwrap();
        if c.vertex_count() <= 9 {
            out.push(c);
        }
    }
    out
}

/// Whether some cycle from [`all_cycles`] is odd and special.
pub fn oracle_has_special_odd_cycle(facets: &Sets, n: usize) -> bool {
    all_cycles(facets, n, n.min(facets.len()))
        .iter()
        .any(|c| c.0.len() % 2 == 1 && oracle_is_special(facets, c))
}

/// Seeded quasi-trees within the same size limits as
/// [`quasi_tree_corpus`], kept only when [`oracle_has_special_odd_cycle`]
/// holds. The generator produces such cycles rarely, so positives need
/// rejection sampling.
pub fn cycle_rich_corpus(count: usize) -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let g = GeneratorSeed {
            seed: seed ^ 0x5eed_0000_0000,
            num_facets: 4 + (seed % 3) as usize,
            max_facet_size: 3 + (seed % 2) as usize,
        };
        seed += 1;
        let c = random_quasi_tree(g).unwrap();
        if c.vertex_count() <= 9 && oracle_has_special_odd_cycle(&sets(&c), c.vertex_count()) {
            out.push(c);
        }
    }
    out
}

/// Mixed sample of small complexes with at most 5 facets: unrestricted
/// facets, small facets on few vertices, and complexes around a planted
/// triangle (which is never a quasi-forest on its own).
pub fn forest_sample(count: usize, seed: u64) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => random_complex(&mut rng, 7, 5),
            1 => random_complex_sized(&mut rng, 5, 5, 3),
            _ => random_complex_planted(&mut rng, 6, 2, 3, &[&[1, 2, 7], &[2, 3], &[1, 3, 8]]),
        })
        .collect()
}

/// Whether the complex's vertex universe is `1..=n` (always true for a full
/// complex; a sanity check on the corpus).
pub fn dense(c: &SimplicialComplex) -> bool {
    c.universe() == (1..=c.vertex_count()).collect::<Vec<_>>().as_slice()
}
