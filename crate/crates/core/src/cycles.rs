//! Cycles of a complex and the search for special odd cycles.
//!
//! A cycle is `v₁, F₁, v₂, F₂, …, v_s, F_s, v₁` with distinct vertices,
//! distinct facets, `s ≥ 2`, and `vᵢ, vᵢ₊₁ ∈ Fᵢ`. It is *special* when none
//! of its own facets `F₁..F_s` holds more than two cycle vertices. Facets of
//! the complex outside the cycle are not constrained: in Δ₃ the central facet
//! `{1,2,3}` holds all three vertices of the special cycle `2,F₁,3,F₂,1,F₃`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{bit, FacetId, FacetView, Vertex};

/// Default cap on search-tree expansions.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("{vertices} vertices but {facets} facets")]
    LengthMismatch { vertices: usize, facets: usize },
    #[error("sequence is not a cycle of the complex")]
    NotACycle,
    #[error("cycle search exceeded its budget of {0} expansions")]
    Budget(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<FacetId>,
}

impl Cycle {
    /// A cycle checked against `view`.
    pub fn new(
        view: &(impl FacetView + ?Sized),
        vertices: Vec<Vertex>,
        facets: Vec<FacetId>,
    ) -> Result<Self, CycleError> {
        if is_cycle(view, &vertices, &facets)? {
            Ok(Cycle { vertices, facets })
        } else {
            Err(CycleError::NotACycle)
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn vertex_mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | bit(v))
    }

    /// Start at position `r`.
    pub fn rotated(&self, r: usize) -> Cycle {
        let mut vertices = self.vertices.clone();
        let mut facets = self.facets.clone();
        vertices.rotate_left(r % self.len());
        facets.rotate_left(r % self.len());
        Cycle { vertices, facets }
    }

    /// Traverse in the opposite direction from the same start vertex.
    pub fn reversed(&self) -> Cycle {
        let mut vertices = vec![self.vertices[0]];
        vertices.extend(self.vertices[1..].iter().rev());
        let facets = self.facets.iter().rev().copied().collect();
        Cycle { vertices, facets }
    }
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (v, g) in self.vertices.iter().zip(&self.facets) {
            write!(f, "{v},{g},")?;
        }
        write!(f, "{}", self.vertices[0])
    }
}

pub fn is_cycle(
    view: &(impl FacetView + ?Sized),
    vertices: &[Vertex],
    facets: &[FacetId],
) -> Result<bool, CycleError> {
    if vertices.len() != facets.len() {
        return Err(CycleError::LengthMismatch {
            vertices: vertices.len(),
            facets: facets.len(),
        });
    }
    let s = vertices.len();
    if s < 2 {
        return Ok(false);
    }
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut fs = facets.to_vec();
    fs.sort_unstable();
    fs.dedup();
    if vs.len() != s || fs.len() != s {
        return Ok(false);
    }
    if facets.iter().any(|&f| !view.contains_facet(f)) {
        return Ok(false);
    }
    Ok((0..s).all(|i| {
        let f = view.facet(facets[i]);
        f.contains(vertices[i]) && f.contains(vertices[(i + 1) % s])
    }))
}

/// Every cycle facet meets the cycle's vertex set in at most two vertices.
pub fn is_special(view: &(impl FacetView + ?Sized), cycle: &Cycle) -> Result<bool, CycleError> {
    if !is_cycle(view, &cycle.vertices, &cycle.facets)? {
        return Err(CycleError::NotACycle);
    }
    let vm = cycle.vertex_mask();
    Ok(cycle
        .facets
        .iter()
        .all(|&f| (view.facet(f).mask() & vm).count_ones() <= 2))
}

pub fn is_special_odd(view: &(impl FacetView + ?Sized), cycle: &Cycle) -> bool {
    cycle.len() >= 3 && cycle.is_odd() && is_special(view, cycle).unwrap_or(false)
}

/// [`find_special_odd_cycle_with_budget`] with [`DEFAULT_BUDGET`].
pub fn find_special_odd_cycle(
    view: &(impl FacetView + ?Sized),
) -> Result<Option<Cycle>, CycleError> {
    find_special_odd_cycle_with_budget(view, DEFAULT_BUDGET)
}

/// Exhaustive backtracking search.
///
/// Canonical form: `v₁` is the smallest cycle vertex and `v₂ < v_s`. Within
/// that, candidates are tried in ascending (vertex, facet id) order, so the
/// result is the lexicographically first canonical special odd cycle.
pub fn find_special_odd_cycle_with_budget(
    view: &(impl FacetView + ?Sized),
    budget: u64,
) -> Result<Option<Cycle>, CycleError> {
    let mut search = Search::new(view, budget);
    for &start in view.universe() {
        search.vertices.push(start);
        search.vmask = bit(start);
        if search.extend()? {
            return Ok(Some(Cycle {
                vertices: search.vertices,
                facets: search.facets,
            }));
        }
        search.vertices.pop();
    }
    Ok(None)
}

struct Search<'v, V: FacetView + ?Sized> {
    view: &'v V,
    budget: u64,
    expansions: u64,
    vertices: Vec<Vertex>,
    facets: Vec<FacetId>,
    vmask: u64,
    // Union of the masks of the facets chosen so far.
    fmask: u64,
}

impl<'v, V: FacetView + ?Sized> Search<'v, V> {
    fn new(view: &'v V, budget: u64) -> Self {
        Search {
            view,
            budget,
            expansions: 0,
            vertices: Vec::new(),
            facets: Vec::new(),
            vmask: 0,
            fmask: 0,
        }
    }

    /// Chooses the facet leaving the last vertex. On success the path holds
    /// the closed cycle.
    fn extend(&mut self) -> Result<bool, CycleError> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(CycleError::Budget(self.budget));
        }
        let first = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        let t = self.vertices.len();
        let earlier = self.vmask & !bit(last) & !bit(first);
        for &f in self.view.facet_ids() {
            if self.facets.contains(&f) {
                continue;
            }
            let fm = self.view.facet(f).mask();
            if fm & bit(last) == 0 || fm & earlier != 0 {
                continue;
            }
            if t >= 2 && fm & bit(first) != 0 {
                // This facet already holds v₁ and v_t; it can only close.
                if t >= 3 && t % 2 == 1 && self.vertices[1] < last {
                    self.facets.push(f);
                    return Ok(true);
                }
                continue;
            }
            let saved = self.fmask;
            self.facets.push(f);
            // The next vertex must not sit in any earlier cycle facet.
            let blocked = self.fmask;
            self.fmask |= fm;
            let mut candidates = fm & !self.vmask & !blocked;
            while candidates != 0 {
                let next = candidates.trailing_zeros() as usize + 1;
                candidates &= candidates - 1;
                if next < first {
                    continue;
                }
                self.vertices.push(next);
                self.vmask |= bit(next);
                if self.extend()? {
                    return Ok(true);
                }
                self.vmask &= !bit(next);
                self.vertices.pop();
            }
            self.fmask = saved;
            self.facets.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn delta3() -> SimplicialComplex {
        SimplicialComplex::new([vec![1, 2, 3], vec![2, 3, 4], vec![1, 3, 5], vec![1, 2, 6]])
            .unwrap()
    }

    fn figure1() -> SimplicialComplex {
        SimplicialComplex::new([
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![2, 3, 6],
            vec![2, 3, 7],
        ])
        .unwrap()
    }

    // Δ₃ canonical ids: F={1,2,3}→0, F₃={1,2,6}→1, F₂={1,3,5}→2, F₁={2,3,4}→3.
    const F1: FacetId = FacetId(3);
    const F2: FacetId = FacetId(2);
    const F3: FacetId = FacetId(1);

    #[test]
    fn delta3_cycle() {
        let d = delta3();
        assert_eq!(is_cycle(&d, &[2, 3, 1], &[F1, F2, F3]), Ok(true));
        let c = Cycle::new(&d, vec![2, 3, 1], vec![F1, F2, F3]).unwrap();
        assert_eq!(is_special(&d, &c), Ok(true));
        assert!(is_special_odd(&d, &c));
        assert_eq!(c.to_string(), "2,F4,3,F3,1,F2,2");
    }

    #[test]
    fn repeated_vertex_is_not_a_cycle() {
        let d = delta3();
        assert_eq!(is_cycle(&d, &[2, 2], &[F1, F3]), Ok(false));
        assert_eq!(
            is_cycle(&d, &[2, 3], &[F1]),
            Err(CycleError::LengthMismatch {
                vertices: 2,
                facets: 1
            })
        );
    }

    #[test]
    fn figure_one_cycle_is_not_special() {
        let c = figure1();
        let facets = vec![FacetId(1), FacetId(3), FacetId(0)];
        assert_eq!(is_cycle(&c, &[1, 2, 3], &facets), Ok(true));
        let cyc = Cycle::new(&c, vec![1, 2, 3], facets).unwrap();
        assert_eq!(is_special(&c, &cyc), Ok(false));
    }

    #[test]
    fn two_cycles_are_special() {
        let c = figure1();
        let cyc = Cycle::new(&c, vec![1, 2], vec![FacetId(0), FacetId(1)]).unwrap();
        assert_eq!(is_special(&c, &cyc), Ok(true));
        assert!(!is_special_odd(&c, &cyc));
    }

    #[test]
    fn is_special_rejects_non_cycles() {
        let d = delta3();
        let bogus = Cycle {
            vertices: vec![4, 5, 6],
            facets: vec![F1, F2, F3],
        };
        assert_eq!(is_special(&d, &bogus), Err(CycleError::NotACycle));
    }

    #[test]
    fn finds_delta3_cycle_in_canonical_rotation() {
        let d = delta3();
        let c = find_special_odd_cycle(&d).unwrap().unwrap();
        assert_eq!(c.vertices, vec![1, 2, 3]);
        assert_eq!(c.facets, vec![F3, F1, F2]);
        // 1,F₃,2,F₁,3,F₂,1 is 2,F₁,3,F₂,1,F₃,2 started at vertex 1.
        assert_eq!(
            c.rotated(1),
            Cycle {
                vertices: vec![2, 3, 1],
                facets: vec![F1, F2, F3]
            }
        );
    }

    #[test]
    fn figure_one_has_none() {
        assert_eq!(find_special_odd_cycle(&figure1()), Ok(None));
    }

    #[test]
    fn single_facet_has_none() {
        let c = SimplicialComplex::new([vec![1, 2, 3]]).unwrap();
        assert_eq!(find_special_odd_cycle(&c), Ok(None));
    }

    #[test]
    fn odd_edge_cycles() {
        let tri = SimplicialComplex::new([vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let c = find_special_odd_cycle(&tri).unwrap().unwrap();
        assert_eq!(c.vertices, vec![1, 2, 3]);
        let square =
            SimplicialComplex::new([vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
        assert_eq!(find_special_odd_cycle(&square), Ok(None));
        let pentagon =
            SimplicialComplex::new([vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![1, 5]])
                .unwrap();
        assert_eq!(find_special_odd_cycle(&pentagon).unwrap().unwrap().len(), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let d = delta3();
        assert_eq!(
            find_special_odd_cycle_with_budget(&d, 1),
            Err(CycleError::Budget(1))
        );
    }

    #[test]
    fn reversal() {
        let d = delta3();
        let c = find_special_odd_cycle(&d).unwrap().unwrap();
        let r = c.reversed();
        assert_eq!(r.vertices, vec![1, 3, 2]);
        assert!(is_special_odd(&d, &r));
    }
}
