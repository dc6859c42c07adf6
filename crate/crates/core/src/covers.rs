//! k-covers and their decompositions.
//!
//! A vector `a ∈ ℕⁿ` over a view's vertex universe is a k-cover when every
//! facet sums to at least `k`; the pair `(a, k)` stands for the monomial
//! `x^a t^k` of the vertex cover algebra. A k-cover is decomposable when it
//! splits as `b + c` with `b, c ≠ 0`, `b` an i-cover, `c` a j-cover and
//! `i + j = k`. The indecomposable pairs are exactly the minimal generators
//! of the algebra, so all degree questions reduce to enumerating them.
//!
//! Vectors are indexed by position in [`FacetView::universe`]. For a full
//! complex that is vertex `i + 1`; for an SMD it skips vertices the SMD does
//! not cover.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{FacetId, FacetView, SimplicialComplex};
use crate::cycles::{is_special_odd, Cycle};
use crate::quasi_forest::{branches_of, is_leaf, is_quasi_tree, QuasiForestError, RelationTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("vector has length {found}, the vertex universe has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector has cover order {order}, not at least {k}")]
    NotAKCover { order: u32, k: u32 },
    #[error("{0} is not a leaf")]
    NotALeaf(FacetId),
    #[error("{0} has no free vertex")]
    NoFreeVertex(FacetId),
    #[error("the larger view is not the smaller one plus the leaf")]
    NotAnExtension,
    #[error("the complex is not a quasi-tree")]
    NotQuasiTree,
    #[error("the cycle is not a special odd cycle")]
    NotSpecialOddCycle,
    #[error("the relation tree does not span the complex")]
    TreeMismatch,
    #[error("witness construction failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    QuasiForest(#[from] QuasiForestError),
}

/// An exponent vector with a declared order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoverVector {
    pub a: Vec<u32>,
    pub k: u32,
}

impl CoverVector {
    pub fn new(a: Vec<u32>, k: u32) -> Self {
        CoverVector { a, k }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn weight(&self) -> u32 {
        self.a.iter().sum()
    }
}

impl fmt::Display for CoverVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "({}) of order {}", parts.join(","), self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub b: CoverVector,
    pub c: CoverVector,
}

/// Facets of a view rewritten over local vertex positions.
#[derive(Debug)]
struct Incidence {
    n: usize,
    facets: Vec<Vec<usize>>,
    // Facets containing each vertex.
    of_vertex: Vec<Vec<usize>>,
    // Facets whose highest vertex is at each position.
    completes_at: Vec<Vec<usize>>,
    // Vertices all of whose facets are complete once a position is assigned.
    settles_at: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(view: &(impl FacetView + ?Sized)) -> Self {
        let n = view.universe().len();
        let facets: Vec<Vec<usize>> = view
            .facet_ids()
            .iter()
            .map(|&id| {
                view.facet(id)
                    .vertices()
                    .iter()
                    .map(|&v| view.local_index(v).expect("facet vertex in universe"))
                    .collect()
            })
            .collect();
        let mut of_vertex = vec![Vec::new(); n];
        let mut completes_at = vec![Vec::new(); n];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                of_vertex[v].push(fi);
            }
            completes_at[*f.iter().max().unwrap()].push(fi);
        }
        let mut settles_at = vec![Vec::new(); n];
        for (v, fs) in of_vertex.iter().enumerate() {
            let t = fs
                .iter()
                .map(|&fi| *facets[fi].iter().max().unwrap())
                .max()
                .unwrap();
            settles_at[t].push(v);
        }
        Incidence {
            n,
            facets,
            of_vertex,
            completes_at,
            settles_at,
        }
    }

    fn sums(&self, a: &[u32]) -> Vec<u32> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| a[v]).sum())
            .collect()
    }

    fn order(&self, a: &[u32]) -> u32 {
        self.sums(a).into_iter().min().unwrap_or(0)
    }

    fn check_len(&self, a: &[u32]) -> Result<(), CoverError> {
        if a.len() == self.n {
            Ok(())
        } else {
            Err(CoverError::LengthMismatch {
                expected: self.n,
                found: a.len(),
            })
        }
    }

    /// First `b` in descending lexicographic order with `0 ≠ b ≠ a`,
    /// `b ≤ a` and `order(b) + order(a - b) ≥ k`.
    fn split(&self, a: &[u32], k: u32) -> Option<Vec<u32>> {
        let mut state = SplitState {
            b: vec![0; self.n],
            bsum: vec![0; self.facets.len()],
            rem: self.sums(a),
            asum: self.sums(a),
        };
        self.split_from(0, a, k, &mut state).then_some(state.b)
    }

    fn split_from(&self, idx: usize, a: &[u32], k: u32, st: &mut SplitState) -> bool {
        if idx == self.n {
            let nonzero = st.b.iter().any(|&x| x > 0);
            let proper = st.b.as_slice() != a;
            if !(nonzero && proper) {
                return false;
            }
            let ob = st.bsum.iter().copied().min().unwrap_or(0);
            let oc = st
                .asum
                .iter()
                .zip(&st.bsum)
                .map(|(s, b)| s - b)
                .min()
                .unwrap_or(0);
            return ob + oc >= k;
        }
        let fs = &self.of_vertex[idx];
        for &fi in fs {
            st.rem[fi] -= a[idx];
        }
        for val in (0..=a[idx]).rev() {
            st.b[idx] = val;
            for &fi in fs {
                st.bsum[fi] += val;
            }
            let ub_b = st
                .bsum
                .iter()
                .zip(&st.rem)
                .map(|(b, r)| b + r)
                .min()
                .unwrap_or(0);
            let ub_c = st
                .asum
                .iter()
                .zip(&st.bsum)
                .map(|(s, b)| s - b)
                .min()
                .unwrap_or(0);
            let found = ub_b + ub_c >= k && self.split_from(idx + 1, a, k, st);
            for &fi in fs {
                st.bsum[fi] -= val;
            }
            if found {
                // Restore b[idx] for the caller; the sums are no longer used.
                st.b[idx] = val;
                return true;
            }
        }
        st.b[idx] = 0;
        for &fi in fs {
            st.rem[fi] += a[idx];
        }
        false
    }
}

struct SplitState {
    b: Vec<u32>,
    bsum: Vec<u32>,
    rem: Vec<u32>,
    asum: Vec<u32>,
}

/// Largest `k` for which `a` is a k-cover: the minimum facet sum.
pub fn cover_order(view: &(impl FacetView + ?Sized), a: &[u32]) -> Result<u32, CoverError> {
    let inc = Incidence::new(view);
    inc.check_len(a)?;
    Ok(inc.order(a))
}

pub fn is_k_cover(view: &(impl FacetView + ?Sized), a: &[u32], k: u32) -> Result<bool, CoverError> {
    Ok(cover_order(view, a)? >= k)
}

/// Some decomposition of the k-cover `a`, or `None` when it is
/// indecomposable.
///
/// Candidates `b` are scanned in descending lexicographic order from `a`
/// (excluding `a` and `0`); the first `b` with
/// `order(b) + order(a - b) ≥ k` wins, with `i = min(order(b), k)` and
/// `j = k - i`.
pub fn decompose(
    view: &(impl FacetView + ?Sized),
    a: &[u32],
    k: u32,
) -> Result<Option<Decomposition>, CoverError> {
    let inc = Incidence::new(view);
    inc.check_len(a)?;
    let order = inc.order(a);
    if order < k {
        return Err(CoverError::NotAKCover { order, k });
    }
    Ok(decompose_with(&inc, a, k))
}

fn decompose_with(inc: &Incidence, a: &[u32], k: u32) -> Option<Decomposition> {
    let b = inc.split(a, k)?;
    let c: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let i = inc.order(&b).min(k);
    Some(Decomposition {
        b: CoverVector::new(b, i),
        c: CoverVector::new(c, k - i),
    })
}

/// Every indecomposable k-cover, sorted ascending.
///
/// For `k = 0` these are the unit vectors: anything heavier peels off a
/// unit. For `k ≥ 1` an indecomposable k-cover is a minimal k-cover (a
/// removable unit would be a nonzero 0-cover summand), so the search only
/// visits vectors with entries at most `k` whose every support vertex lies
/// in a facet summing to exactly `k`. Survivors are filtered through
/// [`decompose`].
pub fn indecomposable_covers(view: &(impl FacetView + ?Sized), k: u32) -> Vec<CoverVector> {
    let inc = Incidence::new(view);
    let mut out: Vec<CoverVector> = if k == 0 {
        (0..inc.n)
            .map(|i| {
                let mut a = vec![0; inc.n];
                a[i] = 1;
                a
            })
            .filter(|a| decompose_with(&inc, a, 0).is_none())
            .map(|a| CoverVector::new(a, 0))
            .collect()
    } else {
        let en = Enumerator { inc: &inc, k };
        let depth = inc.n.min(3);
        let mut prefixes = Vec::new();
        en.prefixes(0, depth, &mut en.fresh(), &mut prefixes);
        prefixes
            .into_par_iter()
            .flat_map_iter(|mut st| {
                let mut found = Vec::new();
                en.descend(depth, &mut st, &mut found);
                found
            })
            .map(|a| CoverVector::new(a, k))
            .collect()
    };
    out.sort();
    out
}

struct Enumerator<'a> {
    inc: &'a Incidence,
    k: u32,
}

#[derive(Clone)]
struct EnumState {
    a: Vec<u32>,
    sums: Vec<u32>,
}

impl Enumerator<'_> {
    fn fresh(&self) -> EnumState {
        EnumState {
            a: vec![0; self.inc.n],
            sums: vec![0; self.inc.facets.len()],
        }
    }

    /// Sets position `idx` and checks everything decided by it: facets that
    /// complete here must reach `k`, and settled support vertices must lie
    /// in a tight facet. Leaves `st` updated either way.
    fn assign(&self, idx: usize, val: u32, st: &mut EnumState) -> bool {
        let old = st.a[idx];
        for &fi in &self.inc.of_vertex[idx] {
            st.sums[fi] = st.sums[fi] - old + val;
        }
        st.a[idx] = val;
        if self.inc.completes_at[idx]
            .iter()
            .any(|&fi| st.sums[fi] < self.k)
        {
            return false;
        }
        self.inc.settles_at[idx].iter().all(|&v| {
            st.a[v] == 0
                || self.inc.of_vertex[v]
                    .iter()
                    .any(|&fi| st.sums[fi] == self.k)
        })
    }

    fn prefixes(&self, idx: usize, depth: usize, st: &mut EnumState, out: &mut Vec<EnumState>) {
        if idx == depth {
            out.push(st.clone());
            return;
        }
        for val in 0..=self.k {
            if self.assign(idx, val, st) {
                self.prefixes(idx + 1, depth, st, out);
            }
        }
        self.assign(idx, 0, st);
    }

    fn descend(&self, idx: usize, st: &mut EnumState, out: &mut Vec<Vec<u32>>) {
        if idx == self.inc.n {
            if decompose_with(self.inc, &st.a, self.k).is_none() {
                out.push(st.a.clone());
            }
            return;
        }
        for val in 0..=self.k {
            if self.assign(idx, val, st) {
                self.descend(idx + 1, st, out);
            }
        }
        self.assign(idx, 0, st);
    }
}

/// Generator degrees found up to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    /// Largest degree `≤ k_max` carrying an indecomposable cover.
    pub d: u32,
    pub k_max: u32,
    /// Number of indecomposable covers per degree `1..=k_max`.
    pub counts: BTreeMap<u32, usize>,
    /// One indecomposable cover per realized degree.
    pub certificates: BTreeMap<u32, CoverVector>,
}

impl DegreeBound {
    /// Degrees above `k_max` were not examined.
    pub fn disclaimer(&self) -> String {
        format!(
            "d = {} within bound k_max = {}; degrees above {} were not explored",
            self.d, self.k_max, self.k_max
        )
    }
}

/// Preferred certificate among indecomposable covers of one degree: least
/// total weight, then lexicographically largest (mass on low labels first).
fn pick_certificate(covers: &[CoverVector]) -> Option<CoverVector> {
    covers
        .iter()
        .min_by(|x, y| x.weight().cmp(&y.weight()).then_with(|| y.a.cmp(&x.a)))
        .cloned()
}

/// Maximal generator degree among degrees `1..=k_max`.
pub fn d_max(view: &(impl FacetView + ?Sized), k_max: u32) -> DegreeBound {
    let mut counts = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    let mut d = 0;
    for k in 1..=k_max {
        let covers = indecomposable_covers(view, k);
        counts.insert(k, covers.len());
        if let Some(c) = pick_certificate(&covers) {
            certificates.insert(k, c);
            d = k;
        }
    }
    DegreeBound {
        d,
        k_max,
        counts,
        certificates,
    }
}

/// Extends a k-cover `c` of `smaller` to `larger = smaller + leaf`.
///
/// The new entries are zero except on the smallest free vertex of the
/// leaf, which receives `max(0, k − Σ_{v ∈ leaf ∩ V(smaller)} c_v)`: the
/// least value that keeps the leaf covered to order `k`. If `c` is
/// indecomposable so is the result, since any split would have to put a
/// nonzero part on the free vertex alone, which leaves the other summand
/// short on the leaf.
pub fn extend_cover_by_leaf(
    smaller: &(impl FacetView + ?Sized),
    larger: &(impl FacetView + ?Sized),
    leaf: FacetId,
    c: &CoverVector,
) -> Result<CoverVector, CoverError> {
    let expected: Vec<FacetId> = {
        let mut ids = smaller.facet_ids().to_vec();
        ids.push(leaf);
        ids.sort_unstable();
        ids
    };
    if smaller.contains_facet(leaf)
        || !std::ptr::eq(smaller.complex(), larger.complex())
        || larger.facet_ids() != expected.as_slice()
    {
        return Err(CoverError::NotAnExtension);
    }
    if !is_leaf(larger, leaf) {
        return Err(CoverError::NotALeaf(leaf));
    }
    let order = cover_order(smaller, &c.a)?;
    if order < c.k {
        return Err(CoverError::NotAKCover { order, k: c.k });
    }
    let old = smaller.universe_mask();
    let leaf_facet = larger.facet(leaf);
    let free = leaf_facet
        .vertices()
        .iter()
        .copied()
        .find(|&v| old & crate::complex::bit(v) == 0)
        .ok_or(CoverError::NoFreeVertex(leaf))?;
    let covered: u32 = leaf_facet
        .vertices()
        .iter()
        .filter_map(|&v| smaller.local_index(v).map(|i| c.a[i]))
        .sum();
    let fill = c.k.saturating_sub(covered);
    let a = larger
        .universe()
        .iter()
        .map(|&v| match smaller.local_index(v) {
            Some(i) => c.a[i],
            None if v == free => fill,
            None => 0,
        })
        .collect();
    Ok(CoverVector::new(a, c.k))
}

/// An indecomposable 2-cover of a quasi-tree built from a special odd
/// cycle.
///
/// The 0/1 indicator of the cycle vertices is a 2-cover of the SMD spanned
/// by the minimal subtree of `tree` around the cycle facets, and it is
/// indecomposable because the cycle is special and odd. The remaining
/// facets are stripped from the full complex as leaves, then re-attached in
/// reverse with [`extend_cover_by_leaf`]. The result is checked with
/// [`decompose`] before it is returned.
pub fn witness_cover_from_cycle(
    complex: &SimplicialComplex,
    tree: &RelationTree,
    cycle: &Cycle,
) -> Result<CoverVector, CoverError> {
    if !is_quasi_tree(complex) {
        return Err(CoverError::NotQuasiTree);
    }
    if tree.nodes() != complex.facet_ids() {
        return Err(CoverError::TreeMismatch);
    }
    if !is_special_odd(complex, cycle) {
        return Err(CoverError::NotSpecialOddCycle);
    }
    let targets: BTreeSet<FacetId> = cycle.facets.iter().copied().collect();
    let core = tree.minimal_subtree(&targets)?;
    let core_ids: BTreeSet<FacetId> = core.nodes().iter().copied().collect();
    let base = complex
        .smd(core_ids.iter().copied())
        .map_err(QuasiForestError::from)?;

    let cycle_mask = cycle.vertex_mask();
    let indicator: Vec<u32> = base
        .universe()
        .iter()
        .map(|&v| u32::from(cycle_mask & crate::complex::bit(v) != 0))
        .collect();
    if cover_order(&base, &indicator)? < 2 {
        return Err(CoverError::VerificationFailed(
            "cycle indicator is not a 2-cover of the minimal subtree".into(),
        ));
    }

    // Strip leaves outside the core until only the core remains.
    let mut current = complex.full_smd();
    let mut stripped = Vec::new();
    while current.facet_count() > base.facet_count() {
        let next = current
            .facet_ids()
            .iter()
            .copied()
            .find(|f| !core_ids.contains(f) && !branches_of(&current, *f).is_empty())
            .ok_or_else(|| {
                CoverError::VerificationFailed("no removable leaf outside the core".into())
            })?;
        current = current.without(next).expect("more facets than the core");
        stripped.push(next);
    }

    let mut cover = CoverVector::new(indicator, 2);
    let mut view = base;
    for &leaf in stripped.iter().rev() {
        let grown = view.with(leaf).map_err(QuasiForestError::from)?;
        cover = extend_cover_by_leaf(&view, &grown, leaf, &cover)?;
        view = grown;
    }

    if !is_k_cover(complex, &cover.a, 2)? {
        return Err(CoverError::VerificationFailed(
            "result is not a 2-cover".into(),
        ));
    }
    if let Some(split) = decompose(complex, &cover.a, 2)? {
        return Err(CoverError::VerificationFailed(format!(
            "result decomposes as {} + {}",
            split.b, split.c
        )));
    }
    Ok(cover)
}
