//! Facet-presented simplicial complexes and their subcomplexes of maximal
//! dimension (SMDs).
//!
//! Vertices are dense labels `1..=n` with `n <= 64`, so every facet doubles as
//! a `u64` bit set (bit `v - 1` for vertex `v`). Facets are sorted
//! lexicographically on their sorted vertex lists before ids are assigned,
//! which makes [`FacetId`]s reproducible regardless of input order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest vertex label supported by the bit-set representation.
pub const MAX_VERTICES: usize = 64;

/// A vertex label, `1..=n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a complex needs at least one facet")]
    NoFacets,
    #[error("facet #{index} is empty")]
    EmptyFacet { index: usize },
    #[error("vertex labels are 1-based; facet #{index} contains 0")]
    ZeroVertex { index: usize },
    #[error("facet #{index} lists vertex {vertex} more than once")]
    RepeatedVertex { index: usize, vertex: Vertex },
    #[error("vertex {vertex} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { vertex: Vertex },
    #[error("duplicate facet {facet:?}")]
    DuplicateFacet { facet: Vec<Vertex> },
    #[error("facet {smaller:?} is contained in facet {larger:?}")]
    AntichainViolation {
        smaller: Vec<Vertex>,
        larger: Vec<Vertex>,
    },
    #[error("vertex {0} lies in no facet")]
    UncoveredVertex(Vertex),
    #[error("unknown facet id {0}")]
    UnknownFacetId(FacetId),
    #[error("an SMD needs at least one facet")]
    EmptySelection,
}

/// Stable identifier of a facet: its position in the canonical facet order.
///
/// Displayed and serialized 1-based (`F1`, `F2`, ...) to line up with
/// vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetId(pub usize);

impl FacetId {
    pub fn index(self) -> usize {
        self.0
    }

    /// 1-based number used in reports.
    pub fn number(self) -> usize {
        self.0 + 1
    }

    pub fn from_number(number: usize) -> Option<Self> {
        number.checked_sub(1).map(FacetId)
    }
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl Serialize for FacetId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.number() as u64)
    }
}

impl<'de> Deserialize<'de> for FacetId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = usize::deserialize(deserializer)?;
        FacetId::from_number(n).ok_or_else(|| serde::de::Error::custom("facet numbers are 1-based"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    vertices: Vec<Vertex>,
    mask: u64,
}

impl Facet {
    fn from_sorted(vertices: Vec<Vertex>) -> Self {
        let mask = vertices.iter().fold(0u64, |m, &v| m | bit(v));
        Facet { vertices, mask }
    }

    /// Sorted vertex labels.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.mask & bit(v) != 0
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Bit of vertex `v` in a facet mask.
#[inline]
pub fn bit(v: Vertex) -> u64 {
    1u64 << (v - 1)
}

/// Vertices of a mask in increasing order.
pub fn mask_vertices(mask: u64) -> impl Iterator<Item = Vertex> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let tz = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(tz + 1)
        }
    })
}

/// A simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Facet>,
    ids: Vec<FacetId>,
    universe: Vec<Vertex>,
}

impl SimplicialComplex {
    /// Validates and canonicalizes a facet list.
    pub fn new<I, F>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let mut sorted = Vec::new();
        for (index, facet) in facets.into_iter().enumerate() {
            let mut vs: Vec<Vertex> = facet.into_iter().collect();
            if vs.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            vs.sort_unstable();
            if vs[0] == 0 {
                return Err(ComplexError::ZeroVertex { index });
            }
            if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex {
                    index,
                    vertex: w[0],
                });
            }
            let top = *vs.last().unwrap();
            if top > MAX_VERTICES {
                return Err(ComplexError::TooManyVertices { vertex: top });
            }
            sorted.push(vs);
        }
        if sorted.is_empty() {
            return Err(ComplexError::NoFacets);
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet {
                facet: w[0].clone(),
            });
        }
        let facets: Vec<Facet> = sorted.into_iter().map(Facet::from_sorted).collect();
        for (i, small) in facets.iter().enumerate() {
            for (j, large) in facets.iter().enumerate() {
                if i != j && small.mask & !large.mask == 0 {
                    return Err(ComplexError::AntichainViolation {
                        smaller: small.vertices.clone(),
                        larger: large.vertices.clone(),
                    });
                }
            }
        }
        let covered = facets.iter().fold(0u64, |m, f| m | f.mask);
        let vertex_count = (MAX_VERTICES - covered.leading_zeros() as usize).max(1);
        if let Some(v) = (1..=vertex_count).find(|&v| covered & bit(v) == 0) {
            return Err(ComplexError::UncoveredVertex(v));
        }
        let ids = (0..facets.len()).map(FacetId).collect();
        Ok(SimplicialComplex {
            vertex_count,
            facets,
            ids,
            universe: (1..=vertex_count).collect(),
        })
    }

    /// Number of vertices `n`; labels run over `1..=n`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Panics on an id that does not belong to this complex; use
    /// [`SimplicialComplex::get_facet`] for untrusted ids.
    pub fn facet(&self, id: FacetId) -> &Facet {
        &self.facets[id.0]
    }

    pub fn get_facet(&self, id: FacetId) -> Result<&Facet, ComplexError> {
        self.facets
            .get(id.0)
            .ok_or(ComplexError::UnknownFacetId(id))
    }

    /// Facet lists in canonical order.
    pub fn facet_lists(&self) -> Vec<Vec<Vertex>> {
        self.facets.iter().map(|f| f.vertices.clone()).collect()
    }

    /// The SMD spanned by `ids`. Duplicates are ignored.
    pub fn smd<I>(&self, ids: I) -> Result<SmdSubcomplex<'_>, ComplexError>
    where
        I: IntoIterator<Item = FacetId>,
    {
        let set: BTreeSet<FacetId> = ids.into_iter().collect();
        if set.is_empty() {
            return Err(ComplexError::EmptySelection);
        }
        if let Some(&bad) = set.iter().find(|id| id.0 >= self.facets.len()) {
            return Err(ComplexError::UnknownFacetId(bad));
        }
        Ok(SmdSubcomplex::from_sorted(self, set.into_iter().collect()))
    }

    pub fn full_smd(&self) -> SmdSubcomplex<'_> {
        SmdSubcomplex::from_sorted(self, self.ids.clone())
    }
}

/// A subcomplex of maximal dimension: a nonempty subset of the parent's
/// facets, with the vertex universe restricted to the vertices they cover.
/// Vertex labels are those of the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmdSubcomplex<'a> {
    parent: &'a SimplicialComplex,
    facet_ids: Vec<FacetId>,
    universe: Vec<Vertex>,
}

impl<'a> SmdSubcomplex<'a> {
    fn from_sorted(parent: &'a SimplicialComplex, facet_ids: Vec<FacetId>) -> Self {
        let mask = facet_ids
            .iter()
            .fold(0u64, |m, &id| m | parent.facet(id).mask);
        SmdSubcomplex {
            parent,
            facet_ids,
            universe: mask_vertices(mask).collect(),
        }
    }

    pub fn parent(&self) -> &'a SimplicialComplex {
        self.parent
    }

    /// This SMD with `id` removed; `None` if that would leave no facets or
    /// `id` is not present.
    pub fn without(&self, id: FacetId) -> Option<SmdSubcomplex<'a>> {
        if !self.contains_facet(id) || self.facet_ids.len() == 1 {
            return None;
        }
        let ids = self
            .facet_ids
            .iter()
            .copied()
            .filter(|&f| f != id)
            .collect();
        Some(SmdSubcomplex::from_sorted(self.parent, ids))
    }

    /// This SMD with the parent facet `id` added.
    pub fn with(&self, id: FacetId) -> Result<SmdSubcomplex<'a>, ComplexError> {
        self.parent.get_facet(id)?;
        let mut ids = self.facet_ids.clone();
        if let Err(pos) = ids.binary_search(&id) {
            ids.insert(pos, id);
        }
        Ok(SmdSubcomplex::from_sorted(self.parent, ids))
    }
}

/// Read access shared by complexes and SMDs. Every algorithm in the crate is
/// written against this trait so that it applies to both.
pub trait FacetView {
    /// The complex the facet ids refer to.
    fn complex(&self) -> &SimplicialComplex;

    /// Facet ids of this view, sorted ascending.
    fn facet_ids(&self) -> &[FacetId];

    /// Vertices covered by this view, sorted ascending.
    fn universe(&self) -> &[Vertex];

    fn facet(&self, id: FacetId) -> &Facet {
        self.complex().facet(id)
    }

    fn contains_facet(&self, id: FacetId) -> bool {
        self.facet_ids().binary_search(&id).is_ok()
    }

    fn universe_mask(&self) -> u64 {
        self.universe().iter().fold(0u64, |m, &v| m | bit(v))
    }

    fn facet_count(&self) -> usize {
        self.facet_ids().len()
    }

    /// Maximal facet cardinality minus one.
    fn dimension(&self) -> usize {
        self.facet_ids()
            .iter()
            .map(|&id| self.facet(id).len())
            .max()
            .unwrap_or(1)
            - 1
    }

    /// Whether the facet intersection graph is connected.
    fn is_connected(&self) -> bool {
        let ids = self.facet_ids();
        let Some(&first) = ids.first() else {
            return true;
        };
        let mut reached = self.facet(first).mask();
        let mut seen = vec![false; ids.len()];
        seen[0] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for (i, &id) in ids.iter().enumerate() {
                if !seen[i] && self.facet(id).mask() & reached != 0 {
                    seen[i] = true;
                    reached |= self.facet(id).mask();
                    grew = true;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Position of `v` in [`FacetView::universe`].
    fn local_index(&self, v: Vertex) -> Option<usize> {
        self.universe().binary_search(&v).ok()
    }
}

impl FacetView for SimplicialComplex {
    fn complex(&self) -> &SimplicialComplex {
        self
    }

    fn facet_ids(&self) -> &[FacetId] {
        &self.ids
    }

    fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    fn contains_facet(&self, id: FacetId) -> bool {
        id.0 < self.facets.len()
    }

    fn local_index(&self, v: Vertex) -> Option<usize> {
        (1..=self.vertex_count).contains(&v).then(|| v - 1)
    }
}

impl FacetView for SmdSubcomplex<'_> {
    fn complex(&self) -> &SimplicialComplex {
        self.parent
    }

    fn facet_ids(&self) -> &[FacetId] {
        &self.facet_ids
    }

    fn universe(&self) -> &[Vertex] {
        &self.universe
    }
}
