//! Leaves, leaf orders and relation trees.
//!
//! A facet `F` of a view is a leaf when a single other facet `G` (a branch)
//! absorbs every intersection: `H ∩ F ⊆ G ∩ F` for all facets `H ≠ F`. With
//! bit-set facets this is `U ⊆ G` where `U` is the union of all `H ∩ F`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{mask_vertices, ComplexError, FacetId, FacetView, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasiForestError {
    #[error("order is not a permutation of the facets")]
    NotAPermutation,
    #[error("order is not a leaf order")]
    InvalidLeafOrder,
    #[error("{0} is not a node of the relation tree")]
    UnknownNode(FacetId),
    #[error("the target set is empty")]
    EmptyTargets,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A leaf together with every admissible branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub facet: FacetId,
    pub branches: Vec<FacetId>,
}

/// All branches of `f` inside `view`, ascending. Empty when `f` is not a
/// leaf. A single-facet view is its own branch.
pub fn branches_of(view: &(impl FacetView + ?Sized), f: FacetId) -> Vec<FacetId> {
    let ids = view.facet_ids();
    if ids == [f] {
        return vec![f];
    }
    let fm = view.facet(f).mask();
    let absorbed = ids
        .iter()
        .filter(|&&h| h != f)
        .fold(0u64, |u, &h| u | (view.facet(h).mask() & fm));
    ids.iter()
        .copied()
        .filter(|&g| g != f && absorbed & !view.facet(g).mask() == 0)
        .collect()
}

pub fn is_leaf(view: &(impl FacetView + ?Sized), f: FacetId) -> bool {
    view.contains_facet(f) && !branches_of(view, f).is_empty()
}

/// First leaf in facet-id order, with all of its branches.
pub fn find_leaf(view: &(impl FacetView + ?Sized)) -> Option<Leaf> {
    view.facet_ids().iter().find_map(|&f| {
        let branches = branches_of(view, f);
        (!branches.is_empty()).then_some(Leaf { facet: f, branches })
    })
}

/// Vertices of `f` that lie in no other facet of `view`.
pub fn free_vertices(
    view: &(impl FacetView + ?Sized),
    f: FacetId,
) -> Result<Vec<Vertex>, QuasiForestError> {
    if !view.contains_facet(f) {
        return Err(ComplexError::UnknownFacetId(f).into());
    }
    let others = view
        .facet_ids()
        .iter()
        .filter(|&&h| h != f)
        .fold(0u64, |u, &h| u | view.facet(h).mask());
    Ok(mask_vertices(view.facet(f).mask() & !others).collect())
}

/// A permutation of a view's facets in which every facet is a leaf of the
/// SMD spanned by itself and its predecessors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LeafOrder(Vec<FacetId>);

impl LeafOrder {
    pub fn new(
        view: &(impl FacetView + ?Sized),
        order: Vec<FacetId>,
    ) -> Result<Self, QuasiForestError> {
        if validate_leaf_order(view, &order)? {
            Ok(LeafOrder(order))
        } else {
            Err(QuasiForestError::InvalidLeafOrder)
        }
    }

    pub fn as_slice(&self) -> &[FacetId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<FacetId> {
        self.0
    }
}

impl std::ops::Deref for LeafOrder {
    type Target = [FacetId];

    fn deref(&self) -> &[FacetId] {
        &self.0
    }
}

/// Greedy recognition: strip leaves until one facet is left, then reverse.
/// `None` means some intermediate SMD had no leaf.
pub fn leaf_order(view: &(impl FacetView + ?Sized)) -> Option<LeafOrder> {
    let complex = view.complex();
    let mut current = complex.smd(view.facet_ids().iter().copied()).ok()?;
    let mut removed = Vec::with_capacity(view.facet_count());
    loop {
        let leaf = find_leaf(&current)?;
        removed.push(leaf.facet);
        match current.without(leaf.facet) {
            Some(rest) => current = rest,
            None => break,
        }
    }
    removed.reverse();
    Some(LeafOrder(removed))
}

pub fn validate_leaf_order(
    view: &(impl FacetView + ?Sized),
    order: &[FacetId],
) -> Result<bool, QuasiForestError> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != view.facet_ids() {
        return Err(QuasiForestError::NotAPermutation);
    }
    let complex = view.complex();
    for i in 1..order.len() {
        let prefix = complex.smd(order[..=i].iter().copied())?;
        if !is_leaf(&prefix, order[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasi_forest(view: &(impl FacetView + ?Sized)) -> bool {
    leaf_order(view).is_some()
}

pub fn is_quasi_tree(view: &(impl FacetView + ?Sized)) -> bool {
    view.is_connected() && is_quasi_forest(view)
}

/// How a relation tree picks among several admissible branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchRule {
    #[default]
    Smallest,
    Largest,
    /// Uniform choice driven by a ChaCha8 stream seeded with the value.
    Seeded(u64),
}

/// Rooted tree on facets with an explicit branch map. The root is its own
/// branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationTree {
    nodes: Vec<FacetId>,
    branch: BTreeMap<FacetId, FacetId>,
    root: FacetId,
}

/// Builds a relation tree: the last facet of the order is joined to one of
/// its branches in the SMD of the preceding facets, then removed, and so on.
pub fn relation_tree(
    view: &(impl FacetView + ?Sized),
    order: &[FacetId],
    rule: BranchRule,
) -> Result<RelationTree, QuasiForestError> {
    if !validate_leaf_order(view, order)? {
        return Err(QuasiForestError::InvalidLeafOrder);
    }
    let complex = view.complex();
    let mut rng = match rule {
        BranchRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let root = order[0];
    let mut branch = BTreeMap::new();
    branch.insert(root, root);
    for i in (1..order.len()).rev() {
        let prefix = complex.smd(order[..=i].iter().copied())?;
        let candidates = branches_of(&prefix, order[i]);
        let chosen = match rule {
            BranchRule::Smallest => candidates[0],
            BranchRule::Largest => *candidates.last().unwrap(),
            BranchRule::Seeded(_) => *candidates.choose(rng.as_mut().unwrap()).unwrap(),
        };
        branch.insert(order[i], chosen);
    }
    let mut nodes = order.to_vec();
    nodes.sort_unstable();
    Ok(RelationTree {
        nodes,
        branch,
        root,
    })
}

impl RelationTree {
    /// Nodes in ascending id order.
    pub fn nodes(&self) -> &[FacetId] {
        &self.nodes
    }

    pub fn root(&self) -> FacetId {
        self.root
    }

    pub fn contains(&self, f: FacetId) -> bool {
        self.branch.contains_key(&f)
    }

    pub fn branch(&self, f: FacetId) -> Result<FacetId, QuasiForestError> {
        self.branch
            .get(&f)
            .copied()
            .ok_or(QuasiForestError::UnknownNode(f))
    }

    /// Edges as `(child, branch)` pairs, ordered by child.
    pub fn edges(&self) -> Vec<(FacetId, FacetId)> {
        self.branch
            .iter()
            .filter(|(c, b)| c != b)
            .map(|(&c, &b)| (c, b))
            .collect()
    }

    pub fn neighbors(&self, f: FacetId) -> Vec<FacetId> {
        let mut out: Vec<FacetId> = self
            .edges()
            .into_iter()
            .filter_map(|(c, b)| {
                if c == f {
                    Some(b)
                } else if b == f {
                    Some(c)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, f: FacetId) -> usize {
        self.neighbors(f).len()
    }

    /// Whether the edge set forms a spanning tree of the nodes.
    pub fn is_tree(&self) -> bool {
        let edges = self.edges();
        if edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut seen = BTreeSet::from([self.nodes[0]]);
        let mut stack = vec![self.nodes[0]];
        while let Some(f) = stack.pop() {
            for g in self.neighbors(f) {
                if seen.insert(g) {
                    stack.push(g);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    /// `g ≤ f`: following branches from `f` reaches `g`. Reflexive.
    pub fn leq(&self, g: FacetId, f: FacetId) -> Result<bool, QuasiForestError> {
        self.branch(g)?;
        let mut cur = f;
        loop {
            if cur == g {
                return Ok(true);
            }
            let next = self.branch(cur)?;
            if next == cur {
                return Ok(false);
            }
            cur = next;
        }
    }

    /// The smallest subtree containing `targets`, obtained by pruning
    /// non-target nodes of degree one. Its root is the surviving node closest
    /// to the original root.
    pub fn minimal_subtree(
        &self,
        targets: &BTreeSet<FacetId>,
    ) -> Result<RelationTree, QuasiForestError> {
        if targets.is_empty() {
            return Err(QuasiForestError::EmptyTargets);
        }
        if let Some(&bad) = targets.iter().find(|t| !self.contains(**t)) {
            return Err(QuasiForestError::UnknownNode(bad));
        }
        let mut alive: BTreeSet<FacetId> = self.nodes.iter().copied().collect();
        let mut degree: BTreeMap<FacetId, usize> =
            self.nodes.iter().map(|&f| (f, self.degree(f))).collect();
        loop {
            let prunable: Vec<FacetId> = alive
                .iter()
                .copied()
                .filter(|f| !targets.contains(f) && degree[f] <= 1)
                .collect();
            if prunable.is_empty() {
                break;
            }
            for f in prunable {
                if !alive.contains(&f) || degree[&f] > 1 || alive.len() == 1 {
                    continue;
                }
                alive.remove(&f);
                for g in self.neighbors(f) {
                    if alive.contains(&g) {
                        *degree.get_mut(&g).unwrap() -= 1;
                    }
                }
            }
        }
        let root = *alive
            .iter()
            .find(|f| {
                let b = self.branch[*f];
                b == **f || !alive.contains(&b)
            })
            .expect("a connected subtree has a top node");
        let branch = alive
            .iter()
            .map(|&f| (f, if f == root { f } else { self.branch[&f] }))
            .collect();
        Ok(RelationTree {
            nodes: alive.into_iter().collect(),
            branch,
            root,
        })
    }

    /// Graphviz rendering. Nodes are labelled with their vertex sets and
    /// edges point from a facet to its branch.
    pub fn to_dot(&self, view: &(impl FacetView + ?Sized)) -> String {
        let mut out = String::from("digraph relation_tree {\n");
        for &f in &self.nodes {
            let facet = view.facet(f);
            let _ = write!(out, "  {f} [label=\"{f}: {facet}\"");
            if f == self.root {
                out.push_str(", shape=doublecircle");
            }
            out.push_str("];\n");
        }
        for (c, b) in self.edges() {
            let _ = writeln!(out, "  {c} -> {b} [label=\"br\"];");
        }
        out.push_str("}\n");
        out
    }
}
