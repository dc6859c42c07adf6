//! Deciding whether the vertex cover algebra of a quasi-tree is standard
//! graded.
//!
//! For a quasi-tree the algebra is standard graded exactly when the complex
//! has no special odd cycle. When a cycle exists, the witness built by
//! [`witness_cover_from_cycle`] is an indecomposable cover of order 2, so a
//! brute-force search for degree-2 generators is a complete oracle on this
//! class. [`cross_validate`] runs both routes side by side.

use serde::Serialize;
use thiserror::Error;

use crate::complex::{FacetView, SimplicialComplex};
use crate::covers::{indecomposable_covers, witness_cover_from_cycle, CoverError, CoverVector};
use crate::cycles::{find_special_odd_cycle_with_budget, Cycle, CycleError, DEFAULT_BUDGET};
use crate::quasi_forest::{is_quasi_tree, leaf_order, relation_tree, BranchRule, QuasiForestError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradednessError {
    #[error("the complex is not a quasi-tree; use the brute-force verdict instead")]
    NotQuasiTree,
    #[error("k_max must be at least 2, got {0}")]
    BoundTooSmall(u32),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    QuasiForest(#[from] QuasiForestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Criterion,
    BruteForce,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub standard_graded: bool,
    pub cycle_witness: Option<Cycle>,
    pub cover_witness: Option<CoverVector>,
    pub method: Method,
    /// Set when the answer only covers degrees up to this bound.
    pub bound_used: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub budget: u64,
    pub branch_rule: BranchRule,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            branch_rule: BranchRule::Smallest,
        }
    }
}

pub fn is_standard_graded(complex: &SimplicialComplex) -> Result<Verdict, GradednessError> {
    is_standard_graded_with(complex, Options::default())
}

/// Criterion verdict: exact, no degree bound.
pub fn is_standard_graded_with(
    complex: &SimplicialComplex,
    options: Options,
) -> Result<Verdict, GradednessError> {
    if !is_quasi_tree(complex) {
        return Err(GradednessError::NotQuasiTree);
    }
    let Some(cycle) = find_special_odd_cycle_with_budget(complex, options.budget)? else {
        return Ok(Verdict {
            standard_graded: true,
            cycle_witness: None,
            cover_witness: None,
            method: Method::Criterion,
            bound_used: None,
        });
    };
    let order = leaf_order(complex).ok_or(GradednessError::NotQuasiTree)?;
    let tree = relation_tree(complex, &order, options.branch_rule)?;
    let cover = witness_cover_from_cycle(complex, &tree, &cycle)?;
    Ok(Verdict {
        standard_graded: false,
        cycle_witness: Some(cycle),
        cover_witness: Some(cover),
        method: Method::Criterion,
        bound_used: None,
    })
}

/// Looks for an indecomposable cover of some degree `2..=k_max`. Works on
/// any view; a positive answer is only as strong as the bound.
pub fn brute_force_verdict(
    view: &(impl FacetView + ?Sized),
    k_max: u32,
) -> Result<Verdict, GradednessError> {
    if k_max < 2 {
        return Err(GradednessError::BoundTooSmall(k_max));
    }
    let witness = (2..=k_max).find_map(|k| indecomposable_covers(view, k).into_iter().next());
    Ok(Verdict {
        standard_graded: witness.is_none(),
        cycle_witness: None,
        cover_witness: witness,
        method: Method::BruteForce,
        bound_used: Some(k_max),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub criterion: Verdict,
    pub brute_force: Verdict,
    pub agree: bool,
}

/// Everything needed to reproduce a disagreement.
#[derive(Debug, Clone, Serialize)]
pub struct FailureArtifact<'a> {
    pub facets: Vec<Vec<usize>>,
    pub k_max: u32,
    pub criterion: &'a Verdict,
    pub brute_force: &'a Verdict,
}

impl CrossValidation {
    pub fn failure_artifact(&self, complex: &SimplicialComplex) -> Option<FailureArtifact<'_>> {
        (!self.agree).then(|| FailureArtifact {
            facets: complex.facet_lists(),
            k_max: self.brute_force.bound_used.unwrap_or(0),
            criterion: &self.criterion,
            brute_force: &self.brute_force,
        })
    }
}

pub fn cross_validate(
    complex: &SimplicialComplex,
    k_max: u32,
) -> Result<CrossValidation, GradednessError> {
    cross_validate_with(complex, k_max, Options::default())
}

pub fn cross_validate_with(
    complex: &SimplicialComplex,
    k_max: u32,
    options: Options,
) -> Result<CrossValidation, GradednessError> {
    let criterion = is_standard_graded_with(complex, options)?;
    let brute_force = brute_force_verdict(complex, k_max)?;
    let agree = criterion.standard_graded == brute_force.standard_graded;
    Ok(CrossValidation {
        criterion,
        brute_force,
        agree,
    })
}

/// Brute-force verdicts for every SMD of `complex` (all nonempty facet
/// subsets), keyed by facet-id list.
pub fn smd_sweep(
    complex: &SimplicialComplex,
    k_max: u32,
) -> Result<Vec<(Vec<crate::complex::FacetId>, Verdict)>, GradednessError> {
    let ids = complex.facet_ids();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << ids.len()) {
        let chosen: Vec<_> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &id)| id)
            .collect();
        let smd = complex
            .smd(chosen.iter().copied())
            .map_err(QuasiForestError::from)?;
        out.push((chosen, brute_force_verdict(&smd, k_max)?));
    }
    Ok(out)
}
