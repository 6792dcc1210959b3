//! Hopf formulae `Δp = ([P] ∩ K[p]) / [p]₁` and `ΔₙP = ([Pₙ] ∩ ⋂ K[pᵢ]) / [P]ₙ`.

use std::sync::Arc;

use crate::birkhoff::BirkhoffDatum;
use crate::category::Groups;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::higher::{bracket_from_kernels, bracket_n_explicit, rho_bracket};
use crate::hom::{quotient, GroupHom};
use crate::homology::{abelian_invariants, AbelianInvariants};
use crate::iso::are_isomorphic;

#[derive(Debug, Clone)]
pub struct HopfReport {
    pub numerator: Subgroup,
    pub denominator: Subgroup,
    pub quotient: Arc<FinGroup>,
    /// `numerator → quotient`, on the numerator viewed as a group.
    pub projection: GroupHom,
    /// The numerator as a group, included into the top vertex.
    pub numerator_inclusion: GroupHom,
    pub abelian_invariants: Option<AbelianInvariants>,
    /// Every vertex other than the base is trivial, the only way a finite
    /// cube can be a projective presentation.
    pub presentation_conditions_met: bool,
}

fn report(numerator: Subgroup, denominator: Subgroup, presentation: bool) -> Result<HopfReport> {
    if !denominator.is_subset_of(&numerator) {
        return Err(Error::AgreementFailure(
            "Hopf denominator is not contained in the numerator".into(),
        ));
    }
    let (num_group, inclusion) = numerator.to_group();
    let inner = inclusion.preimage(&denominator)?;
    let q = quotient(&inner)?;
    let abelian_invariants = if q.group.is_abelian() {
        Some(abelian_invariants(&q.group)?)
    } else {
        None
    };
    debug_assert_eq!(num_group.order(), numerator.order());
    Ok(HopfReport {
        numerator,
        denominator,
        quotient: q.group,
        projection: q.projection,
        numerator_inclusion: inclusion,
        abelian_invariants,
        presentation_conditions_met: presentation,
    })
}

/// `Δp` for a surjection `p: P → A`.
pub fn hopf_delta(p: &GroupHom, datum: BirkhoffDatum) -> Result<HopfReport> {
    if !p.is_surjective() {
        return Err(Error::NotSurjective(format!("{} -> {}", p.domain().label(), p.codomain().label())));
    }
    let numerator = datum.radical(p.domain()).intersection(&p.kernel())?;
    let denominator = datum.bracket1(p)?;
    report(numerator, denominator, p.domain().is_trivial())
}

/// `ΔₙP` for the `Ab` datum.
pub fn hopf_delta_n(cube: &Cube<Groups>, datum: BirkhoffDatum) -> Result<HopfReport> {
    let denominator = bracket_n_explicit(cube, datum)?;
    let mut numerator = datum.radical(cube.top());
    for k in cube.top_kernels() {
        numerator = numerator.intersection(&k)?;
    }
    let presentation = (1..=cube.full()).all(|s| cube.vertex(s).is_trivial());
    report(numerator, denominator, presentation)
}

/// `Δp` as the kernel of the comparison `I₁p → Tp` from the centralization to
/// the trivialization, checked isomorphic to the quotient of [`hopf_delta`].
pub fn hopf_via_trivialization(p: &GroupHom, datum: BirkhoffDatum) -> Result<Arc<FinGroup>> {
    let t = datum.trivialize(p)?;
    let (kernel, _) = t.comparison.kernel().to_group();
    let direct = hopf_delta(p, datum)?;
    if !are_isomorphic(&kernel, &direct.quotient)? {
        return Err(Error::AgreementFailure(format!(
            "comparison kernel has order {}, Hopf quotient has order {}",
            kernel.order(),
            direct.quotient.order()
        )));
    }
    Ok(kernel)
}

/// Both sides of `ι¹ΔₙP = Δₙ₋₁(ρᵢP)` at the top vertex, with the side condition
/// `[Pₙ] ∩ K[pᵢ] = [pᵢ]₁` that makes them agree for presentations.
#[derive(Debug, Clone)]
pub struct RhoReduction {
    pub direction: usize,
    /// `[Pₙ, Pₙ] ∩ ⋂ K[pⱼ]`
    pub lhs_numerator: Subgroup,
    /// `[K[pᵢ], Pₙ] ∩ ⋂_{j≠i} K[pⱼ]`, the top of the arrow-category numerator.
    pub rhs_numerator: Subgroup,
    pub lhs_denominator: Subgroup,
    /// `[ρᵢP]ₙ₋₁` at the top, computed in the arrow category for squares.
    pub rhs_denominator: Subgroup,
    pub identity_holds: bool,
    pub side_condition_holds: bool,
}

/// Diagnostic only: finite cubes are not presentations, so either outcome is data.
pub fn rho_reduction_check(cube: &Cube<Groups>, i: usize) -> Result<RhoReduction> {
    let n = cube.dim();
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("need dimension at least 2, got {n}")));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let top = cube.top();
    let whole = Subgroup::whole(top);
    let kernels = cube.top_kernels();
    let lhs_denominator = bracket_n_explicit(cube, BirkhoffDatum::Ab)?;
    let rhs_denominator = if n == 2 {
        let (t, bottom) = rho_bracket(cube, BirkhoffDatum::Ab, i)?;
        if !bottom.is_trivial() {
            return Err(Error::NotIotaShaped("{}".into()));
        }
        t
    } else {
        bracket_from_kernels(top, &kernels)?
    };
    let mut lhs_numerator = Subgroup::derived(top);
    let mut rhs_numerator = kernels[i].commutator(&whole)?;
    for (j, k) in kernels.iter().enumerate() {
        lhs_numerator = lhs_numerator.intersection(k)?;
        if j != i {
            rhs_numerator = rhs_numerator.intersection(k)?;
        }
    }
    let side = Subgroup::derived(top).intersection(&kernels[i])? == kernels[i].commutator(&whole)?;
    let identity_holds = lhs_numerator == rhs_numerator && lhs_denominator == rhs_denominator;
    Ok(RhoReduction {
        direction: i,
        lhs_numerator,
        rhs_numerator,
        lhs_denominator,
        rhs_denominator,
        identity_holds,
        side_condition_holds: side,
    })
}
