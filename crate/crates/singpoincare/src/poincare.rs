//! A'Campo-type product formulas for Poincaré series.
//!
//! Three routes produce exact factor forms:
//! - [`poincare_from_graph`]: the product over exceptional components
//!   `prod (1 - t^{k_sigma})^{-chi(E_sigma^o)}` for a set of ideals given by
//!   multiplicity vectors on a resolution graph,
//! - [`alexander_from_strata`]: the same product assembled from strata: all
//!   components sharing a multiplicity vector `k` contribute a single factor
//!   with exponent `-chi(S_k)`. Canonicalization makes the two routes agree
//!   identically,
//! - [`mixed_poincare`]: the mixed divisorial/curve filtration, whose factor
//!   keys are read off the linking matrix `M = -E^{-1}` and whose Euler
//!   characteristics only discount arrows of the chosen curves.
//!
//! Identifying all variables yields the monodromy zeta function; for one
//! index the Alexander polynomial carries an extra factor `(1 - t)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factor::FactorForm;
use crate::graph::{CheckedGraph, EulerData, IdealSpec};
use crate::rational::rat_to_u64;
use crate::resolve::ResolvedCurve;
use crate::series::Monomial;

/// `prod_sigma (1 - t^{k_sigma})^{-chi(E_sigma^o)}` over the components of a
/// validated graph. Components with zero Euler characteristic or an all-zero
/// multiplicity vector contribute nothing.
pub fn poincare_from_graph(
    g: &CheckedGraph,
    euler: &EulerData,
    ideals: &[IdealSpec],
) -> Result<FactorForm> {
    let n = g.graph().components.len();
    for spec in ideals {
        if spec.k.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "ideal `{}` has {} multiplicities for {} components",
                spec.name,
                spec.k.len(),
                n
            )));
        }
    }
    let mut form = FactorForm::one(ideals.len());
    for sigma in 0..n {
        let chi = euler.chi[sigma];
        if chi == 0 {
            continue;
        }
        let k = Monomial(ideals.iter().map(|spec| spec.k[sigma]).collect());
        if k.is_zero() {
            continue;
        }
        form.push(k, None, -chi)?;
    }
    Ok(form)
}

/// The strata route: group components by multiplicity vector, sum their Euler
/// characteristics, and emit one factor `(1 - t^k)^{-chi(S_k)}` per stratum.
pub fn alexander_from_strata(
    g: &CheckedGraph,
    euler: &EulerData,
    ideals: &[IdealSpec],
) -> Result<FactorForm> {
    let n = g.graph().components.len();
    for spec in ideals {
        if spec.k.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "ideal `{}` has {} multiplicities for {} components",
                spec.name,
                spec.k.len(),
                n
            )));
        }
    }
    let mut strata: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
    for sigma in 0..n {
        let k: Vec<u64> = ideals.iter().map(|spec| spec.k[sigma]).collect();
        if k.iter().all(|&x| x == 0) {
            continue;
        }
        *strata.entry(k).or_insert(0) += euler.chi[sigma];
    }
    let mut form = FactorForm::one(ideals.len());
    for (k, chi) in strata {
        if chi == 0 {
            continue;
        }
        form.push(Monomial(k), None, -chi)?;
    }
    Ok(form)
}

/// Mixed filtration by `r'` chosen divisorial valuations and `r''` chosen
/// curve valuations on an embedded resolution of the branches.
///
/// The factor of component sigma has key
/// `(m_{sigma delta})_{delta chosen} x (m_{sigma alpha_j})_{j chosen}` where
/// `alpha_j` is the component met by the strict transform of branch j, and
/// exponent `-chi(E_sigma^o)` with arrows of unchosen branches not counted
/// (their strict transforms do not puncture the smooth part of the chosen
/// configuration). Computing on a resolution larger than the minimal one for
/// the chosen set does not change the product: surplus components either get
/// zero Euler characteristic or factors forced by the linking matrix.
pub fn mixed_poincare(
    rc: &ResolvedCurve,
    chosen_components: &[String],
    chosen_branches: &[String],
) -> Result<FactorForm> {
    let r1 = chosen_components.len();
    let r2 = chosen_branches.len();
    if r1 + r2 == 0 {
        return Err(Error::InvalidInput("empty filtration".into()));
    }
    let comp_idx: Vec<usize> = chosen_components
        .iter()
        .map(|id| rc.graph.component_index(id))
        .collect::<Result<_>>()?;
    let arrow_idx: Vec<usize> = chosen_branches
        .iter()
        .map(|b| rc.arrow_component(b))
        .collect::<Result<_>>()?;

    let checked = rc
        .graph
        .clone()
        .validate(crate::graph::GraphMode::PlaneCurve)?;
    let ld = checked.linking_data()?;

    let n = rc.graph.components.len();
    // chi relative to the chosen curve set
    let mut chi = vec![2i64; n];
    for &(a, b) in &rc.graph.edges {
        chi[a] -= 1;
        chi[b] -= 1;
    }
    for arrow in &rc.graph.arrows {
        if chosen_branches.contains(&arrow.label) {
            chi[arrow.component] -= 1;
        }
    }

    let entry = |sigma: usize, delta: usize| -> Result<u64> {
        rat_to_u64(ld.m.get(sigma, delta)).ok_or_else(|| {
            Error::InvalidInput(format!(
                "linking matrix entry ({sigma},{delta}) is not a nonnegative integer"
            ))
        })
    };

    let mut form = FactorForm::one(r1 + r2);
    for sigma in 0..n {
        if chi[sigma] == 0 {
            continue;
        }
        let mut key = Vec::with_capacity(r1 + r2);
        for &delta in &comp_idx {
            key.push(entry(sigma, delta)?);
        }
        for &alpha in &arrow_idx {
            key.push(entry(sigma, alpha)?);
        }
        let key = Monomial(key);
        if key.is_zero() {
            continue;
        }
        form.push(key, None, -chi[sigma])?;
    }
    Ok(form)
}

/// Zeta function and Alexander polynomial specializations of a Poincaré
/// factor form in `r` variables.
#[derive(Clone, Debug)]
pub struct ZetaAlexander {
    /// One-variable specialization (all variables identified).
    pub zeta: FactorForm,
    /// For r = 1 the zeta function times `(1 - t)`; for r > 1 the series
    /// itself, unchanged.
    pub alexander: FactorForm,
}

pub fn zeta_and_alexander(p: &FactorForm) -> ZetaAlexander {
    let zeta = p.identify_variables();
    let alexander = if p.nvars() == 1 {
        let mut a = zeta.clone();
        a.push(Monomial(vec![1]), None, 1)
            .expect("appending (1 - t) cannot fail");
        a
    } else {
        p.clone()
    };
    ZetaAlexander { zeta, alexander }
}
