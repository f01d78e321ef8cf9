//! Ideals presented as products of divisorial and curve ideals.
//!
//! An [`IdealPresentation`] writes an integrally closed ideal as
//! `prod I_{E_sigma}^{n_sigma} * prod I_{C_j}^{m_j}`. Over the plane the
//! exponents are nonnegative integers and the Poincaré series of the ideal
//! (or of a set of ideals) is obtained from the mixed divisorial/curve base
//! series by the monomial substitution `t_sigma -> prod_i t_i^{n_sigma^i}`,
//! `T_j -> prod_i t_i^{m_j^i}`. On a rational surface singularity exponents
//! may be rational subject to the integrality condition
//! `sum_sigma (E_sigma . E_delta) r_sigma` integral for all delta.

use std::collections::BTreeMap;

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::FactorForm;
use crate::graph::{CheckedGraph, LinkingData};
use crate::poincare::mixed_poincare;
use crate::rational::{rat_to_u64, Rat};
use crate::resolve::ResolvedCurve;
use crate::series::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub name: String,
    /// Exponent per component id; integral over the plane, rational on a
    /// rational singularity.
    pub divisorial: BTreeMap<String, Rat>,
    /// Exponent per branch name.
    pub curves: BTreeMap<String, u64>,
}

impl IdealPresentation {
    pub fn is_trivial(&self) -> bool {
        self.divisorial.values().all(|r| r.is_zero()) && self.curves.values().all(|&m| m == 0)
    }

    /// Plane mode: divisorial exponents must be nonnegative integers.
    pub fn validate_plane(&self) -> Result<()> {
        for (id, r) in &self.divisorial {
            if !r.is_integer() || r.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "ideal `{}`: exponent of {} must be a nonnegative integer over the plane, got {}",
                    self.name,
                    id,
                    crate::rational::render_rat(r)
                )));
            }
        }
        Ok(())
    }

    /// Rational-singularity mode: exponents are nonnegative rationals with
    /// `sum_sigma (E . E)_{delta sigma} r_sigma` integral for every delta.
    pub fn validate_rational_singularity(&self, g: &CheckedGraph) -> Result<()> {
        let n = g.graph().components.len();
        let mut r = vec![Rat::zero(); n];
        for (id, exp) in &self.divisorial {
            if exp.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "ideal `{}`: negative exponent on {}",
                    self.name, id
                )));
            }
            r[g.graph().component_index(id)?] = exp.clone();
        }
        let e = g.graph().intersection_matrix();
        for delta in 0..n {
            let mut acc = Rat::zero();
            for sigma in 0..n {
                acc += Rat::from_integer(e.get(delta, sigma).clone()) * &r[sigma];
            }
            if !acc.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "ideal `{}`: intersection pairing with component {} is {}, not an integer",
                    self.name,
                    g.graph().components[delta].id,
                    crate::rational::render_rat(&acc)
                )));
            }
        }
        Ok(())
    }
}

/// Image of a multiplicity vector under the linking matrix: `M * k`.
/// Over the plane the result is integral; on a rational singularity the
/// entries may be proper fractions.
pub fn divisorial_exponents(ld: &LinkingData, k: &[u64]) -> Result<Vec<Rat>> {
    if k.len() != ld.m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against a {}-component linking matrix",
            k.len(),
            ld.m.cols()
        )));
    }
    let v: Vec<Rat> = k
        .iter()
        .map(|&x| Rat::from_integer(BigInt::from(x)))
        .collect();
    Ok(ld.m.mul_vec(&v))
}

/// The mixed divisorial/curve base series an ideal presentation substitutes
/// into: all components of the resolution, plus the named curves, in a fixed
/// order.
#[derive(Clone, Debug)]
pub struct MixedBase {
    pub form: FactorForm,
    pub components: Vec<String>,
    pub curves: Vec<String>,
}

/// Build the base for a set of curves on a resolved configuration.
pub fn mixed_base(rc: &ResolvedCurve, curves: &[String]) -> Result<MixedBase> {
    let components = rc.graph.component_ids();
    let form = mixed_poincare(rc, &components, curves)?;
    Ok(MixedBase {
        form,
        components,
        curves: curves.to_vec(),
    })
}

/// Poincaré series of a single ideal over the plane.
pub fn poincare_of_ideal(base: &MixedBase, ip: &IdealPresentation) -> Result<FactorForm> {
    poincare_of_ideal_set(base, std::slice::from_ref(ip))
}

/// Poincaré series of a set of `r` ideals: substitute
/// `t_sigma -> prod_i t_i^{n_sigma^i}`, `T_j -> prod_i t_i^{m_j^i}` into the
/// base. Every curve of the base must carry a positive exponent in at least
/// one ideal; a curve with all-zero exponents is rejected. A fully trivial
/// set degenerates to the constant series 1.
pub fn poincare_of_ideal_set(base: &MixedBase, ideals: &[IdealPresentation]) -> Result<FactorForm> {
    let r = ideals.len();
    if r == 0 {
        return Err(Error::InvalidInput("no ideals given".into()));
    }
    for ip in ideals {
        ip.validate_plane()?;
        for id in ip.divisorial.keys() {
            if !base.components.contains(id) {
                return Err(Error::UnknownComponent(id.clone()));
            }
        }
        for c in ip.curves.keys() {
            if !base.curves.contains(c) {
                return Err(Error::UnknownBranch(c.clone()));
            }
        }
    }
    if ideals.iter().all(|ip| ip.is_trivial()) {
        // every valuation is identically zero; the series degenerates to 1
        return Ok(FactorForm::one(r));
    }
    for curve in &base.curves {
        let positive = ideals
            .iter()
            .any(|ip| ip.curves.get(curve).copied().unwrap_or(0) > 0);
        if !positive {
            return Err(Error::HypothesisViolated(curve.clone()));
        }
    }

    let mut images = Vec::with_capacity(base.components.len() + base.curves.len());
    for id in &base.components {
        let mut img = vec![0u64; r];
        for (i, ip) in ideals.iter().enumerate() {
            if let Some(x) = ip.divisorial.get(id) {
                img[i] = rat_to_u64(x).expect("validated plane exponent");
            }
        }
        images.push(Monomial(img));
    }
    for curve in &base.curves {
        let mut img = vec![0u64; r];
        for (i, ip) in ideals.iter().enumerate() {
            img[i] = ip.curves.get(curve).copied().unwrap_or(0);
        }
        images.push(Monomial(img));
    }
    base.form.substitute(&images, r)
}

/// Poincaré series of the smallest Cartier power of a divisorial filtration:
/// substitute `t -> t^{d_sigma}` where `d_sigma` is the order of the loop
/// class of the component.
pub fn cartier_rescale(divisorial_form: &FactorForm, d_sigma: u64) -> Result<FactorForm> {
    if divisorial_form.nvars() != 1 {
        return Err(Error::DimensionMismatch(
            "rescaling applies to one-variable series".into(),
        ));
    }
    if d_sigma == 0 {
        return Err(Error::InvalidInput("d_sigma must be positive".into()));
    }
    if d_sigma == 1 {
        return Ok(divisorial_form.clone());
    }
    divisorial_form.substitute(&[Monomial(vec![d_sigma])], 1)
}
