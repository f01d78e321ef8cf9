//! Equivariant Poincaré series over the representation ring of the divisor
//! class group.
//!
//! For a resolution of a normal surface singularity the class group
//! `H = Z^Gamma / Im(-E)` is finite abelian, so its representation ring is
//! the group ring of one-dimensional characters. The character attached to a
//! component sigma acts on the loop generator `h_delta` by
//! `exp(-2 pi i m_{sigma delta})`; it is stored exactly as the tuple
//! `-m_{sigma delta} mod 1` in `Q/Z`. The minus sign matches the action of
//! the group on functions of the cover, `(h . f)(x) = f(h^{-1} x)`.
//!
//! The equivariant product formula is
//!
//!   `P^H = prod_sigma (1 - alpha_sigma t^{d k_sigma})^{-chi(E_sigma^o)}`
//!
//! and the sum of its monomials with trivial-representation coefficient,
//! after `t^d -> t`, recovers the ordinary Poincaré series.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::factor::FactorForm;
use crate::graph::{CheckedGraph, EulerData, IdealSpec, LinkingData};
use crate::rational::{mod_one, Rat};
use crate::series::{CharTag, CoeffRing, Monomial, Series, Truncation};

/// Formal integer combination of characters: an element of `Z[H^]`.
/// The trivial character is canonically keyed by the empty tag.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<CharTag, BigInt>,
}

impl GroupRingElement {
    pub fn from_term(tag: CharTag, coeff: BigInt) -> Self {
        let mut out = GroupRingElement {
            terms: BTreeMap::new(),
        };
        out.insert(tag, coeff);
        out
    }

    fn insert(&mut self, tag: CharTag, coeff: BigInt) {
        if Zero::is_zero(&coeff) {
            return;
        }
        let tag = if tag.is_trivial() {
            CharTag::trivial(0)
        } else {
            tag
        };
        let entry = self.terms.entry(tag.clone()).or_insert_with(<BigInt as Zero>::zero);
        *entry += coeff;
        if Zero::is_zero(entry) {
            self.terms.remove(&tag);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CharTag, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of the trivial character.
    pub fn trivial_part(&self) -> BigInt {
        self.terms
            .get(&CharTag::trivial(0))
            .cloned()
            .unwrap_or_else(<BigInt as Zero>::zero)
    }
}

fn tag_product(a: &CharTag, b: &CharTag) -> CharTag {
    if a.is_trivial() {
        b.clone()
    } else if b.is_trivial() {
        a.clone()
    } else {
        a.mul(b)
    }
}

impl CoeffRing for GroupRingElement {
    fn zero() -> Self {
        GroupRingElement {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        GroupRingElement::from_term(CharTag::trivial(0), <BigInt as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (tag, c) in &other.terms {
            out.insert(tag.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = <GroupRingElement as CoeffRing>::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                out.insert(tag_product(ta, tb), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }
    fn from_int(n: BigInt) -> Self {
        GroupRingElement::from_term(CharTag::trivial(0), n)
    }
    fn from_tag_power(tag: Option<&CharTag>, l: u64) -> Option<Self> {
        let t = match tag {
            None => CharTag::trivial(0),
            Some(t) => t.pow(l),
        };
        Some(GroupRingElement::from_term(t, <BigInt as One>::one()))
    }
    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (tag, c) in &self.terms {
            if tag.is_trivial() {
                parts.push(c.to_string());
            } else if One::is_one(c) {
                parts.push(tag.render());
            } else {
                parts.push(format!("{}*{}", c, tag.render()));
            }
        }
        let joined = parts.join(" + ");
        if self.terms.len() > 1 {
            format!("({joined})")
        } else {
            joined
        }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub type EquivariantSeries = Series<GroupRingElement>;

/// The character `alpha_sigma` for every component: value `-m_{sigma delta}`
/// mod 1 on the generator `h_delta`. Each character is verified to annihilate
/// the relation lattice `Im(E)`; failure would indicate corrupted linking
/// data and cannot happen for `M = -E^{-1}`.
pub fn characters_from_linking(g: &CheckedGraph, ld: &LinkingData) -> Result<Vec<CharTag>> {
    let n = ld.m.rows();
    let e = g.graph().intersection_matrix();
    let mut out = Vec::with_capacity(n);
    for sigma in 0..n {
        let values: Vec<Rat> = (0..n)
            .map(|delta| mod_one(&(-ld.m.get(sigma, delta))))
            .collect();
        // q . E must be integral columnwise
        for tau in 0..n {
            let mut acc = Rat::zero();
            for delta in 0..n {
                acc += &values[delta] * Rat::from_integer(e.get(delta, tau).clone());
            }
            if !acc.is_integer() {
                return Err(Error::NotWellDefined);
            }
        }
        out.push(CharTag::new(values));
    }
    Ok(out)
}

/// The equivariant product formula: a character-tagged factor form with keys
/// `d * k_sigma`. Zero multiplicity vectors and zero Euler characteristics
/// contribute nothing.
pub fn equivariant_poincare(
    g: &CheckedGraph,
    euler: &EulerData,
    ld: &LinkingData,
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
    let d: u64 = ld
        .d
        .to_string()
        .parse()
        .map_err(|_| Error::InvalidInput("group order exceeds u64".into()))?;
    let alphas = characters_from_linking(g, ld)?;
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
        form.push(k.scaled(d), Some(alphas[sigma].clone()), -chi)?;
    }
    Ok(form)
}

/// Expand an equivariant factor form into a series with group-ring
/// coefficients.
pub fn expand_equivariant(form: &FactorForm, degree: u64) -> Result<EquivariantSeries> {
    form.expand(Truncation::Total(degree))
}

/// Keep only the trivial-character part of every coefficient and substitute
/// `t_i^d -> t_i`. Every retained monomial must have all exponents divisible
/// by `d`; the equivariant product formula guarantees this for its own
/// output.
pub fn invariant_part(series: &EquivariantSeries, d: u64) -> Result<Series<BigInt>> {
    if d == 0 {
        return Err(Error::InvalidInput("group order must be positive".into()));
    }
    let new_trunc = match series.truncation() {
        Truncation::Total(n) => Truncation::Total(n / d),
        Truncation::Box(b) => Truncation::Box(b.iter().map(|x| x / d).collect()),
    };
    let mut out = Series::zero(series.nvars(), new_trunc);
    for (m, c) in series.terms() {
        let trivial = c.trivial_part();
        if Zero::is_zero(&trivial) {
            continue;
        }
        let mut divided = Vec::with_capacity(m.len());
        for &e in &m.0 {
            if e % d != 0 {
                return Err(Error::NotDivisible(format!("{:?}", m.0), d.to_string()));
            }
            divided.push(e / d);
        }
        out.insert_add(Monomial(divided), trivial);
    }
    Ok(out)
}
