//! Sparse truncated multivariate power series over an abstract coefficient ring.
//!
//! A `Series<C>` stores only nonzero coefficients, keyed by exponent vector.
//! Its truncation is either a total-degree bound (the engine's convention) or
//! a per-variable box (the brute-force oracle's convention); coefficients are
//! exact inside the truncation region and unknown outside it. Two series are
//! only combined when their variable counts agree.
//!
//! The coefficient ring is abstracted behind [`CoeffRing`] so that plain
//! integer series and group-ring-valued series (for the equivariant product
//! formula) share one engine. Character tags on factors are represented by
//! [`CharTag`], a vector of exact values in `Q/Z`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, mod_one, render_rat, Rat};

/// Exponent vector of a monomial; the vector length is the variable count of
/// the surrounding series context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u64>);

impl Monomial {
    pub fn zero(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn scaled(&self, l: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(l).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?}", self.0)
    }
}

/// Region where series coefficients are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Truncation {
    /// All monomials of total degree <= N.
    Total(u64),
    /// All monomials below a per-variable bound (componentwise <=).
    Box(Vec<u64>),
}

impl Truncation {
    pub fn contains(&self, m: &Monomial) -> bool {
        match self {
            Truncation::Total(n) => m.total_degree() <= *n,
            Truncation::Box(b) => {
                debug_assert_eq!(b.len(), m.len());
                m.0.iter().zip(b).all(|(e, bound)| e <= bound)
            }
        }
    }

    /// Largest region contained in both. Only like truncations meet.
    pub fn meet(&self, other: &Truncation) -> Result<Truncation> {
        match (self, other) {
            (Truncation::Total(a), Truncation::Total(b)) => Ok(Truncation::Total(*a.min(b))),
            (Truncation::Box(a), Truncation::Box(b)) => {
                if a.len() != b.len() {
                    return Err(Error::TruncationMismatch);
                }
                Ok(Truncation::Box(
                    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect(),
                ))
            }
            _ => Err(Error::TruncationMismatch),
        }
    }
}

/// Character value in `(Q/Z)^m`: the tuple `(q_1, ..., q_m)` encodes the root
/// of unity `exp(2 pi i q_j)` on the j-th generator. Stored reduced to `[0,1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CharTag(Vec<Rat>);

impl CharTag {
    pub fn new(values: Vec<Rat>) -> Self {
        CharTag(values.iter().map(mod_one).collect())
    }

    pub fn trivial(len: usize) -> Self {
        CharTag(vec![Rat::zero(); len])
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|q| q.is_zero())
    }

    pub fn mul(&self, other: &CharTag) -> CharTag {
        debug_assert_eq!(self.0.len(), other.0.len());
        CharTag(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| mod_one(&(a + b)))
                .collect(),
        )
    }

    pub fn pow(&self, l: u64) -> CharTag {
        let l = Rat::from_integer(BigInt::from(l));
        CharTag(self.0.iter().map(|q| mod_one(&(q * &l))).collect())
    }

    /// Multiplicative order: lcm of the denominators.
    pub fn order(&self) -> BigInt {
        denominator_lcm(&self.0)
    }

    /// Rendered as a bracketed fraction vector, e.g. `[1/2]` or `[2/3,1/3]`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(render_rat).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Commutative coefficient ring for series arithmetic.
pub trait CoeffRing: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: BigInt) -> Self;
    /// Image of a character-tag power in this ring, if it has one.
    /// Integer coefficients only admit trivial tags.
    fn from_tag_power(tag: Option<&CharTag>, l: u64) -> Option<Self>;
    fn render(&self) -> String;
}

impl CoeffRing for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: BigInt) -> Self {
        n
    }
    fn from_tag_power(tag: Option<&CharTag>, _l: u64) -> Option<Self> {
        match tag {
            None => Some(<BigInt as One>::one()),
            Some(t) if t.is_trivial() => Some(<BigInt as One>::one()),
            Some(_) => None,
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series<C: CoeffRing> {
    nvars: usize,
    trunc: Truncation,
    terms: BTreeMap<Monomial, C>,
}

pub type IntSeries = Series<BigInt>;

impl<C: CoeffRing> Series<C> {
    pub fn zero(nvars: usize, trunc: Truncation) -> Self {
        Series {
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, trunc: Truncation) -> Self {
        let mut s = Series::zero(nvars, trunc);
        s.insert_add(Monomial::zero(nvars), C::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Add `c * t^m`, dropping anything outside the truncation region and
    /// never storing zero coefficients.
    pub fn insert_add(&mut self, m: Monomial, c: C) {
        assert_eq!(m.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() || !self.trunc.contains(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Series<C>) -> Result<Series<C>> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "series in {} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        let trunc = self.trunc.meet(&other.trunc)?;
        let mut out = Series::zero(self.nvars, trunc);
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &C) -> Series<C> {
        let mut out = Series::zero(self.nvars, self.trunc.clone());
        for (m, x) in &self.terms {
            out.insert_add(m.clone(), x.mul(c));
        }
        out
    }

    pub fn neg(&self) -> Series<C> {
        let mut out = Series::zero(self.nvars, self.trunc.clone());
        for (m, x) in &self.terms {
            out.insert_add(m.clone(), x.neg());
        }
        out
    }

    /// Truncated exact product.
    pub fn mul(&self, other: &Series<C>) -> Result<Series<C>> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "series in {} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        let trunc = self.trunc.meet(&other.trunc)?;
        let mut out = Series::zero(self.nvars, trunc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.plus(mb);
                if !out.trunc.contains(&m) {
                    continue;
                }
                out.insert_add(m, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Restrict to a smaller truncation region.
    pub fn truncate(&self, trunc: Truncation) -> Series<C> {
        let mut out = Series::zero(self.nvars, trunc);
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    /// Remap each variable to a monomial in a new set of variables.
    ///
    /// The result is exact on the largest region guaranteed by the images:
    /// an unknown source term of degree `N+1` maps to degree at least
    /// `w_min * (N+1)` where `w_min` is the smallest image degree, so the
    /// guaranteed total-degree bound is `w_min * (N+1) - 1`. `requested`
    /// caps the result; `truncation_loss` reports whether the cap exceeded
    /// the guarantee.
    pub fn substitute(
        &self,
        images: &[Monomial],
        new_nvars: usize,
        requested: u64,
    ) -> Result<Substituted<C>> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitution images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        for img in images {
            if img.len() != new_nvars {
                return Err(Error::DimensionMismatch(
                    "substitution image arity mismatch".into(),
                ));
            }
        }
        let old_bound = match &self.trunc {
            Truncation::Total(n) => *n,
            Truncation::Box(_) => {
                return Err(Error::TruncationMismatch);
            }
        };
        let mut w_min = u64::MAX;
        for (i, img) in images.iter().enumerate() {
            if img.is_zero() {
                // a variable may only disappear if it never occurs
                if self.terms.keys().any(|m| m.0[i] > 0) {
                    return Err(Error::DegenerateSubstitution(format!("variable {i}")));
                }
            } else {
                w_min = w_min.min(img.total_degree());
            }
        }
        if w_min == u64::MAX {
            w_min = 1;
        }
        let guaranteed = w_min.saturating_mul(old_bound + 1).saturating_sub(1);
        let effective = requested.min(guaranteed);
        let mut out = Series::zero(new_nvars, Truncation::Total(effective));
        for (m, c) in &self.terms {
            let mut img = Monomial::zero(new_nvars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    img = img.plus(&images[i].scaled(e));
                }
            }
            out.insert_add(img, c.clone());
        }
        Ok(Substituted {
            series: out,
            truncation_loss: guaranteed < requested,
        })
    }

    /// All variables mapped to a single one.
    pub fn identify_variables(&self, requested: u64) -> Result<Substituted<C>> {
        let images: Vec<Monomial> = (0..self.nvars).map(|_| Monomial(vec![1])).collect();
        self.substitute(&images, 1, requested)
    }

    /// Compare two series on the intersection of their truncation regions.
    pub fn agree_on_common_region(&self, other: &Series<C>) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "series in {} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for m in keys {
            if !(self.trunc.contains(m) && other.trunc.contains(m)) {
                continue;
            }
            let a = self.coeff(m);
            let b = other.coeff(m);
            if a != b {
                return Err(Error::OracleMismatch {
                    monomial: format!("{:?}", m.0),
                    engine: a.render(),
                    oracle: b.render(),
                });
            }
        }
        Ok(())
    }

    /// Terms rendered lexicographically by exponent vector.
    pub fn render_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono = render_monomial(m, names);
            let rendered = c.render();
            let (negative, body) = match rendered.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, rendered),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.render_with(&default_names(self.nvars))
    }
}

pub struct Substituted<C: CoeffRing> {
    pub series: Series<C>,
    pub truncation_loss: bool,
}

pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["t".to_string()]
    } else {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }
}

pub fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, name) in m.0.iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(" ")
}

impl<C: CoeffRing> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{} vars, {:?}]: {}", self.nvars, self.trunc, self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn series_1var(terms: &[(u64, i64)], n: u64) -> IntSeries {
        let mut s = IntSeries::zero(1, Truncation::Total(n));
        for &(e, c) in terms {
            s.insert_add(Monomial(vec![e]), int(c));
        }
        s
    }

    #[test]
    fn mul_geometric_by_one_minus_t() {
        // (1 + t + ... + t^5) * (1 - t) = 1 (to truncation 5)
        let geo = series_1var(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)], 5);
        let lin = series_1var(&[(0, 1), (1, -1)], 5);
        let prod = geo.mul(&lin).unwrap();
        assert_eq!(prod, series_1var(&[(0, 1)], 5));
    }

    #[test]
    fn zero_series_annihilates() {
        let z = IntSeries::zero(2, Truncation::Total(4));
        let s = IntSeries::one(2, Truncation::Total(4));
        assert!(z.mul(&s).unwrap().is_empty());
    }

    #[test]
    fn truncation_regions() {
        let total = Truncation::Total(3);
        assert!(total.contains(&Monomial(vec![1, 2])));
        assert!(!total.contains(&Monomial(vec![2, 2])));
        let boxt = Truncation::Box(vec![2, 2]);
        assert!(boxt.contains(&Monomial(vec![2, 2])));
        assert!(!boxt.contains(&Monomial(vec![3, 0])));
        assert!(total.meet(&boxt).is_err());
    }

    #[test]
    fn substitute_identity_map() {
        let s = series_1var(&[(0, 1), (2, 3)], 6);
        let sub = s.substitute(&[Monomial(vec![1])], 1, 6).unwrap();
        assert!(!sub.truncation_loss);
        assert_eq!(sub.series, s);
    }

    #[test]
    fn substitute_two_vars_to_one() {
        // t1*t2 -> t^2 under t1 -> t, t2 -> t
        let mut s = IntSeries::zero(2, Truncation::Total(3));
        s.insert_add(Monomial(vec![1, 1]), int(1));
        let sub = s
            .substitute(&[Monomial(vec![1]), Monomial(vec![1])], 1, 3)
            .unwrap();
        assert_eq!(sub.series.coeff(&Monomial(vec![2])), int(1));
    }

    #[test]
    fn substitution_reports_truncation_loss() {
        let s = series_1var(&[(0, 1), (1, 1)], 1);
        // t -> t: guaranteed bound stays 1, asking for 5 loses precision
        let sub = s.substitute(&[Monomial(vec![1])], 1, 5).unwrap();
        assert!(sub.truncation_loss);
        assert_eq!(sub.series.truncation(), &Truncation::Total(1));
        // t -> t^3: guaranteed bound becomes 3*2-1 = 5
        let sub = s.substitute(&[Monomial(vec![3])], 1, 5).unwrap();
        assert!(!sub.truncation_loss);
        assert_eq!(sub.series.coeff(&Monomial(vec![3])), int(1));
    }

    #[test]
    fn disappearing_variable_needs_empty_support() {
        let mut s = IntSeries::zero(2, Truncation::Total(3));
        s.insert_add(Monomial(vec![1, 0]), int(1));
        // t2 never occurs, so it may map to the empty monomial
        let ok = s.substitute(&[Monomial(vec![1]), Monomial(vec![0])], 1, 3);
        assert!(ok.is_ok());
        // t1 occurs, mapping it away is an error
        let bad = s.substitute(&[Monomial(vec![0]), Monomial(vec![1])], 1, 3);
        assert!(bad.is_err());
    }

    #[test]
    fn common_region_comparison() {
        let a = series_1var(&[(0, 1), (2, 1)], 10);
        let mut b = IntSeries::zero(1, Truncation::Box(vec![5]));
        b.insert_add(Monomial(vec![0]), int(1));
        b.insert_add(Monomial(vec![2]), int(1));
        b.insert_add(Monomial(vec![5]), int(7)); // also inside a's region: must match
        assert!(a.agree_on_common_region(&b).is_err());
        let mut b = IntSeries::zero(1, Truncation::Box(vec![2]));
        b.insert_add(Monomial(vec![0]), int(1));
        b.insert_add(Monomial(vec![2]), int(1));
        assert!(a.agree_on_common_region(&b).is_ok());
    }

    #[test]
    fn char_tags_reduce_mod_one() {
        use crate::rational::rat;
        let t = CharTag::new(vec![rat(-1, 2), rat(5, 3)]);
        assert_eq!(t.values(), &[rat(1, 2), rat(2, 3)]);
        assert_eq!(t.order(), BigInt::from(6));
        assert_eq!(t.pow(6).order(), BigInt::from(1));
        assert!(t.pow(6).is_trivial());
        assert_eq!(t.render(), "[1/2,2/3]");
    }

    #[test]
    fn render_sorted_lex() {
        let mut s = IntSeries::zero(2, Truncation::Total(4));
        s.insert_add(Monomial(vec![1, 0]), int(2));
        s.insert_add(Monomial(vec![0, 1]), int(-1));
        s.insert_add(Monomial(vec![0, 0]), int(1));
        assert_eq!(s.render(), "1 - t2 + 2*t1");
    }
}
