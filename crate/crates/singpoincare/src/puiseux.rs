//! Exact parametrizations of plane branch germs.
//!
//! Input branches come in Puiseux normal form `x = t^n`, `y = sum a_i t^i`
//! (or with the roles of x and y swapped). Internally the blowup simulation
//! works with [`Germ`]: a pair of exact polynomials over `Q`, because chart
//! transitions divide one coordinate by the other and curvettes pushed down
//! from a resolution are not in normal form. All arithmetic stays in `Q[t]`
//! and `Q(t)`; nothing is ever numerically truncated.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{render_rat, Rat};

/// Dense univariate polynomial over `Q`; no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly(Vec<Rat>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![Rat::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        QPoly(v)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = QPoly(coeffs);
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        QPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Monic multiple of self (self / leading coefficient).
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rat::one() / lc))
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading_coeff();
        let mut rem = self.0.clone();
        let mut quot = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if !c.is_zero() {
                let f = &c / &lc;
                quot[k - dd] = f.clone();
                for (i, dc) in div.0.iter().enumerate() {
                    let t = &f * dc;
                    rem[k - dd + i] -= t;
                }
            }
            rem.pop();
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (or zero if both inputs are zero). Remainders are rescaled
    /// to monic at each step to keep coefficients small.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Composition `self(other(t))` by Horner's scheme.
    pub fn compose(&self, other: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(other).add(&QPoly::monomial(c.clone(), 0));
        }
        acc
    }

    /// `self(-t)`: flips the sign of odd coefficients.
    pub fn compose_neg(&self) -> QPoly {
        QPoly(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = render_rat(c);
            let part = match i {
                0 => coeff,
                1 if c.is_one() => var.to_string(),
                1 => format!("{coeff}*{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{coeff}*{var}^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

/// Reduced fraction of polynomials; denominator monic and nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(QPoly::zero())
    }

    fn reduced(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lc = den.leading_coeff();
        RatFunc {
            num: num.scale(&(Rat::one() / &lc)),
            den: den.scale(&(Rat::one() / &lc)),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::reduced(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn sub_const(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return self.clone();
        }
        RatFunc::reduced(self.num.sub(&self.den.scale(c)), self.den.clone())
    }

    /// Order of vanishing at t = 0 (negative for a pole); `None` if zero.
    pub fn ord(&self) -> Option<i64> {
        let n = self.num.ord()?;
        let d = self.den.ord().expect("nonzero denominator");
        Some(n as i64 - d as i64)
    }

    /// Value at t = 0; requires ord >= 0.
    pub fn value_at_zero(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let o = self.ord().unwrap();
        assert!(o >= 0, "pole at the origin");
        if o > 0 {
            return Rat::zero();
        }
        // reduced form cancels common powers of t, so ord(num) = ord(den)
        // exactly when the function has a finite nonzero value
        let dn = self.den.ord().unwrap();
        let nn = self.num.ord().unwrap();
        debug_assert_eq!(nn, dn);
        self.num.coeff(nn) / self.den.coeff(dn)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

/// A plane branch in Puiseux normal form: `x = t^n`, `y = sum a_i t^i`
/// with strictly increasing exponents and nonzero rational coefficients
/// (`swapped` exchanges the roles of x and y). Primitivity
/// `gcd(n, exponents) = 1` makes the parametrization injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub name: String,
    pub x_order: u64,
    pub y_terms: Vec<(u64, Rat)>,
    pub swapped: bool,
}

impl PuiseuxBranch {
    pub fn new(
        name: impl Into<String>,
        x_order: u64,
        y_terms: Vec<(u64, Rat)>,
        swapped: bool,
    ) -> Result<Self> {
        let name = name.into();
        if x_order == 0 {
            return Err(Error::InvalidInput(format!(
                "branch `{name}`: x_order must be positive"
            )));
        }
        let mut g = x_order;
        let mut prev = 0u64;
        for (e, c) in &y_terms {
            if *e == 0 {
                return Err(Error::InvalidInput(format!(
                    "branch `{name}`: exponent 0 not allowed (germ must pass through the origin)"
                )));
            }
            if *e <= prev {
                return Err(Error::InvalidInput(format!(
                    "branch `{name}`: exponents must be strictly increasing"
                )));
            }
            if c.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "branch `{name}`: zero coefficient at exponent {e}"
                )));
            }
            prev = *e;
            g = gcd_u64(g, *e);
        }
        if g != 1 {
            return Err(Error::NotPrimitive(name));
        }
        Ok(PuiseuxBranch {
            name,
            x_order,
            y_terms,
            swapped,
        })
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(
        name: impl Into<String>,
        x_order: u64,
        y_terms: &[(u64, i64)],
        swapped: bool,
    ) -> Result<Self> {
        PuiseuxBranch::new(
            name,
            x_order,
            y_terms
                .iter()
                .map(|&(e, c)| (e, Rat::from_integer(c.into())))
                .collect(),
            swapped,
        )
    }

    fn series_poly(&self) -> QPoly {
        let mut coeffs = Vec::new();
        for (e, c) in &self.y_terms {
            let e = *e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rat::zero());
            }
            coeffs[e] = c.clone();
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn to_germ(&self) -> Germ {
        let power = QPoly::monomial(Rat::one(), self.x_order as usize);
        let series = self.series_poly();
        let (x, y) = if self.swapped {
            (series, power)
        } else {
            (power, series)
        };
        Germ::new(self.name.clone(), x, y).expect("validated branch")
    }

    /// Exact test for equality of germs in normal form: equal coordinate
    /// roles, equal `n`, and `y_2(t) = y_1(zeta t)` for a rational root of
    /// unity `zeta` (only `1`, and `-1` when `n` is even, qualify).
    pub fn same_germ(&self, other: &PuiseuxBranch) -> bool {
        if self.swapped != other.swapped || self.x_order != other.x_order {
            return false;
        }
        let a = self.series_poly();
        let b = other.series_poly();
        if a == b {
            return true;
        }
        self.x_order % 2 == 0 && a.compose_neg() == b
    }
}

/// An exact polynomial parametrization `t -> (x(t), y(t))` of a curve germ
/// through the origin. Both orders are at least 1 and the parametrization is
/// assumed primitive; branches from [`PuiseuxBranch`] are checked, pushed-down
/// curvettes are primitive by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Germ {
    pub name: String,
    pub x: QPoly,
    pub y: QPoly,
}

impl Germ {
    pub fn new(name: impl Into<String>, x: QPoly, y: QPoly) -> Result<Self> {
        let name = name.into();
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidInput(format!(
                "germ `{name}`: both coordinates are zero"
            )));
        }
        for (coord, p) in [("x", &x), ("y", &y)] {
            if let Some(o) = p.ord() {
                if o == 0 {
                    return Err(Error::InvalidInput(format!(
                        "germ `{name}`: {coord}(0) != 0, germ must pass through the origin"
                    )));
                }
            }
        }
        Ok(Germ { name, x, y })
    }

    /// `min(ord x, ord y)`: the multiplicity of the germ at the origin.
    pub fn multiplicity(&self) -> u64 {
        let ox = self.x.ord();
        let oy = self.y.ord();
        match (ox, oy) {
            (Some(a), Some(b)) => a.min(b) as u64,
            (Some(a), None) => a as u64,
            (None, Some(b)) => b as u64,
            (None, None) => unreachable!("validated germ"),
        }
    }

    /// Is this exactly the graph `y = g(x)` with `x = t`?
    pub fn graph_over_x(&self) -> Option<&QPoly> {
        (self.x == QPoly::monomial(Rat::one(), 1)).then_some(&self.y)
    }

    /// Is this exactly the graph `x = g(y)` with `y = t`?
    pub fn graph_over_y(&self) -> Option<&QPoly> {
        (self.y == QPoly::monomial(Rat::one(), 1)).then_some(&self.x)
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: (x, y) = ({}, {})",
            self.name,
            self.x.render("t"),
            self.y.render("t")
        )
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}
