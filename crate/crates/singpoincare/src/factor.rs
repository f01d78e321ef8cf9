//! Exact products of factors `(1 - chi * t^k)^e`.
//!
//! This is the canonical output form of the A'Campo-type product formulas:
//! factors are keyed by the pair (exponent vector, character tag) with
//! integer exponents, equal keys merge by adding exponents, and zero
//! exponents are deleted, so the representation is unique. Expansion into a
//! truncated series uses
//!
//!   (1 - chi t^k)^{-c} = sum_l binom(c + l - 1, l) chi^l t^{l k}   (c > 0)
//!
//! which is the symmetric-power identity `sum_l chi(S^l X) t^l = (1-t)^{-chi(X)}`
//! in generating-function form, and the plain binomial theorem for positive
//! exponents. Trivial character tags are normalized away at insertion.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::series::{
    default_names, render_monomial, CharTag, CoeffRing, Monomial, Series, Truncation,
};

/// A single factor base `1 - tag * t^k`; `k` is never the zero vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FactorKey {
    pub exponents: Monomial,
    pub tag: Option<CharTag>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FactorForm {
    nvars: usize,
    factors: BTreeMap<FactorKey, i64>,
}

impl FactorForm {
    pub fn one(nvars: usize) -> Self {
        FactorForm {
            nvars,
            factors: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&FactorKey, &i64)> {
        self.factors.iter()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Merge in `(1 - tag * t^k)^e`. Trivial tags normalize to none; merging
    /// cancels to zero exponent deletes the factor. Zero exponent vectors are
    /// rejected.
    pub fn push(&mut self, exponents: Monomial, tag: Option<CharTag>, e: i64) -> Result<()> {
        if exponents.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "factor key of arity {} in a {}-variable product",
                exponents.len(),
                self.nvars
            )));
        }
        if e == 0 {
            return Ok(());
        }
        if exponents.is_zero() {
            return Err(Error::DegenerateSubstitution(format!(
                "(1 - t^0)^{e}"
            )));
        }
        let tag = tag.filter(|t| !t.is_trivial());
        let key = FactorKey { exponents, tag };
        let entry = self.factors.entry(key.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&key);
        }
        Ok(())
    }

    pub fn mul(&self, other: &FactorForm) -> Result<FactorForm> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(
                "factor forms in different variable counts".into(),
            ));
        }
        let mut out = self.clone();
        for (key, &e) in &other.factors {
            out.push(key.exponents.clone(), key.tag.clone(), e)?;
        }
        Ok(out)
    }

    /// Rewrite every factor key through a monomial map, exactly.
    pub fn substitute(&self, images: &[Monomial], new_nvars: usize) -> Result<FactorForm> {
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
        let mut out = FactorForm::one(new_nvars);
        for (key, &e) in &self.factors {
            let mut img = Monomial::zero(new_nvars);
            for (i, &x) in key.exponents.0.iter().enumerate() {
                if x > 0 {
                    img = img.plus(&images[i].scaled(x));
                }
            }
            if img.is_zero() {
                return Err(Error::DegenerateSubstitution(format!(
                    "t^{:?}",
                    key.exponents.0
                )));
            }
            out.push(img, key.tag.clone(), e)?;
        }
        Ok(out)
    }

    /// All variables identified with a single `t`.
    pub fn identify_variables(&self) -> FactorForm {
        let images: Vec<Monomial> = (0..self.nvars).map(|_| Monomial(vec![1])).collect();
        self.substitute(&images, 1)
            .expect("identification cannot degenerate")
    }

    /// Multiply out all factors to the given truncation.
    pub fn expand<C: CoeffRing>(&self, trunc: Truncation) -> Result<Series<C>> {
        let mut acc = Series::one(self.nvars, trunc.clone());
        for (key, &e) in &self.factors {
            let factor = expand_single::<C>(key, e, self.nvars, &trunc)?;
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }

    /// Integer-coefficient expansion; fails on nontrivial character tags.
    pub fn expand_int(&self, degree: u64) -> Result<Series<BigInt>> {
        self.expand(Truncation::Total(degree))
    }

    /// Total degree below which the expansion is identically 1 minus...; in
    /// other words, the smallest factor degree, used for quick sanity checks.
    pub fn min_key_degree(&self) -> Option<u64> {
        self.factors
            .keys()
            .map(|k| k.exponents.total_degree())
            .min()
    }

    /// Rendered as `(1 - t^a ...)^e` factors sorted lexicographically by key.
    pub fn render_with(&self, names: &[String]) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (key, &e) in &self.factors {
            let mono = render_monomial(&key.exponents, names);
            let base = match &key.tag {
                Some(tag) => format!("(1 - {} {})", tag.render(), mono),
                None => format!("(1 - {mono})"),
            };
            if e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        parts.join(" ")
    }

    pub fn render(&self) -> String {
        self.render_with(&default_names(self.nvars))
    }
}

fn expand_single<C: CoeffRing>(
    key: &FactorKey,
    e: i64,
    nvars: usize,
    trunc: &Truncation,
) -> Result<Series<C>> {
    let mut out = Series::zero(nvars, trunc.clone());
    let tag = key.tag.as_ref();
    if e < 0 {
        // (1 - chi t^k)^{-c}: coefficient binom(c + l - 1, l) chi^l at t^{l k}
        let c = BigInt::from(-e);
        let mut binom = BigInt::from(1);
        let mut l: u64 = 0;
        loop {
            let m = key.exponents.scaled(l);
            if !trunc.contains(&m) {
                break;
            }
            let tag_pow =
                C::from_tag_power(tag, l).ok_or(Error::NontrivialCharacterTag)?;
            out.insert_add(m, C::from_int(binom.clone()).mul(&tag_pow));
            // binom(c + l, l + 1) = binom(c + l - 1, l) * (c + l) / (l + 1)
            binom = binom * (&c + BigInt::from(l)) / BigInt::from(l + 1);
            l += 1;
        }
    } else {
        // (1 - chi t^k)^e: binomial theorem, finitely many terms
        let e = e as u64;
        let mut binom = BigInt::from(1);
        for j in 0..=e {
            let m = key.exponents.scaled(j);
            if trunc.contains(&m) {
                let sign = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
                let tag_pow =
                    C::from_tag_power(tag, j).ok_or(Error::NontrivialCharacterTag)?;
                out.insert_add(m, C::from_int(sign).mul(&tag_pow));
            }
            if j < e {
                binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
            }
        }
    }
    Ok(out)
}

impl fmt::Debug for FactorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactorForm[{} vars]: {}", self.nvars, self.render())
    }
}
