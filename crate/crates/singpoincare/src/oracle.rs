//! Brute-force Poincaré series from jet-space dimensions.
//!
//! This module is the independent ground truth for the product formulas.
//! Every index of the filtration is realized by one parametrized germ: a
//! curve valuation by the branch itself, a divisorial valuation by a generic
//! curvette through its component. The codimension of the realized subspace
//! `J(w) = {g : ord(g o phi_i) >= w_i}` equals the rank of the evaluation map
//! sending a monomial `x^a y^b` to its truncated jets
//! `(x_i(t)^a y_i(t)^b mod t^{w_i})_i`. Monomials of total degree above
//! `max w_i` evaluate to zero because every realization satisfies
//! `v(x), v(y) >= 1`, so a finite monomial basis suffices and every rank is
//! computed by exact Gaussian elimination over `Q`.
//!
//! A curvette realization induces the curve filtration of the curvette, not
//! the divisorial filtration itself: `v_sigma(g) = ord(g o L)` holds for each
//! fixed `g` and generic `L`, but the subspace carved out by one fixed `L` is
//! larger than the divisorial one as soon as germs through the curvette's
//! point matter. The matching product formula is therefore the mixed series
//! of the resolution with the curvette adjoined as an extra branch (same
//! dual graph, one more arrow on the marked component); see
//! [`engine_reference_form`].
//!
//! The coefficient of `t^v` of the Poincaré series is recovered from the
//! codimension function `h` by inclusion-exclusion over the `2^r` corners of
//! the cube at `v`:
//!
//!   `c_v = sum_{S subset {1..r}} (-1)^{|S|+1} h(v + 1_S)`
//!
//! with the empty set contributing `-h(v)`. Genericity of curvette seeds is
//! certified by recomputing the whole series with several independent seeds
//! and demanding exact agreement.

use std::collections::BTreeMap;

use num::{BigInt, Signed, Zero};
#[cfg(test)]
use num::One;

use crate::error::{Error, Result};
use crate::puiseux::{Germ, QPoly};
use crate::rational::Rat;
use crate::resolve::ResolvedCurve;
use crate::series::{Monomial, Series, Truncation};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One valuation of the filtration, realized by parametrized germs.
#[derive(Clone, Debug)]
pub enum Realization {
    /// Order of vanishing along a fixed branch.
    Curve(Germ),
    /// Divisorial order function, realized by curvettes at several seeds.
    Divisorial { component: String, curvettes: Vec<Germ> },
}

impl Realization {
    fn germ_for_seed(&self, seed_index: usize) -> &Germ {
        match self {
            Realization::Curve(g) => g,
            Realization::Divisorial { curvettes, .. } => {
                &curvettes[seed_index % curvettes.len()]
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValuationRealization {
    pub items: Vec<Realization>,
}

/// How many independent curvette seeds certify genericity.
pub const AGREEMENT_SEEDS: usize = 3;

/// Deterministic stream of rational curvette seeds.
pub struct SeedStream {
    rng: ChaCha8Rng,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Next seed avoiding the special slopes of a component.
    pub fn next_for(&mut self, rc: &ResolvedCurve, component: &str) -> Result<Rat> {
        let special = rc.special_seeds(component)?;
        loop {
            let num: i64 = self.rng.gen_range(1..=40);
            let den: i64 = self.rng.gen_range(1..=6);
            let candidate = crate::rational::rat(num, den);
            if !special.contains(&candidate) {
                return Ok(candidate);
            }
        }
    }
}

impl ValuationRealization {
    /// Realize a mixed filtration on a resolved configuration: chosen
    /// components first (via curvettes with [`AGREEMENT_SEEDS`] distinct
    /// seeds each), then chosen branches.
    pub fn from_filtration(
        rc: &ResolvedCurve,
        components: &[String],
        branches: &[String],
        seeds: &mut SeedStream,
    ) -> Result<Self> {
        let mut items = Vec::new();
        for comp in components {
            let mut curvettes = Vec::new();
            let mut used = Vec::new();
            while curvettes.len() < AGREEMENT_SEEDS {
                let seed = seeds.next_for(rc, comp)?;
                if used.contains(&seed) {
                    continue;
                }
                curvettes.push(rc.curvette(comp, &seed)?);
                used.push(seed);
            }
            items.push(Realization::Divisorial {
                component: comp.clone(),
                curvettes,
            });
        }
        for branch in branches {
            let germ = rc
                .branch_germs()
                .iter()
                .find(|g| g.name == *branch)
                .ok_or_else(|| Error::UnknownBranch(branch.clone()))?;
            items.push(Realization::Curve(germ.clone()));
        }
        Ok(ValuationRealization { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn germs(&self, seed_index: usize) -> Vec<&Germ> {
        self.items
            .iter()
            .map(|r| r.germ_for_seed(seed_index))
            .collect()
    }
}

/// `h(w) = dim O / J(w)`: the codimension of the subspace of germs with
/// `ord(g o phi_i) >= w_i` for every i.
pub fn codim(germs: &[&Germ], w: &[u64]) -> u64 {
    assert_eq!(germs.len(), w.len());
    let table = JetTable::new(germs, w);
    let profile = table.rank_profile(&table.all_columns());
    *profile.last().unwrap()
}

/// Full grid of `h` values for `w` componentwise below `bounds`, computed
/// with one elimination per slice: columns of the first index are ordered
/// last, so a single column-rank profile yields a whole row of the grid.
fn codim_grid(germs: &[&Germ], bounds: &[u64]) -> BTreeMap<Vec<u64>, u64> {
    let r = germs.len();
    let table = JetTable::new(germs, bounds);
    let mut grid = BTreeMap::new();

    // enumerate assignments of w_2..w_r
    let mut rest = vec![0u64; r.saturating_sub(1)];
    loop {
        let mut columns = Vec::new();
        for (i, &wi) in rest.iter().enumerate() {
            table.push_columns(&mut columns, i + 1, wi);
        }
        let offset = columns.len();
        table.push_columns(&mut columns, 0, bounds[0]);
        let profile = table.rank_profile(&columns);
        for w0 in 0..=bounds[0] {
            let mut w = Vec::with_capacity(r);
            w.push(w0);
            w.extend_from_slice(&rest);
            grid.insert(w, profile[offset + w0 as usize]);
        }
        // advance the odometer
        let mut i = 0;
        loop {
            if i >= rest.len() {
                return grid;
            }
            if rest[i] < bounds[i + 1] {
                rest[i] += 1;
                break;
            }
            rest[i] = 0;
            i += 1;
        }
    }
}

/// The evaluation table: one row per monomial `x^a y^b` with `a + b <= B`,
/// jet coefficients grouped by valuation index.
struct JetTable {
    /// `jets[i][row]` = the row monomial composed with germ i, truncated
    /// below degree `bounds[i]`.
    jets: Vec<Vec<QPoly>>,
    bounds: Vec<usize>,
    rows: usize,
}

impl JetTable {
    fn new(germs: &[&Germ], bounds: &[u64]) -> Self {
        let b = bounds.iter().copied().max().unwrap_or(0) as usize;
        let monomials: Vec<(usize, usize)> = (0..=b)
            .flat_map(|a| (0..=b - a).map(move |e| (a, e)))
            .collect();
        let mut jets = Vec::with_capacity(germs.len());
        for (i, germ) in germs.iter().enumerate() {
            let w = bounds[i] as usize;
            for (coord, p) in [("x", &germ.x), ("y", &germ.y)] {
                if let Some(o) = p.ord() {
                    assert!(o >= 1, "realization {coord} does not vanish at the origin");
                }
            }
            let x_pows = truncated_powers(&germ.x, b, w);
            let y_pows = truncated_powers(&germ.y, b, w);
            let mut block = Vec::with_capacity(monomials.len());
            for &(a, e) in &monomials {
                block.push(mul_trunc(&x_pows[a], &y_pows[e], w));
            }
            jets.push(block);
        }
        JetTable {
            jets,
            bounds: bounds.iter().map(|&w| w as usize).collect(),
            rows: monomials.len(),
        }
    }

    /// Append the first `w` jet coordinates of valuation index `i`.
    fn push_columns(&self, columns: &mut Vec<(usize, usize)>, i: usize, w: u64) {
        for d in 0..w as usize {
            columns.push((i, d));
        }
    }

    fn all_columns(&self) -> Vec<(usize, usize)> {
        let mut cols = Vec::new();
        for (i, &w) in self.bounds.iter().enumerate() {
            for d in 0..w {
                cols.push((i, d));
            }
        }
        cols
    }

    /// Rank of every column prefix, by forward elimination over `Q`.
    fn rank_profile(&self, columns: &[(usize, usize)]) -> Vec<u64> {
        let ncols = columns.len();
        let mut rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|row| {
                columns
                    .iter()
                    .map(|&(i, d)| self.jets[i][row].coeff(d))
                    .collect()
            })
            .collect();
        let mut profile = Vec::with_capacity(ncols + 1);
        profile.push(0);
        let mut rank = 0u64;
        let mut free: Vec<usize> = (0..rows.len()).collect();
        for col in 0..ncols {
            let pivot = free
                .iter()
                .position(|&r| !rows[r][col].is_zero())
                .map(|pos| free.remove(pos));
            if let Some(p) = pivot {
                rank += 1;
                let pivot_row = std::mem::take(&mut rows[p]);
                let pv = pivot_row[col].clone();
                for &r in &free {
                    if rows[r][col].is_zero() {
                        continue;
                    }
                    let f = &rows[r][col] / &pv;
                    for j in col..ncols {
                        let t = &f * &pivot_row[j];
                        rows[r][j] -= t;
                    }
                }
                rows[p] = pivot_row;
            }
            profile.push(rank);
        }
        profile
    }
}

/// Powers `p^0 .. p^max_pow`, all truncated below degree `w`.
fn truncated_powers(p: &QPoly, max_pow: usize, w: usize) -> Vec<QPoly> {
    let mut out = Vec::with_capacity(max_pow + 1);
    out.push(QPoly::one());
    let base = truncate(p, w);
    for a in 1..=max_pow {
        out.push(mul_trunc(&out[a - 1], &base, w));
    }
    out
}

fn truncate(p: &QPoly, w: usize) -> QPoly {
    QPoly::from_coeffs((0..w).map(|i| p.coeff(i)).collect())
}

fn mul_trunc(a: &QPoly, b: &QPoly, w: usize) -> QPoly {
    let mut coeffs = vec![Rat::zero(); w];
    for i in 0..w {
        let ai = a.coeff(i);
        if ai.is_zero() {
            continue;
        }
        for (j, c) in coeffs.iter_mut().enumerate().take(w).skip(i) {
            let bj = b.coeff(j - i);
            if !bj.is_zero() {
                *c += &ai * bj;
            }
        }
    }
    QPoly::from_coeffs(coeffs)
}

/// The Poincaré series inside a per-variable box, directly from codimensions
/// of jet spaces, using the first curvette of every divisorial index.
pub fn poincare_bruteforce(vr: &ValuationRealization, bounds: &[u64]) -> Result<Series<BigInt>> {
    poincare_bruteforce_with_seed_index(vr, bounds, 0)
}

fn poincare_bruteforce_with_seed_index(
    vr: &ValuationRealization,
    bounds: &[u64],
    seed_index: usize,
) -> Result<Series<BigInt>> {
    let r = vr.len();
    if r == 0 || bounds.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} bounds for {} valuations",
            bounds.len(),
            r
        )));
    }
    let germs = vr.germs(seed_index);
    // h is needed on the grid up to bounds + 1
    let grid_bounds: Vec<u64> = bounds.iter().map(|&b| b + 1).collect();
    let grid = codim_grid(&germs, &grid_bounds);

    let mut series = Series::zero(r, Truncation::Box(bounds.to_vec()));
    let mut v = vec![0u64; r];
    loop {
        let mut c = BigInt::zero();
        for subset in 0..(1usize << r) {
            let mut w = v.clone();
            for (i, wi) in w.iter_mut().enumerate() {
                if subset & (1 << i) != 0 {
                    *wi += 1;
                }
            }
            let h = BigInt::from(grid[&w]);
            if subset.count_ones() % 2 == 1 {
                c += h;
            } else {
                c -= h;
            }
        }
        // for r <= 2 the coefficient is the Euler characteristic of a
        // projective space minus at most two subspaces, which is never
        // negative (dim(A + B) <= N bounds the inclusion-exclusion); from
        // r = 3 on, genuinely negative coefficients occur
        debug_assert!(
            r > 2 || !c.is_negative(),
            "negative stratum Euler characteristic at {v:?} with r = {r}"
        );
        series.insert_add(Monomial(v.clone()), c);
        // advance
        let mut i = 0;
        loop {
            if i >= r {
                return Ok(series);
            }
            if v[i] < bounds[i] {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Mismatch report from a seed-agreement run.
pub fn check_divisorial(vr: &ValuationRealization, bounds: &[u64]) -> Result<Series<BigInt>> {
    let n_seeds = vr
        .items
        .iter()
        .filter_map(|r| match r {
            Realization::Divisorial { curvettes, .. } => Some(curvettes.len()),
            Realization::Curve(_) => None,
        })
        .min()
        .unwrap_or(1);
    let reference = poincare_bruteforce_with_seed_index(vr, bounds, 0)?;
    for idx in 1..n_seeds {
        let other = poincare_bruteforce_with_seed_index(vr, bounds, idx)?;
        if other != reference {
            return Err(Error::SeedsDisagree(format!(
                "seed tuple {idx} differs from tuple 0"
            )));
        }
    }
    Ok(reference)
}

/// The factor form the jet oracle must match: the mixed series of the
/// resolution extended by every divisorial index's first curvette, taken as
/// an extra branch. Curvette arrows land at generic free points, so the
/// dual graph is unchanged and only Euler characteristics shift.
pub fn engine_reference_form(
    rc: &ResolvedCurve,
    vr: &ValuationRealization,
    branches: &[String],
) -> Result<crate::factor::FactorForm> {
    let mut germs: Vec<Germ> = rc.branch_germs().to_vec();
    let mut chosen = Vec::new();
    for item in &vr.items {
        match item {
            Realization::Curve(g) => {
                if !branches.contains(&g.name) {
                    return Err(Error::UnknownBranch(g.name.clone()));
                }
                chosen.push(g.name.clone());
            }
            Realization::Divisorial { curvettes, .. } => {
                let l = curvettes[0].clone();
                chosen.push(l.name.clone());
                germs.push(l);
            }
        }
    }
    let extended = crate::resolve::resolve_germs(germs)?;
    crate::poincare::mixed_poincare(&extended, &[], &chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::PuiseuxBranch;
    use crate::resolve::resolve;

    fn smooth() -> Germ {
        PuiseuxBranch::from_int_terms("L", 1, &[], false)
            .unwrap()
            .to_germ()
    }

    fn cusp() -> Germ {
        PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false)
            .unwrap()
            .to_germ()
    }

    #[test]
    fn codim_smooth_branch() {
        let g = smooth();
        for k in 0..6u64 {
            assert_eq!(codim(&[&g], &[k]), k);
        }
    }

    #[test]
    fn codim_cusp_counts_semigroup_gaps() {
        let g = cusp();
        // h(w) = #(<2,3> intersect [0, w))
        let expected = [0u64, 1, 1, 2, 3, 4, 5, 6, 7];
        for (w, &h) in expected.iter().enumerate() {
            assert_eq!(codim(&[&g], &[w as u64]), h, "w = {w}");
        }
    }

    #[test]
    fn codim_zero_vector() {
        let g = cusp();
        assert_eq!(codim(&[&g], &[0]), 0);
    }

    #[test]
    fn codim_is_monotone_with_unit_steps() {
        let g = cusp();
        let mut prev = 0;
        for w in 1..=12u64 {
            let h = codim(&[&g], &[w]);
            assert!(h >= prev && h - prev <= 1);
            prev = h;
        }
    }

    #[test]
    fn bruteforce_smooth_branch() {
        let vr = ValuationRealization {
            items: vec![Realization::Curve(smooth())],
        };
        let s = poincare_bruteforce(&vr, &[5]).unwrap();
        for k in 0..=5u64 {
            assert_eq!(s.coeff(&Monomial(vec![k])), BigInt::one());
        }
    }

    #[test]
    fn bruteforce_cusp_semigroup() {
        let vr = ValuationRealization {
            items: vec![Realization::Curve(cusp())],
        };
        let s = poincare_bruteforce(&vr, &[10]).unwrap();
        let semigroup = [1i64, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1];
        for (k, &c) in semigroup.iter().enumerate() {
            assert_eq!(
                s.coeff(&Monomial(vec![k as u64])),
                BigInt::from(c),
                "k = {k}"
            );
        }
    }

    #[test]
    fn bruteforce_transverse_pair_is_one() {
        let l2 = PuiseuxBranch::from_int_terms("M", 1, &[], true)
            .unwrap()
            .to_germ();
        let vr = ValuationRealization {
            items: vec![Realization::Curve(smooth()), Realization::Curve(l2)],
        };
        let s = poincare_bruteforce(&vr, &[5, 5]).unwrap();
        assert_eq!(s.coeff(&Monomial(vec![0, 0])), BigInt::one());
        assert_eq!(s.len(), 1, "only the constant term survives: {s:?}");
    }

    #[test]
    fn bruteforce_divisorial_realization_is_curvette_filtration() {
        // the E1 realization at the first blowup is a generic line; its
        // curve filtration has series (1 - t)^{-1}
        let rc = resolve(&[PuiseuxBranch::from_int_terms("L", 1, &[], false).unwrap()]).unwrap();
        let mut seeds = SeedStream::new(0);
        let vr =
            ValuationRealization::from_filtration(&rc, &["E1".to_string()], &[], &mut seeds)
                .unwrap();
        let s = check_divisorial(&vr, &[6]).unwrap();
        for l in 0..=6u64 {
            assert_eq!(s.coeff(&Monomial(vec![l])), BigInt::one());
        }
        // and the engine reference form agrees after expansion
        let form = engine_reference_form(&rc, &vr, &[]).unwrap();
        let expanded = form.expand_int(6).unwrap();
        expanded.agree_on_common_region(&s).unwrap();
    }

    #[test]
    fn divisorial_seeds_agree_on_cusp_e3() {
        let rc = resolve(&[PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap()])
            .unwrap();
        let mut seeds = SeedStream::new(42);
        let vr =
            ValuationRealization::from_filtration(&rc, &["E3".to_string()], &[], &mut seeds)
                .unwrap();
        let s = check_divisorial(&vr, &[10]).unwrap();
        // the E3 filtration of the cusp has the same semigroup support
        let semigroup = [1i64, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1];
        for (k, &c) in semigroup.iter().enumerate() {
            assert_eq!(s.coeff(&Monomial(vec![k as u64])), BigInt::from(c));
        }
    }

    #[test]
    fn agreement_check_without_divisorial_indices() {
        // nothing to vary: the check degenerates to a single run
        let vr = ValuationRealization {
            items: vec![Realization::Curve(cusp())],
        };
        let direct = poincare_bruteforce(&vr, &[6]).unwrap();
        let checked = check_divisorial(&vr, &[6]).unwrap();
        assert_eq!(direct, checked);
    }

    #[test]
    fn seed_stream_avoids_special_slopes() {
        let rc = resolve(&[PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap()])
            .unwrap();
        let special = rc.special_seeds("E3").unwrap();
        let mut seeds = SeedStream::new(7);
        for _ in 0..50 {
            let s = seeds.next_for(&rc, "E3").unwrap();
            assert!(!special.contains(&s));
        }
    }
}
