//! Dual graphs of resolutions and their derived data.
//!
//! A [`ResolutionGraph`] records the combinatorics of an embedded resolution:
//! exceptional components with self-intersections, normal-crossing incidences
//! (edges), strict transforms of curve branches (arrows), and named
//! multiplicity vectors of ideals. All components are rational curves.
//!
//! Derived quantities:
//! - `chi(E_sigma^o)`: Euler characteristic of a component minus its
//!   incidences with other components and arrows,
//! - the linking matrix `M = -E^{-1}`, the determinant `d = det(-E)`, and the
//!   divisor class group `H = Z^Gamma / Im(-E)` in invariant-factor form.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::{denominator_lcm, Rat};
use crate::snf::{smith_normal_form, FiniteAbelianGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub self_intersection: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    /// Index of the component the strict transform meets.
    pub component: usize,
    pub label: String,
}

/// A named multiplicity vector `k_sigma`, indexed like `components`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub k: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub components: Vec<Component>,
    /// Unordered pairs of component indices; multi-edges allowed, no loops.
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<Arrow>,
    pub ideal_specs: Vec<IdealSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphMode {
    /// Embedded resolution over the plane: `det(-E) = 1`.
    PlaneCurve,
    /// Resolution of a normal surface singularity: `-E` positive definite.
    RationalSingularity,
}

impl ResolutionGraph {
    /// Build from id-based data, checking every reference.
    pub fn new(
        components: Vec<Component>,
        edges: Vec<(String, String)>,
        arrows: Vec<(String, String)>,
        ideal_specs: Vec<IdealSpec>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::BadReference(format!(
                    "duplicate component id `{}`",
                    c.id
                )));
            }
        }
        let lookup = |id: &str| -> Result<usize> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::BadReference(format!("unknown component `{id}`")))
        };
        let mut edge_idx = Vec::new();
        for (a, b) in &edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::BadReference(format!("self-loop on `{a}`")));
            }
            edge_idx.push((i.min(j), i.max(j)));
        }
        let mut arrow_idx = Vec::new();
        for (comp, label) in &arrows {
            arrow_idx.push(Arrow {
                component: lookup(comp)?,
                label: label.clone(),
            });
        }
        for spec in &ideal_specs {
            if spec.k.len() != components.len() {
                return Err(Error::DimensionMismatch(format!(
                    "ideal `{}` has {} multiplicities for {} components",
                    spec.name,
                    spec.k.len(),
                    components.len()
                )));
            }
        }
        Ok(ResolutionGraph {
            components,
            edges: edge_idx,
            arrows: arrow_idx,
            ideal_specs,
        })
    }

    pub fn component_index(&self, id: &str) -> Result<usize> {
        self.components
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    pub fn component_ids(&self) -> Vec<String> {
        self.components.iter().map(|c| c.id.clone()).collect()
    }

    /// The intersection matrix `E`: self-intersections on the diagonal,
    /// incidence counts off it.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.components.len();
        let mut e = IntMatrix::zero(n, n);
        for (i, c) in self.components.iter().enumerate() {
            *e.get_mut(i, i) = BigInt::from(c.self_intersection);
        }
        for &(a, b) in &self.edges {
            *e.get_mut(a, b) += 1;
            *e.get_mut(b, a) += 1;
        }
        e
    }

    fn is_connected(&self) -> bool {
        let n = self.components.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Check all structural invariants for the given mode.
    pub fn validate(self, mode: GraphMode) -> Result<CheckedGraph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        for c in &self.components {
            if c.self_intersection >= 0 {
                return Err(Error::InvalidInput(format!(
                    "component `{}` has non-negative self-intersection {}",
                    c.id, c.self_intersection
                )));
            }
        }
        let minus_e = self.intersection_matrix().neg();
        match mode {
            GraphMode::PlaneCurve => {
                let d = minus_e.determinant();
                if d != BigInt::one() {
                    return Err(Error::NotUnimodular(d));
                }
            }
            GraphMode::RationalSingularity => {
                if !minus_e.is_positive_definite() {
                    return Err(Error::NotNegativeDefinite);
                }
            }
        }
        Ok(CheckedGraph { graph: self, mode })
    }

    /// Blow up the corner where two adjacent components meet: one incidence
    /// between `a` and `b` is replaced by a new `(-1)`-component meeting both,
    /// and every ideal's multiplicity there is `k_a + k_b`. The new component
    /// has `chi(E^o) = 0`, so A'Campo-type products are unchanged.
    pub fn blow_up_corner(&self, a: &str, b: &str, new_id: &str) -> Result<ResolutionGraph> {
        let ia = self.component_index(a)?;
        let ib = self.component_index(b)?;
        let key = (ia.min(ib), ia.max(ib));
        let pos = self
            .edges
            .iter()
            .position(|&e| e == key)
            .ok_or_else(|| Error::BadReference(format!("`{a}` and `{b}` do not meet")))?;
        if self.components.iter().any(|c| c.id == new_id) {
            return Err(Error::BadReference(format!("duplicate component id `{new_id}`")));
        }
        let mut g = self.clone();
        g.edges.remove(pos);
        let inew = g.components.len();
        g.components.push(Component {
            id: new_id.to_string(),
            self_intersection: -1,
        });
        g.components[ia].self_intersection -= 1;
        g.components[ib].self_intersection -= 1;
        g.edges.push((ia, inew));
        g.edges.push((ib, inew));
        for spec in &mut g.ideal_specs {
            let sum = spec.k[ia] + spec.k[ib];
            spec.k.push(sum);
        }
        Ok(g)
    }
}

/// A graph whose invariants have been verified for a mode.
#[derive(Clone, Debug)]
pub struct CheckedGraph {
    graph: ResolutionGraph,
    mode: GraphMode,
}

impl CheckedGraph {
    pub fn graph(&self) -> &ResolutionGraph {
        &self.graph
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    /// `chi(E_sigma^o) = 2 - (edge incidences at sigma) - (arrows at sigma)`.
    pub fn euler_data(&self) -> EulerData {
        let n = self.graph.components.len();
        let mut chi = vec![2i64; n];
        for &(a, b) in &self.graph.edges {
            chi[a] -= 1;
            chi[b] -= 1;
        }
        for arrow in &self.graph.arrows {
            chi[arrow.component] -= 1;
        }
        EulerData { chi }
    }

    /// Linking data: `M = -E^{-1}`, `d = det(-E)`, and the class group.
    pub fn linking_data(&self) -> Result<LinkingData> {
        let e = self.graph.intersection_matrix();
        let minus_e = e.neg();
        let d = minus_e.determinant();
        if d.is_zero() {
            return Err(Error::SingularIntersectionMatrix);
        }
        let m = match e.to_rat().invert() {
            Ok(inv) => inv.neg(),
            Err(_) => return Err(Error::SingularIntersectionMatrix),
        };
        debug_assert!(m.is_symmetric());
        debug_assert_eq!(e.to_rat().mul(&m), RatMatrix::identity(m.rows()).neg());
        // cokernel of -E; the image lattice agrees with that of E, the sign
        // keeps invariant factors positive deterministically
        let group = FiniteAbelianGroup::from_smith(&smith_normal_form(&minus_e));
        debug_assert_eq!(group.order(), d.abs());
        Ok(LinkingData { m, d, group })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerData {
    /// Indexed like `components`.
    pub chi: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct LinkingData {
    /// `M = (m_{sigma delta}) = -E^{-1}`, symmetric.
    pub m: RatMatrix,
    /// `d = det(-E) = |H|`.
    pub d: BigInt,
    /// `H = Z^Gamma / Im(-E)`.
    pub group: FiniteAbelianGroup,
}

impl LinkingData {
    /// Order `d_sigma` of the loop class `h_sigma` in `H`: the least natural
    /// number making row sigma of `M` integral.
    pub fn element_order(&self, sigma: usize) -> BigInt {
        let row = self.m.row(sigma);
        let by_denominators = denominator_lcm(&row);
        debug_assert_eq!(by_denominators, self.group.generator_order(sigma));
        by_denominators
    }

    /// Column sigma of `M` as exact rationals.
    pub fn column(&self, sigma: usize) -> Vec<Rat> {
        (0..self.m.rows()).map(|i| self.m.get(i, sigma).clone()).collect()
    }
}

/// Constructors for the small worked examples used across the test suites.
pub mod fixtures {
    use super::*;

    /// One blowup of a smooth branch: a single (-1) component with one arrow.
    pub fn smooth_graph() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![Component {
                id: "E1".into(),
                self_intersection: -1,
            }],
            vec![],
            vec![("E1".into(), "C".into())],
            vec![IdealSpec {
                name: "C".into(),
                k: vec![1],
            }],
        )
        .unwrap()
    }

    /// The cusp resolution graph with the branch arrow on E3 and the curve
    /// ideal k = (2,3,6).
    pub fn cusp_graph() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![
                Component {
                    id: "E1".into(),
                    self_intersection: -3,
                },
                Component {
                    id: "E2".into(),
                    self_intersection: -2,
                },
                Component {
                    id: "E3".into(),
                    self_intersection: -1,
                },
            ],
            vec![("E1".into(), "E3".into()), ("E2".into(), "E3".into())],
            vec![("E3".into(), "C".into())],
            vec![IdealSpec {
                name: "C".into(),
                k: vec![2, 3, 6],
            }],
        )
        .unwrap()
    }

    /// The A1 singularity: a single (-2) curve.
    pub fn a1_graph() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![Component {
                id: "E1".into(),
                self_intersection: -2,
            }],
            vec![],
            vec![],
            vec![IdealSpec {
                name: "I".into(),
                k: vec![1],
            }],
        )
        .unwrap()
    }

    /// The A2 chain of two (-2) curves.
    pub fn a2_graph() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![
                Component {
                    id: "E1".into(),
                    self_intersection: -2,
                },
                Component {
                    id: "E2".into(),
                    self_intersection: -2,
                },
            ],
            vec![("E1".into(), "E2".into())],
            vec![],
            vec![],
        )
        .unwrap()
    }
}
