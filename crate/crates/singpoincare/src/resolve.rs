//! Embedded resolution of plane branches by simulated point blowups.
//!
//! The simulation tracks, at every infinitely-near point, the exact local
//! parametrization of each branch through it as a pair of rational functions
//! in `Q(t)`, together with which local coordinate axes are exceptional
//! components. Blowing up the local origin transforms a parametrization by
//! `(x, y) -> (x, y/x - c)` (chart of finite slope `c`) or `(x, y) -> (x/y, y)`
//! (the infinite-slope chart); both stay in `Q(t)`, so the process is exact
//! from start to finish.
//!
//! Blowups continue until every branch meets exactly one exceptional
//! component, transversally, at a smooth point occupied by nothing else.
//! The result records the dual graph, the infinitely-near point tree with
//! proximities and multiplicities, the full valuation table, and enough
//! chart data to push transversal germs (curvettes) down to the plane.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Arrow, Component, IdealSpec, ResolutionGraph};
use crate::puiseux::{Germ, PuiseuxBranch, QPoly, RatFunc};
use crate::rational::Rat;

/// Hard cap on blown-up points. Distinct germs separate after finitely many
/// blowups (bounded by their intersection number); hitting the cap means two
/// inputs parametrize the same germ or an input is not primitive.
const MAX_POINTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartStep {
    /// Finite-slope chart recentered at slope `c`:
    /// parent coords = `(x, x*(y + c))`.
    A(Rat),
    /// Infinite-slope chart: parent coords = `(x*y, y)`.
    B,
}

/// One infinitely-near point of the resolution; index i corresponds to the
/// exceptional component `E_{i+1}` created by blowing it up.
#[derive(Clone, Debug)]
pub struct PointRecord {
    pub id: String,
    pub parent: Option<usize>,
    /// Indices of the earlier points whose exceptional components pass
    /// through this point.
    pub proximate_to: BTreeSet<usize>,
    pub branches_through: BTreeSet<String>,
    /// Multiplicity of each branch through this point.
    pub multiplicities: BTreeMap<String, u64>,
}

#[derive(Clone, Debug)]
pub struct InfinitelyNearTree {
    pub points: Vec<PointRecord>,
}

/// Chart data kept per component for curvette construction.
#[derive(Clone, Debug)]
struct ComponentChart {
    /// Steps from the ambient plane down to the local frame of the point
    /// whose blowup created this component.
    center_path: Vec<ChartStep>,
    /// Finite slopes on this component occupied by corners, later centers,
    /// or arrow points; curvette seeds must avoid them.
    special_slopes: BTreeSet<Rat>,
}

#[derive(Clone, Debug)]
pub struct ResolvedCurve {
    pub graph: ResolutionGraph,
    pub tree: InfinitelyNearTree,
    /// Input branches, in order.
    pub branch_names: Vec<String>,
    germs: Vec<Germ>,
    /// `valuations[sigma][j]` = v_sigma(C_j), components and branches in order.
    pub valuations: Vec<Vec<u64>>,
    charts: Vec<ComponentChart>,
}

struct SiteBranch {
    index: usize,
    x: RatFunc,
    y: RatFunc,
}

impl SiteBranch {
    fn ord_x(&self) -> Option<i64> {
        self.x.ord()
    }

    fn ord_y(&self) -> Option<i64> {
        self.y.ord()
    }

    fn multiplicity(&self) -> u64 {
        match (self.ord_x(), self.ord_y()) {
            (Some(a), Some(b)) => a.min(b) as u64,
            (Some(a), None) => a as u64,
            (None, Some(b)) => b as u64,
            (None, None) => unreachable!("germ with both coordinates zero"),
        }
    }
}

struct Site {
    exc_x: Option<usize>,
    exc_y: Option<usize>,
    path: Vec<ChartStep>,
    branches: Vec<SiteBranch>,
}

impl Site {
    /// A non-root site needs no blowup when a single branch meets a single
    /// exceptional component transversally there.
    fn finished_branch(&self) -> Option<usize> {
        if self.branches.len() != 1 {
            return None;
        }
        let b = &self.branches[0];
        let transversal = match (self.exc_x, self.exc_y) {
            (Some(_), None) => b.ord_x() == Some(1),
            (None, Some(_)) => b.ord_y() == Some(1),
            _ => false,
        };
        transversal.then(|| self.exc_x.or(self.exc_y).unwrap())
    }
}

/// Resolve a collection of branches in Puiseux normal form.
pub fn resolve(branches: &[PuiseuxBranch]) -> Result<ResolvedCurve> {
    for (i, a) in branches.iter().enumerate() {
        for b in &branches[i + 1..] {
            if a.same_germ(b) {
                return Err(Error::IndistinguishableBranches(
                    a.name.clone(),
                    b.name.clone(),
                ));
            }
        }
    }
    resolve_germs(branches.iter().map(|b| b.to_germ()).collect())
}

/// Resolve exact parametrized germs (the general entry point; curvettes and
/// other pushed-down germs are not in normal form).
pub fn resolve_germs(germs: Vec<Germ>) -> Result<ResolvedCurve> {
    if germs.is_empty() {
        return Err(Error::InvalidInput("no branches given".into()));
    }
    let mut names = BTreeSet::new();
    for g in &germs {
        if !names.insert(g.name.clone()) {
            return Err(Error::InvalidInput(format!(
                "duplicate branch name `{}`",
                g.name
            )));
        }
    }

    let mut sim = Simulation {
        names: germs.iter().map(|g| g.name.clone()).collect(),
        points: Vec::new(),
        self_int: Vec::new(),
        edges: BTreeSet::new(),
        arrows: Vec::new(),
        charts: Vec::new(),
    };

    let root = Site {
        exc_x: None,
        exc_y: None,
        path: Vec::new(),
        branches: germs
            .iter()
            .enumerate()
            .map(|(i, g)| SiteBranch {
                index: i,
                x: RatFunc::from_poly(g.x.clone()),
                y: RatFunc::from_poly(g.y.clone()),
            })
            .collect(),
    };

    let mut queue = VecDeque::new();
    queue.push_back(root);
    let mut is_root = true;
    while let Some(site) = queue.pop_front() {
        if !is_root {
            if let Some(comp) = site.finished_branch() {
                let b = &site.branches[0];
                sim.arrows.push(Arrow {
                    component: comp,
                    label: germs[b.index].name.clone(),
                });
                continue;
            }
        }
        if sim.points.len() >= MAX_POINTS {
            return Err(separation_failure(&germs, &site));
        }
        let children = sim.blow_up(site);
        for child in children {
            queue.push_back(child);
        }
        is_root = false;
    }

    sim.finish(germs)
}

fn separation_failure(germs: &[Germ], site: &Site) -> Error {
    if site.branches.len() >= 2 {
        Error::IndistinguishableBranches(
            germs[site.branches[0].index].name.clone(),
            germs[site.branches[1].index].name.clone(),
        )
    } else {
        let name = germs[site.branches[0].index].name.clone();
        Error::NotPrimitive(name)
    }
}

struct Simulation {
    names: Vec<String>,
    points: Vec<PointRecord>,
    self_int: Vec<i64>,
    edges: BTreeSet<(usize, usize)>,
    arrows: Vec<Arrow>,
    charts: Vec<ComponentChart>,
}

impl Simulation {
    fn blow_up(&mut self, site: Site) -> Vec<Site> {
        let new = self.points.len();
        let exc: Vec<usize> = [site.exc_x, site.exc_y].into_iter().flatten().collect();

        let mut record = PointRecord {
            id: format!("P{}", new + 1),
            parent: exc.iter().max().copied(),
            proximate_to: exc.iter().copied().collect(),
            branches_through: BTreeSet::new(),
            multiplicities: BTreeMap::new(),
        };
        for b in &site.branches {
            let name = self.names[b.index].clone();
            record.multiplicities.insert(name.clone(), b.multiplicity());
            record.branches_through.insert(name);
        }
        self.points.push(record);

        self.self_int.push(-1);
        for &q in &exc {
            self.self_int[q] -= 1;
        }
        if let (Some(a), Some(b)) = (site.exc_x, site.exc_y) {
            self.edges.remove(&(a.min(b), a.max(b)));
        }
        for &q in &exc {
            self.edges.insert((q.min(new), q.max(new)));
        }

        // route each branch through the blowup
        let mut chart_a: BTreeMap<Rat, Vec<SiteBranch>> = BTreeMap::new();
        let mut chart_b: Vec<SiteBranch> = Vec::new();
        for b in site.branches {
            let goes_a = match (b.ord_x(), b.ord_y()) {
                (Some(ox), Some(oy)) => ox <= oy,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if goes_a {
                let v = b.y.div(&b.x);
                let c = v.value_at_zero();
                let moved = SiteBranch {
                    index: b.index,
                    y: v.sub_const(&c),
                    x: b.x,
                };
                chart_a.entry(c).or_default().push(moved);
            } else {
                chart_b.push(SiteBranch {
                    index: b.index,
                    x: b.x.div(&b.y),
                    y: b.y,
                });
            }
        }

        let mut special: BTreeSet<Rat> = chart_a.keys().cloned().collect();
        if site.exc_y.is_some() {
            special.insert(Rat::zero());
        }
        self.charts.push(ComponentChart {
            center_path: site.path.clone(),
            special_slopes: special,
        });

        let mut children = Vec::new();
        for (c, branches) in chart_a {
            let exc_y = if c.is_zero() { site.exc_y } else { None };
            let mut path = site.path.clone();
            path.push(ChartStep::A(c));
            children.push(Site {
                exc_x: Some(new),
                exc_y,
                path,
                branches,
            });
        }
        if !chart_b.is_empty() {
            let mut path = site.path.clone();
            path.push(ChartStep::B);
            children.push(Site {
                exc_x: site.exc_x,
                exc_y: Some(new),
                path,
                branches: chart_b,
            });
        }
        children
    }

    fn finish(self, germs: Vec<Germ>) -> Result<ResolvedCurve> {
        let branch_names = self.names.clone();
        let n = self.points.len();
        let r = branch_names.len();

        // total-transform valuations from the proximity recursion
        // v_p(C) = m_p(C) + sum over points q with p proximate to q of v_q(C)
        let mut valuations = vec![vec![0u64; r]; n];
        for p in 0..n {
            for (j, name) in branch_names.iter().enumerate() {
                let m = self.points[p]
                    .multiplicities
                    .get(name)
                    .copied()
                    .unwrap_or(0);
                let inherited: u64 = self.points[p]
                    .proximate_to
                    .iter()
                    .map(|&q| valuations[q][j])
                    .sum();
                valuations[p][j] = m + inherited;
            }
        }

        let components = (0..n)
            .map(|i| Component {
                id: format!("E{}", i + 1),
                self_intersection: self.self_int[i],
            })
            .collect();
        let ideal_specs = branch_names
            .iter()
            .enumerate()
            .map(|(j, name)| IdealSpec {
                name: name.clone(),
                k: (0..n).map(|p| valuations[p][j]).collect(),
            })
            .collect();
        let graph = ResolutionGraph {
            components,
            edges: self.edges.into_iter().collect(),
            arrows: self.arrows,
            ideal_specs,
        };

        Ok(ResolvedCurve {
            graph,
            tree: InfinitelyNearTree {
                points: self.points,
            },
            branch_names,
            germs,
            valuations,
            charts: self.charts,
        })
    }
}

impl ResolvedCurve {
    pub fn component_count(&self) -> usize {
        self.graph.components.len()
    }

    /// The input germs, in branch order.
    pub fn branch_germs(&self) -> &[Germ] {
        &self.germs
    }

    /// Valuation vector of one branch across all components.
    pub fn valuation_vector(&self, branch: &str) -> Result<Vec<u64>> {
        let j = self
            .branch_names
            .iter()
            .position(|n| n == branch)
            .ok_or_else(|| Error::UnknownBranch(branch.to_string()))?;
        Ok((0..self.component_count())
            .map(|p| self.valuations[p][j])
            .collect())
    }

    /// The component carrying the arrow of a branch.
    pub fn arrow_component(&self, branch: &str) -> Result<usize> {
        self.graph
            .arrows
            .iter()
            .find(|a| a.label == branch)
            .map(|a| a.component)
            .ok_or_else(|| Error::UnknownBranch(branch.to_string()))
    }

    /// Finite slopes on a component that a curvette seed must avoid.
    pub fn special_seeds(&self, component: &str) -> Result<Vec<Rat>> {
        let idx = self.graph.component_index(component)?;
        Ok(self.charts[idx].special_slopes.iter().cloned().collect())
    }

    /// A smooth transversal germ through a generic point of `E_sigma`,
    /// pushed down to the plane. The germ depends on the `seed` slope;
    /// any seed off the finite special set gives a curve with valuation
    /// vector equal to column sigma of the linking matrix.
    pub fn curvette(&self, component: &str, seed: &Rat) -> Result<Germ> {
        let idx = self.graph.component_index(component)?;
        let chart = &self.charts[idx];
        if chart.special_slopes.contains(seed) {
            return Err(Error::SeedNotGeneric(
                crate::rational::render_rat(seed),
                component.to_string(),
            ));
        }
        // transversal germ at slope `seed` in the local frame of the center:
        // (x, y) = (s, seed * s), then push down the recorded chart path
        let mut x = QPoly::monomial(Rat::one(), 1);
        let mut y = QPoly::monomial(seed.clone(), 1);
        for step in chart.center_path.iter().rev() {
            match step {
                ChartStep::A(c) => {
                    let shifted = y.add(&QPoly::monomial(c.clone(), 0));
                    y = x.mul(&shifted);
                }
                ChartStep::B => {
                    x = x.mul(&y);
                }
            }
        }
        Germ::new(
            format!("L({};{})", component, crate::rational::render_rat(seed)),
            x,
            y,
        )
    }
}

/// Intersection number of two distinct germs by Noether's formula: the sum
/// over shared infinitely-near points of the product of multiplicities.
/// When either germ is exactly a graph `y = g(x)` (or `x = g(y)`), the result
/// is cross-checked against the order of the defining equation composed with
/// the other parametrization.
pub fn intersection_number(a: &Germ, b: &Germ) -> Result<u64> {
    let mut a = a.clone();
    let mut b = b.clone();
    a.name = "__first".into();
    b.name = "__second".into();
    let rc = resolve_germs(vec![a.clone(), b.clone()])?;
    let mut total = 0u64;
    for p in &rc.tree.points {
        let ma = p.multiplicities.get("__first").copied().unwrap_or(0);
        let mb = p.multiplicities.get("__second").copied().unwrap_or(0);
        total += ma * mb;
    }

    for (graph_germ, other) in [(&a, &b), (&b, &a)] {
        let by_equation = if let Some(g) = graph_germ.graph_over_x() {
            // equation y - g(x) evaluated along the other parametrization
            Some(other.y.sub(&g.compose(&other.x)))
        } else {
            graph_germ
                .graph_over_y()
                .map(|g| other.x.sub(&g.compose(&other.y)))
        };
        if let Some(f) = by_equation {
            let ord = f.ord().expect("distinct germs have finite contact") as u64;
            assert_eq!(
                ord, total,
                "Noether sum disagrees with substitution order for {graph_germ:?} vs {other:?}"
            );
        }
    }
    Ok(total)
}
