//! The product formula on a dual graph entered directly: components with
//! self-intersections, edges, arrows, and a multiplicity vector per ideal.
//!
//! Run with: cargo run --example poincare_product

use singpoincare::graph::{Component, GraphMode, IdealSpec, ResolutionGraph};
use singpoincare::poincare::poincare_from_graph;

fn main() {
    // the cusp resolution graph: E1(-3), E2(-2), E3(-1) in a star at E3,
    // branch arrow on E3, curve ideal with multiplicities (2, 3, 6)
    let graph = ResolutionGraph::new(
        vec![
            Component { id: "E1".into(), self_intersection: -3 },
            Component { id: "E2".into(), self_intersection: -2 },
            Component { id: "E3".into(), self_intersection: -1 },
        ],
        vec![("E1".into(), "E3".into()), ("E2".into(), "E3".into())],
        vec![("E3".into(), "C".into())],
        vec![IdealSpec { name: "C".into(), k: vec![2, 3, 6] }],
    )
    .unwrap();

    let checked = graph.validate(GraphMode::PlaneCurve).unwrap();
    let euler = checked.euler_data();
    println!("chi(E^o) per component: {:?}", euler.chi);

    let p = poincare_from_graph(&checked, &euler, &checked.graph().ideal_specs).unwrap();
    println!("P(t) = {}", p.render());

    let series = p.expand_int(20).unwrap();
    println!("expansion to degree 20:\n  {}", series.render());
    println!("(the support is the numerical semigroup <2,3>)");
}
