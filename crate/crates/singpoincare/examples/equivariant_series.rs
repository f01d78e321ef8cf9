//! Equivariant Poincaré series over the divisor class group of a rational
//! surface singularity, and the invariant-part reduction.
//!
//! Run with: cargo run --example equivariant_series

use singpoincare::equivariant::{
    characters_from_linking, equivariant_poincare, expand_equivariant, invariant_part,
};
use singpoincare::graph::{Component, GraphMode, IdealSpec, ResolutionGraph};

fn main() {
    // the A1 singularity: one (-2)-curve; H = Z/2
    let graph = ResolutionGraph::new(
        vec![Component { id: "E1".into(), self_intersection: -2 }],
        vec![],
        vec![],
        vec![IdealSpec { name: "I".into(), k: vec![1] }],
    )
    .unwrap();
    let g = graph.validate(GraphMode::RationalSingularity).unwrap();
    let euler = g.euler_data();
    let ld = g.linking_data().unwrap();
    println!("|H| = {}, invariant factors {:?}", ld.d, ld.group.nontrivial_factors());

    let alphas = characters_from_linking(&g, &ld).unwrap();
    for (i, a) in alphas.iter().enumerate() {
        println!("alpha_{} = {} (order {})", i + 1, a.render(), a.order());
    }

    let form = equivariant_poincare(&g, &euler, &ld, &g.graph().ideal_specs).unwrap();
    println!("P^H(t) = {}", form.render());

    let series = expand_equivariant(&form, 12).unwrap();
    println!("expansion: {}", series.render());

    let inv = invariant_part(&series, 2).unwrap();
    println!("invariant part after t^2 -> t: {}", inv.render());
}
