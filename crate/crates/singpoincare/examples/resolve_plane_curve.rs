//! Resolve a plane curve singularity from Puiseux parametrizations and
//! inspect the dual graph, the infinitely-near point tree, and the
//! valuation table.
//!
//! Run with: cargo run --example resolve_plane_curve

use singpoincare::graph::GraphMode;
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    // x = t^2, y = t^3 (an ordinary cusp) together with the y-axis
    let cusp = PuiseuxBranch::from_int_terms("cusp", 2, &[(3, 1)], false).unwrap();
    let line = PuiseuxBranch::from_int_terms("axis", 1, &[], true).unwrap();

    let rc = resolve(&[cusp, line]).unwrap();

    println!("components:");
    let checked = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let euler = checked.euler_data();
    for (i, c) in rc.graph.components.iter().enumerate() {
        println!(
            "  {}  self-intersection {}  chi(E^o) = {}",
            c.id, c.self_intersection, euler.chi[i]
        );
    }

    println!("edges:");
    for &(a, b) in &rc.graph.edges {
        println!(
            "  {} -- {}",
            rc.graph.components[a].id, rc.graph.components[b].id
        );
    }

    println!("arrows (strict transforms):");
    for arrow in &rc.graph.arrows {
        println!("  {} meets {}", arrow.label, rc.graph.components[arrow.component].id);
    }

    println!("infinitely-near points:");
    for p in &rc.tree.points {
        println!(
            "  {}  proximate to {:?}  multiplicities {:?}",
            p.id, p.proximate_to, p.multiplicities
        );
    }

    println!("valuation table v_sigma(C_j):");
    for spec in &rc.graph.ideal_specs {
        println!("  {}: {:?}", spec.name, spec.k);
    }
}
