//! Verify a product formula against the brute-force jet-space oracle:
//! codimensions of filtration subspaces by exact Gaussian elimination,
//! assembled into series coefficients by inclusion-exclusion.
//!
//! Run with: cargo run --example jet_oracle

use singpoincare::graph::GraphMode;
use singpoincare::oracle::{codim, poincare_bruteforce, Realization, ValuationRealization};
use singpoincare::poincare::poincare_from_graph;
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    let cusp = PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap();
    let rc = resolve(&[cusp]).unwrap();
    let germ = rc.branch_germs()[0].clone();

    // jet-space codimensions h(w) = dim O / J(w)
    print!("h(0..8) along the cusp:");
    for w in 0..=8u64 {
        print!(" {}", codim(&[&germ], &[w]));
    }
    println!();

    // the full series from the oracle
    let vr = ValuationRealization { items: vec![Realization::Curve(germ)] };
    let oracle = poincare_bruteforce(&vr, &[15]).unwrap();
    println!("oracle:  {}", oracle.render());

    // the product formula, expanded
    let g = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let p = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs).unwrap();
    let engine = p.expand_int(15).unwrap();
    println!("engine:  {}", engine.render());

    engine.agree_on_common_region(&oracle).unwrap();
    println!("exact agreement on the common region.");
}
