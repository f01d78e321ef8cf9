//! Curvettes: smooth transversal germs through exceptional components,
//! pushed down to the plane. Their pairwise intersection numbers recover
//! the linking matrix M = -E^{-1}.
//!
//! Run with: cargo run --example curvettes_and_linking

use singpoincare::graph::GraphMode;
use singpoincare::rational::{rat, render_rat};
use singpoincare::resolve::intersection_number;
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    let cusp = PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap();
    let rc = resolve(&[cusp]).unwrap();

    let checked = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let ld = checked.linking_data().unwrap();

    println!("curvettes at generic seeds:");
    for id in rc.graph.component_ids() {
        let l = rc.curvette(&id, &rat(5, 3)).unwrap();
        println!("  {:?}", l);
    }

    println!("intersection numbers vs linking matrix:");
    let n = rc.graph.components.len();
    for s in 0..n {
        for d in s..n {
            let a = rc.curvette(&format!("E{}", s + 1), &rat(5, 3)).unwrap();
            let b = rc.curvette(&format!("E{}", d + 1), &rat(7, 2)).unwrap();
            let got = intersection_number(&a, &b).unwrap();
            println!(
                "  (L_{} . L_{}) = {}   m[{}][{}] = {}",
                s + 1,
                d + 1,
                got,
                s + 1,
                d + 1,
                render_rat(ld.m.get(s, d))
            );
        }
    }

    // seeds on special slopes are rejected
    match rc.curvette("E3", &rat(1, 1)) {
        Err(e) => println!("seed 1 on E3: {e}"),
        Ok(_) => unreachable!(),
    }
}
