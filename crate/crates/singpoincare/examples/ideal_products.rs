//! Ideals as products of divisorial and curve ideals, and their Poincaré
//! series by monomial substitution into the mixed base series.
//!
//! Run with: cargo run --example ideal_products

use std::collections::BTreeMap;

use singpoincare::graph::GraphMode;
use singpoincare::ideal::{
    divisorial_exponents, mixed_base, poincare_of_ideal, poincare_of_ideal_set,
    IdealPresentation,
};
use singpoincare::rational::rat_int;
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    let cusp = PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap();
    let rc = resolve(&[cusp]).unwrap();

    // the linking matrix sends presentation exponents to multiplicities
    let checked = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let ld = checked.linking_data().unwrap();
    let mult = divisorial_exponents(&ld, &[0, 0, 1]).unwrap();
    println!(
        "I_E3 has multiplicities M * e_3 = {:?}",
        mult.iter().map(singpoincare::rational::render_rat).collect::<Vec<_>>()
    );

    // P of the principal ideal of the cusp curve
    let base = mixed_base(&rc, &["C".to_string()]).unwrap();
    let principal = IdealPresentation {
        name: "f".into(),
        divisorial: BTreeMap::new(),
        curves: BTreeMap::from([("C".to_string(), 1u64)]),
    };
    println!("P_<f>(t) = {}", poincare_of_ideal(&base, &principal).unwrap().render());

    // P of the divisorial ideal I_E3 (no curve factors)
    let base0 = mixed_base(&rc, &[]).unwrap();
    let divisorial = IdealPresentation {
        name: "I_E3".into(),
        divisorial: BTreeMap::from([("E3".to_string(), rat_int(1))]),
        curves: BTreeMap::new(),
    };
    println!("P_I(t)   = {}", poincare_of_ideal(&base0, &divisorial).unwrap().render());

    // a set of two ideals gives a two-variable series
    let product = IdealPresentation {
        name: "I*f".into(),
        divisorial: BTreeMap::from([("E3".to_string(), rat_int(1))]),
        curves: BTreeMap::from([("C".to_string(), 1u64)]),
    };
    let pair = poincare_of_ideal_set(&base, &[principal, product]).unwrap();
    println!("P(t1, t2) = {}", pair.render());
}
