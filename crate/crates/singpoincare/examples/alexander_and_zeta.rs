//! Alexander polynomial and monodromy zeta function of a two-branch curve.
//!
//! Run with: cargo run --example alexander_and_zeta

use singpoincare::poincare::{mixed_poincare, zeta_and_alexander};
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    let cusp = PuiseuxBranch::from_int_terms("cusp", 2, &[(3, 1)], false).unwrap();
    let line = PuiseuxBranch::from_int_terms("line", 1, &[], true).unwrap();
    let rc = resolve(&[cusp.clone(), line]).unwrap();

    // two-variable Poincaré series of the curve filtration
    let p2 = mixed_poincare(&rc, &[], &["cusp".into(), "line".into()]).unwrap();
    println!("P(t1, t2)    = {}", p2.render());
    let za = zeta_and_alexander(&p2);
    println!("Delta(t1,t2) = {} (r > 1: the series itself)", za.alexander.render());
    println!("zeta(t)      = {}", za.zeta.render());

    // one branch alone: Delta = (1 - t) * P
    let rc1 = resolve(&[cusp]).unwrap();
    let p1 = mixed_poincare(&rc1, &[], &["cusp".into()]).unwrap();
    let za1 = zeta_and_alexander(&p1);
    println!("single cusp:");
    println!("  P(t)     = {}", p1.render());
    println!("  Delta(t) = {}", za1.alexander.expand_int(8).unwrap().render());
}
