//! Mixed divisorial/curve filtrations: valuations by chosen exceptional
//! components and chosen branches at once.
//!
//! Run with: cargo run --example mixed_filtration

use singpoincare::poincare::mixed_poincare;
use singpoincare::{resolve, PuiseuxBranch};

fn main() {
    let cusp = PuiseuxBranch::from_int_terms("cusp", 2, &[(3, 1)], false).unwrap();
    let rc = resolve(&[cusp]).unwrap();

    // one divisorial index (the central component) and the branch itself
    let p = mixed_poincare(&rc, &["E3".into()], &["cusp".into()]).unwrap();
    let names = vec!["t".to_string(), "T".to_string()];
    println!("P(t, T) = {}", p.render_with(&names));

    // purely divisorial: every component of the resolution
    let all = rc.graph.component_ids();
    let pd = mixed_poincare(&rc, &all, &[]).unwrap();
    println!("divisorial P(t1, t2, t3) = {}", pd.render());

    // expansion of the two-index series
    let series = p.expand_int(10).unwrap();
    println!("expansion to total degree 10:\n  {}", series.render_with(&names));
}
