// Invariant sets `A_n = 3^{rn}·A_0` separating an infinite family.
use std::collections::BTreeSet;

use rsw_calculus::exotic::{a0_from_manifold, exotic_family};
use rsw_calculus::model::catalog_entry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = exotic_family(&BTreeSet::from([2]), 5)?;
    print!("{}", report.to_text());

    let k3 = catalog_entry("K3").expect("builtin");
    let a0 = a0_from_manifold(&k3);
    println!("A_0 from K3 = {a0:?}");
    let report = exotic_family(&a0, 3)?;
    println!("distinct = {}  bands = {}", report.distinct, report.bands);
    Ok(())
}
