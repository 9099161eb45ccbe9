// Ordinary invariants from Real ones via localization.
use std::collections::BTreeMap;

use rsw_calculus::engine::{localize_b1zero, localize_general};
use rsw_calculus::model::{catalog_entry, RealFourManifold};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (bp, inv) in [(3, 1), (3, 2), (7, 3), (7, 4)] {
        println!(
            "b₊ = {bp}, b₊^σ = {inv}:  SW ≡ {} · SW_R",
            u8::from(localize_b1zero(bp, inv, true))
        );
    }

    let k3 = catalog_entry("K3").expect("builtin");
    let s = &k3.spinc[0];
    let loc = localize_general(&k3, s, &BTreeMap::from([(0, true)]), 0)?;
    println!(
        "K3: ordinary = {:?}",
        loc.ordinary.map(|c| c.constant_term())
    );

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/b1_one.rswm.json");
    let t7 = RealFourManifold::from_json(&std::fs::read_to_string(path)?)?;
    let loc = localize_general(&t7, &t7.spinc[0], &BTreeMap::new(), 0)?;
    for r in &loc.outcome.relations {
        println!("{}: {}", t7.name, r.text);
    }
    Ok(())
}
