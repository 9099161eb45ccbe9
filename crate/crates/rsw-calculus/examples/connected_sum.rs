// Equivariant connected sums with the catalog.
use rsw_calculus::engine::connected_sum;
use rsw_calculus::model::{catalog_entry, validate, Chamber};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = catalog_entry("K3").expect("builtin");
    for other in ["CP2bar", "S4", "K3"] {
        let n = catalog_entry(other).expect("builtin");
        let (m, s) = connected_sum(&k3, &n, &k3.spinc[0], &n.spinc[0], Chamber::Unique)?;
        println!(
            "{}: b₊ = {}, σ = {}, d = {}, sw_int = {:?}, valid = {}",
            m.name,
            m.b_plus_total,
            m.signature,
            s.d,
            s.sw_int
                .as_ref()
                .and_then(|z| z.as_scalar())
                .map(|z| z.to_string()),
            validate(&m).is_empty()
        );
    }
    Ok(())
}
