// The elliptic surfaces E(2n) as iterated fiber sums of K3.
use rsw_calculus::engine::fiber_sum;
use rsw_calculus::model::catalog_entry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = catalog_entry("K3").expect("builtin");
    let (mut m, mut s) = (k3.clone(), k3.spinc[0].clone());
    println!("n  b₊   b₊^σ  σ     sw_int");
    for n in 1..=5 {
        let sw = s
            .sw_int
            .as_ref()
            .and_then(|z| z.as_scalar())
            .map(|z| z.to_string())
            .unwrap_or_default();
        println!(
            "{n}  {:<4} {:<5} {:<5} ±{sw}",
            m.b_plus_total,
            m.b_plus_inv(),
            m.signature
        );
        assert_eq!(m.b_plus_total, 4 * n - 1);
        (m, s) = fiber_sum(&m, &k3, &s, &k3.spinc[0])?;
    }
    Ok(())
}
