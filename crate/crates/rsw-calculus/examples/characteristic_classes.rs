// Stiefel–Whitney classes of virtual bundles and binomial parities.
use rsw_calculus::charclass::{binom_int, binom_mod2, total_from, VirtualBundle};
use rsw_calculus::ring::Mod2Class;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let beta = 2;
    let v = VirtualBundle::new(3, total_from(beta, &[&[1], &[1, 2]])?)?;
    let inv = v.invert();
    println!("rank(−V) = {}", inv.rank());
    for k in 0..=2 {
        println!("w{k}(−V) has {} monomials", inv.w(k).monomials().count());
    }
    assert!(v.sum(&inv)?.total().is_one());

    let lambda = Mod2Class::generator(beta, 2)?;
    let twisted = v.tensor_by_line(&lambda)?;
    assert_eq!(twisted.tensor_by_line(&lambda)?, v);
    println!("V ⊗ λ ⊗ λ = V");

    for (a, b) in [(10, 4), (-3, 2), (31, 17), (-7, 5)] {
        println!(
            "C({a},{b}) = {}  mod 2 = {}",
            binom_int(a, b)?,
            u8::from(binom_mod2(a, b)?)
        );
    }
    Ok(())
}
