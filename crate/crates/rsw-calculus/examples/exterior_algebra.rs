// Cup products in Z₂ and Z exterior algebras, and the Künneth embedding.
use rsw_calculus::ring::{kunneth, reduce_mod2, IntClass, LaurentClass, Mod2Class, Monomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let beta = 3;
    let v1 = IntClass::term(beta, Monomial::generator(1), 1);
    let v2 = IntClass::term(beta, Monomial::generator(2), 1);
    let v12 = v1.cup(&v2)?;
    let v21 = v2.cup(&v1)?;
    println!(
        "v1·v2 coefficient on v1v2: {}",
        v12.coeff(Monomial::from_bits(0b011))
    );
    println!(
        "v2·v1 coefficient on v1v2: {}",
        v21.coeff(Monomial::from_bits(0b011))
    );
    assert_eq!(v12.add(&v21)?, IntClass::zero(beta));

    let x = Mod2Class::from_gen_lists(beta, &[&[], &[1], &[2, 3]])?;
    let y = Mod2Class::from_gen_lists(beta, &[&[1], &[3]])?;
    let xy = x.cup(&y)?;
    println!(
        "(1 + v1 + v2v3)·(v1 + v3) has {} monomials; top pushforward = {}",
        xy.monomials().count(),
        xy.pushforward_top()
    );
    assert_eq!(
        reduce_mod2(&v12),
        Mod2Class::from_gen_lists(beta, &[&[1, 2]])?
    );

    let a = Mod2Class::from_gen_lists(1, &[&[1]])?;
    let b = Mod2Class::from_gen_lists(2, &[&[1, 2]])?;
    let ab = kunneth(&a, &b)?;
    println!(
        "Künneth product in β = {}: top pushforward {}",
        ab.beta(),
        ab.pushforward_top()
    );

    let u = LaurentClass::u_power(0, 1);
    let inv = LaurentClass::u_power(0, -1);
    assert_eq!(u.mul(&inv)?, LaurentClass::u_power(0, 0));
    println!("u · u⁻¹ = 1");
    Ok(())
}
