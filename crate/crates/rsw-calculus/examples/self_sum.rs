// `X # X` with the swap involution, from ordinary data of `X`.
use std::collections::BTreeMap;

use rsw_calculus::engine::{self_sum, OrdinaryData};
use rsw_calculus::model::{validate, Chamber};
use rsw_calculus::ring::Mod2Class;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = OrdinaryData {
        name: "X".into(),
        b1: 0,
        b_plus: 3,
        signature: -16,
        d: 2,
        is_spin: false,
        sw: Some(BTreeMap::from([(
            Chamber::Unique,
            BTreeMap::from([(0, Mod2Class::one(0))]),
        )])),
        sw_int: None,
        minus_d_total: None,
    };
    let (m, s) = self_sum(&x)?;
    println!(
        "{}: b₊ = {}, b₊^σ = {}, d = {}",
        m.name,
        m.b_plus_total,
        m.b_plus_inv(),
        s.d
    );
    for (ch, t) in &s.sw_mod2 {
        for (k, c) in t {
            println!("  SW_R,{k} ({ch}) = {}", u8::from(c.constant_term()));
        }
    }
    println!("valid: {}", validate(&m).is_empty());
    Ok(())
}
