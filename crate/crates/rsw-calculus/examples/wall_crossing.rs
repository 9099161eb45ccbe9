// Crossing the wall when `b₊^{-σ} = 1`.
use rsw_calculus::engine::wall_cross;
use rsw_calculus::model::{fixtures, table_get, Chamber};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in 1..=4 {
        for neg in [false, true] {
            let m = fixtures::wall(d, neg);
            let s = &m.spinc[0];
            let pos = wall_cross(&s.sw_mod2[&Chamber::Negative], s.d, &s.minus_dr)?;
            let row: Vec<u8> = (0..d)
                .map(|k| u8::from(table_get(&pos, k, 0).constant_term()))
                .collect();
            println!(
                "d = {d}  SW⁻_(d-1) = {}  SW⁺_0..d-1 = {row:?}",
                u8::from(neg)
            );
        }
    }
    Ok(())
}
