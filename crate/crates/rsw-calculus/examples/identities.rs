// The universal identities detecting an inconsistent stored table.
use rsw_calculus::engine::check_identities;
use rsw_calculus::model::fixtures;

fn main() {
    for m in [fixtures::identity_d4(), fixtures::identity_d4_flipped()] {
        let v = check_identities(&m.spinc[0], m.beta(), 4, 8);
        println!("{}: {} violation(s)", m.name, v.len());
        for x in &v {
            println!("  {} at {}: {}", x.rule, x.locus, x.detail);
        }
    }
}
