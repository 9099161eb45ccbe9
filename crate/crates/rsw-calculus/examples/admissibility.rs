// Which catalog records admit a nonzero Real degree witness.
use rsw_calculus::exotic::{check_admissible, nonzero_degree_witness};
use rsw_calculus::model::catalog;

fn main() {
    for m in catalog() {
        match check_admissible(&m) {
            Ok(w) => {
                let degree = nonzero_degree_witness(&m, &w)
                    .map(|d| format!("{:?}", d.guarantee))
                    .unwrap_or_else(|e| e.to_string());
                println!(
                    "{:<10} {} via {}  ({degree})",
                    m.name, w.case, w.witness_spinc
                );
            }
            Err(reasons) => println!("{:<10} not admissible: {}", m.name, reasons.join("; ")),
        }
    }
}
