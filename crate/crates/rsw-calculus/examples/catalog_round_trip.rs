// Serialize every catalog record and read it back.
use rsw_calculus::model::{catalog, validate, RealFourManifold};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in catalog() {
        let text = m.to_json();
        let back = RealFourManifold::from_json(&text)?;
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
        println!(
            "{:<10} {:>5} bytes  {} violation(s)",
            m.name,
            text.len(),
            validate(&m).len()
        );
    }
    let broken = catalog()[0]
        .to_json()
        .replacen("\"signature\"", "\"signatur\"", 1);
    if let Err(e) = RealFourManifold::from_json(&broken) {
        println!("rejected: {e}");
    }
    Ok(())
}
