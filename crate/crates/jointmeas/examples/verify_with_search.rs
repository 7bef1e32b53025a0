//! Cross-check an analytic approximation against the derivative-free search
//! over all jointly measurable triples.

use jointmeas::{approximate, certify, MeasurementTriple, OracleConfig};

fn main() -> jointmeas::Result<()> {
    let m = MeasurementTriple::pauli();
    let (case, result) = approximate(&m)?;
    let claimed = result.expect("Pauli has a closed form");
    println!("case {case:?}, claimed achieved = {:.9}", claimed.achieved);

    let cfg = OracleConfig::quick(42);
    let report = certify(&m, &claimed, &cfg)?;
    println!("search optimum   {:.9}", report.best_value);
    println!("gap              {:+.3e}", report.gap);
    println!("claimed margin   {:+.3e}", report.jm_margin);
    println!("condition residuals {:?}", report.condition_residuals);
    println!("verdict          {}", if report.pass { "PASS" } else { "FAIL" });
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}
