//! Decide joint measurability of qubit measurement triples and locate the
//! compatibility threshold of the noisy Pauli family.

use jointmeas::{is_jointly_measurable_triple, MeasurementTriple};

fn main() -> jointmeas::Result<()> {
    let pauli = MeasurementTriple::pauli();
    let v = is_jointly_measurable_triple(&pauli)?;
    println!(
        "sharp Pauli triple: jointly measurable = {}, margin = {:.6}",
        v.jointly_measurable, v.margin
    );

    // noisy Pauli: lambda * (sigma_x, sigma_y, sigma_z)
    for lambda in [0.5, 0.577, 0.6] {
        let v = is_jointly_measurable_triple(&pauli.scale(lambda)?)?;
        println!(
            "lambda = {lambda}: jointly measurable = {}, margin = {:+.6}",
            v.jointly_measurable, v.margin
        );
    }

    // bisect the threshold; the exact value is 1/sqrt(3)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if is_jointly_measurable_triple(&pauli.scale(mid)?)?.jointly_measurable {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    println!(
        "threshold = {:.12} (1/sqrt(3) = {:.12})",
        0.5 * (lo + hi),
        1.0 / 3f64.sqrt()
    );
    Ok(())
}
