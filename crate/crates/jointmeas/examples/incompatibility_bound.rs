//! Lower bound on the total worst-case error of approximating a triple by
//! jointly measurable measurements.

use jointmeas::{incompatibility_bound, MeasurementTriple, Vec3};

fn main() -> jointmeas::Result<()> {
    let report = incompatibility_bound(&MeasurementTriple::pauli())?;
    println!("Pauli triple:");
    println!("  FT point          {:?}", report.ft.point);
    println!("  sum of distances  {:.12}", report.ft.total_distance);
    println!("  bound             {:.12}", report.bound);
    println!("  2(sqrt(3)-1)      {:.12}", 2.0 * (3f64.sqrt() - 1.0));

    let m = MeasurementTriple::from_vecs(
        Vec3::new(0.9, 0.0, 0.0),
        Vec3::new(0.0, 0.8, 0.0),
        Vec3::new(0.0, 0.0, 0.7),
    )?;
    let report = incompatibility_bound(&m)?;
    println!("\nunequal sharpness:");
    println!("  raw bound  {:+.12}", report.raw_bound);
    println!("  bound      {:.12}", report.bound);

    // compatible triples have a negative raw bound, clamped to zero
    let report = incompatibility_bound(&MeasurementTriple::pauli().scale(0.5)?)?;
    println!("\nhalf-noise Pauli:");
    println!("  raw bound  {:+.12}", report.raw_bound);
    println!("  bound      {:.12}", report.bound);
    Ok(())
}
