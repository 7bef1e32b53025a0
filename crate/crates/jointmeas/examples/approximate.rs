//! Closed-form jointly measurable approximations for the solvable target
//! configurations, with the probe states realizing the worst case.

use jointmeas::analytic::CaseClass;
use jointmeas::{approximate, MeasurementTriple, Vec3};

fn show(label: &str, m: &MeasurementTriple) -> jointmeas::Result<()> {
    println!("== {label}");
    let (case, result) = approximate(m)?;
    println!("case: {case:?}");
    match result {
        Some(r) => {
            for (i, n) in r.n.vecs().iter().enumerate() {
                println!("  n{} = ({:+.6}, {:+.6}, {:+.6})", i + 1, n.x, n.y, n.z);
            }
            println!("  scalars        {:?}", r.scalars);
            println!("  achieved       {:.9}", r.achieved);
            println!("  bound          {:.9}", r.bound);
            println!("  attains bound  {}", r.attains_bound);
            for s in &r.optimal_states {
                let v = s.r.vec();
                println!("  probe state   ({:+.6}, {:+.6}, {:+.6})", v.x, v.y, v.z);
            }
        }
        None => println!("  no closed form; use the numerical search"),
    }
    println!();
    Ok(())
}

fn main() -> jointmeas::Result<()> {
    show("Pauli triple (m3 perpendicular to m1, m2)", &MeasurementTriple::pauli())?;

    show(
        "coplanar, m3 well inside the criterion region",
        &MeasurementTriple::from_vecs(
            Vec3::new(0.9, 0.0, 0.0),
            Vec3::new(0.0, 0.9, 0.0),
            Vec3::new(0.162, 0.162, 0.0),
        )?,
    )?;

    // here the Fermat-Torricelli point of the derived vertices sits at a
    // vertex and the lower bound is strictly unattainable
    show(
        "coplanar, degenerate",
        &MeasurementTriple::from_vecs(
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.7, 0.7, 0.0),
        )?,
    )?;

    show(
        "generic tilt",
        &MeasurementTriple::from_vecs(
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.3, 0.3, 0.5),
        )?,
    )?;

    let compatible = MeasurementTriple::pauli().scale(0.5)?;
    let (case, _) = approximate(&compatible)?;
    assert!(matches!(case, CaseClass::Compatible));
    println!("half-noise Pauli classifies as {case:?}; nothing to approximate");
    Ok(())
}
