//! Statistical distance between unbiased measurements on a fixed state, and
//! the worst-case total over all probe states.

use jointmeas::bloch::{pair_worst_case_sq, stat_distance_sq, total_worst_case_sq, BlochVector};
use jointmeas::{MeasurementTriple, QubitState, Vec3};

fn main() -> jointmeas::Result<()> {
    let m = BlochVector::new(Vec3::new(1.0, 0.0, 0.0))?;
    let n = BlochVector::new(Vec3::new(1.0, 0.0, 0.0) * (1.0 / 3f64.sqrt()))?;

    // fixed-state distance depends on the state only through r . (m - n)
    for r in [
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.6, 0.0, 0.8),
    ] {
        let rho = QubitState::from_vec(r)?;
        println!(
            "r = ({:+.1}, {:+.1}, {:+.1}):  distance^2 = {:.9}",
            r.x,
            r.y,
            r.z,
            stat_distance_sq(&rho, &m, &n)
        );
    }

    // worst case over states for a single pair: 2|m - n|
    let (worst, state) = pair_worst_case_sq(&m, &n);
    println!(
        "\npair worst case {:.9} at state {:?} (closed form {:.9})",
        worst,
        state.r.vec(),
        2.0 * (m.vec() - n.vec()).norm()
    );

    // worst case for a triple maximizes over the four sign patterns
    let triple = MeasurementTriple::pauli();
    let approx = triple.scale(1.0 / 3f64.sqrt())?;
    let (total, state) = total_worst_case_sq(&triple, &approx);
    println!(
        "\nPauli vs optimal approximation: total {:.9} at state {:?}",
        total,
        state.r.vec()
    );
    println!("2(sqrt(3)-1) = {:.9}", 2.0 * (3f64.sqrt() - 1.0));
    Ok(())
}
