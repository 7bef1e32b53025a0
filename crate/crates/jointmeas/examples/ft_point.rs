//! Geometric-median machinery: interior stationary points, vertex optima,
//! and the closed forms for special vertex configurations.

use jointmeas::ft::{ft_diagonal_intersection, ft_perpendicular_case};
use jointmeas::{fermat_torricelli, MeasurementTriple, QuadVertices, Vec3};

fn main() -> jointmeas::Result<()> {
    // regular tetrahedron vertices: median at the center
    let quad = QuadVertices::from_triple(&MeasurementTriple::pauli());
    let ft = fermat_torricelli(&quad)?;
    println!(
        "tetrahedron: point {:?}, total {:.12}, residual {:.2e}",
        ft.point, ft.total_distance, ft.residual_norm
    );

    // one vertex deep inside the triangle of the others: the median is that
    // vertex and the certificate reports it
    let quad = QuadVertices::new([
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(-0.5, 0.866, 0.0),
        Vec3::new(-0.5, -0.866, 0.0),
        Vec3::new(0.05, 0.0, 0.0),
    ]);
    let ft = fermat_torricelli(&quad)?;
    println!(
        "triangle + interior point: at_vertex = {:?}, total {:.12}",
        ft.at_vertex, ft.total_distance
    );

    // closed form when m3 is perpendicular to m1 and m2
    let m = MeasurementTriple::from_vecs(
        Vec3::new(0.8, 0.0, 0.0),
        Vec3::new(0.0, 0.5, 0.0),
        Vec3::new(0.0, 0.0, 0.9),
    )?;
    let pf = ft_perpendicular_case(&m)?;
    let iterated = fermat_torricelli(&QuadVertices::from_triple(&m))?;
    println!(
        "perpendicular closed form {:?} vs iterated {:?}",
        pf, iterated.point
    );

    // coplanar convex quadrilateral: the median is the diagonal intersection
    let quad = QuadVertices::new([
        Vec3::new(2.0, 0.3, 0.0),
        Vec3::new(0.4, 1.5, 0.0),
        Vec3::new(-0.2, -1.8, 0.0),
        Vec3::new(-2.5, -0.4, 0.0),
    ]);
    let p = ft_diagonal_intersection(&quad)?;
    println!("diagonal intersection {p:?}");
    Ok(())
}
