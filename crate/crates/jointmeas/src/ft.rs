//! Fermat-Torricelli (geometric median) machinery for the four derived
//! vertices of the joint-measurability criterion.
//!
//! A triple of Bloch vectors `(n1, n2, n3)` maps to four vertices
//! `q1 = n1+n2+n3`, `q2 = n1−n2−n3`, `q3 = n2−n1−n3`, `q4 = n3−n1−n2`.
//! The geometric median of those vertices drives both the joint-measurability
//! criterion and the incompatibility bound. The median either sits at a
//! vertex (when the pulls of the remaining vertices do not exceed that
//! vertex's multiplicity) or is an interior stationary point where the unit
//! directions to the vertices sum to zero.

use crate::bloch::MeasurementTriple;
use crate::error::{Error, Result};
use crate::tol;
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

/// Four derived vertices, `q1..q4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadVertices {
    pub q: [Vec3; 4],
}

impl QuadVertices {
    pub fn new(q: [Vec3; 4]) -> Self {
        QuadVertices { q }
    }

    /// Vertices of the joint-measurability criterion for a triple.
    pub fn from_triple(n: &MeasurementTriple) -> Self {
        let [n1, n2, n3] = n.vecs();
        QuadVertices {
            q: [
                n1 + n2 + n3,
                n1 - n2 - n3,
                n2 - n1 - n3,
                n3 - n1 - n2,
            ],
        }
    }

    /// Inverse of `from_triple`: `n_i = (q1 + q_{i+1}) / 2`.
    pub fn to_triple_vecs(&self) -> [Vec3; 3] {
        [
            (self.q[0] + self.q[1]) * 0.5,
            (self.q[0] + self.q[2]) * 0.5,
            (self.q[0] + self.q[3]) * 0.5,
        ]
    }

    pub fn centroid(&self) -> Vec3 {
        (self.q[0] + self.q[1] + self.q[2] + self.q[3]) * 0.25
    }

    pub fn total_distance_to(&self, y: &Vec3) -> f64 {
        self.q.iter().map(|p| p.distance(y)).sum()
    }
}

/// A certified Fermat-Torricelli point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtResult {
    pub point: Vec3,
    /// Sum of distances from `point` to the four vertices.
    pub total_distance: f64,
    /// Norm of the multiplicity-weighted sum of unit directions from `point`
    /// to the vertices farther than the coincidence threshold.
    pub residual_norm: f64,
    /// 1-based vertex index when the median sits at a vertex.
    pub at_vertex: Option<usize>,
    pub iterations: usize,
}

/// Distinct vertex positions with multiplicities.
struct Groups {
    point: Vec<Vec3>,
    weight: Vec<f64>,
}

fn merge_coincident(q: &QuadVertices) -> Groups {
    let mut g = Groups {
        point: Vec::with_capacity(4),
        weight: Vec::with_capacity(4),
    };
    for p in &q.q {
        match g
            .point
            .iter()
            .position(|c| c.distance(p) <= tol::EPS_COINCIDE)
        {
            Some(i) => g.weight[i] += 1.0,
            None => {
                g.point.push(*p);
                g.weight.push(1.0);
            }
        }
    }
    g
}

impl Groups {
    /// Multiplicity-weighted sum of unit directions from `y`, skipping
    /// groups within the coincidence threshold.
    fn direction_sum(&self, y: &Vec3) -> Vec3 {
        let mut s = Vec3::ZERO;
        for (p, w) in self.point.iter().zip(&self.weight) {
            if let Some(u) = (*p - *y).unit(tol::EPS_COINCIDE) {
                s += u * *w;
            }
        }
        s
    }

    fn total_distance(&self, y: &Vec3) -> f64 {
        self.point
            .iter()
            .zip(&self.weight)
            .map(|(p, w)| w * p.distance(y))
            .sum()
    }

    fn nearest(&self, y: &Vec3) -> (usize, f64) {
        let mut best = (0usize, f64::INFINITY);
        for (i, p) in self.point.iter().enumerate() {
            let d = p.distance(y);
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }
}

/// Fermat-Torricelli point of four points in R^3, with a certificate.
///
/// Each vertex is tested first by the vertex-optimality criterion; otherwise
/// a damped Weiszfeld iteration (with a Newton polish once near stationarity)
/// runs from the centroid.
pub fn fermat_torricelli(q: &QuadVertices) -> Result<FtResult> {
    fermat_torricelli_from(q, None)
}

/// Same as [`fermat_torricelli`] with an optional warm start for the
/// interior iteration.
pub fn fermat_torricelli_from(q: &QuadVertices, start: Option<Vec3>) -> Result<FtResult> {
    for p in &q.q {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    let groups = merge_coincident(q);

    // Vertex criterion, smallest index wins ties.
    for l in 0..4 {
        let yl = q.q[l];
        let (gi, _) = groups.nearest(&yl);
        let s = groups.direction_sum(&yl);
        if s.norm() <= groups.weight[gi] + tol::FT_TOL {
            return Ok(FtResult {
                point: yl,
                total_distance: groups.total_distance(&yl),
                residual_norm: s.norm(),
                at_vertex: Some(l + 1),
                iterations: 0,
            });
        }
    }

    let centroid = q.centroid();
    let mut y = start.unwrap_or(centroid);
    let mut best_y = y;
    let mut best_f = groups.total_distance(&y);
    let mut best_res = f64::INFINITY;
    let mut restarts = 0usize;
    let mut checkpoint_f = f64::INFINITY;
    let mut restarted_since_checkpoint = false;

    for iter in 1..=tol::MAX_ITER {
        let (_, dmin) = groups.nearest(&y);
        if dmin <= tol::EPS_COINCIDE {
            // Stalled on a vertex that already failed the vertex test;
            // restart away from it in a deterministic direction.
            let axis = match restarts % 3 {
                0 => Vec3::new(1.0, 0.0, 0.0),
                1 => Vec3::new(0.0, 1.0, 0.0),
                _ => Vec3::new(0.0, 0.0, 1.0),
            };
            y = (centroid + best_y) * 0.5 + axis * 1e-6;
            restarts += 1;
            restarted_since_checkpoint = true;
            continue;
        }

        let s = groups.direction_sum(&y);
        let res = s.norm();
        let f = groups.total_distance(&y);
        if f < best_f {
            best_f = f;
            best_y = y;
        }
        if res < best_res {
            best_res = res;
        }
        if res <= tol::FT_TOL {
            return Ok(FtResult {
                point: y,
                total_distance: f,
                residual_norm: res,
                at_vertex: None,
                iterations: iter,
            });
        }

        if iter % 100 == 0 {
            debug_assert!(
                restarted_since_checkpoint || f <= checkpoint_f + 1e-9,
                "Weiszfeld total distance increased"
            );
            checkpoint_f = f;
            restarted_since_checkpoint = false;
        }

        // Newton polish near stationarity (quadratic local convergence);
        // fall back to a Weiszfeld step whenever it does not descend.
        if res < 1e-3 {
            if let Some(step) = newton_step(&groups, &y, &s) {
                let y_new = y + step;
                let (_, dn) = groups.nearest(&y_new);
                if dn > tol::EPS_COINCIDE && groups.total_distance(&y_new) < f {
                    y = y_new;
                    continue;
                }
            }
        }

        // Weiszfeld reweighting step.
        let mut num = Vec3::ZERO;
        let mut den = 0.0;
        for (p, w) in groups.point.iter().zip(&groups.weight) {
            let d = p.distance(&y);
            num += *p * (w / d);
            den += w / d;
        }
        y = num * (1.0 / den);
    }

    let best = FtResult {
        point: best_y,
        total_distance: best_f,
        residual_norm: groups.direction_sum(&best_y).norm(),
        at_vertex: None,
        iterations: tol::MAX_ITER,
    };
    if best.residual_norm <= tol::FT_TOL_LOOSE {
        Ok(best)
    } else {
        Err(Error::NoConvergence { best })
    }
}

/// Newton step for f(y) = sum of weighted distances; gradient is -s.
fn newton_step(groups: &Groups, y: &Vec3, s: &Vec3) -> Option<Vec3> {
    // H = sum w (I - u u^T) / d
    let mut h = [[0.0f64; 3]; 3];
    for (p, w) in groups.point.iter().zip(&groups.weight) {
        let d = p.distance(y);
        if d <= tol::EPS_COINCIDE {
            return None;
        }
        let u = (*p - *y) * (1.0 / d);
        let ua = u.as_array();
        let c = w / d;
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                h[i][j] += c * (id - ua[i] * ua[j]);
            }
        }
    }
    solve3(&h, &s.as_array()).map(Vec3::from)
}

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let factor = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Closed-form Fermat-Torricelli point when `m3` is perpendicular to both
/// `m1` and `m2`: `p_F = ((y−x)/(y+x))·m3` with `x = ‖m1+m2‖`,
/// `y = ‖m1−m2‖`. Callers should certify the output against the
/// stationarity/vertex certificate of [`fermat_torricelli`].
pub fn ft_perpendicular_case(m: &MeasurementTriple) -> Result<Vec3> {
    let [m1, m2, m3] = m.vecs();
    for other in [m1, m2] {
        if m3.dot(&other).abs() > tol::ANG_TOL * m3.norm() * other.norm() {
            return Err(Error::PreconditionViolated(
                "m3 is not perpendicular to m1 and m2",
            ));
        }
    }
    let x = (m1 + m2).norm();
    let y = (m1 - m2).norm();
    if x + y < tol::EPS_COINCIDE {
        return Err(Error::Degenerate("both m1+m2 and m1-m2 vanish"));
    }
    Ok(m3 * ((y - x) / (y + x)))
}

/// Intersection of the diagonals `(p1, p4)` and `(p2, p3)` of a coplanar
/// convex quadrilateral.
pub fn ft_diagonal_intersection(p: &QuadVertices) -> Result<Vec3> {
    let [p1, p2, p3, p4] = p.q;
    let d1 = p4 - p1;
    let d2 = p3 - p2;
    let w0 = p1 - p2;

    let scale = d1.norm() * d2.norm() * w0.norm();
    if scale > 0.0 && d1.cross(&d2).dot(&w0).abs() > tol::PLANE_TOL * scale {
        return Err(Error::NotCoplanar);
    }

    // Closest points of the two supporting lines.
    let a = d1.dot(&d1);
    let b = d1.dot(&d2);
    let c = d2.dot(&d2);
    let denom = a * c - b * b;
    if denom <= 1e-14 * a * c || a == 0.0 || c == 0.0 {
        return Err(Error::NoProperIntersection);
    }
    let rhs1 = -d1.dot(&w0);
    let rhs2 = d2.dot(&w0);
    let s = (rhs1 * c + b * rhs2) / denom;
    let t = (b * rhs1 + a * rhs2) / denom;
    let tol_param = 1e-9;
    if !(-tol_param..=1.0 + tol_param).contains(&s) || !(-tol_param..=1.0 + tol_param).contains(&t)
    {
        return Err(Error::NoProperIntersection);
    }
    let x1 = p1 + d1 * s;
    let x2 = p2 + d2 * t;
    if x1.distance(&x2) > tol::PLANE_TOL * (1.0 + scale) {
        return Err(Error::NotCoplanar);
    }
    Ok((x1 + x2) * 0.5)
}
