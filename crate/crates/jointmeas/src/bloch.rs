//! Core types for unbiased qubit POVMs and the worst-case statistical
//! distance between them.
//!
//! A two-outcome unbiased qubit POVM has effects `(1 ± m·σ)/2` and is fully
//! described by its Bloch vector `m` with `‖m‖ ≤ 1`. The state-dependent
//! squared statistical distance between the POVMs with vectors `m` and `n`,
//! probed with the state of Bloch vector `r`, is `2|r·(m−n)|`.

use crate::error::{Error, Result};
use crate::tol;
use crate::vec3::Vec3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Bloch vector of an unbiased qubit POVM or a qubit state, `‖v‖ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector(Vec3);

impl BlochVector {
    /// Validates the norm bound with `tol::EPS_NORM` slack. The stored value
    /// is not renormalized.
    pub fn new(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = v.norm();
        if norm > 1.0 + tol::EPS_NORM {
            return Err(Error::NormExceeded { norm });
        }
        Ok(BlochVector(v))
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        BlochVector::new(a.into())
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(b: BlochVector) -> Self {
        b.0.as_array()
    }
}

/// Three Bloch vectors describing a triple of unbiased qubit POVMs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementTriple {
    pub m1: BlochVector,
    pub m2: BlochVector,
    pub m3: BlochVector,
}

impl MeasurementTriple {
    pub fn new(m1: BlochVector, m2: BlochVector, m3: BlochVector) -> Self {
        MeasurementTriple { m1, m2, m3 }
    }

    pub fn from_vecs(v1: Vec3, v2: Vec3, v3: Vec3) -> Result<Self> {
        Ok(MeasurementTriple {
            m1: BlochVector::new(v1)?,
            m2: BlochVector::new(v2)?,
            m3: BlochVector::new(v3)?,
        })
    }

    pub fn vecs(&self) -> [Vec3; 3] {
        [self.m1.vec(), self.m2.vec(), self.m3.vec()]
    }

    /// The three Pauli observables σx, σy, σz.
    pub fn pauli() -> Self {
        MeasurementTriple::from_vecs(
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        )
        .expect("unit vectors")
    }

    pub fn scale(&self, lambda: f64) -> Result<Self> {
        let [v1, v2, v3] = self.vecs();
        MeasurementTriple::from_vecs(v1 * lambda, v2 * lambda, v3 * lambda)
    }
}

/// A qubit state ρ = (1 + r·σ)/2 described by its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    pub r: BlochVector,
}

impl QubitState {
    pub fn new(r: BlochVector) -> Self {
        QubitState { r }
    }

    pub fn from_vec(r: Vec3) -> Result<Self> {
        Ok(QubitState {
            r: BlochVector::new(r)?,
        })
    }

    pub fn maximally_mixed() -> Self {
        QubitState::from_vec(Vec3::ZERO).expect("zero vector")
    }
}

pub type Mat2 = [[Complex64; 2]; 2];

/// The two effects (1 ± m·σ)/2 of an unbiased qubit POVM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectPair {
    pub plus: Mat2,
    pub minus: Mat2,
}

/// Effects of the POVM with Bloch vector `m`, in the standard Pauli basis.
pub fn effects(m: &BlochVector) -> EffectPair {
    let v = m.vec();
    let half = Complex64::new(0.5, 0.0);
    // m·σ = [[z, x - iy], [x + iy, -z]]
    let plus = [
        [
            half * Complex64::new(1.0 + v.z, 0.0),
            half * Complex64::new(v.x, -v.y),
        ],
        [
            half * Complex64::new(v.x, v.y),
            half * Complex64::new(1.0 - v.z, 0.0),
        ],
    ];
    let minus = [
        [
            half * Complex64::new(1.0 - v.z, 0.0),
            half * Complex64::new(-v.x, v.y),
        ],
        [
            half * Complex64::new(-v.x, -v.y),
            half * Complex64::new(1.0 + v.z, 0.0),
        ],
    ];
    EffectPair { plus, minus }
}

impl EffectPair {
    /// Smallest eigenvalue over both effects (Hermitian 2x2 closed form).
    pub fn min_eigenvalue(&self) -> f64 {
        fn min_eig(m: &Mat2) -> f64 {
            let tr = (m[0][0] + m[1][1]).re;
            let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            tr / 2.0 - disc
        }
        min_eig(&self.plus).min(min_eig(&self.minus))
    }

    /// Max entry-wise deviation of plus + minus from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let id = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.plus[i][j] + self.minus[i][j] - id[i][j]).norm());
            }
        }
        worst
    }
}

/// Squared statistical distance `2|r·(m−n)|` probed with the state `rho`.
pub fn stat_distance_sq(rho: &QubitState, m: &BlochVector, n: &BlochVector) -> f64 {
    2.0 * rho.r.vec().dot(&(m.vec() - n.vec())).abs()
}

/// Worst case of `stat_distance_sq` over all states: `2‖m−n‖`, attained at
/// the unit vector along `m−n` (the zero state when `m = n`).
pub fn pair_worst_case_sq(m: &BlochVector, n: &BlochVector) -> (f64, QubitState) {
    let d = m.vec() - n.vec();
    let value = 2.0 * d.norm();
    let state = match d.unit(tol::EPS_COINCIDE) {
        Some(u) => QubitState::from_vec(u).expect("unit vector"),
        None => QubitState::maximally_mixed(),
    };
    (value, state)
}

/// Worst case of the summed squared statistical distance over all states.
///
/// With `dᵢ = mᵢ − nᵢ`, the maximum of `Σᵢ 2|r·dᵢ|` over the unit ball is
/// `max_s 2‖s₁d₁ + s₂d₂ + s₃d₃‖` over sign patterns `s ∈ {±1}³`; by symmetry
/// only the four patterns with `s₁ = +1` matter. Ties go to the first
/// pattern in lexicographic order (`+` before `−`).
pub fn total_worst_case_sq(m: &MeasurementTriple, n: &MeasurementTriple) -> (f64, QubitState) {
    let [m1, m2, m3] = m.vecs();
    let [n1, n2, n3] = n.vecs();
    let d = [m1 - n1, m2 - n2, m3 - n3];
    let mut best_value = f64::NEG_INFINITY;
    let mut best_dir = Vec3::ZERO;
    for (s2, s3) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let sum = d[0] + d[1] * s2 + d[2] * s3;
        let value = 2.0 * sum.norm();
        if value > best_value {
            best_value = value;
            best_dir = sum;
        }
    }
    let state = match best_dir.unit(tol::EPS_COINCIDE) {
        Some(u) => QubitState::from_vec(u).expect("unit vector"),
        None => QubitState::maximally_mixed(),
    };
    (best_value, state)
}
