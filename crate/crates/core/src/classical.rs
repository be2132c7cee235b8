//! Classical thin-film characteristic matrices (TE polarization).
//!
//! Each layer maps the tangential fields `(E, H)` across its thickness through
//! the unimodular matrix `[[cos d, -i sin d / q], [-i q sin d, cos d]]` with
//! phase thickness `d = K0 C t` and tilted admittance `q = C`. This module does
//! not touch the quantum transfer chain, so agreement between the two is a
//! genuine cross-check.

use num_complex::Complex64;

use crate::error::Result;
use crate::stack::{Layer, Stack};
use crate::wave::{validate_incidence, wave_params, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicMatrix(pub [[Complex64; 2]; 2]);

impl CharacteristicMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        CharacteristicMatrix([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn matmul(&self, rhs: &CharacteristicMatrix) -> CharacteristicMatrix {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CharacteristicMatrix(out)
    }
}

fn matrix_from_phase(delta: f64, q: f64) -> CharacteristicMatrix {
    let (s, c) = delta.sin_cos();
    let cos = Complex64::new(c, 0.0);
    CharacteristicMatrix([
        [cos, Complex64::new(0.0, -s / q)],
        [Complex64::new(0.0, -q * s), cos],
    ])
}

pub fn characteristic_matrix(layer: &Layer, theta: f64, omega: f64) -> Result<CharacteristicMatrix> {
    validate_incidence(omega, theta)?;
    let sin = theta.sin();
    let q = (layer.refractive_index().powi(2) - sin * sin).sqrt();
    let k0 = omega / SPEED_OF_LIGHT * 1e-9;
    Ok(matrix_from_phase(k0 * q * layer.thickness(), q))
}

/// `(T, R)` of the stack between two vacuum half-spaces.
pub fn classical_transmissivity(stack: &Stack, theta: f64, omega: f64) -> Result<(f64, f64)> {
    let params = wave_params(omega, theta, stack)?;
    let total = stack
        .layers()
        .iter()
        .zip(&params.layer_c)
        .fold(CharacteristicMatrix::identity(), |acc, (layer, &q)| {
            acc.matmul(&matrix_from_phase(params.k0 * q * layer.thickness(), q))
        });
    let m = &total.0;
    let q0 = params.c_ambient;
    let qs = params.c_ambient;
    let a = q0 * m[0][0] + q0 * qs * m[0][1];
    let b = m[1][0] + qs * m[1][1];
    let denom = a + b;
    let t = 2.0 * q0 / denom;
    let r = (a - b) / denom;
    Ok((t.norm_sqr(), r.norm_sqr()))
}

/// Closed-form `(T, R)` of a quarter-wave `(AB)^N` stack at its design
/// frequency, normal incidence, vacuum on both sides.
pub fn quarter_wave_reference(n_a: f64, n_b: f64, periods: usize) -> (f64, f64) {
    let y = (n_a / n_b).powf(2.0 * periods as f64);
    let r = ((1.0 - y) / (1.0 + y)).powi(2);
    // 1 - R without cancellation
    let t = 4.0 * y / (1.0 + y).powi(2);
    (t, r)
}
