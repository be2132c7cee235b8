//! Frequency- and angle-dependent wave parameters.

use crate::error::{invalid, Result};
use crate::stack::Stack;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum wavenumber and normalized longitudinal wavevectors for one
/// `(omega, theta)` pair.
///
/// For a medium of index `n` the longitudinal coefficient is
/// `C = sqrt(n^2 - sin^2 theta)`; the vacuum ambient has `C1 = cos theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveParams {
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Vacuum wavenumber `omega / c`, rad/nm.
    pub k0: f64,
    pub sin_theta: f64,
    /// `C1`, the ambient (vacuum) coefficient.
    pub c_ambient: f64,
    /// `C` of every layer, in stack order.
    pub layer_c: Vec<f64>,
}

impl WaveParams {
    /// `sqrt(n^2 - sin^2 theta)` for an arbitrary index.
    pub fn c_of(&self, refractive_index: f64) -> f64 {
        longitudinal(refractive_index, self.sin_theta)
    }

    /// `C` of the medium following layer `index` (vacuum after the last one).
    pub fn c_after(&self, index: usize) -> f64 {
        self.layer_c.get(index + 1).copied().unwrap_or(self.c_ambient)
    }
}

fn longitudinal(n: f64, sin_theta: f64) -> f64 {
    (n * n - sin_theta * sin_theta).sqrt()
}

pub fn validate_incidence(omega: f64, theta: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(invalid("omega", format!("must be finite and > 0, got {omega}")));
    }
    if !(theta.is_finite() && (0.0..std::f64::consts::FRAC_PI_2).contains(&theta)) {
        return Err(invalid("theta", format!("must lie in [0, pi/2), got {theta}")));
    }
    Ok(())
}

pub fn wave_params(omega: f64, theta: f64, stack: &Stack) -> Result<WaveParams> {
    validate_incidence(omega, theta)?;
    let sin_theta = theta.sin();
    Ok(WaveParams {
        omega,
        k0: omega / SPEED_OF_LIGHT * 1e-9,
        sin_theta,
        c_ambient: longitudinal(1.0, sin_theta),
        layer_c: stack
            .layers()
            .iter()
            .map(|l| longitudinal(l.refractive_index(), sin_theta))
            .collect(),
    })
}
