//! Photon probability density and probability current inside the stack.
//!
//! With layer amplitudes `f` (forward) and `b` (backward), local coordinate
//! `x` and phase `phi = K0 C x`:
//!
//! ```text
//! rho(x) = |f|^2 + |b|^2 + 2 Re[(f* . b) e^{-2i phi}]
//! J(x)/c = i(f3* f2 - f2* f3) + i(b3* b2 - b2* b3)
//!        + 2 Re[i(f3* b2 - f2* b3) e^{-2i phi}]
//! ```
//!
//! The transverse factor `e^{i K0 sin(theta) y}` is common to both waves and
//! cancels, so profiles depend on `x` only. Both quantities are local
//! functions of `psi(x)`, hence continuous wherever `psi` is.
//!
//! `J` is the spin-matrix current of the three-component wavefunction, not the
//! energy flux: when every amplitude is a multiple of one incident vector `a`
//! it reduces to `|s(x)|^2 * i(a3* a2 - a2* a3)`. [`net_flux_at`] gives the
//! conserved flux for comparison.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::exec::Execution;
use crate::quantum::{solve_with_params, CoefficientPair, ScatterSolution};
use crate::stack::Stack;
use crate::wave::{wave_params, WaveParams};
use crate::Amplitude3;

/// Incident amplitude vector on the left of the stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentState {
    pub amplitude: Amplitude3,
}

impl IncidentState {
    /// `sum |a_i|^2`, the incident density.
    pub fn density(&self) -> f64 {
        self.amplitude.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `i(a3* a2 - a2* a3)`, the incident current over `c`.
    pub fn current(&self) -> f64 {
        spin_current(&self.amplitude, &self.amplitude).re
    }
}

/// `(0, 1/sqrt 2, i/sqrt 2)`: unit density, unit rightward current.
pub fn default_incident_state() -> IncidentState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    IncidentState {
        amplitude: [
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(0.0, h),
        ],
    }
}

/// `i(u3* v2 - u2* v3)`
fn spin_current(u: &Amplitude3, v: &Amplitude3) -> Complex64 {
    Complex64::i() * (u[2].conj() * v[1] - u[1].conj() * v[2])
}

fn standing_phase(params: &WaveParams, c_layer: f64, local_x: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * params.k0 * c_layer * local_x)
}

pub fn density_at(pair: &CoefficientPair, params: &WaveParams, c_layer: f64, local_x: f64) -> f64 {
    let f = &pair.forward;
    let b = &pair.backward;
    let direct: f64 = f.iter().chain(b).map(|c| c.norm_sqr()).sum();
    let overlap: Complex64 = f.iter().zip(b).map(|(fi, bi)| fi.conj() * bi).sum();
    direct + 2.0 * (overlap * standing_phase(params, c_layer, local_x)).re
}

/// Probability current in units of `c`.
pub fn current_at(pair: &CoefficientPair, params: &WaveParams, c_layer: f64, local_x: f64) -> f64 {
    let f = &pair.forward;
    let b = &pair.backward;
    let direct = spin_current(f, f) + spin_current(b, b);
    let cross = spin_current(f, b) * standing_phase(params, c_layer, local_x);
    direct.re + 2.0 * cross.re
}

/// Net plane-wave flux `(C / C1)(|f|^2 - |b|^2)` relative to a unit-density
/// incident wave in vacuum. Constant through a lossless stack and equal to `T`.
pub fn net_flux_at(pair: &CoefficientPair, params: &WaveParams, c_layer: f64) -> f64 {
    let fwd: f64 = pair.forward.iter().map(|c| c.norm_sqr()).sum();
    let bwd: f64 = pair.backward.iter().map(|c| c.norm_sqr()).sum();
    c_layer / params.c_ambient * (fwd - bwd)
}

/// Density and current sampled on a uniform grid over `[0, total_length]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldProfile {
    /// Positions in nm.
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub j_over_c: Vec<f64>,
}

impl FieldProfile {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

pub const DEFAULT_PROFILE_SAMPLES: usize = 2000;

/// Profile for the default incident state.
pub fn sample_profile(stack: &Stack, theta: f64, omega: f64, samples: usize) -> Result<FieldProfile> {
    let incident = default_incident_state();
    let params = wave_params(omega, theta, stack)?;
    let solution = solve_with_params(stack, params, &incident.amplitude)?;
    profile_from_solution(stack, &solution, samples, Execution::default())
}

/// Evaluate an already solved stack on `samples` uniformly spaced points.
pub fn profile_from_solution(
    stack: &Stack,
    solution: &ScatterSolution,
    samples: usize,
    exec: Execution,
) -> Result<FieldProfile> {
    if samples < 2 {
        return Err(invalid("samples", format!("need at least 2, got {samples}")));
    }
    if stack.is_empty() {
        return Err(invalid("stack", "profile requires a nonempty stack"));
    }
    let total = stack.total_length();
    let last = (samples - 1) as f64;
    let points = exec.try_map_indices(samples, |k| {
        let x = if k == samples - 1 {
            total
        } else {
            total * k as f64 / last
        };
        let (idx, local) = stack.locate(x)?;
        let pair = &solution.layer_coefficients[idx];
        let c = solution.params.layer_c[idx];
        Ok((
            x,
            density_at(pair, &solution.params, c, local),
            current_at(pair, &solution.params, c, local),
        ))
    })?;
    let mut profile = FieldProfile {
        x: Vec::with_capacity(samples),
        rho: Vec::with_capacity(samples),
        j_over_c: Vec::with_capacity(samples),
    };
    for (x, rho, j) in points {
        profile.x.push(x);
        profile.rho.push(rho);
        profile.j_over_c.push(j);
    }
    Ok(profile)
}
