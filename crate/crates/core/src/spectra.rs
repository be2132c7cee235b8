//! Frequency sweeps and derived quantities: band gaps, transmission
//! resonances, tunnelling decay lengths and density statistics.

use crate::classical::classical_transmissivity;
use crate::error::{invalid, Error, Result};
use crate::exec::Execution;
use crate::observables::FieldProfile;
use crate::quantum::transmissivity;
use crate::stack::Stack;

pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-3;

/// 171 THz, the nominal centre frequency of the reference crystal. Whether it
/// is an angular or an ordinary frequency is not known, see
/// [`CentralFrequency`].
pub const CENTRAL_FREQUENCY: f64 = 171e12;

/// The two readings of [`CENTRAL_FREQUENCY`] as an angular frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralFrequency {
    /// `omega0 = 2 pi * 171e12` rad/s.
    Ordinary,
    /// `omega0 = 171e12` rad/s.
    Angular,
}

impl CentralFrequency {
    pub const ALL: [CentralFrequency; 2] = [CentralFrequency::Ordinary, CentralFrequency::Angular];

    pub fn omega0(self) -> f64 {
        match self {
            CentralFrequency::Ordinary => 2.0 * std::f64::consts::PI * CENTRAL_FREQUENCY,
            CentralFrequency::Angular => CENTRAL_FREQUENCY,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CentralFrequency::Ordinary => "omega0 = 2*pi*171e12 rad/s",
            CentralFrequency::Angular => "omega0 = 171e12 rad/s",
        }
    }
}

/// Quantum and classical transmission on a frequency grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    /// Angular frequencies, rad/s, strictly increasing.
    pub omega: Vec<f64>,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub t_classical: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Largest `|T - T_classical|` over the grid.
    pub fn max_oracle_deviation(&self) -> f64 {
        self.t
            .iter()
            .zip(&self.t_classical)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|T + R - 1|` over the grid.
    pub fn max_flux_residual(&self) -> f64 {
        self.t
            .iter()
            .zip(&self.r)
            .map(|(t, r)| (t + r - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Inclusive uniform grid of `samples` points.
pub fn uniform_grid(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|k| {
            if k == samples - 1 {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last
            }
        })
        .collect()
}

pub fn sweep_frequency(
    stack: &Stack,
    theta: f64,
    omega_min: f64,
    omega_max: f64,
    samples: usize,
) -> Result<Spectrum> {
    sweep_frequency_with(Execution::default(), stack, theta, omega_min, omega_max, samples)
}

pub fn sweep_frequency_with(
    exec: Execution,
    stack: &Stack,
    theta: f64,
    omega_min: f64,
    omega_max: f64,
    samples: usize,
) -> Result<Spectrum> {
    if samples < 2 {
        return Err(invalid("samples", format!("need at least 2, got {samples}")));
    }
    if !(omega_min.is_finite() && omega_max.is_finite() && omega_min < omega_max) {
        return Err(invalid(
            "omega_range",
            format!("need omega_min < omega_max, got [{omega_min}, {omega_max}]"),
        ));
    }
    let grid = uniform_grid(omega_min, omega_max, samples);
    let rows = exec.try_map_indices(samples, |k| {
        let omega = grid[k];
        let (t, r) = transmissivity(stack, theta, omega)?;
        let (t_cl, _) = classical_transmissivity(stack, theta, omega)?;
        Ok::<_, Error>((t, r, t_cl))
    })?;
    let mut spectrum = Spectrum {
        omega: grid,
        t: Vec::with_capacity(samples),
        r: Vec::with_capacity(samples),
        t_classical: Vec::with_capacity(samples),
    };
    for (t, r, t_cl) in rows {
        spectrum.t.push(t);
        spectrum.r.push(r);
        spectrum.t_classical.push(t_cl);
    }
    Ok(spectrum)
}

/// A maximal run of grid points with `T` below the detection threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapInterval {
    pub omega_lo: f64,
    pub omega_hi: f64,
    pub min_t: f64,
    /// Grid index of the first and last sample inside the gap.
    pub first_index: usize,
    pub last_index: usize,
}

impl GapInterval {
    pub fn center(&self) -> f64 {
        0.5 * (self.omega_lo + self.omega_hi)
    }
}

/// Runs of at least two consecutive samples with `T < threshold`, in order.
pub fn find_band_gaps(spectrum: &Spectrum, threshold: f64) -> Result<Vec<GapInterval>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(invalid("threshold", format!("must lie in (0, 1), got {threshold}")));
    }
    let mut gaps = Vec::new();
    let mut start: Option<usize> = None;
    let n = spectrum.t.len();
    for k in 0..=n {
        let inside = k < n && spectrum.t[k] < threshold;
        match (inside, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                if k - s >= 2 {
                    let min_t = spectrum.t[s..k].iter().copied().fold(f64::INFINITY, f64::min);
                    gaps.push(GapInterval {
                        omega_lo: spectrum.omega[s],
                        omega_hi: spectrum.omega[k - 1],
                        min_t,
                        first_index: s,
                        last_index: k - 1,
                    });
                }
                start = None;
            }
            _ => {}
        }
    }
    Ok(gaps)
}

/// Side of a band gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapEdge {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub omega: f64,
    pub transmissivity: f64,
}

/// The transmission peak next to `gap` on the given side.
///
/// Walks away from the gap edge on the sweep grid while `T` keeps rising, then
/// refines the maximum by golden-section search between the neighbouring grid
/// points.
pub fn band_edge_resonance(
    stack: &Stack,
    theta: f64,
    spectrum: &Spectrum,
    gap: &GapInterval,
    edge: GapEdge,
) -> Result<Resonance> {
    let t = &spectrum.t;
    let n = t.len();
    let mut i = match edge {
        GapEdge::Lower => gap.first_index,
        GapEdge::Upper => gap.last_index,
    };
    let step = |i: usize| -> Option<usize> {
        match edge {
            GapEdge::Lower => i.checked_sub(1),
            GapEdge::Upper => (i + 1 < n).then_some(i + 1),
        }
    };
    while let Some(next) = step(i) {
        if t[next] > t[i] {
            i = next;
        } else {
            break;
        }
    }
    if i == gap.first_index || i == gap.last_index {
        return Err(invalid("spectrum", "no pass band beside the gap on the sweep grid"));
    }
    let lo = spectrum.omega[i.saturating_sub(1)];
    let hi = spectrum.omega[(i + 1).min(n - 1)];
    let objective = |omega: f64| transmissivity(stack, theta, omega).map(|(t, _)| t);
    let omega = golden_section_max(objective, lo, hi, 1e-12)?;
    let refined = objective(omega)?;
    // the grid point may already sit on a better value than the refined one
    if refined >= t[i] {
        Ok(Resonance {
            omega,
            transmissivity: refined,
        })
    } else {
        Ok(Resonance {
            omega: spectrum.omega[i],
            transmissivity: t[i],
        })
    }
}

fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..200 {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Per-period maximum of `rho`, as `(x of the maximum, value)`.
///
/// A period is a consecutive pair of layers; an odd trailing layer forms a
/// period of its own. Periods without samples are skipped.
pub fn period_envelope(profile: &FieldProfile, stack: &Stack) -> Vec<(f64, f64)> {
    let n = stack.len();
    let total = stack.total_length();
    let mut envelope = Vec::new();
    for first in (0..n).step_by(2) {
        let start = stack.layer_start(first);
        let end = if first + 2 >= n {
            total
        } else {
            stack.layer_start(first + 2)
        };
        let last = first + 2 >= n;
        let best = profile
            .x
            .iter()
            .zip(&profile.rho)
            .filter(|(&x, _)| x >= start && (x < end || (last && x <= end)))
            .fold(None::<(f64, f64)>, |acc, (&x, &r)| match acc {
                Some((_, br)) if br >= r => acc,
                _ => Some((x, r)),
            });
        if let Some(point) = best {
            envelope.push(point);
        }
    }
    envelope
}

/// Characteristic length (nm) of the exponential decay of the per-period
/// density envelope, or `None` if the envelope does not decay.
pub fn decay_length(profile: &FieldProfile, stack: &Stack) -> Result<Option<f64>> {
    let envelope = period_envelope(profile, stack);
    if envelope.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 periods, got {}",
            envelope.len()
        )));
    }
    let points: Vec<(f64, f64)> = envelope
        .iter()
        .map(|&(x, r)| (x, r.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx <= 0.0 {
        return Err(Error::DegenerateFit("envelope positions coincide".into()));
    }
    let slope = sxy / sxx;
    Ok((slope < 0.0).then(|| -1.0 / slope))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeStats {
    pub peak: f64,
    pub trough: f64,
    pub mean: f64,
}

pub fn amplitude_stats(profile: &FieldProfile) -> Result<AmplitudeStats> {
    if profile.rho.is_empty() {
        return Err(invalid("profile", "empty profile"));
    }
    let peak = profile.rho.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let trough = profile.rho.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = profile.rho.iter().sum::<f64>() / profile.rho.len() as f64;
    Ok(AmplitudeStats { peak, trough, mean })
}

/// Transmission of one stack scanned in units of a central frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceScan {
    pub omega0: f64,
    pub spectrum: Spectrum,
    pub gaps: Vec<GapInterval>,
    /// `(omega / omega0, T)` at the requested ratios.
    pub points: Vec<(f64, f64)>,
}

impl ReferenceScan {
    pub fn max_t(&self) -> f64 {
        self.spectrum.t.iter().copied().fold(0.0, f64::max)
    }
}

pub fn scan_reference_points(
    stack: &Stack,
    theta: f64,
    omega0: f64,
    ratio_range: (f64, f64),
    samples: usize,
    ratios: &[f64],
) -> Result<ReferenceScan> {
    let spectrum = sweep_frequency(
        stack,
        theta,
        ratio_range.0 * omega0,
        ratio_range.1 * omega0,
        samples,
    )?;
    let gaps = find_band_gaps(&spectrum, DEFAULT_GAP_THRESHOLD)?;
    let points = ratios
        .iter()
        .map(|&q| transmissivity(stack, theta, q * omega0).map(|(t, _)| (q, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReferenceScan {
        omega0,
        spectrum,
        gaps,
        points,
    })
}
