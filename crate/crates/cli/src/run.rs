//! Command execution: each command computes its tables, writes them under the
//! output directory and reports which files it produced.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use photonic_tmm::observables::{default_incident_state, net_flux_at, sample_profile};
use photonic_tmm::quantum::solve_scatter;
use photonic_tmm::spectra::{
    decay_length, find_band_gaps, period_envelope, scan_reference_points, sweep_frequency,
    CentralFrequency, Spectrum, DEFAULT_GAP_THRESHOLD,
};
use photonic_tmm::Stack;
use thiserror::Error;

use crate::config::RunConfig;
use crate::svg::{render_svg, Axes, Series, SvgError};
use crate::table::{write_csv, Table, DECAY_HEADERS, GAP_HEADERS, PROFILE_HEADERS, SPECTRUM_HEADERS};

pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const FLUX_TOLERANCE: f64 = 1e-10;
pub const NET_FLUX_TOLERANCE: f64 = 1e-9;
const REFERENCE_RATIOS: [f64; 3] = [1.25, 1.5, 3.2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Profile,
    Bandgap,
    Validate,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("simulation error: {0}")]
    Simulation(#[from] photonic_tmm::Error),
    #[error("plot error: {0}")]
    Plot(#[from] SvgError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    /// `false` only when `validate` finds a failing property.
    pub passed: bool,
    pub report: Option<String>,
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl<'a> Writer<'a> {
    fn new(dir: &'a Path) -> Result<Self, RunError> {
        fs::create_dir_all(dir).map_err(|source| RunError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        Ok(Writer {
            dir,
            files: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), RunError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|source| RunError::Io {
            path: path.clone(),
            source,
        })?;
        self.files.push(path);
        Ok(())
    }
}

pub fn run(config: &RunConfig, command: Command) -> Result<RunOutcome, RunError> {
    let stack = config.stack.build()?;
    let mut writer = Writer::new(&config.output.directory)?;
    let mut passed = true;
    let mut report = None;
    match command {
        Command::Spectrum => spectrum_command(config, &stack, &mut writer)?,
        Command::Profile => profile_command(config, &stack, &mut writer)?,
        Command::Bandgap => bandgap_command(config, &stack, &mut writer)?,
        Command::Validate => {
            let (ok, text) = validation_report(config, &stack)?;
            writer.write("validation.txt", text.as_bytes())?;
            passed = ok;
            report = Some(text);
        }
    }
    Ok(RunOutcome {
        files: writer.files,
        passed,
        report,
    })
}

fn sweep(config: &RunConfig, stack: &Stack) -> Result<Spectrum, RunError> {
    let w0 = config.omega0();
    Ok(sweep_frequency(
        stack,
        config.theta(),
        config.sweep.omega_ratio_min * w0,
        config.sweep.omega_ratio_max * w0,
        config.sweep.samples,
    )?)
}

pub fn spectrum_table(spectrum: &Spectrum, omega0: f64) -> Table {
    let mut table = Table::new(&SPECTRUM_HEADERS);
    for k in 0..spectrum.len() {
        table.push(vec![
            spectrum.omega[k],
            spectrum.omega[k] / omega0,
            spectrum.t[k],
            spectrum.r[k],
            spectrum.t_classical[k],
        ]);
    }
    table
}

fn spectrum_command(config: &RunConfig, stack: &Stack, writer: &mut Writer) -> Result<(), RunError> {
    let spectrum = sweep(config, stack)?;
    let w0 = config.omega0();
    writer.write("spectrum.csv", &write_csv(&spectrum_table(&spectrum, w0)))?;
    if config.output.emit_svg {
        let ratio: Vec<f64> = spectrum.omega.iter().map(|w| w / w0).collect();
        let series = [
            Series::new("T (quantum)", ratio.iter().copied().zip(spectrum.t.iter().copied()).collect()),
            Series::new(
                "T (classical)",
                ratio.iter().copied().zip(spectrum.t_classical.iter().copied()).collect(),
            ),
        ];
        let axes = Axes {
            title: "Transmissivity".into(),
            x_label: "omega / omega0".into(),
            y_label: "T".into(),
        };
        writer.write("spectrum.svg", &render_svg(&series, &axes)?)?;
    }
    Ok(())
}

fn profile_command(config: &RunConfig, stack: &Stack, writer: &mut Writer) -> Result<(), RunError> {
    let omega = config.profile.omega_ratio * config.omega0();
    let profile = sample_profile(stack, config.theta(), omega, config.profile.samples)?;
    let mut table = Table::new(&PROFILE_HEADERS);
    for k in 0..profile.len() {
        table.push(vec![profile.x[k], profile.rho[k], profile.j_over_c[k]]);
    }
    writer.write("profile.csv", &write_csv(&table))?;
    if config.output.emit_svg {
        let series = [
            Series::new("rho", profile.x.iter().copied().zip(profile.rho.iter().copied()).collect()),
            Series::new("J/c", profile.x.iter().copied().zip(profile.j_over_c.iter().copied()).collect()),
        ];
        let axes = Axes {
            title: format!("Density and current at omega = {} omega0", config.profile.omega_ratio),
            x_label: "x (nm)".into(),
            y_label: "rho, J/c".into(),
        };
        writer.write("profile.svg", &render_svg(&series, &axes)?)?;
    }
    Ok(())
}

fn bandgap_command(config: &RunConfig, stack: &Stack, writer: &mut Writer) -> Result<(), RunError> {
    let spectrum = sweep(config, stack)?;
    let gaps = find_band_gaps(&spectrum, DEFAULT_GAP_THRESHOLD)?;
    let mut gap_table = Table::new(&GAP_HEADERS);
    let mut decay_table = Table::new(&DECAY_HEADERS);
    for gap in &gaps {
        gap_table.push(vec![gap.omega_lo, gap.omega_hi, gap.min_t]);
        if stack.is_empty() {
            continue;
        }
        let profile = sample_profile(stack, config.theta(), gap.center(), config.profile.samples)?;
        // fewer than three periods cannot be fitted; record NaN
        let length = decay_length(&profile, stack).ok().flatten().unwrap_or(f64::NAN);
        let envelope = period_envelope(&profile, stack);
        let ratio = match (envelope.first(), envelope.last()) {
            (Some(first), Some(last)) => last.1 / first.1,
            _ => f64::NAN,
        };
        decay_table.push(vec![gap.center(), length, ratio]);
    }
    writer.write("gaps.csv", &write_csv(&gap_table))?;
    writer.write("decay.csv", &write_csv(&decay_table))?;
    Ok(())
}

/// Cross-checks on the configured stack; returns `(all passed, report text)`.
pub fn validation_report(config: &RunConfig, stack: &Stack) -> Result<(bool, String), RunError> {
    let mut text = String::new();
    let mut all_ok = true;
    let mut line = |text: &mut String, ok: bool, msg: String| {
        all_ok &= ok;
        let _ = writeln!(text, "{} {msg}", if ok { "PASS" } else { "FAIL" });
    };

    let _ = writeln!(
        text,
        "stack: {} layers, {:.3} nm; theta = {} rad; omega0 = {:.6e} rad/s",
        stack.len(),
        stack.total_length(),
        config.theta(),
        config.omega0()
    );

    let spectrum = sweep(config, stack)?;
    let dev = spectrum.max_oracle_deviation();
    line(
        &mut text,
        dev < ORACLE_TOLERANCE,
        format!("quantum vs classical: max|T_q - T_cl| = {dev:.3e} over {} points (< {ORACLE_TOLERANCE:e})", spectrum.len()),
    );
    let flux = spectrum.max_flux_residual();
    line(
        &mut text,
        flux < FLUX_TOLERANCE,
        format!("flux conservation: max|T + R - 1| = {flux:.3e} (< {FLUX_TOLERANCE:e})"),
    );
    let bounded = spectrum
        .t
        .iter()
        .chain(&spectrum.r)
        .chain(&spectrum.t_classical)
        .all(|v| (-1e-12..=1.0 + 1e-12).contains(v));
    line(&mut text, bounded, "T, R, T_classical within [0, 1]".to_string());

    if !stack.is_empty() {
        let probes = [0, spectrum.len() / 4, spectrum.len() / 2, spectrum.len() - 1];
        let incident = default_incident_state().amplitude;
        let mut worst: f64 = 0.0;
        for &k in &probes {
            let sol = solve_scatter(stack, config.theta(), spectrum.omega[k], &incident)?;
            for (pair, &c) in sol.layer_coefficients.iter().zip(&sol.params.layer_c) {
                worst = worst.max((net_flux_at(pair, &sol.params, c) - sol.transmissivity).abs());
            }
        }
        line(
            &mut text,
            worst < NET_FLUX_TOLERANCE,
            format!("net flux uniform through layers: max|flux - T| = {worst:.3e} (< {NET_FLUX_TOLERANCE:e})"),
        );
    }

    let gaps = find_band_gaps(&spectrum, DEFAULT_GAP_THRESHOLD)?;
    let _ = writeln!(text, "band gaps (T < {DEFAULT_GAP_THRESHOLD:e}): {}", gaps.len());
    for g in &gaps {
        let _ = writeln!(
            text,
            "  [{:.6e}, {:.6e}] rad/s = [{:.4}, {:.4}] omega0, min T {:.3e}",
            g.omega_lo,
            g.omega_hi,
            g.omega_lo / config.omega0(),
            g.omega_hi / config.omega0(),
            g.min_t
        );
    }

    let _ = writeln!(text, "reference points under both omega0 readings:");
    for reading in CentralFrequency::ALL {
        let scan = scan_reference_points(
            stack,
            config.theta(),
            reading.omega0(),
            (config.sweep.omega_ratio_min, config.sweep.omega_ratio_max),
            config.sweep.samples,
            &REFERENCE_RATIOS,
        )?;
        let points: Vec<String> = scan.points.iter().map(|(q, t)| format!("T({q} omega0) = {t:.6}")).collect();
        let _ = writeln!(
            text,
            "  {}: {}; {} gap(s), max T {:.6}",
            reading.label(),
            points.join(", "),
            scan.gaps.len(),
            scan.max_t()
        );
    }
    let _ = writeln!(text, "result: {}", if all_ok { "PASS" } else { "FAIL" });
    Ok((all_ok, text))
}
