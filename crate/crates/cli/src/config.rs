//! JSON run configuration.
//!
//! Every field is optional; omitted fields take the reference-crystal
//! defaults (`n_a = 2.68`, `n_b = 1.68`, `a = 200 nm`, `b = 300 nm`, ten
//! periods, normal incidence, `omega0 = 2 pi * 171 THz`).

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use photonic_tmm::stack::{make_mirror_stack, make_periodic_stack};
use photonic_tmm::Stack;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config field `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum StackType {
    #[default]
    Periodic,
    Mirror,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StackSpec {
    #[serde(rename = "type")]
    pub kind: StackType,
    pub n_a: f64,
    pub n_b: f64,
    pub a_nm: f64,
    pub b_nm: f64,
    /// `N` for `(AB)^N`, `m` for `(AB)^m (BA)^m`.
    pub periods: usize,
}

impl Default for StackSpec {
    fn default() -> Self {
        StackSpec {
            kind: StackType::Periodic,
            n_a: 2.68,
            n_b: 1.68,
            a_nm: 200.0,
            b_nm: 300.0,
            periods: 10,
        }
    }
}

impl StackSpec {
    pub fn build(&self) -> photonic_tmm::Result<Stack> {
        match self.kind {
            StackType::Periodic => make_periodic_stack(self.n_a, self.n_b, self.a_nm, self.b_nm, self.periods),
            StackType::Mirror => make_mirror_stack(self.n_a, self.n_b, self.a_nm, self.b_nm, self.periods),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Incidence {
    pub theta_rad: f64,
    pub omega0_rad_per_s: f64,
}

impl Default for Incidence {
    fn default() -> Self {
        Incidence {
            theta_rad: 0.0,
            omega0_rad_per_s: 2.0 * PI * 171e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub omega_ratio_min: f64,
    pub omega_ratio_max: f64,
    pub samples: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            omega_ratio_min: 0.1,
            omega_ratio_max: 3.5,
            samples: 2001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileSpec {
    pub omega_ratio: f64,
    pub samples: usize,
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec {
            omega_ratio: 1.25,
            samples: photonic_tmm::observables::DEFAULT_PROFILE_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub directory: PathBuf,
    pub emit_svg: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            directory: PathBuf::from("out"),
            emit_svg: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub stack: StackSpec,
    pub incidence: Incidence,
    pub sweep: SweepSpec,
    pub profile: ProfileSpec,
    pub output: OutputSpec,
}

fn check(ok: bool, field: &'static str, reason: impl FnOnce() -> String) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(ConfigError::Validation {
            field,
            reason: reason(),
        })
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let s = &self.stack;
        check(s.n_a.is_finite() && s.n_a >= 1.0, "stack.n_a", || format!("must be >= 1, got {}", s.n_a))?;
        check(s.n_b.is_finite() && s.n_b >= 1.0, "stack.n_b", || format!("must be >= 1, got {}", s.n_b))?;
        check(s.a_nm.is_finite() && s.a_nm > 0.0, "stack.a_nm", || format!("must be > 0, got {}", s.a_nm))?;
        check(s.b_nm.is_finite() && s.b_nm > 0.0, "stack.b_nm", || format!("must be > 0, got {}", s.b_nm))?;

        let i = &self.incidence;
        check(
            i.theta_rad.is_finite() && (0.0..FRAC_PI_2).contains(&i.theta_rad),
            "incidence.theta_rad",
            || format!("must lie in [0, pi/2), got {}", i.theta_rad),
        )?;
        check(
            i.omega0_rad_per_s.is_finite() && i.omega0_rad_per_s > 0.0,
            "incidence.omega0_rad_per_s",
            || format!("must be > 0, got {}", i.omega0_rad_per_s),
        )?;

        let w = &self.sweep;
        check(
            w.omega_ratio_min.is_finite() && w.omega_ratio_min > 0.0,
            "sweep.omega_ratio_min",
            || format!("must be > 0, got {}", w.omega_ratio_min),
        )?;
        check(
            w.omega_ratio_max.is_finite() && w.omega_ratio_max > w.omega_ratio_min,
            "sweep.omega_ratio_max",
            || format!("must exceed omega_ratio_min ({}), got {}", w.omega_ratio_min, w.omega_ratio_max),
        )?;
        check(w.samples >= 2, "sweep.samples", || format!("must be >= 2, got {}", w.samples))?;

        let p = &self.profile;
        check(
            p.omega_ratio.is_finite() && p.omega_ratio > 0.0,
            "profile.omega_ratio",
            || format!("must be > 0, got {}", p.omega_ratio),
        )?;
        check(p.samples >= 2, "profile.samples", || format!("must be >= 2, got {}", p.samples))?;
        Ok(())
    }

    pub fn omega0(&self) -> f64 {
        self.incidence.omega0_rad_per_s
    }

    pub fn theta(&self) -> f64 {
        self.incidence.theta_rad
    }
}

pub fn parse_config(text: &[u8]) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = serde_json::from_slice(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        let c = parse_config(b"{}").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.stack.n_a, 2.68);
        assert_eq!(c.stack.n_b, 1.68);
        assert_eq!(c.stack.a_nm, 200.0);
        assert_eq!(c.stack.b_nm, 300.0);
        assert_eq!(c.stack.periods, 10);
        assert_eq!(c.theta(), 0.0);
        assert!((c.omega0() - 1.074e15).abs() < 1e12);
        assert_eq!((c.sweep.omega_ratio_min, c.sweep.omega_ratio_max), (0.1, 3.5));
        assert_eq!(c.sweep.samples, 2001);
    }

    #[test]
    fn zero_periods_is_valid() {
        let c = parse_config(br#"{"stack":{"periods":0}}"#).unwrap();
        assert!(c.stack.build().unwrap().is_empty());
    }

    #[test]
    fn mirror_type() {
        let c = parse_config(br#"{"stack":{"type":"mirror","periods":5}}"#).unwrap();
        assert_eq!(c.stack.kind, StackType::Mirror);
        assert_eq!(c.stack.build().unwrap().len(), 20);
    }

    #[test]
    fn negative_thickness_names_field() {
        let err = parse_config(br#"{"stack":{"a_nm":-5}}"#).unwrap_err();
        match err {
            ConfigError::Validation { field, .. } => assert_eq!(field, "stack.a_nm"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn other_validation_failures() {
        for (text, field) in [
            (r#"{"stack":{"n_b":0.5}}"#, "stack.n_b"),
            (r#"{"incidence":{"theta_rad":1.6}}"#, "incidence.theta_rad"),
            (r#"{"sweep":{"omega_ratio_min":2.0,"omega_ratio_max":1.0}}"#, "sweep.omega_ratio_max"),
            (r#"{"sweep":{"samples":1}}"#, "sweep.samples"),
            (r#"{"profile":{"omega_ratio":0}}"#, "profile.omega_ratio"),
        ] {
            match parse_config(text.as_bytes()) {
                Err(ConfigError::Validation { field: f, .. }) => assert_eq!(f, field, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_config(b"{\n  \"stack\": {\"n_a\": }\n}").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
        let err = parse_config(br#"{"stack":{"thickness":1}}"#).unwrap_err();
        assert!(err.to_string().contains("thickness"));
    }
}
