//! Run configuration: defaults, an optional `key = value` file, then flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use euler2c::{HillComponent, ProblemParams};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Theory,
    Oracle,
    Both,
}

impl FromStr for Method {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "theory" => Ok(Method::Theory),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            _ => Err(CliError::invalid(format!(
                "unknown method `{s}` (theory, oracle, both)"
            ))),
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Theory => "theory",
            Method::Oracle => "oracle",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::invalid(format!(
                "unknown format `{s}` (json, csv)"
            ))),
        }
    }
}

pub fn parse_component(s: &str) -> Result<HillComponent, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "earth" | "e" => Ok(HillComponent::Earth),
        "moon" | "m" => Ok(HillComponent::Moon),
        _ => Err(CliError::invalid(format!(
            "unknown component `{s}` (earth, moon)"
        ))),
    }
}

/// An energy, either a number or relative to the critical Jacobi energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Energy {
    Absolute(f64),
    /// `cJ + offset`
    Critical(f64),
}

impl FromStr for Energy {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        let t = s.trim();
        let bad = || {
            CliError::invalid(format!(
                "cannot parse energy `{s}` (a number, cJ, cJ-0.1, ...)"
            ))
        };
        if let Some(rest) = t.strip_prefix("cJ").or_else(|| t.strip_prefix("cj")) {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(Energy::Critical(0.0));
            }
            let (sign, num) = match rest.as_bytes()[0] {
                b'-' => (-1.0, &rest[1..]),
                b'+' => (1.0, &rest[1..]),
                _ => return Err(bad()),
            };
            let v: f64 = num.trim().parse().map_err(|_| bad())?;
            return Ok(Energy::Critical(sign * v));
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(Energy::Absolute(v))
    }
}

impl Energy {
    pub fn resolve(self, params: &ProblemParams) -> f64 {
        match self {
            Energy::Absolute(c) => c,
            Energy::Critical(0.0) => params.c_jacobi(),
            Energy::Critical(d) => params.c_jacobi() + d,
        }
    }
}

/// Every setting a command may read. Unset fields fall back to per-command defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub mu: Option<f64>,
    pub c: Option<Energy>,
    pub component: Option<HillComponent>,
    pub method: Option<Method>,
    pub n_lambda: Option<usize>,
    pub n_nu: Option<usize>,
    pub n_phi: Option<usize>,
    pub rays: Option<usize>,
    pub energies: Option<usize>,
    pub points: Option<usize>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub refine_depth: Option<usize>,
    pub zero_tol: Option<f64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::invalid(format!("bad value `{value}` for `{key}`")))
}

impl RunConfig {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::invalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        RunConfig::parse_str(&text)
    }

    pub fn parse_str(text: &str) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::invalid(format!("config line {}: expected key = value", n + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "mu" => self.mu = Some(parse(key, value)?),
            "c" => self.c = Some(value.parse()?),
            "component" => self.component = Some(parse_component(value)?),
            "method" => self.method = Some(value.parse()?),
            "n_lambda" => self.n_lambda = Some(parse(key, value)?),
            "n_nu" => self.n_nu = Some(parse(key, value)?),
            "n_phi" => self.n_phi = Some(parse(key, value)?),
            "rays" => self.rays = Some(parse(key, value)?),
            "energies" => self.energies = Some(parse(key, value)?),
            "points" => self.points = Some(parse(key, value)?),
            "nx" => self.nx = Some(parse(key, value)?),
            "ny" => self.ny = Some(parse(key, value)?),
            "refine_depth" => self.refine_depth = Some(parse(key, value)?),
            "zero_tol" => self.zero_tol = Some(parse(key, value)?),
            "threads" => self.threads = Some(parse(key, value)?),
            "format" => self.format = Some(value.parse()?),
            "output" => self.output = Some(PathBuf::from(value)),
            _ => return Err(CliError::invalid(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Fields set in `other` win.
    pub fn overlay(mut self, other: RunConfig) -> RunConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            mu,
            c,
            component,
            method,
            n_lambda,
            n_nu,
            n_phi,
            rays,
            energies,
            points,
            nx,
            ny,
            refine_depth,
            zero_tol,
            threads,
            format,
            output
        );
        self
    }

    pub fn params(&self) -> Result<ProblemParams, CliError> {
        let mu = self.mu.ok_or_else(|| CliError::invalid("missing --mu"))?;
        Ok(ProblemParams::new(mu)?)
    }

    pub fn energy(&self, params: &ProblemParams) -> f64 {
        self.c.unwrap_or(Energy::Critical(0.0)).resolve(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        let p = ProblemParams::new(0.5).unwrap();
        assert_eq!("cJ".parse::<Energy>().unwrap().resolve(&p), -2.0);
        assert_eq!("cJ-0.1".parse::<Energy>().unwrap().resolve(&p), -2.1);
        assert_eq!("-2.5".parse::<Energy>().unwrap().resolve(&p), -2.5);
        assert!("cJ*2".parse::<Energy>().is_err());
        assert!("nan".parse::<Energy>().is_err());
    }

    #[test]
    fn file_then_flags() {
        let file =
            RunConfig::parse_str("# defaults\nmu = 0.3\ncomponent = moon\nn_phi = 8 # fewer\n")
                .unwrap();
        let flags = RunConfig {
            mu: Some(0.4),
            ..Default::default()
        };
        let cfg = file.overlay(flags);
        assert_eq!(cfg.mu, Some(0.4));
        assert_eq!(cfg.component, Some(HillComponent::Moon));
        assert_eq!(cfg.n_phi, Some(8));
        assert!(RunConfig::parse_str("colour = red").is_err());
        assert!(RunConfig::parse_str("mu 0.3").is_err());
    }
}
