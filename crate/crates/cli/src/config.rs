//! Instance configuration: a JSON document naming the realization, the
//! generator sets, and optional tolerance overrides. Complex numbers are
//! two-element arrays [re, im].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use fiberwise_core::fiber::FiberedGeneratorSet;
use fiberwise_core::subspace::RankTolerance;
use fiberwise_core::transforms::{self, FiniteGroupPair, FourierProfile};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

type ConfigResult<T> = Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> ConfigResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    realization: String,
    n: Option<usize>,
    m: Option<usize>,
    grid_size: Option<usize>,
    truncation: Option<usize>,
    sets: SetsSection,
    tolerances: Option<TolSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsSection {
    #[serde(rename = "A")]
    a: Option<Vec<GenSpec>>,
    #[serde(rename = "B")]
    b: Option<Vec<GenSpec>>,
    measuring: Option<Vec<GenSpec>>,
    targets: Option<Vec<Vec<GenSpec>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TolSection {
    rank: Option<f64>,
    intersect: Option<f64>,
    close: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GenSpec {
    Delta { delta: usize },
    Profile(ProfileSpec),
    Vector(Vec<(f64, f64)>),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case", deny_unknown_fields)]
enum ProfileSpec {
    Gaussian { a: f64 },
    Bspline { order: usize },
    Bandlimit { lo: f64, hi: f64 },
    Delta,
    CustomTable { path: String },
}

/// A fully resolved instance: every named set fiberized on a shared grid.
pub struct Instance {
    pub realization: Realization,
    pub tolerance: RankTolerance,
    pub sets: BTreeMap<String, FiberedGeneratorSet>,
    pub targets: Vec<FiberedGeneratorSet>,
}

#[derive(Debug, Clone, Copy)]
pub enum Realization {
    FiniteGroup(FiniteGroupPair),
    RealLine { grid_size: usize, truncation: usize },
}

impl Instance {
    pub fn set(&self, name: &str) -> ConfigResult<&FiberedGeneratorSet> {
        self.sets
            .get(name)
            .ok_or_else(|| ConfigError(format!("config does not define set \"{name}\"")))
    }
}

/// Tolerance overrides passed on the command line; they take precedence over
/// the config file's `tolerances` section.
#[derive(Debug, Clone, Copy, Default)]
pub struct TolOverrides {
    pub rank: Option<f64>,
    pub intersect: Option<f64>,
    pub close: Option<f64>,
}

pub fn load_instance(path: &Path, overrides: TolOverrides) -> ConfigResult<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("cannot parse {}: {e}", path.display())))?;
    let base_dir = path.parent().map(PathBuf::from).unwrap_or_default();

    let defaults = RankTolerance::default();
    let from_file = file.tolerances.as_ref();
    let tolerance = RankTolerance::new(
        overrides
            .rank
            .or(from_file.and_then(|t| t.rank))
            .unwrap_or(defaults.relative_threshold),
        overrides
            .intersect
            .or(from_file.and_then(|t| t.intersect))
            .unwrap_or(defaults.intersect_threshold),
        overrides
            .close
            .or(from_file.and_then(|t| t.close))
            .unwrap_or(defaults.close_threshold),
    )
    .map_err(|e| ConfigError(e.to_string()))?;

    let mut named: Vec<(String, &Vec<GenSpec>)> = Vec::new();
    if let Some(a) = &file.sets.a {
        named.push(("A".into(), a));
    }
    if let Some(b) = &file.sets.b {
        named.push(("B".into(), b));
    }
    if let Some(m) = &file.sets.measuring {
        named.push(("measuring".into(), m));
    }
    let target_specs = file.sets.targets.as_deref().unwrap_or(&[]);

    match file.realization.as_str() {
        "finite-group" => {
            let n = file
                .n
                .ok_or_else(|| ConfigError("finite-group config needs \"n\"".into()))?;
            let m = file
                .m
                .ok_or_else(|| ConfigError("finite-group config needs \"m\"".into()))?;
            if file.grid_size.is_some() || file.truncation.is_some() {
                return err("grid_size/truncation only apply to the real-line realization");
            }
            let pair = FiniteGroupPair::new(n, m).map_err(|e| ConfigError(e.to_string()))?;
            let build = |specs: &[GenSpec], what: &str| -> ConfigResult<FiberedGeneratorSet> {
                let generators = specs
                    .iter()
                    .map(|s| group_generator(s, n, what))
                    .collect::<ConfigResult<Vec<_>>>()?;
                transforms::fiberize_group(&generators, pair)
                    .map_err(|e| ConfigError(format!("set {what}: {e}")))
            };
            let mut sets = BTreeMap::new();
            for (name, specs) in named {
                let set = build(specs, &name)?;
                sets.insert(name, set);
            }
            let targets = target_specs
                .iter()
                .enumerate()
                .map(|(i, specs)| build(specs, &format!("targets[{i}]")))
                .collect::<ConfigResult<Vec<_>>>()?;
            Ok(Instance {
                realization: Realization::FiniteGroup(pair),
                tolerance,
                sets,
                targets,
            })
        }
        "real-line" => {
            let grid_size = file
                .grid_size
                .ok_or_else(|| ConfigError("real-line config needs \"grid_size\"".into()))?;
            let truncation = file.truncation.unwrap_or(64);
            if file.n.is_some() || file.m.is_some() {
                return err("n/m only apply to the finite-group realization");
            }
            let build = |specs: &[GenSpec], what: &str| -> ConfigResult<FiberedGeneratorSet> {
                let profiles = specs
                    .iter()
                    .map(|s| line_profile(s, &base_dir, what))
                    .collect::<ConfigResult<Vec<_>>>()?;
                transforms::fiberize_real_line(&profiles, grid_size, truncation)
                    .map_err(|e| ConfigError(format!("set {what}: {e}")))
            };
            let mut sets = BTreeMap::new();
            for (name, specs) in named {
                let set = build(specs, &name)?;
                sets.insert(name, set);
            }
            let targets = target_specs
                .iter()
                .enumerate()
                .map(|(i, specs)| build(specs, &format!("targets[{i}]")))
                .collect::<ConfigResult<Vec<_>>>()?;
            Ok(Instance {
                realization: Realization::RealLine {
                    grid_size,
                    truncation,
                },
                sets,
                targets,
                tolerance,
            })
        }
        other => err(format!(
            "unknown realization \"{other}\" (expected \"finite-group\" or \"real-line\")"
        )),
    }
}

fn group_generator(spec: &GenSpec, n: usize, what: &str) -> ConfigResult<Vec<Complex64>> {
    match spec {
        GenSpec::Delta { delta } => {
            if *delta >= n {
                return err(format!(
                    "set {what}: delta index {delta} is outside the group of order {n}"
                ));
            }
            let mut f = vec![Complex64::new(0.0, 0.0); n];
            f[*delta] = Complex64::new(1.0, 0.0);
            Ok(f)
        }
        GenSpec::Vector(entries) => {
            if entries.len() != n {
                return err(format!(
                    "set {what}: inline vector has {} entries but the group order is {n}",
                    entries.len()
                ));
            }
            Ok(entries
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect())
        }
        GenSpec::Profile(_) => err(format!(
            "set {what}: Fourier profiles belong to the real-line realization"
        )),
    }
}

fn line_profile(spec: &GenSpec, base_dir: &Path, what: &str) -> ConfigResult<FourierProfile> {
    match spec {
        GenSpec::Profile(p) => match p {
            ProfileSpec::Gaussian { a } => Ok(FourierProfile::Gaussian { decay: *a }),
            ProfileSpec::Bspline { order } => Ok(FourierProfile::BSpline { order: *order }),
            ProfileSpec::Bandlimit { lo, hi } => Ok(FourierProfile::Bandlimit { lo: *lo, hi: *hi }),
            ProfileSpec::Delta => Ok(FourierProfile::Delta),
            ProfileSpec::CustomTable { path } => {
                let full = base_dir.join(path);
                load_table(&full).map_err(|e| ConfigError(format!("set {what}: {e}")))
            }
        },
        _ => err(format!(
            "set {what}: real-line generators must be profile objects"
        )),
    }
}

/// Two-column CSV (ξ, value); lines starting with '#' are skipped.
fn load_table(path: &Path) -> Result<FourierProfile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read table {}: {e}", path.display()))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |s: Option<&str>| -> Result<f64, String> {
            s.ok_or_else(|| format!("{}:{}: expected two columns", path.display(), lineno + 1))?
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("{}:{}: {e}", path.display(), lineno + 1))
        };
        let xi = parse(parts.next())?;
        let value = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(format!(
                "{}:{}: expected exactly two columns",
                path.display(),
                lineno + 1
            ));
        }
        points.push((xi, value));
    }
    FourierProfile::table(points).map_err(|e| e.to_string())
}
