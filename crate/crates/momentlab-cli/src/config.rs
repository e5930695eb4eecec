//! Settings merged from defaults, a `key = value` file, `MOMENTLAB_THREADS`
//! and command-line flags (later sources win).

use std::collections::BTreeMap;
use std::path::Path;

use momentlab::l_values::Damping;

use crate::args::RunConfig;
use crate::CliError;

pub const THREADS_ENV: &str = "MOMENTLAB_THREADS";
pub const DEFAULT_SEED: u64 = 7;

/// Named tolerances used by `verify` and `moment cross-check`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(BTreeMap::from([
            ("identity", 1e-9),
            ("double_gauss", 1e-8),
            // multiple of q^{-3/2}
            ("triple_gauss", 5.0),
            ("dft", 1e-9),
            ("parseval", 1e-10),
            ("weil", 1e-9),
            ("afe", 1e-8),
            ("hecke", 1e-9),
            ("mollifier", 1e-9),
            ("cross_check", 1e-8),
        ]))
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), CliError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(CliError::Usage(format!("tolerance {name} must be positive, got {value}")));
        }
        match self.0.get_mut(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(CliError::Usage(format!(
                "unknown tolerance {name:?}; known: {}",
                self.0.keys().copied().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub threads: Option<usize>,
    pub damping: Damping,
    pub seed: u64,
    pub q_list: Vec<u64>,
    pub timing: bool,
    pub tol: Tolerances,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            threads: None,
            damping: Damping::DEFAULT,
            seed: DEFAULT_SEED,
            q_list: Vec::new(),
            timing: false,
            tol: Tolerances::default(),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| CliError::Usage(format!("{key} = {v:?}: {e}")))
}

fn parse_threads(key: &str, v: &str) -> Result<usize, CliError> {
    match parse::<usize>(key, v)? {
        0 => Err(CliError::Usage(format!("{key} must be at least 1"))),
        n => Ok(n),
    }
}

impl Settings {
    /// Apply one `key = value` pair from a config file.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "threads" => self.threads = Some(parse_threads(key, value)?),
            "damping" => self.damping = Damping { width: parse(key, value)? },
            "seed" => self.seed = parse(key, value)?,
            "timing" => self.timing = parse(key, value)?,
            "q_list" => {
                self.q_list = value
                    .split(',')
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse(key, s))
                    .collect::<Result<_, _>>()?
            }
            _ => match key.strip_prefix("tol.") {
                Some(name) => self.tol.set(name, parse(key, value)?)?,
                None => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
            },
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        self.load_str(&text)
    }

    pub fn load_str(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            self.apply(k.trim(), v.trim())?;
        }
        Ok(())
    }

    /// Resolve everything for one run. `env_threads` is the value of
    /// `MOMENTLAB_THREADS`, if set.
    pub fn resolve(cfg: &RunConfig, env_threads: Option<&str>) -> Result<Self, CliError> {
        let mut s = Settings::default();
        if let Some(p) = &cfg.config {
            s.load_file(p)?;
        }
        if let Some(v) = env_threads.filter(|v| !v.trim().is_empty()) {
            s.threads = Some(parse_threads(THREADS_ENV, v.trim())?);
        }
        if let Some(n) = cfg.threads {
            s.threads = Some(parse_threads("--threads", &n.to_string())?);
        }
        if let Some(w) = cfg.damping {
            s.damping = Damping { width: w };
        }
        if !(s.damping.width.is_finite() && s.damping.width > 0.0) {
            return Err(CliError::Usage(format!("damping width must be positive, got {}", s.damping.width)));
        }
        s.timing |= cfg.timing;
        for t in &cfg.tol {
            s.tol.set(&t.name, t.value)?;
        }
        Ok(s)
    }
}
