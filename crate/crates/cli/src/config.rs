//! Flat `key=value` run configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::CliError;

/// A configurable parameter of an experiment; `nargs` values on the command line.
#[derive(Clone, Copy, Debug)]
pub struct Key {
    pub name: &'static str,
    pub help: &'static str,
    pub default: Option<&'static str>,
    pub nargs: usize,
}

impl Key {
    pub const fn new(name: &'static str, default: Option<&'static str>, help: &'static str) -> Self {
        Key { name, help, default, nargs: 1 }
    }

    pub const fn multi(name: &'static str, nargs: usize, help: &'static str) -> Self {
        Key { name, help, default: None, nargs }
    }
}

/// Sweep of one parameter over `steps` evenly spaced values, ends included.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let d = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.stop } else { self.start + d * i as f64 }).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub out: Option<PathBuf>,
    pub seed: u64,
    values: BTreeMap<String, String>,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", n + 1)));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    /// Merges defaults, then the config file, then flags. Keys outside
    /// `keys` (plus `out` and `seed`) are rejected.
    pub fn build(
        command: &str,
        keys: &[Key],
        file: BTreeMap<String, String>,
        flags: BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for k in keys {
            if let Some(d) = k.default {
                values.insert(k.name.to_string(), d.to_string());
            }
        }
        for (k, v) in file.into_iter().chain(flags) {
            let known = k == "out" || k == "seed" || keys.iter().any(|x| x.name == k);
            if !known {
                return Err(CliError::Usage(format!("unknown key `{k}` for `{command}`")));
            }
            values.insert(k, v);
        }
        let out = values.remove("out").map(PathBuf::from);
        let seed = match values.remove("seed") {
            Some(s) => s.parse().map_err(|_| CliError::Usage(format!("seed must be a non-negative integer, got `{s}`")))?,
            None => 0,
        };
        Ok(RunConfig { command: command.to_string(), out, seed, values })
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn str(&self, key: &str) -> Result<&str, CliError> {
        self.values.get(key).map(String::as_str).ok_or_else(|| CliError::Usage(format!("missing `{key}`")))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<T, CliError> {
        let s = self.str(key)?;
        s.parse().map_err(|_| CliError::Usage(format!("`{key}` must be {what}, got `{s}`")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let x: f64 = self.parse(key, "a number")?;
        if !x.is_finite() {
            return Err(CliError::Usage(format!("`{key}` must be finite")));
        }
        Ok(x)
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.parse(key, "a non-negative integer")
    }

    pub fn i32(&self, key: &str) -> Result<i32, CliError> {
        self.parse(key, "an integer")
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        self.parse(key, "true or false")
    }

    /// Comma- or space-separated numbers.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let s = self.str(key)?;
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| CliError::Usage(format!("`{key}`: bad number `{t}`"))))
            .collect()
    }

    pub fn dims(&self, key: &str) -> Result<[usize; 3], CliError> {
        let v = self.f64_list(key)?;
        if v.len() != 3 || v.iter().any(|&x| x < 1.0 || x.fract() != 0.0) {
            return Err(CliError::Usage(format!("`{key}` must be three positive integers")));
        }
        Ok([v[0] as usize, v[1] as usize, v[2] as usize])
    }

    /// `sweep = PARAM START STOP STEPS`, if present.
    pub fn sweep(&self) -> Result<Option<Sweep>, CliError> {
        let Some(s) = self.values.get("sweep") else { return Ok(None) };
        let parts: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let bad = || CliError::Usage(format!("sweep must be `PARAM START STOP STEPS`, got `{s}`"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let start: f64 = parts[1].parse().map_err(|_| bad())?;
        let stop: f64 = parts[2].parse().map_err(|_| bad())?;
        let steps: usize = parts[3].parse().map_err(|_| bad())?;
        if steps == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        Ok(Some(Sweep { param: parts[0].to_string(), start, stop, steps }))
    }
}
