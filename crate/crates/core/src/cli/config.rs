use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::{CommonArgs, Format, DEFAULT_QUAD};
use crate::catalog::{lookup, CaseParams, ParamOverrides};
use crate::error::{Error, Result};
use crate::geometry::{QuadratureSpec, DEFAULT_SEED};

const KEYS: [&str; 15] =
    ["case", "n", "p", "R", "radius", "alpha", "gamma", "m", "s", "t", "quad", "seed", "remainder", "output", "format"];

/// `key = value` lines; `#` starts a comment and values may be double-quoted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::Config(format!("config line {}: unknown key '{k}'", i + 1)));
            }
            let v = v.trim();
            let v = v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v);
            let k = if k == "radius" { "R" } else { k };
            values.insert(k.to_string(), v.to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| Error::Config(format!("config key '{key}': cannot parse '{v}'"))))
            .transpose()
    }

    pub fn overrides(&self) -> Result<ParamOverrides> {
        Ok(ParamOverrides {
            n: self.num("n")?,
            p: self.num("p")?,
            radius: self.num("R")?,
            alpha: self.num("alpha")?,
            gamma: self.num("gamma")?,
            m: self.num("m")?,
            s: self.num("s")?,
            t: self.num("t")?,
        })
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: String,
    pub overrides: ParamOverrides,
    pub quad: QuadratureSpec,
    pub include_remainder: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var("HARDY_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("HARDY_SEED must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    /// Flags, then the config file, then defaults.
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let case = args.case.clone().or_else(|| file.get("case").map(String::from)).unwrap_or_else(|| "all".into());
        if case != "all" {
            lookup(&case)?;
        }
        let overrides = file.overrides()?.merge(args.overrides());
        let quad_text = args.quad.clone().or_else(|| file.get("quad").map(String::from));
        let mut quad: QuadratureSpec = quad_text.as_deref().unwrap_or(DEFAULT_QUAD).parse()?;
        match args.seed.or(file.num("seed")?) {
            Some(s) => quad = quad.with_seed(s),
            None => quad = quad.with_default_seed(env_seed()?.unwrap_or(DEFAULT_SEED)),
        }
        let include_remainder = args.remainder
            || match file.get("remainder") {
                None => false,
                Some("true" | "1" | "yes" | "on") => true,
                Some("false" | "0" | "no" | "off") => false,
                Some(v) => return Err(Error::Config(format!("config key 'remainder': expected true/false, got '{v}'"))),
            };
        let output = args.output.clone().or_else(|| file.get("output").map(PathBuf::from));
        let format = match (args.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some("json")) => Format::Json,
            (None, Some("csv")) => Format::Csv,
            (None, Some(v)) => return Err(Error::Config(format!("config key 'format': expected json or csv, got '{v}'"))),
            (None, None) if output.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv")) => Format::Csv,
            (None, None) => Format::Json,
        };
        Ok(RunConfig { case, overrides, quad, include_remainder, output, format })
    }

    /// The entry's defaults with the configured overrides applied.
    pub fn params_for(&self, id: &str) -> Result<CaseParams> {
        Ok(self.overrides.apply(lookup(id)?.default_params()))
    }

    pub fn hpw_dim(&self) -> usize {
        self.overrides.n.unwrap_or(3)
    }

    pub fn hpw_radius(&self) -> f64 {
        self.overrides.radius.unwrap_or(1.0)
    }
}
