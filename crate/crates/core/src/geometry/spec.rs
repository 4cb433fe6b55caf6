//! Quadrature spec strings: `mc:N[:seed=S]` and `radial:K:mc:D[:seed=S][:noabsorb]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    MonteCarlo { samples: usize },
    /// K radial nodes per direction, D directions. `absorb` lets the radial
    /// weight take up an origin singularity.
    RadialProduct { radial_nodes: usize, directions: usize, absorb: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub method: Method,
    seed: Option<u64>,
}

impl QuadratureSpec {
    pub fn monte_carlo(samples: usize) -> Self {
        QuadratureSpec { method: Method::MonteCarlo { samples }, seed: None }
    }

    pub fn radial(radial_nodes: usize, directions: usize) -> Self {
        QuadratureSpec {
            method: Method::RadialProduct { radial_nodes, directions, absorb: true },
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Sets the seed only if the spec string did not carry one.
    pub fn with_default_seed(mut self, seed: u64) -> Self {
        self.seed.get_or_insert(seed);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn has_explicit_seed(&self) -> bool {
        self.seed.is_some()
    }

    /// Total integrand evaluations per interior integral.
    pub fn samples(&self) -> usize {
        match self.method {
            Method::MonteCarlo { samples } => samples,
            Method::RadialProduct { radial_nodes, directions, .. } => radial_nodes * directions,
        }
    }
}

impl fmt::Display for QuadratureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.method {
            Method::MonteCarlo { samples } => write!(f, "mc:{samples}")?,
            Method::RadialProduct { radial_nodes, directions, .. } => {
                write!(f, "radial:{radial_nodes}:mc:{directions}")?
            }
        }
        if let Some(s) = self.seed {
            write!(f, ":seed={s}")?;
        }
        if let Method::RadialProduct { absorb: false, .. } = self.method {
            f.write_str(":noabsorb")?;
        }
        Ok(())
    }
}

impl Serialize for QuadratureSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn count(tok: Option<&str>, what: &str, src: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Config(format!("quad spec '{src}': missing {what}")))?;
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::Config(format!("quad spec '{src}': {what} must be a positive integer, got '{tok}'"))),
    }
}

impl FromStr for QuadratureSpec {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut parts = src.trim().split(':');
        let mut spec = match parts.next() {
            Some("mc") => QuadratureSpec::monte_carlo(count(parts.next(), "sample count", src)?),
            Some("radial") => {
                let k = count(parts.next(), "radial node count", src)?;
                if parts.next() != Some("mc") {
                    return Err(Error::Config(format!("quad spec '{src}': expected 'radial:K:mc:D'")));
                }
                let d = count(parts.next(), "direction count", src)?;
                QuadratureSpec::radial(k, d)
            }
            _ => return Err(Error::Config(format!("quad spec '{src}': unknown method"))),
        };
        for opt in parts {
            if let Some(s) = opt.strip_prefix("seed=") {
                let seed = s
                    .parse()
                    .map_err(|_| Error::Config(format!("quad spec '{src}': bad seed '{s}'")))?;
                spec.seed = Some(seed);
            } else if opt == "noabsorb" {
                match &mut spec.method {
                    Method::RadialProduct { absorb, .. } => *absorb = false,
                    Method::MonteCarlo { .. } => {
                        return Err(Error::Config(format!("quad spec '{src}': noabsorb needs a radial rule")))
                    }
                }
            } else {
                return Err(Error::Config(format!("quad spec '{src}': unknown option '{opt}'")));
            }
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let a: QuadratureSpec = "mc:1000000:seed=42".parse().unwrap();
        assert_eq!(a.method, Method::MonteCarlo { samples: 1_000_000 });
        assert_eq!(a.seed(), 42);
        assert_eq!(a.to_string(), "mc:1000000:seed=42");

        let b: QuadratureSpec = "radial:256:mc:20000".parse().unwrap();
        assert_eq!(b.samples(), 256 * 20000);
        assert!(!b.has_explicit_seed());
        assert_eq!(b.with_default_seed(7).seed(), 7);
        assert_eq!(b.to_string().parse::<QuadratureSpec>().unwrap(), b);

        let c: QuadratureSpec = "radial:8:mc:4:seed=1:noabsorb".parse().unwrap();
        assert_eq!(c.to_string(), "radial:8:mc:4:seed=1:noabsorb");
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["", "mc", "mc:0", "mc:x", "radial:8:4", "qmc:10", "mc:10:seed=", "mc:5:noabsorb", "mc:5:foo"] {
            assert!(bad.parse::<QuadratureSpec>().is_err(), "{bad}");
        }
    }
}
