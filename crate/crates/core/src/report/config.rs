use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::arith::Precision;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// Quasi-isometry constants and diameter supplied by the user; never guessed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim1Constants {
    pub c1: f64,
    pub c2: f64,
    pub delta_m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub p: u64,
    pub levels: Vec<u32>,
    pub r_max: u32,
    /// Report the `PSL_2` word systole as the primary value.
    pub psl_mode: bool,
    pub precision: Precision,
    pub delta: f64,
    pub claim1: Option<Claim1Constants>,
    /// Element budget of a quotient closure.
    pub quotient_budget: usize,
    /// Element budget of the Cayley ball.
    pub ball_budget: usize,
    /// Largest index at which homology is computed.
    pub homology_budget: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            p: 7,
            levels: vec![1, 2],
            r_max: 8,
            psl_mode: false,
            precision: Precision::default(),
            delta: 0.1,
            claim1: None,
            quotient_budget: 1_000_000,
            ball_budget: 2_000_000,
            homology_budget: 20_000,
            seed: 0,
        }
    }
}

fn merge(base: &mut Map<String, Value>, layer: &Map<String, Value>) {
    for (k, v) in layer {
        base.insert(k.clone(), v.clone());
    }
}

impl Config {
    /// Built-in defaults, then the group's `config_defaults`, then `overrides`.
    pub fn resolve(spec: &GroupSpec, overrides: &Map<String, Value>) -> Result<Config> {
        let Value::Object(mut base) = serde_json::to_value(Config::default())? else {
            unreachable!("config serializes to an object")
        };
        merge(&mut base, spec.config_defaults());
        merge(&mut base, overrides);
        let config: Config = serde_json::from_value(Value::Object(base))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::Precondition("config needs at least one level".into()));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::Precondition(format!("delta = {} must lie in (0, 1/2)", self.delta)));
        }
        if self.precision.initial == 0 || self.precision.cap < self.precision.initial {
            return Err(Error::Precondition("precision cap must be at least the initial precision".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn layering() {
        let g = catalog::figure_eight();
        let c = Config::resolve(&g, &Map::new()).unwrap();
        assert_eq!((c.p, c.levels.clone(), c.r_max), (7, vec![1, 2], 8));
        let over = serde_json::json!({"p": 3, "delta": 0.2});
        let c = Config::resolve(&g, over.as_object().unwrap()).unwrap();
        assert_eq!((c.p, c.delta), (3, 0.2));
        let bad = serde_json::json!({"prime": 3});
        assert!(Config::resolve(&g, bad.as_object().unwrap()).is_err());
        let bad = serde_json::json!({"delta": 0.7});
        assert!(Config::resolve(&g, bad.as_object().unwrap()).is_err());
    }
}
