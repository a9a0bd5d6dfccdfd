//! Family parameters written as `key=value` pairs separated by commas.
//! List values continue across commas: `d=3,eta=1,xis=2,3,4,5`.

use std::collections::BTreeMap;

use gpc_core::TrajectoryFamily;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamMap {
    values: BTreeMap<String, Vec<f64>>,
}

fn number(field: &str, raw: &str) -> CliResult<f64> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::config(field, format!("`{raw}` is not a number")))
}

impl ParamMap {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut map = ParamMap::default();
        let mut current: Option<String> = None;
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((key, value)) = token.split_once('=') {
                let key = key.trim().to_string();
                let v = number(&key, value)?;
                map.values.insert(key.clone(), vec![v]);
                current = Some(key);
            } else {
                let key = current
                    .as_ref()
                    .ok_or_else(|| CliError::config(token, "value without a key"))?;
                let v = number(key, token)?;
                map.values.get_mut(key).unwrap().push(v);
            }
        }
        Ok(map)
    }

    pub fn set(&mut self, key: impl Into<String>, values: Vec<f64>) {
        self.values.insert(key.into(), values);
    }

    pub fn get(&self, key: &str) -> Option<&[f64]> {
        self.values.get(key).map(Vec::as_slice)
    }

    pub fn scalar(&self, key: &str) -> CliResult<f64> {
        match self.get(key) {
            Some([v]) => Ok(*v),
            Some(_) => Err(CliError::config(key, "expected a single value")),
            None => Err(CliError::config(key, "missing")),
        }
    }

    pub fn scalar_or(&self, key: &str, default: f64) -> CliResult<f64> {
        if self.get(key).is_some() {
            self.scalar(key)
        } else {
            Ok(default)
        }
    }

    pub fn list(&self, key: &str) -> CliResult<Vec<f64>> {
        self.get(key)
            .map(<[f64]>::to_vec)
            .ok_or_else(|| CliError::config(key, "missing"))
    }

    pub fn index(&self, key: &str) -> CliResult<usize> {
        let v = self.scalar(key)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(CliError::config(
                key,
                format!("expected a non-negative integer, got {v}"),
            ));
        }
        Ok(v as usize)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

pub const FAMILY_NAMES: [&str; 5] = [
    "semigroup",
    "oscillatory",
    "exp-decay-1",
    "exp-decay-2",
    "convex",
];

/// Builds and validates a family. Keys per family:
///
/// - `semigroup`: `d`, `gammas`
/// - `oscillatory`: `d`, `gamma`, `T`, `B`, optional `alpha_star` (default 1)
/// - `exp-decay-1`: `d`, `eta`, `xis`
/// - `exp-decay-2`: `d`, `etas`, `xi`
/// - `convex`: `d`, `xs`
pub fn build_family(name: &str, p: &ParamMap) -> CliResult<TrajectoryFamily> {
    let d = p.index("d")?;
    let fam = match name {
        "semigroup" => TrajectoryFamily::MarkovSemigroup {
            d,
            gammas: p.list("gammas")?,
        },
        "oscillatory" => TrajectoryFamily::Oscillatory {
            d,
            gamma: p.scalar("gamma")?,
            t_mem: p.scalar("T")?,
            b: p.scalar("B")?,
            alpha_star: if p.get("alpha_star").is_some() {
                p.index("alpha_star")?
            } else {
                1
            },
        },
        "exp-decay-1" => TrajectoryFamily::ExpDecayI {
            d,
            eta: p.scalar("eta")?,
            xis: p.list("xis")?,
        },
        "exp-decay-2" => TrajectoryFamily::ExpDecayII {
            d,
            etas: p.list("etas")?,
            xi: p.scalar("xi")?,
        },
        "convex" => TrajectoryFamily::ConvexSemigroups {
            d,
            xs: p.list("xs")?,
        },
        other => {
            return Err(CliError::config(
                "family",
                format!(
                    "unknown family `{other}`; expected one of {}",
                    FAMILY_NAMES.join(", ")
                ),
            ))
        }
    };
    fam.validate()?;
    Ok(fam)
}
