//! Flat `key = value` experiment files.
//!
//! ```text
//! # sweep the memory strength of the oscillatory family
//! family = oscillatory
//! d = 3
//! gamma = 1
//! T = 1
//! B = 0
//! sweep = B
//! from = 0
//! to = 9
//! points = 31
//! t_max = 10
//! step = 1e-3
//! ```
//!
//! Keys other than the reserved ones below are family parameters; list
//! values are comma separated. `sweep` names a parameter, with `name[i]`
//! selecting a zero-based list entry.

use std::path::PathBuf;

use crate::error::{CliError, CliResult};
use crate::params::ParamMap;

const RESERVED: [&str; 10] = [
    "figure", "family", "t_max", "step", "out", "seed", "sweep", "from", "to", "points",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub index: Option<usize>,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let span = self.to - self.from;
        (0..self.points)
            .map(|i| self.from + span * i as f64 / (self.points - 1) as f64)
            .collect()
    }

    pub fn label(&self) -> String {
        match self.index {
            Some(i) => format!("{}[{i}]", self.param),
            None => self.param.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentConfig {
    pub figure: Option<u32>,
    pub family: Option<String>,
    pub params: ParamMap,
    pub t_max: Option<f64>,
    pub step: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub sweep: Option<SweepSpec>,
}

fn err(line: usize, field: &str, message: impl Into<String>) -> CliError {
    CliError::ConfigParse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, raw: &str) -> CliResult<T> {
    raw.parse()
        .map_err(|_| err(line, field, format!("cannot parse `{raw}`")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut sweep_name: Option<(usize, String)> = None;
        let (mut from, mut to, mut points) = (None, None, None);
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| err(line, body, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(err(line, key, "empty value"));
            }
            match key {
                "figure" => cfg.figure = Some(parse_num(line, key, value)?),
                "family" => cfg.family = Some(value.to_string()),
                "t_max" => cfg.t_max = Some(parse_num(line, key, value)?),
                "step" => cfg.step = Some(parse_num(line, key, value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "seed" => cfg.seed = Some(parse_num(line, key, value)?),
                "sweep" => sweep_name = Some((line, value.to_string())),
                "from" => from = Some(parse_num::<f64>(line, key, value)?),
                "to" => to = Some(parse_num::<f64>(line, key, value)?),
                "points" => points = Some(parse_num::<usize>(line, key, value)?),
                _ => {
                    let values = value
                        .split(',')
                        .map(|v| parse_num::<f64>(line, key, v.trim()))
                        .collect::<CliResult<Vec<f64>>>()?;
                    cfg.params.set(key, values);
                }
            }
        }

        if let (Some(step), Some(t_max)) = (cfg.step, cfg.t_max) {
            if !(step > 0.0) || !(t_max >= step) {
                return Err(err(
                    0,
                    "step",
                    format!("need 0 < step <= t_max, got step={step}, t_max={t_max}"),
                ));
            }
        }

        if let Some((line, name)) = sweep_name {
            let (param, index) = match name.split_once('[') {
                Some((p, rest)) => {
                    let idx = rest
                        .strip_suffix(']')
                        .ok_or_else(|| err(line, "sweep", "unterminated index"))?;
                    (
                        p.trim().to_string(),
                        Some(parse_num::<usize>(line, "sweep", idx.trim())?),
                    )
                }
                None => (name.clone(), None),
            };
            if RESERVED.contains(&param.as_str()) {
                return Err(err(
                    line,
                    "sweep",
                    format!("`{param}` is not a family parameter"),
                ));
            }
            let from = from.ok_or_else(|| err(line, "from", "missing"))?;
            let to = to.ok_or_else(|| err(line, "to", "missing"))?;
            let points = points.ok_or_else(|| err(line, "points", "missing"))?;
            if points == 0 || to < from || (points > 1 && to == from) {
                return Err(err(
                    line,
                    "sweep",
                    format!("empty range [{from}, {to}] with {points} points"),
                ));
            }
            cfg.sweep = Some(SweepSpec {
                param,
                index,
                from,
                to,
                points,
            });
        }
        Ok(cfg)
    }

    /// Applies `key=value` overrides from the command line.
    pub fn with_overrides(text: &str, overrides: &[String]) -> CliResult<Self> {
        let mut joined = text.to_string();
        joined.push('\n');
        for o in overrides {
            joined.push_str(o);
            joined.push('\n');
        }
        Self::parse(&joined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sweep_file() {
        let cfg = ExperimentConfig::parse(
            "family = exp-decay-1 # trailing comment\nd = 2\neta = 1\nxis = 1, 2, 3\nsweep = xis[0]\nfrom = 0.5\nto = 1.5\npoints = 3\n",
        )
        .unwrap();
        assert_eq!(cfg.family.as_deref(), Some("exp-decay-1"));
        assert_eq!(cfg.params.list("xis").unwrap(), vec![1.0, 2.0, 3.0]);
        let s = cfg.sweep.unwrap();
        assert_eq!((s.param.as_str(), s.index), ("xis", Some(0)));
        assert_eq!(s.values(), vec![0.5, 1.0, 1.5]);
        assert_eq!(s.label(), "xis[0]");
    }

    #[test]
    fn diagnostics_carry_line_and_field() {
        match ExperimentConfig::parse("family = convex\n\nd = three\n") {
            Err(CliError::ConfigParse { line, field, .. }) => {
                assert_eq!((line, field.as_str()), (3, "d"))
            }
            other => panic!("{other:?}"),
        }
        match ExperimentConfig::parse("d = 3\njunk\n") {
            Err(CliError::ConfigParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_sweep_range_rejected() {
        for body in [
            "from = 1\nto = 0\npoints = 5",
            "from = 0\nto = 1\npoints = 0",
            "from = 1\nto = 1\npoints = 4",
        ] {
            let text = format!("family = oscillatory\nsweep = B\n{body}\n");
            assert!(
                matches!(
                    ExperimentConfig::parse(&text),
                    Err(CliError::ConfigParse { .. })
                ),
                "{body}"
            );
        }
    }

    #[test]
    fn overrides_win() {
        let cfg =
            ExperimentConfig::with_overrides("d = 3\nt_max = 5\n", &["t_max = 2".into()]).unwrap();
        assert_eq!(cfg.t_max, Some(2.0));
    }
}
