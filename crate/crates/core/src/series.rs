use crate::error::{Error, Result};

/// Named real columns sampled on a uniform time grid `t_n = t0 + n·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    t0: f64,
    step: f64,
    len: usize,
    columns: Vec<(String, Vec<f64>)>,
}

/// Number of grid points covering `[0, t_max]` with spacing `step`.
pub fn grid_len(t_max: f64, step: f64) -> Result<usize> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidStep(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(t_max >= step) || !t_max.is_finite() {
        return Err(Error::InvalidStep(format!(
            "t_max = {t_max} must be at least step = {step}"
        )));
    }
    Ok((t_max / step + 1e-9).floor() as usize + 1)
}

impl TimeSeries {
    pub fn new(t0: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidStep(format!(
                "step must be positive, got {step}"
            )));
        }
        if len == 0 {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        Ok(Self {
            t0,
            step,
            len,
            columns: Vec::new(),
        })
    }

    /// Grid on `[0, t_max]` with no columns yet.
    pub fn uniform(t_max: f64, step: f64) -> Result<Self> {
        Self::new(0.0, step, grid_len(t_max, step)?)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 * self.step
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len).map(|n| self.time(n)).collect()
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: values.len(),
            });
        }
        self.columns.push((name.into(), values));
        Ok(())
    }

    pub fn with_column(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        self.push_column(name, values)?;
        Ok(self)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn columns(&self) -> &[(String, Vec<f64>)] {
        &self.columns
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    /// Appends every column of `other`, prefixing names with `prefix`.
    pub fn merge_prefixed(&mut self, other: &TimeSeries, prefix: &str) -> Result<()> {
        if other.len != self.len || (other.step - self.step).abs() > 1e-15 {
            return Err(Error::InvalidGrid("grids differ".into()));
        }
        for (name, values) in &other.columns {
            self.push_column(format!("{prefix}{name}"), values.clone())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_covers_endpoint() {
        let ts = TimeSeries::uniform(5.0, 1e-3).unwrap();
        assert_eq!(ts.len(), 5001);
        assert!((ts.time(5000) - 5.0).abs() < 1e-12);
        assert_eq!(TimeSeries::uniform(1.0, 0.3).unwrap().len(), 4);
    }

    #[test]
    fn invalid_steps() {
        assert!(matches!(
            TimeSeries::uniform(1.0, 0.0),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            TimeSeries::uniform(1.0, -0.1),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            TimeSeries::uniform(0.01, 0.1),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            TimeSeries::uniform(1.0, f64::NAN),
            Err(Error::InvalidStep(_))
        ));
    }

    #[test]
    fn column_lengths_enforced() {
        let mut ts = TimeSeries::uniform(1.0, 0.5).unwrap();
        assert!(ts.push_column("a", vec![1.0, 2.0]).is_err());
        ts.push_column("a", vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(ts.column("a"), Some(&[1.0, 2.0, 3.0][..]));
        assert_eq!(ts.column("b"), None);
    }
}
