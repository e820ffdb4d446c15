//! Time-grid trajectories of network states and their CSV form.

use ndarray::Array1;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Positions and velocities of all nodes at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub x: Array1<f64>,
    pub v: Array1<f64>,
}

impl State {
    pub fn new(x: Array1<f64>, v: Array1<f64>) -> Result<Self> {
        if x.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "position length {} != velocity length {}",
                x.len(),
                v.len()
            )));
        }
        if x.iter().chain(v.iter()).any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument(
                "state has non-finite entries".into(),
            ));
        }
        Ok(State { x, v })
    }

    pub fn zero(n: usize) -> Self {
        State {
            x: Array1::zeros(n),
            v: Array1::zeros(n),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// States sampled on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<State>) -> Result<Self> {
        if times.is_empty() || times.len() != states.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} times vs {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) && times.len() > 1 {
            return Err(Error::InvalidArgument(
                "time grid must be strictly increasing".into(),
            ));
        }
        Ok(Trajectory { times, states })
    }

    pub fn node_count(&self) -> usize {
        self.states[0].len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Position samples of a 1-based node.
    pub fn position(&self, node: usize) -> Result<Vec<f64>> {
        let n = self.node_count();
        if node < 1 || node > n {
            return Err(Error::NodeOutOfRange(node, n));
        }
        Ok(self.states.iter().map(|s| s.x[node - 1]).collect())
    }

    /// Index of grid time `t`, matched within 1e-9.
    pub fn grid_index(&self, t: f64) -> Result<usize> {
        self.times
            .iter()
            .position(|&u| (u - t).abs() < 1e-9)
            .ok_or(Error::GridError(t))
    }

    /// CSV with header `t,x_1..x_n,v_1..v_n`, 12 significant digits,
    /// LF line endings.
    pub fn to_csv(&self) -> String {
        let n = self.node_count();
        let mut out = String::new();
        out.push('t');
        for i in 1..=n {
            let _ = write!(out, ",x_{i}");
        }
        for i in 1..=n {
            let _ = write!(out, ",v_{i}");
        }
        out.push('\n');
        for (t, s) in self.times.iter().zip(&self.states) {
            let _ = write!(out, "{t:.11e}");
            for &x in s.x.iter() {
                let _ = write!(out, ",{x:.11e}");
            }
            for &v in s.v.iter() {
                let _ = write!(out, ",{v:.11e}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the CSV written by [`Trajectory::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
        let cols = header.split(',').count();
        if cols < 3 || (cols - 1) % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "unexpected CSV header '{header}'"
            )));
        }
        let n = (cols - 1) / 2;
        let mut times = Vec::new();
        let mut states = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|t| {
                    t.parse::<f64>().map_err(|_| Error::ParseError {
                        line: lineno + 2,
                        msg: format!("'{t}' is not a number"),
                    })
                })
                .collect::<Result<_>>()?;
            if vals.len() != cols {
                return Err(Error::ParseError {
                    line: lineno + 2,
                    msg: format!("expected {cols} columns, got {}", vals.len()),
                });
            }
            times.push(vals[0]);
            states.push(State {
                x: Array1::from_vec(vals[1..=n].to_vec()),
                v: Array1::from_vec(vals[n + 1..].to_vec()),
            });
        }
        Trajectory::new(times, states)
    }
}

/// Uniform grid 0, dt, 2 dt, ..., ending at (or within half a step of)
/// `t_max`.
pub fn time_grid(dt: f64, t_max: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0) || !(t_max > 0.0) {
        return Err(Error::InvalidArgument(
            "dt and t_max must be positive".into(),
        ));
    }
    let steps = (t_max / dt).round().max(1.0) as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory {
        let times = time_grid(0.25, 1.0).unwrap();
        let states = times
            .iter()
            .map(|&t| State {
                x: ndarray::array![t.cos(), t.sin()],
                v: ndarray::array![-t.sin(), t.cos()],
            })
            .collect();
        Trajectory::new(times, states).unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let traj = sample();
        let back = Trajectory::from_csv(&traj.to_csv()).unwrap();
        assert_eq!(back.len(), traj.len());
        for (a, b) in traj.states.iter().zip(&back.states) {
            for (x, y) in a.x.iter().zip(b.x.iter()) {
                assert!((x - y).abs() < 1e-12);
            }
            for (x, y) in a.v.iter().zip(b.v.iter()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn csv_header_shape() {
        let csv = sample().to_csv();
        let header = csv.lines().next().unwrap();
        assert_eq!(header, "t,x_1,x_2,v_1,v_2");
    }

    #[test]
    fn grid_lookup() {
        let traj = sample();
        assert_eq!(traj.grid_index(0.5).unwrap(), 2);
        assert!(matches!(traj.grid_index(0.51), Err(Error::GridError(_))));
    }

    #[test]
    fn decreasing_grid_rejected() {
        let s = State::zero(1);
        assert!(Trajectory::new(vec![0.0, 0.0], vec![s.clone(), s]).is_err());
    }
}
