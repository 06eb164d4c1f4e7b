use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ad::{derivs, seed, values, Dual, Jet2, Real};
use crate::expr::{EvalError, Expr, ParseError};

#[derive(Debug, Error)]
pub enum ChartError {
    #[error("invalid chart JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coordinate {index}: {source}")]
    Parse {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("invalid chart: {0}")]
    Shape(String),
}

/// Sample box with per-axis grid resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub min: [f64; 3],
    pub max: [f64; 3],
    pub grid: [usize; 3],
}

impl Domain {
    /// Grid points in lexicographic order, first parameter slowest. An axis
    /// with resolution 1 is sampled at its midpoint.
    pub fn points(&self) -> Vec<[f64; 3]> {
        let axis = |i: usize| -> Vec<f64> {
            let n = self.grid[i];
            let (a, b) = (self.min[i], self.max[i]);
            if n == 1 {
                vec![0.5 * (a + b)]
            } else {
                (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
            }
        };
        let (x, y, z) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(x.len() * y.len() * z.len());
        for &a in &x {
            for &b in &y {
                for &c in &z {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), ChartError> {
        if self.grid.contains(&0) {
            return Err(ChartError::Shape("grid sizes must be at least 1".into()));
        }
        if (0..3).any(|i| !(self.min[i] <= self.max[i]) || !self.min[i].is_finite() || !self.max[i].is_finite()) {
            return Err(ChartError::Shape("domain bounds must be finite with min <= max".into()));
        }
        Ok(())
    }
}

/// On-disk form of a chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    pub coords: Vec<String>,
    pub params: Vec<String>,
    pub domain: Domain,
}

/// Parametrized hypersurface `F: (u1,u2,u3) → ℝ^{3,1}`.
#[derive(Clone, Debug)]
pub struct Chart {
    coords: [Expr; 4],
    params: [String; 3],
    domain: Domain,
}

impl Chart {
    pub fn new(coords: [&str; 4], params: [&str; 3], domain: Domain) -> Result<Self, ChartError> {
        Self::from_spec(&ChartSpec {
            coords: coords.map(String::from).to_vec(),
            params: params.map(String::from).to_vec(),
            domain,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ChartError> {
        Self::from_spec(&serde_json::from_str(text)?)
    }

    pub fn from_spec(spec: &ChartSpec) -> Result<Self, ChartError> {
        let params: [String; 3] = spec
            .params
            .clone()
            .try_into()
            .map_err(|_| ChartError::Shape("exactly three parameters are required".into()))?;
        if params.iter().enumerate().any(|(i, p)| params[..i].contains(p)) {
            return Err(ChartError::Shape("parameter names must be distinct".into()));
        }
        if spec.coords.len() != 4 {
            return Err(ChartError::Shape("exactly four coordinates are required".into()));
        }
        spec.domain.validate()?;
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        let mut coords = Vec::with_capacity(4);
        for (index, src) in spec.coords.iter().enumerate() {
            coords.push(Expr::parse(src, &names).map_err(|source| ChartError::Parse { index, source })?);
        }
        Ok(Self { coords: coords.try_into().expect("four coordinates"), params, domain: spec.domain.clone() })
    }

    pub fn spec(&self) -> ChartSpec {
        ChartSpec {
            coords: self.coords.iter().map(Expr::to_string).collect(),
            params: self.params.to_vec(),
            domain: self.domain.clone(),
        }
    }

    pub fn params(&self) -> &[String; 3] {
        &self.params
    }

    pub fn coords(&self) -> &[Expr; 4] {
        &self.coords
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn grid(&self) -> Vec<[f64; 3]> {
        self.domain.points()
    }

    pub fn eval<S: Real>(&self, u: &[S; 3]) -> Result<[S; 4], EvalError> {
        let mut out = [S::zero(); 4];
        for (slot, e) in out.iter_mut().zip(&self.coords) {
            *slot = e.eval(u)?;
        }
        Ok(out)
    }

    /// Value and coordinate tangents `∂_a F` at `u`.
    pub fn tangents<S: Real>(&self, u: &[S; 3]) -> Result<([S; 4], [[S; 4]; 3]), EvalError> {
        let mut position = [S::zero(); 4];
        let mut t = [[S::zero(); 4]; 3];
        for (a, ta) in t.iter_mut().enumerate() {
            let f: [Dual<S>; 4] = self.eval(&seed(u, &unit(a)))?;
            *ta = derivs(&f);
            position = values(&f);
        }
        Ok((position, t))
    }

    /// Value, gradient and Hessian of every ambient coordinate.
    pub fn jet2(&self, u: &[f64; 3]) -> Result<[Jet2; 4], EvalError> {
        let vars: [Jet2; 3] = std::array::from_fn(|i| Jet2::variable(i, u[i]));
        self.eval(&vars)
    }
}

/// `e_a` in parameter space.
pub fn unit<S: Real>(a: usize) -> [S; 3] {
    std::array::from_fn(|i| if i == a { S::one() } else { S::zero() })
}
