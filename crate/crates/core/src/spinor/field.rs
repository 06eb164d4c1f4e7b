use serde::{Deserialize, Serialize};

use super::SpinorError;
use crate::ad::{lift, seed, Dual, Real};
use crate::expr::{EvalError, Expr};
use crate::geometry::unit;
use crate::spin::Spinor;

/// Name of the transversal parameter in extension expressions.
pub const TRANSVERSAL_PARAM: &str = "w";

/// On-disk form: real parts, optional imaginary parts, optional extension
/// off the hypersurface in the same shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorSpec {
    pub spinor: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinor_im: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub spinor: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinor_im: Option<Vec<String>>,
}

/// Four complex components, each a pair of expressions.
#[derive(Clone, Debug, PartialEq)]
struct Components {
    re: [Expr; 4],
    im: Option<[Expr; 4]>,
}

impl Components {
    fn parse(re: &[String], im: Option<&Vec<String>>, params: &[&str]) -> Result<Self, SpinorError> {
        let parse4 = |src: &[String]| -> Result<[Expr; 4], SpinorError> {
            if src.len() != 4 {
                return Err(SpinorError::Shape(format!("expected 4 components, got {}", src.len())));
            }
            let mut out = Vec::with_capacity(4);
            for (index, s) in src.iter().enumerate() {
                out.push(Expr::parse(s, params).map_err(|source| SpinorError::Parse { index, source })?);
            }
            Ok(out.try_into().expect("four components"))
        };
        Ok(Self { re: parse4(re)?, im: im.map(|v| parse4(v)).transpose()? })
    }

    fn eval<S: Real>(&self, vars: &[S]) -> Result<Spinor<S>, EvalError> {
        let mut re = [S::zero(); 4];
        let mut im = [S::zero(); 4];
        for k in 0..4 {
            re[k] = self.re[k].eval(vars)?;
            if let Some(e) = &self.im {
                im[k] = e[k].eval(vars)?;
            }
        }
        Ok(Spinor::from_parts(re, im))
    }

    fn strings(&self) -> (Vec<String>, Option<Vec<String>>) {
        let show = |v: &[Expr; 4]| v.iter().map(Expr::to_string).collect();
        (show(&self.re), self.im.as_ref().map(show))
    }
}

/// Spinor field over the chart parameters, optionally extended off the
/// hypersurface by a fourth parameter flowing along the transversal `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    base: Components,
    extension: Option<Components>,
}

/// Number of monomials of degree at most two in three variables.
pub const QUADRATIC_TERMS: usize = 10;

fn monomial(m: usize, params: &[&str; 3]) -> Expr {
    let v = |i: usize| Expr::Var(i, params[i].to_string());
    let mul = |a: Expr, b: Expr| Expr::Mul(Box::new(a), Box::new(b));
    match m {
        0 => Expr::Num(1.0),
        1..=3 => v(m - 1),
        _ => {
            // 4..=9 enumerate i <= j
            let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
            let (i, j) = pairs[m - 4];
            mul(v(i), v(j))
        }
    }
}

fn polynomial(coeffs: &[f64; QUADRATIC_TERMS], params: &[&str; 3]) -> Expr {
    coeffs
        .iter()
        .enumerate()
        .map(|(m, &c)| Expr::Mul(Box::new(Expr::Num(c)), Box::new(monomial(m, params))))
        .reduce(|a, b| Expr::Add(Box::new(a), Box::new(b)))
        .expect("nonempty")
}

impl SpinorField {
    pub fn from_spec(spec: &SpinorSpec, params: &[String; 3]) -> Result<Self, SpinorError> {
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        let base = Components::parse(&spec.spinor, spec.spinor_im.as_ref(), &names)?;
        let extension = match &spec.extension {
            Some(ext) => {
                if names.contains(&TRANSVERSAL_PARAM) {
                    return Err(SpinorError::Shape(format!(
                        "chart parameter '{TRANSVERSAL_PARAM}' clashes with the transversal parameter"
                    )));
                }
                let mut ext_names = names.clone();
                ext_names.push(TRANSVERSAL_PARAM);
                Some(Components::parse(&ext.spinor, ext.spinor_im.as_ref(), &ext_names)?)
            }
            None => None,
        };
        Ok(Self { base, extension })
    }

    pub fn from_json(text: &str, params: &[String; 3]) -> Result<Self, SpinorError> {
        let spec: SpinorSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec, params)
    }

    /// Real-valued field from component expressions.
    pub fn real(components: [&str; 4], params: &[String; 3]) -> Result<Self, SpinorError> {
        Self::from_spec(
            &SpinorSpec { spinor: components.map(String::from).to_vec(), spinor_im: None, extension: None },
            params,
        )
    }

    /// Field whose components are polynomials of degree at most two with the
    /// given coefficients on `1, u1, u2, u3, u1², u1u2, u1u3, u2², u2u3, u3²`.
    pub fn quadratic(re: &[[f64; QUADRATIC_TERMS]; 4], im: &[[f64; QUADRATIC_TERMS]; 4], params: &[String; 3]) -> Self {
        let names = [params[0].as_str(), params[1].as_str(), params[2].as_str()];
        Self {
            base: Components {
                re: std::array::from_fn(|k| polynomial(&re[k], &names)),
                im: Some(std::array::from_fn(|k| polynomial(&im[k], &names))),
            },
            extension: None,
        }
    }

    /// `f·φ` for a scalar expression `f` over the same parameters.
    pub fn scaled_by(&self, f: &Expr) -> Self {
        let mul = |e: &Expr| Expr::Mul(Box::new(f.clone()), Box::new(e.clone()));
        Self {
            base: Components {
                re: self.base.re.each_ref().map(mul),
                im: self.base.im.as_ref().map(|v| v.each_ref().map(mul)),
            },
            extension: None,
        }
    }

    pub fn spec(&self) -> SpinorSpec {
        let (spinor, spinor_im) = self.base.strings();
        SpinorSpec {
            spinor,
            spinor_im,
            extension: self.extension.as_ref().map(|e| {
                let (spinor, spinor_im) = e.strings();
                ExtensionSpec { spinor, spinor_im }
            }),
        }
    }

    pub fn has_extension(&self) -> bool {
        self.extension.is_some()
    }

    pub fn eval<S: Real>(&self, u: &[S; 3]) -> Result<Spinor<S>, EvalError> {
        self.base.eval(u)
    }

    /// The declared extension `Φ(u, w)`; `None` when the field has none.
    pub fn eval_extension<S: Real>(&self, u: &[S; 3], w: S) -> Option<Result<Spinor<S>, EvalError>> {
        self.extension.as_ref().map(|e| e.eval(&[u[0], u[1], u[2], w]))
    }

    /// Largest `|Φ(u,0) - φ(u)|` over the given points.
    pub fn extension_mismatch(&self, points: &[[f64; 3]]) -> Result<f64, EvalError> {
        let mut worst = 0.0f64;
        for p in points {
            if let Some(ext) = self.eval_extension(p, 0.0) {
                worst = worst.max((ext? - self.eval(p)?).max_norm());
            }
        }
        Ok(worst)
    }
}

/// What to do when a transversal derivative is needed and the field
/// declares no extension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionPolicy {
    /// Extend constantly along `N`, so the transversal derivative is zero.
    #[default]
    Constant,
    /// Refuse with [`SpinorError::ExtensionRequired`].
    Strict,
}

/// Value and first derivatives of a spinor field at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorJet<S> {
    pub value: Spinor<S>,
    /// `∂_a φ`.
    pub d: [Spinor<S>; 3],
    /// `∂_w Φ` at `w = 0`, when available.
    pub dw: Option<Spinor<S>>,
}

impl<S: Real> SpinorJet<S> {
    pub fn new(field: &SpinorField, u: &[S; 3], policy: ExtensionPolicy) -> Result<Self, EvalError> {
        let mut value = Spinor::zero();
        let mut d = [Spinor::zero(); 3];
        for (a, da) in d.iter_mut().enumerate() {
            let s: Spinor<Dual<S>> = field.eval(&seed(u, &unit(a)))?;
            *da = s.map(|x| x.eps);
            value = s.map(|x| x.re);
        }
        let dw = match field.eval_extension(&lift(u), Dual::variable(S::zero())) {
            Some(ext) => Some(ext?.map(|x| x.eps)),
            None => match policy {
                ExtensionPolicy::Constant => Some(Spinor::zero()),
                ExtensionPolicy::Strict => None,
            },
        };
        Ok(Self { value, d, dw })
    }

    /// `X(φ)` for `X = Σ x^a ∂_a`.
    pub fn directional(&self, x: &[S; 3]) -> Spinor<S> {
        (0..3).map(|a| self.d[a].scale(x[a])).sum()
    }
}
