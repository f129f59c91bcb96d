//! Initial polygons for star-shaped and Lissajous curves, each paired with the
//! scheme that reproduces it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::subdivision::{Polygon, SchemeParams};
use crate::symbols::ThetaSpec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    /// `((3 + sin(nu u)) cos u, (3 + sin(nu u)) sin u)`.
    Star2D { nu: u32 },
    /// The planar star lifted by `z = -(3 + sin(nu u))^2 / 4`.
    Star3D { nu: u32 },
    /// `(cos(nu2 u), cos(nu1 u - tau pi / nu2))`.
    Lissajous2D { nu1: u32, nu2: u32, tau: f64 },
    /// `(cos(nu1 u), cos(nu2 u), cos(nu3 u))` over `u in [0, pi]`.
    Lissajous3D { nu1: u32, nu2: u32, nu3: u32 },
    /// A curve on the unit sphere with polar angle `nu2 u` and azimuth `nu1 u - rho pi`.
    LissajousSphere { nu1: u32, nu2: u32, rho: f64 },
}

impl CurveKind {
    /// `n` of the scheme whose exponential space contains the curve.
    pub fn scheme_degree(&self) -> usize {
        let n = match *self {
            CurveKind::Star2D { nu } => nu + 1,
            CurveKind::Star3D { nu } => 2 * nu,
            CurveKind::Lissajous2D { nu1, nu2, .. } => nu1.max(nu2),
            CurveKind::Lissajous3D { nu1, nu2, nu3 } => nu1.max(nu2).max(nu3),
            CurveKind::LissajousSphere { nu1, nu2, .. } => nu1 + nu2,
        };
        n as usize
    }

    /// Length of the parameter interval `[0, L]`.
    pub fn period(&self) -> f64 {
        match self {
            CurveKind::Lissajous3D { .. } => PI,
            _ => 2.0 * PI,
        }
    }

    fn frequencies(&self) -> Vec<u32> {
        match *self {
            CurveKind::Star2D { nu } | CurveKind::Star3D { nu } => vec![nu],
            CurveKind::Lissajous2D { nu1, nu2, .. } | CurveKind::LissajousSphere { nu1, nu2, .. } => {
                vec![nu1, nu2]
            }
            CurveKind::Lissajous3D { nu1, nu2, nu3 } => vec![nu1, nu2, nu3],
        }
    }

    pub fn point(&self, u: f64) -> Vec<f64> {
        match *self {
            CurveKind::Star2D { nu } => {
                let r = 3.0 + (nu as f64 * u).sin();
                vec![r * u.cos(), r * u.sin()]
            }
            CurveKind::Star3D { nu } => {
                let r = 3.0 + (nu as f64 * u).sin();
                vec![r * u.cos(), r * u.sin(), -r * r / 4.0]
            }
            CurveKind::Lissajous2D { nu1, nu2, tau } => {
                let (nu1, nu2) = (nu1 as f64, nu2 as f64);
                vec![(nu2 * u).cos(), (nu1 * u - tau * PI / nu2).cos()]
            }
            CurveKind::Lissajous3D { nu1, nu2, nu3 } => {
                vec![(nu1 as f64 * u).cos(), (nu2 as f64 * u).cos(), (nu3 as f64 * u).cos()]
            }
            CurveKind::LissajousSphere { nu1, nu2, rho } => {
                let polar = nu2 as f64 * u;
                let azimuth = nu1 as f64 * u - rho * PI;
                vec![polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos()]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSpec {
    pub kind: CurveKind,
    /// Number of samples `N`, including the endpoint `u = L`.
    pub points: usize,
}

impl CurveSpec {
    /// Uses `N = 2n + 2` samples, enough to keep every level mask admissible.
    pub fn with_default_points(kind: CurveKind) -> Self {
        CurveSpec {
            kind,
            points: 2 * kind.scheme_degree() + 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 4 {
            return Err(Error::InvalidInput(format!("need at least 4 points, got {}", self.points)));
        }
        if self.kind.frequencies().contains(&0) {
            return Err(Error::InvalidInput("curve frequencies must be >= 1".into()));
        }
        Ok(())
    }

    /// Sampling step `theta = L / (N - 1)`.
    pub fn theta(&self) -> f64 {
        self.kind.period() / (self.points - 1) as f64
    }
}

/// Samples `u_i = theta (i - 1)`, `i = 1..N`. Over a full period the last
/// sample repeats the first and is dropped; the half-period spatial
/// Lissajous curve keeps all `N` samples.
pub fn generate(spec: &CurveSpec) -> Result<(Polygon, SchemeParams)> {
    spec.validate()?;
    let theta = spec.theta();
    let kept = match spec.kind {
        CurveKind::Lissajous3D { .. } => spec.points,
        _ => spec.points - 1,
    };
    let points = (0..kept).map(|i| spec.kind.point(theta * i as f64)).collect();
    let params = SchemeParams {
        n: spec.kind.scheme_degree(),
        theta: ThetaSpec::Trigonometric(theta),
    };
    Ok((Polygon::closed(points)?, params))
}

/// Builds a preset by name with the given frequencies; unused ones are ignored.
pub fn preset(name: &str, nu: u32, nu1: u32, nu2: u32, nu3: u32, tau: f64, rho: f64) -> Result<CurveKind> {
    let kind = match name.to_ascii_lowercase().as_str() {
        "star2d" => CurveKind::Star2D { nu },
        "star3d" => CurveKind::Star3D { nu },
        "lissajous2d" => CurveKind::Lissajous2D { nu1, nu2, tau },
        "lissajous3d" => CurveKind::Lissajous3D { nu1, nu2, nu3 },
        "lissajous-sphere" | "lissajoussphere" | "sphere" => CurveKind::LissajousSphere { nu1, nu2, rho },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown preset '{other}' (star2d, star3d, lissajous2d, lissajous3d, lissajous-sphere)"
            )))
        }
    };
    Ok(kind)
}
