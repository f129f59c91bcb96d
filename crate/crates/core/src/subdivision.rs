//! Non-stationary interpolatory refinement of closed polygons.
//!
//! One refinement step maps `N` points to `2N` with
//! `p'_i = sum_j m_{i-2j} p_j`, indices taken modulo `N`. The symbol's
//! center coefficient is 1 and its other even coefficients vanish, so even
//! outputs are copies of the input points.

use crate::error::{Error, Result};
use crate::symbols::{mask_for_level, SubdivisionMask, ThetaSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    pub points: Vec<Vec<f64>>,
    pub closed: bool,
}

impl Polygon {
    pub fn closed(points: Vec<Vec<f64>>) -> Result<Self> {
        let p = Polygon {
            points,
            closed: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if !(2..=3).contains(&d) {
            return Err(Error::InvalidInput(format!("points must be 2D or 3D, got {d}D")));
        }
        if let Some(bad) = self.points.iter().position(|p| p.len() != d) {
            return Err(Error::InvalidInput(format!("point {bad} has the wrong dimension")));
        }
        if self.closed && self.points.len() < 3 {
            return Err(Error::InvalidInput("closed polygon needs at least 3 points".into()));
        }
        Ok(())
    }

    /// Applies `x -> A x + b` to every point (`A` row-major, `d x d`).
    pub fn affine(&self, a: &[Vec<f64>], b: &[f64]) -> Polygon {
        let points = self
            .points
            .iter()
            .map(|p| {
                a.iter()
                    .zip(b)
                    .map(|(row, off)| row.iter().zip(p).map(|(x, y)| x * y).sum::<f64>() + off)
                    .collect()
            })
            .collect();
        Polygon {
            points,
            closed: self.closed,
        }
    }
}

/// Degree `n` of the reproduced space together with its frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeParams {
    pub n: usize,
    pub theta: ThetaSpec,
}

/// One refinement step with a fixed mask.
pub fn refine_once(p: &Polygon, mask: &SubdivisionMask<f64>) -> Result<Polygon> {
    if !p.closed {
        return Err(Error::UnsupportedBoundary);
    }
    p.validate()?;
    if !mask.is_interpolatory() {
        return Err(Error::InvalidInput("refinement mask is not interpolatory".into()));
    }
    let count = p.len() as i64;
    let dim = p.dim();
    // odd taps: (offset, weight) with p'_{2i+1} = sum_j m_{2(i-j)+1} p_j
    let odd_taps: Vec<(i64, f64)> = mask
        .symbol
        .terms()
        .filter(|(e, c)| e.rem_euclid(2) == 1 && **c != 0.0)
        .map(|(e, c)| ((e - 1) / 2, *c))
        .collect();
    let mut out = Vec::with_capacity(2 * p.len());
    for i in 0..count {
        out.push(p.points[i as usize].clone());
        let mut acc = vec![0.0; dim];
        for &(shift, w) in &odd_taps {
            let j = (i - shift).rem_euclid(count) as usize;
            for (a, x) in acc.iter_mut().zip(&p.points[j]) {
                *a += w * x;
            }
        }
        out.push(acc);
    }
    Ok(Polygon {
        points: out,
        closed: true,
    })
}

/// Masks for levels `0..steps`, all computed before any refinement happens.
pub fn level_masks(params: &SchemeParams, steps: usize) -> Result<Vec<SubdivisionMask<f64>>> {
    (0..steps)
        .map(|k| mask_for_level(params.n, params.theta, k))
        .collect()
}

/// Runs `steps` refinement levels; the level-`k` mask uses
/// `v_k = cos(theta / 2^(k+1))`.
pub fn subdivide(p: &Polygon, params: &SchemeParams, steps: usize) -> Result<Polygon> {
    let masks = level_masks(params, steps)?;
    subdivide_with(p, &masks)
}

pub fn subdivide_with(p: &Polygon, masks: &[SubdivisionMask<f64>]) -> Result<Polygon> {
    if !p.closed {
        return Err(Error::UnsupportedBoundary);
    }
    masks
        .iter()
        .try_fold(p.clone(), |poly, mask| refine_once(&poly, mask))
}
