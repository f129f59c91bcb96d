//! Chebyshev polynomials of the first kind, the coupling coefficients
//! `C_{l,i}`, and executable forms of the identities linking `1/T_n` to a
//! terminating `3phi2`.

use crate::error::{Error, Result};
use crate::qseries::{rphi_s_terminating, QHyperParams};
use crate::scalar::Scalar;

/// Argument of a Chebyshev polynomial, optionally carrying the substitution
/// variable `t` with `x = (t + 1/t)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebPoint<S> {
    pub x: S,
    pub t: Option<S>,
}

impl<S: Scalar> ChebPoint<S> {
    pub fn from_x(x: S) -> Self {
        ChebPoint { x, t: None }
    }

    pub fn from_t(t: S) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Domain("t = 0 in x = (t + 1/t)/2".into()));
        }
        let x = (t.clone() + S::one() / t.clone()) / S::from_i64(2);
        Ok(ChebPoint { x, t: Some(t) })
    }
}

/// `T_n(x)` by the three-term recurrence; exact over the rationals and valid
/// for `|x| > 1`.
pub fn cheb_t<S: Scalar>(n: usize, x: &S) -> S {
    cheb_table(n, x).pop().unwrap()
}

/// `[T_0(x), ..., T_n(x)]`.
pub fn cheb_table<S: Scalar>(n: usize, x: &S) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(S::one());
    if n >= 1 {
        out.push(x.clone());
    }
    let two_x = S::from_i64(2) * x.clone();
    for k in 2..=n {
        let next = two_x.clone() * out[k - 1].clone() - out[k - 2].clone();
        out.push(next);
    }
    out
}

/// `T_n((t + 1/t)/2) = (t^n + t^-n)/2`.
pub fn cheb_t_from_t<S: Scalar>(n: usize, t: &S) -> Result<S> {
    if t.is_zero() {
        return Err(Error::Domain("t = 0".into()));
    }
    let n = n as i64;
    Ok((t.powi(n) + t.powi(-n)) / S::from_i64(2))
}

fn coupling_from_table<S: Scalar>(ell: usize, i: usize, table: &[S]) -> Result<S> {
    let step_l = table[ell].clone() - table[ell + 1].clone();
    let step_i = table[i].clone() - table[i + 1].clone();
    let num = step_l.clone() * (table[ell].clone() + S::one());
    num.checked_div(&(step_i - step_l), || {
        Error::DegenerateParameter(format!("C_{{{ell},{i}}} has a vanishing denominator"))
    })
}

/// Coupling coefficient
/// `C_{l,i}(x) = (T_l - T_{l+1})(T_l + 1) / ((T_i - T_{i+1}) - (T_l - T_{l+1}))`.
pub fn coupling_c<S: Scalar>(ell: usize, i: usize, x: &S) -> Result<S> {
    if ell >= i {
        return Err(Error::InvalidInput(format!(
            "coupling C_{{{ell},{i}}} needs ell < i"
        )));
    }
    coupling_from_table(ell, i, &cheb_table(i + 1, x))
}

/// Left side of
/// `sum_{i=1}^n 2^i/(T_i+1) prod_{l<i} C_{l,i} (T_l^2 - T_n^2)/(T_l+1)^2 = (1 - T_n)/(2 T_n)`.
pub fn identity_sum_lhs<S: Scalar>(n: usize, x: &S) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let table = cheb_table(n + 1, x);
    let tn_sq = table[n].clone() * table[n].clone();
    let mut sum = S::zero();
    let mut pow2 = S::one();
    for i in 1..=n {
        pow2 = pow2 * S::from_i64(2);
        let mut prod = pow2.clone().checked_div(&(table[i].clone() + S::one()), || {
            Error::DegenerateParameter(format!("T_{i}(x) = -1"))
        })?;
        for ell in 0..i {
            let tl1 = table[ell].clone() + S::one();
            let factor = (table[ell].clone() * table[ell].clone() - tn_sq.clone())
                .checked_div(&(tl1.clone() * tl1), || {
                    Error::DegenerateParameter(format!("T_{ell}(x) = -1"))
                })?;
            prod = prod * coupling_from_table(ell, i, &table)? * factor;
        }
        sum = sum + prod;
    }
    Ok(sum)
}

/// `(identity_sum_lhs(n, x), (1 - T_n(x)) / (2 T_n(x)))`.
pub fn key_identity<S: Scalar>(n: usize, x: &S) -> Result<(S, S)> {
    let lhs = identity_sum_lhs(n, x)?;
    let tn = cheb_t(n, x);
    let rhs = (S::one() - tn.clone())
        .checked_div(&(S::from_i64(2) * tn), || Error::DegenerateParameter("T_n(x) = 0".into()))?;
    Ok((lhs, rhs))
}

/// The finite sum that equals `3phi2[t^-2n, t^2n, t; -t, -t^2; t^2, t^2] - 1`.
pub fn lemma_sum_lhs<S: Scalar>(n: usize, t: &S) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if t.is_zero() || *t == S::one() || *t == -S::one() {
        return Err(Error::Domain("t must avoid 0 and ±1".into()));
    }
    let one = S::one();
    let ni = n as i64;
    let mut sum = S::zero();
    for i in 1..=ni {
        let mut num = S::one();
        for ell in 1..=i {
            num = num * (t.powi(2 * ell - 1) - one.clone());
        }
        for ell in 1..i {
            num = num * (t.powi(2 * (ni + ell)) - one.clone()) * (t.powi(2 * (ni - ell)) - one.clone());
        }
        let mut den = t.powi((2 * ni - i) * i - i);
        for ell in 1..=i {
            den = den * (t.powi(2 * ell) - one.clone());
        }
        for ell in 1..=2 * i {
            den = den * (t.powi(ell) + one.clone());
        }
        let term = num.checked_div(&den, || {
            Error::Domain(format!("vanishing denominator in term i = {i}"))
        })?;
        sum = if i % 2 == 0 { sum + term } else { sum - term };
    }
    let lead = t.powi(2 * ni) - one;
    Ok(lead.clone() * lead * sum)
}

/// Parameters of `3phi2[t^-2n, t^2n, t; -t, -t^2; t^2, t^2]`.
pub fn reciprocal_params<S: Scalar>(n: usize, t: &S) -> QHyperParams<S> {
    let n = n as i64;
    let q = t.powi(2);
    QHyperParams::new(
        vec![t.powi(-2 * n), t.powi(2 * n), t.clone()],
        vec![-t.clone(), -q.clone()],
        q.clone(),
        q,
    )
}

/// Evaluates the `3phi2` whose value is `2t^n/(1+t^2n) = 1/T_n((t+1/t)/2)`.
pub fn recip_t_via_phi<S: Scalar>(n: usize, t: &S) -> Result<S> {
    if t.is_zero() {
        return Err(Error::Domain("t = 0".into()));
    }
    rphi_s_terminating(&reciprocal_params(n, t))
}
