//! Pochhammer and q-Pochhammer symbols, terminating hypergeometric and basic
//! hypergeometric series, and the polynomial families built on them.
//!
//! Only terminating series are summed. Parameters are treated algebraically:
//! `q` may lie outside `(0, 1)` as long as some numerator parameter equals
//! `q^-n` for an integer `n >= 0`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest termination index scanned for when looking for `q^-n` among the
/// numerator parameters.
pub const MAX_TERMINATION_INDEX: usize = 64;

/// Rising factorial `(p)_n`.
pub fn pochhammer<S: Scalar>(p: &S, n: usize) -> S {
    (0..n).fold(S::one(), |acc, j| acc * (p.clone() + S::from_i64(j as i64)))
}

/// `(a; q)_n = prod_{j<n} (1 - a q^j)`.
pub fn q_pochhammer<S: Scalar>(a: &S, q: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut aqj = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aqj.clone());
        aqj = aqj * q.clone();
    }
    acc
}

/// Terminating Gauss series `2F1(-m, b; c; z) = sum_{n<=m} (-1)^n C(m,n) (b)_n/(c)_n z^n`.
pub fn gauss_2f1_terminating<S: Scalar>(m: usize, b: &S, c: &S, z: &S) -> Result<S> {
    let mut term = S::one();
    let mut sum = S::one();
    for n in 0..m {
        let bn = b.clone() + S::from_i64(n as i64);
        if bn.is_zero() {
            // (b)_{n+1} = 0: every later term vanishes
            break;
        }
        let cn = c.clone() + S::from_i64(n as i64);
        let ratio = (S::from_i64(n as i64) - S::from_i64(m as i64)) * bn * z.clone()
            / S::from_i64(n as i64 + 1);
        term = (term * ratio).checked_div(&cn, || {
            Error::SingularParameter(format!("(c)_n vanishes at n = {} before termination", n + 1))
        })?;
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Parameters of a basic hypergeometric series `r phi s`.
#[derive(Clone, Debug, PartialEq)]
pub struct QHyperParams<S> {
    pub numerator: Vec<S>,
    pub denominator: Vec<S>,
    pub q: S,
    pub z: S,
}

impl<S: Scalar> QHyperParams<S> {
    pub fn new(numerator: Vec<S>, denominator: Vec<S>, q: S, z: S) -> Self {
        QHyperParams {
            numerator,
            denominator,
            q,
            z,
        }
    }

    /// Smallest `n <= MAX_TERMINATION_INDEX` such that some numerator
    /// parameter equals `q^-n`.
    pub fn termination_index(&self) -> Result<usize> {
        if self.q.is_zero() || self.q == S::one() {
            return Err(Error::InvalidInput("q must differ from 0 and 1".into()));
        }
        let q_inv = S::one() / self.q.clone();
        let mut power = S::one();
        for n in 0..=MAX_TERMINATION_INDEX {
            if self.numerator.iter().any(|a| a.matches(&power)) {
                return Ok(n);
            }
            power = power * q_inv.clone();
        }
        Err(Error::NonTerminating(format!(
            "no numerator parameter equals q^-n for n <= {MAX_TERMINATION_INDEX}"
        )))
    }
}

/// Sums the terminating series
/// `sum_k prod (a_i;q)_k / prod (b_j;q)_k * z^k/(q;q)_k * (-q^((k-1)/2))^(k(1+s-r))`.
pub fn rphi_s_terminating<S: Scalar>(params: &QHyperParams<S>) -> Result<S> {
    let last = params.termination_index()?;
    let q = &params.q;
    let excess = 1 + params.denominator.len() as i64 - params.numerator.len() as i64;
    let sign_flip = excess.rem_euclid(2) == 1;

    let mut term = S::one();
    let mut sum = S::one();
    let mut qk = S::one();
    for k in 0..last {
        let mut num = params.z.clone();
        for a in &params.numerator {
            num = num * (S::one() - a.clone() * qk.clone());
        }
        let singular = || {
            Error::SingularParameter(format!(
                "denominator q-Pochhammer factor vanishes at term {} (series ends at {last})",
                k + 1
            ))
        };
        let mut den = S::one() - qk.clone() * q.clone();
        for b in &params.denominator {
            let factor = S::one() - b.clone() * qk.clone();
            if factor.is_negligible() {
                return Err(singular());
            }
            den = den * factor;
        }
        if excess != 0 {
            // ratio of consecutive correction factors: (-1)^e q^(k e)
            num = num * qk.powi(excess);
            if sign_flip {
                num = -num;
            }
        }
        if den.is_zero() {
            return Err(singular());
        }
        term = term * num / den;
        sum = sum + term.clone();
        qk = qk * q.clone();
    }
    Ok(sum)
}

/// `3phi2[q^-n, a, b; c, ab/(c q^(n-1)); q, q]` and the closed product
/// `(c/a;q)_n (c/b;q)_n / ((c;q)_n (c/(ab);q)_n)`.
pub fn q_saalschutz_check<S: Scalar>(n: usize, a: &S, b: &S, c: &S, q: &S) -> Result<(S, S)> {
    let singular = || Error::SingularParameter("zero parameter in q-Saalschütz balance".into());
    let qn_inv = q.powi(-(n as i64));
    let balance = (a.clone() * b.clone()).checked_div(&(c.clone() * q.powi(n as i64 - 1)), singular)?;
    let params = QHyperParams::new(
        vec![qn_inv, a.clone(), b.clone()],
        vec![c.clone(), balance],
        q.clone(),
        q.clone(),
    );
    let lhs = rphi_s_terminating(&params)?;

    let c_over_a = c.checked_div(a, singular)?;
    let c_over_b = c.checked_div(b, singular)?;
    let c_over_ab = c.checked_div(&(a.clone() * b.clone()), singular)?;
    let num = q_pochhammer(&c_over_a, q, n) * q_pochhammer(&c_over_b, q, n);
    let den = q_pochhammer(c, q, n) * q_pochhammer(&c_over_ab, q, n);
    let rhs = num.checked_div(&den, || {
        Error::SingularParameter("(c;q)_n (c/ab;q)_n vanishes".into())
    })?;
    Ok((lhs, rhs))
}

/// Big q-Jacobi polynomial `P_n(x; a, b, c; q) = 3phi2[q^-n, abq^(n+1), x; aq, cq; q, q]`.
pub fn big_q_jacobi<S: Scalar>(x: &S, a: &S, b: &S, c: &S, q: &S, n: usize) -> Result<S> {
    let params = QHyperParams::new(
        vec![
            q.powi(-(n as i64)),
            a.clone() * b.clone() * q.powi(n as i64 + 1),
            x.clone(),
        ],
        vec![a.clone() * q.clone(), c.clone() * q.clone()],
        q.clone(),
        q.clone(),
    );
    rphi_s_terminating(&params)
}

/// Classical Jacobi polynomial `(alpha+1)_n/n! * 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)`.
pub fn jacobi_poly<S: Scalar>(n: usize, alpha: &S, beta: &S, x: &S) -> Result<S> {
    let one = S::one();
    let b = S::from_i64(n as i64) + alpha.clone() + beta.clone() + one.clone();
    let c = alpha.clone() + one.clone();
    let z = (one - x.clone()) / S::from_i64(2);
    let f = gauss_2f1_terminating(n, &b, &c, &z)?;
    Ok(pochhammer(&c, n) / pochhammer(&S::one(), n) * f)
}
