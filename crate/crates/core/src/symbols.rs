//! Level-`k` subdivision symbols.
//!
//! Every builder takes the reduced level parameter `v = cos(theta / 2^(k+1))`
//! directly. All coefficients are rational functions of `v`, so the exact
//! realization can be exercised at rational points such as `v = 5/4`
//! (`t = 2`) without going through a transcendental `theta`.

use num_complex::Complex64;

use crate::chebyshev::{cheb_table, coupling_c};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{binomial, Scalar};

/// Frequency parameter of the reproduced exponential space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaSpec {
    Zero,
    /// `theta = omega`, real and positive.
    Trigonometric(f64),
    /// `theta = i * s` with `s > 0`.
    Hyperbolic(f64),
}

impl ThetaSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThetaSpec::Zero => Ok(()),
            ThetaSpec::Trigonometric(w) if w > 0.0 && w.is_finite() => Ok(()),
            ThetaSpec::Hyperbolic(s) if s > 0.0 && s.is_finite() => Ok(()),
            other => Err(Error::InvalidInput(format!("{other:?}: frequency must be positive"))),
        }
    }

    /// Conservative admissible range for trigonometric frequencies at level 0:
    /// `theta < pi / n` keeps every factor of the closed form away from its poles.
    pub fn within_safe_bound(&self, n: usize) -> bool {
        match *self {
            ThetaSpec::Trigonometric(w) => n == 0 || w < std::f64::consts::PI / n as f64,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelParam<S> {
    pub v: S,
    pub k: usize,
}

/// `v_k = cos(theta / 2^(k+1))` (`cosh` for hyperbolic `theta`).
pub fn level_param(theta: ThetaSpec, k: usize) -> LevelParam<f64> {
    let scale = 0.5f64.powi(k as i32 + 1);
    let v = match theta {
        ThetaSpec::Zero => 1.0,
        ThetaSpec::Trigonometric(w) => (w * scale).cos(),
        ThetaSpec::Hyperbolic(s) => (s * scale).cosh(),
    };
    LevelParam { v, k }
}

/// Symbol of one refinement level of an interpolatory, odd-symmetric scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdivisionMask<S> {
    pub symbol: LaurentPoly<S>,
    pub n: usize,
    pub level: LevelParam<S>,
}

impl<S: Scalar> SubdivisionMask<S> {
    pub fn coeff(&self, exp: i64) -> S {
        self.symbol.coeff(exp)
    }

    /// Coefficients from `z^-(2n+1)` to `z^(2n+1)`.
    pub fn dense_coeffs(&self) -> Vec<S> {
        let reach = 2 * self.n as i64 + 1;
        (-reach..=reach).map(|e| self.symbol.coeff(e)).collect()
    }

    pub fn is_odd_symmetric(&self) -> bool {
        self.symbol.is_symmetric()
    }

    /// Center coefficient 1, every other even-exponent coefficient 0.
    pub fn is_interpolatory(&self) -> bool {
        self.symbol
            .terms()
            .filter(|(e, _)| e % 2 == 0)
            .all(|(e, c)| {
                let target = if e == 0 { S::one() } else { S::zero() };
                c.approx_eq(&target)
            })
            && !self.symbol.coeff(0).is_zero()
    }

    pub fn within_support(&self) -> bool {
        let reach = 2 * self.n as i64 + 1;
        self.symbol.is_zero() || (self.symbol.lo() >= -reach && self.symbol.hi() <= reach)
    }

    /// Checks symmetry, interpolation, support and `m(1) = 2`.
    pub fn validate(&self) -> Result<()> {
        let at_one = self.symbol.eval(&S::one())?;
        let checks = [
            (self.is_odd_symmetric(), "symbol is not odd-symmetric"),
            (self.is_interpolatory(), "symbol is not interpolatory"),
            (self.within_support(), "symbol exceeds [-(2n+1), 2n+1]"),
            (at_one.approx_eq(&S::from_i64(2)), "symbol(1) != 2"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            None => Ok(()),
            Some((_, msg)) => Err(Error::InvalidInput((*msg).to_string())),
        }
    }

    pub fn to_f64(&self) -> SubdivisionMask<f64> {
        SubdivisionMask {
            symbol: self.symbol.to_f64(),
            n: self.n,
            level: LevelParam {
                v: self.level.v.to_f64(),
                k: self.level.k,
            },
        }
    }

    /// `{"n", "v", "lo", "coeffs"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let poly = self.symbol.to_json();
        serde_json::json!({
            "n": self.n,
            "v": self.level.v.to_json(),
            "lo": poly["lo"],
            "coeffs": poly["coeffs"],
        })
    }
}

fn a_from_cheb<S: Scalar>(ell: usize, t_ell: &S) -> Result<LaurentPoly<S>> {
    let shifted = t_ell.clone() + S::one();
    if shifted.is_negligible() {
        return Err(Error::degenerate(format!("T_{ell}(v) = -1")));
    }
    let outer = S::one() / (S::from_i64(2) * shifted.clone());
    let center = t_ell.clone() / shifted;
    Ok(LaurentPoly::new(-1, vec![outer.clone(), center, outer]))
}

/// `a_l(z) = (z + 2T_l(v) + 1/z) / (2(T_l(v) + 1))`.
pub fn a_factor<S: Scalar>(ell: usize, v: &S) -> Result<LaurentPoly<S>> {
    let table = cheb_table(ell, v);
    a_from_cheb(ell, &table[ell])
}

fn a_factors<S: Scalar>(count: usize, v: &S) -> Result<Vec<LaurentPoly<S>>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let table = cheb_table(count - 1, v);
    table
        .iter()
        .enumerate()
        .map(|(ell, t)| a_from_cheb(ell, t))
        .collect()
}

/// Exponential B-spline symbol `2 prod_{l=0}^{n} a_l(z)`.
pub fn bspline_symbol<S: Scalar>(n: usize, v: &S) -> Result<LaurentPoly<S>> {
    let two = LaurentPoly::constant(S::from_i64(2));
    Ok(a_factors(n + 1, v)?
        .iter()
        .fold(two, |acc, a| &acc * a))
}

/// `c_i(v) = 2^i / (T_i(v) + 1) * prod_{l<i} C_{l,i}(v)`.
pub fn c_weight<S: Scalar>(i: usize, v: &S) -> Result<S> {
    if i == 0 {
        return Err(Error::InvalidInput("c_i needs i >= 1".into()));
    }
    let table = cheb_table(i, v);
    let mut acc = S::from_i64(2)
        .powi(i as i64)
        .checked_div(&(table[i].clone() + S::one()), || {
            Error::degenerate(format!("T_{i}(v) = -1"))
        })?;
    for ell in 0..i {
        let c = coupling_c(ell, i, v).map_err(|e| match e {
            Error::DegenerateParameter(msg) => Error::degenerate(msg),
            other => other,
        })?;
        acc = acc * c;
    }
    Ok(acc)
}

fn two_a0_minus_one<S: Scalar>() -> LaurentPoly<S> {
    // (1 + z^2) / (2z)
    let half = S::one() / S::from_i64(2);
    LaurentPoly::new(-1, vec![half.clone(), S::zero(), half])
}

/// `b_i(z) = (2a_0(z) - 1) c_i(v) prod_{l<i} a_l(-z)`.
pub fn b_poly<S: Scalar>(i: usize, v: &S) -> Result<LaurentPoly<S>> {
    let c = c_weight(i, v)?;
    let prod = a_factors(i, v)?
        .iter()
        .fold(LaurentPoly::constant(c), |acc, a| &acc * &a.reflect());
    Ok(&two_a0_minus_one() * &prod)
}

/// Limit of `b_i` as `v -> 1`:
/// `(-1)^i 2^(-2i-1) C(2i-1, i-1) (1+z^2)(1-z)^(2i) / z^(i+1)`.
pub fn b_poly_limit<S: Scalar>(i: usize) -> LaurentPoly<S> {
    let i64_ = i as i64;
    let sign = if i % 2 == 0 { S::one() } else { -S::one() };
    let scale = sign * binomial::<S>(2 * i as u64 - 1, i as u64 - 1) / S::from_i64(2).powi(2 * i64_ + 1);
    let one_minus_z = LaurentPoly::new(0, vec![S::one(), -S::one()]);
    let one_plus_z2 = LaurentPoly::new(0, vec![S::one(), S::zero(), S::one()]);
    let body = &one_plus_z2 * &one_minus_z.pow(2 * i as u32);
    &body * &LaurentPoly::monomial(scale, -(i64_ + 1))
}

fn validate_v<S: Scalar>(v: &S) -> Result<()> {
    if *v <= -S::one() {
        return Err(Error::InvalidInput("level parameter must satisfy v > -1".into()));
    }
    Ok(())
}

/// Closed-form symbol `m_{2n+2}(z) = 2a_0(z) (1 + sum_{i=1}^n b_i(z) prod_{l=1}^{i-1} a_l(z))`.
///
/// Fails with a degenerate-level error at `v = 1`; use [`dd_symbol`] there.
pub fn closed_form_symbol<S: Scalar>(n: usize, v: &S) -> Result<SubdivisionMask<S>> {
    validate_v(v)?;
    let a = a_factors(n.max(1), v)?;
    let mut inner = LaurentPoly::constant(S::one());
    let mut reflected = LaurentPoly::constant(S::one());
    let mut direct = LaurentPoly::constant(S::one());
    for i in 1..=n {
        reflected = &reflected * &a[i - 1].reflect();
        if i >= 2 {
            direct = &direct * &a[i - 1];
        }
        let c = c_weight(i, v)?;
        let b = (&two_a0_minus_one() * &reflected).scale(&c);
        inner = &inner + &(&b * &direct);
    }
    let symbol = &a[0].scale(&S::from_i64(2)) * &inner;
    Ok(SubdivisionMask {
        symbol,
        n,
        level: LevelParam { v: v.clone(), k: 0 },
    })
}

/// The same symbol in the expanded form
/// `2a_0(z) + 2(2a_0(z) - 1) sum_i c_i prod_{l<i} a_l(-z) a_l(z)`.
pub fn closed_form_symbol_flat<S: Scalar>(n: usize, v: &S) -> Result<SubdivisionMask<S>> {
    validate_v(v)?;
    let a = a_factors(n.max(1), v)?;
    let mut sum = LaurentPoly::zero();
    let mut prod = LaurentPoly::constant(S::one());
    for i in 1..=n {
        prod = &prod * &(&a[i - 1].reflect() * &a[i - 1]);
        sum = &sum + &prod.scale(&c_weight(i, v)?);
    }
    let two = S::from_i64(2);
    let symbol = &a[0].scale(&two) + &(&two_a0_minus_one::<S>().scale(&two) * &sum);
    Ok(SubdivisionMask {
        symbol,
        n,
        level: LevelParam { v: v.clone(), k: 0 },
    })
}

/// Dubuc–Deslauriers `(2n+2)`-point symbol:
/// `(1+z)^(2n+2) / (2^(2n+1) z^(n+1)) * sum_{s<=n} C(n+s, s) (-1)^s (1-z)^(2s) / (4^s z^s)`.
pub fn dd_symbol<S: Scalar>(n: usize) -> SubdivisionMask<S> {
    let ni = n as i64;
    let one_plus_z = LaurentPoly::new(0, vec![S::one(), S::one()]);
    let one_minus_z = LaurentPoly::new(0, vec![S::one(), -S::one()]);
    let lead = &one_plus_z.pow(2 * n as u32 + 2)
        * &LaurentPoly::monomial(S::one() / S::from_i64(2).powi(2 * ni + 1), -(ni + 1));
    let mut series = LaurentPoly::zero();
    for s in 0..=n {
        let sign = if s % 2 == 0 { S::one() } else { -S::one() };
        let weight = sign * binomial::<S>((n + s) as u64, s as u64) / S::from_i64(4).powi(s as i64);
        let term = &one_minus_z.pow(2 * s as u32) * &LaurentPoly::monomial(weight, -(s as i64));
        series = &series + &term;
    }
    SubdivisionMask {
        symbol: &lead * &series,
        n,
        level: LevelParam { v: S::one(), k: 0 },
    }
}

/// Closed-form symbol for level `k` of a scheme with frequency `theta`;
/// `v = 1` resolves to the Dubuc–Deslauriers symbol.
pub fn mask_for_level(n: usize, theta: ThetaSpec, k: usize) -> Result<SubdivisionMask<f64>> {
    theta.validate()?;
    let level = level_param(theta, k);
    let mut mask = if level.v == 1.0 {
        dd_symbol(n)
    } else {
        closed_form_symbol(n, &level.v).map_err(|e| e.at_level(k))?
    };
    mask.level = level;
    Ok(mask)
}

/// Which family of conditions [`verify_conditions`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionMode {
    Generation,
    Reproduction,
    Interpolation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub label: String,
    /// Magnitude of the residual.
    pub residual: f64,
    /// For exact arithmetic: whether the residual is exactly zero.
    pub exact_zero: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub mode: ConditionMode,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn max_residual(&self) -> f64 {
        self.conditions.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// True when every exactly-evaluated condition vanished exactly.
    pub fn exact_conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.exact_zero != Some(false))
    }
}

/// A point `r` with `(r + 1/r)/2 = v`: unit-modulus complex for `|v| <= 1`,
/// real `r > 1` for `v > 1`.
pub fn root_point(v: f64) -> Complex64 {
    if v.abs() <= 1.0 {
        Complex64::new(v, (1.0 - v * v).sqrt())
    } else {
        Complex64::new(v + (v * v - 1.0).sqrt(), 0.0)
    }
}

fn exact_condition<S: Scalar>(label: &str, value: S) -> Condition {
    Condition {
        label: label.to_string(),
        residual: value.to_f64().abs(),
        exact_zero: S::is_exact().then(|| value.is_zero()),
    }
}

/// Residuals of the generation, reproduction or interpolation conditions.
pub fn verify_conditions<S: Scalar>(mask: &SubdivisionMask<S>, mode: ConditionMode) -> ConditionReport {
    let m = &mask.symbol;
    let dm = m.derivative();
    let one = S::one();
    let two = S::from_i64(2);
    let mut conditions = Vec::new();
    // evaluation at ±1 never hits the z = 0 domain error
    let at = |p: &LaurentPoly<S>, z: &S| p.eval(z).unwrap();
    let r = root_point(mask.level.v.to_f64());
    match mode {
        ConditionMode::Generation => {
            conditions.push(exact_condition("m(-1)", at(m, &-one.clone())));
            conditions.push(exact_condition("m'(-1)", at(&dm, &-one.clone())));
            for j in 1..=mask.n as i32 {
                for (sign, z) in [("+", r.powi(j)), ("-", r.powi(-j))] {
                    let val = m.eval_complex(-z).unwrap();
                    conditions.push(Condition {
                        label: format!("m(-r^{sign}{j})"),
                        residual: val.norm(),
                        exact_zero: None,
                    });
                }
            }
        }
        ConditionMode::Reproduction => {
            conditions.push(exact_condition("m(1)-2", at(m, &one) - two));
            conditions.push(exact_condition("m'(1)", at(&dm, &one)));
            for j in 1..=mask.n as i32 {
                for (sign, z) in [("+", r.powi(j)), ("-", r.powi(-j))] {
                    let val = m.eval_complex(z).unwrap() - 2.0;
                    conditions.push(Condition {
                        label: format!("m(r^{sign}{j})-2"),
                        residual: val.norm(),
                        exact_zero: None,
                    });
                }
            }
        }
        ConditionMode::Interpolation => {
            let defect = &(m + &m.reflect()) - &LaurentPoly::constant(two);
            let worst = defect
                .coeffs()
                .iter()
                .map(|c| c.to_f64().abs())
                .fold(0.0, f64::max);
            conditions.push(Condition {
                label: "m(z)+m(-z)-2".into(),
                residual: worst,
                exact_zero: S::is_exact().then(|| defect.is_zero()),
            });
        }
    }
    ConditionReport { mode, conditions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{cheb_t, key_identity};
    use crate::scalar::{rat, Rational};
    use std::f64::consts::PI;

    fn poly(terms: &[(i64, Rational)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().cloned())
    }

    #[test]
    fn level_param_examples() {
        for k in 0..5 {
            assert_eq!(level_param(ThetaSpec::Zero, k).v, 1.0);
        }
        assert!(level_param(ThetaSpec::Trigonometric(PI), 0).v.abs() < 1e-15);
        let v = level_param(ThetaSpec::Hyperbolic(2.0 * 2f64.ln()), 0).v;
        assert!((v - 1.25).abs() < 1e-15);
    }

    #[test]
    fn level_param_is_monotone_towards_one() {
        let trig: Vec<f64> = (0..8).map(|k| level_param(ThetaSpec::Trigonometric(2.0), k).v).collect();
        assert!(trig.windows(2).all(|w| w[0] < w[1] && w[1] <= 1.0));
        let hyp: Vec<f64> = (0..8).map(|k| level_param(ThetaSpec::Hyperbolic(2.0), k).v).collect();
        assert!(hyp.windows(2).all(|w| w[0] > w[1] && w[1] >= 1.0));
    }

    #[test]
    fn a_factor_examples() {
        let quarter = poly(&[(-1, rat(1, 4)), (0, rat(1, 2)), (1, rat(1, 4))]);
        for v in [rat(5, 4), rat(1, 3), rat(-1, 2), rat(7, 1)] {
            assert_eq!(a_factor(0, &v).unwrap(), quarter);
        }
        for ell in 0..6 {
            for v in [rat(5, 4), rat(2, 3)] {
                assert_eq!(a_factor(ell, &v).unwrap().eval(&rat(1, 1)).unwrap(), rat(1, 1));
            }
        }
        let a1 = a_factor(1, &rat(5, 4)).unwrap();
        assert_eq!(a1, poly(&[(-1, rat(2, 9)), (0, rat(5, 9)), (1, rat(2, 9))]));
    }

    #[test]
    fn a_factor_degenerates_when_chebyshev_hits_minus_one() {
        // T_2(0) = -1
        assert!(matches!(
            a_factor(2, &rat(0, 1)),
            Err(Error::DegenerateLevel { .. })
        ));
    }

    #[test]
    fn bspline_examples() {
        let s0 = bspline_symbol(0, &rat(5, 4)).unwrap();
        assert_eq!(s0, poly(&[(-1, rat(1, 2)), (0, rat(1, 1)), (1, rat(1, 2))]));
        // s_1 = s_7 = 1/(8v(2v^2+v-1)) at v = 5/4
        let s3 = bspline_symbol(3, &rat(5, 4)).unwrap();
        assert_eq!(s3.coeff(-3), rat(4, 135));
        assert_eq!(s3.coeff(3), rat(4, 135));
        assert_eq!(s3.lo(), -4);
        assert_eq!(s3.hi(), 4);
        assert_eq!(s3.eval(&rat(1, 1)).unwrap(), rat(2, 1));
    }

    #[test]
    fn bspline_at_one_is_polynomial_bspline() {
        for n in 0..5usize {
            let s = bspline_symbol(n, &rat(1, 1)).unwrap();
            let one_plus_z = poly(&[(0, rat(1, 1)), (1, rat(1, 1))]);
            let expected = &one_plus_z.pow(2 * n as u32 + 2)
                * &LaurentPoly::monomial(rat(1, 1) / rat(2, 1).powi(2 * n as i64 + 1), -(n as i64 + 1));
            assert_eq!(s, expected);
        }
    }

    #[test]
    fn c_weight_examples() {
        assert_eq!(c_weight(1, &rat(5, 4)).unwrap(), rat(32, 45));
        for v in [rat(1, 3), rat(7, 5), rat(9, 2)] {
            let expected = rat(2, 1) / (v.clone() * (v.clone() + rat(1, 1)));
            assert_eq!(c_weight(1, &v).unwrap(), expected);
        }
        assert!(matches!(c_weight(1, &rat(1, 1)), Err(Error::DegenerateLevel { .. })));
        assert!(matches!(c_weight(3, &1.0f64), Err(Error::DegenerateLevel { .. })));
    }

    #[test]
    fn c_weight_two_from_coupling_products() {
        // independent brute force of 2^2/(T_2+1) C_{0,2} C_{1,2}
        let v = rat(5, 4);
        let t: Vec<Rational> = (0..4).map(|k| cheb_t(k, &v)).collect();
        let c = |l: usize, i: usize| {
            (t[l].clone() - t[l + 1].clone()) * (t[l].clone() + rat(1, 1))
                / ((t[i].clone() - t[i + 1].clone()) - (t[l].clone() - t[l + 1].clone()))
        };
        let expected = rat(4, 1) / (t[2].clone() + rat(1, 1)) * c(0, 2) * c(1, 2);
        assert_eq!(c_weight(2, &v).unwrap(), expected);
    }

    #[test]
    fn b_poly_first_term() {
        for v in [rat(5, 4), rat(2, 3), rat(9, 10)] {
            // -(z^2+1)(z-1)^2 / (4 z^2 v (1+v))
            let num = &poly(&[(0, rat(1, 1)), (2, rat(1, 1))]) * &poly(&[(0, rat(1, 1)), (1, rat(-1, 1))]).pow(2);
            let scale = rat(-1, 1) / (rat(4, 1) * v.clone() * (rat(1, 1) + v.clone()));
            let expected = &num * &LaurentPoly::monomial(scale, -2);
            assert_eq!(b_poly(1, &v).unwrap(), expected);
        }
    }

    #[test]
    fn b_poly_is_symmetric() {
        for i in 1..=5 {
            let b = b_poly(i, &rat(5, 4)).unwrap();
            assert_eq!(b.invert(), b);
        }
    }

    #[test]
    fn b_poly_limit_first_term() {
        let expected = &(&poly(&[(0, rat(1, 1)), (2, rat(1, 1))])
            * &poly(&[(0, rat(1, 1)), (1, rat(-1, 1))]).pow(2))
            * &LaurentPoly::monomial(rat(-1, 8), -2);
        assert_eq!(b_poly_limit::<Rational>(1), expected);
        // b_i(v) approaches the limit as v -> 1
        for i in 1..=3 {
            let lim = b_poly_limit::<Rational>(i);
            let d1 = b_poly(i, &(rat(1, 1) - rat(1, 100))).unwrap().max_abs_diff(&lim);
            let d2 = b_poly(i, &(rat(1, 1) - rat(1, 1_000_000))).unwrap().max_abs_diff(&lim);
            assert!(d2 < d1 && d2 < 1e-3, "i = {i}: {d1} {d2}");
        }
    }

    #[test]
    fn closed_form_base_case() {
        for v in [rat(5, 4), rat(3, 5), rat(11, 10)] {
            let m = closed_form_symbol(1, &v).unwrap();
            let a0 = a_factor(0, &v).unwrap();
            let inner = &LaurentPoly::constant(rat(1, 1)) + &b_poly(1, &v).unwrap();
            let expected = &a0.scale(&rat(2, 1)) * &inner;
            assert_eq!(m.symbol, expected);
        }
    }

    #[test]
    fn closed_form_n_zero_is_linear_interpolation() {
        let m = closed_form_symbol(0, &rat(5, 4)).unwrap();
        assert_eq!(m.symbol, poly(&[(-1, rat(1, 2)), (0, rat(1, 1)), (1, rat(1, 2))]));
        m.validate().unwrap();
    }

    #[test]
    fn closed_form_invariants_exact() {
        for n in 1..=6 {
            for v in [rat(5, 4), rat(9, 10), rat(3, 5), rat(17, 10), rat(31, 32)] {
                let m = closed_form_symbol(n, &v).unwrap();
                m.validate().unwrap_or_else(|e| panic!("n={n} v={v}: {e}"));
                assert_eq!(m.symbol.eval(&rat(1, 1)).unwrap(), rat(2, 1));
                assert!(m.symbol.is_symmetric());
                assert_eq!(m.symbol.lo(), -(2 * n as i64 + 1));
            }
        }
    }

    #[test]
    fn closed_form_symmetric_in_float() {
        let m = closed_form_symbol(2, &0.9f64).unwrap();
        assert!(m.symbol.is_symmetric());
        assert!(m.is_interpolatory());
    }

    #[test]
    fn closed_form_rejects_v_one() {
        assert!(matches!(
            closed_form_symbol(2, &rat(1, 1)),
            Err(Error::DegenerateLevel { .. })
        ));
        assert!(matches!(closed_form_symbol(2, &rat(-1, 1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn telescoping_relation() {
        let v = rat(5, 4);
        for n in 2..=6 {
            let hi = closed_form_symbol(n, &v).unwrap().symbol;
            let lo = closed_form_symbol(n - 1, &v).unwrap().symbol;
            let s = bspline_symbol(n - 1, &v).unwrap();
            let b = b_poly(n, &v).unwrap();
            assert_eq!(&hi - &lo, &s * &b, "n = {n}");
        }
    }

    #[test]
    fn flat_and_nested_forms_agree() {
        for n in 0..=6 {
            for v in [rat(5, 4), rat(7, 9)] {
                let nested = closed_form_symbol(n, &v).unwrap();
                let flat = closed_form_symbol_flat(n, &v).unwrap();
                assert_eq!(nested.symbol, flat.symbol, "n = {n}");
            }
        }
    }

    #[test]
    fn key_identity_linkage() {
        // sum_i c_i prod_{l<i} a_l(r^n) a_l(-r^n) = (1 - T_n(v)) / (2 T_n(v))
        // pi/23 and 2pi/29 keep every (i + l + 1) * phi away from odd multiples of pi
        for v in [(PI / 23.0).cos(), (2.0 * PI / 29.0).cos(), 1.25] {
            let r = root_point(v);
            for n in 1..=5usize {
                let w = r.powi(n as i32);
                let mut sum = Complex64::new(0.0, 0.0);
                let mut prod = Complex64::new(1.0, 0.0);
                for i in 1..=n {
                    let a = a_factor(i - 1, &v).unwrap();
                    prod *= a.eval_complex(w).unwrap() * a.eval_complex(-w).unwrap();
                    sum += prod * c_weight(i, &v).unwrap();
                }
                let (_, rhs) = key_identity(n, &v).unwrap();
                assert!((sum - rhs).norm() < 1e-10, "v={v} n={n}: {sum} vs {rhs}");
            }
        }
    }

    #[test]
    fn key_identity_linkage_exact_real_root() {
        // v = (t + 1/t)/2 has the rational root r = t
        for t in [rat(2, 1), rat(3, 1), rat(3, 2)] {
            let v = (t.clone() + t.powi(-1)) / rat(2, 1);
            for n in 1..=6usize {
                let w = t.powi(n as i64);
                let mut sum = rat(0, 1);
                let mut prod = rat(1, 1);
                for i in 1..=n {
                    let a = a_factor(i - 1, &v).unwrap();
                    prod = prod * a.eval(&w).unwrap() * a.eval(&-w.clone()).unwrap();
                    sum = sum + prod.clone() * c_weight(i, &v).unwrap();
                }
                let (_, rhs) = key_identity(n, &v).unwrap();
                assert_eq!(sum, rhs, "t={t} n={n}");
            }
        }
    }

    #[test]
    fn dd_four_point() {
        let m = dd_symbol::<Rational>(1);
        let expected = poly(&[
            (-3, rat(-1, 16)),
            (-1, rat(9, 16)),
            (0, rat(1, 1)),
            (1, rat(9, 16)),
            (3, rat(-1, 16)),
        ]);
        assert_eq!(m.symbol, expected);
        for n in 1..=6 {
            let dd = dd_symbol::<Rational>(n);
            assert_eq!(dd.symbol.eval(&rat(1, 1)).unwrap(), rat(2, 1));
            dd.validate().unwrap();
        }
    }

    #[test]
    fn dd_conditions_at_plus_minus_one() {
        let dd = dd_symbol::<Rational>(2);
        let gen = verify_conditions(&dd, ConditionMode::Generation);
        assert!(gen.conditions[..2].iter().all(|c| c.exact_zero == Some(true)));
        let rep = verify_conditions(&dd, ConditionMode::Reproduction);
        assert!(rep.conditions[..2].iter().all(|c| c.exact_zero == Some(true)));
        // r = 1 at v = 1, so the root conditions collapse onto ±1
        assert!(gen.max_residual() < 1e-12);
        assert!(rep.max_residual() < 1e-12);
    }

    #[test]
    fn closed_form_converges_to_dd() {
        for n in 1..=4 {
            let dd = dd_symbol::<Rational>(n).symbol;
            let devs: Vec<f64> = (2..=6)
                .map(|m| {
                    let v = rat(1, 1) - rat(1, 4).powi(m);
                    closed_form_symbol(n, &v).unwrap().symbol.max_abs_diff(&dd)
                })
                .collect();
            assert!(devs.windows(2).all(|w| w[1] < w[0]), "n = {n}: {devs:?}");
        }
    }

    #[test]
    fn base_case_root_condition() {
        let v = (PI / 8.0).cos();
        let m = closed_form_symbol(1, &v).unwrap();
        let r = root_point(v);
        assert!(m.symbol.eval_complex(-r).unwrap().norm() < 1e-12);
        assert!(m.symbol.eval_complex(-r.inv()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn hyperbolic_conditions_exact_and_float() {
        let m = closed_form_symbol(3, &rat(5, 4)).unwrap();
        for mode in [ConditionMode::Generation, ConditionMode::Reproduction] {
            let report = verify_conditions(&m, mode);
            assert!(report.exact_conditions_hold(), "{report:?}");
            assert!(report.max_residual() <= 1e-10, "{report:?}");
            assert_eq!(report.conditions.len(), 2 + 2 * 3);
        }
        let interp = verify_conditions(&m, ConditionMode::Interpolation);
        assert_eq!(interp.conditions[0].exact_zero, Some(true));
    }

    #[test]
    fn root_point_recovers_v() {
        for v in [0.3, -0.7, 1.0, 1.25, 3.0] {
            let r = root_point(v);
            let back = (r + r.inv()) / 2.0;
            assert!((back - Complex64::new(v, 0.0)).norm() < 1e-14);
        }
        assert!((root_point(1.25).re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn mask_for_level_handles_zero_theta_and_reports_level() {
        let dd = mask_for_level(2, ThetaSpec::Zero, 3).unwrap();
        assert_eq!(dd.level.k, 3);
        assert!(dd.symbol.approx_eq(&dd_symbol::<f64>(2).symbol));
        // theta = pi gives v_0 = 0 and T_2(0) = -1
        let err = mask_for_level(3, ThetaSpec::Trigonometric(PI), 0).unwrap_err();
        assert!(matches!(err, Error::DegenerateLevel { level: Some(0), .. }), "{err}");
        assert!(mask_for_level(1, ThetaSpec::Trigonometric(-1.0), 0).is_err());
    }

    #[test]
    fn mask_json_shape() {
        let m = closed_form_symbol(1, &rat(5, 4)).unwrap();
        let j = m.to_json();
        assert_eq!(j["n"], 1);
        assert_eq!(j["v"], "5/4");
        assert_eq!(j["lo"], -3);
        assert_eq!(j["coeffs"].as_array().unwrap().len(), 7);
    }
}
