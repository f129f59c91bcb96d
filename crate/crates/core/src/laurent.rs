//! Laurent polynomials with dense coefficient storage.
//!
//! A [`LaurentPoly`] stores `coeffs[i]` as the coefficient of `z^(lo + i)`.
//! Every constructor and operation trims zero coefficients at both ends, so
//! two polynomials built by different routes compare structurally.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<S> {
    lo: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn new(lo: i64, coeffs: Vec<S>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: S, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let terms: Vec<(i64, S)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![S::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::new(lo, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.lo = 0;
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.lo += first as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient (`lo - 1` when zero).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `z^exp`, zero outside the stored span.
    pub fn coeff(&self, exp: i64) -> S {
        let idx = exp - self.lo;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            S::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Iterates `(exponent, coefficient)` over the stored span.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(
            self.lo,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        LaurentPoly::new(self.lo, self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> LaurentPoly<f64> {
        self.map(|c| c.to_f64())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(S::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a scalar point. `z = 0` is rejected whenever a negative
    /// exponent is present.
    pub fn eval(&self, z: &S) -> Result<S> {
        if self.is_zero() {
            return Ok(S::zero());
        }
        if z.is_zero() && self.lo < 0 {
            return Err(Error::Domain(
                "evaluation at z = 0 with negative exponents".into(),
            ));
        }
        let horner = self
            .coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * z.clone() + c.clone());
        Ok(horner * z.powi(self.lo))
    }

    /// Evaluates at a complex point using the float image of the coefficients.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if z == Complex64::new(0.0, 0.0) && self.lo < 0 {
            return Err(Error::Domain(
                "evaluation at z = 0 with negative exponents".into(),
            ));
        }
        let horner = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64());
        Ok(horner * z.powi(self.lo as i32))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c.clone() * S::from_i64(e))),
        )
    }

    /// `p(-z)`: the coefficient of `z^j` picks up a factor `(-1)^j`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.lo,
            self.terms()
                .map(|(e, c)| if e % 2 == 0 { c.clone() } else { -c.clone() })
                .collect(),
        )
    }

    /// `p(1/z)`.
    pub fn invert(&self) -> Self {
        Self::new(-self.hi(), self.coeffs.iter().rev().cloned().collect())
    }

    /// True iff `coeff(j) == coeff(-j)` for every `j` under the scalar's
    /// equality contract.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let reach = self.lo.abs().max(self.hi().abs());
        (1..=reach).all(|j| self.coeff(j).approx_eq(&self.coeff(-j)))
    }

    /// Coefficient-wise equality under the scalar's equality contract.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|e| self.coeff(e).approx_eq(&other.coeff(e)))
    }

    /// Largest coefficient-wise `|self - other|` in `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let diff = self - other;
        diff.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "lo": self.lo,
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let lo = v
            .get("lo")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::InvalidInput("missing integer field \"lo\"".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("missing array field \"coeffs\"".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(lo, coeffs))
    }
}

impl<S: Scalar> Add for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn add(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        LaurentPoly::new(lo, (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl<S: Scalar> Sub for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn sub(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn neg(self) -> LaurentPoly<S> {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn mul(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for LaurentPoly<S> {
            type Output = LaurentPoly<S>;
            fn $m(self, rhs: LaurentPoly<S>) -> LaurentPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar + fmt::Display> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·z")?,
                _ => write!(f, "({c})·z^{e}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Serialize for LaurentPoly<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for LaurentPoly<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use proptest::prelude::*;

    fn q(terms: &[(i64, i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d))))
    }

    fn z_plus_zinv() -> LaurentPoly<Rational> {
        q(&[(-1, 1, 1), (1, 1, 1)])
    }

    #[test]
    fn binomial_square() {
        let p = z_plus_zinv();
        assert_eq!(&p * &p, q(&[(-2, 1, 1), (0, 2, 1), (2, 1, 1)]));
    }

    #[test]
    fn additive_identity() {
        let p = q(&[(-2, 3, 4), (5, -1, 2)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        assert_eq!(&LaurentPoly::zero() + &p, p);
    }

    #[test]
    fn cancellation_normalizes() {
        let p = q(&[(-3, 1, 1), (0, 2, 1), (4, 1, 1)]);
        let r = &p - &q(&[(-3, 1, 1), (4, 1, 1)]);
        assert_eq!(r, LaurentPoly::constant(rat(2, 1)));
        assert_eq!(r.lo(), 0);
        let zero = &p - &p;
        assert!(zero.is_zero());
        assert_eq!(zero.lo(), 0);
    }

    #[test]
    fn quarter_square_of_half_binomial() {
        // (1+z)^2/(4z) as ((1+z)/2)^2 scaled by z^-1
        let half = q(&[(0, 1, 2), (1, 1, 2)]);
        let sq = (&half * &half) * LaurentPoly::monomial(rat(1, 1), -1);
        assert_eq!(sq, q(&[(-1, 1, 4), (0, 1, 2), (1, 1, 4)]));
        let scaled = half.scale(&rat(2, 1));
        assert_eq!(scaled, q(&[(0, 1, 1), (1, 1, 1)]));
    }

    #[test]
    fn eval_examples() {
        let p = q(&[(-1, 1, 1), (0, 2, 1), (1, 1, 1)]);
        assert_eq!(p.eval(&rat(1, 1)).unwrap(), rat(4, 1));
        let a0 = q(&[(-1, 1, 4), (0, 1, 2), (1, 1, 4)]);
        assert_eq!(a0.eval(&rat(-1, 1)).unwrap(), rat(0, 1));
        let w = p.eval_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((w - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_at_zero_is_domain_error() {
        let p = z_plus_zinv();
        assert!(matches!(p.eval(&rat(0, 1)), Err(Error::Domain(_))));
        assert!(matches!(
            p.eval_complex(Complex64::new(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        // no negative exponents: z = 0 is fine
        let r = q(&[(0, 3, 1), (2, 1, 1)]);
        assert_eq!(r.eval(&rat(0, 1)).unwrap(), rat(3, 1));
    }

    #[test]
    fn derivative_examples() {
        let p = q(&[(2, 1, 1), (-1, 1, 1)]);
        assert_eq!(p.derivative(), q(&[(1, 2, 1), (-2, -1, 1)]));
        assert!(LaurentPoly::constant(rat(7, 3)).derivative().is_zero());
        let a0 = q(&[(-1, 1, 4), (0, 1, 2), (1, 1, 4)]);
        let d = a0.derivative();
        assert_eq!(d, q(&[(0, 1, 4), (-2, -1, 4)]));
        assert_eq!(d.eval(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(d.eval(&rat(-1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn reflect_examples() {
        let p = q(&[(-1, 1, 1), (0, 2, 1), (1, 1, 1)]);
        assert_eq!(p.reflect(), q(&[(-1, -1, 1), (0, 2, 1), (1, -1, 1)]));
        let even = q(&[(2, 1, 1), (-2, 1, 1)]);
        assert_eq!(even.reflect(), even);
        // m(z) + m(-z) = 2  =>  m(-z) = 2 - m(z)
        let m = q(&[(-3, -1, 16), (-1, 9, 16), (0, 1, 1), (1, 9, 16), (3, -1, 16)]);
        let two = LaurentPoly::constant(rat(2, 1));
        assert_eq!(m.reflect(), &two - &m);
    }

    #[test]
    fn symmetry_examples() {
        assert!(q(&[(-1, 1, 1), (0, 2, 1), (1, 1, 1)]).is_symmetric());
        assert!(!q(&[(1, 1, 1), (0, 2, 1)]).is_symmetric());
        assert!(LaurentPoly::<Rational>::zero().is_symmetric());
    }

    #[test]
    fn float_symmetry_uses_tolerance() {
        let p = LaurentPoly::new(-1, vec![0.5, 1.0, 0.5 + 1e-15]);
        assert!(p.is_symmetric());
        let p = LaurentPoly::new(-1, vec![0.5, 1.0, 0.5 + 1e-6]);
        assert!(!p.is_symmetric());
    }

    #[test]
    fn invert_mirrors_exponents() {
        let p = q(&[(-2, 1, 1), (3, 5, 1)]);
        assert_eq!(p.invert(), q(&[(2, 1, 1), (-3, 5, 1)]));
    }

    #[test]
    fn json_shape() {
        let p = q(&[(-1, 1, 4), (0, 1, 2), (1, 1, 4)]);
        let v = p.to_json();
        assert_eq!(v["lo"], -1);
        assert_eq!(v["coeffs"][0], "1/4");
        assert_eq!(v["coeffs"][1], "1/2");
        let back: LaurentPoly<Rational> = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let f: LaurentPoly<f64> = serde_json::from_str(r#"{"lo":-1,"coeffs":[0.25,0.5,0.25]}"#).unwrap();
        assert_eq!(f.coeff(0), 0.5);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
        (-4i64..4, prop::collection::vec((-9i64..10, 1i64..6), 0..6)).prop_map(|(lo, cs)| {
            LaurentPoly::new(lo, cs.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    fn arb_float_poly() -> impl Strategy<Value = LaurentPoly<f64>> {
        (-3i64..3, prop::collection::vec(-2.0f64..2.0, 1..6))
            .prop_map(|(lo, cs)| LaurentPoly::new(lo, cs))
    }

    proptest! {
        #[test]
        fn mul_commutes(p in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &r, &r * &p);
        }

        #[test]
        fn mul_associates(p in arb_poly(), r in arb_poly(), s in arb_poly()) {
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        }

        #[test]
        fn leibniz_rule(p in arb_poly(), r in arb_poly()) {
            let lhs = (&p * &r).derivative();
            let rhs = &(&p.derivative() * &r) + &(&p * &r.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reflect_is_involution(p in arb_poly()) {
            prop_assert_eq!(p.reflect().reflect(), p);
        }

        #[test]
        fn eval_is_multiplicative(
            p in arb_float_poly(),
            r in arb_float_poly(),
            re in 0.3f64..1.5,
            arg in 0.0f64..std::f64::consts::TAU,
        ) {
            let z = Complex64::from_polar(re, arg);
            let lhs = (&p * &r).eval_complex(z).unwrap();
            let rhs = p.eval_complex(z).unwrap() * r.eval_complex(z).unwrap();
            let scale = 1.0 + lhs.norm().max(rhs.norm());
            prop_assert!((lhs - rhs).norm() <= 1e-10 * scale);
        }
    }
}
