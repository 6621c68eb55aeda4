//! Exact exponential-generating-function computations over the rationals.
//!
//! The two counting series:
//!
//! * labeled semiorders (= chambers of the line discriminant complement):
//!   `G(x) = C(1 - e^{-x})` with `C(x) = (1 - sqrt(1 - 4x)) / (2x)` the
//!   Catalan series;
//! * labeled unit interval graphs: `Lambda(x) = exp(Gamma(x)) - 1` with
//!   `Gamma(x) = (1 + 2z)/4 - sqrt((1 - 3z)/(1 + z))/4`, `z = e^x - 1`.
//!
//! Everything is carried out with exact big rationals; floating point only
//! enters at the asymptotics boundary.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("composition requires inner series with zero constant term")]
    InnerConstantNonzero,
    #[error("exp requires argument with zero constant term")]
    ExpConstantNonzero,
    #[error("division by series with zero constant term")]
    DivideByZeroConstant,
    #[error("sqrt of series whose leading coefficient is not a positive rational square")]
    NonSquareLeading,
    #[error("coefficient {n} requested beyond truncation order {order}")]
    OrderExceeded { n: usize, order: usize },
    #[error("n! [x^n] of the series is not an integer (denominator {denom})")]
    NonIntegerCount { denom: String },
}

/// Truncated power series `sum c_k x^k`, `0 <= k <= order`, exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Result<&BigRational, SeriesError> {
        self.coeffs.get(k).ok_or(SeriesError::OrderExceeded {
            n: k,
            order: self.order(),
        })
    }

    /// `n! * [x^n]`, demanded to be an exact integer.
    pub fn egf_count(&self, n: usize) -> Result<BigInt, SeriesError> {
        let c = self.coeff(n)?;
        let mut factorial = BigInt::one();
        for k in 2..=n {
            factorial *= BigInt::from(k);
        }
        let scaled = c * BigRational::from_integer(factorial);
        if !scaled.denom().is_one() {
            return Err(SeriesError::NonIntegerCount {
                denom: scaled.denom().to_string(),
            });
        }
        Ok(scaled.to_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_coeffs(
            (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_coeffs(
            (0..=order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.coeffs[0].is_zero() {
            return Err(SeriesError::DivideByZeroConstant);
        }
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for (q, b) in out[..k].iter().zip(other.coeffs[1..=k].iter().rev()) {
                acc -= q * b;
            }
            out[k] = acc / &other.coeffs[0];
        }
        Ok(Self::from_coeffs(out))
    }

    /// `self(inner)`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        let order = self.order().min(inner.order());
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `exp(self)`; requires zero constant term. Uses the recurrence
    /// `k g_k = sum_{j=1..k} j f_j g_{k-j}` for `g = exp(f)`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpConstantNonzero);
        }
        let order = self.order();
        let mut g = vec![BigRational::zero(); order + 1];
        g[0] = BigRational::one();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += big(j as i64) * &self.coeffs[j] * &g[k - j];
                }
            }
            g[k] = acc / big(k as i64);
        }
        Ok(Self::from_coeffs(g))
    }

    /// Series square root by Newton iteration `y <- (y + s/y)/2`, seeded with
    /// the exact square root of the constant term.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if !c0.is_positive() {
            return Err(SeriesError::NonSquareLeading);
        }
        let root = |x: &BigInt| -> Option<BigInt> {
            if x.sign() == Sign::Minus {
                return None;
            }
            let r = x.sqrt();
            (&r * &r == *x).then_some(r)
        };
        let (nr, dr) = match (root(c0.numer()), root(c0.denom())) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(SeriesError::NonSquareLeading),
        };
        let order = self.order();
        let mut y = Self::constant(BigRational::new(nr, dr), order);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // Quadratic convergence: ceil(log2(order + 1)) + 1 rounds suffice.
        let rounds = usize::BITS - order.leading_zeros() + 1;
        for _ in 0..rounds {
            y = y.add(&self.div(&y)?).scale(&half);
        }
        debug_assert_eq!(y.mul(&y), self.clone());
        Ok(y)
    }
}

/// `e^x - 1` to the given order.
pub fn exp_minus_one(order: usize) -> RationalSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut factorial = BigInt::one();
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        factorial *= BigInt::from(k);
        *c = BigRational::new(BigInt::one(), factorial.clone());
    }
    RationalSeries::from_coeffs(coeffs)
}

/// `1 - e^{-x}` to the given order.
pub fn one_minus_exp_neg(order: usize) -> RationalSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut factorial = BigInt::one();
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        factorial *= BigInt::from(k);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        *c = BigRational::new(BigInt::from(sign), factorial.clone());
    }
    RationalSeries::from_coeffs(coeffs)
}

/// Catalan generating function `C(x) = (1 - sqrt(1 - 4x)) / (2x)`.
pub fn catalan_series(order: usize) -> Result<RationalSeries, SeriesError> {
    // Work one order higher so the division by 2x lands on `order`.
    let inner = order + 1;
    let mut one_minus_4x = RationalSeries::constant(BigRational::one(), inner);
    one_minus_4x.coeffs[1] = big(-4);
    let s = one_minus_4x.sqrt()?;
    let numerator = RationalSeries::constant(BigRational::one(), inner).sub(&s);
    debug_assert!(numerator.coeffs[0].is_zero());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(RationalSeries::from_coeffs(
        (1..=inner).map(|k| &numerator.coeffs[k] * &half).collect(),
    ))
}

/// EGF of labeled semiorders, `C(1 - e^{-x})`.
pub fn semiorder_series(order: usize) -> Result<RationalSeries, SeriesError> {
    catalan_series(order)?.compose(&one_minus_exp_neg(order))
}

/// Number of labeled semiorders of `[n]`, via `n! [x^n] C(1 - e^{-x})`.
pub fn semiorder_count(n: usize, order: usize) -> Result<BigInt, SeriesError> {
    if n > order {
        return Err(SeriesError::OrderExceeded { n, order });
    }
    semiorder_series(order)?.egf_count(n)
}

/// EGF of labeled unit interval graphs, `exp(Gamma(x)) - 1` with
/// `Gamma(x) = (1 + 2z)/4 - sqrt((1 - 3z)/(1 + z))/4`, `z = e^x - 1`.
pub fn uig_series(order: usize) -> Result<RationalSeries, SeriesError> {
    let z = exp_minus_one(order);
    let one = RationalSeries::constant(BigRational::one(), order);
    let ratio = one.sub(&z.scale(&big(3))).div(&one.add(&z))?;
    let s = ratio.sqrt()?;
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let gamma = one.add(&z.scale(&big(2))).sub(&s).scale(&quarter);
    if !gamma.coeffs[0].is_zero() {
        return Err(SeriesError::ExpConstantNonzero);
    }
    Ok(gamma.exp()?.sub(&one))
}

/// Number of labeled unit interval graphs on `n` vertices.
pub fn uig_count(n: usize, order: usize) -> Result<BigInt, SeriesError> {
    if n > order {
        return Err(SeriesError::OrderExceeded { n, order });
    }
    uig_series(order)?.egf_count(n)
}

/// Natural log of the leading asymptotic term for labeled semiorder counts:
/// `(1/n) sqrt(6 log(4/3)) (n / (e log(4/3)))^n`.
pub fn semiorder_asymptotic_log(n: usize) -> f64 {
    let l = (4.0f64 / 3.0).ln();
    let n_f = n as f64;
    0.5 * (6.0 * l).ln() - n_f.ln() + n_f * (n_f.ln() - 1.0 - l.ln())
}

/// The leading asymptotic term itself; may overflow to infinity for large `n`.
pub fn semiorder_asymptotic(n: usize) -> f64 {
    semiorder_asymptotic_log(n).exp()
}

/// `8 e^{-1/12}`, the limiting ratio of semiorder counts to unit interval
/// graph counts.
pub fn ratio_constant() -> f64 {
    8.0 / (1.0f64 / 12.0).exp()
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().expect("fits in f64 range").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
}

/// One row of the asymptotics table.
#[derive(Debug, Clone)]
pub struct AsymptoticRow {
    pub n: usize,
    pub exact: BigInt,
    pub asymptotic_log: f64,
    /// exact / asymptotic
    pub ratio: f64,
}

/// Exact counts next to the closed-form asymptotic, `n = 1..=order`.
pub fn asymptotic_table(order: usize) -> Result<Vec<AsymptoticRow>, SeriesError> {
    let series = semiorder_series(order)?;
    (1..=order)
        .map(|n| {
            let exact = series.egf_count(n)?;
            let asymptotic_log = semiorder_asymptotic_log(n);
            let ratio = (ln_big(&exact) - asymptotic_log).exp();
            Ok(AsymptoticRow {
                n,
                exact,
                asymptotic_log,
                ratio,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_oracle(n: usize) -> BigInt {
        // C_0 = 1, C_{k+1} = sum_i C_i C_{k-i}
        let mut c = vec![BigInt::one()];
        for k in 0..n {
            let next = (0..=k).map(|i| &c[i] * &c[k - i]).sum();
            c.push(next);
        }
        c[n].clone()
    }

    #[test]
    fn catalan_coefficients() {
        let c = catalan_series(8).unwrap();
        let got: Vec<BigInt> = (0..=3).map(|k| c.coeff(k).unwrap().to_integer()).collect();
        assert_eq!(got, vec![BigInt::from(1), BigInt::from(1), BigInt::from(2), BigInt::from(5)]);
        assert_eq!(c.coeff(5).unwrap().to_integer(), BigInt::from(42));
        for k in 0..=8 {
            assert_eq!(c.coeff(k).unwrap().to_integer(), catalan_oracle(k));
            assert!(c.coeff(k).unwrap().denom().is_one());
        }
    }

    #[test]
    fn semiorder_counts_small() {
        let expected: [u64; 6] = [1, 1, 3, 19, 183, 2371];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(semiorder_count(n, 8).unwrap(), BigInt::from(e), "n = {n}");
        }
    }

    #[test]
    fn uig_counts_small() {
        let expected: [u64; 5] = [1, 2, 8, 57, 637];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(uig_count(n + 1, 8).unwrap(), BigInt::from(e), "n = {}", n + 1);
        }
    }

    #[test]
    fn counts_are_integers_up_to_40() {
        let g = semiorder_series(40).unwrap();
        let l = uig_series(40).unwrap();
        for n in 0..=40 {
            assert!(g.egf_count(n).unwrap() >= BigInt::zero());
            assert!(l.egf_count(n).unwrap() >= BigInt::zero());
        }
    }

    #[test]
    fn truncation_order_is_immaterial() {
        let short = semiorder_series(12).unwrap();
        let long = semiorder_series(25).unwrap();
        for k in 0..=12 {
            assert_eq!(short.coeff(k).unwrap(), long.coeff(k).unwrap());
        }
        let short = uig_series(12).unwrap();
        let long = uig_series(25).unwrap();
        for k in 0..=12 {
            assert_eq!(short.coeff(k).unwrap(), long.coeff(k).unwrap());
        }
    }

    #[test]
    fn sqrt_rejects_non_square_leading() {
        let mut s = RationalSeries::constant(big(2), 4);
        assert_eq!(s.sqrt().unwrap_err(), SeriesError::NonSquareLeading);
        s.coeffs[0] = big(-1);
        assert_eq!(s.sqrt().unwrap_err(), SeriesError::NonSquareLeading);
    }

    #[test]
    fn compose_requires_zero_constant() {
        let outer = catalan_series(4).unwrap();
        let inner = RationalSeries::constant(BigRational::one(), 4);
        assert_eq!(
            outer.compose(&inner).unwrap_err(),
            SeriesError::InnerConstantNonzero
        );
    }

    #[test]
    fn asymptotic_improves_with_n() {
        let table = asymptotic_table(40).unwrap();
        let dev = |n: usize| (table[n - 1].ratio - 1.0).abs();
        assert!(dev(40) < dev(10));
        assert!(semiorder_asymptotic_log(10).is_finite());
        assert!(semiorder_asymptotic_log(10) > 0.0);
    }

    #[test]
    fn ratio_constant_value() {
        let r = ratio_constant();
        assert!((r - 7.3603).abs() < 1e-4);
        assert_eq!(r, 8.0 / (1.0f64 / 12.0).exp());
    }

    #[test]
    fn ln_big_matches_f64() {
        let x = BigInt::from(123456789u64);
        assert!((ln_big(&x) - 123456789f64.ln()).abs() < 1e-12);
        let huge = BigInt::from(7u32).pow(2000);
        assert!((ln_big(&huge) - 2000.0 * 7f64.ln()).abs() < 1e-6);
    }
}
