//! Taylor coefficients of `tan(x)` and Devlin's degrees for the rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{CoreError, Result};

/// Coefficients `c_0, .., c_{2M-1}` of `tan(x)` over a scalar type.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone + FromPrimitive> TangentSeries<T> {
    /// Solves `tan' = 1 + tan^2` term by term up to `x^{2m-1}`.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(CoreError::Domain("tangent series needs M >= 1".into()));
        }
        let top = 2 * m - 1;
        let mut a: Vec<T> = vec![T::zero(); top + 1];
        for k in 0..top {
            // (k+1) a_{k+1} = [k = 0] + sum_{i+j=k} a_i a_j
            let mut s = if k == 0 { T::one() } else { T::zero() };
            for i in 0..=k {
                s = s + a[i].clone() * a[k - i].clone();
            }
            let d = T::from_usize(k + 1).ok_or_else(|| CoreError::Internal("scalar conversion".into()))?;
            a[k + 1] = s / d;
        }
        Ok(TangentSeries { coeffs: a })
    }
}

impl<T> TangentSeries<T> {
    /// Largest index `2M - 1`.
    pub fn top(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_k`; zero for even `k`.
    pub fn coefficient(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    /// `c_1, c_3, .., c_{2M-1}`.
    pub fn odd(&self) -> impl Iterator<Item = &T> {
        self.coeffs.iter().skip(1).step_by(2)
    }

    /// Replaces `c_k`, for fault injection.
    pub fn with_coefficient(mut self, k: usize, value: T) -> Result<Self> {
        match self.coeffs.get_mut(k) {
            Some(c) => *c = value,
            None => return Err(CoreError::Domain(format!("no coefficient c_{k}"))),
        }
        Ok(self)
    }
}

impl TangentSeries<BigRational> {
    /// `(2n-1)! c_{2n-1}` as an exact rational.
    pub fn scaled(&self, n: usize) -> Result<BigRational> {
        if n == 0 {
            return Err(CoreError::Domain("n must be at least 1".into()));
        }
        let k = 2 * n - 1;
        let c = self
            .coefficient(k)
            .ok_or_else(|| CoreError::Domain(format!("series stops before c_{k}")))?;
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        Ok(c * BigRational::from_integer(fact))
    }

    /// `(2n-1)! c_{2n-1}`, which must be a nonnegative integer.
    pub fn devlin(&self, n: usize) -> Result<BigUint> {
        let v = self.scaled(n)?;
        if !v.is_integer() || v.is_negative() {
            return Err(CoreError::Internal(format!("(2n-1)! c_(2n-1) = {v} is not a natural number for n = {n}")));
        }
        Ok(v.to_integer().to_biguint().expect("nonnegative"))
    }
}

impl TangentSeries<f64> {
    /// `(2n-1)! c_{2n-1}` in floating point.
    pub fn scaled(&self, n: usize) -> Option<f64> {
        let k = 2 * n - 1;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coefficient(k).map(|c| c * fact)
    }
}

/// Exact `c_1, .., c_{2M-1}`.
pub fn tangent_coefficients(m: usize) -> Result<TangentSeries<BigRational>> {
    TangentSeries::new(m)
}

/// Big Ramsey degree of the `n`-element chain in the rationals.
pub fn devlin_degree(n: usize) -> Result<BigUint> {
    tangent_coefficients(n.max(1))?.devlin(n)
}

/// Whether `(2n-1)! c_{2n-1}` is a natural number for every `n <= m`.
pub fn integrality_holds(series: &TangentSeries<BigRational>, m: usize) -> bool {
    (1..=m).all(|n| series.devlin(n).is_ok())
}
