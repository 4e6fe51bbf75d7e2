//! Power-sum recurrences and the companion matrix that drives them.
//!
//! For distinct `z_0, …, z_{d-1}` the power sums `f_k = Σ_j z_j^k` satisfy
//! `f_{k+d} = Σ_i c_i f_{k+i}` where `x^d - Σ_i c_i x^i = Π_j (x - z_j)`.
//! Writing `ν_k = (f_k, …, f_{k+d-1})`, the companion matrix `U` (ones on the
//! superdiagonal, `c` in the bottom row) gives `U ν_k = ν_{k+1}`.

use std::fmt;

use num::complex::Complex64;

use super::cyclotomic::CyclotomicNumber;
use super::symbolic::SymbolicValue;
use crate::error::{Error, Result};

/// Commutative ring operations shared by the exact, symbolic and float value
/// domains.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact domains ignore `tol`.
    fn is_zero_within(&self, tol: f64) -> bool;
}

impl Scalar for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.context())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.context())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for SymbolicValue {
    fn zero_like(&self) -> Self {
        SymbolicValue::zero(self.context())
    }
    fn one_like(&self) -> Self {
        SymbolicValue::one(self.context())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_within(&self, tol: f64) -> bool {
        self.norm() < tol
    }
}

/// Bottom row `c_0, …, c_{d-1}` of the companion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> RecurrenceSpec<T> {
    /// Expand `Π_j (x - z_j)` and negate the lower coefficients.
    ///
    /// Fails with a degenerate-input error when two roots coincide (within
    /// `tol` for the float domain).
    pub fn from_roots(roots: &[T], tol: f64) -> Result<Self> {
        let first = roots
            .first()
            .ok_or_else(|| Error::InvalidInput("recurrence needs at least one root".into()))?;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].sub_ref(&roots[j]).is_zero_within(tol) {
                    return Err(Error::DegenerateInput(format!(
                        "roots z_{i} and z_{j} coincide"
                    )));
                }
            }
        }
        // monic product, lowest degree first
        let mut prod = vec![first.one_like()];
        for z in roots {
            let mut next = vec![z.zero_like(); prod.len() + 1];
            for (i, p) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add_ref(p);
                next[i] = next[i].sub_ref(&p.mul_ref(z));
            }
            prod = next;
        }
        prod.pop();
        Ok(RecurrenceSpec { coeffs: prod.iter().map(Scalar::neg_ref).collect() })
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("recurrence order must be positive".into()));
        }
        Ok(RecurrenceSpec { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// One application of `U`: shift up and append `Σ c_i ν_i`.
    pub fn step(&self, nu: &[T]) -> Vec<T> {
        let next = self
            .coeffs
            .iter()
            .zip(nu)
            .fold(nu[0].zero_like(), |acc, (c, v)| acc.add_ref(&c.mul_ref(v)));
        let mut out: Vec<T> = nu[1..].to_vec();
        out.push(next);
        out
    }

    /// The companion matrix `U` as rows.
    pub fn companion_matrix(&self) -> Vec<Vec<T>> {
        let d = self.order();
        let zero = self.coeffs[0].zero_like();
        let one = self.coeffs[0].one_like();
        let mut rows = vec![vec![zero; d]; d];
        for (i, row) in rows.iter_mut().enumerate().take(d - 1) {
            row[i + 1] = one.clone();
        }
        rows[d - 1] = self.coeffs.clone();
        rows
    }
}

fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let zero = a[0][0].zero_like();
    let mut out = vec![vec![zero; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero_within(0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add_ref(&a[i][k].mul_ref(&b[k][j]));
            }
        }
    }
    out
}

fn mat_vec<T: Scalar>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(v[0].zero_like(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
        })
        .collect()
}

/// `U^n ν` by binary exponentiation of `U`.
pub fn companion_power_apply<T: Scalar>(
    spec: &RecurrenceSpec<T>,
    nu: &[T],
    n: u64,
) -> Result<Vec<T>> {
    if nu.len() != spec.order() {
        return Err(Error::InvalidInput(format!(
            "state vector has length {}, recurrence order is {}",
            nu.len(),
            spec.order()
        )));
    }
    if n == 0 {
        return Ok(nu.to_vec());
    }
    let mut base = spec.companion_matrix();
    let mut acc: Option<Vec<Vec<T>>> = None;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(m) => mat_mul(&m, &base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    Ok(mat_vec(&acc.expect("n > 0"), nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::CyclotomicContext;

    #[test]
    fn roots_of_x_squared_minus_one() {
        let ctx = CyclotomicContext::new(2).unwrap();
        let roots = vec![
            CyclotomicNumber::root_power(&ctx, 0),
            CyclotomicNumber::root_power(&ctx, 1),
        ];
        let spec = RecurrenceSpec::from_roots(&roots, 0.0).unwrap();
        assert_eq!(spec.coeffs()[0], CyclotomicNumber::from_integer(&ctx, 1));
        assert!(spec.coeffs()[1].is_zero());
    }

    #[test]
    fn duplicate_roots_are_degenerate() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let z = CyclotomicNumber::root_power(&ctx, 1);
        let err = RecurrenceSpec::from_roots(&[z.clone(), z], 0.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateInput(_)));
        let f = Complex64::new(1.0, 0.0);
        assert!(RecurrenceSpec::from_roots(&[f, f + 1e-15], 1e-12).is_err());
    }

    #[test]
    fn binary_power_matches_repeated_steps() {
        let roots: Vec<Complex64> = [0.0, 0.17, 0.5, 0.71]
            .iter()
            .map(|t: &f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
            .collect();
        let spec = RecurrenceSpec::from_roots(&roots, 1e-12).unwrap();
        let nu: Vec<Complex64> = (0..4)
            .map(|k| roots.iter().map(|z| z.powi(k)).sum())
            .collect();
        let mut stepped = nu.clone();
        for _ in 0..37 {
            stepped = spec.step(&stepped);
        }
        let jumped = companion_power_apply(&spec, &nu, 37).unwrap();
        for (a, b) in stepped.iter().zip(&jumped) {
            assert!((a - b).norm() < 1e-9);
        }
        assert_eq!(companion_power_apply(&spec, &nu, 0).unwrap(), nu);
        assert!(companion_power_apply(&spec, &nu[..3], 2).is_err());
    }
}
