//! Clusters `Ω = A + [0,1]` with `A ⊂ ℤ_{≥0}`, `0 ∈ A`.

use std::collections::BTreeSet;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Zero};

use crate::arith::poly::{cyclotomic, totient, IntPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster {
    elements: Vec<i64>,
}

/// `(A - A) \ {0}`, sorted and symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    values: Vec<i64>,
}

impl DifferenceSet {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn contains(&self, k: i64) -> bool {
        self.values.binary_search(&k).is_ok()
    }

    pub fn positive(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied().filter(|&k| k > 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrequencyClass {
    RationalZero,
    NotAZero,
}

impl Cluster {
    /// Sorts the input. Duplicates, negative entries and a missing `0` are
    /// rejected rather than normalized away.
    pub fn new(ints: &[i64]) -> Result<Self> {
        let mut elements = ints.to_vec();
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("cluster elements must be distinct".into()));
        }
        if elements.first() != Some(&0) {
            return Err(Error::InvalidInput(
                "cluster must contain 0 and no negative elements".into(),
            ));
        }
        Ok(Cluster { elements })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    /// `d = |A|`
    pub fn d(&self) -> usize {
        self.elements.len()
    }

    pub fn max(&self) -> i64 {
        *self.elements.last().expect("cluster is non-empty")
    }

    pub fn difference_set(&self) -> DifferenceSet {
        let set: BTreeSet<i64> = self
            .elements
            .iter()
            .flat_map(|a| self.elements.iter().map(move |b| a - b))
            .filter(|&k| k != 0)
            .collect();
        DifferenceSet { values: set.into_iter().collect() }
    }

    /// `#{(a, a') ∈ A×A : a - a' = k}`
    pub fn autocorrelation(&self, k: i64) -> u64 {
        self.elements
            .iter()
            .filter(|&&a| self.elements.binary_search(&(a - k)).is_ok())
            .count() as u64
    }

    /// `Σ_{a ∈ A} x^a`
    pub fn mask_polynomial(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.max() as usize + 1];
        for &a in &self.elements {
            coeffs[a as usize] = BigInt::one();
        }
        IntPoly::new(coeffs)
    }

    /// Conductors `q ≥ 2` with `Φ_q` dividing the mask polynomial.
    ///
    /// `Φ_q | mask` forces `φ(q) ≤ max(A)`, and `φ(q) ≥ √(q/2)` bounds the scan
    /// by `q ≤ 2·max(A)²`.
    pub fn cyclotomic_divisors(&self) -> Vec<u64> {
        let deg = self.max() as u64;
        if deg == 0 {
            return Vec::new();
        }
        let mask = self.mask_polynomial();
        (2..=2 * deg * deg)
            .filter(|&q| totient(q) <= deg)
            .filter(|&q| mask.divisible_by(&cyclotomic(q).expect("q ≥ 2")))
            .collect()
    }

    /// All rational `λ ∈ (0,1)` with `Σ_a e^{2πiaλ} = 0`, ascending.
    pub fn rational_mask_zeros(&self) -> Vec<BigRational> {
        let mut zeros: Vec<BigRational> = self
            .cyclotomic_divisors()
            .into_iter()
            .flat_map(|q| {
                (1..q)
                    .filter(move |p| p.gcd(&q) == 1)
                    .map(move |p| BigRational::new(p.into(), q.into()))
            })
            .collect();
        zeros.sort();
        zeros
    }

    /// Rational candidates are decided by cyclotomic divisibility; irrational
    /// zeros are transcendental and are not handled here.
    pub fn classify_frequency(&self, lam: &BigRational) -> Result<FrequencyClass> {
        if *lam <= BigRational::zero() || *lam >= BigRational::one() {
            return Err(Error::InvalidInput(format!("frequency {lam} is not in (0, 1)")));
        }
        let q = lam
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("denominator of {lam} too large")))?;
        Ok(if self.mask_polynomial().divisible_by(&cyclotomic(q)?) {
            FrequencyClass::RationalZero
        } else {
            FrequencyClass::NotAZero
        })
    }

    /// Łaba's sufficient condition `M < 5d/2` with `M = max(A) + 1`.
    pub fn laba_rationality(&self) -> bool {
        2 * (self.max() + 1) < 5 * self.d() as i64
    }
}
