//! Values of the exponential sum `δ̂_Γ(k) = Σ_j z_j^k`, `z_j = e^{2πiγ_j}`,
//! in each of the three value domains.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, ToPrimitive};

use super::cyclotomic::{CyclotomicContext, CyclotomicNumber};
use super::recurrence::{RecurrenceSpec, Scalar};
use super::symbolic::{Monomial, SymbolicValue};
use crate::error::{Error, Result};
use crate::spectrum::{Gamma, Mode};

/// Largest conductor accepted for exact evaluation.
pub const MAX_CONDUCTOR: u64 = 1 << 16;

/// Default float zero tolerance per unit-modulus term.
pub const FLOAT_TOL_PER_TERM: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum ExpSumValue {
    Exact(CyclotomicNumber),
    Symbolic(SymbolicValue),
    Float(Complex64),
}

impl ExpSumValue {
    /// Exact domains ignore `tol`.
    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            ExpSumValue::Exact(v) => v.is_zero(),
            ExpSumValue::Symbolic(v) => v.is_zero(),
            ExpSumValue::Float(v) => v.norm() < tol,
        }
    }

    /// Numeric value; symbolic values have none.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            ExpSumValue::Exact(v) => Some(v.to_complex()),
            ExpSumValue::Symbolic(v) => v.as_constant().map(|c| c.to_complex()),
            ExpSumValue::Float(v) => Some(*v),
        }
    }
}

impl fmt::Display for ExpSumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpSumValue::Exact(v) => write!(f, "{v}"),
            ExpSumValue::Symbolic(v) => write!(f, "{v}"),
            ExpSumValue::Float(v) => write!(f, "{:.12e}{:+.12e}i", v.re, v.im),
        }
    }
}

/// Power sums of a fixed root multiset in one value domain.
pub trait PowerSums: Sync {
    type Value: Scalar;

    fn len(&self) -> usize;

    /// The roots `z_j`.
    fn roots(&self) -> Vec<Self::Value>;

    /// `f_k = Σ_j z_j^k`; negative `k` allowed.
    fn power_sum(&self, k: i64) -> Self::Value;

    /// Zero tolerance for this domain (0 for exact domains).
    fn tolerance(&self) -> f64;

    fn state_vector(&self, k: i64) -> Vec<Self::Value> {
        (0..self.len() as i64).map(|i| self.power_sum(k + i)).collect()
    }

    fn recurrence(&self) -> Result<RecurrenceSpec<Self::Value>> {
        RecurrenceSpec::from_roots(&self.roots(), self.tolerance().max(1e-12))
    }
}

fn checked_conductor(den: &BigInt) -> Result<u64> {
    match den.to_u64() {
        Some(q) if q <= MAX_CONDUCTOR => Ok(q),
        _ => Err(Error::InvalidInput(format!(
            "common denominator {den} exceeds the exact-evaluation limit {MAX_CONDUCTOR}"
        ))),
    }
}

fn scaled_numerator(r: &BigRational, q: u64) -> i64 {
    let scaled = r * BigRational::from_integer(q.into());
    debug_assert!(scaled.is_integer());
    scaled.to_integer().to_i64().expect("bounded by the conductor")
}

fn exponent(k: i64, n: i64, q: u64) -> usize {
    ((k as i128 * n as i128).rem_euclid(q as i128)) as usize
}

/// Rational Γ: `z_j = ζ_q^{n_j}` with `q` the common denominator.
#[derive(Clone, Debug)]
pub struct ExactSums {
    ctx: Arc<CyclotomicContext>,
    numerators: Vec<i64>,
}

impl ExactSums {
    pub fn new(entries: &[BigRational]) -> Result<Self> {
        let den = entries
            .iter()
            .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let q = checked_conductor(&den)?;
        let ctx = CyclotomicContext::new(q)?;
        let numerators = entries.iter().map(|r| scaled_numerator(r, q)).collect();
        Ok(ExactSums { ctx, numerators })
    }

    /// Roots `ζ_q^{n_j}` in a caller-supplied field; `q` need not be minimal.
    pub fn from_numerators(ctx: Arc<CyclotomicContext>, numerators: Vec<i64>) -> Self {
        ExactSums { ctx, numerators }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    /// Numerators `n_j` with `γ_j = n_j / q`.
    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }
}

impl PowerSums for ExactSums {
    type Value = CyclotomicNumber;

    fn len(&self) -> usize {
        self.numerators.len()
    }

    fn roots(&self) -> Vec<CyclotomicNumber> {
        self.numerators
            .iter()
            .map(|&n| CyclotomicNumber::root_power(&self.ctx, n))
            .collect()
    }

    fn power_sum(&self, k: i64) -> CyclotomicNumber {
        let q = self.ctx.q();
        let mut counts = vec![0i64; q as usize];
        for &n in &self.numerators {
            counts[exponent(k, n, q)] += 1;
        }
        CyclotomicNumber::from_exponent_counts(&self.ctx, &counts)
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// Mixed Γ: `z_j = ζ_q^{n_j} Π_g u_g^{e_{jg}}` with `u_g = e^{2πi β_g / D_g}`
/// and `D_g` the lcm of the denominators of `β_g`'s coefficients.
#[derive(Clone, Debug)]
pub struct SymbolicSums {
    ctx: Arc<CyclotomicContext>,
    numerators: Vec<i64>,
    monomials: Vec<Monomial>,
    scales: BTreeMap<String, BigInt>,
}

impl SymbolicSums {
    pub fn new(gamma: &Gamma) -> Result<Self> {
        let values = gamma
            .values()
            .ok_or_else(|| Error::UnsupportedMode("float Γ has no symbolic form".into()))?;
        let den = gamma.common_denominator().expect("non-float Γ");
        let q = checked_conductor(&den)?;
        let ctx = CyclotomicContext::new(q)?;
        let mut scales: BTreeMap<String, BigInt> = BTreeMap::new();
        for v in values {
            for (g, c) in &v.gens {
                let s = scales.entry(g.clone()).or_insert_with(|| BigInt::from(1));
                *s = s.lcm(c.denom());
            }
        }
        let mut monomials = Vec::with_capacity(values.len());
        for v in values {
            let mut m = Monomial::new();
            for (g, c) in &v.gens {
                let e = c * BigRational::from_integer(scales[g].clone());
                let e = e.to_integer().to_i64().ok_or_else(|| {
                    Error::InvalidInput(format!("generator coefficient {c} too large"))
                })?;
                m.insert(g.clone(), e);
            }
            monomials.push(m);
        }
        let numerators = values.iter().map(|v| scaled_numerator(&v.rational, q)).collect();
        Ok(SymbolicSums { ctx, numerators, monomials, scales })
    }

    /// Generator scalings `D_g`.
    pub fn scales(&self) -> &BTreeMap<String, BigInt> {
        &self.scales
    }
}

impl PowerSums for SymbolicSums {
    type Value = SymbolicValue;

    fn len(&self) -> usize {
        self.numerators.len()
    }

    fn roots(&self) -> Vec<SymbolicValue> {
        self.numerators
            .iter()
            .zip(&self.monomials)
            .map(|(&n, m)| SymbolicValue::term(m.clone(), CyclotomicNumber::root_power(&self.ctx, n)))
            .collect()
    }

    fn power_sum(&self, k: i64) -> SymbolicValue {
        let q = self.ctx.q();
        let mut groups: BTreeMap<Monomial, Vec<i64>> = BTreeMap::new();
        for (&n, m) in self.numerators.iter().zip(&self.monomials) {
            let mk: Monomial = m.iter().map(|(g, e)| (g.clone(), e * k)).filter(|(_, e)| *e != 0).collect();
            let counts = groups.entry(mk).or_insert_with(|| vec![0; q as usize]);
            counts[exponent(k, n, q)] += 1;
        }
        let mut out = SymbolicValue::zero(&self.ctx);
        for (m, counts) in groups {
            out.accumulate(m, CyclotomicNumber::from_exponent_counts(&self.ctx, &counts));
        }
        out
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Debug)]
pub struct FloatSums {
    freqs: Vec<f64>,
    tol: f64,
}

impl FloatSums {
    pub fn new(freqs: &[f64], tol: f64) -> Self {
        FloatSums { freqs: freqs.to_vec(), tol }
    }
}

fn unit(theta_turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta_turns)
}

impl PowerSums for FloatSums {
    type Value = Complex64;

    fn len(&self) -> usize {
        self.freqs.len()
    }

    fn roots(&self) -> Vec<Complex64> {
        self.freqs.iter().map(|&g| unit(g)).collect()
    }

    fn power_sum(&self, k: i64) -> Complex64 {
        self.freqs
            .iter()
            .map(|&g| unit((g * k as f64).rem_euclid(1.0)))
            .sum()
    }

    fn tolerance(&self) -> f64 {
        self.tol
    }
}

/// Mode-dispatching evaluator built once per Γ.
#[derive(Clone, Debug)]
pub enum Evaluator {
    Exact(ExactSums),
    Symbolic(SymbolicSums),
    Float(FloatSums),
}

impl Evaluator {
    /// Float mode uses the default tolerance `1e-9·d`.
    pub fn new(gamma: &Gamma) -> Result<Self> {
        Self::with_tolerance(gamma, FLOAT_TOL_PER_TERM * gamma.len() as f64)
    }

    pub fn with_tolerance(gamma: &Gamma, tol: f64) -> Result<Self> {
        Ok(match gamma.mode() {
            Mode::Exact => Evaluator::Exact(ExactSums::new(&gamma.rationals().expect("exact"))?),
            Mode::Symbolic => Evaluator::Symbolic(SymbolicSums::new(gamma)?),
            Mode::Float => Evaluator::Float(FloatSums::new(gamma.floats().expect("float"), tol)),
        })
    }

    pub fn value(&self, k: i64) -> ExpSumValue {
        match self {
            Evaluator::Exact(e) => ExpSumValue::Exact(e.power_sum(k)),
            Evaluator::Symbolic(e) => ExpSumValue::Symbolic(e.power_sum(k)),
            Evaluator::Float(e) => ExpSumValue::Float(e.power_sum(k)),
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Evaluator::Float(e) => e.tol,
            _ => 0.0,
        }
    }

    pub fn is_zero_at(&self, k: i64) -> bool {
        self.value(k).is_zero(self.tolerance())
    }
}

/// `δ̂_Γ(k)` in Γ's own value domain.
pub fn exp_sum_value(gamma: &Gamma, k: i64) -> Result<ExpSumValue> {
    Ok(Evaluator::new(gamma)?.value(k))
}

/// `[f_lo, …, f_hi]`.
pub fn power_sum_sequence(gamma: &Gamma, lo: i64, hi: i64) -> Result<Vec<ExpSumValue>> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range {lo}..={hi}")));
    }
    let ev = Evaluator::new(gamma)?;
    Ok((lo..=hi).map(|k| ev.value(k)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recurrence {
    Exact(RecurrenceSpec<CyclotomicNumber>),
    Symbolic(RecurrenceSpec<SymbolicValue>),
    Float(RecurrenceSpec<Complex64>),
}

/// Newton–Girard recurrence coefficients for Γ's roots.
pub fn recurrence_coefficients(gamma: &Gamma) -> Result<Recurrence> {
    Ok(match Evaluator::new(gamma)? {
        Evaluator::Exact(e) => Recurrence::Exact(e.recurrence()?),
        Evaluator::Symbolic(e) => Recurrence::Symbolic(e.recurrence()?),
        Evaluator::Float(e) => Recurrence::Float(e.recurrence()?),
    })
}
