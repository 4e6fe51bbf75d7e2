//! Dense integer polynomials and the cyclotomic polynomials built from them.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor. Integer arithmetic stays
    /// exact because the divisor's leading coefficient is one.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::new(Vec::new()), IntPoly::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[top]);
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                rem[top - dd + i] -= &lead * c;
            }
            quot[top - dd] = lead;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// True when `divisor` (monic) divides `self` exactly.
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        self.div_rem_monic(divisor).1.is_zero()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim<T: Zero>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Cyclotomic polynomials `Φ_e` for every divisor `e` of `q`.
///
/// Built bottom-up: `Φ_e = (x^e - 1) / Π_{f | e, f < e} Φ_f`.
pub fn cyclotomic_family(q: u64) -> Result<BTreeMap<u64, IntPoly>> {
    if q == 0 {
        return Err(Error::Domain("cyclotomic polynomial order must be positive".into()));
    }
    let divs = divisors(q);
    let mut family: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for &e in &divs {
        let mut p = IntPoly::x_pow_minus_one(e as usize);
        for f in divisors(e).into_iter().filter(|&f| f < e) {
            let (quot, rem) = p.div_rem_monic(&family[&f]);
            debug_assert!(rem.is_zero());
            p = quot;
        }
        family.insert(e, p);
    }
    Ok(family)
}

/// The `q`-th cyclotomic polynomial `Φ_q`.
pub fn cyclotomic(q: u64) -> Result<IntPoly> {
    let mut family = cyclotomic_family(q)?;
    Ok(family.remove(&q).expect("q divides itself"))
}

/// Reduce a rational polynomial modulo a monic integer polynomial in place,
/// leaving a vector of exactly `deg(modulus)` coefficients.
pub(crate) fn reduce_rational_in_place(coeffs: &mut Vec<BigRational>, modulus: &IntPoly) {
    let dd = modulus.coeffs.len() - 1;
    for top in (dd..coeffs.len()).rev() {
        let lead = std::mem::replace(&mut coeffs[top], BigRational::zero());
        if lead.is_zero() {
            continue;
        }
        for (i, c) in modulus.coeffs[..dd].iter().enumerate() {
            if !c.is_zero() {
                coeffs[top - dd + i] -= &lead * BigRational::from_integer(c.clone());
            }
        }
    }
    coeffs.resize(dd, BigRational::zero());
}

/// Integer variant of [`reduce_rational_in_place`].
pub(crate) fn reduce_integer_in_place(coeffs: &mut Vec<BigInt>, modulus: &IntPoly) {
    let dd = modulus.coeffs.len() - 1;
    for top in (dd..coeffs.len()).rev() {
        let lead = std::mem::take(&mut coeffs[top]);
        if lead.is_zero() {
            continue;
        }
        for (i, c) in modulus.coeffs[..dd].iter().enumerate() {
            if !c.is_zero() {
                coeffs[top - dd + i] -= &lead * c;
            }
        }
    }
    coeffs.resize(dd, BigInt::zero());
}
