//! Exact arithmetic in the cyclotomic field `Q(ζ_q)`, `ζ_q = e^{2πi/q}`.
//!
//! Elements are stored as their canonical remainder modulo `Φ_q`, a rational
//! vector of length `φ(q)`. Two elements of the same field are equal exactly
//! when their coefficient vectors are equal, so the zero test is a scan for a
//! nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::poly::{cyclotomic, reduce_integer_in_place, reduce_rational_in_place, IntPoly};
use crate::error::Result;

#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicContext {
    q: u64,
    phi: IntPoly,
}

impl CyclotomicContext {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let phi = cyclotomic(q)?;
        Ok(Arc::new(CyclotomicContext { q, phi }))
    }

    /// The conductor `q`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    /// Field degree `φ(q)`.
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        CyclotomicNumber {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn from_integer(ctx: &Arc<CyclotomicContext>, n: i64) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigRational::from_integer(n.into());
        z
    }

    pub fn from_rational(ctx: &Arc<CyclotomicContext>, r: BigRational) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = r;
        z
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Self::from_integer(ctx, 1)
    }

    /// `ζ_q^e` for any integer exponent.
    pub fn root_power(ctx: &Arc<CyclotomicContext>, e: i64) -> Self {
        let q = ctx.q as i64;
        let mut counts = vec![0i64; ctx.q as usize];
        counts[e.rem_euclid(q) as usize] = 1;
        Self::from_exponent_counts(ctx, &counts)
    }

    /// `Σ_e counts[e] ζ_q^e` for a count vector of length `q`.
    pub fn from_exponent_counts(ctx: &Arc<CyclotomicContext>, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), ctx.q as usize);
        let mut ints: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        reduce_integer_in_place(&mut ints, &ctx.phi);
        CyclotomicNumber {
            ctx: ctx.clone(),
            coeffs: ints.into_iter().map(BigRational::from_integer).collect(),
        }
    }

    /// Reduce an arbitrary rational polynomial in `ζ_q` to canonical form.
    pub fn from_poly(ctx: &Arc<CyclotomicContext>, poly: &[BigRational]) -> Self {
        let mut coeffs = poly.to_vec();
        if coeffs.len() < ctx.degree() {
            coeffs.resize(ctx.degree(), BigRational::zero());
        }
        reduce_rational_in_place(&mut coeffs, &ctx.phi);
        CyclotomicNumber { ctx: ctx.clone(), coeffs }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.q
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Re-express the element in `Q(ζ_target)`; `q` must divide `target`.
    pub fn lift(&self, target: &Arc<CyclotomicContext>) -> Self {
        if target.q == self.ctx.q {
            return self.clone();
        }
        assert!(
            target.q % self.ctx.q == 0,
            "cannot lift Q(ζ_{}) into Q(ζ_{})",
            self.ctx.q,
            target.q
        );
        let step = (target.q / self.ctx.q) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, &poly)
    }

    /// Complex conjugate: `ζ^i ↦ ζ^{-i}`.
    pub fn conj(&self) -> Self {
        let q = self.ctx.q as usize;
        let mut poly = vec![BigRational::zero(); q.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(q - i) % q] += c;
        }
        Self::from_poly(&self.ctx, &poly)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerical embedding via `ζ_q ↦ e^{2πi/q}`.
    pub fn to_complex(&self) -> Complex64 {
        let q = self.ctx.q as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * (i as f64) / q;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    fn align<'a>(
        a: &'a CyclotomicNumber,
        b: &'a CyclotomicNumber,
    ) -> (std::borrow::Cow<'a, CyclotomicNumber>, std::borrow::Cow<'a, CyclotomicNumber>) {
        use std::borrow::Cow;
        if a.ctx.q == b.ctx.q {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = a.ctx.q.lcm(&b.ctx.q);
        let ctx = if l == a.ctx.q {
            a.ctx.clone()
        } else if l == b.ctx.q {
            b.ctx.clone()
        } else {
            CyclotomicContext::new(l).expect("lcm of conductors is positive")
        };
        (Cow::Owned(a.lift(&ctx)), Cow::Owned(b.lift(&ctx)))
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::align(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::align(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber { ctx: a.ctx.clone(), coeffs }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::align(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicNumber { ctx: a.ctx.clone(), coeffs }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::align(self, rhs);
        let n = a.coeffs.len();
        if n == 0 {
            return a.into_owned();
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                prod[i + j] += x * y;
            }
        }
        reduce_rational_in_place(&mut prod, &a.ctx.phi);
        CyclotomicNumber { ctx: a.ctx.clone(), coeffs: prod }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Renders as a polynomial in `w = e^{2πi/q}`, e.g. `1 + w` or `-2*w^3`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{mag}*w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{mag}*w^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Canonical remainder of `poly` modulo `Φ_q`; it is zero exactly when
/// `poly(e^{2πi/q}) = 0`.
pub fn reduce_mod_cyclotomic(poly: &[BigRational], q: u64) -> Result<CyclotomicNumber> {
    let ctx = CyclotomicContext::new(q)?;
    Ok(CyclotomicNumber::from_poly(&ctx, poly))
}
