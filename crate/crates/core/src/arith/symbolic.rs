//! Laurent polynomials in formal unit generators with cyclotomic coefficients.
//!
//! A generator `u_g` stands for `e^{2πi β_g / D_g}` where `β_g` is an
//! irrational frequency and `D_g` a scaling chosen by the caller so that all
//! exponents are integers. Generators are treated as algebraically independent
//! of each other and of every root of unity, so a value is zero exactly when
//! every monomial coefficient is zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::cyclotomic::{CyclotomicContext, CyclotomicNumber};

/// Generator name -> exponent. Zero exponents are never stored.
pub type Monomial = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicValue {
    ctx: Arc<CyclotomicContext>,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl SymbolicValue {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        SymbolicValue { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Self::constant(CyclotomicNumber::one(ctx))
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        Self::term(Monomial::new(), c)
    }

    pub fn term(monomial: Monomial, coeff: CyclotomicNumber) -> Self {
        let ctx = coeff.context().clone();
        let mut v = SymbolicValue { ctx, terms: BTreeMap::new() };
        v.accumulate(monomial, coeff);
        v
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CyclotomicNumber> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * monomial`, dropping the term if it cancels.
    pub fn accumulate(&mut self, mut monomial: Monomial, coeff: CyclotomicNumber) {
        monomial.retain(|_, e| *e != 0);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&monomial);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    /// The cyclotomic value when no generator appears.
    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero(&self.ctx)),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }
}

fn monomial_product(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (g, e) in b {
        *out.entry(g.clone()).or_insert(0) += e;
    }
    out.retain(|_, e| *e != 0);
    out
}

impl<'a> Add<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn add(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn sub(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn mul(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = SymbolicValue::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(monomial_product(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        SymbolicValue {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            write!(f, "({c})")?;
            for (g, e) in m {
                if *e == 1 {
                    write!(f, "*u_{g}")?;
                } else {
                    write!(f, "*u_{g}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
