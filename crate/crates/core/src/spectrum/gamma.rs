use std::collections::BTreeMap;
use std::fmt;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Symbolic,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Symbolic => "symbolic",
            Mode::Float => "float",
        })
    }
}

/// A frequency `p/q + Σ_g r_g β_g` with formal irrational generators `β_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyValue {
    pub rational: BigRational,
    pub gens: BTreeMap<String, BigRational>,
}

impl FrequencyValue {
    pub fn rational(r: BigRational) -> Self {
        FrequencyValue { rational: r, gens: BTreeMap::new() }
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn with_gen(mut self, name: &str, coeff: BigRational) -> Self {
        self.gens.insert(name.to_string(), coeff);
        self.gens.retain(|_, c| !c.is_zero());
        self
    }

    pub fn is_rational(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn difference(&self, other: &FrequencyValue) -> FrequencyValue {
        let mut gens = self.gens.clone();
        for (g, c) in &other.gens {
            *gens.entry(g.clone()).or_insert_with(BigRational::zero) -= c;
        }
        gens.retain(|_, c| !c.is_zero());
        FrequencyValue { rational: &self.rational - &other.rational, gens }
    }
}

impl fmt::Display for FrequencyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (g, c) in &self.gens {
            if c.is_negative() {
                write!(f, " - {}*{g}", -c)?;
            } else {
                write!(f, " + {c}*{g}")?;
            }
        }
        Ok(())
    }
}

/// Fractional part, in `[0, 1)`.
pub(crate) fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact(Vec<FrequencyValue>),
    Symbolic(Vec<FrequencyValue>),
    Float(Vec<f64>),
}

/// A spectrum candidate `Γ = {γ_0 = 0, γ_1, …, γ_{d-1}} ⊂ [0,1)`; the
/// spectrum itself is the periodization `Γ + ℤ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma {
    entries: Entries,
}

impl Gamma {
    pub fn exact(entries: Vec<BigRational>) -> Result<Self> {
        let values: Vec<_> = entries.into_iter().map(FrequencyValue::rational).collect();
        check_algebraic(&values)?;
        Ok(Gamma { entries: Entries::Exact(values) })
    }

    /// Convenience constructor from `(num, den)` pairs.
    pub fn from_fractions(pairs: &[(i64, i64)]) -> Result<Self> {
        let mut v = Vec::with_capacity(pairs.len());
        for &(n, d) in pairs {
            if d == 0 {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            v.push(BigRational::new(n.into(), d.into()));
        }
        Gamma::exact(v)
    }

    pub fn symbolic(entries: Vec<FrequencyValue>) -> Result<Self> {
        let entries: Vec<_> = entries
            .into_iter()
            .map(|mut e| {
                e.gens.retain(|_, c| !c.is_zero());
                e
            })
            .collect();
        if entries.iter().flat_map(|e| e.gens.keys()).any(|g| g.is_empty()) {
            return Err(Error::InvalidInput("generator names must be non-empty".into()));
        }
        check_algebraic(&entries)?;
        Ok(Gamma { entries: Entries::Symbolic(entries) })
    }

    pub fn float(entries: Vec<f64>) -> Result<Self> {
        match entries.first() {
            None => return Err(Error::InvalidInput("Γ must be non-empty".into())),
            Some(&g0) if g0 != 0.0 => {
                return Err(Error::InvalidInput("γ_0 must be 0".into()));
            }
            _ => {}
        }
        for (i, &g) in entries.iter().enumerate() {
            if !g.is_finite() || !(0.0..1.0).contains(&g) {
                return Err(Error::InvalidInput(format!("γ_{i} = {g} is not in [0, 1)")));
            }
            if entries[..i].contains(&g) {
                return Err(Error::InvalidInput(format!("γ_{i} = {g} is repeated")));
            }
        }
        Ok(Gamma { entries: Entries::Float(entries) })
    }

    /// Validated constructor dispatching on mode; float entries must be rational
    /// numbers here and are converted.
    pub fn make(values: Vec<FrequencyValue>, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Exact => {
                if values.iter().any(|v| !v.is_rational()) {
                    return Err(Error::InvalidInput(
                        "exact mode entries cannot carry generators".into(),
                    ));
                }
                Gamma::exact(values.into_iter().map(|v| v.rational).collect())
            }
            Mode::Symbolic => Gamma::symbolic(values),
            Mode::Float => {
                if values.iter().any(|v| !v.is_rational()) {
                    return Err(Error::UnsupportedMode(
                        "generators have no float value".into(),
                    ));
                }
                Gamma::float(values.iter().map(|v| v.rational.to_f64().unwrap_or(f64::NAN)).collect())
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self.entries {
            Entries::Exact(_) => Mode::Exact,
            Entries::Symbolic(_) => Mode::Symbolic,
            Entries::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match &self.entries {
            Entries::Exact(v) | Entries::Symbolic(v) => v.len(),
            Entries::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Exact or symbolic entries; `None` in float mode.
    pub fn values(&self) -> Option<&[FrequencyValue]> {
        match &self.entries {
            Entries::Exact(v) | Entries::Symbolic(v) => Some(v),
            Entries::Float(_) => None,
        }
    }

    pub fn floats(&self) -> Option<&[f64]> {
        match &self.entries {
            Entries::Float(v) => Some(v),
            _ => None,
        }
    }

    /// Rational entries when no entry carries a generator.
    pub fn rationals(&self) -> Option<Vec<BigRational>> {
        let values = self.values()?;
        values
            .iter()
            .map(|v| v.is_rational().then(|| v.rational.clone()))
            .collect()
    }

    /// lcm of the denominators of the rational parts.
    pub fn common_denominator(&self) -> Option<BigInt> {
        let values = self.values()?;
        Some(values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.rational.denom())))
    }

    /// Float view of an exact Γ; symbolic entries have no numeric value.
    pub fn to_float(&self) -> Result<Gamma> {
        match &self.entries {
            Entries::Float(_) => Ok(self.clone()),
            Entries::Exact(v) => Gamma::float(
                v.iter()
                    .map(|e| e.rational.to_f64().unwrap_or(f64::NAN))
                    .collect(),
            ),
            Entries::Symbolic(_) => Err(Error::UnsupportedMode(
                "symbolic Γ has no float embedding".into(),
            )),
        }
    }

    /// `γ ↦ (1 - γ) mod 1`, i.e. the conjugate spectrum `-Γ`.
    pub fn reflect(&self) -> Gamma {
        let entries = match &self.entries {
            Entries::Float(v) => Entries::Float(
                v.iter().map(|&g| if g == 0.0 { 0.0 } else { 1.0 - g }).collect(),
            ),
            Entries::Exact(v) | Entries::Symbolic(v) => {
                let refl: Vec<_> = v
                    .iter()
                    .map(|e| FrequencyValue {
                        rational: frac(&-&e.rational),
                        gens: e.gens.iter().map(|(g, c)| (g.clone(), -c)).collect(),
                    })
                    .collect();
                if self.mode() == Mode::Exact {
                    Entries::Exact(refl)
                } else {
                    Entries::Symbolic(refl)
                }
            }
        };
        Gamma { entries }
    }
}

fn check_algebraic(values: &[FrequencyValue]) -> Result<()> {
    let first = values
        .first()
        .ok_or_else(|| Error::InvalidInput("Γ must be non-empty".into()))?;
    if !first.rational.is_zero() || !first.gens.is_empty() {
        return Err(Error::InvalidInput(format!("γ_0 must be 0, got {first}")));
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    for (i, v) in values.iter().enumerate() {
        if v.rational < zero || v.rational >= one {
            return Err(Error::InvalidInput(format!(
                "rational part of γ_{i} = {} is not in [0, 1)",
                v.rational
            )));
        }
        if values[..i].contains(v) {
            return Err(Error::InvalidInput(format!("γ_{i} = {v} is repeated mod 1")));
        }
    }
    Ok(())
}
