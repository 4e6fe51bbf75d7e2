//! Spectrum candidates Γ, their rational equivalence classes, and the
//! periodic/exceptional split `ℤ(δ̂_Γ) = X ∪ F` of the integer zero set.
//!
//! Irrational frequencies are formal generators treated as algebraically
//! independent (the *generic model*). Under that model a value vanishes only
//! when every class sum vanishes, so `ℤ(δ̂_Γ) = X` and `F = ∅`. Every
//! [`ZeroSetReport`] carries the model it was computed under.

mod gamma;

use std::collections::BTreeMap;

use num::integer::Integer;
use num::{BigRational, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{CyclotomicContext, CyclotomicNumber, Evaluator};
use crate::error::{Error, Result};

pub use gamma::{FrequencyValue, Gamma, Mode};
pub(crate) use gamma::frac;

/// Partition of Γ's indices into classes with pairwise rational differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalClassPartition {
    /// Entry indices per class, each ascending; classes ordered by first index.
    pub classes: Vec<Vec<usize>>,
    /// `m_j`: lcm of the denominators of the offsets `γ_i - γ_first`.
    pub denominators: Vec<u64>,
    /// `M = lcm(m_j)`.
    pub period: u64,
}

impl RationalClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// A set of integers that is periodic with period `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicZeroSet {
    pub period: u64,
    pub residues: Vec<u64>,
}

impl PeriodicZeroSet {
    pub fn empty() -> Self {
        PeriodicZeroSet { period: 1, residues: Vec::new() }
    }

    pub fn contains(&self, k: i64) -> bool {
        let r = k.rem_euclid(self.period as i64) as u64;
        self.residues.binary_search(&r).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Members in `[lo, hi]`, ascending.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&k| self.contains(k)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroModel {
    ExactComplete,
    GenericModel,
    FloatHeuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSetReport {
    #[serde(rename = "X")]
    pub periodic: PeriodicZeroSet,
    #[serde(rename = "F_window")]
    pub exceptional: Vec<i64>,
    pub window: (i64, i64),
    pub model_note: ZeroModel,
}

fn require_algebraic(g: &Gamma) -> Result<&[FrequencyValue]> {
    g.values().ok_or_else(|| {
        Error::UnsupportedMode("float entries have no decidable rational classes".into())
    })
}

fn to_u64(r: &num::BigInt) -> Result<u64> {
    r.to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("denominator {r} is too large")))
}

pub fn rational_classes(g: &Gamma) -> Result<RationalClassPartition> {
    let values = require_algebraic(g)?;
    let mut by_gens: BTreeMap<&BTreeMap<String, BigRational>, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match by_gens.get(&v.gens) {
            Some(&c) => classes[c].push(i),
            None => {
                by_gens.insert(&v.gens, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    let mut denominators = Vec::with_capacity(classes.len());
    for class in &classes {
        let base = &values[class[0]].rational;
        let mut m: u64 = 1;
        for &i in class {
            let off = &values[i].rational - base;
            m = m.lcm(&to_u64(off.denom())?);
        }
        denominators.push(m);
    }
    let period = denominators.iter().fold(1u64, |acc, m| acc.lcm(m));
    Ok(RationalClassPartition { classes, denominators, period })
}

/// Integer offsets `l_i` with `γ_i - γ_first = l_i / m` for one class.
fn class_offsets(values: &[FrequencyValue], class: &[usize], m: u64) -> Vec<i64> {
    let base = &values[class[0]].rational;
    class
        .iter()
        .map(|&i| {
            let off = frac(&(&values[i].rational - base)) * BigRational::from_integer(m.into());
            off.to_integer().to_i64().expect("offset numerator below m")
        })
        .collect()
}

/// Residues `r mod m_j` where the class sum `Σ_i e^{2πi l_i r / m_j}` vanishes.
pub fn class_zero_set(g: &Gamma, class_index: usize) -> Result<PeriodicZeroSet> {
    let values = require_algebraic(g)?;
    let part = rational_classes(g)?;
    let class = part.classes.get(class_index).ok_or_else(|| {
        Error::InvalidInput(format!(
            "class index {class_index} out of range ({} classes)",
            part.class_count()
        ))
    })?;
    let m = part.denominators[class_index];
    let offsets = class_offsets(values, class, m);
    let ctx = CyclotomicContext::new(m)?;
    let residues = (0..m)
        .filter(|&r| {
            let mut counts = vec![0i64; m as usize];
            for &l in &offsets {
                counts[((l as i128 * r as i128) % m as i128) as usize] += 1;
            }
            CyclotomicNumber::from_exponent_counts(&ctx, &counts).is_zero()
        })
        .collect();
    Ok(PeriodicZeroSet { period: m, residues })
}

/// `X = ∩_j ℤ(δ̂_{Γ_j*})`, periodic with period `M`.
pub fn common_zero_set(g: &Gamma) -> Result<PeriodicZeroSet> {
    let part = rational_classes(g)?;
    let per_class = (0..part.class_count())
        .map(|j| class_zero_set(g, j))
        .collect::<Result<Vec<_>>>()?;
    let residues = (0..part.period)
        .filter(|&r| per_class.iter().all(|z| z.contains(r as i64)))
        .collect();
    Ok(PeriodicZeroSet { period: part.period, residues })
}

/// The `X ∪ F` description of `ℤ(δ̂_Γ)` restricted to `window`.
pub fn zero_report(g: &Gamma, window: (i64, i64)) -> Result<ZeroSetReport> {
    if window.0 > window.1 {
        return Err(Error::InvalidInput(format!(
            "empty window [{}, {}]",
            window.0, window.1
        )));
    }
    match g.mode() {
        Mode::Exact | Mode::Symbolic => Ok(ZeroSetReport {
            periodic: common_zero_set(g)?,
            exceptional: Vec::new(),
            window,
            model_note: if g.mode() == Mode::Exact {
                ZeroModel::ExactComplete
            } else {
                ZeroModel::GenericModel
            },
        }),
        Mode::Float => {
            let ev = Evaluator::new(g)?;
            Ok(ZeroSetReport {
                periodic: PeriodicZeroSet::empty(),
                exceptional: (window.0..=window.1).filter(|&k| ev.is_zero_at(k)).collect(),
                window,
                model_note: ZeroModel::FloatHeuristic,
            })
        }
    }
}
