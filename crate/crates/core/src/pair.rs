//! Spectral-pair verification for `(A + [0,1], Γ + ℤ)` and the
//! class-count rationality criterion.
//!
//! With `|Γ| = |A| = d`, the pair is spectral exactly when `δ̂_Γ` vanishes on
//! every nonzero integer of `A - A`. Only this orthogonality inclusion is
//! checked; completeness follows from the matching cardinality.

use serde::{Deserialize, Serialize};

use crate::arith::{Evaluator, ExpSumValue};
use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::flags::{Flag, ThresholdMode};
use crate::spectrum::{rational_classes, Gamma, Mode};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub is_spectral_pair: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_value: Option<String>,
    pub checked_set: Vec<i64>,
    pub mode: String,
    /// Float verdicts are tolerance based.
    pub heuristic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Rational,
    NotASpectralPair,
    ModelContradiction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    T3,
    T4,
    T7,
    Laba,
}

/// One deduction, tagged with the operation that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub operation: String,
    pub detail: String,
}

impl Step {
    pub fn new(operation: &str, detail: impl Into<String>) -> Self {
        Step { operation: operation.to_string(), detail: detail.into() }
    }
}

/// Self-contained rationality conclusion: it carries its inputs so that it can
/// be re-checked without other context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalityCertificate {
    pub verdict: Verdict,
    pub theorem: Theorem,
    pub class_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator_divides: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_flag: Option<Flag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended_flag: Option<Flag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_mode: Option<ThresholdMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<Cluster>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Gamma>,
    pub steps: Vec<Step>,
}

fn render(v: &ExpSumValue) -> String {
    v.to_string()
}

/// Checks `δ̂_Γ(k) = 0` for all `k ∈ (A - A) \ {0}` with a prepared evaluator.
///
/// The reported witness is the smallest `|k|`, positive first. Exact domains
/// only scan positive `k`: `δ̂_Γ(-k)` is the conjugate of `δ̂_Γ(k)`.
pub fn verify_pair_with(c: &Cluster, g: &Gamma, ev: &Evaluator) -> Result<PairVerdict> {
    if c.d() != g.len() {
        return Err(Error::InvalidInput(format!(
            "|A| = {} but |Γ| = {}",
            c.d(),
            g.len()
        )));
    }
    let diffs = c.difference_set();
    let tol = ev.tolerance();
    let both_signs = g.mode() == Mode::Float;
    let mut failing = None;
    'scan: for k in diffs.positive() {
        let signs: &[i64] = if both_signs { &[1, -1] } else { &[1] };
        for &s in signs {
            let v = ev.value(s * k);
            if !v.is_zero(tol) {
                failing = Some((s * k, render(&v)));
                break 'scan;
            }
        }
    }
    Ok(PairVerdict {
        is_spectral_pair: failing.is_none(),
        failing_k: failing.as_ref().map(|f| f.0),
        failing_value: failing.map(|f| f.1),
        checked_set: diffs.values().to_vec(),
        mode: g.mode().to_string(),
        heuristic: g.mode() == Mode::Float,
    })
}

pub fn verify_pair(c: &Cluster, g: &Gamma) -> Result<PairVerdict> {
    verify_pair_with(c, g, &Evaluator::new(g)?)
}

/// Rational exactly when Γ forms a single rational class.
///
/// A verified pair with two or more classes cannot exist (a class of size
/// `n_j < d` would carry `d` mutually orthogonal exponentials); if the generic
/// model ever produces one it is reported as `ModelContradiction`.
pub fn theorem3_certificate(c: &Cluster, g: &Gamma) -> Result<RationalityCertificate> {
    if g.mode() == Mode::Float {
        return Err(Error::UnsupportedMode(
            "rational classes are undecidable for float Γ".into(),
        ));
    }
    let pv = verify_pair(c, g)?;
    if !pv.is_spectral_pair {
        return Err(Error::NotASpectralPair(Box::new(pv)));
    }
    let mut steps = vec![Step::new(
        "verify_pair",
        format!(
            "δ̂_Γ vanishes on all {} nonzero differences of A ({} mode)",
            pv.checked_set.len(),
            pv.mode
        ),
    )];
    let part = rational_classes(g)?;
    let t = part.class_count();
    steps.push(Step::new(
        "rational_classes",
        format!("{t} rational class(es), denominators {:?}, period {}", part.denominators, part.period),
    ));
    let (verdict, denominator) = if t == 1 {
        steps.push(Step::new(
            "theorem3_certificate",
            format!(
                "single class containing γ_0 = 0: F = ∅ and every γ_j lies in (1/{})ℤ",
                part.period
            ),
        ));
        (Verdict::Rational, Some(part.period))
    } else {
        steps.push(Step::new(
            "theorem3_certificate",
            "verified pair with several rational classes: the generic model was violated",
        ));
        (Verdict::ModelContradiction, None)
    };
    Ok(RationalityCertificate {
        verdict,
        theorem: Theorem::T3,
        class_count: t,
        denominator_divides: denominator,
        witness_flag: None,
        extended_flag: None,
        threshold_mode: None,
        cluster: Some(c.clone()),
        gamma: Some(g.clone()),
        steps,
    })
}

/// A `NotASpectralPair` certificate for a failed verification.
pub fn not_a_pair_certificate(c: &Cluster, g: &Gamma, pv: &PairVerdict) -> RationalityCertificate {
    RationalityCertificate {
        verdict: Verdict::NotASpectralPair,
        theorem: Theorem::T3,
        class_count: rational_classes(g).map(|p| p.class_count()).unwrap_or(0),
        denominator_divides: None,
        witness_flag: None,
        extended_flag: None,
        threshold_mode: None,
        cluster: Some(c.clone()),
        gamma: Some(g.clone()),
        steps: vec![Step::new(
            "verify_pair",
            format!(
                "δ̂_Γ({}) = {} ≠ 0 with {} in A - A",
                pv.failing_k.unwrap_or_default(),
                pv.failing_value.clone().unwrap_or_default(),
                pv.failing_k.unwrap_or_default()
            ),
        )],
    }
}

/// Łaba's bound as a certificate; `None` when the bound does not apply.
pub fn laba_certificate(c: &Cluster) -> Option<RationalityCertificate> {
    c.laba_rationality().then(|| RationalityCertificate {
        verdict: Verdict::Rational,
        theorem: Theorem::Laba,
        class_count: 1,
        denominator_divides: None,
        witness_flag: None,
        extended_flag: None,
        threshold_mode: None,
        cluster: Some(c.clone()),
        gamma: None,
        steps: vec![Step::new(
            "laba_rationality",
            format!("M = max(A) + 1 = {} < 5d/2 = {}", c.max() + 1, 5.0 * c.d() as f64 / 2.0),
        )],
    })
}
