//! Flags `∪_{n<s} {m+1, …, m+r} + nN` inside integer zero sets, and what
//! they force.
//!
//! * An `r × (d-r+1)` flag in `ℤ(δ̂_Γ)` extends to the `r × d` flag with the
//!   same `m`, `r`, `N` (power-sum state vectors `μ_j = ν_{m+jN+1}` are carried
//!   into each other by `U^N` and stay inside the `(d-r)`-dimensional subspace
//!   with vanishing first `r` coordinates).
//! * An `r × d` flag with `⌊d/2⌋ ≤ r < d` forces `z_j^N = 1` for all `j`.
//! * For a spectral pair, `A - A ⊂ ℤ(δ̂_Γ) ∪ {0}`, so a flag found in the
//!   difference set bounds the denominators of every spectrum of `A`; the
//!   decider then exhausts that finite grid.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{companion_power_apply, Evaluator, ExactSums, PowerSums, Scalar, SymbolicSums, FloatSums};
use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::oracle;
use crate::pair::{
    laba_certificate, theorem3_certificate, verify_pair, RationalityCertificate, Step, Theorem,
    Verdict,
};
use crate::spectrum::{Gamma, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FlagDoc", into = "FlagDoc")]
pub struct Flag {
    m: i64,
    r: i64,
    stride: i64,
    s: i64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagDoc {
    m: i64,
    r: i64,
    #[serde(rename = "N")]
    n: i64,
    s: i64,
}

impl TryFrom<FlagDoc> for Flag {
    type Error = Error;
    fn try_from(d: FlagDoc) -> Result<Flag> {
        Flag::new(d.m, d.r, d.n, d.s)
    }
}

impl From<Flag> for FlagDoc {
    fn from(f: Flag) -> FlagDoc {
        FlagDoc { m: f.m, r: f.r, n: f.stride, s: f.s }
    }
}

impl Flag {
    /// Strips must be disjoint: `N > r`.
    pub fn new(m: i64, r: i64, stride: i64, s: i64) -> Result<Self> {
        if r < 1 || s < 1 {
            return Err(Error::InvalidFlag(format!("r = {r} and s = {s} must be positive")));
        }
        if stride <= r {
            return Err(Error::InvalidFlag(format!("stride N = {stride} must exceed r = {r}")));
        }
        Ok(Flag { m, r, stride, s })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// The stride `N`.
    pub fn stride(&self) -> i64 {
        self.stride
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// The `r·s` members, ascending.
    pub fn members(&self) -> Vec<i64> {
        (0..self.s)
            .flat_map(|n| (1..=self.r).map(move |i| self.m + n * self.stride + i))
            .collect()
    }

    pub fn contains(&self, x: i64) -> bool {
        let off = x - self.m - 1;
        if off < 0 {
            return false;
        }
        off / self.stride < self.s && off % self.stride < self.r
    }

    /// Same `m`, `r`, `N` with `s` rows.
    pub fn with_rows(&self, s: i64) -> Result<Flag> {
        Flag::new(self.m, self.r, self.stride, s)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}×{} flag (m={}, N={})", self.r, self.s, self.m, self.stride)
    }
}

pub fn flag_members(f: &Flag) -> Vec<i64> {
    f.members()
}

/// Minimum strip length admitted for a given `d`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdMode {
    /// `r ≥ ⌊d/2⌋`
    #[default]
    AsStated,
    /// `r ≥ ⌊d/2⌋ + 1`
    Conservative,
}

impl ThresholdMode {
    pub fn min_r(self, d: i64) -> i64 {
        let base = d / 2;
        let r = match self {
            ThresholdMode::AsStated => base,
            ThresholdMode::Conservative => base + 1,
        };
        r.max(1)
    }

    /// Admissible strip lengths `min_r(d) ≤ r < d`.
    pub fn admissible(self, d: i64) -> std::ops::Range<i64> {
        self.min_r(d)..d.max(self.min_r(d))
    }
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdMode::AsStated => "as-stated",
            ThresholdMode::Conservative => "conservative",
        })
    }
}

/// Every `r × s` flag with members inside `set`, ordered by `(m, N)`.
///
/// Defaults: `m ∈ [min(S) - 1 - r, max(S)]`, `N ∈ (r, max(S) - min(S)]`.
pub fn find_flags(
    set: &BTreeSet<i64>,
    r: i64,
    s: i64,
    m_range: Option<(i64, i64)>,
    n_max: Option<i64>,
) -> Vec<Flag> {
    let (Some(&lo), Some(&hi)) = (set.first(), set.last()) else {
        return Vec::new();
    };
    if r < 1 || s < 1 {
        return Vec::new();
    }
    let (m_lo, m_hi) = m_range.unwrap_or((lo - 1 - r, hi));
    let n_max = n_max.unwrap_or(hi - lo);
    let strip_in = |start: i64| (1..=r).all(|i| set.contains(&(start + i)));
    (m_lo..=m_hi)
        .into_par_iter()
        .filter(|&m| strip_in(m))
        .flat_map_iter(|m| {
            (r + 1..=n_max)
                .filter(move |&n| (1..s).all(|row| strip_in(m + row * n)))
                .map(move |n| Flag { m, r, stride: n, s })
        })
        .collect()
}

/// The `r × d` extension of an `r × (d - r + 1)` flag.
pub fn theorem6_extend(f: &Flag, d: i64) -> Result<Flag> {
    if f.r >= d {
        return Err(Error::InvalidInput(format!("strip length r = {} must be below d = {d}", f.r)));
    }
    if f.s != d - f.r + 1 {
        return Err(Error::InvalidInput(format!(
            "expected an r × (d - r + 1) = {} × {} flag, got {} rows",
            f.r,
            d - f.r + 1,
            f.s
        )));
    }
    f.with_rows(d)
}

/// What [`theorem6_verify_on`] checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem6Trace {
    pub extended: Flag,
    /// Per `μ_j`, `j = 0..d`: first `r` coordinates vanish.
    pub prefix_zero: Vec<bool>,
    /// Per `j = 0..d-1`: `U^N μ_j = μ_{j+1}`.
    pub transport: Vec<bool>,
    /// Members of the extended flag vanish by direct evaluation.
    pub extended_members_vanish: bool,
}

fn theorem6_generic<E: PowerSums>(sums: &E, f: &Flag) -> Result<(bool, Theorem6Trace)> {
    let d = sums.len() as i64;
    let extended = theorem6_extend(f, d)?;
    let tol = sums.tolerance();
    for k in f.members() {
        if !sums.power_sum(k).is_zero_within(tol) {
            return Err(Error::HypothesisViolation(k));
        }
    }
    let spec = sums.recurrence()?;
    let mu: Vec<Vec<E::Value>> = (0..d)
        .map(|j| sums.state_vector(f.m + j * f.stride + 1))
        .collect();
    let prefix_zero: Vec<bool> = mu
        .iter()
        .map(|v| v[..f.r as usize].iter().all(|x| x.is_zero_within(tol)))
        .collect();
    // float transport errors grow with the matrix power; allow a wider margin
    let transport_tol = if tol == 0.0 { 0.0 } else { tol * 1e3 };
    let mut transport = Vec::with_capacity(mu.len().saturating_sub(1));
    for j in 0..mu.len().saturating_sub(1) {
        let pushed = companion_power_apply(&spec, &mu[j], f.stride as u64)?;
        let same = pushed
            .iter()
            .zip(&mu[j + 1])
            .all(|(a, b)| a.sub_ref(b).is_zero_within(transport_tol));
        transport.push(same);
    }
    let extended_members_vanish = extended
        .members()
        .into_iter()
        .all(|k| sums.power_sum(k).is_zero_within(tol));
    let ok = prefix_zero.iter().all(|&b| b) && transport.iter().all(|&b| b) && extended_members_vanish;
    Ok((ok, Theorem6Trace { extended, prefix_zero, transport, extended_members_vanish }))
}

/// Checks the flag-extension mechanism on a concrete Γ.
pub fn theorem6_verify_on(g: &Gamma, f: &Flag) -> Result<(bool, Theorem6Trace)> {
    match Evaluator::new(g)? {
        Evaluator::Exact(e) => theorem6_generic::<ExactSums>(&e, f),
        Evaluator::Symbolic(e) => theorem6_generic::<SymbolicSums>(&e, f),
        Evaluator::Float(e) => theorem6_generic::<FloatSums>(&e, f),
    }
}

/// Every γ_j of a Γ certified by the flag lies in `(1/N)ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorBound {
    #[serde(rename = "N")]
    pub n: u64,
    pub statement: String,
}

fn check_theorem4_shape(d: i64, f: &Flag, mode: ThresholdMode) -> Result<()> {
    if f.s != d {
        return Err(Error::InvalidInput(format!("need an r × d flag with d = {d}, got s = {}", f.s)));
    }
    if !mode.admissible(d).contains(&f.r) {
        return Err(Error::InvalidInput(format!(
            "r = {} outside the admissible range [{}, {}) for d = {d} ({mode})",
            f.r,
            mode.min_r(d),
            d
        )));
    }
    Ok(())
}

/// Denominator bound for every size-`d` Γ whose zero set contains `f`.
pub fn theorem4_conclusion(d: i64, f: &Flag, mode: ThresholdMode) -> Result<DenominatorBound> {
    check_theorem4_shape(d, f, mode)?;
    Ok(DenominatorBound {
        n: f.stride as u64,
        statement: format!("every γ_j ∈ (1/{})ℤ mod 1", f.stride),
    })
}

/// Concrete-Γ version of [`theorem4_conclusion`]: checks the flag hypothesis
/// by direct evaluation and then that `N·γ_j ∈ ℤ` for every entry.
pub fn theorem4_verify_on(
    g: &Gamma,
    f: &Flag,
    mode: ThresholdMode,
) -> Result<RationalityCertificate> {
    if g.mode() == Mode::Float {
        return Err(Error::UnsupportedMode("N·γ_j ∈ ℤ is undecidable for float Γ".into()));
    }
    let d = g.len() as i64;
    let bound = theorem4_conclusion(d, f, mode)?;
    let ev = Evaluator::new(g)?;
    for k in f.members() {
        if !ev.is_zero_at(k) {
            return Err(Error::HypothesisViolation(k));
        }
    }
    let n = num::BigRational::from_integer(f.stride.into());
    for (j, v) in g.values().expect("non-float").iter().enumerate() {
        if !v.is_rational() || !(&v.rational * &n).is_integer() {
            return Err(Error::TheoremViolation(format!(
                "{f} lies in the zero set but {}·γ_{j} = {}·({v}) is not an integer",
                f.stride, f.stride
            )));
        }
    }
    Ok(RationalityCertificate {
        verdict: Verdict::Rational,
        theorem: Theorem::T4,
        class_count: 1,
        denominator_divides: Some(bound.n),
        witness_flag: Some(*f),
        extended_flag: None,
        threshold_mode: Some(mode),
        cluster: None,
        gamma: Some(g.clone()),
        steps: vec![
            Step::new("theorem4_verify_on", format!("all {} members of the {f} vanish", f.r * f.s)),
            Step::new("theorem4_conclusion", bound.statement),
        ],
    })
}

/// Searches `A - A` for an `r × (d - r + 1)` flag, smallest admissible `r`
/// first, and certifies a denominator bound for every spectrum of `A`.
///
/// `Ok(None)` means no applicable flag exists.
pub fn theorem7_pipeline(
    c: &Cluster,
    r_choices: Option<&[i64]>,
    mode: ThresholdMode,
) -> Result<Option<RationalityCertificate>> {
    let d = c.d() as i64;
    let rs: Vec<i64> = match r_choices {
        Some(rs) => {
            if let Some(bad) = rs.iter().find(|r| !mode.admissible(d).contains(r)) {
                return Err(Error::InvalidInput(format!(
                    "r = {bad} outside the admissible range [{}, {d}) ({mode})",
                    mode.min_r(d)
                )));
            }
            rs.to_vec()
        }
        None => mode.admissible(d).collect(),
    };
    let diffs: BTreeSet<i64> = c.difference_set().values().iter().copied().collect();
    for r in rs {
        let s = d - r + 1;
        let Some(flag) = find_flags(&diffs, r, s, None, None).into_iter().next() else {
            continue;
        };
        let extended = theorem6_extend(&flag, d)?;
        let bound = theorem4_conclusion(d, &extended, mode)?;
        let steps = vec![
            Step::new(
                "find_flags",
                format!("{flag} with members {:?} lies in A - A", flag.members()),
            ),
            Step::new(
                "theorem6_extend",
                format!("any spectrum's zero set then contains the {extended}"),
            ),
            Step::new(
                "theorem4_conclusion",
                format!("r = {r} is admissible for d = {d} ({mode}); {}", bound.statement),
            ),
        ];
        return Ok(Some(RationalityCertificate {
            verdict: Verdict::Rational,
            theorem: Theorem::T7,
            class_count: 1,
            denominator_divides: Some(bound.n),
            witness_flag: Some(flag),
            extended_flag: Some(extended),
            threshold_mode: Some(mode),
            cluster: Some(c.clone()),
            gamma: None,
            steps,
        }));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralityStatus {
    Spectral,
    NotSpectral,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    /// Grid `(1/N)ℤ` from a flag certificate; exhaustive.
    FlagDenominator,
    /// Reduced fractions with denominator at most `den_max`; a semi-decision.
    DenMax,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBound {
    pub kind: SearchKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralityVerdict {
    pub status: SpectralityStatus,
    pub cluster: Cluster,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_gamma: Option<Gamma>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RationalityCertificate>,
    pub search_bound: SearchBound,
    /// Number of candidate Γ in the searched grid.
    pub grid_size: u64,
    pub candidates_checked: u64,
    pub exhausted: bool,
}

/// Decides spectrality when a flag certificate bounds the denominators;
/// otherwise falls back to a bounded search (`den_max`) or `Unknown`.
pub fn decide_spectrality(
    c: &Cluster,
    den_max: Option<u64>,
    mode: ThresholdMode,
) -> Result<SpectralityVerdict> {
    if let Some(cert) = theorem7_pipeline(c, None, mode)? {
        let n = cert.denominator_divides.expect("T7 certificates carry a bound");
        let search = oracle::first_spectrum_on_grid(c, n)?;
        let status = if search.witness.is_some() {
            SpectralityStatus::Spectral
        } else {
            SpectralityStatus::NotSpectral
        };
        return Ok(SpectralityVerdict {
            status,
            cluster: c.clone(),
            exhausted: search.witness.is_none(),
            witness_gamma: search.witness,
            certificate: Some(cert),
            search_bound: SearchBound { kind: SearchKind::FlagDenominator, value: Some(n) },
            grid_size: search.grid_size,
            candidates_checked: search.checked,
        });
    }
    if let Some(den_max) = den_max {
        let found = oracle::enumerate_rational_spectra(c, den_max)?;
        let witness = found.spectra.into_iter().next();
        return Ok(SpectralityVerdict {
            status: if witness.is_some() {
                SpectralityStatus::Spectral
            } else {
                SpectralityStatus::Unknown
            },
            cluster: c.clone(),
            witness_gamma: witness,
            certificate: None,
            search_bound: SearchBound { kind: SearchKind::DenMax, value: Some(den_max) },
            grid_size: found.grid_size,
            candidates_checked: found.grid_size,
            exhausted: true,
        });
    }
    Ok(SpectralityVerdict {
        status: SpectralityStatus::Unknown,
        cluster: c.clone(),
        witness_gamma: None,
        certificate: None,
        search_bound: SearchBound { kind: SearchKind::None, value: None },
        grid_size: 0,
        candidates_checked: 0,
        exhausted: false,
    })
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(format!("certificate does not re-validate: {}", msg.into()))
}

fn require<T: Clone>(field: &Option<T>, name: &str) -> Result<T> {
    field.clone().ok_or_else(|| invalid(format!("missing {name}")))
}

/// Re-derives a certificate from the inputs it carries.
pub fn check_certificate(cert: &RationalityCertificate) -> Result<()> {
    let same = |fresh: &RationalityCertificate| {
        if fresh.verdict != cert.verdict
            || fresh.theorem != cert.theorem
            || fresh.class_count != cert.class_count
            || fresh.denominator_divides != cert.denominator_divides
            || fresh.witness_flag != cert.witness_flag
            || fresh.extended_flag != cert.extended_flag
        {
            return Err(invalid(format!(
                "recomputed {:?}/{:?} with bound {:?} differs",
                fresh.verdict, fresh.theorem, fresh.denominator_divides
            )));
        }
        Ok(())
    };
    match (cert.verdict, cert.theorem) {
        (Verdict::NotASpectralPair, _) => {
            let c = require(&cert.cluster, "cluster")?;
            let g = require(&cert.gamma, "gamma")?;
            if verify_pair(&c, &g)?.is_spectral_pair {
                return Err(invalid("the pair verifies"));
            }
            Ok(())
        }
        (_, Theorem::T3) => {
            let c = require(&cert.cluster, "cluster")?;
            let g = require(&cert.gamma, "gamma")?;
            same(&theorem3_certificate(&c, &g)?)
        }
        (_, Theorem::T4) => {
            let g = require(&cert.gamma, "gamma")?;
            let f = require(&cert.witness_flag, "witness_flag")?;
            let mode = cert.threshold_mode.unwrap_or_default();
            if let Some(c) = &cert.cluster {
                if !verify_pair(c, &g)?.is_spectral_pair {
                    return Err(invalid("the recorded pair does not verify"));
                }
            }
            same(&theorem4_verify_on(&g, &f, mode)?)
        }
        (_, Theorem::T7) => {
            let c = require(&cert.cluster, "cluster")?;
            let f = require(&cert.witness_flag, "witness_flag")?;
            let mode = cert.threshold_mode.unwrap_or_default();
            let fresh = theorem7_pipeline(&c, Some(&[f.r]), mode)?
                .ok_or_else(|| invalid(format!("no r = {} flag in A - A", f.r)))?;
            let diffs = c.difference_set();
            if !f.members().iter().all(|&k| diffs.contains(k)) {
                return Err(invalid(format!("{f} is not contained in A - A")));
            }
            // any flag of the recorded shape is an equally valid witness
            let d = c.d() as i64;
            let ext = theorem6_extend(&f, d)?;
            let bound = theorem4_conclusion(d, &ext, mode)?;
            if Some(bound.n) != cert.denominator_divides
                || cert.extended_flag.is_some_and(|e| e != ext)
                || fresh.verdict != cert.verdict
            {
                return Err(invalid("denominator bound does not follow from the flag"));
            }
            Ok(())
        }
        (_, Theorem::Laba) => {
            let c = require(&cert.cluster, "cluster")?;
            let fresh = laba_certificate(&c).ok_or_else(|| invalid("M < 5d/2 fails"))?;
            same(&fresh)
        }
    }
}

/// Re-checks a decider verdict: witnesses re-verify, flag certificates
/// re-validate, and empty flag grids are re-exhausted.
pub fn check_spectrality_verdict(v: &SpectralityVerdict) -> Result<()> {
    if let Some(cert) = &v.certificate {
        check_certificate(cert)?;
        if cert.cluster.as_ref() != Some(&v.cluster) {
            return Err(invalid("certificate is about a different cluster"));
        }
    }
    match v.status {
        SpectralityStatus::Spectral => {
            let g = require(&v.witness_gamma, "witness_gamma")?;
            if !verify_pair(&v.cluster, &g)?.is_spectral_pair {
                return Err(invalid("witness does not verify"));
            }
            if let (SearchKind::FlagDenominator, Some(n)) = (v.search_bound.kind, v.search_bound.value) {
                let on_grid = g
                    .rationals()
                    .is_some_and(|rs| rs.iter().all(|r| (n % r.denom().try_into().unwrap_or(0u64)) == 0));
                if !on_grid {
                    return Err(invalid(format!("witness is not on the (1/{n})ℤ grid")));
                }
            }
            Ok(())
        }
        SpectralityStatus::NotSpectral => {
            let cert = require(&v.certificate, "certificate")?;
            let n = require(&cert.denominator_divides, "denominator_divides")?;
            let search = oracle::first_spectrum_on_grid(&v.cluster, n)?;
            if search.witness.is_some() || search.grid_size != v.grid_size || !v.exhausted {
                return Err(invalid("grid exhaustion does not reproduce"));
            }
            Ok(())
        }
        SpectralityStatus::Unknown => Ok(()),
    }
}
