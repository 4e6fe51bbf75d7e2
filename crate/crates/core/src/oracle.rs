//! Brute-force oracles: bounded rational-spectrum enumeration, numeric zero
//! scans, and tiling complements in `ℤ_n`.
//!
//! Candidate scans reject on a floating-point pre-check only when the computed
//! modulus is far above rounding error; every accepted candidate is confirmed
//! exactly.

use std::sync::Arc;

use itertools::Itertools;
use num::integer::Integer;
use num::complex::Complex64;
use num::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{CyclotomicContext, ExactSums, PowerSums};
use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::pair::verify_pair;
use crate::spectrum::Gamma;

/// Float moduli above this are certainly nonzero: rounding error on a sum
/// of at most a few hundred unit terms is many orders of magnitude smaller.
const CERTAINLY_NONZERO: f64 = 1e-6;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub cluster: Cluster,
    pub den_max: u64,
    pub spectra: Vec<Gamma>,
    pub exhaustive: bool,
    /// Number of candidate Γ examined.
    pub grid_size: u64,
}

/// Outcome of scanning the grid `{0} ∪ {j/N}` for a spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSearch {
    pub witness: Option<Gamma>,
    /// `C(N-1, d-1)`
    pub grid_size: u64,
    /// Candidates examined up to and including the witness.
    pub checked: u64,
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Unit vectors `e^{2πi k a / n}` keyed by residue, for the float pre-check.
struct Roots {
    n: u64,
    table: Vec<Complex64>,
}

impl Roots {
    fn new(n: u64) -> Self {
        let table = (0..n)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64))
            .collect();
        Roots { n, table }
    }

    /// `|Σ_j ζ_n^{k·a_j}|` rounds clearly away from zero.
    fn certainly_nonzero(&self, numerators: &[i64], k: i64) -> bool {
        let n = self.n as i64;
        let s: Complex64 = numerators
            .iter()
            .map(|&a| self.table[(a * k).rem_euclid(n) as usize])
            .sum();
        s.norm() > CERTAINLY_NONZERO
    }
}

/// Tests `Γ = {a_j / n}` against the positive differences of `A`.
struct GridChecker {
    roots: Roots,
    ctx: Arc<CyclotomicContext>,
    diffs: Vec<i64>,
}

impl GridChecker {
    fn new(c: &Cluster, n: u64) -> Result<Self> {
        Ok(GridChecker {
            roots: Roots::new(n),
            ctx: CyclotomicContext::new(n)?,
            diffs: c.difference_set().positive().collect(),
        })
    }

    fn passes(&self, numerators: &[i64]) -> bool {
        if self.diffs.iter().any(|&k| self.roots.certainly_nonzero(numerators, k)) {
            return false;
        }
        let sums = ExactSums::from_numerators(self.ctx.clone(), numerators.to_vec());
        self.diffs.iter().all(|&k| sums.power_sum(k).is_zero())
    }
}

/// First `Γ ⊆ {0, 1/N, …, (N-1)/N}` (ascending, lexicographic) forming a
/// spectral pair with `A`.
pub fn first_spectrum_on_grid(c: &Cluster, n: u64) -> Result<GridSearch> {
    if n == 0 {
        return Err(Error::InvalidInput("grid denominator must be positive".into()));
    }
    let d = c.d() as u64;
    let grid_size = binomial(n - 1, d - 1);
    let checker = GridChecker::new(c, n)?;
    let mut checked = 0u64;
    let combos = (1..n as i64).combinations(d as usize - 1);
    for chunk in &combos.chunks(CHUNK) {
        let chunk: Vec<Vec<i64>> = chunk.collect();
        let hit = chunk.par_iter().position_first(|tail| {
            let mut nums = Vec::with_capacity(tail.len() + 1);
            nums.push(0);
            nums.extend_from_slice(tail);
            checker.passes(&nums)
        });
        if let Some(i) = hit {
            checked += i as u64 + 1;
            let mut pairs = vec![(0, 1)];
            pairs.extend(chunk[i].iter().map(|&a| (a, n as i64)));
            return Ok(GridSearch {
                witness: Some(Gamma::from_fractions(&pairs)?),
                grid_size,
                checked,
            });
        }
        checked += chunk.len() as u64;
    }
    Ok(GridSearch { witness: None, grid_size, checked })
}

/// `e^{2πi k p / q}` with the exponent reduced exactly.
fn unit((p, q): (u64, u64), k: i64) -> Complex64 {
    let r = (p as i128 * k as i128).rem_euclid(q as i128) as f64;
    Complex64::from_polar(1.0, std::f64::consts::TAU * r / q as f64)
}

/// Reduced fractions in `(0, 1)` with denominator at most `den_max`, ascending.
fn farey_interior(den_max: u64) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = (2..=den_max)
        .flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| (p, q)))
        .collect();
    v.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    v
}

/// Every spectrum `Γ` of `A` whose entries are reduced fractions with
/// denominator at most `den_max`, in lexicographic order by value.
pub fn enumerate_rational_spectra(c: &Cluster, den_max: u64) -> Result<EnumerationResult> {
    if den_max == 0 {
        return Err(Error::InvalidInput("den_max must be at least 1".into()));
    }
    let d = c.d();
    let fracs = farey_interior(den_max);
    let grid_size = binomial(fracs.len() as u64, d as u64 - 1);
    let diffs: Vec<i64> = c.difference_set().positive().collect();
    let mut spectra = Vec::new();
    let combos = (0..fracs.len()).combinations(d - 1);
    for chunk in &combos.chunks(CHUNK) {
        let chunk: Vec<Vec<usize>> = chunk.collect();
        let found: Vec<Gamma> = chunk
            .par_iter()
            .filter_map(|idx| {
                let rejected = diffs.iter().any(|&k| {
                    let s: Complex64 = std::iter::once(Complex64::new(1.0, 0.0))
                        .chain(idx.iter().map(|&i| unit(fracs[i], k)))
                        .sum();
                    s.norm() > CERTAINLY_NONZERO
                });
                if rejected {
                    return None;
                }
                let entries: Vec<BigRational> = std::iter::once(BigRational::from_integer(0.into()))
                    .chain(idx.iter().map(|&i| {
                        BigRational::new((fracs[i].0 as i64).into(), (fracs[i].1 as i64).into())
                    }))
                    .collect();
                let g = Gamma::exact(entries).ok()?;
                verify_pair(c, &g).ok()?.is_spectral_pair.then_some(g)
            })
            .collect();
        spectra.extend(found);
    }
    Ok(EnumerationResult { cluster: c.clone(), den_max, spectra, exhaustive: true, grid_size })
}

/// `{k ∈ [lo, hi] : |δ̂_Γ(k)| < tol}` in floating point.
pub fn numeric_zero_scan(g: &Gamma, window: (i64, i64), tol: f64) -> Result<Vec<i64>> {
    if window.0 > window.1 {
        return Err(Error::InvalidInput(format!("empty window [{}, {}]", window.0, window.1)));
    }
    let fg = g.to_float()?;
    let freqs = fg.floats().expect("float view");
    Ok((window.0..=window.1)
        .filter(|&k| {
            let s: Complex64 = freqs
                .iter()
                .map(|&f| {
                    let t = (f * k as f64).rem_euclid(1.0);
                    Complex64::from_polar(1.0, std::f64::consts::TAU * t)
                })
                .sum();
            s.norm() < tol
        })
        .collect())
}

/// All `B ⊆ ℤ_n` with `0 ∈ B` and `A ⊕ B = ℤ_n`, each sorted, in
/// lexicographic order.
pub fn tiling_complements_mod(c: &Cluster, n: u64) -> Result<Vec<Vec<u64>>> {
    let d = c.d() as u64;
    if n == 0 || n % d != 0 {
        return Err(Error::InvalidInput(format!("d = {d} must divide n = {n}")));
    }
    let a: Vec<u64> = c.elements().iter().map(|&x| x as u64 % n).collect();
    if a.iter().unique().count() != a.len() {
        return Ok(Vec::new());
    }
    let size = (n / d) as usize;
    let tiles = |b: &[u64]| {
        let mut hit = vec![false; n as usize];
        for &x in &a {
            for &y in b {
                let r = ((x + y) % n) as usize;
                if hit[r] {
                    return false;
                }
                hit[r] = true;
            }
        }
        true
    };
    let out = (1..n)
        .combinations(size - 1)
        .par_bridge()
        .filter_map(|tail| {
            let mut b = Vec::with_capacity(size);
            b.push(0);
            b.extend(tail);
            tiles(&b).then_some(b)
        })
        .collect::<Vec<_>>();
    let mut out = out;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> Cluster {
        Cluster::new(v).unwrap()
    }

    fn g(p: &[(i64, i64)]) -> Gamma {
        Gamma::from_fractions(p).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn farey_is_sorted_and_reduced() {
        let f = farey_interior(4);
        assert_eq!(f, vec![(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn grid_search_examples() {
        let s = first_spectrum_on_grid(&c(&[0, 2]), 4).unwrap();
        assert_eq!(s.witness, Some(g(&[(0, 1), (1, 4)])));
        assert_eq!((s.grid_size, s.checked), (3, 1));
        let s = first_spectrum_on_grid(&c(&[0, 1, 3]), 2).unwrap();
        assert_eq!((s.witness, s.grid_size), (None, 0));
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_rational_spectra(&c(&[0, 1, 2]), 3).unwrap();
        assert!(e.spectra.contains(&g(&[(0, 1), (1, 3), (2, 3)])));
        let e = enumerate_rational_spectra(&c(&[0, 2]), 4).unwrap();
        assert_eq!(e.spectra, vec![g(&[(0, 1), (1, 4)]), g(&[(0, 1), (3, 4)])]);
        assert!(e.exhaustive);
        assert!(enumerate_rational_spectra(&c(&[0, 1, 3]), 6).unwrap().spectra.is_empty());
        assert!(enumerate_rational_spectra(&c(&[0, 2]), 0).is_err());
    }

    #[test]
    fn numeric_scan_examples() {
        let f = Gamma::float(vec![0.0, 0.25]).unwrap();
        assert_eq!(numeric_zero_scan(&f, (-4, 4), 1e-9).unwrap(), vec![-2, 2]);
        let third = g(&[(0, 1), (1, 3), (2, 3)]);
        let expect: Vec<i64> = (-6..=6).filter(|k| k % 3 != 0).collect();
        assert_eq!(numeric_zero_scan(&third, (-6, 6), 1e-9).unwrap(), expect);
        let f = Gamma::float(vec![0.0, 0.123456]).unwrap();
        assert!(numeric_zero_scan(&f, (-50, 50), 1e-9).unwrap().is_empty());
    }

    #[test]
    fn tiling_examples() {
        // {0,2} + {0,3} = {0,3,2,1} tiles as well
        assert_eq!(tiling_complements_mod(&c(&[0, 2]), 4).unwrap(), vec![vec![0, 1], vec![0, 3]]);
        assert_eq!(tiling_complements_mod(&c(&[0, 1, 2]), 3).unwrap(), vec![vec![0]]);
        assert!(tiling_complements_mod(&c(&[0, 1, 3]), 6).unwrap().is_empty());
        assert!(tiling_complements_mod(&c(&[0, 1, 3]), 4).is_err());
        assert!(tiling_complements_mod(&c(&[0, 4]), 4).unwrap().is_empty());
    }
}
