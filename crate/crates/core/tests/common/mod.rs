//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use num::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use specrat::{Cluster, FrequencyValue, Gamma};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Exact Γ with common denominator `q ≤ max_den` and `|Γ| ≤ max_d`.
/// Returns `(Γ, q)` where `q` is the chosen grid, a multiple of the lcm.
pub fn rational_gamma<R: Rng>(rng: &mut R, max_d: usize, max_den: i64) -> (Gamma, i64) {
    let den = rng.gen_range(1..=max_den);
    let d = rng.gen_range(1..=max_d.min(den as usize));
    let mut nums: Vec<i64> = (1..den).collect();
    nums.shuffle(rng);
    let mut pairs = vec![(0, 1)];
    pairs.extend(nums[..d - 1].iter().map(|&n| (n, den)));
    (Gamma::from_fractions(&pairs).expect("distinct grid points"), den)
}

/// Cluster with `d` elements drawn from `[0, max]`, always containing 0.
pub fn cluster<R: Rng>(rng: &mut R, d: usize, max: i64) -> Cluster {
    let mut pool: Vec<i64> = (1..=max).collect();
    pool.shuffle(rng);
    let mut els = vec![0];
    els.extend(pool.into_iter().take(d - 1));
    Cluster::new(&els).expect("distinct with 0")
}

/// Symbolic Γ of size `d ≥ 2` with at least two rational classes.
pub fn multi_class_gamma<R: Rng>(rng: &mut R, d: usize) -> Gamma {
    let gens = ["b1", "b2", "b3"];
    loop {
        let mut entries = vec![FrequencyValue::from_fraction(0, 1)];
        for j in 1..d {
            let den = rng.gen_range(1..=12);
            let mut v = FrequencyValue::from_fraction(rng.gen_range(0..den), den);
            // the last entry is forced irrational so that t ≥ 2
            if j == d - 1 || rng.gen_bool(0.6) {
                let g = gens[rng.gen_range(0..gens.len())];
                v = v.with_gen(g, q(rng.gen_range(1..=3), rng.gen_range(1..=2)));
            }
            entries.push(v);
        }
        if let Ok(g) = Gamma::symbolic(entries) {
            return g;
        }
    }
}
