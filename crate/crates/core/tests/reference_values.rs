//! Comparison against reference values from `python/make_oracle_fixtures.py`
//! (sympy and 50-digit mpmath).

use std::collections::BTreeSet;

use num::{BigInt, BigRational};
use serde_json::Value;

use specrat::arith::{cyclotomic, Evaluator};
use specrat::flags::find_flags;
use specrat::oracle::{enumerate_rational_spectra, tiling_complements_mod};
use specrat::{Cluster, Gamma};

fn fixtures() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/oracle.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

fn pairs(v: &Value) -> Vec<(i64, i64)> {
    v.as_array().unwrap().iter().map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap())).collect()
}

#[test]
fn cyclotomic_polynomials() {
    let fx = fixtures();
    for (q, coeffs) in fx["cyclotomic"].as_object().unwrap() {
        let phi = cyclotomic(q.parse().unwrap()).unwrap();
        let expect: Vec<BigInt> = ints(coeffs).into_iter().map(BigInt::from).collect();
        assert_eq!(phi.coeffs(), expect.as_slice(), "Φ_{q}");
    }
}

#[test]
fn integer_zero_sets() {
    let fx = fixtures();
    for case in fx["zero_sets"].as_array().unwrap() {
        let gamma = Gamma::from_fractions(&pairs(&case["gamma"])).unwrap();
        let w = ints(&case["window"]);
        let ev = Evaluator::new(&gamma).unwrap();
        let got: Vec<i64> = (w[0]..=w[1]).filter(|&k| ev.is_zero_at(k)).collect();
        assert_eq!(got, ints(&case["zeros"]), "{:?}", case["gamma"]);
    }
}

#[test]
fn mask_polynomial_zeros() {
    let fx = fixtures();
    for case in fx["mask_zeros"].as_array().unwrap() {
        let c = Cluster::new(&ints(&case["cluster"])).unwrap();
        let divisors: Vec<u64> = ints(&case["divisors"]).into_iter().map(|q| q as u64).filter(|&q| q > 1).collect();
        assert_eq!(c.cyclotomic_divisors(), divisors, "{c:?}");
        let zeros: Vec<BigRational> = pairs(&case["zeros"])
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        assert_eq!(c.rational_mask_zeros(), zeros, "{c:?}");
    }
}

#[test]
fn bounded_spectrum_enumeration() {
    let fx = fixtures();
    for case in fx["spectra"].as_array().unwrap() {
        let c = Cluster::new(&ints(&case["cluster"])).unwrap();
        let den_max = case["den_max"].as_u64().unwrap();
        let expect: Vec<Gamma> = case["spectra"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| Gamma::from_fractions(&pairs(g)).unwrap())
            .collect();
        let got = enumerate_rational_spectra(&c, den_max).unwrap();
        assert_eq!(got.spectra, expect, "{c:?} with den_max {den_max}");
    }
}

#[test]
fn flag_search() {
    let fx = fixtures();
    for case in fx["flags"].as_array().unwrap() {
        let set: BTreeSet<i64> = ints(&case["set"]).into_iter().collect();
        let (r, s) = (case["r"].as_i64().unwrap(), case["s"].as_i64().unwrap());
        let got: Vec<Vec<i64>> = find_flags(&set, r, s, None, None)
            .into_iter()
            .map(|f| vec![f.m(), f.r(), f.stride(), f.s()])
            .collect();
        let expect: Vec<Vec<i64>> = case["flags"].as_array().unwrap().iter().map(ints).collect();
        assert_eq!(got, expect, "{set:?} r={r} s={s}");
    }
}

#[test]
fn tiling_complements() {
    let fx = fixtures();
    for case in fx["tilings"].as_array().unwrap() {
        let c = Cluster::new(&ints(&case["cluster"])).unwrap();
        let n = case["n"].as_u64().unwrap();
        let expect: Vec<Vec<u64>> = case["complements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| ints(b).into_iter().map(|v| v as u64).collect())
            .collect();
        assert_eq!(tiling_complements_mod(&c, n).unwrap(), expect, "{c:?} mod {n}");
    }
}
