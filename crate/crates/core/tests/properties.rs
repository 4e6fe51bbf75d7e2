use std::collections::BTreeSet;

use num::{BigRational, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;

use specrat::arith::{
    companion_power_apply, reduce_mod_cyclotomic, Evaluator, ExactSums, ExpSumValue, PowerSums,
};
use specrat::flags::{
    check_spectrality_verdict, decide_spectrality, find_flags, theorem4_verify_on,
    theorem6_verify_on, Flag, SpectralityStatus, ThresholdMode,
};
use specrat::oracle::{enumerate_rational_spectra, numeric_zero_scan};
use specrat::pair::verify_pair;
use specrat::spectrum::{class_zero_set, common_zero_set, rational_classes, zero_report};
use specrat::{Cluster, Error, FrequencyValue, Gamma};

fn rational_gamma(max_d: usize, max_den: i64) -> impl Strategy<Value = Gamma> {
    (1..=max_den).prop_flat_map(move |q| {
        let tail = subsequence((1..q).collect::<Vec<_>>(), 0..max_d.min(q as usize));
        (Just(q), tail)
    })
    .prop_map(|(q, nums)| {
        let mut pairs = vec![(0, 1)];
        pairs.extend(nums.into_iter().map(|n| (n, q)));
        Gamma::from_fractions(&pairs).unwrap()
    })
}

fn cluster(max_d: usize, max: i64) -> impl Strategy<Value = Cluster> {
    subsequence((1..=max).collect::<Vec<_>>(), 0..max_d.min(max as usize + 1)).prop_map(|tail| {
        let mut els = vec![0];
        els.extend(tail);
        Cluster::new(&els).unwrap()
    })
}

/// Cluster and exact Γ of equal size `d ≤ max_d`.
fn same_size(max_d: usize, max: i64, max_den: i64) -> impl Strategy<Value = (Cluster, Gamma)> {
    (1..=max_d).prop_flat_map(move |d| {
        let c = subsequence((1..=max).collect::<Vec<_>>(), d - 1);
        let g = (d as i64..=max_den).prop_flat_map(move |q| {
            (Just(q), subsequence((1..q).collect::<Vec<_>>(), d - 1))
        });
        (c, g)
    })
    .prop_map(|(tail, (q, nums))| {
        let mut els = vec![0];
        els.extend(tail);
        let mut pairs = vec![(0, 1)];
        pairs.extend(nums.into_iter().map(|n| (n, q)));
        (Cluster::new(&els).unwrap(), Gamma::from_fractions(&pairs).unwrap())
    })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Symbolic Γ of size `d` with entries `p/den + c·b_g`, `g ∈ {0, 1, 2}`
/// (`g = 0` means rational). Repeated entries are rejected by the filter.
fn symbolic_gamma(max_d: usize, max_den: i64) -> impl Strategy<Value = Gamma> {
    (2..=max_d)
        .prop_flat_map(move |d| {
            prop::collection::vec((0..max_den, 1..=max_den, 0usize..3, 1i64..=2), d - 1)
        })
        .prop_filter_map("repeated entry", |tail| {
            let mut entries = vec![FrequencyValue::from_fraction(0, 1)];
            for (p, den, g, c) in tail {
                let mut v = FrequencyValue::from_fraction(p % den, den);
                if g > 0 {
                    v = v.with_gen(&format!("b{g}"), q(c, 1));
                }
                entries.push(v);
            }
            Gamma::symbolic(entries).ok()
        })
}

fn period(g: &Gamma) -> i64 {
    g.common_denominator().unwrap().try_into().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn float_embedding_matches_exact(g in rational_gamma(8, 24), k in -1000i64..=1000) {
        let tol = 1e-9 * g.len() as f64;
        let exact = Evaluator::new(&g).unwrap().value(k).to_complex().unwrap();
        let float = Evaluator::new(&g.to_float().unwrap()).unwrap().value(k).to_complex().unwrap();
        prop_assert!((exact - float).norm() <= tol);
    }

    #[test]
    fn negation_conjugates(g in rational_gamma(8, 24), k in -200i64..=200) {
        let ev = Evaluator::new(&g).unwrap();
        match (ev.value(k), ev.value(-k)) {
            (ExpSumValue::Exact(a), ExpSumValue::Exact(b)) => prop_assert_eq!(a.conj(), b),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
        prop_assert_eq!(ev.is_zero_at(k), ev.is_zero_at(-k));
    }

    #[test]
    fn companion_powers_shift_state(g in rational_gamma(6, 16), k in -30i64..=30, n in 0u64..200) {
        let sums = ExactSums::new(&g.rationals().unwrap()).unwrap();
        let spec = sums.recurrence().unwrap();
        let moved = companion_power_apply(&spec, &sums.state_vector(k), n).unwrap();
        prop_assert_eq!(moved, sums.state_vector(k + n as i64));
    }

    #[test]
    fn unity_polynomial_reduces_to_zero(qq in 1u64..=200) {
        let mut p = vec![BigRational::zero(); qq as usize + 1];
        p[0] = q(-1, 1);
        p[qq as usize] = q(1, 1);
        prop_assert!(reduce_mod_cyclotomic(&p, qq).unwrap().is_zero());
    }

    #[test]
    fn difference_set_is_symmetric_and_bounded(c in cluster(10, 40)) {
        let ds = c.difference_set();
        let d = c.d();
        prop_assert!(ds.len() <= d * (d - 1));
        for &k in ds.values() {
            prop_assert!(ds.contains(-k) && k != 0);
        }
    }

    #[test]
    fn autocorrelation_supports_difference_set(c in cluster(10, 40)) {
        let ds = c.difference_set();
        let m = Cluster::max(&c);
        let mut total = 0;
        for k in -m - 2..=m + 2 {
            let w = c.autocorrelation(k);
            prop_assert_eq!(w == 0, k != 0 && !ds.contains(k));
            total += w;
        }
        prop_assert_eq!(total, (c.d() * c.d()) as u64);
    }

    #[test]
    fn mask_zeros_match_classification(c in cluster(8, 20)) {
        let zeros: BTreeSet<BigRational> = c.rational_mask_zeros().into_iter().collect();
        for den in 2..=50i64 {
            for p in 1..den {
                let lam = q(p, den);
                if *lam.denom() != den.into() {
                    continue;
                }
                let is_zero = c.classify_frequency(&lam).unwrap() == specrat::cluster::FrequencyClass::RationalZero;
                prop_assert_eq!(is_zero, zeros.contains(&lam));
            }
        }
        for lam in &zeros {
            let (p, den) = (lam.numer().try_into().unwrap_or(0i64), lam.denom().try_into().unwrap_or(1i64));
            let s: num::complex::Complex64 = c.elements().iter()
                .map(|&a| num::complex::Complex64::from_polar(1.0, std::f64::consts::TAU * ((a * p) % den) as f64 / den as f64))
                .sum();
            prop_assert!(s.norm() < 1e-9);
        }
    }

    #[test]
    fn zero_set_is_periodic(g in rational_gamma(8, 24)) {
        let qq = period(&g);
        let ev = Evaluator::new(&g).unwrap();
        for k in -5 * qq..=5 * qq {
            prop_assert_eq!(ev.is_zero_at(k), ev.is_zero_at(k + qq));
        }
    }

    #[test]
    fn periodic_part_is_conjugate_symmetric(g in symbolic_gamma(6, 8)) {
        let x = common_zero_set(&g).unwrap();
        let p = x.period;
        for r in 0..p {
            prop_assert_eq!(x.residues.contains(&r), x.residues.contains(&((p - r) % p)));
        }
    }

    #[test]
    fn class_zero_sets_vanish_directly(g in symbolic_gamma(6, 8)) {
        let part = rational_classes(&g).unwrap();
        let values = g.values().unwrap();
        let m = part.period as i64;
        for (j, class) in part.classes.iter().enumerate() {
            let base = &values[class[0]];
            let offsets: Vec<BigRational> = class.iter().map(|&i| {
                let off = values[i].difference(base).rational;
                &off - off.floor()
            }).collect();
            let sub = Gamma::exact(offsets).unwrap();
            let ev = Evaluator::new(&sub).unwrap();
            let z = class_zero_set(&g, j).unwrap();
            for k in z.members_in(-3 * m, 3 * m) {
                prop_assert!(ev.is_zero_at(k), "class {} at k = {}", j, k);
            }
        }
    }

    #[test]
    fn symbolic_zeros_are_the_periodic_part(g in symbolic_gamma(6, 8)) {
        let x = common_zero_set(&g).unwrap();
        let ev = Evaluator::new(&g).unwrap();
        let m = x.period as i64;
        for k in -2 * m..=2 * m {
            prop_assert_eq!(ev.is_zero_at(k), x.contains(k));
        }
    }

    #[test]
    fn singleton_classes_have_no_zeros(d in 2usize..=4) {
        let mut entries = vec![FrequencyValue::from_fraction(0, 1)];
        for j in 1..d {
            entries.push(FrequencyValue::from_fraction(0, 1).with_gen(&format!("b{j}"), q(1, 1)));
        }
        let g = Gamma::symbolic(entries).unwrap();
        prop_assert!(common_zero_set(&g).unwrap().is_empty());
        let r = zero_report(&g, (-30, 30)).unwrap();
        prop_assert!(r.periodic.is_empty() && r.exceptional.is_empty());
    }

    #[test]
    fn reflection_preserves_verdict((c, g) in same_size(5, 10, 12)) {
        let a = verify_pair(&c, &g).unwrap().is_spectral_pair;
        let b = verify_pair(&c, &g.reflect()).unwrap().is_spectral_pair;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn numeric_scan_matches_exact_zeros(g in rational_gamma(8, 24), lo in -60i64..0, span in 0i64..120) {
        let ev = Evaluator::new(&g).unwrap();
        let exact: Vec<i64> = (lo..=lo + span).filter(|&k| ev.is_zero_at(k)).collect();
        prop_assert_eq!(numeric_zero_scan(&g, (lo, lo + span), 1e-9).unwrap(), exact);
    }

    #[test]
    fn flag_membership_is_arithmetic(m in -20i64..20, r in 1i64..5, extra in 1i64..6, s in 1i64..5, x in -40i64..60) {
        let f = Flag::new(m, r, r + extra, s).unwrap();
        let members = f.members();
        prop_assert_eq!(members.len() as i64, r * s);
        prop_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let arithmetic = (0..s).any(|n| {
            let y = x - n * f.stride();
            y > m && y <= m + r
        });
        prop_assert_eq!(arithmetic, members.contains(&x));
        prop_assert_eq!(f.contains(x), arithmetic);
    }

    #[test]
    fn flag_search_is_complete(
        set in prop::collection::btree_set(-20i64..20, 1..30),
        (r, s) in (1i64..=8).prop_flat_map(|r| (Just(r), 1i64..=(8 / r))),
    ) {
        let lo = *set.first().unwrap();
        let hi = *set.last().unwrap();
        let mut brute = Vec::new();
        for m in lo - 1 - r..=hi {
            for n in r + 1..=hi - lo {
                let f = Flag::new(m, r, n, s).unwrap();
                if f.members().iter().all(|k| set.contains(k)) {
                    brute.push(f);
                }
            }
        }
        prop_assert_eq!(find_flags(&set, r, s, None, None), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_and_float_verdicts_agree((c, g) in same_size(6, 12, 24)) {
        let exact = verify_pair(&c, &g).unwrap();
        let float = verify_pair(&c, &g.to_float().unwrap()).unwrap();
        prop_assert_eq!(exact.is_spectral_pair, float.is_spectral_pair);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multi_class_zero_sets_hold_no_forcing_flag(g in symbolic_gamma(5, 6)) {
        prop_assume!(rational_classes(&g).unwrap().class_count() >= 2);
        let d = g.len() as i64;
        let x = common_zero_set(&g).unwrap();
        let m = 3 * x.period as i64;
        let window: BTreeSet<i64> = x.members_in(-m, m * (d + 1) + d).into_iter().collect();
        for r in ThresholdMode::AsStated.min_r(d)..d {
            prop_assert!(find_flags(&window, r, d, Some((-m, m)), Some(m)).is_empty(), "r = {}", r);
        }
    }

    #[test]
    fn decider_verdicts_are_sound(c in cluster(4, 8)) {
        let v = decide_spectrality(&c, None, ThresholdMode::AsStated).unwrap();
        check_spectrality_verdict(&v).unwrap();
        match v.status {
            SpectralityStatus::Spectral => {
                let w = v.witness_gamma.as_ref().unwrap();
                prop_assert!(verify_pair(&c, w).unwrap().is_spectral_pair);
            }
            SpectralityStatus::NotSpectral => {
                let n = v.certificate.as_ref().unwrap().denominator_divides.unwrap();
                let d = c.d() as u64;
                let expect = (1..d).fold(1u64, |acc, i| acc * (n - i) / i);
                prop_assert_eq!(v.grid_size, if n < d { 0 } else { expect });
                prop_assert!(v.exhausted);
            }
            SpectralityStatus::Unknown => prop_assert!(v.certificate.is_none() && !v.exhausted),
        }
        if let Some(cert) = &v.certificate {
            let n = cert.denominator_divides.unwrap();
            let found = enumerate_rational_spectra(&c, n).unwrap();
            prop_assert_eq!(v.status == SpectralityStatus::Spectral, !found.spectra.is_empty());
            for s in &found.spectra {
                prop_assert!(verify_pair(&c, s).unwrap().is_spectral_pair);
            }
        }
    }
}

/// Every `{j/q : j ∈ J}` with `0 ∈ J`, `q ≤ 12`, `|J| ≤ 4`.
fn cyclotomic_family() -> Vec<Gamma> {
    let mut out = Vec::new();
    for qq in 2..=12i64 {
        for d in 2..=4usize.min(qq as usize) {
            for tail in itertools_combinations(1..qq, d - 1) {
                let mut pairs = vec![(0, 1)];
                pairs.extend(tail.iter().map(|&j| (j, qq)));
                let g = Gamma::from_fractions(&pairs).unwrap();
                if period(&g) == qq {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn itertools_combinations(range: std::ops::Range<i64>, k: usize) -> Vec<Vec<i64>> {
    let items: Vec<i64> = range.collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(p) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return out;
        };
        idx[p] += 1;
        for i in p + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

#[test]
fn extension_mechanism_on_cyclotomic_spectra() {
    let mut checked = 0;
    for g in cyclotomic_family() {
        let qq = period(&g);
        let d = g.len() as i64;
        let ev = Evaluator::new(&g).unwrap();
        let zeros: BTreeSet<i64> = (-2 * qq..=3 * qq).filter(|&k| ev.is_zero_at(k)).collect();
        for r in 1..d {
            for f in find_flags(&zeros, r, d - r + 1, Some((-2 * qq, qq)), Some(2 * qq)) {
                let (ok, trace) = theorem6_verify_on(&g, &f).unwrap();
                assert!(ok, "{g:?} with {f}: {trace:?}");
                assert!(trace.extended.members().iter().all(|&k| ev.is_zero_at(k)));
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} flags exercised");
}

#[test]
fn concrete_flag_certificates_never_contradict() {
    for g in cyclotomic_family() {
        let qq = period(&g);
        let d = g.len() as i64;
        let ev = Evaluator::new(&g).unwrap();
        let zeros: BTreeSet<i64> = (-2 * qq..=4 * qq).filter(|&k| ev.is_zero_at(k)).collect();
        for mode in [ThresholdMode::AsStated, ThresholdMode::Conservative] {
            for r in mode.admissible(d) {
                for f in find_flags(&zeros, r, d, Some((-2 * qq, qq)), Some(qq)) {
                    match theorem4_verify_on(&g, &f, mode) {
                        Ok(cert) => assert_eq!(cert.denominator_divides, Some(f.stride() as u64)),
                        Err(Error::TheoremViolation(msg)) => panic!("{msg}"),
                        Err(e) => panic!("{g:?} with {f}: {e}"),
                    }
                }
            }
        }
    }
}
