"""Independent reference values for the Rust test-suite.

Uses sympy (cyclotomic polynomials, factorization, polynomial remainders)
and 50-digit mpmath evaluation, sharing no code with the Rust crate.
Writes crates/core/tests/fixtures/oracle.json.

    python3 python/make_oracle_fixtures.py
"""

import itertools
import json
import random
from fractions import Fraction
from math import gcd
from pathlib import Path

import mpmath
import sympy
from sympy.abc import x

mpmath.mp.dps = 50
ZERO = mpmath.mpf("1e-30")
OUT = Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures/oracle.json"


def lcm(a, b):
    return a * b // gcd(a, b)


def cyclotomics(qmax):
    return {
        str(q): [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(q, x), x).all_coeffs())]
        for q in range(1, qmax + 1)
    }


def exp_sum_is_zero(gamma, k):
    q = 1
    for g in gamma:
        q = lcm(q, g.denominator)
    p = sum(x ** ((g.numerator * (q // g.denominator) * k) % q) for g in gamma)
    return sympy.rem(sympy.Poly(p, x), sympy.Poly(sympy.cyclotomic_poly(q, x), x)).is_zero


def random_gammas(rng, count):
    out = []
    for _ in range(count):
        q = rng.randint(1, 24)
        d = rng.randint(1, min(8, q))
        nums = rng.sample(range(1, q), d - 1) if q > 1 else []
        out.append([Fraction(0)] + [Fraction(n, q) for n in nums])
    return out


def zero_sets(rng):
    cases = []
    for gamma in random_gammas(rng, 40):
        q = 1
        for g in gamma:
            q = lcm(q, g.denominator)
        window = (-2 * q, 2 * q)
        zeros = [k for k in range(window[0], window[1] + 1) if exp_sum_is_zero(gamma, k)]
        cases.append({
            "gamma": [[g.numerator, g.denominator] for g in gamma],
            "window": list(window),
            "zeros": zeros,
        })
    return cases


def mask_zeros(rng):
    clusters = [[0, 2], [0, 1, 2], [0, 1, 3], [0, 3, 6], [0, 1, 4, 5], [0, 1, 2, 3, 4, 5]]
    for _ in range(25):
        m = rng.randint(1, 14)
        d = rng.randint(2, m + 1)
        clusters.append(sorted([0] + rng.sample(range(1, m + 1), d - 1)))
    cases = []
    for a in clusters:
        mask = sum(x ** e for e in a)
        divisors = []
        for factor, _ in sympy.factor_list(mask)[1]:
            f = sympy.Poly(factor, x)
            for q in range(1, 2 * max(a) ** 2 + 2):
                if sympy.totient(q) == f.degree() and f == sympy.Poly(sympy.cyclotomic_poly(q, x), x):
                    divisors.append(q)
        zeros = sorted(Fraction(p, q) for q in divisors if q > 1 for p in range(1, q) if gcd(p, q) == 1)
        cases.append({"cluster": a, "divisors": sorted(divisors), "zeros": [[z.numerator, z.denominator] for z in zeros]})
    return cases


def is_pair(a, gamma):
    diffs = {u - v for u in a for v in a if u > v}
    for k in diffs:
        s = mpmath.fsum(mpmath.expj(2 * mpmath.pi * mpmath.mpf(g.numerator) / g.denominator * k) for g in gamma)
        if abs(s) > ZERO:
            return False
    return True


def farey(den_max):
    return sorted({Fraction(p, q) for q in range(2, den_max + 1) for p in range(1, q)})


def spectra(rng):
    clusters = [[0, 2], [0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 2, 4], [0, 1, 2, 3], [0, 1, 4, 5], [0, 2, 3, 5]]
    cases = []
    for a in clusters:
        den_max = 8 if len(a) <= 3 else 6
        found = []
        for tail in itertools.combinations(farey(den_max), len(a) - 1):
            gamma = [Fraction(0)] + list(tail)
            if is_pair(a, gamma):
                found.append([[g.numerator, g.denominator] for g in gamma])
        cases.append({"cluster": a, "den_max": den_max, "spectra": found})
    return cases


def flags_brute(s_set, r, s):
    lo, hi = min(s_set), max(s_set)
    out = []
    for m in range(lo - 1 - r, hi + 1):
        for n in range(r + 1, hi - lo + 1):
            members = [m + i + j * n for j in range(s) for i in range(1, r + 1)]
            if all(v in s_set for v in members):
                out.append([m, r, n, s])
    return out


def flag_cases(rng):
    cases = []
    for _ in range(30):
        size = rng.randint(1, 20)
        s_set = sorted(rng.sample(range(-15, 16), size))
        r = rng.randint(1, 3)
        s = rng.randint(1, 3)
        cases.append({"set": s_set, "r": r, "s": s, "flags": flags_brute(set(s_set), r, s)})
    return cases


def tilings():
    cases = []
    for a in [[0, 2], [0, 1, 2], [0, 1, 3], [0, 1, 4, 5], [0, 3], [0, 1, 5, 6], [0, 2, 4]]:
        d = len(a)
        for n in range(d, 13, d):
            res = {v % n for v in a}
            found = []
            if len(res) == d:
                for tail in itertools.combinations(range(1, n), n // d - 1):
                    b = (0,) + tail
                    sums = sorted((u + v) % n for u in a for v in b)
                    if sums == list(range(n)):
                        found.append(list(b))
            cases.append({"cluster": a, "n": n, "complements": found})
    return cases


def main():
    rng = random.Random(20240611)
    doc = {
        "cyclotomic": cyclotomics(60),
        "zero_sets": zero_sets(rng),
        "mask_zeros": mask_zeros(rng),
        "spectra": spectra(rng),
        "flags": flag_cases(rng),
        "tilings": tilings(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
