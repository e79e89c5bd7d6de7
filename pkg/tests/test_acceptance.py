"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run ``python3 tests/test_acceptance.py`` for the summary lines, or collect
it with pytest (``pytest -s`` shows the same lines).
"""

import random
import sys
import time
from fractions import Fraction
from itertools import product

import sympy

from fixtures import (
    CUSP,
    ESSD,
    QUARTIC,
    QUINTIC,
    SQRT_SUM,
    W_1_S2,
    W_1_S5,
    W_4_S2,
    W_S2_1,
    load,
    q,
)
from omega_puiseux.scalars import CycScalar, QuadReal, rat_str
from omega_puiseux.semigroup import check_invariance, partition_branches, semigroup_window
from omega_puiseux.series import GSeries, Weight, series_equal_upto
from omega_puiseux.solver import YPoly, expand_roots

import test_properties


def report(number: int, ok: bool, detail: str, elapsed: float, limit: float | None = None):
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; took {elapsed:.2f}s, limit {limit}s"
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail}; {elapsed:.2f}s)")
    assert ok, detail


def Q(v):
    return CycScalar.rational(Fraction(v))


def coeffs_on(series, exps):
    return [series.coeff(tuple(Fraction(x) for x in e)) for e in exps]


def test_criterion_1_essd():
    t0 = time.perf_counter()
    w, f = load(ESSD, W_1_S2)
    roots = expand_roots(f, 3)
    half = Fraction(1, 2)
    expected = {
        GSeries(w, [((0, 0), 1), ((half, 0), s), ((0, 1), 1)], exact=True) for s in (1, -1)
    }
    got = {r.series for r in roots}
    branches = partition_branches(roots)
    inv = check_invariance(f, roots, branches[0], bound=3) if len(branches) == 1 else None
    elapsed = time.perf_counter() - t0
    ok = (
        got == expected
        and all(r.exact and r.multiplicity == 1 for r in roots)
        and len(branches) == 1
        and inv is not None
        and inv.invariant
    )
    report(1, ok, f"{len(roots)} exact roots, {len(branches)} branch, invariant", elapsed, 1)


def test_criterion_2_quartic():
    t0 = time.perf_counter()
    w, f = load(QUARTIC, W_1_S2)
    roots = expand_roots(f, 3)
    half = Fraction(1, 2)
    expected = {
        GSeries(w, [((half, 0), s1), ((0, half), s2)], exact=True)
        for s1, s2 in product((1, -1), repeat=2)
    }
    branches = partition_branches(roots)
    elapsed = time.perf_counter() - t0
    ok = (
        {r.series for r in roots} == expected
        and len(roots) == 4
        and all(r.exact for r in roots)
        and len(branches) == 1
    )
    report(2, ok, f"{len(roots)} exact roots, {len(branches)} branch", elapsed, 1)


SIX = [-1, Fraction(-1, 2), Fraction(1, 8), Fraction(-1, 16), Fraction(5, 128), Fraction(-7, 256)]


def test_criterion_3_sqrt_sum():
    t0 = time.perf_counter()
    # omega = (4, sqrt2): xi1 = -y - 1/2 x y^-1 + ...
    w, f = load(SQRT_SUM, W_4_S2)
    roots = expand_roots(f, q("20-9*sqrt(2)"))
    exps = [(0, 1), (1, -1), (2, -3), (3, -5), (4, -7), (5, -9)]
    xi1 = roots[0].series
    ok_a = coeffs_on(xi1, exps) == [Q(c) for c in SIX] and len(xi1) == 6
    ok_a &= coeffs_on(roots[1].series, exps) == [Q(-c) for c in SIX]
    n_a = len(partition_branches(roots))

    # omega = (1, sqrt2): xi1 = -x^(1/2) - 1/2 x^(-1/2) y^2 + ...
    w, f = load(SQRT_SUM, W_1_S2)
    roots = expand_roots(f, q("-9/2+10*sqrt(2)"))
    h = Fraction(1, 2)
    exps = [(h, 0), (-h, 2), (-3 * h, 4), (-5 * h, 6), (-7 * h, 8), (-9 * h, 10)]
    xi1 = roots[0].series
    ok_b = coeffs_on(xi1, exps) == [Q(c) for c in SIX] and len(xi1) == 6
    ok_b &= coeffs_on(roots[1].series, exps) == [Q(-c) for c in SIX]
    n_b = len(partition_branches(roots))

    # the swapped weight (sqrt2, 1) also gives a single branch
    w, f = load(SQRT_SUM, W_S2_1)
    n_c = len(partition_branches(expand_roots(f, 4)))
    elapsed = time.perf_counter() - t0
    ok = ok_a and ok_b and (n_a, n_b, n_c) == (2, 1, 1)
    report(3, ok, f"six coefficients match under both weights; branches {n_a}, {n_b}", elapsed, 5)


def test_criterion_4_quintic():
    t0 = time.perf_counter()
    w, f = load(QUINTIC, W_1_S5)
    roots = expand_roots(f, q("-28/3+17/3*sqrt(5)"))
    third = Fraction(2, 3)
    lead3 = [r.series.coeff((third, third)) for r in roots[:3]]
    lead2 = [r.series.coeff((Fraction(-1), Fraction(3, 2))) for r in roots[3:]]
    zeta4 = CycScalar.zeta(4)
    ok = len(roots) == 5 and all(r.multiplicity == 1 for r in roots)
    ok &= lead3[0] == Q(-1)
    ok &= set(lead3) == {Q(-1), CycScalar.zeta(6, 5), CycScalar.zeta(6, 1)}
    ok &= lead2 == [-zeta4, zeta4]
    xi1, xi4 = roots[0].series, roots[3].series
    ok &= xi1.coeff((Fraction(-8, 3), Fraction(7, 3))) == Q(Fraction(-1, 3))
    ok &= xi1.coeff((Fraction(-6), Fraction(4))) == Q(Fraction(1, 3))
    ok &= xi4.coeff((Fraction(-6), Fraction(4))) == Q(Fraction(-1, 2))
    members = sorted(b.members for b in partition_branches(roots))
    ok &= members == [(0, 1, 2), (3, 4)]
    elapsed = time.perf_counter() - t0
    report(4, ok, f"5 roots, branches {members}", elapsed, 10)


INVARIANCE_CASES = [
    ("essd", ESSD, W_1_S2, "3", "3"),
    ("quartic", QUARTIC, W_1_S2, "3", "3"),
    ("sqrt-sum (1,sqrt2)", SQRT_SUM, W_1_S2, "-9/2+10*sqrt(2)", "3"),
    ("sqrt-sum (sqrt2,1)", SQRT_SUM, W_S2_1, "4", "3"),
    ("sqrt-sum (4,sqrt2)", SQRT_SUM, W_4_S2, "20-9*sqrt(2)", "8"),
    ("quintic", QUINTIC, W_1_S5, "-16+9*sqrt(5)", "4"),
]


def test_criterion_5_invariance():
    t0 = time.perf_counter()
    pairs, smallest, failures = 0, None, []
    for name, poly, omega, trunc, bound in INVARIANCE_CASES:
        w, f = load(poly, omega)
        roots = expand_roots(f, q(trunc))
        for b in partition_branches(roots):
            if len(b.members) < 2:
                continue
            rep = check_invariance(f, roots, b, bound=q(bound))
            pairs += len(b.members) - 1
            sizes = [len(win.values) for win in rep.windows]
            smallest = min(sizes + ([smallest] if smallest is not None else []))
            if not rep.invariant or min(sizes) < 8:
                failures.append((name, b.members, sizes, rep.discrepancies))
    elapsed = time.perf_counter() - t0
    ok = not failures and pairs > 0
    detail = f"{pairs} same-branch comparisons equal, smallest window {smallest} values"
    if failures:
        detail = f"failures {failures}"
    report(5, ok, detail, elapsed, 30)


def cusp_oracle(bound: int) -> set:
    """Leading exponents of h(x, x^(3/2)) by brute force over small h.

    Substitutes x = t^2, y = t^3 with sympy and enumerates every combination
    of monomials x^a y^b of weight at most ``bound`` with coefficients in
    {-1, 0, 1}; the smallest t-degree of each nonzero result, halved, is a
    value.
    """
    t, x, y = sympy.symbols("t x y")
    monos = [
        x**a * y**b
        for a in range(bound + 1)
        for b in range(4)
        if 2 * a + 3 * b <= 2 * bound
    ]
    images = [sympy.Poly(sympy.expand(m.subs({x: t**2, y: t**3})), t).as_dict() for m in monos]
    values = set()
    for combo in product((-1, 0, 1), repeat=len(monos)):
        acc: dict = {}
        for c, img in zip(combo, images):
            if c:
                for (deg,), v in img.items():
                    acc[deg] = acc.get(deg, 0) + c * v
        nz = [d for d, v in acc.items() if v != 0]
        if nz and min(nz) <= 2 * bound:
            values.add(Fraction(min(nz), 2))
    return values


def test_criterion_6_cusp():
    t0 = time.perf_counter()
    w, f = load(CUSP, "1")
    roots = expand_roots(f, 4)
    windows = [semigroup_window(r.series, f, bound=4) for r in roots]
    values = [{v[0] for v in win.values} for win in windows]
    gens = [[g[0] for g in win.generators] for win in windows]
    elapsed = time.perf_counter() - t0
    oracle = cusp_oracle(4)
    doubled = {2 * v for v in values[0]}
    classical = {2 * a + 3 * b for a in range(5) for b in range(3) if 2 * a + 3 * b <= 8}
    ok = (
        all(v == oracle for v in values)
        and doubled == classical
        and all(g == [1, Fraction(3, 2)] for g in gens)
    )
    shown = ", ".join(rat_str(v) for v in sorted(values[0]))
    gshown = ", ".join(rat_str(g) for g in gens[0])
    report(6, ok, f"values {{{shown}}}, generators {{{gshown}}}, oracle agrees", elapsed, 1)


def test_criterion_7_properties():
    t0 = time.perf_counter()
    laws = [getattr(test_properties, n) for n in dir(test_properties) if n.startswith("test_")]
    failed = []
    for law in laws:
        try:
            law()
        except Exception as exc:  # noqa: BLE001 - reported below
            failed.append(f"{law.__name__}: {exc!r}")
    elapsed = time.perf_counter() - t0
    detail = f"{len(laws)} laws x 1000 cases" if not failed else "; ".join(failed)
    report(7, not failed, detail, elapsed)


W2 = Weight([1, QuadReal(0, 1, 2)])
LEADS = [Q(1), Q(-1), Q(2), Q(Fraction(-1, 2)), CycScalar.zeta(4), CycScalar.zeta(3)]
SMALL = [Q(1), Q(-1), Q(2), Q(Fraction(1, 3))]


def random_factor(rng: random.Random) -> GSeries:
    h = Fraction(1, 2)
    gamma = (rng.randint(0, 3) * h, rng.randint(0, 2) * h)
    tail = [((0, 0), 1)]
    for _ in range(rng.randint(0, 2)):
        e = (rng.randint(0, 2) * h, rng.randint(0, 2) * h)
        if any(e):
            tail.append((e, rng.choice(SMALL)))
    unit = GSeries(W2, tail, exact=True)
    return GSeries.monomial(W2, gamma, rng.choice(LEADS)) * unit


def reconstruct_case(rng: random.Random, bound: QuadReal):
    """Return None on success, else a description of the mismatch."""
    d = rng.randint(1, 4)
    factors = [random_factor(rng) for _ in range(d)]
    if d > 1 and rng.random() < 0.2:
        factors[-1] = factors[0]
    f = YPoly.from_roots(factors)
    roots = expand_roots(f, bound)
    if sum(r.multiplicity for r in roots) != d:
        return f"multiplicities sum to {sum(r.multiplicity for r in roots)}, degree {d}"
    groups: list[list] = []
    for r in roots:
        for g in groups:
            if series_equal_upto(g[0].series, r.series, bound):
                g.append(r)
                break
        else:
            groups.append([r])
    matched = 0
    for g in groups:
        hits = sum(1 for fac in factors if series_equal_upto(fac, g[0].series, bound))
        if hits != sum(r.multiplicity for r in g):
            return f"root {g[0].series} matches {hits} factors"
        matched += hits
    if matched != d:
        return f"only {matched} of {d} factors recovered"
    return None


def test_criterion_8_reconstruction():
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    bound = QuadReal(3)
    failures = []
    for i in range(100):
        err = reconstruct_case(rng, bound)
        if err:
            failures.append(f"case {i}: {err}")
    elapsed = time.perf_counter() - t0
    detail = "100 random products recovered" if not failures else "; ".join(failures[:3])
    report(8, not failures, detail, elapsed, 60)


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
            except Exception as exc:  # noqa: BLE001
                print(f"{name}: FAIL (error {exc!r})")
                status = 1
    sys.exit(status)
