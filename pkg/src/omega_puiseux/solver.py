"""Newton-Puiseux root expansion over weight-ordered series fields.

The roots of a monic ``f(y)`` with series coefficients are built term by
term.  At each step the lowest-weight face of the support of the current
polynomial fixes the exponent ``gamma`` of the next term, the roots of the
face's characteristic polynomial give its coefficient ``c``, and the
substitution ``y = X^gamma (c + y1)`` produces the polynomial whose roots
carry the remaining terms.

Because the weight vector is injective on the exponent lattice, all
minimal-weight monomials of ``sum c_j y^j`` at a candidate ``gamma`` share a
single exponent, so candidate exponents come from pairs of support points
instead of a full Newton polyhedron.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Sequence

import numpy as np

from .errors import CapExceeded, PrecisionError, TowerError
from .scalars import (
    DEFAULT_CONDUCTOR_CAP,
    CycScalar,
    QuadReal,
    as_rational_times_root_of_unity,
    binomial_roots,
    sqrt_rational_in_cyclotomic,
)
from .series import (
    GSeries,
    Weight,
    exp_add,
    exp_denominator,
    exp_scale,
    exp_sub,
    factor_monomial_unit,
    format_series,
)


@dataclass(frozen=True)
class Caps:
    depth: int = 64
    denominator: int = 360
    conductor: int = DEFAULT_CONDUCTOR_CAP
    orbit: int = 4096


class YPoly:
    """A polynomial ``sum_j coeffs[j] * y^j`` with :class:`GSeries` coefficients."""

    def __init__(self, coeffs: Sequence[GSeries]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a YPoly needs at least one coefficient")
        weight = coeffs[0].weight
        if any(c.weight != weight for c in coeffs):
            raise ValueError("coefficients use different weight vectors")
        while len(coeffs) > 1 and coeffs[-1].is_zero() and coeffs[-1].exact:
            coeffs = coeffs[:-1]
        self.coeffs = coeffs
        self.weight = weight

    @classmethod
    def from_terms(cls, weight: Weight, terms: dict, trunc=None) -> "YPoly":
        """Build from ``{(exponent, j): coefficient}``; coefficients are exact."""
        deg = max((j for _, j in terms), default=0)
        buckets = [[] for _ in range(deg + 1)]
        for (e, j), c in terms.items():
            buckets[j].append((e, c))
        coeffs = []
        for b in buckets:
            s = GSeries(weight, b, exact=True)
            if trunc is not None:
                s = s.truncate(max(QuadReal.coerce(trunc), s.trunc))
            coeffs.append(s)
        return cls(coeffs)

    @classmethod
    def from_roots(cls, roots: Sequence[GSeries]) -> "YPoly":
        """``prod (y - r)`` for the given series."""
        weight = roots[0].weight
        poly = [GSeries.constant(weight, 1, exact=True)]
        for r in roots:
            nxt = [None] * (len(poly) + 1)
            for j, c in enumerate(poly):
                up = c
                nxt[j + 1] = up if nxt[j + 1] is None else nxt[j + 1] + up
                down = -(c * r)
                nxt[j] = down if nxt[j] is None else nxt[j] + down
            poly = nxt
        return cls(poly)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> GSeries:
        return self.coeffs[j]

    def __len__(self):
        return len(self.coeffs)

    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return len(lead) == 1 and lead.terms[0] == (self.weight.zero(), CycScalar.rational(1))

    def monic(self) -> "YPoly":
        lead = self.coeffs[-1]
        if len(lead) != 1 or lead.terms[0][0] != self.weight.zero() or not lead.exact:
            raise ValueError("leading y-coefficient must be a nonzero constant")
        inv = CycScalar.rational(1) / lead.terms[0][1]
        return YPoly([c.scale(inv) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, YPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"YPoly({self})"

    def __str__(self):
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            ypart = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            text = format_series(c)
            if not ypart:
                parts.append(f"({text})" if len(c) > 1 else text)
            elif text == "1":
                parts.append(ypart)
            else:
                parts.append(f"({text})*{ypart}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class NewtonCandidate:
    gamma: tuple
    face: frozenset
    charpoly: tuple  # CycScalar coefficients, low degree first
    weight: QuadReal


@dataclass(frozen=True)
class RootExpansion:
    series: GSeries
    multiplicity: int
    exact: bool

    @property
    def k(self) -> int:
        return self.series.k


def support_points(f: YPoly) -> frozenset:
    """All ``(alpha, j)`` with ``alpha`` in the support of ``c_j``."""
    return frozenset((e, j) for j, c in enumerate(f.coeffs) for e, _ in c.terms)


def _candidates(points, weight: Weight) -> list[NewtonCandidate]:
    """Faces from pairs of ``(alpha, j, coeff)`` points.

    Only the lowest-weight point of each ``c_j`` can ever lie on a face, so
    callers pass one point per ``j``.
    """
    seen = set()
    out = []
    for i, (a1, j1, _) in enumerate(points):
        for a2, j2, _ in points[i + 1 :]:
            if j1 == j2:
                continue
            gamma = exp_scale(exp_sub(a1, a2), Fraction(1, j2 - j1))
            if gamma in seen:
                continue
            seen.add(gamma)
            shifted = [(exp_add(a, exp_scale(gamma, j)), j, c) for a, j, c in points]
            low = min(shifted, key=lambda t: weight.weight_of(t[0]))[0]
            face = [(a, j, c) for (s, j, c), (a, _, _) in zip(shifted, points) if s == low]
            if len({j for _, j, _ in face}) < 2:
                continue
            top = max(j for _, j, _ in face)
            charpoly = [CycScalar.rational(0)] * (top + 1)
            for _, j, c in face:
                charpoly[j] = charpoly[j] + c
            out.append(
                NewtonCandidate(
                    gamma,
                    frozenset((a, j) for a, j, _ in face),
                    tuple(charpoly),
                    weight.weight_of(gamma),
                )
            )
    out.sort(key=lambda cand: cand.weight)
    return out


def _valuation_points(f: YPoly, start: int = 0):
    return [
        (c.terms[0][0], j, c.terms[0][1])
        for j, c in enumerate(f.coeffs)
        if j >= start and not c.is_zero()
    ]


def initial_candidates(f: YPoly) -> list[NewtonCandidate]:
    """Candidate leading exponents with their characteristic polynomials."""
    if f.coeffs[0].is_zero():
        raise ValueError("split off the root y = 0 before enumerating candidates")
    return _candidates(_valuation_points(f), f.weight)


# ---------------------------------------------------------------------------
# Characteristic polynomial roots
# ---------------------------------------------------------------------------


def _trim(p: list[CycScalar]) -> list[CycScalar]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _horner(p: Sequence[CycScalar], x: CycScalar) -> CycScalar:
    acc = CycScalar.rational(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deflate(p: list[CycScalar], r: CycScalar):
    """Divide by ``(c - r)``; returns ``(quotient, remainder)``."""
    out = [None] * (len(p) - 1)
    acc = CycScalar.rational(0)
    for i in range(len(p) - 1, 0, -1):
        acc = acc * r + p[i]
        out[i - 1] = acc
    rem = acc * r + p[0]
    return out, rem


def _divisors(n: int, limit: int = 10**12):
    n = abs(n)
    if n == 0 or n > limit:
        return None
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _rational_roots(p: list[CycScalar]) -> list[CycScalar]:
    if not all(c.is_rational() for c in p):
        return []
    qs = [c.to_rational() for c in p]
    den = 1
    for q in qs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    lo, hi = _divisors(ints[0]), _divisors(ints[-1])
    if lo is None or hi is None:
        return []
    found = []
    for u in lo:
        for v in hi:
            for s in (1, -1):
                cand = Fraction(s * u, v)
                if cand.denominator != v:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0 and cand not in found:
                    found.append(cand)
    return [CycScalar.rational(r) for r in found]


def _quadratic_roots(p: list[CycScalar], cap: int) -> list[CycScalar]:
    c0, c1, c2 = p
    disc = c1 * c1 - c0 * c2 * 4
    if disc.is_zero():
        return [-c1 / (c2 * 2)]
    decomposed = as_rational_times_root_of_unity(disc)
    if decomposed is None:
        return []
    r, n, s = decomposed
    root, _ = sqrt_rational_in_cyclotomic(r, cap)
    sq = root * CycScalar.zeta(2 * n, s)
    return [(-c1 + sq) / (c2 * 2), (-c1 - sq) / (c2 * 2)]


def _numeric_guided_roots(p: list[CycScalar], cap: int) -> list[CycScalar]:
    """Recognize roots of the form ``r * zeta_N^s`` from floating estimates.

    Every candidate is verified exactly; the floating point only proposes.
    """
    coeffs = [complex(c) for c in reversed(p)]
    found = []
    for z in np.roots(coeffs):
        mod = abs(z)
        if mod < 1e-12:
            continue
        arg = cmath.phase(z) / (2 * math.pi)
        r = Fraction(mod).limit_denominator(10**6)
        sq = Fraction(mod * mod).limit_denominator(10**6)
        mods = [CycScalar.rational(r)] if r > 0 else []
        if sq > 0:
            try:
                mods.append(sqrt_rational_in_cyclotomic(sq, cap)[0])
            except TowerError:
                pass
        for n in range(1, cap + 1):
            s = round(arg * n)
            if abs(arg * n - s) > 1e-7:
                continue
            unit = CycScalar.zeta(n, s)
            for m in mods:
                cand = m * unit
                if _horner(p, cand).is_zero() and cand not in found:
                    found.append(cand)
            break
    return found


def _some_roots(p: list[CycScalar], cap: int) -> list[CycScalar]:
    deg = len(p) - 1
    if deg == 1:
        return [-p[0] / p[1]]
    support = [i for i, c in enumerate(p) if not c.is_zero()]
    if support == [0, deg]:
        return binomial_roots(deg, -p[0] / p[deg], cap)
    g = 0
    for i in support:
        g = gcd(g, i)
    if g > 1:
        reduced = [p[g * i] for i in range(deg // g + 1)]
        roots = []
        for w, _ in charpoly_roots(reduced, cap):
            roots.extend(binomial_roots(g, w, cap))
        return roots
    if deg == 2:
        roots = _quadratic_roots(p, cap)
        if roots:
            return roots
    roots = _rational_roots(p)
    if roots:
        return roots
    return _numeric_guided_roots(p, cap)


_TOWER_MSG = "root requires extension beyond supported cyclotomic tower"


def charpoly_roots(poly: Sequence, conductor_cap: int = DEFAULT_CONDUCTOR_CAP):
    """Nonzero roots of a univariate polynomial with their multiplicities.

    Returns ``[(root, multiplicity), ...]`` ordered canonically.  Raises
    :class:`TowerError` when some root is not reachable inside the
    supported cyclotomic tower.
    """
    p = _trim([CycScalar.coerce(c) for c in poly])
    if not p:
        raise ValueError("zero polynomial")
    v = next(i for i, c in enumerate(p) if not c.is_zero())
    p = p[v:]
    found: list = []
    while len(p) > 1:
        try:
            roots = _some_roots(p, conductor_cap)
        except TowerError as exc:
            if str(exc).startswith(_TOWER_MSG):
                raise
            raise TowerError(f"{_TOWER_MSG} ({exc})") from None
        progress = False
        for r in roots:
            mult = 0
            while len(p) > 1:
                q, rem = _deflate(p, r)
                if not rem.is_zero():
                    break
                p, mult = q, mult + 1
            if mult:
                progress = True
                for entry in found:
                    if entry[0] == r:
                        entry[1] += mult
                        break
                else:
                    found.append([r.canonical(), mult])
        if not progress:
            raise TowerError(f"{_TOWER_MSG} (residual degree {len(p) - 1})")
    found.sort(key=lambda t: t[0].sort_key())
    return [(r, m) for r, m in found]


# ---------------------------------------------------------------------------
# Expansion
# ---------------------------------------------------------------------------


def evaluate(f: YPoly, xi: GSeries) -> GSeries:
    """Horner evaluation of ``f`` at the series ``xi``."""
    acc = f.coeffs[-1]
    for c in reversed(f.coeffs[:-1]):
        acc = acc * xi + c
    return acc


def _derivative_at(f: YPoly, xi: GSeries, order: int) -> GSeries:
    """``f^(order)(xi) / order!``."""
    coeffs = [c.scale(comb(j, order)) for j, c in enumerate(f.coeffs) if j >= order]
    return evaluate(YPoly(coeffs), xi)


class _Expander:
    def __init__(self, f: YPoly, trunc: QuadReal, caps: Caps):
        self.f = f
        self.weight = f.weight
        self.trunc = trunc
        self.caps = caps
        self.f_exact = all(c.exact for c in f.coeffs)
        self.out: list[RootExpansion] = []

    def emit(self, prefix, mult, exact):
        series = GSeries(self.weight, prefix, self.trunc, exact=exact)
        self.out.append(RootExpansion(series, mult, exact))

    def vanishes(self, prefix, order) -> bool:
        if not self.f_exact:
            return False
        partial = GSeries(self.weight, prefix, exact=True)
        return _derivative_at(self.f, partial, order).is_zero()

    def run(self, g, m, budget, prefix, offset, depth, top):
        if depth > self.caps.depth:
            raise CapExceeded(f"expansion depth exceeded the cap {self.caps.depth}")
        g = list(g)
        v = 0
        while v < m and g[v].is_zero():
            if not (g[v].exact or self.vanishes(prefix, v)):
                break
            g[v] = GSeries.zero(self.weight, g[v].trunc, exact=True)
            v += 1
        if v:
            self.emit(prefix, v, exact=True)
        remaining = m - v
        if remaining == 0:
            return
        found = 0
        for cand in _candidates(_valuation_points(YPoly(g), v), self.weight):
            sign = cand.weight.sign()
            if sign < 0 or (sign == 0 and not top) or cand.weight > budget:
                continue
            new_offset = exp_add(offset, cand.gamma)
            if exp_denominator(new_offset) > self.caps.denominator:
                raise CapExceeded(
                    f"exponent denominator exceeded the cap {self.caps.denominator}"
                )
            rest = budget - cand.weight
            for c, mc in charpoly_roots(cand.charpoly[v:], self.caps.conductor):
                found += mc
                g1 = self.substitute(g, cand, c, mc, rest)
                self.run(g1, mc, rest, prefix + [(new_offset, c)], new_offset, depth + 1, False)
        if remaining > found:
            self.emit(prefix, remaining - found, exact=False)

    def substitute(self, g, cand, c, mult, rest):
        """Coefficients of ``g(X^gamma (c + y))`` divided by their monomial content."""
        gamma = cand.gamma
        deg = len(g) - 1
        powers = [CycScalar.rational(1)]
        for _ in range(deg):
            powers.append(powers[-1] * c)
        live = [
            (j, g[j].shift(exp_scale(gamma, j)))
            for j in range(deg + 1)
            if not (g[j].is_zero() and g[j].exact)
        ]
        raw = []
        for i in range(deg + 1):
            acc = None
            for j, s in live:
                if j < i:
                    continue
                term = s.scale(comb(j, i) * powers[j - i])
                acc = term if acc is None else acc + term
            raw.append(acc if acc is not None else GSeries.zero(self.weight, 0, exact=True))
        delta = factor_monomial_unit(raw[mult]).gamma
        neg = tuple(-x for x in delta)
        bound = rest * mult
        return [s.shift(neg).truncate(bound) for s in raw]


def expand_roots(f: YPoly, trunc, caps: Caps | None = None) -> list[RootExpansion]:
    """All roots of the monic ``f`` up to weight ``trunc``, with multiplicities.

    Multiplicities always sum to ``deg f``.  A root is flagged ``exact`` when
    its expansion terminated with an identically vanishing residual.
    """
    caps = caps or Caps()
    f = f.monic()
    trunc = QuadReal.coerce(trunc)
    if trunc.sign() < 0:
        raise ValueError("truncation bound must be nonnegative")
    d = f.degree
    if d == 0:
        return []
    bound = trunc * d
    for c in f.coeffs:
        if not c.exact and c.trunc < bound:
            raise PrecisionError(
                f"coefficients known up to {c.trunc} but expansion to {trunc} needs {bound}"
            )
    g = [c.truncate(bound) for c in f.coeffs]
    ex = _Expander(f, trunc, caps)
    ex.run(g, d, trunc, [], f.weight.zero(), 0, True)
    return ex.out
