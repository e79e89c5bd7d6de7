"""Galois branches of roots and windows of their value semigroups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, lcm
from typing import Sequence

from .errors import CapExceeded, PrecisionError
from .scalars import CycScalar, QuadReal, rat_str
from .series import (
    GSeries,
    Weight,
    exp_add,
    galois_apply,
    series_equal_upto,
)
from .solver import RootExpansion, YPoly


@dataclass(frozen=True)
class Branch:
    members: tuple[int, ...]
    k: int
    warnings: tuple[str, ...] = ()


def orbit(xi: GSeries, k: int, compare_bound, orbit_cap: int = 4096) -> list[GSeries]:
    """The distinct images of ``xi`` under all ``tau_{eta,mu}``, ``mu in {0..k-1}^n``."""
    n = xi.n
    if k ** n > orbit_cap:
        raise CapExceeded(f"orbit size {k}^{n} exceeds the cap {orbit_cap}")
    images: list[GSeries] = []
    for mu in itertools.product(range(k), repeat=n):
        img = galois_apply(xi, k, mu)
        if not any(series_equal_upto(img, other, compare_bound) for other in images):
            images.append(img)
    return images


def _lattice_k(roots: Sequence[RootExpansion]) -> int:
    k = 1
    for r in roots:
        k = lcm(k, r.series.k)
    return k


def partition_branches(
    roots: Sequence[RootExpansion], compare_bound=None, orbit_cap: int = 4096
) -> list[Branch]:
    """Group roots into Galois orbits, compared up to ``compare_bound``."""
    if not roots:
        return []
    if compare_bound is None:
        compare_bound = min(r.series.trunc for r in roots)
    compare_bound = QuadReal.coerce(compare_bound)
    k = _lattice_k(roots)
    assigned: dict[int, int] = {}
    branches: list[Branch] = []
    for i, root in enumerate(roots):
        if i in assigned:
            continue
        images = orbit(root.series, k, compare_bound, orbit_cap)
        members = [i]
        for j in range(i + 1, len(roots)):
            if j in assigned:
                continue
            if any(series_equal_upto(img, roots[j].series, compare_bound) for img in images):
                members.append(j)
        for j in members:
            assigned[j] = len(branches)
        warnings = ()
        if len(members) > 1 and not all(roots[j].exact for j in members):
            warnings = (f"membership decided from expansions agreeing up to weight {compare_bound}",)
        branches.append(Branch(tuple(members), k, warnings))
    return branches


# ---------------------------------------------------------------------------
# Subrings and value windows
# ---------------------------------------------------------------------------


def _solve_square(cols, target):
    """Solve a square rational system given by columns; None if singular."""
    n = len(target)
    mat = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if mat[r][c]), None)
        if piv is None:
            return None
        mat[c], mat[piv] = mat[piv], mat[c]
        for r in range(n):
            if r != c and mat[r][c]:
                f = mat[r][c] / mat[c][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    return [mat[i][-1] / mat[i][i] for i in range(n)]


def in_cone(point, generators) -> bool:
    """Exact membership of ``point`` in the cone spanned by ``generators``."""
    n = len(point)
    if not any(point):
        return True
    for subset in itertools.combinations(generators, n):
        sol = _solve_square(subset, point)
        if sol is not None and all(x >= 0 for x in sol):
            return True
    # lower-dimensional faces
    for size in range(1, n):
        for subset in itertools.combinations(generators, size):
            for rows in itertools.combinations(range(n), size):
                sub_cols = [[g[r] for r in rows] for g in subset]
                sol = _solve_square(sub_cols, [point[r] for r in rows])
                if sol is None or any(x < 0 for x in sol):
                    continue
                if all(sum(s * g[i] for s, g in zip(sol, subset)) == point[i] for i in range(n)):
                    return True
    return False


@dataclass(frozen=True)
class SubringSpec:
    """The coefficient ring ``A``: formal power series or a cone ring ``K_sigma[[X]]``."""

    kind: str = "formal"
    generators: tuple = ()

    def __post_init__(self):
        if self.kind not in ("formal", "cone"):
            raise ValueError(f"unknown subring kind {self.kind!r}")
        if self.kind == "cone" and not self.generators:
            raise ValueError("a cone subring needs generators")

    def exponents(self, weight: Weight, bound) -> list[tuple]:
        """Integer exponents of ``A`` with weight at most ``bound``, ascending."""
        bound = QuadReal.coerce(bound)
        n = weight.n
        if self.kind == "formal":
            pts = _orthant_points(weight, bound)
        else:
            gens = [tuple(int(x) for x in g) for g in self.generators]
            if any(len(g) != n for g in gens):
                raise ValueError("cone generators have the wrong dimension")
            for g in gens:
                if weight.weight_of(tuple(Fraction(x) for x in g)).sign() <= 0:
                    raise ValueError(f"cone generator {g} is not weight-positive")
            for i in range(n):
                unit = tuple(1 if j == i else 0 for j in range(n))
                if not in_cone(unit, gens):
                    raise ValueError(
                        "cone must contain the first orthant so that K[[X]] is a subring"
                    )
            radius = [0] * n
            for g in gens:
                scale = float(bound) / float(weight.weight_of(tuple(Fraction(x) for x in g)))
                for i in range(n):
                    radius[i] = max(radius[i], abs(g[i]) * scale)
            ranges = [range(-floor(r) - 1, floor(r) + 2) for r in radius]
            pts = []
            for p in itertools.product(*ranges):
                e = tuple(Fraction(x) for x in p)
                if weight.weight_of(e) <= bound and in_cone(p, gens):
                    pts.append(e)
        pts.sort(key=weight.weight_of)
        return pts


def _orthant_points(weight: Weight, bound: QuadReal) -> list[tuple]:
    n = weight.n
    out = []

    def rec(prefix, i, used):
        if i == n:
            out.append(tuple(Fraction(x) for x in prefix))
            return
        a = 0
        while True:
            total = used + weight.components[i] * a
            if total > bound:
                break
            rec(prefix + [a], i + 1, total)
            a += 1

    rec([], 0, QuadReal(0))
    return out


@dataclass(frozen=True)
class ValueWindow:
    values: tuple
    bound: QuadReal
    generators: tuple
    tentative: bool = True

    def to_json(self) -> dict:
        return {
            "bound": self.bound.to_json(),
            "values": [[rat_str(x) for x in v] for v in self.values],
            "generators": [[rat_str(x) for x in v] for v in self.generators],
            "tentative": self.tentative,
        }


def echelon_pivots(rows: Sequence[dict], weight: Weight) -> list[tuple]:
    """Leading exponents of a row-echelon basis of the span of ``rows``.

    Each row maps exponents to coefficients; "leading" means lowest weight.
    The resulting set depends only on the span, not on the row order.
    """
    basis: dict = {}
    for row in rows:
        r = {e: CycScalar.coerce(c) for e, c in row.items() if not CycScalar.coerce(c).is_zero()}
        while r:
            lead = min(r, key=weight.weight_of)
            piv = basis.get(lead)
            if piv is None:
                inv = CycScalar.rational(1) / r[lead]
                basis[lead] = {e: c * inv for e, c in r.items()}
                break
            factor = r[lead]
            for e, c in piv.items():
                nv = r.get(e, CycScalar.rational(0)) - c * factor
                if nv.is_zero():
                    r.pop(e, None)
                else:
                    r[e] = nv
    return sorted(basis, key=weight.weight_of)


def _greedy_generators(values, weight: Weight) -> tuple:
    zero = weight.zero()
    present = set(values)
    nonzero = [v for v in values if v != zero]
    gens = []
    for v in nonzero:
        wv = weight.weight_of(v)
        decomposable = False
        for u in nonzero:
            if weight.weight_of(u) >= wv:
                break
            rest = tuple(a - b for a, b in zip(v, u))
            if rest in present and rest != zero:
                decomposable = True
                break
        if not decomposable:
            gens.append(v)
    return tuple(gens)


def semigroup_window(
    xi: GSeries, f: YPoly, subring: SubringSpec | None = None, bound=None
) -> ValueWindow:
    """Values ``nu(h(xi))`` of weight at most ``bound`` over ``h`` in ``A[y]``."""
    subring = subring or SubringSpec()
    weight = xi.weight
    bound = xi.trunc if bound is None else QuadReal.coerce(bound)
    if bound > xi.trunc and not xi.exact:
        raise PrecisionError(
            f"root known up to weight {xi.trunc}; window bound {bound} needs more terms"
        )
    if not xi.is_zero() and xi.low_weight().sign() < 0:
        raise ValueError("root has negative valuation weight")
    d = f.degree
    base = xi.truncate(bound)
    powers = [GSeries.constant(weight, 1, bound, exact=True)]
    for _ in range(1, d):
        powers.append((powers[-1] * base).truncate(bound))
    rows = []
    for a in subring.exponents(weight, bound):
        wa = weight.weight_of(a)
        for p in powers:
            row = {}
            for w, (e, c) in zip(p.weights, p.terms):
                if w + wa <= bound:
                    row[exp_add(e, a)] = c
            if row:
                rows.append(row)
    values = tuple(echelon_pivots(rows, weight))
    return ValueWindow(values, bound, _greedy_generators(values, weight))


@dataclass
class InvarianceReport:
    members: tuple
    windows: list
    invariant: bool
    discrepancies: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "members": list(self.members),
            "invariant": self.invariant,
            "windows": [w.to_json() for w in self.windows],
            "discrepancies": [
                {"pair": [i, j], "exp": [rat_str(x) for x in e]} for i, j, e in self.discrepancies
            ],
        }


def check_invariance(
    f: YPoly,
    roots: Sequence[RootExpansion],
    branch: Branch,
    subring: SubringSpec | None = None,
    bound=None,
) -> InvarianceReport:
    """Compare the value windows of every member of ``branch``."""
    if len(branch.members) < 2:
        raise ValueError("invariance needs a branch with at least two roots")
    windows = [semigroup_window(roots[i].series, f, subring, bound) for i in branch.members]
    discrepancies = []
    first = set(windows[0].values)
    for idx, w in zip(branch.members[1:], windows[1:]):
        for e in sorted(first.symmetric_difference(w.values)):
            discrepancies.append((branch.members[0], idx, e))
    return InvarianceReport(branch.members, windows, not discrepancies, discrepancies)
