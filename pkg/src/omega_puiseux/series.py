"""Truncated generalized power series ordered by a weight vector.

A series is a finite map from exponent vectors (tuples of ``Fraction``,
possibly negative) to nonzero :class:`CycScalar` coefficients, together with
a truncation bound ``trunc``: every term of weight ``<= trunc`` is known, and
nothing is claimed above it.  An ``exact`` series additionally has no terms
at all above its bound (a Laurent polynomial), so it may be compared or
re-truncated at any bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import InjectivityError, NotAUnitError, PrecisionError
from .scalars import CycScalar, QuadReal, format_scalar, rat_str

Exp = tuple  # tuple[Fraction, ...]
Scalar = Union[CycScalar, Fraction, int]


def exp_vec(entries: Iterable) -> Exp:
    return tuple(Fraction(x) for x in entries)


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_scale(a: Exp, s) -> Exp:
    return tuple(x * s for x in a)


def exp_denominator(e: Exp) -> int:
    """Least k with e in (1/k)Z^n."""
    k = 1
    for x in e:
        k = lcm(k, x.denominator)
    return k


def format_exp(e: Exp) -> str:
    return "(" + ", ".join(rat_str(x) for x in e) + ")"


class Weight:
    """A strictly positive weight vector inducing the order ``a <= b iff w.a <= w.b``.

    Weights of exponent vectors are memoized; the memo doubles as the log
    used to detect two distinct exponents of equal weight, which would make
    the order non-total on the working lattice.
    """

    def __init__(self, components: Sequence):
        comps = tuple(QuadReal.coerce(c) for c in components)
        if not comps:
            raise ValueError("weight vector must be non-empty")
        d = 1
        for c in comps:
            if c.sign() <= 0:
                raise ValueError(f"weight components must be positive, got {c}")
            if c.d != 1:
                if d not in (1, c.d):
                    raise ValueError("weight components must share one radicand")
                d = c.d
        self.components = comps
        self.d = d
        self._cache: dict = {}
        self._seen: dict = {}

    @property
    def n(self) -> int:
        return len(self.components)

    def weight_of(self, e: Exp) -> QuadReal:
        w = self._cache.get(e)
        if w is not None:
            return w
        if len(e) != self.n:
            raise ValueError(f"exponent {format_exp(e)} has dimension {len(e)}, expected {self.n}")
        a = b = Fraction(0)
        for c, x in zip(self.components, e):
            if x:
                a += c.a * x
                b += c.b * x
        w = QuadReal(a, b, self.d if b else 1)
        other = self._seen.get(w)
        if other is not None and other != e:
            raise InjectivityError(e, other, w)
        self._seen[w] = e
        self._cache[e] = w
        return w

    def zero(self) -> Exp:
        return (Fraction(0),) * self.n

    def __eq__(self, other):
        return isinstance(other, Weight) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "Weight(" + ", ".join(str(c) for c in self.components) + ")"


def weight_of(e: Exp, w: Weight) -> QuadReal:
    return w.weight_of(e)


def _scalar(c) -> CycScalar:
    return CycScalar.coerce(c)


class GSeries:
    """An immutable truncated generalized power series."""

    __slots__ = ("weight", "trunc", "exact", "_terms", "_index", "_wts")

    def __init__(self, weight: Weight, terms=(), trunc=None, exact: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for e, c in items:
            e = exp_vec(e)
            c = _scalar(c)
            if e in acc:
                c = acc[e] + c
            acc[e] = c
        keyed = [(weight.weight_of(e), e, c) for e, c in acc.items() if not c.is_zero()]
        keyed.sort(key=lambda t: t[0])
        if trunc is None:
            if not exact:
                raise ValueError("an inexact series needs a truncation bound")
            trunc = keyed[-1][0] if keyed else QuadReal(0)
        trunc = QuadReal.coerce(trunc)
        kept = [t for t in keyed if t[0] <= trunc]
        if len(kept) != len(keyed):
            exact = False
        self._set(weight, trunc, exact, kept)

    def _set(self, weight, trunc, exact, keyed):
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "exact", bool(exact))
        object.__setattr__(self, "_terms", tuple((e, c) for _, e, c in keyed))
        object.__setattr__(self, "_wts", tuple(w for w, _, _ in keyed))
        object.__setattr__(self, "_index", None)

    @classmethod
    def _from_sorted(cls, weight, trunc, exact, keyed) -> "GSeries":
        obj = cls.__new__(cls)
        obj._set(weight, trunc, exact, keyed)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GSeries is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, weight: Weight, trunc=0, exact: bool = True) -> "GSeries":
        return cls(weight, (), trunc, exact)

    @classmethod
    def constant(cls, weight: Weight, c, trunc=None, exact: bool = True) -> "GSeries":
        return cls(weight, [(weight.zero(), c)], trunc, exact)

    @classmethod
    def monomial(cls, weight: Weight, e, c=1, trunc=None, exact: bool = True) -> "GSeries":
        return cls(weight, [(e, c)], trunc, exact)

    # -- access ---------------------------------------------------------------

    @property
    def terms(self) -> tuple:
        """``((exponent, coefficient), ...)`` in ascending weight."""
        return self._terms

    @property
    def weights(self) -> tuple:
        return self._wts

    def _lookup(self) -> dict:
        if self._index is None:
            object.__setattr__(self, "_index", dict(self._terms))
        return self._index

    def coeff(self, e) -> CycScalar:
        return self._lookup().get(exp_vec(e), CycScalar.rational(0))

    def support(self) -> frozenset:
        return frozenset(e for e, _ in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    @property
    def n(self) -> int:
        return self.weight.n

    @property
    def k(self) -> int:
        """Common denominator of all exponents."""
        k = 1
        for e, _ in self._terms:
            k = lcm(k, exp_denominator(e))
        return k

    def precision(self):
        """Bound up to which the series is known; None means exactly known."""
        return None if self.exact else self.trunc

    def low_weight(self) -> QuadReal:
        """Weight of the valuation, or the truncation bound for a zero series."""
        return self._wts[0] if self._wts else self.trunc

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: "GSeries"):
        if self.weight != other.weight:
            raise ValueError("series use different weight vectors")

    def __add__(self, other):
        if not isinstance(other, GSeries):
            try:
                other = GSeries.constant(self.weight, _scalar(other), exact=True)
            except TypeError:
                return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        keyed = [(w, e, -c) for w, (e, c) in zip(self._wts, self._terms)]
        return GSeries._from_sorted(self.weight, self.trunc, self.exact, keyed)

    def __sub__(self, other):
        if not isinstance(other, GSeries):
            try:
                other = GSeries.constant(self.weight, _scalar(other), exact=True)
            except TypeError:
                return NotImplemented
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GSeries):
            return series_mul(self, other)
        try:
            c = _scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported; use unit_inverse")
        result = GSeries.constant(self.weight, 1, exact=True)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c) -> "GSeries":
        c = _scalar(c)
        if c.is_zero():
            return GSeries.zero(self.weight, self.trunc, self.exact)
        keyed = [(w, e, x * c) for w, (e, x) in zip(self._wts, self._terms)]
        return GSeries._from_sorted(self.weight, self.trunc, self.exact, keyed)

    def shift(self, gamma) -> "GSeries":
        """Multiply by the monomial ``X^gamma``."""
        gamma = exp_vec(gamma)
        wg = self.weight.weight_of(gamma)
        keyed = []
        for e, c in self._terms:
            e2 = exp_add(e, gamma)
            keyed.append((self.weight.weight_of(e2), e2, c))
        return GSeries._from_sorted(self.weight, self.trunc + wg, self.exact, keyed)

    def truncate(self, bound) -> "GSeries":
        """Drop every term of weight above ``bound``."""
        bound = QuadReal.coerce(bound)
        if bound > self.trunc and not self.exact:
            raise PrecisionError(
                f"cannot raise truncation from {self.trunc} to {bound} on an inexact series"
            )
        keyed = [(w, e, c) for w, (e, c) in zip(self._wts, self._terms) if w <= bound]
        exact = self.exact and len(keyed) == len(self._terms)
        return GSeries._from_sorted(self.weight, bound, exact, keyed)

    def map_coefficients(self, fn) -> "GSeries":
        keyed = []
        for w, (e, c) in zip(self._wts, self._terms):
            c2 = fn(e, c)
            if not c2.is_zero():
                keyed.append((w, e, c2))
        return GSeries._from_sorted(self.weight, self.trunc, self.exact, keyed)

    # -- comparison / display -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GSeries):
            return NotImplemented
        # an exact series has no hidden tail, so its bound is bookkeeping only
        return (
            self.weight == other.weight
            and self.exact == other.exact
            and (self.exact or self.trunc == other.trunc)
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self._terms, self.exact) if self.exact else (self._terms, self.trunc))

    def __repr__(self):
        return f"GSeries({self}, trunc={self.trunc}, exact={self.exact})"

    def __str__(self):
        return format_series(self)

    def to_json(self) -> dict:
        return series_to_json(self)


@dataclass(frozen=True)
class MonomialUnitForm:
    gamma: Exp
    unit: GSeries


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------


def _result_bound(candidates, fallback):
    bound = None
    for c in candidates:
        if bound is None or c < bound:
            bound = c
    return fallback if bound is None else bound


def series_add(a: GSeries, b: GSeries) -> GSeries:
    """Sum of two series; known up to the smaller of the two precisions."""
    a._check(b)
    inexact = [s.trunc for s in (a, b) if not s.exact]
    trunc = _result_bound(inexact, max(a.trunc, b.trunc))
    acc = dict(a._terms)
    for e, c in b._terms:
        if e in acc:
            acc[e] = acc[e] + c
        else:
            acc[e] = c
    keyed = []
    dropped = False
    for e, c in acc.items():
        if c.is_zero():
            continue
        w = a.weight.weight_of(e)
        if w <= trunc:
            keyed.append((w, e, c))
        else:
            dropped = True
    keyed.sort(key=lambda t: t[0])
    return GSeries._from_sorted(a.weight, trunc, a.exact and b.exact and not dropped, keyed)


def series_mul(a: GSeries, b: GSeries) -> GSeries:
    """Truncated convolution product.

    The bound is the smaller truncation of the inexact factors, lowered
    further when a factor has negative valuation weight so that every kept
    term is correct.  The product of two exact series is exact.
    """
    a._check(b)
    w = a.weight
    if a.exact and b.exact:
        trunc = a.trunc + b.trunc
    else:
        cands = []
        if not a.exact:
            cands += [a.trunc, a.trunc + b.low_weight()]
        if not b.exact:
            cands += [b.trunc, b.trunc + a.low_weight()]
        trunc = _result_bound(cands, None)
    acc: dict = {}
    dropped = False
    bw, bt = b._wts, b._terms
    low_b = bw[0] if bw else None
    for wa, (ea, ca) in zip(a._wts, a._terms):
        if low_b is None:
            break
        if wa + low_b > trunc:
            dropped = True
            break
        for wb, (eb, cb) in zip(bw, bt):
            if wa + wb > trunc:
                dropped = True
                break
            e = exp_add(ea, eb)
            p = ca * cb
            if e in acc:
                acc[e] = acc[e] + p
            else:
                acc[e] = p
    keyed = [(w.weight_of(e), e, c) for e, c in acc.items() if not c.is_zero()]
    keyed.sort(key=lambda t: t[0])
    return GSeries._from_sorted(w, trunc, a.exact and b.exact and not dropped, keyed)


def valuation(a: GSeries) -> Exp:
    """The weight-minimal exponent of a nonzero series."""
    if a.is_zero():
        raise ValueError("valuation of the zero series is undefined")
    return a._terms[0][0]


def factor_monomial_unit(a: GSeries) -> MonomialUnitForm:
    """Write ``a = X^gamma * u`` with ``u`` having a nonzero constant term."""
    gamma = valuation(a)
    neg = tuple(-x for x in gamma)
    return MonomialUnitForm(gamma, a.shift(neg))


def unit_inverse(u: GSeries, trunc=None) -> GSeries:
    """Inverse of a unit up to ``trunc`` (default: the unit's own bound).

    Writes ``u = a0 (1 - r)`` with ``r`` of positive valuation weight and sums
    the geometric series in ``r``.
    """
    zero = u.weight.zero()
    if u.is_zero() or u._terms[0][0] != zero:
        raise NotAUnitError("series has no nonzero constant term or is not of valuation zero")
    trunc = u.trunc if trunc is None else QuadReal.coerce(trunc)
    if trunc > u.trunc and not u.exact:
        raise PrecisionError("unit known only up to a lower bound")
    a0 = u._terms[0][1]
    inv0 = CycScalar.rational(1) / a0
    r = GSeries.constant(u.weight, 1, exact=True) - u.scale(inv0)
    if r.is_zero():
        return GSeries.constant(u.weight, inv0, trunc, exact=u.exact)
    r = r.truncate(trunc) if r.exact else r
    total = GSeries.constant(u.weight, 1, trunc, exact=True)
    power = GSeries.constant(u.weight, 1, trunc, exact=True)
    while True:
        power = (power * r).truncate(trunc)
        if power.is_zero():
            break
        total = total + power
    if total.exact:
        total = total.truncate(trunc)
    result = total.scale(inv0)
    return GSeries._from_sorted(
        u.weight, trunc, False, [(w, e, c) for w, (e, c) in zip(result._wts, result._terms)]
    )


def galois_apply(a: GSeries, k: int, mu: Sequence[int]) -> GSeries:
    """Apply ``x_i^(1/k) -> zeta_k^mu_i x_i^(1/k)`` termwise."""
    if len(mu) != a.n:
        raise ValueError("mu has the wrong dimension")
    if k < 1:
        raise ValueError("k must be positive")
    units: dict = {}

    def act(e, c):
        t = 0
        for m_i, x in zip(mu, e):
            kx = x * k
            if kx.denominator != 1:
                raise ValueError(f"exponent {format_exp(e)} is not in (1/{k})Z^n")
            t += m_i * kx.numerator
        t %= k
        if t == 0:
            return c
        z = units.get(t)
        if z is None:
            z = units[t] = CycScalar.zeta(k, t)
        return c * z

    return a.map_coefficients(act)


def series_equal_upto(a: GSeries, b: GSeries, bound) -> bool:
    """True iff ``a`` and ``b`` agree on every term of weight ``<= bound``."""
    a._check(b)
    bound = QuadReal.coerce(bound)
    for s in (a, b):
        if not s.exact and bound > s.trunc:
            raise PrecisionError(f"bound {bound} exceeds the truncation {s.trunc}")
    ta = [(e, c) for w, (e, c) in zip(a._wts, a._terms) if w <= bound]
    tb = [(e, c) for w, (e, c) in zip(b._wts, b._terms) if w <= bound]
    return ta == tb


# ---------------------------------------------------------------------------
# Display and serialization
# ---------------------------------------------------------------------------


def format_monomial(e: Exp, names: Sequence[str] | None = None) -> str:
    parts = []
    for i, x in enumerate(e):
        if not x:
            continue
        name = names[i] if names else f"x{i + 1}"
        if x == 1:
            parts.append(name)
        elif x.denominator == 1:
            parts.append(f"{name}^{x.numerator}")
        else:
            parts.append(f"{name}^({rat_str(x)})")
    return "*".join(parts)


def format_term(e: Exp, c: CycScalar, names=None) -> tuple[str, str]:
    """Split a term into (sign, body) for printing."""
    mono = format_monomial(e, names)
    text = format_scalar(c)
    negative = text.startswith("-") and (" + " not in text and " - " not in text)
    if negative:
        text = text[1:]
    if not mono:
        return ("-" if negative else "+", text)
    if text == "1":
        body = mono
    elif " " in text:
        body = f"({text})*{mono}"
    else:
        body = f"{text}*{mono}"
    return ("-" if negative else "+", body)


def format_series(a: GSeries, names=None) -> str:
    if a.is_zero():
        return "0"
    out = ""
    for i, (e, c) in enumerate(a._terms):
        sign, body = format_term(e, c, names)
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def series_to_json(a: GSeries) -> dict:
    return {
        "k": a.k,
        "trunc": a.trunc.to_json(),
        "terms": [
            {"exp": [rat_str(x) for x in e], "coeff": c.to_json()} for e, c in a._terms
        ],
        "exact": a.exact,
    }


def series_from_json(data: dict, weight: Weight) -> GSeries:
    exact = bool(data.get("exact", False))
    trunc = QuadReal.from_json(data["trunc"])
    terms = [
        (tuple(Fraction(x) for x in t["exp"]), CycScalar.from_json(t["coeff"]))
        for t in data["terms"]
    ]
    return GSeries(weight, terms, trunc, exact=exact)
