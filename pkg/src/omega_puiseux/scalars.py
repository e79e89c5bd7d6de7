"""Exact scalars used throughout the engine.

Three kinds of numbers appear:

* rationals (``fractions.Fraction``),
* real quadratic numbers ``a + b*sqrt(d)`` (:class:`QuadReal`), used for
  weight vectors and for the weights of exponents,
* cyclotomic numbers in ``Q(zeta_m)`` (:class:`CycScalar`), used for series
  coefficients and roots of unity.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence, Union

from .errors import TowerError

DEFAULT_CONDUCTOR_CAP = 240

Rat = Fraction
RatLike = Union[int, Fraction, str]


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(q: Fraction) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    q = as_rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _is_squarefree(d: int) -> bool:
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# Real quadratic numbers
# ---------------------------------------------------------------------------


class QuadReal:
    """The real number ``a + b*sqrt(d)`` with ``a, b`` rational.

    ``d`` is a squarefree positive integer.  Values with ``b == 0`` are
    normalized to ``d == 1`` so that they combine with any radicand.
    """

    __slots__ = ("a", "b", "d", "_approx")

    def __init__(self, a: RatLike = 0, b: RatLike = 0, d: int = 1):
        a = as_rat(a)
        b = as_rat(b)
        d = int(d)
        if d < 1 or not _is_squarefree(d):
            raise ValueError(f"radicand must be a squarefree positive integer, got {d}")
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadReal is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadReal":
        if isinstance(x, QuadReal):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot interpret {x!r} as a QuadReal")

    @staticmethod
    def _join(x: "QuadReal", y: "QuadReal") -> int:
        if x.d == 1:
            return y.d
        if y.d == 1 or y.d == x.d:
            return x.d
        raise ValueError(f"cannot mix sqrt({x.d}) and sqrt({y.d})")

    def __add__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadReal(self.a + other.a, self.b + other.b, QuadReal._join(self, other))

    __radd__ = __add__

    def __neg__(self):
        return QuadReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadReal(self.a - other.a, self.b - other.b, QuadReal._join(self, other))

    def __rsub__(self, other):
        return QuadReal.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadReal(self.a * other, self.b * other, self.d)
        if not isinstance(other, QuadReal):
            return NotImplemented
        d = QuadReal._join(self, other)
        return QuadReal(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        return quadreal_sign(self)

    def _cmp(self, other) -> int:
        other = QuadReal.coerce(other)
        # floats decide well-separated values; ties and near-ties go exact
        try:
            x, y = float(self), float(other)
        except OverflowError:
            x = y = 0.0
        if abs(x - y) > 1e-9 * (1.0 + abs(x) + abs(y)):
            return 1 if x > y else -1
        return quadreal_sign(self - other)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadReal):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        try:
            return self._approx
        except AttributeError:
            v = float(self.a) + float(self.b) * self.d ** 0.5
            object.__setattr__(self, "_approx", v)
            return v

    def __repr__(self):
        return f"QuadReal({rat_str(self.a)!r}, {rat_str(self.b)!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return rat_str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{rat_str(self.a)}{sign}{rat_str(abs(self.b))}*sqrt({self.d})"

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b), "d": self.d}

    @classmethod
    def from_json(cls, data: dict) -> "QuadReal":
        return cls(Fraction(data["a"]), Fraction(data["b"]), int(data["d"]))


def quadreal_sign(q: QuadReal) -> int:
    """Exact sign of ``a + b*sqrt(d)``."""
    sa, sb = _sgn(q.a), _sgn(q.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d (never equal, sqrt(d) is irrational)
    return sa if q.a * q.a > q.b * q.b * q.d else sb


# ---------------------------------------------------------------------------
# Cyclotomic polynomials
# ---------------------------------------------------------------------------


def _divisors(m: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for e in _divisors(m)[:-1]:
        num = _divide_monic(num, cyclotomic_poly(e))
    return tuple(num)


def _divide_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num[:dd]), "inexact cyclotomic division"
    return quot


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(m: int, poly: Sequence[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    r = list(poly) + [Fraction(0)] * max(0, deg - len(poly))
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    r[base + j] -= c * phi[j]
        r[i] = Fraction(0)
    return tuple(r[:deg])


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------


class CycScalar:
    """An element of ``Q(zeta_m)`` in the power basis ``1, zeta_m, ..., zeta_m^(phi(m)-1)``."""

    __slots__ = ("m", "coeffs", "_canon")

    def __init__(self, m: int, coeffs: Iterable[RatLike]):
        coeffs = tuple(as_rat(c) for c in coeffs)
        if m < 1:
            raise ValueError("conductor must be positive")
        if len(coeffs) != euler_phi(m):
            raise ValueError(f"Q(zeta_{m}) needs {euler_phi(m)} coordinates, got {len(coeffs)}")
        if m == 2:
            m = 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q: RatLike) -> "CycScalar":
        return cls(1, (as_rat(q),))

    @classmethod
    def from_poly(cls, m: int, poly: Sequence[RatLike]) -> "CycScalar":
        return cls(m, _reduce(m, [as_rat(c) for c in poly]))

    @classmethod
    def zeta(cls, m: int, t: int = 1) -> "CycScalar":
        """``zeta_m^t``, stored at the smallest conductor that contains it."""
        if m < 1:
            raise ValueError("conductor must be positive")
        t %= m
        g = gcd(t, m)
        m, t = m // g, t // g
        if m % 4 == 2:
            # zeta_{2k} = -zeta_k^((k+1)/2) for odd k
            k = m // 2
            inner = cls.zeta(k, t * ((k + 1) // 2))
            return -inner if t % 2 else inner
        if m == 1:
            return cls.rational(1)
        poly = [Fraction(0)] * (t + 1)
        poly[t] = Fraction(1)
        return cls.from_poly(m, poly)

    @classmethod
    def coerce(cls, x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot interpret {x!r} as a CycScalar")

    # -- structure ----------------------------------------------------------

    def promote(self, m2: int) -> "CycScalar":
        return cyc_promote(self, m2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs) if c)

    def canonical(self) -> "CycScalar":
        """The same number written over the smallest possible conductor."""
        if self._canon is None:
            object.__setattr__(self, "_canon", _canonical(self))
        return self._canon

    def sort_key(self) -> tuple:
        c = self.canonical()
        return (c.m, c.coeffs)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return cyc_arith(self, other, "add")

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return cyc_arith(self, -other, "add")

    def __rsub__(self, other):
        return CycScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return cyc_arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return cyc_arith(self, other, "div")

    def __rtruediv__(self, other):
        return cyc_arith(CycScalar.coerce(other), self, "div")

    def __pow__(self, e: int):
        if e < 0:
            return (CycScalar.rational(1) / self) ** (-e)
        result = CycScalar.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycScalar":
        return CycScalar.rational(1) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        if self.m == other.m:
            return self.coeffs == other.coeffs
        m = lcm(self.m, other.m)
        return cyc_promote(self, m).coeffs == cyc_promote(other, m).coeffs

    def __hash__(self):
        c = self.canonical()
        if c.m == 1:
            return hash(c.coeffs[0])
        return hash((c.m, c.coeffs))

    def __repr__(self):
        return f"CycScalar({self.m}, {[rat_str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_scalar(self)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycScalar":
        return cls(int(data["m"]), [Fraction(c) for c in data["coeffs"]])


ZERO = CycScalar.rational(0)
ONE = CycScalar.rational(1)


def cyc_promote(x: CycScalar, m2: int) -> CycScalar:
    """Rewrite ``x`` in ``Q(zeta_m2)`` via ``zeta_m = zeta_m2^(m2/m)``."""
    if m2 < 1 or m2 % x.m:
        raise ValueError(f"conductor {x.m} does not divide {m2}")
    if m2 == x.m or (x.m == 1 and m2 <= 2):
        return x
    if x.is_rational():
        return CycScalar(m2, (x.coeffs[0],) + (Fraction(0),) * (euler_phi(m2) - 1))
    step = m2 // x.m
    poly = [Fraction(0)] * ((len(x.coeffs) - 1) * step + 1)
    for i, c in enumerate(x.coeffs):
        poly[i * step] = c
    return CycScalar(m2, _reduce(m2, poly))


def _polymul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_inverse_mod(a: list[Fraction], m: int) -> list[Fraction]:
    """Inverse of ``a`` modulo Phi_m by the extended Euclidean algorithm."""
    r0 = [Fraction(c) for c in cyclotomic_poly(m)]
    r1 = _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        prod = _polymul(q, s1)
        s2 = [
            (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
            for i in range(max(len(s0), len(prod)))
        ]
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim(s2) or [Fraction(0)]
    # r1 is now a nonzero constant since Phi_m is irreducible
    c = r1[0]
    return [x / c for x in s1]


def cyc_arith(x: CycScalar, y: CycScalar, op: str) -> CycScalar:
    """Exact field arithmetic in ``Q(zeta_lcm(mx, my))``."""
    if op == "div" and y.is_zero():
        raise ZeroDivisionError("division by zero in cyclotomic field")
    if x.m == 1 and y.m == 1:
        a, b = x.coeffs[0], y.coeffs[0]
        if op == "add":
            return CycScalar(1, (a + b,))
        if op == "mul":
            return CycScalar(1, (a * b,))
        if op == "div":
            return CycScalar(1, (a / b,))
        raise ValueError(f"unknown operation {op!r}")
    if op == "mul" and y.m == 1:
        c = y.coeffs[0]
        return CycScalar(x.m, tuple(v * c for v in x.coeffs))
    if op == "mul" and x.m == 1:
        c = x.coeffs[0]
        return CycScalar(y.m, tuple(v * c for v in y.coeffs))
    if op == "div" and y.m == 1:
        c = y.coeffs[0]
        return CycScalar(x.m, tuple(v / c for v in x.coeffs))
    m = x.m if x.m == y.m else lcm(x.m, y.m)
    xa, ya = cyc_promote(x, m).coeffs, cyc_promote(y, m).coeffs
    if op == "add":
        return CycScalar(m, tuple(a + b for a, b in zip(xa, ya)))
    if op == "mul":
        return CycScalar(m, _reduce(m, _polymul(xa, ya)))
    if op == "div":
        inv = _poly_inverse_mod(list(ya), m)
        return CycScalar(m, _reduce(m, _polymul(xa, inv)))
    raise ValueError(f"unknown operation {op!r}")


def _solve_rational(columns: list[tuple[Fraction, ...]], target: tuple[Fraction, ...]):
    """Solve sum(c_j * columns[j]) == target over Q; None when inconsistent."""
    rows = len(target)
    ncol = len(columns)
    mat = [[columns[j][i] for j in range(ncol)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, rows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][-1] for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(pivots):
        sol[c] = mat[i][-1]
    return sol


def _canonical(x: CycScalar) -> CycScalar:
    if x.is_rational():
        return CycScalar(1, (x.coeffs[0],))
    for e in _divisors(x.m)[:-1]:
        if e == 1:
            continue
        step = x.m // e
        cols = []
        for i in range(euler_phi(e)):
            poly = [Fraction(0)] * (i * step + 1)
            poly[i * step] = Fraction(1)
            cols.append(_reduce(x.m, poly))
        sol = _solve_rational(cols, x.coeffs)
        if sol is not None:
            return CycScalar(e, sol)
    return x


def as_rational_times_root_of_unity(x: CycScalar):
    """Write ``x = r * zeta_N^s`` with ``r > 0`` rational; None if impossible."""
    if x.is_zero():
        return None
    m = x.m
    for t in range(m):
        y = x * CycScalar.zeta(m, -t) if t else x
        if y.is_rational():
            r = y.coeffs[0]
            n, s = 2 * m, 2 * t + (m if r < 0 else 0)
            g = gcd(s, n)
            return abs(r), n // g, s // g
    return None


# ---------------------------------------------------------------------------
# Square roots and radicals inside the cyclotomic tower
# ---------------------------------------------------------------------------


def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(n + 1) if sieve[p]]


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> tuple[CycScalar, int]:
    if p == 2:
        return CycScalar.zeta(8) + CycScalar.zeta(8, -1), 8
    # quadratic Gauss sum: g^2 = (-1|p) p
    poly = [Fraction(0)] * p
    for j in range(1, p):
        poly[j] = Fraction(1 if pow(j, (p - 1) // 2, p) == 1 else -1)
    g = CycScalar.from_poly(p, poly)
    if p % 4 == 1:
        return g, p
    # g = i*sqrt(p), so sqrt(p) = -i*g
    return cyc_promote(-CycScalar.zeta(4) * g, 4 * p), 4 * p


def sqrt_rational_in_cyclotomic(
    r: RatLike, conductor_cap: int = DEFAULT_CONDUCTOR_CAP
) -> tuple[CycScalar, int]:
    """A square root of the rational ``r`` inside some ``Q(zeta_M)``.

    Returns ``(s, M)`` with ``s * s == r``; for ``r > 0`` the root is the
    positive real one.
    """
    r = as_rat(r)
    if r == 0:
        raise ValueError("sqrt of zero is not supported")
    neg = r < 0
    r = abs(r)
    n = r.numerator * r.denominator
    square, free = 1, 1
    for p in _primes_upto(max(conductor_cap, 2)):
        if n == 1:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            free *= p
    rest = isqrt(n)
    if rest * rest != n:
        raise TowerError(
            f"sqrt({r}) needs a prime above the conductor cap {conductor_cap}"
        )
    value = CycScalar.rational(Fraction(square * rest, r.denominator))
    conductor = 1
    if neg:
        value = value * CycScalar.zeta(4)
        conductor = 4
    p = 2
    while free > 1:
        if free % p == 0:
            root, mp = _sqrt_prime(p)
            conductor = lcm(conductor, mp)
            if conductor > conductor_cap:
                raise TowerError(f"sqrt({r}) exceeds the conductor cap {conductor_cap}")
            value = value * root
            free //= p
        p += 1
    return cyc_promote(value, conductor), conductor


def _iroot(n: int, q: int):
    """Exact integer q-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / q)))
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand ** q == n:
            return cand
    # large values: Newton iteration
    x = 1 << ((n.bit_length() + q - 1) // q)
    while True:
        y = ((q - 1) * x + n // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    return x if x ** q == n else None


def rational_root(r: Fraction, q: int):
    """Exact positive q-th root of the positive rational r, or None."""
    num, den = _iroot(r.numerator, q), _iroot(r.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def binomial_roots(q: int, a: CycScalar, conductor_cap: int = DEFAULT_CONDUCTOR_CAP) -> list[CycScalar]:
    """All q solutions of ``c^q = a`` for ``a`` a rational times a root of unity."""
    decomposed = as_rational_times_root_of_unity(a)
    if decomposed is None:
        raise TowerError(f"{a} is not a rational multiple of a root of unity")
    r, n, s = decomposed
    rho = rational_root(r, q)
    if rho is not None:
        modulus = CycScalar.rational(rho)
    else:
        # c^q = r  with q = 2h and r = u^h  gives c = sqrt(u) * unit
        u = rational_root(r, q // 2) if q % 2 == 0 else None
        if u is None:
            raise TowerError(f"root of order {q} of {r} is not cyclotomic")
        modulus, _ = sqrt_rational_in_cyclotomic(u, conductor_cap)
    roots = []
    for j in range(q):
        unit = CycScalar.zeta(q * n, s + n * j)
        root = (modulus * unit).canonical()
        if root.m > conductor_cap:
            raise TowerError(f"root of c^{q} = {a} exceeds the conductor cap {conductor_cap}")
        roots.append(root)
    return roots


def format_scalar(x: CycScalar) -> str:
    """Human-readable form using ``zeta(m)`` literals."""
    x = x.canonical()
    if x.is_rational():
        return rat_str(x.coeffs[0])
    parts = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("zeta(%d)" % x.m if i == 1 else "zeta(%d)^%d" % (x.m, i))
        if not mono:
            body = rat_str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{rat_str(abs(c))}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        text += f" {s} {body}"
    return text
