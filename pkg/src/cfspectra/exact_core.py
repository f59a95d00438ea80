"""Exact arithmetic: rationals, real quadratic surds and certified intervals.

Rationals are :class:`fractions.Fraction`.  A :class:`QuadSurd` is the value
``(a + b*sqrt(d)) / c`` kept in a canonical form so that equality of values is
equality of fields.  :class:`BoundValue` wraps the nested radicals
``num / (base + coeff*sqrt(radicand))`` that appear as approximation bounds; it
collapses to an exact surd whenever the radicand is a perfect square in the
ambient field, and otherwise provides nested rational enclosures.
"""

from __future__ import annotations

import decimal
import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional, Union

from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    IndeterminateComparison,
    UnsupportedFieldError,
)

BigRat = Fraction

BASE_BITS = 64
MAX_BITS = 4096


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[int(self)]


# ---------------------------------------------------------------------------
# integer helpers


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


_SMALL_BOUND = 1 << 16


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [p for p in range(limit + 1) if sieve[p]]


_PRIMES = _small_primes(_SMALL_BOUND)


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` squarefree (n > 0).

    Small primes are stripped by trial division.  The cofactor is then
    settled directly when it is below the cube of the bound (at most two
    prime factors left) or a perfect square, which covers the period
    discriminants of fields with small radicand; anything else is handed to
    sympy's factoriser.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    s, f = 1, 1
    m = n
    for p in _PRIMES:
        if p * p * p > m:
            settled = True  # every prime factor left is >= p, so at most two remain
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
    else:
        settled = m < _SMALL_BOUND**3
    r = isqrt(m)
    if r * r == m:
        return s * r, f
    if settled:
        return s, f * m
    from sympy import factorint

    for p, e in factorint(m).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def rational_sqrt(r: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if r < 0:
        return None
    n, m = r.numerator, r.denominator
    sn, sm = isqrt(n), isqrt(m)
    if sn * sn == n and sm * sm == m:
        return Fraction(sn, sm)
    return None


# ---------------------------------------------------------------------------
# quadratic surds


@dataclass(frozen=True, slots=True)
class QuadSurd:
    """``(a + b*sqrt(d)) / c`` in canonical form (see :func:`surd_normalize`)."""

    a: int
    b: int
    c: int
    d: int

    # -- constructors -----------------------------------------------------

    @staticmethod
    def rational(value: Union[int, Fraction]) -> "QuadSurd":
        value = Fraction(value)
        return QuadSurd(value.numerator, 0, value.denominator, 1)

    @staticmethod
    def sqrt(n: Union[int, Fraction]) -> "QuadSurd":
        n = Fraction(n)
        if n < 0:
            raise UnsupportedFieldError(f"sqrt of negative number {n}")
        # sqrt(p/q) = sqrt(p*q)/q
        return surd_normalize(0, 1, n.denominator, n.numerator * n.denominator)

    @staticmethod
    def coerce(x) -> "QuadSurd":
        if isinstance(x, QuadSurd):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadSurd.rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadSurd")

    # -- queries ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("irrational surd has no rational value")
        return Fraction(self.a, self.c)

    @property
    def parts(self) -> tuple[Fraction, Fraction]:
        """Rational coordinates ``(A, B)`` with value ``A + B*sqrt(d)``."""
        return Fraction(self.a, self.c), Fraction(self.b, self.c)

    def sign(self) -> int:
        return _surd_sign(self.a, self.b, self.d)

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.c, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d, self.c * self.c)

    def floor(self) -> int:
        if self.b == 0:
            return self.a // self.c
        t = isqrt(self.b * self.b * self.d)
        if self.b < 0:
            t = -t - 1
        return (self.a + t) // self.c

    def frac(self) -> "QuadSurd":
        return self - self.floor()

    def dist_to_int(self) -> "QuadSurd":
        """``||x||``, the distance to the nearest integer."""
        f = self.frac()
        g = 1 - f
        return f if surd_cmp(f, g) <= 0 else g

    def enclose(self, bits: int = BASE_BITS) -> "RatInterval":
        """Outward-rounded dyadic enclosure, absolute width about ``2**-bits``."""
        if self.b == 0:
            v = Fraction(self.a, self.c)
            return RatInterval(v, v).round_out(bits)
        extra = max(0, abs(self.b).bit_length() - self.c.bit_length() + 2)
        s = bits + extra
        r = isqrt(self.d << (2 * s))
        root = RatInterval(Fraction(r, 1 << s), Fraction(r + 1, 1 << s))
        return (root * self.b + self.a).scale(Fraction(1, self.c)).round_out(bits)

    def __float__(self) -> float:
        iv = self.enclose(80)
        return float((iv.lo + iv.hi) / 2)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return surd_arith("add", self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return surd_arith("sub", self, other)

    def __rsub__(self, other):
        return surd_arith("sub", other, self)

    def __mul__(self, other):
        return surd_arith("mul", self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return surd_arith("div", self, other)

    def __rtruediv__(self, other):
        return surd_arith("div", other, self)

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def inverse(self) -> "QuadSurd":
        return surd_arith("inv", self)

    # -- ordering ---------------------------------------------------------

    def __lt__(self, other):
        return surd_cmp(self, other) < 0

    def __le__(self, other):
        return surd_cmp(self, other) <= 0

    def __gt__(self, other):
        return surd_cmp(self, other) > 0

    def __ge__(self, other):
        return surd_cmp(self, other) >= 0

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        return render_surd(self)

    def __repr__(self) -> str:
        return f"QuadSurd({self.a}, {self.b}, {self.c}, {self.d})"


def render_surd(x: QuadSurd) -> str:
    """Render in the surd expression grammar, e.g. ``(5+sqrt(5))/10``."""
    if x.b == 0:
        return str(x.a) if x.c == 1 else f"{x.a}/{x.c}"
    coeff = abs(x.b)
    rad = f"sqrt({x.d})" if coeff == 1 else f"{coeff}*sqrt({x.d})"
    if x.a == 0:
        num = rad if x.b > 0 else f"-{rad}"
        if x.c == 1:
            return num
        return f"{num}/{x.c}"
    num = f"{x.a}{'+' if x.b > 0 else '-'}{rad}"
    if x.c == 1:
        return num
    return f"({num})/{x.c}"


def surd_normalize(a: int, b: int, c: int, d: int) -> QuadSurd:
    """Canonical form of ``(a + b*sqrt(d)) / c``."""
    if c == 0:
        raise DivisionByZeroError("surd with zero denominator")
    if d < 0:
        raise UnsupportedFieldError(f"negative radicand {d}")
    if d == 0:
        b = 0
    elif b != 0:
        s, f = squarefree_decompose(d)
        b *= s
        d = f
    if d == 1:
        a, b = a + b, 0
    if b == 0:
        d = 1
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(a, b), c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return QuadSurd(a, b, c, d)


def _surd_sign(a: int, b: int, d: int) -> int:
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    # opposite signs; a*a == b*b*d is impossible for squarefree d >= 2
    return sa if a * a > b * b * d else sb


def _common_field(x: QuadSurd, y: QuadSurd) -> int:
    if x.b == 0:
        return y.d
    if y.b == 0 or x.d == y.d:
        return x.d
    raise FieldMismatchError(f"sqrt({x.d}) and sqrt({y.d}) live in different fields")


def surd_arith(op: str, x, y=None) -> QuadSurd:
    """Exact field operation; ``op`` in add, sub, mul, div, inv, neg."""
    x = QuadSurd.coerce(x)
    if op == "neg":
        return -x
    if op == "inv":
        if x.a == 0 and x.b == 0:
            raise DivisionByZeroError("inverse of zero")
        # c / (a + b r) = c (a - b r) / (a^2 - b^2 d)
        return surd_normalize(x.c * x.a, -x.c * x.b, x.a * x.a - x.b * x.b * x.d, x.d)
    y = QuadSurd.coerce(y)
    d = _common_field(x, y)
    a1, b1, c1 = x.a, x.b, x.c
    a2, b2, c2 = y.a, y.b, y.c
    if op == "add":
        return surd_normalize(a1 * c2 + a2 * c1, b1 * c2 + b2 * c1, c1 * c2, d)
    if op == "sub":
        return surd_normalize(a1 * c2 - a2 * c1, b1 * c2 - b2 * c1, c1 * c2, d)
    if op == "mul":
        return surd_normalize(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, c1 * c2, d)
    if op == "div":
        if y.a == 0 and y.b == 0:
            raise DivisionByZeroError("division by zero surd")
        return surd_arith("mul", x, surd_arith("inv", y))
    raise ValueError(f"unknown operation {op!r}")


def surd_cmp(x, y) -> Ordering:
    """Exact ordering of two surds, in the same field or not."""
    x, y = QuadSurd.coerce(x), QuadSurd.coerce(y)
    if x.b == 0 or y.b == 0 or x.d == y.d:
        return Ordering(surd_arith("sub", x, y).sign())
    # sign of (A + B sqrt(d1)) - C sqrt(d2)
    A = y.c * x.a - x.c * y.a
    B = y.c * x.b
    C = x.c * y.b
    su = _surd_sign(A, B, x.d)
    sv = _sign(C)
    if su != sv:
        return Ordering(1 if su > sv else -1)
    # same sign, compare squares: (A^2 + B^2 d1 + 2AB sqrt(d1)) vs C^2 d2
    s = _surd_sign(A * A + B * B * x.d - C * C * y.d, 2 * A * B, x.d)
    return Ordering(s * su)


def surd_sqrt(x, field: int = 1) -> Optional[QuadSurd]:
    """Square root of ``x`` inside ``Q(sqrt(field))`` if one exists.

    ``field`` only matters when ``x`` is rational: then ``x`` may be a square
    of ``s*sqrt(field)``.
    """
    x = QuadSurd.coerce(x)
    if x.sign() < 0:
        return None
    if x.a == 0 and x.b == 0:
        return x
    A, B = x.parts
    if x.b == 0:
        r = rational_sqrt(A)
        if r is not None:
            return QuadSurd.rational(r)
        if field > 1:
            r = rational_sqrt(A / field)
            if r is not None:
                return surd_normalize(0, r.numerator, r.denominator, field)
        return None
    d = x.d
    n = rational_sqrt(A * A - d * B * B)
    if n is None:
        return None
    for u2 in ((A + n) / 2, (A - n) / 2):
        u = rational_sqrt(u2)
        if u is None or u == 0:
            continue
        v = B / (2 * u)
        y = surd_normalize(
            u.numerator * v.denominator, v.numerator * u.denominator, u.denominator * v.denominator, d
        )
        if y * y == x:
            return abs(y)
    return None


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True, slots=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(v) -> "RatInterval":
        v = Fraction(v)
        return RatInterval(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        if isinstance(v, RatInterval):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= v <= self.hi

    def disjoint_from(self, other: "RatInterval") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def intersect(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def round_out(self, bits: int) -> "RatInterval":
        lo = Fraction((self.lo.numerator << bits) // self.lo.denominator, 1 << bits)
        hi = Fraction(-((-self.hi.numerator << bits) // self.hi.denominator), 1 << bits)
        return RatInterval(lo, hi)

    def scale(self, k: Fraction) -> "RatInterval":
        a, b = self.lo * k, self.hi * k
        return RatInterval(min(a, b), max(a, b))

    def __add__(self, other):
        if isinstance(other, RatInterval):
            return RatInterval(self.lo + other.lo, self.hi + other.hi)
        return RatInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatInterval):
            return self.scale(Fraction(other))
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise DivisionByZeroError("interval reciprocal across zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if isinstance(other, RatInterval):
            return self * other.reciprocal()
        return self.scale(1 / Fraction(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def sqrt(self, bits: int) -> "RatInterval":
        if self.hi < 0:
            raise UnsupportedFieldError("sqrt of negative interval")
        lo = max(self.lo, Fraction(0))
        n_lo = (lo.numerator << (2 * bits)) // lo.denominator
        n_hi = -((-self.hi.numerator << (2 * bits)) // self.hi.denominator)
        r_lo = isqrt(n_lo)
        r_hi = isqrt(n_hi)
        if r_hi * r_hi != n_hi:
            r_hi += 1
        return RatInterval(Fraction(r_lo, 1 << bits), Fraction(r_hi, 1 << bits))

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def interval_decimal(iv: RatInterval, digits: int = 30) -> str:
    """Midpoint of ``iv`` as a decimal string with ``digits`` significant digits."""
    m = iv.mid
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        v = decimal.Decimal(m.numerator) / decimal.Decimal(m.denominator)
    return f"{v:f}" if -8 < v.adjusted() < digits else str(v)


def interval_text(iv: RatInterval, digits: int = 30) -> str:
    """``[lo, hi]`` rounded outward to ``digits`` significant digits."""
    ends = []
    for r, mode in ((iv.lo, decimal.ROUND_FLOOR), (iv.hi, decimal.ROUND_CEILING)):
        with decimal.localcontext() as ctx:
            ctx.prec = digits
            ctx.rounding = mode
            ends.append(str(decimal.Decimal(r.numerator) / decimal.Decimal(r.denominator)))
    return f"[{ends[0]}, {ends[1]}]"


def surd_decimal(x: QuadSurd, digits: int = 30) -> str:
    bits = int(digits * 3.33) + 16
    return interval_decimal(x.enclose(bits), digits)


# ---------------------------------------------------------------------------
# bound values


@dataclass(frozen=True, slots=True)
class NestedRadical:
    """``num / (base + coeff*sqrt(radicand))`` with all parts in one field."""

    num: QuadSurd
    base: QuadSurd
    coeff: QuadSurd
    radicand: QuadSurd

    @property
    def field(self) -> int:
        ds = {p.d for p in (self.num, self.base, self.coeff, self.radicand) if p.b}
        if len(ds) > 1:
            raise FieldMismatchError(f"nested radical mixes fields {sorted(ds)}")
        return ds.pop() if ds else 1

    def enclose(self, bits: int) -> RatInterval:
        g = bits + 8
        root = self.radicand.enclose(2 * g).sqrt(g)
        den = self.base.enclose(g) + self.coeff.enclose(g) * root
        return (self.num.enclose(g) / den).round_out(bits)

    def describe(self) -> str:
        return f"({self.num})/({self.base} + ({self.coeff})*sqrt({self.radicand}))"


@dataclass(frozen=True, slots=True)
class SquareCertificate:
    """``root**2 == radicand`` exactly; the witness behind an equality."""

    radicand: QuadSurd
    root: QuadSurd

    def __str__(self) -> str:
        return f"{self.radicand} = ({self.root})^2"


@dataclass(frozen=True, slots=True)
class BoundValue:
    label: str
    exact: Optional[QuadSurd] = None
    radical: Optional[NestedRadical] = None
    certificate: Optional[SquareCertificate] = None

    @staticmethod
    def of_surd(x: QuadSurd, label: str = "") -> "BoundValue":
        return BoundValue(label or str(x), exact=x)

    @staticmethod
    def from_radical(radical: NestedRadical, label: str = "", field: int = 1) -> "BoundValue":
        """Collapse to an exact surd when the radicand is a perfect square."""
        fld = radical.field
        if fld == 1:
            fld = field
        root = surd_sqrt(radical.radicand, fld)
        if root is not None:
            den = radical.base + radical.coeff * root
            value = radical.num / den
            return BoundValue(label, exact=value, radical=radical,
                              certificate=SquareCertificate(radical.radicand, root))
        return BoundValue(label, radical=radical)

    @property
    def kind(self) -> str:
        return "exact" if self.exact is not None else "nested"

    def enclosure(self, bits: int = BASE_BITS) -> RatInterval:
        if self.exact is not None:
            return self.exact.enclose(bits)
        return self.radical.enclose(bits)

    def refine(self, level: int) -> RatInterval:
        """Enclosure at ``64 * 2**level`` bits."""
        return self.enclosure(BASE_BITS << level)

    def refinements(self, max_bits: int = MAX_BITS) -> Iterator[RatInterval]:
        """Nested enclosures at doubling precision, 64 bits up to ``max_bits``."""
        bits = BASE_BITS
        current = None
        while bits <= max_bits:
            iv = self.enclosure(bits)
            current = iv if current is None else current.intersect(iv)
            yield current
            bits *= 2

    def expression(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return self.radical.describe()

    def decimal(self, digits: int = 30) -> str:
        return interval_decimal(self.enclosure(int(digits * 3.33) + 16), digits)

    def __str__(self) -> str:
        return self.expression()


@dataclass(frozen=True, slots=True)
class BoundComparison:
    order: Ordering
    certificate: Optional[SquareCertificate] = None


def bound_cmp(x, y: BoundValue, max_bits: int = MAX_BITS) -> BoundComparison:
    """Order a surd against a bound value.

    Equal is only ever returned through the perfect-square path; otherwise
    enclosures are refined until they separate.
    """
    x = QuadSurd.coerce(x)
    if y.exact is not None:
        v = y.exact
        if x.b == 0 or v.b == 0 or x.d == v.d:
            order = surd_cmp(x, v)
            return BoundComparison(order, y.certificate if order == Ordering.EQUAL else None)
    elif x.b and y.radical.field == 1:
        # rational radical data: a square root may still live in x's field
        promoted = BoundValue.from_radical(y.radical, y.label, field=x.d)
        if promoted.exact is not None:
            return bound_cmp(x, promoted, max_bits)
    bits = BASE_BITS
    xi = yi = None
    while bits <= max_bits:
        xi = x.enclose(bits)
        yi = y.enclosure(bits)
        if xi.hi < yi.lo:
            return BoundComparison(Ordering.LESS)
        if yi.hi < xi.lo:
            return BoundComparison(Ordering.GREATER)
        bits *= 2
    raise IndeterminateComparison(
        f"could not separate {x} from {y.expression()} at {max_bits} bits", xi, yi
    )
