"""Continued fractions of rationals and quadratic surds.

Indexing follows the usual seeds ``p_{-1}=1, q_{-1}=0, p_0=a_0, q_0=1``.  A
:class:`CFExpansion` always keeps ``a_0`` in its preperiod, so the golden ratio
is ``[1; (1)]`` and a purely periodic number such as ``[(1, 2)]`` is stored as
``[1; (2, 1)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence, Union

from .errors import BudgetExceededError, DomainError
from .exact_core import QuadSurd, surd_cmp, surd_normalize

Number = Union[QuadSurd, Fraction, int]


def _minimal_period(period: Sequence[int]) -> tuple[int, ...]:
    n = len(period)
    for L in range(1, n + 1):
        if n % L == 0 and all(period[i] == period[i % L] for i in range(n)):
            return tuple(period[:L])
    return tuple(period)


@dataclass(frozen=True)
class CFExpansion:
    """Canonical eventually periodic continued fraction.

    ``preperiod`` holds ``a_0, ..., a_{s}``; ``period`` is the repeating block,
    empty for rationals.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        if not pre:
            if not per:
                raise ValueError("empty continued fraction")
            pre, per = per[:1], per[1:] + per[:1]
        if any(a < 1 for a in pre[1:]) or any(a < 1 for a in per):
            raise ValueError("partial quotients after a_0 must be positive")
        if per:
            per = _minimal_period(per)
            while len(pre) > 1 and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        elif len(pre) > 1 and pre[-1] == 1:
            pre = pre[:-2] + (pre[-2] + 1,)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def periodic(cls, period: Sequence[int]) -> "CFExpansion":
        """Purely periodic ``[(period)]``."""
        return cls((), tuple(period))

    @property
    def is_rational(self) -> bool:
        return not self.period

    def __len__(self) -> int:
        if self.period:
            raise TypeError("infinite continued fraction has no length")
        return len(self.preperiod)

    def term(self, i: int) -> int:
        pre = self.preperiod
        if i < 0:
            raise IndexError(i)
        if i < len(pre):
            return pre[i]
        if not self.period:
            raise IndexError(f"finite continued fraction has no term {i}")
        return self.period[(i - len(pre)) % len(self.period)]

    def terms(self, n: int) -> list[int]:
        """First ``n`` partial quotients (fewer for a short finite expansion)."""
        if self.period:
            return [self.term(i) for i in range(n)]
        return list(self.preperiod[:n])

    def __str__(self) -> str:
        head = str(self.preperiod[0])
        rest = [str(a) for a in self.preperiod[1:]]
        if self.period:
            rest.append("(" + ", ".join(str(a) for a in self.period) + ")")
        if not rest:
            return f"[{head}]"
        return f"[{head}; {', '.join(rest)}]"


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class MeasureSample:
    t: Fraction
    value: QuadSurd
    active_index: int


# ---------------------------------------------------------------------------
# expansion and evaluation


def expand(x: Number, max_terms: int = 10_000) -> CFExpansion:
    """Exact expansion; raises :class:`BudgetExceededError` past ``max_terms``."""
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    if isinstance(x, QuadSurd) and x.b == 0:
        x = x.to_fraction()
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        n, m = x.numerator, x.denominator
        terms = []
        while m:
            if len(terms) >= max_terms:
                raise BudgetExceededError(f"rational expansion exceeds {max_terms} terms")
            a, r = divmod(n, m)
            terms.append(a)
            n, m = m, r
        return CFExpansion(tuple(terms))
    # (a + b sqrt(d))/c  ->  (P + sqrt(D))/Q with Q | D - P^2
    a, b, c, d = x.a, x.b, x.c, x.d
    if b < 0:
        a, b, c = -a, -b, -c
    D = b * b * d * c * c
    P = a * abs(c)
    Q = c * abs(c)
    r = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        if len(terms) >= max_terms:
            raise BudgetExceededError(f"period not closed within {max_terms} terms")
        seen[(P, Q)] = len(terms)
        t = (P + r) // Q if Q > 0 else (P + r + 1) // Q
        terms.append(t)
        P = t * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return CFExpansion(tuple(terms[:start]), tuple(terms[start:]))


def _mobius(terms: Sequence[int]) -> tuple[int, int, int, int]:
    """Matrix (p, p', q, q') with [terms..., y] = (p*y + p')/(q*y + q')."""
    p, pp, q, qq = 1, 0, 0, 1
    for t in terms:
        p, pp = t * p + pp, p
        q, qq = t * q + qq, q
    return p, pp, q, qq


def purely_periodic_value(period: Sequence[int]) -> QuadSurd:
    """Value of ``[(period)]``: the root > 1 of ``q y^2 + (q' - p) y - p' = 0``."""
    p, pp, q, qq = _mobius(period)
    disc = (qq - p) ** 2 + 4 * pp * q
    return surd_normalize(p - qq, 1, 2 * q, disc)


def value_of(cf: CFExpansion) -> Union[QuadSurd, Fraction]:
    if not cf.period:
        p, pp, q, qq = _mobius(cf.preperiod[:-1])
        y = cf.preperiod[-1]
        return Fraction(p * y + pp, q * y + qq)
    y = purely_periodic_value(cf.period)
    p, pp, q, qq = _mobius(cf.preperiod)
    return (p * y + pp) / (q * y + qq)


def from_terms(preperiod: Sequence[int], period: Sequence[int] = ()) -> Union[QuadSurd, Fraction]:
    """Value of a raw (not necessarily canonical) expansion."""
    return value_of(CFExpansion(tuple(preperiod), tuple(period)))


def convergents(cf: CFExpansion, N: int) -> list[Convergent]:
    """Convergents ``p_n/q_n`` for ``0 <= n <= N`` (truncated for short finite CFs)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = []
    p1, p0, q1, q0 = 1, 0, 0, 1  # (p_{n-1}, p_{n-2}, q_{n-1}, q_{n-2})
    for n, a in enumerate(cf.terms(N + 1)):
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
        out.append(Convergent(n, p1, q1))
    return out


def iter_convergents(cf: CFExpansion) -> Iterator[Convergent]:
    p1, p0, q1, q0 = 1, 0, 0, 1
    n = 0
    while True:
        try:
            a = cf.term(n)
        except IndexError:
            return
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
        yield Convergent(n, p1, q1)
        n += 1


def tail(cf: CFExpansion, n: int) -> Union[QuadSurd, Fraction]:
    """Complete quotient ``[a_n; a_{n+1}, ...]``."""
    if n < 0:
        raise IndexError(n)
    pre = cf.preperiod
    if not cf.period:
        if n >= len(pre):
            raise IndexError(f"finite continued fraction has no tail {n}")
        return value_of(CFExpansion(pre[n:] if n else pre))
    if n < len(pre):
        return value_of(CFExpansion(pre[n:], cf.period))
    k = (n - len(pre)) % len(cf.period)
    return purely_periodic_value(cf.period[k:] + cf.period[:k])


def _require_periodic(cf: CFExpansion) -> None:
    if not cf.period:
        raise DomainError("operation needs an infinite (periodic) continued fraction")


def reversed_ratio_limits(cf: CFExpansion) -> list[QuadSurd]:
    """Limits of ``q_n/q_{n+1}`` along each class ``n mod L`` (L = period length).

    ``q_n/q_{n+1} = [0; a_{n+1}, a_n, ..., a_1]`` tends to the purely periodic
    number built from the reversed period ending at ``a_{n+1}``.
    """
    _require_periodic(cf)
    L = len(cf.period)
    base = len(cf.preperiod) * L  # any n past the preperiod, n = 0 mod L
    out = []
    for r in range(L):
        n = base + r
        word = [cf.term(n + 1 - j) for j in range(L)]
        out.append(1 / purely_periodic_value(word))
    return out


# ---------------------------------------------------------------------------
# approximation quantities


def _dist(alpha: QuadSurd, q: int) -> QuadSurd:
    return (alpha * q).dist_to_int()


def approx_quality(alpha: CFExpansion, n: int) -> QuadSurd:
    """``q_{n+1} * ||q_n alpha||`` exactly."""
    _require_periodic(alpha)
    if n < 0:
        raise IndexError(n)
    conv = convergents(alpha, n + 1)
    return _dist(value_of(alpha), conv[n].q) * conv[n + 1].q


def approx_qualities(alpha: CFExpansion, N: int) -> list[tuple[int, int, QuadSurd]]:
    """``(q_n, q_{n+1}, q_{n+1}*||q_n alpha||)`` for ``0 <= n <= N``, in one pass."""
    _require_periodic(alpha)
    x = value_of(alpha)
    conv = convergents(alpha, N + 1)
    return [(conv[n].q, conv[n + 1].q, _dist(x, conv[n].q) * conv[n + 1].q) for n in range(N + 1)]


def perron_quality(alpha: CFExpansion, n: int) -> QuadSurd:
    """``1 / (1 + (q_n/q_{n+1}) / [a_{n+2}; a_{n+3}, ...])``, valid for ``n >= 1``."""
    conv = convergents(alpha, n + 1)
    ratio = Fraction(conv[n].q, conv[n + 1].q)
    return 1 / (1 + ratio / tail(alpha, n + 2))


def left_limit(alpha: CFExpansion, n: int) -> QuadSurd:
    """``lim_{t -> q_n^-} t * psi_alpha(t) = q_n * ||q_{n-1} alpha||``."""
    if n < 1:
        raise IndexError("left limit needs n >= 1")
    return approx_quality(alpha, n - 1)


def psi(alpha: CFExpansion, t) -> MeasureSample:
    """``min_{1 <= q <= t} ||q alpha||`` via the best-approximation denominators."""
    _require_periodic(alpha)
    t = Fraction(t)
    if t < 1:
        raise DomainError("psi is defined for t >= 1")
    x = value_of(alpha)
    active = None
    for c in iter_convergents(alpha):
        if c.q > t:
            break
        active = c
    return MeasureSample(t, _dist(x, active.q), active.index)


def equivalent(a: CFExpansion, b: CFExpansion) -> bool:
    """Tails eventually coincide."""
    if not a.period or not b.period:
        return not a.period and not b.period
    pa, pb = a.period, b.period
    if len(pa) != len(pb):
        return False
    return any(pb == pa[i:] + pa[:i] for i in range(len(pa)))


def compare_values(x: Number, y: Number) -> int:
    return int(surd_cmp(QuadSurd.coerce(x), QuadSurd.coerce(y)))
