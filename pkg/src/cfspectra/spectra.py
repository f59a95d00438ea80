"""Exact constants of the discrete Dirichlet and Lagrange spectra."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

from .cf_engine import (
    CFExpansion,
    _require_periodic,
    purely_periodic_value,
    reversed_ratio_limits,
    tail,
    value_of,
)
from .errors import DomainError
from .exact_core import BoundValue, QuadSurd, surd_normalize


def ones(s: int) -> tuple[int, ...]:
    """The block ``1_s``."""
    if s < 0:
        raise DomainError(f"1_{s} is undefined")
    return (1,) * s


def alpha_k_cf(k: int) -> CFExpansion:
    """``[(1_{2k-1}, 2)]``; ``k = 0`` is the golden ratio ``[(1)]``."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return CFExpansion.periodic((1,))
    return CFExpansion.periodic(ones(2 * k - 1) + (2,))


@lru_cache(maxsize=None)
def alpha_k(k: int) -> QuadSurd:
    return value_of(alpha_k_cf(k))


@lru_cache(maxsize=None)
def dirichlet_D_k(k: int) -> QuadSurd:
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return surd_normalize(5, 1, 10, 5)
    a = alpha_k(k)
    return (2 * a + 1) / (2 * a + 2)


LESCA_BOUND = surd_normalize(1, 1, 4, 5)  # (1+sqrt(5))/4


def _beta_period(k: int) -> tuple[int, ...]:
    return (2,) + ones(2 * k - 1)


def beta_cf(k: int, which: int = 0) -> CFExpansion:
    """``which=0``: beta_k = [0; 1_{k-1}, (2, 1_{2k-1})]; ``1``: prefix 1_k; ``2``: prefix 1_{k-2}."""
    if k < 1:
        raise DomainError("beta numbers need k >= 1")
    prefix_len = {0: k - 1, 1: k, 2: k - 2}[which]
    if prefix_len < 0:
        raise DomainError(f"beta_{k}^({which}) needs k >= 2")
    return CFExpansion((0,) + ones(prefix_len), _beta_period(k))


@dataclass(frozen=True)
class BetaFamily:
    beta_k: QuadSurd
    beta_k_1: QuadSurd
    beta_k_2: QuadSurd | None


def beta_family(k: int) -> BetaFamily:
    return BetaFamily(
        value_of(beta_cf(k, 0)),
        value_of(beta_cf(k, 1)),
        value_of(beta_cf(k, 2)) if k >= 2 else None,
    )


def gamma_cf(k: int) -> CFExpansion:
    """``[(2, 1_{2k-1})]``, whose value is ``(2 alpha_k + 1)/alpha_k``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return CFExpansion.periodic(_beta_period(k))


def gamma_k(k: int) -> QuadSurd:
    a = alpha_k(k)
    return (2 * a + 1) / a


def beta_const_k(k: int) -> QuadSurd:
    """``[1; (2, 1_{2k-1})] = (3 alpha_k + 1)/(2 alpha_k + 1)``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    a = alpha_k(k)
    return (3 * a + 1) / (2 * a + 1)


# ---------------------------------------------------------------------------
# constants of arbitrary quadratic irrationals


def _class_limits(alpha: CFExpansion) -> list[QuadSurd]:
    """Limit of ``q_{n+1}||q_n alpha||`` along each class ``n mod L``."""
    _require_periodic(alpha)
    L = len(alpha.period)
    ratios = reversed_ratio_limits(alpha)
    base = len(alpha.preperiod) * L
    return [1 / (1 + ratios[r] / tail(alpha, base + r + 2)) for r in range(L)]


def dirichlet_limits(alpha: CFExpansion) -> list[QuadSurd]:
    return _class_limits(alpha)


def dirichlet_constant(alpha: CFExpansion) -> QuadSurd:
    """``limsup q_{n+1} ||q_n alpha||`` as an exact maximum over period classes."""
    if alpha.is_rational:
        raise DomainError("Dirichlet constant is defined for irrationals")
    return max(_class_limits(alpha))


def lagrange_constant(alpha: CFExpansion) -> QuadSurd:
    """``(liminf q_n ||q_n alpha||)^{-1} = limsup ([a_{n+1}; ...] + q_{n-1}/q_n)``."""
    if alpha.is_rational:
        raise DomainError("Lagrange constant is defined for irrationals")
    L = len(alpha.period)
    ratios = reversed_ratio_limits(alpha)
    base = (len(alpha.preperiod) + 1) * L
    return max(tail(alpha, base + r + 1) + ratios[(r - 1) % L] for r in range(L))


# ---------------------------------------------------------------------------
# Markoff numbers


@dataclass(frozen=True, order=True)
class MarkoffTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not self.a <= self.b <= self.c:
            raise ValueError("Markoff triple must be sorted")
        if self.a**2 + self.b**2 + self.c**2 != 3 * self.a * self.b * self.c:
            raise ValueError(f"({self.a}, {self.b}, {self.c}) is not a Markoff triple")


def markoff_enumerate(count: int) -> list[MarkoffTriple]:
    """First ``count`` Markoff triples ordered by their largest element.

    Vieta moves ``x -> 3yz - x`` from ``(1, 1, 1)``; children of a triple have
    a larger maximum (apart from the two degenerate roots), so a heap keyed by
    the maximum pops triples in sorted order.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    start = (1, 1, 1)
    heap = [(1, start)]
    seen = {start}
    out: list[MarkoffTriple] = []
    while heap and len(out) < count:
        _, t = heapq.heappop(heap)
        out.append(MarkoffTriple(*t))
        a, b, c = t
        for nxt in ((3 * b * c - a, b, c), (a, 3 * a * c - b, c), (a, b, 3 * a * b - c)):
            nxt = tuple(sorted(nxt))
            if nxt[0] > 0 and nxt not in seen:
                seen.add(nxt)
                heapq.heappush(heap, (nxt[2], nxt))
    return out


def markoff_numbers(count: int) -> list[int]:
    """First ``count`` distinct Markoff numbers in increasing order."""
    n = count
    while True:
        nums = sorted({t.c for t in markoff_enumerate(n)})
        # the heap pops by maximum, so once we see more than count values the
        # first count are final
        if len(nums) > count:
            return nums[:count]
        n *= 2


def lagrange_value(M: int) -> QuadSurd:
    """``sqrt(9 - 4/M^2) = sqrt(9M^2 - 4)/M``."""
    return surd_normalize(0, 1, M, 9 * M * M - 4)


def lagrange_L(j: int) -> BoundValue:
    if j < 1:
        raise DomainError("L_j is indexed from j = 1")
    M = markoff_numbers(j)[j - 1]
    return BoundValue.of_surd(lagrange_value(M), label=f"L_{j}")


# extremal numbers gamma_j for the first three Lagrange values
LAGRANGE_EXTREMAL_PERIODS = {1: (1,), 2: (2,), 3: (2, 2, 1, 1)}


def lagrange_extremal_cf(j: int) -> CFExpansion:
    if j not in LAGRANGE_EXTREMAL_PERIODS:
        raise DomainError("extremal numbers are provided for j <= 3 only")
    return CFExpansion.periodic(LAGRANGE_EXTREMAL_PERIODS[j])


def purely_periodic(period) -> QuadSurd:
    return purely_periodic_value(tuple(period))


@dataclass(frozen=True)
class SpectrumPoint:
    label: str
    value: BoundValue


def dirichlet_point(k: int) -> SpectrumPoint:
    return SpectrumPoint(f"D_{k}", BoundValue.of_surd(dirichlet_D_k(k), f"D_{k}"))


def lagrange_point(j: int) -> SpectrumPoint:
    M = markoff_numbers(j)[j - 1] if j >= 1 else None
    return SpectrumPoint(f"L_{j} (M={M})", lagrange_L(j))
