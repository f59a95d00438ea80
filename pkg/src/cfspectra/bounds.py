"""Approximation-bound functions as exact or enclosed values.

Every family has the shape ``num / (base + coeff*sqrt(radicand(x)))``:

* ``f0(x) = (sqrt5 + 1) / (sqrt5 + sqrt(5 - 4/x^2))``
* ``fk(x) = 2 D_k / (1 + sqrt(1 - C_k/x^2))`` with a parity-dependent constant
* ``gk(x) = 2 D_k / (1 + sqrt(1 - 4 D_k (1 - D_k)/x^2))``
* ``gm(x) = 2 / (L_m x (1 + sqrt(1 + 4/(L_m^2 x^2))))``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exact_core import BoundValue, NestedRadical, QuadSurd, surd_cmp
from .spectra import alpha_k, beta_family, dirichlet_D_k, lagrange_L

SQRT5 = QuadSurd.sqrt(5)
ONE = QuadSurd.rational(1)


@dataclass(frozen=True)
class BoundSpec:
    family: str
    index: int
    radicand_constant: QuadSurd
    asymptote: QuadSurd


@lru_cache(maxsize=None)
def fk_constant(k: int) -> QuadSurd:
    """Constant ``C_k`` under the inner root of ``f_k``."""
    if k < 1:
        raise DomainError("f_k needs k >= 1")
    a = alpha_k(k)
    fam = beta_family(k)
    if k % 2:
        den = (2 * fam.beta_k + 1) * (a + 1)
    else:
        den = (fam.beta_k_1 + fam.beta_k_2 + 1) * (a + 1)
    return 2 * a / den


@lru_cache(maxsize=None)
def gk_constant(k: int) -> QuadSurd:
    if k < 1:
        raise DomainError("g_k needs k >= 1")
    D = dirichlet_D_k(k)
    return 4 * D * (1 - D)


def bound_spec(family: str, index: int = 0) -> BoundSpec:
    if family == "f0":
        return BoundSpec("f0", 0, QuadSurd.rational(4), dirichlet_D_k(0))
    if family == "fk":
        return BoundSpec("fk", index, fk_constant(index), dirichlet_D_k(index))
    if family == "gk":
        return BoundSpec("gk", index, gk_constant(index), dirichlet_D_k(index))
    if family == "gm":
        L = lagrange_L(index).exact
        return BoundSpec("gm", index, 4 / (L * L), 1 / L)
    raise ValueError(f"unknown bound family {family!r}")


def _check_x(x, least, strict=False) -> Fraction:
    x = Fraction(x)
    if x < least or (strict and x == least):
        raise DomainError(f"x = {x} outside the domain of this bound")
    return x


def eval_f0(x) -> BoundValue:
    x = _check_x(x, 1)
    radicand = QuadSurd.rational(5 - Fraction(4) / (x * x))
    return BoundValue.from_radical(
        NestedRadical(SQRT5 + 1, SQRT5, ONE, radicand), label=f"f0({x})", field=5
    )


def _shifted_root_bound(C: QuadSurd, D: QuadSurd, x: Fraction, label: str) -> BoundValue:
    radicand = 1 - C / (x * x)
    if radicand.sign() <= 0:
        raise DomainError(f"{label}: radicand {radicand} is not positive")
    return BoundValue.from_radical(NestedRadical(2 * D, ONE, ONE, radicand), label=label)


def eval_fk(k: int, x) -> BoundValue:
    x = _check_x(x, 1)
    return _shifted_root_bound(fk_constant(k), dirichlet_D_k(k), x, f"f{k}({x})")


def eval_gk(k: int, x) -> BoundValue:
    x = _check_x(x, 1)
    return _shifted_root_bound(gk_constant(k), dirichlet_D_k(k), x, f"g{k}({x})")


def eval_gm(m: int, x) -> BoundValue:
    x = _check_x(x, 1)
    L = lagrange_L(m).exact
    radicand = 1 + 4 / (L * L * x * x)
    return BoundValue.from_radical(
        NestedRadical(2 / (L * x), ONE, ONE, radicand), label=f"g_m{m}({x})"
    )


def evaluate(family: str, index: int, x) -> BoundValue:
    if family == "f0":
        return eval_f0(x)
    if family == "fk":
        return eval_fk(index, x)
    if family == "gk":
        return eval_gk(index, x)
    if family == "gm":
        return eval_gm(index, x)
    raise ValueError(f"unknown bound family {family!r}")


def constants_coincide(k: int) -> bool:
    """True when ``f_k`` and ``g_k`` are the same function."""
    return surd_cmp(fk_constant(k), gk_constant(k)) == 0
