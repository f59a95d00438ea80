"""Exhaustive-search oracles for the continued-fraction inequality lemmas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional

from ..cf_engine import CFExpansion, from_terms, value_of
from ..errors import BudgetExceededError, DomainError
from ..exact_core import Ordering, QuadSurd, surd_cmp
from ..spectra import ones, purely_periodic
from .report import CONFIRMED, INCONCLUSIVE, REFUTED, Row, Verdict, VerifyReport

SEARCH_BUDGET = 10**7
B0_WINDOW = (-1, 0, 1)

# lemma -> (side of alpha the rational must lie on, parity of n, closed form bumps a_n)
LEMMAS = {
    1: ("below", 0, False),
    2: ("below", 1, True),
    3: ("above", 1, False),
    4: ("above", 0, True),
}


@dataclass(frozen=True)
class LemmaInstance:
    target: CFExpansion
    depth: int
    bound: int = 3
    direction: str = "below"

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("quotient bound must be >= 1")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.direction not in ("below", "above"):
            raise ValueError("direction is 'below' or 'above'")

    @property
    def parity(self) -> int:
        return self.depth % 2

    @property
    def search_size(self) -> int:
        return len(B0_WINDOW) * self.bound**self.depth


def lemma_instance(which: int, target: CFExpansion, depth: int, bound: int = 3) -> LemmaInstance:
    return LemmaInstance(target, depth, bound, LEMMAS[which][0])


def closed_form(which: int, target: CFExpansion, depth: int) -> tuple[int, ...]:
    terms = tuple(target.terms(depth + 1))
    if LEMMAS[which][2]:
        terms = terms[:-1] + (terms[-1] + 1,)
    return terms


def _enumerate(a0: int, depth: int, bound: int) -> Iterable[tuple[tuple[int, ...], Fraction]]:
    for b0 in B0_WINDOW:
        for rest in product(range(1, bound + 1), repeat=depth):
            terms = (a0 + b0,) + rest
            yield terms, from_terms(terms)


def lemma_oracle(which: int, inst: LemmaInstance) -> VerifyReport:
    """Exhaustive minimiser of ``|alpha - b|`` over ``b = [b_0; b_1..b_n]`` on one side of alpha."""
    if which not in LEMMAS:
        raise DomainError("lemma oracles exist for lemmas 1-4")
    side, parity, _ = LEMMAS[which]
    if inst.direction != side or inst.parity != parity:
        raise DomainError(
            f"lemma {which} needs direction={side} and n {'odd' if parity else 'even'}"
        )
    if inst.search_size > SEARCH_BUDGET:
        raise BudgetExceededError(
            f"search needs {inst.search_size} candidates, budget is {SEARCH_BUDGET}",
            required=inst.search_size,
        )
    alpha = QuadSurd.coerce(value_of(inst.target))
    want = 1 if side == "below" else -1  # sign of alpha - b
    best: Optional[tuple[tuple[int, ...], QuadSurd]] = None
    ties: list[tuple[int, ...]] = []
    searched = 0
    for terms, b in _enumerate(inst.target.term(0), inst.depth, inst.bound):
        searched += 1
        diff = alpha - b
        if diff.sign() != want:
            continue
        dist = abs(diff)
        if best is None:
            best = (terms, dist)
            continue
        c = surd_cmp(dist, best[1])
        if c < 0:
            best, ties = (terms, dist), []
        elif c == Ordering.EQUAL:
            ties.append(terms)
    params = {
        "lemma": which,
        "alpha": str(inst.target),
        "n": inst.depth,
        "B": inst.bound,
        "direction": side,
    }
    predicted = closed_form(which, inst.target, inst.depth)
    pred_value = from_terms(predicted)
    pred_dist = abs(alpha - pred_value)
    if best is None:
        v = Verdict(INCONCLUSIVE, reason="no candidate on the required side")
        return VerifyReport(f"lemma{which}", params, (), v, {"searched": searched})
    best_terms, best_dist = best
    order = surd_cmp(best_dist, pred_dist)
    den = from_terms(best_terms).denominator
    row = Row(inst.depth, den, best_dist, str(pred_dist), order.symbol, tag=str(list(best_terms)))
    details = {
        "searched": searched,
        "minimiser": list(best_terms),
        "closed_form": list(predicted),
        "ties": [list(t) for t in ties],
    }
    same = from_terms(best_terms) == pred_value
    if ties:
        v = Verdict(REFUTED, row, f"tie between {list(best_terms)} and {[list(t) for t in ties]}")
    elif not same:
        v = Verdict(REFUTED, row, f"minimiser {list(best_terms)} differs from {list(predicted)}")
    else:
        v = Verdict(CONFIRMED, reason=f"minimiser {list(best_terms)} matches the closed form")
    return VerifyReport(f"lemma{which}", params, (row,), v, details)


def lemma_panel(targets: Iterable[CFExpansion], max_depth: int = 6, bound: int = 3) -> list[VerifyReport]:
    """Every lemma on every target at every admissible depth up to ``max_depth``."""
    out = []
    for target in targets:
        for which, (_, parity, _) in LEMMAS.items():
            for n in range(parity, max_depth + 1, 2):
                out.append(lemma_oracle(which, lemma_instance(which, target, n, bound)))
    return out


# ---------------------------------------------------------------------------
# Lemma 5


def w_value(k: int, m: int, s: int) -> QuadSurd:
    """``W_m(s)``; ``s = 2k`` is the boundary form ``[0; (1_{2k-1},2)^{m+1}] + [(2, 1_{2k-1})]``."""
    if not 1 <= s <= 2 * k:
        raise DomainError("s must lie in [1, 2k]")
    block = ones(2 * k - 1) + (2,)
    period = (2,) + ones(2 * k - 1)
    if s == 2 * k:
        return from_terms((0,) + block * (m + 1)) + purely_periodic(period)
    first = from_terms((0,) + ones(s - 1) + (2,) + block * m)
    return first + from_terms((1,) + ones(2 * k - s - 1), period)


def w_limit(k: int, s: int) -> QuadSurd:
    """``W_inf(s) = [0; 1_{s-1}, (2, 1_{2k-1})] + [0; 1_{2k-s-1}, (2, 1_{2k-1})]``.

    Normalised so that ``W_m(s) -> W_inf(s) + 1``; at ``s = 2k`` the second
    summand follows the boundary form and becomes ``[(2, 1_{2k-1})] - 1``.
    """
    period = (2,) + ones(2 * k - 1)
    if s == 2 * k:
        return value_of(CFExpansion((0,) + ones(2 * k - 1), period)) + purely_periodic(period) - 1
    return value_of(CFExpansion((0,) + ones(s - 1), period)) + value_of(
        CFExpansion((0,) + ones(2 * k - s - 1), period)
    )


def _argmax(values: dict[int, QuadSurd]) -> list[int]:
    top = max(values.values())
    return sorted(s for s, v in values.items() if surd_cmp(v, top) == Ordering.EQUAL)


def lemma5_predicted_odd(k: int) -> tuple[int, ...]:
    return (k,) if k % 2 else (k - 1, k + 1)


def lemma5_check(k: int, m_range: Iterable[int]) -> VerifyReport:
    """Argmax of ``W_m(s)`` over odd and even ``s`` against the predicted case split."""
    if not 1 <= k <= 5:
        raise DomainError("lemma 5 is checked for 1 <= k <= 5")
    ms = sorted(m_range)
    pred_odd = lemma5_predicted_odd(k)
    rows = []
    table = []
    good_m = {}
    for m in ms:
        vals = {s: w_value(k, m, s) for s in range(1, 2 * k + 1)}
        odd = _argmax({s: v for s, v in vals.items() if s % 2})
        even = _argmax({s: v for s, v in vals.items() if s % 2 == 0})
        pred_odd_best = max(vals[s] for s in pred_odd)
        o_odd = surd_cmp(vals[odd[0]], pred_odd_best)
        o_even = surd_cmp(vals[even[0]], vals[2 * k])
        rows.append(Row(m, odd[0], vals[odd[0]], str(pred_odd_best), o_odd.symbol,
                        tag=f"odd argmax {odd}"))
        rows.append(Row(m, even[0], vals[even[0]], str(vals[2 * k]), o_even.symbol,
                        tag=f"even argmax {even}"))
        table.append({"m": m, "odd_argmax": odd, "even_argmax": even})
        good_m[m] = set(odd) <= set(pred_odd) and even == [2 * k]
    threshold = None
    for m in reversed(ms):
        if not good_m[m]:
            break
        threshold = m
    limit_vals = {s: w_limit(k, s) for s in range(1, 2 * k + 1)}
    details = {
        "table": table,
        "threshold_m": threshold,
        "predicted_odd": list(pred_odd),
        "predicted_even": [2 * k],
        "limit_odd_argmax": _argmax({s: v for s, v in limit_vals.items() if s % 2}),
        "limit_even_argmax": _argmax({s: v for s, v in limit_vals.items() if s % 2 == 0}),
    }
    params = {"k": k, "m": [ms[0], ms[-1]] if ms else []}
    if threshold is None:
        bad = next(r for r in reversed(rows) if r.ordering != "=")
        v = Verdict(REFUTED, bad, "case split fails at the largest m tested")
    else:
        v = Verdict(CONFIRMED, reason=f"case split holds for all m >= {threshold} in range")
    return VerifyReport("lemma5", params, tuple(rows), v, details)
