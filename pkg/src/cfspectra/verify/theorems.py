"""Sweeps over convergent indices checking the approximation theorems.

"Infinitely many n" is checked at desk scale as: witnesses exist in
``[lo, N]`` and no gap between consecutive witnesses (or to either end of the
range) exceeds ``lcm(2, L)``, L the period length.  "For all t large enough"
is checked by locating the first index ``n0`` after which the predicate holds
through ``N``; it must cover at least the second half of the range.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt, lcm
from typing import Callable, Iterable, Optional, Sequence

from ..bounds import eval_f0, eval_fk, eval_gk, eval_gm
from ..cf_engine import CFExpansion, approx_qualities, convergents, equivalent, expand, value_of
from ..errors import DomainError
from ..exact_core import BoundValue, Ordering, QuadSurd, bound_cmp, is_square, surd_cmp
from ..spectra import (
    alpha_k,
    alpha_k_cf,
    beta_cf,
    dirichlet_constant,
    dirichlet_D_k,
    lagrange_L,
    lagrange_extremal_cf,
)
from .report import CONFIRMED, INCONCLUSIVE, REFUTED, Row, Verdict, VerifyReport, combine


def witness_gap(cf: CFExpansion) -> int:
    return lcm(2, len(cf.period))


def recurs(indices: Iterable[int], lo: int, hi: int, gap: int) -> bool:
    idx = sorted(i for i in indices if lo <= i <= hi)
    if not idx:
        return False
    pts = [lo - 1] + idx + [hi + 1]
    return all(b - a <= gap for a, b in zip(pts, pts[1:]))


def threshold(rows: Sequence[Row], pred: Callable[[Row], bool]) -> Optional[int]:
    """Smallest ``n0`` such that ``pred`` holds for every row with ``n >= n0``."""
    n0 = None
    for r in reversed(rows):
        if not pred(r):
            break
        n0 = r.n
    return n0


def _need_irrational(alpha: CFExpansion) -> None:
    if alpha.is_rational:
        raise DomainError("sweeps need an irrational (periodic) continued fraction")


def _cf_param(alpha: CFExpansion) -> str:
    return str(alpha)


def quality_rows(
    alpha: CFExpansion,
    N: int,
    bound: Callable[[int], BoundValue],
    limit: Optional[QuadSurd] = None,
    left: bool = False,
) -> list[Row]:
    """Rows comparing ``q_{n+1}||q_n alpha||`` with ``bound(q_{n+1})``.

    With ``left=True`` rows are labelled by ``n+1`` (the left limit at
    ``q_{n+1}``) and run over ``1..N``.
    """
    out = []
    top = N - 1 if left else N
    for n, (qn, qn1, v) in enumerate(approx_qualities(alpha, top)):
        try:
            b = bound(qn1)
        except DomainError:
            continue
        c = bound_cmp(v, b)
        out.append(
            Row(
                n=n + 1 if left else n,
                q=qn1,
                value=v,
                bound=b.expression(),
                ordering=c.order.symbol,
                certified=c.certificate is not None,
                limit_ordering=surd_cmp(v, limit).symbol if limit is not None else "",
            )
        )
    return out


def _indices(rows: Iterable[Row], *orderings: str) -> list[int]:
    return [r.n for r in rows if r.ordering in orderings]


# ---------------------------------------------------------------------------


def check_szekeres(alpha: CFExpansion, N: int) -> VerifyReport:
    """``q_{n+1}||q_n alpha|| > D_0`` for infinitely many n."""
    _need_irrational(alpha)
    D0 = dirichlet_D_k(0)
    rows = []
    for n, (qn, qn1, v) in enumerate(approx_qualities(alpha, N)):
        rows.append(Row(n, qn1, v, str(D0), surd_cmp(v, D0).symbol))
    lo, gap = len(alpha.preperiod), witness_gap(alpha)
    wit = _indices(rows, ">")
    ok = recurs(wit, lo, N, gap)
    details = {"witnesses": wit, "count": len([w for w in wit if w >= lo]), "max_gap": gap}
    verdict = (
        Verdict(CONFIRMED, reason=f"{details['count']} witnesses, gaps <= {gap}")
        if ok
        else Verdict(INCONCLUSIVE, reason="witnesses missing or too sparse")
    )
    return VerifyReport("szekeres", {"alpha": _cf_param(alpha), "N": N}, tuple(rows), verdict, details)


def _parity_class(indices: Sequence[int], lo: int, hi: int) -> Optional[int]:
    """The residue mod 2 when ``indices`` is exactly one parity class of [lo, hi]."""
    idx = sorted(i for i in indices if lo <= i <= hi)
    if not idx:
        return None
    r = idx[0] % 2
    return r if idx == [i for i in range(lo, hi + 1) if i % 2 == r] else None


def check_theorem1_part1(alpha: CFExpansion, N: int) -> VerifyReport:
    """Witnesses of ``lim_{t->q_n^-} t psi(t) >= f0(q_n)`` at bounded gaps."""
    _need_irrational(alpha)
    rows = quality_rows(alpha, N, eval_f0, dirichlet_D_k(0), left=True)
    lo, gap = len(alpha.preperiod) + 1, witness_gap(alpha)
    eq = _indices(rows, "=")
    strict = _indices(rows, ">")
    ok = recurs(eq + strict, lo, N, gap)
    details = {
        "equality_indices": eq,
        "strict_indices": strict,
        "equality_parity": _parity_class(eq, lo, N),
        "max_gap": gap,
    }
    verdict = (
        Verdict(CONFIRMED, reason=f"{len(eq)} equal and {len(strict)} strict witnesses")
        if ok
        else Verdict(INCONCLUSIVE, reason="witnesses missing or too sparse")
    )
    return VerifyReport(
        "theorem1.part1", {"alpha": _cf_param(alpha), "N": N}, tuple(rows), verdict, details
    )


def _ratio_gap(row: Row, bound: BoundValue) -> float:
    ratio = row.value.enclose(160) / bound.enclosure(160)
    return float(abs(ratio.mid - 1))


def check_theorem1_part2(alpha: CFExpansion, N: int) -> VerifyReport:
    """Conditions 2a (eventually below f0) and 2b (ratio to f0 tends to 1)."""
    _need_irrational(alpha)
    rows = quality_rows(alpha, N, eval_f0, dirichlet_D_k(0), left=True)
    lo, gap = len(alpha.preperiod) + 1, witness_gap(alpha)
    n0 = threshold(rows, lambda r: r.ordering != ">")
    half = lo + (N - lo) // 2
    cond_a = n0 is not None and n0 <= half
    eq = _indices(rows, "=")
    exact_b = recurs(eq, lo, N, gap)
    # without certificates, 2b is judged by the best ratio in each window
    best = []
    for start in range(max(lo, N - 4 * gap + 1), N + 1, gap):
        window = [r for r in rows if start <= r.n < start + gap]
        if window:
            best.append(min(_ratio_gap(r, eval_f0(r.q)) for r in window))
    cond_b = exact_b or (len(best) > 1 and best[-1] < 1e-6 and best == sorted(best, reverse=True))
    details = {
        "threshold_2a": n0,
        "condition_2a": cond_a,
        "condition_2b": cond_b,
        "condition_2b_exact": exact_b,
        "equality_indices": eq,
        "equality_parity": _parity_class(eq, lo, N),
        "max_gap": gap,
    }
    params = {"alpha": _cf_param(alpha), "N": N}
    if not cond_a:
        late = [r for r in rows if r.ordering == ">" and r.n > half]
        witness = late[-1] if late else next(r for r in reversed(rows) if r.ordering == ">")
        v = Verdict(REFUTED, witness, "2a fails: value exceeds f0 beyond the threshold window")
    elif not cond_b:
        v = Verdict(INCONCLUSIVE, reason="2b: no equality certificates and ratio not shown to tend to 1")
    else:
        v = Verdict(CONFIRMED, reason=f"2a from n0={n0}; 2b {'exact' if exact_b else 'in the limit'}")
    return VerifyReport("theorem1.part2", params, tuple(rows), v, details)


# ---------------------------------------------------------------------------


def _progression_part(
    statement: str,
    alpha: CFExpansion,
    N: int,
    bound: Callable[[int], BoundValue],
    limit: QuadSurd,
    modulus: int,
    residue: int,
    params: dict,
) -> VerifyReport:
    """Equality exactly on ``n = residue (mod modulus)``, value < limit elsewhere."""
    rows = quality_rows(alpha, N, bound, limit)
    lo = 0
    predicted = [n for n in range(N + 1) if n % modulus == residue % modulus]
    eq = _indices(rows, "=")
    n0 = threshold(rows, lambda r: r.ordering != ">")
    off = [r for r in rows if r.n >= lo and r.n % modulus != residue % modulus]
    above = [r for r in off if r.limit_ordering != "<"]
    missing = sorted(set(predicted) - set(eq))
    extra = sorted(set(e for e in eq if e >= lo) - set(predicted))
    details = {
        "threshold": n0,
        "equality_indices": eq,
        "predicted_residue": residue % modulus,
        "modulus": modulus,
        "predicted_missing": missing,
        "unpredicted_equalities": extra,
    }
    if n0 is None or n0 > lo + (N - lo) // 2:
        w = next(r for r in reversed(rows) if r.ordering == ">")
        v = Verdict(REFUTED, w, "value exceeds the bound beyond the threshold window")
    elif above:
        v = Verdict(REFUTED, above[0], "value not below the spectrum constant off the progression")
    elif missing or extra:
        rows_by_n = {r.n: r for r in rows}
        w = rows_by_n.get((missing or extra)[0])
        v = Verdict(REFUTED, w, f"equalities off prediction: missing {missing}, extra {extra}")
    else:
        v = Verdict(CONFIRMED, reason=f"{len(eq)} certified equalities on n = {residue % modulus} mod {modulus}")
    return VerifyReport(statement, params, tuple(rows), v, details)


def prop1_residue(k: int, reciprocal: bool = False) -> int:
    """Equality class mod 2k: ``2k-3`` for alpha_k, shifted by two for 1/alpha_k."""
    return (2 * k - 1) % (2 * k) if reciprocal else (2 * k - 3) % (2 * k)


def check_prop1(k: int, N: int) -> VerifyReport:
    if k < 1:
        raise DomainError("k must be >= 1")
    Dk = dirichlet_D_k(k)
    parts = []
    for recip in (False, True):
        cf = expand(1 / alpha_k(k)) if recip else alpha_k_cf(k)
        name = "1/alpha_k" if recip else "alpha_k"
        parts.append(
            _progression_part(
                f"prop1.{name}", cf, N, lambda x: eval_gk(k, x), Dk, 2 * k,
                prop1_residue(k, recip), {"k": k, "N": N, "alpha": str(cf)},
            )
        )
    return combine("prop1", {"k": k, "N": N}, parts)


def theorem2_numbers(k: int) -> list[tuple[str, CFExpansion, int]]:
    """``(name, cf, residue mod 2k)`` of the extremal numbers and their equality class."""
    if k % 2:
        return [("beta_k", beta_cf(k, 0), (k - 2) % (2 * k))]
    return [
        ("beta_k^(1)", beta_cf(k, 1), (k - 1) % (2 * k)),
        ("beta_k^(2)", beta_cf(k, 2), (k - 3) % (2 * k)),
    ]


def theorem2_panel(k: int, size: int = 6, seed: int = 0) -> list[CFExpansion]:
    rng = random.Random(seed * 1000 + k)
    period = alpha_k_cf(k).period
    panel = []
    while len(panel) < size:
        pre = [rng.randint(0, 5)] + [rng.randint(1, 4) for _ in range(rng.randint(0, 4))]
        cf = CFExpansion(tuple(pre), period)
        if cf not in panel:
            panel.append(cf)
    return panel


def check_theorem2(k: int, N: int, panel: Optional[Sequence[CFExpansion]] = None) -> VerifyReport:
    if k < 1:
        raise DomainError("k must be >= 1")
    Dk = dirichlet_D_k(k)
    bound = lambda x: eval_fk(k, x)  # noqa: E731
    parts = []
    for name, cf, residue in theorem2_numbers(k):
        parts.append(
            _progression_part(
                f"theorem2.part2.{name}", cf, N, bound, Dk, 2 * k, residue,
                {"k": k, "N": N, "alpha": str(cf)},
            )
        )
    if panel is None:
        panel = theorem2_panel(k)
    for cf in panel:
        rows = quality_rows(cf, N, bound, Dk, left=True)
        lo, gap = len(cf.preperiod) + 1, witness_gap(cf)
        wit = _indices(rows, "=", ">")
        ok = recurs(wit, lo, N, gap)
        v = (
            Verdict(CONFIRMED, reason=f"{len(wit)} witnesses with left limit >= f_k(q_n)")
            if ok
            else Verdict(INCONCLUSIVE, reason="part-1 witnesses missing or too sparse")
        )
        parts.append(
            VerifyReport(
                "theorem2.part1", {"k": k, "N": N, "alpha": str(cf)}, tuple(rows), v,
                {"witnesses": wit, "max_gap": gap},
            )
        )
    return combine("theorem2", {"k": k, "N": N}, parts)


# ---------------------------------------------------------------------------


def _checkpoints(Q: int) -> list[int]:
    pts = []
    c = 10
    while c < Q:
        pts.append(c)
        c *= 10
    pts.append(Q)
    return pts


def prop_a_count(alpha: CFExpansion, m: int, Q: int) -> VerifyReport:
    """Count ``q <= Q`` with ``||q alpha|| < 1/(L_m q)`` and with ``||q alpha|| <= g_m(q)``."""
    _need_irrational(alpha)
    if Q > 10**6:
        raise DomainError("Q is limited to 10^6")
    L = lagrange_L(m).exact
    x = value_of(alpha)
    qualifying = not any(
        equivalent(alpha, lagrange_extremal_cf(j)) for j in range(1, min(m, 4))
    )
    rows = []
    basic = gm = 0
    counts = []
    marks = _checkpoints(Q)
    wrong_way = None
    for q in range(1, Q + 1):
        dist = (x * q).dist_to_int()
        is_basic = surd_cmp(dist, 1 / (L * q)) < 0
        c = bound_cmp(dist, eval_gm(m, q))
        is_gm = c.order <= Ordering.EQUAL
        basic += is_basic
        gm += is_gm
        if is_basic or is_gm:
            row = Row(q, q, dist, f"g_m{m}({q})", c.order.symbol, c.certificate is not None,
                      "<" if is_basic else ">=", "solution")
            rows.append(row)
            if is_gm and not is_basic and wrong_way is None:
                wrong_way = row
        if q == marks[len(counts)]:
            counts.append((q, basic, gm))
    grows = all(b1 < b2 and g1 < g2 for (_, b1, g1), (_, b2, g2) in zip(counts, counts[1:]))
    details = {"qualifying": qualifying, "counts": counts}
    params = {"alpha": str(alpha), "m": m, "Q": Q}
    if wrong_way is not None:
        v = Verdict(REFUTED, wrong_way, "a g_m solution is not a solution of the basic inequality")
    elif qualifying:
        v = (Verdict(CONFIRMED, reason="both counts grow at every checkpoint") if grows
             else Verdict(INCONCLUSIVE, reason="counts did not grow at every checkpoint"))
    else:
        stalled = len(counts) > 1 and counts[-1][1] == counts[-2][1]
        v = (Verdict(CONFIRMED, reason="excluded number: basic count stopped growing") if stalled
             else Verdict(INCONCLUSIVE, reason="excluded number still gaining solutions"))
    return VerifyReport("propA", params, tuple(rows), v, details)


DEFAULT_PROP_B_PANEL = (
    "[1; (1)]",
    "[1; (2, 1)]",
    "[1; (1, 1, 2, 1)]",
    "[1; (1, 1, 1, 1, 2, 1)]",
    "[0; (2, 1)]",
    "[2; (2)]",
    "[2; (2, 1, 1, 2)]",
    "[1; (3, 1)]",
    "[3; 5, (1, 1, 1, 2)]",
    "[0; 4, 1, (1, 1, 2, 2)]",
)


def default_prop_b_panel() -> list[CFExpansion]:
    from ..parsing import parse_cf

    return [parse_cf(s) for s in DEFAULT_PROP_B_PANEL]


def check_prop_b(panel: Optional[Sequence[CFExpansion]], m: int, N: int = 60) -> VerifyReport:
    """``D(alpha) >= D_m`` for alpha not equivalent to alpha_0..alpha_{m-1}; equality iff alpha ~ alpha_m."""
    if panel is None:
        panel = default_prop_b_panel()
    Dm = dirichlet_D_k(m)
    rows = []
    excluded = []
    witness = None
    for i, cf in enumerate(panel):
        if any(equivalent(cf, alpha_k_cf(j)) for j in range(m)):
            excluded.append(str(cf))
            continue
        D = dirichlet_constant(cf)
        order = surd_cmp(D, Dm)
        is_m = equivalent(cf, alpha_k_cf(m))
        # sweep estimate of the limsup from the last period window
        L = len(cf.period)
        tail_max = max(v for _, _, v in approx_qualities(cf, N)[-max(L, 2):])
        row = Row(i, 0, D, str(Dm), order.symbol, False, surd_cmp(tail_max, D).symbol, str(cf))
        rows.append(row)
        bad = order < 0 or (is_m and order != Ordering.EQUAL) or (order == Ordering.EQUAL and not is_m)
        if bad and witness is None:
            witness = row
    details = {"excluded": excluded, "D_m": str(Dm)}
    params = {"m": m, "N": N, "panel": [str(cf) for cf in panel]}
    if witness is not None:
        v = Verdict(REFUTED, witness, "D(alpha) ordering against D_m contradicts the statement")
    elif not rows:
        v = Verdict(INCONCLUSIVE, reason="every panel member was excluded")
    else:
        v = Verdict(CONFIRMED, reason=f"{len(rows)} numbers checked, {len(excluded)} excluded")
    return VerifyReport("propB", params, tuple(rows), v, details)


def gm_below_basic(m: int, xs: Sequence = (1, 2, 10, 10**6)) -> VerifyReport:
    """``g_m(x) < 1/(L_m x)`` at sample points."""
    L = lagrange_L(m).exact
    rows = []
    witness = None
    for x in xs:
        x = Fraction(x)
        g = eval_gm(m, x)
        ref = 1 / (L * x)
        c = bound_cmp(ref, g)
        # ref > g  <=>  g < 1/(L x)
        row = Row(int(x), int(x), ref, g.expression(), c.order.symbol, c.certificate is not None,
                  tag="1/(L_m x) vs g_m(x)")
        rows.append(row)
        if c.order != Ordering.GREATER and witness is None:
            witness = row
    v = (Verdict(REFUTED, witness, "g_m(x) >= 1/(L_m x)") if witness
         else Verdict(CONFIRMED, reason=f"strict at {len(rows)} points"))
    return VerifyReport("theoremA.gm_bound", {"m": m, "x": [str(x) for x in xs]}, tuple(rows), v)


def golden_structure(N: int) -> VerifyReport:
    """For alpha_0: exactly one of ``5q^2 +- 4`` is a square, alternating in n, and
    ``q_{n+1}|q_n alpha_0 - p_n| = (sqrt5+1) q / (sqrt5 q + r)`` with ``r^2 = 5q^2 - 4e``."""
    alpha = alpha_k(0)
    cf = alpha_k_cf(0)
    sqrt5 = QuadSurd.sqrt(5)
    conv = convergents(cf, N + 1)
    rows = []
    witness = None
    prev_eps = None
    for n in range(N + 1):
        p, q, q1 = conv[n].p, conv[n].q, conv[n + 1].q
        value = q1 * abs(q * alpha - p)
        # q = 1 makes both 5q^2 +- 4 squares; keep the sign whose closed form matches
        eps, closed, order = 0, None, Ordering.GREATER
        for e in (1, -1):
            if is_square(5 * q1 * q1 - 4 * e):
                cand = (sqrt5 + 1) * q1 / (sqrt5 * q1 + isqrt(5 * q1 * q1 - 4 * e))
                o = surd_cmp(value, cand)
                if closed is None or o == Ordering.EQUAL:
                    eps, closed, order = e, cand, o
        row = Row(n, q1, value, str(closed), order.symbol, closed is not None,
                  tag=f"5q^2{'-' if eps > 0 else '+'}4 square" if eps else "no square")
        rows.append(row)
        alternates = prev_eps is None or eps == -prev_eps
        if witness is None and (order != Ordering.EQUAL or not eps or not alternates):
            witness = row
        prev_eps = eps
    v = (Verdict(REFUTED, witness, "closed form or square alternation fails") if witness
         else Verdict(CONFIRMED, reason=f"closed form exact and squares alternate for n <= {N}"))
    return VerifyReport("golden_structure", {"N": N}, tuple(rows), v)
