import mpmath
import pytest

from cfspectra.cf_engine import CFExpansion, approx_qualities, value_of
from cfspectra.errors import BudgetExceededError, DomainError
from cfspectra.parsing import parse_cf
from cfspectra.spectra import alpha_k_cf, beta_cf, gamma_cf
from cfspectra.verify import (
    CONFIRMED,
    INCONCLUSIVE,
    REFUTED,
    Row,
    Verdict,
    VerifyReport,
    check_prop1,
    check_prop_b,
    check_szekeres,
    check_theorem1_part1,
    check_theorem1_part2,
    check_theorem2,
    combine,
    gm_below_basic,
    golden_structure,
    lemma5_check,
    lemma_instance,
    lemma_oracle,
    lemma_panel,
    prop_a_count,
)
from cfspectra.verify.lemmas import LemmaInstance, w_limit, w_value
from cfspectra.verify.theorems import recurs, threshold

import oracles

GOLDEN = parse_cf("[1; (1)]")


def _orderings(report):
    return [(s, r.n, r.ordering) for s, r in report.iter_rows()]


class TestHelpers:
    def test_recurs(self):
        assert recurs([1, 3, 5], 0, 6, 2)
        assert not recurs([1, 5], 0, 6, 2)
        assert not recurs([], 0, 6, 2)

    def test_threshold(self):
        rows = [Row(n, 1, value_of(GOLDEN), "", o) for n, o in enumerate(">><<=<")]
        assert threshold(rows, lambda r: r.ordering != ">") == 2

    def test_refutation_needs_witness(self):
        with pytest.raises(ValueError):
            Verdict(REFUTED)
        with pytest.raises(ValueError):
            Verdict("maybe")

    def test_combine(self):
        ok = VerifyReport("a", {}, (), Verdict(CONFIRMED))
        meh = VerifyReport("b", {}, (), Verdict(INCONCLUSIVE, reason="x"))
        assert combine("c", {}, [ok, ok]).confirmed
        assert combine("c", {}, [ok, meh]).verdict.status == INCONCLUSIVE


class TestSzekeres:
    def test_golden_every_other(self):
        r = check_szekeres(GOLDEN, 50)
        assert r.confirmed
        assert r.details["witnesses"] == list(range(1, 51, 2))

    def test_alpha1(self):
        r = check_szekeres(alpha_k_cf(1), 50)
        assert r.confirmed and r.details["count"] >= 50 // 2

    def test_rational(self):
        with pytest.raises(DomainError):
            check_szekeres(CFExpansion((1, 2)), 10)

    def test_rows_match_float_oracle(self):
        r = check_szekeres(parse_cf("[0; 4, 1, (1, 1, 2, 2)]"), 30)
        x = value_of(parse_cf("[0; 4, 1, (1, 1, 2, 2)]"))
        xm = oracles.surd(x.a, x.b, x.c, x.d, 80)
        qs = oracles.convergent_qs(oracles.cf_terms(xm, 33, 80))
        with mpmath.workdps(80):
            d0 = (5 + mpmath.sqrt(5)) / 10
            for row in r.rows:
                v = qs[row.n + 1] * oracles.dist_to_int(qs[row.n] * xm)
                assert (row.ordering == ">") == (v > d0)


class TestTheorem1:
    def test_part1_golden_equality_on_one_parity(self):
        r = check_theorem1_part1(GOLDEN, 60)
        assert r.confirmed
        assert r.details["equality_indices"] == list(range(2, 61, 2))
        assert r.details["strict_indices"] == []
        assert all(row.certified for row in r.rows if row.ordering == "=")

    def test_part1_preperiod_two(self):
        r = check_theorem1_part1(parse_cf("[0; 2, (1)]"), 60)
        assert r.confirmed and r.details["equality_parity"] == 1

    def test_part1_strict_for_silver(self):
        r = check_theorem1_part1(parse_cf("[(2)]"), 60)
        assert r.confirmed
        assert r.details["equality_indices"] == [] and len(r.details["strict_indices"]) == 60

    @pytest.mark.parametrize("alpha", ["[1; (1)]", "[0; 2, (1)]", "[3; 2, (1)]"])
    def test_part2_family_holds(self, alpha):
        r = check_theorem1_part2(parse_cf(alpha), 60)
        assert r.confirmed
        assert r.details["condition_2a"] and r.details["condition_2b_exact"]
        assert r.details["equality_parity"] is not None

    def test_part2_fails_off_family(self):
        r = check_theorem1_part2(parse_cf("[2; 3, (1)]"), 60)
        assert r.verdict.status == REFUTED
        w = r.verdict.witness
        assert w is not None and w.ordering == ">"


class TestProp1:
    def test_k1(self):
        r = check_prop1(1, 60)
        assert r.confirmed
        assert r.parts[0].details["equality_indices"] == list(range(1, 61, 2))

    def test_k2_and_reciprocal_shift(self):
        r = check_prop1(2, 100)
        assert r.confirmed
        a, inv = r.parts
        assert a.details["equality_indices"] == list(range(1, 101, 4))
        assert inv.details["equality_indices"] == list(range(3, 101, 4))

    def test_off_class_below_dk(self):
        r = check_prop1(3, 60)
        for part in r.parts:
            mod, res = part.details["modulus"], part.details["predicted_residue"]
            for row in part.rows:
                if row.n % mod != res:
                    assert row.limit_ordering == "<"

    def test_domain(self):
        with pytest.raises(DomainError):
            check_prop1(0, 10)


class TestTheorem2:
    def test_k1(self):
        r = check_theorem2(1, 60, panel=[])
        assert r.confirmed
        assert r.parts[0].details["equality_indices"] == list(range(1, 61, 2))

    def test_k2_progressions(self):
        r = check_theorem2(2, 80, panel=[])
        assert r.confirmed
        one, two = r.parts
        # n = (2m+1)k - 1 and (2m+1)k - 3 with k = 2
        assert one.details["equality_indices"] == [n for n in range(81) if n % 4 == 1]
        assert two.details["equality_indices"] == [n for n in range(81) if n % 4 == 3]
        assert one.details["predicted_missing"] == one.details["unpredicted_equalities"] == []

    def test_part1_panel_member(self):
        r = check_theorem2(1, 60, panel=[parse_cf("[5; 3, (2, 1)]")])
        assert r.confirmed
        p1 = r.parts[-1]
        assert p1.statement == "theorem2.part1" and p1.details["witnesses"]
        assert any(row.ordering == ">" for row in p1.rows)

    def test_wrong_number_refuted(self):
        # the golden ratio sits far above D_1 along f_1
        r = check_theorem2(1, 40, panel=[])
        assert r.confirmed
        from cfspectra.bounds import eval_fk
        from cfspectra.spectra import dirichlet_D_k
        from cfspectra.verify.theorems import _progression_part
        bad = _progression_part("x", GOLDEN, 40, lambda q: eval_fk(1, q), dirichlet_D_k(1), 2, 1, {})
        assert bad.verdict.status == REFUTED and bad.verdict.witness is not None


class TestLemmas:
    def test_lemma1_golden(self):
        r = lemma_oracle(1, lemma_instance(1, GOLDEN, 4))
        assert r.confirmed and r.details["minimiser"] == [1, 1, 1, 1, 1]
        assert r.details["searched"] == 3 * 3**4

    def test_lemma2_golden(self):
        r = lemma_oracle(2, lemma_instance(2, GOLDEN, 3))
        assert r.confirmed and r.details["minimiser"] == [1, 1, 1, 2]

    def test_lemma3_gamma(self):
        r = lemma_oracle(3, lemma_instance(3, gamma_cf(1), 3))
        assert r.confirmed and r.details["minimiser"] == [2, 1, 2, 1]

    def test_lemma4(self):
        r = lemma_oracle(4, lemma_instance(4, alpha_k_cf(1), 4))
        assert r.confirmed and r.details["minimiser"] == [1, 2, 1, 2, 2]

    def test_wrong_parity_or_side(self):
        with pytest.raises(DomainError):
            lemma_oracle(1, lemma_instance(1, GOLDEN, 3))
        with pytest.raises(DomainError):
            lemma_oracle(1, LemmaInstance(GOLDEN, 4, 3, "above"))
        with pytest.raises(DomainError):
            lemma_oracle(5, lemma_instance(1, GOLDEN, 4))

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as err:
            lemma_oracle(1, lemma_instance(1, GOLDEN, 20))
        assert err.value.required == 3 * 3**20

    def test_instance_validation(self):
        with pytest.raises(ValueError):
            LemmaInstance(GOLDEN, 2, 0)
        with pytest.raises(ValueError):
            LemmaInstance(GOLDEN, 2, 3, "sideways")

    def test_tie_is_refutation(self, monkeypatch):
        # distinct tuples of one length never share a value, so inject a duplicate
        import cfspectra.verify.lemmas as lm

        real = lm._enumerate

        def doubled(a0, depth, bound):
            for terms, b in real(a0, depth, bound):
                yield terms, b
                if terms == (1, 1, 1):
                    yield (1, 1, 1, 0), b

        monkeypatch.setattr(lm, "_enumerate", doubled)
        r = lemma_oracle(1, lemma_instance(1, GOLDEN, 2))
        assert r.verdict.status == REFUTED
        assert r.details["ties"] == [[1, 1, 1, 0]]
        assert r.verdict.witness is not None

    def test_panel(self):
        targets = [alpha_k_cf(0), alpha_k_cf(1), gamma_cf(1), beta_cf(1, 0)]
        reports = lemma_panel(targets)
        assert len(reports) == 56
        assert all(r.confirmed for r in reports)
        for r in reports:
            row = r.rows[0]
            assert row.ordering == "="


class TestLemma5:
    def test_k1(self):
        r = lemma5_check(1, range(10, 11))
        assert r.details["table"] == [{"m": 10, "odd_argmax": [1], "even_argmax": [2]}]

    def test_k2_reports_which(self):
        r = lemma5_check(2, range(10, 11))
        assert r.details["table"][0]["odd_argmax"] in ([1], [3], [1, 3])
        assert r.details["limit_odd_argmax"] == [1, 3]

    def test_k3_stable(self):
        r = lemma5_check(3, range(5, 21))
        assert r.confirmed
        assert all(row["odd_argmax"] == [3] for row in r.details["table"])

    @pytest.mark.parametrize("k", range(1, 6))
    def test_case_split(self, k):
        r = lemma5_check(k, range(3, 21))
        assert r.confirmed and r.details["threshold_m"] is not None
        assert r.details["limit_even_argmax"] == [2 * k]

    def test_w_against_mpmath(self):
        with mpmath.workdps(60):
            for k, m, s in [(1, 3, 1), (2, 4, 3), (3, 2, 6)]:
                w = w_value(k, m, s)
                ones = [1] * (2 * k - 1)
                if s == 2 * k:
                    a = oracles.cf_value([0] + (ones + [2]) * (m + 1), [], 0, 60)
                    b = oracles.cf_value([], [2] + ones, 400, 60)
                else:
                    a = oracles.cf_value([0] + [1] * (s - 1) + [2] + (ones + [2]) * m, [], 0, 60)
                    b = oracles.cf_value([1] + [1] * (2 * k - s - 1), [2] + ones, 400, 60)
                assert mpmath.almosteq(oracles.surd(w.a, w.b, w.c, w.d, 60), a + b, rel_eps=1e-40)

    def test_limit_is_limit(self):
        for s in (1, 2, 3, 4):
            diff = abs(float(w_value(2, 30, s)) - 1 - float(w_limit(2, s)))
            assert diff < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            lemma5_check(6, range(3, 5))
        with pytest.raises(DomainError):
            w_value(2, 3, 5)


class TestTheoremA:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_gm_below_basic(self, m):
        assert gm_below_basic(m).confirmed

    def test_prop_a_silver(self):
        r = prop_a_count(parse_cf("[(2)]"), 1, 1000)
        assert r.confirmed
        counts = r.details["counts"]
        assert [c[0] for c in counts] == [10, 100, 1000]
        for q, basic, gm in counts:
            assert 0 < gm <= basic

    def test_prop_a_brute(self):
        from fractions import Fraction
        x = value_of(parse_cf("[(2)]"))
        r = prop_a_count(parse_cf("[(2)]"), 1, 100)
        xm = oracles.surd(x.a, x.b, x.c, x.d, 50)
        with mpmath.workdps(50):
            want = sum(1 for q in range(1, 101) if oracles.dist_to_int(q * xm) < 1 / (mpmath.sqrt(5) * q))
        assert r.details["counts"][-1][1] == want

    def test_prop_a_excluded(self):
        r = prop_a_count(GOLDEN, 2, 10**3)
        assert not r.details["qualifying"]
        assert r.details["counts"][-1][1] <= 1

    def test_q_limit(self):
        with pytest.raises(DomainError):
            prop_a_count(GOLDEN, 1, 10**6 + 1)


class TestPropB:
    def test_equality_at_alpha1(self):
        r = check_prop_b([alpha_k_cf(1)], 1)
        assert r.confirmed and r.rows[0].ordering == "="

    def test_alpha2_strict(self):
        r = check_prop_b([parse_cf("[(1, 1, 1, 2)]")], 1)
        assert r.confirmed and r.rows[0].ordering == ">"

    def test_filter(self):
        r = check_prop_b([GOLDEN, alpha_k_cf(1)], 1)
        assert r.details["excluded"] == ["[1; (1)]"]
        assert check_prop_b([GOLDEN], 1).verdict.status == INCONCLUSIVE

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_default_panel(self, m):
        r = check_prop_b(None, m)
        assert r.verdict.status == CONFIRMED

    def test_sweep_estimate_close(self):
        # late qualities may sit on either side of the limsup, but close to it
        r = check_prop_b(None, 1)
        for row in r.rows:
            late = max(v for _, _, v in approx_qualities(parse_cf(row.tag), 60)[-8:])
            assert abs(float(late) - float(row.value)) < 1e-6


class TestGolden:
    def test_structure(self):
        r = golden_structure(80)
        assert r.confirmed and len(r.rows) == 81
        assert all(row.ordering == "=" for row in r.rows)


class TestSerialisation:
    @pytest.mark.parametrize(
        "make",
        [
            lambda: check_theorem1_part2(parse_cf("[2; 3, (1)]"), 30),
            lambda: check_prop1(2, 30),
            lambda: lemma5_check(2, range(3, 6)),
            lambda: lemma_oracle(2, lemma_instance(2, GOLDEN, 3)),
        ],
    )
    def test_json_roundtrip_and_determinism(self, make):
        a, b = make(), make()
        assert VerifyReport.from_json(a.to_json()) == a
        assert a.to_json() == b.to_json()
        assert _orderings(a) == _orderings(b)

    def test_jsonl_field_order(self):
        text = check_szekeres(GOLDEN, 3).to_jsonl()
        lines = text.splitlines()
        assert len(lines) == 4
        assert lines[0].startswith('{"statement": "szekeres", "n": 0, "q": 1,')
