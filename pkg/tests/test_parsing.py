import pytest

from cfspectra.cf_engine import CFExpansion
from cfspectra.errors import DivisionByZeroError, ParseError, UnsupportedFieldError
from cfspectra.exact_core import QuadSurd
from cfspectra.parsing import parse_cf, parse_surd


@pytest.mark.parametrize(
    "text, want",
    [
        ("(1+sqrt(5))/2", QuadSurd(1, 1, 2, 5)),
        ("355/113", QuadSurd(355, 0, 113, 1)),
        ("-3", QuadSurd(-3, 0, 1, 1)),
        ("sqrt(20)", QuadSurd(0, 2, 1, 5)),
        ("sqrt(6+2*sqrt(5))", QuadSurd(1, 1, 1, 5)),
        ("2*(1 - sqrt(3)) / -4", QuadSurd(-1, 1, 2, 3)),
        ("sqrt(9/4)", QuadSurd(3, 0, 2, 1)),
        ("1/(1+sqrt(2))", QuadSurd(-1, 1, 1, 2)),
    ],
)
def test_parse_surd(text, want):
    assert parse_surd(text) == want


@pytest.mark.parametrize(
    "text, offset",
    [("(1+", 3), ("1 2", 2), ("sqrt 5", 5), ("1+*2", 2), ("", 0), ("2 $ 3", 2)],
)
def test_surd_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as err:
        parse_surd(text)
    assert err.value.offset == offset
    assert f"at byte {offset}" in str(err.value)


def test_offset_counts_bytes():
    with pytest.raises(ParseError) as err:
        parse_surd("é + 1")
    assert err.value.offset == 0
    with pytest.raises(ParseError) as err:
        parse_surd("1 + é")
    assert err.value.offset == 4


def test_negative_sqrt():
    with pytest.raises(UnsupportedFieldError):
        parse_surd("(1+sqrt(-3))/2")


def test_zero_division():
    with pytest.raises(DivisionByZeroError):
        parse_surd("1/(sqrt(4)-2)")


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        parse_surd("sqrt(2)+sqrt(3)")


@pytest.mark.parametrize(
    "text, pre, period",
    [
        ("[1; (1)]", (1,), (1,)),
        ("[(1)]", (1,), (1,)),
        ("[(1_1, 2)]", (1,), (2, 1)),
        ("[0; 1_2, (2, 1_5)]", (0,), (1, 1, 2, 1, 1, 1)),
        ("[3; 7, 15, 1, 292]", (3, 7, 15, 1, 292), ()),
        ("[3; 7, 15, 1]", (3, 7, 16), ()),
        ("[-2; 1, (3)]", (-2, 1), (3,)),
        ("[5]", (5,), ()),
        ("[0; 2, (1)]", (0, 2), (1,)),
    ],
)
def test_parse_cf(text, pre, period):
    cf = parse_cf(text)
    assert cf == CFExpansion(pre, period)
    assert (cf.preperiod, cf.period) == (pre, period)


@pytest.mark.parametrize("text", ["[1; (1)", "[1;;2]", "[1; 0]", "[1; 2_3]", "(1)", "[1; (1)] x", "[]"])
def test_cf_errors(text):
    with pytest.raises(ParseError):
        parse_cf(text)


def test_cf_literal_roundtrips_through_str():
    for text in ["[1; (1)]", "[0; 1, 1, (2, 1, 1, 1)]", "[3; 7, 16]", "[2; 3, (1)]"]:
        cf = parse_cf(text)
        assert parse_cf(str(cf)) == cf
