"""Predicate language: parsing, semantics, compilation, round trips."""

import pytest
from hypothesis import given, settings

from tripart import Partition, builtin, parse_predicate
from tripart.dsl import (
    DslSyntaxError,
    FALSE,
    TRUE,
    UnknownSymbolError,
    parse_predicate as parse,
)
from tripart.enumeration import iter_partitions

from strategies import partitions

P = Partition.from_text


def _agree_everywhere(a, b, n_max=12):
    for n in range(1, n_max + 1):
        for p in iter_partitions(n):
            if a(p) != b(p):
                return False
    return True


def test_parse_below_diagonal_form():
    assert _agree_everywhere(parse("L1 < L2 + Llast"), builtin("Delta0"))


def test_parse_multiplicity_form():
    assert _agree_everywhere(parse("K1 > Klast"), builtin("M0"))


def test_parse_quantified_odd():
    assert _agree_everywhere(parse("forall i: odd(L[i])"), builtin("O"))


def test_syntax_error_with_position():
    with pytest.raises(DslSyntaxError) as err:
        parse("L1 <")
    assert err.value.position == 4
    with pytest.raises(DslSyntaxError):
        parse("L1 < L2 and")
    with pytest.raises(DslSyntaxError):
        parse("(L1 < L2")
    with pytest.raises(DslSyntaxError):
        parse("L1 < L2) or true")
    with pytest.raises(DslSyntaxError):
        parse("")


def test_unknown_symbols():
    with pytest.raises(UnknownSymbolError):
        parse("Zeta > 1")
    with pytest.raises(UnknownSymbolError):
        parse("L[i] = 1")  # unbound index variable
    with pytest.raises(UnknownSymbolError):
        parse("Lmiddle = 1")
    with pytest.raises(UnknownSymbolError):
        parse("K = 1")


def test_nested_quantifier_rejected():
    with pytest.raises(DslSyntaxError):
        parse("forall i: exists j: K[i] = K[j]")


def test_out_of_range_atom_is_false():
    pred = parse("L3 > 0")
    two = P("(2,1)x[1,1]")
    assert not pred(two)
    assert parse("not L3 > 0")(two)  # negation of a false atom
    three = P("(3,2,1)x[1,1,1]")
    assert pred(three)


def test_secondlast_on_dimension_one():
    pred = parse("Ksecondlast = 1")
    assert not pred(P("(5)x[1]"))
    assert pred(P("(5,2)x[1,3]"))


def test_dim_comparisons():
    pred = parse("dim >= 3")
    assert pred(P("(3,2,1)x[1,1,1]"))
    assert not pred(P("(3,2)x[1,1]"))


def test_index_guards_in_quantifier():
    pred = parse("forall i: i = 1 or K[i] = 1")
    assert pred(P("(4,3)x[2,1]"))
    assert pred(P("(4,3)x[1,1]"))
    assert not pred(P("(4,3)x[1,2]"))
    pred = parse("exists i: K[i] >= 3")
    assert pred(P("(4,1)x[1,3]"))
    assert not pred(P("(4,1)x[2,2]"))
    pred = parse("forall i: i = dim or odd(L[i])")
    assert pred(P("(3,2)x[1,1]"))
    assert not pred(P("(4,3)x[1,1]"))


def test_literals_and_operators():
    assert TRUE(P("(1)x[1]"))
    assert not FALSE(P("(1)x[1]"))
    assert parse("true")(P("(1)x[1]"))
    combined = parse("K1 = 1") & parse("L1 = 3")
    assert combined(P("(3)x[1]"))
    assert not combined(P("(3)x[2]"))
    either = parse("L1 = 9") | parse("dim = 1")
    assert either(P("(4)x[2]"))
    assert not (~parse("dim = 1"))(P("(4)x[2]"))


def test_multiplication_forms():
    a = parse("2*L2 > L1")
    b = parse("2 L2 > L1")
    c = parse("2L2 > L1")
    p, q = P("(3,2)x[1,1]"), P("(5,2)x[1,1]")
    for pred in (a, b, c):
        assert pred(p) and not pred(q)
    assert a.root == b.root == c.root


def test_first_alias_and_negative_terms():
    assert parse("Lfirst = 5")(P("(5,2)x[1,1]"))
    pred = parse("L1 - L2 - 2*Llast < 0")
    assert pred(P("(4,3)x[1,1]"))
    assert not pred(P("(9,2)x[1,1]"))
    assert parse("-L1 + 6 > 0")(P("(5)x[1]"))
    assert parse("0 - 2 < L1")(P("(1)x[1]"))


def test_format_parse_round_trip():
    samples = [
        "L1 < L2 + Llast",
        "K1 > Klast",
        "forall i: odd(L[i])",
        "not (L1 = 2 or odd(K2)) and dim >= 3",
        "-2*L1 + 3 < K2 - 1",
        "exists i: even(K[i])",
        "(dim = 2 and 2*L2 > L1) or (dim >= 3 and L2 + Llast > L1)",
        "K1 = 2 and (forall i: i = 1 or K[i] = 1)",
        "true or not false",
        "L1 - L2 - 3*Llast > 0 and L1 - L2 - 4*Llast < 0",
    ]
    for text in samples:
        once = parse(text)
        again = parse(once.source())
        assert once.root == again.root, text
        assert again.source() == once.source()


def test_registry_sources_round_trip():
    from tripart import sets

    for name in sets.names():
        pred = builtin(name)
        assert parse(pred.source()).root == pred.root


def test_compiled_matches_reference_on_registry():
    from tripart import sets
    from tripart.sets import cylinder

    preds = [builtin(name) for name in sets.names()]
    preds += [builtin("GaussG(1)"), builtin("Delta0Off(2)"), builtin("Delta1Off(1)")]
    preds += [cylinder((0,)), cylinder((1, 1)), cylinder((0, 1, 1))]
    for n in range(1, 13):
        for p in iter_partitions(n):
            for pred in preds:
                assert pred(p) == pred.member(p), (str(p), pred.source())


@given(partitions(max_part=15, max_len=6))
@settings(max_examples=200)
def test_compiled_matches_reference_random(p):
    battery = [
        parse("L1 < L2 + Llast"),
        parse("2*L2 > L1 + L3"),
        parse("forall i: i = 1 or K[i] = 1"),
        parse("exists i: even(L[i])"),
        parse("not Ksecondlast >= 2"),
        parse("dim = 2 or K1 - Klast > 1"),
    ]
    for pred in battery:
        assert pred(p) == pred.member(p), pred.source()
