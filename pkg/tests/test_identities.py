"""The verification engine: counts, theorem verifiers, certificates."""

import pytest

from tripart import Partition, builtin, parse_set_expression
from tripart.identities import (
    BranchMismatchError,
    NonPositiveOffsetError,
    NotInjectiveError,
    NotOntoError,
    certify_bijection,
    count_columns,
    count_set,
    odd_divisor_count,
    parse_route,
    verify_cylinder_theorems,
    verify_distinct_theorem,
    verify_equicount,
    verify_euler_chain,
    verify_gauss_theorem,
    verify_odd_theorem,
    verify_offset_theorem,
)

import oracles

P = Partition.from_text


def test_count_set_examples():
    assert count_set(builtin("Delta01"), 11) == 3
    assert count_set(builtin("D"), 11) == 12
    assert count_set(builtin("O"), 1) == 1


def test_counts_match_oracle():
    table = [
        ("D", oracles.is_distinct),
        ("O", oracles.is_all_odd),
        ("E0", oracles.is_e0),
        ("E1", oracles.is_e1),
        ("ED", oracles.is_ed),
        ("F0", oracles.is_f0),
        ("F1", oracles.is_f1),
    ]
    for n in (3, 7, 11, 18):
        for name, fn in table:
            assert count_set(builtin(name), n) == oracles.count_matching(n, fn), name


def test_count_columns_matches_count_set():
    preds = [builtin("D"), builtin("Delta0"), builtin("M1")]
    rows = count_columns(preds, 1, 15)
    for offset, row in enumerate(rows):
        n = offset + 1
        assert row == tuple(count_set(p, n) for p in preds)


def test_equicount_passes():
    report = verify_equicount(builtin("Delta0"), builtin("M0"), 25, ("Delta0", "M0"))
    assert report.passed
    assert report.columns == ("Delta0", "M0")
    report = verify_equicount(builtin("Delta1"), builtin("M1"), 25, ("Delta1", "M1"))
    assert report.passed


def test_equicount_failure_reporting():
    report = verify_equicount(builtin("D"), builtin("M0"), 12, ("D", "M0"))
    assert not report.passed
    check = report.checks[0]
    assert check.first_failure == 1
    assert check.lhs_count == 1
    assert check.rhs_count == 0
    assert P("(1)x[1]") in check.only_lhs
    assert check.only_rhs == ()


def test_offset_theorem():
    for d in (1, 3):
        report = verify_offset_theorem(d, 25)
        assert report.passed, d
    with pytest.raises(NonPositiveOffsetError):
        verify_offset_theorem(0, 10)
    # trivially equal at zero where both sides are empty
    report = verify_offset_theorem(1, 2)
    assert report.passed
    assert report.rows[1][:2] == (0, 0)


def test_cylinder_theorems():
    report = verify_cylinder_theorems(25)
    assert report.passed
    assert len(report.checks) == 8
    idx = {name: i for i, name in enumerate(report.columns)}
    row11 = report.rows[10]
    assert row11[idx["Delta01"]] == 3
    assert row11[idx["T0Delta01"]] == 3
    assert row11[idx["T1T0Delta01"]] == 3


def test_cylinder_theorems_step_slice():
    one = verify_cylinder_theorems(15, steps=1)
    two = verify_cylinder_theorems(15, steps=2)
    assert len(one.checks) == 4
    assert len(two.checks) == 4
    assert one.passed and two.passed


def test_gauss_theorem():
    for d in (1, 2):
        report = verify_gauss_theorem(d, 25)
        assert report.passed, d
        assert len(report.checks) == d + 2
        assert len(report.notes) == d
        assert all("0 applicable members" in note for note in report.notes)
    with pytest.raises(NonPositiveOffsetError):
        verify_gauss_theorem(0, 10)


def test_gauss_small_n_all_zero():
    report = verify_gauss_theorem(1, 3)
    assert report.passed
    assert all(v == 0 for row in report.rows for v in row)


def test_distinct_theorem():
    report = verify_distinct_theorem(30)
    assert report.passed
    assert report.columns == ("D", "E0", "E1", "ED", "corr")
    assert report.rows[10] == (12, 3, 8, 0, 1)    # n = 11
    assert report.rows[2] == (2, 0, 0, 0, 2)      # n = 3
    assert report.rows[0] == (1, 0, 0, 0, 1)      # n = 1


def test_odd_theorem():
    report = verify_odd_theorem(30)
    assert report.passed
    idx = {name: i for i, name in enumerate(report.columns)}
    row11 = report.rows[10]
    assert row11[idx["O"]] == 12
    assert row11[idx["oddDiv"]] == 2
    assert row11[idx["F0"]] + row11[idx["F1"]] == 10
    assert report.rows[0] == (1, 0, 0, 1)         # n = 1
    row9 = report.rows[8]
    assert row9[idx["oddDiv"]] == 3
    assert row9[idx["O"]] == 3 + row9[idx["F0"]] + row9[idx["F1"]]


def test_euler_chain():
    report = verify_euler_chain(30)
    assert report.passed
    assert len(report.checks) == 3
    idx = {name: i for i, name in enumerate(report.columns)}
    row7 = report.rows[6]
    assert row7[idx["D"]] == row7[idx["O"]] == 5


def test_odd_divisor_count():
    assert odd_divisor_count(1) == 1
    assert odd_divisor_count(9) == 3
    assert odd_divisor_count(11) == 2
    assert odd_divisor_count(12) == 2
    assert odd_divisor_count(16) == 1


def test_report_json():
    report = verify_distinct_theorem(5)
    payload = report.to_json()
    assert payload["passed"] is True
    assert payload["columns"][0] == "D"
    assert len(payload["rows"]) == 5


def test_certify_distinct_to_e0():
    cert = certify_bijection(
        parse_set_expression("D and Delta0"), builtin("E0"), (0,), 11,
        names=("D&Delta0", "E0"),
    )
    mapping = {str(src): str(img) for src, _, img in cert.pairs}
    assert mapping == {
        "(7,4)x[1,1]": "(4,3)x[2,1]",
        "(6,5)x[1,1]": "(5,1)x[2,1]",
        "(5,4,2)x[1,1,1]": "(4,2,1)x[2,1,1]",
    }


def test_certify_full_cone():
    cert = certify_bijection(builtin("Delta0"), builtin("M0"), (0,), 20)
    assert len(cert.pairs) == count_set(builtin("Delta0"), 20)
    # certification success implies the counts agree at that n
    report = verify_equicount(builtin("Delta0"), builtin("M0"), 20)
    assert report.rows[19][0] == report.rows[19][1] == len(cert.pairs)


def test_certify_wrong_codomain():
    with pytest.raises(NotOntoError):
        certify_bijection(builtin("Delta0"), builtin("M1"), (0,), 11)


def test_certify_branch_mismatch():
    with pytest.raises(BranchMismatchError):
        certify_bijection(builtin("Delta1"), builtin("M0"), (0,), 11)


def test_certify_not_injective():
    # two diagonal partitions of 9 share parts (3,2,1) and an image
    from tripart.dsl import TRUE

    with pytest.raises(NotInjectiveError):
        certify_bijection(builtin("DeltaD"), TRUE, ("D",), 9)


def test_certify_diagonal_route():
    cert = certify_bijection(
        parse_set_expression("D and DeltaD and dim >= 3"), builtin("ED"), ("D",), 10,
        names=("D&DeltaD&dim>=3", "ED"),
    )
    assert {str(s) for s, _, _ in cert.pairs} == {
        "(5,4,1)x[1,1,1]", "(5,3,2)x[1,1,1]", "(4,3,2,1)x[1,1,1,1]",
    }
    assert {str(i) for _, _, i in cert.pairs} == {
        "(4,1)x[2,2]", "(3,2)x[2,2]", "(3,2,1)x[2,1,2]",
    }


def test_parse_route():
    assert parse_route("01d") == (0, 1, "D")
    assert parse_route("D") == ("D",)
    with pytest.raises(ValueError):
        parse_route("2")
    with pytest.raises(ValueError):
        parse_route("")


CYLINDER_ROUTES = [
    ("Delta00", (0,), "T0Delta00"),
    ("Delta01", (0,), "T0Delta01"),
    ("Delta10", (1,), "T1Delta10"),
    ("Delta11", (1,), "T1Delta11"),
    ("Delta00", (0, 0), "T0T0Delta00"),
    ("Delta01", (0, 1), "T1T0Delta01"),
    ("Delta10", (1, 0), "T0T1Delta10"),
    ("Delta11", (1, 1), "T1T1Delta11"),
]


def test_cylinder_image_sets_are_exact():
    # the one- and two-step image sets are not merely equinumerous with
    # the cylinders: the routes biject onto them, at every size
    for domain, route, codomain in CYLINDER_ROUTES:
        for n in range(2, 41):
            certify_bijection(builtin(domain), builtin(codomain), route, n,
                              names=(domain, codomain))


def test_offset_images_are_exact():
    from tripart.identities import _offset_image0, _offset_image1
    from tripart.sets import delta0_offset, delta1_offset

    for d in (1, 2, 3):
        for n in range(2, 29):
            certify_bijection(delta0_offset(d), _offset_image0(d), (0,), n)
            certify_bijection(delta1_offset(d), _offset_image1(d), (1,), n)


def test_distinct_family_routes():
    # the near-distinct families are exactly the branch images of the
    # distinct partitions in each class
    d = builtin("D")
    for n in range(2, 33):
        certify_bijection(d & builtin("Delta0"), builtin("E0"), (0,), n)
        certify_bijection(d & builtin("Delta1"), builtin("E1"), (1,), n)
        certify_bijection(
            parse_set_expression("D and DeltaD and dim >= 3"),
            builtin("ED"), ("D",), n,
        )


def test_odd_family_routes():
    o = builtin("O")
    for n in range(2, 33):
        certify_bijection(o & builtin("Delta0"), builtin("F0"), (0,), n)
        certify_bijection(o & builtin("Delta1"), builtin("F1"), (1,), n)
        # no diagonal branch exists here: an all-odd partition cannot
        # satisfy L1 = L2 + Llast
        assert count_set(o & builtin("DeltaD"), n) == 0
