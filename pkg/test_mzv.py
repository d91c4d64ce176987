import itertools
import json
import logging
import math
import random
from fractions import Fraction

import pytest

import mzv
from error_handler import ArgumentError, InadmissibleIndex, IndexSyntaxError, ToleranceTooTight
from models import MzvValue
from mzv import (
    Identity,
    MZVIndex,
    mzv_bruteforce,
    mzv_truncated,
    mzv_truncated_exact,
    parse_index,
    tail_estimate,
    tail_sanity,
    verify_identity,
)

ZETA3 = 1.2020569031595942
ZETA31 = math.pi**4 / 360


def admissible_indices(max_depth=3, max_weight=6):
    """Every admissible index up to the given depth and weight, alternating slots included."""
    for depth in range(1, max_depth + 1):
        for exponents in itertools.product(range(1, max_weight + 1), repeat=depth):
            if sum(exponents) > max_weight:
                continue
            for flags in itertools.product([False, True], repeat=depth):
                if exponents[0] == 1 and not flags[0]:
                    continue
                yield MZVIndex(tuple(zip(exponents, flags)))


def test_zeta3_truncated_exactly():
    """H_10^(3) = 19164113947/16003008000"""
    assert mzv_truncated_exact(MZVIndex.of(3), 10) == Fraction(19164113947, 16003008000)
    assert mzv_truncated(MZVIndex.of(3), 10).value == pytest.approx(19164113947 / 16003008000, rel=1e-15)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2,1", ((2, False), (1, False))),
        ("3", ((3, False),)),
        ("2~,1", ((2, True), (1, False))),
        (" 1~ , 1 ", ((1, True), (1, False))),
        ("{2,1}^2", ((2, False), (1, False), (2, False), (1, False))),
        ("{2~,1}^2,3", ((2, True), (1, False), (2, True), (1, False), (3, False))),
    ],
)
def test_parse_index(text, expected):
    """Slots, alternating marks and repetition groups"""
    assert parse_index(text).entries == expected


def test_parse_nested_groups():
    """Groups nest and expand from the inside out"""
    idx = parse_index("{{2,1}^2,3}^2")
    assert idx.depth == 10
    assert idx.weight == 18
    assert idx == MZVIndex.of(2, 1, 2, 1, 3).repeat(2)


@pytest.mark.parametrize("text", ["", "2,", ",2", "2,,1", "{2,1", "2,1}^2", "2 3", "a", "{2}^", "{}^2", "}"])
def test_parse_index_syntax_errors(text):
    """Malformed index strings raise IndexSyntaxError"""
    with pytest.raises(IndexSyntaxError):
        parse_index(text)


@pytest.mark.parametrize("text", ["1,2", "1", "{1,2}^2", "0,3"])
def test_inadmissible_indices(text):
    """A plain exponent-1 first slot (or a zero exponent) diverges"""
    with pytest.raises(InadmissibleIndex):
        parse_index(text)


def test_index_text_form():
    """str() writes the same grammar back"""
    assert str(parse_index("{2~,1}^2")) == "2~,1,2~,1"
    assert str(MZVIndex.of(3, 1)) == "3,1"


def test_sweep_matches_bruteforce():
    """The prefix-sum sweep equals direct chain enumeration for every index of depth <= 4, weight <= 8"""
    for idx in admissible_indices(max_depth=4, max_weight=8):
        assert mzv_truncated_exact(idx, 10) == mzv_bruteforce(idx, 10), str(idx)


@pytest.mark.parametrize("max_depth, N", [(2, 20), (2, 40), (2, 60), (3, 20)])
def test_sweep_matches_bruteforce_at_larger_n(max_depth, N):
    """Every index of weight <= 8 up to the given depth"""
    for idx in admissible_indices(max_depth=max_depth, max_weight=8):
        assert mzv_truncated_exact(idx, N) == mzv_bruteforce(idx, N), str(idx)


@pytest.mark.parametrize("depth, N", [(3, 60), (4, 30)])
def test_sweep_matches_bruteforce_sampled_deep_indices(depth, N):
    """A seeded sample of the deeper indices, where enumeration is expensive"""
    pool = [idx for idx in admissible_indices(max_depth=depth, max_weight=8) if idx.depth == depth]
    for idx in random.Random(20240611).sample(pool, 10):
        assert mzv_truncated_exact(idx, N) == mzv_bruteforce(idx, N), str(idx)


@pytest.mark.parametrize(
    "text, N",
    [("2,1", 60), ("2~,1", 60), ("3,1,1", 60), ("1~,2~,1", 60), ("{2,1}^2", 30), ("2~,1,1~,4", 30)],
)
def test_sweep_matches_bruteforce_longer(text, N):
    """Selected indices at larger truncations"""
    idx = parse_index(text)
    assert mzv_truncated_exact(idx, N) == mzv_bruteforce(idx, N)


def test_float_sweep_tracks_exact():
    """The numpy sweep agrees with the exact one"""
    for idx in admissible_indices(max_depth=3, max_weight=5):
        exact = float(mzv_truncated_exact(idx, 60))
        assert mzv_truncated(idx, 60).value == pytest.approx(exact, rel=1e-12, abs=1e-14), str(idx)


def test_chunk_size_does_not_matter(mocker):
    """Carries between chunks reproduce the single-chunk sum"""
    idx = MZVIndex.of(2, 1, 2, 1)
    whole = mzv_truncated(idx, 5000).value
    assert mzv_truncated(idx, 5000, chunk=7).value == pytest.approx(whole, rel=1e-13)
    mocker.patch("config.MZV_CHUNK", 64)
    assert mzv_truncated(idx, 5000).value == pytest.approx(whole, rel=1e-13)


def test_truncation_below_depth():
    """N must cover the depth"""
    with pytest.raises(ArgumentError):
        mzv_truncated(MZVIndex.of(2, 1, 1), 2)


def test_tail_estimate_bounds_the_error():
    """The heuristic tail covers the distance to zeta(3) = zeta(2,1)"""
    for N in (100, 1000, 10000):
        value = mzv_truncated(MZVIndex.of(2, 1), N)
        assert abs(value.value - ZETA3) <= value.tail_estimate
        assert value.N == N
        assert value.index == "2,1"


def test_tail_estimate_decreases():
    """Larger truncations give smaller tails; an alternating slot converges faster"""
    idx = MZVIndex.of(2, 1)
    tails = [tail_estimate(idx, N) for N in (10, 100, 1000, 10**6)]
    assert tails == sorted(tails, reverse=True)
    assert tail_estimate(parse_index("2~,1"), 1000) < tail_estimate(idx, 1000)


@pytest.mark.parametrize("identity", list(Identity))
@pytest.mark.parametrize("l", [1, 2])
def test_identities_hold_at_defaults(identity, l):
    """Each identity passes at l = 1, 2 with the default truncation and tolerance"""
    report = verify_identity(identity, l)
    assert report.passed
    assert report.difference <= report.tolerance
    assert report.tail_estimate <= report.tolerance


def test_id1a_reference():
    """zeta(3,1) = pi^4/360"""
    report = verify_identity(Identity.ID1A, 1)
    assert report.reference == pytest.approx(ZETA31, rel=1e-15)
    assert report.value == pytest.approx(0.2705808084277845, abs=1e-9)


def test_lemma2_depth_two():
    """[t^6] of sum B_n approaches e_2 = zeta(3,3)"""
    report = verify_identity(Identity.LEMMA2, 2)
    assert report.passed
    assert report.reference == pytest.approx((ZETA3**2 - math.pi**6 / 945) / 2, abs=1e-5)


def test_tolerance_too_tight_before_summing(mocker):
    """An unreachable tolerance is refused before any summation"""
    spy = mocker.spy(mzv, "mzv_truncated")
    with pytest.raises(ToleranceTooTight) as info:
        verify_identity(Identity.ID1, 1, N=100, tol=1e-6)
    assert info.value.tail_estimate > 1e-6
    spy.assert_not_called()


def test_lemma2_tolerance_and_arguments():
    """The product tail drives the lemma2 refusal; J must cover l"""
    with pytest.raises(ToleranceTooTight):
        verify_identity(Identity.LEMMA2, 1, J=10, tol=1e-6)
    with pytest.raises(ArgumentError):
        verify_identity(Identity.LEMMA2, 3, J=2)
    with pytest.raises(ArgumentError):
        verify_identity(Identity.ID1, 0)


def test_failed_comparison_is_reported(mocker):
    """A wrong reference produces pass = false rather than an error"""
    mocker.patch("mzv._reference_id1a", return_value=0.3)
    report = verify_identity(Identity.ID1A, 1)
    assert not report.passed
    assert report.model_dump(by_alias=True)["pass"] is False


def test_positive_truncations_are_non_decreasing():
    """All-positive MZV truncations never decrease in N"""
    for idx in admissible_indices(max_depth=3, max_weight=6):
        if any(alternating for _, alternating in idx.entries):
            continue
        exact = [mzv_truncated_exact(idx, N) for N in range(idx.depth, 41)]
        assert exact == sorted(exact), str(idx)
        swept = [mzv_truncated(idx, N).value for N in (50, 500, 5000, 50000)]
        assert swept == sorted(swept), str(idx)


def test_tail_estimate_covers_later_truncations():
    """|trunc(N') - trunc(N)| stays under tail_estimate(N) across indices"""
    for idx in admissible_indices(max_depth=3, max_weight=6):
        assert tail_sanity(idx, 100, 400), str(idx)
        assert tail_sanity(idx, 1000, 10000), str(idx)


def test_tail_sanity_violation_is_logged(mocker, caplog):
    """An underestimated tail is a warning, not an error"""
    mocker.patch("mzv.tail_estimate", return_value=1e-12)
    with caplog.at_level(logging.WARNING, logger="mzv"):
        assert not tail_sanity(MZVIndex.of(2, 1), 100, 200)
    assert "beyond the tail estimate" in caplog.text
    with pytest.raises(ArgumentError):
        tail_sanity(MZVIndex.of(2, 1), 100, 100)


def test_float_sweep_drift_at_large_n():
    """Summation error of the chunked sweep stays near machine precision"""
    idx = MZVIndex.of(2, 1)
    exact = float(mzv_truncated_exact(idx, 3000))
    assert mzv_truncated(idx, 3000).value == pytest.approx(exact, rel=1e-13)
    assert mzv_truncated(idx, 3000, chunk=100).value == pytest.approx(exact, rel=1e-13)


@pytest.mark.parametrize("kwargs", [{"N": 0}, {"J": 0}])
def test_zero_truncations_are_not_replaced_by_defaults(kwargs):
    """N = 0 or J = 0 is an argument error, not a request for the default"""
    identity = Identity.LEMMA2 if "J" in kwargs else Identity.ID1
    with pytest.raises(ArgumentError):
        verify_identity(identity, 1, **kwargs)


def test_json_floats_carry_fifteen_digits():
    """Serialized reports round to 15 significant digits"""
    report = verify_identity(Identity.ID1A, 1, N=10**5, tol=1e-3)
    dumped = json.loads(report.model_dump_json(by_alias=True))
    for field in ("value", "reference", "difference", "tail_estimate", "tolerance"):
        assert dumped[field] == float(f"{getattr(report, field):.15g}")
    value = MzvValue(index="3", N=1, value=0.1 + 0.2, tail_estimate=2 / 3)
    assert value.model_dump_json() == '{"index":"3","N":1,"value":0.3,"tail_estimate":0.666666666666667}'
    assert value.value == 0.1 + 0.2
