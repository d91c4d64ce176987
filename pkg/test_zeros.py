import math
import random
from fractions import Fraction

import pytest

from error_handler import ArgumentError, NotInT3
from families import Family, a_rec, clear_memo
from rings import ONE, TPoly
from zeros import (
    XPoly,
    certify_family,
    certify_nonpositive,
    count_real_roots,
    float_real_root_count,
    sign_variations,
    squarefree_part,
    sturm_chain,
    to_x_poly,
)


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


@pytest.fixture
def b4():
    """x^2 + 22x, a positive multiple of B_4 in x."""
    return XPoly.from_coefficients([0, 22, 1])


def from_roots(roots):
    """prod (x - r) expanded into ascending coefficients."""
    coeffs = [Fraction(1)]
    for r in roots:
        shifted = [Fraction(0)] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] -= r * c
        coeffs = shifted
    return XPoly.from_coefficients(coeffs)


def test_to_x_poly_substitutes():
    """t^6/192 + 11 t^3/96 becomes x^2/192 + 11x/96"""
    p = TPoly([0, 0, 0, Fraction(11, 96), 0, 0, Fraction(1, 192)])
    assert to_x_poly(p).coefficients() == [0, Fraction(11, 96), Fraction(1, 192)]
    assert to_x_poly(ONE).coefficients() == [1]


def test_to_x_poly_rejects_other_exponents():
    """t^2 names its exponent"""
    with pytest.raises(NotInT3) as info:
        to_x_poly(TPoly([0, 0, 1]))
    assert info.value.exponent == 2


def test_count_real_roots_examples(b4):
    """Roots 0 and -22 on the closed half-line, none for x^2 + 1, x counts at 0"""
    assert count_real_roots(b4, -math.inf, 0) == 2
    assert count_real_roots(b4, 0, math.inf) == 0
    assert count_real_roots(XPoly.from_coefficients([1, 0, 1]), -math.inf, 0) == 0
    assert count_real_roots(XPoly.from_coefficients([0, 1]), -math.inf, 0) == 1
    assert count_real_roots(XPoly.from_coefficients([0, 1]), 0, math.inf) == 0


def test_count_rejects_zero_polynomial():
    """The zero polynomial has no root count"""
    with pytest.raises(ArgumentError):
        count_real_roots(XPoly.from_coefficients([]))


def test_sturm_chain_of_b4(b4):
    """One division step: [x^2 + 22x, x + 11, 1] up to positive scaling"""
    chain = sturm_chain(b4)
    assert len(chain) == 3
    assert [str(q) for q in chain.polys] == ["x**2 + 22*x", "x + 11", "1"]
    assert chain.variations(-math.inf) - chain.variations(math.inf) == 2


def test_sturm_chain_repeated_root():
    """x^2 stops at the gcd x; its squarefree part is x"""
    square = XPoly.from_coefficients([0, 0, 1])
    chain = sturm_chain(square)
    assert len(chain) == 2
    assert squarefree_part(square).coefficients() == [0, 1]
    with pytest.raises(ArgumentError):
        sturm_chain(XPoly.from_coefficients([3]))


def test_two_real_roots():
    """x^2 - 1 has V(-inf) - V(+inf) = 2"""
    chain = sturm_chain(XPoly.from_coefficients([-1, 0, 1]))
    assert chain.variations(-math.inf) - chain.variations(math.inf) == 2


def test_sign_variations_skips_zeros():
    """Zeros do not break a run"""
    assert sign_variations([1, 0, -1, -1, 0, 1]) == 2
    assert sign_variations([]) == 0


def test_random_rational_roots():
    """Counts match the constructed roots on every interval"""
    rng = random.Random(20240611)
    for _ in range(25):
        roots = [Fraction(rng.randint(-30, 30), rng.randint(1, 6)) for _ in range(rng.randint(1, 6))]
        p = from_roots(roots)
        distinct = set(roots)
        assert count_real_roots(p) == len(distinct)
        for lo, hi in [(-math.inf, 0), (0, math.inf), (Fraction(-3), Fraction(2)), (Fraction(-1, 2), Fraction(7))]:
            expected = sum(1 for r in distinct if lo < r <= hi)
            assert count_real_roots(p, lo, hi) == expected, (roots, lo, hi)


def test_float_count_is_a_sanity_signal():
    """numpy agrees on a well separated example"""
    assert float_real_root_count(from_roots([-1, -2, -5])) == 3
    assert float_real_root_count(XPoly.from_coefficients([1, 0, 1])) == 0


def test_certify_a5():
    """A_5 = -(x/240 + 1/12) x has roots 0 and -20"""
    p = to_x_poly(a_rec(5)[5])
    certificate = certify_nonpositive(p, "A", 5)
    assert certificate.passed
    assert certificate.root_at_zero
    assert certificate.degree_sqfree == 2
    assert certificate.roots_in_halfline == 2


def test_certify_reports_multiplicity():
    """(x+1)^2 (x+3) passes with one repeated root"""
    certificate = certify_nonpositive(from_roots([-1, -1, -3]))
    assert certificate.passed
    assert certificate.degree == 3
    assert certificate.multiplicity_excess == 1


def test_certify_positive_root_fails_with_witness(caplog):
    """x - 1 fails and the witness interval contains 1"""
    certificate = certify_nonpositive(XPoly.from_coefficients([-1, 1]))
    assert not certificate.passed
    assert certificate.roots_positive == 1
    lo, hi = (Fraction(w) for w in certificate.witness)
    assert lo < 1 <= hi
    assert "witness" in caplog.text


def test_certify_complex_pair_fails():
    """x^2 + x + 1 has no real roots at all"""
    certificate = certify_nonpositive(XPoly.from_coefficients([1, 1, 1]))
    assert not certificate.passed
    assert certificate.witness is None


@pytest.mark.parametrize("family", [Family.A, Family.ATILDE, Family.B])
def test_family_batches_certify(family):
    """Every entry 2 <= n <= 40 has its roots on (-inf, 0]"""
    batch = certify_family(family, 40)
    assert batch.passed
    assert all(c.n >= 2 for c in batch.certificates)
    assert batch.model_dump(by_alias=True)["pass"] is True


@pytest.mark.parametrize("alpha", ["1/3", "1/2", "1", "2"])
def test_balpha_batches_certify(alpha):
    """B_n^alpha for 1 <= n <= 30"""
    batch = certify_family(Family.BALPHA, 30, alpha)
    assert batch.passed
    assert batch.alpha == alpha
    assert batch.certificates[0].n == 1


def test_a_prime_is_refused():
    """A'_n is not a polynomial in t^3"""
    with pytest.raises(NotInT3):
        certify_family(Family.APRIME, 10)
