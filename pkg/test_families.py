from fractions import Fraction

import pytest

from error_handler import ArgumentError
from families import (
    T3,
    Family,
    FamilyTable,
    Method,
    RecurrenceCheck,
    a_prime,
    a_rec,
    a_tilde,
    a_tilde_leading,
    b_alpha,
    b_coefficient_sums,
    b_hyper,
    b_rec,
    c_coeff,
    c_hyper,
    clear_memo,
    family_table,
    is_in_t3,
    verify_eliminated_recurrences,
    x_degree,
)
from rings import ONE, ZERO, TPoly

ALPHAS = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-1), Fraction(-5, 2)]


def x_poly(*coeffs):
    """A polynomial in t^3 from its coefficients in x."""
    out = [0] * (3 * len(coeffs))
    for k, c in enumerate(coeffs):
        out[3 * k] = c
    return TPoly(out)


@pytest.fixture(autouse=True)
def fresh_memo():
    """Every test builds its tables from scratch."""
    clear_memo()
    yield
    clear_memo()


def test_c_coeff_small_values():
    """C_0 = 1, C_1 = t^3, C_2 = t^3 (1 + t^3)/8"""
    assert c_coeff(0) == ONE
    assert c_coeff(1) == T3
    assert c_coeff(2) == x_poly(0, Fraction(1, 8), Fraction(1, 8))


def test_c_coeff_ratio():
    """(n+1)^3 C_{n+1} = (n^3 + t^3) C_n for n <= 50"""
    for n in range(50):
        assert c_coeff(n + 1) * (n + 1) ** 3 == c_coeff(n) * (T3 + n**3)


def test_c_hyper_matches_product():
    """The omega-Pochhammer form of C_n equals the product form"""
    for n in range(8):
        assert c_hyper(n) == c_coeff(n)


def test_b_rec_initial_entries():
    """B_0..B_4 unrolled by hand"""
    b = b_rec(4)
    assert b[0] == ONE
    assert b[1] == ZERO
    assert b[2] == x_poly(0, Fraction(1, 4))
    assert b[3] == x_poly(0, Fraction(1, 6))
    assert b[4] == x_poly(0, Fraction(11, 96), Fraction(1, 192))


def test_b_hyper_small():
    """The closed form gives 1 and t^3/4 at n = 0, 2"""
    assert b_hyper(0) == ONE
    assert b_hyper(2) == x_poly(0, Fraction(1, 4))


def test_b_hyper_equals_b_rec():
    """The double sum and the recurrence agree for n <= 50"""
    table = b_rec(50)
    for n in range(51):
        assert b_hyper(n) == table[n]


def test_b_entries_lie_in_t3_qt3():
    """B_n has only exponents divisible by 3 and no constant term for n >= 1"""
    table = b_rec(50)
    for n in range(1, 51):
        assert is_in_t3(table[n])
        assert table[n].coefficient(0) == 0


def test_b_cubic_coefficient_is_harmonic():
    """[t^3] B_n = H_{n-1} / n^2"""
    table = b_rec(12)
    harmonic = Fraction(0)
    for n in range(1, 13):
        assert table[n].coefficient(3) == harmonic / n**2
        harmonic += Fraction(1, n)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_b_alpha_methods_agree(alpha):
    """rec, sum1 and sum2 produce the same table"""
    rec = b_alpha(alpha, 30, Method.REC)
    assert b_alpha(alpha, 30, Method.SUM1).entries == rec.entries
    assert b_alpha(alpha, 30, Method.SUM2).entries == rec.entries
    assert all(is_in_t3(p) for p in rec.entries)


def test_b_alpha_initial_values():
    """B_1^alpha = alpha^2 and B_2^1 = 1 + t^3/4"""
    assert b_alpha(Fraction(2, 3), 1)[1] == TPoly([Fraction(4, 9)])
    assert b_alpha(1, 2)[2] == x_poly(1, Fraction(1, 4))


def test_b_alpha_zero_is_b():
    """B_n^0 = B_n"""
    assert b_alpha(0, 20).entries == b_rec(20).entries


@pytest.mark.parametrize("alpha", ALPHAS)
def test_b_alpha_reflection_symmetry(alpha):
    """B_n^{1-n-alpha} = B_n^alpha for n <= 30"""
    table = b_alpha(alpha, 30)
    for n in range(1, 31):
        assert b_alpha(1 - n - alpha, n)[n] == table[n]


@pytest.mark.parametrize("alpha", list(range(-32, 3)) + [Fraction(-1, 2), Fraction(1, 3), Fraction(-5, 2)])
def test_b_alpha_vanishing_at_zero(alpha):
    """B_n^alpha(0) = 0 exactly for alpha in {0, -1, ..., -n+1}, n <= 30"""
    table = b_alpha(alpha, 30)
    for n in range(1, 31):
        assert (table[n](0) == 0) == (alpha in range(-n + 1, 1)), n


def test_b_alpha_one_is_partial_sum():
    """B_n^1 = sum_{k<=n} B_k"""
    b = b_rec(30)
    ones = b_alpha(1, 30)
    partial = ZERO
    for n in range(31):
        partial = partial + b[n]
        assert ones[n] == partial


def test_a_rec_matches_printed_expansion():
    """A_2..A_6 as in the expansion of A(z;t)"""
    a = a_rec(6)
    assert a[0] == ONE
    assert a[1] == ZERO
    assert a[2] == x_poly(0, Fraction(1, 4))
    assert a[3] == x_poly(0, Fraction(-1, 6))
    assert a[4] == x_poly(0, Fraction(11, 96), Fraction(1, 192))
    assert a[5] == x_poly(0, Fraction(-1, 12), Fraction(-1, 240))
    assert a[6] == x_poly(0, Fraction(137, 2160), Fraction(23, 5760), Fraction(1, 34560))


def test_a_rec_needs_two_entries():
    """nmax below 2 is rejected"""
    with pytest.raises(ArgumentError):
        a_rec(1)


def test_a_prime_is_not_in_t3():
    """A'_1 = (t - t^2)/4 carries t and t^2"""
    ap = a_prime(20)
    assert ap[0] == ONE
    assert ap[1] == TPoly([0, Fraction(1, 4), Fraction(-1, 4)])
    assert ap[2] == TPoly([0, Fraction(1, 32), Fraction(7, 192), Fraction(-1, 48), Fraction(1, 192)])
    assert not is_in_t3(ap[1])
    with pytest.raises(ArgumentError):
        x_degree(ap[1])


def test_a_tilde_partial_sums():
    """A~_0 = 1, A~_3 = 1 + t^3/12, leading coefficient of A~_4 is 1/192"""
    at = a_tilde(4)
    assert at[0] == ONE
    assert at[3] == x_poly(1, Fraction(1, 12))
    assert at[4].coefficient(6) == Fraction(1, 192)
    assert a_tilde_leading(4) == Fraction(1, 192)


def test_degree_profile():
    """A_n and A~_n have degree floor(n/2) in x = t^3"""
    a = a_rec(50)
    at = a_tilde(50)
    for n in range(2, 51):
        assert x_degree(a[n]) == n // 2
    for n in range(51):
        assert x_degree(at[n]) == n // 2


@pytest.mark.parametrize("which", list(RecurrenceCheck))
def test_eliminated_recurrences_hold(which):
    """Every residual of every recurrence form is exactly zero up to n = 20"""
    report = verify_eliminated_recurrences(which, 20)
    assert report.all_zero
    assert report.rows


def test_recurrence_report_covers_each_form():
    """The A check lists rec1, the eliminated forms and both parity forms"""
    report = verify_eliminated_recurrences(RecurrenceCheck.A_EVEN_ODD, 20)
    forms = {row.form for row in report.rows}
    assert {"rec1", "eliminated-even", "eliminated-odd", "rec-even", "rec-odd"} <= forms


def test_recurrence_needs_nmax_four():
    """nmax below 4 is a usage error"""
    with pytest.raises(ArgumentError):
        verify_eliminated_recurrences(RecurrenceCheck.ATILDE, 3)


def test_memo_extends_in_place():
    """A larger request keeps the earlier prefix"""
    small = b_rec(10)
    large = b_rec(20)
    assert large.entries[:11] == small.entries


def test_family_table_dispatch():
    """Every family/method pair either dispatches or raises ArgumentError"""
    assert family_table(Family.B, 5, method=Method.SUM2).entries == b_rec(5).entries
    assert family_table(Family.C, 5, method=Method.SUM1).entries == family_table(Family.C, 5).entries
    with pytest.raises(ArgumentError):
        family_table(Family.A, 5, method=Method.SUM1)
    with pytest.raises(ArgumentError):
        family_table(Family.BALPHA, 5)
    with pytest.raises(ArgumentError):
        family_table(Family.B, 5, alpha=1)


def test_table_record_roundtrip():
    """FamilyTable survives the JSON record"""
    table = b_alpha(Fraction(-5, 2), 8)
    record = table.to_record()
    assert record.alpha == "-5/2"
    assert FamilyTable.from_record(record) == table


def test_b_coefficient_sums_exact():
    """The truncated sums match the full table"""
    table = b_rec(15)
    sums = b_coefficient_sums(15, 2)
    for l in range(3):
        assert sums[l] == sum((p.coefficient(3 * l) for p in table.entries), Fraction(0))


def test_b_coefficient_sums_float():
    """The float recurrence tracks the exact one"""
    exact = b_coefficient_sums(200, 2)
    approx = b_coefficient_sums(200, 2, scalar=float)
    for e, a in zip(exact, approx):
        assert a == pytest.approx(float(e), rel=1e-9)
