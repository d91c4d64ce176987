"""
Polynomial families C_n, B_n, B_n^alpha, A_n, A'_n and the partial sums of A_n,
built either from their 3-term recurrences or from closed-form sums of
Pochhammer products over Q(omega), and the exact checks tying them together.
"""

import logging
import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from error_handler import ArgumentError
from models import FamilyTableRecord, RecurrenceReport, RecurrenceRow
from rings import (
    OMEGA,
    OMEGA2,
    ONE,
    ZERO,
    TPoly,
    as_rational,
    cyclo_project,
    pochhammer_linear,
    rational_text,
)

logger = logging.getLogger(__name__)

T3 = TPoly.monomial(1, 3)


class Family(str, Enum):
    C = "C"
    B = "B"
    BALPHA = "Balpha"
    A = "A"
    APRIME = "Aprime"
    ATILDE = "Atilde"


class Method(str, Enum):
    REC = "rec"
    SUM1 = "sum1"
    SUM2 = "sum2"


class RecurrenceCheck(str, Enum):
    A_EVEN_ODD = "A-even-odd"
    APRIME = "Aprime"
    ATILDE = "Atilde"
    B = "B"


@dataclass(frozen=True)
class FamilyTable:
    family: Family
    entries: Tuple[TPoly, ...]
    alpha: Optional[Fraction] = None

    @property
    def nmax(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, n: int) -> TPoly:
        return self.entries[n]

    def to_record(self) -> FamilyTableRecord:
        return FamilyTableRecord(
            family=self.family.value,
            alpha=None if self.alpha is None else rational_text(self.alpha),
            nmax=self.nmax,
            entries=[p.to_strings() for p in self.entries],
        )

    @classmethod
    def from_record(cls, record: FamilyTableRecord) -> "FamilyTable":
        return cls(
            family=Family(record.family),
            entries=tuple(TPoly.from_strings(e) for e in record.entries),
            alpha=None if record.alpha is None else as_rational(record.alpha),
        )


# Tables are extended in place under the lock, then handed out as tuples.
_tables: Dict[tuple, List[TPoly]] = {}
_lock = threading.Lock()


def clear_memo() -> None:
    with _lock:
        _tables.clear()


def _extend(
    key: tuple,
    nmax: int,
    seed: Sequence[TPoly],
    step: Callable[[List[TPoly], int], TPoly],
) -> Tuple[TPoly, ...]:
    with _lock:
        entries = _tables.setdefault(key, list(seed))
        if len(entries) <= nmax:
            logger.debug("extending %s from %d to %d", key, len(entries) - 1, nmax)
        while len(entries) <= nmax:
            entries.append(step(entries, len(entries)))
        return tuple(entries[: nmax + 1])


def _check_nmax(nmax: int, minimum: int) -> None:
    if nmax < minimum:
        raise ArgumentError(f"nmax must be at least {minimum}, got {nmax}")


def is_in_t3(p: TPoly) -> bool:
    """True when only exponents divisible by 3 occur."""
    return all(e % 3 == 0 for e in p.exponents())


def x_degree(p: TPoly) -> int:
    """Degree in x = t^3 (-1 for zero); p must lie in Q[t^3]."""
    if not is_in_t3(p):
        raise ArgumentError(f"{p} is not a polynomial in t^3")
    return p.degree // 3 if p else -1


def _double_sum(n: int, head, tail, sign: int = 1) -> TPoly:
    """
    sum_{k=0}^n sign^k / (k! (n-k)!) * prod_head (a + c*t)_k * prod_tail (a + s*k + c*t)_{n-k}

    head holds (c, a) pairs, tail holds (c, a, s) triples; c may lie in Q(omega).
    """
    total = ZERO
    left = ONE
    for k in range(n + 1):
        if k:
            for c, a in head:
                left = left.mul_linear(a + k - 1, c)
            if left.is_rational:
                left = cyclo_project(left)
        right = ONE
        for c, a, s in tail:
            for j in range(n - k):
                right = right.mul_linear(a + s * k + j, c)
        weight = Fraction(sign**k, math.factorial(k) * math.factorial(n - k))
        total = total + (left * right).scale(weight)
    return total


# --- C_n -------------------------------------------------------------------

def _c_step(entries: List[TPoly], m: int) -> TPoly:
    j = m - 1
    return (entries[j] * (T3 + j**3)).scale(Fraction(1, m**3))


def c_coeff(n: int) -> TPoly:
    """C_n = prod_{j<n} (j^3 + t^3) / n!^3."""
    if n < 0:
        raise ArgumentError(f"n must be non-negative, got {n}")
    return _extend((Family.C, None, Method.REC), n, [ONE], _c_step)[n]


def c_hyper(n: int) -> TPoly:
    """C_n from the 3F2 form: (t)_n (omega t)_n (omega^2 t)_n / n!^3."""
    p = pochhammer_linear(1, 0, n) * pochhammer_linear(OMEGA, 0, n) * pochhammer_linear(OMEGA2, 0, n)
    return cyclo_project(p.scale(Fraction(1, math.factorial(n) ** 3)))


# --- B_n -------------------------------------------------------------------

def _b_step(entries: List[TPoly], m: int) -> TPoly:
    n = m - 2
    p = entries[n + 1] * ((n + 1) ** 2 * (2 * n + 1)) + entries[n] * (T3 - n**3)
    return p.scale(Fraction(1, (n + 2) ** 2 * (n + 1)))


def b_rec(nmax: int) -> FamilyTable:
    _check_nmax(nmax, MIN_NMAX[Family.B])
    entries = _extend((Family.B, None, Method.REC), nmax, [ONE, ZERO], _b_step)
    return FamilyTable(Family.B, entries)


def b_hyper(n: int) -> TPoly:
    """B_n from the single sum over k of omega-Pochhammer products."""
    if n < 0:
        raise ArgumentError(f"n must be non-negative, got {n}")
    total = _double_sum(n, head=[(OMEGA, 0), (OMEGA2, 0)], tail=[(1, 0, 0), (-1, 0, 1)])
    return cyclo_project(total.scale(Fraction(1, math.factorial(n))))


# --- B_n^alpha -------------------------------------------------------------

def _balpha_sum(alpha: Fraction, n: int, method: Method) -> TPoly:
    if method is Method.SUM1:
        total = _double_sum(n, head=[(OMEGA, 0), (OMEGA2, 0)], tail=[(1, alpha, 0), (-1, alpha, 1)])
    else:
        total = _double_sum(n, head=[(OMEGA, alpha), (OMEGA2, alpha)], tail=[(1, 0, 0), (-1, alpha, 1)])
    return cyclo_project(total.scale(Fraction(1, math.factorial(n))))


def _balpha_rec_step(alpha: Fraction) -> Callable[[List[TPoly], int], TPoly]:
    def step(entries: List[TPoly], m: int) -> TPoly:
        n = m - 2
        middle = (n + 1) * (2 * n * n + 3 * n * (alpha + 1) + alpha * alpha + 3 * alpha + 1)
        p = entries[n + 1] * middle - entries[n] * ((n + alpha) ** 3 - T3)
        return p.scale(Fraction(1, (n + 2) ** 2 * (n + 1)))

    return step


def b_alpha(alpha, nmax: int, method: Method = Method.REC) -> FamilyTable:
    _check_nmax(nmax, MIN_NMAX[Family.BALPHA])
    alpha = as_rational(alpha)
    method = Method(method)
    key = (Family.BALPHA, alpha, method)
    if method is Method.REC:
        entries = _extend(key, nmax, [ONE, TPoly.constant(alpha * alpha)], _balpha_rec_step(alpha))
    else:
        entries = _extend(key, nmax, [], lambda _, m: _balpha_sum(alpha, m, method))
    return FamilyTable(Family.BALPHA, entries, alpha)


# --- A_n, A'_n and partial sums --------------------------------------------

def _a_step(entries: List[TPoly], m: int) -> TPoly:
    n = m - 2
    big_t = T3 if n % 2 == 0 else -T3
    p = entries[n] * (n**3 - big_t) + entries[n + 1] * ((n + 1) ** 2 * (2 * n + 1))
    return p.scale(Fraction(-1, (n + 2) ** 2 * (n + 1)))


def a_rec(nmax: int) -> FamilyTable:
    _check_nmax(nmax, MIN_NMAX[Family.A])
    entries = _extend((Family.A, None, Method.REC), nmax, [ONE, ZERO], _a_step)
    return FamilyTable(Family.A, entries)


def _a_prime_entry(n: int) -> TPoly:
    half = Fraction(1, 2)
    total = _double_sum(
        n,
        head=[(OMEGA * half, 0), (OMEGA2 * half, 0)],
        tail=[(half, 0, 0), (0, half, 0)],
        sign=-1,
    )
    norm = 2**n * math.factorial(n) * pochhammer_linear(0, half, n).coefficient(0)
    return cyclo_project(total.scale(1 / norm))


def a_prime(nmax: int) -> FamilyTable:
    _check_nmax(nmax, MIN_NMAX[Family.APRIME])
    entries = _extend((Family.APRIME, None, Method.SUM1), nmax, [], lambda _, m: _a_prime_entry(m))
    return FamilyTable(Family.APRIME, entries)


def a_tilde(nmax: int) -> FamilyTable:
    _check_nmax(nmax, MIN_NMAX[Family.ATILDE])
    a = a_rec(max(nmax, 2))
    entries = _extend((Family.ATILDE, None, Method.REC), nmax, [ONE], lambda e, m: e[m - 1] + a[m])
    return FamilyTable(Family.ATILDE, entries)


def a_tilde_leading(n: int) -> Fraction:
    """Coefficient of t^(3*floor(n/2)) in the n-th partial sum."""
    h = n // 2
    return Fraction(1, 2**h * math.factorial(h) * math.factorial(n))


# --- dispatch --------------------------------------------------------------

DEFAULT_METHOD = {
    Family.C: Method.REC,
    Family.B: Method.REC,
    Family.BALPHA: Method.REC,
    Family.A: Method.REC,
    Family.APRIME: Method.SUM1,
    Family.ATILDE: Method.REC,
}

# smallest nmax each table builder accepts
MIN_NMAX = {
    Family.C: 0,
    Family.B: 1,
    Family.BALPHA: 1,
    Family.A: 2,
    Family.APRIME: 1,
    Family.ATILDE: 1,
}


def family_table(family, nmax: int, alpha=None, method: Optional[Method] = None) -> FamilyTable:
    """Build the table of any family with any of the methods it supports."""
    family = Family(family)
    method = DEFAULT_METHOD[family] if method is None else Method(method)
    if family is Family.BALPHA:
        if alpha is None:
            raise ArgumentError("family Balpha needs an alpha")
        return b_alpha(alpha, nmax, method)
    if alpha is not None:
        raise ArgumentError(f"family {family.value} takes no alpha")
    if family is Family.C and method is Method.REC:
        c_coeff(nmax)
        return FamilyTable(family, tuple(c_coeff(n) for n in range(nmax + 1)))
    if family is Family.C and method is Method.SUM1:
        return FamilyTable(family, tuple(c_hyper(n) for n in range(nmax + 1)))
    if family is Family.B and method is Method.REC:
        return b_rec(nmax)
    if family is Family.B and method is Method.SUM1:
        entries = _extend((Family.B, None, Method.SUM1), nmax, [], lambda _, m: b_hyper(m))
        return FamilyTable(family, entries)
    if family is Family.B and method is Method.SUM2:
        return FamilyTable(family, b_alpha(0, nmax, Method.SUM2).entries)
    if family is Family.A and method is Method.REC:
        return a_rec(nmax)
    if family is Family.APRIME and method is Method.SUM1:
        return a_prime(nmax)
    if family is Family.ATILDE and method is Method.REC:
        return a_tilde(nmax)
    raise ArgumentError(f"family {family.value} has no method {method.value}")


def b_coefficient_sums(nmax: int, lmax: int, scalar: Callable = Fraction) -> list:
    """
    Partial sums sum_{n<=nmax} [t^(3l)] B_n for l = 0..lmax.

    The recurrence is stepped on coefficient vectors in x = t^3 truncated at
    x^lmax, so any field type works (Fraction for exact, float for large nmax).
    """
    prev = [scalar(1)] + [scalar(0)] * lmax
    cur = [scalar(0)] * (lmax + 1)
    if nmax == 0:
        return prev
    sums = [p + c for p, c in zip(prev, cur)]
    for n in range(nmax - 1):
        a = scalar((n + 1) ** 2 * (2 * n + 1))
        b = scalar(n**3)
        d = scalar((n + 2) ** 2 * (n + 1))
        nxt = [(a * cur[j] - b * prev[j] + (prev[j - 1] if j else 0)) / d for j in range(lmax + 1)]
        prev, cur = cur, nxt
        sums = [s + c for s, c in zip(sums, nxt)]
    return sums


# --- recurrence verification ----------------------------------------------

def _tp(*coeffs) -> TPoly:
    return TPoly(coeffs)


def _signed_t3(n: int) -> TPoly:
    """T = (-1)^n t^3."""
    return T3 if n % 2 == 0 else -T3


def _a_rows(nmax: int) -> List[RecurrenceRow]:
    a = a_rec(nmax)
    rows = []
    for n in range(nmax - 1):
        big_t = _signed_t3(n)
        r = a[n] * (n**3 - big_t) + a[n + 1] * ((n + 1) ** 2 * (2 * n + 1)) + a[n + 2] * ((n + 2) ** 2 * (n + 1))
        rows.append(RecurrenceRow(n=n, form="rec1", zero=not r))
    for n in range(2, nmax - 1):
        big_t = _signed_t3(n)
        r = (
            a[n - 2] * ((2 * n + 1) * ((n - 1) ** 3 + big_t) * ((n - 2) ** 3 - big_t))
            - a[n] * (n * (n - 1) * (2 * n - 1) * (2 * n * (n - 1) * (n * n - n - 1) - 3 * big_t))
            + a[n + 2] * ((n + 2) ** 2 * (n + 1) * n * (n - 1) ** 2 * (2 * n - 3))
        )
        parity = "even" if n % 2 == 0 else "odd"
        rows.append(RecurrenceRow(n=n, form=f"eliminated-{parity}", zero=not r))
    for n in range((nmax - 4) // 2 + 1):
        r = (
            a[2 * n] * ((4 * n + 5) * ((2 * n) ** 3 - T3) * ((2 * n + 1) ** 3 + T3))
            - a[2 * n + 2]
            * ((4 * n + 3) * (2 * n + 1) * (2 * n + 2) * (2 * (2 * n + 1) * (2 * n + 2) * (4 * n * n + 6 * n + 1) - 3 * T3))
            + a[2 * n + 4] * ((4 * n + 1) * (2 * n + 1) ** 2 * (2 * n + 2) * (2 * n + 3) * (2 * n + 4) ** 2)
        )
        rows.append(RecurrenceRow(n=n, form="rec-even", zero=not r))
    for n in range((nmax - 5) // 2 + 1):
        r = (
            a[2 * n + 1] * ((4 * n + 7) * ((2 * n + 2) ** 3 - T3) * ((2 * n + 1) ** 3 + T3))
            - a[2 * n + 3]
            * ((2 * n + 3) * (2 * n + 2) * (4 * n + 5) * (2 * (2 * n + 3) * (2 * n + 2) * (4 * n * n + 10 * n + 5) + 3 * T3))
            + a[2 * n + 5] * ((2 * n + 5) ** 2 * (2 * n + 4) * (2 * n + 3) * (2 * n + 2) ** 2 * (4 * n + 3))
        )
        rows.append(RecurrenceRow(n=n, form="rec-odd", zero=not r))
    return rows


def _a_prime_rows(nmax: int) -> List[RecurrenceRow]:
    ap = a_prime(nmax)
    rows = []
    for n in range(nmax - 1):
        m = 2 * n + 1
        minus_cofactor = _tp(4 * n * n, 2 * n, 1)
        plus_cofactor = _tp(m * m, -m, 1)
        minus_ok = _tp((2 * n) ** 3, 0, 0, -1) == -(_tp(-2 * n, 1) * minus_cofactor)
        plus_ok = _tp(m**3, 0, 0, 1) == _tp(m, 1) * plus_cofactor
        rows.append(RecurrenceRow(n=n, form="factor-minus", zero=minus_ok))
        rows.append(RecurrenceRow(n=n, form="factor-plus", zero=plus_ok))
        c0 = (minus_cofactor * plus_cofactor) * (-(4 * n + 5))
        c1 = _tp(m * (2 * n + 2), 8 * n * n + 12 * n + 1, 3) * (-(4 * n + 3) * m * (2 * n + 2))
        c2 = (4 * n + 1) * m**2 * (2 * n + 2) * (2 * n + 3) * (2 * n + 4) ** 2
        r = ap[n] * c0 + ap[n + 1] * c1 + ap[n + 2] * c2
        rows.append(RecurrenceRow(n=n, form="recursion", zero=not r))
    return rows


def _a_tilde_rows(nmax: int) -> List[RecurrenceRow]:
    at = a_tilde(nmax)
    rows = []
    for n in range(1, nmax):
        r = at[n - 1] * (n**3 - _signed_t3(n)) + at[n] * ((2 * n + 1) * n) - at[n + 1] * ((n + 1) ** 2 * n)
        rows.append(RecurrenceRow(n=n, form="three-term", zero=not r))
    for n in range(2, nmax - 1):
        big_t = _signed_t3(n)
        r = (
            at[n - 2] * ((2 * n + 3) * ((n - 1) ** 3 + big_t) * (n**3 - big_t))
            - at[n] * ((2 * n + 1) * n * (n - 1) * (2 * (n * n + n + 1) ** 2 - 6 - big_t))
            + at[n + 2] * ((2 * n - 1) * (n + 2) ** 2 * (n + 1) ** 2 * n * (n - 1))
        )
        rows.append(RecurrenceRow(n=n, form="eliminated", zero=not r))
    for n in range(nmax + 1):
        leading_ok = x_degree(at[n]) == n // 2 and at[n].coefficient(3 * (n // 2)) == a_tilde_leading(n)
        rows.append(RecurrenceRow(n=n, form="leading", zero=leading_ok))
    return rows


def _b_rows(nmax: int) -> List[RecurrenceRow]:
    b = [b_hyper(n) for n in range(nmax + 1)]
    rows = [RecurrenceRow(n=0, form="initial", zero=b[0] == ONE and b[1] == ZERO)]
    for n in range(nmax - 1):
        r = b[n] * (n**3 - T3) - b[n + 1] * ((n + 1) ** 2 * (2 * n + 1)) + b[n + 2] * ((n + 2) ** 2 * (n + 1))
        rows.append(RecurrenceRow(n=n, form="recB", zero=not r))
    return rows


RECURRENCE_MIN_NMAX = 4

_ROW_BUILDERS = {
    RecurrenceCheck.A_EVEN_ODD: _a_rows,
    RecurrenceCheck.APRIME: _a_prime_rows,
    RecurrenceCheck.ATILDE: _a_tilde_rows,
    RecurrenceCheck.B: _b_rows,
}


def verify_eliminated_recurrences(which, nmax: int) -> RecurrenceReport:
    """Check the 3-term and eliminated recurrences exactly; failures are reported, not raised."""
    _check_nmax(nmax, RECURRENCE_MIN_NMAX)
    which = RecurrenceCheck(which)
    rows = _ROW_BUILDERS[which](nmax)
    for row in rows:
        if not row.zero:
            logger.warning("%s: %s residual nonzero at n=%d", which.value, row.form, row.n)
    return RecurrenceReport(which=which.value, nmax=nmax, rows=rows, all_zero=all(r.zero for r in rows))
