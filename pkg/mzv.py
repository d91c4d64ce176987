"""
Truncated (alternating) multiple zeta values and the numeric identity checks.

A value zeta(s_1, ..., s_d) is the nested sum over n_1 > n_2 > ... > n_d >= 1
of prod eps_i^{n_i} / n_i^{s_i}, where eps_i = -1 on alternating slots. The
sweep below evaluates it with running prefix sums, innermost slot first.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
import numpy as np

import config
from error_handler import ArgumentError, InadmissibleIndex, IndexSyntaxError, ToleranceTooTight
from families import b_coefficient_sums
from models import MzvValue, NumericReport
from series import product_tail_bound, product_truncation

logger = logging.getLogger(__name__)

TAIL_CONSTANT = 2.0
# upper bound on zeta(3), used in the product tail
ZETA3_UPPER = 1.2021

Slot = Tuple[int, bool]


@dataclass(frozen=True)
class MZVIndex:
    entries: Tuple[Slot, ...]

    def __post_init__(self):
        if not self.entries:
            raise InadmissibleIndex("an index needs at least one slot")
        for s, _ in self.entries:
            if s < 1:
                raise InadmissibleIndex(f"exponents must be positive, got {s}")
        s, alternating = self.entries[0]
        if s < 2 and not alternating:
            raise InadmissibleIndex(f"{self} diverges: the first slot needs exponent >= 2 or a sign")

    @classmethod
    def of(cls, *exponents: int) -> "MZVIndex":
        return cls(tuple((s, False) for s in exponents))

    def repeat(self, m: int) -> "MZVIndex":
        """The index {self}^m, expanded."""
        if m < 1:
            raise ArgumentError(f"repetition count must be positive, got {m}")
        return MZVIndex(self.entries * m)

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self.entries)

    def __str__(self):
        return ",".join(f"{s}~" if alternating else str(s) for s, alternating in self.entries)


_TOKEN = re.compile(r"\s*(?:(\{)|(\})\s*\^\s*(\d+)|(\d+)\s*(~?)|(,))")


def parse_index(text: str) -> MZVIndex:
    """
    Parse '2,1', '2~,1' (alternating first slot), '{2,1}^3' or '{2~,1}^2'.

    Braced groups may nest and may be mixed with plain slots.
    """
    stack: List[List[Slot]] = [[]]
    pos = 0
    text = text.strip()
    expect_slot = True
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise IndexSyntaxError(f"unexpected input at position {pos} of {text!r}")
        pos = m.end()
        opening, closing, power, exponent, tilde, comma = m.groups()
        if opening:
            if not expect_slot:
                raise IndexSyntaxError(f"missing ',' before '{{' at position {m.start()}")
            stack.append([])
        elif closing:
            if len(stack) == 1 or expect_slot:
                raise IndexSyntaxError(f"unbalanced '}}' at position {m.start()}")
            group = stack.pop()
            stack[-1].extend(group * int(power))
            expect_slot = False
        elif exponent:
            if not expect_slot:
                raise IndexSyntaxError(f"missing ',' before {exponent!r}")
            stack[-1].append((int(exponent), bool(tilde)))
            expect_slot = False
        elif comma:
            if expect_slot:
                raise IndexSyntaxError(f"empty slot at position {m.start()}")
            expect_slot = True
    if len(stack) != 1:
        raise IndexSyntaxError(f"unclosed '{{' in {text!r}")
    if expect_slot:
        raise IndexSyntaxError(f"index {text!r} is empty or ends with ','")
    return MZVIndex(tuple(stack[0]))


def tail_estimate(idx: MZVIndex, N: int) -> float:
    """
    Heuristic size of zeta(idx) minus its truncation at N.

    An alternating first slot converges like an exponent one higher.
    """
    s, alternating = idx.entries[0]
    lead = s + (1 if alternating else 0)
    log_factor = max(math.log(N), 1.0) ** (idx.depth - 1)
    if lead == 2:
        return TAIL_CONSTANT * log_factor / N
    return TAIL_CONSTANT * log_factor / (N * N)


def _check_truncation(idx: MZVIndex, N: int) -> None:
    if N < idx.depth:
        raise ArgumentError(f"truncation N={N} is below the depth {idx.depth}")


def _slot_weights(n: np.ndarray, slot: Slot) -> np.ndarray:
    s, alternating = slot
    w = 1.0 / n.astype(np.float64) ** s
    if alternating:
        w = np.where(n % 2 == 1, -w, w)
    return w


def mzv_truncated(idx: MZVIndex, N: int, chunk: Optional[int] = None) -> MzvValue:
    """
    Sum over chains with n_1 <= N in O(depth * N), chunk by chunk.

    Chunk totals and the prefixes carried between chunks are summed with
    math.fsum. Inside a chunk the running prefix is a plain np.cumsum, so its
    rounding error grows with the chunk length, not with N (about 1e-12
    relative at the default chunk).
    """
    _check_truncation(idx, N)
    chunk = config.MZV_CHUNK if chunk is None else chunk
    if chunk < 1:
        raise ArgumentError(f"chunk length must be positive, got {chunk}")
    depth = idx.depth
    # chunk totals per slot; their fsum is the running prefix carried into the next chunk
    totals: List[List[float]] = [[] for _ in range(depth)]
    for start in range(1, N + 1, chunk):
        n = np.arange(start, min(start + chunk, N + 1), dtype=np.int64)
        below = None
        for level in reversed(range(depth)):
            terms = _slot_weights(n, idx.entries[level])
            if below is not None:
                terms = terms * below
            if level:
                carry = math.fsum(totals[level])
                below = carry + np.cumsum(terms) - terms
            totals[level].append(math.fsum(terms))
    value = math.fsum(totals[0])
    logger.debug("zeta(%s) truncated at N=%d: %.15g", idx, N, value)
    return MzvValue(index=str(idx), N=N, value=value, tail_estimate=tail_estimate(idx, N))


def tail_sanity(idx: MZVIndex, N: int, later: int) -> bool:
    """
    True when the truncations at N and at a later N' differ by no more than
    tail_estimate(N). A violation is logged, not raised: the tail is heuristic.
    """
    if later <= N:
        raise ArgumentError(f"the later truncation {later} must exceed N={N}")
    early = mzv_truncated(idx, N)
    moved = abs(mzv_truncated(idx, later).value - early.value)
    if moved > early.tail_estimate:
        logger.warning("zeta(%s): truncations at %d and %d differ by %.3e, beyond the tail estimate %.3e",
                       idx, N, later, moved, early.tail_estimate)
        return False
    return True


def _exact_weight(n: int, slot: Slot) -> Fraction:
    s, alternating = slot
    w = Fraction(1, n**s)
    return -w if alternating and n % 2 else w


def mzv_truncated_exact(idx: MZVIndex, N: int) -> Fraction:
    """The same prefix-sum sweep in exact rationals."""
    _check_truncation(idx, N)
    below = [Fraction(1)] * (N + 1)
    for level in reversed(range(idx.depth)):
        running = Fraction(0)
        current = [Fraction(0)] * (N + 1)
        for n in range(1, N + 1):
            current[n] = running
            running += _exact_weight(n, idx.entries[level]) * below[n]
        if level == 0:
            return running
        below = current
    raise AssertionError("unreachable")


def mzv_bruteforce(idx: MZVIndex, N: int) -> Fraction:
    """Direct iteration over all strictly decreasing chains; exponential in depth."""
    _check_truncation(idx, N)
    total = Fraction(0)
    for chain in itertools.combinations(range(N, 0, -1), idx.depth):
        term = Fraction(1)
        for n, slot in zip(chain, idx.entries):
            term *= _exact_weight(n, slot)
        total += term
    return total


class Identity(str, Enum):
    ID1 = "id1"
    ID1A = "id1a"
    EIGHTH = "eighth"
    LEMMA2 = "lemma2"


def _reference_id1a(l: int) -> float:
    """2 pi^(4l) / (4l+2)!."""
    with mpmath.workdps(30):
        pi = mpmath.mpf(config.PI_DIGITS)
        return float(2 * pi ** (4 * l) / mpmath.factorial(4 * l + 2))


def verify_identity(identity, l: int, N: Optional[int] = None, tol: Optional[float] = None,
                    J: Optional[int] = None) -> NumericReport:
    """
    Compare both sides of a numeric identity at truncation N.

    Raises ToleranceTooTight before any summation if the tail estimate alone
    could exceed tol.
    """
    identity = Identity(identity)
    if l < 1:
        raise ArgumentError(f"l must be at least 1, got {l}")
    default_n, default_tol = config.identity_defaults(identity.value, l)
    N = default_n if N is None else N
    if N < 1:
        raise ArgumentError(f"truncation N must be at least 1, got {N}")
    tol = default_tol if tol is None else tol

    if identity is Identity.LEMMA2:
        return _verify_lemma2(l, N, tol, config.LEMMA2_PRODUCT_TERMS if J is None else J)

    two_one = MZVIndex.of(2, 1).repeat(l)
    if identity is Identity.ID1:
        lhs, rhs, scale = two_one, MZVIndex.of(3).repeat(l), 1.0
    elif identity is Identity.ID1A:
        lhs, rhs, scale = MZVIndex.of(3, 1).repeat(l), None, 1.0
    else:
        lhs, rhs, scale = MZVIndex(((2, True), (1, False))).repeat(l), two_one, 1.0 / 8**l

    value_tail = tail_estimate(lhs, N)
    reference_tail = 0.0 if rhs is None else tail_estimate(rhs, N) * scale
    tail = value_tail + reference_tail
    if tol < tail:
        raise ToleranceTooTight(tol, tail)

    value = mzv_truncated(lhs, N).value
    reference = _reference_id1a(l) if rhs is None else mzv_truncated(rhs, N).value * scale
    return _numeric_report(identity, l, value, reference, N, tail, value_tail, reference_tail, tol)


def _verify_lemma2(l: int, N: int, tol: float, J: int) -> NumericReport:
    """[t^(3l)] of sum_{n<=N} B_n against e_l of the product truncated at J factors."""
    if J < l:
        raise ArgumentError(f"product truncation J={J} is below l={l}")
    reference_tail = product_tail_bound(ZETA3_UPPER ** (l - 1) / math.factorial(l - 1), J)
    if tol < reference_tail:
        raise ToleranceTooTight(tol, reference_tail)
    value_tail = tail_estimate(MZVIndex.of(2, 1).repeat(l), N)
    value = b_coefficient_sums(N, l, scalar=float)[l]
    reference = float(product_truncation(J, l)[l])
    return _numeric_report(Identity.LEMMA2, l, value, reference, N, reference_tail, value_tail, reference_tail, tol)


def _numeric_report(identity: Identity, l: int, value: float, reference: float, N: int, tail: float,
                    value_tail: float, reference_tail: float, tol: float) -> NumericReport:
    difference = abs(value - reference)
    passed = difference <= tol
    if not passed:
        logger.warning("%s l=%d: |%.15g - %.15g| = %.3e exceeds %.3e", identity.value, l, value, reference,
                       difference, tol)
    return NumericReport(
        identity=identity.value,
        l=l,
        value=value,
        reference=reference,
        difference=difference,
        N=N,
        tail_estimate=tail,
        value_tail=value_tail,
        reference_tail=reference_tail,
        tolerance=tol,
        passed=passed,
    )
