"""
Generating-function checks: truncated C(z;t), B(z;t), A(z;t), the operators
annihilating them, and the series identities relating B^alpha to 2F1/3F2 forms.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional

from error_handler import ArgumentError, PoleAtSample
from families import T3, Family, Method, b_alpha, c_coeff, family_table
from models import CdhReport, ResidualReport
from rings import (
    D_MINUS,
    D_PLUS,
    OMEGA,
    OMEGA2,
    ONE,
    REFLECT,
    THETA,
    Cyclo,
    Operator,
    TPoly,
    ZSeries,
    as_rational,
    rational_text,
    zseries_apply,
)

logger = logging.getLogger(__name__)

T6 = T3 * T3

C_OPERATOR: Operator = D_MINUS * THETA**2 - T3
B_OPERATOR: Operator = D_MINUS**2 * THETA - T3
# D+^2 theta A(z) = t^3 A(-z)
A_FUNCTIONAL: Operator = D_PLUS**2 * THETA - T3 * REFLECT
A_SIXTH: Operator = D_MINUS**2 * THETA * D_PLUS**2 * THETA - T6

ODE_OPERATORS = {
    Family.C: C_OPERATOR,
    Family.B: B_OPERATOR,
    Family.A: A_FUNCTIONAL,
}

# A_0..A_6 as printed in the expansion of A(z;t)
A_SERIES_LITERAL: List[TPoly] = [
    ONE,
    TPoly(),
    T3.scale(Fraction(1, 4)),
    T3.scale(Fraction(-1, 6)),
    (T3.scale(Fraction(1, 192)) + Fraction(11, 96)) * T3,
    -((T3.scale(Fraction(1, 240)) + Fraction(1, 12)) * T3),
    (T6.scale(Fraction(1, 34560)) + T3.scale(Fraction(23, 5760)) + Fraction(137, 2160)) * T3,
]


def _report(identity: str, residual: ZSeries, **params) -> ResidualReport:
    first = residual.first_nonzero_order()
    if first is not None:
        logger.warning("%s: residual nonzero at z^%d", identity, first)
    return ResidualReport(
        identity=identity,
        params={k: str(v) for k, v in params.items()},
        order=residual.order,
        zero=first is None,
        first_nonzero_order=first,
    )


def family_series(family, N: int, alpha=None, method: Optional[Method] = None) -> ZSeries:
    """sum_{n<=N} P_n(t) z^n for the tagged family."""
    if N < 1:
        raise ArgumentError(f"series order must be at least 1, got {N}")
    table = family_table(family, max(N, 2), alpha, method)
    return ZSeries(table.entries[: N + 1], N)


def ode_residual(family, N: int) -> ZSeries:
    family = Family(family)
    if family not in ODE_OPERATORS:
        raise ArgumentError(f"no differential operator is known for family {family.value}")
    if N < 3:
        raise ArgumentError(f"ode residual needs order at least 3, got {N}")
    return zseries_apply(ODE_OPERATORS[family], family_series(family, N))


def ode_report(family, N: int) -> ResidualReport:
    family = Family(family)
    return _report(f"ode-{family.value}", ode_residual(family, N), family=family.value, N=N)


def sixth_order_residual(N: int = 12) -> ZSeries:
    """The sixth-order operator on A(z;t); four derivative letters are consumed."""
    if N < 6:
        raise ArgumentError(f"the sixth-order operator needs order at least 6, got {N}")
    return zseries_apply(A_SIXTH, family_series(Family.A, N))


def sixth_order_report(N: int = 12) -> ResidualReport:
    return _report("ode-A-sixth", sixth_order_residual(N), N=N)


def product_truncation(J: int, L: int) -> List[Fraction]:
    """Elementary symmetric functions e_0..e_L of {1/j^3 : j <= J}."""
    if L < 0:
        raise ArgumentError(f"L must be non-negative, got {L}")
    if L > J:
        raise ArgumentError(f"e_{L} of {J} terms is identically zero; need J >= L")
    e = [Fraction(1)] + [Fraction(0)] * L
    for j in range(1, J + 1):
        w = Fraction(1, j**3)
        for l in range(min(L, j), 0, -1):
            e[l] += e[l - 1] * w
    return e


def product_tail_bound(e_prev: float, J: int) -> float:
    """Bound on e_l(infinity) - e_l(J) given a bound on e_{l-1}."""
    return e_prev / (2 * J * J)


def c_product_limit(nmax: int) -> ResidualReport:
    """sum_{k<=n} C_k equals prod_{j<=n} (1 + t^3/j^3) exactly."""
    if nmax < 1:
        raise ArgumentError(f"nmax must be at least 1, got {nmax}")
    partial = ONE
    product = ONE
    first = None
    for n in range(1, nmax + 1):
        partial = partial + c_coeff(n)
        product = product * (T3.scale(Fraction(1, n**3)) + 1)
        if first is None and partial != product:
            first = n
    if first is not None:
        logger.warning("c-product: partial sum differs at n=%d", first)
    return ResidualReport(
        identity="c-product", params={"nmax": str(nmax)}, order=nmax, zero=first is None, first_nonzero_order=first
    )


def binomial_series(e, N: int) -> ZSeries:
    """(1 - z)^e truncated at z^N."""
    if N < 0:
        raise ArgumentError(f"N must be non-negative, got {N}")
    e = as_rational(e)
    coeffs = [Fraction(1)]
    for n in range(N):
        coeffs.append(-coeffs[-1] * (e - n) / (n + 1))
    return ZSeries(coeffs, N)


def lemma5_residual(alpha, N: int) -> ZSeries:
    """sum B_n^alpha z^n - (1-z)^(1-2 alpha) sum B_n^(1-alpha) z^n."""
    alpha = as_rational(alpha)
    left = family_series(Family.BALPHA, N, alpha)
    right = binomial_series(1 - 2 * alpha, N) * family_series(Family.BALPHA, N, 1 - alpha)
    return left - right


def lemma5_report(alpha, N: int) -> ResidualReport:
    alpha = as_rational(alpha)
    return _report("lemma5", lemma5_residual(alpha, N), alpha=rational_text(alpha), N=N)


def reproduce_a_series() -> ResidualReport:
    """Compare A_0..A_6 from the recurrence with the printed expansion."""
    computed = family_series(Family.A, 6)
    residual = computed - ZSeries(A_SERIES_LITERAL, 6)
    return _report("aseries", residual, N=6)


def _rational(c) -> Fraction:
    if isinstance(c, Cyclo):
        if not c.is_rational:
            raise ArgumentError(f"{c} is not rational")
        return c.re
    return Fraction(c)


def _pochhammers(a, N: int) -> List:
    """(a)_0, ..., (a)_N."""
    out = [Fraction(1)]
    for j in range(N):
        out.append(out[-1] * (a + j))
    return out


def _omega_pair(base: Fraction, c: Fraction, N: int) -> List[Fraction]:
    """(base + omega c)_n (base + omega^2 c)_n for n <= N, computed over Q(omega)."""
    first = _pochhammers(Cyclo(base) + OMEGA * c, N)
    second = _pochhammers(Cyclo(base) + OMEGA2 * c, N)
    return [_rational(x * y) for x, y in zip(first, second)]


def _check_poles(values: List[Fraction], t0: Fraction) -> None:
    for n, v in enumerate(values):
        if not v:
            raise PoleAtSample(rational_text(t0), n)


def cdh_generating_check(alpha, t0, N: int, gamma=None) -> CdhReport:
    """
    Compare both sides of a continuous-dual-Hahn generating function at t = t0.

    Without gamma the 2F1 form is used, otherwise the 3F2 form whose argument
    z/(z-1) is itself a truncated series.
    """
    alpha, t0 = as_rational(alpha), as_rational(t0)
    if N < 1:
        raise ArgumentError(f"N must be at least 1, got {N}")
    values = [p(t0) for p in b_alpha(alpha, N).entries]
    factorials = [math.factorial(n) for n in range(N + 1)]

    if gamma is None:
        lower = _pochhammers(alpha - t0, N)
        _check_poles(lower, t0)
        upper = _omega_pair(alpha, t0, N)
        lhs = ZSeries([factorials[n] / lower[n] * values[n] for n in range(N + 1)], N)
        hyper = ZSeries([upper[k] / (lower[k] * factorials[k]) for k in range(N + 1)], N)
        rhs = binomial_series(-t0, N) * hyper
        identity = "cdh-2F1"
        params = {"alpha": rational_text(alpha), "t0": rational_text(t0)}
    else:
        gamma = as_rational(gamma)
        lower = _omega_pair(alpha, -t0, N)
        _check_poles(lower, t0)
        g = _pochhammers(gamma, N)
        a = _pochhammers(alpha + t0, N)
        b = _pochhammers(t0, N)
        lhs = ZSeries([g[n] * factorials[n] / lower[n] * values[n] for n in range(N + 1)], N)
        hyper = ZSeries([g[k] * a[k] * b[k] / (lower[k] * factorials[k]) for k in range(N + 1)], N)
        argument = ZSeries([0] + [-1] * N, N)
        rhs = binomial_series(-gamma, N) * hyper.compose(argument)
        identity = "cdh-3F2"
        params = {"alpha": rational_text(alpha), "t0": rational_text(t0), "gamma": rational_text(gamma)}

    residual = lhs - rhs
    first = residual.first_nonzero_order()
    if first is not None:
        logger.warning("%s at %s: residual nonzero at z^%d", identity, params, first)
    return CdhReport(
        identity=identity,
        params=params,
        order=residual.order,
        samples=1,
        zero=first is None,
        first_nonzero_order=first,
    )
