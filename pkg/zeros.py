"""
Exact certification that a polynomial in x = t^3 has all its real roots, and
only real roots, on the half-line (-inf, 0].

Counting uses Sturm chains of the squarefree part over Q; floating-point root
finding is only consulted as a sanity signal.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp

from error_handler import ArgumentError, NotInT3
from families import Family, FamilyTable, family_table
from models import CertificateBatch, ZeroCertificate
from rings import TPoly, as_rational, rational_text

logger = logging.getLogger(__name__)

X = sp.Symbol("x")

Bound = Union[Fraction, int, float]


def _to_sympy(c) -> sp.Rational:
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def _to_fraction(r) -> Fraction:
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


@dataclass(frozen=True)
class XPoly:
    """Polynomial in x over Q, held as a sympy Poly."""

    poly: sp.Poly

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "XPoly":
        """Build from ascending coefficients."""
        desc = [_to_sympy(c) for c in reversed(list(coeffs))] or [sp.Integer(0)]
        return cls(sp.Poly.from_list(desc, X, domain=sp.QQ))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else int(self.poly.degree())

    def coefficients(self) -> List[Fraction]:
        if self.is_zero:
            return []
        return [_to_fraction(c) for c in reversed(self.poly.all_coeffs())]

    def leading_coefficient(self) -> Fraction:
        return _to_fraction(self.poly.LC())

    def __call__(self, value) -> Fraction:
        return _to_fraction(self.poly.eval(_to_sympy(value)))

    def __str__(self):
        return str(self.poly.as_expr())


def to_x_poly(p: TPoly) -> XPoly:
    """Substitute x = t^3."""
    for e in p.exponents():
        if e % 3:
            raise NotInT3(e)
    return XPoly.from_coefficients([p.coefficient(3 * k) for k in range(p.degree // 3 + 1)] if p else [])


def _normalize(q: sp.Poly) -> sp.Poly:
    """Positive rescaling to a primitive integer polynomial."""
    if q.is_zero:
        return q
    coeffs = [_to_fraction(c) for c in q.all_coeffs()]
    denominators = math.lcm(*(c.denominator for c in coeffs))
    numerators = math.gcd(*(c.numerator for c in coeffs))
    return q.mul_ground(sp.Rational(denominators, numerators))


@dataclass(frozen=True)
class SturmChain:
    polys: Tuple[XPoly, ...]

    def __len__(self):
        return len(self.polys)

    def signs_at(self, x: Bound) -> List[int]:
        """Signs of every element at x; x may be +-inf."""
        out = []
        for q in self.polys:
            if isinstance(x, float) and math.isinf(x):
                lead = q.leading_coefficient()
                s = 1 if lead > 0 else -1
                if x < 0 and q.degree % 2:
                    s = -s
                out.append(s)
            else:
                v = q(x)
                out.append((v > 0) - (v < 0))
        return out

    def variations(self, x: Bound) -> int:
        return sign_variations(self.signs_at(x))


def sturm_chain(p: XPoly) -> SturmChain:
    """p, p', then negated remainders, each made primitive; stops before the zero remainder."""
    if p.degree < 1:
        raise ArgumentError(f"a Sturm chain needs degree at least 1, got {p.degree}")
    chain = [_normalize(p.poly), _normalize(p.poly.diff(X))]
    while True:
        remainder = chain[-2].rem(chain[-1])
        if remainder.is_zero:
            break
        chain.append(_normalize(-remainder))
    return SturmChain(tuple(XPoly(q) for q in chain))


def sign_variations(signs: Sequence[int]) -> int:
    """Sign changes in a sequence, zeros dropped."""
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def squarefree_part(p: XPoly) -> XPoly:
    """p / gcd(p, p')."""
    if p.degree < 1:
        return p
    g = p.poly.gcd(p.poly.diff(X))
    return XPoly(p.poly.exquo(g))


def count_real_roots(p: XPoly, lo: Bound = -math.inf, hi: Bound = math.inf) -> int:
    """Distinct real roots of p in (lo, hi]."""
    if p.is_zero:
        raise ArgumentError("the zero polynomial has no finite root count")
    sqfree = squarefree_part(p)
    if sqfree.degree < 1:
        return 0
    chain = sturm_chain(sqfree)
    return chain.variations(lo) - chain.variations(hi)


def cauchy_bound(p: XPoly) -> Fraction:
    """Every root has absolute value below this."""
    coeffs = p.coefficients()
    lead = abs(coeffs[-1])
    return 1 + max((abs(c) / lead for c in coeffs[:-1]), default=Fraction(0))


def isolate_positive_root(p: XPoly) -> Optional[Tuple[Fraction, Fraction]]:
    """An interval (lo, hi] with 0 <= lo holding exactly one positive root, or None."""
    lo, hi = Fraction(0), cauchy_bound(p)
    if count_real_roots(p, lo, hi) == 0:
        return None
    while count_real_roots(p, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_real_roots(p, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def float_real_root_count(p: XPoly, tol: float = 1e-7) -> int:
    """Distinct real roots according to numpy; not authoritative."""
    sqfree = squarefree_part(p)
    if sqfree.degree < 1:
        return 0
    roots = np.roots([float(c) for c in reversed(sqfree.coefficients())])
    scale = max(1.0, float(np.max(np.abs(roots))))
    return int(np.sum(np.abs(roots.imag) <= tol * scale))


def certify_nonpositive(p: XPoly, family: Optional[str] = None, n: Optional[int] = None,
                        alpha: Optional[str] = None) -> ZeroCertificate:
    """Certify that every root of p is real and lies in (-inf, 0]."""
    if p.is_zero:
        raise ArgumentError("cannot certify the zero polynomial")
    sqfree = squarefree_part(p)
    in_halfline = count_real_roots(p, -math.inf, Fraction(0))
    positive = count_real_roots(p, Fraction(0), math.inf)
    passed = in_halfline == sqfree.degree and positive == 0
    witness = None
    if not passed:
        interval = isolate_positive_root(p)
        if interval is not None:
            witness = [rational_text(interval[0]), rational_text(interval[1])]
        logger.warning("%s n=%s: %d of %d distinct roots in (-inf, 0], witness %s",
                       family or "polynomial", n, in_halfline, sqfree.degree, witness)
    elif sqfree.degree and float_real_root_count(p) != sqfree.degree:
        logger.debug("%s n=%s: float root count disagrees with the exact count", family, n)
    return ZeroCertificate(
        family=family,
        n=n,
        alpha=alpha,
        degree=p.degree,
        degree_sqfree=max(sqfree.degree, 0),
        roots_in_halfline=in_halfline,
        roots_positive=positive,
        root_at_zero=p(0) == 0,
        multiplicity_excess=p.degree - max(sqfree.degree, 0),
        passed=passed,
        witness=witness,
    )


def default_nmin(family: Family) -> int:
    """First index certified for a family."""
    return 1 if family is Family.BALPHA else 2


def certify_family(family, nmax: int, alpha=None, nmin: Optional[int] = None,
                   table: Optional[FamilyTable] = None) -> CertificateBatch:
    """Certify entries nmin..nmax of a family table, viewed in x = t^3."""
    family = Family(family)
    if family is Family.APRIME:
        raise NotInT3(1)
    if nmin is None:
        nmin = default_nmin(family)
    if nmax < nmin:
        raise ArgumentError(f"nmax must be at least {nmin}, got {nmax}")
    alpha_text = None if alpha is None else rational_text(as_rational(alpha))
    if table is None:
        table = family_table(family, nmax, alpha)
    certificates = []
    for n in range(nmin, nmax + 1):
        if not table[n]:
            logger.info("%s n=%d is the zero polynomial; skipped", family.value, n)
            continue
        certificates.append(certify_nonpositive(to_x_poly(table[n]), family.value, n, alpha_text))
    return CertificateBatch(
        family=family.value,
        alpha=alpha_text,
        nmax=nmax,
        certificates=certificates,
        passed=all(c.passed for c in certificates),
    )
