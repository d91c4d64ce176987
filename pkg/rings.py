"""
Exact arithmetic foundation: rationals, the ring Q(omega) of Eisenstein
rationals, dense polynomials in t, truncated power series in z with polynomial
coefficients, and the operator words acting on those series.

Everything here is immutable and exact; no floating point is involved.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from error_handler import ArgumentError, NonRationalResult, OrderUnderflow

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ArgumentError(f"not a rational number: {value!r}") from e
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rational_text(value: Fraction) -> str:
    """Canonical text form: 'p/q', or 'p' when q = 1."""
    return str(Fraction(value))


class Cyclo:
    """The element re + wc*omega of Q(omega), where omega^2 = -1 - omega."""

    __slots__ = ("re", "wc")

    def __init__(self, re=0, wc=0):
        self.re = Fraction(re)
        self.wc = Fraction(wc)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo(other, 0)
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.re + other, self.wc)
        if isinstance(other, Cyclo):
            return Cyclo(self.re + other.re, self.wc + other.wc)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(-self.re, -self.wc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclo(self.re - other.re, self.wc - other.wc)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.re * other, self.wc * other)
        if isinstance(other, Cyclo):
            a, b, c, d = self.re, self.wc, other.re, other.wc
            bd = b * d
            return Cyclo(a * c - bd, a * d + b * c - bd)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclo":
        """omega -> omega^2."""
        return Cyclo(self.re - self.wc, -self.wc)

    def norm(self) -> Fraction:
        return self.re * self.re - self.re * self.wc + self.wc * self.wc

    def inverse(self) -> "Cyclo":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero has no inverse in Q(omega)")
        return self.conjugate() * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.re / other, self.wc / other)
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        result = Cyclo(1)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.wc == other.wc

    def __hash__(self):
        if not self.wc:
            return hash(self.re)
        return hash((self.re, self.wc))

    def __bool__(self):
        return bool(self.re) or bool(self.wc)

    @property
    def is_rational(self) -> bool:
        return not self.wc

    def __repr__(self):
        return f"Cyclo({self.re!r}, {self.wc!r})"

    def __str__(self):
        if not self.wc:
            return rational_text(self.re)
        if not self.re:
            return f"{rational_text(self.wc)}w"
        sign = "+" if self.wc > 0 else "-"
        return f"({rational_text(self.re)}{sign}{rational_text(abs(self.wc))}w)"


OMEGA = Cyclo(0, 1)
OMEGA2 = Cyclo(-1, -1)

Scalar = Union[Fraction, Cyclo]
_SCALARS = (int, Fraction, Cyclo)


def _canonical(c):
    return Fraction(c) if isinstance(c, int) else c


def _scalar_text(c) -> str:
    return str(c) if isinstance(c, Cyclo) else rational_text(c)


class TPoly:
    """Dense polynomial in t, coefficients indexed by power, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        coeffs = [_canonical(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs: Tuple[Scalar, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> "TPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, power: int) -> "TPoly":
        return cls([0] * power + [c])

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, power: int):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def exponents(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(c, Cyclo) or c.is_rational for c in self.coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, TPoly):
            return other
        if isinstance(other, _SCALARS):
            return TPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> "TPoly":
        if not c:
            return ZERO
        return TPoly(x * c for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return TPoly(out)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Cyclo):
            return self.scale(other.inverse())
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "TPoly":
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def mul_linear(self, a0, a1) -> "TPoly":
        """Multiply by the linear factor a0 + a1*t."""
        c = self.coeffs
        if not c:
            return ZERO
        out = [c[0] * a0]
        for i in range(1, len(c)):
            out.append(c[i] * a0 + c[i - 1] * a1)
        out.append(c[-1] * a1)
        return TPoly(out)

    def __call__(self, value):
        """Evaluate at a scalar by Horner's rule."""
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def to_strings(self) -> List[str]:
        if not self.is_rational:
            raise NonRationalResult(next(i for i, c in enumerate(self.coeffs) if isinstance(c, Cyclo) and c.wc))
        return [rational_text(c.re if isinstance(c, Cyclo) else c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "TPoly":
        return cls(as_rational(str(s)) for s in items)

    def __repr__(self):
        return f"TPoly({[_scalar_text(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for power in reversed(range(len(self.coeffs))):
            c = self.coeffs[power]
            if not c:
                continue
            if power == 0:
                terms.append(_scalar_text(c))
            elif c == 1:
                terms.append("t" if power == 1 else f"t^{power}")
            else:
                terms.append(f"{_scalar_text(c)}*t" + ("" if power == 1 else f"^{power}"))
        return " + ".join(terms).replace("+ -", "- ")


ZERO = TPoly()
ONE = TPoly((1,))
T = TPoly((0, 1))


def pochhammer_linear(c, a, k: int) -> TPoly:
    """(a + c*t)_k = prod_{j<k} (a + c*t + j)."""
    if k < 0:
        raise ArgumentError(f"Pochhammer length must be non-negative, got {k}")
    p = ONE
    for j in range(k):
        p = p.mul_linear(a + j, c)
    return p


def cyclo_pochhammer(a: Scalar, k: int) -> Scalar:
    """Scalar shifted factorial (a)_k."""
    result = Fraction(1)
    for j in range(k):
        result = result * (a + j)
    return result


def cyclo_project(p: TPoly) -> TPoly:
    """Strip the omega components; they must all vanish."""
    out = []
    for i, c in enumerate(p.coeffs):
        if isinstance(c, Cyclo):
            if c.wc:
                raise NonRationalResult(i)
            out.append(c.re)
        else:
            out.append(c)
    return TPoly(out)


def embed(p: TPoly) -> TPoly:
    """View a rational polynomial over Q(omega)."""
    return TPoly(c if isinstance(c, Cyclo) else Cyclo(c) for c in p.coeffs)


class ZSeries:
    """Power series in z truncated at z^order, with TPoly coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ArgumentError(f"series order must be non-negative, got {order}")
        lifted = [c if isinstance(c, TPoly) else TPoly.constant(c) for c in list(coeffs)[: order + 1]]
        lifted.extend([ZERO] * (order + 1 - len(lifted)))
        self.order = order
        self.coeffs: Tuple[TPoly, ...] = tuple(lifted)

    @classmethod
    def zero(cls, order: int) -> "ZSeries":
        return cls([], order)

    def coefficient(self, n: int) -> TPoly:
        return self.coeffs[n]

    def truncate(self, order: int) -> "ZSeries":
        return ZSeries(self.coeffs, min(order, self.order))

    def __add__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return ZSeries([self.coeffs[n] + other.coeffs[n] for n in range(order + 1)], order)

    def __neg__(self):
        return ZSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, p) -> "ZSeries":
        return ZSeries([c * p for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (TPoly,) + _SCALARS):
            return self.scale(other)
        if not isinstance(other, ZSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = []
        for n in range(order + 1):
            acc = ZERO
            for k in range(n + 1):
                a, b = self.coeffs[k], other.coeffs[n - k]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return ZSeries(out, order)

    def __rmul__(self, other):
        if isinstance(other, (TPoly,) + _SCALARS):
            return self.scale(other)
        return NotImplemented

    def shift(self) -> "ZSeries":
        """Multiply by z; one more order becomes known."""
        return ZSeries((ZERO,) + self.coeffs, self.order + 1)

    def derivative(self) -> "ZSeries":
        if self.order < 1:
            raise OrderUnderflow(1, self.order)
        return ZSeries([self.coeffs[n + 1] * (n + 1) for n in range(self.order)], self.order - 1)

    def theta(self) -> "ZSeries":
        """z d/dz, termwise n*c_n; the order is preserved."""
        return ZSeries([c * n for n, c in enumerate(self.coeffs)], self.order)

    def d_minus(self) -> "ZSeries":
        """(1 - z) d/dz."""
        if self.order < 1:
            raise OrderUnderflow(1, self.order)
        c = self.coeffs
        return ZSeries([c[m + 1] * (m + 1) - c[m] * m for m in range(self.order)], self.order - 1)

    def d_plus(self) -> "ZSeries":
        """(1 + z) d/dz."""
        if self.order < 1:
            raise OrderUnderflow(1, self.order)
        c = self.coeffs
        return ZSeries([c[m + 1] * (m + 1) + c[m] * m for m in range(self.order)], self.order - 1)

    def reflect(self) -> "ZSeries":
        """z -> -z."""
        return ZSeries([c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)], self.order)

    def compose(self, w: "ZSeries") -> "ZSeries":
        """Substitute a series w with zero constant term for z."""
        if w.coeffs[0]:
            raise ArgumentError("composition needs an inner series without constant term")
        order = min(self.order, w.order)
        result = ZSeries([self.coeffs[order]], order)
        for n in reversed(range(order)):
            result = result * w + ZSeries([self.coeffs[n]], order)
        return result

    def first_nonzero_order(self):
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    @property
    def is_zero(self) -> bool:
        return self.first_nonzero_order() is None

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"ZSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            if n == 0:
                terms.append(str(c))
                continue
            body = str(c) if len(c.exponents()) == 1 else f"({c})"
            terms.append(f"{body}*z" + ("" if n == 1 else f"^{n}"))
        return (" + ".join(terms) or "0") + f" + O(z^{self.order + 1})"


class Letter(str, Enum):
    THETA = "theta"
    DMINUS = "D-"
    DPLUS = "D+"
    REFLECT = "R"


_ACTIONS = {
    Letter.THETA: ZSeries.theta,
    Letter.DMINUS: ZSeries.d_minus,
    Letter.DPLUS: ZSeries.d_plus,
    Letter.REFLECT: ZSeries.reflect,
}

_CONSUMING = {Letter.DMINUS, Letter.DPLUS}

Word = Tuple[Letter, ...]


class Operator:
    """Formal sum of coefficient*word terms; a word acts right to left."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[TPoly, Word]] = ()):
        self.terms: Tuple[Tuple[TPoly, Word], ...] = tuple(
            (c if isinstance(c, TPoly) else TPoly.constant(c), tuple(word)) for c, word in terms
        )

    @classmethod
    def letter(cls, letter: Letter) -> "Operator":
        return cls([(ONE, (letter,))])

    @classmethod
    def identity(cls) -> "Operator":
        return cls([(ONE, ())])

    @property
    def consumed(self) -> int:
        """Orders lost when applied: the most derivative letters in any word."""
        return max((sum(1 for x in word if x in _CONSUMING) for _, word in self.terms), default=0)

    def __add__(self, other):
        if isinstance(other, (TPoly,) + _SCALARS):
            other = Operator([(other, ())])
        if not isinstance(other, Operator):
            return NotImplemented
        return Operator(self.terms + other.terms)

    def __neg__(self):
        return Operator((-c, w) for c, w in self.terms)

    def __sub__(self, other):
        if isinstance(other, (TPoly,) + _SCALARS):
            other = Operator([(other, ())])
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Composition; coefficients depend on t only and commute with every letter."""
        if isinstance(other, (TPoly,) + _SCALARS):
            return Operator((c * other, w) for c, w in self.terms)
        if not isinstance(other, Operator):
            return NotImplemented
        return Operator((c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms)

    def __rmul__(self, other):
        if isinstance(other, (TPoly,) + _SCALARS):
            return Operator((other * c, w) for c, w in self.terms)
        return NotImplemented

    def __pow__(self, k: int) -> "Operator":
        result = Operator.identity()
        for _ in range(k):
            result = result * self
        return result

    def __str__(self):
        parts = []
        for c, word in self.terms:
            letters = "".join(f"[{x.value}]" for x in word) or "1"
            parts.append(letters if c == ONE else f"({c}){letters}")
        return " + ".join(parts) or "0"


THETA = Operator.letter(Letter.THETA)
D_MINUS = Operator.letter(Letter.DMINUS)
D_PLUS = Operator.letter(Letter.DPLUS)
REFLECT = Operator.letter(Letter.REFLECT)


def zseries_apply(op: Operator, s: ZSeries) -> ZSeries:
    """Apply an operator to a truncated series."""
    if op.consumed > s.order:
        raise OrderUnderflow(op.consumed, s.order)
    result = ZSeries.zero(s.order - op.consumed)
    for coefficient, word in op.terms:
        r = s
        for letter in reversed(word):
            r = _ACTIONS[letter](r)
        result = result + r.scale(coefficient)
    return result
