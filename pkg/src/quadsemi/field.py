"""Exact arithmetic in the ring of integers of a real quadratic field.

Every element of O_K is stored in the integral basis {1, omega_D}, where
omega_D = sqrt(D) if D = 2, 3 (mod 4) and omega_D = (1 + sqrt(D))/2 if
D = 1 (mod 4). Signs at the two real embeddings are decided by integer
casework only; no floating point value is ever computed.
"""
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from quadsemi.errors import FieldMismatchError, InvalidFieldError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class Embedding(enum.Enum):
    """The two real embeddings of a real quadratic field."""

    FIRST = 'first'
    SECOND = 'second'


def surd_sign(A: int, B: int, n: int) -> int:
    """Return the sign of A + B*sqrt(n) for integers A, B and n > 0.

    Examples:
        >>> surd_sign(3, -1, 2)
        1
        >>> surd_sign(1, -1, 2)
        -1
        >>> surd_sign(0, 0, 7)
        0
        >>> surd_sign(-3, 1, 9)
        0
    """
    if A >= 0 and B >= 0:
        return 0 if A == 0 and B == 0 else 1
    if A <= 0 and B <= 0:
        return -1
    # Opposite signs: compare A^2 with B^2 n
    diff = A * A - B * B * n
    if diff == 0:
        return 0
    if A > 0:
        return 1 if diff > 0 else -1
    return 1 if diff < 0 else -1


def _square_factor(D: int) -> Optional[int]:
    """Return the smallest square p^2 > 1 dividing D, or None.

    Examples:
        >>> _square_factor(12)
        4
        >>> _square_factor(30) is None
        True
    """
    p = 2
    while p * p <= D:
        if D % (p * p) == 0:
            return p * p
        p += 1
    return None


@dataclass(frozen=True)
class FieldContext:
    """A validated real quadratic field Q(sqrt(D)) with its derived constants.

    Instance Attributes:
        D: A squarefree integer at least 2.
        delta: The discriminant of the field.
        omega_case: D mod 4, selecting the shape of omega_D.
        trace_omega: The trace of omega_D (0 or 1).
        norm_omega: The norm of omega_D (-D or (1 - D)/4).
    """

    D: int
    delta: int
    omega_case: int
    trace_omega: int
    norm_omega: int

    def element(self, a: int, b: int = 0) -> 'QuadInt':
        """Return the element a + b*omega_D of this field."""
        return QuadInt(a, b, self)

    @property
    def one(self) -> 'QuadInt':
        """The multiplicative identity."""
        return QuadInt(1, 0, self)

    @property
    def zero(self) -> 'QuadInt':
        """The additive identity."""
        return QuadInt(0, 0, self)

    @property
    def omega(self) -> 'QuadInt':
        """The basis element omega_D."""
        return QuadInt(0, 1, self)

    def __str__(self) -> str:
        return f'Q(sqrt({self.D}))'


@lru_cache(maxsize=None)
def make_context(D: int) -> FieldContext:
    """Return the field context for Q(sqrt(D)).

    Contexts are cached, so calling this twice with the same D returns the
    same object.

    Args:
        D: A squarefree integer at least 2.

    Raises:
        InvalidFieldError: If D < 2 or D has a square factor.

    Examples:
        >>> make_context(2).delta
        8
        >>> ctx = make_context(5)
        >>> (ctx.delta, ctx.trace_omega, ctx.norm_omega)
        (5, 1, -1)
    """
    if isinstance(D, bool) or not isinstance(D, int):
        raise TypeError(f'D must be an int, got {type(D).__name__}')
    if D < 2:
        raise InvalidFieldError(D)

    factor = _square_factor(D)
    if factor is not None:
        raise InvalidFieldError(D, factor)

    case = D % 4
    if case == 1:
        ctx = FieldContext(D=D, delta=D, omega_case=case,
                           trace_omega=1, norm_omega=(1 - D) // 4)
    else:
        ctx = FieldContext(D=D, delta=4 * D, omega_case=case,
                           trace_omega=0, norm_omega=-D)

    logger.debug('Created context for %s (delta=%d)', ctx, ctx.delta)
    return ctx


def is_squarefree(D: int) -> bool:
    """Return whether D >= 2 is squarefree.

    Examples:
        >>> [d for d in range(2, 13) if is_squarefree(d)]
        [2, 3, 5, 6, 7, 10, 11]
    """
    return D >= 2 and _square_factor(D) is None


@dataclass(frozen=True, eq=False)
class Surd:
    """The real number rational + irrational*sqrt(radicand), kept exact.

    The radicand is a positive non-square integer (always the discriminant
    of the field in this package), so two surds are equal exactly when
    their coordinates are.

    Examples:
        >>> s = Surd(1, 1, 8)
        >>> (s * s.conjugate()).rational
        Fraction(-7, 1)
        >>> Surd(3, -1, 8).sign()
        1
        >>> Surd(Fraction(1, 2), Fraction(1, 2), 5).floor()
        1
    """

    rational: Fraction
    irrational: Fraction
    radicand: int

    def __post_init__(self) -> None:
        object.__setattr__(self, 'rational', Fraction(self.rational))
        object.__setattr__(self, 'irrational', Fraction(self.irrational))

    def _coerce(self, other: Union['Surd', Rational]) -> 'Surd':
        if isinstance(other, Surd):
            if other.radicand != self.radicand:
                raise ValueError(f'Radicand mismatch: {self.radicand} and '
                                 f'{other.radicand}')
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(other, 0, self.radicand)
        return NotImplemented

    def __add__(self, other: Union['Surd', Rational]) -> 'Surd':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Surd(self.rational + other.rational,
                    self.irrational + other.irrational, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> 'Surd':
        return Surd(-self.rational, -self.irrational, self.radicand)

    def __sub__(self, other: Union['Surd', Rational]) -> 'Surd':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> 'Surd':
        return (-self) + other

    def __mul__(self, other: Union['Surd', Rational]) -> 'Surd':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p, q = self.rational, self.irrational
        r, s = other.rational, other.irrational
        return Surd(p * r + q * s * self.radicand, p * s + q * r, self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other: Union['Surd', Rational]) -> 'Surd':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        denominator = other.norm()
        if denominator == 0:
            raise ZeroDivisionError('division by zero surd')
        numerator = self * other.conjugate()
        return Surd(numerator.rational / denominator,
                    numerator.irrational / denominator, self.radicand)

    def __rtruediv__(self, other: Rational) -> 'Surd':
        return Surd(other, 0, self.radicand) / self

    def conjugate(self) -> 'Surd':
        """Return rational - irrational*sqrt(radicand)."""
        return Surd(self.rational, -self.irrational, self.radicand)

    def norm(self) -> Fraction:
        """Return the product of this surd with its conjugate."""
        return self.rational ** 2 - self.irrational ** 2 * self.radicand

    def sign(self) -> int:
        """Return the sign (-1, 0 or 1) of this real number."""
        L = math.lcm(self.rational.denominator, self.irrational.denominator)
        A = self.rational.numerator * (L // self.rational.denominator)
        B = self.irrational.numerator * (L // self.irrational.denominator)
        return surd_sign(A, B, self.radicand)

    def floor(self) -> int:
        """Return the largest integer not exceeding this real number."""
        C = math.lcm(self.rational.denominator, self.irrational.denominator)
        A = self.rational.numerator * (C // self.rational.denominator)
        B = self.irrational.numerator * (C // self.irrational.denominator)
        root = math.isqrt(B * B * self.radicand)
        if B >= 0:
            return (A + root) // C
        # -sqrt(B^2 n) is irrational unless B == 0, so its floor is -root - 1
        return (A - root - 1) // C

    def ceil(self) -> int:
        """Return the smallest integer not below this real number."""
        return -((-self).floor())

    def _compare(self, other: Union['Surd', Rational]) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f'Cannot compare Surd with {type(other).__name__}')
        return (self - other).sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self._compare(other) == 0

    def __hash__(self) -> int:
        return hash((self.rational, self.irrational, self.radicand))

    def __lt__(self, other: Union['Surd', Rational]) -> bool:
        return self._compare(other) < 0

    def __le__(self, other: Union['Surd', Rational]) -> bool:
        return self._compare(other) <= 0

    def __gt__(self, other: Union['Surd', Rational]) -> bool:
        return self._compare(other) > 0

    def __ge__(self, other: Union['Surd', Rational]) -> bool:
        return self._compare(other) >= 0

    def __str__(self) -> str:
        return f'{self.rational}{self.irrational:+}*sqrt({self.radicand})'


@dataclass(frozen=True)
class QuadInt:
    """The algebraic integer a + b*omega_D of a fixed field.

    Instance Attributes:
        a: The coefficient of 1.
        b: The coefficient of omega_D.
        ctx: The field the element belongs to.

    Examples:
        >>> ctx = make_context(2)
        >>> x = ctx.element(1, 1)
        >>> x * ctx.element(-1, 1)
        QuadInt(1, 0; D=2)
        >>> (x.norm(), x.trace())
        (-1, 2)
    """

    a: int
    b: int
    ctx: FieldContext

    def _coerce(self, other: Union['QuadInt', int]) -> 'QuadInt':
        if isinstance(other, QuadInt):
            if other.ctx != self.ctx:
                raise FieldMismatchError(self.ctx.D, other.ctx.D)
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.ctx)
        return NotImplemented

    def __add__(self, other: Union['QuadInt', int]) -> 'QuadInt':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadInt(self.a + other.a, self.b + other.b, self.ctx)

    __radd__ = __add__

    def __neg__(self) -> 'QuadInt':
        return QuadInt(-self.a, -self.b, self.ctx)

    def __sub__(self, other: Union['QuadInt', int]) -> 'QuadInt':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadInt(self.a - other.a, self.b - other.b, self.ctx)

    def __rsub__(self, other: int) -> 'QuadInt':
        return (-self) + other

    def __mul__(self, other: Union['QuadInt', int]) -> 'QuadInt':
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # omega^2 = Tr(omega)*omega - N(omega)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return QuadInt(a * c - bd * self.ctx.norm_omega,
                       a * d + b * c + bd * self.ctx.trace_omega,
                       self.ctx)

    __rmul__ = __mul__

    def scale(self, k: int) -> 'QuadInt':
        """Return k times this element."""
        return QuadInt(k * self.a, k * self.b, self.ctx)

    def __pow__(self, exponent: int) -> 'QuadInt':
        if exponent < 0:
            raise ValueError('negative powers are not integral in general')
        result, base = self.ctx.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> 'QuadInt':
        """Return the Galois conjugate a + b*omega_D'."""
        return QuadInt(self.a + self.b * self.ctx.trace_omega, -self.b, self.ctx)

    def norm(self) -> int:
        """Return N(x) = x*x' as an integer."""
        return (self.a * self.a + self.a * self.b * self.ctx.trace_omega
                + self.b * self.b * self.ctx.norm_omega)

    def trace(self) -> int:
        """Return Tr(x) = x + x' as an integer."""
        return 2 * self.a + self.b * self.ctx.trace_omega

    def is_zero(self) -> bool:
        """Return whether this is the zero element."""
        return self.a == 0 and self.b == 0

    def sqrt_form(self) -> tuple[int, int, int]:
        """Return (x, y, k) such that this element equals (x + y*sqrt(D))/k.

        Examples:
            >>> make_context(5).omega.sqrt_form()
            (1, 1, 2)
            >>> make_context(3).element(2, 1).sqrt_form()
            (2, 1, 1)
        """
        if self.ctx.omega_case == 1:
            return 2 * self.a + self.b, self.b, 2
        return self.a, self.b, 1

    def embed(self, which: Embedding = Embedding.FIRST) -> Surd:
        """Return the value at the given embedding as a surd in sqrt(delta)."""
        # omega = (Tr(omega) + sqrt(delta))/2 in both cases
        b = self.b if which is Embedding.FIRST else -self.b
        return Surd(Fraction(2 * self.a + self.b * self.ctx.trace_omega, 2),
                    Fraction(b, 2), self.ctx.delta)

    def sign(self, which: Embedding = Embedding.FIRST) -> int:
        """Return the sign of this element at the given embedding."""
        x, y, _ = self.sqrt_form()
        if which is Embedding.SECOND:
            y = -y
        return surd_sign(x, y, self.ctx.D)

    def is_totally_positive(self) -> bool:
        """Return whether this element is positive at both embeddings."""
        return self.sign(Embedding.FIRST) > 0 and self.sign(Embedding.SECOND) > 0

    def is_totally_nonnegative(self) -> bool:
        """Return whether this element is zero or totally positive."""
        return self.is_zero() or self.is_totally_positive()

    def __repr__(self) -> str:
        return f'QuadInt({self.a}, {self.b}; D={self.ctx.D})'

    def __str__(self) -> str:
        return f'{self.a}{self.b:+}w'


def compare_embedding(x: QuadInt, y: Union[QuadInt, int],
                      which: Embedding = Embedding.FIRST) -> int:
    """Compare two elements at one real embedding.

    Returns:
        -1, 0 or 1 as x is less than, equal to or greater than y there.

    Examples:
        >>> ctx = make_context(2)
        >>> compare_embedding(ctx.element(1, 1), 2)
        1
        >>> compare_embedding(ctx.element(1, 1), 2, Embedding.SECOND)
        -1
    """
    return (x - y).sign(which)


def succ(x: QuadInt, y: Union[QuadInt, int]) -> bool:
    """Return whether x is totally greater than y, i.e. x - y is totally positive.

    Examples:
        >>> ctx = make_context(2)
        >>> succ(ctx.element(4), ctx.element(2, 1))
        True
        >>> succ(ctx.element(2, 1), ctx.element(4))
        False
    """
    return (x - y).is_totally_positive()


def succeq(x: QuadInt, y: Union[QuadInt, int]) -> bool:
    """Return whether x - y is zero or totally positive."""
    return (x - y).is_totally_nonnegative()
