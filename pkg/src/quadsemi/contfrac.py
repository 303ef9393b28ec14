"""The periodic continued fraction of sigma_D and the convergents to omega_D.

sigma_D = omega_D + floor(-omega_D') is a reduced quadratic surd, so its
continued fraction [u_0, u_1, ..., u_{s-1}] is purely periodic. The
expansion is computed with the classical (P, Q) state algorithm on
(P + sqrt(delta))/Q and the period is read off the first repeated state.

The convergents p_i/q_i to omega_D satisfy X_{i+2} = u_{i+2} X_{i+1} + X_i
with q_{-1} = 0, p_{-1} = q_0 = 1 and p_0 = ceil(u_0/2); they are memoized
per field in a table that grows on demand.
"""
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from quadsemi.errors import EngineInvariantError, IndexRangeError
from quadsemi.field import FieldContext, QuadInt, Surd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurdTail:
    """The quadratic surd (P + sqrt(delta))/Q.

    Instance Attributes:
        numerator_shift: The integer P.
        denominator: The positive integer Q; it always divides delta - P^2.
        delta: The field discriminant.
    """

    numerator_shift: int
    denominator: int
    delta: int

    @property
    def value(self) -> Surd:
        """This tail as an exact surd in sqrt(delta)."""
        return Surd(Fraction(self.numerator_shift, self.denominator),
                    Fraction(1, self.denominator), self.delta)

    def partial_quotient(self) -> int:
        """Return floor((P + sqrt(delta))/Q)."""
        return (self.numerator_shift + math.isqrt(self.delta)) // self.denominator

    def advance(self) -> 'SurdTail':
        """Return the tail 1/(x - floor(x)) of this surd x."""
        a = self.partial_quotient()
        P = a * self.denominator - self.numerator_shift
        Q, remainder = divmod(self.delta - P * P, self.denominator)
        if remainder:
            raise EngineInvariantError(
                f'{self.denominator} does not divide {self.delta} - {P}^2')
        return SurdTail(P, Q, self.delta)


@dataclass(frozen=True)
class CFExpansion:
    """One period of the continued fraction of sigma_D.

    Instance Attributes:
        u: The partial quotients u_0, ..., u_{s-1}.
        s: The length of the period.
        s_plus: s if s is even, else 2s.
        p0: ceil(u_0/2), the integer part of omega_D.
        tails: The surd states; tails[k] is [u_k, u_{k+1}, ...].
    """

    u: tuple[int, ...]
    s: int
    s_plus: int
    p0: int
    tails: tuple[SurdTail, ...]

    def quotient(self, k: int) -> int:
        """Return u_k for any k >= 0 using u_{k+s} = u_k."""
        return self.u[k % self.s]

    @property
    def is_palindromic(self) -> bool:
        """Whether u_1, ..., u_{s-1} reads the same in both directions."""
        tail = self.u[1:]
        return tail == tail[::-1]


@dataclass(frozen=True)
class Convergent:
    """The convergent p_i/q_i to omega_D and the derived quantities.

    Instance Attributes:
        i: The index, at least -1.
        p: The numerator p_i.
        q: The denominator q_i.
        alpha: The element alpha_i = p_i - q_i*omega_D'.
        N: |N(alpha_i)|.
        T: The integer T_i with alpha_{i-1}*alpha_i' = T_i + (-1)^(i-1)*omega_D,
            or None for i = -1.
    """

    i: int
    p: int
    q: int
    alpha: QuadInt
    N: int
    T: Optional[int]


@lru_cache(maxsize=None)
def sigma_expand(ctx: FieldContext) -> CFExpansion:
    """Return one period of the continued fraction of sigma_D.

    Examples:
        >>> from quadsemi.field import make_context
        >>> sigma_expand(make_context(2)).u
        (2,)
        >>> sigma_expand(make_context(3)).u
        (2, 1)
        >>> sigma_expand(make_context(13)).u
        (3,)
    """
    root = math.isqrt(ctx.D)
    if ctx.omega_case == 1:
        # sigma = (1 + sqrt(D))/2 + floor((sqrt(D) - 1)/2)
        start = SurdTail(1 + 2 * ((root - 1) // 2), 2, ctx.delta)
    else:
        # sigma = sqrt(D) + floor(sqrt(D)) = (2*root + sqrt(4D))/2
        start = SurdTail(2 * root, 2, ctx.delta)

    tails = [start]
    seen = {(start.numerator_shift, start.denominator): 0}
    while True:
        state = tails[-1].advance()
        key = (state.numerator_shift, state.denominator)
        if key in seen:
            if seen[key] != 0:
                raise EngineInvariantError(
                    f'Expansion of sigma for {ctx} is not purely periodic')
            break
        seen[key] = len(tails)
        tails.append(state)

    u = tuple(t.partial_quotient() for t in tails)
    s = len(u)
    expansion = CFExpansion(u=u, s=s, s_plus=s if s % 2 == 0 else 2 * s,
                            p0=(u[0] + ctx.trace_omega) // 2, tails=tuple(tails))
    logger.debug('Expanded sigma for %s: u=%s', ctx, list(u))
    return expansion


class ConvergentTable:
    """A growable memo of convergents for one field.

    Reads and extensions are serialized by a lock, so one table may be
    shared between threads.
    """

    # Private Instance Attributes:
    #   _ctx: The field.
    #   _expansion: The expansion of sigma for the field.
    #   _p, _q: The numerators and denominators, with index i stored at
    #       position i + 1.
    #   _cache: Convergent objects already built, keyed by index.
    #   _lock: Guards all of the above.
    _ctx: FieldContext
    _expansion: CFExpansion
    _p: list[int]
    _q: list[int]
    _cache: dict[int, Convergent]
    _lock: threading.Lock

    def __init__(self, ctx: FieldContext) -> None:
        """Initialize the table with the two initial convergents."""
        self._ctx = ctx
        self._expansion = sigma_expand(ctx)
        self._p = [1, self._expansion.p0]
        self._q = [0, 1]
        self._cache = {}
        self._lock = threading.Lock()

    def _extend(self, i: int) -> None:
        while len(self._p) < i + 2:
            k = len(self._p) - 1  # the index being computed
            u = self._expansion.quotient(k)
            self._p.append(u * self._p[-1] + self._p[-2])
            self._q.append(u * self._q[-1] + self._q[-2])

    def alpha(self, i: int) -> QuadInt:
        """Return alpha_i without building the full convergent record."""
        with self._lock:
            self._extend(i)
            p, q = self._p[i + 1], self._q[i + 1]
        # alpha = p - q*omega' = p - q*(Tr(omega) - omega)
        return QuadInt(p - q * self._ctx.trace_omega, q, self._ctx)

    def get(self, i: int) -> Convergent:
        """Return the convergent with index i >= -1."""
        with self._lock:
            cached = self._cache.get(i)
            if cached is not None:
                return cached
            self._extend(i)
            p, q = self._p[i + 1], self._q[i + 1]

        alpha = QuadInt(p - q * self._ctx.trace_omega, q, self._ctx)
        N = -alpha.norm() if i % 2 == 0 else alpha.norm()
        if N <= 0:
            raise EngineInvariantError(f'N_{i} = {N} is not positive for {self._ctx}')

        T = None
        if i >= 0:
            product = self.alpha(i - 1) * alpha.conjugate()
            expected = 1 if (i - 1) % 2 == 0 else -1
            if product.b != expected:
                raise EngineInvariantError(
                    f'alpha_{i - 1}*alpha_{i}\' has omega coefficient {product.b}')
            T = product.a

        result = Convergent(i=i, p=p, q=q, alpha=alpha, N=N, T=T)
        with self._lock:
            self._cache[i] = result
        return result


@lru_cache(maxsize=None)
def convergent_table(ctx: FieldContext) -> ConvergentTable:
    """Return the shared convergent table of a field."""
    return ConvergentTable(ctx)


def convergent(ctx: FieldContext, i: int) -> Convergent:
    """Return the convergent with index i >= -1.

    Raises:
        IndexRangeError: If i < -1.

    Examples:
        >>> from quadsemi.field import make_context
        >>> c = convergent(make_context(3), 1)
        >>> (c.p, c.q, c.alpha, c.N)
        (2, 1, QuadInt(2, 1; D=3), 1)
    """
    if i < -1:
        raise IndexRangeError('i', i, 'i >= -1')
    return convergent_table(ctx).get(i)


def alpha(ctx: FieldContext, i: int) -> QuadInt:
    """Return alpha_i = p_i - q_i*omega_D' for i >= -1."""
    if i < -1:
        raise IndexRangeError('i', i, 'i >= -1')
    return convergent_table(ctx).alpha(i)


def partial_quotient(ctx: FieldContext, k: int) -> int:
    """Return u_k for k >= 0 with the periodic extension u_{k+s} = u_k."""
    if k < 0:
        raise IndexRangeError('k', k, 'k >= 0')
    return sigma_expand(ctx).quotient(k)


def fundamental_unit(ctx: FieldContext) -> QuadInt:
    """Return the fundamental unit epsilon = alpha_{s-1} > 1.

    Raises:
        EngineInvariantError: If the computed element is not a unit.

    Examples:
        >>> from quadsemi.field import make_context
        >>> fundamental_unit(make_context(2))
        QuadInt(1, 1; D=2)
    """
    unit = alpha(ctx, sigma_expand(ctx).s - 1)
    if abs(unit.norm()) != 1:
        raise EngineInvariantError(f'{unit!r} has norm {unit.norm()}, not +-1')
    return unit


def totally_positive_unit(ctx: FieldContext) -> QuadInt:
    """Return the smallest totally positive unit epsilon+ > 1.

    This is epsilon when the period is even and epsilon^2 = alpha_{2s-1}
    otherwise.

    Examples:
        >>> from quadsemi.field import make_context
        >>> totally_positive_unit(make_context(2))
        QuadInt(3, 2; D=2)
        >>> totally_positive_unit(make_context(5))
        QuadInt(1, 1; D=5)
    """
    expansion = sigma_expand(ctx)
    unit = alpha(ctx, expansion.s_plus - 1)
    if unit.norm() != 1 or not unit.is_totally_positive():
        raise EngineInvariantError(f'{unit!r} is not a totally positive unit')
    return unit


def gamma_surd(ctx: FieldContext, i: int) -> SurdTail:
    """Return the tail gamma_i = [u_i, u_{i+1}, ...] for i >= 1.

    Raises:
        IndexRangeError: If i < 1.

    Examples:
        >>> from quadsemi.field import make_context
        >>> gamma_surd(make_context(2), 5)
        SurdTail(numerator_shift=2, denominator=2, delta=8)
    """
    if i < 1:
        raise IndexRangeError('i', i, 'i >= 1')
    expansion = sigma_expand(ctx)
    return expansion.tails[i % expansion.s]
