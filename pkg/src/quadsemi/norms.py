"""Norm identities and norm bounds for totally positive integers.

Every inequality involving sqrt(delta) or a tail gamma_i is decided exactly
with Surd arithmetic. For odd i and integers m, n the norm of
m*alpha_i + n*alpha_{i+1} factors as

    (m - n/gamma_{i+2}) * (n*sqrt(delta) + m*N_i - n*N_i/gamma_{i+2}).
"""
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from quadsemi.contfrac import convergent, gamma_surd, partial_quotient
from quadsemi.decomposition import ud_representatives
from quadsemi.errors import EngineInvariantError, IndexRangeError
from quadsemi.field import FieldContext, QuadInt, Surd
from quadsemi.semigroup import beta, beta_coords, beta_index, indecomposables_per_unit

logger = logging.getLogger(__name__)


def _sqrt_delta(ctx: FieldContext) -> Surd:
    return Surd(0, 1, ctx.delta)


def _omega(ctx: FieldContext) -> Surd:
    return Surd(Fraction(ctx.trace_omega, 2), Fraction(1, 2), ctx.delta)


@dataclass(frozen=True)
class RecurrenceCheck:
    """The outcome of checking the N/T recurrences.

    Instance Attributes:
        ok: Whether every checked index passed.
        failing_index: The first index i at which a recurrence failed.
    """

    ok: bool
    failing_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def norm_recurrence_check(ctx: FieldContext, i_max: int) -> RecurrenceCheck:
    """Check N_{i+1} = sqrt(delta)/g - N_i/g^2 and T_{i+1} = (-1)^(i+1)(omega - N_i/g).

    Here g = gamma_{i+2}; every index -1 <= i <= i_max is checked.

    Raises:
        IndexRangeError: If i_max < 0.

    Examples:
        >>> from quadsemi.field import make_context
        >>> bool(norm_recurrence_check(make_context(2), 10))
        True
    """
    if i_max < 0:
        raise IndexRangeError('i_max', i_max, 'i_max >= 0')

    root, omega = _sqrt_delta(ctx), _omega(ctx)
    for i in range(-1, i_max + 1):
        gamma = gamma_surd(ctx, i + 2).value
        current, following = convergent(ctx, i), convergent(ctx, i + 1)
        sign = 1 if (i + 1) % 2 == 0 else -1
        if root / gamma - current.N / (gamma * gamma) != following.N or \
                (omega - current.N / gamma) * sign != following.T:
            logger.error('Norm recurrence fails at i=%d for %s', i, ctx)
            return RecurrenceCheck(False, i)
    return RecurrenceCheck(True)


def _factored_norm(ctx: FieldContext, i: int, m: int, n: int) -> Surd:
    gamma = gamma_surd(ctx, i + 2).value
    N_i = convergent(ctx, i).N
    return (m - n / gamma) * (_sqrt_delta(ctx) * n + m * N_i - (n * N_i) / gamma)


def _check_odd_index(i: int) -> None:
    if i < -1 or i % 2 == 0:
        raise IndexRangeError('i', i, 'an odd integer >= -1')


def norm_combination(ctx: FieldContext, i: int, m: int, n: int) -> int:
    """Return N(m*alpha_i + n*alpha_{i+1}), checked against the factored form.

    Raises:
        IndexRangeError: If i is not odd and at least -1.
        EngineInvariantError: If the two evaluations disagree.

    Examples:
        >>> from quadsemi.field import make_context
        >>> norm_combination(make_context(2), -1, 1, 1)
        2
        >>> norm_combination(make_context(3), 1, 2, 1)
        6
    """
    _check_odd_index(i)
    element = convergent(ctx, i).alpha * m + convergent(ctx, i + 1).alpha * n
    direct = element.norm()
    if _factored_norm(ctx, i, m, n) != direct:
        raise EngineInvariantError(
            f'Factored norm of {m}*alpha_{i} + {n}*alpha_{i + 1} differs from {direct}')
    return direct


class LowerCase(enum.Enum):
    """The parameter regions with a lower bound on the norm."""

    R_ZERO = 'a'
    SMALL_R = 'b'
    LARGE_R = 'c'
    NO_F = 'd'
    CONVERGENT_MULTIPLE = 'multiple-of-convergent'


@dataclass(frozen=True)
class LowerBoundCheck:
    """One applicable lower bound N(alpha) > bound."""

    case: LowerCase
    bound: Surd
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    """The norm bounds evaluated for e*alpha_{i,r} + f*alpha_{i,r+1}.

    Instance Attributes:
        element: The element itself.
        canonical: Its parameters (i, r, e, f).
        norm: Its norm.
        upper1_holds: N < sqrt(delta)((r+1)e + (r+2)f)(e+f).
        upper2_holds: N <= (e+f)^2 delta/(4 N_{i+1}).
        upper2_strict_holds: The same with strict inequality. Equality does
            occur, e.g. for 2 + omega when D = 5.
        lower_checks: The lower bounds whose hypotheses are met. For
            f = r = 0 this is a single CONVERGENT_MULTIPLE entry that claims
            nothing.
    """

    element: QuadInt
    canonical: tuple[int, int, int, int]
    norm: int
    upper1_holds: bool
    upper2_holds: bool
    upper2_strict_holds: bool
    lower_checks: tuple[LowerBoundCheck, ...]

    @property
    def lower_holds(self) -> bool:
        """Whether every applicable lower bound holds."""
        return all(check.holds for check in self.lower_checks)

    @property
    def lower_cases(self) -> tuple[LowerCase, ...]:
        """The cases whose hypotheses are met."""
        return tuple(check.case for check in self.lower_checks)

    @property
    def ok(self) -> bool:
        """Whether every bound that is claimed to hold does hold."""
        return self.upper1_holds and self.upper2_holds and self.lower_holds


def bounds_check(ctx: FieldContext, i: int, r: int, e: int, f: int,
                 c: Fraction = Fraction(1, 2)) -> BoundReport:
    """Evaluate the upper and lower norm bounds for e*alpha_{i,r} + f*alpha_{i,r+1}.

    Args:
        i: An odd block index, at least -1.
        r: The offset, 0 <= r < u_{i+2}.
        e: At least 1.
        f: At least 0.
        c: The parameter of the small-r lower bound, strictly between 0 and 1.

    Raises:
        IndexRangeError: If any parameter is out of range.

    Examples:
        >>> from quadsemi.field import make_context
        >>> report = bounds_check(make_context(2), -1, 0, 1, 1)
        >>> (str(report.element), report.norm, report.ok)
        ('3+1w', 7, True)
        >>> report.lower_cases
        (<LowerCase.R_ZERO: 'a'>,)
    """
    _check_odd_index(i)
    block = partial_quotient(ctx, i + 2)
    if not 0 <= r < block:
        raise IndexRangeError('r', r, f'0 <= r < {block}')
    if e < 1:
        raise IndexRangeError('e', e, 'e >= 1')
    if f < 0:
        raise IndexRangeError('f', f, 'f >= 0')
    c = Fraction(c)
    if not 0 < c < 1:
        raise IndexRangeError('c', c, '0 < c < 1')

    a_i, a_next = convergent(ctx, i).alpha, convergent(ctx, i + 1).alpha
    element = a_i * (e + f) + a_next * (r * e + (r + 1) * f)
    norm = element.norm()
    root = _sqrt_delta(ctx)

    upper1 = root * (((r + 1) * e + (r + 2) * f) * (e + f))
    upper2 = Fraction((e + f) ** 2 * ctx.delta, 4 * convergent(ctx, i + 1).N)

    bounds = []
    if f > 0:
        if r == 0:
            bounds.append((LowerCase.R_ZERO, root * (e * f)))
        if 1 <= r and r + 1 <= c * block:
            bounds.append((LowerCase.SMALL_R, root * ((1 - c) * (e + f) ** 2)))
        if Fraction(block + 1, 2) < r <= block - 1:
            bounds.append((LowerCase.LARGE_R, root * Fraction(e * (e + f), 2)))
    elif r > 0:
        bounds.append((LowerCase.NO_F, root * (e * e * (1 - Fraction(1, block)))))

    checks = tuple(LowerBoundCheck(case, bound, norm > bound) for case, bound in bounds)
    if f == 0 and r == 0:
        checks = (LowerBoundCheck(LowerCase.CONVERGENT_MULTIPLE, Surd(0, 0, ctx.delta), True),)

    return BoundReport(
        element=element,
        canonical=(i, r, e, f),
        norm=norm,
        upper1_holds=norm < upper1,
        upper2_holds=norm <= upper2,
        upper2_strict_holds=norm < upper2,
        lower_checks=checks,
    )


def audit_bounds(ctx: FieldContext, max_i: int, max_ef: int,
                 cs: tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
                 ) -> list[BoundReport]:
    """Return the reports that fail over the grid odd i <= max_i, all r, e + f <= max_ef.

    Each point is evaluated once per value of c.
    """
    failures = []
    for i in range(-1, max_i + 1, 2):
        for r in range(partial_quotient(ctx, i + 2)):
            for e in range(1, max_ef + 1):
                for f in range(0, max_ef - e + 1):
                    for c in cs:
                        report = bounds_check(ctx, i, r, e, f, c)
                        if not report.ok:
                            failures.append(report)
    if failures:
        logger.error('%d bound violations for %s', len(failures), ctx)
    return failures


@dataclass(frozen=True)
class UDNormBound:
    """The cap sqrt(delta)(2 sqrt(delta) + 1)(3 sqrt(delta) + 2) on UD norms.

    Instance Attributes:
        value: The exact cap, 7*delta + (6*delta + 2)*sqrt(delta).
        floor: Its integer part.
    """

    value: Surd
    floor: int


def ud_norm_bound(ctx: FieldContext) -> UDNormBound:
    """Return the norm cap for uniquely decomposable elements.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ud_norm_bound(make_context(2)).floor
        197
    """
    value = Surd(7 * ctx.delta, 6 * ctx.delta + 2, ctx.delta)
    return UDNormBound(value, value.floor())


def audit_ud_norms(ctx: FieldContext) -> bool:
    """Return whether every UD representative has norm below the cap.

    Examples:
        >>> from quadsemi.field import make_context
        >>> audit_ud_norms(make_context(5))
        True
    """
    cap = ud_norm_bound(ctx).value
    for x in ud_representatives(ctx):
        if not x.norm() < cap:
            logger.error('UD element %r of %s exceeds the norm cap', x, ctx)
            return False
    return True


def convergent_norms_check(ctx: FieldContext, i_max: int) -> bool:
    """Return whether N_i < sqrt(delta) for all -1 <= i <= i_max."""
    return all(convergent(ctx, i).N ** 2 < ctx.delta for i in range(-1, i_max + 1))


def audit_indecomposable_norms(ctx: FieldContext) -> bool:
    """Return whether N(alpha_{i,r}) <= delta/(4 N_{i+1}) over one unit period.

    Examples:
        >>> from quadsemi.field import make_context
        >>> all(audit_indecomposable_norms(make_context(d)) for d in (2, 3, 5, 13))
        True
    """
    start = beta_index(ctx, 1, 0)
    for j in range(start, start + indecomposables_per_unit(ctx)):
        coords = beta_coords(ctx, j)
        N_next = convergent(ctx, coords.i + 1).N
        if 4 * N_next * beta(ctx, j).norm() > ctx.delta:
            logger.error('beta_%d of %s exceeds delta/(4 N_%d)', j, ctx, coords.i + 1)
            return False
    return True

