"""Indecomposable elements, the presentation relations and canonical forms.

The indecomposables of O_K^+ form a sequence beta_j indexed by all
integers, increasing in j at the first embedding, with beta_0 = 1 and
beta_{-j} = beta_j'. For j >= 0 the sequence runs through the blocks

    alpha_{i,r} = alpha_i + r*alpha_{i+1},   0 <= r <= u_{i+2} - 1,

for odd i = -1, 1, 3, ...; block i therefore holds u_{i+2} elements.
Consecutive indecomposables satisfy beta_{j-1} - v_j*beta_j + beta_{j+1} = 0
and every totally positive x is uniquely e*beta_j0 + f*beta_{j0+1} with
e >= 1 and f >= 0.
"""
import bisect
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from quadsemi.contfrac import alpha, partial_quotient, sigma_expand
from quadsemi.errors import EngineInvariantError, IndexRangeError, NotTotallyPositiveError
from quadsemi.field import Embedding, FieldContext, QuadInt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndecompositionCoords:
    """The position of beta_j inside the block structure.

    Instance Attributes:
        i: The odd block index, at least -1.
        r: The offset inside the block, 0 <= r <= u_{i+2} - 1.
        conjugated: Whether beta_j is the conjugate of alpha_{i,r} (j < 0).
    """

    i: int
    r: int
    conjugated: bool = False


@dataclass(frozen=True)
class CanonicalForm:
    """The unique expression x = e*beta_j0 + f*beta_{j0+1}.

    Instance Attributes:
        j0: The index of the first indecomposable.
        e: Its coefficient, at least 1.
        f: The coefficient of beta_{j0+1}, at least 0.
    """

    j0: int
    e: int
    f: int

    def evaluate(self, ctx: FieldContext) -> QuadInt:
        """Return e*beta_j0 + f*beta_{j0+1}."""
        return beta(ctx, self.j0) * self.e + beta(ctx, self.j0 + 1) * self.f


@dataclass(frozen=True)
class Relation:
    """The identity beta_{j-1} - v_j*beta_j + beta_{j+1} = 0."""

    j: int
    v: int

    def coefficients(self) -> dict[int, int]:
        """Return the relation as a coefficient vector over beta indices."""
        return {self.j - 1: 1, self.j: -self.v, self.j + 1: 1}

    def evaluate(self, ctx: FieldContext) -> QuadInt:
        """Return the left-hand side in coordinates; it is always zero."""
        return beta(ctx, self.j - 1) - beta(ctx, self.j) * self.v + beta(ctx, self.j + 1)

    def __str__(self) -> str:
        return f'b[{self.j - 1}] - {self.v}*b[{self.j}] + b[{self.j + 1}] = 0'


@dataclass(frozen=True)
class RelationStep:
    """One application of a relation inside a reduction certificate.

    Replaying the step replaces the coefficient vector k by k - multiplier*R_j,
    where R_j is the coefficient vector of the relation at j.

    Instance Attributes:
        j: The centre index of the relation that was applied.
        multiplier: How many copies of the relation were subtracted.
        direction: 'left' when the lowest index was absorbed, 'right' when
            the highest one was.
    """

    j: int
    multiplier: int
    direction: str


@lru_cache(maxsize=None)
def _block_table(ctx: FieldContext) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Return the block starts and sizes of one unit period and its length B.

    One unit period covers the blocks i = -1, 1, ..., s+ - 3; multiplying by
    epsilon+ shifts i by s+ and j by B.
    """
    expansion = sigma_expand(ctx)
    starts, sizes = [], []
    total = 0
    for i in range(-1, expansion.s_plus - 1, 2):
        size = expansion.quotient(i + 2)
        starts.append(total)
        sizes.append(size)
        total += size
    return tuple(starts), tuple(sizes), total


def indecomposables_per_unit(ctx: FieldContext) -> int:
    """Return the number B of indecomposables modulo multiplication by epsilon+.

    Multiplication by epsilon+ maps beta_j to beta_{j+B}.

    Examples:
        >>> from quadsemi.field import make_context
        >>> [indecomposables_per_unit(make_context(d)) for d in (2, 3, 5, 13)]
        [2, 1, 1, 3]
    """
    return _block_table(ctx)[2]


def beta_coords(ctx: FieldContext, j: int) -> IndecompositionCoords:
    """Return the block coordinates (i, r) of beta_j.

    For negative j these are the coordinates of beta_{-j}, flagged as
    conjugated.

    Examples:
        >>> from quadsemi.field import make_context
        >>> beta_coords(make_context(2), 1)
        IndecompositionCoords(i=-1, r=1, conjugated=False)
        >>> beta_coords(make_context(3), 2)
        IndecompositionCoords(i=3, r=0, conjugated=False)
    """
    if j < 0:
        coords = beta_coords(ctx, -j)
        return IndecompositionCoords(coords.i, coords.r, conjugated=True)

    starts, _, period = _block_table(ctx)
    turns, offset = divmod(j, period)
    block = bisect.bisect_right(starts, offset) - 1
    s_plus = sigma_expand(ctx).s_plus
    return IndecompositionCoords(i=-1 + 2 * block + turns * s_plus,
                                 r=offset - starts[block])


def beta_index(ctx: FieldContext, i: int, r: int) -> int:
    """Return the index j >= 0 with beta_j = alpha_{i,r}.

    Raises:
        IndexRangeError: If i is not odd and at least -1, or r is outside
            [0, u_{i+2}).
    """
    if i < -1 or i % 2 == 0:
        raise IndexRangeError('i', i, 'an odd integer >= -1')
    if not 0 <= r < partial_quotient(ctx, i + 2):
        raise IndexRangeError('r', r, f'0 <= r < u_{i + 2}')

    starts, _, period = _block_table(ctx)
    s_plus = sigma_expand(ctx).s_plus
    turns, block_offset = divmod(i + 1, s_plus)
    return turns * period + starts[block_offset // 2] + r


def beta(ctx: FieldContext, j: int) -> QuadInt:
    """Return the indecomposable beta_j.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> [str(beta(ctx, j)) for j in (-1, 0, 1, 2)]
        ['2-1w', '1+0w', '2+1w', '3+2w']
    """
    coords = beta_coords(ctx, j)
    element = alpha(ctx, coords.i) + alpha(ctx, coords.i + 1) * coords.r
    return element.conjugate() if coords.conjugated else element


def v_coeff(ctx: FieldContext, j: int) -> int:
    """Return v_j, the coefficient with v_j*beta_j = beta_{j-1} + beta_{j+1}.

    Examples:
        >>> from quadsemi.field import make_context
        >>> [v_coeff(make_context(2), j) for j in (-1, 0, 1, 2)]
        [2, 4, 2, 4]
        >>> v_coeff(make_context(3), 1)
        4
    """
    coords = beta_coords(ctx, j)
    if coords.r >= 1:
        return 2
    return partial_quotient(ctx, coords.i + 1) + 2


def relations(ctx: FieldContext, j_min: int, j_max: int) -> list[Relation]:
    """Return the relations centred at j_min, ..., j_max.

    Each relation is checked to evaluate to zero in coordinates.

    Raises:
        IndexRangeError: If j_min > j_max.
        EngineInvariantError: If some relation does not hold.
    """
    if j_min > j_max:
        raise IndexRangeError('j_min', j_min, f'j_min <= j_max = {j_max}')

    result = []
    for j in range(j_min, j_max + 1):
        relation = Relation(j, v_coeff(ctx, j))
        if not relation.evaluate(ctx).is_zero():
            raise EngineInvariantError(f'Relation {relation} fails for {ctx}')
        result.append(relation)
    return result


def _ratio_at_least(x: QuadInt, b: QuadInt) -> bool:
    """Return whether x/x' >= b/b' for totally positive x and b."""
    # x*b' - x'*b has zero trace, so only its first embedding matters
    return (x * b.conjugate() - x.conjugate() * b).sign(Embedding.FIRST) >= 0


def locate_j0(ctx: FieldContext, x: QuadInt) -> int:
    """Return the index j0 with beta_j0/beta_j0' <= x/x' < beta_{j0+1}/beta_{j0+1}'.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> locate_j0(ctx, ctx.element(3, 1))
        0
        >>> locate_j0(ctx, ctx.element(3, -2))
        -2
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'locate_j0')

    def at_least(j: int) -> bool:
        return _ratio_at_least(x, beta(ctx, j))

    # Find lo <= j0 < hi by widening, then bisect
    if at_least(0):
        lo, step = 0, 1
        while at_least(lo + step):
            lo, step = lo + step, step * 2
        hi = lo + step
    else:
        hi, step = 0, 1
        while not at_least(hi - step):
            hi, step = hi - step, step * 2
        lo = hi - step

    while hi - lo > 1:
        mid = (lo + hi) // 2
        if at_least(mid):
            lo = mid
        else:
            hi = mid
    return lo


def canonicalize(ctx: FieldContext, x: QuadInt) -> CanonicalForm:
    """Return the canonical form (j0, e, f) of a totally positive x.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.
        EngineInvariantError: If the coefficients are not integers with
            e >= 1 and f >= 0.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> canonicalize(ctx, ctx.element(3, 1))
        CanonicalForm(j0=0, e=1, f=1)
        >>> canonicalize(ctx, ctx.element(4))
        CanonicalForm(j0=0, e=4, f=0)
    """
    j0 = locate_j0(ctx, x)
    b1, b2 = beta(ctx, j0), beta(ctx, j0 + 1)

    det = b1.a * b2.b - b2.a * b1.b
    if det == 0:
        raise EngineInvariantError(f'beta_{j0} and beta_{j0 + 1} are dependent')
    e, e_rem = divmod(x.a * b2.b - b2.a * x.b, det)
    f, f_rem = divmod(b1.a * x.b - x.a * b1.b, det)
    if e_rem or f_rem or e < 1 or f < 0:
        raise EngineInvariantError(
            f'{x!r} has no admissible coefficients at j0={j0}')
    return CanonicalForm(j0, e, f)


def is_indecomposable(ctx: FieldContext, x: QuadInt) -> bool:
    """Return whether x is totally positive and not a sum of two such elements.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> is_indecomposable(ctx, ctx.element(2, 1))
        True
        >>> is_indecomposable(ctx, ctx.element(2))
        False
    """
    if not x.is_totally_positive():
        return False
    form = canonicalize(ctx, x)
    return form.e == 1 and form.f == 0


def _evaluate(ctx: FieldContext, coeffs: Mapping[int, int]) -> QuadInt:
    total = ctx.zero
    for j, k in coeffs.items():
        if k:
            total = total + beta(ctx, j) * k
    return total


def reduce_combination(ctx: FieldContext, coeffs: Mapping[int, int]
                       ) -> tuple[CanonicalForm, list[RelationStep]]:
    """Rewrite sum(k_j*beta_j) into canonical form using only the relations.

    The outermost index is absorbed one step at a time: while the support
    reaches left of j0 the lowest coefficient is pushed right with the
    relation at j_min + 1, otherwise the highest one is pushed left with the
    relation at j_max - 1.

    Args:
        coeffs: A finite map from indices j to integer coefficients k_j.

    Returns:
        The canonical form and the list of relation applications performed.

    Raises:
        NotTotallyPositiveError: If the combination is not totally positive.
        EngineInvariantError: If the final coefficients disagree with
            canonicalize.

    Examples:
        >>> from quadsemi.field import make_context
        >>> form, certificate = reduce_combination(make_context(2), {-1: 1, 1: 1})
        >>> form
        CanonicalForm(j0=0, e=4, f=0)
        >>> certificate
        [RelationStep(j=0, multiplier=1, direction='left')]
    """
    x = _evaluate(ctx, coeffs)
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'reduce_combination')
    j0 = locate_j0(ctx, x)

    work = {j: k for j, k in coeffs.items() if k}
    j_min = min([*work, j0])
    j_max = max([*work, j0 + 1])
    certificate = []

    while j_max - j_min > 1:
        if j_min < j0:
            k, j = work.pop(j_min, 0), j_min + 1
            direction = 'left'
            j_min += 1
        else:
            k, j = work.pop(j_max, 0), j_max - 1
            direction = 'right'
            j_max -= 1
        if k == 0:
            continue

        v = v_coeff(ctx, j)
        step = RelationStep(j, k, direction)
        for index, coefficient in Relation(j, v).coefficients().items():
            if (direction == 'left' and index == j - 1) or \
                    (direction == 'right' and index == j + 1):
                continue
            work[index] = work.get(index, 0) - k * coefficient
        certificate.append(step)
        logger.debug('Applied %s (%s)', step, Relation(j, v))

    form = CanonicalForm(j0, work.get(j0, 0), work.get(j0 + 1, 0))
    if form != canonicalize(ctx, x):
        raise EngineInvariantError(f'Reduction of {dict(coeffs)} ended at {form}')
    return form, certificate


def replay_certificate(ctx: FieldContext, coeffs: Mapping[int, int],
                       certificate: list[RelationStep]) -> dict[int, int]:
    """Apply a certificate to a coefficient vector and return the result.

    Zero coefficients are dropped from the returned mapping.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> replay_certificate(ctx, {-1: 1, 1: 1}, [RelationStep(0, 1, 'left')])
        {0: 4}
    """
    work = dict(coeffs)
    for step in certificate:
        relation = Relation(step.j, v_coeff(ctx, step.j))
        for index, coefficient in relation.coefficients().items():
            work[index] = work.get(index, 0) - step.multiplier * coefficient
    return {j: k for j, k in sorted(work.items()) if k}
