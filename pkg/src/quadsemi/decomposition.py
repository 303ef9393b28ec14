"""Uniquely decomposable elements of O_K^+.

A totally positive x with canonical form (j, e, f) is uniquely decomposable
exactly when 1 <= e <= v_j - 1, 0 <= f <= v_{j+1} - 1 and (e, f) is not the
corner (v_j - 1, v_{j+1} - 1). Read through the block coordinates (i, r)
of beta_j this gives the five clause families below (and their conjugates).
"""
import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

from quadsemi.contfrac import partial_quotient, sigma_expand
from quadsemi.errors import EngineInvariantError, IndexRangeError, NotTotallyPositiveError
from quadsemi.field import Embedding, FieldContext, QuadInt, compare_embedding, succeq
from quadsemi.semigroup import (
    CanonicalForm,
    beta,
    beta_coords,
    beta_index,
    canonicalize,
    indecomposables_per_unit,
    locate_j0,
    v_coeff,
)

logger = logging.getLogger(__name__)


class UDClause(enum.Enum):
    """The families of uniquely decomposable elements."""

    INDECOMPOSABLE = 'a'
    CONVERGENT_MULTIPLE = 'b'
    SEAM_PLUS_NEXT = 'c'
    MULTIPLE_PLUS_ONE = 'd'
    UNIT_BLOCK = 'e'
    CONJUGATE_OF = 'f'
    NOT_UD = 'none'


@dataclass(frozen=True)
class UDClass:
    """The clause matched by an element, with its parameters.

    Instance Attributes:
        tag: The matching clause.
        witness: The block coordinates and coefficients (i, r, e, f) of the
            element (of its conjugate for CONJUGATE_OF), or None for NOT_UD.
        inner: For CONJUGATE_OF, the classification of the conjugate.
    """

    tag: UDClause
    witness: Optional[tuple[int, int, int, int]] = None
    inner: Optional['UDClass'] = None

    @property
    def base_tag(self) -> UDClause:
        """The clause after unwrapping conjugation."""
        return self.inner.base_tag if self.inner is not None else self.tag

    def __str__(self) -> str:
        if self.tag is UDClause.NOT_UD:
            return 'not uniquely decomposable'
        if self.inner is not None:
            return f'({self.tag.value}) conjugate of {self.inner}'
        i, r, e, f = self.witness
        return f'({self.tag.value}) i={i} r={r} e={e} f={f}'


@dataclass(frozen=True)
class Decomposition:
    """A multiset of indecomposables summing to some element.

    Instance Attributes:
        indices: The beta indices of the parts in non-increasing order.
        parts: The parts themselves, in the same order.
    """

    indices: tuple[int, ...]
    parts: tuple[QuadInt, ...] = field(compare=False)

    def total(self) -> QuadInt:
        """Return the sum of the parts."""
        result = self.parts[0]
        for part in self.parts[1:]:
            result = result + part
        return result

    def __str__(self) -> str:
        return ' + '.join(str(p) for p in self.parts)


def _make_decomposition(ctx: FieldContext, indices: list[int]) -> Decomposition:
    ordered = tuple(sorted(indices, reverse=True))
    return Decomposition(ordered, tuple(beta(ctx, j) for j in ordered))


def _is_ud_form(ctx: FieldContext, form: CanonicalForm) -> bool:
    v_first, v_second = v_coeff(ctx, form.j0), v_coeff(ctx, form.j0 + 1)
    return (1 <= form.e <= v_first - 1 and 0 <= form.f <= v_second - 1
            and (form.e, form.f) != (v_first - 1, v_second - 1))


def is_uniquely_decomposable(ctx: FieldContext, x: QuadInt) -> bool:
    """Return whether x has exactly one decomposition into indecomposables.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> is_uniquely_decomposable(ctx, ctx.element(3, 1))
        True
        >>> is_uniquely_decomposable(ctx, ctx.element(4))
        False
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'is_uniquely_decomposable')
    return _is_ud_form(ctx, canonicalize(ctx, x))


def _classify_form(ctx: FieldContext, form: CanonicalForm) -> UDClass:
    """Match a canonical form with j0 >= 0 against clauses (a) to (e)."""
    coords = beta_coords(ctx, form.j0)
    i, r, e, f = coords.i, coords.r, form.e, form.f
    witness = (i, r, e, f)
    block = partial_quotient(ctx, i + 2)

    if f == 0:
        if e == 1:
            return UDClass(UDClause.INDECOMPOSABLE, witness)
        if r == 0 and e <= partial_quotient(ctx, i + 1) + 1:
            return UDClass(UDClause.CONVERGENT_MULTIPLE, witness)
        return UDClass(UDClause.NOT_UD)

    if block == 1:
        # the block holds only alpha_i, so beta_{j0+1} = alpha_{i+2}
        u_prev, u_next = partial_quotient(ctx, i + 1), partial_quotient(ctx, i + 3)
        if e <= u_prev + 1 and f <= u_next + 1 and (e, f) != (u_prev + 1, u_next + 1):
            return UDClass(UDClause.UNIT_BLOCK, witness)
    elif r == block - 1:
        if e == 1 and f <= partial_quotient(ctx, i + 3):
            return UDClass(UDClause.SEAM_PLUS_NEXT, witness)
    elif r == 0:
        if f == 1 and e <= partial_quotient(ctx, i + 1):
            return UDClass(UDClause.MULTIPLE_PLUS_ONE, witness)
    return UDClass(UDClause.NOT_UD)


def classify_ud(ctx: FieldContext, x: QuadInt) -> UDClass:
    """Return the clause describing x as a uniquely decomposable element.

    Elements with j0 < 0 are classified through their conjugate and wrapped
    in CONJUGATE_OF.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.
        EngineInvariantError: If the clause match disagrees with
            is_uniquely_decomposable.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> str(classify_ud(ctx, ctx.element(6, 4)))
        '(b) i=1 r=0 e=2 f=0'
        >>> str(classify_ud(ctx, ctx.element(3, 1)))
        '(d) i=-1 r=0 e=1 f=1'
        >>> classify_ud(ctx, ctx.element(4)).tag
        <UDClause.NOT_UD: 'none'>
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'classify_ud')

    form = canonicalize(ctx, x)
    if form.j0 < 0:
        inner = _classify_form(ctx, canonicalize(ctx, x.conjugate()))
        result = inner if inner.tag is UDClause.NOT_UD else \
            UDClass(UDClause.CONJUGATE_OF, inner.witness, inner)
    else:
        result = _classify_form(ctx, form)

    if (result.tag is not UDClause.NOT_UD) != _is_ud_form(ctx, form):
        raise EngineInvariantError(f'Clause {result} disagrees with {form} for {x!r}')
    return result


def _candidate_range(ctx: FieldContext, x: QuadInt) -> tuple[int, int]:
    """Return the indices [lo, hi] of all indecomposables y with y <= x."""
    j0 = locate_j0(ctx, x)
    hi = j0
    while compare_embedding(beta(ctx, hi + 1), x, Embedding.FIRST) <= 0:
        hi += 1
    lo = j0
    while compare_embedding(beta(ctx, lo - 1), x, Embedding.SECOND) <= 0:
        lo -= 1
    return lo, hi


def enumerate_decompositions(ctx: FieldContext, x: QuadInt,
                             limit: int) -> list[Decomposition]:
    """Return up to limit distinct decompositions of x into indecomposables.

    Parts are chosen in non-increasing index order, so every multiset is
    produced once. Remainders that admit no decomposition are remembered and
    skipped.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.
        IndexRangeError: If limit < 1.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> [str(d) for d in enumerate_decompositions(ctx, ctx.element(4), 3)]
        ['2+1w + 2-1w', '1+0w + 1+0w + 1+0w + 1+0w']
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'enumerate_decompositions')
    if limit < 1:
        raise IndexRangeError('limit', limit, 'limit >= 1')

    lo, hi = _candidate_range(ctx, x)
    candidates = [(j, beta(ctx, j)) for j in range(hi, lo - 1, -1)]
    found: list[Decomposition] = []
    dead: set[tuple[int, int, int]] = set()
    stack: list[int] = []

    def search(remaining: QuadInt, bound: int) -> None:
        key = (remaining.a, remaining.b, bound)
        if key in dead:
            return
        before = len(found)
        for j, part in candidates:
            if len(found) >= limit:
                return
            if j > bound or not succeq(remaining, part):
                continue
            stack.append(j)
            rest = remaining - part
            if rest.is_zero():
                found.append(_make_decomposition(ctx, stack))
            else:
                search(rest, j)
            stack.pop()
        if len(found) == before:
            dead.add(key)

    search(x, hi)
    return found


def two_decompositions(ctx: FieldContext, x: QuadInt
                       ) -> Optional[tuple[Decomposition, Decomposition]]:
    """Return two distinct decompositions of x, or None if x is uniquely decomposable.

    The second decomposition is obtained from the canonical one by a single
    relation: v_j*beta_j = beta_{j-1} + beta_{j+1} when e >= v_j, the same
    at j + 1 when f >= v_{j+1}, and
    (v_j - 1)*beta_j + (v_{j+1} - 1)*beta_{j+1} = beta_{j-1} + beta_{j+2}
    at the corner.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> [str(d) for d in two_decompositions(ctx, ctx.element(4))]
        ['1+0w + 1+0w + 1+0w + 1+0w', '2+1w + 2-1w']
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'two_decompositions')

    form = canonicalize(ctx, x)
    if _is_ud_form(ctx, form):
        return None

    j, e, f = form.j0, form.e, form.f
    v_first, v_second = v_coeff(ctx, j), v_coeff(ctx, j + 1)
    canonical = [j] * e + [j + 1] * f
    if e >= v_first:
        other = [j] * (e - v_first) + [j - 1] + [j + 1] * (f + 1)
    elif f >= v_second:
        other = [j] * (e + 1) + [j + 1] * (f - v_second) + [j + 2]
    else:
        other = [j - 1, j + 2]

    pair = (_make_decomposition(ctx, canonical), _make_decomposition(ctx, other))
    if pair[0].total() != x or pair[1].total() != x:
        raise EngineInvariantError(f'Witness decompositions of {x!r} do not add up')
    return pair


def ud_representatives(ctx: FieldContext) -> list[QuadInt]:
    """Return one uniquely decomposable element from each orbit under epsilon+.

    The representatives are the elements of clauses (a) to (e) for the odd
    block indices 1 <= i < s+. Conjugates need no separate family since
    multiplication by epsilon+ shifts beta indices by a constant.

    Examples:
        >>> from quadsemi.field import make_context
        >>> [len(ud_representatives(make_context(d))) for d in (2, 3, 5)]
        [8, 11, 5]
    """
    start = beta_index(ctx, 1, 0)
    result = []
    for j in range(start, start + indecomposables_per_unit(ctx)):
        v_first, v_second = v_coeff(ctx, j), v_coeff(ctx, j + 1)
        b1, b2 = beta(ctx, j), beta(ctx, j + 1)
        for e in range(1, v_first):
            for f in range(v_second):
                if (e, f) != (v_first - 1, v_second - 1):
                    result.append(b1 * e + b2 * f)
    logger.debug('Found %d representatives for %s', len(result), ctx)
    return result


def count_ud_mod_units(ctx: FieldContext) -> int:
    """Return the number of uniquely decomposable elements modulo epsilon+.

    Examples:
        >>> from quadsemi.field import make_context
        >>> [count_ud_mod_units(make_context(d)) for d in (2, 3, 5, 13)]
        [8, 11, 5, 12]
    """
    expansion = sigma_expand(ctx)
    u, s = expansion.u, expansion.s

    def at(k: int) -> int:
        return u[k % s]

    # sums over 1..s, which covers u_0 as u_s
    seam = sum(at(k - 1) * at(k + 1) for k in range(1, s + 1) if at(k) == 1
               and (s % 2 == 1 or k % 2 == 1))
    if s % 2 == 0:
        return sum(u) + 2 * sum(at(k) for k in range(1, s + 1) if k % 2 == 0) + seam
    return 4 * sum(u) + seam
