"""Enumeration of totally positive integers.

These generators back the brute-force oracles used to check the structural
results, and the scrambled semigroup oracle used by reconstruction.
"""
import math
from typing import Iterator

from quadsemi.errors import NotTotallyPositiveError
from quadsemi.field import Embedding, FieldContext, QuadInt, Surd, succ
from quadsemi.semigroup import beta, locate_j0


def iter_totally_positive(ctx: FieldContext, trace: int) -> Iterator[QuadInt]:
    """Yield every totally positive element of the given trace.

    Elements are yielded in increasing order of their omega coefficient.

    Examples:
        >>> from quadsemi.field import make_context
        >>> [str(x) for x in iter_totally_positive(make_context(2), 4)]
        ['2-1w', '2+0w', '2+1w']
        >>> list(iter_totally_positive(make_context(5), 1))
        []
    """
    if trace <= 0:
        return
    # x = (trace + b*sqrt(delta))/2 at the first embedding, so b^2*delta < trace^2
    bound = math.isqrt((trace * trace - 1) // ctx.delta)
    for b in range(-bound, bound + 1):
        twice_a = trace - b * ctx.trace_omega
        if twice_a % 2 == 0:
            x = QuadInt(twice_a // 2, b, ctx)
            if x.is_totally_positive():
                yield x


def iter_up_to_trace(ctx: FieldContext, max_trace: int) -> Iterator[QuadInt]:
    """Yield every totally positive element with trace at most max_trace."""
    for trace in range(2, max_trace + 1):
        yield from iter_totally_positive(ctx, trace)


def iter_below(ctx: FieldContext, x: QuadInt) -> Iterator[QuadInt]:
    """Yield every totally positive y with x - y totally positive.

    The candidates are enumerated as y = s*b1 + t*b2 in the basis formed by
    the two indecomposables b1 = beta_j0, b2 = beta_{j0+1} adjacent to x.
    Solving for s gives the exact range -w/sqrt(delta) < s < w~/sqrt(delta)
    where w = x*b2' and w~ = x'*b2 are read at the first embedding; for each
    s both embeddings then bound t.

    Raises:
        NotTotallyPositiveError: If x is not totally positive.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> sorted(str(y) for y in iter_below(ctx, ctx.element(4)))
        ['1+0w', '2+0w', '2+1w', '2-1w', '3+0w']
    """
    if not x.is_totally_positive():
        raise NotTotallyPositiveError(x, 'iter_below')

    j0 = locate_j0(ctx, x)
    b1, b2 = beta(ctx, j0), beta(ctx, j0 + 1)
    first, second = Embedding.FIRST, Embedding.SECOND
    X, X_ = x.embed(first), x.embed(second)
    B1, B1_ = b1.embed(first), b1.embed(second)
    B2, B2_ = b2.embed(first), b2.embed(second)
    root = _sqrt_delta(ctx)

    s_low = (-(X * B2_) / root).floor() + 1
    s_high = ((X_ * B2) / root).ceil() - 1
    for s in range(s_low, s_high + 1):
        # 0 < s*B1 + t*B2 < X and 0 < s*B1_ + t*B2_ < X_
        lower = max(-(B1 * s) / B2, -(B1_ * s) / B2_)
        upper = min((X - B1 * s) / B2, (X_ - B1_ * s) / B2_)
        for t in range(lower.floor() + 1, upper.ceil()):
            y = b1 * s + b2 * t
            if y.is_totally_positive() and succ(x, y):
                yield y


def _sqrt_delta(ctx: FieldContext) -> Surd:
    # omega - omega' = sqrt(delta) at the first embedding
    return (ctx.omega - ctx.omega.conjugate()).embed(Embedding.FIRST)


def brute_force_is_indecomposable(ctx: FieldContext, x: QuadInt) -> bool:
    """Return whether x is totally positive and nothing lies strictly below it.

    Examples:
        >>> from quadsemi.field import make_context
        >>> ctx = make_context(2)
        >>> brute_force_is_indecomposable(ctx, ctx.element(3, 2))
        True
        >>> brute_force_is_indecomposable(ctx, ctx.element(3, 1))
        False
    """
    if not x.is_totally_positive():
        return False
    return next(iter_below(ctx, x), None) is None

