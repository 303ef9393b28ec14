"""Recovering D from the period of sigma_D."""
import math
from typing import Sequence

from quadsemi.contfrac import sigma_expand
from quadsemi.errors import InvalidFieldError, InvalidPeriodError
from quadsemi.field import is_squarefree, make_context


def period_to_D(u: Sequence[int]) -> int:
    """Return the D whose sigma_D has the continued fraction period u.

    The product of the matrices [[u_k, 1], [1, 0]] over one period is
    [[M, N], [P, Q]] with sigma = (M*sigma + N)/(P*sigma + Q), so sigma is
    a root of P*x^2 + (Q - M)*x - N. Its discriminant, divided by the square
    of the content, is the field discriminant.

    Raises:
        InvalidPeriodError: If u is not the period of any sigma_D.

    Examples:
        >>> period_to_D([2])
        2
        >>> period_to_D([2, 1])
        3
        >>> period_to_D([1])
        5
        >>> period_to_D([3])
        13
    """
    u = list(u)
    if not u or any(not isinstance(x, int) or x < 1 for x in u):
        raise InvalidPeriodError(u, 'entries must be positive integers')

    M, N, P, Q = 1, 0, 0, 1
    for x in u:
        M, N, P, Q = M * x + N, M, P * x + Q, P

    b = Q - M
    content = math.gcd(P, b, N)
    if P // content != 1:
        raise InvalidPeriodError(u, 'sigma would not be an algebraic integer')
    delta = (b * b + 4 * P * N) // (content * content)

    if delta % 4 == 1:
        D = delta
    elif delta % 16 in (8, 12):
        D = delta // 4
    else:
        raise InvalidPeriodError(u, f'{delta} is not a field discriminant')
    if not is_squarefree(D):
        raise InvalidPeriodError(u, f'{delta} is not a field discriminant')

    try:
        expansion = sigma_expand(make_context(D))
    except InvalidFieldError as e:
        raise InvalidPeriodError(u, str(e)) from e
    if list(expansion.u) != u:
        raise InvalidPeriodError(u, f'D={D} has period {list(expansion.u)}')
    return D
