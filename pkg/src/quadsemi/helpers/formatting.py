"""Formatting helpers for elements, label sequences and timings."""
import math
from typing import Optional, Sequence

from quadsemi.field import QuadInt


def format_sqrt(x: int, y: int, k: int, D: int) -> str:
    """Format (x + y*sqrt(D))/k with k in {1, 2}, reducing when possible.

    Examples:
        >>> format_sqrt(3, 2, 1, 2)
        '3+2√2'
        >>> format_sqrt(1, 1, 2, 5)
        '(1+√5)/2'
        >>> format_sqrt(2, 0, 2, 5)
        '1'
        >>> format_sqrt(2, -1, 1, 3)
        '2-√3'
        >>> format_sqrt(0, -1, 1, 3)
        '-√3'
    """
    if k == 2 and x % 2 == 0 and y % 2 == 0:
        x, y, k = x // 2, y // 2, 1

    if y == 0:
        numerator = str(x)
    else:
        coefficient = '' if abs(y) == 1 else str(abs(y))
        surd = f'{coefficient}√{D}'
        if x == 0:
            numerator = surd if y > 0 else f'-{surd}'
        else:
            numerator = f'{x}{"+" if y > 0 else "-"}{surd}'

    return numerator if k == 1 else f'({numerator})/{k}'


def format_element(element: QuadInt) -> str:
    """Format an element in the form (x + y*sqrt(D))/k.

    Examples:
        >>> from quadsemi.field import make_context
        >>> format_element(make_context(5).element(1, 1))
        '(3+√5)/2'
        >>> format_element(make_context(2).element(3, 2))
        '3+2√2'
    """
    x, y, k = element.sqrt_form()
    return format_sqrt(x, y, k, element.ctx.D)


def element_json(element: QuadInt) -> dict:
    """Return an element as a JSON-ready dictionary.

    The keys are `a` and `b`, the coordinates in the basis {1, omega_D}, and
    `text`, the (x + y*sqrt(D))/k form.

    Examples:
        >>> from quadsemi.field import make_context
        >>> element_json(make_context(3).element(2, 1))
        {'a': 2, 'b': 1, 'text': '2+√3'}
    """
    return {'a': element.a, 'b': element.b, 'text': format_element(element)}


def format_labels(labels: Sequence[int], limit: Optional[int] = None) -> str:
    """Join labels with spaces, eliding everything after the first limit.

    Examples:
        >>> format_labels([2, 2, 2, 2], limit=3)
        '2 2 2 …'
        >>> format_labels([1, 2])
        '1 2'
    """
    shown = labels if limit is None else labels[:limit]
    text = ' '.join(str(label) for label in shown)
    if limit is not None and len(labels) > limit:
        text += ' …'
    return text


def to_ms(seconds: float) -> int:
    """Convert a duration in seconds to whole milliseconds, rounding up.

    Examples:
        >>> to_ms(0.0012)
        2
        >>> to_ms(0)
        0
    """
    return math.ceil(seconds * 1000)
