"""An oracle that hides O_K^+ behind randomly numbered handles."""
import logging
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from quadsemi.field import FieldContext, QuadInt, succ
from quadsemi.lattice import iter_below, iter_totally_positive
from quadsemi.reconstruction.oracle import SemigroupOracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OpaqueHandle:
    """A handle that carries nothing but a random token."""

    token: int

    def __repr__(self) -> str:
        return f'<{self.token:016x}>'


class ScrambledOracle(SemigroupOracle[OpaqueHandle]):
    """The semigroup O_K^+ of a field with every element behind an opaque handle.

    Tokens are drawn from a generator seeded by the caller, so two seeds
    number the same elements differently. The stream yields elements in
    increasing trace, shuffled within each trace.
    """

    # Private Instance Attributes:
    #   _ctx: The hidden field.
    #   _rng: The source of tokens and shuffles.
    #   _handles: The handle of each element seen so far.
    #   _elements: The inverse of _handles.
    _ctx: FieldContext
    _rng: random.Random
    _handles: dict[QuadInt, OpaqueHandle]
    _elements: dict[OpaqueHandle, QuadInt]

    def __init__(self, ctx: FieldContext, seed: int) -> None:
        """Initialize the oracle over the given field.

        Args:
            ctx: The field whose semigroup is wrapped.
            seed: The seed for handle numbering and stream order.
        """
        super().__init__()
        self._ctx = ctx
        self._rng = random.Random(seed)
        self._handles = {}
        self._elements = {}

    def _handle(self, x: QuadInt) -> OpaqueHandle:
        handle = self._handles.get(x)
        if handle is None:
            handle = OpaqueHandle(self._rng.getrandbits(64))
            while handle in self._elements:
                handle = OpaqueHandle(self._rng.getrandbits(64))
            self._handles[x] = handle
            self._elements[handle] = x
        return handle

    def _element(self, handle: OpaqueHandle) -> QuadInt:
        try:
            return self._elements[handle]
        except KeyError:
            raise ValueError(f'Unknown handle {handle!r}') from None

    def add(self, x: OpaqueHandle, y: OpaqueHandle) -> OpaqueHandle:
        """Return a handle for x + y."""
        self.stats.add += 1
        return self._handle(self._element(x) + self._element(y))

    def eq(self, x: OpaqueHandle, y: OpaqueHandle) -> bool:
        """Return whether x and y name the same element."""
        self.stats.eq += 1
        return self._element(x) == self._element(y)

    def below(self, x: OpaqueHandle) -> list[OpaqueHandle]:
        """Return every proper summand of x, ordered by token."""
        self.stats.below += 1
        handles = [self._handle(y) for y in iter_below(self._ctx, self._element(x))]
        return sorted(handles, key=lambda h: h.token)

    def has_below(self, x: OpaqueHandle) -> bool:
        """Return whether x has a proper summand."""
        self.stats.below += 1
        return next(iter_below(self._ctx, self._element(x)), None) is not None

    def subtract(self, x: OpaqueHandle, y: OpaqueHandle) -> Optional[OpaqueHandle]:
        """Return the z with y + z = x, or None."""
        self.stats.subtract += 1
        big, small = self._element(x), self._element(y)
        if not small.is_totally_positive() or not succ(big, small):
            return None
        return self._handle(big - small)

    def stream(self) -> Iterator[OpaqueHandle]:
        """Yield every element, trace by trace."""
        trace = 1
        while True:
            trace += 1
            elements = list(iter_totally_positive(self._ctx, trace))
            self._rng.shuffle(elements)
            for x in elements:
                self.stats.stream += 1
                yield self._handle(x)


def scrambled_oracle(ctx: FieldContext, seed: int) -> ScrambledOracle:
    """Return an opaque oracle for the totally positive integers of ctx.

    Examples:
        >>> from quadsemi.field import make_context
        >>> oracle = scrambled_oracle(make_context(2), seed=1)
        >>> one = next(oracle.stream())
        >>> oracle.below(one)
        []
    """
    logger.debug('Created scrambled oracle for %s', ctx)
    return ScrambledOracle(ctx, seed)
