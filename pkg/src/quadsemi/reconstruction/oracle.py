"""The abstract interface to a cancellative additive semigroup.

Reconstruction only ever talks to an object implementing this interface.
Handles are opaque: the only requirements are that they are hashable and
canonical, i.e. one element always gets the same handle.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from typing import Generic, Hashable, Iterator, Optional, TypeVar

H = TypeVar('H', bound=Hashable)


@dataclass
class OracleStats:
    """Counters for the calls made to an oracle."""

    add: int = 0
    eq: int = 0
    below: int = 0
    stream: int = 0
    subtract: int = 0

    def as_dict(self) -> dict[str, int]:
        """Return the counters keyed by operation name."""
        return {f.name: getattr(self, f.name) for f in fields(self)}


class SemigroupOracle(ABC, Generic[H]):
    """A commutative, cancellative semigroup behind opaque handles.

    All subclasses must implement the following public abstract methods:
        - `add(x: H, y: H) -> H`: Return a handle for x + y.
        - `eq(x: H, y: H) -> bool`: Decide whether two handles name the same
            element.
        - `below(x: H) -> list[H]`: Return handles for every y such that
            x = y + z for some z. The list is finite and empty exactly when x
            is indecomposable.
        - `stream() -> Iterator[H]`: Enumerate the semigroup; every element
            appears eventually.

    The methods `subtract` and `has_below` have default implementations in
    terms of the abstract ones; subclasses may override them with faster
    versions.
    """

    # Public Instance Attributes:
    #   - stats: Call counters, updated by subclasses.
    stats: OracleStats

    def __init__(self) -> None:
        """Initialize the oracle with zeroed counters."""
        self.stats = OracleStats()

    @abstractmethod
    def add(self, x: H, y: H) -> H:
        """Return a handle for x + y."""
        raise NotImplementedError

    @abstractmethod
    def eq(self, x: H, y: H) -> bool:
        """Return whether x and y name the same element."""
        raise NotImplementedError

    @abstractmethod
    def below(self, x: H) -> list[H]:
        """Return every proper summand of x."""
        raise NotImplementedError

    @abstractmethod
    def stream(self) -> Iterator[H]:
        """Enumerate every element of the semigroup."""
        raise NotImplementedError

    def has_below(self, x: H) -> bool:
        """Return whether x has a proper summand, i.e. is decomposable."""
        return bool(self.below(x))

    def subtract(self, x: H, y: H) -> Optional[H]:
        """Return the z with y + z = x, or None if y is not a proper summand of x.

        The difference is unique by cancellativity.
        """
        self.stats.subtract += 1
        for z in self.below(x):
            if self.eq(self.add(y, z), x):
                return z
        return None

    def multiple(self, x: H, k: int) -> H:
        """Return a handle for k*x with k >= 1."""
        result = x
        for _ in range(k - 1):
            result = self.add(result, x)
        return result


@dataclass(frozen=True)
class DifferenceHandle(Generic[H]):
    """The formal difference pos - neg in the group of differences.

    Instance Attributes:
        pos: The element being subtracted from.
        neg: The element being subtracted.
    """

    pos: H
    neg: H

    def equivalent(self, oracle: SemigroupOracle[H], other: 'DifferenceHandle[H]') -> bool:
        """Return whether pos - neg = other.pos - other.neg."""
        return oracle.eq(oracle.add(self.pos, other.neg), oracle.add(self.neg, other.pos))

    def negated(self) -> 'DifferenceHandle[H]':
        """Return neg - pos."""
        return DifferenceHandle(self.neg, self.pos)
