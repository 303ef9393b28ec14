"""Recovering the continued fraction period from additive structure alone.

Everything here works through a SemigroupOracle; nothing looks at
coordinates. The steps are:

  - A is the set of indecomposables alpha with 2*alpha uniquely
    decomposable, and k_alpha is the largest k with k*alpha uniquely
    decomposable.
  - Each alpha in A has exactly two companions: indecomposables beta below
    (k_alpha + 1)*alpha with (k_alpha - 1)*alpha + beta uniquely
    decomposable.
  - Walking from alpha through a companion beta, the next vertex of A is
    alpha + l*(beta - alpha) for the least l >= 1 landing in A.

Labelling alpha by k_alpha - 1 and each step by its l gives a path whose
labels repeat the period of the continued fraction.
"""
import logging
import math
import weakref
from dataclasses import dataclass
from typing import Generic, Hashable, Optional, TypeVar, Union

from quadsemi.errors import ChainTopologyError, RetriableReconstructionError
from quadsemi.reconstruction.oracle import DifferenceHandle, SemigroupOracle

logger = logging.getLogger(__name__)

H = TypeVar('H', bound=Hashable)

Bound = Union[int, float]


class _Explorer(Generic[H]):
    """Memo tables for the intrinsic predicates of one oracle."""

    # Private Instance Attributes:
    #   _oracle: The oracle being explored.
    #   _rank: First-seen order of handles, used to order parts.
    #   _below: Cached summand lists.
    #   _indecomposable: Cached indecomposability verdicts.
    #   _counts: Decomposition counts capped at 2, keyed by (handle, bound).
    _oracle: SemigroupOracle[H]
    _rank: dict[H, int]
    _below: dict[H, list[H]]
    _indecomposable: dict[H, bool]
    _counts: dict[tuple[H, Bound], int]

    def __init__(self, oracle: SemigroupOracle[H]) -> None:
        self._oracle = oracle
        self._rank = {}
        self._below = {}
        self._indecomposable = {}
        self._counts = {}

    def rank(self, h: H) -> int:
        return self._rank.setdefault(h, len(self._rank))

    def below(self, h: H) -> list[H]:
        if h not in self._below:
            self._below[h] = self._oracle.below(h)
        return self._below[h]

    def is_indecomposable(self, h: H) -> bool:
        if h not in self._indecomposable:
            if h in self._below:
                self._indecomposable[h] = not self._below[h]
            else:
                self._indecomposable[h] = not self._oracle.has_below(h)
        return self._indecomposable[h]

    def count(self, h: H, bound: Bound = math.inf) -> int:
        """Count decompositions of h into parts of rank <= bound, capped at 2."""
        if self.is_indecomposable(h):
            return 1 if self.rank(h) <= bound else 0

        key = (h, bound)
        if key in self._counts:
            return self._counts[key]

        summands = self.below(h)
        for y in summands:
            self.rank(y)
        total = 0
        for y in summands:
            if total >= 2:
                break
            if self.rank(y) > bound or not self.is_indecomposable(y):
                continue
            rest = self._oracle.subtract(h, y)
            if rest is None:
                raise ChainTopologyError(f'{y!r} is listed below {h!r} but is not a summand')
            total += self.count(rest, self.rank(y))
        total = min(total, 2)
        self._counts[key] = total
        return total


_explorers: 'weakref.WeakKeyDictionary[SemigroupOracle, _Explorer]' = weakref.WeakKeyDictionary()


def _explorer(o: SemigroupOracle[H]) -> _Explorer[H]:
    explorer = _explorers.get(o)
    if explorer is None:
        explorer = _explorers[o] = _Explorer(o)
    return explorer


def is_indecomposable_abs(o: SemigroupOracle[H], h: H) -> bool:
    """Return whether h is not a sum of two elements."""
    return _explorer(o).is_indecomposable(h)


def is_ud_abs(o: SemigroupOracle[H], h: H) -> bool:
    """Return whether h has exactly one decomposition into indecomposables."""
    return _explorer(o).count(h) == 1


def _in_A(o: SemigroupOracle[H], h: H) -> bool:
    return is_indecomposable_abs(o, h) and is_ud_abs(o, o.add(h, h))


def find_A(o: SemigroupOracle[H], window: int) -> list[H]:
    """Return the first window elements of A produced by the oracle's stream.

    Raises:
        ValueError: If window < 1.
    """
    if window < 1:
        raise ValueError(f'window must be at least 1, got {window}')

    found: list[H] = []
    seen: set[H] = set()
    for h in o.stream():
        if h in seen:
            continue
        seen.add(h)
        if _in_A(o, h):
            found.append(h)
            if len(found) == window:
                return found
    return found


def k_alpha(o: SemigroupOracle[H], h: H) -> int:
    """Return the largest k such that k*h is uniquely decomposable."""
    k, current = 1, h
    while True:
        following = o.add(current, h)
        if not is_ud_abs(o, following):
            return k
        k, current = k + 1, following


def companions(o: SemigroupOracle[H], h: H, k: Optional[int] = None) -> tuple[H, H]:
    """Return the two companions of h in A.

    Args:
        o: The oracle.
        h: An element of A.
        k: k_alpha(o, h), if already known.

    Raises:
        ChainTopologyError: If h does not have exactly two companions.
    """
    if k is None:
        k = k_alpha(o, h)
    if k < 2:
        raise ChainTopologyError(f'{h!r} is not in A (k_alpha = {k})')

    explorer = _explorer(o)
    base = o.multiple(h, k - 1)
    found = []
    for y in explorer.below(o.multiple(h, k + 1)):
        if o.eq(y, h) or not explorer.is_indecomposable(y):
            continue
        if is_ud_abs(o, o.add(base, y)):
            found.append(y)
    if len(found) != 2:
        raise ChainTopologyError(f'{h!r} has {len(found)} companions, expected 2')
    return found[0], found[1]


@dataclass(frozen=True)
class ChainVertex:
    """A vertex of the labelled chain.

    Instance Attributes:
        kind: 'A' for an element of A, 'B' for a difference class.
        label: k_alpha - 1 for A-vertices, the step multiplier l for B-vertices.
        handles: The element for A-vertices, or (beta, alpha) for the class
            beta - alpha of a B-vertex.
    """

    kind: str
    label: int
    handles: tuple


@dataclass(frozen=True)
class LabeledChain:
    """A finite stretch of the chain, centred on the first element of A found."""

    vertices: tuple[ChainVertex, ...]
    center: int

    @property
    def labels(self) -> list[int]:
        """The labels from one end of the chain to the other."""
        return [v.label for v in self.vertices]

    @property
    def is_palindromic(self) -> bool:
        """Whether the labels read the same in both directions around the centre."""
        labels = self.labels
        return labels == labels[::-1] and self.center == len(labels) // 2

    def excerpt(self, width: int = 9) -> list[int]:
        """Return up to width labels around the centre."""
        start = max(0, self.center - width // 2)
        return self.labels[start:start + width]


def _walk(o: SemigroupOracle[H], start: H, first: H, steps: int,
          label_cap: int) -> list[ChainVertex]:
    """Walk steps A-vertices away from start, leaving through companion first."""
    vertices = []
    visited = {start}
    alpha, beta = start, first
    for _ in range(steps):
        incoming = DifferenceHandle(beta, alpha)
        following = None
        for l in range(1, label_cap + 1):
            if l == 1:
                candidate = beta
            else:
                candidate = o.subtract(o.multiple(beta, l), o.multiple(alpha, l - 1))
            if candidate is not None and _in_A(o, candidate):
                following = candidate
                break
        if following is None:
            raise RetriableReconstructionError(
                f'No element of A within {label_cap} steps of {alpha!r}')
        if following in visited:
            raise ChainTopologyError(f'The chain revisits {following!r}')
        visited.add(following)

        k = k_alpha(o, following)
        vertices.append(ChainVertex('B', l, (beta, alpha)))
        vertices.append(ChainVertex('A', k - 1, (following,)))
        logger.debug('Chain step: l=%d, label=%d', l, k - 1)

        pair = companions(o, following, k)
        forward = [c for c in pair
                   if not DifferenceHandle(following, c).equivalent(o, incoming)]
        if len(forward) != 1:
            raise ChainTopologyError(
                f'{following!r} has {2 - len(forward)} companions matching the incoming step')
        alpha, beta = following, forward[0]
    return vertices


def build_chain(o: SemigroupOracle[H], radius: int, label_slack: int = 2) -> LabeledChain:
    """Build the labelled chain with radius A-steps on each side of the centre.

    The centre is the first element of A produced by the stream. Step
    multipliers are searched up to the largest label seen at the centre and
    its companions plus label_slack.

    Raises:
        ValueError: If radius < 1.
        ChainTopologyError: If the companion graph is not a path, or its
            labels do not read the same in both directions from the centre.
        RetriableReconstructionError: If a step multiplier exceeds the cap.
    """
    if radius < 1:
        raise ValueError(f'radius must be at least 1, got {radius}')

    center = find_A(o, 1)[0]
    k = k_alpha(o, center)
    left_first, right_first = companions(o, center, k)
    cap = k - 1 + label_slack

    right = _walk(o, center, right_first, radius, cap)
    left = _walk(o, center, left_first, radius, cap)
    vertices = (*reversed(left), ChainVertex('A', k - 1, (center,)), *right)
    logger.debug('Built chain with %d vertices', len(vertices))
    chain = LabeledChain(vertices=tuple(vertices), center=len(left))
    if not chain.is_palindromic:
        raise ChainTopologyError(f'Labels are not a palindrome around the centre: {chain.labels}')
    return chain


def recover_period(chain: LabeledChain, repetitions: int = 3) -> list[int]:
    """Return the shortest period of the chain labels, starting at its largest label.

    Raises:
        RetriableReconstructionError: If the chain does not show the period
            at least `repetitions` times.
    """
    labels = chain.labels
    n = len(labels)
    for p in range(1, n // repetitions + 1):
        if all(labels[k] == labels[k + p] for k in range(n - p)):
            start = labels.index(max(labels))
            return labels[start:start + p]
    raise RetriableReconstructionError(
        f'No period repeats {repetitions} times in {n} labels')
