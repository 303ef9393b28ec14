"""Test recovering D from a continued fraction period."""
import pytest

from quadsemi.contfrac import sigma_expand
from quadsemi.errors import InvalidPeriodError, RetriableReconstructionError
from quadsemi.field import is_squarefree, make_context
from quadsemi.reconstruction import LabeledChain, period_to_D, recover_period
from quadsemi.reconstruction.chain import ChainVertex


@pytest.mark.parametrize('D', [D for D in range(2, 301) if is_squarefree(D)])
def test_period_to_D_inverts_expansion(D: int) -> None:
    """The period of sigma_D determines D."""
    assert period_to_D(sigma_expand(make_context(D)).u) == D


def test_periods_are_distinct() -> None:
    """No two fields with D <= 100 share a period."""
    fields = [D for D in range(2, 101) if is_squarefree(D)]
    periods = {sigma_expand(make_context(D)).u for D in fields}
    assert len(periods) == len(fields)


@pytest.mark.parametrize('period', [
    [],
    [0],
    [2, -1],
    [2, 2],
    [1, 1],
])
def test_period_to_D_rejects(period: list) -> None:
    """Sequences that are not the period of any sigma_D are rejected."""
    with pytest.raises(InvalidPeriodError):
        period_to_D(period)


def _chain(labels: list[int]) -> LabeledChain:
    kinds = ['A' if k % 2 == 0 else 'B' for k in range(len(labels))]
    vertices = tuple(ChainVertex(kind, label, ()) for kind, label in zip(kinds, labels))
    return LabeledChain(vertices=vertices, center=len(labels) // 2)


class TestRecoverPeriod:
    """Test :func:`quadsemi.reconstruction.recover_period`."""

    def test_starts_at_largest_label(self) -> None:
        """The shortest period is rotated to start at its largest label."""
        assert recover_period(_chain([1, 2, 1, 2, 1, 2, 1])) == [2, 1]
        assert recover_period(_chain([3] * 7)) == [3]

    def test_needs_enough_repetitions(self) -> None:
        """A chain that does not repeat its period often enough is rejected."""
        with pytest.raises(RetriableReconstructionError):
            recover_period(_chain([1, 2, 3]))
        with pytest.raises(RetriableReconstructionError):
            recover_period(_chain([1, 2, 1, 2, 1]), repetitions=3)

    def test_excerpt_and_palindrome(self) -> None:
        """The excerpt is centred and symmetric chains are palindromic."""
        chain = _chain([1, 2, 1, 2, 1, 2, 1])
        assert chain.is_palindromic
        assert chain.excerpt(3) == [1, 2, 1]
