"""Recovering D from the additive semigroup O_K^+ alone."""
import logging
from dataclasses import dataclass
from typing import Optional

from quadsemi import settings
from quadsemi.errors import InvalidPeriodError, RetriableReconstructionError
from quadsemi.reconstruction.chain import (
    LabeledChain,
    build_chain,
    companions,
    find_A,
    is_indecomposable_abs,
    is_ud_abs,
    k_alpha,
    recover_period,
)
from quadsemi.reconstruction.oracle import DifferenceHandle, OracleStats, SemigroupOracle
from quadsemi.reconstruction.period import period_to_D
from quadsemi.reconstruction.scrambled import OpaqueHandle, ScrambledOracle, scrambled_oracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reconstruction:
    """The outcome of a successful reconstruction.

    Instance Attributes:
        D: The recovered field.
        period: The label period read off the chain.
        chain: The chain it was read from.
        radius: The radius that succeeded.
        attempts: How many radii were tried.
    """

    D: int
    period: tuple[int, ...]
    chain: LabeledChain
    radius: int
    attempts: int


def run_reconstruction(o: SemigroupOracle, radius: Optional[int] = None,
                       max_escalations: Optional[int] = None,
                       repetitions: Optional[int] = None) -> Reconstruction:
    """Recover D from an oracle, doubling the chain radius on retriable failures.

    Unset arguments are taken from quadsemi.settings.

    Raises:
        RetriableReconstructionError: If every radius up to the escalation
            cap failed.
        ChainTopologyError: If the companion graph is not a path.
    """
    radius = settings.get_radius() if radius is None else radius
    max_escalations = settings.get_max_escalations() if max_escalations is None \
        else max_escalations
    repetitions = settings.get_repetitions() if repetitions is None else repetitions

    slack = 2
    last_error: Optional[Exception] = None
    for attempt in range(max_escalations + 1):
        try:
            chain = build_chain(o, radius, label_slack=slack)
            period = recover_period(chain, repetitions)
            D = period_to_D(period)
        except (RetriableReconstructionError, InvalidPeriodError) as e:
            last_error = e
            logger.info(f'Reconstruction at radius {radius} failed ({e}); escalating.')
            radius, slack = radius * 2, slack * 2
            continue
        return Reconstruction(D=D, period=tuple(period), chain=chain,
                              radius=radius, attempts=attempt + 1)

    raise RetriableReconstructionError(
        f'Gave up after {max_escalations + 1} attempts: {last_error}')


def reconstruct(o: SemigroupOracle) -> int:
    """Return the D for which the oracle wraps the totally positive integers of Q(sqrt(D))."""
    return run_reconstruction(o).D


__all__ = [
    'DifferenceHandle',
    'LabeledChain',
    'OpaqueHandle',
    'OracleStats',
    'Reconstruction',
    'ScrambledOracle',
    'SemigroupOracle',
    'build_chain',
    'companions',
    'find_A',
    'is_indecomposable_abs',
    'is_ud_abs',
    'k_alpha',
    'period_to_D',
    'reconstruct',
    'recover_period',
    'run_reconstruction',
    'scrambled_oracle',
]
