"""Test the :mod:`quadsemi.norms` module."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadsemi.contfrac import convergent
from quadsemi.errors import IndexRangeError
from quadsemi.field import is_squarefree, make_context
from quadsemi.norms import (LowerCase, audit_bounds, audit_indecomposable_norms,
                            audit_ud_norms, bounds_check, convergent_norms_check,
                            norm_combination, norm_recurrence_check, ud_norm_bound)

FIELDS = [2, 3, 5, 6, 7, 13, 19, 31, 46, 94]


@pytest.mark.parametrize('D', FIELDS)
def test_recurrences(D: int) -> None:
    """The N/T recurrences hold far along the convergents."""
    check = norm_recurrence_check(make_context(D), 60)
    assert check
    assert check.failing_index is None


def test_recurrence_range() -> None:
    """i_max must be non-negative."""
    with pytest.raises(IndexRangeError):
        norm_recurrence_check(make_context(2), -1)


@settings(max_examples=2000, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 12), st.integers(-40, 40), st.integers(-40, 40))
def test_norm_combination_factors(D: int, k: int, m: int, n: int) -> None:
    """The direct norm and the factored form always agree."""
    ctx = make_context(D)
    i = 2 * k - 1
    expected = (convergent(ctx, i).alpha * m + convergent(ctx, i + 1).alpha * n).norm()
    assert norm_combination(ctx, i, m, n) == expected


@pytest.mark.parametrize('i', [1, 3, 5])
def test_norm_combination_of_convergent(i: int) -> None:
    """For odd i, m = 1 and n = 0 give +N_i."""
    ctx = make_context(7)
    assert norm_combination(ctx, i, 1, 0) == convergent(ctx, i).N


def test_norm_combination_even_index() -> None:
    """The block index must be odd."""
    with pytest.raises(IndexRangeError):
        norm_combination(make_context(2), 0, 1, 1)


class TestBoundsCheck:
    """Test :func:`quadsemi.norms.bounds_check`."""

    def test_second_upper_bound_is_attained(self) -> None:
        """2 + omega in Q(sqrt(5)) has norm exactly delta/(4 N_0) * (e+f)^2."""
        report = bounds_check(make_context(5), -1, 0, 1, 1)
        assert report.element == make_context(5).element(2, 1)
        assert report.norm == 5
        assert report.upper2_holds
        assert not report.upper2_strict_holds
        assert report.ok

    def test_convergent_multiple_claims_nothing(self) -> None:
        """For f = r = 0 the only lower check is a placeholder that holds."""
        report = bounds_check(make_context(2), 1, 0, 3, 0)
        assert report.lower_cases == (LowerCase.CONVERGENT_MULTIPLE,)
        assert report.lower_holds

    def test_no_f_case(self) -> None:
        """f = 0 with r > 0 uses the NO_F lower bound."""
        report = bounds_check(make_context(2), -1, 1, 2, 0)
        assert report.lower_cases == (LowerCase.NO_F,)
        assert report.ok

    @pytest.mark.parametrize('i, r, e, f, c', [
        (0, 0, 1, 1, Fraction(1, 2)),
        (-3, 0, 1, 1, Fraction(1, 2)),
        (-1, 2, 1, 1, Fraction(1, 2)),
        (-1, 0, 0, 1, Fraction(1, 2)),
        (-1, 0, 1, -1, Fraction(1, 2)),
        (-1, 0, 1, 1, Fraction(1)),
        (-1, 0, 1, 1, Fraction(0)),
    ])
    def test_parameter_ranges(self, i: int, r: int, e: int, f: int, c: Fraction) -> None:
        """Out of range parameters are rejected."""
        with pytest.raises(IndexRangeError):
            bounds_check(make_context(2), i, r, e, f, c)


@pytest.mark.parametrize('D', [2, 3, 5, 6, 7, 13, 19])
def test_audit_bounds_small(D: int) -> None:
    """No bound fails on a small grid."""
    assert audit_bounds(make_context(D), 5, 6) == []


@pytest.mark.slow
@pytest.mark.parametrize('D', [D for D in range(2, 501) if is_squarefree(D)])
def test_audit_bounds_wide(D: int) -> None:
    """No bound fails for D <= 500 with e + f <= 10 and i <= 9."""
    assert audit_bounds(make_context(D), 9, 10) == []


def test_ud_norm_bound() -> None:
    """7*8 + 50*sqrt(8) lies between 197 and 198."""
    bound = ud_norm_bound(make_context(2))
    assert bound.floor == 197
    assert 197 < bound.value < 198


@pytest.mark.parametrize('D', [D for D in range(2, 101) if is_squarefree(D)])
def test_norm_audits(D: int) -> None:
    """UD norms, convergent norms and indecomposable norms stay under their caps."""
    ctx = make_context(D)
    assert audit_ud_norms(ctx)
    assert convergent_norms_check(ctx, 40)
    assert audit_indecomposable_norms(ctx)


@pytest.mark.slow
def test_norm_audits_wide() -> None:
    """The norm caps hold for every D <= 2000."""
    for D in range(2, 2001):
        if is_squarefree(D):
            ctx = make_context(D)
            assert audit_ud_norms(ctx), D
            assert convergent_norms_check(ctx, 20), D
            assert audit_indecomposable_norms(ctx), D
