"""Test the :mod:`quadsemi.field` module."""
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quadsemi.errors import FieldMismatchError, InvalidFieldError
from quadsemi.field import (Embedding, Surd, compare_embedding, make_context,
                            succ, succeq)

FIELDS = [2, 3, 5, 6, 7, 13, 15, 17, 21, 97]

coefficients = st.integers(min_value=-10**6, max_value=10**6)
fields = st.sampled_from(FIELDS)


def _mp_value(D: int, a: int, b: int, which: Embedding) -> mpmath.mpf:
    """The value of a + b*omega_D at an embedding, to 60 digits."""
    with mpmath.workdps(60):
        root = mpmath.sqrt(D)
        if which is Embedding.SECOND:
            root = -root
        omega = (1 + root) / 2 if D % 4 == 1 else root
        return a + b * omega


class TestMakeContext:
    """Test :func:`quadsemi.field.make_context`."""

    @pytest.mark.parametrize('D, delta, trace_omega, norm_omega', [
        (2, 8, 0, -2),
        (3, 12, 0, -3),
        (5, 5, 1, -1),
        (13, 13, 1, -3),
    ])
    def test_constants(self, D: int, delta: int, trace_omega: int, norm_omega: int) -> None:
        """The discriminant and the trace and norm of omega depend on D mod 4."""
        ctx = make_context(D)
        assert (ctx.delta, ctx.trace_omega, ctx.norm_omega) == (delta, trace_omega, norm_omega)

    def test_cached(self) -> None:
        """Two calls with the same D give the same context object."""
        assert make_context(7) is make_context(7)

    @pytest.mark.parametrize('D, square', [(12, 4), (18, 9), (50, 25), (72, 4)])
    def test_not_squarefree(self, D: int, square: int) -> None:
        """The error names a square factor of D."""
        with pytest.raises(InvalidFieldError) as excinfo:
            make_context(D)
        assert excinfo.value.square_factor == square
        assert str(square) in str(excinfo.value)

    @pytest.mark.parametrize('D', [-3, 0, 1])
    def test_too_small(self, D: int) -> None:
        """D must be at least 2."""
        with pytest.raises(InvalidFieldError):
            make_context(D)


class TestQuadInt:
    """Test the :class:`quadsemi.field.QuadInt` class."""

    def test_norm_and_trace(self) -> None:
        """Norm and trace are computed in the omega basis."""
        ctx = make_context(5)
        x = ctx.element(2, 1)
        assert (x.norm(), x.trace()) == (5, 5)
        assert ctx.omega.conjugate() == ctx.element(1, -1)

    def test_field_mismatch(self) -> None:
        """Elements of different fields cannot be combined."""
        with pytest.raises(FieldMismatchError):
            make_context(2).one + make_context(3).one

    def test_total_positivity(self) -> None:
        """3 + 2*sqrt(2) is totally positive but 1 + sqrt(2) is not."""
        ctx = make_context(2)
        assert ctx.element(3, 2).is_totally_positive()
        assert not ctx.element(1, 1).is_totally_positive()
        assert not ctx.zero.is_totally_positive()
        assert ctx.zero.is_totally_nonnegative()

    def test_succ(self) -> None:
        """x succ y when x - y is totally positive."""
        ctx = make_context(2)
        assert succ(ctx.element(4), ctx.element(2, 1))
        assert not succ(ctx.element(3), ctx.element(2, 1))
        assert succeq(ctx.element(2, 1), ctx.element(2, 1))

    def test_pow(self) -> None:
        """Powers of the fundamental unit keep norm -1 or 1."""
        epsilon = make_context(2).element(1, 1)
        assert epsilon ** 2 == make_context(2).element(3, 2)
        assert (epsilon ** 7).norm() == -1

    @given(fields, coefficients, coefficients, coefficients, coefficients)
    def test_ring_laws(self, D: int, a: int, b: int, c: int, d: int) -> None:
        """Multiplication distributes, and norm and trace behave."""
        ctx = make_context(D)
        x, y = ctx.element(a, b), ctx.element(c, d)
        assert x * (y + ctx.one) == x * y + x
        assert (x * y).norm() == x.norm() * y.norm()
        assert (x + y).trace() == x.trace() + y.trace()
        assert x * x.conjugate() == ctx.element(x.norm())
        assert x.conjugate().conjugate() == x

    @given(fields, coefficients, coefficients, coefficients, coefficients)
    def test_compare_embedding_against_mpmath(self, D: int, a: int, b: int,
                                              c: int, d: int) -> None:
        """Exact embedding comparison agrees with 60-digit floating point."""
        assume((a, b) != (c, d))
        ctx = make_context(D)
        x, y = ctx.element(a, b), ctx.element(c, d)
        for which in Embedding:
            difference = _mp_value(D, a - c, b - d, which)
            expected = 1 if difference > 0 else -1
            assert compare_embedding(x, y, which) == expected

    @given(fields, coefficients, coefficients)
    def test_sqrt_form(self, D: int, a: int, b: int) -> None:
        """(x + y*sqrt(D))/k has the same first embedding as the element."""
        ctx = make_context(D)
        x, y, k = ctx.element(a, b).sqrt_form()
        with mpmath.workdps(60):
            value = (x + y * mpmath.sqrt(D)) / k
            assert mpmath.almosteq(value, _mp_value(D, a, b, Embedding.FIRST), 1e-40)


class TestSurd:
    """Test the :class:`quadsemi.field.Surd` class."""

    def test_floor_and_ceil(self) -> None:
        """Floors and ceilings of irrational surds."""
        assert Surd(0, 1, 5).floor() == 2
        assert Surd(0, -1, 5).floor() == -3
        assert Surd(0, 1, 5).ceil() == 3
        assert Surd(56, 50, 8).floor() == 197
        assert Surd(Fraction(7, 3), 0, 5).floor() == 2

    def test_division(self) -> None:
        """Division goes through the conjugate."""
        x = Surd(1, 1, 8)
        assert x / x == 1
        assert (1 / x) * x == 1

    def test_ordering(self) -> None:
        """sqrt(8) lies strictly between 2 and 3."""
        root = Surd(0, 1, 8)
        assert 2 < root < 3
        assert root != 3
        assert root * root == 8

    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), fields)
    def test_sign_against_mpmath(self, A: int, B: int, D: int) -> None:
        """Exact sign agrees with high-precision evaluation."""
        with mpmath.workdps(60):
            value = A + B * mpmath.sqrt(D)
            expected = 0 if A == 0 and B == 0 else (1 if value > 0 else -1)
        assert Surd(A, B, D).sign() == expected
