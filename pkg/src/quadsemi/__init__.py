"""Exact arithmetic for the semigroup of totally positive integers of real quadratic fields."""
from quadsemi.field import FieldContext, QuadInt, Surd, make_context

__all__ = ['FieldContext', 'QuadInt', 'Surd', 'make_context']
