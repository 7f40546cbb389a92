"""Errors raised by the zetaforms apps.

Every error derives from ``ZetaFormsError`` so that management commands can
turn any library failure into a clean exit code.
"""


class ZetaFormsError(Exception):
    """Base class for all zetaforms errors."""


class ParameterError(ZetaFormsError, ValueError):
    """A construction parameter or plan violates one of its invariants."""


class CyclotomicDivisionError(ZetaFormsError, ZeroDivisionError):
    def __init__(self, message='division by zero in cyclotomic field'):
        super().__init__(message)


class RecurrenceRangeError(ZetaFormsError):
    """Exact division by 1 - z left a remainder: the level is out of range."""

    def __init__(self, k, remainder=None):
        self.k = k
        self.remainder = remainder
        super().__init__(f'P_{{k-1,1}}(1) ≠ 0 at level k={k} (remainder {remainder})')


class IntegralityError(ZetaFormsError):
    """An entry certified to be an integer has a nontrivial denominator."""

    def __init__(self, k, i, value):
        self.k = k
        self.i = i
        self.value = value
        super().__init__(f's[{k}][{i}] = {value} is not an integer')


class DivergentSeriesError(ZetaFormsError, ValueError):
    pass


class CriterionHypothesisError(ZetaFormsError):
    def __init__(self, message='criterion hypotheses fail'):
        super().__init__(message)


class NonRationalEntryError(ZetaFormsError):
    """A cyclotomic matrix product did not reduce to a rational number."""

    def __init__(self, row, column, value):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f'product entry ({row}, {column}) = {value} is not rational')
