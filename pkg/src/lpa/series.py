"""Truncated formal power series over an exact field.

``H = h_1 + h_2 x + ... + h_m x^(m-1)``; coefficients past the stored ones
are zero and ``order`` is the truncation used by products and inverses.
"""

from __future__ import annotations

from .errors import NotInvertibleError, PreconditionError
from .fields import QQ


class TruncatedPowerSeries:
    def __init__(self, coefficients, order=None, field=QQ):
        coefficients = [field(h) for h in coefficients]
        order = len(coefficients) if order is None else order
        if order < 1:
            raise PreconditionError("truncation order must be >= 1")
        self.field = field
        self.order = order
        self.coefficients = tuple((coefficients + [field.zero] * order)[:order])

    def __getitem__(self, j):
        """h_j, 1-based like the series index; zero past the end."""
        if j < 1:
            raise IndexError(j)
        return self.coefficients[j - 1] if j <= self.order else self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedPowerSeries)
            and self.order == other.order
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash(self.coefficients)

    def __mul__(self, other):
        return series_mul(self, other)

    def truncate(self, order):
        return TruncatedPowerSeries(self.coefficients[:order], order, self.field)

    def to_json(self):
        return [self.field.format(h) for h in self.coefficients]

    def __repr__(self):
        return f"TruncatedPowerSeries({self.to_json()}, order={self.order})"


def series_mul(H, K, order=None):
    """Cauchy product truncated at ``order`` (default: the smaller order)."""
    m = min(H.order, K.order) if order is None else order
    out = []
    for k in range(1, m + 1):
        out.append(sum((H[i] * K[k + 1 - i] for i in range(1, k + 1)), H.field.zero))
    return TruncatedPowerSeries(out, m, H.field)


def series_invert(H, order=None):
    m = H.order if order is None else order
    a0 = H[1]
    if not a0:
        raise NotInvertibleError("constant term is zero")
    inv = [H.field.one / a0]
    for k in range(2, m + 1):
        s = sum((H[i] * inv[k - i] for i in range(2, k + 1)), H.field.zero)
        inv.append(-s / a0)
    return TruncatedPowerSeries(inv, m, H.field)
