"""Compensated floating-point accumulation.

Long sweeps add up to ~10^10 terms; a plain running float64 sum would lose
digits well before that.  NeumaierSum keeps a correction term alongside the
running sum so the result stays accurate to a few ulps, and its (sum,
residual) state can be persisted for exact checkpoint resume.
"""

from __future__ import annotations


class NeumaierSum:
    """Running sum with Kahan-Babuska (Neumaier) compensation."""

    __slots__ = ("_s", "_c")

    def __init__(self, value: float = 0.0, residual: float = 0.0):
        self._s = float(value)
        self._c = float(residual)

    def add(self, x: float) -> None:
        s = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - s) + x
        else:
            self._c += (x - s) + self._s
        self._s = s

    @property
    def value(self) -> float:
        return self._s + self._c

    @property
    def state(self) -> tuple[float, float]:
        """(sum, residual) pair; round-trips exactly through the constructor."""
        return (self._s, self._c)

    def __repr__(self) -> str:
        return f"NeumaierSum({self._s!r}, {self._c!r})"
