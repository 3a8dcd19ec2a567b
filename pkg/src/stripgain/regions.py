"""Vertical lines and strips of the complex plane, in rate coordinates.

A rate ``lam >= 0`` names the vertical line Re(s) = -lam.  An open interval
of rates (lo, hi) names the open strip -hi < Re(s) < -lo.  Rates are kept
separate from raw real parts on purpose: all analysis routines take rates,
while the Laplace helpers (which allow half planes) work with real parts
directly and convert explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInput


@dataclass(frozen=True)
class Line:
    """Vertical line Re(s) = -lam for a decay rate lam >= 0."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise InvalidInput("line rate must be finite, got %r" % (self.lam,))
        if self.lam < 0:
            raise InvalidInput("line rate must be >= 0, got %g" % self.lam)

    @property
    def real_part(self) -> float:
        """Real part of every point on the line."""
        return -self.lam


@dataclass(frozen=True)
class Strip:
    """Open vertical strip -hi < Re(s) < -lo given by a rate interval."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise InvalidInput("strip rates must be finite")
        if not 0 <= self.lo < self.hi:
            raise InvalidInput(
                "strip rates must satisfy 0 <= lo < hi, got (%g, %g)"
                % (self.lo, self.hi)
            )

    @property
    def lower_line(self) -> Line:
        """Boundary line at the smaller rate (right edge of the strip)."""
        return Line(self.lo)

    @property
    def upper_line(self) -> Line:
        """Boundary line at the larger rate (left edge of the strip)."""
        return Line(self.hi)

    def interior_rates(self, count: int) -> list[float]:
        """Equally spaced rates strictly inside the interval."""
        if count < 1:
            return []
        step = (self.hi - self.lo) / (count + 1)
        return [self.lo + step * (k + 1) for k in range(count)]

    def contains_real_part(self, x: float, margin: float = 0.0) -> bool:
        """Whether Re(s) = x lies in the closed strip widened by margin."""
        return -self.hi - margin <= x <= -self.lo + margin
