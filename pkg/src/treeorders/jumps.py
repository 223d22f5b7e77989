"""Piecewise-affine increasing functions on the chart (0, 1] with finitely
many jump discontinuities, and their continuization."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .common import DomainError


@dataclass(frozen=True)
class JumpFunction:
    """Breaks ``0 = b_0 < b_1 < ... < b_m = 1``.

    On ``(b_i, b_{i+1})`` the function rises affinely from ``lows[i]`` (its
    right limit at ``b_i``) to ``highs[i]`` (its left limit at ``b_{i+1}``).
    ``values[i]`` is the value at ``b_{i+1}``.  Monotonicity requires
    ``lows[i] < highs[i] <= values[i] <= lows[i+1]``.
    """

    breaks: tuple
    lows: tuple
    highs: tuple
    values: tuple

    def __post_init__(self):
        b = tuple(Fraction(x) for x in self.breaks)
        lows = tuple(Fraction(x) for x in self.lows)
        highs = tuple(Fraction(x) for x in self.highs)
        values = tuple(Fraction(x) for x in self.values)
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "lows", lows)
        object.__setattr__(self, "highs", highs)
        object.__setattr__(self, "values", values)
        m = len(b) - 1
        if m < 1 or b[0] != 0 or b[-1] != 1:
            raise DomainError("breaks must run from 0 to 1")
        if any(x >= y for x, y in zip(b, b[1:])):
            raise DomainError("breaks must strictly increase")
        if not (len(lows) == len(highs) == len(values) == m):
            raise DomainError("need one low, high and value per piece")
        for i in range(m):
            if not lows[i] < highs[i]:
                raise DomainError(f"piece {i} is not strictly increasing")
            if not highs[i] <= values[i]:
                raise DomainError(f"value at {b[i + 1]} below its left limit")
            if i + 1 < m and not values[i] <= lows[i + 1]:
                raise DomainError(f"value at {b[i + 1]} above its right limit")

    @classmethod
    def affine(cls, lo, hi) -> "JumpFunction":
        return cls((0, 1), (lo,), (hi,), (hi,))

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple]) -> "JumpFunction":
        """``pieces`` holds ``(end, low, high)``; each knot takes its left limit
        as its value."""
        breaks = [Fraction(0)] + [Fraction(p[0]) for p in pieces]
        lows = [p[1] for p in pieces]
        highs = [p[2] for p in pieces]
        return cls(tuple(breaks), tuple(lows), tuple(highs), tuple(highs))

    @property
    def pieces(self) -> int:
        return len(self.breaks) - 1

    def _piece(self, t: Fraction) -> int:
        # index i with b_i < t <= b_{i+1}
        return bisect_left(self.breaks, t) - 1

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 < t <= 1:
            raise DomainError(f"{t} is outside the chart (0, 1]")
        i = self._piece(t)
        if t == self.breaks[i + 1]:
            return self.values[i]
        return self._affine(i, t)

    def _affine(self, i: int, t: Fraction) -> Fraction:
        b0, b1 = self.breaks[i], self.breaks[i + 1]
        return self.lows[i] + (self.highs[i] - self.lows[i]) * (t - b0) / (b1 - b0)

    def left_limit(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 < t <= 1:
            raise DomainError(f"{t} is outside the chart (0, 1]")
        i = self._piece(t)
        return self._affine(i, t)

    def right_limit(self, t) -> Fraction:
        """Infimum of the values strictly above ``t``; ``t < 1``."""
        t = Fraction(t)
        if not 0 <= t < 1:
            raise DomainError(f"no right limit at {t}")
        i = bisect_left(self.breaks, t)
        if i < len(self.breaks) and self.breaks[i] == t:
            return self.lows[i]
        return self._affine(i - 1, t)

    @property
    def infimum(self) -> Fraction:
        return self.lows[0]

    def jumps(self) -> list[tuple]:
        """``(x, size)`` for every interior break with a positive jump, plus a
        top break whose value exceeds its left limit."""
        out = []
        for i in range(1, self.pieces):
            size = self.lows[i] - self.highs[i - 1]
            if size > 0:
                out.append((self.breaks[i], size))
        if self.values[-1] > self.highs[-1]:
            out.append((Fraction(1), self.values[-1] - self.highs[-1]))
        return out

    def is_continuous(self) -> bool:
        return not self.jumps()

    def shifted(self, delta) -> "JumpFunction":
        d = Fraction(delta)
        return JumpFunction(
            self.breaks,
            tuple(x + d for x in self.lows),
            tuple(x + d for x in self.highs),
            tuple(x + d for x in self.values),
        )

    def preimage(self, y) -> Fraction:
        """The parameter mapped to ``y``; continuous functions only."""
        y = Fraction(y)
        if not self.is_continuous():
            raise DomainError("preimage needs a continuous function")
        if not self.lows[0] < y <= self.values[-1]:
            raise DomainError(f"{y} is outside the range")
        for i in range(self.pieces):
            if y <= self.highs[i]:
                b0, b1 = self.breaks[i], self.breaks[i + 1]
                return b0 + (y - self.lows[i]) * (b1 - b0) / (self.highs[i] - self.lows[i])
        raise AssertionError("unreachable")


def continuize(f: JumpFunction, target_inf=None, *, shift: bool = True) -> JumpFunction:
    """Remove every jump, keeping strict monotonicity.

    With ``J`` the interior jumps: ``g(x) = f(x-) - sum_{y<x} j(y)`` and
    ``h(x) = g(x) + sum_{y<x} (x - y)/(1 - y) * j(y)``; ``h <= f``.  The result
    is then shifted so its infimum equals ``target_inf`` (default: keep
    ``inf f``).
    """
    jumps = [(x, s) for x, s in f.jumps() if x < 1]

    def h(x: Fraction) -> Fraction:
        total = f.left_limit(x)
        for y, j in jumps:
            if y < x:
                total += -j + (x - y) / (1 - y) * j
        return total

    lows, highs = [], []
    for i in range(f.pieces):
        b0, b1 = f.breaks[i], f.breaks[i + 1]
        # right limit at b0: f(b0+) = lows[i]; jumps at y <= b0 have y < x
        lo = f.lows[i]
        for y, j in jumps:
            if y <= b0:
                lo += -j + (b0 - y) / (1 - y) * j
        lows.append(lo)
        highs.append(h(b1))
    out = JumpFunction(f.breaks, tuple(lows), tuple(highs), tuple(highs))
    if shift and target_inf is not None:
        out = out.shifted(Fraction(target_inf) - out.infimum)
    return out
