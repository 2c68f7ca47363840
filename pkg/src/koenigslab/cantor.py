"""Self-similar Cantor sets with exact membership and interval queries.

A set is built on a base interval by keeping the two outer ``keep_fraction``
sub-intervals of every cell and recursing; ``keep_fraction = 1/3`` is the
ternary middle-thirds set.  Queries run in exact rational arithmetic
(every float converts exactly to a Fraction), so membership is decided by
digit expansion with no drift, up to the declared depth cap.  Construction
cell endpoints always belong to the set, which is what makes the interval
intersection query exact above the cap scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CantorSet:
    lo: float
    hi: float
    keep_fraction: float = 1.0 / 3.0
    depth: int = 60

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValueError("base interval must be nondegenerate")
        if not (0.0 < self.keep_fraction < 0.5):
            raise ValueError("keep_fraction must lie in (0, 1/2)")

    def _frac(self):
        f = Fraction(self.keep_fraction)
        if f == Fraction(6004799503160661, 18014398509481984):  # float(1/3)
            f = Fraction(1, 3)
        return f

    # -- membership -------------------------------------------------------

    def contains(self, y: float) -> bool:
        """Exact membership by digit expansion, up to the depth cap."""
        f = self._frac()
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        t = (Fraction(y) - lo) / (hi - lo)
        if t < 0 or t > 1:
            return False
        for _ in range(self.depth):
            if t <= f:
                t = t / f
            elif t >= 1 - f:
                t = (t - (1 - f)) / f
            else:
                return False
        return True

    # -- interval queries --------------------------------------------------

    def intersects(self, a: float, b: float) -> bool:
        """Does [a, b] contain a point of the set?  Exact above the cap."""
        if b < a:
            return False
        fa, fb = Fraction(a), Fraction(b)
        return self._intersects(fa, fb, Fraction(self.lo), Fraction(self.hi), self._frac(), self.depth)

    def _intersects(self, a, b, clo, chi, f, depth):
        if b < clo or a > chi:
            return False
        if a <= clo or chi <= b:
            return True  # cell endpoints belong to the set
        if depth == 0:
            return True  # below cap: conservative
        w = (chi - clo) * f
        return self._intersects(a, b, clo, clo + w, f, depth - 1) or self._intersects(
            a, b, chi - w, chi, f, depth - 1
        )

    def gaps(self, max_depth: int = 8):
        """Complementary open intervals inside the base, up to max_depth."""
        out = []

        def rec(clo, chi, depth):
            if depth == 0:
                return
            w = (chi - clo) * self.keep_fraction
            out.append((clo + w, chi - w))
            rec(clo, clo + w, depth - 1)
            rec(chi - w, chi, depth - 1)

        rec(self.lo, self.hi, max_depth)
        out.sort()
        return out

    def sample_points(self, max_depth: int = 6):
        """Cell endpoints up to max_depth; all belong to the set."""
        pts = {self.lo, self.hi}

        def rec(clo, chi, depth):
            if depth == 0:
                return
            w = (chi - clo) * self.keep_fraction
            pts.update((clo + w, chi - w))
            rec(clo, clo + w, depth - 1)
            rec(chi - w, chi, depth - 1)

        rec(self.lo, self.hi, max_depth)
        return sorted(pts)

    def to_json(self):
        return {
            "base": [self.lo, self.hi],
            "keep_fraction": self.keep_fraction,
            "depth": self.depth,
        }

    @staticmethod
    def from_json(obj) -> "CantorSet":
        lo, hi = obj["base"]
        return CantorSet(
            float(lo),
            float(hi),
            float(obj.get("keep_fraction", 1.0 / 3.0)),
            int(obj.get("depth", 60)),
        )
