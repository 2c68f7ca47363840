"""Piecewise defining functions psi for starlike-at-infinity domains.

A domain here is ``{x + iy : y in I, x > psi(y)}`` for an upper
semicontinuous ``psi: I -> [-inf, +inf)`` on an open interval I.  psi is
stored as a list of typed pieces with declared structure (one-sided limit
metadata, Cantor carriers, spikes, tail envelopes), because semicontinuity
and liminf/limsup questions are not decidable from finite samples alone.
Everything numeric is flagged; declared structure is treated as exact.

The module also computes the two regularizations used by the completeness
criteria: the lower semicontinuous envelope ``psi_*`` (pointwise liminf)
and the upper semicontinuous envelope of that, ``psi~``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .cantor import CantorSet
from .expr import EvaluatorError, Expression
from .tri import TriState

NEG_INF = float("-inf")
POS_INF = float("inf")

# value beyond which a monotone dyadic sample trend is read as divergence
_DIVERGE_RATIO = 0.9
_STAB_TOL = 1e-9
_DYADIC_DEPTH = 40


class ValidationError(ValueError):
    pass


def _as_float(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return POS_INF
        if s in ("-inf", "-infinity"):
            return NEG_INF
        return float(v)
    return float(v)


def _json_float(v):
    if v == POS_INF:
        return "inf"
    if v == NEG_INF:
        return "-inf"
    return v


@dataclass(frozen=True)
class LimitData:
    """One-sided liminf/limsup with an exactness flag."""

    liminf: float
    limsup: float
    exact: bool = True
    inconclusive: bool = False

    def __post_init__(self):
        if not self.inconclusive and self.liminf > self.limsup:
            raise ValidationError("declared liminf exceeds limsup")

    @staticmethod
    def inconclusive_data() -> "LimitData":
        return LimitData(NEG_INF, POS_INF, exact=False, inconclusive=True)

    @staticmethod
    def from_json(obj) -> "LimitData":
        return LimitData(_as_float(obj["liminf"]), _as_float(obj["limsup"]))

    def to_json(self):
        return {"liminf": _json_float(self.liminf), "limsup": _json_float(self.limsup)}


@dataclass(frozen=True)
class OneSidedLimits:
    """Limits of psi at a height; a side is None outside closure(I)."""

    liminf_left: Optional[float]
    limsup_left: Optional[float]
    liminf_right: Optional[float]
    limsup_right: Optional[float]
    left_exact: bool = True
    right_exact: bool = True
    inconclusive: bool = False


@dataclass(frozen=True)
class TailEnvelope:
    """Declared asymptotic bound g(y), valid where |y| >= valid_from.

    kinds: 'affine' g = m*y + c; 'const' g = c;
    'log_pow' g = D - C * (log(|y| + 3))**a.
    """

    kind: str
    params: tuple
    valid_from: float

    def value(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "affine":
            m, c = self.params
            return m * y + c
        if self.kind == "const":
            return np.full_like(y, self.params[0])
        if self.kind == "log_pow":
            C, a, D = self.params
            return D - C * np.log(np.abs(y) + 3.0) ** a
        raise ValueError(f"unknown envelope kind {self.kind!r}")

    @staticmethod
    def from_json(obj) -> "TailEnvelope":
        kind = obj["kind"]
        if kind == "affine":
            params = (float(obj["m"]), float(obj["c"]))
        elif kind == "const":
            params = (float(obj["c"]),)
        elif kind == "log_pow":
            params = (float(obj["C"]), float(obj["a"]), float(obj["D"]))
        else:
            raise ValidationError(f"unknown envelope kind {kind!r}")
        return TailEnvelope(kind, params, float(obj.get("valid_from", 0.0)))

    def to_json(self):
        out = {"kind": self.kind, "valid_from": self.valid_from}
        if self.kind == "affine":
            out["m"], out["c"] = self.params
        elif self.kind == "const":
            out["c"] = self.params[0]
        else:
            out["C"], out["a"], out["D"] = self.params
        return out


def dyadic_limit_estimate(f, y0, side, delta=1.0, depth=_DYADIC_DEPTH):
    """Estimate lim f(t) as t -> y0 from one side by dyadic sampling.

    Returns LimitData.  Stabilization: the last 8 samples agree to
    _STAB_TOL relative; monotone divergence is read as an infinite limit.
    Oscillation that neither stabilizes nor diverges is inconclusive.
    """
    sgn = -1.0 if side == "left" else 1.0
    vals = []
    for k in range(1, depth + 1):
        t = y0 + sgn * delta * 2.0 ** (-k)
        try:
            v = float(f(t))
        except (EvaluatorError, ArithmeticError, ValueError):
            continue
        if math.isnan(v):
            continue
        vals.append(v)
    if len(vals) < 10:
        return LimitData.inconclusive_data()
    tail = vals[-8:]
    scale = max(1.0, max(abs(v) for v in tail if math.isfinite(v)) if any(
        math.isfinite(v) for v in tail) else 1.0)
    if all(math.isfinite(v) for v in tail) and max(tail) - min(tail) < _STAB_TOL * scale:
        v = tail[-1]
        return LimitData(v, v, exact=False)
    # monotone divergence: increments keep their sign and do not decay
    diffs = [b - a for a, b in zip(vals[-12:-1], vals[-11:])]
    if len(diffs) >= 8 and all(d > 0 for d in diffs):
        ratios = [b / a for a, b in zip(diffs, diffs[1:]) if a > 0]
        if ratios and min(ratios) > _DIVERGE_RATIO:
            return LimitData(POS_INF, POS_INF, exact=False)
    if len(diffs) >= 8 and all(d < 0 for d in diffs):
        ratios = [b / a for a, b in zip(diffs, diffs[1:]) if a < 0]
        if ratios and min(ratios) > _DIVERGE_RATIO:
            return LimitData(NEG_INF, NEG_INF, exact=False)
    return LimitData.inconclusive_data()


# ---------------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    span: tuple  # (a, b), a < b; may be +-inf

    def _sub(self, lo, hi):
        a, b = self.span
        return max(lo, a), min(hi, b)

    # interface expected from every concrete piece -------------------------
    def value(self, y):  # pragma: no cover - abstract
        raise NotImplementedError

    def side_limits(self, y0, side) -> LimitData:  # limits of psi
        raise NotImplementedError

    def side_limits_lsc(self, y0, side) -> LimitData:  # limits of psi_*
        raise NotImplementedError

    def sup_on(self, lo, hi):  # (value, exact)
        raise NotImplementedError

    def inf_on(self, lo, hi):
        raise NotImplementedError

    def lsc_sup_on(self, lo, hi):  # sup of psi_* over the sub-span
        raise NotImplementedError

    def minus_inf_intervals(self):
        """Open intervals inside the span where psi is identically -inf."""
        return []

    def translate(self, dx, dy) -> "Piece":
        raise NotImplementedError


def _sample(evaluator, lo, hi, k=96):
    ys = np.linspace(lo, hi, k)
    try:
        vs = evaluator(ys, check=False) if isinstance(evaluator, Expression) else evaluator(ys)
    except Exception:
        vs = np.array([_safe_eval(evaluator, t) for t in ys])
    vs = np.asarray(vs, dtype=float)
    return vs[~np.isnan(vs)]


def _safe_eval(evaluator, t):
    try:
        return float(evaluator(t))
    except Exception:
        return math.nan


@dataclass(frozen=True)
class FiniteAnalytic(Piece):
    """Continuous finite evaluator on the open span.

    Optional declared endpoint limits and tail envelopes; undeclared
    endpoint limits fall back to dyadic estimation.
    """

    evaluator: Callable = None
    expr_source: Optional[str] = None
    limits_left: Optional[LimitData] = None   # as y -> span[0]+
    limits_right: Optional[LimitData] = None  # as y -> span[1]-
    tail_lower: Optional[TailEnvelope] = None
    tail_upper: Optional[TailEnvelope] = None

    def value(self, y):
        v = self.evaluator(y)
        return float(v)

    def _interior_limit(self, y0):
        v = _safe_eval(self.evaluator, y0)
        if math.isnan(v):
            return LimitData.inconclusive_data()
        return LimitData(v, v, exact=False)

    def side_limits(self, y0, side):
        a, b = self.span
        if side == "right" and y0 == a and self.limits_left is not None:
            return self.limits_left
        if side == "left" and y0 == b and self.limits_right is not None:
            return self.limits_right
        if a < y0 < b:
            est = self._interior_limit(y0)
            if not est.inconclusive:
                return est
        delta = min(1.0, (min(b, y0 + 1) - max(a, y0 - 1)) / 2 or 1.0)
        return dyadic_limit_estimate(lambda t: self.evaluator(t), y0, side, delta)

    def side_limits_lsc(self, y0, side):
        return self.side_limits(y0, side)  # psi_* = psi on the open span

    def sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        vs = _sample(self.evaluator, lo, hi)
        if vs.size == 0:
            return NEG_INF, False
        v = float(np.max(vs))
        a, b = self.span
        for y0, lim in ((a, self.limits_left), (b, self.limits_right)):
            if lim is not None and lo <= y0 <= hi:
                v = max(v, lim.limsup)
        return v, False

    def inf_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return POS_INF, True
        vs = _sample(self.evaluator, lo, hi)
        v = float(np.min(vs)) if vs.size else POS_INF
        exact = False
        a, b = self.span
        for y0, lim in ((a, self.limits_left), (b, self.limits_right)):
            if lim is not None and lo <= y0 <= hi and lim.liminf < v:
                v = lim.liminf
                exact = lim.exact and math.isinf(v)
        return v, exact

    def lsc_sup_on(self, lo, hi):
        return self.sup_on(lo, hi)

    def translate(self, dx, dy):
        ev = self.evaluator

        def shift(l):
            if l is None:
                return None
            return LimitData(
                l.liminf + dx if math.isfinite(l.liminf) else l.liminf,
                l.limsup + dx if math.isfinite(l.limsup) else l.limsup,
                l.exact,
                l.inconclusive,
            )

        return replace(
            self,
            span=(self.span[0] + dy, self.span[1] + dy),
            evaluator=(lambda y, ev=ev, dx=dx, dy=dy: ev(np.asarray(y) - dy) + dx),
            expr_source=None,
            limits_left=shift(self.limits_left),
            limits_right=shift(self.limits_right),
            tail_lower=_shift_env(_shift_env_vertical(self.tail_lower, dy, "lower"), dx),
            tail_upper=_shift_env(_shift_env_vertical(self.tail_upper, dy, "upper"), dx),
        )


def _shift_env(env, dx):
    if env is None or dx == 0:
        return env
    if env.kind == "affine":
        m, c = env.params
        return TailEnvelope("affine", (m, c + dx), env.valid_from)
    if env.kind == "const":
        return TailEnvelope("const", (env.params[0] + dx,), env.valid_from)
    C, a, D = env.params
    return TailEnvelope("log_pow", (C, a, D + dx), env.valid_from)


def _shift_env_vertical(env, dy, role):
    """Conservative envelope after a vertical translation by dy.

    For a <= 1 the map x -> x^a is subadditive, which yields a constant
    slack C * (log(1 + |dy|/3))^a on either side of a log_pow bound."""
    if env is None or dy == 0:
        return env
    if env.kind == "const":
        return env
    if env.kind == "affine":
        m, c = env.params
        return TailEnvelope("affine", (m, c - m * dy), env.valid_from + abs(dy))
    C, a, D = env.params
    slack = C * max(math.log1p(abs(dy) / 3.0), math.log(2.0)) ** min(a, 1.0)
    shift = -slack if role == "lower" else slack
    return TailEnvelope(
        "log_pow", (C, a, D + shift), max(env.valid_from, 2.0 * abs(dy)) + abs(dy)
    )


@dataclass(frozen=True)
class MinusInfinity(Piece):
    def value(self, y):
        return NEG_INF

    def side_limits(self, y0, side):
        return LimitData(NEG_INF, NEG_INF, exact=True)

    def side_limits_lsc(self, y0, side):
        return LimitData(NEG_INF, NEG_INF, exact=True)

    def sup_on(self, lo, hi):
        return NEG_INF, True

    def inf_on(self, lo, hi):
        return NEG_INF, True

    def lsc_sup_on(self, lo, hi):
        return NEG_INF, True

    def minus_inf_intervals(self):
        return [self.span]

    def translate(self, dx, dy):
        return MinusInfinity((self.span[0] + dy, self.span[1] + dy))


@dataclass(frozen=True)
class PointSpike(Piece):
    """Constant background with an isolated exceedance at c0."""

    c0: float = 0.0
    spike_value: float = 1.0
    background: float = 0.0  # may be -inf

    def __post_init__(self):
        a, b = self.span
        if not (a < self.c0 < b):
            raise ValidationError("spike location must be interior to its span")

    def value(self, y):
        return self.spike_value if y == self.c0 else self.background

    def side_limits(self, y0, side):
        return LimitData(self.background, self.background, exact=True)

    def side_limits_lsc(self, y0, side):
        return LimitData(self.background, self.background, exact=True)

    def sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        if lo <= self.c0 <= hi:
            return max(self.spike_value, self.background), True
        return self.background, True

    def inf_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return POS_INF, True
        if lo == hi == self.c0:
            return self.spike_value, True
        return self.background, True

    def lsc_sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        return self.background, True

    def minus_inf_intervals(self):
        if self.background == NEG_INF:
            a, b = self.span
            return [(a, self.c0), (self.c0, b)]
        return []

    def translate(self, dx, dy):
        return PointSpike(
            (self.span[0] + dy, self.span[1] + dy),
            self.c0 + dy,
            self.spike_value + dx,
            self.background + dx if math.isfinite(self.background) else self.background,
        )


@dataclass(frozen=True)
class CantorCarrierPiece(Piece):
    """on_value on a Cantor carrier, an off evaluator elsewhere.

    With bounded off values this is the comb construction; when the off
    part oscillates up to on_value near the carrier it is the benign
    Cantor-discontinuity construction instead, and ``off_limsup_at_carrier``
    should declare that.
    """

    carrier: CantorSet = None
    on_value: float = 1.0
    off_evaluator: Callable = None
    off_expr_source: Optional[str] = None
    off_bound: Optional[float] = None  # declared sup of off near the carrier
    off_limsup_at_carrier: Optional[float] = None
    off_liminf_at_carrier: Optional[float] = None

    def __post_init__(self):
        a, b = self.span
        if not (a <= self.carrier.lo and self.carrier.hi <= b):
            raise ValidationError("carrier must sit inside the piece span")

    def _off(self, y):
        return self.off_evaluator(y)

    def value(self, y):
        if self.carrier.contains(y):
            return self.on_value
        return float(self._off(y))

    def _carrier_accumulates(self, y0, side):
        deltas = [2.0 ** (-k) for k in (3, 8, 16, 28, 40)]
        for d in deltas:
            lo, hi = (y0 - d, y0 - d * 1e-9) if side == "left" else (y0 + d * 1e-9, y0 + d)
            if not self.carrier.intersects(lo, hi):
                return False
        return True

    def _off_side(self, y0, side):
        delta = min(1.0, (self.span[1] - self.span[0]) / 4)
        return dyadic_limit_estimate(self._off, y0, side, delta)

    def side_limits(self, y0, side):
        off = self._off_side(y0, side)
        if self._carrier_accumulates(y0, side):
            if self.off_liminf_at_carrier is not None:
                lim_inf = self.off_liminf_at_carrier
                exact = True
            elif not off.inconclusive:
                lim_inf = off.liminf
                exact = False
            else:
                return LimitData.inconclusive_data()
            return LimitData(min(lim_inf, self.on_value), self.on_value, exact=exact)
        return off

    def side_limits_lsc(self, y0, side):
        # psi_* never exceeds the off part: the carrier has empty interior
        if self.off_limsup_at_carrier is not None and self._carrier_accumulates(y0, side):
            v = self.off_limsup_at_carrier
            if self.off_liminf_at_carrier is not None:
                lo = self.off_liminf_at_carrier
            else:
                off = self._off_side(y0, side)
                lo = off.liminf if not off.inconclusive else v
            return LimitData(min(lo, v), v, exact=True)
        return self._off_side(y0, side)

    def sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        vs = _sample(self.off_evaluator, lo, hi)
        v = float(np.max(vs)) if vs.size else NEG_INF
        if self.carrier.intersects(lo, hi):
            v = max(v, self.on_value)
        return v, False

    def inf_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return POS_INF, True
        vs = _sample(self.off_evaluator, lo, hi)
        v = float(np.min(vs)) if vs.size else POS_INF
        return v, False

    def lsc_sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        if self.off_limsup_at_carrier is not None and self.carrier.intersects(lo, hi):
            base = self.off_limsup_at_carrier
        else:
            base = NEG_INF
        vs = _sample(self.off_evaluator, lo, hi)
        v = float(np.max(vs)) if vs.size else NEG_INF
        return max(v, base), False

    def translate(self, dx, dy):
        off = self.off_evaluator
        return replace(
            self,
            span=(self.span[0] + dy, self.span[1] + dy),
            carrier=CantorSet(
                self.carrier.lo + dy, self.carrier.hi + dy,
                self.carrier.keep_fraction, self.carrier.depth,
            ),
            on_value=self.on_value + dx,
            off_evaluator=(lambda y, off=off, dx=dx, dy=dy: off(np.asarray(y) - dy) + dx),
            off_expr_source=None,
            off_bound=None if self.off_bound is None else self.off_bound + dx,
            off_limsup_at_carrier=(
                None if self.off_limsup_at_carrier is None
                else self.off_limsup_at_carrier + dx
            ),
            off_liminf_at_carrier=(
                None if self.off_liminf_at_carrier is None
                else self.off_liminf_at_carrier + dx
            ),
        )


@dataclass(frozen=True)
class OscillatorySample(Piece):
    """Continuous evaluator whose endpoint behavior is declared.

    Declared liminf/limsup at each span endpoint are required: dyadic
    sampling cannot recover oscillation envelopes.
    """

    evaluator: Callable = None
    expr_source: Optional[str] = None
    limits_left: LimitData = None
    limits_right: LimitData = None

    def __post_init__(self):
        if self.limits_left is None or self.limits_right is None:
            raise ValidationError("oscillatory pieces require declared endpoint limits")

    def value(self, y):
        return float(self.evaluator(y))

    def side_limits(self, y0, side):
        a, b = self.span
        if side == "right" and y0 == a:
            return self.limits_left
        if side == "left" and y0 == b:
            return self.limits_right
        v = _safe_eval(self.evaluator, y0)
        if math.isnan(v):
            return LimitData.inconclusive_data()
        return LimitData(v, v, exact=False)

    def side_limits_lsc(self, y0, side):
        return self.side_limits(y0, side)

    def _bounds_on(self, lo, hi, which):
        vs = _sample(self.evaluator, lo, hi, k=192)
        v = (float(np.max(vs)) if which == "sup" else float(np.min(vs))) if vs.size else (
            NEG_INF if which == "sup" else POS_INF
        )
        a, b = self.span
        for y0, lim in ((a, self.limits_left), (b, self.limits_right)):
            if lo <= y0 <= hi:
                v = max(v, lim.limsup) if which == "sup" else min(v, lim.liminf)
        return v

    def sup_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return NEG_INF, True
        return self._bounds_on(lo, hi, "sup"), False

    def inf_on(self, lo, hi):
        lo, hi = self._sub(lo, hi)
        if lo > hi:
            return POS_INF, True
        v = self._bounds_on(lo, hi, "inf")
        a, b = self.span
        exact = (lo <= a <= hi and self.limits_left.liminf == v) or (
            lo <= b <= hi and self.limits_right.liminf == v
        )
        return v, exact and math.isinf(v)

    def lsc_sup_on(self, lo, hi):
        return self.sup_on(lo, hi)

    def translate(self, dx, dy):
        ev = self.evaluator

        def shift(l):
            return LimitData(
                l.liminf + dx if math.isfinite(l.liminf) else l.liminf,
                l.limsup + dx if math.isfinite(l.limsup) else l.limsup,
                l.exact,
            )

        return replace(
            self,
            span=(self.span[0] + dy, self.span[1] + dy),
            evaluator=(lambda y, ev=ev, dx=dx, dy=dy: ev(np.asarray(y) - dy) + dx),
            expr_source=None,
            limits_left=shift(self.limits_left),
            limits_right=shift(self.limits_right),
        )


# ---------------------------------------------------------------------------
# the assembled defining function
# ---------------------------------------------------------------------------


@dataclass
class PiecewiseDefiningFunction:
    interval_lo: float
    interval_hi: float
    pieces: tuple
    name: str = ""
    # explicit psi values at junction heights where no piece evaluator
    # applies (e.g. the endpoint value of an oscillatory piece)
    point_values: dict = field(default_factory=dict)
    _starts: list = field(init=False, repr=False, default_factory=list)
    _validated: bool = field(init=False, repr=False, default=False)

    def __post_init__(self):
        self.pieces = tuple(sorted(self.pieces, key=lambda p: p.span[0]))
        self._starts = [p.span[0] for p in self.pieces]

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Coverage, degenerate-domain rejection, semicontinuity check."""
        if not (self.interval_lo < self.interval_hi):
            raise ValidationError("the height interval I is empty")
        if not self.pieces:
            raise ValidationError("no pieces")
        if self.pieces[0].span[0] != self.interval_lo:
            raise ValidationError("pieces do not start at the left end of I")
        if self.pieces[-1].span[1] != self.interval_hi:
            raise ValidationError("pieces do not end at the right end of I")
        for p, q in zip(self.pieces, self.pieces[1:]):
            if p.span[1] != q.span[0]:
                raise ValidationError(
                    f"pieces must tile I; gap or overlap at {p.span[1]} vs {q.span[0]}"
                )
        if (
            self.interval_lo == NEG_INF
            and self.interval_hi == POS_INF
            and all(isinstance(p, MinusInfinity) for p in self.pieces)
        ):
            raise ValidationError(
                "psi = -inf on all of R defines the whole plane; rejected"
            )
        ok, problems = self.usc_check()
        if ok is TriState.NO:
            raise ValidationError("psi is not upper semicontinuous: " + "; ".join(problems))
        self._validated = True
        return problems  # warnings, possibly empty

    def require_validated(self):
        if not self._validated:
            self.validate()

    # -- evaluation ---------------------------------------------------------

    def _pieces_at(self, y):
        i = bisect.bisect_right(self._starts, y) - 1
        out = []
        if 0 <= i < len(self.pieces) and self.pieces[i].span[0] <= y <= self.pieces[i].span[1]:
            out.append(self.pieces[i])
        if i + 1 < len(self.pieces) and self.pieces[i + 1].span[0] == y:
            out.append(self.pieces[i + 1])
        if i >= 1 and self.pieces[i - 1].span[1] == y:
            out.append(self.pieces[i - 1])
        return out

    def value(self, y):
        """psi(y); at piece junctions the value is the max over owners."""
        if not (self.interval_lo < y < self.interval_hi):
            raise ValueError(f"height {y} outside I")
        if y in self.point_values:
            return self.point_values[y]
        cands = []
        for p in self._pieces_at(y):
            try:
                cands.append(p.value(y))
            except (EvaluatorError, ArithmeticError, ValueError):
                continue
        if not cands:
            raise ValueError(
                f"no piece evaluates at height {y}; declare it in point_values"
            )
        return max(cands)

    def contains(self, z) -> bool:
        """Is z in the domain {x + iy : y in I, x > psi(y)}?"""
        self.require_validated()
        y = z.imag if isinstance(z, complex) else complex(z).imag
        x = z.real if isinstance(z, complex) else complex(z).real
        if not (self.interval_lo < y < self.interval_hi):
            return False
        return x > self.value(y)

    # -- one-sided limits ----------------------------------------------------

    def one_sided_limits(self, y0) -> OneSidedLimits:
        if not (self.interval_lo <= y0 <= self.interval_hi):
            raise ValueError(f"height {y0} outside closure(I)")
        left = right = None
        if y0 > self.interval_lo:
            i = bisect.bisect_left(self._starts, y0) - 1
            if i < 0:
                i = 0
            piece = self.pieces[i]
            if piece.span[1] < y0 and i + 1 < len(self.pieces):
                piece = self.pieces[i + 1]
            left = piece.side_limits(y0, "left")
        if y0 < self.interval_hi:
            i = bisect.bisect_right(self._starts, y0) - 1
            piece = self.pieces[max(i, 0)]
            if piece.span[1] <= y0 and i + 1 < len(self.pieces):
                piece = self.pieces[i + 1]
            right = piece.side_limits(y0, "right")
        return OneSidedLimits(
            liminf_left=None if left is None else left.liminf,
            limsup_left=None if left is None else left.limsup,
            liminf_right=None if right is None else right.liminf,
            limsup_right=None if right is None else right.limsup,
            left_exact=left.exact if left is not None else True,
            right_exact=right.exact if right is not None else True,
            inconclusive=(left is not None and left.inconclusive)
            or (right is not None and right.inconclusive),
        )

    def _side_limit_piece(self, y0, side):
        if side == "left":
            i = bisect.bisect_left(self._starts, y0) - 1
            i = max(i, 0)
            piece = self.pieces[i]
            if piece.span[1] < y0 and i + 1 < len(self.pieces):
                piece = self.pieces[i + 1]
            return piece
        i = bisect.bisect_right(self._starts, y0) - 1
        piece = self.pieces[max(i, 0)]
        if piece.span[1] <= y0 and i + 1 < len(self.pieces):
            piece = self.pieces[i + 1]
        return piece

    # -- semicontinuity -----------------------------------------------------

    def _special_heights(self):
        """Heights where psi can differ from its regularizations."""
        hs = set()
        for p in self.pieces:
            for e in p.span:
                if self.interval_lo < e < self.interval_hi:
                    hs.add(e)
            if isinstance(p, PointSpike):
                hs.add(p.c0)
        hs.update(
            y for y in self.point_values if self.interval_lo < y < self.interval_hi
        )
        return sorted(hs)

    def usc_check(self):
        """TriState + diagnostics: limsup psi <= psi at every special height."""
        problems = []
        verdict = TriState.YES
        for y0 in self._special_heights():
            v = self.value(y0)
            lims = self.one_sided_limits(y0)
            if lims.inconclusive:
                verdict = TriState.UNKNOWN
                problems.append(f"inconclusive limits at y={y0}")
                continue
            sup = max(
                x for x in (lims.limsup_left, lims.limsup_right) if x is not None
            )
            tol = 0.0 if (lims.left_exact and lims.right_exact) else 1e-7
            if sup > v + tol:
                verdict = TriState.NO
                problems.append(f"limsup {sup} exceeds psi({y0}) = {v}")
        for p in self.pieces:
            if isinstance(p, CantorCarrierPiece):
                near, _ = p.lsc_sup_on(p.carrier.lo, p.carrier.hi)
                if near > p.on_value + 1e-7:
                    verdict = TriState.NO
                    problems.append(
                        f"off values exceed the carrier value near the carrier of {p.span}"
                    )
        return verdict, problems

    # -- regularizations ------------------------------------------------------

    def psi_star(self, y0):
        """Lower semicontinuous regularization: liminf of psi at y0.

        Defined on closure(I); one-sided at the interval endpoints.
        """
        lims = self.one_sided_limits(y0)
        if lims.inconclusive:
            return math.nan
        cands = [x for x in (lims.liminf_left, lims.liminf_right) if x is not None]
        return min(cands)

    def psi_tilde(self, y0):
        """Upper semicontinuous regularization of psi_* at y0 in I."""
        if not (self.interval_lo < y0 < self.interval_hi):
            raise ValueError(f"height {y0} outside I")
        out = NEG_INF
        inconclusive = False
        for side in ("left", "right"):
            if (side == "left" and y0 == self.interval_lo) or (
                side == "right" and y0 == self.interval_hi
            ):
                continue
            piece = self._side_limit_piece(y0, side)
            lim = piece.side_limits_lsc(y0, side)
            if lim.inconclusive:
                inconclusive = True
                continue
            out = max(out, lim.limsup)
        return math.nan if inconclusive and out == NEG_INF else out

    def lsc_regularization(self):
        """psi_* as a callable on closure(I)."""
        self.require_validated()
        return self.psi_star

    def usc_of_lsc(self):
        """psi~ (usc regularization of psi_*) as a callable on I."""
        self.require_validated()
        return self.psi_tilde

    def equals_regularized(self):
        """Does psi equal psi~ everywhere on I?  (TriState, witnesses)."""
        self.require_validated()
        witnesses = []
        verdict = TriState.YES
        for y0 in self._special_heights():
            v = self.value(y0)
            t = self.psi_tilde(y0)
            if math.isnan(t):
                verdict = TriState.UNKNOWN
                continue
            if v > t + 1e-9:
                witnesses.append(y0)
        for p in self.pieces:
            if isinstance(p, CantorCarrierPiece):
                if p.off_limsup_at_carrier is not None:
                    gap_sup = p.off_limsup_at_carrier
                    exact = True
                else:
                    gap_sup, _ = p.lsc_sup_on(p.carrier.lo, p.carrier.hi)
                    exact = False
                if p.on_value > gap_sup + (0.0 if exact else 1e-7):
                    witnesses.extend(p.carrier.sample_points(2)[:3])
                elif not exact and p.on_value > gap_sup - 1e-3:
                    verdict = TriState.UNKNOWN
        if witnesses:
            return TriState.NO, sorted(set(witnesses))
        return verdict, []

    # -- liminf = -inf structure ----------------------------------------------

    def minus_infinity_components(self):
        """Maximal open intervals where psi is identically -inf."""
        self.require_validated()
        raw = []
        for p in self.pieces:
            raw.extend(p.minus_inf_intervals())
        raw.sort()
        merged = []
        for lo, hi in raw:
            if merged and lo <= merged[-1][1] + 0 and self._joins(merged[-1][1], lo):
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return [(lo, hi) for lo, hi in merged]

    def _joins(self, b, a):
        # two -inf intervals merge across a shared endpoint if psi = -inf there
        if b != a:
            return b >= a
        if not (self.interval_lo < b < self.interval_hi):
            return True
        return self.value(b) == NEG_INF

    def liminf_neg_inf_set(self):
        """E = {y in closure(I): liminf psi = -inf} as closed intervals.

        Returns (intervals, exact).  Exact when every -inf conclusion comes
        from declared structure.
        """
        self.require_validated()
        exact = True
        intervals = []
        for lo, hi in self.minus_infinity_components():
            intervals.append([lo, hi])  # closure of the open component
        for y0 in set(self._special_heights()) | {
            e for e in (self.interval_lo, self.interval_hi) if math.isfinite(e)
        }:
            lims = self.one_sided_limits(y0)
            if lims.inconclusive:
                exact = False
                continue
            hit = False
            if lims.liminf_left == NEG_INF:
                hit = True
                exact = exact and lims.left_exact
            if lims.liminf_right == NEG_INF:
                hit = True
                exact = exact and lims.right_exact
            if hit:
                intervals.append([y0, y0])
        intervals.sort()
        merged = []
        for lo, hi in intervals:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return [(lo, hi) for lo, hi in merged], exact

    # -- raster support --------------------------------------------------------

    def row_profiles(self, y_edges):
        """Per-row sup/inf of psi and sup of psi_* between consecutive edges.

        Returns dict of arrays: M (sup psi), m (inf psi), Mstar (sup psi_*),
        outside (row disjoint from I), edge (row straddles an endpoint of I).
        Declared -inf limit points inside a row force m = -inf exactly.
        """
        self.require_validated()
        y_edges = np.asarray(y_edges, dtype=float)
        nrows = y_edges.size - 1
        M = np.full(nrows, NEG_INF)
        m = np.full(nrows, POS_INF)
        Mstar = np.full(nrows, NEG_INF)
        lo_r, hi_r = y_edges[:-1], y_edges[1:]
        for y0, v in self.point_values.items():
            j = int(np.searchsorted(y_edges, y0, side="right")) - 1
            for jj in (j - 1, j):
                if 0 <= jj < nrows and lo_r[jj] <= y0 <= hi_r[jj]:
                    M[jj] = max(M[jj], v)
        outside = (hi_r <= self.interval_lo) | (lo_r >= self.interval_hi)
        edge = ~outside & (
            (lo_r < self.interval_lo) | (hi_r > self.interval_hi)
        )
        for p in self.pieces:
            a, b = p.span
            i0 = int(np.searchsorted(hi_r, a, side="right"))
            i1 = int(np.searchsorted(lo_r, b, side="left"))
            i0 = max(0, min(i0, nrows))
            i1 = max(0, min(i1, nrows))
            if i1 <= i0:
                continue
            if isinstance(p, MinusInfinity):
                m[i0:i1] = NEG_INF
                continue
            if isinstance(p, PointSpike):
                bg = p.background
                M[i0:i1] = np.maximum(M[i0:i1], bg)
                m[i0:i1] = np.minimum(m[i0:i1], bg)
                Mstar[i0:i1] = np.maximum(Mstar[i0:i1], bg)
                j = int(np.searchsorted(y_edges, p.c0, side="right")) - 1
                if i0 <= j < i1:
                    M[j] = max(M[j], p.spike_value)
                continue
            sub_lo = np.maximum(lo_r[i0:i1], a)
            sub_hi = np.minimum(hi_r[i0:i1], b)
            k = 64
            frac = (np.arange(k) + 0.5) / k
            ys = sub_lo[:, None] + (sub_hi - sub_lo)[:, None] * frac[None, :]
            if isinstance(p, CantorCarrierPiece):
                ev = p.off_evaluator
            else:
                ev = p.evaluator
            try:
                vals = ev(ys, check=False) if isinstance(ev, Expression) else ev(ys)
                vals = np.asarray(vals, dtype=float)
                if vals.shape != ys.shape:
                    vals = np.broadcast_to(vals, ys.shape)
            except Exception:
                vals = np.vectorize(lambda t: _safe_eval(ev, t))(ys)
            import warnings as _warnings

            with _warnings.catch_warnings():
                _warnings.simplefilter("ignore")
                row_max = np.nanmax(vals, axis=1)
                row_min = np.nanmin(vals, axis=1)
            M[i0:i1] = np.fmax(M[i0:i1], row_max)
            m[i0:i1] = np.fmin(m[i0:i1], row_min)
            Mstar[i0:i1] = np.fmax(Mstar[i0:i1], row_max)
            if isinstance(p, CantorCarrierPiece):
                hit = np.array(
                    [p.carrier.intersects(l, h) for l, h in zip(sub_lo, sub_hi)]
                )
                M[i0:i1][hit] = np.maximum(M[i0:i1][hit], p.on_value)
                if p.off_limsup_at_carrier is not None:
                    Mstar[i0:i1][hit] = np.maximum(
                        Mstar[i0:i1][hit], p.off_limsup_at_carrier
                    )
            # declared endpoint limits contribute exactly
            for y0, side in ((a, "right"), (b, "left")):
                if not math.isfinite(y0):
                    continue
                lim = p.side_limits(y0, side)
                if lim.inconclusive or not lim.exact:
                    continue
                j = int(np.searchsorted(y_edges, y0, side="right")) - 1
                for jj in (j - 1, j):
                    if 0 <= jj < nrows and lo_r[jj] <= y0 <= hi_r[jj]:
                        M[jj] = max(M[jj], lim.limsup)
                        m[jj] = min(m[jj], lim.liminf)
                        Mstar[jj] = max(Mstar[jj], lim.limsup)
        return {"M": M, "m": m, "Mstar": Mstar, "outside": outside, "edge": edge}

    # -- global bounds ----------------------------------------------------------

    def sup_on(self, lo, hi):
        v = NEG_INF
        for p in self.pieces:
            s, _ = p.sup_on(lo, hi)
            v = max(v, s)
        return v

    def inf_on(self, lo, hi):
        v = POS_INF
        for p in self.pieces:
            s, _ = p.inf_on(lo, hi)
            v = min(v, s)
        return v

    def tail_envelopes(self, side):
        """(lower, upper) declared envelopes on the +inf or -inf tail."""
        p = self.pieces[-1] if side == "upper" else self.pieces[0]
        lower = getattr(p, "tail_lower", None)
        upper = getattr(p, "tail_upper", None)
        return lower, upper

    def translated(self, dx=0.0, dy=0.0) -> "PiecewiseDefiningFunction":
        """The defining function of Omega + (dx + i dy)."""
        out = PiecewiseDefiningFunction(
            self.interval_lo + dy if math.isfinite(self.interval_lo) else self.interval_lo,
            self.interval_hi + dy if math.isfinite(self.interval_hi) else self.interval_hi,
            tuple(p.translate(dx, dy) for p in self.pieces),
            name=self.name,
            point_values={
                y + dy: (v + dx if math.isfinite(v) else v)
                for y, v in self.point_values.items()
            },
        )
        return out
