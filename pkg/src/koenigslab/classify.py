"""Semigroup type and canonical containing domain, read off the interval I.

The model set swept by the domain under left translation is the whole
plane when I = R, a horizontal half-plane when I is a proper half-line,
and a strip when I is bounded; that trichotomy is the semigroup class.
Containment of the domain in a tilted half-plane reduces to an affine
minorant of psi and is decided from declared tail envelopes plus grid
certification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .domain import POS_INF, PiecewiseDefiningFunction, TailEnvelope
from .tri import TriState

HYPERBOLIC = "hyperbolic"
PARABOLIC_POSITIVE = "parabolic_positive_step"
PARABOLIC_ZERO = "parabolic_zero_step"


@dataclass(frozen=True)
class SemigroupClass:
    kind: str
    container: dict  # descriptive: strip/half-plane parameters

    @property
    def strip_width(self):
        if self.kind != HYPERBOLIC:
            return None
        return self.container["hi"] - self.container["lo"]


def classify(psi: PiecewiseDefiningFunction) -> SemigroupClass:
    """Hyperbolic iff I bounded; positive step iff I a proper half-line;
    zero step iff I = R.  The whole-plane domain is rejected at validation."""
    psi.require_validated()
    lo, hi = psi.interval_lo, psi.interval_hi
    lo_fin, hi_fin = math.isfinite(lo), math.isfinite(hi)
    if lo_fin and hi_fin:
        return SemigroupClass(HYPERBOLIC, {"type": "strip", "lo": lo, "hi": hi})
    if lo_fin and not hi_fin:
        return SemigroupClass(
            PARABOLIC_POSITIVE, {"type": "horizontal_half_plane", "edge": lo, "side": "upper"}
        )
    if hi_fin and not lo_fin:
        return SemigroupClass(
            PARABOLIC_POSITIVE, {"type": "horizontal_half_plane", "edge": hi, "side": "lower"}
        )
    return SemigroupClass(PARABOLIC_ZERO, {"type": "none"})


@dataclass(frozen=True)
class AffineMinorant:
    status: TriState
    m: Optional[float] = None
    c: Optional[float] = None
    reason: str = ""


def _env_slope_bounds(env: Optional[TailEnvelope], tail: str, role: str):
    """Slope constraints from one declared envelope on one tail.

    role 'lower' yields slopes m for which (envelope - m y) stays bounded
    below on the tail (feasible side); role 'upper' yields slopes for which
    (envelope - m y) tends to -inf (certified infeasible).
    Returns (feasible_interval or None, infeasible_predicate).
    """
    if env is None:
        return None

    def check(m):
        # behavior of g(y) - m y as y -> +inf (tail='upper') or -inf
        if env.kind == "affine":
            m0 = env.params[0]
            if tail == "upper":
                return m < m0 or (m == m0)
            return m > m0 or (m == m0)
        if env.kind == "const":
            if tail == "upper":
                return m <= 0
            return m >= 0
        # log_pow: g ~ -C log^a, slower than linear
        if tail == "upper":
            return m < 0
        return m > 0

    return check


def affine_minorant(
    psi: PiecewiseDefiningFunction, grid_points: int = 4096, grid_halfwidth: float = 64.0
) -> AffineMinorant:
    """A feasible (m, c) with psi(y) >= m y + c on R, if one exists.

    Requires I = R.  Tail feasibility is decided from the declared
    envelopes of the outermost pieces; the intercept is certified on a
    grid over the middle plus the envelope values on the tails.  Missing
    declarations yield Unknown rather than a guess.
    """
    psi.require_validated()
    if math.isfinite(psi.interval_lo) or math.isfinite(psi.interval_hi):
        raise ValueError("affine minorants are computed for I = R only")

    E, e_exact = psi.liminf_neg_inf_set()
    if E:
        return AffineMinorant(
            TriState.NO if e_exact else TriState.UNKNOWN,
            reason="psi reaches -inf; no half-plane contains the domain",
        )

    lo_up, hi_up = psi.tail_envelopes("upper")
    lo_dn, hi_dn = psi.tail_envelopes("lower")

    # candidate slopes: 0 first, then envelope-suggested slopes
    candidates = [0.0]
    for env in (lo_up, lo_dn):
        if env is not None and env.kind == "affine":
            candidates.append(env.params[0])
    feas_up = _env_slope_bounds(lo_up, "upper", "lower")
    feas_dn = _env_slope_bounds(lo_dn, "lower", "lower")
    inf_up = _env_slope_bounds(hi_up, "upper", "upper")
    inf_dn = _env_slope_bounds(hi_dn, "lower", "upper")

    feasible_m = None
    for m in candidates:
        if feas_up is not None and feas_dn is not None and feas_up(m) and feas_dn(m):
            feasible_m = m
            break

    if feasible_m is None:
        # certified infeasibility: for every m, one tail runs to -inf.
        # With declared upper envelopes g_up, g_dn: m <= 0 fails on the
        # upper tail when g_up - m y -> -inf for all m <= 0, i.e. the
        # upper envelope decays (const/log_pow with nonpositive trend or
        # affine with negative slope); symmetrically for m >= 0.
        def tail_kills_all_nonneg_slopes(env, tail):
            if env is None:
                return False
            if env.kind == "affine":
                m0 = env.params[0]
                return m0 < 0 if tail == "upper" else m0 > 0
            if env.kind == "log_pow":
                return True  # g -> -inf slower than linear but unboundedly
            return False

        if tail_kills_all_nonneg_slopes(hi_up, "upper") and tail_kills_all_nonneg_slopes(
            hi_dn, "lower"
        ):
            # any m <= 0 fails on the lower tail? careful: upper envelope
            # decaying on both tails kills every slope: for m >= 0 the
            # upper tail has psi <= g_up -> -inf <= m y + c eventually
            # anyway only if m <= 0; m > 0 fails on the lower tail.
            return AffineMinorant(
                TriState.NO,
                reason="declared upper envelopes decay on both tails; no slope is feasible",
            )
        return AffineMinorant(
            TriState.UNKNOWN, reason="tail declarations insufficient to decide"
        )

    m = feasible_m
    # certified intercept: grid over the middle, envelope bound on tails
    ys = np.linspace(-grid_halfwidth, grid_halfwidth, grid_points)
    c_mid = POS_INF
    for k in range(0, grid_points - 1, 64):
        lo = ys[k]
        hi = min(ys[k + 64] if k + 64 < grid_points else ys[-1], grid_halfwidth)
        v = psi.inf_on(lo, hi)
        c_mid = min(c_mid, v - m * (lo if m <= 0 else hi))

    def tail_c(env, tail):
        if env is None:
            return POS_INF
        ts = np.geomspace(max(env.valid_from, grid_halfwidth), 1e9, 2048)
        if tail == "lower":
            ts = -ts
        g = env.value(ts)
        return float(np.min(g - m * ts))

    c = min(c_mid, tail_c(lo_up, "upper"), tail_c(lo_dn, "lower"))
    if not math.isfinite(c):
        return AffineMinorant(TriState.UNKNOWN, reason="intercept certification failed")
    c -= 1e-9 * (1.0 + abs(c))  # guard against grid-sampling optimism
    return AffineMinorant(TriState.YES, m=m, c=c)
