"""Dynamical features read off the defining function.

Heights and intervals reported here correspond, on the disc side, to
boundary regular fixed points (bounded gaps where psi is -inf),
super-repelling fixed points (one-sided full limits -inf), unbounded
discontinuities (one-sided liminf -inf with finite limsup), contact-arc
coincidences (isolated exceedances), Cantor combs, and the attracting
boundary point's discontinuity type.  Everything is expressed at the level
of heights in R; no Riemann map is computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classify import HYPERBOLIC, PARABOLIC_POSITIVE, PARABOLIC_ZERO, classify
from .domain import (
    NEG_INF,
    POS_INF,
    CantorCarrierPiece,
    PiecewiseDefiningFunction,
    PointSpike,
)
from .tri import TriState


@dataclass
class FeatureReport:
    minus_inf_components: list = field(default_factory=list)  # open intervals
    bounded_gap_intervals: list = field(default_factory=list)  # I_R
    unbounded_gap_intervals: list = field(default_factory=list)  # I_inf / Theta_inf
    super_repelling_heights: list = field(default_factory=list)  # I_N
    unbounded_discontinuities: list = field(default_factory=list)  # (height, side)
    spikes: list = field(default_factory=list)  # (c0, level)
    cantor_combs: list = field(default_factory=list)  # (span, level, carrier json)
    dw_discontinuity: str = "none"  # none | simple | double | unknown
    exceptional_arc_to_unbounded: bool = False
    correspondence_caveat: bool = False  # Int(closure) != domain
    suspected: list = field(default_factory=list)  # numeric-only findings
    unknown_flags: list = field(default_factory=list)

    def to_json(self):
        return {
            "minus_inf_components": [list(t) for t in self.minus_inf_components],
            "bounded_gap_intervals": [list(t) for t in self.bounded_gap_intervals],
            "unbounded_gap_intervals": [list(t) for t in self.unbounded_gap_intervals],
            "super_repelling_heights": self.super_repelling_heights,
            "unbounded_discontinuities": [list(t) for t in self.unbounded_discontinuities],
            "spikes": [list(t) for t in self.spikes],
            "cantor_combs": [
                {"span": list(s), "level": q, "carrier": c}
                for (s, q, c) in self.cantor_combs
            ],
            "dw_discontinuity": self.dw_discontinuity,
            "exceptional_arc_to_unbounded": self.exceptional_arc_to_unbounded,
            "correspondence_caveat": self.correspondence_caveat,
            "suspected": self.suspected,
            "unknown_flags": self.unknown_flags,
        }


def minus_infinity_components(psi: PiecewiseDefiningFunction):
    return psi.minus_infinity_components()


def _candidate_heights(psi):
    hs = set(psi._special_heights())
    for e in (psi.interval_lo, psi.interval_hi):
        if math.isfinite(e):
            hs.add(e)
    return sorted(hs)


def detect_super_repelling(psi: PiecewiseDefiningFunction):
    """Heights outside the closure of the -inf gaps where a one-sided
    limit of psi is fully -inf (liminf = limsup = -inf)."""
    comps = psi.minus_infinity_components()
    heights = []
    unknowns = []
    for y0 in _candidate_heights(psi):
        if any(lo <= y0 <= hi for lo, hi in comps):
            continue
        lims = psi.one_sided_limits(y0)
        if lims.inconclusive:
            unknowns.append(y0)
            continue
        full_left = lims.limsup_left == NEG_INF if lims.limsup_left is not None else False
        full_right = (
            lims.limsup_right == NEG_INF if lims.limsup_right is not None else False
        )
        if full_left or full_right:
            heights.append(y0)
    return heights, unknowns


def detect_unbounded_discontinuities(psi: PiecewiseDefiningFunction):
    """Heights with a side where liminf = -inf but limsup is finite."""
    out = []
    unknowns = []
    for y0 in _candidate_heights(psi):
        lims = psi.one_sided_limits(y0)
        if lims.inconclusive:
            unknowns.append(y0)
            continue
        for side, li, ls in (
            ("left", lims.liminf_left, lims.limsup_left),
            ("right", lims.liminf_right, lims.limsup_right),
        ):
            if li is None:
                continue
            if li == NEG_INF and ls is not None and math.isfinite(ls):
                out.append((y0, side))
    return out, unknowns


def detect_contact_spikes(psi: PiecewiseDefiningFunction):
    """Isolated exceedances: declared spikes, with the separating level
    halfway between the spike value and the surrounding behavior."""
    out = []
    for p in psi.pieces:
        if isinstance(p, PointSpike):
            top = p.spike_value
            around = p.background
            lims = psi.one_sided_limits(p.c0)
            for v in (lims.limsup_left, lims.limsup_right):
                if v is not None and math.isfinite(v):
                    around = max(around, v)
            if top > around:
                out.append((p.c0, 0.5 * (top + around)))
    return out


def detect_cantor_combs(psi: PiecewiseDefiningFunction):
    """Carrier pieces whose off part stays below a level q < on_value near
    the carrier, with the on-values usc-attained along the carrier."""
    out = []
    unknowns = []
    for p in psi.pieces:
        if not isinstance(p, CantorCarrierPiece):
            continue
        if p.off_limsup_at_carrier is not None:
            off_sup = p.off_limsup_at_carrier
            exact = True
        else:
            off_sup, _ = p.lsc_sup_on(p.carrier.lo, p.carrier.hi)
            exact = False
        if p.on_value > off_sup + (0.0 if exact else 1e-7):
            q = 0.5 * (p.on_value + off_sup)
            out.append(((p.carrier.lo, p.carrier.hi), q, p.carrier.to_json()))
        elif not exact:
            unknowns.append(p.span)
    return out, unknowns


def dw_discontinuity(psi: PiecewiseDefiningFunction):
    """Discontinuity type of the attracting boundary point: a finite
    endpoint of I qualifies when liminf = -inf and limsup = +inf there."""
    cls = classify(psi)
    if cls.kind == PARABOLIC_ZERO:
        return "none", []
    unknowns = []

    def endpoint_blows(y0, side):
        lims = psi.one_sided_limits(y0)
        if lims.inconclusive:
            unknowns.append(y0)
            return None
        li = lims.liminf_right if side == "right" else lims.liminf_left
        ls = lims.limsup_right if side == "right" else lims.limsup_left
        return li == NEG_INF and ls == POS_INF

    flags = []
    if math.isfinite(psi.interval_lo):
        flags.append(endpoint_blows(psi.interval_lo, "right"))
    if math.isfinite(psi.interval_hi):
        flags.append(endpoint_blows(psi.interval_hi, "left"))
    if any(f is None for f in flags):
        return "unknown", unknowns
    n = sum(1 for f in flags if f)
    if n == 0:
        return "none", unknowns
    if n == 2 and cls.kind == HYPERBOLIC:
        return "double", unknowns
    return "simple", unknowns


def exceptional_arc_to_unbounded(psi: PiecewiseDefiningFunction):
    """I a half-line with psi = -inf beyond some height a, a finite value
    psi(a), and from inside: liminf -inf, limsup = psi(a)."""
    cls = classify(psi)
    if cls.kind != PARABOLIC_POSITIVE:
        return False, []
    comps = psi.minus_infinity_components()
    side = cls.container["side"]
    for lo, hi in comps:
        if side == "upper" and hi == POS_INF and math.isfinite(lo):
            a = lo
            inner = "left"
        elif side == "lower" and lo == NEG_INF and math.isfinite(hi):
            a = hi
            inner = "right"
        else:
            continue
        try:
            va = psi.value(a)
        except ValueError:
            continue
        if not math.isfinite(va):
            continue
        lims = psi.one_sided_limits(a)
        if lims.inconclusive:
            return False, [a]
        li = lims.liminf_left if inner == "left" else lims.liminf_right
        ls = lims.limsup_left if inner == "left" else lims.limsup_right
        if li == NEG_INF and ls is not None and ls == va:
            return True, []
    return False, []


def analyze(psi: PiecewiseDefiningFunction) -> FeatureReport:
    psi.require_validated()
    rep = FeatureReport()
    comps = psi.minus_infinity_components()
    rep.minus_inf_components = comps
    rep.bounded_gap_intervals = [
        (lo, hi) for lo, hi in comps if math.isfinite(lo) and math.isfinite(hi)
    ]
    rep.unbounded_gap_intervals = [
        (lo, hi) for lo, hi in comps if not (math.isfinite(lo) and math.isfinite(hi))
    ]
    rep.super_repelling_heights, unk1 = detect_super_repelling(psi)
    rep.unbounded_discontinuities, unk2 = detect_unbounded_discontinuities(psi)
    rep.spikes = detect_contact_spikes(psi)
    rep.cantor_combs, unk3 = detect_cantor_combs(psi)
    rep.dw_discontinuity, unk4 = dw_discontinuity(psi)
    rep.exceptional_arc_to_unbounded, unk5 = exceptional_arc_to_unbounded(psi)
    eq, _ = psi.equals_regularized()
    rep.correspondence_caveat = eq is not TriState.YES
    rep.unknown_flags = sorted(
        {f"height:{u}" for u in unk1 + unk2 + unk4 + unk5}
        | {f"span:{u}" for u in unk3}
    )
    return rep
