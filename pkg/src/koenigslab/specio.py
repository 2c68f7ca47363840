"""Domain-spec JSON files: load/save PiecewiseDefiningFunction.

Schema::

    {
      "name": "strip",                       # optional
      "interval": [lo, hi],                  # "-inf"/"inf" sentinels allowed
      "pieces": [
        {"kind": "finite_analytic", "span": [a, b], "expr": "...",
         "limits": {"left": {"liminf": ..., "limsup": ...}, "right": {...}},   # optional
         "tail_lower": {...}, "tail_upper": {...}},                            # optional
        {"kind": "minus_infinity", "span": [a, b]},
        {"kind": "point_spike", "span": [a, b], "c0": c, "value": v,
         "background": w},
        {"kind": "cantor_comb", "span": [a, b],
         "carrier": {"base": [a, b], "keep_fraction": f, "depth": d},
         "on_value": v, "off_expr": "...",
         "off_bound": q, "off_limsup_at_carrier": s},                          # optional
        {"kind": "oscillatory", "span": [a, b], "expr": "...",
         "limits": {"left": {...}, "right": {...}}}                            # required
      ]
    }
"""

from __future__ import annotations

import json

from .cantor import CantorSet
from .domain import (
    CantorCarrierPiece,
    FiniteAnalytic,
    LimitData,
    MinusInfinity,
    OscillatorySample,
    PiecewiseDefiningFunction,
    PointSpike,
    TailEnvelope,
    ValidationError,
    _as_float,
    _json_float,
)
from .expr import parse_expression


def _span(obj):
    a, b = obj["span"]
    return (_as_float(a), _as_float(b))


def _limits(obj, key="limits"):
    lims = obj.get(key) or {}
    left = LimitData.from_json(lims["left"]) if "left" in lims else None
    right = LimitData.from_json(lims["right"]) if "right" in lims else None
    return left, right


def piece_from_json(obj):
    kind = obj.get("kind")
    if kind == "finite_analytic":
        left, right = _limits(obj)
        return FiniteAnalytic(
            span=_span(obj),
            evaluator=parse_expression(obj["expr"]),
            expr_source=obj["expr"],
            limits_left=left,
            limits_right=right,
            tail_lower=TailEnvelope.from_json(obj["tail_lower"]) if "tail_lower" in obj else None,
            tail_upper=TailEnvelope.from_json(obj["tail_upper"]) if "tail_upper" in obj else None,
        )
    if kind == "minus_infinity":
        return MinusInfinity(span=_span(obj))
    if kind == "point_spike":
        return PointSpike(
            span=_span(obj),
            c0=float(obj["c0"]),
            spike_value=float(obj["value"]),
            background=_as_float(obj["background"]),
        )
    if kind == "cantor_comb":
        off_src = obj.get("off_expr", "0")
        return CantorCarrierPiece(
            span=_span(obj),
            carrier=CantorSet.from_json(obj["carrier"]),
            on_value=float(obj["on_value"]),
            off_evaluator=parse_expression(off_src),
            off_expr_source=off_src,
            off_bound=None if obj.get("off_bound") is None else float(obj["off_bound"]),
            off_limsup_at_carrier=(
                None
                if obj.get("off_limsup_at_carrier") is None
                else float(obj["off_limsup_at_carrier"])
            ),
            off_liminf_at_carrier=(
                None
                if obj.get("off_liminf_at_carrier") is None
                else float(obj["off_liminf_at_carrier"])
            ),
        )
    if kind == "oscillatory":
        left, right = _limits(obj)
        if left is None or right is None:
            raise ValidationError("oscillatory pieces require limits on both sides")
        return OscillatorySample(
            span=_span(obj),
            evaluator=parse_expression(obj["expr"]),
            expr_source=obj["expr"],
            limits_left=left,
            limits_right=right,
        )
    raise ValidationError(f"unknown piece kind {kind!r}")


def piece_to_json(p):
    span = [_json_float(p.span[0]), _json_float(p.span[1])]
    if isinstance(p, FiniteAnalytic):
        if p.expr_source is None:
            raise ValidationError("cannot serialize a piece without expression source")
        out = {"kind": "finite_analytic", "span": span, "expr": p.expr_source}
        lims = {}
        if p.limits_left is not None:
            lims["left"] = p.limits_left.to_json()
        if p.limits_right is not None:
            lims["right"] = p.limits_right.to_json()
        if lims:
            out["limits"] = lims
        if p.tail_lower is not None:
            out["tail_lower"] = p.tail_lower.to_json()
        if p.tail_upper is not None:
            out["tail_upper"] = p.tail_upper.to_json()
        return out
    if isinstance(p, MinusInfinity):
        return {"kind": "minus_infinity", "span": span}
    if isinstance(p, PointSpike):
        return {
            "kind": "point_spike",
            "span": span,
            "c0": p.c0,
            "value": p.spike_value,
            "background": _json_float(p.background),
        }
    if isinstance(p, CantorCarrierPiece):
        if p.off_expr_source is None:
            raise ValidationError("cannot serialize a carrier piece without off-expression source")
        out = {
            "kind": "cantor_comb",
            "span": span,
            "carrier": p.carrier.to_json(),
            "on_value": p.on_value,
            "off_expr": p.off_expr_source,
        }
        if p.off_bound is not None:
            out["off_bound"] = p.off_bound
        if p.off_limsup_at_carrier is not None:
            out["off_limsup_at_carrier"] = p.off_limsup_at_carrier
        if p.off_liminf_at_carrier is not None:
            out["off_liminf_at_carrier"] = p.off_liminf_at_carrier
        return out
    if isinstance(p, OscillatorySample):
        if p.expr_source is None:
            raise ValidationError("cannot serialize a piece without expression source")
        return {
            "kind": "oscillatory",
            "span": span,
            "expr": p.expr_source,
            "limits": {
                "left": p.limits_left.to_json(),
                "right": p.limits_right.to_json(),
            },
        }
    raise ValidationError(f"cannot serialize {type(p).__name__}")


def psi_from_dict(obj) -> PiecewiseDefiningFunction:
    try:
        lo, hi = obj["interval"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"/interval: expected [lo, hi] ({exc})") from exc
    pieces = []
    for i, pobj in enumerate(obj.get("pieces", [])):
        try:
            pieces.append(piece_from_json(pobj))
        except (KeyError, ValidationError, ValueError) as exc:
            raise ValidationError(f"/pieces/{i}: {exc}") from exc
    values_at = {
        float(k): _as_float(v) for k, v in (obj.get("values_at") or {}).items()
    }
    psi = PiecewiseDefiningFunction(
        _as_float(lo),
        _as_float(hi),
        tuple(pieces),
        name=obj.get("name", ""),
        point_values=values_at,
    )
    psi.validate()
    return psi


def psi_to_dict(psi: PiecewiseDefiningFunction):
    out = {
        "interval": [_json_float(psi.interval_lo), _json_float(psi.interval_hi)],
        "pieces": [piece_to_json(p) for p in psi.pieces],
    }
    if psi.point_values:
        out["values_at"] = {repr(k): _json_float(v) for k, v in psi.point_values.items()}
    if psi.name:
        out["name"] = psi.name
    return out


def load_psi(path) -> PiecewiseDefiningFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return psi_from_dict(json.load(fh))


def save_psi(psi, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(psi_to_dict(psi), fh, indent=2, sort_keys=True)
        fh.write("\n")
