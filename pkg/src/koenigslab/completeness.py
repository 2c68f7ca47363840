"""Completeness verdicts for the span of admissible exponentials.

Two independent routes produce the weak-star verdict:

* ``decide_weak_star`` evaluates the defining-function criteria directly:
  dispatch on the semigroup class, test psi against its regularization,
  and inspect where the liminf of psi is -inf (for the bounded-interval
  class the -inf set must be empty or a single closed interval; for the
  half-line class it must be confined to the closure of the unbounded
  -inf gap; for the whole-line class a containing half-plane must exist
  and the regularization test decides).

* ``decide_topological`` asks the raster oracle for interior-of-closure
  equality and the complement component count and applies the same
  dispatch at the level of plane topology.

On every domain where both produce definite answers they must agree;
disagreement means a bug in exactly one of them.  ``p_completeness_report``
adds the p < infinity routes: inheritance from the weak-star verdict,
the isolated-exceedance obstruction, the bounded-frequency-interval
obstruction, and the logarithmic-envelope domination sufficient condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classify import (  # noqa: F401 (HYPERBOLIC et al. re-exported)
    HYPERBOLIC,
    PARABOLIC_POSITIVE,
    PARABOLIC_ZERO,
    affine_minorant,
    classify,
)
from .domain import NEG_INF, POS_INF, PiecewiseDefiningFunction
from .features import analyze, detect_contact_spikes
from .hardy import NON_MEMBER, eta_domain, hardy_membership
from .raster import (
    complement_components,
    int_closure_equals_domain,
    rasterize,
)
from .tri import TriState


@dataclass
class CompletenessVerdict:
    weak_star_complete: TriState
    route: str
    witnesses: list = field(default_factory=list)
    p_complete: TriState = TriState.UNKNOWN
    p_route: str = ""
    caveats: list = field(default_factory=list)

    def to_json(self):
        return {
            "weak_star_complete": self.weak_star_complete.value,
            "route": self.route,
            "witnesses": [repr(w) for w in self.witnesses],
            "p_complete": self.p_complete.value,
            "p_route": self.p_route,
            "caveats": self.caveats,
        }


def _eq_reg(psi):
    verdict, witnesses = psi.equals_regularized()
    return verdict, witnesses


def decide_weak_star(psi: PiecewiseDefiningFunction) -> CompletenessVerdict:
    psi.require_validated()
    cls = classify(psi)
    eq, eq_wit = _eq_reg(psi)
    E, e_exact = psi.liminf_neg_inf_set()

    if cls.kind == HYPERBOLIC:
        if eq is TriState.NO:
            return CompletenessVerdict(
                TriState.NO, "bounded-interval: psi differs from its regularization",
                witnesses=eq_wit,
            )
        if not e_exact:
            return CompletenessVerdict(
                TriState.UNKNOWN, "bounded-interval: -inf set not certified"
            )
        if len(E) > 1:
            return CompletenessVerdict(
                TriState.NO,
                "bounded-interval: the liminf -inf set is not a single interval",
                witnesses=E,
            )
        if eq is TriState.UNKNOWN:
            return CompletenessVerdict(
                TriState.UNKNOWN, "bounded-interval: regularization test inconclusive"
            )
        route = (
            "bounded-interval: psi regularized and liminf finite everywhere"
            if not E
            else "bounded-interval: psi regularized and a single -inf gap interval"
        )
        return CompletenessVerdict(TriState.YES, route)

    if cls.kind == PARABOLIC_POSITIVE:
        if eq is TriState.NO:
            return CompletenessVerdict(
                TriState.NO, "half-line interval: psi differs from its regularization",
                witnesses=eq_wit,
            )
        if not e_exact:
            return CompletenessVerdict(
                TriState.UNKNOWN, "half-line interval: -inf set not certified"
            )
        # the liminf -inf set must lie inside the closure of the unbounded
        # -inf gap
        side = cls.container["side"]
        unb = [
            (lo, hi)
            for lo, hi in psi.minus_infinity_components()
            if (side == "upper" and hi == POS_INF) or (side == "lower" and lo == NEG_INF)
        ]
        bad = []
        for lo, hi in E:
            if unb:
                ulo, uhi = unb[0]
                inside = lo >= ulo if side == "upper" else hi <= uhi
                if inside:
                    continue
            bad.append((lo, hi))
        if bad:
            return CompletenessVerdict(
                TriState.NO,
                "half-line interval: liminf -inf outside the unbounded gap",
                witnesses=bad,
            )
        if eq is TriState.UNKNOWN:
            return CompletenessVerdict(
                TriState.UNKNOWN, "half-line interval: regularization test inconclusive"
            )
        return CompletenessVerdict(
            TriState.YES,
            "half-line interval: psi regularized, -inf confined to the unbounded gap",
        )

    # whole-line interval
    am = affine_minorant(psi)
    if am.status is TriState.NO:
        return CompletenessVerdict(
            TriState.NO,
            "whole-line interval: no containing half-plane, so bounded "
            "exponentials reduce to constants",
            witnesses=[am.reason],
        )
    if am.status is TriState.UNKNOWN:
        return CompletenessVerdict(
            TriState.UNKNOWN, "whole-line interval: half-plane containment undecided"
        )
    if eq is TriState.NO:
        return CompletenessVerdict(
            TriState.NO, "whole-line interval: psi differs from its regularization",
            witnesses=eq_wit,
        )
    if eq is TriState.UNKNOWN:
        return CompletenessVerdict(
            TriState.UNKNOWN, "whole-line interval: regularization test inconclusive"
        )
    return CompletenessVerdict(
        TriState.YES,
        "whole-line interval: contained in a half-plane and psi regularized",
    )


def decide_topological(psi: PiecewiseDefiningFunction, window, resolution):
    """Raster route: interior-of-closure equality plus component count,
    assembled per the class dispatch."""
    psi.require_validated()
    cls = classify(psi)
    grid = rasterize(psi, window, resolution)
    ic, ic_details = int_closure_equals_domain(grid)
    count, count_status = complement_components(psi, grid)
    result = {
        "int_closure_ok": ic.value,
        "complement_components": count,
        "component_status": count_status.value,
        "class": cls.kind,
        "violation": ic_details[0][0],
        "resolution": resolution,
    }
    if cls.kind == PARABOLIC_ZERO:
        am = affine_minorant(psi)
        if am.status is TriState.NO:
            result["verdict"] = TriState.NO
            result["route"] = "whole-line interval: no containing half-plane"
            return result
        if am.status is TriState.UNKNOWN:
            result["verdict"] = TriState.UNKNOWN
            result["route"] = "whole-line interval: containment undecided"
            return result
        result["verdict"] = ic
        result["route"] = "whole-line interval: interior-of-closure test on the raster"
        return result
    if ic is TriState.UNKNOWN or count_status is not TriState.YES:
        result["verdict"] = TriState.UNKNOWN
        result["route"] = "raster inconclusive"
        return result
    limit = 2 if cls.kind == HYPERBOLIC else 1
    ok = (ic is TriState.YES) and count <= limit
    result["verdict"] = TriState.from_bool(ok)
    result["route"] = (
        f"raster: interior-of-closure {ic.value}, {count} complement "
        f"component(s) against a limit of {limit}"
    )
    return result


def predicted_components(psi: PiecewiseDefiningFunction):
    """Component count of the complement of the closure, from the
    defining-function side (exact when the -inf data is declared)."""
    cls = classify(psi)
    E, e_exact = psi.liminf_neg_inf_set()
    if not e_exact:
        return None
    k = len(E)
    if cls.kind != HYPERBOLIC:
        # components of E absorbed by the unbounded ends of I do not
        # contribute a separating line bundle
        for lo, hi in E:
            if (not math.isfinite(psi.interval_hi) and hi == POS_INF) or (
                not math.isfinite(psi.interval_lo) and lo == NEG_INF
            ):
                k -= 1
    return k + 1


def p_completeness_report(psi: PiecewiseDefiningFunction, p=1.0):
    """Verdict for density of the exponential span in H^p, p < infinity."""
    psi.require_validated()
    ws = decide_weak_star(psi)
    if ws.weak_star_complete is TriState.YES:
        return {
            "p_complete": TriState.YES,
            "route": "inherited: weak-star completeness implies density in "
            "every H^p",
        }
    spikes = detect_contact_spikes(psi)
    if spikes:
        return {
            "p_complete": TriState.NO,
            "route": "isolated exceedance: two boundary arcs share a final "
            "point, separating evaluations that exponentials cannot",
            "witnesses": spikes,
        }
    verdict = _bounded_interval_obstruction(psi, p)
    if verdict is not None:
        return verdict
    verdict = _log_envelope_domination(psi, p)
    if verdict is not None:
        return verdict
    return {
        "p_complete": TriState.UNKNOWN,
        "route": "no applicable route (necessity of the topological "
        "conditions for p < infinity is open)",
    }


def _bounded_interval_obstruction(psi, p):
    """Frequencies confined to a bounded real interval while the domain
    contains a right half-plane: density fails."""
    cls = classify(psi)
    if cls.kind != PARABOLIC_ZERO:
        return None
    # the domain must contain a translated right half-plane: psi bounded above
    _, upper = psi.tail_envelopes("upper")
    _, upper_dn = psi.tail_envelopes("lower")
    if upper is None or upper_dn is None:
        return None
    sup_mid = psi.sup_on(-64.0, 64.0)
    if not math.isfinite(sup_mid):
        return None

    # certified-by-samples bounded frequency interval: definite non-members
    # on the negative real axis plus definite non-members off the axis
    dom = _matching_eta(psi)
    if dom is None:
        return None
    off_axis = [complex(-0.3, 0.35), complex(-0.3, -0.35), complex(0.0, 0.25), complex(0.0, -0.25)]
    for lam in off_axis:
        if hardy_membership(lam, dom, p).status != NON_MEMBER:
            return None
    # bracket the real-axis cutoff
    m_cut = None
    for u in (-1.25, -1.5, -2.0, -3.0):
        if hardy_membership(complex(u, 0.0), dom, p).status == NON_MEMBER:
            m_cut = u
            break
    if m_cut is None:
        return None
    return {
        "p_complete": TriState.NO,
        "route": "bounded frequency interval: admissible frequencies are "
        "confined to a bounded real interval while the domain contains a "
        "right half-plane",
        "witnesses": [f"non-member at {m_cut} and off-axis samples {off_axis}"],
    }


def _matching_eta(psi):
    """The built-in boundary-curve family member matching psi, if any."""
    if psi.name.startswith("eta"):
        try:
            return eta_domain(1.0)
        except ValueError:
            return None
    return None


def _log_envelope_domination(psi, p):
    """Sufficient condition: psi continuous (regularized), the complement
    connected after the class test, and psi bounded below by
    C1 - (log(|y|+3))^a with a < 1; then density in H^p holds."""
    cls = classify(psi)
    if cls.kind != PARABOLIC_ZERO:
        return None
    eq, _ = psi.equals_regularized()
    if eq is not TriState.YES:
        return None
    E, e_exact = psi.liminf_neg_inf_set()
    if not e_exact or E:
        return None
    lower, _ = psi.tail_envelopes("upper")
    lower_dn, _ = psi.tail_envelopes("lower")
    if lower is None or lower_dn is None:
        return None
    for env in (lower, lower_dn):
        if env.kind == "log_pow":
            if env.params[1] >= 1.0:
                return None
        elif env.kind not in ("const",):
            return None
    # middle certification: C1 = inf over a grid of psi + (log(|y|+3))^a
    a = max(
        env.params[1] for env in (lower, lower_dn) if env.kind == "log_pow"
    ) if any(env.kind == "log_pow" for env in (lower, lower_dn)) else 0.5
    ys = np.linspace(-64.0, 64.0, 257)
    c1 = POS_INF
    for lo, hi in zip(ys[:-1], ys[1:]):
        v = psi.inf_on(lo, hi)
        c1 = min(c1, v + math.log(min(abs(lo), abs(hi)) + 3.0) ** a)
    if not math.isfinite(c1):
        return None
    return {
        "p_complete": TriState.YES,
        "route": "logarithmic envelope domination: the domain sits inside a "
        "log-perturbed half-plane whose exponentials are dense",
        "witnesses": [f"psi >= {c1:.4g} - (log(|y|+3))^{a}"],
    }


def decide(psi, p=None, cross_check=False, window=None, resolution=1024):
    """Orchestrated verdict dictionary (library face of the CLI)."""
    ws = decide_weak_star(psi)
    out = {
        "weak_star_complete": ws.weak_star_complete.value,
        "route": ws.route,
        "witnesses": [repr(w) for w in ws.witnesses],
        "features": analyze(psi).to_json(),
    }
    if p is not None:
        rep = p_completeness_report(psi, p)
        out["p"] = p
        out["p_complete"] = rep["p_complete"].value
        out["p_route"] = rep["route"]
        if "witnesses" in rep:
            out["p_witnesses"] = [repr(w) for w in rep["witnesses"]]
    if cross_check:
        if window is None:
            raise ValueError("cross-check needs a window")
        topo = decide_topological(psi, window, resolution)
        out["topological"] = {
            "verdict": topo["verdict"].value,
            "route": topo["route"],
            "int_closure_ok": topo["int_closure_ok"],
            "complement_components": topo["complement_components"],
        }
        ws_v = ws.weak_star_complete
        tp_v = topo["verdict"]
        out["routes_agree"] = (
            "yes"
            if (ws_v.definite and tp_v.definite and ws_v is tp_v)
            else ("indeterminate" if not (ws_v.definite and tp_v.definite) else "no")
        )
    return out
