"""Frequency sets: the exact bounded-exponential region, and a numerical
membership oracle for e^{lam z} in H^p of the canonical domains.

Membership is decided after conformal transplant to the unit disc: the
p-th power means over circles |u| = r are nondecreasing in r, and
membership is equivalent to their boundedness.  The oracle climbs a dyadic
schedule r = 1 - 2^-j with a node budget per level and certifies one of

  * divergence: means exceed 1e12 and keep growing (non-member),
  * stabilization: relative Cauchy differences below 1e-6 (member),
  * increment trend: successive increments decay geometrically (member,
    the sup is finitely extrapolated) or grow geometrically (non-member).

Anything else is inconclusive; in particular a logarithmically divergent
boundary integral (increment ratio 1) stays inconclusive by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .classify import HYPERBOLIC, PARABOLIC_POSITIVE, classify
from .domain import NEG_INF, POS_INF, PiecewiseDefiningFunction
from .tri import TriState

MEMBER = "member"
NON_MEMBER = "non_member"
INCONCLUSIVE = "inconclusive"

_LOG_DIV = math.log(1e12)
_CAUCHY_TOL = 1e-6
_DECAY_RATIO = 0.98
_GROWTH_RATIO = 1.02


@dataclass(frozen=True)
class QuadraturePlan:
    j_min: int
    j_max: int
    node_base: int  # N_j = 2**min(18, node_scale(j) + node_base)
    half_scale: bool  # structure scale 2^{-j/2} (log-type boundary) or 2^{-j}

    def levels(self):
        for j in range(self.j_min, self.j_max + 1):
            k = (j + 1) // 2 if self.half_scale else j
            n = 2 ** min(18, k + self.node_base)
            yield j, 1.0 - 2.0 ** (-j), n


@dataclass(frozen=True)
class CanonicalDomain:
    """A domain with an explicit conformal map from the unit disc."""

    kind: str
    key: str
    transplant: Callable  # u in D (ndarray complex) -> domain points
    plan: QuadraturePlan
    params: dict = field(default_factory=dict)

    def __repr__(self):
        return f"CanonicalDomain({self.key})"


def _cayley(u):
    return (1.0 + u) / (1.0 - u)


def half_plane_right() -> CanonicalDomain:
    return CanonicalDomain(
        "half_plane_right",
        "half_plane_right",
        _cayley,
        QuadraturePlan(2, 14, 5, False),
    )


def horizontal_half_plane(edge=0.0, side="upper") -> CanonicalDomain:
    sgn = 1.0 if side == "upper" else -1.0

    def tr(u):
        return 1j * edge + sgn * 1j * _cayley(u)

    return CanonicalDomain(
        "horizontal_half_plane",
        f"horizontal_half_plane:{edge}:{side}",
        tr,
        QuadraturePlan(2, 14, 5, False),
        {"edge": edge, "side": side},
    )


def strip_width_pi() -> CanonicalDomain:
    def tr(u):
        return np.log(_cayley(u))

    return CanonicalDomain(
        "strip_width_pi", "strip_width_pi", tr, QuadraturePlan(2, 14, 5, False)
    )


def eta_domain(a=1.0) -> CanonicalDomain:
    """Image of the right half-plane under w - (log(w+3))^a, a in (0, 1]."""
    if not (0.0 < a <= 1.0):
        raise ValueError("the exponent must lie in (0, 1]")

    def tr(u):
        w = _cayley(u)
        lg = np.log(w + 3.0)
        return w - np.exp(a * np.log(lg))

    return CanonicalDomain(
        "eta_domain", f"eta_domain:{a}", tr, QuadraturePlan(3, 22, 9, True), {"a": a}
    )


def log_domain(psi: PiecewiseDefiningFunction, lip_bound, log_exponent, log_radius):
    """Logarithmic starlike-at-infinity domain; carries no disc transplant,
    so the membership oracle reports inconclusive on it."""
    return CanonicalDomain(
        "log_domain",
        f"log_domain:{psi.name}",
        None,
        QuadraturePlan(2, 2, 5, False),
        {"psi": psi, "K": lip_bound, "a": log_exponent, "R": log_radius},
    )


# -- the membership oracle ---------------------------------------------------

_transplant_cache: dict = {}


def _nodes(dom, j, r, n):
    key = (dom.key, j, n)
    w = _transplant_cache.get(key)
    if w is None:
        theta = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
        u = r * np.exp(1j * theta)
        w = dom.transplant(u)
        if len(_transplant_cache) > 40:
            _transplant_cache.clear()
        _transplant_cache[key] = w
    return w


def _log_mean(dom, lam, p, j, r, n):
    """log of the p-th power mean of |e^{lam z}| over the circle |u| = r."""
    w = _nodes(dom, j, r, n)
    L = p * (lam.real * w.real - lam.imag * w.imag)
    Lmax = float(np.max(L))
    if not math.isfinite(Lmax):
        return POS_INF
    return Lmax + math.log(float(np.mean(np.exp(L - Lmax))))


@dataclass
class MembershipResult:
    status: str
    lam: complex
    p: float
    certificate: str
    log_means: list
    levels_used: int

    @property
    def tristate(self):
        return {
            MEMBER: TriState.YES,
            NON_MEMBER: TriState.NO,
            INCONCLUSIVE: TriState.UNKNOWN,
        }[self.status]


def _trend_verdict(logs):
    vals = np.exp(np.asarray(logs, dtype=float))
    k = min(9, len(vals))
    tail = vals[-k:]
    scale = max(float(tail[-1]), 1e-300)
    d = np.diff(tail)
    if np.all(np.abs(d[-4:]) < 1e-9 * scale):
        return MEMBER, "means stabilized at the noise floor"
    if np.any(d <= 0):
        return INCONCLUSIVE, "non-monotone increments (quadrature noise)"
    ratios = d[1:] / d[:-1]
    last = ratios[-3:]
    if np.all(last <= _DECAY_RATIO):
        return MEMBER, "increments decay geometrically; bounded extrapolation"
    if np.all(last >= _GROWTH_RATIO):
        return NON_MEMBER, "increments grow geometrically; divergence trend"
    return INCONCLUSIVE, "increment ratio too close to 1 to certify"


_membership_cache: dict = {}


def hardy_membership(lam, dom: CanonicalDomain, p=2.0, budget=None) -> MembershipResult:
    """Tri-state membership of e^{lam z} in H^p(dom)."""
    lam = complex(lam)
    if p < 1:
        raise ValueError("p must be at least 1")
    key = (dom.key, lam, float(p))
    hit = _membership_cache.get(key)
    if hit is not None:
        return hit
    if dom.transplant is None:
        res = MembershipResult(
            INCONCLUSIVE, lam, p, "no disc transplant for this domain", [], 0
        )
        _membership_cache[key] = res
        return res
    if lam == 0:
        res = MembershipResult(MEMBER, lam, p, "constant function", [0.0], 1)
        _membership_cache[key] = res
        return res
    logs = []
    nodes_spent = 0
    cert = None
    status = None
    for j, r, n in dom.plan.levels():
        if budget is not None and nodes_spent + n > budget:
            break
        logs.append(_log_mean(dom, lam, p, j, r, n))
        nodes_spent += n
        if len(logs) >= 4:
            tail = logs[-4:]
            if tail[-1] > _LOG_DIV and all(b > a for a, b in zip(tail, tail[1:])):
                status, cert = NON_MEMBER, "means exceed the divergence threshold"
                break
            deltas = [abs(b - a) for a, b in zip(logs[-4:-1], logs[-3:])]
            if all(d < _CAUCHY_TOL for d in deltas):
                status, cert = MEMBER, "relative Cauchy differences below tolerance"
                break
    if status is None:
        if len(logs) >= 6:
            status, cert = _trend_verdict(logs)
        else:
            status, cert = INCONCLUSIVE, "budget exhausted before any certificate"
    res = MembershipResult(status, lam, p, cert, logs, len(logs))
    _membership_cache[key] = res
    return res


def membership_grid(dom, lams, p=2.0):
    return {complex(l): hardy_membership(l, dom, p) for l in lams}


# -- exact bounded-exponential region ----------------------------------------


@dataclass
class FrequencyRegion:
    """Description of the directions lam with e^{lam z} bounded on the domain.

    The region is {0}, plus the vertical directions allowed by the height
    interval, plus rays into the open left half-plane whose slope
    v/u (lam = u + iv, u < 0) admits an affine minorant of psi.  Feasible
    slopes are bracketed: ``slopes_feasible`` is certified inside,
    ``slopes_possible`` certified outside its complement; they coincide
    exactly when declarations pin the region.
    """

    includes_plus_i: TriState
    includes_minus_i: TriState
    left_directions: TriState  # any u < 0 direction at all
    slopes_feasible: Optional[tuple]  # closed interval or None
    slopes_possible: Optional[tuple]
    exact: bool
    notes: str = ""
    p_samples: dict = field(default_factory=dict)

    def contains(self, lam) -> TriState:
        lam = complex(lam)
        if lam == 0:
            return TriState.YES
        u, v = lam.real, lam.imag
        if u > 0:
            return TriState.NO
        if u == 0:
            return self.includes_plus_i if v > 0 else self.includes_minus_i
        if self.left_directions is TriState.NO:
            return TriState.NO
        m = v / u
        if self.slopes_feasible is not None and (
            self.slopes_feasible[0] <= m <= self.slopes_feasible[1]
        ):
            return TriState.YES
        if self.slopes_possible is None or not (
            self.slopes_possible[0] <= m <= self.slopes_possible[1]
        ):
            return TriState.NO
        return TriState.UNKNOWN

    def to_json(self):
        return {
            "includes_plus_i": self.includes_plus_i.value,
            "includes_minus_i": self.includes_minus_i.value,
            "left_directions": self.left_directions.value,
            "slopes_feasible": list(self.slopes_feasible)
            if self.slopes_feasible
            else None,
            "slopes_possible": list(self.slopes_possible)
            if self.slopes_possible
            else None,
            "exact": self.exact,
            "notes": self.notes,
        }


def _slope_constraint_from_lower(env, tail):
    """Closed feasible slope interval contributed by one declared lower
    envelope on one tail (None = no constraint decided)."""
    if env is None:
        return None
    if env.kind == "affine":
        m0 = env.params[0]
        return (NEG_INF, m0) if tail == "upper" else (m0, POS_INF)
    if env.kind == "const":
        return (NEG_INF, 0.0) if tail == "upper" else (0.0, POS_INF)
    return None  # log_pow lower envelope makes no slope feasible on its tail


_TINY = 5e-324  # smallest positive float: encodes an open endpoint at 0


def _slope_survivors_from_upper(env, tail):
    """Slopes NOT killed by one declared upper envelope on one tail."""
    if env is None:
        return (NEG_INF, POS_INF)
    if env.kind == "affine":
        m0 = env.params[0]
        return (NEG_INF, m0) if tail == "upper" else (m0, POS_INF)
    if env.kind == "const":
        return (NEG_INF, 0.0) if tail == "upper" else (0.0, POS_INF)
    # log_pow upper: the envelope drifts to -inf, killing every slope on
    # this tail's side of zero, zero included (open endpoint at 0)
    return (NEG_INF, -_TINY) if tail == "upper" else (_TINY, POS_INF)


def _isect(a, b):
    if a is None:
        return b
    if b is None:
        return a
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    return (lo, hi) if lo <= hi else ()


def lambda_infty(psi: PiecewiseDefiningFunction) -> FrequencyRegion:
    """Exact description of the bounded-exponential directions."""
    psi.require_validated()
    cls = classify(psi)
    plus_i = TriState.from_bool(math.isfinite(psi.interval_lo))
    minus_i = TriState.from_bool(math.isfinite(psi.interval_hi))
    E, e_exact = psi.liminf_neg_inf_set()
    notes = []
    if E:
        return FrequencyRegion(
            plus_i,
            minus_i,
            TriState.NO if e_exact else TriState.UNKNOWN,
            None,
            None,
            exact=e_exact,
            notes="psi reaches -inf: no left directions",
        )
    if cls.kind == HYPERBOLIC:
        # psi_* > -inf on the compact closure of I, so psi is bounded
        # below and every slope admits an intercept
        return FrequencyRegion(
            plus_i, minus_i, TriState.YES, (NEG_INF, POS_INF), (NEG_INF, POS_INF),
            exact=True, notes="bounded interval and psi bounded below",
        )
    lo_up, hi_up = psi.tail_envelopes("upper")
    lo_dn, hi_dn = psi.tail_envelopes("lower")
    feas = None
    poss = None
    if cls.kind == PARABOLIC_POSITIVE:
        side = cls.container["side"]
        tail = "upper" if side == "upper" else "lower"
        env_lo = lo_up if tail == "upper" else lo_dn
        env_hi = hi_up if tail == "upper" else hi_dn
        feas = _slope_constraint_from_lower(env_lo, tail)
        poss = _slope_survivors_from_upper(env_hi, tail)
    else:
        f_up = _slope_constraint_from_lower(lo_up, "upper")
        f_dn = _slope_constraint_from_lower(lo_dn, "lower")
        if f_up is not None and f_dn is not None:
            feas = _isect(f_up, f_dn)
            feas = None if feas == () else feas
        poss = _isect(
            _slope_survivors_from_upper(hi_up, "upper"),
            _slope_survivors_from_upper(hi_dn, "lower"),
        )
        poss = None if poss == () else poss
    if feas is None and poss is None:
        left = TriState.NO
        exact = True
        notes.append("declared upper envelopes exclude every slope")
    elif feas is None:
        left = TriState.UNKNOWN
        exact = False
        notes.append("lower-bound-only: tail declarations incomplete")
    else:
        left = TriState.YES
        exact = poss is not None and feas == poss
        if not exact:
            notes.append("feasible slopes are a certified lower bound")
    return FrequencyRegion(
        plus_i, minus_i, left, feas, poss, exact=exact, notes="; ".join(notes)
    )


# -- frequency algebra checks -------------------------------------------------


def scaling_law_check(dom: CanonicalDomain, p, q, grid):
    """For each lam with definite H^p status, (p/q) lam must have the same
    H^q status.  Returns agreement counts and mismatches."""
    agree = 0
    mismatch = []
    skipped = 0
    factor = p / q
    for lam in grid:
        s1 = hardy_membership(lam, dom, p)
        s2 = hardy_membership(factor * complex(lam), dom, q)
        if s1.status == INCONCLUSIVE or s2.status == INCONCLUSIVE:
            skipped += 1
            continue
        if s1.status == s2.status:
            agree += 1
        else:
            mismatch.append((complex(lam), s1.status, s2.status))
    return {
        "p": p,
        "q": q,
        "agree": agree,
        "mismatch": mismatch,
        "skipped_inconclusive": skipped,
    }


def betsakos_band(dom: CanonicalDomain, p, tol=0.02, max_iter=12):
    """Bracket the member/non-member transitions of H^p membership along
    the real axis, one bracket per side, for a strip-type domain.
    Returns dict with per-side brackets scaled by p (the band constants)
    and spot checks on the imaginary axis."""

    def status(u):
        return hardy_membership(complex(u, 0.0), dom, p).status

    def bracket(sign):
        hi = 4.0 / p
        # find a definite non-member endpoint
        for _ in range(8):
            if status(sign * hi) == NON_MEMBER:
                break
            hi *= 1.5
        else:
            return None
        # member edge: largest |u| certified member (inconclusive counts up)
        a, b = 0.0, hi
        for _ in range(max_iter):
            if b - a < tol / p:
                break
            mid = 0.5 * (a + b)
            if status(sign * mid) == MEMBER:
                a = mid
            else:
                b = mid
        member_edge = a
        # non-member edge: smallest |u| certified non-member
        a2, b2 = member_edge, hi
        for _ in range(max_iter):
            if b2 - a2 < tol / p:
                break
            mid = 0.5 * (a2 + b2)
            if status(sign * mid) == NON_MEMBER:
                b2 = mid
            else:
                a2 = mid
        return (p * member_edge, p * b2)

    axis_checks = {
        repr(v): hardy_membership(complex(0.0, v), dom, p).status
        for v in (0.5, -1.0, 5.0)
    }
    return {
        "c2_bracket": bracket(+1.0),
        "c1_bracket": bracket(-1.0),
        "imaginary_axis": axis_checks,
        "p": p,
    }
