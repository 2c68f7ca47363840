"""Acceptance suite: one test per acceptance criterion, at the stated
tolerances, with a printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report
inline; a copy is also written to acceptance_report.txt.

Criterion 7's error threshold is a known impossibility: with frequency
spacing 1/8 the fitted family is 16*pi-periodic along the boundary, so the
true distance of 1/(z+1)^2 from the span in the canonical transplant
metric is 1.38e-2, above the 1e-2 target (the exact boundary Gram gives
2.56e-2 at the boundary itself).  The assertion runs unweakened and is
marked xfail; halving the spacing reaches 1.4e-3.
"""

import math
import time

import numpy as np
import pytest

from koenigslab import TriState
from koenigslab.approx import (
    LogDomainSpec,
    alpha_map,
    alpha_quadrature,
    choose_b,
    discretize_measure,
    least_squares_fit,
    log_domain_boundary,
    phi_beta_R,
    univalence_winding_check,
)
from koenigslab.battery import full_battery, battery_entry
from koenigslab.completeness import (
    decide_topological,
    decide_weak_star,
    p_completeness_report,
    predicted_components,
)
from koenigslab.expr import parse_expression
from koenigslab.hardy import (
    INCONCLUSIVE,
    MEMBER,
    NON_MEMBER,
    eta_domain,
    half_plane_right,
    hardy_membership,
    horizontal_half_plane,
    strip_width_pi,
)
from koenigslab.raster import complement_components, int_closure_equals_domain, rasterize

REPORT = []


def _report(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    REPORT.append(line)
    print(line)


@pytest.fixture(scope="module", autouse=True)
def write_report():
    yield
    with open("acceptance_report.txt", "w", encoding="utf-8") as fh:
        fh.write("\n".join(REPORT) + "\n")
    print()
    for line in REPORT:
        print(line)


def test_criterion_1_regularization_matches_raster_oracle():
    """equals_regularized and the raster interior-of-closure test agree on
    every battery domain where both are definite; >= 10 of 12 definite at
    resolution <= 4096^2; < 60 s."""
    t0 = time.time()
    battery = full_battery()
    definite = 0
    agreements = 0
    mismatches = []
    for e in battery:
        assert e.resolution <= 4096
        eq, _ = e.psi.equals_regularized()
        grid = rasterize(e.psi, e.window, e.resolution)
        oracle, _ = int_closure_equals_domain(grid)
        if eq.definite and oracle.definite:
            definite += 1
            if eq is oracle:
                agreements += 1
            else:
                mismatches.append(e.name)
    elapsed = time.time() - t0
    ok = (
        len(battery) >= 12
        and definite >= 10
        and not mismatches
        and elapsed < 60.0
    )
    _report(
        1,
        ok,
        f"{agreements}/{definite} definite agreements over {len(battery)} domains "
        f"in {elapsed:.1f}s",
    )
    assert len(battery) >= 12
    assert definite >= 10
    assert not mismatches, mismatches
    assert elapsed < 60.0


def test_criterion_2_component_counts_match_prediction():
    """Raster complement components equal the defining-function prediction,
    exact integer agreement on the whole battery."""
    results = []
    for e in full_battery():
        grid = rasterize(e.psi, e.window, min(e.resolution, 1024))
        count, status = complement_components(e.psi, grid)
        pred = predicted_components(e.psi)
        results.append((e.name, count, pred, status))
    bad = [r for r in results if r[3] is not TriState.YES or r[1] != r[2]]
    _report(2, not bad, f"{len(results)} domains, exact agreement" if not bad else f"mismatches: {bad}")
    assert not bad, bad


def test_criterion_3_main_dispatch_agreement():
    """Both verdict routes agree on all definite battery domains and the
    five pinned headline verdicts hold."""
    disagreements = []
    for e in full_battery():
        ws = decide_weak_star(e.psi).weak_star_complete
        tp = decide_topological(e.psi, e.window, min(e.resolution, 1024))["verdict"]
        if ws.definite and tp.definite and ws is not tp:
            disagreements.append(e.name)
    pinned = {
        "strip": "yes",
        "comb": "no",
        "oscillation_cantor": "yes",
        "double_spike": "no",
        "log_demo": "no",  # whole-line interval without a containing half-plane
    }
    wrong = {
        name: decide_weak_star(battery_entry(name).psi).weak_star_complete.value
        for name in pinned
        if decide_weak_star(battery_entry(name).psi).weak_star_complete.value
        != pinned[name]
    }
    ok = not disagreements and not wrong
    _report(3, ok, "routes agree; headline verdicts hold" if ok else f"{disagreements} {wrong}")
    assert not disagreements, disagreements
    assert not wrong, wrong


def test_criterion_4_frequency_algebra():
    """0 in every admissible set; sampled convexity with zero violations on
    a 21x21 grid; scaling-law agreement >= 95% of definite pairs."""
    domains = {
        "half_plane": half_plane_right(),
        "strip": strip_width_pi(),
        "upper": horizontal_half_plane(0.0, "upper"),
        "eta1": eta_domain(1.0),
        "eta_half": eta_domain(0.5),
    }
    zero_ok = all(
        hardy_membership(0.0, dom, p).status == MEMBER
        for dom in domains.values()
        for p in (1.0, 2.0)
    )
    assert zero_ok

    # convexity on a 21x21 grid over the strip for p = 2
    st = domains["strip"]
    res = np.linspace(-1.0, 1.0, 21)
    ims = np.linspace(-1.0, 1.0, 21)
    status = {}
    for i, u in enumerate(res):
        for j, v in enumerate(ims):
            status[(i, j)] = hardy_membership(complex(u, v), st, 2.0).status
    violations = []
    keys = list(status)
    for i1, j1 in keys:
        for i2, j2 in keys:
            if (i1, j1) >= (i2, j2):
                continue
            if (i1 + i2) % 2 or (j1 + j2) % 2:
                continue
            mid = ((i1 + i2) // 2, (j1 + j2) // 2)
            if (
                status[(i1, j1)] == MEMBER
                and status[(i2, j2)] == MEMBER
                and status[mid] == NON_MEMBER
            ):
                violations.append(((i1, j1), (i2, j2)))
    assert not violations, violations[:5]

    # scaling law between p = 1 and p = 2 on the negative real axis
    grid = [complex(u, 0.0) for u in np.linspace(-2.0, 0.0, 21)]
    rates = {}
    for name in ("half_plane", "eta1"):
        dom = domains[name]
        agree = skipped = 0
        for lam in grid:
            s1 = hardy_membership(lam, dom, 1.0).status
            s2 = hardy_membership(0.5 * lam, dom, 2.0).status
            if INCONCLUSIVE in (s1, s2):
                skipped += 1
            elif s1 == s2:
                agree += 1
        definite = len(grid) - skipped
        rates[name] = agree / definite if definite else 0.0
    ok = zero_ok and not violations and all(r >= 0.95 for r in rates.values())
    _report(
        4,
        ok,
        f"0 admissible everywhere; convexity violations: {len(violations)}; "
        f"scaling agreement: { {k: round(v, 3) for k, v in rates.items()} }",
    )
    assert all(r >= 0.95 for r in rates.values()), rates


def test_criterion_5_eta_domain_frequencies():
    """For p = 1 on the exponent-1 domain: member at -0.25, -0.5, -0.75;
    non-member at -1.25, -1.5; -1 may stay inconclusive.  < 120 s."""
    from koenigslab import hardy

    hardy._membership_cache.clear()
    hardy._transplant_cache.clear()
    t0 = time.time()
    dom = eta_domain(1.0)
    stats = {
        lam: hardy_membership(lam, dom, 1.0).status
        for lam in (-0.25, -0.5, -0.75, -1.0, -1.25, -1.5)
    }
    elapsed = time.time() - t0
    ok = (
        all(stats[l] == MEMBER for l in (-0.25, -0.5, -0.75))
        and all(stats[l] == NON_MEMBER for l in (-1.25, -1.5))
        and stats[-1.0] in (INCONCLUSIVE, NON_MEMBER)
        and elapsed < 120.0
    )
    _report(5, ok, f"{ {k: v for k, v in stats.items()} } in {elapsed:.1f}s")
    for l in (-0.25, -0.5, -0.75):
        assert stats[l] == MEMBER, (l, stats[l])
    for l in (-1.25, -1.5):
        assert stats[l] == NON_MEMBER, (l, stats[l])
    assert elapsed < 120.0


def test_criterion_6_strip_discretization_order():
    """The atomic-measure sums converge to the truncated transform at ten
    strip points with empirical order 1/n, and the triangle-inequality
    bound holds at every n."""
    beta, R = 2.0, 5.0
    pts = np.array(
        [0.0, 1.0, -1.0, 3.0, -3.0, 0.7j, -0.7j, 2.0 + 1.5j, -2.0 - 1.5j, 5.0],
        dtype=complex,
    )
    target = phi_beta_R(beta, R, pts)
    cap = math.exp(math.pi * R / (2 * 64)) * (
        1 - math.exp(-(beta - math.pi / 2) * R)
    ) / (beta - math.pi / 2)
    errs = []
    bounds_ok = True
    for n in (64, 128, 256):
        mu = discretize_measure(lambda s: np.exp(-beta * np.asarray(s)), R, n)
        P = mu.exp_sum("oscillatory")
        errs.append(float(np.max(np.abs(P(pts) - target))))
        bound = P.strip_sup_bound()
        bounds_ok = bounds_ok and bound <= cap + 1e-9
        bounds_ok = bounds_ok and float(np.max(np.abs(P(pts)))) <= bound + 1e-9
    r1, r2 = errs[0] / errs[1], errs[1] / errs[2]
    ok = 1.5 <= r1 <= 3.0 and 1.5 <= r2 <= 3.0 and bounds_ok
    _report(6, ok, f"errors {['%.3e' % e for e in errs]}, ratios {r1:.2f}, {r2:.2f}, bounds ok: {bounds_ok}")
    assert 1.5 <= r1 <= 3.0 and 1.5 <= r2 <= 3.0
    assert bounds_ok


def _half_plane_fit_errors():
    hp = half_plane_right()
    target = lambda z: 1.0 / (z + 1.0) ** 2
    errs = []
    for m in (64, 128, 256):
        fit = least_squares_fit(target, hp, [-k / 8 for k in range(1, m + 1)])
        errs.append(fit.error)
    return errs


@pytest.mark.xfail(
    strict=True,
    reason="the frequency spacing 1/8 makes the fitted family 16*pi-periodic "
    "along the boundary; the first replica carries harmonic-measure weight "
    "~1.4e-4, so the true distance of the target from the span in the "
    "canonical transplant metric is 1.38e-2, above the 1e-2 target.  "
    "Halving the spacing reaches 1.4e-3.",
)
def test_criterion_7_error_threshold():
    t0 = time.time()
    errs = _half_plane_fit_errors()
    elapsed = time.time() - t0
    _report(
        "7a",
        errs[0] < 1e-2,
        f"budget-64 error {errs[0]:.4e} against the 1e-2 target ({elapsed:.1f}s); "
        "known floor from the 16*pi replica of the uniform frequency grid",
    )
    assert errs[0] < 1e-2


def test_criterion_7_monotone_and_runtime():
    t0 = time.time()
    errs = _half_plane_fit_errors()
    elapsed = time.time() - t0
    ok = errs[1] <= errs[0] * (1 + 1e-9) and errs[2] <= errs[1] * (1 + 1e-9) and elapsed < 60.0
    _report(
        "7b",
        ok,
        f"errors {['%.4e' % e for e in errs]} nonincreasing in {elapsed:.1f}s",
    )
    assert errs[1] <= errs[0] * (1 + 1e-9)
    assert errs[2] <= errs[1] * (1 + 1e-9)
    assert elapsed < 60.0


def test_criterion_8_alpha_map_and_univalence():
    """alpha(0) = 1/3 to 1e-12 by series; closed form against direct
    quadrature to 1e-10 at 100 random points; translate choice plus the
    winding univalence check pass for the demonstration log domain."""
    a0_err = abs(alpha_map(0.0) - 1.0 / 3.0)
    rng = np.random.default_rng(20240817)
    zs = rng.normal(0.0, 2.0, 100) + 1j * rng.normal(0.0, 2.0, 100)
    quad_err = float(np.max(np.abs(alpha_map(zs) - alpha_quadrature(zs))))
    spec = LogDomainSpec(
        psi=parse_expression("-(1/2)*log(abs(y)+1)"),
        lip_bound=0.5,
        log_exponent=0.6,
        log_radius=5.0,
        name="log_demo",
    )
    b = choose_b(spec)
    param = log_domain_boundary(spec, b)
    interior = [
        alpha_map(complex(float(spec.psi(t)) + b + 2.0, t)) for t in (-3.0, 0.0, 4.0)
    ]
    ok_univ, details = univalence_winding_check(alpha_map, param, 2**14, interior)
    ok = a0_err < 1e-12 and quad_err < 1e-10 and ok_univ
    _report(
        8,
        ok,
        f"alpha(0) err {a0_err:.1e}; quadrature err {quad_err:.1e}; "
        f"b = {b}; univalent: {ok_univ}",
    )
    assert a0_err < 1e-12
    assert quad_err < 1e-10
    assert ok_univ, details


def test_criterion_9_obstruction_routes():
    """The three p-completeness routes fire on their designated domains."""
    rep_spike = p_completeness_report(battery_entry("double_spike").psi, 1.0)
    rep_eta = p_completeness_report(battery_entry("eta1").psi, 1.0)
    rep_log = p_completeness_report(battery_entry("log_minorant").psi, 1.0)
    ok = (
        rep_spike["p_complete"] is TriState.NO
        and "exceedance" in rep_spike["route"]
        and rep_eta["p_complete"] is TriState.NO
        and "bounded frequency interval" in rep_eta["route"]
        and rep_log["p_complete"] is TriState.YES
        and "envelope domination" in rep_log["route"]
    )
    _report(
        9,
        ok,
        f"double_spike: {rep_spike['p_complete'].value}; "
        f"eta1: {rep_eta['p_complete'].value}; log_minorant: {rep_log['p_complete'].value}",
    )
    assert rep_spike["p_complete"] is TriState.NO
    assert "exceedance" in rep_spike["route"]
    assert rep_eta["p_complete"] is TriState.NO
    assert "bounded frequency interval" in rep_eta["route"]
    assert rep_log["p_complete"] is TriState.YES
    assert "envelope domination" in rep_log["route"]
