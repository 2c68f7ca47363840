import numpy as np
import pytest

from koenigslab import TriState
from koenigslab.battery import battery_entry, eta_domain_psi
from koenigslab.hardy import (
    INCONCLUSIVE,
    MEMBER,
    NON_MEMBER,
    betsakos_band,
    eta_domain,
    half_plane_right,
    hardy_membership,
    horizontal_half_plane,
    lambda_infty,
    log_domain,
    scaling_law_check,
    strip_width_pi,
)


@pytest.fixture(scope="module")
def domains():
    return {
        "hp": half_plane_right(),
        "strip": strip_width_pi(),
        "eta": eta_domain(1.0),
        "eta_half": eta_domain(0.5),
        "upper": horizontal_half_plane(0.0, "upper"),
    }


# -- membership oracle ---------------------------------------------------


def test_zero_is_member_everywhere(domains):
    for dom in domains.values():
        assert hardy_membership(0.0, dom, 1.0).status == MEMBER
        assert hardy_membership(0.0, dom, 2.0).status == MEMBER


def test_half_plane_negative_ray(domains):
    hp = domains["hp"]
    for lam in (-0.25, -1.0, -5.0):
        assert hardy_membership(lam, hp, 2.0).status == MEMBER
    for lam in (0.5, 1.0):
        assert hardy_membership(lam, hp, 2.0).status == NON_MEMBER
    # off the real axis the boundary modulus grows exponentially
    assert hardy_membership(-1 + 0.5j, hp, 2.0).status == NON_MEMBER
    assert hardy_membership(0.5j, hp, 2.0).status == NON_MEMBER


def test_strip_band(domains):
    st = domains["strip"]
    # |Re lam| < 1/p inside, beyond it outside
    assert hardy_membership(0.3, st, 2.0).status == MEMBER
    assert hardy_membership(-0.45, st, 2.0).status == MEMBER
    assert hardy_membership(0.7, st, 2.0).status == NON_MEMBER
    assert hardy_membership(0.9, st, 1.0).status == MEMBER
    assert hardy_membership(1.2, st, 1.0).status == NON_MEMBER
    # the imaginary axis is always admissible
    for v in (0.5, -1.0, 5.0):
        assert hardy_membership(complex(0, v), st, 2.0).status == MEMBER
    assert hardy_membership(0.3 + 2j, st, 2.0).status == MEMBER


def test_upper_half_plane_vertical_ray(domains):
    uh = domains["upper"]
    assert hardy_membership(1j, uh, 2.0).status == MEMBER
    assert hardy_membership(3j, uh, 1.0).status == MEMBER
    assert hardy_membership(-1j, uh, 2.0).status == NON_MEMBER
    assert hardy_membership(-0.5, uh, 2.0).status == NON_MEMBER


def test_eta_bounded_interval(domains):
    # admissible frequencies for p = 1 fill (-1, 0]; -1 itself may stay
    # undecided (the boundary integral diverges only logarithmically)
    eta = domains["eta"]
    for lam in (-0.25, -0.5, -0.75):
        assert hardy_membership(lam, eta, 1.0).status == MEMBER
    for lam in (-1.25, -1.5):
        assert hardy_membership(lam, eta, 1.0).status == NON_MEMBER
    assert hardy_membership(-1.0, eta, 1.0).status in (INCONCLUSIVE, NON_MEMBER)
    assert hardy_membership(-0.3j, eta, 1.0).status == NON_MEMBER


def test_monotonicity_in_p(domains):
    # membership at a larger p implies membership at a smaller p
    st = domains["strip"]
    for lam in (0.3, 0.45, 5j):
        if hardy_membership(lam, st, 2.0).status == MEMBER:
            assert hardy_membership(lam, st, 1.0).status == MEMBER
    eta = domains["eta"]
    if hardy_membership(-0.25, eta, 2.0).status == MEMBER:
        assert hardy_membership(-0.25, eta, 1.0).status == MEMBER


def test_sampled_convexity_strip(domains):
    st = domains["strip"]
    pairs = [(-0.4, 0.4), (-0.4 + 1j, 0.4 - 1j), (0.0, 0.45)]
    for a, b in pairs:
        sa = hardy_membership(a, st, 2.0).status
        sb = hardy_membership(b, st, 2.0).status
        sm = hardy_membership(0.5 * (complex(a) + complex(b)), st, 2.0).status
        if sa == MEMBER and sb == MEMBER and sm != INCONCLUSIVE:
            assert sm == MEMBER


def test_scaling_law(domains):
    rep = scaling_law_check(domains["hp"], 1.0, 2.0, [-2.0, -1.0, -0.5, 0.0])
    assert not rep["mismatch"]
    rep2 = scaling_law_check(
        domains["eta"], 1.0, 2.0, [-1.5, -1.25, -0.75, -0.5, -0.25, 0.0]
    )
    assert not rep2["mismatch"]


def test_domain_monotonicity_eta_family(domains):
    # the exponent-1 domain contains the exponent-1/2 domain, so its
    # admissible set is the smaller one
    psi_half = eta_domain_psi(0.5, "etah")
    psi_one = eta_domain_psi(1.0, "eta1")
    ys = np.linspace(-30, 30, 61)
    v_half = np.array([psi_half.value(float(y)) for y in ys])
    v_one = np.array([psi_one.value(float(y)) for y in ys])
    assert np.all(v_one <= v_half + 1e-9)
    for lam in (-0.5, -0.75):
        if hardy_membership(lam, domains["eta"], 1.0).status == MEMBER:
            assert hardy_membership(lam, domains["eta_half"], 1.0).status == MEMBER
    # the smaller domain keeps frequencies the bigger one rejects
    assert hardy_membership(-1.5, domains["eta"], 1.0).status == NON_MEMBER
    assert hardy_membership(-1.5, domains["eta_half"], 1.0).status == MEMBER


def test_log_domain_has_no_transplant():
    psi = battery_entry("log_demo").psi
    dom = log_domain(psi, 0.5, 0.6, 5.0)
    assert hardy_membership(-1.0, dom, 2.0).status == INCONCLUSIVE


def test_eta_exponent_validation():
    with pytest.raises(ValueError):
        eta_domain(1.5)


def test_compute_budget_bounds_work():
    from koenigslab import hardy

    hardy._membership_cache.clear()
    res = hardy_membership(-0.75, eta_domain(1.0), 1.0, budget=2**10)
    assert res.status == INCONCLUSIVE
    assert "budget" in res.certificate
    hardy._membership_cache.clear()


# -- betsakos band --------------------------------------------------------


def test_band_brackets_scale_with_p(domains):
    b1 = betsakos_band(domains["strip"], 1.0)
    b2 = betsakos_band(domains["strip"], 2.0)
    for key in ("c1_bracket", "c2_bracket"):
        lo1, hi1 = b1[key]
        lo2, hi2 = b2[key]
        # the band constants (scaled by p) must overlap between p = 1, 2
        assert max(lo1, lo2) <= min(hi1, hi2)
    # symmetry of the centered strip: c1 and c2 agree within 10%
    mid1 = 0.5 * (b1["c1_bracket"][0] + b1["c1_bracket"][1])
    mid2 = 0.5 * (b1["c2_bracket"][0] + b1["c2_bracket"][1])
    assert abs(mid1 - mid2) <= 0.1 * max(mid1, mid2)
    assert all(s == MEMBER for s in b1["imaginary_axis"].values())


# -- exact region -----------------------------------------------------------


def test_region_full_strip_is_vertical_axis():
    # the full strip has psi = -inf on a bounded interval: only vertical
    # directions remain
    from koenigslab import MinusInfinity, PiecewiseDefiningFunction

    psi = PiecewiseDefiningFunction(
        -np.pi / 2, np.pi / 2, (MinusInfinity(span=(-np.pi / 2, np.pi / 2)),)
    )
    psi.validate()
    reg = lambda_infty(psi)
    assert reg.contains(1j) is TriState.YES
    assert reg.contains(-3j) is TriState.YES
    assert reg.contains(-1.0) is TriState.NO
    assert reg.contains(0.0) is TriState.YES
    assert reg.exact


def test_region_half_plane_is_negative_ray():
    reg = lambda_infty(battery_entry("half_plane").psi)
    assert reg.contains(-2.0) is TriState.YES
    assert reg.contains(-2.0 + 0.1j) is TriState.NO
    assert reg.contains(1j) is TriState.NO
    assert reg.contains(0.5) is TriState.NO
    assert reg.exact


def test_region_upper_half_plane_is_up_ray():
    reg = lambda_infty(battery_entry("upper_half_plane").psi)
    assert reg.contains(2j) is TriState.YES
    assert reg.contains(-2j) is TriState.NO
    assert reg.contains(-1.0) is TriState.NO


def test_region_rays_closed_under_positive_scaling():
    for name in ("half_plane", "upper_half_plane", "strip"):
        reg = lambda_infty(battery_entry(name).psi)
        for lam in (-1.0, 1j, -1j, -2 + 1j):
            if reg.contains(lam) is TriState.YES:
                for t in (0.5, 2.0, 7.0):
                    assert reg.contains(t * lam) is TriState.YES
