"""Index profiles: finite-difference oracles, series fidelity, tuning."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fastlight.dispersion import (
    ConstantIndex,
    LinearIndex,
    LorentzianAbsorptive,
    TaylorCubic,
    cad_tune,
    group_index,
    index_change,
    refractive_index,
    taylor_coefficients,
)

W0 = 2.0 * math.pi * 5.0e14
G = 2.0 * math.pi * 1.0e6


def fd_group_index(profile, omega: float, step: float) -> float:
    # n_g = d(n*w)/dw = n(w) + d((n - n(w))*w)/dw, differenced on the index
    # deviation so tiny index excursions are not lost against n ~ 1.
    # the rounded evaluation points define the true span; a nominal 2*step
    # denominator would be off by the frequency lattice spacing
    wp = omega + step
    wm = omega - step
    hi = float(index_change(profile, wp, omega)) * wp
    lo = float(index_change(profile, wm, omega)) * wm
    return float(refractive_index(profile, omega)) + (hi - lo) / (wp - wm)


def fd_step(profile, omega: float) -> float:
    # Truncation is set by the curvature scale: the line width for resonant
    # profiles, the frequency itself otherwise.
    if isinstance(profile, LorentzianAbsorptive):
        return profile.half_linewidth / 3000.0
    if isinstance(profile, TaylorCubic) and profile.n1 < 0.0 < profile.n3:
        return math.sqrt(-profile.n1 / profile.n3) / 3000.0
    return omega * 1e-7


def random_profile(rng: random.Random):
    """One random profile plus an evaluation frequency near its features."""
    kind = rng.choice(("constant", "linear", "lorentzian", "taylor"))
    w0 = 10.0 ** rng.uniform(14.5, 15.8)
    if kind == "constant":
        return ConstantIndex(rng.uniform(1.0, 3.0)), w0
    if kind == "linear":
        n0 = rng.uniform(1.0, 2.0)
        ng = 10.0 ** rng.uniform(-2.0, 6.0)
        return LinearIndex(n0, (ng - n0) / w0, w0), w0 * rng.uniform(0.99, 1.01)
    g = 10.0 ** rng.uniform(4.0, 9.0)
    # keep A*w0/g within [1e-3, 3]: spans weak lines through past-critical
    a = g / w0 * 10.0 ** rng.uniform(-3.0, math.log10(3.0))
    detune = rng.uniform(-3.0, 3.0) * g
    if kind == "lorentzian":
        return LorentzianAbsorptive(a, g, w0), w0 + detune
    return TaylorCubic(1.0, -a / g, a / g ** 3, w0), w0 + detune


def test_group_index_matches_finite_differences():
    rng = random.Random(914)
    for _ in range(60):
        profile, w = random_profile(rng)
        exact = float(group_index(profile, w))
        approx = fd_group_index(profile, w, fd_step(profile, w))
        assert abs(approx - exact) <= 1e-5 * max(1.0, abs(exact))


def test_group_index_linear_slow_light():
    ng = 100.0
    profile = LinearIndex(1.0, (ng - 1.0) / W0, W0)
    assert float(group_index(profile, W0)) == pytest.approx(ng, rel=1e-12)


def test_lorentzian_taylor_coefficients_frozen():
    profile = LorentzianAbsorptive(2.0e-9, G, W0)
    t = taylor_coefficients(profile)
    assert t.n0 == 1.0
    assert t.omega_ref == W0
    assert t.n1 == pytest.approx(-3.183098861837907e-16, rel=1e-12)
    assert t.n3 == pytest.approx(8.062883608299874e-30, rel=1e-12)


def test_taylor_is_third_order_series_of_lorentzian():
    # The remainder of the odd cubic against the full line is exactly
    # A*u^5/(1 + u^2); a strong line keeps the difference above rounding.
    a = 1e-3
    profile = LorentzianAbsorptive(a, G, W0)
    t = taylor_coefficients(profile)
    for u in (0.05, 0.1, 0.2, 0.3):
        w = W0 + u * G
        diff = float(refractive_index(t, w)) - float(refractive_index(profile, w))
        assert diff == pytest.approx(a * u ** 5 / (1.0 + u * u), rel=1e-4)


def test_index_change_antisymmetric_exactly():
    profile = LorentzianAbsorptive(2.0e-9, G, W0)
    for d in (0.5, 2.0, 1024.5, 6283185.5, 1.0e8):
        up = float(index_change(profile, W0 + d, W0))
        dn = float(index_change(profile, W0 - d, W0))
        assert up == -dn


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=1.0, max_value=1e9))
def test_index_change_antisymmetry_property(delta):
    profile = LorentzianAbsorptive(5.0e-8, G, W0)
    w_plus = W0 + delta
    w_minus = 2.0 * W0 - w_plus  # exact mirror of the rounded w_plus
    up = float(index_change(profile, w_plus, W0))
    dn = float(index_change(profile, w_minus, W0))
    assert up == -dn


def test_index_change_consistent_with_direct_difference():
    profile = LorentzianAbsorptive(1.0e-4, G, W0)
    for d in (0.1 * G, G, 5.0 * G):
        direct = float(refractive_index(profile, W0 + d)) - float(refractive_index(profile, W0))
        stable = float(index_change(profile, W0 + d, W0))
        assert stable == pytest.approx(direct, abs=4e-16)


def test_lorentzian_slope_extremes():
    a = 2.0e-9
    profile = LorentzianAbsorptive(a, G, W0)
    assert float(profile.dindex_domega(W0)) == pytest.approx(-a / G, rel=1e-14)
    # slope crosses zero at one half linewidth off center
    assert abs(float(profile.dindex_domega(W0 + G))) < (a / G) * 1e-6
    assert abs(float(profile.dindex_domega(W0 - G))) < (a / G) * 1e-6


def test_index_deviation_peaks_at_half_linewidth():
    a = 2.0e-9
    profile = LorentzianAbsorptive(a, G, W0)
    assert float(refractive_index(profile, W0 - G)) == pytest.approx(1.0 + a / 2.0, rel=1e-12)
    assert float(refractive_index(profile, W0 + G)) == pytest.approx(1.0 - a / 2.0, rel=1e-12)


def test_cad_tune_hits_group_index_target():
    for target in (0.0, 0.5, 1.0, -1.0, -10.0):
        profile = cad_tune(G, W0, group_index_target=target)
        ng = float(group_index(profile, W0))
        assert ng == pytest.approx(target, abs=1e-12 * (1.0 + abs(target)))


def test_cad_tune_default_strength():
    profile = cad_tune(G, W0)
    assert profile.strength == pytest.approx(2.0e-9, rel=1e-12)
    assert profile.half_linewidth == G
    assert profile.center == W0


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=1e3, max_value=1e9),
    st.floats(min_value=-100.0, max_value=1.0),
)
def test_cad_tune_target_property(g, target):
    profile = cad_tune(g, W0, group_index_target=target)
    ng = float(group_index(profile, W0))
    assert ng == pytest.approx(target, abs=1e-9 * (1.0 + abs(target)))


def test_cad_tune_rejects_unreachable_target():
    with pytest.raises(ValueError):
        cad_tune(G, W0, group_index_target=1.5)


def test_taylor_coefficients_passthrough_and_mapping():
    t = TaylorCubic(1.0, -1e-16, 1e-30, W0)
    assert taylor_coefficients(t) is t
    lin = LinearIndex(1.2, 3e-16, W0)
    tl = taylor_coefficients(lin)
    assert (tl.n0, tl.n1, tl.n3, tl.omega_ref) == (1.2, 3e-16, 0.0, W0)
    const = ConstantIndex(1.5)
    tc = taylor_coefficients(const, omega_ref=W0)
    assert (tc.n0, tc.n1, tc.n3) == (1.5, 0.0, 0.0)
    with pytest.raises(ValueError):
        taylor_coefficients(const)


def test_validation_errors():
    with pytest.raises(ValueError):
        ConstantIndex(0.0)
    with pytest.raises(ValueError):
        LorentzianAbsorptive(1e-9, -G, W0)
    with pytest.raises(ValueError):
        LorentzianAbsorptive(-1e-9, G, W0)
    with pytest.raises(ValueError):
        LinearIndex(1.0, 0.0, -W0)
    profile = ConstantIndex(1.0)
    with pytest.raises(ValueError):
        profile.index(-1.0)
