import math

import numpy as np
import pytest

from stripgain import (
    DivergentIntegral,
    ImproperTransferFunction,
    InvalidInput,
    Line,
    PoleInStrip,
    PoleOnLine,
    Polynomial,
    RationalFunction,
    Strip,
    build_hamiltonian,
    decompose_line,
    frequency_response_data,
    h2_line_norm,
    line_norm_bisection,
    line_norm_grid,
    realize,
    singular_value_test,
    strip_norm,
)

# Damped oscillator 1/(s^2 + 2 zeta s + 1), zeta = 0.1.  The magnitude peak
# 1/(2 zeta sqrt(1 - zeta^2)) and its location sqrt(1 - 2 zeta^2) were
# evaluated with 40-digit mpmath arithmetic and frozen here.
RESONANCE_PEAK = 5.025189076296060377
RESONANCE_OMEGA = 0.9899494936611665342


def resonant():
    return RationalFunction([1.0], [1.0, 0.2, 1.0])


def test_line_norm_grid_first_order():
    res = line_norm_grid(RationalFunction([1.0], [1.0, 1.0]), Line(0.0))
    assert res.value == pytest.approx(1.0, abs=1e-9)
    assert res.peak_frequency == pytest.approx(0.0, abs=1e-4)


def test_line_norm_grid_resonance():
    res = line_norm_grid(resonant(), Line(0.0))
    assert res.value == pytest.approx(RESONANCE_PEAK, abs=1e-9)
    assert res.peak_frequency == pytest.approx(RESONANCE_OMEGA, abs=1e-5)


def test_line_norm_bisection_resonance():
    res = line_norm_bisection(resonant(), Line(0.0), 1e-8)
    assert res.value == pytest.approx(RESONANCE_PEAK, abs=2e-8)
    assert res.bracket[1] - res.bracket[0] <= 1e-8


def test_line_norm_bisection_biproper_peak_at_zero():
    # (s - 2)/(s + 1): |G(i w)|^2 = (4 + w^2)/(1 + w^2), maximal at w = 0
    G = RationalFunction([-2.0, 1.0], [1.0, 1.0])
    res = line_norm_bisection(G, Line(0.0), 1e-7)
    assert res.value == pytest.approx(2.0, abs=1e-6)
    assert res.peak_frequency == pytest.approx(0.0, abs=1e-3)


def test_line_norm_bisection_allpass_sup_at_infinity():
    # (s - 1)/(s + 1) has constant unit magnitude on the imaginary axis
    G = RationalFunction([-1.0, 1.0], [1.0, 1.0])
    res = line_norm_bisection(G, Line(0.0), 1e-6)
    assert res.value == pytest.approx(1.0, abs=5e-6)


def test_line_norm_shifted_line():
    # |1/(s+1)| on Re(s) = -0.5 peaks at s = -0.5: value 2
    res = line_norm_bisection(RationalFunction([1.0], [1.0, 1.0]), Line(0.5), 1e-8)
    assert res.value == pytest.approx(2.0, abs=1e-6)


def test_pole_on_line_rejected():
    G = RationalFunction([1.0], [1.0, 1.0])
    with pytest.raises(PoleOnLine):
        line_norm_bisection(G, Line(1.0), 1e-6)
    with pytest.raises(PoleOnLine):
        line_norm_grid(G, Line(1.0))


def test_improper_rejected():
    G = RationalFunction([0.0, 0.0, 1.0], [1.0, 1.0])
    with pytest.raises(ImproperTransferFunction):
        line_norm_grid(G, Line(0.0))
    with pytest.raises(ImproperTransferFunction):
        strip_norm(G, Strip(0.0, 1.0))


def test_build_hamiltonian_rejects_level_at_feedthrough():
    ss = realize(RationalFunction([-1.0, 1.0], [1.0, 1.0]))
    with pytest.raises(InvalidInput):
        build_hamiltonian(ss, 1.0, Line(0.0))


def test_hamiltonian_crossing_matches_magnitude():
    """The Hamiltonian is singular at i w0 exactly at gamma = |G(i w0)|."""
    ss = realize(resonant())
    for w0 in (0.0, 0.5, 1.3):
        gamma = abs(resonant().eval_unchecked(1j * w0))
        assert singular_value_test(ss, gamma, w0, Line(0.0))
    # and not singular at a frequency with a different magnitude
    gamma = abs(resonant().eval_unchecked(1j * 0.5))
    assert not singular_value_test(ss, gamma, 3.0, Line(0.0))


def test_strip_norm_between_poles():
    G = RationalFunction([1.0], Polynomial((-3.0, 2.0, 1.0)))
    res = strip_norm(G, Strip(0.0, 2.0))
    assert res.value == pytest.approx(1.0 / 3.0, abs=1e-6)
    assert res.boundary_values[0] == pytest.approx(1.0 / 3.0, abs=1e-6)
    assert res.boundary_values[1] == pytest.approx(1.0 / 3.0, abs=1e-6)


def test_strip_norm_rejects_pole_inside():
    G = RationalFunction([1.0], [1.0, 1.0])
    with pytest.raises(PoleInStrip):
        strip_norm(G, Strip(0.5, 1.5))


def test_strip_norm_interior_never_exceeds_boundary_seeded():
    rng = np.random.RandomState(23)
    done = 0
    while done < 10:
        lo = rng.uniform(0.0, 1.0)
        hi = lo + rng.uniform(0.4, 1.5)
        n = rng.randint(2, 6)
        poles = []
        while len(poles) < n:
            re = rng.uniform(-4, 2)
            if -hi - 0.1 <= re <= -lo + 0.1:
                continue
            if rng.rand() < 0.5 and n - len(poles) >= 2:
                im = rng.uniform(0.2, 5)
                poles += [complex(re, im), complex(re, -im)]
            else:
                poles.append(complex(re, 0.0))
        den = np.real(np.polynomial.polynomial.polyfromroots(poles))
        num = rng.randn(rng.randint(1, n + 1))
        G = RationalFunction(Polynomial(num), Polynomial(den))
        strip = Strip(lo, hi)
        res = strip_norm(G, strip, method="grid")
        slack = 1e-9 + 1e-6 * res.value
        omegas = np.linspace(0.0, 50.0, 400)
        for lam in strip.interior_rates(4):
            mags = np.abs(G.eval_unchecked(-lam + 1j * omegas))
            assert np.max(mags) <= res.value + slack
        done += 1


def test_h2_line_norm_first_order():
    # impulse response e^{-t} for t > 0: energy 1/2
    got = h2_line_norm(RationalFunction([1.0], [1.0, 1.0]), Line(0.0))
    assert got == pytest.approx(math.sqrt(0.5), abs=1e-9)


def test_h2_line_norm_two_sided():
    # 1/((s-1)(s+3)) on Re(s) = 0: kernel -e^{t}/4 (t<=0), -e^{-3t}/4 (t>0);
    # energy (1/16)(1/2 + 1/6) = 1/24
    G = RationalFunction([1.0], Polynomial((-3.0, 2.0, 1.0)))
    assert h2_line_norm(G, Line(0.0)) == pytest.approx(math.sqrt(1.0 / 24.0), abs=1e-9)


def test_h2_line_norm_rejects_biproper():
    with pytest.raises(DivergentIntegral):
        h2_line_norm(RationalFunction([1.0, 1.0], [2.0, 1.0]), Line(0.0))


def test_decompose_line_splits_by_side():
    G = RationalFunction([1.0], Polynomial((-3.0, 2.0, 1.0)))
    g_minus, g_plus = decompose_line(G, Line(1.0))
    assert np.allclose(g_minus.poles.real, [-3.0], atol=1e-8)
    assert np.allclose(g_plus.poles.real, [1.0], atol=1e-8)
    s = -1.0 + 0.8j
    total = g_minus.eval_unchecked(s) + g_plus.eval_unchecked(s)
    assert total == pytest.approx(G.eval_unchecked(s), rel=1e-9)


def test_frequency_response_data_columns():
    G = RationalFunction([1.0], [1.0, 1.0])
    w = np.array([0.0, 1.0, 2.0])
    data = frequency_response_data(G, Line(0.0), w, uncertainty=0.5)
    assert data.shape == (3, 5)
    z = G.eval_unchecked(1j * w)
    assert np.allclose(data[:, 1], z.real)
    assert np.allclose(data[:, 2], z.imag)
    assert np.allclose(data[:, 3], np.abs(z))
    assert np.allclose(data[:, 4], 0.5 * np.abs(z))
