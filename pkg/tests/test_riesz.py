import math

import numpy as np
import pytest

from frwave import (
    RieszLowerBoundZero,
    SampledSignal,
    SequenceSpectrum,
    TailTooFat,
    as_angle,
    biortho_profile,
    check_biorthogonal,
    dual_scaling,
    fractional_scaling,
    haar_system,
    hat_signal,
    periodization_gram,
    riesz_bounds,
    sequence_spectrum_eval,
    translate_atom,
    translate_expansion,
    translate_gram,
)

from conftest import gaussian_signal, max_abs


def chirped_hat(alpha, dt=2.0 ** -9, margin=2.0):
    n = int(round((2.0 + 2.0 * margin) / dt)) + 1
    return fractional_scaling(hat_signal((-1.0 - margin, dt, n)), alpha)


@pytest.mark.parametrize("alpha", [math.pi / 2, math.pi / 3, 2.0 * math.pi / 3])
def test_haar_periodization_is_one(alpha):
    phi, _ = haar_system(alpha)
    prof = periodization_gram(phi, alpha)
    vals = prof.real_values()
    assert max_abs(vals, 1.0) < 1e-2
    b = riesz_bounds(prof)
    assert 0.99 < b.lower <= b.upper < 1.001


@pytest.mark.parametrize("alpha", [math.pi / 2, math.pi / 3])
def test_hat_periodization_matches_closed_form(alpha):
    # classical periodization of the hat: sum |hat(w+2pi k)|^2 = (2+cos w)/3;
    # at angle alpha the argument reads u*csc(alpha)
    angle = as_angle(alpha)
    phi = chirped_hat(angle)
    prof = periodization_gram(phi, angle)
    u = prof.grid
    want = (2.0 + np.cos(u * angle.csc_alpha)) / 3.0
    assert max_abs(prof.real_values(), want) < 1e-5
    b = riesz_bounds(prof)
    assert b.lower == pytest.approx(1.0 / 3.0, abs=1e-5)
    assert b.upper == pytest.approx(1.0, abs=1e-5)


def test_tail_gate_fires_on_undertruncated_sum():
    phi, _ = haar_system(math.pi / 2)
    with pytest.raises(TailTooFat):
        periodization_gram(phi, math.pi / 2, kmax=2, tail_tol=1e-3)


def test_periodization_zero_detected_by_dual_construction():
    # width-2 box: its transform is 2 e^{-iw} sinc(w), which vanishes on the
    # whole shifted lattice at w = pi, so the periodization has a zero
    dt = 2.0 ** -8
    n = int(round(4.0 / dt)) + 1
    t = -1.0 + dt * np.arange(n)
    vals = np.zeros(n, dtype=np.complex128)
    vals[(t > 0.0) & (t < 2.0)] = 1.0
    vals[np.abs(t) < 1e-12] = 0.5
    vals[np.abs(t - 2.0) < 1e-12] = 0.5
    box2 = SampledSignal(-1.0, dt, vals)
    with pytest.raises(RieszLowerBoundZero):
        dual_scaling(box2, math.pi / 2, grid_count=128, kmax=32, tau_pos=1e-4)


def test_sequence_spectrum_periodicity():
    angle = as_angle(math.pi / 3)
    c = SequenceSpectrum(np.array([1.0, -2.0 + 1j, 0.5]), -1, angle)
    u = np.linspace(0.0, angle.period, 33)
    assert max_abs(sequence_spectrum_eval(c, u),
                   sequence_spectrum_eval(c, u + angle.period)) < 1e-12


def test_translate_gram_haar_identity():
    phi, _ = haar_system(math.pi / 3)
    g = translate_gram(phi, phi, math.pi / 3, n_gram=4)
    assert max_abs(g, np.eye(9)) < 2e-3


@pytest.mark.parametrize("alpha", [math.pi / 2, math.pi / 3])
def test_dual_scaling_hat_biorthogonal(alpha):
    angle = as_angle(alpha)
    phi = chirped_hat(angle)
    dual = dual_scaling(phi, angle)
    rep = check_biorthogonal(phi, dual, angle, tol=2e-2)
    assert rep.overall_pass
    # the spectral-division dual comes out with constant 2 pi sin(alpha)
    assert rep.extras["constant"] == pytest.approx(abs(angle.period), rel=1e-3)


def test_check_biorthogonal_rejects_gaussian_pair():
    g = gaussian_signal((-12.0, 2.0 ** -8, 24 * 256), sigma=1.0)
    rep = check_biorthogonal(g, g, math.pi / 2)
    assert not rep.overall_pass
    # both criteria agree on the failure
    v = rep.verdicts
    assert not v["spectral_constancy"].passed
    assert not v["direct_gram"].passed


def test_translate_expansion_reconstructs_span_element():
    angle = as_angle(math.pi / 3)
    phi, _ = haar_system(angle)
    grid = (-12.0, 2.0 ** -7, 3072)
    rng = np.random.default_rng(5)
    coefs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    acc = np.zeros(grid[2], dtype=np.complex128)
    for c, n in zip(coefs, range(-4, 5)):
        acc += c * translate_atom(phi, angle, n, grid).values
    f = SampledSignal(grid[0], grid[1], acc)
    seq, residual = translate_expansion(f, phi, phi, angle, N=8)
    assert residual < 1e-2 * f.norm()
    got = seq.coefficients[seq.indices >= -4][:9]
    assert max_abs(got, coefs) < 1e-2 * float(np.max(np.abs(coefs)))


def test_biortho_profile_tail_reported():
    phi, _ = haar_system(math.pi / 2)
    prof = biortho_profile(phi, phi, math.pi / 2)
    assert 0.0 < prof.tail < 5e-2 * abs(prof.mean())
