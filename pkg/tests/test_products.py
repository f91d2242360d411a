import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxwellqm.grid import make_grid
from maxwellqm.state import NonNormalizableError, PhotonState, circular_state, enforce_lorenz, plane_wave
from maxwellqm.products import (born_density, continuity_residual, current_imaginary_residual,
                                density_epsilon_basis, divergence_current, field_product,
                                four_current, inner_product, inner_product_nw, integrated_density,
                                norm, norm_squared, normalize_real, normalized, parseval_report,
                                product, real_norm_report)
from maxwellqm.synthesis import real_psi

from conftest import packet, random_transverse

G = make_grid(16, 4.0)


def test_sesquilinear(grid16):
    a, b = packet(grid16), packet(grid16, direction=(0, 1, 1))
    z = 0.3 - 1.2j
    assert np.isclose(inner_product(a, z * b).value, z * inner_product(a, b).value)
    assert np.isclose(inner_product(z * a, b).value, np.conj(z) * inner_product(a, b).value)
    assert np.isclose(inner_product(b, a).value, np.conj(inner_product(a, b).value))


def test_sector_breakdown_and_json(grid16):
    s = packet(grid16) + packet(grid16, lam=-1, eps=-1)
    ip = inner_product(s, s)
    assert set(ip.sector_breakdown) == {(1, 1), (-1, -1)}
    js = ip.to_json({"parseval": 1e-16})
    assert js["convention"] == "invariant" and js["sector_breakdown"]["1,+1"][0] > 0
    assert js["residuals"]["parseval"] == 1e-16
    assert complex(ip) == ip.value


def test_products_enforce_alpha(grid16):
    a0, a5 = packet(grid16), packet(grid16, alpha=0.5)
    with pytest.raises(ValueError):
        inner_product(a5, a5)
    with pytest.raises(ValueError):
        inner_product_nw(a0, a0)
    assert product(a5, a5).convention == "newton_wigner"
    assert abs(product(a5, a5).real - 1) < 1e-13


def test_frames_must_match(grid16):
    from maxwellqm.state import gaussian_packet
    a = gaussian_packet(grid16, (0, 0, 0.3), 2.5, m=1)
    b = gaussian_packet(grid16, (0, 0, 0.3), 2.5, m=0)
    with pytest.raises(ValueError):
        inner_product(a, b)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), eps=st.sampled_from([1, -1]))
def test_positive_definite_in_each_sector(seed, eps):
    s = random_transverse(G, np.random.default_rng(seed), eps=eps)
    assert inner_product(s, s).real > 0


def test_gauge_modes_cancel(grid16):
    prof = packet(grid16, direction=(1, -1, 0.2)).coeff(1, 1)
    s = enforce_lorenz(PhotonState(grid16, {(3, 1): prof, (3, -1): 0.5 * prof}))
    ip = inner_product(s, s)
    assert abs(ip.value) < 1e-12 * max(abs(v) for v in ip.sector_breakdown.values())
    # adding the gauge part to a physical state leaves its products unchanged
    p = packet(grid16)
    assert np.isclose(inner_product(p + s, p + s).value, inner_product(p, p).value, atol=1e-14)


def test_norm_helpers(grid16):
    s = 3.0 * packet(grid16)
    assert np.isclose(norm(s), 3.0)
    assert np.isclose(norm_squared(normalized(s)), 1.0)
    with pytest.raises(NonNormalizableError):
        norm(PhotonState(grid16, {}))
    scalar = PhotonState(grid16, {(0, 1): packet(grid16).coeff(1, 1)})
    with pytest.raises(NonNormalizableError):
        norm(scalar)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_parseval_property(seed):
    s = random_transverse(G, np.random.default_rng(seed))
    assert parseval_report(s).mismatch < 1e-12


def test_parseval_needs_normalizable(grid16):
    with pytest.raises(NonNormalizableError):
        parseval_report(plane_wave(grid16, grid16.kvec[:, 9, 9, 9], 1))


# -- four-current ------------------------------------------------------------------

@pytest.mark.parametrize("eps", [1, -1])
def test_density_two_paths_single_sign(grid16, eps):
    s = packet(grid16, eps=eps) + 0.5j * packet(grid16, lam=-1, eps=eps, direction=(1, 0, 0))
    j0 = four_current(s, 0.3).j0
    d2 = density_epsilon_basis(s, 0.3)
    assert np.max(np.abs(j0 - d2)) < 1e-12 * np.max(np.abs(j0))
    assert current_imaginary_residual(s, 0.3) < 1e-12


def test_mixed_sign_cross_terms_are_imaginary(grid16):
    s = packet(grid16) + packet(grid16, lam=-1, eps=-1, direction=(0.1, 0.2, 1))
    j0 = four_current(s).j0
    d2 = density_epsilon_basis(s)
    assert np.max(np.abs(j0 - d2)) < 1e-12 * np.max(np.abs(j0))
    assert current_imaginary_residual(s) > 1e-3


def test_integrated_density_is_field_product(grid16):
    s = packet(grid16) + packet(grid16, lam=-1, eps=-1)
    fp = field_product(s, s).real
    assert abs(integrated_density(s, 0.5) - fp) < 1e-10 * fp


def test_negative_sector_density_sign(grid16):
    # with the conjugate field the negative-frequency density stays positive
    s = packet(grid16, eps=-1)
    assert integrated_density(s) > 0


def test_current_at_point(grid16):
    s = packet(grid16)
    full = four_current(s, 0.1)
    x = grid16.x_axis[[8, 7, 9]]
    pt = four_current(s, 0.1, x)
    assert pt.j0 == full.j0[8, 7, 9]
    assert np.array_equal(pt.jvec, full.jvec[:, 8, 7, 9])


def test_zero_state_current(grid16):
    z = PhotonState(grid16, {})
    assert not np.any(four_current(z).j0)
    assert current_imaginary_residual(z) == 0.0
    assert continuity_residual(z) == 0.0
    assert not np.any(divergence_current(z))


def test_current_flows_along_momentum(grid16):
    s = packet(grid16, direction=(0, 0, 1), frac=0.3)
    cur = four_current(s)
    total = np.sum(cur.jvec, axis=(1, 2, 3))
    assert total[2] > 0 and abs(total[0]) < 1e-6 * total[2]
    # subluminal: |j| <= c J0 integrated
    assert np.linalg.norm(total) <= np.sum(cur.j0)


def test_continuity_second_order(grid16):
    s = packet(grid16) + packet(grid16, lam=-1, direction=(1, 0, 0))
    dt = grid16.dx / 10
    r1 = continuity_residual(s, 0.2, dt)
    r2 = continuity_residual(s, 0.2, dt / 2)
    assert r1 / r2 > 3.5
    assert r1 < 1e-2


# -- real fields -----------------------------------------------------------------------

def test_born_density():
    rho, tot = born_density(np.array([1.0, -2.0]))
    assert np.array_equal(rho, [1.0, 4.0]) and tot == 5.0
    with pytest.raises(TypeError):
        born_density(np.array([1j]))


def test_real_norm_bookkeeping(grid16):
    from maxwellqm.state import gaussian_profile
    prof = np.abs(gaussian_profile(grid16, (1.2, 1.0, 1.5), 2.5))
    s = circular_state(grid16, prof, 1)
    rep = real_norm_report(s)
    assert abs(rep.predicted - rep.xnorm) < 1e-12 * rep.xnorm
    # profile confined to one half space: factor of two between conventions
    assert abs(rep.ratio - 2) < 1e-6
    r = normalize_real(s)
    psi = real_psi(r)
    assert abs(np.sum(psi ** 2) * grid16.x_weight - 1) < 1e-12


def test_real_norm_requires_real_state(grid16):
    with pytest.raises(ValueError):
        real_norm_report(packet(grid16))
    with pytest.raises(ValueError):
        normalize_real(packet(grid16))


def test_plane_wave_overlaps(grid16):
    idx = (9, 8, 10)
    q = grid16.kvec[(slice(None),) + idx]
    w = grid16.omega[idx]
    s = plane_wave(grid16, q, 1, amp=0.5)
    ket = (2 * np.pi) ** 3 * 2 * w / grid16.dk ** 3 * 0.25
    assert np.isclose(field_product(s, s).real, ket)
    assert np.isclose(inner_product(s, s).real, 2 * w * ket)
