import numpy as np
import pytest

import oracles
from numrad import (
    AlgebraElement,
    DimensionMismatch,
    StateWitness,
    crawford,
    numerical_radius,
    numerical_radius_im,
    radius_alpha_beta,
    range_boundary,
    state_eval,
)
from numrad.numrange import maximize_periodic

SWEEPS = [numerical_radius, numerical_radius_im, radius_alpha_beta]


@pytest.mark.parametrize("sweep", SWEEPS)
def test_closed_form_radii(sweep, N, I2):
    assert sweep(N).value == pytest.approx(0.5, abs=1e-12)
    assert sweep(I2).value == pytest.approx(1.0, abs=1e-12)
    assert sweep(np.diag([1, 1j])).value == pytest.approx(1.0, abs=1e-12)
    assert sweep(np.zeros((2, 2))).value == 0.0


def test_radius_of_hermitian_and_normal(rng):
    g = oracles.ginibre(rng, 4)
    h = 0.5 * (g + g.conj().T)
    assert numerical_radius(h).value == pytest.approx(np.abs(np.linalg.eigvalsh(h)).max(),
                                                      rel=1e-12)
    q, _ = np.linalg.qr(oracles.ginibre(rng, 4))
    d = oracles.ginibre(rng, 4).diagonal()
    x = (q * d) @ q.conj().T
    assert numerical_radius(x).value == pytest.approx(np.abs(d).max(), rel=1e-10)


def test_radius_of_shift_3x3():
    # v of the 3x3 shift is cos(pi/4)
    s = np.diag([1.0, 1.0], 1)
    assert numerical_radius(s).value == pytest.approx(np.cos(np.pi / 4), abs=1e-11)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_three_sweeps_agree_with_oracle(rng, n):
    for _ in range(4):
        x = oracles.ginibre(rng, n)
        ref = oracles.radius(x)
        for sweep in SWEEPS:
            assert sweep(x).value == pytest.approx(ref, abs=1e-10)


def test_sweep_never_below_brute_force(rng):
    for n in (2, 3):
        x = oracles.ginibre(rng, n)
        assert numerical_radius(x).value >= oracles.brute_radius(x, rng, 20_000) - 1e-12


def test_witness_attains_radius(rng):
    x = AlgebraElement([oracles.ginibre(rng, 3), oracles.ginibre(rng, 2)])
    res = numerical_radius(x)
    assert abs(state_eval(x, res.witness)) == pytest.approx(res.value, abs=1e-10)
    assert res.value == pytest.approx(oracles.radius(x), abs=1e-10)


def test_direct_sum_radius_is_max_over_blocks(rng):
    a, b = oracles.ginibre(rng, 2), 3 * oracles.ginibre(rng, 3)
    v = numerical_radius(AlgebraElement([a, b])).value
    assert v == pytest.approx(max(oracles.radius(a), oracles.radius(b)), abs=1e-10)


def test_grid_too_small():
    with pytest.raises(ValueError):
        numerical_radius(np.eye(2), grid=16)


def test_state_witness_normalizes_and_checks_dims():
    w = StateWitness(np.array([3.0, 4.0]))
    assert np.linalg.norm(w.vector) == pytest.approx(1.0)
    with pytest.raises(DimensionMismatch):
        state_eval(np.eye(3), w)
    with pytest.raises(DimensionMismatch):
        state_eval(AlgebraElement([np.eye(2)]), StateWitness([1, 0], block=1))
    with pytest.raises(ValueError):
        StateWitness(np.zeros(2))


def test_range_boundary_points_lie_in_range_and_on_support_lines(rng):
    x = oracles.ginibre(rng, 3)
    rs = range_boundary(x, 128)
    assert len(rs) == 128
    for i in range(0, 128, 16):
        w = rs.witness(i)
        assert state_eval(x, w) == pytest.approx(rs.points[i], abs=1e-12)
        t = rs.thetas[i]
        support = np.linalg.eigvalsh(0.5 * (np.exp(1j * t) * x + np.exp(-1j * t) * x.conj().T))[-1]
        assert (np.exp(1j * t) * rs.points[i]).real == pytest.approx(support, abs=1e-11)


def test_range_of_normal_is_polygon_of_eigenvalues():
    x = np.diag([1.0, 1j, -1 - 1j])
    pts = range_boundary(x, 256).points
    for p in pts:
        assert min(abs(p - e) for e in (1.0, 1j, -1 - 1j)) < 1e-12


def test_crawford_examples(N, I2):
    assert crawford(np.diag([1.0, 2.0])) == pytest.approx(1.0, abs=1e-12)
    assert crawford(N) == pytest.approx(0.0, abs=1e-12)
    assert crawford(I2) == pytest.approx(1.0, abs=1e-12)
    assert crawford(np.zeros((2, 2))) == 0.0
    assert crawford(np.diag([0.0, 1.0])) == pytest.approx(0.0, abs=1e-12)
    # segment from 1+1j to 1-1j: distance 1
    assert crawford(np.diag([1 + 1j, 1 - 1j])) == pytest.approx(1.0, abs=1e-9)


def test_crawford_against_support_oracle(rng):
    for n in (2, 3, 4):
        for _ in range(3):
            x = oracles.ginibre(rng, n) + 2.5 * np.exp(1j * rng.uniform(0, 6.28)) * np.eye(n)
            assert crawford(x) == pytest.approx(oracles.crawford(x), abs=1e-8)


def test_crawford_of_direct_sum_uses_hull_of_union():
    # V((1, -1)) is the segment [-1, 1], which contains 0
    assert crawford(AlgebraElement([np.eye(1), -np.eye(1)])) == 0.0


def test_maximize_periodic_tie_goes_to_smallest_angle():
    val, t, _ = maximize_periodic(lambda th: np.ones_like(th), 64)
    assert val == 1.0 and t == 0.0
    val, t, _ = maximize_periodic(lambda th: np.cos(th - 1.0), 64)
    assert val == pytest.approx(1.0, abs=1e-15) and t == pytest.approx(1.0, abs=1e-6)
