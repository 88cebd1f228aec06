import numpy as np
import pytest

import oracles
from numrad import (
    AlgebraElement,
    NotHermitian,
    ShapeError,
    cartesian_parts,
    herm_eig,
    is_central,
    is_hermitian,
    is_normal,
    is_unitary,
    op_norm,
    spectral_radius,
)
from numrad.algebra import eigh_batch


def test_single_block_and_direct_sum_shapes():
    x = AlgebraElement([[1, 2], [3, 4]])
    assert x.shape == (2,) and x.nblocks == 1
    y = AlgebraElement([np.eye(2), np.eye(3)])
    assert y.shape == (2, 3) and y.dim == 5
    assert y.to_dense().shape == (5, 5)


def test_rejects_non_square_and_nan():
    with pytest.raises(ShapeError):
        AlgebraElement(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        AlgebraElement([[np.nan, 0], [0, 1]])


def test_blocks_are_read_only():
    x = AlgebraElement([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        x.blocks[0][0, 0] = 5


def test_arithmetic_is_blockwise(rng):
    a, b = oracles.ginibre(rng, 2), oracles.ginibre(rng, 3)
    c, d = oracles.ginibre(rng, 2), oracles.ginibre(rng, 3)
    x, y = AlgebraElement([a, b]), AlgebraElement([c, d])
    np.testing.assert_allclose((x @ y).blocks[1], b @ d)
    np.testing.assert_allclose((x + 2j * y).blocks[0], a + 2j * c)
    np.testing.assert_allclose(x.H.blocks[1], b.conj().T)
    np.testing.assert_allclose((x ** 3).blocks[0], a @ a @ a)


def test_mismatched_shapes_raise():
    with pytest.raises(ShapeError):
        AlgebraElement(np.eye(2)) + AlgebraElement(np.eye(3))


def test_cartesian_decomposition(rng):
    x = AlgebraElement(oracles.ginibre(rng, 4))
    re, im = cartesian_parts(x)
    assert is_hermitian(re) and is_hermitian(im)
    assert (re + 1j * im).allclose(x, atol=1e-14)


def test_digest_is_stable_and_content_sensitive():
    x = AlgebraElement([[1, 2], [3, 4]])
    assert x.digest() == AlgebraElement([[1, 2], [3, 4]]).digest()
    assert x.digest() != AlgebraElement([[1, 2], [3, 5]]).digest()


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16])
def test_jacobi_matches_lapack(rng, n):
    g = oracles.ginibre(rng, n)
    h = 0.5 * (g + g.conj().T)
    d = herm_eig(h)
    np.testing.assert_allclose(d.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-12)
    v = np.column_stack(d.eigenvectors)
    assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-12
    assert d.residual < 1e-12 * max(1.0, np.abs(d.eigenvalues).max())


def test_jacobi_closed_form_2x2():
    d = herm_eig([[2, 1j], [-1j, 2]])
    np.testing.assert_allclose(d.eigenvalues, [3, 1], atol=1e-14)


def test_jacobi_degenerate_and_diagonal():
    d = herm_eig(np.eye(4))
    np.testing.assert_allclose(d.eigenvalues, 1.0)
    d = herm_eig(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(d.eigenvalues, [3, 2, -1])


def test_eig_merges_blocks_descending():
    d = herm_eig(AlgebraElement([np.diag([1.0, 5.0]), np.diag([3.0])]))
    np.testing.assert_allclose(d.eigenvalues, [5, 3, 1])
    assert list(d.block_index) == [0, 1, 0]


def test_batch_shapes(rng):
    g = np.stack([oracles.ginibre(rng, 3) for _ in range(7)])
    h = 0.5 * (g + g.conj().transpose(0, 2, 1))
    w, v = eigh_batch(h)
    assert w.shape == (7, 3) and v.shape == (7, 3, 3)
    w2, v2 = eigh_batch(h, vectors=False)
    assert v2 is None
    np.testing.assert_allclose(w, w2, atol=1e-13)


def test_not_hermitian_raises():
    with pytest.raises(NotHermitian):
        herm_eig([[0, 1], [0, 0]])


def test_op_norm_against_svd(rng):
    for n in (1, 2, 4, 7):
        a = oracles.ginibre(rng, n)
        assert op_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-12)
    x = AlgebraElement([np.diag([1.0, 2.0]), np.diag([5.0])])
    assert op_norm(x) == pytest.approx(5.0)


def test_spectral_radius_examples():
    assert spectral_radius([[0, 1], [0, 0]]) == 0.0
    assert spectral_radius(np.zeros((3, 3))) == 0.0
    assert spectral_radius([[0, 2], [0.5, 0]]) == pytest.approx(1.0, rel=1e-9)
    shift = np.diag(np.ones(4), 1)
    assert spectral_radius(shift) == pytest.approx(0.0, abs=1e-6)


def test_spectral_radius_against_eigvals(rng):
    for n in (2, 3, 5):
        for _ in range(5):
            a = oracles.ginibre(rng, n)
            assert spectral_radius(a) == pytest.approx(oracles.spectral_radius(a), rel=1e-8)


def test_normal_unitary_central_predicates():
    u = AlgebraElement.scalar_blocks([1j, -1], [2, 3])
    assert is_unitary(u) and is_central(u) and is_normal(u)
    assert not is_central(AlgebraElement(np.diag([1, 1j])))
    assert not is_unitary(AlgebraElement(2 * np.eye(2)))
    assert not is_normal(AlgebraElement([[0, 1], [0, 0]]))
