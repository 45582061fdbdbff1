import numpy as np
import pytest

from qextremal.catalog import depolarizing, epsilon3, epsilon4
from qextremal.channel import (
    KrausSet,
    is_trace_preserving,
    mix,
    random_channel,
    random_unitary,
    tensor,
    unitary_channel,
)
from qextremal.choi import (
    ChoiMatrix,
    choi_of,
    choi_rank,
    minimal_kraus,
    partial_trace_out,
    unvec,
    vec,
)
from qextremal.matcore import InputError, gram, numerical_rank


def choi_by_definition(ops, d_in, d_out):
    """(id kron eps)(|Omega><Omega|) = sum_ij |i><j| kron eps(|i><j|)."""
    c = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for i in range(d_in):
        for j in range(d_in):
            eij = np.zeros((d_in, d_in))
            eij[i, j] = 1
            out = sum(e @ eij @ e.conj().T for e in ops)
            c += np.kron(eij, out)
    return c


def omega_projector(d):
    omega = np.eye(d).reshape(-1)
    return np.outer(omega, omega)


def test_vec_is_column_stacking():
    e = np.array([[1, 2, 3], [4, 5, 6]])
    assert np.array_equal(vec(e), [1, 4, 2, 5, 3, 6])
    assert np.array_equal(unvec(vec(e), 2, 3), e)


@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 3, 3), (3, 2, 2)])
def test_choi_matches_definition(shape):
    k = random_channel(*shape, seed=4)
    c = choi_of(k)
    assert np.abs(c.matrix - choi_by_definition(k.ops, k.dim_in, k.dim_out)).max() <= 1e-12


def test_choi_of_identity_is_omega_projector():
    for d in (2, 3):
        c = choi_of(KrausSet(np.eye(d)[None]))
        assert np.allclose(c.matrix, omega_projector(d))
        assert numerical_rank(c.matrix) == 1
        assert np.isclose(np.trace(c.matrix), d)


def test_choi_of_depolarizing():
    c = choi_of(depolarizing(2).kraus)
    assert np.allclose(c.matrix, choi_by_definition(depolarizing(2).kraus.ops, 2, 2))
    assert np.allclose(c.matrix, np.eye(4) / 2)
    assert numerical_rank(c.matrix) == 4


def test_choi_of_eps3():
    c = choi_of(epsilon3().kraus)
    assert c.matrix.shape == (9, 9)
    assert np.allclose(c.matrix, c.matrix.conj().T)
    lam = np.linalg.eigvalsh(c.matrix)
    assert lam.min() >= -1e-12
    assert numerical_rank(c.matrix) == 4
    assert np.isclose(np.trace(c.matrix), 3)


def test_partial_trace_out_examples():
    assert np.allclose(partial_trace_out(choi_of(KrausSet(np.eye(3)[None]))), np.eye(3))
    assert np.allclose(partial_trace_out(choi_of(epsilon4().kraus)), np.eye(4), atol=1e-15)
    half = partial_trace_out(choi_of(KrausSet((np.eye(2) / 2)[None])))
    assert np.allclose(half, np.eye(2) / 4)


@pytest.mark.parametrize("seed", range(10))
def test_partial_trace_is_identity_for_tp(seed):
    k = random_channel(3, 2, 3, seed)
    assert is_trace_preserving(k)[0]
    assert np.abs(partial_trace_out(choi_of(k)) - np.eye(3)).max() <= 1e-10


def test_minimal_kraus_of_identity():
    m = minimal_kraus(ChoiMatrix(2, 2, omega_projector(2)))
    assert len(m) == 1
    e = m.ops[0]
    phase = e[0, 0] / abs(e[0, 0])
    assert np.allclose(e / phase, np.eye(2))


def test_minimal_kraus_of_eps3_spans_same_subspace():
    k = epsilon3().kraus
    m = minimal_kraus(choi_of(k))
    assert len(m) == 4
    assert numerical_rank(gram(m.ops)) == 4
    joint = np.concatenate([k.ops, m.ops])
    assert numerical_rank(gram(joint)) == 4


def test_minimal_kraus_removes_redundancy():
    u = unitary_channel(random_unitary(3, 8))
    m = minimal_kraus(choi_of(mix([u, u], [0.5, 0.5])))
    assert len(m) == 1
    assert np.allclose(choi_of(m).matrix, choi_of(u).matrix)


def test_minimal_kraus_rejects_non_positive():
    bad = ChoiMatrix(1, 2, np.diag([1.0, -1.0]))
    with pytest.raises(InputError):
        minimal_kraus(bad)


@pytest.mark.parametrize("seed", range(10))
def test_minimal_kraus_round_trip(seed):
    k = random_channel(2, 3, 4, seed)
    redundant = KrausSet(np.concatenate([k.ops / np.sqrt(2), k.ops / np.sqrt(2)]))
    m = minimal_kraus(choi_of(redundant))
    assert len(m) == 4
    assert np.abs(choi_of(m).matrix - choi_of(k).matrix).max() <= 1e-8


def test_choi_rank_examples():
    assert choi_rank(unitary_channel(random_unitary(4, 0))) == 1
    assert choi_rank(epsilon3().kraus) == 4
    assert choi_rank(epsilon4().kraus) == 5
    assert choi_rank(tensor(epsilon3().kraus, epsilon4().kraus)) == 20


@pytest.mark.parametrize("seed", range(5))
def test_choi_rank_multiplicative(seed):
    k1 = random_channel(2, 2, 1 + seed % 4, seed)
    k2 = random_channel(3, 2, 2 + seed % 3, seed + 100)
    assert choi_rank(tensor(k1, k2)) == choi_rank(k1) * choi_rank(k2)


@pytest.mark.parametrize("seed", range(5))
def test_choi_is_linear_in_mixtures(seed):
    rng = np.random.default_rng(seed)
    ks = [random_channel(2, 2, r, seed + r) for r in (1, 2, 3)]
    p = rng.dirichlet(np.ones(3))
    lhs = choi_of(mix(ks, p)).matrix
    rhs = sum(pi * choi_of(k).matrix for pi, k in zip(p, ks))
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_choi_matrix_shape_check():
    with pytest.raises(InputError):
        ChoiMatrix(2, 2, np.eye(3))
