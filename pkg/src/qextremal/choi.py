"""Choi-Jamiolkowski matrices in the standard basis.

The Choi matrix of ``A -> sum_k E_k A E_k^dagger`` is
``(id kron eps)(|Omega><Omega|)`` with ``Omega = sum_i e_i kron e_i``; the input
factor comes first.  Its entries are

    C[(i, a), (j, b)] = eps(|i><j|)[a, b] = sum_k E_k[a, i] conj(E_k[b, j]),

so ``C = sum_k vec(E_k) vec(E_k)^dagger`` with ``vec`` stacking columns:
``vec(E)[i * dim_out + a] = E[a, i]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import KrausSet
from .matcore import (
    DEFAULT_TOL,
    InputError,
    TolerancePolicy,
    as_matrix,
    hermitian_eigenvalues,
    numerical_rank,
)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    dim_in: int
    dim_out: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, "Choi matrix").copy()
        n = self.dim_in * self.dim_out
        if m.shape != (n, n):
            raise InputError(
                f"Choi matrix for dims ({self.dim_in}, {self.dim_out}) must be {n}x{n}, "
                f"got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def vec(e: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(e).T.reshape(-1)


def unvec(v: np.ndarray, dim_out: int, dim_in: int) -> np.ndarray:
    """Inverse of :func:`vec` for a ``dim_out x dim_in`` operator."""
    return np.asarray(v).reshape(dim_in, dim_out).T


def choi_of(k: KrausSet) -> ChoiMatrix:
    v = np.swapaxes(k.ops, 1, 2).reshape(len(k), -1)
    c = v.T @ np.conj(v)
    return ChoiMatrix(k.dim_in, k.dim_out, 0.5 * (c + np.conj(c).T))


def partial_trace_out(c: ChoiMatrix) -> np.ndarray:
    """Trace out the output factor, leaving a ``dim_in x dim_in`` matrix."""
    t = c.matrix.reshape(c.dim_in, c.dim_out, c.dim_in, c.dim_out)
    return np.einsum("iaja->ij", t)


def minimal_kraus(c: ChoiMatrix, tol: TolerancePolicy = DEFAULT_TOL) -> KrausSet:
    """Linearly independent Kraus operators read off the Choi eigenvectors.

    Eigenpairs above the shared rank cutoff give ``sqrt(lam) * unvec(v)``.  The
    operators are mutually HS-orthogonal, hence independent.
    """
    lam, vecs = np.linalg.eigh(c.matrix)
    lam_max = float(lam[-1])
    floor = -tol.rel_rank_tol * max(lam_max, 1.0)
    if lam[0] < floor:
        raise InputError(f"Choi matrix is not positive (eigenvalue {lam[0]:.3e})")
    cutoff = tol.rank_cutoff(lam_max)
    keep = np.nonzero(lam > cutoff)[0][::-1]
    if len(keep) == 0:
        raise InputError("Choi matrix is numerically zero")
    ops = [np.sqrt(lam[i]) * unvec(vecs[:, i], c.dim_out, c.dim_in) for i in keep]
    return KrausSet.from_ops(ops)


def minimize(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> KrausSet:
    return minimal_kraus(choi_of(k), tol)


def choi_spectrum(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eigenvalues(choi_of(k).matrix, tol)


def choi_rank(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Minimum number of Kraus operators, read as the numerical rank of the Choi matrix."""
    return numerical_rank(choi_of(k).matrix, tol)
