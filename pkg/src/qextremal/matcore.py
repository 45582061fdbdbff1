"""Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  Families
of operators are passed as sequences of equally shaped matrices (or as a 3-D
array whose leading axis indexes the family).  Double-indexed families are
always flattened in lexicographic order, which is also the order used by
:func:`numpy.kron`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class DimensionError(InputError):
    """Operands have incompatible shapes."""


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical cutoffs shared by every rank and identity check.

    ``rel_rank_tol`` decides which eigenvalues count toward a numerical rank:
    ``lam > rel_rank_tol * max(lam_max, 1)``.  ``abs_check_tol`` bounds the
    max-norm residual of identity / equality checks.
    """

    rel_rank_tol: float = 1e-9
    abs_check_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rel_rank_tol", "abs_check_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise InputError(f"{name} must lie in (0, 1), got {value!r}")

    def rank_cutoff(self, lam_max: float) -> float:
        return self.rel_rank_tol * max(lam_max, 1.0)


DEFAULT_TOL = TolerancePolicy()


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise InputError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(f"{name} contains NaN or Inf entries")
    return m


def as_family(family, name: str = "family") -> np.ndarray:
    """Stack a non-empty family of equally shaped matrices into a 3-D array."""
    if isinstance(family, np.ndarray) and family.ndim == 3:
        ops = family.astype(np.complex128, copy=False)
    else:
        members = list(family)
        if not members:
            raise InputError(f"{name} is empty")
        mats = [as_matrix(m, f"{name}[{i}]") for i, m in enumerate(members)]
        shape = mats[0].shape
        for i, m in enumerate(mats):
            if m.shape != shape:
                raise InputError(
                    f"{name}[{i}] has shape {m.shape}, expected {shape}")
        ops = np.stack(mats)
    if ops.shape[0] == 0:
        raise InputError(f"{name} is empty")
    if not np.all(np.isfinite(ops)):
        raise InputError(f"{name} contains NaN or Inf entries")
    return ops


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(as_matrix(a)).T.copy()


def kronecker(a, b) -> np.ndarray:
    """Kronecker product with lexicographic ``(i, j)`` row/column order."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``, antilinear in ``a``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def vectorize_family(family) -> np.ndarray:
    """Rows are the flattened members; plain dot products of rows give HS products."""
    ops = as_family(family)
    return ops.reshape(ops.shape[0], -1)


def gram_from_vectors(vectors: np.ndarray) -> np.ndarray:
    """Gram matrix ``G[i, j] = <v_i, v_j>`` of the rows of ``vectors``."""
    v = np.asarray(vectors, dtype=np.complex128)
    g = np.conj(v) @ v.T
    return 0.5 * (g + np.conj(g).T)


def gram(family) -> np.ndarray:
    """Gram matrix of a family of equally shaped operators under the HS product."""
    return gram_from_vectors(vectorize_family(family))


def hermitian_eigenvalues(g, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Real spectrum of a Hermitian matrix, in descending order.

    The input is symmetrized before diagonalization.  An input whose
    anti-Hermitian part exceeds ``abs_check_tol`` (relative to its largest
    entry, floored at 1) is rejected.
    """
    g = as_matrix(g, "Gram matrix")
    if g.shape[0] != g.shape[1]:
        raise InputError(f"Gram matrix must be square, got {g.shape}")
    scale = max(float(np.abs(g).max()), 1.0)
    skew = float(np.abs(g - np.conj(g).T).max())
    if skew > tol.abs_check_tol * scale:
        raise InputError(f"matrix is not Hermitian (skew residual {skew:.3e})")
    h = 0.5 * (g + np.conj(g).T)
    return np.linalg.eigvalsh(h)[::-1].copy()


@dataclass(frozen=True)
class RankInfo:
    """Numerical rank together with the eigenvalues on either side of the cutoff."""

    order: int
    rank: int
    cutoff: float
    smallest_kept: float | None
    largest_dropped: float | None

    @property
    def full(self) -> bool:
        return self.rank == self.order

    def ill_conditioned(self, margin: float = 1e3) -> bool:
        """True when the decisive eigenvalue sits within ``margin`` of the cutoff."""
        if self.full:
            return self.smallest_kept is not None and self.smallest_kept < margin * self.cutoff
        return self.largest_dropped is not None and self.largest_dropped > self.cutoff / margin


def rank_info(g, tol: TolerancePolicy = DEFAULT_TOL) -> RankInfo:
    lam = hermitian_eigenvalues(g, tol)
    cutoff = tol.rank_cutoff(float(lam[0]))
    kept = lam[lam > cutoff]
    dropped = lam[lam <= cutoff]
    return RankInfo(
        order=len(lam),
        rank=len(kept),
        cutoff=cutoff,
        smallest_kept=float(kept[-1]) if len(kept) else None,
        largest_dropped=float(dropped[0]) if len(dropped) else None,
    )


def numerical_rank(g, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Number of eigenvalues above ``rel_rank_tol * max(lam_max, 1)``."""
    return rank_info(g, tol).rank


def linearly_independent(family, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    ops = as_family(family)
    return numerical_rank(gram(ops), tol) == ops.shape[0]


def max_abs(a) -> float:
    return float(np.abs(np.asarray(a)).max())


def identity_residual(m: np.ndarray) -> float:
    """``max |m - I|`` for a square matrix ``m``."""
    return max_abs(m - np.eye(m.shape[0]))


def family_products(
        left: Sequence[np.ndarray], right: Sequence[np.ndarray]) -> np.ndarray:
    """All products ``left[k] @ right[l]`` flattened in lexicographic ``(k, l)`` order."""
    left = as_family(left, "left")
    right = as_family(right, "right")
    if left.shape[2] != right.shape[1]:
        raise DimensionError(f"cannot multiply {left.shape[1:]} by {right.shape[1:]}")
    prod = np.einsum("kij,ljm->klim", left, right)
    return prod.reshape(-1, left.shape[1], right.shape[2])
