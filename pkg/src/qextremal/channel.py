"""Completely positive maps in Kraus form.

A :class:`KrausSet` represents ``A -> sum_k E_k A E_k^dagger``.  Kraus sets are
stored as given; redundant operators are only removed by
:func:`qextremal.choi.minimal_kraus`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    DimensionError,
    InputError,
    TolerancePolicy,
    as_family,
    as_matrix,
    identity_residual,
)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Kraus operators ``ops[k]`` of shape ``(dim_out, dim_in)``."""

    ops: np.ndarray

    def __post_init__(self):
        ops = as_family(self.ops, "Kraus operators").copy()
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_ops(cls, ops: Sequence) -> "KrausSet":
        return cls(as_family(ops, "Kraus operators"))

    @property
    def dim_in(self) -> int:
        return self.ops.shape[2]

    @property
    def dim_out(self) -> int:
        return self.ops.shape[1]

    def __len__(self) -> int:
        return self.ops.shape[0]

    def __iter__(self):
        return iter(self.ops)

    def __repr__(self) -> str:
        return f"KrausSet(n={len(self)}, dim_in={self.dim_in}, dim_out={self.dim_out})"


@dataclass(frozen=True)
class ChannelClass:
    """Class membership flags with the residuals that decided them."""

    tp: bool
    unital: bool
    tp_residual: float
    unital_residual: float
    square: bool
    cp: bool = True

    @property
    def ucpt(self) -> bool:
        return self.tp and self.unital and self.square

    @property
    def name(self) -> str:
        if self.ucpt:
            return "UCPT"
        if self.tp:
            return "CPT"
        if self.unital:
            return "UCP"
        return "CP"


def apply(k: KrausSet, a) -> np.ndarray:
    """Evaluate the map on a ``dim_in x dim_in`` operator."""
    a = as_matrix(a)
    if a.shape != (k.dim_in, k.dim_in):
        raise DimensionError(
            f"operator of shape {a.shape} does not match dim_in={k.dim_in}")
    return np.einsum("kij,jl,kml->im", k.ops, a, np.conj(k.ops))


def tp_residual(k: KrausSet) -> float:
    s = np.einsum("kji,kjl->il", np.conj(k.ops), k.ops)
    return identity_residual(s)


def unital_residual(k: KrausSet) -> float:
    s = np.einsum("kij,klj->il", k.ops, np.conj(k.ops))
    return identity_residual(s)


def is_trace_preserving(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[bool, float]:
    """``sum_k E_k^dagger E_k == I`` within ``abs_check_tol``; returns ``(flag, residual)``."""
    r = tp_residual(k)
    return r <= tol.abs_check_tol, r


def is_unital(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[bool, float]:
    """``sum_k E_k E_k^dagger == I`` within ``abs_check_tol``; returns ``(flag, residual)``."""
    r = unital_residual(k)
    return r <= tol.abs_check_tol, r


def classify(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> ChannelClass:
    tp, r_tp = is_trace_preserving(k, tol)
    un, r_un = is_unital(k, tol)
    return ChannelClass(tp=tp, unital=un, tp_residual=r_tp, unital_residual=r_un,
                        square=k.dim_in == k.dim_out)


def dual(k: KrausSet) -> KrausSet:
    """Kraus set ``(E_k^dagger)_k`` of the Hilbert-Schmidt adjoint map."""
    return KrausSet(np.conj(np.swapaxes(k.ops, 1, 2)))


def tensor(k1: KrausSet, k2: KrausSet) -> KrausSet:
    """Kraus set ``(E_k kron F_l)_{k,l}`` in lexicographic order."""
    r1, r2 = len(k1), len(k2)
    prod = np.einsum("aij,bkl->abikjl", k1.ops, k2.ops)
    return KrausSet(prod.reshape(r1 * r2, k1.dim_out * k2.dim_out, k1.dim_in * k2.dim_in))


def mix(channels: Sequence[KrausSet], weights: Sequence[float]) -> KrausSet:
    """Convex mixture; Kraus operators ``sqrt(p_i) E_{i,k}`` concatenated in order."""
    channels = list(channels)
    w = np.asarray(weights, dtype=float)
    if not channels or w.shape != (len(channels),):
        raise InputError("need one weight per channel and at least one channel")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InputError("weights must be finite and non-negative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise InputError(f"weights sum to {w.sum()!r}, not 1")
    dims = {(c.dim_out, c.dim_in) for c in channels}
    if len(dims) != 1:
        raise DimensionError(f"channels have differing dimensions {sorted(dims)}")
    ops = np.concatenate([np.sqrt(p) * c.ops for p, c in zip(w, channels)])
    return KrausSet(ops)


def unitary_channel(u, tol: TolerancePolicy = DEFAULT_TOL) -> KrausSet:
    u = as_matrix(u, "unitary")
    if u.shape[0] != u.shape[1]:
        raise InputError(f"unitary must be square, got {u.shape}")
    r = identity_residual(np.conj(u).T @ u)
    if r > tol.abs_check_tol:
        raise InputError(f"matrix is not unitary (residual {r:.3e})")
    return KrausSet(u[None])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    # phase-corrected QR gives Haar-distributed columns
    q, r = np.linalg.qr(_ginibre(rng, (rows, cols)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-random ``d x d`` unitary, deterministic in ``seed``."""
    if d < 1:
        raise InputError("dimension must be positive")
    return _isometry(_rng(seed), d, d)


def random_channel(dim_in: int, dim_out: int, kraus_rank: int, seed: int) -> KrausSet:
    """Random trace-preserving channel with ``kraus_rank`` Kraus operators.

    A Haar isometry ``V`` of shape ``(kraus_rank * dim_out, dim_in)`` is sliced
    into ``kraus_rank`` blocks, so ``sum_k E_k^dagger E_k = V^dagger V = I``.
    """
    if dim_in < 1 or dim_out < 1:
        raise InputError("dimensions must be positive")
    if not 1 <= kraus_rank <= dim_in * dim_out:
        raise InputError(
            f"kraus_rank must lie in [1, {dim_in * dim_out}], got {kraus_rank}")
    if kraus_rank * dim_out < dim_in:
        raise InputError(
            f"no isometry from C^{dim_in} into C^{kraus_rank * dim_out}; "
            "a TP channel needs kraus_rank * dim_out >= dim_in")
    v = _isometry(_rng(seed), kraus_rank * dim_out, dim_in)
    return KrausSet(v.reshape(kraus_rank, dim_out, dim_in))


def random_unitary_mixture(d: int, n: int, seed: int, weights=None) -> KrausSet:
    """Mixture of ``n`` Haar unitary channels; always UCPT.

    Weights default to a flat Dirichlet draw.  Not every UCPT map has this form.
    """
    rng = _rng(seed)
    if n < 1:
        raise InputError("need at least one unitary")
    if weights is None:
        weights = rng.dirichlet(np.ones(n))
    us = [_isometry(rng, d, d) for _ in range(n)]
    return mix([KrausSet(u[None]) for u in us], weights)
