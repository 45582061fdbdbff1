"""Built-in channels addressable by name.

Names understood by :func:`builtin`:

``eps3``, ``eps4``
    Extreme UCPT maps on C^3 and C^4 of maximal Choi rank (4 and 5).
``id:d``
    Identity channel on C^d.
``depol:d``
    Completely depolarizing channel ``A -> tr(A) I / d``.
``fourier:d``, ``shift:d``
    Unitary channels of the discrete Fourier transform and the cyclic shift.
``perm:p0,p1,...``
    Unitary channel of the permutation matrix sending ``e_i`` to ``e_{p_i}``.
``rot:theta``
    Unitary channel of the real 2x2 rotation by ``theta`` radians.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import KrausSet, unitary_channel
from .matcore import InputError

_HALF = 0.5
_R2 = np.sqrt(2.0) / 2
_R3 = np.sqrt(3.0) / 2


@dataclass(frozen=True)
class NamedChannel:
    name: str
    kraus: KrausSet
    provenance: str
    documented_class: str


def _from_entries(shape, entries) -> KrausSet:
    ops = []
    for table in entries:
        e = np.zeros(shape, dtype=np.complex128)
        for (i, j), v in table.items():
            e[i, j] = v
        ops.append(e)
    return KrausSet.from_ops(ops)


def epsilon3() -> NamedChannel:
    """Extreme UCPT map on C^3 with Choi rank 4.

    Entries are real, so conjugating them to switch between the
    ``E A E^dagger`` and ``E^dagger A E`` conventions changes nothing.
    """
    kraus = _from_entries((3, 3), [
        {(0, 0): _HALF},
        {(1, 0): _HALF, (2, 1): _R2},
        {(0, 1): _R2, (1, 2): _R3},
        {(0, 2): _HALF, (2, 0): _R2},
    ])
    return NamedChannel(
        "eps3", kraus,
        "extreme unital trace-preserving map on C^3 of Choi rank 4 "
        "(Ohno's construction, written for A -> sum_k E_k A E_k^dagger)",
        "UCPT")


def epsilon4() -> NamedChannel:
    """Extreme UCPT map on C^4 with Choi rank 5."""
    kraus = _from_entries((4, 4), [
        {(1, 2): _HALF, (2, 0): _HALF},
        {(2, 3): _R2, (3, 1): _R2},
        {(0, 2): _R3, (3, 0): _R2},
        {(0, 1): _HALF, (1, 3): _R2},
        {(1, 0): _HALF, (2, 1): _HALF},
    ])
    return NamedChannel(
        "eps4", kraus,
        "extreme unital trace-preserving map on C^4 of Choi rank 5 "
        "(Ohno's construction, written for A -> sum_k E_k A E_k^dagger)",
        "UCPT")


def identity_channel(d: int) -> NamedChannel:
    _check_dim(d)
    return NamedChannel(f"id:{d}", KrausSet(np.eye(d, dtype=np.complex128)[None]),
                        "identity map", "UCPT")


def depolarizing(d: int) -> NamedChannel:
    """``A -> tr(A) I / d`` with Kraus operators ``|i><j| / sqrt(d)``."""
    _check_dim(d)
    ops = np.zeros((d * d, d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            ops[i * d + j, i, j] = 1 / np.sqrt(d)
    return NamedChannel(f"depol:{d}", KrausSet(ops), "completely depolarizing map", "UCPT")


def fourier_matrix(d: int) -> np.ndarray:
    _check_dim(d)
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def permutation_matrix(perm) -> np.ndarray:
    perm = list(perm)
    d = len(perm)
    if sorted(perm) != list(range(d)):
        raise InputError(f"not a permutation of 0..{d - 1}: {perm}")
    p = np.zeros((d, d), dtype=np.complex128)
    p[perm, np.arange(d)] = 1
    return p


def named_unitary(spec: str) -> NamedChannel:
    """Unitary channel from ``fourier:d``, ``shift:d``, ``perm:...`` or ``rot:theta``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "fourier":
            u = fourier_matrix(int(arg))
        elif kind == "shift":
            d = int(arg)
            _check_dim(d)
            u = permutation_matrix([(i + 1) % d for i in range(d)])
        elif kind == "perm":
            u = permutation_matrix(int(p) for p in arg.split(","))
        elif kind == "rot":
            t = float(arg)
            u = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
        else:
            raise InputError(f"unknown unitary kind {kind!r}")
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad unitary spec {spec!r}: {exc}") from None
    return NamedChannel(spec, unitary_channel(u), "unitary channel", "UCPT")


def _check_dim(d: int):
    if d < 1:
        raise InputError(f"dimension must be positive, got {d}")


def builtin(name: str) -> NamedChannel:
    """Resolve a catalog name such as ``eps3`` or ``depol:2``."""
    if name == "eps3":
        return epsilon3()
    if name == "eps4":
        return epsilon4()
    kind, sep, arg = name.partition(":")
    if not sep:
        raise InputError(f"unknown builtin channel {name!r}")
    if kind in ("id", "depol"):
        try:
            d = int(arg)
        except ValueError:
            raise InputError(f"bad dimension in {name!r}") from None
        return identity_channel(d) if kind == "id" else depolarizing(d)
    if kind in ("fourier", "shift", "perm", "rot"):
        return named_unitary(name)
    raise InputError(f"unknown builtin channel {name!r}")


BUILTIN_EXAMPLES = ("eps3", "eps4", "id:3", "depol:2", "fourier:3", "shift:3",
                    "perm:1,0", "rot:0.5")
