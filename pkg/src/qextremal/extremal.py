"""Extreme-point tests for the convex sets CPT, UCP and UCPT.

Every test first reduces the Kraus set to linearly independent operators and
then decides linear independence of a derived operator family through the
numerical rank of its Gram matrix:

* CPT  -- the products ``E_k^dagger E_l``,
* UCP  -- the products ``E_k E_l^dagger``,
* UCPT -- the pairs ``E_k^dagger E_l (+) E_l E_k^dagger``, stored as stacked
  ``2 d^2`` vectors so the inner product is the sum of the two HS products.

A UCPT map with ``r`` independent Kraus operators yields ``r^2`` such pairs in a
``2 d^2`` dimensional space, so ``r^2 > 2 d^2`` settles non-extremality without
building any Gram matrix.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelClass, KrausSet, classify, tensor
from .choi import choi_of, choi_rank, minimal_kraus
from .matcore import (
    DEFAULT_TOL,
    DimensionError,
    InputError,
    RankInfo,
    TolerancePolicy,
    family_products,
    gram_from_vectors,
    numerical_rank,
    rank_info,
)

ILL_CONDITIONED_MARGIN = 1e3


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_APPLICABLE = "not-applicable"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE


@dataclass(frozen=True)
class GramTest:
    """Outcome of one extremality test.

    ``decided_by`` is ``"gram"``, ``"rank-bound"`` or ``"class"`` (the channel is
    outside the convex set, so the question does not apply).
    """

    verdict: Verdict
    decided_by: str
    gram_order: int | None = None
    rank: RankInfo | None = None

    @property
    def extreme(self) -> bool | None:
        if self.verdict is Verdict.NOT_APPLICABLE:
            return None
        return self.verdict is Verdict.TRUE

    @property
    def gram_rank(self) -> int | None:
        return None if self.rank is None else self.rank.rank

    @property
    def ill_conditioned(self) -> bool:
        return self.rank is not None and self.rank.ill_conditioned(ILL_CONDITIONED_MARGIN)


def _not_applicable() -> GramTest:
    return GramTest(Verdict.NOT_APPLICABLE, "class")


def _require_independent(k: KrausSet, tol: TolerancePolicy):
    g = gram_from_vectors(k.ops.reshape(len(k), -1))
    if numerical_rank(g, tol) != len(k):
        raise InputError(
            "Kraus operators are linearly dependent; minimize them first "
            "(qextremal.choi.minimal_kraus)")


def _gram_test(vectors: np.ndarray, tol: TolerancePolicy) -> GramTest:
    info = rank_info(gram_from_vectors(vectors), tol)
    return GramTest(Verdict.of(info.full), "gram", gram_order=info.order, rank=info)


def cpt_criterion_family(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """The ``r^2`` products ``E_k^dagger E_l`` in lexicographic ``(k, l)`` order."""
    _require_independent(k, tol)
    return family_products(np.conj(np.swapaxes(k.ops, 1, 2)), k.ops)


def ucp_criterion_family(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """The ``r^2`` products ``E_k E_l^dagger`` in lexicographic ``(k, l)`` order."""
    _require_independent(k, tol)
    return family_products(k.ops, np.conj(np.swapaxes(k.ops, 1, 2)))


def ucpt_criterion_family(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Rows ``vec(E_k^dagger E_l)`` stacked over ``vec(E_l E_k^dagger)``, index ``(k, l)``.

    Returns an array of shape ``(r^2, 2 d^2)``.
    """
    if k.dim_in != k.dim_out:
        raise DimensionError(
            f"UCPT criterion needs dim_in == dim_out, got {k.dim_in} and {k.dim_out}")
    _require_independent(k, tol)
    r, d = len(k), k.dim_in
    adj = np.conj(np.swapaxes(k.ops, 1, 2))
    first = np.einsum("kij,ljm->klim", adj, k.ops).reshape(r * r, d * d)
    # second block at index (k, l) is E_l E_k^dagger
    second = np.einsum("lij,kjm->klim", k.ops, adj).reshape(r * r, d * d)
    return np.concatenate([first, second], axis=1)


def cpt_gram(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    fam = cpt_criterion_family(k, tol)
    return gram_from_vectors(fam.reshape(fam.shape[0], -1))


def ucpt_gram(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    return gram_from_vectors(ucpt_criterion_family(k, tol))


def is_extreme_cpt(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL, *,
                   minimal: KrausSet | None = None) -> GramTest:
    if not classify(k, tol).tp:
        return _not_applicable()
    m = minimal if minimal is not None else minimal_kraus(choi_of(k), tol)
    fam = cpt_criterion_family(m, tol)
    return _gram_test(fam.reshape(fam.shape[0], -1), tol)


def is_extreme_ucp(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL, *,
                   minimal: KrausSet | None = None) -> GramTest:
    if not classify(k, tol).unital:
        return _not_applicable()
    m = minimal if minimal is not None else minimal_kraus(choi_of(k), tol)
    fam = ucp_criterion_family(m, tol)
    return _gram_test(fam.reshape(fam.shape[0], -1), tol)


def exceeds_ucpt_rank_bound(choi_rank: int, d: int) -> bool:
    """``choi_rank > sqrt(2) d``, in exact integer arithmetic.

    ``r^2 == 2 d^2`` has no integer solutions, so this is also the test
    ``choi_rank > sqrt(2 d^2 - 1)``.
    """
    return choi_rank * choi_rank > 2 * d * d


def is_extreme_ucpt(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL, *,
                    minimal: KrausSet | None = None,
                    use_rank_bound: bool = True) -> GramTest:
    """Extremality in UCPT; ``use_rank_bound=False`` forces the full Gram test."""
    if not classify(k, tol).ucpt:
        return _not_applicable()
    m = minimal if minimal is not None else minimal_kraus(choi_of(k), tol)
    r, d = len(m), m.dim_in
    if use_rank_bound and exceeds_ucpt_rank_bound(r, d):
        return GramTest(Verdict.FALSE, "rank-bound", gram_order=r * r)
    return _gram_test(ucpt_criterion_family(m, tol), tol)


def ucpt_rank_bound(d: int) -> float:
    """Largest Choi rank an extreme UCPT map on ``C^d`` can have: ``sqrt(2 d^2 - 1)``."""
    if d < 1:
        raise InputError("dimension must be positive")
    return math.sqrt(2 * d * d - 1)


def ucpt_rank_bound_coarse(d: int) -> float:
    """The counting bound ``sqrt(2) d``."""
    if d < 1:
        raise InputError("dimension must be positive")
    return math.sqrt(2) * d


def _rank_beats_quartic_root(choi_rank: int, d: int) -> bool:
    # choi_rank > 2**(1/4) * d  <=>  choi_rank**4 > 2 * d**4
    return choi_rank ** 4 > 2 * d ** 4


def tensor_nonextremality_check(k1: KrausSet, k2: KrausSet,
                                tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True when both Choi ranks exceed ``2**(1/4)`` times their dimension.

    Then the tensor product's Choi rank exceeds ``sqrt(2) dim`` and the product
    cannot be extreme in UCPT.  False means no conclusion.
    """
    if not (classify(k1, tol).ucpt and classify(k2, tol).ucpt):
        return False
    return (_rank_beats_quartic_root(choi_rank(k1, tol), k1.dim_in)
            and _rank_beats_quartic_root(choi_rank(k2, tol), k2.dim_in))


@dataclass(frozen=True)
class ExtremalityReport:
    dim_in: int
    dim_out: int
    channel_class: ChannelClass
    choi_rank: int
    cpt: GramTest
    ucp: GramTest
    ucpt: GramTest
    ucpt_rank_bound: float | None
    bound_violated: bool
    tol: TolerancePolicy = field(default=DEFAULT_TOL)

    @property
    def extreme_cpt(self) -> Verdict:
        return self.cpt.verdict

    @property
    def extreme_ucp(self) -> Verdict:
        return self.ucp.verdict

    @property
    def extreme_ucpt(self) -> Verdict:
        return self.ucpt.verdict

    @property
    def ill_conditioned(self) -> bool:
        return any(t.ill_conditioned for t in (self.cpt, self.ucp, self.ucpt))

    def to_dict(self) -> dict:
        c = self.channel_class
        return {
            "dim_in": self.dim_in,
            "dim_out": self.dim_out,
            "class": {
                "name": c.name,
                "cp": c.cp,
                "tp": c.tp,
                "unital": c.unital,
                "ucpt": c.ucpt,
                "tp_residual": _num(c.tp_residual),
                "unital_residual": _num(c.unital_residual),
            },
            "choi_rank": self.choi_rank,
            "extreme_cpt": self.cpt.verdict.value,
            "extreme_ucp": self.ucp.verdict.value,
            "extreme_ucpt": self.ucpt.verdict.value,
            "gram_order": self.ucpt.gram_order,
            "gram_rank": self.ucpt.gram_rank,
            "smallest_kept_eigenvalue": _num(_kept(self.ucpt)),
            "largest_dropped_eigenvalue": _num(_dropped(self.ucpt)),
            "ucpt_rank_bound": _num(self.ucpt_rank_bound),
            "bound_violated": self.bound_violated,
            "ill_conditioned": self.ill_conditioned,
            "tests": {name: _test_dict(t) for name, t in
                      (("cpt", self.cpt), ("ucp", self.ucp), ("ucpt", self.ucpt))},
        }


def _num(x):
    # fixed significant digits keep reports byte-stable
    return None if x is None else float(f"{x:.12g}")


def _kept(t: GramTest):
    return None if t.rank is None else t.rank.smallest_kept


def _dropped(t: GramTest):
    return None if t.rank is None else t.rank.largest_dropped


def _test_dict(t: GramTest) -> dict:
    return {
        "verdict": t.verdict.value,
        "decided_by": t.decided_by,
        "gram_order": t.gram_order,
        "gram_rank": t.gram_rank,
        "cutoff": _num(None if t.rank is None else t.rank.cutoff),
        "smallest_kept_eigenvalue": _num(_kept(t)),
        "largest_dropped_eigenvalue": _num(_dropped(t)),
        "ill_conditioned": t.ill_conditioned,
    }


def analyze(k: KrausSet, tol: TolerancePolicy = DEFAULT_TOL) -> ExtremalityReport:
    """Classify ``k`` and run every applicable extremality test."""
    if not isinstance(k, KrausSet):
        raise InputError(f"expected a KrausSet, got {type(k).__name__}")
    cls = classify(k, tol)
    m = minimal_kraus(choi_of(k), tol)
    r = len(m)
    square = k.dim_in == k.dim_out
    bound = ucpt_rank_bound(k.dim_in) if square else None
    return ExtremalityReport(
        dim_in=k.dim_in,
        dim_out=k.dim_out,
        channel_class=cls,
        choi_rank=r,
        cpt=is_extreme_cpt(k, tol, minimal=m),
        ucp=is_extreme_ucp(k, tol, minimal=m),
        ucpt=is_extreme_ucpt(k, tol, minimal=m),
        ucpt_rank_bound=bound,
        bound_violated=square and exceeds_ucpt_rank_bound(r, k.dim_in),
        tol=tol,
    )


def tensor_report(k1: KrausSet, k2: KrausSet, tol: TolerancePolicy = DEFAULT_TOL):
    """Reports for both factors and their tensor product."""
    return analyze(k1, tol), analyze(k2, tol), analyze(tensor(k1, k2), tol)
