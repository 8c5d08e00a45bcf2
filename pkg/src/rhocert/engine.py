"""Evaluation of rho functions and exact certification of the two inequalities.

For an ``a``-module ``V`` with restricted weights ``lambda`` of multiplicity
``m``, ``rho_V(Y) = 1/2 sum m |lambda(Y)|``.  Since ``g = h + q`` as
``a``-modules, ``rho_g <= 2 rho_q`` is the same inequality as
``f = rho_g - 2 rho_h >= 0``.  ``f`` is linear on every chamber of the
arrangement of the weights of ``g``, so its sign is decided on the test rays
of that arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .errors import InvalidInput
from .geometry import (
    DEFAULT_CAP,
    IntVector,
    RationalVector,
    RaySet,
    as_rational_vector,
    enumerate_test_rays,
)
from .weights import RestrictedPairData, WeightMultiset

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class RhoFunction:
    """``Y -> 1/2 sum m_lambda |lambda(Y)|`` for a weight multiset."""

    weights: WeightMultiset

    def __call__(self, y: Sequence) -> Fraction:
        return rho_eval(self, y)


def rho_eval(f: RhoFunction | WeightMultiset, y: Sequence) -> Fraction:
    """Exact value of ``rho`` at ``y`` (ints, Fractions or ``"num/den"`` strings)."""
    weights = f.weights if isinstance(f, RhoFunction) else f
    y = as_rational_vector(y)
    if len(y) != weights.dim:
        raise InvalidInput(f"point has length {len(y)}, expected {weights.dim}")
    total = sum((m * abs(lf(y)) for lf, m in weights.items), Fraction(0))
    return Fraction(total) / 2


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one global inequality check.

    A failing verdict carries ``witness``; ``witness_kind`` says whether it is
    a test ray or a vector of the lineality space.  A holding verdict exposes
    ``certificate``: every test ray with the exact values of ``rho_g`` and
    ``rho_q`` there.
    """

    criterion: str
    status: Status
    dim_a: int
    witness: RationalVector | None = None
    witness_kind: str | None = None
    lines: tuple[IntVector, ...] = field(default=(), repr=False)
    rho_g2: tuple[int, ...] = field(default=(), repr=False)
    rho_q2: tuple[int, ...] = field(default=(), repr=False)
    lineality_dim: int = 0
    scale: int = field(default=1, repr=False)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def ray_count(self) -> int:
        return 2 * len(self.lines)

    @cached_property
    def certificate(self) -> tuple[tuple[IntVector, Fraction, Fraction], ...] | None:
        if not self.holds:
            return None
        out = []
        for v, g2, q2 in zip(self.lines, self.rho_g2, self.rho_q2):
            g, q = Fraction(g2, 2 * self.scale), Fraction(q2, 2 * self.scale)
            out.append((v, g, q))
            out.append((tuple(-x for x in v), g, q))
        return tuple(out)

    def equality_everywhere(self) -> bool:
        """True if ``rho_g == 2 rho_q`` on every test ray."""
        return all(g2 == 2 * q2 for g2, q2 in zip(self.rho_g2, self.rho_q2))


def _integral_weights(weights: WeightMultiset) -> tuple[list[IntVector], int]:
    """Weights scaled by the lcm ``L`` of their denominators, and ``L``."""
    scale = 1
    for lf in weights.normals:
        for x in lf.coeffs:
            scale = lcm(scale, Fraction(x).denominator)
    rows = [tuple(int(Fraction(x) * scale) for x in lf.coeffs) for lf in weights.normals]
    return rows, scale


def _abs_pairings(
    rays: RaySet, rows: Sequence[IntVector], dim: int, mults: Sequence[Sequence[int]]
) -> list[np.ndarray]:
    """``sum_lambda m |lambda(r)|`` for each ray ``r`` and each multiplicity vector."""
    R = rays.matrix
    if not len(rows) or not len(R):
        return [np.zeros(len(R), dtype=np.int64) for _ in mults]
    big_r = max(abs(x) for v in rays.lines for x in v)
    big_w = max(abs(x) for v in rows for x in v)
    big_m = max(sum(abs(x) for x in m) for m in mults)
    bound = big_r * big_w * dim * max(big_m, 1) * 4
    dtype = np.int64 if bound < _INT64_SAFE else object
    A = np.abs(R.astype(dtype) @ np.array(rows, dtype=dtype).T)
    return [A @ np.array(m, dtype=dtype) for m in mults]


def _multiplicity_vectors(data: RestrictedPairData) -> tuple[list[int], list[int], list[int]]:
    h = data.h_weights.as_dict()
    q = data.q_weights.as_dict()
    mg = [m for _, m in data.g_weights.items]
    mh = [h.get(lf, 0) for lf in data.g_weights.normals]
    mq = [q.get(lf, 0) for lf in data.g_weights.normals]
    return mg, mh, mq


def _evaluate(data: RestrictedPairData, cap: int):
    # several weights may share a hyperplane (t and 2t); rays only see hyperplanes
    rays = enumerate_test_rays(data.g_weights.normals, data.dim_a, cap)
    rows, scale = _integral_weights(data.g_weights)
    mg, mh, mq = _multiplicity_vectors(data)
    g2, h2, q2 = _abs_pairings(rays, rows, data.dim_a, [mg, mh, mq])
    f2 = g2 - 2 * h2
    return rays, scale, [int(x) for x in g2], [int(x) for x in q2], [int(x) for x in f2]


def _verify_witness(data: RestrictedPairData, y: Sequence, strict: bool) -> None:
    g = rho_eval(data.g_weights, y)
    q = rho_eval(data.q_weights, y)
    bad = g >= 2 * q if strict else g > 2 * q
    if not bad or not any(y):
        raise RuntimeError(f"witness {tuple(y)} does not re-verify: rho_g={g}, rho_q={q}")


def decide_tempered(data: RestrictedPairData, cap: int = DEFAULT_CAP) -> CriterionVerdict:
    """Decide ``rho_g(Y) <= 2 rho_q(Y)`` for every ``Y`` in ``a``.

    Raises:
        ResourceLimit: propagated from the ray enumeration.
    """
    if data.dim_a == 0:
        return CriterionVerdict("tempered", Status.HOLDS, 0)
    rays, scale, g2, q2, f2 = _evaluate(data, cap)
    for v, f in zip(rays.lines, f2):
        if f < 0:
            _verify_witness(data, v, strict=False)
            return CriterionVerdict(
                "tempered", Status.FAILS, data.dim_a, as_rational_vector(v), "ray",
                rays.lines, tuple(g2), tuple(q2), rays.lineality_dim, scale,
            )
    return CriterionVerdict(
        "tempered", Status.HOLDS, data.dim_a, None, None,
        rays.lines, tuple(g2), tuple(q2), rays.lineality_dim, scale,
    )


def decide_strict(data: RestrictedPairData, cap: int = DEFAULT_CAP) -> CriterionVerdict:
    """Decide ``rho_g(Y) < 2 rho_q(Y)`` for every nonzero ``Y`` in ``a``.

    If every weight of ``g`` vanishes on a nonzero subspace, both sides are
    zero there and the verdict fails with a vector of that subspace.
    """
    if data.dim_a == 0:
        return CriterionVerdict("strict", Status.HOLDS, 0)
    rays, scale, g2, q2, f2 = _evaluate(data, cap)
    if rays.lineality_dim:
        w = rays.lineality_witness
        _verify_witness(data, w, strict=True)
        return CriterionVerdict(
            "strict", Status.FAILS, data.dim_a, as_rational_vector(w), "lineality",
            rays.lines, tuple(g2), tuple(q2), rays.lineality_dim, scale,
        )
    for v, f in zip(rays.lines, f2):
        if f <= 0:
            _verify_witness(data, v, strict=True)
            return CriterionVerdict(
                "strict", Status.FAILS, data.dim_a, as_rational_vector(v), "ray",
                rays.lines, tuple(g2), tuple(q2), 0, scale,
            )
    return CriterionVerdict(
        "strict", Status.HOLDS, data.dim_a, None, None, rays.lines, tuple(g2), tuple(q2), 0, scale
    )
