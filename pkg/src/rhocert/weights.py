"""Restricted weight multisets for classical reductive pairs.

Weights are the eigenvalue functionals of a maximal split abelian subspace
``a`` of the subalgebra ``h``, acting by the adjoint action on ``g``, on ``h``
and on the quotient ``q = g/h``.  Because only ``|lambda(Y)|`` is ever
consumed, a weight and its negative are stored as one key and zero weights are
dropped (their count is kept for bookkeeping).

The adjoint spectra are read off the standard representation:

* ``sl(n)``: pairwise differences of the diagonal entries, multiplicity 2 per
  unordered pair (the root spaces for ``i < j`` and ``j < i``);
* ``so(p, q)``: pairwise sums ``mu_i + mu_j``, ``i < j`` (``so`` is the
  exterior square of the standard module).  A hyperbolic basis makes each
  split coordinate act with weights ``+a`` and ``-a``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .errors import InvalidSpec, NotASubmodule
from .geometry import IntVector, LinearFunctional, _sign_normal, fold_sign


@dataclass(frozen=True)
class WeightMultiset:
    """Folded multiset of restricted weights on ``Q^dim``.

    ``zero_count`` is the multiplicity of the zero weight in the module; it is
    bookkeeping only and never enters a rho value.
    """

    dim: int
    items: tuple[tuple[LinearFunctional, int], ...] = ()
    zero_count: int = 0

    def __post_init__(self):
        for lf, m in self.items:
            if lf.dim != self.dim:
                raise ValueError(f"weight {lf} does not have length {self.dim}")
            if m < 1:
                raise ValueError(f"multiplicity of {lf} must be positive, got {m}")

    @classmethod
    def from_pairs(
        cls, dim: int, pairs: Iterable[tuple[Sequence, int]] | Mapping[Sequence, int]
    ) -> "WeightMultiset":
        """Fold ``(covector, multiplicity)`` pairs.  Rational covectors are allowed."""
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        acc: Counter = Counter()
        zeros = 0
        for vec, mult in pairs:
            vec = vec.coeffs if isinstance(vec, LinearFunctional) else tuple(vec)
            if len(vec) != dim:
                raise ValueError(f"weight {vec} does not have length {dim}")
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for weight {vec}")
            if mult == 0:
                continue
            if not any(vec):
                zeros += mult
                continue
            acc[fold_sign(vec).coeffs] += mult
        return cls._from_counter(dim, acc, zeros)

    @classmethod
    def _from_counter(cls, dim: int, acc: Mapping[IntVector, int], zeros: int) -> "WeightMultiset":
        items = tuple((LinearFunctional(k), m) for k, m in sorted(acc.items()) if m)
        return cls(dim, items, zeros)

    def as_dict(self) -> dict[LinearFunctional, int]:
        return dict(self.items)

    def __getitem__(self, lf: LinearFunctional | Sequence) -> int:
        return self.as_dict().get(fold_sign(lf), 0)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def normals(self) -> tuple[LinearFunctional, ...]:
        return tuple(lf for lf, _ in self.items)

    @property
    def total(self) -> int:
        """Total multiplicity of the nonzero weights."""
        return sum(m for _, m in self.items)

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        self._check_dim(other)
        acc = Counter({lf.coeffs: m for lf, m in self.items})
        for lf, m in other.items:
            acc[lf.coeffs] += m
        return self._from_counter(self.dim, acc, self.zero_count + other.zero_count)

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        """Multiset difference; raises :class:`NotASubmodule` if any count goes negative."""
        self._check_dim(other)
        acc = Counter({lf.coeffs: m for lf, m in self.items})
        for lf, m in other.items:
            if acc[lf.coeffs] < m:
                raise NotASubmodule(
                    f"weight {lf} has multiplicity {m} in the submodule "
                    f"but only {acc[lf.coeffs]} in the ambient module"
                )
            acc[lf.coeffs] -= m
        if other.zero_count > self.zero_count:
            raise NotASubmodule(
                f"zero weight has multiplicity {other.zero_count} in the submodule "
                f"but only {self.zero_count} in the ambient module"
            )
        return self._from_counter(self.dim, acc, self.zero_count - other.zero_count)

    def scaled(self, k: int) -> "WeightMultiset":
        """Multiply every multiplicity by the positive integer ``k``."""
        if k < 1:
            raise ValueError("scale must be a positive integer")
        return WeightMultiset(self.dim, tuple((lf, m * k) for lf, m in self.items), self.zero_count * k)

    def permuted(self, perm: Sequence[int]) -> "WeightMultiset":
        """Relabel coordinates: new coordinate ``i`` is old coordinate ``perm[i]``."""
        pairs = [(tuple(lf.coeffs[j] for j in perm), m) for lf, m in self.items]
        return WeightMultiset.from_pairs(self.dim, pairs + [((0,) * self.dim, self.zero_count)])

    def _check_dim(self, other: "WeightMultiset") -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")


@dataclass(frozen=True)
class RestrictedPairData:
    """The full input of the criterion engine: ``dim a`` and the weights of g, h, q."""

    dim_a: int
    g_weights: WeightMultiset
    h_weights: WeightMultiset
    q_weights: WeightMultiset

    @classmethod
    def from_gh(cls, dim_a: int, g: WeightMultiset, h: WeightMultiset) -> "RestrictedPairData":
        return cls(dim_a, g, h, g - h)

    def scaled(self, k: int) -> "RestrictedPairData":
        return RestrictedPairData.from_gh(self.dim_a, self.g_weights.scaled(k), self.h_weights.scaled(k))

    def permuted(self, perm: Sequence[int]) -> "RestrictedPairData":
        return RestrictedPairData.from_gh(
            self.dim_a, self.g_weights.permuted(perm), self.h_weights.permuted(perm)
        )


# ---------------------------------------------------------------------------
# pair specifications


@dataclass(frozen=True)
class SL:
    n: int

    def __str__(self) -> str:
        return f"SL({self.n},R)"


@dataclass(frozen=True)
class SO:
    p: int
    q: int

    def __str__(self) -> str:
        return f"SO({self.p},{self.q})"


Ambient = Union[SL, SO]


@dataclass(frozen=True)
class SLBlocks:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class SOBlocks:
    blocks: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SOinSL:
    p: int
    q: int


@dataclass(frozen=True)
class Generic:
    dim_a: int
    g_weights: tuple[tuple[tuple, int], ...]
    h_weights: tuple[tuple[tuple, int], ...] = ()


Subgroup = Union[SLBlocks, SOBlocks, SOinSL, Generic]


@dataclass(frozen=True)
class PairSpec:
    ambient: Ambient
    subgroup: Subgroup
    label: str = field(default="", compare=False)

    def validate(self) -> None:
        """Check family constraints; raises :class:`InvalidSpec` with a field path."""
        a, s = self.ambient, self.subgroup
        if isinstance(a, SL):
            _require(a.n >= 1, "n must be at least 1", "$.ambient.n")
        else:
            _require(a.p >= 0 and a.q >= 0, "p and q must be non-negative", "$.ambient")
        if isinstance(s, SLBlocks):
            _require(isinstance(a, SL), "sl_blocks requires an SL ambient group", "$.subgroup.type")
            _check_sl_blocks(a.n, s.parts)
        elif isinstance(s, SOBlocks):
            _require(isinstance(a, SO), "so_blocks requires an SO ambient group", "$.subgroup.type")
            _check_so_blocks(a.p, a.q, s.blocks)
        elif isinstance(s, SOinSL):
            _require(isinstance(a, SL), "so_in_sl requires an SL ambient group", "$.subgroup.type")
            _check_so_in_sl(a.n, s.p, s.q)
        else:
            _require(s.dim_a >= 0, "dim_a must be non-negative", "$.subgroup.dim_a")

    def build(self) -> RestrictedPairData:
        s = self.subgroup
        if isinstance(s, SLBlocks):
            return build_sl_blocks(self.ambient.n, s.parts)
        if isinstance(s, SOBlocks):
            return build_so_blocks(self.ambient.p, self.ambient.q, s.blocks)
        if isinstance(s, SOinSL):
            return build_so_in_sl(self.ambient.n, s.p, s.q)
        return build_generic(s.dim_a, s.g_weights, s.h_weights)

    def describe(self) -> str:
        s = self.subgroup
        if isinstance(s, SLBlocks):
            sub = " x ".join(f"SL({k},R)" for k in s.parts) or "{e}"
        elif isinstance(s, SOBlocks):
            sub = " x ".join(f"SO({a},{b})" for a, b in s.blocks) or "{e}"
        elif isinstance(s, SOinSL):
            sub = f"SO({s.p},{s.q})"
        else:
            sub = f"H (dim a = {s.dim_a})"
        return f"{self.ambient} / {sub}"


def _require(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise InvalidSpec(message, path)


def _check_sl_blocks(n: int, parts: Sequence[int]) -> None:
    _require(n >= 1, "n must be at least 1", "$.ambient.n")
    for i, k in enumerate(parts):
        _require(k >= 1, f"block size must be at least 1, got {k}", f"$.subgroup.blocks[{i}]")
    _require(sum(parts) <= n, f"block sizes sum to {sum(parts)} > n = {n}", "$.subgroup.blocks")


def _check_so_blocks(p: int, q: int, blocks: Sequence[tuple[int, int]]) -> None:
    _require(p >= 0 and q >= 0, "p and q must be non-negative", "$.ambient")
    for i, (pk, qk) in enumerate(blocks):
        _require(pk >= 0 and qk >= 0, "block signature must be non-negative", f"$.subgroup.blocks[{i}]")
    sp = sum(b[0] for b in blocks)
    sq = sum(b[1] for b in blocks)
    _require(sp <= p, f"block p-parts sum to {sp} > p = {p}", "$.subgroup.blocks")
    _require(sq <= q, f"block q-parts sum to {sq} > q = {q}", "$.subgroup.blocks")


def _check_so_in_sl(n: int, p: int, q: int) -> None:
    _require(n >= 1, "n must be at least 1", "$.ambient.n")
    _require(p >= 0 and q >= 0, "p and q must be non-negative", "$.subgroup")
    _require(p + q <= n, f"p + q = {p + q} exceeds n = {n}", "$.subgroup")


# ---------------------------------------------------------------------------
# constructors


def _unit(d: int, i: int, sign: int = 1) -> IntVector:
    return tuple(sign if j == i else 0 for j in range(d))


def _differences(entries: Sequence[IntVector], dim: int) -> WeightMultiset:
    # adjoint weights of sl(len(entries)); the diagonal Cartan is len - 1 zeros
    acc: Counter = Counter()
    zeros = max(len(entries) - 1, 0)
    for u, v in combinations(entries, 2):
        w = tuple(a - b for a, b in zip(u, v))
        if any(w):
            acc[_sign_normal(w)] += 2
        else:
            zeros += 2
    return WeightMultiset._from_counter(dim, acc, zeros)


def _pair_sums(entries: Sequence[IntVector], dim: int) -> WeightMultiset:
    acc: Counter = Counter()
    zeros = 0
    for u, v in combinations(entries, 2):
        w = tuple(a + b for a, b in zip(u, v))
        if any(w):
            acc[_sign_normal(w)] += 1
        else:
            zeros += 1
    return WeightMultiset._from_counter(dim, acc, zeros)


def _hyperbolic_list(d: int, first: int, m: int, zeros: int) -> list[IntVector]:
    out = []
    for i in range(first, first + m):
        out.append(_unit(d, i))
        out.append(_unit(d, i, -1))
    out.extend([(0,) * d] * zeros)
    return out


def build_sl_blocks(n: int, parts: Sequence[int]) -> RestrictedPairData:
    """Weights for ``SL(n,R) / prod SL(n_k,R)`` with block-diagonal embedding.

    Block ``k`` carries ``n_k - 1`` coordinates and the diagonal
    ``(t_1, ..., t_{n_k-1}, -sum t_i)``; ambient positions outside every block
    are zero.

    >>> data = build_sl_blocks(3, [2, 1])
    >>> data.q_weights.as_dict()
    {LinearFunctional(coeffs=(1,)): 4}
    """
    parts = tuple(parts)
    _check_sl_blocks(n, parts)
    d = sum(k - 1 for k in parts)
    diag: list[IntVector] = []
    blocks: list[list[IntVector]] = []
    c = 0
    for k in parts:
        block = [_unit(d, c + i) for i in range(k - 1)]
        block.append(tuple(-1 if c <= j < c + k - 1 else 0 for j in range(d)))
        c += k - 1
        blocks.append(block)
        diag.extend(block)
    diag.extend([(0,) * d] * (n - len(diag)))
    g = _differences(diag, d)
    h = WeightMultiset(d)
    for block in blocks:
        h = h + _differences(block, d)
    return RestrictedPairData.from_gh(d, g, h)


def build_so_blocks(p: int, q: int, blocks: Sequence[Sequence[int]]) -> RestrictedPairData:
    """Weights for ``SO(p,q) / prod SO(p_k,q_k)`` with block-diagonal embedding.

    Block ``k`` contributes ``min(p_k, q_k)`` split coordinates.
    """
    blocks = tuple((int(a), int(b)) for a, b in blocks)
    _check_so_blocks(p, q, blocks)
    d = sum(min(a, b) for a, b in blocks)
    ambient: list[IntVector] = []
    h = WeightMultiset(d)
    c = 0
    for a, b in blocks:
        m = min(a, b)
        block = _hyperbolic_list(d, c, m, a + b - 2 * m)
        c += m
        h = h + _pair_sums(block, d)
        ambient.extend(block)
    rest = (p - sum(a for a, _ in blocks)) + (q - sum(b for _, b in blocks))
    ambient.extend([(0,) * d] * rest)
    return RestrictedPairData.from_gh(d, _pair_sums(ambient, d), h)


def build_so_in_sl(n: int, p: int, q: int) -> RestrictedPairData:
    """Weights for ``SL(n,R) / SO(p,q)``, with ``SO(p,q)`` acting on the first ``p+q`` coordinates."""
    _check_so_in_sl(n, p, q)
    m = min(p, q)
    std = _hyperbolic_list(m, 0, m, p + q - 2 * m)
    g = _differences(std + [(0,) * m] * (n - p - q), m)
    h = _pair_sums(std, m)
    return RestrictedPairData.from_gh(m, g, h)


def build_generic(
    dim_a: int,
    g_weights: Iterable[tuple[Sequence, int]],
    h_weights: Iterable[tuple[Sequence, int]],
) -> RestrictedPairData:
    """Fold user-supplied weight lists; ``q`` is their multiset difference.

    Raises:
        NotASubmodule: if some weight occurs more often in ``h`` than in ``g``.
    """
    g = WeightMultiset.from_pairs(dim_a, g_weights)
    h = WeightMultiset.from_pairs(dim_a, h_weights)
    return RestrictedPairData.from_gh(dim_a, g, h)


__all__ = [
    "Ambient",
    "Generic",
    "PairSpec",
    "RestrictedPairData",
    "SL",
    "SLBlocks",
    "SO",
    "SOBlocks",
    "SOinSL",
    "Subgroup",
    "WeightMultiset",
    "build_generic",
    "build_sl_blocks",
    "build_so_blocks",
    "build_so_in_sl",
]
