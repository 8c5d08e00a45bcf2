"""Discrete-series conclusions for G and G/H.

Three independent sources of conclusions live here:

* the rank criterion for ``Disc(G)`` (nonempty iff ``rank G = rank K``);
* the inclusion ``Disc(G/H) in Disc(G)``, valid whenever the strict
  inequality ``rho_g < 2 rho_q`` holds off the origin;
* the closed-form classification of ``SO(p,q) / prod SO(p_k,q_k)``, with its
  symmetric-pair rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .engine import CriterionVerdict, Status
from .weights import SL, SO, Ambient


class DiscG(str, Enum):
    NONEMPTY = "nonempty"
    EMPTY = "empty"
    UNKNOWN = "unknown"


class DiscGH(str, Enum):
    NONEMPTY = "nonempty"
    EMPTY = "empty"
    SUBSET_OF_DISC_G = "subset_of_disc_G"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class DiscConclusion:
    disc_G: DiscG
    disc_GH: DiscGH
    justification: str
    flags: tuple[str, ...] = ()


def disc_nonempty_ambient(group: Ambient) -> bool:
    """Rank criterion ``rank G = rank K`` for ``SL(n,R)`` and ``SO(p,q)``.

    ``SL(n,R)`` has rank ``n-1`` and ``K = SO(n)`` has rank ``n // 2``; they
    agree only for ``n <= 2``.  ``SO(p,q)`` has rank ``(p+q) // 2`` against
    ``p // 2 + q // 2`` for ``S(O(p) x O(q))``; they differ exactly when both
    ``p`` and ``q`` are odd.
    """
    if isinstance(group, SL):
        return group.n <= 2
    if isinstance(group, SO):
        return not (group.p % 2 == 1 and group.q % 2 == 1)
    raise TypeError(f"unsupported ambient group {group!r}")


def conclude_from_corollary(
    strict: CriterionVerdict | Status, disc_g: bool, compact_h: bool = False
) -> DiscConclusion:
    """Apply ``Disc(G/H) in Disc(G)`` when the strict inequality holds.

    With ``compact_h`` (no split part in ``H``) a ``SubsetOfDiscG`` outcome
    is tagged ``compact-H`` instead of ``corollary``.
    """
    status = strict.status if isinstance(strict, CriterionVerdict) else Status(strict)
    dg = DiscG.NONEMPTY if disc_g else DiscG.EMPTY
    if status is not Status.HOLDS:
        return DiscConclusion(dg, DiscGH.UNKNOWN, "corollary")
    if not disc_g:
        return DiscConclusion(dg, DiscGH.EMPTY, "corollary")
    return DiscConclusion(dg, DiscGH.SUBSET_OF_DISC_G, "compact-H" if compact_h else "corollary")


def _block_order(b: tuple[int, int]) -> tuple[int, int]:
    return (-(b[0] + b[1]), -b[0])


@dataclass(frozen=True)
class SOBlockSpec:
    """``SO(p,q) / prod SO(p_k,q_k)`` in normalized form.

    Use :meth:`normalized`: it drops empty blocks, sorts by ``p_k+q_k`` then
    ``p_k`` (both descending), and appends the complement block when that
    complement is a trivial group (``p'+q' <= 1``).
    """

    p: int
    q: int
    blocks: tuple[tuple[int, int], ...]
    padded: bool = False
    source: tuple[tuple[int, int], ...] = ()

    @classmethod
    def normalized(cls, p: int, q: int, blocks: Sequence[Sequence[int]]) -> "SOBlockSpec":
        bl = [(int(a), int(b)) for a, b in blocks if a + b > 0]
        sp = sum(a for a, _ in bl)
        sq = sum(b for _, b in bl)
        if sp > p or sq > q or min([p, q] + [x for blk in bl for x in blk]) < 0:
            raise ValueError(f"blocks {bl} do not fit in SO({p},{q})")
        source = tuple(sorted(bl, key=_block_order))
        rest = (p - sp, q - sq)
        padded = 0 < sum(rest) <= 1
        if padded:
            bl.append(rest)
        return cls(p, q, tuple(sorted(bl, key=_block_order)), padded, source)

    def swapped(self) -> "SOBlockSpec":
        return SOBlockSpec.normalized(self.q, self.p, [(b, a) for a, b in self.source])

    @property
    def first(self) -> tuple[int, int]:
        return self.blocks[0] if self.blocks else (0, 0)

    def max_tie_flag(self) -> bool:
        """Several blocks of maximal size, some compact-in-q and some not."""
        if len(self.blocks) < 2:
            return False
        top = sum(self.blocks[0])
        tied = [b for b in self.blocks if sum(b) == top]
        return len(tied) > 1 and len({b[1] == 0 for b in tied}) > 1


def is_symmetric_so_pair(spec: SOBlockSpec) -> bool:
    """Exactly two normalized blocks filling both ``p`` and ``q``.

    >>> is_symmetric_so_pair(SOBlockSpec.normalized(4, 1, [(4, 0)]))
    True
    """
    return (
        len(spec.blocks) == 2
        and sum(a for a, _ in spec.blocks) == spec.p
        and sum(b for _, b in spec.blocks) == spec.q
    )


def classify_so_pair(spec: SOBlockSpec) -> DiscConclusion:
    """Exact answer to ``Disc(SO(p,q) / prod SO(p_k,q_k)) != {}``."""
    if spec.p % 2 == 1 and spec.q % 2 == 0:
        spec = spec.swapped()
    p, q = spec.p, spec.q
    dg = DiscG.NONEMPTY if disc_nonempty_ambient(SO(p, q)) else DiscG.EMPTY
    flags = []
    if spec.padded:
        flags.append("padded-complement")
    if spec.max_tie_flag():
        flags.append("max-block-tie")
    flags = tuple(flags)

    if is_symmetric_so_pair(spec):
        (p1, q1), (p2, q2) = spec.blocks
        ok = p1 >= p2 and q1 >= q2
        return DiscConclusion(dg, DiscGH.NONEMPTY if ok else DiscGH.EMPTY, "symmetric-rule", flags)

    p1, q1 = spec.first
    if p % 2 == 0 and q % 2 == 0:
        ok, case = True, 1
    elif p % 2 == 0:
        ok, case = 2 * (p1 + q1) <= p + q or q1 != 0, 2
    else:
        ok, case = p1 * q1 != 0 and 2 * (p1 + q1) >= p + q + 2, 3
    return DiscConclusion(
        dg, DiscGH.NONEMPTY if ok else DiscGH.EMPTY, f"so-classifier-case-{case}", flags
    )
