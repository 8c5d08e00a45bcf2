"""Exact linear algebra over Q and test-ray enumeration for central arrangements.

Everything here works on Python integers and :class:`fractions.Fraction`;
no floating point is involved.  The main entry point is
:func:`enumerate_test_rays`, which returns every one-dimensional face of the
arrangement ``{ker l : l in normals}``.  A function that is linear on each
chamber of the arrangement is non-negative everywhere iff it is non-negative
on those rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, ResourceLimit, ZeroFunctional

DEFAULT_CAP = 2_000_000

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


@dataclass(frozen=True, order=True)
class LinearFunctional:
    """An exact covector on Q^d.

    Arrangement normals are kept in canonical form (coprime integers, first
    nonzero entry positive, see :func:`canonicalize`); restricted weights only
    have their sign folded (see :func:`fold_sign`), so ``2t`` and ``t`` stay
    distinct.
    """

    coeffs: tuple

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, y: Sequence) -> Fraction | int:
        if len(y) != len(self.coeffs):
            raise InvalidInput(f"expected a vector of length {len(self.coeffs)}, got {len(y)}")
        return sum(c * v for c, v in zip(self.coeffs, y))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def as_rational_vector(y: Iterable) -> RationalVector:
    """Convert ints, Fractions or ``"num/den"`` strings to a tuple of Fractions."""
    out = []
    for v in y:
        if isinstance(v, float):
            raise InvalidInput("floating point coordinates are not accepted")
        out.append(Fraction(v))
    return tuple(out)


def primitive(v: Sequence) -> IntVector:
    """Scale a nonzero rational vector by a positive rational to coprime integers."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ZeroFunctional("zero vector has no primitive form")
    return tuple(x // g for x in ints)


def _sign_normal(v: IntVector) -> IntVector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _exact(x) -> int | Fraction:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def fold_sign(v: Sequence | LinearFunctional) -> LinearFunctional:
    """Representative of ``{v, -v}`` with first nonzero entry positive, scale kept."""
    if isinstance(v, LinearFunctional):
        v = v.coeffs
    return LinearFunctional(_sign_normal(tuple(_exact(x) for x in v)))


def canonical_line(v: Sequence) -> IntVector:
    """Primitive integer representative of the line through ``v`` (sign folded)."""
    return _sign_normal(primitive(v))


def canonicalize(v: Sequence | LinearFunctional) -> LinearFunctional:
    """Canonical representative of the functional ``v`` up to nonzero scaling.

    >>> canonicalize((2, 4))
    LinearFunctional(coeffs=(1, 2))
    >>> canonicalize((0, -3))
    LinearFunctional(coeffs=(0, 1))
    """
    if isinstance(v, LinearFunctional):
        v = v.coeffs
    return LinearFunctional(canonical_line(v))


def rank(normals: Iterable[Sequence | LinearFunctional], d: int) -> int:
    """Rank of the span of ``normals`` in (Q^d)*, by fraction-free elimination."""
    rows = []
    for v in normals:
        coeffs = v.coeffs if isinstance(v, LinearFunctional) else v
        if len(coeffs) != d:
            raise InvalidInput(f"normal {tuple(coeffs)} does not have length {d}")
        den = reduce(lcm, (Fraction(x).denominator for x in coeffs), 1)
        rows.append([int(Fraction(x) * den) for x in coeffs])
    return _bareiss_rank(rows, d)


def _bareiss_rank(rows: list[list[int]], d: int) -> int:
    m = [list(r) for r in rows]
    r = 0
    prev = 1
    for col in range(d):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            a = m[i][col]
            row_i = m[i]
            row_r = m[r]
            for j in range(col, d):
                # exact division is the Bareiss invariant
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def kernel_basis(rows: Sequence[Sequence], d: int) -> list[IntVector]:
    """Primitive integer basis of ``{y : r.y = 0 for all rows r}``.

    Basis vectors come from the reduced row echelon form, one per free column,
    so the result is deterministic for a given row list.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * d
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(primitive(v))
    return basis


def ray_order_key(v: IntVector) -> tuple:
    """Sort key used for deterministic ray listings and witness choice.

    Smaller magnitudes come first coordinate by coordinate; on equal magnitude
    a positive entry precedes a negative one.
    """
    return tuple((abs(x), x < 0) for x in v)


@dataclass(frozen=True)
class RaySet:
    """Test rays of a central arrangement.

    ``lines`` holds one canonical representative (first nonzero entry
    positive) per +-pair; ``rays`` expands both signs.  When the arrangement
    has a lineality space, each line is represented by the unique direction
    in its flat orthogonal to that space, and ``lineality_witness`` is a
    nonzero vector on which every normal vanishes.
    """

    dim: int
    lineality_dim: int
    lines: tuple[IntVector, ...]
    lineality_witness: IntVector | None = None
    candidates: int = 0

    @property
    def rays(self) -> tuple[IntVector, ...]:
        out = []
        for v in self.lines:
            out.append(v)
            out.append(tuple(-x for x in v))
        return tuple(out)

    def __len__(self) -> int:
        return 2 * len(self.lines)

    @cached_property
    def matrix(self) -> np.ndarray:
        """The canonical lines as rows of an integer array (shape ``(k, d)``)."""
        if not self.lines:
            return np.zeros((0, self.dim), dtype=np.int64)
        return _int_array(self.lines)


def _int_array(rows: Sequence[Sequence[int]]) -> np.ndarray:
    big = max((abs(x) for r in rows for x in r), default=0)
    return np.array(rows, dtype=np.int64 if big < 2**31 else object)


def enumerate_test_rays(
    normals: Iterable[Sequence | LinearFunctional], d: int, cap: int = DEFAULT_CAP
) -> RaySet:
    """Enumerate the one-dimensional faces of the arrangement cut out by ``normals``.

    The result depends only on the set of hyperplanes, so inputs are
    canonicalized and deduplicated first and the enumeration is memoized.

    Raises:
        ZeroFunctional: if a normal is zero.
        InvalidInput: if a normal does not have length ``d``.
        ResourceLimit: if more than ``cap`` candidate flats are examined.
    """
    canon = set()
    for v in normals:
        lf = canonicalize(v)
        if lf.dim != d:
            raise InvalidInput(f"normal {lf} does not have length {d}")
        canon.add(lf.coeffs)
    return _enumerate(tuple(sorted(canon)), d, cap)


@lru_cache(maxsize=512)
def _enumerate(normals: tuple[IntVector, ...], d: int, cap: int) -> RaySet:
    if d == 0:
        return RaySet(0, 0, ())
    r = _bareiss_rank([list(n) for n in normals], d)
    lin = d - r
    lin_basis = kernel_basis(normals, d) if lin else []
    witness = lin_basis[0] if lin else None
    if r == 0:
        return RaySet(d, lin, (), witness)

    target = r - 1
    identity = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    lines: set[IntVector] = set()

    def represent(basis: list[IntVector]) -> IntVector:
        if not lin:
            return canonical_line(basis[0])
        # the flat contains the lineality space; pick its direction orthogonal to it
        gram = [[_dot(l, b) for b in basis] for l in lin_basis]
        (x,) = kernel_basis(gram, len(basis))
        v = [sum(xi * b[k] for xi, b in zip(x, basis)) for k in range(d)]
        return canonical_line(v)

    if target == 0:
        lines.add(represent(identity))
        return RaySet(d, lin, _sorted_lines(lines), witness, 0)

    # A flat is stored by its closure (indices of normals vanishing on it), a
    # basis K of the flat and the table V[n][l] = normals[n] . K[l].  Children
    # of a flat are the classes of nonzero rows of V up to scaling.
    root_values = [list(n) for n in normals]
    seen = {frozenset()}
    stack = [(frozenset(), identity, root_values, 0)]
    count = 0
    while stack:
        closure, basis, values, k = stack.pop()
        classes: dict[IntVector, list[int]] = {}
        for idx, row in enumerate(values):
            if idx in closure:
                continue
            classes.setdefault(_int_line(row), []).append(idx)
        for direction in sorted(classes):
            count += 1
            if count > cap:
                raise ResourceLimit(count, cap)
            child = closure.union(classes[direction])
            if child in seen:
                continue
            seen.add(child)
            c = values[classes[direction][0]]
            piv = next(i for i, x in enumerate(c) if x)
            ci = c[piv]
            keep = [l for l in range(len(basis)) if l != piv]
            new_basis = []
            scales = []
            for l in keep:
                vec = [ci * a - c[l] * b for a, b in zip(basis[l], basis[piv])]
                g = reduce(gcd, vec, 0)
                new_basis.append(tuple(x // g for x in vec))
                scales.append(g)
            if k + 1 == target:
                lines.add(represent(new_basis))
                continue
            new_values = [
                [(ci * row[l] - c[l] * row[piv]) // g for l, g in zip(keep, scales)]
                for row in values
            ]
            stack.append((child, new_basis, new_values, k + 1))
    return RaySet(d, lin, _sorted_lines(lines), witness, count)


def _int_line(row: list[int]) -> IntVector:
    g = 0
    first = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if not first:
                first = x
    if first < 0:
        g = -g
    return tuple(x // g for x in row)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _sorted_lines(lines: Iterable[IntVector]) -> tuple[IntVector, ...]:
    return tuple(sorted(lines, key=ray_order_key))
