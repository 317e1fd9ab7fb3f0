"""Finite ADE root systems, reflections, and mirror arrangements.

Roots live in explicit rational coordinate realizations where the bilinear
form is the standard dot product (A_n in n+1 coordinates, D_n in n, E6/E7/E8
inside the even half-integer realization in 8).  All incidence decisions are
exact Fraction equality; no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

Vector = tuple[Q, ...]


def _vec(coords: Iterable) -> Vector:
    out = []
    for c in coords:
        if isinstance(c, float):
            raise TypeError("exact rational expected, got float")
        out.append(Q(c))
    return tuple(out)


def dot(v: Sequence, w: Sequence) -> Q:
    if len(v) != len(w):
        raise ValueError("dimension mismatch")
    return sum((Q(a) * Q(b) for a, b in zip(v, w) if a and b), Q(0))


def reflect(root: Sequence, v: Sequence) -> Vector:
    """Orthogonal reflection of v in the hyperplane root^perp."""
    r = _vec(root)
    nn = dot(r, r)
    if nn == 0:
        raise ValueError("cannot reflect in a zero root")
    f = 2 * dot(_vec(v), r) / nn
    return tuple(Q(x) - f * ri for x, ri in zip(v, r))


@dataclass(frozen=True)
class RootSystem:
    """A finite set of norm-2 vectors closed under its own reflections."""

    label: str
    rank: int
    simple_roots: tuple[Vector, ...]
    roots: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def ambient_dim(self) -> int:
        if self.roots:
            return len(self.roots[0])
        return len(self.simple_roots[0]) if self.simple_roots else 0


@dataclass(frozen=True)
class Mirror:
    """The fixed hyperplane root^perp, with the root stored lex-positive."""

    root: Vector

    def contains(self, v: Sequence) -> bool:
        return dot(self.root, _vec(v)) == 0

    def reflect(self, v: Sequence) -> Vector:
        return reflect(self.root, v)


def _lex_positive(v: Vector) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


def mirrors(rs: RootSystem) -> list[Mirror]:
    """One mirror per +/- root pair."""
    return [Mirror(root=r) for r in rs.roots if _lex_positive(r)]


def _simple_roots(family: str, rank: int) -> tuple[Vector, ...]:
    def e(i: int, n: int, val=1) -> list[Q]:
        v = [Q(0)] * n
        v[i] = Q(val)
        return v

    if family == "A":
        if rank < 1:
            raise ValueError("A_n needs rank >= 1")
        n = rank + 1
        out = []
        for i in range(rank):
            v = e(i, n)
            v[i + 1] = Q(-1)
            out.append(tuple(v))
        return tuple(out)
    if family == "D":
        if rank < 2:
            raise ValueError("D_n needs rank >= 2")
        out = []
        for i in range(rank - 1):
            v = e(i, rank)
            v[i + 1] = Q(-1)
            out.append(tuple(v))
        v = e(rank - 2, rank)
        v[rank - 1] = Q(1)
        out.append(tuple(v))
        return tuple(out)
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n needs rank in {6, 7, 8}")
        half = Q(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = tuple(Q(c) for c in (1, 1, 0, 0, 0, 0, 0, 0))
        chain = []
        for i in range(1, 7):  # e_{i+1} - e_i, giving the long arm of the diagram
            v = [Q(0)] * 8
            v[i - 1] = Q(-1)
            v[i] = Q(1)
            chain.append(tuple(v))
        full = (a1, a2) + tuple(chain)
        return full[:rank]
    raise ValueError(f"unknown family {family!r}; expected A, D, or E")


_COUNTS = {
    "A": lambda n: n * (n + 1),
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
}


def generate_roots(family: str, rank: int) -> RootSystem:
    """Reflection closure of the simple roots of A_n / D_n / E_n.

    Every root is conjugate to a simple one under the group the simple
    reflections generate, so closing under simple reflections alone reaches
    the whole system; termination comes from norm preservation.
    """
    family = family.upper()
    simples = _simple_roots(family, rank)
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for s in simples:
                img = reflect(s, r)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    expected = _COUNTS[family](rank)
    if len(roots) != expected:
        raise AssertionError(
            f"closure produced {len(roots)} roots for {family}{rank}, expected {expected}"
        )
    return RootSystem(
        label=f"{family}{rank}",
        rank=rank,
        simple_roots=simples,
        roots=tuple(sorted(roots)),
    )


def _indecomposables(positives: set[Vector]) -> tuple[Vector, ...]:
    """Positive roots that are not sums of two positive roots."""
    out = []
    for a in positives:
        decomposable = any(
            tuple(ai - bi for ai, bi in zip(a, b)) in positives for b in positives if b != a
        )
        if not decomposable:
            out.append(a)
    return tuple(sorted(out))


def local_subsystem(rs: RootSystem, x: Sequence) -> RootSystem:
    """The sub-root-system of roots whose mirrors pass through x.

    Exact incidence: alpha is kept iff <alpha, x> == 0.  The result is checked
    to be reflection-closed, which is what makes it a genuine Coxeter
    sub-arrangement rather than an arbitrary slice.
    """
    xv = _vec(x)
    kept = {r for r in rs.roots if dot(r, xv) == 0}
    for a in kept:
        for b in kept:
            if reflect(a, b) not in kept:
                raise AssertionError("local root set is not reflection-closed")
    positives = {r for r in kept if _lex_positive(r)}
    simples = _indecomposables(positives)
    return RootSystem(
        label=f"local({rs.label})",
        rank=len(simples),
        simple_roots=simples,
        roots=tuple(sorted(kept)),
    )


def complex_mirror_membership(root: Sequence, z: tuple[Sequence, Sequence]) -> bool:
    """Whether the complex point re + i*im lies on the complexified mirror
    root^perp: both real pairings must vanish exactly."""
    re, im = z
    r = _vec(root)
    return dot(r, _vec(re)) == 0 and dot(r, _vec(im)) == 0


def root_system_to_json(rs: RootSystem) -> dict:
    return {
        "type": rs.label,
        "rank": rs.rank,
        "simple_roots": [[str(c) for c in r] for r in rs.simple_roots],
        "roots": [[str(c) for c in r] for r in rs.roots],
    }
