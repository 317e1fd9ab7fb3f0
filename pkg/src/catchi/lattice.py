"""Exact bilinear-form algebra over the rationals.

Gram matrices, signatures by congruence diagonalization, the standard E8/U/K3
builders, orthogonal projections and complements, bounded short-vector
enumeration with a completeness certificate, and period-domain membership.
Everything is Fraction arithmetic: no floating point enters any decision
(omega_membership tolerates float input explicitly, nothing else does).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

Vector = tuple[Q, ...]
Matrix = tuple[tuple[Q, ...], ...]


class SingularGramSystem(ValueError):
    """solve_gram target set spans a degenerate subspace."""


class InconsistentGramSystem(ValueError):
    """solve_gram constraints admit no solution at all."""


def _q(x) -> Q:
    if isinstance(x, float):
        raise TypeError("exact rational expected, got float")
    return Q(x)


def vector(coords: Iterable) -> Vector:
    return tuple(_q(c) for c in coords)


@dataclass(frozen=True)
class GramLattice:
    """Symmetric Gram matrix of exact rationals with basis labels."""

    gram: Matrix
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.gram)
        if len(self.labels) != n:
            raise ValueError("label count disagrees with rank")
        for row in self.gram:
            if len(row) != n:
                raise ValueError("gram matrix is not square")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)


def make_lattice(rows: Sequence[Sequence], labels: Sequence[str] | None = None) -> GramLattice:
    gram = tuple(tuple(_q(x) for x in row) for row in rows)
    if labels is None:
        labels = tuple(f"b{i}" for i in range(len(gram)))
    return GramLattice(gram=gram, labels=tuple(labels))


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


def inner(g: GramLattice, v: Sequence, w: Sequence) -> Q:
    """v^T gram w, exact."""
    n = g.rank
    if len(v) != n or len(w) != n:
        raise ValueError(f"vector length != rank {n}")
    total = Q(0)
    for i, vi in enumerate(v):
        if vi:
            row = g.gram[i]
            total += _q(vi) * sum((row[j] * _q(wj) for j, wj in enumerate(w) if wj), Q(0))
    return total


def signature(g: GramLattice) -> Signature:
    """Eigenvalue-sign counts by exact symmetric (congruence) elimination.

    Symmetric row/column operations preserve the signature; pivots are taken
    from the diagonal, manufacturing one by a symmetric row+column addition
    when the remaining diagonal vanishes but the block does not.
    """
    n = g.rank
    a = [[g.gram[i][j] for j in range(n)] for i in range(n)]
    plus = zero = minus = 0
    for k in range(n):
        if a[k][k] == 0:
            # Look for a later nonzero diagonal entry to swap in.
            swap = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                # Fully zero diagonal: find an off-diagonal pivot a[k][j] and
                # add row/column j into k, giving a[k][k] = 2 a[k][j].
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                for m in range(n):
                    a[k][m] += a[j][m]
                for m in range(n):
                    a[m][k] += a[m][j]
        pivot = a[k][k]
        if pivot > 0:
            plus += 1
        else:
            minus += 1
        # Schur complement: symmetric elimination of row and column k.
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / pivot
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = Q(0)
            a[k][i] = Q(0)
    return Signature(plus, zero, minus)


def determinant(g: GramLattice) -> Q:
    """Exact determinant of the Gram matrix (fraction Gaussian elimination)."""
    n = g.rank
    a = [list(row) for row in g.gram]
    det = Q(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Q(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


# ---------------------------------------------------------------------------
# Standard building blocks
# ---------------------------------------------------------------------------

# Simple-root adjacency of the E8 diagram (0-indexed nodes; node 1 is the one
# hanging off node 3):
#
#         1
#         |
# 0 - 2 - 3 - 4 - 5 - 6 - 7
_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def e8_gram(sign: int = 1) -> GramLattice:
    """Rank-8 even unimodular Gram matrix; sign=-1 gives the negated form."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rows = [[Q(0)] * 8 for _ in range(8)]
    for i in range(8):
        rows[i][i] = Q(2 * sign)
    for i, j in _E8_EDGES:
        rows[i][j] = Q(-sign)
        rows[j][i] = Q(-sign)
    labels = tuple(f"r{i}" for i in range(8))
    return GramLattice(gram=tuple(tuple(r) for r in rows), labels=labels)


def u_gram() -> GramLattice:
    """Hyperbolic plane: isotropic pair e, f with e.f = 1."""
    return make_lattice([[0, 1], [1, 0]], labels=("e", "f"))


def direct_sum(*parts: GramLattice) -> GramLattice:
    """Block-diagonal sum; labels get a per-block suffix when they collide."""
    n = sum(p.rank for p in parts)
    rows = [[Q(0)] * n for _ in range(n)]
    labels: list[str] = []
    seen: dict[str, int] = {}
    offset = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                rows[offset + i][offset + j] = p.gram[i][j]
        for lab in p.labels:
            if lab in seen:
                seen[lab] += 1
                labels.append(f"{lab}.{seen[lab]}")
            else:
                seen[lab] = 0
                labels.append(lab)
        offset += p.rank
    return GramLattice(gram=tuple(tuple(r) for r in rows), labels=tuple(labels))


def k3_gram() -> GramLattice:
    """Rank-22 even unimodular form of signature (3, 19)."""
    return direct_sum(e8_gram(-1), e8_gram(-1), u_gram(), u_gram(), u_gram())


# ---------------------------------------------------------------------------
# Linear solving against inner-product constraints
# ---------------------------------------------------------------------------


def solve_gram(g: GramLattice, targets: Sequence[tuple[Sequence, object]]) -> Vector:
    """The vector x in the rational span of the target vectors with
    inner(x, v_i) = c_i for every (v_i, c_i) pair.

    Writing x = sum lam_i v_i turns the constraints into the square system
    (v_i . v_j) lam = c, solved exactly.  A degenerate target span raises
    SingularGramSystem unless the constraints are outright contradictory,
    which raises InconsistentGramSystem instead.  No targets: the zero vector.
    """
    n = g.rank
    if not targets:
        return tuple(Q(0) for _ in range(n))
    vecs = [vector(v) for v, _ in targets]
    cs = [_q(c) for _, c in targets]
    m = len(vecs)
    aug = [[Q(0)] * m + [cs[i]] for i in range(m)]
    for i in range(m):
        for j in range(i, m):
            aug[i][j] = aug[j][i] = inner(g, vecs[i], vecs[j])
    # Gaussian elimination with consistency tracking.
    row = 0
    pivot_cols: list[int] = []
    for col in range(m):
        pivot_row = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot_row is None:
            continue
        aug[row], aug[pivot_row] = aug[pivot_row], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
    for r in range(row, m):
        if aug[r][m] != 0:
            raise InconsistentGramSystem(
                "constraints are contradictory on the target span"
            )
    if row < m:
        raise SingularGramSystem("targets span a degenerate subspace")
    lam = [aug[pivot_cols.index(c)][m] if c in pivot_cols else Q(0) for c in range(m)]
    out = [Q(0)] * n
    for li, v in zip(lam, vecs):
        if li:
            for k in range(n):
                out[k] += li * v[k]
    return tuple(out)


def orthogonal_complement_rational(g: GramLattice, span: Sequence[Sequence]) -> list[Vector]:
    """Rational basis of { x : inner(s, x) = 0 for all s in span }.

    This is the exact kernel of the pairing matrix (rows s^T gram); degenerate
    directions of the span itself therefore reappear in the answer.  Basis
    vectors are scaled to primitive integer vectors with positive leading
    entry so results are deterministic.
    """
    n = g.rank
    rows: list[list[Q]] = []
    for s in span:
        sv = vector(s)
        if len(sv) != n:
            raise ValueError(f"vector length != rank {n}")
        rows.append([inner_coordinate(g, sv, j) for j in range(n)])
    basis = _nullspace(rows, n)
    return [_primitive(v) for v in basis]


def inner_coordinate(g: GramLattice, v: Vector, j: int) -> Q:
    """inner(v, e_j): the j-th coordinate of the functional v^T gram."""
    return sum((v[i] * g.gram[i][j] for i in range(g.rank) if v[i]), Q(0))


def _nullspace(rows: list[list[Q]], n: int) -> list[Vector]:
    """Exact kernel basis of an m x n rational matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q(0)] * n
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(tuple(v))
    return basis


def _primitive(v: Vector) -> Vector:
    denom = math.lcm(*(c.denominator for c in v)) if v else 1
    ints = [int(c * denom) for c in v]
    g = math.gcd(*ints) if any(ints) else 1
    if g == 0:
        g = 1
    ints = [c // g for c in ints]
    lead = next((c for c in ints if c), 0)
    if lead < 0:
        ints = [-c for c in ints]
    return tuple(Q(c) for c in ints)


# ---------------------------------------------------------------------------
# Short-vector enumeration (definite forms only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormVectorResult:
    """Vectors found, the per-coordinate search box that certifies
    completeness, and whether coeff_bound actually covered that box."""

    vectors: tuple[Vector, ...]
    complete: bool
    box: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vectors)


def _floor_sqrt(x: Q) -> int:
    """floor(sqrt(x)) for nonnegative rational x, exact."""
    if x < 0:
        raise ValueError("negative radicand")
    return math.isqrt(x.numerator * x.denominator) // x.denominator


def enumerate_norm_vectors(g: GramLattice, norm, coeff_bound: int) -> NormVectorResult:
    """All nonzero integer-coordinate vectors v with |v_i| <= coeff_bound and
    inner(v, v) == norm, for a definite Gram matrix.

    The per-coordinate Cauchy-Schwarz box |v_i| <= sqrt(norm * (gram^-1)_ii)
    is computed exactly; when coeff_bound covers it the result is flagged
    complete.  Indefinite or degenerate forms are refused.  A norm whose sign
    disagrees with the definiteness has no solutions: empty and complete.
    """
    target = _q(norm)
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be nonnegative")
    sig = signature(g)
    n = g.rank
    if sig.n_zero or (sig.n_plus and sig.n_minus):
        raise ValueError("short-vector enumeration needs a definite form")
    flip = sig.n_minus == n
    h = [[-g.gram[i][j] if flip else g.gram[i][j] for j in range(n)] for i in range(n)]
    t = -target if flip else target
    if t <= 0:
        # Wrong sign, or zero: a definite form has no nonzero null vectors.
        return NormVectorResult(vectors=(), complete=True, box=(0,) * n)

    # Cauchy-Schwarz box from the exact inverse diagonal.
    hinv_diag = _inverse_diagonal(h)
    box = tuple(_floor_sqrt(t * d) for d in hinv_diag)
    complete = all(b <= coeff_bound for b in box)
    cap = [min(b, coeff_bound) for b in box]

    # LDL^T completion of the positive form: q(x) = sum_i d_i (x_i + s_i)^2
    # with s_i a linear form in x_{i+1..n}; enumerate coordinates last-first,
    # pruning on the exact remaining budget.
    d, moff = _ldl(h)
    found: list[Vector] = []
    x = [0] * n

    def descend(i: int, remaining: Q) -> None:
        if i < 0:
            if remaining == 0:
                found.append(tuple(Q(c) for c in x))
            return
        s = sum((moff[i][j] * x[j] for j in range(i + 1, n) if x[j]), Q(0))
        # |x_i + s| <= sqrt(remaining / d_i); pad the float window and verify
        # every candidate exactly.
        half = math.sqrt(max(0.0, float(remaining / d[i])))
        lo = max(-cap[i], math.floor(-float(s) - half) - 1)
        hi = min(cap[i], math.ceil(-float(s) + half) + 1)
        for c in range(lo, hi + 1):
            x[i] = c
            term = d[i] * (c + s) ** 2
            if term <= remaining:
                descend(i - 1, remaining - term)
        x[i] = 0

    descend(n - 1, t)
    found.sort()
    return NormVectorResult(vectors=tuple(found), complete=complete, box=box)


def _inverse_diagonal(h: list[list[Q]]) -> list[Q]:
    """Diagonal of the exact inverse of a nonsingular rational matrix."""
    n = len(h)
    aug = [list(h[i]) + [Q(1) if j == i else Q(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n + i] for i in range(n)]


def _ldl(h: list[list[Q]]) -> tuple[list[Q], list[list[Q]]]:
    """q(x) = sum_i d[i] * (x_i + sum_{j>i} m[i][j] x_j)^2 for symmetric
    positive-definite h, by exact elimination."""
    n = len(h)
    a = [list(row) for row in h]
    d = [Q(0)] * n
    m = [[Q(0)] * n for _ in range(n)]
    for k in range(n):
        d[k] = a[k][k]
        if d[k] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(k + 1, n):
            m[k][j] = a[k][j] / d[k]
        for i in range(k + 1, n):
            if a[k][i]:
                f = a[k][i] / d[k]
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return d, m


# ---------------------------------------------------------------------------
# Period-domain membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaMembership:
    ok: bool
    re_norm: Q | float
    im_norm: Q | float
    cross: Q | float
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def omega_membership(g: GramLattice, re: Sequence, im: Sequence, tol: float = 1e-9) -> OmegaMembership:
    """Whether re + i*im spans a positive 2-plane: re.re == im.im, re.im == 0,
    re.re > 0.  Requires signature (2, 0, n).  Rational input is judged
    exactly; float input within tol.
    """
    sig = signature(g)
    if sig.n_plus != 2 or sig.n_zero != 0:
        raise ValueError(f"signature {sig.as_tuple()} is not (2, 0, n)")
    exact = all(not isinstance(c, float) for c in (*re, *im))
    if exact:
        rv, iv = vector(re), vector(im)
        rr, ii, ri = inner(g, rv, rv), inner(g, iv, iv), inner(g, rv, iv)
        equal_norm = rr == ii
        orth = ri == 0
        positive = rr > 0
    else:
        gr = [[float(x) for x in row] for row in g.gram]
        rf = [float(c) for c in re]
        imf = [float(c) for c in im]
        rr = sum(rf[i] * gr[i][j] * rf[j] for i in range(g.rank) for j in range(g.rank))
        ii = sum(imf[i] * gr[i][j] * imf[j] for i in range(g.rank) for j in range(g.rank))
        ri = sum(rf[i] * gr[i][j] * imf[j] for i in range(g.rank) for j in range(g.rank))
        scale = max(1.0, abs(rr), abs(ii))
        equal_norm = abs(rr - ii) <= tol * scale
        orth = abs(ri) <= tol * scale
        positive = rr > tol
    if not equal_norm:
        reason = "re.re != im.im"
    elif not orth:
        reason = "re.im != 0"
    elif not positive:
        reason = "re.re is not positive"
    else:
        reason = "ok"
    return OmegaMembership(
        ok=equal_norm and orth and positive,
        re_norm=rr,
        im_norm=ii,
        cross=ri,
        reason=reason,
    )


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _q_str(x: Q) -> str:
    return str(x)


def _q_parse(s) -> Q:
    if isinstance(s, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(s, int):
        return Q(s)
    if isinstance(s, str):
        return Q(s)
    raise TypeError(f"expected 'p/q' string or integer, got {type(s).__name__}")


def gram_to_json(g: GramLattice) -> dict:
    return {
        "labels": list(g.labels),
        "gram": [[_q_str(x) for x in row] for row in g.gram],
    }


def gram_from_json(doc: dict) -> GramLattice:
    rows = [[_q_parse(x) for x in row] for row in doc["gram"]]
    labels = doc.get("labels")
    return make_lattice(rows, labels=tuple(labels) if labels else None)
