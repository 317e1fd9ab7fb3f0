"""Exact calculus for T-shaped root diagrams and cusp resolution cycles.

Everything here is Fraction/integer arithmetic: the Y_{p,q,r} coordinate
model and its signature, the affine-core bookkeeping, the rational projection
vectors attached to pairs of free arm ends (computed two independent ways and
compared exactly), the resulting integer-alpha window analysis, the
quasihomogeneous weight checks for the fourteen exceptional entries, and the
cycle/dual-cycle algebra with its table of known families.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Sequence

from .lattice import (
    GramLattice,
    Signature,
    Vector,
    inner,
    make_lattice,
    signature,
    solve_gram,
)

ARM_NAMES = ("p", "q", "r")


# ---------------------------------------------------------------------------
# The Y_{p,q,r} coordinate model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ypqr:
    """Simple roots of the T-shaped diagram with arms of p, q, r vertices
    (each count includes the shared central vertex), realized in the ambient
    form diag(+1; -1 x p; -1 x q; -1 x r)."""

    p: int
    q: int
    r: int
    ambient: GramLattice
    node_names: tuple[str, ...]
    simple_roots: tuple[Vector, ...]

    @property
    def arm_lengths(self) -> dict[str, int]:
        return {"p": self.p, "q": self.q, "r": self.r}

    def root(self, name: str) -> Vector:
        return self.simple_roots[self.node_names.index(name)]

    def end_node(self, arm: str) -> str:
        n = self.arm_lengths[arm]
        return f"{arm}{n - 1}" if n > 1 else "z"


def _block_offsets(p: int, q: int, r: int) -> dict[str, int]:
    return {"p": 1, "q": 1 + p, "r": 1 + p + q}


@lru_cache(maxsize=None)
def ypqr_roots(p: int, q: int, r: int) -> Ypqr:
    """Build the coordinate model and exactly validate its Gram relations:
    every simple root has norm -2, adjacent diagram nodes pair to +1, and
    non-adjacent nodes pair to 0."""
    if min(p, q, r) < 2:
        raise ValueError("arm sizes must be at least 2")
    dim = 1 + p + q + r
    gram = [[Q(0)] * dim for _ in range(dim)]
    gram[0][0] = Q(1)
    for i in range(1, dim):
        gram[i][i] = Q(-1)
    coord_labels = ["u0"]
    for arm, n in zip(ARM_NAMES, (p, q, r)):
        coord_labels += [f"{arm}.{k}" for k in range(n)]
    ambient = make_lattice(gram, labels=coord_labels)

    offs = _block_offsets(p, q, r)
    names: list[str] = ["z"]
    central = [Q(0)] * dim
    central[0] = Q(1)
    for arm in ARM_NAMES:
        central[offs[arm]] = Q(1)
    roots: list[Vector] = [tuple(central)]
    edges: set[tuple[str, str]] = set()
    for arm, n in zip(ARM_NAMES, (p, q, r)):
        prev = "z"
        for j in range(1, n):
            v = [Q(0)] * dim
            v[offs[arm] + j - 1] = Q(-1)
            v[offs[arm] + j] = Q(1)
            name = f"{arm}{j}"
            names.append(name)
            roots.append(tuple(v))
            edges.add(frozenset((prev, name)))
            prev = name

    for i, a in enumerate(roots):
        for j in range(i, len(roots)):
            got = inner(ambient, a, roots[j])
            if i == j:
                want = Q(-2)
            elif frozenset((names[i], names[j])) in edges:
                want = Q(1)
            else:
                want = Q(0)
            if got != want:
                raise ValueError(
                    f"gram invariant violated at ({names[i]}, {names[j]}): {got} != {want}"
                )
    return Ypqr(p=p, q=q, r=r, ambient=ambient, node_names=tuple(names), simple_roots=tuple(roots))


def weyl_signature(p: int, q: int, r: int) -> Signature:
    """Signature of the simple-root Gram matrix (size p+q+r-2)."""
    y = ypqr_roots(p, q, r)
    gram = [[inner(y.ambient, a, b) for b in y.simple_roots] for a in y.simple_roots]
    return signature(make_lattice(gram))


# ---------------------------------------------------------------------------
# Cores, free ends, and end-pair types
# ---------------------------------------------------------------------------

# Affine subdiagram templates, in selection priority order: each is the arm
# profile (vertex counts including the center) of the T-shaped diagram that
# must embed, smallest arm first.
_CORE_TEMPLATES = (("E6~", (3, 3, 3)), ("E7~", (2, 4, 4)), ("E8~", (2, 3, 6)))


@dataclass(frozen=True)
class CoreType:
    label: str
    roles: tuple[int, int, int]  # core arm-vertex counts for arms p, q, r
    nodes: tuple[str, ...]


def core_nodes(p: int, q: int, r: int) -> CoreType:
    """The highest-priority affine subdiagram sharing the central vertex.

    An arm profile (a,b,c) embeds iff it is dominated componentwise after
    sorting both profiles; ties among equal arms are broken by arm order, so
    the chosen node set is deterministic.
    """
    arms = ((p, "p"), (q, "q"), (r, "r"))
    order = sorted(arms)  # stable: by length, then arm name
    for label, template in _CORE_TEMPLATES:
        if all(have >= need for (have, _), need in zip(order, template)):
            roles = {arm: need for (_, arm), need in zip(order, template)}
            nodes = ["z"]
            for arm in ARM_NAMES:
                nodes += [f"{arm}{j}" for j in range(1, roles[arm])]
            return CoreType(
                label=label,
                roles=(roles["p"], roles["q"], roles["r"]),
                nodes=tuple(nodes),
            )
    raise ValueError(f"Y_{{{p},{q},{r}}} contains no affine core")


def free_ends(p: int, q: int, r: int) -> tuple[str, ...]:
    """Arms whose end node lies outside the core."""
    core = core_nodes(p, q, r)
    return tuple(
        arm for arm, n, role in zip(ARM_NAMES, (p, q, r), core.roles) if n > role
    )


@dataclass(frozen=True)
class ETypePair:
    """Ordered pair of free arm ends: the +1 end and the -1 end."""

    plus: str
    minus: str

    def __post_init__(self) -> None:
        if self.plus not in ARM_NAMES or self.minus not in ARM_NAMES:
            raise ValueError("arm names must be p, q, or r")
        if self.plus == self.minus:
            raise ValueError("the two ends must be distinct")

    def unordered(self) -> frozenset:
        return frozenset((self.plus, self.minus))

    def reversed(self) -> "ETypePair":
        return ETypePair(self.minus, self.plus)


def eset_types(p: int, q: int, r: int) -> list[ETypePair]:
    """All ordered pairs of distinct free ends (empty if fewer than two)."""
    free = free_ends(p, q, r)
    return [ETypePair(a, b) for a in free for b in free if a != b]


# ---------------------------------------------------------------------------
# Projection vectors and the alpha windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class YProjection:
    vector: Vector
    norm: Q
    cross_checked: bool


def _closed_form_projection(y: Ypqr, pair: ETypePair) -> Vector:
    lengths = y.arm_lengths
    other = next(a for a in ARM_NAMES if a not in (pair.plus, pair.minus))
    pl, mi, ot = lengths[pair.plus], lengths[pair.minus], lengths[other]
    denom = 1 - Q(1, pl) - Q(1, mi) - Q(1, ot)
    if denom == 0:
        raise ValueError("arm reciprocals sum to 1; projection undefined")
    a = (Q(1, pl) - Q(1, mi)) / denom
    b = (a + 1) / pl
    c = (a - 1) / mi
    d = a / ot
    dim = 1 + y.p + y.q + y.r
    out = [Q(0)] * dim
    out[0] = a
    offs = _block_offsets(y.p, y.q, y.r)
    fill = {pair.plus: (b, b - 1), pair.minus: (c, c + 1), other: (d, d)}
    for arm in ARM_NAMES:
        body, last = fill[arm]
        n = lengths[arm]
        for k in range(n):
            out[offs[arm] + k] = last if k == n - 1 else body
    return tuple(out)


@lru_cache(maxsize=None)
def y_projection(p: int, q: int, r: int, pair: ETypePair) -> YProjection:
    """The rational vector in the simple-root span pairing +1 with the end of
    one free arm, -1 with the end of another, and 0 with every other simple
    root — computed both by exact linear solving and by the closed form, with
    exact agreement required."""
    if pair not in eset_types(p, q, r):
        raise ValueError(f"({pair.plus}, {pair.minus}) is not a valid free-end pair")
    y = ypqr_roots(p, q, r)
    plus_node = y.end_node(pair.plus)
    minus_node = y.end_node(pair.minus)
    targets = []
    for name, root in zip(y.node_names, y.simple_roots):
        want = Q(1) if name == plus_node else Q(-1) if name == minus_node else Q(0)
        targets.append((root, want))
    solved = solve_gram(y.ambient, targets)
    closed = _closed_form_projection(y, pair)
    if solved != closed:
        raise RuntimeError("projection routes disagree: solver vs closed form")
    return YProjection(vector=closed, norm=inner(y.ambient, closed, closed), cross_checked=True)


def n_plus_2_closed_form(plus_len: int, minus_len: int, other_len: int) -> Q:
    """(1/p - 1/q)^2 / (1 - 1/p - 1/q - 1/r) + 1/p + 1/q, exactly."""
    denom = 1 - Q(1, plus_len) - Q(1, minus_len) - Q(1, other_len)
    if denom == 0:
        raise ValueError("arm reciprocals sum to 1; value undefined")
    return (Q(1, plus_len) - Q(1, minus_len)) ** 2 / denom + Q(1, plus_len) + Q(1, minus_len)


def n_plus_2(p: int, q: int, r: int, pair: ETypePair) -> Q:
    """2 + (norm of the projection vector), via both routes, and positive."""
    proj = y_projection(p, q, r, pair)
    direct = 2 + proj.norm
    lengths = {"p": p, "q": q, "r": r}
    other = next(a for a in ARM_NAMES if a not in (pair.plus, pair.minus))
    closed = n_plus_2_closed_form(lengths[pair.plus], lengths[pair.minus], lengths[other])
    if direct != closed:
        raise RuntimeError("norm routes disagree: direct vs closed form")
    if direct <= 0:
        raise RuntimeError(f"2+N = {direct} is not positive")
    return direct


def integers_strictly_between(lo: Q, hi: Q) -> set[int]:
    """{k in Z : lo < k < hi}, exact."""
    lo, hi = Q(lo), Q(hi)
    if hi <= lo:
        return set()
    return {k for k in range(math.floor(lo) + 1, math.ceil(hi)) if lo < k < hi}


def alpha_range_same_type(p: int, q: int, r: int, pair: ETypePair) -> set[int]:
    """Integers alpha admissible for two distinct vectors of the same type:
    the open window (-2, 2+2N)."""
    two_plus_n = n_plus_2(p, q, r, pair)
    return integers_strictly_between(Q(-2), 2 * two_plus_n - 2)


def alpha_range_cross_type(
    p: int, q: int, r: int, type1: ETypePair, type2: ETypePair
) -> set[int]:
    """Integers alpha for which the 2x2 form with diagonal -2-N_i and
    off-diagonal alpha - (projection product) is negative definite."""
    if type1.unordered() == type2.unordered():
        raise ValueError("types must be distinct (up to orientation)")
    proj1 = y_projection(p, q, r, type1)
    proj2 = y_projection(p, q, r, type2)
    n2_1 = n_plus_2(p, q, r, type1)
    n2_2 = n_plus_2(p, q, r, type2)
    y = ypqr_roots(p, q, r)
    prod = inner(y.ambient, proj1.vector, proj2.vector)
    bound = n2_1 * n2_2  # (alpha - prod)^2 must stay under this
    half = math.sqrt(float(bound))
    lo = math.floor(float(prod) - half) - 1
    hi = math.ceil(float(prod) + half) + 1
    return {a for a in range(lo, hi + 1) if (a - prod) ** 2 < bound}


# ---------------------------------------------------------------------------
# The enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SameTypeResult:
    pair: ETypePair
    alpha_set: tuple[int, ...]


@dataclass(frozen=True)
class CrossTypeResult:
    type1: ETypePair
    type2: ETypePair
    alpha_set: tuple[int, ...]


@dataclass(frozen=True)
class AlphaCase:
    p: int
    q: int
    r: int
    core: str
    free_ends: tuple[str, ...]
    same_pairs: tuple[SameTypeResult, ...]
    cross_pairs: tuple[CrossTypeResult, ...]


@dataclass(frozen=True)
class AlphaReport:
    max_sum: int
    cases: tuple[AlphaCase, ...]

    @property
    def all_alpha_one(self) -> bool:
        return all(
            all(cp.alpha_set == (1,) for cp in case.cross_pairs)
            and all(sp.alpha_set == () for sp in case.same_pairs)
            for case in self.cases
        )


def _chain_orient(t1: tuple[str, str], t2: tuple[str, str]) -> tuple[ETypePair, ETypePair]:
    """Orient two unordered types so the -1 end of the first is the +1 end of
    the second (they always share exactly one arm)."""
    shared = set(t1) & set(t2)
    if len(shared) != 1:
        raise ValueError("types do not share exactly one arm")
    s = shared.pop()
    first = next(a for a in t1 if a != s)
    second = next(a for a in t2 if a != s)
    return ETypePair(first, s), ETypePair(s, second)


def verify_alpha_one(max_sum: int = 22) -> AlphaReport:
    """Enumerate every arm profile p <= q <= r with 1/p+1/q+1/r < 1, total at
    most max_sum, an affine core, and at least two free ends; record the
    integer-alpha windows for every same-type pair and every cross-type pair
    (chain-oriented).  All arithmetic is exact."""
    cases = []
    for total in range(6, max_sum + 1):
        for p in range(2, total // 3 + 1):
            for q in range(p, (total - p) // 2 + 1):
                r = total - p - q
                if Q(1, p) + Q(1, q) + Q(1, r) >= 1:
                    continue
                try:
                    core = core_nodes(p, q, r)
                except ValueError:
                    continue
                free = free_ends(p, q, r)
                if len(free) < 2:
                    continue
                types = list(combinations(free, 2))
                same = tuple(
                    SameTypeResult(
                        pair=ETypePair(a, b),
                        alpha_set=tuple(sorted(alpha_range_same_type(p, q, r, ETypePair(a, b)))),
                    )
                    for a, b in types
                )
                cross = []
                for t1, t2 in combinations(types, 2):
                    o1, o2 = _chain_orient(t1, t2)
                    alpha = alpha_range_cross_type(p, q, r, o1, o2)
                    cross.append(
                        CrossTypeResult(type1=o1, type2=o2, alpha_set=tuple(sorted(alpha)))
                    )
                cases.append(
                    AlphaCase(
                        p=p,
                        q=q,
                        r=r,
                        core=core.label,
                        free_ends=free,
                        same_pairs=same,
                        cross_pairs=tuple(cross),
                    )
                )
    return AlphaReport(max_sum=max_sum, cases=tuple(cases))


def alpha_report_to_json(report: AlphaReport) -> list[dict]:
    return [
        {
            "p": case.p,
            "q": case.q,
            "r": case.r,
            "core": case.core,
            "free_ends": list(case.free_ends),
            "cross_pairs": [
                {
                    "types": [[cp.type1.plus, cp.type1.minus], [cp.type2.plus, cp.type2.minus]],
                    "alpha_set": list(cp.alpha_set),
                }
                for cp in case.cross_pairs
            ],
            "same_pairs": [
                {"type": [sp.pair.plus, sp.pair.minus], "alpha_set": list(sp.alpha_set)}
                for sp in case.same_pairs
            ],
        }
        for case in report.cases
    ]


# ---------------------------------------------------------------------------
# Quasihomogeneous weight checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DolgachevEntry:
    name: str
    monomials: tuple[tuple[int, int, int], ...]
    modulus_monomial: tuple[int, int, int]
    weights: tuple[int, int, int]
    degree: int
    pqr: tuple[int, int, int]


@dataclass(frozen=True)
class WeightsCheck:
    ok: bool
    monomial_degrees: tuple[int, ...]
    modulus_degree: int
    offending: tuple[tuple[tuple[int, int, int], int], ...]


def load_dolgachev_table() -> tuple[DolgachevEntry, ...]:
    doc = json.loads(
        resources.files("catchi").joinpath("data/quasihomogeneous_table.json").read_text()
    )
    return tuple(
        DolgachevEntry(
            name=row["name"],
            monomials=tuple(tuple(m) for m in row["monomials"]),
            modulus_monomial=tuple(row["modulus_monomial"]),
            weights=tuple(row["weights"]),
            degree=row["degree"],
            pqr=tuple(row["pqr"]),
        )
        for row in doc["rows"]
    )


def check_weights(entry: DolgachevEntry) -> WeightsCheck:
    """Every defining monomial must have weighted degree exactly the entry's
    degree; the modulus monomial must land strictly above it."""

    def wdeg(mono: Sequence[int]) -> int:
        if len(mono) != 3 or any(e < 0 for e in mono):
            raise ValueError(f"malformed exponents {mono!r}")
        return sum(w * e for w, e in zip(entry.weights, mono))

    degrees = tuple(wdeg(m) for m in entry.monomials)
    modulus_degree = wdeg(entry.modulus_monomial)
    offending = tuple(
        (m, d) for m, d in zip(entry.monomials, degrees) if d != entry.degree
    )
    if modulus_degree <= entry.degree:
        offending += ((entry.modulus_monomial, modulus_degree),)
    return WeightsCheck(
        ok=not offending,
        monomial_degrees=degrees,
        modulus_degree=modulus_degree,
        offending=offending,
    )


# ---------------------------------------------------------------------------
# Cycles and their duals
# ---------------------------------------------------------------------------

Cycle = tuple[int, ...]

RAW_TO_ZYKEL = "raw->zykel"
ZYKELSTAR_TO_D = "zykelstar->d"


def normalize_cycle(c: Sequence[int]) -> Cycle:
    """Lexicographically least rotation."""
    t = tuple(int(x) for x in c)
    if not t:
        raise ValueError("cycle must be nonempty")
    return min(t[i:] + t[:i] for i in range(len(t)))


def cycles_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) == len(b) and normalize_cycle(a) == normalize_cycle(b)


def adjust_cycle(c: Sequence[int], direction: str) -> Cycle:
    """Identity for length >= 2; single-entry cycles shift by +2 (raw->zykel)
    or -2 (zykelstar->d)."""
    t = tuple(int(x) for x in c)
    if not t:
        raise ValueError("cycle must be nonempty")
    if direction not in (RAW_TO_ZYKEL, ZYKELSTAR_TO_D):
        raise ValueError(f"unknown direction {direction!r}")
    if len(t) > 1:
        return t
    shifted = t[0] + (2 if direction == RAW_TO_ZYKEL else -2)
    if shifted < 1:
        raise ValueError(f"adjusted entry {shifted} < 1")
    return (shifted,)


def dual_cycle(c: Sequence[int]) -> Cycle:
    """Rotate to start at an entry >= 3, read off blocks (m+3, 2^k), and emit
    (k+3) followed by a run of 2s of the NEXT block's m, cyclically; the
    result is returned in least-rotation form."""
    t = tuple(int(x) for x in c)
    if not t:
        raise ValueError("cycle must be nonempty")
    if any(x < 2 for x in t):
        raise ValueError("dual requires all entries >= 2")
    start = next((i for i, x in enumerate(t) if x >= 3), None)
    if start is None:
        raise ValueError("all-2 cycle has no dual parse")
    rot = t[start:] + t[:start]
    blocks: list[tuple[int, int]] = []  # (m, run of 2s)
    j = 0
    while j < len(rot):
        m = rot[j] - 3
        j += 1
        k = 0
        while j < len(rot) and rot[j] == 2:
            k += 1
            j += 1
        blocks.append((m, k))
    out: list[int] = []
    for idx, (_, k) in enumerate(blocks):
        out.append(k + 3)
        out.extend([2] * blocks[(idx + 1) % len(blocks)][0])
    return normalize_cycle(out)


# ---------------------------------------------------------------------------
# The cusp-cycle table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CuspRow:
    p: int
    q: int
    r: int
    c: Cycle
    c_prime: Cycle
    d_prime: Cycle
    d: Cycle
    c_adjusted: bool  # the single-entry +2 shift fired between c and c'
    d_adjusted: bool  # the single-entry -2 shift fired between d' and d


_EXPR_RE = re.compile(r"([pqr])(?:([+-])(\d+))?\Z")


def _eval_entry(expr, env: dict[str, int]) -> int:
    if isinstance(expr, int):
        return expr
    m = _EXPR_RE.match(expr)
    if not m:
        raise ValueError(f"bad cycle expression {expr!r}")
    val = env[m.group(1)]
    if m.group(2):
        delta = int(m.group(3))
        val = val + delta if m.group(2) == "+" else val - delta
    return val


def _eval_cycle(items, env: dict[str, int]) -> Cycle:
    out: list[int] = []
    for item in items:
        if isinstance(item, list):
            tag, expr = item
            if tag != "twos":
                raise ValueError(f"bad cycle item {item!r}")
            n = _eval_entry(expr, env)
            if n < 0:
                raise ValueError(f"negative run length {n}")
            out.extend([2] * n)
        else:
            out.append(_eval_entry(item, env))
    if not out:
        raise ValueError("cycle formula produced an empty cycle")
    if any(x < 1 for x in out):
        raise ValueError(f"cycle formula produced an entry < 1: {out}")
    return tuple(out)


def load_cusp_table() -> list[dict]:
    doc = json.loads(
        resources.files("catchi").joinpath("data/cusp_cycle_table.json").read_text()
    )
    return doc["rows"]


def _match_family(pattern: list, p: int, q: int, r: int) -> bool:
    for pat, val in zip(pattern, (p, q, r)):
        if isinstance(pat, int) and pat != val:
            return False
    return True


def cusp_row(p: int, q: int, r: int) -> CuspRow:
    """Assemble (c, c', d', d) for the hyperbolic triple p <= q <= r: c from
    the stored family formulas (first matching row wins), then c' by the
    single-entry adjustment, d' by duality, d by the reverse adjustment.
    Every stored column is compared with the computed one, up to rotation."""
    if not (2 <= p <= q <= r):
        raise ValueError("need 2 <= p <= q <= r")
    if Q(1, p) + Q(1, q) + Q(1, r) >= 1:
        raise ValueError("need 1/p + 1/q + 1/r < 1")
    env = {"p": p, "q": q, "r": r}
    row = next(r_ for r_ in load_cusp_table() if _match_family(r_["pqr"], p, q, r))
    c = _eval_cycle(row["c"], env)
    c_prime = adjust_cycle(c, RAW_TO_ZYKEL)
    d_prime = dual_cycle(c_prime)
    d = adjust_cycle(d_prime, ZYKELSTAR_TO_D)
    stored = {
        "c_prime": c if row["c_prime"] == "left" else _eval_cycle(row["c_prime"], env),
        "d_prime": _eval_cycle(row["d_prime"], env),
    }
    stored["d"] = stored["d_prime"] if row["d"] == "left" else _eval_cycle(row["d"], env)
    for name, computed in (("c_prime", c_prime), ("d_prime", d_prime), ("d", d)):
        if not cycles_equal(computed, stored[name]):
            raise RuntimeError(
                f"cusp row ({p},{q},{r}) mismatch in {name}: "
                f"computed {computed}, stored {stored[name]}"
            )
    return CuspRow(
        p=p,
        q=q,
        r=r,
        c=normalize_cycle(c),
        c_prime=normalize_cycle(c_prime),
        d_prime=normalize_cycle(d_prime),
        d=normalize_cycle(d),
        c_adjusted=len(c) == 1,
        d_adjusted=len(d_prime) == 1,
    )
