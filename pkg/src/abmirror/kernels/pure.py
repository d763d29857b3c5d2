"""Pure-Python search kernels (reference implementation).

A compiled twin of this module lives in ``_fast.pyx``; both implement exactly
the same canonical enumeration order so witnesses are deterministic and
backend-independent:

* coordinate values are ordered 0, 1, -1, 2, -2, ..., bound, -bound;
* tuples are enumerated with the FIRST coordinate varying fastest;
* the first match in that order is returned.

Everything here is arbitrary-precision (plain Python ints); the compiled twin
is routed to only when values provably fit machine words.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd
from typing import Iterator, Optional, Sequence

# Gram matrix of U + U in the fixed ambient basis e1,f1,e2,f2.
AMBIENT_GRAM = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


def canonical_values(bound: int) -> list[int]:
    """Coordinate values in canonical order: 0, 1, -1, 2, -2, ..."""
    vals = [0]
    for m in range(1, bound + 1):
        vals.append(m)
        vals.append(-m)
    return vals


def iter_box(rank: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All coordinate tuples in canonical order (first coordinate fastest)."""
    vals = canonical_values(bound)
    for rev in product(vals, repeat=rank):
        yield rev[::-1]


def norm_of(gram: Sequence[Sequence[int]], v: Sequence[int]) -> int:
    total = 0
    n = len(v)
    for i in range(n):
        vi = v[i]
        if vi:
            row = gram[i]
            s = 0
            for j in range(n):
                s += row[j] * v[j]
            total += vi * s
    return total


def pairing_of(
    gram: Sequence[Sequence[int]], v: Sequence[int], w: Sequence[int]
) -> int:
    total = 0
    n = len(v)
    for i in range(n):
        vi = v[i]
        if vi:
            row = gram[i]
            s = 0
            for j in range(n):
                s += row[j] * w[j]
            total += vi * s
    return total


def find_vector_with_norm(
    gram: Sequence[Sequence[int]], target: int, bound: int
) -> Optional[tuple[int, ...]]:
    """First nonzero v in canonical order with v.G.v == target, else None."""
    for v in iter_box(len(gram), bound):
        if any(v) and norm_of(gram, v) == target:
            return v
    return None


def vectors_with_norm(
    gram: Sequence[Sequence[int]], target: int, bound: int
) -> list[tuple[int, ...]]:
    """All nonzero v in canonical order with v.G.v == target."""
    return [v for v in iter_box(len(gram), bound) if any(v) and norm_of(gram, v) == target]


# ---------------------------------------------------------------------------
# Primitive embeddings into U + U.
#
# Ambient vectors w = (x1, x2, y1, y2) split into hyperbolic halves x, y with
#   norm(w)     = 2 x1 x2 + 2 y1 y2
#   pair(w, v)  = x1 b + x2 a + y1 d + y2 c      for v = (a, b, c, d).
# Candidates for one image slot are streamed in canonical order by iterating
# the y-half (slow coordinates) outermost and probing a per-slot index of
# x-halves keyed by (x-norm, x-pairing contributions) — this visits exactly
# the canonical order while skipping incompatible vectors wholesale.
# ---------------------------------------------------------------------------


def _half_pairs(bound: int) -> list[tuple[int, int]]:
    vals = canonical_values(bound)
    return [(p, q) for q in vals for p in vals]  # first member varies fastest


def ambient_norm(w: Sequence[int]) -> int:
    return 2 * (w[0] * w[1] + w[2] * w[3])


def ambient_pairing(w: Sequence[int], v: Sequence[int]) -> int:
    return w[0] * v[1] + w[1] * v[0] + w[2] * v[3] + w[3] * v[2]


def _slot_stream(
    prefix: Sequence[tuple[int, ...]],
    t_norm: int,
    t_pairs: Sequence[int],
    halves: Sequence[tuple[int, int]],
) -> Iterator[tuple[int, int, int, int]]:
    """Ambient vectors w, in canonical order, with norm(w) == t_norm and
    pair(w, prefix[j]) == t_pairs[j] for all j."""
    pre_x = [(v[0], v[1]) for v in prefix]
    pre_y = [(v[2], v[3]) for v in prefix]
    xmap: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for x in halves:
        key = (2 * x[0] * x[1],) + tuple(x[0] * b + x[1] * a for (a, b) in pre_x)
        xmap.setdefault(key, []).append(x)
    for y in halves:
        need = (t_norm - 2 * y[0] * y[1],) + tuple(
            t_pairs[j] - (y[0] * d + y[1] * c) for j, (c, d) in enumerate(pre_y)
        )
        for x in xmap.get(need, ()):
            if x[0] or x[1] or y[0] or y[1]:
                yield (x[0], x[1], y[0], y[1])


def _minor_det(rows: Sequence[Sequence[int]], cols: Sequence[int]) -> int:
    r = len(rows)
    if r == 1:
        return rows[0][cols[0]]
    if r == 2:
        return (
            rows[0][cols[0]] * rows[1][cols[1]]
            - rows[0][cols[1]] * rows[1][cols[0]]
        )
    if r == 3:
        (c0, c1, c2) = cols
        return (
            rows[0][c0] * (rows[1][c1] * rows[2][c2] - rows[1][c2] * rows[2][c1])
            - rows[0][c1] * (rows[1][c0] * rows[2][c2] - rows[1][c2] * rows[2][c0])
            + rows[0][c2] * (rows[1][c0] * rows[2][c1] - rows[1][c1] * rows[2][c0])
        )
    # r == 4: expand along the first row
    total = 0
    sign = 1
    for pos in range(4):
        sub = [c for i, c in enumerate(cols) if i != pos]
        total += sign * rows[0][cols[pos]] * _minor_det(rows[1:], sub)
        sign = -sign
    return total


def is_primitive_family(rows: Sequence[Sequence[int]]) -> bool:
    """True iff the rows span a primitive (saturated) sublattice of Z^4,
    i.e. the gcd of all maximal minors is 1."""
    r = len(rows)
    g = 0
    for cols in combinations(range(len(rows[0])), r):
        g = gcd(g, _minor_det(rows, cols))
        if g == 1:
            return True
    return False


def find_primitive_embedding(
    target: Sequence[Sequence[int]], bound: int
) -> Optional[tuple[tuple[int, ...], ...]]:
    """First (canonical order, depth-first) primitive family of vectors in
    U + U whose Gram matrix equals ``target``; None if the box is exhausted.
    """
    r = len(target)
    halves = _half_pairs(bound)
    chosen: list[tuple[int, ...]] = []

    def extend(i: int) -> Optional[tuple[tuple[int, ...], ...]]:
        t_pairs = [target[i][j] for j in range(i)]
        for w in _slot_stream(chosen, target[i][i], t_pairs, halves):
            chosen.append(w)
            if i + 1 == r:
                if is_primitive_family(chosen):
                    return tuple(chosen)
            else:
                found = extend(i + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return extend(0)
