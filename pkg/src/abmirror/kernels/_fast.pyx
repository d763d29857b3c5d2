# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``abmirror.kernels.pure``.

Implements the same three search kernels with the same canonical enumeration
order (values 0, 1, -1, 2, -2, ...; first coordinate fastest; first match
returned).  The dispatcher in ``abmirror.kernels`` only routes calls here when
every intermediate value provably fits in a machine word, so all arithmetic
below is plain C ``long long``.
"""

from libc.stdlib cimport malloc, free

cdef enum:
    MAX_RANK = 8
    HASH_SIZE = 4096  # power of two; chains verify full keys


cdef long long ll_gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline unsigned long long key_hash(long long k0, long long k1, long long k2) noexcept nogil:
    cdef unsigned long long h = (<unsigned long long> k0) * 73856093ULL
    h ^= (<unsigned long long> k1) * 19349663ULL
    h ^= (<unsigned long long> k2) * 83492791ULL
    return h & (HASH_SIZE - 1)


cdef int fill_values(long long* vals, int bound) noexcept nogil:
    """Canonical coordinate order: 0, 1, -1, 2, -2, ..."""
    cdef int m, idx = 0
    vals[idx] = 0
    idx += 1
    for m in range(1, bound + 1):
        vals[idx] = m
        idx += 1
        vals[idx] = -m
        idx += 1
    return idx


def find_vector_with_norm(gram, target, int bound):
    """First nonzero v in canonical order with v.G.v == target, else None."""
    cdef int n = len(gram)
    if n < 1 or n > MAX_RANK:
        raise ValueError("compiled kernel supports ranks 1..8")
    cdef long long t = target
    cdef long long G[MAX_RANK * MAX_RANK]
    cdef long long v[MAX_RANK]
    cdef int d[MAX_RANK]
    cdef int i, j, nvals
    cdef long long s, acc
    cdef long long* vals = <long long*> malloc(sizeof(long long) * (2 * bound + 1))
    if vals == NULL:
        raise MemoryError()
    try:
        nvals = fill_values(vals, bound)
        for i in range(n):
            for j in range(n):
                G[i * n + j] = gram[i][j]
            d[i] = 0
            v[i] = 0
        while True:
            i = 0
            while i < n:
                d[i] += 1
                if d[i] < nvals:
                    v[i] = vals[d[i]]
                    break
                d[i] = 0
                v[i] = 0
                i += 1
            if i == n:
                return None
            s = 0
            for i in range(n):
                if v[i] != 0:
                    acc = 0
                    for j in range(n):
                        acc += G[i * n + j] * v[j]
                    s += v[i] * acc
            if s == t:
                out = []
                for i in range(n):
                    out.append(v[i])
                return tuple(out)
    finally:
        free(vals)


def vectors_with_norm(gram, target, int bound):
    """All nonzero v in canonical order with v.G.v == target."""
    cdef int n = len(gram)
    if n < 1 or n > MAX_RANK:
        raise ValueError("compiled kernel supports ranks 1..8")
    cdef long long t = target
    cdef long long G[MAX_RANK * MAX_RANK]
    cdef long long v[MAX_RANK]
    cdef int d[MAX_RANK]
    cdef int i, j, nvals
    cdef long long s, acc
    found = []
    cdef long long* vals = <long long*> malloc(sizeof(long long) * (2 * bound + 1))
    if vals == NULL:
        raise MemoryError()
    try:
        nvals = fill_values(vals, bound)
        for i in range(n):
            for j in range(n):
                G[i * n + j] = gram[i][j]
            d[i] = 0
            v[i] = 0
        while True:
            i = 0
            while i < n:
                d[i] += 1
                if d[i] < nvals:
                    v[i] = vals[d[i]]
                    break
                d[i] = 0
                v[i] = 0
                i += 1
            if i == n:
                return found
            s = 0
            for i in range(n):
                if v[i] != 0:
                    acc = 0
                    for j in range(n):
                        acc += G[i * n + j] * v[j]
                    s += v[i] * acc
            if s == t:
                one = []
                for i in range(n):
                    one.append(v[i])
                found.append(tuple(one))
    finally:
        free(vals)


cdef bint family_primitive(long long ch[3][4], int r) noexcept nogil:
    """gcd of all r x r minors of the r x 4 row matrix equals 1."""
    cdef long long g = 0
    cdef int c0, c1, c2
    cdef long long m
    if r == 1:
        for c0 in range(4):
            g = ll_gcd(g, ch[0][c0])
            if g == 1:
                return True
        return g == 1
    if r == 2:
        for c0 in range(4):
            for c1 in range(c0 + 1, 4):
                m = ch[0][c0] * ch[1][c1] - ch[0][c1] * ch[1][c0]
                g = ll_gcd(g, m)
                if g == 1:
                    return True
        return g == 1
    for c0 in range(4):
        for c1 in range(c0 + 1, 4):
            for c2 in range(c1 + 1, 4):
                m = ch[0][c0] * (ch[1][c1] * ch[2][c2] - ch[1][c2] * ch[2][c1])
                m -= ch[0][c1] * (ch[1][c0] * ch[2][c2] - ch[1][c2] * ch[2][c0])
                m += ch[0][c2] * (ch[1][c0] * ch[2][c1] - ch[1][c1] * ch[2][c0])
                g = ll_gcd(g, m)
                if g == 1:
                    return True
    return g == 1


cdef void _build_slot(int slot, int H, long long* hp,
                      long long* k0, long long* k1, long long* k2,
                      int* nxt, int* heads, long long ch[3][4]) noexcept nogil:
    """Index all x-halves by (x-norm, pairing contributions to the chosen
    prefix vectors); chains preserve canonical x order."""
    cdef int base = slot * H
    cdef int hbase = slot * HASH_SIZE
    cdef int m, h
    cdef long long x1, x2
    for h in range(HASH_SIZE):
        heads[hbase + h] = -1
    for m in range(H - 1, -1, -1):  # prepend in reverse => ascending chains
        x1 = hp[2 * m]
        x2 = hp[2 * m + 1]
        k0[base + m] = 2 * x1 * x2
        k1[base + m] = (x1 * ch[0][1] + x2 * ch[0][0]) if slot >= 1 else 0
        k2[base + m] = (x1 * ch[1][1] + x2 * ch[1][0]) if slot >= 2 else 0
        h = <int> key_hash(k0[base + m], k1[base + m], k2[base + m])
        nxt[base + m] = heads[hbase + h]
        heads[hbase + h] = m


cdef bint _advance(int slot, int H, long long* hp,
                   long long* k0, long long* k1, long long* k2,
                   int* nxt, int* heads, long long T[3][3],
                   long long ch[3][4], int* y_idx, int* chain,
                   long long* need0, long long* need1, long long* need2,
                   long long* ycur0, long long* ycur1) noexcept nogil:
    """Step slot's candidate stream; fill ch[slot]; False when exhausted."""
    cdef int base = slot * H
    cdef int hbase = slot * HASH_SIZE
    cdef int m
    cdef long long yy1, yy2
    while True:
        m = chain[slot]
        while m >= 0:
            chain[slot] = nxt[base + m]
            if (k0[base + m] == need0[slot]
                    and k1[base + m] == need1[slot]
                    and k2[base + m] == need2[slot]):
                if (hp[2 * m] != 0 or hp[2 * m + 1] != 0
                        or ycur0[slot] != 0 or ycur1[slot] != 0):
                    ch[slot][0] = hp[2 * m]
                    ch[slot][1] = hp[2 * m + 1]
                    ch[slot][2] = ycur0[slot]
                    ch[slot][3] = ycur1[slot]
                    return True
            m = chain[slot]
        y_idx[slot] += 1
        if y_idx[slot] >= H:
            return False
        yy1 = hp[2 * y_idx[slot]]
        yy2 = hp[2 * y_idx[slot] + 1]
        ycur0[slot] = yy1
        ycur1[slot] = yy2
        need0[slot] = T[slot][slot] - 2 * yy1 * yy2
        need1[slot] = (T[slot][0] - (yy1 * ch[0][3] + yy2 * ch[0][2])) if slot >= 1 else 0
        need2[slot] = (T[slot][1] - (yy1 * ch[1][3] + yy2 * ch[1][2])) if slot >= 2 else 0
        chain[slot] = heads[hbase + <int> key_hash(need0[slot], need1[slot], need2[slot])]


def find_primitive_embedding(target, int bound):
    """Rank <= 3 twin of pure.find_primitive_embedding (same order)."""
    cdef int r = len(target)
    if r < 1 or r > 3:
        raise ValueError("compiled kernel supports ranks 1..3")

    cdef int nvals = 2 * bound + 1
    cdef int H = nvals * nvals
    cdef int i, j, m, pi, qi, slot

    cdef long long* hp = <long long*> malloc(sizeof(long long) * 2 * H)
    cdef long long* vals = <long long*> malloc(sizeof(long long) * nvals)
    cdef long long* k0 = <long long*> malloc(sizeof(long long) * 3 * H)
    cdef long long* k1 = <long long*> malloc(sizeof(long long) * 3 * H)
    cdef long long* k2 = <long long*> malloc(sizeof(long long) * 3 * H)
    cdef int* nxt = <int*> malloc(sizeof(int) * 3 * H)
    cdef int* heads = <int*> malloc(sizeof(int) * 3 * HASH_SIZE)
    if (hp == NULL or vals == NULL or k0 == NULL or k1 == NULL or k2 == NULL
            or nxt == NULL or heads == NULL):
        free(hp); free(vals); free(k0); free(k1); free(k2); free(nxt); free(heads)
        raise MemoryError()

    cdef long long T[3][3]
    cdef long long ch[3][4]
    cdef int y_idx[3]
    cdef int chain[3]
    cdef long long need0[3]
    cdef long long need1[3]
    cdef long long need2[3]
    cdef long long ycur0[3]
    cdef long long ycur1[3]
    cdef bint stepped

    try:
        fill_values(vals, bound)
        m = 0
        for qi in range(nvals):
            for pi in range(nvals):
                hp[2 * m] = vals[pi]      # first member varies fastest
                hp[2 * m + 1] = vals[qi]
                m += 1
        for i in range(r):
            for j in range(r):
                T[i][j] = target[i][j]

        slot = 0
        _build_slot(slot, H, hp, k0, k1, k2, nxt, heads, ch)
        y_idx[slot] = -1
        chain[slot] = -1

        while True:
            stepped = _advance(slot, H, hp, k0, k1, k2, nxt, heads,
                               T, ch, y_idx, chain, need0, need1, need2,
                               ycur0, ycur1)
            if stepped:
                if slot + 1 == r:
                    if family_primitive(ch, r):
                        images = []
                        for i in range(r):
                            images.append((ch[i][0], ch[i][1], ch[i][2], ch[i][3]))
                        return tuple(images)
                else:
                    slot += 1
                    _build_slot(slot, H, hp, k0, k1, k2, nxt, heads, ch)
                    y_idx[slot] = -1
                    chain[slot] = -1
            else:
                slot -= 1
                if slot < 0:
                    return None
    finally:
        free(hp); free(vals); free(k0); free(k1); free(k2); free(nxt); free(heads)
