# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: mirrors _pykernel exactly (see its docstring).

The parity test suite asserts bit-identical behaviour between backends.
Universe sizes are capped at 8 worlds, so fixed C buffers suffice.
"""

BACKEND = "c"

KIND_TYPE1 = 0
KIND_TYPE2 = 1
KIND_INSTANT = 2

MAX_UNIVERSE = 8


cdef inline int _popcount(int x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def weak_order_ranks(int n):
    """Yield every compressed rank vector on n worlds, lexicographically."""
    if not 1 <= n <= MAX_UNIVERSE:
        raise ValueError(f"universe size {n} outside 1..{MAX_UNIVERSE}")
    cdef int[8] vec
    cdef int[9] used
    cdef int[9] top
    cdef int[9] cand
    cdef int i = 0, v, new_used, new_top, gaps
    cdef bint advanced
    used[0] = 0
    top[0] = -1
    cand[0] = 0
    while i >= 0:
        if i == n:
            yield tuple([vec[k] for k in range(n)])
            i -= 1
            continue
        advanced = False
        v = cand[i]
        while v < n:
            new_used = used[i] | (1 << v)
            new_top = v if v > top[i] else top[i]
            gaps = _popcount(((1 << (new_top + 1)) - 1) & ~new_used)
            if gaps <= n - i - 1:
                vec[i] = v
                cand[i] = v + 1
                used[i + 1] = new_used
                top[i + 1] = new_top
                cand[i + 1] = 0
                i += 1
                advanced = True
                break
            v += 1
        if not advanced:
            i -= 1


def compress_keys(keys):
    """Rank vector order-isomorphic to the key sequence, ranks from 0."""
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return tuple([order[k] for k in keys])


cdef int _load_ranks(object ranks, int* buf) except -1:
    cdef int n = len(ranks)
    cdef int w
    if n > MAX_UNIVERSE:
        raise ValueError(f"universe size {n} outside 1..{MAX_UNIVERSE}")
    for w in range(n):
        buf[w] = ranks[w]
    return n


cdef int _frontal_bits_c(int* ranks, int n, int amask):
    cdef int out = 0, w, w2, r, r2
    cdef bint ok
    for w in range(n):
        if (amask >> w) & 1:
            continue
        r = ranks[w]
        ok = True
        for w2 in range(n):
            r2 = ranks[w2]
            if ((amask >> w2) & 1) and r2 == r - 1:
                ok = False
                break
            if not ((amask >> w2) & 1) and r2 == r + 1:
                ok = False
                break
        if ok:
            out |= 1 << w
    return out


def frontal_bits(ranks, int amask):
    """Mask of counter-worlds of alpha that are frontal in the order."""
    cdef int[8] buf
    cdef int n = _load_ranks(ranks, buf)
    return _frontal_bits_c(buf, n, amask & ((1 << n) - 1))


cdef tuple _compress_ints(int* keys, int n):
    # insertion sort of the distinct key values; n <= 8
    cdef int[8] distinct
    cdef int nd = 0, i, j, k, v
    cdef bint seen
    for i in range(n):
        v = keys[i]
        seen = False
        for j in range(nd):
            if distinct[j] == v:
                seen = True
                break
        if not seen:
            j = nd
            while j > 0 and distinct[j - 1] > v:
                distinct[j] = distinct[j - 1]
                j -= 1
            distinct[j] = v
            nd += 1
    out = []
    for i in range(n):
        v = keys[i]
        for j in range(nd):
            if distinct[j] == v:
                out.append(j)
                break
    return tuple(out)


def step_ranks(ranks, int amask, int kind):
    """One operator step on a rank vector; see the pure backend docstring."""
    cdef int[8] buf
    cdef int[8] keys
    cdef int n = _load_ranks(ranks, buf)
    cdef int full = (1 << n) - 1
    cdef int w, bel = 0, min_rank, promoted, frontal, r
    amask &= full
    for w in range(n):
        if buf[w] == 0:
            bel |= 1 << w
    if amask == full:
        return tuple(ranks)
    if bel & ~amask:
        return tuple(ranks)
    if kind == KIND_INSTANT:
        min_rank = n + 1
        for w in range(n):
            if not ((amask >> w) & 1) and buf[w] < min_rank:
                min_rank = buf[w]
        promoted = bel
        for w in range(n):
            if not ((amask >> w) & 1) and buf[w] == min_rank:
                promoted |= 1 << w
        for w in range(n):
            keys[w] = 0 if (promoted >> w) & 1 else buf[w] + 1
        return _compress_ints(keys, n)
    if kind != KIND_TYPE1 and kind != KIND_TYPE2:
        raise ValueError(f"unknown operator kind code {kind}")
    frontal = _frontal_bits_c(buf, n, amask) if kind == KIND_TYPE2 else 0
    for w in range(n):
        r = buf[w]
        if (amask >> w) & 1:
            keys[w] = 2 * r
        elif (frontal >> w) & 1:
            keys[w] = 2 * r
        else:
            keys[w] = 2 * r - 2
    return _compress_ints(keys, n)


def dr_satisfied(before, after, int amask, int cmask):
    """Check the selected DR constraints between two rank vectors."""
    cdef int[8] b
    cdef int[8] f
    cdef int n = _load_ranks(before, b)
    cdef int n2 = _load_ranks(after, f)
    cdef int full = (1 << n) - 1
    cdef int w1, w2, a1, a2, b1, b2, f1, f2, frontal = 0
    amask &= full
    if cmask & 128:
        frontal = _frontal_bits_c(b, n, amask)
    for w1 in range(n):
        a1 = (amask >> w1) & 1
        b1 = b[w1]
        f1 = f[w1]
        for w2 in range(n):
            a2 = (amask >> w2) & 1
            b2 = b[w2]
            f2 = f[w2]
            if a1 and a2:
                if cmask & 1 and (b1 <= b2) != (f1 <= f2):
                    return False
            elif (not a1) and (not a2):
                if cmask & 2 and (b1 <= b2) != (f1 <= f2):
                    return False
            elif (not a1) and a2:
                if cmask & 4 and b1 <= b2 and not f1 <= f2:
                    return False
                if cmask & 8 and b1 < b2 and not f1 < f2:
                    return False
                if cmask & 16 and b1 == b2 + 1 and not f1 <= f2:
                    return False
                if cmask & 32 and b2 == 0 and not f2 <= f1:
                    return False
                if cmask & 64 and b1 == b2 and f2 != f1 + 1:
                    return False
                if cmask & 128 and b1 == b2 and (frontal >> w1) & 1 and f1 != f2:
                    return False
    return True
