"""Pure-Python kernel: hot primitives shared with the compiled backend.

Both backends must produce bit-identical results; the parity test suite
enforces this.  Rank vectors are tuples indexed by world, world sets are
integer bitmasks, operator kinds are the codes 0 (type-1 decrement),
1 (type-2 decrement), 2 (instant contraction).

DR constraint bits for dr_satisfied:
  1 DR8, 2 DR9, 4 DR10, 8 DR11, 16 DR12, 32 DR13, 64 DR14, 128 DR15
"""

from __future__ import annotations

BACKEND = "python"

KIND_TYPE1 = 0
KIND_TYPE2 = 1
KIND_INSTANT = 2

MAX_UNIVERSE = 8


def weak_order_ranks(n: int):
    """Yield every compressed rank vector on n worlds, lexicographically.

    A valid vector occupies exactly the ranks 0..k for some k; the stream
    counts match the ordered-set-partition (Fubini) numbers.
    """
    if not 1 <= n <= MAX_UNIVERSE:
        raise ValueError(f"universe size {n} outside 1..{MAX_UNIVERSE}")
    vec = [0] * n

    def rec(i: int, used: int, top: int):
        if i == n:
            yield tuple(vec)
            return
        budget = n - i - 1
        for v in range(n):
            new_used = used | (1 << v)
            new_top = v if v > top else top
            gaps = bin(((1 << (new_top + 1)) - 1) & ~new_used).count("1")
            if gaps <= budget:
                vec[i] = v
                yield from rec(i + 1, new_used, new_top)

    yield from rec(0, 0, -1)


def compress_keys(keys) -> tuple:
    """Rank vector order-isomorphic to the key sequence, ranks from 0."""
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return tuple(order[k] for k in keys)


def frontal_bits(ranks, amask: int) -> int:
    """Mask of counter-worlds of alpha that are frontal in the order.

    A counter-world is frontal when no alpha-world sits one layer below it
    and no counter-world sits one layer above it.
    """
    n = len(ranks)
    full = (1 << n) - 1
    amask &= full
    out = 0
    for w in range(n):
        if (amask >> w) & 1:
            continue
        r = ranks[w]
        ok = True
        for w2 in range(n):
            r2 = ranks[w2]
            in_a = (amask >> w2) & 1
            if in_a and r2 == r - 1:
                ok = False
                break
            if not in_a and r2 == r + 1:
                ok = False
                break
        if ok:
            out |= 1 << w
    return out


def step_ranks(ranks, amask: int, kind: int) -> tuple:
    """One operator step on a rank vector.

    Identity when alpha is a tautology over the universe or is not believed
    (some rank-0 world is a counter-world).  Otherwise:

    * type-1: alpha-world at rank r keeps key 2r, counter-world gets 2r-2;
    * type-2: frontal counter-worlds keep key 2r instead of dropping;
    * instant: rank-0 worlds plus the minimal counter-worlds form the new
      bottom layer, everything else keeps its old rank shifted up by one.

    The resulting keys are compressed back to consecutive ranks.
    """
    n = len(ranks)
    full = (1 << n) - 1
    amask &= full
    ranks = tuple(ranks)
    bel = 0
    for w in range(n):
        if ranks[w] == 0:
            bel |= 1 << w
    if amask == full:
        return ranks
    if bel & ~amask:
        return ranks
    if kind == KIND_INSTANT:
        namask = full & ~amask
        min_rank = min(ranks[w] for w in range(n) if (namask >> w) & 1)
        promoted = bel
        for w in range(n):
            if (namask >> w) & 1 and ranks[w] == min_rank:
                promoted |= 1 << w
        keys = [0 if (promoted >> w) & 1 else ranks[w] + 1 for w in range(n)]
        return compress_keys(keys)
    if kind not in (KIND_TYPE1, KIND_TYPE2):
        raise ValueError(f"unknown operator kind code {kind}")
    frontal = frontal_bits(ranks, amask) if kind == KIND_TYPE2 else 0
    keys = []
    for w in range(n):
        r = ranks[w]
        if (amask >> w) & 1:
            keys.append(2 * r)
        elif (frontal >> w) & 1:
            keys.append(2 * r)
        else:
            keys.append(2 * r - 2)
    return compress_keys(keys)


def dr_satisfied(before, after, amask: int, cmask: int) -> bool:
    """Check the selected DR constraints between two rank vectors.

    The constraints are evaluated literally against the earlier order and
    the candidate successor, with no restriction on whether alpha was
    believed.
    """
    n = len(before)
    full = (1 << n) - 1
    amask &= full
    frontal = frontal_bits(before, amask) if cmask & 128 else 0
    for w1 in range(n):
        a1 = (amask >> w1) & 1
        b1 = before[w1]
        f1 = after[w1]
        for w2 in range(n):
            a2 = (amask >> w2) & 1
            b2 = before[w2]
            f2 = after[w2]
            if a1 and a2:
                if cmask & 1 and (b1 <= b2) != (f1 <= f2):
                    return False
            elif not a1 and not a2:
                if cmask & 2 and (b1 <= b2) != (f1 <= f2):
                    return False
            elif not a1 and a2:
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
