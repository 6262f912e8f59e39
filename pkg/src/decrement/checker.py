"""Exhaustive and sampled verification of belief-change postulates.

Every named condition is evaluated against an operator kind by brute
force: states range over all total preorders of the universe, formulas
over all semantic classes (world sets), worlds over the universe.  The
sampled mode draws cases from the same spaces with a seeded generator, so
identical inputs always produce identical reports.

Failures are reported with replayable counterexamples, smallest first
(fewest layers, then lexicographic layer encoding).  Case spaces can be
partitioned across worker processes; partitioning never changes output.

Postulate families:

* C1..C7     one-shot contraction conditions, evaluated on the achieve
             operator (n-fold step until the belief drops);
* D1..D13    decrement conditions on step/achieve, including the iteration
             conditions D8..D13;
* DR8..DR15  successor-order conditions for a single step, evaluated on
             steps whose input state believes alpha;
* SFA1..SFA3 assignment conditions (faithfulness and syntax independence);
* Hesitance, DecrementSuccess, PartialSuccess, Lemma1, Lemma3
             success and support conditions;
* IC1..IC4   iterated-contraction order conditions on achieve.
"""

from __future__ import annotations

import enum
import heapq
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice
from typing import Iterable, Iterator, Sequence, Union

from decrement import _kernel
from decrement.logic import (
    Formula,
    Not,
    Signature,
    formula_from_worldset,
    models,
    world_to_bits,
    worldset_from_bits,
    worldset_to_bits,
    world_from_bits,
)
from decrement.operators import (
    OperatorKind,
    _bel_mask,
    _min_rank_mask,
    achieve,
    achieve_bel,
    achieve_ranks,
    giveup_leq_masks,
    giveup_ll_masks,
    giveup_lt_masks,
    induced_ranks,
    step,
    step_ranks,
    NotPreorderError,
)
from decrement.preorder import TotalPreorder, UniverseTooLargeError
from decrement.state import EpistemicState, belief_models

COUNTEREXAMPLE_CAP = 5

CHECKER_MAX_ATOMS = 3
CHECKER_MAX_ATOMS_MULTIFORMULA = 2


class DomainTooLargeError(ValueError):
    """Requested quantification domain exceeds the exhaustive-search caps."""


class PostulateId(enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    D7 = "D7"
    D8 = "D8"
    D9 = "D9"
    D10 = "D10"
    D11 = "D11"
    D12 = "D12"
    D13 = "D13"
    DR8 = "DR8"
    DR9 = "DR9"
    DR10 = "DR10"
    DR11 = "DR11"
    DR12 = "DR12"
    DR13 = "DR13"
    DR14 = "DR14"
    DR15 = "DR15"
    SFA1 = "SFA1"
    SFA2 = "SFA2"
    SFA3 = "SFA3"
    HESITANCE = "Hesitance"
    DECREMENT_SUCCESS = "DecrementSuccess"
    PARTIAL_SUCCESS = "PartialSuccess"
    LEMMA1 = "Lemma1"
    LEMMA3 = "Lemma3"
    IC1 = "IC1"
    IC2 = "IC2"
    IC3 = "IC3"
    IC4 = "IC4"


ALL_POSTULATES: tuple[PostulateId, ...] = tuple(PostulateId)

# Postulates quantifying over more than one formula class (or over the
# give-up direct-successor relation, which itself quantifies a class).
MULTI_FORMULA = frozenset(
    {
        PostulateId.C5,
        PostulateId.C6,
        PostulateId.C7,
        PostulateId.D5,
        PostulateId.D6,
        PostulateId.D7,
        PostulateId.D8,
        PostulateId.D9,
        PostulateId.D10,
        PostulateId.D11,
        PostulateId.D12,
        PostulateId.SFA3,
        PostulateId.LEMMA3,
    }
)

# Single-step successor conditions, checked on steps that believe alpha.
DR_POSTULATES = frozenset(
    {
        PostulateId.DR8,
        PostulateId.DR9,
        PostulateId.DR10,
        PostulateId.DR11,
        PostulateId.DR12,
        PostulateId.DR13,
        PostulateId.DR14,
        PostulateId.DR15,
    }
)

_DR_BITS = {
    PostulateId.DR8: 1,
    PostulateId.DR9: 2,
    PostulateId.DR10: 4,
    PostulateId.DR11: 8,
    PostulateId.DR12: 16,
    PostulateId.DR13: 32,
    PostulateId.DR14: 64,
    PostulateId.DR15: 128,
}

# Total preorder counts per universe size, used only to partition work.
_WEAK_ORDER_COUNTS = (1, 1, 3, 13, 75, 541, 4683, 47293, 545835)


@dataclass(frozen=True)
class Exhaustive:
    kind: str = field(default="exhaustive", init=False)

    def describe(self, n_atoms: int) -> str:
        return f"exhaustive |Σ|={n_atoms}"


@dataclass(frozen=True)
class Sample:
    seed: int
    count: int

    kind: str = field(default="sample", init=False)

    def describe(self, n_atoms: int) -> str:
        return f"sample(seed={self.seed},count={self.count}) |Σ|={n_atoms}"


EXHAUSTIVE = Exhaustive()

Mode = Union[Exhaustive, Sample]


@dataclass
class CheckReport:
    """Outcome of one postulate check against one operator kind."""

    postulate: str
    operator: str
    domain: str
    outcome: str
    cases: int
    counterexamples: list[dict]

    def to_doc(self) -> dict:
        return {
            "postulate": self.postulate,
            "operator": self.operator,
            "domain": self.domain,
            "outcome": self.outcome,
            "cases": self.cases,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, ensure_ascii=False) + "\n"


@dataclass
class ConformanceMatrix:
    """One report per requested (operator, postulate) pair, stable order."""

    atoms: tuple[str, ...]
    mode: str
    operators: tuple[str, ...]
    postulates: tuple[str, ...]
    reports: list[CheckReport]

    def report_for(self, kind: OperatorKind, postulate: PostulateId) -> CheckReport:
        for rep in self.reports:
            if rep.operator == kind.value and rep.postulate == postulate.value:
                return rep
        raise KeyError((kind, postulate))

    def failures(self) -> list[CheckReport]:
        return [r for r in self.reports if r.outcome == "fail"]

    def to_doc(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "mode": self.mode,
            "operators": list(self.operators),
            "postulates": list(self.postulates),
            "reports": [r.to_doc() for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, ensure_ascii=False) + "\n"


# --- case evaluation ---------------------------------------------------------
#
# A case is (ranks, formulas, worlds) with formulas and worlds as small
# dicts of masks/world indices.  Evaluators return (ok, witness) where the
# witness names worlds that exhibit the violation.  Replay re-runs the same
# evaluator on the reported case.

_CANON_ATOMS = "abcdefghijklmnopqrstuvwxyz"


@lru_cache(maxsize=8)
def _canon_sig(n_atoms: int) -> Signature:
    return Signature(_CANON_ATOMS[:n_atoms])


def _layers_of(ranks: tuple) -> list[int]:
    out = [0] * (max(ranks) + 1)
    for w, r in enumerate(ranks):
        out[r] |= 1 << w
    return out


def _subset(x: int, y: int) -> bool:
    return x & ~y == 0


def _reps(mask: int, sig: Signature) -> tuple[Formula, Formula]:
    """Two syntactically different representatives of a semantic class."""
    f = formula_from_worldset(mask, sig)
    return f, Not(Not(f))


def _state_of(ranks: tuple, sig: Signature) -> EpistemicState:
    return EpistemicState(sig, TotalPreorder(ranks))


def _evaluate(
    kind: OperatorKind,
    pid: PostulateId,
    ranks: tuple,
    formulas: dict[str, int],
    worlds: dict[str, int],
    n_atoms: int,
) -> tuple[bool, dict[str, int]]:
    """Evaluate one postulate instance; True means the case conforms."""
    code = kind.code
    n = len(ranks)
    full = (1 << n) - 1
    bel = _bel_mask(ranks)
    a = formulas.get("alpha")

    if pid is PostulateId.C1 or pid is PostulateId.D1:
        return _subset(bel, achieve_bel(ranks, a, code)), {}

    if pid is PostulateId.C2 or pid is PostulateId.D2:
        if bel & ~a:
            return _subset(achieve_bel(ranks, a, code), bel), {}
        return True, {}

    if pid is PostulateId.C3:
        if a == full:
            return True, {}
        return not _subset(achieve_bel(ranks, a, code), a), {}

    if pid is PostulateId.C4 or pid is PostulateId.D4:
        return _subset(achieve_bel(ranks, a, code) & a, bel), {}

    if pid is PostulateId.C5:
        sig = _canon_sig(n_atoms)
        st = _state_of(ranks, sig)
        f1, f2 = _reps(a, sig)
        m1 = belief_models(achieve(st, f1, kind).state)
        m2 = belief_models(achieve(st, f2, kind).state)
        return m1 == m2, {}

    if pid is PostulateId.C6 or pid is PostulateId.D6:
        b = formulas["beta"]
        lhs = achieve_bel(ranks, a & b, code)
        return _subset(lhs, achieve_bel(ranks, a, code) | achieve_bel(ranks, b, code)), {}

    if pid is PostulateId.C7 or pid is PostulateId.D7:
        b = formulas["beta"]
        mab = achieve_bel(ranks, a & b, code)
        if mab & ~b:
            return _subset(achieve_bel(ranks, b, code), mab), {}
        return True, {}

    if pid is PostulateId.D3 or pid is PostulateId.HESITANCE:
        if a == full:
            return True, {}
        cur = ranks
        for _ in range(max(ranks) + 2):
            if _bel_mask(cur) & ~a:
                return True, {}
            cur = step_ranks(cur, a, code)
        return False, {}

    if pid is PostulateId.D5 or pid is PostulateId.SFA3:
        sig = _canon_sig(n_atoms)
        st = _state_of(ranks, sig)
        reps1 = _reps(formulas["alpha1"], sig)
        reps2 = _reps(formulas["alpha2"], sig)
        ref = None
        for f1 in reps1:
            for f2 in reps2:
                out = step(step(st, f1, kind), f2, kind)
                key = out.order.ranks if pid is PostulateId.SFA3 else belief_models(out)
                if ref is None:
                    ref = key
                elif key != ref:
                    return False, {}
        d1 = {step(st, f1, kind).order.ranks for f1 in reps1}
        if pid is PostulateId.SFA3:
            return len(d1) == 1, {}
        return len({_bel_mask(r) for r in d1}) == 1, {}

    if pid is PostulateId.D8:
        b = formulas["beta"]
        after = step_ranks(ranks, a, code)
        m1 = achieve_bel(after, b, code)
        m2 = achieve_bel(ranks, b, code)
        return (m1 ^ m2) & a == 0, {}

    if pid is PostulateId.D9:
        b = formulas["beta"]
        after = step_ranks(ranks, a, code)
        m1 = achieve_bel(after, b, code)
        m2 = achieve_bel(ranks, b, code)
        return (m1 ^ m2) & (full & ~b) == 0, {}

    if pid is PostulateId.D10:
        b = formulas["beta"]
        g = formulas["gamma"]
        after = step_ranks(ranks, a, code)
        if _subset(achieve_bel(after, b, code), g):
            return _subset(achieve_bel(ranks, b, code), g), {}
        return True, {}

    if pid is PostulateId.D11:
        b = formulas["beta"]
        g = formulas["gamma"]
        after = step_ranks(ranks, a, code)
        if _subset(achieve_bel(ranks, b, code), g):
            return _subset(achieve_bel(after, b, code), g), {}
        return True, {}

    if pid is PostulateId.D12:
        b = formulas["beta"]
        g = formulas["gamma"]
        if giveup_ll_masks(ranks, g, b, code):
            after = step_ranks(ranks, a, code)
            return giveup_leq_masks(after, b, g, code), {}
        return True, {}

    if pid is PostulateId.D13:
        return _subset(bel, _bel_mask(step_ranks(ranks, a, code))), {}

    if pid in DR_POSTULATES:
        after = step_ranks(ranks, a, code)
        return _eval_dr(pid, ranks, after, a, full)

    if pid is PostulateId.SFA1:
        for w1 in range(n):
            if ranks[w1] != 0:
                continue
            for w2 in range(n):
                if ranks[w2] == 0 and ranks[w1] != ranks[w2]:
                    return False, {"omega1": w1, "omega2": w2}
        return True, {}

    if pid is PostulateId.SFA2:
        for w1 in range(n):
            if ranks[w1] != 0:
                continue
            for w2 in range(n):
                if ranks[w2] != 0 and not ranks[w1] < ranks[w2]:
                    return False, {"omega1": w1, "omega2": w2}
        return True, {}

    if pid is PostulateId.DECREMENT_SUCCESS:
        final, nsteps = achieve_ranks(ranks, a, code)
        if a == full:
            return nsteps == 0 and final == ranks, {}
        cur = ranks
        for _ in range(nsteps):
            if _bel_mask(cur) & ~a:
                return False, {}
            cur = step_ranks(cur, a, code)
        if not _bel_mask(final) & ~a:
            return False, {}
        expected = bel | _min_rank_mask(ranks, full & ~a)
        return _bel_mask(final) == expected, {}

    if pid is PostulateId.PARTIAL_SUCCESS:
        after = _bel_mask(step_ranks(ranks, a, code))
        upper = bel | _min_rank_mask(ranks, full & ~a)
        return _subset(bel, after) and _subset(after, upper), {}

    if pid is PostulateId.LEMMA1:
        w = worlds["omega"]
        got = achieve_bel(ranks, full & ~(1 << w), code)
        return got == bel | (1 << w), {}

    if pid is PostulateId.LEMMA3:
        g = formulas["gamma"]
        b = formulas["beta"]
        if not giveup_lt_masks(ranks, g, b, code):
            return True, {}
        lhs = giveup_ll_masks(ranks, g, b, code)
        minb = _min_rank_mask(ranks, full & ~b)
        ming = _min_rank_mask(ranks, full & ~g)
        rhs = True
        for w1 in range(n):
            if not (minb >> w1) & 1:
                continue
            for w2 in range(n):
                if not (ming >> w2) & 1:
                    continue
                if not (ranks[w2] == ranks[w1] or ranks[w2] + 1 == ranks[w1]):
                    rhs = False
        return lhs == rhs, {}

    if pid in (PostulateId.IC1, PostulateId.IC2, PostulateId.IC3, PostulateId.IC4):
        after = achieve_ranks(ranks, a, code)[0]
        for w1 in range(n):
            in1 = (a >> w1) & 1
            for w2 in range(n):
                in2 = (a >> w2) & 1
                witness = {"omega1": w1, "omega2": w2}
                if pid is PostulateId.IC1 and in1 and in2:
                    if (ranks[w1] <= ranks[w2]) != (after[w1] <= after[w2]):
                        return False, witness
                elif pid is PostulateId.IC2 and not in1 and not in2:
                    if (ranks[w1] <= ranks[w2]) != (after[w1] <= after[w2]):
                        return False, witness
                elif pid is PostulateId.IC3 and not in1 and in2:
                    if ranks[w1] < ranks[w2] and not after[w1] < after[w2]:
                        return False, witness
                elif pid is PostulateId.IC4 and not in1 and in2:
                    if ranks[w1] <= ranks[w2] and not after[w1] <= after[w2]:
                        return False, witness
        return True, {}

    raise ValueError(f"unknown postulate {pid!r}")


def _eval_dr(
    pid: PostulateId, before: tuple, after: tuple, a: int, full: int
) -> tuple[bool, dict[str, int]]:
    n = len(before)
    frontal = _kernel.frontal_bits(before, a) if pid is PostulateId.DR15 else 0
    for w1 in range(n):
        in1 = (a >> w1) & 1
        for w2 in range(n):
            in2 = (a >> w2) & 1
            witness = {"omega1": w1, "omega2": w2}
            if pid is PostulateId.DR8 and in1 and in2:
                if (before[w1] <= before[w2]) != (after[w1] <= after[w2]):
                    return False, witness
            elif pid is PostulateId.DR9 and not in1 and not in2:
                if (before[w1] <= before[w2]) != (after[w1] <= after[w2]):
                    return False, witness
            elif not in1 and in2:
                if pid is PostulateId.DR10:
                    if before[w1] <= before[w2] and not after[w1] <= after[w2]:
                        return False, witness
                elif pid is PostulateId.DR11:
                    if before[w1] < before[w2] and not after[w1] < after[w2]:
                        return False, witness
                elif pid is PostulateId.DR12:
                    if before[w1] == before[w2] + 1 and not after[w1] <= after[w2]:
                        return False, witness
                elif pid is PostulateId.DR13:
                    if before[w2] == 0 and not after[w2] <= after[w1]:
                        return False, witness
                elif pid is PostulateId.DR14:
                    if before[w1] == before[w2] and after[w2] != after[w1] + 1:
                        return False, witness
                elif pid is PostulateId.DR15:
                    if (
                        before[w1] == before[w2]
                        and (frontal >> w1) & 1
                        and after[w1] != after[w2]
                    ):
                        return False, witness
    return True, {}


# --- case generation ---------------------------------------------------------

_SINGLE_ALPHA = frozenset(
    {
        PostulateId.C1,
        PostulateId.C2,
        PostulateId.C3,
        PostulateId.C4,
        PostulateId.C5,
        PostulateId.D1,
        PostulateId.D2,
        PostulateId.D3,
        PostulateId.D4,
        PostulateId.D13,
        PostulateId.HESITANCE,
        PostulateId.DECREMENT_SUCCESS,
        PostulateId.PARTIAL_SUCCESS,
        PostulateId.IC1,
        PostulateId.IC2,
        PostulateId.IC3,
        PostulateId.IC4,
    }
)

_ALPHA_BETA = frozenset({PostulateId.C6, PostulateId.C7, PostulateId.D6, PostulateId.D7})


def _inner_cases(pid: PostulateId, ranks: tuple) -> Iterator[tuple[dict, dict]]:
    """Formula/world assignments for one state, exhaustive and in a fixed order."""
    n = len(ranks)
    full = (1 << n) - 1
    classes = range(full + 1)
    if pid in _SINGLE_ALPHA:
        for a in classes:
            yield {"alpha": a}, {}
    elif pid in DR_POSTULATES:
        bel = _bel_mask(ranks)
        for a in classes:
            if bel & ~a == 0:
                yield {"alpha": a}, {}
    elif pid in _ALPHA_BETA:
        for a in classes:
            for b in classes:
                yield {"alpha": a, "beta": b}, {}
    elif pid is PostulateId.D5 or pid is PostulateId.SFA3:
        for a1 in classes:
            for a2 in classes:
                yield {"alpha1": a1, "alpha2": a2}, {}
    elif pid is PostulateId.D8:
        for a in classes:
            na = full & ~a
            for b in classes:
                if na & ~b == 0:
                    yield {"alpha": a, "beta": b}, {}
    elif pid is PostulateId.D9:
        for a in classes:
            for b in classes:
                if a & ~b == 0:
                    yield {"alpha": a, "beta": b}, {}
    elif pid is PostulateId.D10:
        for a in classes:
            for g in classes:
                if a & ~g == 0:
                    for b in classes:
                        yield {"alpha": a, "beta": b, "gamma": g}, {}
    elif pid is PostulateId.D11:
        for a in classes:
            na = full & ~a
            for g in classes:
                if na & ~g == 0:
                    for b in classes:
                        yield {"alpha": a, "beta": b, "gamma": g}, {}
    elif pid is PostulateId.D12:
        for a in classes:
            na = full & ~a
            for b in classes:
                if a & ~b:
                    continue
                for g in classes:
                    if na & ~g == 0:
                        yield {"alpha": a, "beta": b, "gamma": g}, {}
    elif pid is PostulateId.LEMMA3:
        for g in classes:
            for b in classes:
                yield {"gamma": g, "beta": b}, {}
    elif pid is PostulateId.LEMMA1:
        for w in range(n):
            yield {}, {"omega": w}
    elif pid is PostulateId.SFA1 or pid is PostulateId.SFA2:
        yield {}, {}
    else:
        raise ValueError(f"unknown postulate {pid!r}")


def _sample_case(pid: PostulateId, rng: random.Random, n_worlds: int) -> tuple[tuple, dict, dict]:
    """One random premise-satisfying case."""
    full = (1 << n_worlds) - 1
    n_cls = full + 1
    ranks = _kernel.compress_keys([rng.randrange(n_worlds) for _ in range(n_worlds)])
    formulas: dict[str, int] = {}
    worlds: dict[str, int] = {}
    if pid in _SINGLE_ALPHA:
        formulas["alpha"] = rng.randrange(n_cls)
    elif pid in DR_POSTULATES:
        bel = _bel_mask(ranks)
        formulas["alpha"] = bel | (rng.randrange(n_cls) & full & ~bel)
    elif pid in _ALPHA_BETA:
        formulas["alpha"] = rng.randrange(n_cls)
        formulas["beta"] = rng.randrange(n_cls)
    elif pid is PostulateId.D5 or pid is PostulateId.SFA3:
        formulas["alpha1"] = rng.randrange(n_cls)
        formulas["alpha2"] = rng.randrange(n_cls)
    elif pid is PostulateId.D8:
        a = rng.randrange(n_cls)
        formulas["alpha"] = a
        formulas["beta"] = (full & ~a) | (rng.randrange(n_cls) & a)
    elif pid is PostulateId.D9:
        a = rng.randrange(n_cls)
        formulas["alpha"] = a
        formulas["beta"] = a | (rng.randrange(n_cls) & full & ~a)
    elif pid is PostulateId.D10:
        a = rng.randrange(n_cls)
        formulas["alpha"] = a
        formulas["beta"] = rng.randrange(n_cls)
        formulas["gamma"] = a | (rng.randrange(n_cls) & full & ~a)
    elif pid is PostulateId.D11:
        a = rng.randrange(n_cls)
        formulas["alpha"] = a
        formulas["beta"] = rng.randrange(n_cls)
        formulas["gamma"] = (full & ~a) | (rng.randrange(n_cls) & a)
    elif pid is PostulateId.D12:
        a = rng.randrange(n_cls)
        formulas["alpha"] = a
        formulas["beta"] = a | (rng.randrange(n_cls) & full & ~a)
        formulas["gamma"] = (full & ~a) | (rng.randrange(n_cls) & a)
    elif pid is PostulateId.LEMMA3:
        formulas["gamma"] = rng.randrange(n_cls)
        formulas["beta"] = rng.randrange(n_cls)
    elif pid is PostulateId.LEMMA1:
        worlds["omega"] = rng.randrange(n_worlds)
    elif pid is PostulateId.SFA1 or pid is PostulateId.SFA2:
        pass
    else:
        raise ValueError(f"unknown postulate {pid!r}")
    return ranks, formulas, worlds


_DOMAIN_NOTES = {
    **{p: "states x alpha classes" for p in _SINGLE_ALPHA},
    **{p: "believed steps: states x alpha classes with alpha believed" for p in DR_POSTULATES},
    **{p: "states x alpha x beta classes" for p in _ALPHA_BETA},
    PostulateId.D5: "states x equivalent-representative sequences, depth <= 2",
    PostulateId.SFA3: "states x equivalent-representative sequences, depth <= 2",
    PostulateId.D8: "states x (alpha, beta) with not-alpha entailing beta",
    PostulateId.D9: "states x (alpha, beta) with alpha entailing beta",
    PostulateId.D10: "states x (alpha, beta, gamma) with alpha entailing gamma",
    PostulateId.D11: "states x (alpha, beta, gamma) with not-alpha entailing gamma",
    PostulateId.D12: "states x (alpha, beta, gamma) with alpha |= beta, not-alpha |= gamma",
    PostulateId.LEMMA3: "states x (gamma, beta) classes",
    PostulateId.LEMMA1: "states x worlds",
    PostulateId.SFA1: "all states",
    PostulateId.SFA2: "all states",
}


# --- report assembly ---------------------------------------------------------

def _counterexample(
    ranks: tuple,
    formulas: dict[str, int],
    worlds: dict[str, int],
    n_atoms: int,
) -> tuple[tuple, dict]:
    layers = [tuple(worldset_to_bits(m, n_atoms)) for m in _layers_of(ranks)]
    doc = {
        "state": [list(layer) for layer in layers],
        "formulas": {k: worldset_to_bits(v, n_atoms) for k, v in sorted(formulas.items())},
        "worlds": {k: world_to_bits(v, n_atoms) for k, v in sorted(worlds.items())},
    }
    key = (
        len(layers),
        tuple(layers),
        tuple(sorted(formulas.items())),
        tuple(sorted(worlds.items())),
    )
    return key, doc


def _run_chunk(
    kind_value: str,
    pid_value: str,
    n_atoms: int,
    mode: Mode,
    lo: int,
    hi: int,
) -> tuple[int, list[tuple[tuple, dict]]]:
    """Evaluate cases with index in [lo, hi); returns (cases, capped failures)."""
    kind = OperatorKind(kind_value)
    pid = PostulateId(pid_value)
    n_worlds = 1 << n_atoms
    cases = 0
    failures: list[tuple[tuple, dict]] = []

    def record(ranks, formulas, worlds, witness):
        merged = dict(worlds)
        merged.update(witness)
        failures.append(_counterexample(ranks, formulas, merged, n_atoms))
        if len(failures) > 4 * COUNTEREXAMPLE_CAP:
            failures[:] = heapq.nsmallest(COUNTEREXAMPLE_CAP, failures, key=lambda kv: kv[0])

    if isinstance(mode, Exhaustive):
        for ranks in islice(_kernel.weak_order_ranks(n_worlds), lo, hi):
            for formulas, worlds in _inner_cases(pid, ranks):
                cases += 1
                ok, witness = _evaluate(kind, pid, ranks, formulas, worlds, n_atoms)
                if not ok:
                    record(ranks, formulas, worlds, witness)
    else:
        for i in range(lo, hi):
            rng = random.Random(mode.seed * 2_000_003 + i)
            ranks, formulas, worlds = _sample_case(pid, rng, n_worlds)
            cases += 1
            ok, witness = _evaluate(kind, pid, ranks, formulas, worlds, n_atoms)
            if not ok:
                record(ranks, formulas, worlds, witness)

    failures = heapq.nsmallest(COUNTEREXAMPLE_CAP, failures, key=lambda kv: kv[0])
    return cases, failures


def _validate_domain(pid: PostulateId, sig: Signature, mode: Mode) -> None:
    n_atoms = sig.n_atoms
    if n_atoms > CHECKER_MAX_ATOMS:
        raise DomainTooLargeError(
            f"checker limited to |Σ| <= {CHECKER_MAX_ATOMS}, got {n_atoms}"
        )
    if isinstance(mode, Exhaustive) and pid in MULTI_FORMULA and n_atoms > CHECKER_MAX_ATOMS_MULTIFORMULA:
        raise DomainTooLargeError(
            f"exhaustive {pid.value} quantifies over formula tuples; "
            f"limited to |Σ| <= {CHECKER_MAX_ATOMS_MULTIFORMULA}"
        )


def _coerce_postulate(p: Union[PostulateId, str]) -> PostulateId:
    if isinstance(p, PostulateId):
        return p
    try:
        return PostulateId(p)
    except ValueError:
        pass
    for member in PostulateId:
        if member.value.lower() == str(p).lower():
            return member
    raise ValueError(f"unknown postulate {p!r}")


def _coerce_kind(k: Union[OperatorKind, str]) -> OperatorKind:
    if isinstance(k, OperatorKind):
        return k
    return OperatorKind(str(k))


def check_postulate(
    kind: Union[OperatorKind, str],
    postulate: Union[PostulateId, str],
    sig: Signature,
    mode: Mode = EXHAUSTIVE,
    workers: int = 1,
) -> CheckReport:
    """Quantify one postulate over states, formula classes, and worlds.

    Exhaustive mode walks every total preorder of the signature's universe;
    postulates over formula pairs and the give-up successor relation are
    capped at two atoms, everything else at three.  Reports are
    deterministic for identical (signature, mode, seed) regardless of the
    worker count.
    """
    kind = _coerce_kind(kind)
    pid = _coerce_postulate(postulate)
    _validate_domain(pid, sig, mode)
    n_atoms = sig.n_atoms

    if isinstance(mode, Exhaustive):
        total = _WEAK_ORDER_COUNTS[1 << n_atoms]
    else:
        if mode.count < 0:
            raise ValueError("sample count must be nonnegative")
        total = mode.count

    workers = max(1, workers)
    bounds = [(total * i) // workers for i in range(workers + 1)]
    chunks = [
        (kind.value, pid.value, n_atoms, mode, bounds[i], bounds[i + 1])
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    if not chunks:
        results: list[tuple[int, list]] = []
    elif len(chunks) == 1:
        results = [_run_chunk(*chunks[0])]
    else:
        results = _map_parallel(chunks)

    cases = sum(r[0] for r in results)
    merged: list[tuple[tuple, dict]] = []
    for _, fails in results:
        merged.extend(fails)
    best = heapq.nsmallest(COUNTEREXAMPLE_CAP, merged, key=lambda kv: kv[0])
    counterexamples = [doc for _, doc in best]

    domain = f"{mode.describe(n_atoms)}; {_DOMAIN_NOTES[pid]}"
    return CheckReport(
        postulate=pid.value,
        operator=kind.value,
        domain=domain,
        outcome="fail" if counterexamples else "pass",
        cases=cases,
        counterexamples=counterexamples,
    )


def _map_parallel(chunks: list[tuple]) -> list[tuple[int, list]]:
    import concurrent.futures
    import multiprocessing

    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return [_run_chunk(*c) for c in chunks]
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=len(chunks), mp_context=ctx
    ) as pool:
        return list(pool.map(_run_chunk_star, chunks))


def _run_chunk_star(args):
    return _run_chunk(*args)


def conformance_matrix(
    kinds: Sequence[Union[OperatorKind, str]],
    postulates: Union[str, Sequence[Union[PostulateId, str]]],
    sig: Signature,
    mode: Mode = EXHAUSTIVE,
    workers: int = 1,
) -> ConformanceMatrix:
    """One CheckReport per (kind, postulate), in the requested order."""
    kind_list = [_coerce_kind(k) for k in kinds]
    if isinstance(postulates, str) and postulates == "all":
        pid_list = list(ALL_POSTULATES)
    else:
        pid_list = [_coerce_postulate(p) for p in postulates]
    reports = [
        check_postulate(kind, pid, sig, mode, workers=workers)
        for kind in kind_list
        for pid in pid_list
    ]
    return ConformanceMatrix(
        atoms=tuple(sig.atoms),
        mode=mode.describe(sig.n_atoms),
        operators=tuple(k.value for k in kind_list),
        postulates=tuple(p.value for p in pid_list),
        reports=reports,
    )


# --- successor satisfiability -------------------------------------------------

def successor_satisfiability(
    state: EpistemicState,
    alpha: Formula,
    constraints: Iterable[Union[PostulateId, str]],
) -> list[TotalPreorder]:
    """All successor preorders satisfying the selected DR constraints.

    The constraints are evaluated literally against the given state and
    formula (no believed-step restriction), realising the existence
    question for decreasing assignments one state at a time.
    """
    n = state.sig.n_worlds
    if n > _kernel.MAX_UNIVERSE:
        raise UniverseTooLargeError(
            f"successor search limited to {_kernel.MAX_UNIVERSE} worlds, got {n}"
        )
    cmask = 0
    for c in constraints:
        pid = _coerce_postulate(c)
        if pid not in _DR_BITS:
            raise ValueError(f"constraint must be one of DR8..DR15, got {pid.value}")
        cmask |= _DR_BITS[pid]
    amask = models(alpha, state.sig)
    before = state.order.ranks
    out = []
    for cand in _kernel.weak_order_ranks(n):
        if _kernel.dr_satisfied(before, cand, amask, cmask):
            out.append(TotalPreorder(cand))
    return out


# --- representation check ------------------------------------------------------

def verify_representation(kind: Union[OperatorKind, str], sig: Signature) -> CheckReport:
    """Check that achieve results alone reconstruct a working assignment.

    For each total preorder: (i) the achieve-induced relation is a total
    preorder, (ii) it is faithful to the state's belief models, (iii) the
    achieve results match contraction semantics computed from the induced
    order, (iv) every believed step satisfies DR8..DR13 with respect to the
    induced orders of the state and its successor.
    """
    kind = _coerce_kind(kind)
    n_atoms = sig.n_atoms
    if n_atoms > CHECKER_MAX_ATOMS_MULTIFORMULA:
        raise DomainTooLargeError(
            f"representation check limited to |Σ| <= {CHECKER_MAX_ATOMS_MULTIFORMULA}"
        )
    code = kind.code
    n = sig.n_worlds
    full = (1 << n) - 1
    dr_ids = (
        PostulateId.DR8,
        PostulateId.DR9,
        PostulateId.DR10,
        PostulateId.DR11,
        PostulateId.DR12,
        PostulateId.DR13,
    )
    cases = 0
    failures: list[tuple[tuple, dict]] = []

    def record(ranks, formulas, worlds, detail):
        key, doc = _counterexample(ranks, formulas, worlds, n_atoms)
        doc["detail"] = detail
        failures.append(((key, detail), doc))

    for ranks in _kernel.weak_order_ranks(n):
        cases += 1
        bel = _bel_mask(ranks)
        try:
            ind = induced_ranks(ranks, code)
        except NotPreorderError as exc:
            record(ranks, {}, {}, f"(i) {exc}")
            continue
        faithful = True
        for w1 in range(n):
            for w2 in range(n):
                if (bel >> w1) & 1 and (bel >> w2) & 1 and ind[w1] != ind[w2]:
                    faithful = False
                if (bel >> w1) & 1 and not (bel >> w2) & 1 and not ind[w1] < ind[w2]:
                    faithful = False
        if not faithful:
            record(ranks, {}, {}, "(ii) induced order not faithful")
            continue
        for a in range(full + 1):
            if a == full:
                continue
            expected = bel | _min_rank_mask(ind, full & ~a)
            if achieve_bel(ranks, a, code) != expected:
                record(ranks, {"alpha": a}, {}, "(iii) contraction semantics mismatch")
        for a in range(full + 1):
            if a == full or bel & ~a:
                continue
            succ = step_ranks(ranks, a, code)
            ind_succ = induced_ranks(succ, code)
            for pid in dr_ids:
                ok, witness = _eval_dr(pid, ind, ind_succ, a, full)
                if not ok:
                    record(ranks, {"alpha": a}, witness, f"(iv) {pid.value} violated")

    failures.sort(key=lambda kv: kv[0])
    counterexamples = [doc for _, doc in failures[:COUNTEREXAMPLE_CAP]]
    return CheckReport(
        postulate="representation",
        operator=kind.value,
        domain=f"exhaustive |Σ|={n_atoms}; conditions (i)-(iv) over all states",
        outcome="fail" if counterexamples else "pass",
        cases=cases,
        counterexamples=counterexamples,
    )


# --- replay --------------------------------------------------------------------

def replay_counterexample(
    kind: Union[OperatorKind, str],
    postulate: Union[PostulateId, str],
    counterexample: dict,
) -> bool:
    """Re-evaluate a reported counterexample; True iff it still violates."""
    kind = _coerce_kind(kind)
    pid = _coerce_postulate(postulate)
    layers = counterexample["state"]
    n_atoms = len(layers[0][0])
    masks = [worldset_from_bits(layer) for layer in layers]
    ranks = [0] * (1 << n_atoms)
    for i, mask in enumerate(masks):
        for w in range(1 << n_atoms):
            if (mask >> w) & 1:
                ranks[w] = i
    formulas = {k: worldset_from_bits(v) for k, v in counterexample["formulas"].items()}
    worlds = {k: world_from_bits(v) for k, v in counterexample["worlds"].items()}
    ok, _ = _evaluate(kind, pid, tuple(ranks), formulas, worlds, n_atoms)
    return not ok
