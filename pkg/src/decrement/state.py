"""Epistemic states: a signature plus a plausibility order.

The state is its preorder; the belief set is determined by layer 0, and
``Bel(X) subseteq Bel(Y)`` is computed as the reversed inclusion of the
corresponding model sets.  Faithfulness holds by construction: exactly the
layer-0 worlds are models of the state, mutually tied and strictly below
everything else.
"""

from __future__ import annotations

from dataclasses import dataclass

from decrement.logic import (
    Formula,
    Signature,
    equiv_wrt,
    models,
    worldset_from_bits,
    worldset_to_bits,
)
from decrement.preorder import TotalPreorder, from_layers, to_layers


class StateFormatError(ValueError):
    """Malformed state document."""


@dataclass(frozen=True)
class EpistemicState:
    sig: Signature
    order: TotalPreorder

    def __post_init__(self) -> None:
        if self.order.n_worlds != self.sig.n_worlds:
            raise ValueError(
                f"order covers {self.order.n_worlds} worlds, "
                f"signature has {self.sig.n_worlds}"
            )


def belief_models(state: EpistemicState) -> int:
    """Models of the state's beliefs: the bottom layer."""
    return state.order.layer0


def believes(state: EpistemicState, alpha: Formula) -> bool:
    """True iff every most-plausible world satisfies alpha."""
    return belief_models(state) & ~models(alpha, state.sig) == 0


def bel_equiv_wrt(s1: EpistemicState, s2: EpistemicState, alpha: Formula) -> bool:
    """Belief-set equivalence relative to alpha.

    True iff the two belief model sets agree on the models of alpha.
    """
    if s1.sig != s2.sig:
        raise ValueError("states are over different signatures")
    return equiv_wrt(belief_models(s1), belief_models(s2), alpha, s1.sig)


# --- layers document (the state file format) --------------------------------

def state_to_doc(state: EpistemicState) -> dict:
    """JSON-ready document: atoms plus layers of world bitstrings, rank 0 first."""
    n = state.sig.n_atoms
    return {
        "atoms": list(state.sig.atoms),
        "layers": [worldset_to_bits(layer, n) for layer in to_layers(state.order)],
    }


def state_from_doc(doc: dict) -> EpistemicState:
    if not isinstance(doc, dict):
        raise StateFormatError("state document must be a JSON object")
    try:
        atoms = doc["atoms"]
        layers = doc["layers"]
    except (KeyError, TypeError) as exc:
        raise StateFormatError(f"state document missing field: {exc}") from None
    try:
        sig = Signature(atoms)
    except (ValueError, TypeError) as exc:
        raise StateFormatError(f"bad atoms: {exc}") from None
    if not isinstance(layers, list) or not all(isinstance(l, list) for l in layers):
        raise StateFormatError("layers must be a list of lists of bitstrings")
    masks = []
    for i, layer in enumerate(layers):
        try:
            mask = worldset_from_bits(layer)
        except (ValueError, TypeError) as exc:
            raise StateFormatError(f"layer {i}: {exc}") from None
        for bits in layer:
            if len(bits) != sig.n_atoms:
                raise StateFormatError(
                    f"layer {i}: world {bits!r} has {len(bits)} bits, "
                    f"signature has {sig.n_atoms} atoms"
                )
        masks.append(mask)
    try:
        order = from_layers(masks, n_worlds=sig.n_worlds)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from None
    return EpistemicState(sig, order)
