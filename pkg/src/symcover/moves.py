"""Tuple transformations generating the mapping-class action on vectors.

Every move is a word map: for each changed slot, a word in the input slots
(and constants, for conjugations), evaluated simultaneously from the input
vector.  Built-ins:

  conjugate(h): every entry e -> h * e * h^-1
  braid(j,+):   (c_j, c_j+1) -> (c_j * c_j+1 * c_j^-1, c_j)
  braid(j,-):   (c_j, c_j+1) -> (c_j+1, c_j+1^-1 * c_j * c_j+1)
  twist_t(i,s): b_i -> b_i * a_i^s
  twist_u(i,s): a_i -> a_i * b_i^s

Additional moves (e.g. couplings between handles and branch slots) are
registered as word maps and accepted only after an exhaustive validation
battery on small groups.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    IndexOutOfRange,
    LimitExceeded,
    MoveValidationFailed,
    PostconditionViolated,
)
from .groups import FiniteGroup
from .signatures import Signature
from .vectors import GeneratingVector, enumerate_vectors, vector_validate

SLOT = 0
SLOT_INV = 1
CONST = 2


def slot_index(sig: Signature, name: str) -> int:
    """Map a slot name like 'a2', 'b1', 'c3' to its tuple index."""
    m = re.fullmatch(r"([abc])(\d+)", name)
    if not m:
        raise IndexOutOfRange(f"bad slot name {name!r}")
    kind, i = m.group(1), int(m.group(2))
    gp = sig.quotient_genus
    if kind == "a":
        if not 1 <= i <= gp:
            raise IndexOutOfRange(f"slot {name} out of range for g'={gp}")
        return 2 * (i - 1)
    if kind == "b":
        if not 1 <= i <= gp:
            raise IndexOutOfRange(f"slot {name} out of range for g'={gp}")
        return 2 * (i - 1) + 1
    if not 1 <= i <= sig.d:
        raise IndexOutOfRange(f"slot {name} out of range for d={sig.d}")
    return 2 * gp + (i - 1)


def parse_word(word: str, sig: Signature) -> tuple:
    """Parse 'c1^-1 * b1 * c1' into ((kind, index), ...) tokens."""
    tokens = []
    for factor in word.split("*"):
        factor = factor.strip()
        if not factor:
            raise IndexOutOfRange(f"empty factor in word {word!r}")
        m = re.fullmatch(r"([abc]\d+)(?:\^(-?\d+))?", factor)
        if not m:
            raise IndexOutOfRange(f"bad factor {factor!r} in word {word!r}")
        idx = slot_index(sig, m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if exp == 0:
            continue
        kind = SLOT if exp > 0 else SLOT_INV
        tokens.extend([(kind, idx)] * abs(exp))
    return tuple(tokens)


@dataclass(frozen=True)
class Move:
    """A concrete move for one signature: per-slot token programs."""

    name: str
    outputs: tuple  # ((slot, (token, ...)), ...)
    inverse_name: Optional[str] = None
    registered: bool = False

    def apply(self, G: FiniteGroup, entries: tuple) -> tuple:
        new = list(entries)
        for slot, tokens in self.outputs:
            val = G.identity
            for kind, v in tokens:
                if kind == SLOT:
                    operand = entries[v]
                elif kind == SLOT_INV:
                    operand = G.inv(entries[v])
                else:
                    operand = v
                val = G.mul(val, operand)
            new[slot] = val
        return tuple(new)


class CycleInverseMove:
    """Formal inverse of a registered move, realized by walking the cycle of
    the (bijective) move on the finite valid-vector set."""

    def __init__(self, base: Move, name: str):
        self.base = base
        self.name = name
        self.outputs = base.outputs  # slots touched
        self.inverse_name = base.name
        self.registered = True

    def apply(self, G: FiniteGroup, entries: tuple) -> tuple:
        prev, cur = entries, self.base.apply(G, entries)
        steps = 0
        while cur != entries:
            prev, cur = cur, self.base.apply(G, cur)
            steps += 1
            if steps > 10**7:
                raise PostconditionViolated(
                    f"move {self.base.name} does not cycle on {entries}"
                )
        return prev


def conjugation_move(G: FiniteGroup, sig: Signature, h: int) -> Move:
    hv = G.inv(h)
    outputs = tuple(
        (s, ((CONST, h), (SLOT, s), (CONST, hv))) for s in range(sig.slots)
    )
    return Move(f"conj({G.labels[h]})", outputs, inverse_name=f"conj({G.labels[hv]})")


def braid_move(sig: Signature, j: int, direction: int) -> Move:
    if not 1 <= j <= sig.d - 1:
        raise IndexOutOfRange(f"braid index {j} out of range for d={sig.d}")
    cj = slot_index(sig, f"c{j}")
    ck = slot_index(sig, f"c{j + 1}")
    if direction > 0:
        outputs = (
            (cj, ((SLOT, cj), (SLOT, ck), (SLOT_INV, cj))),
            (ck, ((SLOT, cj),)),
        )
        return Move(f"braid({j},+)", outputs, inverse_name=f"braid({j},-)")
    outputs = (
        (cj, ((SLOT, ck),)),
        (ck, ((SLOT_INV, ck), (SLOT, cj), (SLOT, ck))),
    )
    return Move(f"braid({j},-)", outputs, inverse_name=f"braid({j},+)")


def twist_move(sig: Signature, kind: str, i: int, direction: int) -> Move:
    if not 1 <= i <= sig.quotient_genus:
        raise IndexOutOfRange(f"twist index {i} out of range for g'={sig.quotient_genus}")
    a = slot_index(sig, f"a{i}")
    b = slot_index(sig, f"b{i}")
    sgn = "+" if direction > 0 else "-"
    inv_sgn = "-" if direction > 0 else "+"
    tok = SLOT if direction > 0 else SLOT_INV
    if kind == "t":  # b_i -> b_i * a_i^s
        outputs = ((b, ((SLOT, b), (tok, a))),)
    elif kind == "u":  # a_i -> a_i * b_i^s
        outputs = ((a, ((SLOT, a), (tok, b))),)
    else:
        raise IndexOutOfRange(f"unknown twist kind {kind!r}")
    return Move(
        f"twist_{kind}({i},{sgn})", outputs, inverse_name=f"twist_{kind}({i},{inv_sgn})"
    )


@dataclass(frozen=True)
class RegisteredMoveSpec:
    """A word-map move as given in a move-set file."""

    name: str
    outputs: tuple  # ((slot_name, word), ...) sorted by slot name
    when: tuple = ()  # (("gprime", 1), ...)

    @classmethod
    def from_dict(cls, data: dict) -> "RegisteredMoveSpec":
        return cls(
            name=data["name"],
            outputs=tuple(sorted(data["outputs"].items())),
            when=tuple(sorted(data.get("when", {}).items())),
        )

    def to_dict(self) -> dict:
        out = {"name": self.name, "outputs": dict(self.outputs)}
        if self.when:
            out["when"] = dict(self.when)
        return out

    def applicable(self, sig: Signature) -> bool:
        for key, val in self.when:
            if key == "gprime" and sig.quotient_genus != val:
                return False
            if key == "min_d" and sig.d < val:
                return False
        try:
            for slot_name, word in self.outputs:
                slot_index(sig, slot_name)
                parse_word(word, sig)
        except IndexOutOfRange:
            return False
        return True

    def instantiate(self, sig: Signature) -> Move:
        outputs = tuple(
            (slot_index(sig, slot_name), parse_word(word, sig))
            for slot_name, word in self.outputs
        )
        return Move(self.name, outputs, registered=True)


@dataclass(frozen=True)
class MoveSet:
    """A named family of moves; conjugations are always included."""

    provenance: str  # "braid-only" | "default" | "default+registered"
    include_twists: bool = True
    registered: tuple = ()

    def instantiate(self, G: FiniteGroup, sig: Signature, with_inverses=True):
        """Concrete moves for one signature.

        Without inverses the list still generates the same orbit partition
        (each move is a bijection of the finite vector set).
        """
        moves = []
        for h in G.elements():
            if h != G.identity:
                moves.append(conjugation_move(G, sig, h))
        for j in range(1, sig.d):
            moves.append(braid_move(sig, j, +1))
            if with_inverses:
                moves.append(braid_move(sig, j, -1))
        if self.include_twists:
            for i in range(1, sig.quotient_genus + 1):
                for kind in ("t", "u"):
                    moves.append(twist_move(sig, kind, i, +1))
                    if with_inverses:
                        moves.append(twist_move(sig, kind, i, -1))
        for spec in self.registered:
            if spec.applicable(sig):
                mv = spec.instantiate(sig)
                moves.append(mv)
                if with_inverses:
                    moves.append(CycleInverseMove(mv, f"{spec.name}^-1"))
        return moves

    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "provenance": self.provenance,
                "include_twists": self.include_twists,
                "registered": [
                    {"name": s.name, "outputs": list(s.outputs), "when": list(s.when)}
                    for s in self.registered
                ],
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()


def braid_only_moveset() -> MoveSet:
    return MoveSet("braid-only", include_twists=False)


def default_moveset() -> MoveSet:
    return MoveSet("default", include_twists=True)


def coupling_move_spec() -> dict:
    """A handle/branch coupling move: on signatures with g' = 1 it realizes
    [a1', b1'] c1' = [a1, b1] c1 as a free-group identity with c1' a
    conjugate of c1, so the surface relation and branch orders survive."""
    return {
        "name": "couple(a1,c1)",
        "outputs": {
            "a1": "a1 * c1",
            "b1": "c1^-1 * b1 * c1",
            "c1": "c1^-1 * b1 * c1 * b1^-1 * c1",
        },
        "when": {"gprime": 1},
    }


def apply_move(G: FiniteGroup, v: GeneratingVector, move) -> GeneratingVector:
    """Apply one move; registered moves get a postcondition check."""
    image = move.apply(G, v.entries)
    if getattr(move, "registered", False):
        check = vector_validate(G, v.signature, image)
        if not check:
            raise PostconditionViolated(
                f"move {move.name} broke invariants: {check.reason}"
            )
    return GeneratingVector(v.signature, image)


def _battery_signatures(groups, genus_range=(2, 3, 4), max_vectors=10**4):
    from .signatures import enumerate_signatures

    for G in groups:
        for g in genus_range:
            for sig in enumerate_signatures(G, g):
                yield G, sig


def register_move(moveset: MoveSet, word_map_spec: dict, battery=None) -> MoveSet:
    """Validate a word-map move on an exhaustive small-group battery and, if
    it passes, return a new MoveSet containing it (inverse included).

    Checks per applicable battery vector: the image satisfies the surface
    relation, preserves the branch-order multiset, preserves the generated
    subgroup; the map must also be injective on each battery state space
    (so its formal inverse exists).
    """
    spec = RegisteredMoveSpec.from_dict(word_map_spec)
    if battery is None:
        from .groups import preset_group

        battery = [
            preset_group("cyclic:2"),
            preset_group("cyclic:3"),
            preset_group("cyclic:4"),
            preset_group("symmetric:3"),
        ]
    for G, sig in _battery_signatures(battery):
        if not spec.applicable(sig):
            continue
        move = spec.instantiate(sig)
        vectors = []
        try:
            for v in enumerate_vectors(G, sig, limit=10**4):
                vectors.append(v.entries)
        except LimitExceeded:
            continue
        images = set()
        for entries in vectors:
            image = move.apply(G, entries)
            check = vector_validate(G, sig, image)
            if not check:
                raise MoveValidationFailed(
                    f"move {spec.name!r} on {G.name} {sig}: {check.reason}",
                    counterexample=entries,
                )
            if image in images:
                raise MoveValidationFailed(
                    f"move {spec.name!r} is not injective on {G.name} {sig}",
                    counterexample=entries,
                )
            images.add(image)
    return MoveSet(
        provenance="default+registered"
        if moveset.provenance != "braid-only"
        else "braid-only+registered",
        include_twists=moveset.include_twists,
        registered=moveset.registered + (spec,),
    )


def moveset_from_file(path) -> MoveSet:
    """Load a move-set file: a JSON list of word-map specs (registered on top
    of the default moves), or {"base": ..., "moves": [...]}."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        base = braid_only_moveset() if data.get("base") == "braid-only" else default_moveset()
        specs = data.get("moves", [])
    else:
        base = default_moveset()
        specs = data
    ms = base
    for spec in specs:
        ms = register_move(ms, spec)
    return ms
