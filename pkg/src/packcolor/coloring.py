"""Packing sequences and colorings, with the coloring JSON format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class PackingSequence:
    """Per-class distance parameters ``s_1 <= ... <= s_k``.

    Two distinct vertices sharing class ``i`` must be at distance at least
    ``s_i + 1``.
    """

    s: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if not self.s:
            raise ValueError("a packing sequence needs at least one entry")
        if any(x < 1 for x in self.s):
            raise ValueError("packing sequence entries must be positive")
        if any(a > b for a, b in zip(self.s, self.s[1:])):
            raise ValueError("packing sequence must be nondecreasing")

    @classmethod
    def parse(cls, text: str) -> PackingSequence:
        """``"1,1,3"`` or ``"(1, 1, 3)"``."""
        body = text.strip().strip("()[]")
        return cls(tuple(int(tok) for tok in body.replace(",", " ").split()))

    @classmethod
    def packing(cls, k: int) -> PackingSequence:
        return cls(tuple(range(1, k + 1)))

    def __len__(self) -> int:
        return len(self.s)

    def __getitem__(self, i: int) -> int:
        return self.s[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.s)) + ")"


S113 = PackingSequence((1, 1, 3))
S112 = PackingSequence((1, 1, 2))


@dataclass(frozen=True)
class Coloring:
    """``assignment[v]`` is the 1-based class of vertex ``v``."""

    assignment: tuple[int, ...]
    sequence: PackingSequence

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Iterable[int]], sequence: PackingSequence) -> Coloring:
        assignment = [0] * n
        for idx, members in enumerate(classes, start=1):
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range")
                if assignment[v]:
                    raise ValueError(f"vertex {v} appears in two classes")
                assignment[v] = idx
        return cls(tuple(assignment), sequence)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(len(self.sequence), max(self.assignment, default=0)))]
        for v, c in enumerate(self.assignment):
            if c > 0:
                out[c - 1].append(v)
        return out

    def to_dict(self) -> dict:
        return {"n": self.n, "sequence": list(self.sequence.s), "classes": self.classes()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, data: dict, sequence: PackingSequence | None = None) -> Coloring:
        try:
            n = int(data["n"])
            classes = data["classes"]
            seq = sequence or PackingSequence(tuple(data["sequence"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed coloring JSON: {exc}") from None
        return cls.from_classes(n, classes, seq)

    @classmethod
    def from_json(cls, text: str, sequence: PackingSequence | None = None) -> Coloring:
        return cls.from_dict(json.loads(text), sequence)
