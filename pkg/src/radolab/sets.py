"""Finite integer sets over [1, N] with bitset semantics.

These hold colour classes, smooth numbers S(N; R), homogeneous sets and the
like.  Two interchangeable serialisations are supported everywhere a set is
read: newline-delimited decimal members, and a run-length JSON document
{"n": N, "runs": [[start, len], ...]}.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

import numpy as np

from .errors import RangeError


class IntegerSet:
    """Immutable subset of [1, N] backed by a boolean membership array."""

    __slots__ = ("limit", "_mask")

    def __init__(self, limit: int, members: Iterable[int] = ()):
        if limit < 1:
            raise RangeError(f"limit must be >= 1, got {limit}")
        mask = np.zeros(limit + 1, dtype=bool)
        arr = np.asarray(list(members) if not isinstance(members, np.ndarray) else members,
                         dtype=np.int64)
        if arr.size:
            if arr.min() < 1 or arr.max() > limit:
                raise RangeError(f"members must lie in [1, {limit}]")
            mask[arr] = True
        mask.setflags(write=False)
        self.limit = int(limit)
        self._mask = mask

    @classmethod
    def interval(cls, n: int) -> "IntegerSet":
        """The full interval [n] = {1, ..., n}."""
        s = cls.__new__(cls)
        if n < 1:
            raise RangeError(f"interval length must be >= 1, got {n}")
        mask = np.ones(n + 1, dtype=bool)
        mask[0] = False
        mask.setflags(write=False)
        s.limit = int(n)
        s._mask = mask
        return s

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "IntegerSet":
        """Wrap a boolean array indexed 0..N (index 0 must be False)."""
        s = cls.__new__(cls)
        m = np.asarray(mask, dtype=bool).copy()
        m[0] = False
        m.setflags(write=False)
        s.limit = int(m.size - 1)
        s._mask = m
        return s

    # -- queries ----------------------------------------------------------

    def members(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    @property
    def cardinality(self) -> int:
        return int(self._mask.sum())

    def __contains__(self, x: int) -> bool:
        return 0 < x <= self.limit and bool(self._mask[x])

    def __iter__(self) -> Iterator[int]:
        return iter(self.members().tolist())

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntegerSet)
                and self.limit == other.limit
                and bool(np.array_equal(self._mask, other._mask)))

    def __hash__(self):
        return hash((self.limit, self._mask.tobytes()))

    def __repr__(self):
        return f"IntegerSet(limit={self.limit}, size={self.cardinality})"

    def mask(self) -> np.ndarray:
        return self._mask

    def dilate(self, q: int, limit: int | None = None) -> "IntegerSet":
        """The set {q*x : x in self}, over the given (or induced) limit."""
        if q < 1:
            raise RangeError("dilation factor must be positive")
        lim = limit if limit is not None else q * self.limit
        mem = self.members() * q
        return IntegerSet(lim, mem[mem <= lim])

    # -- serialisation ----------------------------------------------------

    def to_lines(self) -> str:
        return "\n".join(str(x) for x in self.members().tolist()) + "\n"

    @classmethod
    def from_lines(cls, text: str, limit: int | None = None) -> "IntegerSet":
        mem = [int(line) for line in text.split() if line.strip()]
        lim = limit if limit is not None else (max(mem) if mem else 1)
        return cls(lim, mem)

    def to_runs_json(self) -> str:
        runs = []
        mem = self.members()
        if mem.size:
            breaks = np.flatnonzero(np.diff(mem) != 1)
            starts = np.concatenate(([0], breaks + 1))
            ends = np.concatenate((breaks, [mem.size - 1]))
            runs = [[int(mem[a]), int(mem[b] - mem[a] + 1)] for a, b in zip(starts, ends)]
        return json.dumps({"n": self.limit, "runs": runs})

    @classmethod
    def from_runs_json(cls, text: str) -> "IntegerSet":
        doc = json.loads(text)
        mask = np.zeros(doc["n"] + 1, dtype=bool)
        for start, length in doc["runs"]:
            mask[start:start + length] = True
        return cls.from_mask(mask)

    @classmethod
    def parse(cls, text: str, limit: int | None = None) -> "IntegerSet":
        """Accept either serialisation format."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_runs_json(text)
        return cls.from_lines(text, limit=limit)
