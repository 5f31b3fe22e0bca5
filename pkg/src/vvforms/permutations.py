"""Permutations, parity and products of permutation symbols.

Permutations are stored in one-line notation with 1-based images, so
``Permutation((2, 3, 1))`` sends 1 -> 2, 2 -> 3, 3 -> 1.  Composition
follows function notation: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence


class PermutationError(ValueError):
    """Raised for malformed permutations or out-of-range symbol indices."""


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _count_inversions(seq: list[int]) -> int:
    # merge sort; O(m log m)
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    count = _count_inversions(left) + _count_inversions(right)
    i = j = 0
    for pos in range(len(seq)):
        if j >= len(right) or (i < len(left) and left[i] <= right[j]):
            seq[pos] = left[i]
            i += 1
        else:
            seq[pos] = right[j]
            j += 1
            count += len(left) - i
    return count


def sign_of_sequence(seq: Sequence[int]) -> int:
    """Parity (+1/-1) of the permutation sorting ``seq`` (distinct entries)."""
    return -1 if _count_inversions(list(seq)) % 2 else 1


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermutationError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(23)(67)"`` or ``"(1 10)"``.

        Cycles with single-digit entries may be written without separators;
        otherwise separate entries by spaces or commas.  ``"(1)"`` and ``""``
        denote the identity.
        """
        text = text.strip()
        leftover = _CYCLE_RE.sub("", text).strip()
        if leftover:
            raise PermutationError(f"cannot parse cycle notation {text!r}")
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(text):
            body = body.strip()
            if not body:
                continue
            if re.search(r"[\s,]", body):
                cycle = [int(tok) for tok in re.split(r"[\s,]+", body) if tok]
            else:
                cycle = [int(ch) for ch in body]
            if len(cycle) == 1:
                if not 1 <= cycle[0] <= degree:
                    raise PermutationError(f"cycle entry {cycle[0]} outside 1..{degree}")
                continue
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if not (1 <= a <= degree) or a in seen:
                    raise PermutationError(f"bad cycle entry {a} in {text!r} (degree {degree})")
                seen.add(a)
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.m != other.m:
            raise PermutationError("cannot compose permutations of different degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.m
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def parity(self) -> int:
        return parity(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "(1)"
        sep = " " if self.m > 9 else ""
        return "".join("(" + sep.join(map(str, c)) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()


def parity(p: Permutation) -> int:
    return sign_of_sequence(p.images)


def all_permutations(m: int) -> Iterator[Permutation]:
    for images in _itertools_permutations(range(1, m + 1)):
        yield Permutation(images)


def epsilon(indices: Sequence[int], m: int) -> int:
    """The permutation symbol on ``m`` letters: +1, -1, or 0 on a repeat."""
    if len(indices) != m:
        raise PermutationError(f"epsilon needs exactly {m} indices, got {len(indices)}")
    for i in indices:
        if not 1 <= i <= m:
            raise PermutationError(f"index {i} outside 1..{m}")
    if len(set(indices)) != m:
        return 0
    return sign_of_sequence(indices)


@dataclass(frozen=True)
class EpsilonProductSpec:
    """A product of ``d`` permutation symbols on ``m`` letters indexed by ``sigma``."""

    m: int
    d: int
    sigma: Permutation

    def __post_init__(self):
        if self.m < 1 or self.d < 1:
            raise PermutationError("m and d must be positive")
        if self.sigma.m != self.total:
            raise PermutationError(f"sigma has degree {self.sigma.m}, expected {self.total}")

    @property
    def total(self) -> int:
        return self.m * self.d

    def block_slots(self) -> list[tuple[int, ...]]:
        """Slots read by each symbol: block t reads sigma^-1((t-1)m+1 .. tm)."""
        inv = self.sigma.inverse()
        return [
            tuple(inv(t * self.m + u) for u in range(1, self.m + 1))
            for t in range(self.d)
        ]


def epsilon_product(spec: EpsilonProductSpec, assignment: Sequence[int]) -> int:
    if len(assignment) != spec.total:
        raise PermutationError(f"assignment length {len(assignment)} != {spec.total}")
    value = 1
    for slots in spec.block_slots():
        value *= epsilon([assignment[s - 1] for s in slots], spec.m)
        if value == 0:
            return 0
    return value


def lift_to_double(tau: Permutation) -> Permutation:
    """Induced permutation of 2r slots moving the pairs (2i-1, 2i) together."""
    images = [0] * (2 * tau.m)
    for i in range(1, tau.m + 1):
        j = tau(i)
        images[2 * i - 2] = 2 * j - 1
        images[2 * i - 1] = 2 * j
    return Permutation(tuple(images))
