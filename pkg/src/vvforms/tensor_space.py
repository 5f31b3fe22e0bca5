"""Sparse exact tensors over V and W* factors, generator tensors and the symmetrizer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _perms
from math import factorial, prod
from typing import Iterable, Mapping

from ._backend import block_terms
from .permutations import EpsilonProductSpec, Permutation

V = "V"
WDUAL = "Wdual"

DENSE_SIZE_GUARD = 10**7


class DivisibilityError(ValueError):
    """No generator exists: the block size does not divide the number of slots."""


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in (V, WDUAL):
            raise ShapeError(f"unknown axis kind {self.kind!r}")
        if self.dim < 1:
            raise ShapeError("axis dimension must be >= 1")


AxisProfile = tuple  # tuple[Axis, ...]


def profile(*axes: tuple[str, int]) -> AxisProfile:
    return tuple(Axis(kind, dim) for kind, dim in axes)


def _coerce(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class SparseTensor:
    """Immutable map from 1-based multi-indices to nonzero rationals."""

    __slots__ = ("profile", "_entries")

    def __init__(self, profile: AxisProfile, entries: Mapping[tuple[int, ...], object] = (), check=True):
        self.profile = tuple(profile)
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for idx, c in items:
            c = _coerce(c)
            if c:
                clean[tuple(idx)] = c
        if check:
            order = len(self.profile)
            for idx in clean:
                if len(idx) != order or any(not 1 <= i <= ax.dim for i, ax in zip(idx, self.profile)):
                    raise ShapeError(f"index {idx} does not conform to profile")
        self._entries = clean

    @property
    def entries(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._entries)

    @property
    def order(self) -> int:
        return len(self.profile)

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, idx) -> Fraction:
        return self._entries.get(tuple(idx), Fraction(0))

    def items(self):
        return self._entries.items()

    def is_zero(self) -> bool:
        return not self._entries

    def _check_same(self, other: SparseTensor):
        if self.profile != other.profile:
            raise ShapeError("tensor profiles differ")

    def __add__(self, other: SparseTensor) -> SparseTensor:
        self._check_same(other)
        acc = dict(self._entries)
        for idx, c in other._entries.items():
            acc[idx] = acc.get(idx, 0) + c
        return SparseTensor(self.profile, acc, check=False)

    def __neg__(self) -> SparseTensor:
        return SparseTensor(self.profile, {i: -c for i, c in self._entries.items()}, check=False)

    def __sub__(self, other: SparseTensor) -> SparseTensor:
        return self + (-other)

    def scale(self, factor) -> SparseTensor:
        factor = _coerce(factor)
        return SparseTensor(self.profile, {i: c * factor for i, c in self._entries.items()}, check=False)

    def __rmul__(self, factor) -> SparseTensor:
        return self.scale(factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.profile == other.profile and self._entries == other._entries

    def __hash__(self):
        return hash((self.profile, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseTensor(order={self.order}, nnz={len(self)})"

    def permute_axes(self, order: Iterable[int]) -> SparseTensor:
        """New tensor whose axis ``p`` is old axis ``order[p]`` (0-based)."""
        order = tuple(order)
        if sorted(order) != list(range(self.order)):
            raise ShapeError("axis order is not a permutation")
        prof = tuple(self.profile[o] for o in order)
        return SparseTensor(
            prof, {tuple(idx[o] for o in order): c for idx, c in self._entries.items()}, check=False
        )

    def to_dense(self, guard: int = DENSE_SIZE_GUARD) -> list:
        """Flat row-major dense coefficients; refuses above ``guard`` entries."""
        size = prod(ax.dim for ax in self.profile)
        if size > guard:
            raise ShapeError(f"dense size {size} exceeds guard {guard}")
        flat = [Fraction(0)] * size
        for idx, c in self._entries.items():
            pos = 0
            for i, ax in zip(idx, self.profile):
                pos = pos * ax.dim + (i - 1)
            flat[pos] = c
        return flat

    def to_json(self) -> dict:
        return {
            "profile": [{"kind": ax.kind, "dim": ax.dim} for ax in self.profile],
            "entries": [
                {"idx": list(idx), "num": str(c.numerator), "den": str(c.denominator)}
                for idx, c in sorted(self._entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> SparseTensor:
        prof = tuple(Axis(ax["kind"], int(ax["dim"])) for ax in data["profile"])
        entries = {}
        for e in data["entries"]:
            idx = tuple(int(i) for i in e["idx"])
            entries[idx] = entries.get(idx, 0) + Fraction(int(e["num"]), int(e.get("den", "1")))
        return cls(prof, entries)


def zero_tensor(prof: AxisProfile) -> SparseTensor:
    return SparseTensor(prof, {}, check=False)


def basis_tensor(prof: AxisProfile, idx: tuple[int, ...], coef=1) -> SparseTensor:
    return SparseTensor(prof, {tuple(idx): coef})


def epsilon_tensor(m: int, total: int, sigma: Permutation, kind: str) -> SparseTensor:
    if total % m:
        raise DivisibilityError(f"{m} does not divide {total}")
    spec = EpsilonProductSpec(m, total // m, sigma)
    prof = tuple(Axis(kind, m) for _ in range(total))
    return SparseTensor(prof, dict(block_terms(spec.block_slots(), m, total)), check=False)


def build_v(n: int, r: int, sigma: Permutation) -> SparseTensor:
    """v_sigma in V^(2r): the sigma-indexed product of n-letter symbols."""
    return epsilon_tensor(n, 2 * r, sigma, V)


def build_w(k: int, r: int, eta: Permutation) -> SparseTensor:
    """w^eta in (W*)^r."""
    return epsilon_tensor(k, r, eta, WDUAL)


def tensor_product(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    entries = {ia + ib: ca * cb for ia, ca in a.items() for ib, cb in b.items()}
    return SparseTensor(a.profile + b.profile, entries, check=False)


def interleave_order(r: int) -> list[int]:
    """Axis order taking V^(2r) (x) W*^r to r consecutive (V, V, W*) triples."""
    order = []
    for t in range(r):
        order += [2 * t, 2 * t + 1, 2 * r + t]
    return order


def interleave(t: SparseTensor) -> SparseTensor:
    """Re-lay a generator tensor from block layout (all V axes, then all W* axes) to triples."""
    nv = sum(1 for ax in t.profile if ax.kind == V)
    r = t.order - nv
    expected = [V] * (2 * r) + [WDUAL] * r
    if [ax.kind for ax in t.profile] != expected:
        raise ShapeError("expected 2r V axes followed by r W* axes")
    return t.permute_axes(interleave_order(r))


def deinterleave(t: SparseTensor) -> SparseTensor:
    r = t.order // 3
    order = interleave_order(r)
    back = [0] * len(order)
    for pos, o in enumerate(order):
        back[o] = pos
    return t.permute_axes(back)


def _unit_size(prof: AxisProfile) -> int:
    kinds = [ax.kind for ax in prof]
    if kinds and all(kind == WDUAL for kind in kinds):
        return 1
    if kinds and len(kinds) % 3 == 0 and kinds == [V, V, WDUAL] * (len(kinds) // 3):
        return 3
    raise ShapeError("profile is not a repetition of (V, V, W*) triples")


def act(tau: Permutation, t: SparseTensor) -> SparseTensor:
    """Move factor group ``i`` to position ``tau(i)``.

    Groups are (V, V, W*) triples, or single axes for a pure W* tensor.
    """
    unit = _unit_size(t.profile)
    r = t.order // unit
    if tau.m != r:
        raise ShapeError(f"permutation degree {tau.m} != {r} factor groups")
    order = []
    inv = tau.inverse()
    for pos in range(1, r + 1):
        src = inv(pos) - 1
        order += [src * unit + u for u in range(unit)]
    return t.permute_axes(order)


def symmetrize(t: SparseTensor) -> SparseTensor:
    """Average of ``act(tau, t)`` over all tau in S_r; a projection."""
    unit = _unit_size(t.profile)
    r = t.order // unit
    acc: dict[tuple[int, ...], Fraction] = {}
    for images in _perms(range(r)):
        # images[i] is the destination of group i
        for idx, c in t.items():
            new = [0] * len(idx)
            for g, dest in enumerate(images):
                new[dest * unit:(dest + 1) * unit] = idx[g * unit:(g + 1) * unit]
            key = tuple(new)
            acc[key] = acc.get(key, 0) + c
    norm = Fraction(1, factorial(r))
    return SparseTensor(t.profile, {i: c * norm for i, c in acc.items()}, check=False)
