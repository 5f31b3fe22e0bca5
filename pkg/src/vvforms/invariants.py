"""Generators of the invariants, their canonical block forms and polynomial evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, Union

from ._backend import block_terms, contract_terms
from .forms import BilinearForm, DimensionError, det
from .permutations import EpsilonProductSpec, Permutation, sign_of_sequence
from .polynomials import SparsePolynomial, form_variables, monomial_from_indices
from .tensor_space import DivisibilityError, build_v, build_w, tensor_product

__all__ = [
    "BilinearForm",
    "BlockForm",
    "GeneratorId",
    "NoInvariantsError",
    "canonicalize",
    "contract_power",
    "count_distinct",
    "enumerate_distinct",
    "evaluate_at",
    "evaluate_polynomial",
    "existence_gate",
    "generator_tensor",
    "set_partitions",
    "weight",
    "weight_check",
]


class NoInvariantsError(DivisibilityError):
    """No invariants exist in this degree (n does not divide 2r or k does not divide r)."""

    def __init__(self, n, k, r):
        super().__init__(f"no invariants: n∤2r or k∤r (n={n}, k={k}, r={r})")
        self.n, self.k, self.r = n, k, r


def existence_gate(n: int, k: int, r: int) -> bool:
    if min(n, k, r) < 1:
        raise ValueError("n, k and r must be positive")
    return (2 * r) % n == 0 and r % k == 0


@dataclass(frozen=True)
class GeneratorId:
    n: int
    k: int
    r: int
    sigma: Permutation
    eta: Permutation

    def __post_init__(self):
        if self.sigma.m != 2 * self.r or self.eta.m != self.r:
            raise DimensionError(f"sigma must have degree {2 * self.r} and eta degree {self.r}")
        if not existence_gate(self.n, self.k, self.r):
            raise NoInvariantsError(self.n, self.k, self.r)

    @classmethod
    def parse(cls, n: int, k: int, r: int, sigma: str, eta: str) -> GeneratorId:
        return cls(n, k, r, Permutation.parse(sigma, 2 * r), Permutation.parse(eta, r))

    def v_slots(self) -> list[tuple[int, ...]]:
        return EpsilonProductSpec(self.n, 2 * self.r // self.n, self.sigma).block_slots()

    def w_slots(self) -> list[tuple[int, ...]]:
        return EpsilonProductSpec(self.k, self.r // self.k, self.eta).block_slots()

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "r": self.r, "sigma": str(self.sigma), "eta": str(self.eta)}

    def __str__(self) -> str:
        return f"v_{self.sigma} (x) w^{self.eta}"


def _sorted_blocks(slot_lists) -> tuple[tuple[tuple[int, ...], ...], int]:
    sign = 1
    blocks = []
    for slots in slot_lists:
        sign *= sign_of_sequence(slots)
        blocks.append(tuple(sorted(slots)))
    blocks.sort()
    return tuple(blocks), sign


@dataclass(frozen=True)
class BlockForm:
    """A generator up to the column-swap sign rule: two set partitions and a sign.

    ``v_blocks`` partitions {1..2r} into blocks of size n, ``w_blocks``
    partitions {1..r} into blocks of size k; blocks are increasing and ordered
    by least element.
    """

    v_blocks: tuple
    w_blocks: tuple
    sign: int = 1

    def __post_init__(self):
        vb = tuple(sorted(tuple(sorted(int(x) for x in b)) for b in self.v_blocks))
        wb = tuple(sorted(tuple(sorted(int(x) for x in b)) for b in self.w_blocks))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        for blocks in (vb, wb):
            flat = [x for b in blocks for x in b]
            if not blocks or sorted(flat) != list(range(1, len(flat) + 1)):
                raise ValueError(f"blocks {blocks} do not partition 1..{len(flat)}")
            if len({len(b) for b in blocks}) != 1:
                raise ValueError("blocks must have equal size")
        if 2 * sum(len(b) for b in wb) != sum(len(b) for b in vb):
            raise ValueError("v blocks must cover 2r slots and w blocks r slots")
        object.__setattr__(self, "v_blocks", vb)
        object.__setattr__(self, "w_blocks", wb)

    @classmethod
    def _trusted(cls, v_blocks: tuple, w_blocks: tuple, sign: int = 1) -> BlockForm:
        # skip validation for blocks already in normal form
        bf = object.__new__(cls)
        object.__setattr__(bf, "v_blocks", v_blocks)
        object.__setattr__(bf, "w_blocks", w_blocks)
        object.__setattr__(bf, "sign", sign)
        return bf

    @property
    def n(self) -> int:
        return len(self.v_blocks[0])

    @property
    def k(self) -> int:
        return len(self.w_blocks[0])

    @property
    def r(self) -> int:
        return sum(len(b) for b in self.w_blocks)

    @property
    def key(self) -> tuple:
        return (self.v_blocks, self.w_blocks)

    def __neg__(self) -> BlockForm:
        return BlockForm(self.v_blocks, self.w_blocks, -self.sign)

    def to_generator(self) -> GeneratorId:
        """The generator whose symbols read exactly these blocks (so its own sign is +1)."""
        return GeneratorId(
            self.n, self.k, self.r, _perm_reading(self.v_blocks), _perm_reading(self.w_blocks)
        )

    def to_json(self) -> dict:
        return {
            "v_blocks": [list(b) for b in self.v_blocks],
            "w_blocks": [list(b) for b in self.w_blocks],
            "sign": self.sign,
        }

    def __str__(self) -> str:
        fmt = lambda blocks: "".join("[" + ",".join(map(str, b)) + "]" for b in blocks)
        return f"{'-' if self.sign < 0 else ''}v{fmt(self.v_blocks)} (x) w{fmt(self.w_blocks)}"


def _perm_reading(blocks) -> Permutation:
    # sigma with sigma^-1((t-1)m+u) = blocks[t][u]
    total = sum(len(b) for b in blocks)
    images = [0] * total
    pos = 1
    for b in blocks:
        for slot in b:
            images[slot - 1] = pos
            pos += 1
    return Permutation(tuple(images))


Generator = Union[GeneratorId, BlockForm]


def canonicalize(g: Generator) -> BlockForm:
    if isinstance(g, BlockForm):
        return g
    vb, vs = _sorted_blocks(g.v_slots())
    wb, ws = _sorted_blocks(g.w_slots())
    return BlockForm(vb, wb, vs * ws)


def canonical_v(n: int, r: int, sigma: Permutation) -> tuple[tuple, int]:
    """(blocks, sign) of v_sigma alone."""
    return _sorted_blocks(EpsilonProductSpec(n, 2 * r // n, sigma).block_slots())


def canonical_w(k: int, r: int, eta: Permutation) -> tuple[tuple, int]:
    return _sorted_blocks(EpsilonProductSpec(k, r // k, eta).block_slots())


def set_partitions(total: int, size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of {1..total} into blocks of ``size``, in lexicographic order."""
    if total % size:
        raise DivisibilityError(f"{size} does not divide {total}")

    def rec(remaining):
        if not remaining:
            yield ()
            return
        first, rest = remaining[0], remaining[1:]
        for others in combinations(rest, size - 1):
            block = (first,) + others
            left = tuple(x for x in rest if x not in others)
            for tail in rec(left):
                yield (block,) + tail

    yield from rec(tuple(range(1, total + 1)))


def count_pairings(total: int, size: int) -> int:
    blocks = total // size
    return factorial(total) // (factorial(size) ** blocks * factorial(blocks))


def count_distinct(n: int, k: int, r: int) -> int:
    if not existence_gate(n, k, r):
        raise NoInvariantsError(n, k, r)
    return count_pairings(2 * r, n) * count_pairings(r, k)


def enumerate_distinct(n: int, k: int, r: int) -> list[BlockForm]:
    """One sign-normalized representative per generator class.

    Raises :class:`NoInvariantsError` (rather than returning an empty list)
    when the degree admits no invariants at all.
    """
    if not existence_gate(n, k, r):
        raise NoInvariantsError(n, k, r)
    vparts = list(set_partitions(2 * r, n))
    wparts = list(set_partitions(r, k))
    return [BlockForm._trusted(vb, wb) for vb in vparts for wb in wparts]


@lru_cache(maxsize=4096)
def _terms(blocks: tuple, dim: int, total: int):
    return block_terms([list(b) for b in blocks], dim, total)


def _parts(g: Generator):
    if isinstance(g, BlockForm):
        return g.n, g.k, g.r, g.v_blocks, g.w_blocks, g.sign
    return g.n, g.k, g.r, tuple(g.v_slots()), tuple(g.w_slots()), 1


def evaluate_polynomial(g: Generator) -> SparsePolynomial:
    """The invariant polynomial f^sigma_eta in the variables b[a][i][j].

    Sums only over nonzero symbol assignments: (n!)^(2r/n) (k!)^(r/k) terms.
    """
    n, k, r, vb, wb, sign = _parts(g)
    nvars = k * n * n
    raw = contract_terms(_terms(vb, n, 2 * r), _terms(wb, k, r), n, k, r)
    return SparsePolynomial(
        form_variables(n, k), {monomial_from_indices(key, nvars): sign * c for key, c in raw.items()}
    )


def generator_tensor(g: Generator):
    """v_sigma (x) w^eta in block layout: 2r V axes then r W* axes."""
    if isinstance(g, BlockForm):
        gid = g.to_generator()
        t = tensor_product(build_v(gid.n, gid.r, gid.sigma), build_w(gid.k, gid.r, gid.eta))
        return t if g.sign > 0 else -t
    return tensor_product(build_v(g.n, g.r, g.sigma), build_w(g.k, g.r, g.eta))


def contract_power(t, n: int, k: int, r: int) -> SparsePolynomial:
    """Pair a block-layout tensor in V^(2r) (x) W*^r with b^(x)r, symbolically.

    Independent of the symbol-enumeration path in :func:`evaluate_polynomial`.
    """
    if t.order != 3 * r:
        raise DimensionError("tensor order does not match 3r")
    variables = form_variables(n, k)
    index = {name: pos for pos, name in enumerate(variables)}
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, c in t.items():
        exps = [0] * len(variables)
        for s in range(r):
            exps[index[f"b[{idx[2 * r + s]}][{idx[2 * s]}][{idx[2 * s + 1]}]"]] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + c
    return SparsePolynomial(variables, acc)


def evaluate_at(g: Generator, form: BilinearForm) -> Fraction:
    n, k, r, vb, wb, sign = _parts(g)
    if (form.n, form.k) != (n, k):
        raise DimensionError(f"form is ({form.n}, {form.k}), generator needs ({n}, {k})")
    vals = form.values()
    total = Fraction(0)
    raw = contract_terms(_terms(vb, n, 2 * r), _terms(wb, k, r), n, k, r)
    for key, c in raw.items():
        term = Fraction(c)
        for i in key:
            term *= vals[i]
            if not term:
                break
        total += term
    return sign * total


def weight(g: Generator, a, p) -> Fraction:
    """The character det(a)^(-2r/n) det(p)^(r/k) by which the invariant rescales."""
    n, k, r = _parts(g)[:3]
    da, dp = det(a), det(p)
    if da == 0 or dp == 0:
        raise ValueError("a and p must be invertible")
    return da ** (-(2 * r // n)) * dp ** (r // k)


def weight_check(g: Generator, form: BilinearForm, a, p) -> bool:
    lhs = evaluate_at(g, form.transform(a, p))
    return lhs == weight(g, a, p) * evaluate_at(g, form)


def generator_from_json(data: dict, n: int | None = None, k: int | None = None, r: int | None = None) -> Generator:
    """Accepts ``{"sigma", "eta", "n", "k", "r"}`` or ``{"v_blocks", "w_blocks", "sign"}``."""
    if "v_blocks" in data:
        form = BlockForm(
            tuple(tuple(b) for b in data["v_blocks"]),
            tuple(tuple(b) for b in data["w_blocks"]),
            int(data.get("sign", 1)),
        )
        if not existence_gate(form.n, form.k, form.r):
            raise NoInvariantsError(form.n, form.k, form.r)
        return form
    n = int(data.get("n", n))
    k = int(data.get("k", k))
    r = int(data.get("r", r))
    return GeneratorId.parse(n, k, r, data.get("sigma", "(1)"), data.get("eta", "(1)"))
