"""Relations among the generators, each certified by expansion to zero.

Single-side relations live on V^(2r) (type A, in the v_sigma) or on W*^r
(type B, in the w^eta).  Tensoring one of them with a fixed generator on the
other side gives a relation among full generators; :func:`kernel_span_check`
confirms at small sizes that these, together with the sign rule, span every
linear relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations as _perms
from math import factorial
from typing import Iterator, Union

from .exact_linalg import RationalMatrix, SpanTracker, kernel_basis
from .invariants import (
    BlockForm,
    GeneratorId,
    NoInvariantsError,
    _terms,
    canonical_v,
    canonical_w,
    canonicalize,
    evaluate_polynomial,
    existence_gate,
    generator_tensor,
    set_partitions,
    _perm_reading,
)
from .permutations import Permutation
from .tensor_space import DivisibilityError, ShapeError, build_v, build_w, interleave, symmetrize


class ConstructionError(RuntimeError):
    """A candidate relation did not expand to zero under any construction."""


@dataclass(frozen=True)
class VGen:
    """v_sigma in V^(2r), dim V = n."""

    n: int
    r: int
    sigma: Permutation

    def tensor(self):
        return build_v(self.n, self.r, self.sigma)

    def canonical(self):
        return canonical_v(self.n, self.r, self.sigma)

    def to_json(self) -> dict:
        return {"sigma": str(self.sigma)}


@dataclass(frozen=True)
class WGen:
    """w^eta in W*^r, dim W = k."""

    k: int
    r: int
    eta: Permutation

    def tensor(self):
        return build_w(self.k, self.r, self.eta)

    def canonical(self):
        return canonical_w(self.k, self.r, self.eta)

    def to_json(self) -> dict:
        return {"eta": str(self.eta)}


Term = Union[VGen, WGen, GeneratorId]


@dataclass(frozen=True)
class ShuffleSpec:
    base: Permutation
    slots: tuple

    def __post_init__(self):
        slots = tuple(sorted(int(s) for s in self.slots))
        if len(set(slots)) != len(slots):
            raise ValueError("shuffle slots must be distinct")
        if slots and not (1 <= slots[0] and slots[-1] <= self.base.m):
            raise ValueError(f"shuffle slots must lie in 1..{self.base.m}")
        object.__setattr__(self, "slots", slots)


@dataclass
class RelationCertificate:
    kind: str  # trivial | typeA | typeB | combined | symmetrized
    terms: list  # [(Fraction, Term)]
    construction: str = "literal"
    verified: bool = False
    slot_sequence: tuple = ()
    dropped: list = field(default_factory=list)

    @property
    def space(self) -> str:
        first = self.terms[0][1] if self.terms else (self.dropped[0][1] if self.dropped else None)
        if isinstance(first, VGen):
            return "v"
        if isinstance(first, WGen):
            return "w"
        return "vw"

    def expand(self):
        """Signed sum of the term tensors (block layout for full generators)."""
        total = None
        for coef, term in self.terms:
            t = _term_tensor(term).scale(coef)
            total = t if total is None else total + t
        return total

    def class_vector(self) -> dict:
        """Coefficients over canonical block forms; trivially related terms merge."""
        acc: dict = {}
        for coef, term in self.terms:
            key, sign = _term_class(term)
            acc[key] = acc.get(key, 0) + sign * coef
        return {key: c for key, c in acc.items() if c}

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "terms": [{"coef": str(c), **_term_json(t)} for c, t in self.terms],
            "verified": self.verified,
            "construction": self.construction,
        }
        if self.slot_sequence:
            out["slots"] = list(self.slot_sequence)
        if self.dropped:
            out["dropped"] = [{"coef": str(c), **_term_json(t)} for c, t in self.dropped]
        return out


def _term_tensor(term: Term):
    if isinstance(term, (VGen, WGen)):
        return term.tensor()
    return generator_tensor(term)


def _term_class(term: Term):
    if isinstance(term, (VGen, WGen)):
        return term.canonical()
    bf = canonicalize(term)
    return bf.key, bf.sign


def _term_json(term: Term) -> dict:
    if isinstance(term, GeneratorId):
        return {"sigma": str(term.sigma), "eta": str(term.eta)}
    return term.to_json()


def _verify(cert: RelationCertificate) -> bool:
    total = cert.expand()
    return total is None or total.is_zero()


def shuffle_family(base: Permutation, seq) -> list[Permutation]:
    """The permutations base_j, j = 1..len(seq), for an ordered slot sequence.

    base_j agrees with base off ``seq``; on ``seq = (i_1, ..., i_{m+1})`` it sends
    i_l to base(i_l) for l < j, i_j to base(i_{m+1}), and i_l to base(i_{l-1})
    for l > j.
    """
    seq = tuple(seq)
    out = []
    for j in range(1, len(seq) + 1):
        images = list(base.images)
        for l in range(1, len(seq) + 1):
            if l < j:
                value = base(seq[l - 1])
            elif l > j:
                value = base(seq[l - 2])
            else:
                value = base(seq[-1])
            images[seq[l - 1] - 1] = value
        out.append(Permutation(tuple(images)))
    return out


def _exchange_sequence(base: Permutation, m: int, slots: tuple) -> tuple:
    # distinguished symbol: the one whose slots meet ``slots`` most (ties: earliest slot),
    # read in symbol order, followed by the first requested slot outside it
    inv = base.inverse()
    blocks = [tuple(inv(t * m + u) for u in range(1, m + 1)) for t in range(base.m // m)]
    chosen = max(blocks, key=lambda b: (len(set(b) & set(slots)), -min((s for s in slots if s in b), default=base.m + 1)))
    outside = [s for s in slots if s not in chosen]
    extra = outside[0] if outside else next(s for s in range(1, base.m + 1) if s not in chosen)
    return chosen + (extra,)


def _shuffle_relation(kind, make_term, m, total, spec: ShuffleSpec, sign_of) -> RelationCertificate:
    if total % m:
        raise DivisibilityError(f"{m} does not divide {total}")
    if spec.base.m != total:
        raise ShapeError(f"base permutation must have degree {total}")
    if len(spec.slots) != m + 1:
        raise ValueError(f"a {kind} relation needs {m + 1} slots")
    attempts = [("literal", spec.slots), ("shuffle", _exchange_sequence(spec.base, m, spec.slots))]
    for construction, seq in attempts:
        family = shuffle_family(spec.base, seq)
        terms = [(Fraction(sign_of(j, m)), make_term(p)) for j, p in enumerate(family, start=1)]
        terms.reverse()  # base generator (j = m + 1) first
        cert = RelationCertificate(kind, terms, construction, slot_sequence=tuple(seq))
        if _verify(cert):
            cert.verified = True
            return cert
    raise ConstructionError(f"no construction of the {kind} relation for {spec} expands to zero")


def typeA_relation(n: int, r: int, spec: ShuffleSpec) -> RelationCertificate:
    """sum_j (-1)^(j+1) v_{sigma_j} = 0 over n+1 slots of V^(2r)."""
    return _shuffle_relation("typeA", lambda p: VGen(n, r, p), n, 2 * r, spec, lambda j, m: (-1) ** (j + 1))


def typeB_relation(k: int, r: int, spec: ShuffleSpec) -> RelationCertificate:
    """sum_j (-1)^(k+1-j) w^{eta_j} = 0 over k+1 slots of W*^r.

    The sign is normalized so the base generator eta = eta_{k+1} enters with +1.
    """
    return _shuffle_relation("typeB", lambda p: WGen(k, r, p), k, r, spec, lambda j, m: (-1) ** (m + 1 - j))


def trivial_relation(a: Term, b: Term) -> RelationCertificate:
    """a - (sign ratio) b = 0 for two generators with the same blocks."""
    (ka, sa), (kb, sb) = _term_class(a), _term_class(b)
    if ka != kb:
        raise ValueError("generators have different blocks; no sign relation")
    cert = RelationCertificate("trivial", [(Fraction(1), a), (Fraction(-sa * sb), b)], "block-sign")
    cert.verified = _verify(cert)
    return cert


def iter_trivial_relations(n: int, k: int, r: int, side: str = "both") -> Iterator[RelationCertificate]:
    """Each raw side generator tied to its class representative by the sign rule."""
    if not existence_gate(n, k, r):
        raise NoInvariantsError(n, k, r)
    sides = {"v": [("v", n, 2 * r)], "w": [("w", k, r)], "both": [("v", n, 2 * r), ("w", k, r)]}[side]
    for which, m, total in sides:
        make = (lambda p: VGen(n, r, p)) if which == "v" else (lambda p: WGen(k, r, p))
        for images in _perms(range(1, total + 1)):
            p = Permutation(images)
            term = make(p)
            blocks, _ = term.canonical()
            rep = make(_perm_reading(blocks))
            if p != _term_perm(rep):
                yield trivial_relation(term, rep)


def _term_perm(term):
    return term.sigma if isinstance(term, VGen) else term.eta


def trivial_relations(n: int, k: int, r: int, side: str = "both", limit: int | None = None) -> list[RelationCertificate]:
    out = []
    for cert in iter_trivial_relations(n, k, r, side):
        if limit is not None and len(out) >= limit:
            break
        out.append(cert)
    return out


def combined_relation(v_part, w_part) -> RelationCertificate:
    """Tensor a single-side relation with a fixed generator on the other side."""
    v_is_rel = isinstance(v_part, RelationCertificate)
    w_is_rel = isinstance(w_part, RelationCertificate)
    if v_is_rel == w_is_rel:
        raise TypeError("exactly one of v_part, w_part must be a relation")
    if v_is_rel:
        if v_part.space != "v" or not isinstance(w_part, WGen):
            raise TypeError("expected a V-side relation and a WGen")
        terms = [(c, GeneratorId(t.n, w_part.k, t.r, t.sigma, w_part.eta)) for c, t in v_part.terms]
        source = v_part
    else:
        if w_part.space != "w" or not isinstance(v_part, VGen):
            raise TypeError("expected a VGen and a W-side relation")
        terms = [(c, GeneratorId(v_part.n, t.k, t.r, v_part.sigma, t.eta)) for c, t in w_part.terms]
        source = w_part
    cert = RelationCertificate("combined", terms, source.construction, slot_sequence=source.slot_sequence)
    cert.verified = _verify(cert)
    if not cert.verified:
        raise ConstructionError("combined relation does not expand to zero")
    return cert


def symmetrized_relation(c: RelationCertificate) -> RelationCertificate:
    """Push a full-generator relation through the symmetrizer.

    Terms with zero symmetrization are moved to ``dropped``; the rest are
    certified by the vanishing of the signed sum of their polynomials.
    """
    if c.space != "vw":
        raise TypeError("symmetrize a relation among full generators (use combined_relation first)")
    if not c.verified:
        raise ValueError("certificate is not verified")
    kept, dropped, polys = [], [], []
    for coef, term in c.terms:
        if symmetrize(interleave(generator_tensor(term))).is_zero():
            dropped.append((coef, term))
        else:
            kept.append((coef, term))
            polys.append(evaluate_polynomial(term) * coef)
    cert = RelationCertificate("symmetrized", kept, c.construction, slot_sequence=c.slot_sequence, dropped=dropped)
    if polys:
        total = polys[0]
        for p in polys[1:]:
            total = total + p
        cert.verified = total.is_zero()
    else:
        cert.verified = True
    return cert


def random_shuffle_spec(degree: int, size: int, rng: random.Random) -> ShuffleSpec:
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return ShuffleSpec(Permutation(tuple(images)), tuple(rng.sample(range(1, degree + 1), size)))


# --- completeness at small sizes -------------------------------------------------


@dataclass
class SpanReport:
    n: int
    k: int
    r: int
    classes: int
    raw_ids: int
    ambient_dim: int
    truncated: bool = False
    rank: int | None = None
    kernel_dim: int | None = None
    zero_generators: int | None = None
    relation_count: int = 0
    relation_rank: int | None = None
    relations_in_kernel: bool | None = None
    deficit: int | None = None
    deficit_basis: list = field(default_factory=list)

    @property
    def spanned(self) -> bool:
        return not self.truncated and self.deficit == 0

    def summary(self) -> str:
        if self.truncated:
            return f"truncated: {self.classes} classes exceed the budget"
        state = "spanned" if self.spanned else "NOT spanned"
        return f"kernel dim {self.kernel_dim}, {state}, deficit {self.deficit}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "classes": self.classes,
            "raw_ids": self.raw_ids,
            "ambient_dim": self.ambient_dim,
            "truncated": self.truncated,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "zero_generators": self.zero_generators,
            "relation_count": self.relation_count,
            "relation_rank": self.relation_rank,
            "relations_in_kernel": self.relations_in_kernel,
            "deficit": self.deficit,
            "deficit_basis": [
                [{"coef": str(c), **bf.to_json()} for c, bf in vec] for vec in self.deficit_basis
            ],
        }


def _side_relation_vectors(m, total, reps, make_relation):
    """Distinct class-coordinate vectors of all single-side relations on class representatives."""
    seen = set()
    out = []
    for rep in reps:
        base = _perm_reading(rep)
        for slots in combinations(range(1, total + 1), m + 1):
            cert = make_relation(ShuffleSpec(base, slots))
            vec = cert.class_vector()
            key = tuple(sorted(vec.items()))
            if vec and key not in seen:
                seen.add(key)
                out.append(vec)
    return out


def kernel_span_check(n: int, k: int, r: int, budget: int = 5000) -> SpanReport:
    """Compare the kernel of (distinct generators -> tensors) with the span of the relations.

    ``budget`` caps the number of generator classes; beyond it a truncated
    report is returned without computing anything.
    """
    if not existence_gate(n, k, r):
        raise NoInvariantsError(n, k, r)
    vparts = list(set_partitions(2 * r, n))
    wparts = list(set_partitions(r, k))
    report = SpanReport(
        n, k, r,
        classes=len(vparts) * len(wparts),
        raw_ids=factorial(2 * r) * factorial(r),
        ambient_dim=n ** (2 * r) * k**r,
    )
    if report.classes > budget:
        report.truncated = True
        return report

    def flat(idx, dim):
        pos = 0
        for i in idx:
            pos = pos * dim + (i - 1)
        return pos

    vcols = [{flat(a, n): s for a, s in _terms(vb, n, 2 * r)} for vb in vparts]
    wcols = [{flat(b, k): s for b, s in _terms(wb, k, r)} for wb in wparts]
    wsize = k**r
    columns = []
    for vc in vcols:
        for wc in wcols:
            columns.append({i * wsize + j: a * b for i, a in vc.items() for j, b in wc.items()})
    report.zero_generators = sum(1 for c in columns if not c)
    matrix = RationalMatrix.from_columns(report.ambient_dim, columns)
    kernel = kernel_basis(matrix)
    report.kernel_dim = len(kernel)
    report.rank = report.classes - report.kernel_dim

    vindex = {vb: i for i, vb in enumerate(vparts)}
    windex = {wb: j for j, wb in enumerate(wparts)}
    nw = len(wparts)
    vrels = _side_relation_vectors(n, 2 * r, vparts, lambda s: typeA_relation(n, r, s))
    wrels = _side_relation_vectors(k, r, wparts, lambda s: typeB_relation(k, r, s))
    full = []
    for vec in vrels:
        for j in range(nw):
            full.append({vindex[key] * nw + j: c for key, c in vec.items()})
    for vec in wrels:
        for i in range(len(vparts)):
            full.append({i * nw + windex[key]: c for key, c in vec.items()})
    report.relation_count = len(full)

    tracker = SpanTracker(report.classes)
    in_kernel = True
    for vec in full:
        if tracker.add(vec):
            image: dict = {}
            for col, c in vec.items():
                for row, x in columns[col].items():
                    image[row] = image.get(row, 0) + c * x
            if any(image.values()):
                in_kernel = False
    report.relations_in_kernel = in_kernel
    report.relation_rank = tracker.rank
    deficit = []
    for vec in kernel:
        sparse = {j: x for j, x in enumerate(vec) if x}
        if tracker.add(sparse):
            deficit.append(
                [(x, BlockForm(vparts[j // nw], wparts[j % nw], 1)) for j, x in sparse.items()]
            )
    report.deficit = len(deficit)
    report.deficit_basis = deficit
    return report
