"""Sparse multivariate polynomials over the rationals and the determinant pencil.

Polynomials carry an explicit, ordered variable list; arithmetic between
polynomials over different variable lists raises :class:`VariableMismatch`.
The invariant-theory variables are ``b[a][i][j]`` for B^a_ij, ordered
lexicographically on (a, i, j).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .forms import BilinearForm, DimensionError, parse_rational


class VariableMismatch(ValueError):
    pass


def form_variables(n: int, k: int) -> tuple[str, ...]:
    return tuple(
        f"b[{a}][{i}][{j}]" for a in range(1, k + 1) for i in range(1, n + 1) for j in range(1, n + 1)
    )


def _grlex_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


class SparsePolynomial:
    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], object] = ()):
        self.variables = tuple(variables)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        nv = len(self.variables)
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError(f"exponent vector {exps} does not match {nv} variables")
            c = parse_rational(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean

    # construction

    @classmethod
    def zero(cls, variables) -> SparsePolynomial:
        return cls(variables)

    @classmethod
    def constant(cls, variables, value) -> SparsePolynomial:
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def variable(cls, variables, name: str) -> SparsePolynomial:
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded lexicographic order, largest monomial first."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    # arithmetic

    def _check(self, other: SparsePolynomial):
        if self.variables != other.variables:
            raise VariableMismatch("polynomials are over different variable lists")

    def _lift(self, other) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        return SparsePolynomial.constant(self.variables, other)

    def __add__(self, other) -> SparsePolynomial:
        other = self._lift(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return SparsePolynomial(self.variables, acc)

    __radd__ = __add__

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> SparsePolynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SparsePolynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            c = parse_rational(other)
            return SparsePolynomial(self.variables, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return SparsePolynomial(self.variables, acc)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> SparsePolynomial:
        if power < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePolynomial.constant(self.variables, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePolynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePolynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def evaluate(self, values: Sequence) -> Fraction:
        if len(values) != len(self.variables):
            raise DimensionError(f"expected {len(self.variables)} values, got {len(values)}")
        vals = [parse_rational(v) for v in values]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.pretty()!r})"

    def pretty(self) -> str:
        """Human-readable rendering, repeated factors written out as in hand calculations."""
        if not self._terms:
            return "0"
        names = [_pretty_name(v) for v in self.variables]
        parts = []
        for exps, c in self.sorted_terms():
            factors = [names[i] for i, e in enumerate(exps) for _ in range(e)]
            mag = abs(c)
            coef = "" if (mag == 1 and factors) else str(mag)
            body = " ".join(([coef] if coef else []) + factors)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [
                {"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> SparsePolynomial:
        return cls(
            data["vars"],
            [(tuple(t["exps"]), Fraction(int(t["num"]), int(t.get("den", "1")))) for t in data["terms"]],
        )


_B_NAME = re.compile(r"b\[(\d+)\]\[(\d+)\]\[(\d+)\]$")


def _pretty_name(var: str) -> str:
    m = _B_NAME.match(var)
    if m:
        a, i, j = m.groups()
        return f"b^{a}_{i}{j}" if len(i) == 1 and len(j) == 1 else f"b^{a}_{i},{j}"
    return var


def poly_equal(p: SparsePolynomial, q: SparsePolynomial) -> bool:
    if p.variables != q.variables:
        raise VariableMismatch("polynomials are over different variable lists")
    return p == q


def monomial_from_indices(indices: Sequence[int], nvars: int) -> tuple[int, ...]:
    exps = [0] * nvars
    for i in indices:
        exps[i] += 1
    return tuple(exps)


def form_entry_polynomials(n: int, k: int, form: BilinearForm | None = None):
    """``mats[a][i][j]`` as polynomials: the symbol b[a+1][i+1][j+1], or the form's constant."""
    variables = form_variables(n, k)
    if form is not None and (form.n, form.k) != (n, k):
        raise DimensionError("form dimensions do not match")
    mats = []
    for a in range(1, k + 1):
        mat = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                if form is None:
                    row.append(SparsePolynomial.variable(variables, f"b[{a}][{i}][{j}]"))
                else:
                    row.append(SparsePolynomial.constant(variables, form.entry(a, i, j)))
            mat.append(row)
        mats.append(mat)
    return mats


@dataclass(frozen=True)
class BinaryQuadratic:
    """A x^2 + Bc x y + C y^2 with polynomial coefficients."""

    A: SparsePolynomial
    Bc: SparsePolynomial
    C: SparsePolynomial

    def at(self, x, y) -> SparsePolynomial:
        x, y = parse_rational(x), parse_rational(y)
        return self.A * (x * x) + self.Bc * (x * y) + self.C * (y * y)

    def to_json(self) -> dict:
        return {"x^2": self.A.to_json(), "xy": self.Bc.to_json(), "y^2": self.C.to_json()}

    def pretty(self) -> str:
        return f"({self.A.pretty()}) x^2 + ({self.Bc.pretty()}) x y + ({self.C.pretty()}) y^2"


def pencil_determinant(form: BilinearForm | None = None) -> BinaryQuadratic:
    """det(x B1 + y B2) for a 2-dimensional form with values in a 2-dimensional space.

    ``form=None`` gives the symbolic pencil in the b variables.
    """
    if form is not None and (form.n, form.k) != (2, 2):
        raise DimensionError("the pencil needs n = k = 2")
    (b1, b2) = form_entry_polynomials(2, 2, form)
    a = b1[0][0] * b1[1][1] - b1[0][1] * b1[1][0]
    c = b2[0][0] * b2[1][1] - b2[0][1] * b2[1][0]
    bc = b1[0][0] * b2[1][1] + b1[1][1] * b2[0][0] - b1[0][1] * b2[1][0] - b1[1][0] * b2[0][1]
    return BinaryQuadratic(a, bc, c)


def discriminant(q: BinaryQuadratic) -> SparsePolynomial:
    return q.Bc * q.Bc - q.A * q.C * 4
