"""Concrete vector-valued bilinear forms as k-tuples of n x n rational matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DimensionError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints or decimal strings")
    return Fraction(value)


def det(matrix) -> Fraction:
    """Exact determinant by fraction-based elimination (small matrices)."""
    rows = [[parse_rational(x) for x in row] for row in matrix]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise DimensionError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(size):
        pivot = next((i for i in range(c, size) if rows[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for i in range(c + 1, size):
            f = rows[i][c] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def inverse(matrix) -> list[list[Fraction]]:
    rows = [[parse_rational(x) for x in row] for row in matrix]
    size = len(rows)
    aug = [row + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(rows)]
    for c in range(size):
        pivot = next((i for i in range(c, size) if aug[i][c]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(size):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[size:] for row in aug]


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class BilinearForm:
    """``matrices[alpha-1][i-1][j-1]`` is B^alpha_ij = f^alpha b(e_i, e_j)."""

    n: int
    k: int
    matrices: tuple

    def __post_init__(self):
        mats = tuple(
            tuple(tuple(parse_rational(x) for x in row) for row in mat) for mat in self.matrices
        )
        if len(mats) != self.k or any(
            len(mat) != self.n or any(len(row) != self.n for row in mat) for mat in mats
        ):
            raise DimensionError(f"expected {self.k} matrices of size {self.n}x{self.n}")
        object.__setattr__(self, "matrices", mats)

    def entry(self, alpha: int, i: int, j: int) -> Fraction:
        return self.matrices[alpha - 1][i - 1][j - 1]

    def values(self) -> list[Fraction]:
        """Entries in variable order: lexicographic on (alpha, i, j)."""
        return [x for mat in self.matrices for row in mat for x in row]

    def transform(self, a, p) -> BilinearForm:
        """The form g.b(x, y) = p b(a^-1 x, a^-1 y) for g = (a, p)."""
        if len(a) != self.n or len(p) != self.k:
            raise DimensionError("group element dimensions do not match the form")
        if det(a) == 0 or det(p) == 0:
            raise ValueError("a and p must be invertible")
        ainv = inverse(a)
        pulled = [matmul(matmul(transpose(ainv), mat), ainv) for mat in self.matrices]
        out = []
        for alpha in range(self.k):
            acc = [[Fraction(0)] * self.n for _ in range(self.n)]
            for beta in range(self.k):
                coef = parse_rational(p[alpha][beta])
                if coef:
                    for i in range(self.n):
                        for j in range(self.n):
                            acc[i][j] += coef * pulled[beta][i][j]
            out.append(acc)
        return BilinearForm(self.n, self.k, tuple(out))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "matrices": [[[str(x) for x in row] for row in mat] for mat in self.matrices],
        }

    @classmethod
    def from_json(cls, data: dict) -> BilinearForm:
        try:
            n, k, mats = int(data["n"]), int(data["k"]), data["matrices"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed form JSON: {exc}") from exc
        return cls(n, k, tuple(tuple(tuple(Fraction(str(x)) for x in row) for row in m) for m in mats))
