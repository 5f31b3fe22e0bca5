"""Exact invariants of vector-valued bilinear forms and the relations among them."""

from ._backend import BACKEND
from .exact_linalg import RationalMatrix, in_span, kernel_basis, rank
from .forms import BilinearForm
from .invariants import (
    BlockForm,
    GeneratorId,
    NoInvariantsError,
    canonicalize,
    contract_power,
    enumerate_distinct,
    evaluate_at,
    evaluate_polynomial,
    existence_gate,
    weight_check,
)
from .permutations import EpsilonProductSpec, Permutation, epsilon, epsilon_product, lift_to_double, parity
from .polynomials import BinaryQuadratic, SparsePolynomial, discriminant, pencil_determinant, poly_equal
from .relations import (
    RelationCertificate,
    ShuffleSpec,
    VGen,
    WGen,
    combined_relation,
    kernel_span_check,
    symmetrized_relation,
    trivial_relation,
    trivial_relations,
    typeA_relation,
    typeB_relation,
)
from .tensor_space import SparseTensor, build_v, build_w, interleave, symmetrize, tensor_product

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BilinearForm",
    "BinaryQuadratic",
    "BlockForm",
    "build_v",
    "build_w",
    "canonicalize",
    "combined_relation",
    "contract_power",
    "discriminant",
    "enumerate_distinct",
    "epsilon",
    "epsilon_product",
    "EpsilonProductSpec",
    "evaluate_at",
    "evaluate_polynomial",
    "existence_gate",
    "GeneratorId",
    "in_span",
    "interleave",
    "kernel_basis",
    "kernel_span_check",
    "lift_to_double",
    "NoInvariantsError",
    "parity",
    "pencil_determinant",
    "Permutation",
    "poly_equal",
    "rank",
    "RationalMatrix",
    "RelationCertificate",
    "ShuffleSpec",
    "SparsePolynomial",
    "SparseTensor",
    "symmetrize",
    "symmetrized_relation",
    "tensor_product",
    "trivial_relation",
    "trivial_relations",
    "typeA_relation",
    "typeB_relation",
    "VGen",
    "weight_check",
    "WGen",
]
