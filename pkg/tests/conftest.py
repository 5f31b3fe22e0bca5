import json
import re
from fractions import Fraction
from pathlib import Path

import pytest

from vvforms.permutations import Permutation
from vvforms.polynomials import SparsePolynomial, form_variables

GOLDEN = Path(__file__).parent / "golden"


def P(text, degree):
    return Permutation.parse(text, degree)


def golden(name):
    return json.loads((GOLDEN / name).read_text())


def signed_terms(pairs):
    """[["+", "1212"], ...] -> {(1, 2, 1, 2): 1, ...}"""
    return {tuple(int(ch) for ch in idx): (1 if s == "+" else -1) for s, idx in pairs}


def poly_from_factors(terms, n=2, k=2):
    variables = form_variables(n, k)
    acc = {}
    for coef, factors in terms:
        exps = [0] * len(variables)
        for f in factors:
            alpha, ij = f.split()
            exps[variables.index(f"b[{alpha}][{ij[0]}][{ij[1]}]")] += 1
        acc[tuple(exps)] = acc.get(tuple(exps), 0) + coef
    return SparsePolynomial(variables, acc)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*((?:b\^\d+_\d\d\s*)+)")


def parse_pretty(text, n=2, k=2):
    """Inverse of SparsePolynomial.pretty for single-digit b variables."""
    variables = form_variables(n, k)
    acc = {}
    for sign, coef, body in _TERM.findall(text.replace(" - ", " -").replace(" + ", " +")):
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        exps = [0] * len(variables)
        for a, i, j in re.findall(r"b\^(\d+)_(\d)(\d)", body):
            exps[variables.index(f"b[{a}][{i}][{j}]")] += 1
        acc[tuple(exps)] = acc.get(tuple(exps), 0) + c
    return SparsePolynomial(variables, acc)


@pytest.fixture
def golden_f23():
    return poly_from_factors(golden("f_23_67__23.json")["terms"])


# one pass/fail line per acceptance criterion in the terminal summary
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and "criterion_" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            name = report.nodeid.split("::")[-1]
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(re.search(r"criterion_(\d+)", s).group(1))):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
