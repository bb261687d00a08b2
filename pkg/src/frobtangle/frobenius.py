"""Finite-dimensional Frobenius algebras over the rationals.

An algebra is given by structure constants ``mult[i][j][k]`` (the coefficient
of ``e_k`` in ``e_i e_j``), a unit vector and a linear form.  The form is
Frobenius when its Gram matrix ``P[i][j] = form(e_i e_j)`` is invertible;
the copairing and comultiplication are then derived from ``P^-1``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import exact
from .exact import Matrix, compose, identity, tensor_all
from .terms import Generator


class DegenerateForm(ValueError):
    pass


class UnknownAlgebra(LookupError):
    pass


@dataclass(frozen=True)
class FrobAlgebra:
    dim: int
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]
    unit: tuple[Fraction, ...]
    form: tuple[Fraction, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, mult: Sequence, unit: Sequence, form: Sequence, name: str = "") -> "FrobAlgebra":
        f = exact.to_fraction
        n = len(unit)
        m = tuple(tuple(tuple(f(x) for x in mult[i][j]) for j in range(n)) for i in range(n))
        if len(mult) != n or any(len(mult[i]) != n or any(len(v) != n for v in mult[i]) for i in range(n)):
            raise ValueError("structure constants must have shape dim x dim x dim")
        if len(form) != n:
            raise ValueError("form must have one entry per basis vector")
        return cls(n, m, tuple(f(x) for x in unit), tuple(f(x) for x in form), name)

    def product(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.dim
        return tuple(
            sum((x[i] * y[j] * self.mult[i][j][k] for i in range(n) for j in range(n)), Fraction(0))
            for k in range(n)
        )

    def mult_matrix(self) -> Matrix:
        n = self.dim
        return tuple(tuple(self.mult[i][j][k] for j in range(n) for i in range(n)) for k in range(n))

    def unit_matrix(self) -> Matrix:
        return exact.column(self.unit)

    def form_matrix(self) -> Matrix:
        return exact.row(self.form)

    def gram(self) -> Matrix:
        n = self.dim
        return tuple(
            tuple(sum((self.mult[i][j][k] * self.form[k] for k in range(n)), Fraction(0)) for j in range(n))
            for i in range(n)
        )


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, passed, detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks]}


def _compare(report: Report, name: str, pairs: Sequence[tuple[Matrix, Matrix]]) -> None:
    bad = []
    for n, (lhs, rhs) in enumerate(pairs):
        for i, j, x, y in exact.differences(lhs, rhs):
            bad.append(f"eq{n} [{i},{j}]: {exact.fraction_str(x)} != {exact.fraction_str(y)}")
    report.add(name, not bad, "; ".join(bad[:8]) + (" ..." if len(bad) > 8 else ""))


def verify_algebra(A: FrobAlgebra) -> Report:
    """Associativity and both unit laws, one report entry per failed coordinate."""
    rep = Report()
    n = A.dim
    basis = [tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = A.product(A.product(basis[i], basis[j]), basis[k])
                rhs = A.product(basis[i], A.product(basis[j], basis[k]))
                if lhs != rhs:
                    rep.add(f"associativity e{i}e{j}e{k}", False, f"{lhs} != {rhs}")
    for i in range(n):
        if A.product(A.unit, basis[i]) != basis[i]:
            rep.add(f"left unit e{i}", False, str(A.product(A.unit, basis[i])))
        if A.product(basis[i], A.unit) != basis[i]:
            rep.add(f"right unit e{i}", False, str(A.product(basis[i], A.unit)))
    if rep.ok:
        rep.add("algebra axioms", True)
    return rep


def derive_copairing(A: FrobAlgebra) -> Matrix:
    """Copairing as a ``dim^2 x 1`` column: sum of (P^-1)[i][j] e_i (x) e_j."""
    try:
        pinv = exact.inverse(A.gram())
    except ZeroDivisionError:
        raise DegenerateForm(f"Gram matrix of {A.name or 'algebra'} is singular") from None
    n = A.dim
    return tuple((pinv[i][j],) for j in range(n) for i in range(n))


def derive_comult(A: FrobAlgebra) -> Matrix:
    """Comultiplication (copairing on the left, then multiply on the right pair)."""
    n = A.dim
    g = derive_copairing(A)
    return compose(tensor_all(g, identity(n)), tensor_all(identity(n), A.mult_matrix()))


def structure_maps(A: FrobAlgebra) -> dict[Generator, Matrix]:
    maps = {Generator.MULT: A.mult_matrix(), Generator.UNIT: A.unit_matrix(), Generator.COUNIT: A.form_matrix()}
    try:
        maps[Generator.ZAG] = derive_copairing(A)
        maps[Generator.COMULT] = derive_comult(A)
    except DegenerateForm:
        pass
    return maps


def verify_definition(A: FrobAlgebra, which: str, maps: dict[Generator, Matrix] | None = None) -> Report:
    """Check every commuting diagram of one characterization exactly.

    ``which`` is ``"i"`` (coalgebra and Frobenius identities, together with
    the algebra axioms), ``"ii"`` (copairing slide and counit routes) or
    ``"iii"`` (zig-zags).  ``maps`` may override the structure maps.
    """
    if maps is None:
        maps = structure_maps(A)
        if Generator.ZAG not in maps:
            raise DegenerateForm(f"Gram matrix of {A.name or 'algebra'} is singular")
    one = identity(A.dim)
    m, u, e = maps[Generator.MULT], maps[Generator.UNIT], maps[Generator.COUNIT]
    rep = Report()
    if which == "i":
        d = maps[Generator.COMULT]
        _compare(rep, "associativity", [(compose(tensor_all(m, one), m), compose(tensor_all(one, m), m))])
        _compare(rep, "unit", [(compose(tensor_all(u, one), m), one), (compose(tensor_all(one, u), m), one)])
        _compare(rep, "coassociativity", [(compose(d, tensor_all(d, one)), compose(d, tensor_all(one, d)))])
        _compare(rep, "counit", [(compose(d, tensor_all(e, one)), one), (compose(d, tensor_all(one, e)), one)])
        _compare(rep, "frobenius-left", [(compose(tensor_all(d, one), tensor_all(one, m)), compose(m, d))])
        _compare(rep, "frobenius-right", [(compose(tensor_all(one, d), tensor_all(m, one)), compose(m, d))])
    elif which == "ii":
        g = maps[Generator.ZAG]
        _compare(rep, "copairing-slide", [(compose(tensor_all(g, one), tensor_all(one, m)),
                                           compose(tensor_all(one, g), tensor_all(m, one)))])
        _compare(rep, "copairing-counit", [(compose(g, tensor_all(one, e)), u), (compose(g, tensor_all(e, one)), u)])
    elif which == "iii":
        g = maps[Generator.ZAG]
        em = compose(m, e)
        _compare(rep, "zigzag-left", [(compose(tensor_all(g, one), tensor_all(one, em)), one)])
        _compare(rep, "zigzag-right", [(compose(tensor_all(one, g), tensor_all(em, one)), one)])
    else:
        raise ValueError(f"unknown characterization {which!r}; expected i, ii or iii")
    return rep


# ---------------------------------------------------------------- built-ins

def truncated_polynomial(n: int) -> FrobAlgebra:
    """K[x]/(x^n) with the top-coefficient form."""
    mult = [[[int(i + j == k) for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [int(k == 0) for k in range(n)]
    form = [int(k == n - 1) for k in range(n)]
    return FrobAlgebra.build(mult, unit, form, f"kx{n}")


def matrix_algebra_2() -> FrobAlgebra:
    """2x2 matrices, basis E11, E12, E21, E22, with the trace form."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    mult = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                mult[a][b][units.index((i, l))] = 1
    return FrobAlgebra.build(mult, [1, 0, 0, 1], [1, 0, 0, 1], "m2-trace")


def cyclic_group_algebra(n: int) -> FrobAlgebra:
    """Group algebra of Z/n, basis g^0..g^(n-1), form = coefficient of the identity."""
    mult = [[[int((i + j) % n == k) for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [int(k == 0) for k in range(n)]
    return FrobAlgebra.build(mult, unit, unit, f"z{n}")


BUILTIN_NAMES = ("kx2", "kx3", "m2-trace", "z2", "z3")


def builtin(name: str) -> FrobAlgebra:
    makers = {
        "kx2": lambda: truncated_polynomial(2),
        "kx3": lambda: truncated_polynomial(3),
        "m2-trace": matrix_algebra_2,
        "z2": lambda: cyclic_group_algebra(2),
        "z3": lambda: cyclic_group_algebra(3),
    }
    if name not in makers:
        raise UnknownAlgebra(name)
    return makers[name]()


def builtins() -> list[FrobAlgebra]:
    return [builtin(n) for n in BUILTIN_NAMES]


def algebra_from_json(obj: dict[str, Any], name: str = "") -> FrobAlgebra:
    A = FrobAlgebra.build(obj["mult"], obj["unit"], obj["form"], name)
    if int(obj["dim"]) != A.dim:
        raise ValueError(f"declared dim {obj['dim']} but unit has {A.dim} entries")
    return A


def algebra_to_json(A: FrobAlgebra) -> dict[str, Any]:
    s = exact.fraction_str
    return {
        "dim": A.dim,
        "mult": [[[s(x) for x in v] for v in row] for row in A.mult],
        "unit": [s(x) for x in A.unit],
        "form": [s(x) for x in A.form],
    }


ALGEBRA_PATH_ENV = "FROBTANGLE_ALGEBRA_PATH"


def load_algebra(source: str) -> FrobAlgebra:
    """Resolve a built-in name, a JSON file path, or a name on the search path."""
    if source in BUILTIN_NAMES:
        return builtin(source)
    candidates = [Path(source)]
    for d in os.environ.get(ALGEBRA_PATH_ENV, "").split(os.pathsep):
        if d:
            candidates += [Path(d) / source, Path(d) / f"{source}.json"]
    for p in candidates:
        if p.is_file():
            with open(p, encoding="utf-8") as fh:
                return algebra_from_json(json.load(fh), p.stem)
    raise UnknownAlgebra(source)
