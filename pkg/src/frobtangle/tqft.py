"""Evaluate terms as exact linear maps A^{(x)dom} -> A^{(x)cod}.

Basis vectors of A^{(x)k} are indexed by ``sum(b_i * dim**i)``: wire 0 is the
least significant digit.  Internally a map is an integer array with a common
denominator; arrays switch from ``int64`` to Python integers whenever a
contraction could overflow, so results are always exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Mapping

import numpy as np

from .diagram import Diagram, canonical, to_diagram
from .exact import Matrix, fraction_str
from .frobenius import DegenerateForm, FrobAlgebra, derive_comult, derive_copairing
from .terms import ArityMismatch, Generator, Term

_LIMIT = 1 << 62


def _maxabs(a: np.ndarray) -> int:
    return int(np.max(np.abs(a))) if a.size else 0


def _normalize(numer: np.ndarray, denom: int) -> tuple[np.ndarray, int]:
    if denom < 0:
        numer, denom = -numer, -denom
    g = denom
    for x in numer.flat:
        g = gcd(g, int(x))
        if g == 1:
            break
    if g > 1:
        numer = numer // g
        denom //= g
    if numer.dtype == object and _maxabs(numer) < _LIMIT:
        numer = numer.astype(np.int64)
    return numer, denom


class TensorMap:
    """An exact rational matrix of shape ``dim**out_width x dim**in_width``."""

    __slots__ = ("in_width", "out_width", "dim", "numer", "denom")

    def __init__(self, in_width: int, out_width: int, dim: int, numer: np.ndarray, denom: int = 1):
        if numer.shape != (dim ** out_width, dim ** in_width):
            raise ValueError(f"matrix shape {numer.shape} does not match widths {in_width}->{out_width}")
        self.in_width, self.out_width, self.dim = in_width, out_width, dim
        self.numer, self.denom = _normalize(numer, denom)

    @classmethod
    def from_matrix(cls, m: Matrix, in_width: int, out_width: int, dim: int) -> "TensorMap":
        den = 1
        for row in m:
            for x in row:
                den = lcm(den, x.denominator)
        numer = np.array([[int(x * den) for x in row] for row in m], dtype=object)
        return cls(in_width, out_width, dim, numer, den)

    @property
    def matrix(self) -> Matrix:
        d = self.denom
        return tuple(tuple(Fraction(int(x), d) for x in row) for row in self.numer)

    def rows_as_strings(self) -> list[list[str]]:
        return [[fraction_str(x) for x in row] for row in self.matrix]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorMap):
            return NotImplemented
        return (
            (self.in_width, self.out_width, self.dim, self.denom)
            == (other.in_width, other.out_width, other.dim, other.denom)
            and bool(np.array_equal(self.numer, other.numer))
        )

    def __hash__(self) -> int:
        return hash((self.in_width, self.out_width, self.denom, self.numer.tobytes()))

    def __repr__(self) -> str:
        return f"TensorMap({self.in_width}->{self.out_width}, dim={self.dim}, rows={self.rows_as_strings()})"

    def then(self, other: "TensorMap") -> "TensorMap":
        """Sequential composite: apply ``self`` then ``other``."""
        if self.out_width != other.in_width or self.dim != other.dim:
            raise ArityMismatch((), self.out_width, other.in_width)
        a, b = _safe(other.numer, self.numer, self.numer.shape[0])
        return TensorMap(self.in_width, other.out_width, self.dim, a @ b, self.denom * other.denom)

    def tensor(self, other: "TensorMap") -> "TensorMap":
        """``self`` on the lower wires, ``other`` beside it."""
        a, b = _safe(other.numer, self.numer, 1)
        return TensorMap(self.in_width + other.in_width, self.out_width + other.out_width, self.dim,
                         np.kron(a, b), self.denom * other.denom)

    def scaled(self, c: int) -> "TensorMap":
        return TensorMap(self.in_width, self.out_width, self.dim, self.numer.astype(object) * c, self.denom)


def _safe(a: np.ndarray, b: np.ndarray, terms: int) -> tuple[np.ndarray, np.ndarray]:
    """Promote to Python integers if an int64 product-sum might overflow."""
    if _maxabs(a) * _maxabs(b) * max(terms, 1) >= _LIMIT:
        return a.astype(object), b.astype(object)
    return a, b


def identity_map(width: int, dim: int) -> TensorMap:
    return TensorMap(width, width, dim, np.eye(dim ** width, dtype=np.int64))


def _reverse_digits(count: int, dim: int) -> np.ndarray:
    """Permutation taking least-significant-first indices to most-significant-first."""
    idx = np.arange(dim ** count).reshape((dim,) * count) if count else np.arange(1)
    return idx.transpose(list(range(count - 1, -1, -1))).reshape(-1) if count else idx


class _GenTensor:
    """A generator matrix with its wires read most significant first."""

    __slots__ = ("matrix", "denom", "bound")

    def __init__(self, m: Matrix, n_in: int, n_out: int, dim: int):
        tm = TensorMap.from_matrix(m, n_in, n_out, dim)
        rows, cols = _reverse_digits(n_out, dim), _reverse_digits(n_in, dim)
        self.matrix = np.ascontiguousarray(tm.numer[np.ix_(rows, cols)])
        self.denom = tm.denom
        self.bound = _maxabs(self.matrix) * max(dim ** n_in, 1)


class Backend:
    """Structure maps used to interpret generators, as exact matrices."""

    def __init__(self, dim: int, maps: Mapping[Generator, Matrix], name: str = ""):
        self.dim = dim
        self.name = name
        self.maps = dict(maps)
        self._tensors = {g: _GenTensor(m, g.n_in, g.n_out, dim) for g, m in self.maps.items()}

    def replace(self, gen: Generator, m: Matrix, name: str = "") -> "Backend":
        maps = dict(self.maps)
        maps[gen] = m
        return Backend(self.dim, maps, name or self.name)

    def tensor_for(self, g: Generator) -> _GenTensor:
        try:
            return self._tensors[g]
        except KeyError:
            raise DegenerateForm(f"no structure map for {g.value}; the form is degenerate") from None


@lru_cache(maxsize=64)
def backend_for(A: FrobAlgebra) -> Backend:
    maps = {Generator.MULT: A.mult_matrix(), Generator.UNIT: A.unit_matrix(), Generator.COUNIT: A.form_matrix()}
    try:
        maps[Generator.ZAG] = derive_copairing(A)
        maps[Generator.COMULT] = derive_comult(A)
    except DegenerateForm:
        pass
    return Backend(A.dim, maps, A.name)


def eval_diagram(d: Diagram, backend: Backend) -> TensorMap:
    dim = backend.dim
    n_in = dim ** d.dom
    # rows: live wires, wire 0 most significant; columns: the input basis vector
    state = np.eye(n_in, dtype=np.int64)[_reverse_digits(d.dom, dim)]
    bound, denom, w = 1, 1, d.dom
    for s in d.slices:
        gt = backend.tensor_for(s.gen)
        i, o = s.gen.n_in, s.gen.n_out
        bound *= gt.bound
        if bound >= _LIMIT and state.dtype != object:
            state = state.astype(object)
        left = dim ** s.offset
        block = state.reshape(left, dim ** i, -1)
        g = gt.matrix if state.dtype != object else gt.matrix.astype(object)
        state = np.matmul(g, block).reshape(-1, n_in)
        denom *= gt.denom
        w += o - i
    state = state[np.argsort(_reverse_digits(w, dim))]
    return TensorMap(d.dom, d.cod, dim, np.ascontiguousarray(state), denom)


def evaluate(t: Term, A: FrobAlgebra | Backend) -> TensorMap:
    backend = A if isinstance(A, Backend) else backend_for(A)
    return eval_diagram(to_diagram(t), backend)


def eval_eq(t1: Term, t2: Term, A: FrobAlgebra | Backend) -> bool:
    if (t1.dom, t1.cod) != (t2.dom, t2.cod):
        raise ArityMismatch((), t1.cod, t2.cod)
    return evaluate(t1, A) == evaluate(t2, A)


def evaluate_canonical(t: Term, A: FrobAlgebra | Backend) -> TensorMap:
    """Evaluate the canonical diagram of ``t`` (same result, checks invariance)."""
    backend = A if isinstance(A, Backend) else backend_for(A)
    return eval_diagram(canonical(t), backend)
