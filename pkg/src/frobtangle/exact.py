"""Small dense matrices over the rationals.

Matrices are tuples of rows of ``Fraction``.  Tensor products follow the
wire convention used everywhere in the package: in ``tensor(a, b)`` the
factor ``a`` sits on the lower-numbered wires, which are the less
significant digits of the basis index.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def zeros(r: int, c: int) -> Matrix:
    return tuple((Fraction(0),) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """The product ``a @ b`` (apply ``b`` first)."""
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"cannot multiply {n}x{k} by {k2}x{m}")
    zero = Fraction(0)
    out = []
    for row in a:
        # row-times-matrix, skipping zero entries (structure maps are sparse)
        acc = [zero] * m
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def compose(*maps: Matrix) -> Matrix:
    """Diagrammatic composite: ``compose(f, g)`` applies ``f`` then ``g``."""
    out = maps[0]
    for f in maps[1:]:
        out = matmul(f, out)
    return out


def tensor(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    rows = []
    for ib in range(rb):
        for ia in range(ra):
            rows.append(tuple(a[ia][ja] * b[ib][jb] for jb in range(cb) for ja in range(ca)))
    return tuple(rows)


def tensor_all(*maps: Matrix) -> Matrix:
    out = maps[0]
    for f in maps[1:]:
        out = tensor(out, f)
    return out


def scale(c, a: Matrix) -> Matrix:
    c = to_fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` when singular."""
    n, m = shape(a)
    if n != m:
        raise ValueError("only square matrices are invertible")
    work = [list(row) + list(idrow) for row, idrow in zip(a, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def differences(a: Matrix, b: Matrix) -> list[tuple[int, int, Fraction, Fraction]]:
    """Coordinates where two equally shaped matrices disagree."""
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return [(i, j, x, y) for i, (ra, rb) in enumerate(zip(a, b)) for j, (x, y) in enumerate(zip(ra, rb)) if x != y]


def column(v: Sequence) -> Matrix:
    return tuple((to_fraction(x),) for x in v)


def row(v: Sequence) -> Matrix:
    return (tuple(to_fraction(x) for x in v),)


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
