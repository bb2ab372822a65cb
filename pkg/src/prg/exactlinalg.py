"""Exact rational scalars, dense matrices, sparse multi-index tensors.

Everything here works over :class:`fractions.Fraction`; there is no floating
point path.  Indices are 0-based in the Python API and 1-based in the JSON
wire format (see :func:`tensor_to_json`).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Scalar = Fraction

__all__ = [
    "Scalar",
    "to_scalar",
    "format_scalar",
    "SingularMatrixError",
    "Matrix",
    "SparseTensor",
    "rref",
    "nullspace",
    "left_nullspace",
    "solve_linear",
    "contract",
    "tensor_to_json",
    "tensor_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


class SingularMatrixError(ValueError):
    pass


def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass a string such as '1/3'")
    return Fraction(x)


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Matrix:
    """Dense row-major matrix of Fractions.  Immutable."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(to_scalar(x) for x in entries)
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty row list")
        return cls(len(rows), len(rows[0]), [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls(len(values), 1, values)

    # -- access -------------------------------------------------------
    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------
    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [x - y for x, y in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-x for x in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.__matmul__(other)
        c = to_scalar(other)
        return Matrix(self.rows, self.cols, [c * x for x in self.entries])

    def __rmul__(self, other):
        c = to_scalar(other)
        return Matrix(self.rows, self.cols, [c * x for x in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.entries, other.entries
        n, k, m = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = Fraction(0)
                for t in range(k):
                    x = arow[t]
                    if x:
                        s += x * b[t * m + j]
                out.append(s)
        return Matrix(n, m, out)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        base = self if k >= 0 else self.inverse()
        result = Matrix.identity(self.rows)
        for _ in range(abs(k)):
            result = result @ base
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for i in range(self.rows):
            for p in range(other.rows):
                rows.append([self[i, j] * other[p, q] for j in range(self.cols) for q in range(other.cols)])
        return Matrix.from_rows(rows)

    # -- linear algebra -----------------------------------------------
    def rank(self) -> int:
        return rref(self)[1]

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] / a[c][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def is_invertible(self) -> bool:
        return self.is_square and self.det() != 0

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise SingularMatrixError("non-square matrix has no inverse")
        n = self.rows
        aug = Matrix.from_rows([self.row(i) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
        red, _, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix.from_rows([red.row(i)[n:] for i in range(n)])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.rows)

    # -- dunder -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix([{body}])"

    def __str__(self) -> str:
        cells = [[format_scalar(x) for x in self.row(i)] for i in range(self.rows)]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot column list."""
    a = M.to_rows()
    nr, nc = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        lead = a[r][c]
        if lead != 1:
            a[r] = [x / lead for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(a), len(pivots), pivots


def nullspace(M: Matrix) -> list[Matrix]:
    """Basis of {x : M x = 0} as column matrices (one per free variable)."""
    red, rank, piv = rref(M)
    free = [c for c in range(M.cols) if c not in piv]
    basis = []
    for fc in free:
        x = [Fraction(0)] * M.cols
        x[fc] = Fraction(1)
        for r, pc in enumerate(piv):
            x[pc] = -red[r, fc]
        basis.append(Matrix.column(x))
    return basis


def left_nullspace(M: Matrix) -> list[Matrix]:
    """Basis of {y : y^T M = 0} as column matrices."""
    return nullspace(M.T)


def solve_linear(A: Matrix, b: Matrix) -> Matrix | None:
    """Solve ``A x = b`` exactly.

    Returns the particular solution with every free variable set to zero, or
    None when ``b`` is outside the column space of ``A``.
    """
    if b.cols != 1:
        raise ValueError("right-hand side must be a single column")
    if A.rows != b.rows:
        raise ValueError(f"dimension mismatch: A has {A.rows} rows, b has {b.rows}")
    aug = Matrix.from_rows([A.row(i) + [b[i, 0]] for i in range(A.rows)])
    red, _, piv = rref(aug)
    if piv and piv[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for r, pc in enumerate(piv):
        x[pc] = red[r, A.cols]
    return Matrix.column(x)


class SparseTensor:
    """Finitely supported multi-index array of Fractions.

    ``entries`` maps 0-based index tuples to nonzero values.  Immutable.
    """

    __slots__ = ("shape", "entries", "_hash")

    def __init__(self, shape: Sequence[int], entries: Mapping[tuple, object] | None = None):
        shape = tuple(int(s) for s in shape)
        if any(s < 1 for s in shape):
            raise ValueError("tensor dimensions must be positive")
        clean: dict[tuple, Fraction] = {}
        for idx, val in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != len(shape) or any(not 0 <= i < s for i, s in zip(idx, shape)):
                raise IndexError(f"index {idx} outside shape {shape}")
            v = to_scalar(val)
            if v:
                clean[idx] = clean.get(idx, 0) + v
                if not clean[idx]:
                    del clean[idx]
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparseTensor is immutable")

    @classmethod
    def from_matrix(cls, M: Matrix) -> "SparseTensor":
        return cls((M.rows, M.cols), {(i, j): M[i, j] for i in range(M.rows) for j in range(M.cols)})

    @classmethod
    def from_dense(cls, data) -> "SparseTensor":
        """Build from nested lists, e.g. ``[[0, 1], [-1, 0]]``."""
        shape = []
        probe = data
        while isinstance(probe, (list, tuple)):
            shape.append(len(probe))
            probe = probe[0]
        entries = {}
        for idx in itertools.product(*(range(s) for s in shape)):
            v = data
            for i in idx:
                v = v[i]
            entries[idx] = v
        return cls(shape, entries)

    @property
    def order(self) -> int:
        return len(self.shape)

    def __getitem__(self, idx) -> Fraction:
        return self.entries.get(tuple(idx), Fraction(0))

    def items(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(sorted(self.entries.items()))

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_matrix(self) -> Matrix:
        if self.order != 2:
            raise ValueError("only order-2 tensors convert to matrices")
        r, c = self.shape
        return Matrix(r, c, [self[(i, j)] for i in range(r) for j in range(c)])

    def flatten(self, row_slots: Sequence[int]) -> Matrix:
        """Matrix with rows indexed by ``row_slots`` and columns by the rest (lex order)."""
        row_slots = list(row_slots)
        col_slots = [s for s in range(self.order) if s not in row_slots]
        rdims = [self.shape[s] for s in row_slots]
        cdims = [self.shape[s] for s in col_slots]
        nr = _prod(rdims)
        nc = _prod(cdims)
        vals = [Fraction(0)] * (nr * nc)
        for idx, v in self.entries.items():
            r = _ravel([idx[s] for s in row_slots], rdims)
            c = _ravel([idx[s] for s in col_slots], cdims)
            vals[r * nc + c] = v
        return Matrix(nr, nc, vals)

    def permute(self, perm: Sequence[int]) -> "SparseTensor":
        """New tensor whose slot k is old slot ``perm[k]``."""
        perm = list(perm)
        return SparseTensor([self.shape[p] for p in perm],
                            {tuple(idx[p] for p in perm): v for idx, v in self.entries.items()})

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseTensor(self.shape, out)

    def __neg__(self) -> "SparseTensor":
        return SparseTensor(self.shape, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def __mul__(self, c) -> "SparseTensor":
        c = to_scalar(c)
        return SparseTensor(self.shape, {k: c * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.shape, frozenset(self.entries.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        body = ", ".join(f"{tuple(i + 1 for i in k)}: {format_scalar(v)}" for k, v in self.items())
        return f"SparseTensor(shape={list(self.shape)}, {{{body}}})"


def _prod(xs) -> int:
    p = 1
    for x in xs:
        p *= x
    return p


def _ravel(idx, dims) -> int:
    r = 0
    for i, d in zip(idx, dims):
        r = r * d + i
    return r


def contract(T: SparseTensor, slots: Sequence[int], S: SparseTensor, slots2: Sequence[int]) -> SparseTensor:
    """Sum over ``T[.., slots[k] = x_k, ..] * S[.., slots2[k] = x_k, ..]``.

    The result carries the free slots of T (in order) followed by the free
    slots of S.  Contracting every slot gives an order-0 tensor whose single
    entry is keyed by ``()``.
    """
    slots, slots2 = list(slots), list(slots2)
    if len(slots) != len(slots2):
        raise ValueError("slot lists must have equal length")
    if len(set(slots)) != len(slots) or len(set(slots2)) != len(slots2):
        raise ValueError("repeated slot")
    for a, b in zip(slots, slots2):
        if not (0 <= a < T.order and 0 <= b < S.order):
            raise ValueError("slot out of range")
        if T.shape[a] != S.shape[b]:
            raise ValueError(f"contracted dimensions differ: {T.shape[a]} vs {S.shape[b]}")
    tfree = [k for k in range(T.order) if k not in slots]
    sfree = [k for k in range(S.order) if k not in slots2]
    by_key: dict[tuple, list[tuple[tuple, Fraction]]] = {}
    for idx, v in S.entries.items():
        by_key.setdefault(tuple(idx[k] for k in slots2), []).append((tuple(idx[k] for k in sfree), v))
    out: dict[tuple, Fraction] = {}
    for idx, v in T.entries.items():
        for rest, w in by_key.get(tuple(idx[k] for k in slots), ()):
            key = tuple(idx[k] for k in tfree) + rest
            out[key] = out.get(key, 0) + v * w
    shape = [T.shape[k] for k in tfree] + [S.shape[k] for k in sfree]
    return _ScalarTensor(out) if not shape else SparseTensor(shape, out)


class _ScalarTensor(SparseTensor):
    """Order-0 result of a full contraction."""

    __slots__ = ()

    def __init__(self, entries):
        val = to_scalar(entries.get((), 0))
        object.__setattr__(self, "shape", ())
        object.__setattr__(self, "entries", {(): val} if val else {})
        object.__setattr__(self, "_hash", None)

    @property
    def value(self) -> Fraction:
        return self.entries.get((), Fraction(0))


# -- JSON wire format -------------------------------------------------------

def tensor_to_json(T: SparseTensor) -> dict:
    return {
        "shape": list(T.shape),
        "entries": [{"idx": [i + 1 for i in k], "val": format_scalar(v)} for k, v in T.items()],
    }


def tensor_from_json(obj: Mapping) -> SparseTensor:
    try:
        shape = [int(s) for s in obj["shape"]]
        entries = {}
        for e in obj.get("entries", []):
            idx = tuple(int(i) - 1 for i in e["idx"])
            if idx in entries:
                raise ValueError(f"duplicate index {list(e['idx'])}")
            entries[idx] = to_scalar(str(e["val"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed tensor JSON: {exc!r}") from exc
    try:
        return SparseTensor(shape, entries)
    except IndexError as exc:
        raise ValueError(f"malformed tensor JSON: {exc}") from None


def matrix_to_json(M: Matrix) -> dict:
    return tensor_to_json(SparseTensor.from_matrix(M))


def matrix_from_json(obj: Mapping) -> Matrix:
    T = tensor_from_json(obj)
    if T.order != 2:
        raise ValueError("matrix JSON must have a 2-entry shape")
    return T.to_matrix()
