"""Relations and Hilbert data of the superpotential algebras A(f, N)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .errors import BudgetExceeded, word_budget
from .exactlinalg import Matrix, SparseTensor, format_scalar, rref
from .forms import MLForm
from .kernel import SparseEliminator

__all__ = [
    "BudgetExceeded",
    "RelationSpace",
    "GradedDims",
    "derive_relations",
    "graded_dimension",
    "graded_dimension_from_relations",
    "relation_to_text",
    "word_budget",
]


@dataclass(frozen=True)
class RelationSpace:
    N: int
    dim: int
    basis: tuple[SparseTensor, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class GradedDims:
    maxdeg: int
    dims: tuple[int, ...]


def derive_relations(f: MLForm, N: int) -> RelationSpace:
    """Span of the degree-N slices ``f[i1..i(m-N), j1..jN]``, in RREF."""
    if not 2 <= N <= f.m:
        raise ValueError(f"N must satisfy 2 <= N <= m = {f.m}")
    n = f.dim
    prefix_slots = list(range(f.m - N))
    flat = f.coeffs.flatten(prefix_slots) if prefix_slots else _single_row(f.coeffs)
    red, rank, _ = rref(flat)
    words = list(itertools.product(range(n), repeat=N))
    basis = []
    for r in range(rank):
        basis.append(SparseTensor((n,) * N, {w: red[r, c] for c, w in enumerate(words) if red[r, c]}))
    return RelationSpace(N, n, tuple(basis))


def _single_row(T: SparseTensor) -> Matrix:
    words = list(itertools.product(*(range(s) for s in T.shape)))
    return Matrix(1, len(words), [T[w] for w in words])


def relation_to_text(rel: SparseTensor) -> str:
    parts = []
    for w, c in rel.items():
        mono = "".join(f"x{i + 1}" for i in w)
        if c == 1:
            parts.append(f"+ {mono}")
        elif c == -1:
            parts.append(f"- {mono}")
        elif c > 0:
            parts.append(f"+ {format_scalar(c)}*{mono}")
        else:
            parts.append(f"- {format_scalar(-c)}*{mono}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def _ravel(w, n) -> int:
    r = 0
    for x in w:
        r = r * n + x
    return r


def graded_dimension_from_relations(relations, n: int, N: int, maxdeg: int, budget: int | None = None) -> GradedDims:
    """Graded dimensions of ``T(V) / (relations)`` through ``maxdeg``.

    Degree k is the corank of the span of ``u r v`` (|u| + N + |v| = k) inside
    the n^k words of length k.
    """
    budget = word_budget(budget)
    rel_rows = []
    for rel in relations:
        denom = lcm(*(c.denominator for _, c in rel.items())) if rel.nnz() else 1
        rel_rows.append([(_ravel(w, n), int(c * denom)) for w, c in rel.items()])
    dims = []
    for k in range(maxdeg + 1):
        total = n ** k
        if total > budget:
            raise BudgetExceeded(f"degree {k} has {total} words; budget is {budget}")
        if k < N or not rel_rows:
            dims.append(total)
            continue
        elim = SparseEliminator(track=False)
        for i in range(k - N + 1):
            j = k - N - i
            left_mult = n ** (N + j)
            right_mult = n ** j
            for u in range(n ** i):
                for v in range(n ** j):
                    for row in rel_rows:
                        elim.insert({u * left_mult + r * right_mult + v: c for r, c in row}, None)
        dims.append(total - elim.rank)
    return GradedDims(maxdeg, tuple(dims))


def graded_dimension(f: MLForm, N: int, maxdeg: int, budget: int | None = None) -> GradedDims:
    rels = derive_relations(f, N)
    return graded_dimension_from_relations(rels.basis, f.dim, N, maxdeg, budget)
