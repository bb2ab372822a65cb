"""Multilinear forms: preregularity, cyclic twists, duals, Aut(e) and twists e^phi.

Conventions (0-based indices):

* ``f[i1, ..., im]`` is the value of the form on basis vectors.
* The cyclic twist psi satisfies
  ``f[i1..im] == sum_j psi[j, im] * f[j, i1..i(m-1)]``.
* ``e o (phi, ..., phi)`` has entries ``sum_i e[i1..im] phi[i1,j1] ... phi[im,jm]``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlinalg import (
    Matrix,
    SingularMatrixError,
    SparseTensor,
    contract,
    left_nullspace,
    solve_linear,
    tensor_from_json,
    tensor_to_json,
)

__all__ = [
    "MLForm",
    "PreregularityReport",
    "AutMembership",
    "check_nondegenerate",
    "find_cyclic_twist",
    "check_preregular",
    "dual_form",
    "aut_membership",
    "transform_form",
    "twist_form",
    "superpotential_check",
    "form_to_superpotential",
    "form_to_json",
    "form_from_json",
    "random_preregular_form",
]


@dataclass(frozen=True)
class MLForm:
    """An m-linear form on an n-dimensional space."""

    m: int
    dim: int
    coeffs: SparseTensor

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("arity must be at least 2")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.coeffs.shape != (self.dim,) * self.m:
            raise ValueError(f"coefficient tensor has shape {self.coeffs.shape}, expected {(self.dim,) * self.m}")
        if self.coeffs.is_zero():
            raise ValueError("the zero form is not allowed")

    @classmethod
    def from_matrix(cls, E) -> "MLForm":
        if not isinstance(E, Matrix):
            E = Matrix.from_rows(E)
        if not E.is_square:
            raise ValueError("bilinear form needs a square matrix")
        return cls(2, E.rows, SparseTensor.from_matrix(E))

    @classmethod
    def from_entries(cls, m: int, dim: int, entries: dict) -> "MLForm":
        return cls(m, dim, SparseTensor((dim,) * m, entries))

    def __getitem__(self, idx) -> Fraction:
        return self.coeffs[idx]

    def items(self):
        return self.coeffs.items()

    def indices(self):
        return itertools.product(range(self.dim), repeat=self.m)

    def matrix(self) -> Matrix:
        return self.coeffs.to_matrix()

    def first_slot_flattening(self) -> Matrix:
        return self.coeffs.flatten([0])

    def last_slot_flattening(self) -> Matrix:
        """Rows indexed by the first m-1 slots, columns by the last."""
        return self.coeffs.flatten(list(range(self.m - 1)))


@dataclass(frozen=True)
class PreregularityReport:
    nondegenerate: bool
    witness: Matrix | None
    twist: Matrix | None
    twist_invertible: bool

    @property
    def passed(self) -> bool:
        return self.nondegenerate and self.twist is not None and self.twist_invertible


@dataclass(frozen=True)
class AutMembership:
    member: bool
    lam: Fraction | None = None


def check_nondegenerate(f: MLForm) -> tuple[bool, Matrix | None]:
    """First-slot nondegeneracy; the witness spans a vector killing the form."""
    F1 = f.first_slot_flattening()
    kernel = left_nullspace(F1)
    if not kernel:
        return True, None
    return False, kernel[0]


def find_cyclic_twist(f: MLForm) -> Matrix | None:
    """Solve for psi column by column; None if no invertible solution exists."""
    ok, _ = check_nondegenerate(f)
    if not ok:
        raise ValueError("find_cyclic_twist needs a form that is nondegenerate in its first slot")
    n, m = f.dim, f.m
    # rows: multi-indices (i1..i(m-1)); entry [rest, j] = f[j, rest]
    G = f.first_slot_flattening().T
    rests = list(itertools.product(range(n), repeat=m - 1))
    columns = []
    for c in range(n):
        rhs = Matrix.column([f[rest + (c,)] for rest in rests])
        sol = solve_linear(G, rhs)
        if sol is None:
            return None
        columns.append(sol.col(0))
    psi = Matrix(n, n, [columns[c][r] for r in range(n) for c in range(n)])
    if not psi.is_invertible():
        return None
    return psi


def check_preregular(f: MLForm) -> PreregularityReport:
    ok, witness = check_nondegenerate(f)
    if not ok:
        return PreregularityReport(False, witness, None, False)
    psi = find_cyclic_twist(f)
    return PreregularityReport(True, None, psi, psi is not None)


def dual_form(f: MLForm) -> MLForm:
    """A form g with ``sum_rest g[i, rest] * f[rest, j] == delta(i, j)``.

    For m > 2 the system is underdetermined; free variables are set to zero.
    """
    n, m = f.dim, f.m
    G = f.last_slot_flattening()  # n^(m-1) x n
    rests = list(itertools.product(range(n), repeat=m - 1))
    entries = {}
    for i in range(n):
        e_i = Matrix.column([1 if r == i else 0 for r in range(n)])
        sol = solve_linear(G.T, e_i)
        if sol is None:
            raise ValueError("form is degenerate in its last slot; no dual form exists")
        for pos, rest in enumerate(rests):
            if sol[pos, 0]:
                entries[(i,) + rest] = sol[pos, 0]
    return MLForm.from_entries(m, n, entries)


def transform_form(e: MLForm, mats: Sequence[Matrix]) -> SparseTensor:
    """``e o (M1, ..., Mm)``: slot k contracted with the row index of ``mats[k]``."""
    if len(mats) != e.m:
        raise ValueError("need one matrix per slot")
    T = e.coeffs
    for M in mats:
        if M.shape != (e.dim, e.dim):
            raise ValueError("transformation matrices must be dim x dim")
        # contracting slot 0 each time rotates the remaining slots to the front
        T = contract(T, [0], SparseTensor.from_matrix(M), [0])
    return T


def aut_membership(e: MLForm, phi: Matrix) -> AutMembership:
    """Is ``e o (phi, ..., phi)`` a nonzero multiple of e?"""
    if phi.shape != (e.dim, e.dim) or not phi.is_invertible():
        raise SingularMatrixError("phi must be an invertible dim x dim matrix")
    img = transform_form(e, [phi] * e.m)
    idx0, v0 = next(e.items())
    lam = img[idx0] / v0
    if lam == 0:
        return AutMembership(False)
    if img == e.coeffs * lam:
        return AutMembership(True, lam)
    return AutMembership(False)


def twist_form(e: MLForm, phi: Matrix) -> MLForm:
    """``e^phi[i1..im] = sum e[i1, l2..lm] phi^-1[l2, i2] ... phi^-(m-1)[lm, im]``."""
    if phi.shape != (e.dim, e.dim) or not phi.is_invertible():
        raise SingularMatrixError("phi must be an invertible dim x dim matrix")
    inv = phi.inverse()
    mats = [Matrix.identity(e.dim)] + [inv ** k for k in range(1, e.m)]
    return MLForm(e.m, e.dim, transform_form(e, mats))


def _cycle_last_to_front(s: SparseTensor) -> SparseTensor:
    m = s.order
    return s.permute([m - 1] + list(range(m - 1)))


def superpotential_check(s: SparseTensor, psi: Matrix) -> bool:
    """``(psi (x) id^(m-1)) c(s) == s`` with c moving the last factor to the front."""
    if s.order < 2 or len(set(s.shape)) != 1:
        raise ValueError("superpotential must live in V^(x)m with m >= 2")
    n = s.shape[0]
    if psi.shape != (n, n):
        raise ValueError("psi has the wrong size")
    cs = _cycle_last_to_front(s)
    # (psi (x) id) acts on slot 0: out[j, ...] = sum_i psi[j, i] cs[i, ...]
    out = contract(SparseTensor.from_matrix(psi), [1], cs, [0])
    return out == s


def form_to_superpotential(f: MLForm) -> tuple[SparseTensor, Matrix]:
    """The tensor ``s = sum f[i] v_i1 (x) ... (x) v_im`` and its superpotential twist.

    With psi the cyclic twist of f, s is fixed by ``(psi^-T (x) id) c``.
    """
    psi = find_cyclic_twist(f)
    if psi is None:
        raise ValueError("form is not preregular")
    return f.coeffs, psi.inverse().T


def form_to_json(f: MLForm) -> dict:
    obj = tensor_to_json(f.coeffs)
    obj["m"] = f.m
    obj["dim"] = f.dim
    return obj


def form_from_json(obj: dict) -> MLForm:
    T = tensor_from_json(obj)
    m = int(obj.get("m", T.order))
    dim = int(obj.get("dim", T.shape[0]))
    return MLForm(m, dim, T)


def random_preregular_form(m: int, dim: int, rng: random.Random, lo: int = -3, hi: int = 3) -> MLForm:
    """A random preregular form.

    For m = 2 this is a random invertible matrix.  Otherwise a random
    cyclically invariant tensor is pulled back along a random invertible
    matrix, retrying until the result is preregular.
    """
    while True:
        if m == 2:
            E = Matrix(dim, dim, [rng.randint(lo, hi) for _ in range(dim * dim)])
            if E.is_invertible():
                return MLForm.from_matrix(E)
            continue
        entries = {}
        for idx in itertools.product(range(dim), repeat=m):
            if idx in entries or rng.random() < 0.5:
                continue
            c = rng.randint(lo, hi)
            for r in range(m):
                entries[idx[r:] + idx[:r]] = c
        base = SparseTensor((dim,) * m, entries)
        if base.is_zero():
            continue
        M = Matrix(dim, dim, [rng.randint(lo, hi) for _ in range(dim * dim)])
        if not M.is_invertible():
            continue
        f = MLForm(m, dim, base)
        T = transform_form(f, [M] * m)
        if T.is_zero():
            continue
        f = MLForm(m, dim, T)
        if check_preregular(f).passed:
            return f
