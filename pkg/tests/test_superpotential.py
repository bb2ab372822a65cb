import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prg.errors import BudgetExceeded
from prg.exactlinalg import Matrix
from prg.forms import MLForm, random_preregular_form
from prg.superpotential import derive_relations, graded_dimension, graded_dimension_from_relations, relation_to_text

from conftest import ANTISYM, JORDAN, QPLANE_Q2, random_invertible


def brute_force_dims(f, N, maxdeg):
    """Rank of the span of u.r.v over all words, one dense matrix per degree."""
    n = f.dim
    rels = [
        {w[f.m - N:]: c for w, c in f.items() if w[: f.m - N] == pre}
        for pre in itertools.product(range(n), repeat=f.m - N)
    ]
    rels = [r for r in rels if r]
    dims = []
    for k in range(maxdeg + 1):
        words = list(itertools.product(range(n), repeat=k))
        index = {w: i for i, w in enumerate(words)}
        rows = []
        for i in range(k - N + 1):
            for u in itertools.product(range(n), repeat=i):
                for v in itertools.product(range(n), repeat=k - N - i):
                    for r in rels:
                        row = [0] * len(words)
                        for w, c in r.items():
                            row[index[u + w + v]] += c
                        rows.append(row)
        rank = Matrix.from_rows(rows).rank() if rows else 0
        dims.append(len(words) - rank)
    return tuple(dims)


def test_relation_examples():
    assert [relation_to_text(r) for r in derive_relations(MLForm.from_matrix(ANTISYM), 2).basis] == ["x1x2 - x2x1"]
    jordan = derive_relations(MLForm.from_matrix(JORDAN), 2)
    assert jordan.rank == 1
    assert relation_to_text(jordan.basis[0]) == "x1x2 - x2x1 + x2x2"
    one = derive_relations(MLForm.from_entries(2, 1, {(0, 0): 1}), 2)
    assert relation_to_text(one.basis[0]) == "x1x1"
    with pytest.raises(ValueError):
        derive_relations(MLForm.from_matrix(ANTISYM), 3)


@pytest.mark.parametrize("rows", [QPLANE_Q2, JORDAN])
def test_planes_through_degree_six(rows):
    f = MLForm.from_matrix(rows)
    dims = graded_dimension(f, 2, 6).dims
    assert dims == (1, 2, 3, 4, 5, 6, 7)
    assert dims == brute_force_dims(f, 2, 6)


def test_truncated_polynomial_ring():
    assert graded_dimension(MLForm.from_entries(2, 1, {(0, 0): 1}), 2, 3).dims == (1, 1, 0, 0)


@given(st.integers(0, 10**6))
def test_invertible_bilinear_gives_polynomial_growth(seed):
    E = random_invertible(2, random.Random(seed))
    assert graded_dimension(MLForm.from_matrix(E), 2, 5).dims == (1, 2, 3, 4, 5, 6)


@given(st.integers(2, 3), st.integers(1, 2), st.integers(0, 10**6))
def test_rank_matches_flattening(m, n, seed):
    f = random_preregular_form(m, n, random.Random(seed))
    for N in range(2, m + 1):
        assert derive_relations(f, N).rank == f.coeffs.flatten(list(range(m - N))).rank()


def test_cubic_form_matches_brute_force():
    f = random_preregular_form(3, 2, random.Random(4))
    for N in (2, 3):
        assert graded_dimension(f, N, 4).dims == brute_force_dims(f, N, 4)


def test_more_relations_never_raise_dims():
    f = MLForm.from_matrix(JORDAN)
    rels = list(derive_relations(f, 2).basis)
    extra = derive_relations(MLForm.from_matrix(ANTISYM), 2).basis
    a = graded_dimension_from_relations(rels, 2, 2, 5).dims
    b = graded_dimension_from_relations(rels + list(extra), 2, 2, 5).dims
    assert all(y <= x for x, y in zip(a, b))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        graded_dimension(MLForm.from_matrix(JORDAN), 2, 12, budget=100)
