import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prg.cogroupoid import build_counit, build_presentation
from prg.errors import GradingError
from prg.forms import MLForm
from prg.ncalg import (
    GenMorphism,
    MembershipWitness,
    NCPoly,
    Presentation,
    ZhangTwist,
    check_morphism,
    ideal_membership,
    ideal_membership_batch,
    multiply,
    normalize,
    parse_poly,
    tensor_presentation,
    zhang_twisted_multiply,
)
from prg.ncalg.poly import a, b, x

from conftest import ANTISYM


def P(text):
    return parse_poly(text)


def x_presentation(n=2, relations=()):
    gens = [x(i) for i in range(n)]
    return Presentation(gens, {g: 1 for g in gens}, relations, name="free")


def test_normalize_examples():
    p = normalize([((a(0, 0), b(0, 0)), 1), ((a(0, 1),), 0)])
    assert p.terms == {(a(0, 0), b(0, 0)): 1}
    q = normalize([((x(0), x(1)), 1), ((x(1), x(0)), -1), ((x(1), x(0)), 1)])
    assert q.terms == {(x(0), x(1)): 1}
    r = normalize([((a(0, 0, 2), a(1, 1, 1)), Fraction(2, 3))])
    assert list(r.terms) == [(a(1, 1, 1), a(0, 0, 2))]
    assert r.coeff((a(1, 1, 1), a(0, 0, 2))) == Fraction(2, 3)


def test_multiply_examples():
    p = P("a[1,1]")
    assert multiply(NCPoly.one(), p) == p
    assert multiply(p, P("b[1,1] + b[1,2]")) == P("a[1,1].b[1,1] + a[1,1].b[1,2]")
    s = P("x[1] + x[2]")
    assert multiply(s, s) == P("x[1].x[1] + x[1].x[2] + x[2].x[1] + x[2].x[2]")


def test_opposite_presentation_reverses_products():
    Q = x_presentation().with_opposite()
    assert Q.multiply(P("x[1]"), P("x[2]")) == P("x[2].x[1]")
    with pytest.raises(ValueError):
        Q.multiply(P("a[1,1]"), P("x[1]"))


def test_text_round_trip():
    for text in ["3/2 * a[1,2].b[2,1].D^-1 - x[1] + 1", "D.D^-1 - 1", "-1/3 * a[1,1]@2.b[2,2]", "0"]:
        p = P(text)
        assert P(str(p)) == p
    with pytest.raises(ValueError):
        P("y[1]")


small_words = st.lists(st.integers(0, 1), max_size=3).map(lambda w: tuple(x(i) for i in w))
small_polys = st.dictionaries(small_words, st.integers(-3, 3), max_size=4).map(NCPoly)


@given(small_polys, small_polys, small_polys)
def test_multiply_associative_and_unital(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert NCPoly.one() * p == p == p * NCPoly.one()


mixed_words = st.lists(st.tuples(st.integers(0, 1), st.integers(1, 2)), max_size=4).map(
    lambda w: tuple(a(i, 0, f) for i, f in w)
)


@given(mixed_words, mixed_words)
def test_tensor_normal_form_ignores_interleaving(u, v):
    p, q = NCPoly.monomial(u), NCPoly.monomial(v)
    prod = p * q
    f1 = [g for g in u + v if g.factor == 1]
    f2 = [g for g in u + v if g.factor == 2]
    assert prod == NCPoly.monomial(tuple(f1 + f2))


def test_zhang_examples():
    Pr = x_presentation(1)
    ident = GenMorphism(Pr, Pr, {x(0): P("x[1]")})
    p = P("x[1] + 2")
    assert zhang_twisted_multiply(p, p, ident) == p * p
    scale = GenMorphism(Pr, Pr, {x(0): P("3 * x[1]")})
    assert zhang_twisted_multiply(P("x[1]"), P("x[1]"), scale) == P("3 * x[1].x[1]")
    assert zhang_twisted_multiply(P("2"), P("x[1]"), scale) == P("2 * x[1]")
    bad = GenMorphism(Pr, Pr, {x(0): P("x[1].x[1]")})
    with pytest.raises(GradingError):
        ZhangTwist(bad)


def random_linear_auto(rng):
    Pr = x_presentation(2)
    while True:
        m = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            break
    imgs = {x(j): NCPoly({(x(i),): m[i][j] for i in range(2)}) for j in range(2)}
    return GenMorphism(Pr, Pr, imgs)


@given(small_polys, small_polys, small_polys, st.integers(0, 10**6))
def test_zhang_twist_is_associative(p, q, r, seed):
    Z = ZhangTwist(random_linear_auto(random.Random(seed)))
    assert Z.multiply(Z.multiply(p, q), r) == Z.multiply(p, Z.multiply(q, r))


def test_membership_examples():
    H = build_presentation(MLForm.from_matrix(ANTISYM), MLForm.from_matrix(ANTISYM))
    ab = P("a[1,1].b[1,1] + a[1,2].b[2,1] - 1")
    res = ideal_membership(ab, H.pres, 2)
    assert res.found and len(res.witness) == 1
    ba = P("b[1,1].a[1,1] + b[1,2].a[2,1] - 1")
    res = ideal_membership(ba, H.pres, 8)
    assert res.found and res.witness.verify(ba, H.relations)
    ab_only = [r for r in H.relations if r.degrees(H.pres.grading) == {0} and r.max_len() == 2][-4:]
    for bound in (1, 3, 5):
        assert not ideal_membership(P("a[1,1]"), ab_only, bound).found
    with pytest.raises(ValueError):
        ideal_membership(ba, H.pres, 1)


@given(st.lists(st.tuples(small_words, st.integers(0, 1), small_words, st.integers(-3, 3)), max_size=5))
def test_witnesses_reexpand(combo):
    rels = [P("x[1].x[2] - x[2].x[1]"), P("x[1].x[1]")]
    target = NCPoly.zero()
    for u, i, v, c in combo:
        target = target + NCPoly.monomial(u) * rels[i] * NCPoly.monomial(v) * c
    res = ideal_membership(target, rels, max(8, target.max_len()))
    assert res.found
    assert res.witness.expand(rels) == target
    round_trip = MembershipWitness.from_json(res.witness.to_json())
    assert round_trip.verify(target, rels)


def test_membership_batch_not_found_is_inconclusive():
    rels = [P("x[1].x[2] - x[2].x[1]")]
    res = ideal_membership_batch([P("x[1].x[1]"), P("x[1].x[2].x[1] - x[2].x[1].x[1]")], rels, 4)
    assert [r.status for r in res] == ["not-found", "member"]


def test_check_morphism_counit_and_bad_grading():
    e = MLForm.from_matrix(ANTISYM)
    rep = check_morphism(build_counit(e), 4)
    assert rep.status == "verified" and len(rep.checks) == 14
    H = build_presentation(e, e).pres
    imgs = {g: NCPoly.gen(g) for g in H.alphabet}
    imgs[a(0, 0)] = P("a[1,1] + 1")
    rep = check_morphism(GenMorphism(H, H, imgs), 4)
    assert rep.status == "falsified" and rep.error.startswith("grading")


def test_tensor_presentation():
    e = MLForm.from_matrix(ANTISYM)
    H = build_presentation(e, e).pres
    T = tensor_presentation(H, H)
    assert len(T.relations) == 28
    assert T.degree((a(0, 0, 1), b(0, 0, 2))) == 0
    U = tensor_presentation(H, Presentation.trivial())
    assert len(U.relations) == 14 and U.alphabet == H.alphabet
