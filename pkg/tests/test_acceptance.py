"""Exit criteria.  Each test prints one PASS/FAIL line; a summary follows the run."""
import itertools
import random

import pytest

from prg.cogroupoid import (
    build_presentation,
    build_twisting_pair,
    verify_antipode,
    verify_cocategory,
    verify_cocycle_connectivity,
    verify_lemma_identities,
    verify_twisting_conditions,
)
from prg.exactlinalg import Matrix, rref
from prg.forms import MLForm, check_nondegenerate, check_preregular, find_cyclic_twist, random_preregular_form
from prg.ncalg import NCPoly, ZhangTwist, ideal_membership, parse_poly
from prg.representations import evaluate, extend_module, nonvanishing_certificate, random_seed_matrix, validate_certificate, verify_module
from prg.superpotential import graded_dimension

from conftest import ANTISYM, JORDAN, QPLANE_Q2, SINGULAR, SYMMETRIC, criterion, random_invertible
from test_cogroupoid import antisym_h_relations
from test_forms import twist_identity_holds
from test_ncalg import random_linear_auto
from test_representations import FAMILIES, shift
from test_superpotential import brute_force_dims

pytestmark = pytest.mark.acceptance

TRIALS = 200


def hand_relations(e: MLForm, f: MLForm) -> list[NCPoly]:
    """The defining relations of H(e, f), written term by term as text."""
    k, l, m = e.dim, f.dim, e.m
    out = []
    for js in itertools.product(range(l), repeat=m):
        terms = [
            f"{c} * " + ".".join(f"a[{i + 1},{j + 1}]" for i, j in zip(idx, js))
            for idx, c in e.items()
        ]
        terms.append(f"{-f[js]} * D")
        out.append(sum((parse_poly(t) for t in terms), NCPoly.zero()))
    for js in itertools.product(range(k), repeat=m):
        terms = [
            f"{c} * " + ".".join(f"b[{i + 1},{j + 1}]" for i, j in reversed(list(zip(idx, js))))
            for idx, c in f.items()
        ]
        terms.append(f"{-e[js]} * D^-1")
        out.append(sum((parse_poly(t) for t in terms), NCPoly.zero()))
    out += [parse_poly("D.D^-1 - 1"), parse_poly("D^-1.D - 1")]
    for i, j in itertools.product(range(k), repeat=2):
        t = " + ".join(f"a[{i + 1},{p + 1}].b[{p + 1},{j + 1}]" for p in range(l))
        out.append(parse_poly(t) - (1 if i == j else 0))
    return out


def test_criterion_1_preregularity():
    with criterion(1, "preregularity suite", 1.0):
        for rows in (ANTISYM, SYMMETRIC, QPLANE_Q2, JORDAN):
            E = Matrix.from_rows(rows)
            f = MLForm.from_matrix(E)
            assert check_preregular(f).passed
            psi = find_cyclic_twist(f)
            assert psi == E.T.inverse() @ E
            assert twist_identity_holds(f, psi)
        ok, w = check_nondegenerate(MLForm.from_matrix(SINGULAR))
        assert not ok and not w.is_zero()
        assert (Matrix.from_rows(SINGULAR) @ w).is_zero()


def test_criterion_2_superpotential_algebras():
    with criterion(2, "superpotential algebra suite", 10.0):
        for rows in (QPLANE_Q2, JORDAN):
            f = MLForm.from_matrix(rows)
            dims = graded_dimension(f, 2, 6).dims
            assert dims == (1, 2, 3, 4, 5, 6, 7)
            assert dims == brute_force_dims(f, 2, 6)


def test_criterion_3_presentations():
    with criterion(3, "presentation suite"):
        e = MLForm.from_matrix(ANTISYM)
        H = build_presentation(e, e)
        assert len(H.relations) == 14
        assert list(H.relations) == antisym_h_relations()
        for er, fr in ((QPLANE_Q2, JORDAN), (JORDAN, SYMMETRIC), (ANTISYM, QPLANE_Q2)):
            e, f = MLForm.from_matrix(er), MLForm.from_matrix(fr)
            rels = build_presentation(e, f).relations
            assert len(rels) == 14
            assert list(rels) == hand_relations(e, f)


def test_criterion_4_cocategory():
    with criterion(4, "cocategory suite", 5.0):
        rng = random.Random(1)
        for _ in range(10):
            m = rng.choice([2, 3])
            forms = [random_preregular_form(m, rng.randint(1, 3), rng) for _ in range(4)]
            rep = verify_cocategory(*forms)
            for name in ("coassociativity", "counit-left", "counit-right"):
                assert rep[name].status == "verified"
                assert all(entry.target.is_zero() for entry in rep[name].entries)
            assert rep.status == "verified"


def test_criterion_5_antipode_and_lemma():
    with criterion(5, "antipode and lemma suite", 120.0):
        e = MLForm.from_matrix(ANTISYM)
        H = build_presentation(e, e)
        anti = verify_antipode(e, e, 8)
        lem = verify_lemma_identities(e, e, 8)
        assert anti.status == "verified" and lem.status == "verified"
        for part in list(anti.parts.values()) + list(lem.parts.values()):
            for entry in part.entries:
                assert entry.witness is not None
                assert entry.witness.verify(entry.target, H.relations)
                assert entry.witness.max_len(H.relations) <= 8


def test_criterion_6_modules_and_nonvanishing():
    with criterion(6, "module and nonvanishing suite", 30.0):
        rng = random.Random(6)
        for _ in range(20):
            E, F = random_invertible(2, rng), random_invertible(2, rng)
            seed = random_seed_matrix(2, rng)
            fam = extend_module(E, F, seed, (-5, 5))
            assert verify_module(fam).passed
            e, f = MLForm.from_matrix(E), MLForm.from_matrix(F)
            for r in build_presentation(e, f).relations:
                for d in range(-3, 4):
                    assert evaluate(r, fam, d).is_zero()
            cert = nonvanishing_certificate(e, f, seed)
            assert cert.verdict == "nonzero"
            assert validate_certificate(cert.to_json()) == (True, [])


def test_criterion_7_twisting_pairs():
    with criterion(7, "twisting suite", 10.0):
        e = MLForm.from_matrix(ANTISYM)
        rng = random.Random(7)
        for _ in range(10):
            phi = random_invertible(2, rng)
            rep = build_twisting_pair(e, phi)
            assert rep.passed and rep.lam == phi.det()
            assert rep.p1_orientation is not None and all(rep.p1[k] for k in rep.p1 if k.startswith(rep.p1_orientation))
            assert all(rep.p2.values())
        for m in (2, 3):
            form = e if m == 2 else random_preregular_form(3, 2, rng)
            rep = verify_twisting_conditions(form)
            assert rep.t1 and rep.t2


def test_criterion_8_connectivity():
    with criterion(8, "connectivity suite", 120.0):
        e = MLForm.from_matrix(ANTISYM)
        rep = verify_cocycle_connectivity(e, Matrix.diag([2, "1/2"]), 8)
        assert rep.status == "verified"
        H = build_presentation(e, e)
        for c in rep.checks:
            assert c.witness is None or c.witness.verify(c.image, H.relations)


def _random_word(rng, alphabet, max_len):
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def test_criterion_9_properties():
    with criterion(9, f"property suite, {TRIALS} trials each"):
        rng = random.Random(9)
        xs = [parse_poly("x[1]"), parse_poly("x[2]")]
        xgens = [next(iter(p.symbols())) for p in xs]
        rels = [parse_poly("x[1].x[2] - x[2].x[1]"), parse_poly("x[1].x[1]")]

        def rand_poly(n_terms=3, max_len=3):
            return NCPoly([(_random_word(rng, xgens, max_len), rng.randint(-3, 3)) for _ in range(n_terms)])

        for _ in range(TRIALS):
            target = NCPoly.zero()
            for _ in range(rng.randint(1, 4)):
                target = target + NCPoly.monomial(_random_word(rng, xgens, 2)) * rng.choice(rels) \
                    * NCPoly.monomial(_random_word(rng, xgens, 2)) * rng.randint(-3, 3)
            res = ideal_membership(target, rels, max(8, target.max_len()))
            assert res.found and res.witness.expand(rels) == target

        H = build_presentation(MLForm.from_matrix(ANTISYM), MLForm.from_matrix(ANTISYM)).pres
        for _ in range(TRIALS):
            u, v = _random_word(rng, H.alphabet, 4), _random_word(rng, H.alphabet, 4)
            fam = rng.choice(FAMILIES)
            p = NCPoly.monomial(u, rng.randint(-3, 3))
            q = NCPoly.monomial(v, rng.randint(-3, 3))
            assert evaluate(p * q, fam, 0) == evaluate(p, fam, shift(v)) @ evaluate(q, fam, 0)

        for _ in range(TRIALS):
            Z = ZhangTwist(random_linear_auto(rng))
            p, q, r = rand_poly(), rand_poly(), rand_poly()
            assert Z.multiply(Z.multiply(p, q), r) == Z.multiply(p, Z.multiply(q, r))

        for _ in range(TRIALS):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            M = Matrix.from_rows([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)])
            R, rank, piv = rref(M)
            assert rref(R) == (R, rank, piv)
