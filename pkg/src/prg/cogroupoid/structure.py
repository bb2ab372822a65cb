"""The algebras H(e, f) and their structure maps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..exactlinalg import Matrix
from ..forms import MLForm, check_preregular
from ..ncalg.poly import NCPoly, a, b, D, Dinv
from ..ncalg.presentation import GenMorphism, Presentation, tensor_presentation

__all__ = [
    "UQGPresentation",
    "build_presentation",
    "build_delta",
    "build_counit",
    "build_antipode",
    "ANTIPODE_VARIANTS",
    "default_bound",
    "relation_count",
]

ANTIPODE_VARIANTS = ("lemma", "swapped")


def default_bound(m: int) -> int:
    return 2 * m + 4


def relation_count(k: int, l: int, m: int) -> int:
    return l ** m + k ** m + 2 + k * k


@dataclass(frozen=True, eq=False)
class UQGPresentation:
    """H(e, f): generators a (k x l), b (l x k), D, D^-1."""

    e: MLForm
    f: MLForm
    pres: Presentation
    P: Matrix
    Q: Matrix

    @property
    def m(self) -> int:
        return self.e.m

    @property
    def k(self) -> int:
        return self.e.dim

    @property
    def l(self) -> int:
        return self.f.dim

    @property
    def relations(self) -> tuple[NCPoly, ...]:
        return self.pres.relations

    def family_slices(self) -> dict[str, range]:
        k, l, m = self.k, self.l, self.m
        na, nb = l ** m, k ** m
        return {
            "a": range(0, na),
            "b": range(na, na + nb),
            "D": range(na + nb, na + nb + 2),
            "AB": range(na + nb + 2, na + nb + 2 + k * k),
        }

    def A(self, i: int, j: int) -> NCPoly:
        return NCPoly.gen(a(i, j))

    def B(self, i: int, j: int) -> NCPoly:
        return NCPoly.gen(b(i, j))


def _check_pair(e: MLForm, f: MLForm) -> None:
    if e.m != f.m:
        raise ValueError(f"arity mismatch: {e.m} vs {f.m}")


def _twist_or_fail(x: MLForm, label: str) -> Matrix:
    rep = check_preregular(x)
    if not rep.passed:
        raise ValueError(f"form {label} is not preregular")
    return rep.twist


@lru_cache(maxsize=256)
def build_presentation(e: MLForm, f: MLForm) -> UQGPresentation:
    _check_pair(e, f)
    P = _twist_or_fail(e, "e")
    Q = _twist_or_fail(f, "f")
    k, l, m = e.dim, f.dim, e.m
    alphabet = (
        [a(i, j) for i in range(k) for j in range(l)]
        + [b(i, j) for i in range(l) for j in range(k)]
        + [D(), Dinv()]
    )
    grading = {g: 1 for g in alphabet[: k * l]}
    grading.update({g: -1 for g in alphabet[k * l: 2 * k * l]})
    grading[D()] = m
    grading[Dinv()] = -m

    e_items = list(e.items())
    f_items = list(f.items())
    rels = []
    for js in itertools.product(range(l), repeat=m):
        terms = [(tuple(a(i, j) for i, j in zip(idx, js)), c) for idx, c in e_items]
        if f[js]:
            terms.append(((D(),), -f[js]))
        rels.append(NCPoly(terms))
    for js in itertools.product(range(k), repeat=m):
        terms = [(tuple(b(i, j) for i, j in zip(reversed(idx), reversed(js))), c) for idx, c in f_items]
        if e[js]:
            terms.append(((Dinv(),), -e[js]))
        rels.append(NCPoly(terms))
    rels.append(NCPoly([((D(), Dinv()), 1), ((), -1)]))
    rels.append(NCPoly([((Dinv(), D()), 1), ((), -1)]))
    for i in range(k):
        for j in range(k):
            terms = [((a(i, p), b(p, j)), 1) for p in range(l)]
            if i == j:
                terms.append(((), -1))
            rels.append(NCPoly(terms))
    name = "H(e)" if e == f else "H(e,f)"
    pres = Presentation(alphabet, grading, rels, False, name)
    return UQGPresentation(e, f, pres, P, Q)


def build_delta(e: MLForm, f: MLForm, g: MLForm) -> GenMorphism:
    """Delta^f_{e,g}: H(e,g) -> H(e,f) (x) H(f,g)."""
    _check_pair(e, f)
    _check_pair(f, g)
    Heg = build_presentation(e, g)
    cod = tensor_presentation(build_presentation(e, f).pres, build_presentation(f, g).pres)
    p, q, r = e.dim, f.dim, g.dim
    imgs = {}
    for i in range(p):
        for j in range(r):
            imgs[a(i, j)] = NCPoly([((a(i, s, 1), a(s, j, 2)), 1) for s in range(q)])
            # b of H(e,g) is r x p
            imgs[b(j, i)] = NCPoly([((b(s, i, 1), b(j, s, 2)), 1) for s in range(q)])
    imgs[D()] = NCPoly([((D(1), D(2)), 1)])
    imgs[Dinv()] = NCPoly([((Dinv(1), Dinv(2)), 1)])
    return GenMorphism(Heg.pres, cod, imgs, "Delta")


def build_counit(e: MLForm) -> GenMorphism:
    H = build_presentation(e, e)
    n = e.dim
    imgs = {}
    for i in range(n):
        for j in range(n):
            imgs[a(i, j)] = NCPoly.scalar(1 if i == j else 0)
            imgs[b(i, j)] = NCPoly.scalar(1 if i == j else 0)
    imgs[D()] = NCPoly.one()
    imgs[Dinv()] = NCPoly.one()
    return GenMorphism(H.pres, Presentation.trivial(), imgs, "epsilon")


def build_antipode(e: MLForm, f: MLForm, variant: str = "lemma") -> GenMorphism:
    """S_{e,f}: H(e,f) -> H(f,e)^op.

    ``lemma``:   S(B) = D^-1 Q^-1 A P D   (P twist of e, Q twist of f)
    ``swapped``: S(B) = D^-1 P^-1 A Q D   (needs dim e == dim f)

    Images are written as products in the underlying algebra H(f,e).
    """
    if variant not in ANTIPODE_VARIANTS:
        raise ValueError(f"unknown antipode variant {variant!r}")
    Hef = build_presentation(e, f)
    Hfe = build_presentation(f, e)
    k, l = e.dim, f.dim
    if variant == "lemma":
        left, right = Hef.Q.inverse(), Hef.P  # l x l, k x k
    else:
        if k != l:
            raise ValueError("the swapped antipode variant needs equal dimensions")
        left, right = Hef.P.inverse(), Hef.Q
    imgs = {}
    for i in range(k):
        for j in range(l):
            imgs[a(i, j)] = NCPoly.gen(b(i, j))  # b of H(f,e) is k x l
    # A^{f,e} is l x k; S(b_ij) for i in [l], j in [k]
    for i in range(l):
        for j in range(k):
            terms = []
            for s in range(l):
                ls = left[i, s]
                if not ls:
                    continue
                for t in range(k):
                    rt = right[t, j]
                    if rt:
                        terms.append(((Dinv(), a(s, t), D()), ls * rt))
            imgs[b(i, j)] = NCPoly(terms)
    imgs[D()] = NCPoly.gen(Dinv())
    imgs[Dinv()] = NCPoly.gen(D())
    return GenMorphism(Hef.pres, Hfe.pres.with_opposite(True), imgs, f"S[{variant}]")


def scalar_image(p: NCPoly) -> Fraction:
    if any(w for w in p.terms):
        raise ValueError("not a scalar")
    return p.constant()

