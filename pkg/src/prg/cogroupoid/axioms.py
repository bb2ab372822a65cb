"""Cocategory, counit and antipode laws for the family H(e, f)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BudgetExceeded
from ..forms import MLForm
from ..ncalg.membership import (
    FALSIFIED,
    INCONCLUSIVE,
    VERIFIED,
    MembershipResult,
    MembershipWitness,
    MorphismReport,
    check_morphism,
    combine_status,
    ideal_membership_batch,
)
from ..ncalg.poly import NCPoly, a, b, D, Dinv
from ..ncalg.presentation import GenMorphism, identity_morphism, tensor_morphism
from .structure import (
    build_antipode,
    build_counit,
    build_delta,
    build_presentation,
    default_bound,
)

__all__ = [
    "Entry",
    "AxiomPart",
    "AxiomReport",
    "LemmaReport",
    "verify_cocategory",
    "verify_antipode",
    "verify_lemma_identities",
    "lemma_targets",
    "antipode_targets",
    "falsifier_for",
]


@dataclass(frozen=True)
class Entry:
    """One identity: a label, the element that must vanish, and the verdict."""

    label: str
    target: NCPoly
    status: str
    witness: MembershipWitness | None = None
    note: str = ""

    def to_json(self) -> dict:
        obj = {"label": self.label, "target": str(self.target), "status": self.status}
        if self.witness is not None:
            obj["witness"] = self.witness.to_json()
        if self.note:
            obj["note"] = self.note
        return obj


@dataclass(frozen=True)
class AxiomPart:
    name: str
    entries: tuple[Entry, ...]
    detail: str = ""

    @property
    def status(self) -> str:
        return combine_status(e.status for e in self.entries)

    def to_json(self) -> dict:
        obj = {"name": self.name, "status": self.status, "entries": [e.to_json() for e in self.entries]}
        if self.detail:
            obj["detail"] = self.detail
        return obj


@dataclass(frozen=True)
class AxiomReport:
    bound: int
    parts: dict[str, AxiomPart]
    morphisms: tuple[MorphismReport, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return combine_status([p.status for p in self.parts.values()] + [m.status for m in self.morphisms])

    def __getitem__(self, name: str) -> AxiomPart:
        return self.parts[name]

    def to_json(self) -> dict:
        obj = {
            "bound": self.bound,
            "status": self.status,
            "parts": {k: v.to_json() for k, v in self.parts.items()},
            "morphisms": [m.to_json() for m in self.morphisms],
        }
        obj.update(self.extra)
        return obj


def falsifier_for(*pairs: tuple[MLForm, MLForm]):
    """Module-evaluation falsifier for H(x1,y1) (x) ..., when one exists."""
    from ..representations import module_falsifier

    return module_falsifier(list(pairs))


def _exact_entry(label: str, lhs: NCPoly, rhs: NCPoly) -> Entry:
    diff = lhs - rhs
    if diff.is_zero():
        return Entry(label, diff, VERIFIED)
    return Entry(label, diff, FALSIFIED, note="exact identity fails")


def _gen_label(g) -> str:
    return str(g)


# -- cocategory ---------------------------------------------------------

def verify_cocategory(
    e: MLForm,
    f: MLForm | None = None,
    g: MLForm | None = None,
    h: MLForm | None = None,
    bound: int | None = None,
    *,
    check_maps: bool = True,
    budget: int | None = None,
) -> AxiomReport:
    """Coassociativity and counit laws on generators, plus relation checks.

    Missing forms default to e.
    """
    f = f if f is not None else e
    g = g if g is not None else e
    h = h if h is not None else e
    for x in (f, g, h):
        if x.m != e.m:
            raise ValueError("all forms must have the same arity")
    bound = bound if bound is not None else default_bound(e.m)

    d_eh_g = build_delta(e, g, h)
    d_eh_f = build_delta(e, f, h)
    left = tensor_morphism(build_delta(e, f, g), identity_morphism(build_presentation(g, h).pres))
    right = tensor_morphism(identity_morphism(build_presentation(e, f).pres), build_delta(f, g, h))
    coassoc = []
    for x in d_eh_g.domain.alphabet:
        lhs = left.apply(d_eh_g.images[x])
        rhs = right.apply(d_eh_f.images[x])
        coassoc.append(_exact_entry(_gen_label(x), lhs, rhs))

    eps_e, eps_f = build_counit(e), build_counit(f)
    d_ef_f = build_delta(e, f, f)
    d_ef_e = build_delta(e, e, f)
    id_ef = identity_morphism(build_presentation(e, f).pres)
    c_right = tensor_morphism(id_ef, eps_f)  # (id (x) eps_f)
    c_left = tensor_morphism(eps_e, id_ef)  # (eps_e (x) id)
    counit_l, counit_r = [], []
    for x in d_ef_f.domain.alphabet:
        gen = NCPoly.gen(x)
        counit_r.append(_exact_entry(_gen_label(x), c_right.apply(d_ef_f.images[x]), gen))
        counit_l.append(_exact_entry(_gen_label(x), c_left.apply(d_ef_e.images[x]), gen))

    parts = {
        "coassociativity": AxiomPart("coassociativity", tuple(coassoc)),
        "counit-left": AxiomPart("counit-left", tuple(counit_l)),
        "counit-right": AxiomPart("counit-right", tuple(counit_r)),
    }
    morphisms = []
    if check_maps:
        morphisms.append(_checked(d_eh_g, bound, ((e, g), (g, h)), budget))
        morphisms.append(_checked(eps_e, bound, (), budget))
    return AxiomReport(bound, parts, tuple(morphisms))


def _checked(phi: GenMorphism, bound: int, pairs, budget) -> MorphismReport:
    fals = falsifier_for(*pairs) if pairs else None
    return check_morphism(phi, bound, falsifier=fals, budget=budget)


# -- antipode -----------------------------------------------------------

def _split(word):
    """(factor-1 word, factor-2 word retagged to factor 1)."""
    w1 = tuple(s for s in word if s.factor == 1)
    w2 = tuple(s.on_factor(1) for s in word if s.factor == 2)
    return w1, w2


def antipode_targets(e: MLForm, f: MLForm, variant: str = "lemma") -> tuple[list, list]:
    """Elements that vanish iff the two antipode diagrams commute on generators.

    Left law lives in H(e,f): m(id (x) S_{f,e}) Delta^f_{e,e}(x) - eps(x).
    Right law lives in H(f,e): m(S_{e,f} (x) id) Delta^f_{e,e}(x) - eps(x).
    """
    delta = build_delta(e, f, e)
    eps = build_counit(e)
    S_fe = build_antipode(f, e, variant)
    S_ef = build_antipode(e, f, variant)
    left, right = [], []
    for x in delta.domain.alphabet:
        lt, rt = NCPoly.zero(), NCPoly.zero()
        for w, c in delta.images[x].terms.items():
            w1, w2 = _split(w)
            lt = lt + NCPoly.monomial(w1).mul(S_fe.apply(NCPoly.monomial(w2))).scale(c)
            rt = rt + S_ef.apply(NCPoly.monomial(w1)).mul(NCPoly.monomial(w2)).scale(c)
        unit = eps.images[x].constant()
        left.append((_gen_label(x), lt - unit))
        right.append((_gen_label(x), rt - unit))
    return left, right


def _decide(labelled, pres, bound, falsifier, budget) -> tuple[Entry, ...]:
    targets = [t for _, t in labelled]
    try:
        results = ideal_membership_batch(
            targets, pres, bound, falsifier=falsifier, budget=budget, strict=False
        )
    except BudgetExceeded as exc:
        return tuple(Entry(lbl, t, INCONCLUSIVE, note=str(exc)) for lbl, t in labelled)
    return tuple(_entry(lbl, t, r) for (lbl, t), r in zip(labelled, results))


def _entry(label: str, target: NCPoly, r: MembershipResult) -> Entry:
    if r.status == "member":
        return Entry(label, target, VERIFIED, r.witness, f"found at length {r.bound}")
    if r.status == "non-member":
        return Entry(label, target, FALSIFIED, note="nonzero in a module family")
    return Entry(label, target, INCONCLUSIVE, note=f"not found at length {r.bound}")


def verify_antipode(
    e: MLForm,
    f: MLForm | None = None,
    bound: int | None = None,
    *,
    check_maps: bool = True,
    budget: int | None = None,
) -> AxiomReport:
    """Both antipode diagrams on the generators of H(e).

    The lemma form of S is tried first; with equal dimensions the swapped
    form is tried when the first is not verified.  The report names the
    variant it settled on.
    """
    f = f if f is not None else e
    if f.m != e.m:
        raise ValueError("forms must have the same arity")
    bound = bound if bound is not None else default_bound(e.m)
    Hef = build_presentation(e, f)
    Hfe = build_presentation(f, e)
    fal_ef = falsifier_for((e, f))
    fal_fe = falsifier_for((f, e))
    variants = ["lemma"] + (["swapped"] if e.dim == f.dim and e != f else [])
    attempts = {}
    chosen = None
    for variant in variants:
        left, right = antipode_targets(e, f, variant)
        parts = {
            "antipode-left": AxiomPart("antipode-left", _decide(left, Hef.pres, bound, fal_ef, budget)),
            "antipode-right": AxiomPart("antipode-right", _decide(right, Hfe.pres, bound, fal_fe, budget)),
        }
        attempts[variant] = parts
        if combine_status(p.status for p in parts.values()) == VERIFIED:
            chosen = variant
            break
    if chosen is None:
        chosen = variants[0]
    parts = attempts[chosen]
    morphisms = []
    if check_maps:
        S = build_antipode(e, f, chosen)
        morphisms.append(_checked(S, bound, ((f, e),), budget))
    extra = {
        "variant": chosen,
        "variants_tried": {v: combine_status(p.status for p in ps.values()) for v, ps in attempts.items()},
    }
    return AxiomReport(bound, parts, tuple(morphisms), extra)


# -- matrix identities ----------------------------------------------------

def lemma_targets(e: MLForm, f: MLForm) -> dict[str, list]:
    """Entries of BA - I, D^-1 Q^T A^T P^-T D B^T - I, B^T D^-1 Q^T A^T P^-T D - I, AB - I."""
    H = build_presentation(e, f)
    k, l = H.k, H.l
    P_inv, Q = H.P.inverse(), H.Q

    def conj(r: int, t_col: int) -> NCPoly:
        # (D^-1 Q^T A^T P^-T D)_{t_col, r} = sum_{t,s} D^-1 Q[t, t_col] a_st P^-1[r, s] D
        terms = []
        for t in range(l):
            q = Q[t, t_col]
            if not q:
                continue
            for s in range(k):
                pv = P_inv[r, s]
                if pv:
                    terms.append(((Dinv(), a(s, t), D()), q * pv))
        return NCPoly(terms)

    def delta(i, j):
        return Fraction(1 if i == j else 0)

    out: dict[str, list] = {"BA": [], "CB": [], "BC": [], "AB": []}
    for i in range(l):
        for j in range(l):
            t = NCPoly([((b(i, p), a(p, j)), 1) for p in range(k)])
            out["BA"].append((f"BA[{i + 1},{j + 1}]", t - delta(i, j)))
    for i in range(l):
        for j in range(l):
            t = NCPoly.zero()
            for r in range(k):
                t = t + conj(r, i).mul(NCPoly.gen(b(j, r)))
            out["CB"].append((f"D^-1Q^TA^TP^-TDB^T[{i + 1},{j + 1}]", t - delta(i, j)))
    for i in range(k):
        for j in range(k):
            t = NCPoly.zero()
            for r in range(l):
                t = t + NCPoly.gen(b(r, i)).mul(conj(j, r))
            out["BC"].append((f"B^TD^-1Q^TA^TP^-TD[{i + 1},{j + 1}]", t - delta(i, j)))
    for i in range(k):
        for j in range(k):
            t = NCPoly([((a(i, p), b(p, j)), 1) for p in range(l)])
            out["AB"].append((f"AB[{i + 1},{j + 1}]", t - delta(i, j)))
    return out


@dataclass(frozen=True)
class LemmaReport:
    bound: int
    parts: dict[str, AxiomPart]

    @property
    def status(self) -> str:
        return combine_status(p.status for p in self.parts.values())

    def to_json(self) -> dict:
        return {"bound": self.bound, "status": self.status, "parts": {k: v.to_json() for k, v in self.parts.items()}}


def verify_lemma_identities(
    e: MLForm, f: MLForm | None = None, bound: int | None = None, *, budget: int | None = None
) -> LemmaReport:
    f = f if f is not None else e
    if f.m != e.m:
        raise ValueError("forms must have the same arity")
    bound = bound if bound is not None else default_bound(e.m)
    H = build_presentation(e, f)
    fal = falsifier_for((e, f))
    groups = lemma_targets(e, f)
    labelled = [item for grp in groups.values() for item in grp]
    entries = _decide(labelled, H.pres, bound, fal, budget)
    parts, pos = {}, 0
    for name, grp in groups.items():
        parts[name] = AxiomPart(name, entries[pos:pos + len(grp)])
        pos += len(grp)
    return LemmaReport(bound, parts)

