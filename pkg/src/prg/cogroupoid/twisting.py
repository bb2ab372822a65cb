"""Twisting pairs of H(e), twisting conditions, and the connectivity map Psi."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BudgetExceeded
from ..exactlinalg import Matrix, format_scalar
from ..forms import MLForm, aut_membership, transform_form, twist_form
from ..ncalg.membership import (
    FALSIFIED,
    INCONCLUSIVE,
    VERIFIED,
    MorphismReport,
    RelationCheck,
    check_morphism,
    combine_status,
    ideal_membership_batch,
)
from ..ncalg.poly import B, NCPoly, a, b, D, Dinv
from ..ncalg.presentation import GenMorphism, identity_morphism, tensor_morphism
from ..ncalg.zhang import ZhangTwist
from .axioms import falsifier_for
from .structure import build_counit, build_delta, build_presentation, default_bound

__all__ = [
    "TwistingPairReport",
    "TwistingConditionsReport",
    "ConnectivityReport",
    "twisting_maps",
    "build_twisting_pair",
    "verify_twisting_conditions",
    "verify_cocycle_connectivity",
]

P1_STATED = "stated"  # Delta phi1 = (id (x) phi1) Delta, Delta phi2 = (phi2 (x) id) Delta
P1_MIRRORED = "mirrored"  # Delta phi1 = (phi1 (x) id) Delta, Delta phi2 = (id (x) phi2) Delta


def _lam_or_fail(e: MLForm, phi: Matrix) -> Fraction:
    mem = aut_membership(e, phi)
    if not mem.member:
        raise ValueError("phi is not in Aut(e)")
    return mem.lam


def twisting_maps(e: MLForm, phi: Matrix, lam: Fraction | None = None) -> tuple[GenMorphism, GenMorphism]:
    """phi1: A -> phi A, B -> B phi^-1, D^(+-1) -> lam^(+-1) D^(+-1).
    phi2: A -> A phi^-1, B -> phi B, D^(+-1) -> lam^(-+1) D^(+-1)."""
    if lam is None:
        lam = _lam_or_fail(e, phi)
    H = build_presentation(e, e)
    n = e.dim
    inv = phi.inverse()
    one, two = {}, {}
    for i in range(n):
        for j in range(n):
            one[a(i, j)] = NCPoly([((a(k, j),), phi[i, k]) for k in range(n)])
            one[b(i, j)] = NCPoly([((b(i, k),), inv[k, j]) for k in range(n)])
            two[a(i, j)] = NCPoly([((a(i, k),), inv[k, j]) for k in range(n)])
            two[b(i, j)] = NCPoly([((b(k, j),), phi[i, k]) for k in range(n)])
    one[D()] = NCPoly.gen(D()).scale(lam)
    one[Dinv()] = NCPoly.gen(Dinv()).scale(1 / lam)
    two[D()] = NCPoly.gen(D()).scale(1 / lam)
    two[Dinv()] = NCPoly.gen(Dinv()).scale(lam)
    return GenMorphism(H.pres, H.pres, one, "phi1"), GenMorphism(H.pres, H.pres, two, "phi2")


@dataclass(frozen=True)
class TwistingPairReport:
    phi: Matrix
    lam: Fraction
    phi1: GenMorphism
    phi2: GenMorphism
    tensor_checks: dict[str, bool]
    algebra: dict[str, MorphismReport]
    p1: dict[str, bool]
    p1_orientation: str | None
    p2: dict[str, bool]
    commute: bool

    @property
    def algebra_status(self) -> dict[str, str]:
        out = {}
        for name, rep in self.algebra.items():
            st = rep.status
            if not all(self.tensor_checks.values()):
                st = FALSIFIED
            out[name] = st
        return out

    @property
    def p1_status(self) -> str:
        return VERIFIED if self.p1_orientation is not None else FALSIFIED

    @property
    def p2_status(self) -> str:
        return VERIFIED if all(self.p2.values()) else FALSIFIED

    @property
    def status(self) -> str:
        return combine_status(list(self.algebra_status.values()) + [self.p1_status, self.p2_status])

    @property
    def passed(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        return {
            "phi": [[format_scalar(x) for x in row] for row in self.phi.to_rows()],
            "lambda": format_scalar(self.lam),
            "status": self.status,
            "tensor_checks": dict(self.tensor_checks),
            "algebra": {k: {"status": self.algebra_status[k], "report": v.to_json()} for k, v in self.algebra.items()},
            "P1": {"status": self.p1_status, "orientation": self.p1_orientation, "checks": dict(self.p1)},
            "P2": {"status": self.p2_status, "checks": dict(self.p2)},
            "commute": self.commute,
            "images": {
                "phi1": {str(g): str(p) for g, p in self.phi1.images.items()},
                "phi2": {str(g): str(p) for g, p in self.phi2.images.items()},
            },
        }


def _same_on_generators(F: GenMorphism, G: GenMorphism, gens) -> bool:
    return all(F.images[g] == G.images[g] for g in gens)


def build_twisting_pair(
    e: MLForm, phi: Matrix, bound: int | None = None, *, budget: int | None = None
) -> TwistingPairReport:
    """Build (phi1, phi2) for phi in Aut(e) and check relations, P1, P2.

    P1 is tested in both orientations; the report records which one holds.
    """
    lam = _lam_or_fail(e, phi)
    bound = bound if bound is not None else default_bound(e.m)
    inv = phi.inverse()
    m = e.m
    tensor_checks = {
        "e o (phi,...,phi) = lam e": transform_form(e, [phi] * m) == e.coeffs * lam,
        "e o (phi^-1,...,phi^-1) = lam^-1 e": transform_form(e, [inv] * m) == e.coeffs * (1 / lam),
    }
    phi1, phi2 = twisting_maps(e, phi, lam)
    fal = falsifier_for((e, e))
    algebra = {}
    for F in (phi1, phi2):
        algebra[F.name] = check_morphism(F, bound, falsifier=fal, budget=budget)

    H = build_presentation(e, e)
    gens = H.pres.alphabet
    delta = build_delta(e, e, e)
    ident = identity_morphism(H.pres)
    d1, d2 = delta.compose(phi1), delta.compose(phi2)
    p1 = {
        "stated: phi1": _same_on_generators(d1, tensor_morphism(ident, phi1).compose(delta), gens),
        "stated: phi2": _same_on_generators(d2, tensor_morphism(phi2, ident).compose(delta), gens),
        "mirrored: phi1": _same_on_generators(d1, tensor_morphism(phi1, ident).compose(delta), gens),
        "mirrored: phi2": _same_on_generators(d2, tensor_morphism(ident, phi2).compose(delta), gens),
    }
    orientation = None
    if p1["stated: phi1"] and p1["stated: phi2"]:
        orientation = P1_STATED
    elif p1["mirrored: phi1"] and p1["mirrored: phi2"]:
        orientation = P1_MIRRORED

    eps = build_counit(e)
    psi = phi1.compose(phi2)
    p2 = {str(g): eps.apply(psi.images[g]) == eps.images[g] for g in gens}
    commute = psi.same_images(phi2.compose(phi1))
    return TwistingPairReport(phi, lam, phi1, phi2, tensor_checks, algebra, p1, orientation, p2, commute)


# -- twisting conditions --------------------------------------------------

@dataclass(frozen=True)
class TwistingConditionsReport:
    relation_degrees: tuple[int, ...]
    t1: bool
    t2: dict[str, bool]

    @property
    def status(self) -> str:
        return VERIFIED if self.t1 and all(self.t2.values()) else FALSIFIED

    @property
    def passed(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "T1": {"status": VERIFIED if self.t1 else FALSIFIED, "relation_degrees": list(self.relation_degrees)},
            "T2": {"status": VERIFIED if all(self.t2.values()) else FALSIFIED, "checks": dict(self.t2)},
        }


def verify_twisting_conditions(e: MLForm) -> TwistingConditionsReport:
    """T1: relations of H(e) homogeneous.  T2: Delta(x) in H_d (x) H_d for deg x = d."""
    H = build_presentation(e, e)
    grading = H.pres.grading
    degs: set[int] = set()
    t1 = True
    for r in H.relations:
        ds = r.degrees(grading)
        t1 = t1 and len(ds) <= 1
        degs |= ds
    delta = build_delta(e, e, e)
    t2 = {}
    for g in H.pres.alphabet:
        d = grading[g]
        ok = True
        for w in delta.images[g].terms:
            d1 = sum(grading[s.on_factor(1)] for s in w if s.factor == 1)
            d2 = sum(grading[s.on_factor(1)] for s in w if s.factor == 2)
            ok = ok and d1 == d and d2 == d
        t2[str(g)] = ok
    return TwistingConditionsReport(tuple(sorted(degs)), t1, t2)


# -- connectivity -----------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityReport:
    phi: Matrix
    lam: Fraction
    e_phi: MLForm
    bound: int
    checks: tuple[RelationCheck, ...]
    images: dict = field(default_factory=dict)
    note: str = ""

    @property
    def status(self) -> str:
        return combine_status(c.status for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        from ..forms import form_to_json

        obj = {
            "phi": [[format_scalar(x) for x in row] for row in self.phi.to_rows()],
            "lambda": format_scalar(self.lam),
            "e_phi": form_to_json(self.e_phi),
            "bound": self.bound,
            "status": self.status,
            "Psi": {str(g): str(p) for g, p in self.images.items()},
            "checks": [c.to_json() for c in self.checks],
        }
        if self.note:
            obj["note"] = self.note
        return obj


def connectivity_map(e: MLForm, phi: Matrix) -> tuple[dict, ZhangTwist]:
    """Images of Psi and the Zhang twist of H(e) by psi = phi1 phi2."""
    phi1, phi2 = twisting_maps(e, phi)
    psi = phi1.compose(phi2)
    psi_inv = psi.inverse()
    H = build_presentation(e, e)
    images = {}
    for g in H.pres.alphabet:
        if g.kind == B:
            images[g] = psi_inv.images[g]
        else:
            images[g] = NCPoly.gen(g)
    return images, ZhangTwist(psi, H.pres.grading)


def verify_cocycle_connectivity(
    e: MLForm, phi: Matrix, bound: int | None = None, *, budget: int | None = None
) -> ConnectivityReport:
    """Psi: H(e^phi) -> H(e)^psi sends every relation into the relation ideal.

    Twisted products are expanded into ordinary words of H(e) before the
    membership search.
    """
    lam = _lam_or_fail(e, phi)
    bound = bound if bound is not None else default_bound(e.m)
    e_phi = twist_form(e, phi)
    H_phi = build_presentation(e_phi, e_phi)
    H = build_presentation(e, e)
    images, twist = connectivity_map(e, phi)
    targets = []
    for r in H_phi.relations:
        acc = NCPoly.zero()
        for w, c in r.terms.items():
            acc = acc + twist.product(*(images[g] for g in w)).scale(c)
        targets.append(acc)
    fal = falsifier_for((e, e))
    try:
        results = ideal_membership_batch(targets, H.pres, bound, falsifier=fal, budget=budget, strict=False)
    except BudgetExceeded as exc:
        checks = tuple(
            RelationCheck(i, r, t, INCONCLUSIVE, note=str(exc))
            for i, (r, t) in enumerate(zip(H_phi.relations, targets))
        )
        return ConnectivityReport(phi, lam, e_phi, bound, checks, images)
    checks = []
    for i, (r, t, res) in enumerate(zip(H_phi.relations, targets, results)):
        if res.status == "member":
            checks.append(RelationCheck(i, r, t, VERIFIED, res.witness))
        elif res.status == "non-member":
            checks.append(RelationCheck(i, r, t, FALSIFIED, note="nonzero in a module family"))
        else:
            checks.append(RelationCheck(i, r, t, INCONCLUSIVE, note=f"not found at length {res.bound}"))
    note = "the inverse of Psi is not checked"
    return ConnectivityReport(phi, lam, e_phi, bound, tuple(checks), images, note)
