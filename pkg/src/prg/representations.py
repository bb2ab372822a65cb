"""Graded module families over H(e, f) for bilinear forms, and certificates.

A family has a copy of V in every degree d.  The generator a_ij acts
M_d -> M_{d+1} as the scalar A^(d)[i, j], b_ij acts M_d -> M_{d-1} as
B^(d)[i, j], and D^{+-1} act as the identity M_d -> M_{d+-2}.  The relations
of H(e, f) then reduce to the three matrix identities checked in
:func:`verify_module`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import GradingError, WindowError
from .exactlinalg import Matrix, SingularMatrixError, matrix_from_json, matrix_to_json
from .forms import MLForm, check_preregular, form_from_json, form_to_json
from .ncalg.poly import A, B, DNEG, DPOS, NCPoly

__all__ = [
    "ModuleFamily",
    "ModuleCheck",
    "ModuleReport",
    "NonvanishingCertificate",
    "DEFAULT_WINDOW",
    "extend_module",
    "verify_module",
    "evaluate",
    "evaluate_scalar",
    "evaluate_tensor",
    "random_seed_matrix",
    "nonvanishing_certificate",
    "validate_certificate",
    "module_falsifier",
    "family_to_json",
    "family_from_json",
]

DEFAULT_WINDOW = (-5, 5)
_SHIFT = {A: 1, B: -1, DPOS: 2, DNEG: -2}


@dataclass(frozen=True)
class ModuleFamily:
    E: Matrix
    F: Matrix
    window: tuple[int, int]
    A_maps: dict[int, Matrix]
    B_maps: dict[int, Matrix]

    @property
    def n(self) -> int:
        return self.E.rows

    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def in_window(self, d: int) -> bool:
        return self.window[0] <= d <= self.window[1]


def _check_window(window) -> tuple[int, int]:
    lo, hi = (int(w) for w in window)
    if lo > hi:
        raise WindowError(f"empty window [{lo}, {hi}]")
    if not lo <= 0 <= hi:
        raise WindowError("the window must contain degree 0, where the seed lives")
    return lo, hi


def extend_module(E: Matrix, F: Matrix, A0: Matrix, window=DEFAULT_WINDOW) -> ModuleFamily:
    """Propagate the seed A^(0) through the window."""
    n = E.rows
    for name, M in (("E", E), ("F", F), ("A0", A0)):
        if M.shape != (n, n):
            raise ValueError(f"{name} must be {n} x {n}")
        if not M.is_invertible():
            raise SingularMatrixError(f"{name} is singular")
    lo, hi = _check_window(window)
    Einv = E.inverse()
    EinvT = Einv.T
    A_maps = {0: A0}
    for d in range(0, hi):
        A_maps[d + 1] = EinvT @ A_maps[d].inverse().T @ F.T
    for d in range(0, lo, -1):
        A_maps[d - 1] = Einv @ A_maps[d].inverse().T @ F
    B_maps = {d + 1: A_maps[d].inverse() for d in range(lo, hi)}
    return ModuleFamily(E, F, (lo, hi), dict(sorted(A_maps.items())), dict(sorted(B_maps.items())))


@dataclass(frozen=True)
class ModuleCheck:
    identity: str
    degree: int
    ok: bool

    def to_json(self) -> dict:
        return {"identity": self.identity, "degree": self.degree, "ok": self.ok}


@dataclass(frozen=True)
class ModuleReport:
    checks: tuple[ModuleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[ModuleCheck]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


ID_A = "A(d+1)^T E A(d) = F"
ID_B = "B(d)^T F^T B(d+1) = E^T"
ID_AB = "A(d) B(d+1) = I"


def verify_module(fam: ModuleFamily) -> ModuleReport:
    E, F = fam.E, fam.F
    I = Matrix.identity(fam.n)
    Am, Bm = fam.A_maps, fam.B_maps
    checks = []
    for d in fam.degrees():
        if d in Am and d + 1 in Am:
            checks.append(ModuleCheck(ID_A, d, Am[d + 1].T @ E @ Am[d] == F))
        if d in Bm and d + 1 in Bm:
            checks.append(ModuleCheck(ID_B, d, Bm[d].T @ F.T @ Bm[d + 1] == E.T))
        if d in Am and d + 1 in Bm:
            checks.append(ModuleCheck(ID_AB, d, Am[d] @ Bm[d + 1] == I))
    return ModuleReport(tuple(checks))


def _eval_word(word, fam: ModuleFamily, d: int) -> Fraction:
    val = Fraction(1)
    cur = d
    if not fam.in_window(cur):
        raise WindowError(f"degree {cur} is outside the window {fam.window}")
    for g in reversed(word):
        nxt = cur + _SHIFT[g.kind]
        if not fam.in_window(nxt):
            raise WindowError(f"degree {nxt} is outside the window {fam.window}")
        if g.kind == A:
            val *= fam.A_maps[cur][g.i, g.j]
        elif g.kind == B:
            val *= fam.B_maps[cur][g.i, g.j]
        elif g.kind not in (DPOS, DNEG):
            raise ValueError(f"generator {g} has no action on these modules")
        if not val:
            return val
        cur = nxt
    return val


def _word_shift(word) -> int:
    return sum(_SHIFT[g.kind] for g in word)


def evaluate_scalar(p: NCPoly, fam: ModuleFamily, d: int) -> Fraction:
    """Scalar by which p acts from M_d; p must be homogeneous."""
    shifts = {_word_shift(w) for w in p.terms}
    if len(shifts) > 1:
        raise GradingError(f"{p} is not homogeneous")
    return sum((c * _eval_word(w, fam, d) for w, c in p.terms.items()), Fraction(0))


def evaluate(p: NCPoly, fam: ModuleFamily, d: int) -> Matrix:
    """The operator M_d -> M_{d + deg p} (a scalar multiple of the identity on V)."""
    return Matrix.identity(fam.n) * evaluate_scalar(p, fam, d)


def evaluate_tensor(p: NCPoly, fams: Sequence[ModuleFamily], degrees: Sequence[int]) -> Fraction:
    """Evaluate on the tensor product of modules, factor t starting at degrees[t-1]."""
    shifts = set()
    total = Fraction(0)
    for w, c in p.terms.items():
        parts: dict[int, list] = {}
        for g in w:
            parts.setdefault(g.factor, []).append(g)
        shifts.add(tuple(_word_shift(parts.get(t + 1, ())) for t in range(len(fams))))
        val = c
        for t, fam in enumerate(fams):
            val *= _eval_word(parts.get(t + 1, ()), fam, degrees[t])
            if not val:
                break
        total += val
    if len(shifts) > 1:
        raise GradingError(f"{p} is not homogeneous in every factor")
    return total


def random_seed_matrix(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    """Uniform entries in [lo, hi], redrawn until invertible."""
    while True:
        M = Matrix(n, n, [rng.randint(lo, hi) for _ in range(n * n)])
        if M.is_invertible():
            return M


# -- certificates ------------------------------------------------------

EQUIVALENCE_NOTE = (
    "H_2(e,f) is nonzero, so the universal quantum groups of A(e,2) and A(f,2) "
    "are Morita-Takeuchi equivalent provided both algebras are AS-regular; "
    "AS-regularity is taken as a user assertion and is not checked."
)


@dataclass(frozen=True)
class NonvanishingCertificate:
    e: MLForm
    f: MLForm
    seed: Matrix
    window: tuple[int, int]
    checks: tuple[ModuleCheck, ...]
    relation_checks: int
    verdict: str
    rng_seed: int | None = None
    note: str = EQUIVALENCE_NOTE

    def to_json(self) -> dict:
        return {
            "kind": "nonvanishing",
            "e": form_to_json(self.e),
            "f": form_to_json(self.f),
            "seed": matrix_to_json(self.seed),
            "rng_seed": self.rng_seed,
            "window": list(self.window),
            "checks": [c.to_json() for c in self.checks],
            "relation_checks": self.relation_checks,
            "verdict": self.verdict,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "NonvanishingCertificate":
        try:
            checks = tuple(ModuleCheck(c["identity"], int(c["degree"]), bool(c["ok"])) for c in obj["checks"])
            return cls(
                form_from_json(obj["e"]),
                form_from_json(obj["f"]),
                matrix_from_json(obj["seed"]),
                tuple(int(x) for x in obj["window"]),
                checks,
                int(obj.get("relation_checks", 0)),
                str(obj["verdict"]),
                obj.get("rng_seed"),
                str(obj.get("note", EQUIVALENCE_NOTE)),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from None


def _bilinear_pair(e: MLForm, f: MLForm) -> tuple[Matrix, Matrix]:
    if e.m != 2 or f.m != 2:
        raise ValueError("module families are only available for bilinear forms (m = 2)")
    if e.dim != f.dim:
        raise ValueError("module families need forms on spaces of equal dimension")
    for label, x in (("e", e), ("f", f)):
        if not check_preregular(x).passed:
            raise ValueError(f"form {label} is not preregular")
    return e.matrix(), f.matrix()


def _relations_vanish(e: MLForm, f: MLForm, fam: ModuleFamily) -> tuple[int, bool]:
    from .cogroupoid.structure import build_presentation

    count = 0
    for r in build_presentation(e, f).relations:
        for d in fam.degrees():
            # every word of r must stay inside the window
            try:
                v = evaluate_scalar(r, fam, d)
            except WindowError:
                continue
            count += 1
            if v:
                return count, False
    return count, True


def nonvanishing_certificate(
    e: MLForm, f: MLForm, seed: Matrix | None = None, *, rng_seed: int = 0, window=DEFAULT_WINDOW
) -> NonvanishingCertificate:
    E, F = _bilinear_pair(e, f)
    used_rng = None
    if seed is None:
        seed = random_seed_matrix(E.rows, random.Random(rng_seed))
        used_rng = rng_seed
    fam = extend_module(E, F, seed, window)
    rep = verify_module(fam)
    count, vanish = _relations_vanish(e, f, fam)
    verdict = "nonzero" if rep.passed and vanish else "failed"
    return NonvanishingCertificate(e, f, seed, fam.window, rep.checks, count, verdict, used_rng)


def validate_certificate(cert: NonvanishingCertificate | dict) -> tuple[bool, list[str]]:
    """Rebuild the family from the certificate data and redo every check."""
    if isinstance(cert, dict):
        cert = NonvanishingCertificate.from_json(cert)
    problems = []
    try:
        E, F = _bilinear_pair(cert.e, cert.f)
        fam = extend_module(E, F, cert.seed, cert.window)
    except (ValueError, SingularMatrixError) as exc:
        return False, [str(exc)]
    rep = verify_module(fam)
    if not rep.passed:
        problems.extend(f"{c.identity} fails at d = {c.degree}" for c in rep.failures)
    if tuple(rep.checks) != tuple(cert.checks):
        problems.append("recorded checks differ from the recomputed ones")
    count, vanish = _relations_vanish(cert.e, cert.f, fam)
    if not vanish:
        problems.append("a relation acts nonzero on the family")
    if count != cert.relation_checks:
        problems.append("recorded relation-check count differs")
    if cert.verdict != "nonzero":
        problems.append(f"verdict is {cert.verdict!r}")
    return not problems, problems


def family_to_json(fam: ModuleFamily) -> dict:
    return {
        "E": matrix_to_json(fam.E),
        "F": matrix_to_json(fam.F),
        "window": list(fam.window),
        "A": {str(d): matrix_to_json(M) for d, M in fam.A_maps.items()},
        "B": {str(d): matrix_to_json(M) for d, M in fam.B_maps.items()},
    }


def family_from_json(obj: dict) -> ModuleFamily:
    return ModuleFamily(
        matrix_from_json(obj["E"]),
        matrix_from_json(obj["F"]),
        tuple(int(x) for x in obj["window"]),
        {int(d): matrix_from_json(M) for d, M in obj["A"].items()},
        {int(d): matrix_from_json(M) for d, M in obj["B"].items()},
    )


# -- falsification -----------------------------------------------------

def module_falsifier(
    factors: Sequence[tuple[MLForm, MLForm]], *, trials: int = 3, seed: int = 0, radius: int = 24
) -> Callable[[NCPoly], bool] | None:
    """A test that returns True only if p acts nonzero on some family.

    ``factors`` lists the (e, f) of each tensor factor.  Returns None when no
    family construction applies (m != 2 or unequal dimensions).
    """
    try:
        pairs = [_bilinear_pair(e, f) for e, f in factors]
    except ValueError:
        return None
    rng = random.Random(seed)
    window = (-radius, radius)
    fam_sets = []
    for _ in range(trials):
        fam_sets.append([extend_module(E, F, random_seed_matrix(E.rows, rng), window) for E, F in pairs])
    nf = len(pairs)

    def falsify(p: NCPoly) -> bool:
        groups: dict[tuple, dict] = {}
        for w, c in p.terms.items():
            parts = [[] for _ in range(nf)]
            for g in w:
                if not 1 <= g.factor <= nf:
                    return False
                parts[g.factor - 1].append(g)
            key = tuple(_word_shift(x) for x in parts)
            groups.setdefault(key, {})[w] = c
        for fams in fam_sets:
            for terms in groups.values():
                try:
                    if evaluate_tensor(NCPoly(terms), fams, [0] * nf):
                        return True
                except (WindowError, ValueError):
                    continue
        return False

    return falsify

