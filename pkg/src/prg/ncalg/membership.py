"""Length-bounded two-sided ideal membership with checkable witnesses.

The search never completes a Groebner basis.  For a target t and a bound L it
spans the columns ``u * r * v`` (|u| + |v| + maxlen(r) <= L) reachable from
the words of t, eliminates them exactly, and reads off a combination when t
falls in their span.  Failure at a bound is only "not found".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from ..errors import BudgetExceeded, GradingError, word_budget
from ..exactlinalg import format_scalar
from .. import kernel
from ..kernel import SparseEliminator
from .poly import NCPoly, parse_word, word_to_text
from .presentation import GenMorphism, Presentation

__all__ = [
    "VERIFIED",
    "FALSIFIED",
    "INCONCLUSIVE",
    "WitnessTerm",
    "MembershipWitness",
    "MembershipResult",
    "IdealSearch",
    "ideal_membership",
    "ideal_membership_batch",
    "linear_membership_batch",
    "RelationCheck",
    "MorphismReport",
    "check_morphism",
    "combine_status",
]

VERIFIED, FALSIFIED, INCONCLUSIVE = "verified", "falsified", "inconclusive"

Falsifier = Callable[[NCPoly], bool]


def combine_status(statuses) -> str:
    statuses = list(statuses)
    if FALSIFIED in statuses:
        return FALSIFIED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return VERIFIED


@dataclass(frozen=True)
class WitnessTerm:
    left: tuple
    relation: int
    right: tuple
    coeff: Fraction


@dataclass(frozen=True)
class MembershipWitness:
    """``target == sum coeff * left * relations[relation] * right``."""

    terms: tuple[WitnessTerm, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def expand(self, relations: Sequence[NCPoly]) -> NCPoly:
        acc: dict[tuple, Fraction] = {}
        rows: dict[int, list] = {}
        for t in self.terms:
            row = rows.get(t.relation)
            if row is None:
                row = rows[t.relation] = [
                    (w, c.numerator if c.denominator == 1 else c)
                    for w, c in relations[t.relation].terms.items()
                ]
            # plain concatenation product; opposite flags play no role here
            left, right, k = t.left, t.right, t.coeff
            if k.denominator == 1:
                k = k.numerator
            for w, c in row:
                u = left + w + right
                acc[u] = acc.get(u, 0) + k * c
        return NCPoly(acc)

    def verify(self, target: NCPoly, relations: Sequence[NCPoly]) -> bool:
        return self.expand(relations) == target

    def max_len(self, relations: Sequence[NCPoly]) -> int:
        return max((len(t.left) + len(t.right) + relations[t.relation].max_len() for t in self.terms), default=0)

    def to_json(self) -> list:
        return [
            {
                "left": word_to_text(t.left),
                "relation": t.relation + 1,
                "right": word_to_text(t.right),
                "coeff": format_scalar(t.coeff),
            }
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, obj: list) -> "MembershipWitness":
        terms = []
        for item in obj:
            terms.append(
                WitnessTerm(
                    parse_word(item["left"]),
                    int(item["relation"]) - 1,
                    parse_word(item["right"]),
                    Fraction(item["coeff"]),
                )
            )
        return cls(tuple(terms))


@dataclass(frozen=True)
class MembershipResult:
    """``status`` is ``member``, ``not-found`` or ``non-member`` (falsifier hit)."""

    status: str
    witness: MembershipWitness | None
    bound: int
    columns: int = 0

    @property
    def found(self) -> bool:
        return self.status == "member"


_ID_BITS = 40
_ID_MASK = (1 << _ID_BITS) - 1


def _int_row(p: NCPoly) -> tuple[int, list[tuple[tuple, int]]]:
    scale = lcm(*(c.denominator for c in p.terms.values())) if p else 1
    return scale, [(w, int(c * scale)) for w, c in p.items()]


class IdealSearch:
    """Incremental span of relation translates, shared by a batch of targets."""

    def __init__(self, relations: Sequence[NCPoly], budget: int | None = None):
        self.relations = list(relations)
        self.budget = word_budget(budget)
        self._scale: list[int] = []
        self._rows: list[list[tuple[tuple, int]]] = []
        self._maxlen: list[int] = []
        self._factor: list[int] = []
        self._term_index: dict[tuple[int, tuple], list[int]] = {}
        self._term_lengths: dict[int, list[int]] = {}
        for ri, r in enumerate(self.relations):
            s, row = _int_row(r)
            self._scale.append(s)
            self._rows.append(row)
            self._maxlen.append(r.max_len())
            factors = {g.factor for g in r.symbols()}
            if len(factors) > 1:
                raise ValueError(f"relation {r} mixes tensor factors")
            f = factors.pop() if factors else 1
            self._factor.append(f)
            for w, _ in row:
                self._term_index.setdefault((f, w), []).append(ri)
                self._term_lengths.setdefault(f, [])
                if len(w) not in self._term_lengths[f]:
                    self._term_lengths[f].append(len(w))
        for f in self._term_lengths:
            self._term_lengths[f].sort()
        self._scan_lengths = list(self._term_lengths.items())
        self._cancel = self._cancellation_relations()

        self.elim = SparseEliminator(track=True)
        self._keys: dict[tuple, int] = {}
        self._words: list[tuple] = []
        self._cols: list[tuple[int, tuple, tuple]] = []
        self._col_seen: set = set()

    # -- word keys: graded by length, insertion order inside a length ----
    def _key(self, w: tuple) -> int:
        k = self._keys.get(w)
        if k is None:
            k = (len(w) << _ID_BITS) | len(self._words)
            self._keys[w] = k
            self._words.append(w)
        return k

    def _cancellation_relations(self) -> dict[tuple, int]:
        """Relations of the shape ``x*y - 1`` keyed by the pair (x, y)."""
        out = {}
        for ri, r in enumerate(self.relations):
            t = r.terms
            if len(t) != 2 or t.get(()) != -1:
                continue
            (w, c), = [(w, c) for w, c in t.items() if w]
            if len(w) == 2 and c == 1 and w[0].factor == w[1].factor:
                out.setdefault(w, ri)
        return out

    # -- pre-pass -------------------------------------------------------
    def cancel_pairs(self, target: NCPoly) -> tuple[NCPoly, list[WitnessTerm]]:
        """Rewrite adjacent ``x*y`` to 1 through relations ``x*y - 1``."""
        if not self._cancel:
            return target, []
        terms: list[WitnessTerm] = []
        cur = dict(target.terms)
        changed = True
        while changed:
            changed = False
            for w in sorted(cur, key=lambda w: (-len(w), w)):
                c = cur.get(w)
                if c is None:
                    continue
                for p in range(len(w) - 1):
                    ri = self._cancel.get(w[p:p + 2])
                    if ri is None:
                        continue
                    u, v = w[:p], w[p + 2:]
                    terms.append(WitnessTerm(u, ri, v, c))
                    del cur[w]
                    nv = cur.get(u + v, 0) + c
                    if nv:
                        cur[u + v] = nv
                    else:
                        cur.pop(u + v, None)
                    changed = True
                    break
        return NCPoly(cur), terms

    # -- column generation ------------------------------------------------
    def _scan(self, w: tuple, L: int) -> None:
        for ri, left, right in kernel.scan_word(w, L, self._scan_lengths, self._term_index, self._maxlen, self._col_seen):
            self._add_column(ri, left, right)

    def _add_column(self, ri: int, left: tuple, right: tuple) -> None:
        if len(self._cols) >= self.budget:
            raise BudgetExceeded(f"membership search needs more than {self.budget} columns")
        tag = len(self._cols)
        self._cols.append((ri, left, right))
        row = {}
        for t, c in self._rows[ri]:
            row[self._key(left + t + right)] = c
        self.elim.insert(row, tag)

    # -- driver ---------------------------------------------------------
    def _start(self, target: NCPoly) -> list:
        s_t, trow = _int_row(target)
        return [{self._key(w): c for w, c in trow}, {-1: 1}, s_t]

    def _try(self, state: list) -> tuple[MembershipWitness | None, list[tuple]]:
        """Witness, or None together with the remainder words, leading first.

        ``state`` holds the partly reduced row; pivots only accumulate, so
        later calls resume where the previous one stopped.
        """
        red, hist, lead = self.elim.reduce(state[0], state[1])
        state[0], state[1] = red, hist
        if lead is not None:
            return None, [self._words[k & _ID_MASK] for k in sorted(red, reverse=True)]
        hist = dict(hist)
        h_t = hist.pop(-1)
        s_t = state[2]
        terms = []
        for tag in sorted(hist):
            ri, left, right = self._cols[tag]
            coeff = Fraction(-hist[tag] * self._scale[ri], h_t * s_t)
            terms.append(WitnessTerm(left, ri, right, coeff))
        return MembershipWitness(tuple(terms)), []

    def search(self, targets: Sequence[NCPoly], bound: int) -> list[MembershipResult]:
        """Remainder-driven closure with iterative deepening on the length.

        At each length the words left in the reduced targets are expanded
        first; a full pass over every known word is the fallback when the
        remainders offer nothing new.
        """
        results: list[MembershipResult | None] = [None] * len(targets)
        reduced = []
        for i, t in enumerate(targets):
            rest, pre = self.cancel_pairs(t)
            reduced.append((rest, pre))
            if rest.is_zero():
                results[i] = MembershipResult("member", MembershipWitness(tuple(pre)), bound, 0)
        pending = [i for i in range(len(targets)) if results[i] is None]
        # too long for the bound even after cancellation: not found
        pending = [i for i in pending if reduced[i][0].max_len() <= bound]
        if pending:
            longest = max(reduced[i][0].max_len() for i in pending)
            states = {i: self._start(reduced[i][0]) for i in pending}
            for L in range(max(longest, 1), bound + 1):
                scanned: set = set()
                while pending:
                    leads, demand = [], []
                    still = []
                    for i in pending:
                        wit, rest = self._try(states[i])
                        if wit is None:
                            still.append(i)
                            if rest[0] not in scanned:
                                leads.append(rest[0])
                            demand.extend(w for w in rest if w not in scanned)
                        else:
                            full = MembershipWitness(tuple(reduced[i][1]) + wit.terms)
                            results[i] = MembershipResult("member", full, L, len(self._cols))
                    pending = still
                    if not pending:
                        break
                    if leads:
                        demand = leads
                    elif not demand:
                        demand = [w for w in self._words if w not in scanned]
                        if not demand:
                            break  # closed at this length
                    for w in dict.fromkeys(demand):
                        scanned.add(w)
                        self._scan(w, L)
                if not pending:
                    break
        for i, r in enumerate(results):
            if r is None:
                results[i] = MembershipResult("not-found", None, bound, len(self._cols))
        return results  # type: ignore[return-value]


def linear_membership_batch(
    targets: Sequence[NCPoly], relations: Sequence[NCPoly]
) -> list[MembershipWitness | None]:
    """Witnesses using the relations themselves (no multipliers), else None."""
    elim = SparseEliminator(track=True)
    keys: dict[tuple, int] = {}
    scales = []
    for ri, r in enumerate(relations):
        sc, row = _int_row(r)
        scales.append(sc)
        elim.insert({keys.setdefault(w, len(keys)): c for w, c in row}, ri)
    out: list[MembershipWitness | None] = []
    for t in targets:
        s_t, trow = _int_row(t)
        if any(w not in keys for w, _ in trow):
            out.append(None)
            continue
        _, hist, lead = elim.reduce({keys[w]: c for w, c in trow}, {-1: 1})
        if lead is not None:
            out.append(None)
            continue
        h_t = hist.pop(-1)
        out.append(MembershipWitness(tuple(
            WitnessTerm((), ri, (), Fraction(-hist[ri] * scales[ri], h_t * s_t)) for ri in sorted(hist)
        )))
    return out


def ideal_membership_batch(
    targets: Sequence[NCPoly],
    P: Presentation | Sequence[NCPoly],
    length_bound: int,
    *,
    falsifier: Falsifier | None = None,
    budget: int | None = None,
    strict: bool = True,
) -> list[MembershipResult]:
    relations = P.relations if isinstance(P, Presentation) else list(P)
    if strict:
        longest = max((t.max_len() for t in targets), default=0)
        if length_bound < longest:
            raise ValueError(f"length bound {length_bound} is below the target length {longest}")
    out: list[MembershipResult | None] = [None] * len(targets)
    todo = []
    for i, t in enumerate(targets):
        if t.is_zero():
            out[i] = MembershipResult("member", MembershipWitness(()), length_bound)
        elif falsifier is not None and falsifier(t):
            out[i] = MembershipResult("non-member", None, length_bound)
        else:
            todo.append(i)
    if todo:
        lin = linear_membership_batch([targets[i] for i in todo], relations)
        rest = []
        for i, w in zip(todo, lin):
            if w is None:
                rest.append(i)
            else:
                out[i] = MembershipResult("member", w, length_bound)
        todo = rest
    if todo:
        res = IdealSearch(relations, budget).search([targets[i] for i in todo], length_bound)
        for i, r in zip(todo, res):
            out[i] = r
    for i, r in enumerate(out):
        if r.witness is not None and not r.witness.verify(targets[i], relations):
            raise AssertionError("internal error: witness does not re-expand to its target")
    return out  # type: ignore[return-value]


def ideal_membership(
    target: NCPoly,
    P: Presentation | Sequence[NCPoly],
    length_bound: int,
    *,
    falsifier: Falsifier | None = None,
    budget: int | None = None,
) -> MembershipResult:
    """Is ``target`` in the two-sided ideal of P's relations, within the bound?"""
    return ideal_membership_batch([target], P, length_bound, falsifier=falsifier, budget=budget)[0]


@dataclass(frozen=True)
class RelationCheck:
    index: int
    relation: NCPoly
    image: NCPoly
    status: str
    witness: MembershipWitness | None = None
    note: str = ""

    def to_json(self) -> dict:
        obj = {
            "index": self.index + 1,
            "relation": str(self.relation),
            "image": str(self.image),
            "status": self.status,
        }
        if self.witness is not None:
            obj["witness"] = self.witness.to_json()
        if self.note:
            obj["note"] = self.note
        return obj


@dataclass(frozen=True)
class MorphismReport:
    name: str
    bound: int
    checks: tuple[RelationCheck, ...]
    grading_scale: int | None = None
    error: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.error:
            return FALSIFIED
        return combine_status(c.status for c in self.checks)

    def to_json(self) -> dict:
        obj = {
            "name": self.name,
            "bound": self.bound,
            "status": self.status,
            "grading_scale": self.grading_scale,
            "relations": [c.to_json() for c in self.checks],
        }
        if self.error:
            obj["error"] = self.error
        return obj


def check_morphism(
    phi: GenMorphism,
    length_bound: int,
    *,
    falsifier: Falsifier | None = None,
    budget: int | None = None,
) -> MorphismReport:
    """Decide, relation by relation, whether phi respects the domain relations.

    An image that breaks the grading fails the precondition; the report is
    then falsified with the reason recorded and no search is run.
    """
    try:
        scale = phi.grading_scale()
    except GradingError as exc:
        return MorphismReport(phi.name, length_bound, (), None, f"grading: {exc}")
    rels = phi.domain.relations
    images = [phi.apply(r) for r in rels]
    try:
        results = ideal_membership_batch(
            images, phi.codomain, length_bound, falsifier=falsifier, budget=budget, strict=False
        )
    except BudgetExceeded as exc:
        checks = tuple(RelationCheck(i, r, img, INCONCLUSIVE, None, f"budget exceeded: {exc}")
                       for i, (r, img) in enumerate(zip(rels, images)))
        return MorphismReport(phi.name, length_bound, checks, scale)
    checks = []
    for i, (r, img, res) in enumerate(zip(rels, images, results)):
        if res.status == "member":
            checks.append(RelationCheck(i, r, img, VERIFIED, res.witness))
        elif res.status == "non-member":
            checks.append(RelationCheck(i, r, img, FALSIFIED, None, "nonzero in a representation"))
        else:
            checks.append(RelationCheck(i, r, img, INCONCLUSIVE, None, f"not found at length {res.bound}"))
    return MorphismReport(phi.name, length_bound, tuple(checks), scale)
