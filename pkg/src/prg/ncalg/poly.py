"""Generator symbols, words and noncommutative polynomials over Q.

A word is a tuple of :class:`GenSymbol`.  Symbols carry a tensor-factor tag;
symbols of different factors commute, so words are stored with their symbols
stably sorted by factor.
"""
from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from ..exactlinalg import format_scalar, to_scalar

__all__ = [
    "GenSymbol",
    "A",
    "B",
    "DPOS",
    "DNEG",
    "X",
    "KINDS",
    "a",
    "b",
    "D",
    "Dinv",
    "x",
    "normal_word",
    "NCPoly",
    "word_to_text",
    "parse_word",
    "parse_poly",
]

A, B, DPOS, DNEG, X = "a", "b", "D", "Dinv", "x"
KINDS = (A, B, DPOS, DNEG, X)


class GenSymbol(NamedTuple):
    """One generator.  ``i``/``j`` are 0-based; unused indices stay 0."""

    kind: str
    i: int = 0
    j: int = 0
    factor: int = 1

    def retag(self, offset: int) -> "GenSymbol":
        return self._replace(factor=self.factor + offset)

    def on_factor(self, factor: int) -> "GenSymbol":
        return self._replace(factor=factor)

    def __str__(self) -> str:
        if self.kind in (A, B):
            s = f"{self.kind}[{self.i + 1},{self.j + 1}]"
        elif self.kind == X:
            s = f"x[{self.i + 1}]"
        elif self.kind == DPOS:
            s = "D"
        elif self.kind == DNEG:
            s = "D^-1"
        else:
            s = self.kind
        return s if self.factor == 1 else f"{s}@{self.factor}"


def a(i: int, j: int, factor: int = 1) -> GenSymbol:
    return GenSymbol(A, i, j, factor)


def b(i: int, j: int, factor: int = 1) -> GenSymbol:
    return GenSymbol(B, i, j, factor)


def D(factor: int = 1) -> GenSymbol:
    return GenSymbol(DPOS, 0, 0, factor)


def Dinv(factor: int = 1) -> GenSymbol:
    return GenSymbol(DNEG, 0, 0, factor)


def x(i: int, factor: int = 1) -> GenSymbol:
    return GenSymbol(X, i, 0, factor)


def normal_word(word: Iterable[GenSymbol]) -> tuple[GenSymbol, ...]:
    word = tuple(word)
    for s, t in zip(word, word[1:]):
        if t.factor < s.factor:
            return tuple(sorted(word, key=lambda g: g.factor))
    return word


def word_to_text(word) -> str:
    return ".".join(str(g) for g in word) if word else "1"


class NCPoly:
    """Finitely supported Q-combination of words.  Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            acc: dict[tuple, object] = {}
            items = terms.items() if isinstance(terms, Mapping) else (terms or ())
            for w, c in items:
                tc = type(c)
                if tc is Fraction:
                    if c.denominator == 1:
                        c = c.numerator
                elif tc is not int:
                    c = to_scalar(c)
                if not c:
                    continue
                w = normal_word(w)
                acc[w] = acc.get(w, 0) + c
            # sum in ints where possible, convert once
            self._terms = {w: v if type(v) is Fraction else Fraction(v) for w, v in acc.items() if v}
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls) -> "NCPoly":
        return cls({}, _trusted=True)

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        c = to_scalar(c)
        return cls({(): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls) -> "NCPoly":
        return cls.scalar(1)

    @classmethod
    def gen(cls, g: GenSymbol) -> "NCPoly":
        return cls({(g,): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, word, c=1) -> "NCPoly":
        return cls({tuple(word): c})

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def words(self) -> list[tuple]:
        return [w for w, _ in self.items()]

    def coeff(self, word) -> Fraction:
        return self._terms.get(normal_word(word), Fraction(0))

    def symbols(self) -> set[GenSymbol]:
        return {g for w in self._terms for g in w}

    def max_len(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    # -- arithmetic -----------------------------------------------------
    def _combine(self, other: "NCPoly", sign: int) -> "NCPoly":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            v = acc.get(w, 0) + sign * c
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
        return NCPoly(acc, _trusted=True)

    def __add__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        return self._combine(other, -1)

    def __rsub__(self, other) -> "NCPoly":
        return NCPoly.scalar(other) - self

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self._terms.items()}, _trusted=True)

    def scale(self, c) -> "NCPoly":
        c = to_scalar(c)
        if not c:
            return NCPoly.zero()
        return NCPoly({w: c * v for w, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPoly":
        return self.scale(other)

    def mul(self, other: "NCPoly") -> "NCPoly":
        """Concatenation product (free algebra; factors commute)."""
        acc: dict[tuple, Fraction] = {}
        mixed = _has_mixed_factors(self) or _has_mixed_factors(other)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                if mixed:
                    w = normal_word(w)
                v = acc.get(w, 0) + c1 * c2
                if v:
                    acc[w] = v
                else:
                    del acc[w]
        return NCPoly(acc, _trusted=True)

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        out = NCPoly.one()
        for _ in range(k):
            out = out.mul(self)
        return out

    # -- gradings -------------------------------------------------------
    def degrees(self, grading: Mapping[GenSymbol, int]) -> set[int]:
        return {sum(grading[g] for g in w) for w in self._terms}

    def is_homogeneous(self, grading: Mapping[GenSymbol, int]) -> bool:
        return len(self.degrees(grading)) <= 1

    def homogeneous_parts(self, grading: Mapping[GenSymbol, int]) -> dict[int, "NCPoly"]:
        parts: dict[int, dict] = {}
        for w, c in self._terms.items():
            parts.setdefault(sum(grading[g] for g in w), {})[w] = c
        return {d: NCPoly(t, _trusted=True) for d, t in sorted(parts.items())}

    # -- substitution ---------------------------------------------------
    def substitute(self, images: Mapping[GenSymbol, "NCPoly"], opposite: bool = False) -> "NCPoly":
        """Apply the algebra map determined by generator images.

        With ``opposite`` the images are multiplied in reverse order, i.e. the
        target is an opposite algebra stored by its underlying words.
        """
        lite: dict[GenSymbol, list] = {}
        acc: dict[tuple, object] = {}
        for w, c in self._terms.items():
            partial = [((), _lite(c))]
            for g in (reversed(w) if opposite else w):
                terms = lite.get(g)
                if terms is None:
                    try:
                        terms = [(u, _lite(v)) for u, v in images[g]._terms.items()]
                    except KeyError:
                        raise KeyError(f"no image for generator {g}") from None
                    lite[g] = terms
                partial = [(u + v, cu * cv) for u, cu in partial for v, cv in terms]
                if not partial:
                    break
            for u, cu in partial:
                acc[u] = acc.get(u, 0) + cu
        return NCPoly(acc)

    def retag(self, offset: int) -> "NCPoly":
        return NCPoly({tuple(g.retag(offset) for g in w): c for w, c in self._terms.items()})

    # -- dunder ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        try:
            return self._terms == NCPoly.scalar(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for w, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = word_to_text(w)
            if not w:
                term = format_scalar(mag)
            elif mag == 1:
                term = body
            else:
                term = f"{format_scalar(mag)} * {body}"
            out.append((sign, term))
        s = " ".join(f"{sg} {t}" for sg, t in out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def _lite(c: Fraction):
    # ints multiply far faster than Fractions
    return c.numerator if c.denominator == 1 else c


def _has_mixed_factors(p: NCPoly) -> bool:
    return any(g.factor != 1 for w in p._terms for g in w)


_SYM_RE = re.compile(
    r"""\s*(?:
        (?P<ab>[ab])\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]
      | x\[\s*(?P<xi>\d+)\s*\]
      | (?P<d>D(?:\^\s*(?P<exp>-?1))?)
    )(?:@(?P<f>\d+))?\s*""",
    re.X,
)


def parse_word(text: str) -> tuple[GenSymbol, ...]:
    text = text.strip()
    if text == "1" or not text:
        return ()
    word = []
    for piece in text.split("."):
        m = _SYM_RE.fullmatch(piece)
        if not m:
            raise ValueError(f"cannot parse generator {piece!r}")
        f = int(m["f"]) if m["f"] else 1
        if m["ab"]:
            word.append(GenSymbol(m["ab"], int(m["i"]) - 1, int(m["j"]) - 1, f))
        elif m["xi"]:
            word.append(GenSymbol(X, int(m["xi"]) - 1, 0, f))
        else:
            word.append(GenSymbol(DNEG if m["exp"] == "-1" else DPOS, 0, 0, f))
    return tuple(word)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_poly(text: str) -> NCPoly:
    """Parse ``3/2 * a[1,2].b[2,1].D^-1 - x[1] + 1``."""
    text = text.strip()
    if not text or text == "0":
        return NCPoly.zero()
    # protect exponents such as D^-1 from the sign splitter
    protected = re.sub(r"\^\s*-\s*1", "^m1", text)
    if protected[0] not in "+-":
        protected = "+" + protected
    pieces = _TERM_SPLIT.split(protected)[1:]
    terms = []
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        body = body.replace("^m1", "^-1").strip()
        if "*" in body:
            coef, word = body.split("*", 1)
            c = to_scalar(coef.strip())
            w = parse_word(word)
        elif re.fullmatch(r"\d+(/\d+)?", body):
            c, w = to_scalar(body), ()
        else:
            c, w = Fraction(1), parse_word(body)
        terms.append((w, -c if sign == "-" else c))
    return NCPoly(terms)
